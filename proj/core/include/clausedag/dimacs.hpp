#pragma once

#include "clausedag/clause.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace clausedag {

// A 3-CNF formula: normalized clauses, deduplicated, in order of first
// occurrence. n may exceed the largest variable used.
struct Formula {
    int n = 0;
    std::vector<Clause3> clauses;

    [[nodiscard]] std::size_t m() const { return clauses.size(); }

    // Normalizes nothing; just checks the invariants and throws on violation.
    void validate() const;

    friend bool operator==(const Formula&, const Formula&) = default;
};

// Appends c unless an equal clause is already present. Returns whether it
// was appended.
bool add_clause_unique(Formula& f, const Clause3& c);

struct ParseDiagnostics {
    std::size_t duplicates_dropped = 0;
    int header_vars = 0;
    std::size_t header_clauses = 0;
    std::size_t clauses_read = 0;
    std::vector<std::string> warnings;
};

// Strict DIMACS CNF reader restricted to clauses with exactly three distinct
// variables. Errors carry "line L, token T" positions.
[[nodiscard]] Formula parse_dimacs(std::string_view text, ParseDiagnostics* diagnostics = nullptr);
[[nodiscard]] Formula read_dimacs_file(const std::string& path, ParseDiagnostics* diagnostics = nullptr);

// Canonical form: header line, one clause per line, variable-ascending
// literals, terminated by 0.
[[nodiscard]] std::string emit_dimacs(const Formula& f);
void write_dimacs_file(const std::string& path, const Formula& f);

} // namespace clausedag
