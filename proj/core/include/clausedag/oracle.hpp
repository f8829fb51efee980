#pragma once

// Exhaustive reference deciders, independent of the clause-matrix machinery.

#include "clausedag/clause.hpp"
#include "clausedag/dimacs.hpp"

#include <cstdint>
#include <optional>

namespace clausedag {

inline constexpr int kOracleMaxVars = 26;

struct OracleVerdict {
    bool satisfiable = false;
    std::optional<Assignment> witness;
    std::uint64_t assignments_checked = 0;
};

// Throws LengthMismatch if a is shorter than f.n.
[[nodiscard]] bool eval_formula(const Formula& f, const Assignment& a);

// Ascending enumeration with x_1 as the least significant bit; the witness
// is the first satisfying assignment. Throws TooLarge above kOracleMaxVars.
[[nodiscard]] OracleVerdict brute_force(const Formula& f);

// Same enumeration order over falsification strings: SAT iff some string's
// clause set shares no clause with f.
[[nodiscard]] OracleVerdict clause_set_oracle(const Formula& f);

} // namespace clausedag
