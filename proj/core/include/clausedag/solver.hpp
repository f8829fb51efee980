#pragma once

// Top-level decision procedure: subtract the formula from the full clause
// matrix, propagate, then try each live root of the first row.

#include "clausedag/cdag.hpp"
#include "clausedag/clause.hpp"
#include "clausedag/clause_matrix.hpp"
#include "clausedag/dimacs.hpp"
#include "clausedag/records.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace clausedag {

enum class CertificateStatus { Verified, Failed, NotFound, BudgetExhausted, NotApplicable };
[[nodiscard]] std::string_view to_string(CertificateStatus s) noexcept;

// How an UNSAT verdict was reached.
enum class UnsatReason {
    None,
    EmptyRowAfterPropagation,  // a row emptied before any CDAG work
    EmptyRowAfterRootRejection,
    RootsExhausted,
};
[[nodiscard]] std::string_view to_string(UnsatReason r) noexcept;

struct SolveOptions {
    bool trace = false;
    bool extract_certificate = true;
    std::uint64_t node_budget = kDefaultNodeBudget;
};

struct SolveStats {
    std::size_t subtracted = 0;
    std::size_t pair_kills = 0;
    std::size_t unit_kills = 0;
    std::size_t roots_tried = 0;
    std::size_t restarts = 0;
    std::size_t cdag_length = 0;
    std::uint64_t visits = 0;
    double elapsed_ms = 0.0;
};

struct Verdict {
    bool satisfiable = false;
    std::optional<Assignment> certificate;
    CertificateStatus certificate_status = CertificateStatus::NotApplicable;
    UnsatReason unsat_reason = UnsatReason::None;
    // Root column (1..8) whose construction succeeded; 0 if none.
    int root_column = 0;
    std::optional<Trace> trace;
    SolveStats stats;
};

[[nodiscard]] Verdict solve(const Formula& f, const SolveOptions& opts = {});

// Direct evaluation. Throws LengthMismatch if a is shorter than f.n.
[[nodiscard]] bool check_certificate(const Formula& f, const Assignment& a);

} // namespace clausedag
