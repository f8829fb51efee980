#include "clausedag/solver.hpp"

#include "clausedag/error.hpp"

#include <algorithm>
#include <chrono>

namespace clausedag {

std::string_view to_string(CertificateStatus s) noexcept
{
    switch (s) {
    case CertificateStatus::Verified: return "verified";
    case CertificateStatus::Failed: return "failed";
    case CertificateStatus::NotFound: return "notFound";
    case CertificateStatus::BudgetExhausted: return "budgetExhausted";
    case CertificateStatus::NotApplicable: return "notApplicable";
    }
    return "unknown";
}

std::string_view to_string(UnsatReason r) noexcept
{
    switch (r) {
    case UnsatReason::None: return "none";
    case UnsatReason::EmptyRowAfterPropagation: return "emptyRowAfterPropagation";
    case UnsatReason::EmptyRowAfterRootRejection: return "emptyRowAfterRootRejection";
    case UnsatReason::RootsExhausted: return "rootsExhausted";
    }
    return "unknown";
}

bool check_certificate(const Formula& f, const Assignment& a)
{
    if (a.size() < static_cast<std::size_t>(f.n))
        throw Error(ErrorKind::LengthMismatch, "assignment covers " + std::to_string(a.size())
                                                   + " variables, formula has " + std::to_string(f.n));
    return std::all_of(f.clauses.begin(), f.clauses.end(), [&](const Clause3& c) { return eval_clause(c, a); });
}

namespace {

void add_gc(SolveStats& stats, const GcStats& gc)
{
    stats.pair_kills += gc.pair_kills;
    stats.unit_kills += gc.unit_kills;
}

void certify(Verdict& v, const Formula& f, const Assignment& a)
{
    v.certificate_status = check_certificate(f, a) ? CertificateStatus::Verified : CertificateStatus::Failed;
    v.certificate = a;
}

} // namespace

Verdict solve(const Formula& f, const SolveOptions& opts)
{
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    if (opts.trace)
        v.trace.emplace();
    Trace* trace = opts.trace ? &*v.trace : nullptr;
    auto finish = [&]() {
        v.stats.elapsed_ms
            = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (trace != nullptr)
            trace->push_back(Record("verdict").add("satisfiable", v.satisfiable)
                                 .add("reason", std::string(to_string(v.unsat_reason)))
                                 .add("certificate", std::string(to_string(v.certificate_status))));
        return v;
    };

    if (f.m() == 0) {
        v.satisfiable = true;
        certify(v, f, Assignment(static_cast<std::size_t>(std::max(f.n, 0))));
        return finish();
    }
    if (f.n < 3)
        throw Error(ErrorKind::InvalidArity, "a formula with clauses needs at least 3 variables");

    Formula sorted = f;
    std::sort(sorted.clauses.begin(), sorted.clauses.end(), clause_order_less);

    ClauseMatrix cm = generate_cm(f.n);
    v.stats.subtracted = subtract(cm, sorted);
    RemovalConditions prc(f.n);
    add_gc(v.stats, garbage_collect(cm, prc));
    if (trace != nullptr)
        trace->push_back(Record("propagate").add("subtracted", v.stats.subtracted)
                             .add("pair_kills", v.stats.pair_kills).add("unit_kills", v.stats.unit_kills)
                             .add("conditions", prc.history().size()).add("valid", matrix_is_valid(cm)));
    if (!matrix_is_valid(cm)) {
        v.unsat_reason = UnsatReason::EmptyRowAfterPropagation;
        return finish();
    }

    for (int col = 1; col <= 8; ++col) {
        if (!cm.alive(1, col))
            continue;
        ++v.stats.roots_tried;
        if (trace != nullptr)
            trace->push_back(Record("root").add("column", col)
                                 .add("clause", clause_at({1, 2, 3}, col).to_short_string()));
        CdagBuild build = generate_cdag(cm, prc, col, trace);
        v.stats.restarts += build.restarts;
        if (build.success) {
            v.satisfiable = true;
            v.root_column = col;
            v.stats.cdag_length = build.cdag->length();
            if (opts.extract_certificate) {
                Extraction ex = extract_certificate(*build.cdag, f.n, opts.node_budget);
                v.stats.visits = ex.visits;
                switch (ex.status) {
                case ExtractStatus::Found: certify(v, f, *ex.assignment); break;
                case ExtractStatus::NotFound: v.certificate_status = CertificateStatus::NotFound; break;
                case ExtractStatus::BudgetExhausted:
                    v.certificate_status = CertificateStatus::BudgetExhausted;
                    break;
                }
            }
            return finish();
        }
        cm.kill(1, col, CellState::RootRejected);
        find_removal_conditions(cm, prc);
        add_gc(v.stats, garbage_collect(cm, prc));
        if (!matrix_is_valid(cm)) {
            v.unsat_reason = UnsatReason::EmptyRowAfterRootRejection;
            return finish();
        }
    }
    v.unsat_reason = UnsatReason::RootsExhausted;
    return finish();
}

} // namespace clausedag
