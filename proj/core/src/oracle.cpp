#include "clausedag/oracle.hpp"

#include "clausedag/error.hpp"

#include <algorithm>
#include <set>

namespace clausedag {

bool eval_formula(const Formula& f, const Assignment& a)
{
    if (a.size() < static_cast<std::size_t>(f.n))
        throw Error(ErrorKind::LengthMismatch, "assignment shorter than the formula's variable count");
    for (const Clause3& c : f.clauses)
        if (!eval_clause(c, a))
            return false;
    return true;
}

namespace {

void check_size(const Formula& f)
{
    if (f.n > kOracleMaxVars)
        throw Error(ErrorKind::TooLarge, "oracles enumerate at most " + std::to_string(kOracleMaxVars)
                                             + " variables, got " + std::to_string(f.n));
}

std::uint64_t space(const Formula& f) { return std::uint64_t{1} << std::max(f.n, 0); }

} // namespace

OracleVerdict brute_force(const Formula& f)
{
    check_size(f);
    OracleVerdict out;
    const std::uint64_t total = space(f);
    for (std::uint64_t index = 0; index < total; ++index) {
        ++out.assignments_checked;
        Assignment a = Assignment::from_index(index, f.n);
        if (eval_formula(f, a)) {
            out.satisfiable = true;
            out.witness = std::move(a);
            return out;
        }
    }
    return out;
}

OracleVerdict clause_set_oracle(const Formula& f)
{
    check_size(f);
    OracleVerdict out;
    const std::set<Clause3> formula(f.clauses.begin(), f.clauses.end());
    const std::uint64_t total = space(f);
    const int n = f.n;
    for (std::uint64_t index = 0; index < total; ++index) {
        ++out.assignments_checked;
        // Bit v-1 set means x_v is true, i.e. position v of the string holds ~x_v.
        std::vector<bool> negated(static_cast<std::size_t>(n));
        for (int v = 1; v <= n; ++v)
            negated[static_cast<std::size_t>(v - 1)] = ((index >> (v - 1)) & 1U) != 0;
        const StringW w(std::move(negated));
        bool disjoint = true;
        for (Var i = 1; i <= n - 2 && disjoint; ++i)
            for (Var j = i + 1; j <= n - 1 && disjoint; ++j)
                for (Var k = j + 1; k <= n && disjoint; ++k)
                    if (formula.contains(make_clause(w.literal(i), w.literal(j), w.literal(k))))
                        disjoint = false;
        if (disjoint) {
            out.satisfiable = true;
            out.witness = assignment_of_string(w);
            return out;
        }
    }
    return out;
}

} // namespace clausedag
