#include "clausedag/clause_matrix.hpp"
#include "clausedag/error.hpp"
#include "clausedag/harness.hpp"
#include "clausedag/oracle.hpp"
#include "clausedag/render.hpp"

#include <doctest.h>

#include <set>

using namespace clausedag;

namespace {

Clause3 cl(int a, int b, int c)
{
    return make_clause(Literal::from_dimacs(a), Literal::from_dimacs(b), Literal::from_dimacs(c));
}

std::vector<std::string> history_text(const RemovalConditions& rc)
{
    std::vector<std::string> out;
    for (const auto& [a, b] : rc.history())
        out.push_back(Literal::from_index(a).to_string() + (a == b ? "" : " " + Literal::from_index(b).to_string()));
    return out;
}

} // namespace

TEST_CASE("generate_cm shape")
{
    CHECK(generate_cm(4).rows() == 4);
    CHECK(generate_cm(10).rows() == 120);
    CHECK(generate_cm(50).rows() == 19600);
    CHECK(generate_cm(6).alive_count() == 160);
    CHECK_THROWS_AS((void)generate_cm(2), Error);
}

TEST_CASE("subtract kills exactly the formula's cells")
{
    const Formula f = worked_example();
    ClauseMatrix cm = generate_cm(6);
    CHECK(subtract(cm, f) == 6);
    CHECK(cm.alive_count() == 154);
    for (const Clause3& c : f.clauses)
        CHECK(cm.state(triple_rank(c.triple(), 6), c.column()) == CellState::Subtracted);
    CHECK(subtract(cm, f) == 0);
}

TEST_CASE("removal-condition grid is symmetric and records history")
{
    RemovalConditions rc(4);
    CHECK(rc.empty());
    CHECK(rc.forbid(Literal::neg(2), Literal::pos(1)));
    CHECK_FALSE(rc.forbid(Literal::pos(1), Literal::neg(2)));
    CHECK(rc.forbidden(Literal::neg(2), Literal::pos(1)));
    CHECK(rc.forbidden(Literal::pos(1), Literal::neg(2)));
    CHECK(rc.forbid(Literal::neg(3)));
    REQUIRE(rc.history().size() == 2);
    CHECK(rc.history()[0] == std::pair{1, 4});
    CHECK(rc.units() == std::vector<Literal>{Literal::neg(3)});
    CHECK(rc.pairs().size() == 1);
    CHECK_THROWS_AS(rc.set(0, 1), Error);
}

TEST_CASE("pair patterns: each of the twelve one-polarity pairs forbids the shared literals")
{
    // Kill two cells of row (1,2,3) that differ in one polarity and check the
    // pair they share is the one forbidden.
    for (int a = 1; a <= 8; ++a)
        for (int b = a + 1; b <= 8; ++b) {
            const int diff = (a - 1) ^ (b - 1);
            if (diff != 1 && diff != 2 && diff != 4)
                continue;
            ClauseMatrix cm = generate_cm(3);
            cm.kill(1, a, CellState::Subtracted);
            cm.kill(1, b, CellState::Subtracted);
            RemovalConditions rc(3);
            CHECK(find_removal_conditions(cm, rc));
            REQUIRE(rc.history().size() == 1);
            const Clause3 ca = clause_at({1, 2, 3}, a);
            std::vector<Literal> shared;
            for (const Literal& l : ca.lits())
                if (clause_at({1, 2, 3}, b).contains(l))
                    shared.push_back(l);
            REQUIRE(shared.size() == 2);
            CHECK(rc.forbidden(shared[0], shared[1]));
            CHECK(rc.units().empty());
        }
}

TEST_CASE("unit patterns: four cells sharing a literal forbid it")
{
    for (int pos = 0; pos < 3; ++pos)
        for (int sign = 0; sign < 2; ++sign) {
            ClauseMatrix cm = generate_cm(3);
            const Literal target(pos + 1, sign == 1);
            for (int col = 1; col <= 8; ++col)
                if (clause_at({1, 2, 3}, col).contains(target))
                    cm.kill(1, col, CellState::Subtracted);
            RemovalConditions rc(3);
            find_removal_conditions(cm, rc);
            CHECK(rc.forbidden(target));
            CHECK(rc.units().size() == 1);
        }
}

TEST_CASE("match_condition prefers units")
{
    RemovalConditions rc(4);
    rc.forbid(Literal::pos(1), Literal::pos(2));
    CHECK(match_condition(cl(1, 2, 3), rc) == ConditionMatch::Pair);
    CHECK(match_condition(cl(1, -2, 3), rc) == ConditionMatch::None);
    rc.forbid(Literal::pos(3));
    CHECK(match_condition(cl(1, 2, 3), rc) == ConditionMatch::Unit);
    const std::vector<Literal> d{Literal::pos(1), Literal::pos(2), Literal::neg(4)};
    CHECK(literals_match_condition(d, rc));
    const std::vector<Literal> e{Literal::pos(1), Literal::neg(2), Literal::neg(4)};
    CHECK_FALSE(literals_match_condition(e, rc));
}

TEST_CASE("worked example propagation reaches four pair conditions")
{
    // Hand cascade: rows (2,3,4) and (2,3,5) give ~x2~x3 then ~x2~x5;
    // killing ~x2~x5 cells empties cols 3,4 of (1,2,5): x1~x2; that kills
    // (x1 ~x2 ~x6), which with the subtracted (~x1 ~x2 ~x6) gives ~x2~x6.
    const Formula f = worked_example();
    ClauseMatrix cm = generate_cm(6);
    subtract(cm, f);
    RemovalConditions prc(6);
    garbage_collect(cm, prc);
    CHECK(history_text(prc) == std::vector<std::string>{"~x2 ~x3", "~x2 ~x5", "x1 ~x2", "~x2 ~x6"});
    CHECK(prc.units().empty());
    CHECK(matrix_is_valid(cm));
}

TEST_CASE("empty row makes the matrix invalid")
{
    const Formula f = read_dimacs_file(std::string(CLAUSEDAG_TEST_DATA) + "/unsat8.cnf");
    ClauseMatrix cm = generate_cm(3);
    subtract(cm, f);
    CHECK_FALSE(matrix_is_valid(cm));
    ClauseMatrix fresh = generate_cm(5);
    CHECK(matrix_is_valid(fresh));
    RemovalConditions rc(5);
    const GcStats stats = garbage_collect(fresh, rc);
    CHECK(stats.pair_kills + stats.unit_kills == 0);
    CHECK(rc.empty());
}

TEST_CASE("garbage_collect reaches a fixpoint")
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Formula f = gen_random({6, 10 + seed % 20, GenMode::Uniform, seed});
        ClauseMatrix cm = generate_cm(6);
        subtract(cm, f);
        RemovalConditions rc(6);
        garbage_collect(cm, rc);
        const ClauseMatrix before = cm;
        const RemovalConditions rc_before = rc;
        CHECK_FALSE(find_removal_conditions(cm, rc));
        const GcStats again = garbage_collect(cm, rc);
        CHECK(again.pair_kills + again.unit_kills == 0);
        CHECK(cm == before);
        CHECK(rc == rc_before);
    }
}

TEST_CASE("property: propagation never kills a clause of a satisfying assignment's clause set")
{
    // If a satisfies f, no clause a makes false is in f, so its whole clause
    // set must survive.
    std::size_t checked = 0;
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        const int n = 4 + static_cast<int>(seed % 3);
        const Formula f = gen_random({n, 4 + seed % 25, GenMode::Uniform, seed * 31 + 5});
        ClauseMatrix cm = generate_cm(n);
        subtract(cm, f);
        RemovalConditions rc(n);
        garbage_collect(cm, rc);
        for (std::uint64_t index = 0; index < (std::uint64_t{1} << n); ++index) {
            const Assignment a = Assignment::from_index(index, n);
            if (!eval_formula(f, a))
                continue;
            ++checked;
            for (const Clause3& c : clause_set_of_string(string_of_assignment(a)))
                CHECK(cm.alive(c));
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("property: sign symmetry")
{
    // Flipping the polarity of one variable everywhere maps conditions onto
    // flipped conditions.
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int n = 5;
        const Formula f = gen_random({n, 12 + seed % 10, GenMode::Uniform, seed + 100});
        const Var flip = 1 + static_cast<Var>(seed % n);
        Formula g;
        g.n = n;
        auto flipped = [&](Literal l) { return l.var() == flip ? l.complement() : l; };
        for (const Clause3& c : f.clauses)
            g.clauses.push_back(make_clause(flipped(c[0]), flipped(c[1]), flipped(c[2])));
        ClauseMatrix cf = generate_cm(n);
        ClauseMatrix cg = generate_cm(n);
        subtract(cf, f);
        subtract(cg, g);
        RemovalConditions rf(n);
        RemovalConditions rg(n);
        garbage_collect(cf, rf);
        garbage_collect(cg, rg);
        CHECK(cf.alive_count() == cg.alive_count());
        for (const auto& [a, b] : rf.history()) {
            const Literal la = flipped(Literal::from_index(a));
            const Literal lb = flipped(Literal::from_index(b));
            CHECK(rg.forbidden(la, lb));
        }
        CHECK(rf.history().size() == rg.history().size());
        CHECK(matrix_is_valid(cf) == matrix_is_valid(cg));
    }
}

TEST_CASE("render_matrix shows clauses and codes")
{
    ClauseMatrix cm = generate_cm(3);
    cm.kill(1, 8, CellState::Subtracted);
    const std::string text = render_matrix(cm);
    CHECK(text.find("x1 x2 x3") != std::string::npos);
    CHECK(text.find(" S") != std::string::npos);
    CHECK(text.find("alive 7 of 8") != std::string::npos);
}
