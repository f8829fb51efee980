#include "clausedag/clause.hpp"
#include "clausedag/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace clausedag;

namespace {

Clause3 cl(int a, int b, int c)
{
    return make_clause(Literal::from_dimacs(a), Literal::from_dimacs(b), Literal::from_dimacs(c));
}

} // namespace

TEST_CASE("literal indices interleave positive and negative")
{
    CHECK(literal_index(Literal::pos(1)) == 1);
    CHECK(literal_index(Literal::neg(1)) == 2);
    CHECK(literal_index(Literal::pos(3)) == 5);
    CHECK(literal_index(Literal::neg(3)) == 6);
    for (int idx = 1; idx <= 40; ++idx)
        CHECK(literal_index(Literal::from_index(idx)) == idx);
    CHECK(Literal::from_dimacs(-4) == Literal::neg(4));
    CHECK_THROWS_AS((void)Literal::from_dimacs(0), Error);
}

TEST_CASE("make_clause sorts by variable and rejects repeats")
{
    const Clause3 c = cl(3, -1, 2);
    CHECK(c[0] == Literal::neg(1));
    CHECK(c[1] == Literal::pos(2));
    CHECK(c[2] == Literal::pos(3));
    CHECK(c.to_string() == "(~x1 | x2 | x3)");
    try {
        (void)cl(1, -1, 2);
        FAIL("expected DuplicateVariable");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DuplicateVariable);
    }
    CHECK_THROWS_AS((void)cl(2, 2, 3), Error);
}

TEST_CASE("column encodes the sign pattern")
{
    CHECK(column_of(cl(1, 2, 3)) == 1);
    CHECK(column_of(cl(1, 2, -3)) == 2);
    CHECK(column_of(cl(1, -2, 3)) == 3);
    CHECK(column_of(cl(-1, 2, 3)) == 5);
    CHECK(column_of(cl(-1, -2, -3)) == 8);
    for (int col = 1; col <= 8; ++col)
        CHECK(column_of(clause_at({2, 5, 9}, col)) == col);
}

TEST_CASE("triple rank closed form")
{
    CHECK(triple_rank({1, 2, 3}, 6) == 1);
    CHECK(triple_rank({1, 2, 4}, 6) == 2);
    CHECK(triple_rank({1, 3, 4}, 6) == 5);
    CHECK(triple_rank({4, 5, 6}, 6) == 20);
    CHECK(triple_rank({1, 2, 3}, 3) == 1);
    CHECK_THROWS_AS((void)triple_rank({1, 1, 3}, 6), Error);
    CHECK_THROWS_AS((void)triple_rank({1, 2, 7}, 6), Error);
    CHECK_THROWS_AS((void)rank_to_triple(0, 6), Error);
    CHECK_THROWS_AS((void)rank_to_triple(21, 6), Error);
}

TEST_CASE("rank and triple are inverse bijections for n <= 10")
{
    for (int n = 3; n <= 10; ++n) {
        std::size_t expected = 1;
        const auto& table = triple_table(n);
        REQUIRE(table.size() == triple_count(n));
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                for (int k = j + 1; k <= n; ++k) {
                    const TripleId t{i, j, k};
                    CHECK(triple_rank(t, n) == expected);
                    CHECK(rank_to_triple(expected, n) == t);
                    CHECK(table[expected - 1] == t);
                    ++expected;
                }
        CHECK(expected - 1 == triple_count(n));
    }
}

TEST_CASE("triple counts")
{
    CHECK(triple_count(3) == 1);
    CHECK(triple_count(4) == 4);
    CHECK(triple_count(6) == 20);
    CHECK(triple_count(10) == 120);
    CHECK(triple_count(50) == 19600);
    CHECK(triple_count(2) == 0);
}

TEST_CASE("compatibility")
{
    CHECK(compatible(cl(1, 2, 3), cl(1, 2, 4)));
    CHECK_FALSE(compatible(cl(1, 2, 3), cl(-1, 4, 5)));
    CHECK(compatible(cl(1, 2, 3), cl(4, 5, 6)));
}

TEST_CASE("string and assignment conversions")
{
    const StringW w = StringW::parse("x1x2x3~x4x5~x6");
    CHECK(w.to_string() == "x1x2x3~x4x5~x6");
    const Assignment a = assignment_of_string(w);
    CHECK_FALSE(a.value(1));
    CHECK(a.value(4));
    CHECK(a.value(6));
    CHECK(string_of_assignment(a) == w);
    CHECK_THROWS_AS((void)StringW::parse("x1x3"), Error);
    CHECK_THROWS_AS((void)StringW::parse("y1"), Error);
}

TEST_CASE("clause set of a six-letter string")
{
    // The listing for x1x2x3~x4x5~x6, written out by hand in rank order.
    const StringW w = StringW::parse("x1x2x3~x4x5~x6");
    const std::vector<std::string> expected{
        "x1 x2 x3",  "x1 x2 ~x4",  "x1 x2 x5",   "x1 x2 ~x6",  "x1 x3 ~x4",
        "x1 x3 x5",  "x1 x3 ~x6",  "x1 ~x4 x5",  "x1 ~x4 ~x6", "x1 x5 ~x6",
        "x2 x3 ~x4", "x2 x3 x5",   "x2 x3 ~x6",  "x2 ~x4 x5",  "x2 ~x4 ~x6",
        "x2 x5 ~x6", "x3 ~x4 x5",  "x3 ~x4 ~x6", "x3 x5 ~x6",  "~x4 x5 ~x6",
    };
    const auto set = clause_set_of_string(w);
    REQUIRE(set.size() == expected.size());
    for (std::size_t i = 0; i < set.size(); ++i)
        CHECK(set[i].to_short_string() == expected[i]);
    CHECK(string_of_clause_set(set, 6) == w);
}

TEST_CASE("string_of_clause_set errors")
{
    const std::vector<Clause3> incompatible{cl(1, 2, 3), cl(-1, 2, 4)};
    try {
        (void)string_of_clause_set(incompatible, 4);
        FAIL("expected IncompatibleSet");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IncompatibleSet);
    }
    const std::vector<Clause3> partial{cl(1, 2, 3)};
    try {
        (void)string_of_clause_set(partial, 4);
        FAIL("expected IncompleteCover");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IncompleteCover);
    }
}

TEST_CASE("property: a clause is false exactly when it belongs to the assignment's clause set")
{
    for (int n = 3; n <= 6; ++n) {
        for (std::uint64_t index = 0; index < (std::uint64_t{1} << n); ++index) {
            const Assignment a = Assignment::from_index(index, n);
            const auto set = clause_set_of_string(string_of_assignment(a));
            const std::set<Clause3> falsified(set.begin(), set.end());
            for (const TripleId& t : triple_table(n))
                for (int col = 1; col <= 8; ++col) {
                    const Clause3 c = clause_at(t, col);
                    CHECK(eval_clause(c, a) == !falsified.contains(c));
                }
        }
    }
}

TEST_CASE("property: string/assignment round trips for n <= 10")
{
    for (int n = 1; n <= 10; ++n)
        for (std::uint64_t index = 0; index < (std::uint64_t{1} << n); index += 7) {
            const Assignment a = Assignment::from_index(index, n);
            const StringW w = string_of_assignment(a);
            CHECK(assignment_of_string(w) == a);
            CHECK(StringW::parse(w.to_string()) == w);
            if (n >= 3)
                CHECK(string_of_clause_set(clause_set_of_string(w), n) == w);
        }
}

TEST_CASE("dimacs value rendering")
{
    Assignment a(3);
    a.set(2, true);
    CHECK(a.to_dimacs_values() == "-1 2 -3 0");
    CHECK(Assignment::from_index(5, 3).to_dimacs_values() == "1 -2 3 0");
}
