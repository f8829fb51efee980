#pragma once

// Literals, 3-clauses, triple ranking and the correspondence between
// assignments, falsification strings and their clause sets.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace clausedag {

using Var = int;

class Literal {
public:
    constexpr Literal() = default;
    constexpr Literal(Var var, bool negated) : var_(var), negated_(negated) {}

    static constexpr Literal pos(Var v) { return {v, false}; }
    static constexpr Literal neg(Var v) { return {v, true}; }
    // Signed DIMACS integer, e.g. -3 for the negation of x_3.
    static Literal from_dimacs(int value);

    [[nodiscard]] constexpr Var var() const { return var_; }
    [[nodiscard]] constexpr bool negated() const { return negated_; }
    [[nodiscard]] constexpr Literal complement() const { return {var_, !negated_}; }

    // Row/column of this literal in a removal-condition grid:
    // x_i -> 2i-1, ~x_i -> 2i (1-based).
    [[nodiscard]] constexpr int index() const { return negated_ ? 2 * var_ : 2 * var_ - 1; }
    [[nodiscard]] static constexpr Literal from_index(int index)
    {
        return {(index + 1) / 2, index % 2 == 0};
    }

    [[nodiscard]] constexpr int to_dimacs() const { return negated_ ? -var_ : var_; }
    [[nodiscard]] std::string to_string() const;

    friend constexpr auto operator<=>(Literal, Literal) = default;

private:
    Var var_ = 1;
    bool negated_ = false;
};

[[nodiscard]] constexpr int literal_index(Literal l) { return l.index(); }

// A strictly increasing variable triple i < j < k.
struct TripleId {
    Var i = 1;
    Var j = 2;
    Var k = 3;

    friend constexpr auto operator<=>(const TripleId&, const TripleId&) = default;
};

[[nodiscard]] std::uint64_t binomial(std::uint64_t n, std::uint64_t k);
[[nodiscard]] std::size_t triple_count(int n);

// 1-based position of t in the lexicographic enumeration of triples over n
// variables (i outer, j middle, k inner).
[[nodiscard]] std::size_t triple_rank(const TripleId& t, int n);
[[nodiscard]] TripleId rank_to_triple(std::size_t rank, int n);

// All triples over n variables in rank order (index rank-1). Cached per n.
[[nodiscard]] const std::vector<TripleId>& triple_table(int n);

// Three literals over distinct variables, stored variable-ascending.
class Clause3 {
public:
    [[nodiscard]] const std::array<Literal, 3>& lits() const { return lits_; }
    [[nodiscard]] const Literal& operator[](std::size_t i) const { return lits_[i]; }

    [[nodiscard]] TripleId triple() const { return {lits_[0].var(), lits_[1].var(), lits_[2].var()}; }

    // 1 + 4*neg(first) + 2*neg(second) + neg(third).
    [[nodiscard]] int column() const;

    [[nodiscard]] bool contains(Literal l) const;
    [[nodiscard]] bool mentions(Var v) const;

    // "(x1 | ~x2 | x3)"
    [[nodiscard]] std::string to_string() const;
    // "x1 ~x2 x3"
    [[nodiscard]] std::string to_short_string() const;

    friend auto operator<=>(const Clause3&, const Clause3&) = default;

private:
    friend Clause3 make_clause(Literal, Literal, Literal);
    explicit Clause3(std::array<Literal, 3> lits) : lits_(lits) {}

    std::array<Literal, 3> lits_;
};

// Sorts by variable; throws ErrorKind::DuplicateVariable on a repeated variable.
[[nodiscard]] Clause3 make_clause(Literal a, Literal b, Literal c);

[[nodiscard]] int column_of(const Clause3& c);
[[nodiscard]] Clause3 clause_at(const TripleId& t, int column);

// Orders clauses by (triple rank, column), which for normalized clauses is
// the lexicographic order of their variable triples followed by sign pattern.
[[nodiscard]] bool clause_order_less(const Clause3& a, const Clause3& b);

// No variable occurs with opposite polarity in the two clauses.
[[nodiscard]] bool compatible(const Clause3& a, const Clause3& b);

class Assignment {
public:
    Assignment() = default;
    explicit Assignment(std::size_t n, bool value = false) : values_(n, value) {}
    explicit Assignment(std::vector<bool> values) : values_(std::move(values)) {}

    // Bit v-1 of index holds x_v.
    [[nodiscard]] static Assignment from_index(std::uint64_t index, int n);

    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] bool value(Var v) const { return values_.at(static_cast<std::size_t>(v - 1)); }
    void set(Var v, bool value) { values_.at(static_cast<std::size_t>(v - 1)) = value; }
    [[nodiscard]] const std::vector<bool>& values() const { return values_; }

    // "v -1 2 -3 0" style literal list of true literals, without the prefix.
    [[nodiscard]] std::string to_dimacs_values() const;

    friend bool operator==(const Assignment&, const Assignment&) = default;

private:
    std::vector<bool> values_;
};

// Position p holds the literal over x_p that the corresponding assignment
// makes false.
class StringW {
public:
    StringW() = default;
    explicit StringW(std::vector<bool> negated) : negated_(std::move(negated)) {}

    [[nodiscard]] std::size_t size() const { return negated_.size(); }
    [[nodiscard]] Literal literal(Var p) const
    {
        return {p, static_cast<bool>(negated_.at(static_cast<std::size_t>(p - 1)))};
    }

    // "x1x2x3~x4x5~x6"
    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] static StringW parse(std::string_view text);

    friend bool operator==(const StringW&, const StringW&) = default;

private:
    std::vector<bool> negated_;
};

[[nodiscard]] Assignment assignment_of_string(const StringW& w);
[[nodiscard]] StringW string_of_assignment(const Assignment& a);

// All C(n,3) triples of w's literals in rank order. Empty for n < 3.
[[nodiscard]] std::vector<Clause3> clause_set_of_string(const StringW& w);

// Recovers the string whose clause set contains every input clause.
// Throws IncompatibleSet or IncompleteCover.
[[nodiscard]] StringW string_of_clause_set(std::span<const Clause3> clauses, int n);

// Direct boolean evaluation.
[[nodiscard]] bool eval_literal(Literal l, const Assignment& a);
[[nodiscard]] bool eval_clause(const Clause3& c, const Assignment& a);

} // namespace clausedag
