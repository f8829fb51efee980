#include "clausedag/clause.hpp"

#include "clausedag/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>

namespace clausedag {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::DuplicateVariable: return "DuplicateVariable";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::IncompatibleSet: return "IncompatibleSet";
    case ErrorKind::IncompleteCover: return "IncompleteCover";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::NotThreeCnf: return "NotThreeCnf";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::InvalidArity: return "InvalidArity";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

Literal Literal::from_dimacs(int value)
{
    if (value == 0)
        throw Error(ErrorKind::InvalidArgument, "literal 0 is the clause terminator");
    return {std::abs(value), value < 0};
}

std::string Literal::to_string() const
{
    return (negated_ ? "~x" : "x") + std::to_string(var_);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i)
        result = result * (n - k + i) / i;
    return result;
}

std::size_t triple_count(int n)
{
    return n < 3 ? 0 : static_cast<std::size_t>(binomial(static_cast<std::uint64_t>(n), 3));
}

namespace {

void check_triple(const TripleId& t, int n)
{
    if (!(1 <= t.i && t.i < t.j && t.j < t.k && t.k <= n))
        throw Error(ErrorKind::OutOfRange,
                    "invalid triple (" + std::to_string(t.i) + "," + std::to_string(t.j) + ","
                        + std::to_string(t.k) + ") for n=" + std::to_string(n));
}

} // namespace

std::size_t triple_rank(const TripleId& t, int n)
{
    check_triple(t, n);
    const auto un = static_cast<std::uint64_t>(n);
    const auto i = static_cast<std::uint64_t>(t.i);
    const auto j = static_cast<std::uint64_t>(t.j);
    const auto k = static_cast<std::uint64_t>(t.k);
    // Triples whose first index is below i, then those sharing i with a
    // smaller second index, then the offset of k.
    const std::uint64_t before_i = binomial(un, 3) - binomial(un - i + 1, 3);
    const std::uint64_t before_j = binomial(un - i, 2) - binomial(un - j + 1, 2);
    return static_cast<std::size_t>(before_i + before_j + (k - j));
}

TripleId rank_to_triple(std::size_t rank, int n)
{
    const std::size_t total = triple_count(n);
    if (rank < 1 || rank > total)
        throw Error(ErrorKind::OutOfRange,
                    "triple rank " + std::to_string(rank) + " outside 1.." + std::to_string(total));
    std::uint64_t remaining = rank;
    const auto un = static_cast<std::uint64_t>(n);
    Var i = 1;
    while (true) {
        const std::uint64_t block = binomial(un - static_cast<std::uint64_t>(i), 2);
        if (remaining <= block)
            break;
        remaining -= block;
        ++i;
    }
    Var j = i + 1;
    while (true) {
        const std::uint64_t block = un - static_cast<std::uint64_t>(j);
        if (remaining <= block)
            break;
        remaining -= block;
        ++j;
    }
    return {i, j, j + static_cast<Var>(remaining)};
}

const std::vector<TripleId>& triple_table(int n)
{
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<const std::vector<TripleId>>> cache;
    const std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) {
        auto table = std::make_unique<std::vector<TripleId>>();
        table->reserve(triple_count(n));
        for (Var i = 1; i <= n - 2; ++i)
            for (Var j = i + 1; j <= n - 1; ++j)
                for (Var k = j + 1; k <= n; ++k)
                    table->push_back({i, j, k});
        slot = std::move(table);
    }
    return *slot;
}

int Clause3::column() const
{
    return 1 + 4 * static_cast<int>(lits_[0].negated()) + 2 * static_cast<int>(lits_[1].negated())
           + static_cast<int>(lits_[2].negated());
}

bool Clause3::contains(Literal l) const
{
    return std::find(lits_.begin(), lits_.end(), l) != lits_.end();
}

bool Clause3::mentions(Var v) const
{
    return std::any_of(lits_.begin(), lits_.end(), [v](Literal l) { return l.var() == v; });
}

std::string Clause3::to_string() const
{
    return "(" + lits_[0].to_string() + " | " + lits_[1].to_string() + " | " + lits_[2].to_string()
           + ")";
}

std::string Clause3::to_short_string() const
{
    return lits_[0].to_string() + " " + lits_[1].to_string() + " " + lits_[2].to_string();
}

Clause3 make_clause(Literal a, Literal b, Literal c)
{
    std::array<Literal, 3> lits{a, b, c};
    for (const Literal& l : lits)
        if (l.var() < 1)
            throw Error(ErrorKind::OutOfRange, "variable index must be >= 1");
    std::sort(lits.begin(), lits.end());
    if (lits[0].var() == lits[1].var() || lits[1].var() == lits[2].var())
        throw Error(ErrorKind::DuplicateVariable,
                    "clause repeats variable x" + std::to_string(
                        lits[0].var() == lits[1].var() ? lits[0].var() : lits[1].var()));
    return Clause3(lits);
}

int column_of(const Clause3& c) { return c.column(); }

Clause3 clause_at(const TripleId& t, int column)
{
    if (column < 1 || column > 8)
        throw Error(ErrorKind::OutOfRange, "column must be in 1..8");
    const int bits = column - 1;
    return make_clause(Literal(t.i, (bits & 4) != 0), Literal(t.j, (bits & 2) != 0),
                       Literal(t.k, (bits & 1) != 0));
}

bool clause_order_less(const Clause3& a, const Clause3& b)
{
    if (a.triple() != b.triple())
        return a.triple() < b.triple();
    return a.column() < b.column();
}

bool compatible(const Clause3& a, const Clause3& b)
{
    for (const Literal& la : a.lits())
        for (const Literal& lb : b.lits())
            if (la.var() == lb.var() && la.negated() != lb.negated())
                return false;
    return true;
}

Assignment Assignment::from_index(std::uint64_t index, int n)
{
    Assignment a(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v)
        a.set(v, ((index >> (v - 1)) & 1U) != 0);
    return a;
}

std::string Assignment::to_dimacs_values() const
{
    std::string out;
    for (std::size_t v = 1; v <= values_.size(); ++v) {
        out += values_[v - 1] ? "" : "-";
        out += std::to_string(v);
        out += ' ';
    }
    out += '0';
    return out;
}

std::string StringW::to_string() const
{
    std::string out;
    for (std::size_t p = 1; p <= negated_.size(); ++p)
        out += literal(static_cast<Var>(p)).to_string();
    return out;
}

StringW StringW::parse(std::string_view text)
{
    std::vector<bool> negated;
    std::size_t pos = 0;
    while (pos < text.size()) {
        bool neg = false;
        if (text[pos] == '~') {
            neg = true;
            ++pos;
        }
        if (pos >= text.size() || text[pos] != 'x')
            throw Error(ErrorKind::SyntaxError, "expected 'x' in string literal");
        ++pos;
        std::size_t end = pos;
        while (end < text.size() && text[end] >= '0' && text[end] <= '9')
            ++end;
        if (end == pos)
            throw Error(ErrorKind::SyntaxError, "missing variable index in string literal");
        const int var = std::stoi(std::string(text.substr(pos, end - pos)));
        if (var != static_cast<int>(negated.size()) + 1)
            throw Error(ErrorKind::SyntaxError, "string positions must list x1..xn in order");
        negated.push_back(neg);
        pos = end;
    }
    return StringW(std::move(negated));
}

Assignment assignment_of_string(const StringW& w)
{
    // x_p in the string means x_p = false; ~x_p means x_p = true.
    Assignment a(w.size());
    for (std::size_t p = 1; p <= w.size(); ++p)
        a.set(static_cast<Var>(p), w.literal(static_cast<Var>(p)).negated());
    return a;
}

StringW string_of_assignment(const Assignment& a)
{
    return StringW(a.values());
}

std::vector<Clause3> clause_set_of_string(const StringW& w)
{
    const int n = static_cast<int>(w.size());
    std::vector<Clause3> out;
    out.reserve(triple_count(n));
    for (Var i = 1; i <= n - 2; ++i)
        for (Var j = i + 1; j <= n - 1; ++j)
            for (Var k = j + 1; k <= n; ++k)
                out.push_back(make_clause(w.literal(i), w.literal(j), w.literal(k)));
    return out;
}

StringW string_of_clause_set(std::span<const Clause3> clauses, int n)
{
    // 0 unset, 1 positive, 2 negative
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
    for (const Clause3& c : clauses) {
        for (const Literal& l : c.lits()) {
            if (l.var() > n)
                throw Error(ErrorKind::OutOfRange, "clause variable exceeds n");
            auto& slot = seen[static_cast<std::size_t>(l.var() - 1)];
            const std::uint8_t mark = l.negated() ? 2 : 1;
            if (slot != 0 && slot != mark)
                throw Error(ErrorKind::IncompatibleSet,
                            "clauses disagree on the polarity of x" + std::to_string(l.var()));
            slot = mark;
        }
    }
    std::vector<bool> negated(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v) {
        const auto mark = seen[static_cast<std::size_t>(v - 1)];
        if (mark == 0)
            throw Error(ErrorKind::IncompleteCover,
                        "no clause mentions x" + std::to_string(v));
        negated[static_cast<std::size_t>(v - 1)] = mark == 2;
    }
    return StringW(std::move(negated));
}

bool eval_literal(Literal l, const Assignment& a)
{
    return a.value(l.var()) != l.negated();
}

bool eval_clause(const Clause3& c, const Assignment& a)
{
    return eval_literal(c[0], a) || eval_literal(c[1], a) || eval_literal(c[2], a);
}

} // namespace clausedag
