#include "clausedag/clause_matrix.hpp"

#include "clausedag/error.hpp"

#include <algorithm>
#include <bit>

namespace clausedag {

std::string_view to_string(CellState s) noexcept
{
    switch (s) {
    case CellState::Alive: return "alive";
    case CellState::Subtracted: return "subtracted";
    case CellState::PairCondition: return "pair";
    case CellState::UnitCondition: return "unit";
    case CellState::Incompatible: return "incompatible";
    case CellState::CdagPruned: return "cdag-pruned";
    case CellState::RootRejected: return "root-rejected";
    }
    return "unknown";
}

ClauseMatrix::ClauseMatrix(int n) : n_(n)
{
    if (n < 3)
        throw Error(ErrorKind::InvalidArity, "a clause matrix needs at least 3 variables, got "
                                                 + std::to_string(n));
    cells_.assign(triple_count(n) * 8, CellState::Alive);
}

bool ClauseMatrix::alive(const Clause3& c) const
{
    if (c.triple().k > n_)
        return false;
    return alive(triple_rank(c.triple(), n_), c.column());
}

std::uint8_t ClauseMatrix::row_mask(std::size_t rank) const
{
    std::uint8_t mask = 0;
    const std::size_t base = (rank - 1) * 8;
    for (std::size_t col = 0; col < 8; ++col)
        if (cells_[base + col] == CellState::Alive)
            mask = static_cast<std::uint8_t>(mask | (1U << col));
    return mask;
}

std::size_t ClauseMatrix::alive_count() const { return count(CellState::Alive); }

std::size_t ClauseMatrix::count(CellState s) const
{
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), s));
}

bool ClauseMatrix::kill(std::size_t rank, int column, CellState why)
{
    auto& cell = cells_[(rank - 1) * 8 + static_cast<std::size_t>(column - 1)];
    if (cell != CellState::Alive)
        return false;
    cell = why;
    return true;
}

bool ClauseMatrix::kill(const Clause3& c, CellState why)
{
    return kill(triple_rank(c.triple(), n_), c.column(), why);
}

RemovalConditions::RemovalConditions(int n) : n_(n)
{
    grid_.assign(static_cast<std::size_t>(2 * n) * static_cast<std::size_t>(2 * n), 0);
}

bool RemovalConditions::set(int a, int b)
{
    if (a < 1 || b < 1 || a > size() || b > size())
        throw Error(ErrorKind::OutOfRange, "removal-condition index out of range");
    const auto w = static_cast<std::size_t>(size());
    auto& ab = grid_[static_cast<std::size_t>(a - 1) * w + static_cast<std::size_t>(b - 1)];
    if (ab != 0)
        return false;
    ab = 1;
    grid_[static_cast<std::size_t>(b - 1) * w + static_cast<std::size_t>(a - 1)] = 1;
    history_.emplace_back(std::min(a, b), std::max(a, b));
    return true;
}

std::vector<Literal> RemovalConditions::units() const
{
    std::vector<Literal> out;
    for (int d = 1; d <= size(); ++d)
        if (get(d, d))
            out.push_back(Literal::from_index(d));
    return out;
}

std::vector<std::pair<Literal, Literal>> RemovalConditions::pairs() const
{
    std::vector<std::pair<Literal, Literal>> out;
    for (int a = 1; a <= size(); ++a)
        for (int b = a + 1; b <= size(); ++b)
            if (get(a, b))
                out.emplace_back(Literal::from_index(a), Literal::from_index(b));
    return out;
}

ConditionMatch match_condition(const Clause3& c, const RemovalConditions& rc)
{
    for (const Literal& l : c.lits())
        if (rc.forbidden(l))
            return ConditionMatch::Unit;
    if (rc.forbidden(c[0], c[1]) || rc.forbidden(c[0], c[2]) || rc.forbidden(c[1], c[2]))
        return ConditionMatch::Pair;
    return ConditionMatch::None;
}

bool clause_matches_condition(const Clause3& c, const RemovalConditions& rc)
{
    return match_condition(c, rc) != ConditionMatch::None;
}

bool literals_match_condition(std::span<const Literal> lits, const RemovalConditions& rc)
{
    for (std::size_t a = 0; a < lits.size(); ++a) {
        if (lits[a].var() > rc.n())
            continue;
        for (std::size_t b = a; b < lits.size(); ++b)
            if (lits[b].var() <= rc.n() && rc.forbidden(lits[a], lits[b]))
                return true;
    }
    return false;
}

ClauseMatrix generate_cm(int n) { return ClauseMatrix(n); }

std::size_t subtract(ClauseMatrix& cm, const Formula& f)
{
    std::size_t killed = 0;
    for (const Clause3& c : f.clauses) {
        if (c.triple().k > cm.n())
            throw Error(ErrorKind::OutOfRange, "formula uses a variable beyond the matrix");
        if (cm.kill(c, CellState::Subtracted))
            ++killed;
    }
    return killed;
}

namespace {

// Two columns of a peer group that differ in exactly one polarity, and the
// positions (within the clause) of the two literals they share. All twelve
// such pairs are listed; the ordering follows the printed procedure with
// (5,6) slotted in by column.
struct PairPattern {
    int a;
    int b;
    int first;
    int second;
};

constexpr std::array<PairPattern, 12> kPairPatterns{{
    {1, 2, 0, 1},
    {1, 3, 0, 2},
    {1, 5, 1, 2},
    {2, 4, 0, 2},
    {2, 6, 1, 2},
    {3, 4, 0, 1},
    {3, 7, 1, 2},
    {4, 8, 1, 2},
    {5, 6, 0, 1},
    {5, 7, 0, 2},
    {6, 8, 0, 2},
    {7, 8, 0, 1},
}};

// Four columns sharing one literal, and that literal's position.
struct UnitPattern {
    std::array<int, 4> cols;
    int position;
};

constexpr std::array<UnitPattern, 6> kUnitPatterns{{
    {{1, 2, 3, 4}, 0},
    {{1, 2, 5, 6}, 1},
    {{1, 3, 5, 7}, 2},
    {{5, 6, 7, 8}, 0},
    {{3, 4, 7, 8}, 1},
    {{2, 4, 6, 8}, 2},
}};

constexpr bool dead(std::uint8_t mask, int col) { return (mask & (1U << (col - 1))) == 0; }

} // namespace

bool find_removal_conditions(const ClauseMatrix& matrix, RemovalConditions& rc)
{
    bool found = false;
    const auto& triples = triple_table(matrix.n());
    for (std::size_t rank = 1; rank <= matrix.rows(); ++rank) {
        const std::uint8_t mask = matrix.row_mask(rank);
        if (mask == 0xFF)
            continue;
        const TripleId& t = triples[rank - 1];
        for (const PairPattern& p : kPairPatterns) {
            if (dead(mask, p.a) && dead(mask, p.b)) {
                const Clause3 c = clause_at(t, p.a);
                found = rc.forbid(c[static_cast<std::size_t>(p.first)],
                                  c[static_cast<std::size_t>(p.second)])
                        || found;
            }
        }
        for (const UnitPattern& u : kUnitPatterns) {
            if (std::all_of(u.cols.begin(), u.cols.end(), [mask](int col) { return dead(mask, col); })) {
                const Clause3 c = clause_at(t, u.cols[0]);
                found = rc.forbid(c[static_cast<std::size_t>(u.position)]) || found;
            }
        }
    }
    return found;
}

GcStats garbage_collect(ClauseMatrix& matrix, RemovalConditions& rc)
{
    GcStats stats;
    const auto& triples = triple_table(matrix.n());
    while (true) {
        ++stats.rounds;
        if (!rc.empty()) {
            for (std::size_t rank = 1; rank <= matrix.rows(); ++rank) {
                const std::uint8_t mask = matrix.row_mask(rank);
                if (mask == 0)
                    continue;
                const TripleId& t = triples[rank - 1];
                for (int col = 1; col <= 8; ++col) {
                    if (dead(mask, col))
                        continue;
                    switch (match_condition(clause_at(t, col), rc)) {
                    case ConditionMatch::Unit:
                        matrix.kill(rank, col, CellState::UnitCondition);
                        ++stats.unit_kills;
                        break;
                    case ConditionMatch::Pair:
                        matrix.kill(rank, col, CellState::PairCondition);
                        ++stats.pair_kills;
                        break;
                    case ConditionMatch::None:
                        break;
                    }
                }
            }
        }
        if (!find_removal_conditions(matrix, rc))
            break;
    }
    return stats;
}

bool matrix_is_valid(const ClauseMatrix& matrix)
{
    for (std::size_t rank = 1; rank <= matrix.rows(); ++rank)
        if (matrix.row_mask(rank) == 0)
            return false;
    return true;
}

} // namespace clausedag
