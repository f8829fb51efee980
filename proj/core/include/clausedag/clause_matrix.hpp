#pragma once

// The clause matrix (one row per variable triple, one cell per sign
// pattern), the removal-condition grid, and the propagation that kills
// cells to a fixpoint.

#include "clausedag/clause.hpp"
#include "clausedag/dimacs.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace clausedag {

// Why a cell is no longer alive. Diagnostics only; liveness is what the
// algorithms read.
enum class CellState : std::uint8_t {
    Alive = 0,
    Subtracted,     // a clause of the formula
    PairCondition,  // contains a forbidden literal pair
    UnitCondition,  // contains a forbidden literal
    Incompatible,   // conflicts with the chosen root (source matrices only)
    CdagPruned,     // its node was garbage collected from a CDAG
    RootRejected,   // root cell whose CDAG construction failed
};

[[nodiscard]] std::string_view to_string(CellState s) noexcept;

class ClauseMatrix {
public:
    ClauseMatrix() = default;
    // All C(n,3)*8 cells alive. Throws InvalidArity for n < 3.
    explicit ClauseMatrix(int n);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] std::size_t rows() const { return cells_.size() / 8; }

    [[nodiscard]] CellState state(std::size_t rank, int column) const
    {
        return cells_[(rank - 1) * 8 + static_cast<std::size_t>(column - 1)];
    }
    [[nodiscard]] bool alive(std::size_t rank, int column) const
    {
        return state(rank, column) == CellState::Alive;
    }
    [[nodiscard]] bool alive(const Clause3& c) const;

    // Bit (column-1) set when the cell is alive.
    [[nodiscard]] std::uint8_t row_mask(std::size_t rank) const;
    [[nodiscard]] std::size_t alive_count() const;
    [[nodiscard]] std::size_t count(CellState s) const;

    // Kills a live cell and records why. Returns false if it was already dead.
    bool kill(std::size_t rank, int column, CellState why);
    bool kill(const Clause3& c, CellState why);

    // Overwrites a cell's state; used when seeding a source matrix.
    void set_state(std::size_t rank, int column, CellState s)
    {
        cells_[(rank - 1) * 8 + static_cast<std::size_t>(column - 1)] = s;
    }

    friend bool operator==(const ClauseMatrix&, const ClauseMatrix&) = default;

private:
    int n_ = 0;
    std::vector<CellState> cells_;
};

// A symmetric 2n x 2n grid over literal indices. A diagonal entry forbids a
// literal; an off-diagonal entry forbids a pair of literals occurring
// together. Entries are only ever switched on.
class RemovalConditions {
public:
    RemovalConditions() = default;
    explicit RemovalConditions(int n);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] int size() const { return 2 * n_; }

    [[nodiscard]] bool get(int a, int b) const
    {
        return grid_[static_cast<std::size_t>(a - 1) * static_cast<std::size_t>(size())
                     + static_cast<std::size_t>(b - 1)]
               != 0;
    }
    [[nodiscard]] bool forbidden(Literal l) const { return get(l.index(), l.index()); }
    [[nodiscard]] bool forbidden(Literal a, Literal b) const { return get(a.index(), b.index()); }

    // Both (a,b) and (b,a) are set. Returns whether the entry was new.
    bool set(int a, int b);
    bool forbid(Literal l) { return set(l.index(), l.index()); }
    bool forbid(Literal a, Literal b) { return set(a.index(), b.index()); }

    // Entries in the order they were first set, as (min index, max index).
    [[nodiscard]] const std::vector<std::pair<int, int>>& history() const { return history_; }
    [[nodiscard]] std::vector<Literal> units() const;
    [[nodiscard]] std::vector<std::pair<Literal, Literal>> pairs() const;
    [[nodiscard]] bool empty() const { return history_.empty(); }

    friend bool operator==(const RemovalConditions& a, const RemovalConditions& b)
    {
        return a.n_ == b.n_ && a.grid_ == b.grid_;
    }

private:
    int n_ = 0;
    std::vector<std::uint8_t> grid_;
    std::vector<std::pair<int, int>> history_;
};

enum class ConditionMatch { None, Pair, Unit };

// Which kind of condition (if any) makes c useless. A forbidden literal
// takes precedence over a forbidden pair.
[[nodiscard]] ConditionMatch match_condition(const Clause3& c, const RemovalConditions& rc);
[[nodiscard]] bool clause_matches_condition(const Clause3& c, const RemovalConditions& rc);

// Literal-sequence variant used for the union D of two clauses' literals.
[[nodiscard]] bool literals_match_condition(std::span<const Literal> lits, const RemovalConditions& rc);

[[nodiscard]] ClauseMatrix generate_cm(int n);

// Kills exactly the cells of f's clauses. Returns the number newly killed.
std::size_t subtract(ClauseMatrix& cm, const Formula& f);

// One pass over every row: two dead cells in a peer group that differ only in
// one polarity forbid the shared literal pair; four dead cells sharing one
// literal forbid that literal. Returns whether any entry was new.
bool find_removal_conditions(const ClauseMatrix& matrix, RemovalConditions& rc);

struct GcStats {
    std::size_t pair_kills = 0;
    std::size_t unit_kills = 0;
    std::size_t rounds = 0;
};

// Removes cells matching rc, rediscovers conditions, repeats to fixpoint.
GcStats garbage_collect(ClauseMatrix& matrix, RemovalConditions& rc);

// False iff some row has no live cell.
[[nodiscard]] bool matrix_is_valid(const ClauseMatrix& matrix);

} // namespace clausedag
