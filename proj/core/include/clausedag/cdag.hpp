#pragma once

// The layered clause DAG built on top of a root clause: its source matrix
// and local removal conditions, clause insertion, merging, pruning, the
// staged construction, and certificate extraction.

#include "clausedag/clause.hpp"
#include "clausedag/clause_matrix.hpp"
#include "clausedag/records.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace clausedag {

enum class Side : std::uint8_t { Root, Left, Right };

struct Node {
    Clause3 clause;
    Side side = Side::Root;
    // Clauses of child nodes, all in the next populated column.
    std::vector<Clause3> left;
    std::vector<Clause3> right;

    [[nodiscard]] bool has_children() const { return !left.empty() || !right.empty(); }
    [[nodiscard]] std::vector<Clause3> children() const;

    friend bool operator==(const Node&, const Node&) = default;
};

// Columns are keyed by triple rank; only populated columns are stored. The
// root occupies the first populated column. Copies are deep.
class Cdag {
public:
    Cdag() = default;
    Cdag(int n, const Clause3& root);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] const Clause3& root() const { return root_; }
    [[nodiscard]] std::size_t length() const { return columns_.size(); }
    [[nodiscard]] std::size_t node_count() const;
    [[nodiscard]] bool empty() const { return columns_.empty(); }

    [[nodiscard]] const std::map<std::size_t, std::vector<Node>>& columns() const { return columns_; }
    [[nodiscard]] std::map<std::size_t, std::vector<Node>>& columns() { return columns_; }

    [[nodiscard]] const Node* find(const Clause3& c) const;
    [[nodiscard]] Node* find(const Clause3& c);
    [[nodiscard]] bool contains(const Clause3& c) const { return find(c) != nullptr; }

    // Adds a node to the column of c's triple. No edges are created. Returns
    // false if the clause is already present.
    bool add_node(const Clause3& c, Side side);
    // Removes the node and every reference to it from the previous column.
    bool remove_node(const Clause3& c);
    // Records parent -> child on the given side (Root means left).
    void link(const Clause3& parent, const Clause3& child, Side side);

    // Rebuilds every edge: a node's children are the nodes of the next
    // populated column whose clauses are compatible with its own, placed in
    // the right list when the child was inserted on the right side.
    void relink();

    // All node clauses, column by column.
    [[nodiscard]] std::vector<Clause3> clauses() const;

    friend bool operator==(const Cdag&, const Cdag&) = default;

private:
    int n_ = 0;
    Clause3 root_ = make_clause(Literal::pos(1), Literal::pos(2), Literal::pos(3));
    std::map<std::size_t, std::vector<Node>> columns_;
};

struct SourceMatrix {
    ClauseMatrix sm;
    RemovalConditions lrc;
    bool valid = false;
};

// Restricts cm to the clauses compatible with the root in row 1's
// rootColumn cell, seeds local conditions from prc and propagates.
[[nodiscard]] SourceMatrix generate_sm(const ClauseMatrix& cm, const RemovalConditions& prc, int rootColumn);

// All C(|D|,3) triples of D's literals, normalized, in lexicographic order.
// D must be sorted by variable with no repeated variable.
[[nodiscard]] std::vector<Clause3> list_clauses_of_d(std::span<const Literal> d);

// True iff D carries no condition from lrc and the target can be reached
// from the root through nodes whose clauses are all compatible with D.
[[nodiscard]] bool compatible_d_with_cdag(std::span<const Literal> d, const Cdag& cdag,
                                          const Node& target, const RemovalConditions& lrc);

// Sweeps the populated columns from the root. For every node still on the
// frontier whose clause, together with c, forms a literal set D that passes
// compatible_d_with_cdag, the clauses of D are required: any of them dead in
// sm fails the insertion, the absent ones are added on the given side. The
// sweep must reach the last populated column. Edges are rebuilt on success;
// on failure cdag is left in an unspecified state.
[[nodiscard]] bool insert_clause(const Clause3& c, Cdag& cdag, const ClauseMatrix& sm,
                                 const RemovalConditions& lrc, Side side);

// Union of two CDAGs over the same root and populated columns; nodes with
// equal clauses are identified and their child lists unioned. Either input
// may be absent. Throws InvalidArgument if the two do not line up.
[[nodiscard]] std::optional<Cdag> merge(std::optional<Cdag> a, std::optional<Cdag> b);

struct CdagGcStats {
    std::size_t nodes_removed = 0;
    GcStats matrix;
};

// Removes childless nodes outside the last column (scanning last to first so
// removals cascade), kills their cells in sm, then propagates on (sm, lrc).
bool gc_cdag(Cdag& cdag, ClauseMatrix& sm, RemovalConditions& lrc, CdagGcStats* stats = nullptr);

struct CdagBuild {
    bool success = false;
    std::optional<Cdag> cdag;
    ClauseMatrix sm;
    RemovalConditions lrc;
    std::size_t restarts = 0;
};

// Staged construction for stages 4..n, restarting from the bare root
// whenever pruning removes anything. SM and LRC persist across restarts.
[[nodiscard]] CdagBuild generate_cdag(const ClauseMatrix& cm, const RemovalConditions& prc,
                                      int rootColumn, Trace* trace = nullptr);

enum class ExtractStatus { Found, NotFound, BudgetExhausted };

[[nodiscard]] std::string_view to_string(ExtractStatus s) noexcept;

struct Extraction {
    ExtractStatus status = ExtractStatus::NotFound;
    std::optional<Assignment> assignment;
    std::vector<Clause3> path;
    std::uint64_t visits = 0;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 1'000'000;

// Depth-first search for a root-to-last-column path whose clauses are
// pairwise compatible. Variables the path never mentions default to false.
[[nodiscard]] Extraction extract_certificate(const Cdag& cdag, int n,
                                             std::uint64_t nodeBudget = kDefaultNodeBudget);

} // namespace clausedag
