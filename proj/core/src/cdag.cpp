#include "clausedag/cdag.hpp"

#include "clausedag/error.hpp"

#include <algorithm>
#include <set>

namespace clausedag {

std::vector<Clause3> Node::children() const
{
    std::vector<Clause3> out = left;
    out.insert(out.end(), right.begin(), right.end());
    return out;
}

Cdag::Cdag(int n, const Clause3& root) : n_(n), root_(root)
{
    if (root.triple().k > n)
        throw Error(ErrorKind::OutOfRange, "root clause uses a variable beyond n");
    add_node(root, Side::Root);
}

std::size_t Cdag::node_count() const
{
    std::size_t total = 0;
    for (const auto& [rank, nodes] : columns_)
        total += nodes.size();
    return total;
}

const Node* Cdag::find(const Clause3& c) const
{
    if (c.triple().k > n_)
        return nullptr;
    const auto it = columns_.find(triple_rank(c.triple(), n_));
    if (it == columns_.end())
        return nullptr;
    for (const Node& node : it->second)
        if (node.clause == c)
            return &node;
    return nullptr;
}

Node* Cdag::find(const Clause3& c)
{
    return const_cast<Node*>(std::as_const(*this).find(c));
}

bool Cdag::add_node(const Clause3& c, Side side)
{
    if (contains(c))
        return false;
    auto& column = columns_[triple_rank(c.triple(), n_)];
    column.push_back(Node{c, side, {}, {}});
    std::sort(column.begin(), column.end(),
              [](const Node& a, const Node& b) { return a.clause.column() < b.clause.column(); });
    return true;
}

bool Cdag::remove_node(const Clause3& c)
{
    const auto it = columns_.find(triple_rank(c.triple(), n_));
    if (it == columns_.end())
        return false;
    auto& nodes = it->second;
    const auto pos = std::find_if(nodes.begin(), nodes.end(), [&](const Node& n) { return n.clause == c; });
    if (pos == nodes.end())
        return false;
    nodes.erase(pos);
    if (it != columns_.begin()) {
        for (Node& parent : std::prev(it)->second) {
            std::erase(parent.left, c);
            std::erase(parent.right, c);
        }
    }
    if (nodes.empty())
        columns_.erase(it);
    return true;
}

void Cdag::link(const Clause3& parent, const Clause3& child, Side side)
{
    Node* p = find(parent);
    if (p == nullptr || !contains(child))
        throw Error(ErrorKind::InvalidArgument, "link endpoints must both be nodes");
    auto& list = side == Side::Right ? p->right : p->left;
    if (std::find(list.begin(), list.end(), child) == list.end())
        list.push_back(child);
}

void Cdag::relink()
{
    for (auto it = columns_.begin(); it != columns_.end(); ++it) {
        const auto next = std::next(it);
        for (Node& node : it->second) {
            node.left.clear();
            node.right.clear();
            if (next == columns_.end())
                continue;
            for (const Node& child : next->second) {
                if (!compatible(node.clause, child.clause))
                    continue;
                (child.side == Side::Right ? node.right : node.left).push_back(child.clause);
            }
        }
    }
}

std::vector<Clause3> Cdag::clauses() const
{
    std::vector<Clause3> out;
    for (const auto& [rank, nodes] : columns_)
        for (const Node& node : nodes)
            out.push_back(node.clause);
    return out;
}

SourceMatrix generate_sm(const ClauseMatrix& cm, const RemovalConditions& prc, int rootColumn)
{
    if (rootColumn < 1 || rootColumn > 8)
        throw Error(ErrorKind::OutOfRange, "root column must be in 1..8");
    const int n = cm.n();
    const Clause3 root = clause_at({1, 2, 3}, rootColumn);
    SourceMatrix out{ClauseMatrix(n), prc, false};
    const auto& triples = triple_table(n);
    for (std::size_t rank = 1; rank <= cm.rows(); ++rank) {
        for (int col = 1; col <= 8; ++col) {
            CellState s = cm.state(rank, col);
            if (s == CellState::Alive) {
                const bool keep = rank == 1 ? col == rootColumn
                                            : compatible(root, clause_at(triples[rank - 1], col));
                if (!keep)
                    s = CellState::Incompatible;
            }
            out.sm.set_state(rank, col, s);
        }
    }
    find_removal_conditions(out.sm, out.lrc);
    garbage_collect(out.sm, out.lrc);
    out.valid = matrix_is_valid(out.sm);
    return out;
}

std::vector<Clause3> list_clauses_of_d(std::span<const Literal> d)
{
    std::vector<Clause3> out;
    for (std::size_t a = 0; a < d.size(); ++a)
        for (std::size_t b = a + 1; b < d.size(); ++b)
            for (std::size_t c = b + 1; c < d.size(); ++c)
                out.push_back(make_clause(d[a], d[b], d[c]));
    return out;
}

namespace {

bool clause_fits(const Clause3& c, std::span<const Literal> d)
{
    for (const Literal& l : c.lits())
        for (const Literal& x : d)
            if (l.var() == x.var() && l.negated() != x.negated())
                return false;
    return true;
}

// Sorted union of two clauses' literals, or nothing if they conflict.
std::optional<std::vector<Literal>> literal_union(const Clause3& a, const Clause3& b)
{
    if (!compatible(a, b))
        return std::nullopt;
    std::vector<Literal> d(a.lits().begin(), a.lits().end());
    d.insert(d.end(), b.lits().begin(), b.lits().end());
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d;
}

} // namespace

bool compatible_d_with_cdag(std::span<const Literal> d, const Cdag& cdag, const Node& target,
                            const RemovalConditions& lrc)
{
    if (literals_match_condition(d, lrc))
        return false;
    std::set<Clause3> frontier;
    if (clause_fits(cdag.root(), d))
        frontier.insert(cdag.root());
    for (const auto& [rank, nodes] : cdag.columns()) {
        if (frontier.empty())
            return false;
        if (frontier.contains(target.clause))
            return true;
        std::set<Clause3> next;
        for (const Node& node : nodes) {
            if (!frontier.contains(node.clause))
                continue;
            for (const Clause3& child : node.children())
                if (clause_fits(child, d))
                    next.insert(child);
        }
        frontier = std::move(next);
    }
    return false;
}

bool insert_clause(const Clause3& c, Cdag& cdag, const ClauseMatrix& sm, const RemovalConditions& lrc,
                   Side side)
{
    if (cdag.empty() || !sm.alive(c))
        return false;
    std::vector<Clause3> pending;
    std::set<Clause3> frontier{cdag.root()};
    for (const auto& [rank, nodes] : cdag.columns()) {
        bool accepted = false;
        std::set<Clause3> next;
        for (const Node& node : nodes) {
            if (!frontier.contains(node.clause))
                continue;
            const auto d = literal_union(node.clause, c);
            if (!d || !compatible_d_with_cdag(*d, cdag, node, lrc))
                continue;
            accepted = true;
            for (const Clause3& child : node.children())
                next.insert(child);
            for (const Clause3& required : list_clauses_of_d(*d)) {
                if (!sm.alive(required))
                    return false;
                if (!cdag.contains(required)
                    && std::find(pending.begin(), pending.end(), required) == pending.end())
                    pending.push_back(required);
            }
        }
        if (!accepted)
            return false;
        frontier = std::move(next);
    }
    std::sort(pending.begin(), pending.end(), clause_order_less);
    for (const Clause3& p : pending)
        cdag.add_node(p, side);
    cdag.relink();
    return true;
}

std::optional<Cdag> merge(std::optional<Cdag> a, std::optional<Cdag> b)
{
    if (!a)
        return b;
    if (!b)
        return a;
    if (a->root() != b->root() || a->n() != b->n())
        throw Error(ErrorKind::InvalidArgument, "merged CDAGs must share their root");
    bool same_shape = a->length() == b->length();
    for (const auto& [rank, nodes] : b->columns()) {
        same_shape = same_shape && a->columns().contains(rank);
        for (const Node& node : nodes)
            a->add_node(node.clause, node.side);
    }
    if (!same_shape) {
        // Column positions moved, so the old edges no longer point at the
        // next populated column.
        a->relink();
        return a;
    }
    for (const auto& [rank, nodes] : b->columns()) {
        for (const Node& node : nodes) {
            for (const Clause3& child : node.left)
                a->link(node.clause, child, Side::Left);
            for (const Clause3& child : node.right)
                a->link(node.clause, child, Side::Right);
        }
    }
    return a;
}

bool gc_cdag(Cdag& cdag, ClauseMatrix& sm, RemovalConditions& lrc, CdagGcStats* stats)
{
    std::size_t removed = 0;
    auto& columns = cdag.columns();
    if (columns.size() > 1) {
        // Walk keys from the second-to-last column backwards. Keys are
        // collected first because removals may erase whole columns.
        std::vector<std::size_t> ranks;
        for (const auto& [rank, nodes] : columns)
            ranks.push_back(rank);
        ranks.pop_back();
        for (auto r = ranks.rbegin(); r != ranks.rend(); ++r) {
            const auto it = columns.find(*r);
            if (it == columns.end())
                continue;
            std::vector<Clause3> childless;
            for (const Node& node : it->second)
                if (!node.has_children())
                    childless.push_back(node.clause);
            for (const Clause3& c : childless) {
                cdag.remove_node(c);
                sm.kill(c, CellState::CdagPruned);
                ++removed;
            }
        }
    }
    const std::size_t before = sm.alive_count();
    const GcStats gc = garbage_collect(sm, lrc);
    if (stats != nullptr) {
        stats->nodes_removed = removed;
        stats->matrix = gc;
    }
    return removed > 0 || sm.alive_count() != before;
}

namespace {

std::string side_name(Side s)
{
    switch (s) {
    case Side::Root: return "root";
    case Side::Left: return "left";
    case Side::Right: return "right";
    }
    return "?";
}

void emit(Trace* trace, Record r)
{
    if (trace != nullptr)
        trace->push_back(std::move(r));
}

} // namespace

CdagBuild generate_cdag(const ClauseMatrix& cm, const RemovalConditions& prc, int rootColumn, Trace* trace)
{
    CdagBuild build;
    SourceMatrix source = generate_sm(cm, prc, rootColumn);
    build.sm = std::move(source.sm);
    build.lrc = std::move(source.lrc);
    const Clause3 root = clause_at({1, 2, 3}, rootColumn);
    emit(trace, Record("source").add("root", root.to_short_string())
                    .add("alive", build.sm.alive_count())
                    .add("conditions", build.lrc.history().size())
                    .add("valid", source.valid));
    if (!source.valid)
        return build;

    const int n = cm.n();
    const Literal l1 = root[0];
    const Literal l2 = root[1];
    while (true) {
        if (!build.sm.alive(root) || !matrix_is_valid(build.sm)) {
            emit(trace, Record("fail").add("reason", "source matrix invalid").add("restarts", build.restarts));
            return build;
        }
        Cdag current(n, root);
        bool restarted = false;
        for (Var i = 4; i <= n; ++i) {
            emit(trace, Record("stage").add("stage", i).add("restarts", build.restarts));
            std::optional<Cdag> sides[2];
            const Side side_of[2] = {Side::Left, Side::Right};
            for (int s = 0; s < 2; ++s) {
                const Clause3 c = make_clause(l1, l2, Literal(i, s == 1));
                if (!build.sm.alive(c)) {
                    emit(trace, Record("insert").add("stage", i).add("clause", c.to_short_string())
                                    .add("side", side_name(side_of[s])).add("outcome", "dead"));
                    continue;
                }
                Cdag copy = current;
                const bool ok = insert_clause(c, copy, build.sm, build.lrc, side_of[s]);
                emit(trace, Record("insert").add("stage", i).add("clause", c.to_short_string())
                                .add("side", side_name(side_of[s])).add("outcome", ok ? "ok" : "rejected"));
                if (ok)
                    sides[s] = std::move(copy);
            }
            std::optional<Cdag> merged = merge(std::move(sides[0]), std::move(sides[1]));
            if (!merged) {
                emit(trace, Record("fail").add("reason", "both inserts failed").add("stage", i));
                return build;
            }
            current = std::move(*merged);
            emit(trace, Record("merge").add("stage", i).add("length", current.length())
                            .add("nodes", current.node_count()));
            CdagGcStats stats;
            if (gc_cdag(current, build.sm, build.lrc, &stats)) {
                ++build.restarts;
                emit(trace, Record("gc").add("stage", i).add("nodes_removed", stats.nodes_removed)
                                .add("cells_killed", stats.matrix.pair_kills + stats.matrix.unit_kills)
                                .add("restart", true));
                restarted = true;
                break;
            }
        }
        if (restarted)
            continue;
        build.success = true;
        emit(trace, Record("built").add("length", current.length()).add("nodes", current.node_count())
                        .add("restarts", build.restarts));
        build.cdag = std::move(current);
        return build;
    }
}

std::string_view to_string(ExtractStatus s) noexcept
{
    switch (s) {
    case ExtractStatus::Found: return "found";
    case ExtractStatus::NotFound: return "notFound";
    case ExtractStatus::BudgetExhausted: return "budgetExhausted";
    }
    return "unknown";
}

namespace {

class PathSearch {
public:
    PathSearch(const Cdag& cdag, int n, std::uint64_t budget)
        : budget_(budget), positive_(static_cast<std::size_t>(n) + 1, 0),
          negative_(static_cast<std::size_t>(n) + 1, 0)
    {
        for (const auto& [rank, nodes] : cdag.columns())
            columns_.push_back(&nodes);
    }

    ExtractStatus run()
    {
        if (columns_.empty())
            return ExtractStatus::NotFound;
        for (const Node& node : *columns_.front()) {
            const auto s = visit(0, node);
            if (s != ExtractStatus::NotFound)
                return s;
        }
        return ExtractStatus::NotFound;
    }

    [[nodiscard]] const std::vector<Clause3>& path() const { return path_; }
    [[nodiscard]] std::uint64_t visits() const { return visits_; }

private:
    ExtractStatus visit(std::size_t depth, const Node& node)
    {
        if (++visits_ > budget_)
            return ExtractStatus::BudgetExhausted;
        for (const Literal& l : node.clause.lits()) {
            const auto v = static_cast<std::size_t>(l.var());
            if ((l.negated() ? positive_ : negative_)[v] > 0)
                return ExtractStatus::NotFound;
        }
        apply(node.clause, 1);
        path_.push_back(node.clause);
        if (depth + 1 == columns_.size())
            return ExtractStatus::Found;
        for (const Clause3& child : node.children()) {
            const Node* next = find_in(*columns_[depth + 1], child);
            if (next == nullptr)
                continue;
            const auto s = visit(depth + 1, *next);
            if (s != ExtractStatus::NotFound)
                return s;
        }
        path_.pop_back();
        apply(node.clause, -1);
        return ExtractStatus::NotFound;
    }

    void apply(const Clause3& c, int delta)
    {
        for (const Literal& l : c.lits())
            (l.negated() ? negative_ : positive_)[static_cast<std::size_t>(l.var())] += delta;
    }

    static const Node* find_in(const std::vector<Node>& nodes, const Clause3& c)
    {
        for (const Node& node : nodes)
            if (node.clause == c)
                return &node;
        return nullptr;
    }

    std::uint64_t budget_;
    std::uint64_t visits_ = 0;
    std::vector<const std::vector<Node>*> columns_;
    std::vector<int> positive_;
    std::vector<int> negative_;
    std::vector<Clause3> path_;
};

} // namespace

Extraction extract_certificate(const Cdag& cdag, int n, std::uint64_t nodeBudget)
{
    Extraction out;
    PathSearch search(cdag, n, nodeBudget);
    out.status = search.run();
    out.visits = search.visits();
    if (out.status != ExtractStatus::Found)
        return out;
    out.path = search.path();
    std::vector<bool> covered(static_cast<std::size_t>(n) + 1, false);
    for (const Clause3& c : out.path)
        for (const Literal& l : c.lits())
            covered[static_cast<std::size_t>(l.var())] = true;
    const bool complete = std::all_of(covered.begin() + 1, covered.end(), [](bool b) { return b; });
    if (complete) {
        out.assignment = assignment_of_string(string_of_clause_set(out.path, n));
    } else {
        Assignment a(static_cast<std::size_t>(n));
        for (const Clause3& c : out.path)
            for (const Literal& l : c.lits())
                a.set(l.var(), l.negated());
        out.assignment = std::move(a);
    }
    return out;
}

} // namespace clausedag
