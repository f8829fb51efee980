#include "clausedag/render.hpp"

#include "clausedag/solver.hpp"

#include <iomanip>
#include <sstream>

namespace clausedag {

char cell_code(CellState s) noexcept
{
    switch (s) {
    case CellState::Alive: return '+';
    case CellState::Subtracted: return 'S';
    case CellState::PairCondition: return 'P';
    case CellState::UnitCondition: return 'U';
    case CellState::Incompatible: return 'I';
    case CellState::CdagPruned: return 'G';
    case CellState::RootRejected: return 'R';
    }
    return '?';
}

namespace {

std::string triple_text(const TripleId& t)
{
    return "(" + std::to_string(t.i) + "," + std::to_string(t.j) + "," + std::to_string(t.k) + ")";
}

std::string pad(std::string s, std::size_t width)
{
    if (s.size() < width)
        s.append(width - s.size(), ' ');
    return s;
}

} // namespace

std::string render_matrix(const ClauseMatrix& m)
{
    const auto& triples = triple_table(m.n());
    std::ostringstream os;
    std::size_t cell_width = 0;
    for (const TripleId& t : triples)
        cell_width = std::max(cell_width, clause_at(t, 8).to_short_string().size());
    cell_width += 1;
    os << pad("rank", 6) << pad("triple", 12);
    for (int col = 1; col <= 8; ++col)
        os << pad("c" + std::to_string(col), cell_width);
    os << "\n";
    for (std::size_t rank = 1; rank <= m.rows(); ++rank) {
        const TripleId& t = triples[rank - 1];
        std::string line = pad(std::to_string(rank), 6) + pad(triple_text(t), 12);
        for (int col = 1; col <= 8; ++col) {
            const CellState s = m.state(rank, col);
            line += pad(s == CellState::Alive ? clause_at(t, col).to_short_string() : std::string(1, cell_code(s)),
                        cell_width);
        }
        while (!line.empty() && line.back() == ' ')
            line.pop_back();
        os << line << "\n";
    }
    os << "alive " << m.alive_count() << " of " << m.rows() * 8 << "\n";
    return os.str();
}

Trace matrix_records(const ClauseMatrix& m, const std::string& label)
{
    Trace out;
    const auto& triples = triple_table(m.n());
    for (std::size_t rank = 1; rank <= m.rows(); ++rank) {
        std::string cells;
        for (int col = 1; col <= 8; ++col)
            cells += cell_code(m.state(rank, col));
        out.push_back(Record("row").add("matrix", label).add("rank", rank)
                          .add("triple", triple_text(triples[rank - 1])).add("cells", cells));
    }
    return out;
}

std::string render_conditions(const RemovalConditions& rc)
{
    std::ostringstream os;
    for (const auto& [a, b] : rc.history()) {
        if (a == b)
            os << "unit " << Literal::from_index(a).to_string() << "\n";
        else
            os << "pair " << Literal::from_index(a).to_string() << " " << Literal::from_index(b).to_string() << "\n";
    }
    if (rc.history().empty())
        os << "(none)\n";
    return os.str();
}

Trace condition_records(const RemovalConditions& rc, const std::string& label)
{
    Trace out;
    for (const auto& [a, b] : rc.history()) {
        Record r("condition");
        r.add("set", label).add("kind", a == b ? "unit" : "pair").add("first", Literal::from_index(a).to_string());
        if (a != b)
            r.add("second", Literal::from_index(b).to_string());
        out.push_back(std::move(r));
    }
    return out;
}

std::string render_cdag(const Cdag& cdag)
{
    std::ostringstream os;
    const auto& triples = triple_table(cdag.n());
    for (const auto& [rank, nodes] : cdag.columns()) {
        os << "column " << rank << " " << triple_text(triples[rank - 1]) << "\n";
        for (const Node& node : nodes) {
            os << "  " << node.clause.to_string() << " ->";
            for (const Clause3& c : node.left)
                os << " L" << c.to_string();
            for (const Clause3& c : node.right)
                os << " R" << c.to_string();
            os << "\n";
        }
    }
    return os.str();
}

Formula worked_example()
{
    return parse_dimacs("p cnf 6 6\n"
                        "-1 -2 -3 0\n"
                        "-2 -3 4 0\n"
                        "-2 -3 -4 0\n"
                        "1 -2 5 0\n"
                        "-2 3 -5 0\n"
                        "-1 -2 -6 0\n");
}

Demo run_demo()
{
    Demo demo;
    std::ostringstream os;
    auto add_records = [&demo](Trace t) {
        for (auto& r : t)
            demo.records.push_back(std::move(r));
    };

    const Formula f = worked_example();
    os << "== formula ==\n" << emit_dimacs(f);
    for (const Clause3& c : f.clauses)
        demo.records.push_back(Record("clause").add("clause", c.to_short_string()));

    ClauseMatrix cm = generate_cm(f.n);
    const std::size_t subtracted = subtract(cm, f);
    RemovalConditions prc(f.n);
    const GcStats gc = garbage_collect(cm, prc);
    os << "\n== clause matrix after subtraction and propagation ==\n"
       << "subtracted " << subtracted << ", pair kills " << gc.pair_kills << ", unit kills " << gc.unit_kills
       << ", valid " << (matrix_is_valid(cm) ? "yes" : "no") << "\n"
       << render_matrix(cm) << "\n== global removal conditions ==\n" << render_conditions(prc);
    demo.records.push_back(Record("propagate").add("subtracted", subtracted).add("pair_kills", gc.pair_kills)
                               .add("unit_kills", gc.unit_kills).add("valid", matrix_is_valid(cm)));
    add_records(matrix_records(cm, "cm"));
    add_records(condition_records(prc, "prc"));

    const SourceMatrix source = generate_sm(cm, prc, 1);
    os << "\n== source matrix for root " << clause_at({1, 2, 3}, 1).to_string() << " ==\n"
       << render_matrix(source.sm) << "\n== local removal conditions ==\n" << render_conditions(source.lrc);
    add_records(matrix_records(source.sm, "sm"));
    add_records(condition_records(source.lrc, "lrc"));

    Trace trace;
    const CdagBuild build = generate_cdag(cm, prc, 1, &trace);
    os << "\n== construction ==\n";
    for (const Record& r : trace)
        os << to_text_line(r) << "\n";
    add_records(std::move(trace));

    if (build.success) {
        os << "\n== final CDAG ==\n" << render_cdag(*build.cdag);
        const Extraction ex = extract_certificate(*build.cdag, f.n);
        os << "\n== certificate ==\n" << "status " << to_string(ex.status) << "\n";
        Record r("certificate");
        r.add("status", std::string(to_string(ex.status)));
        if (ex.assignment) {
            const bool ok = check_certificate(f, *ex.assignment);
            os << "v " << ex.assignment->to_dimacs_values() << "\n"
               << "string " << string_of_assignment(*ex.assignment).to_string() << "\n"
               << "verified " << (ok ? "yes" : "no") << "\n";
            r.add("values", ex.assignment->to_dimacs_values()).add("verified", ok);
        }
        demo.records.push_back(std::move(r));
    }

    const Verdict v = solve(f);
    os << "\n== verdict ==\n" << (v.satisfiable ? "s SATISFIABLE" : "s UNSATISFIABLE") << "\n";
    demo.records.push_back(Record("verdict").add("satisfiable", v.satisfiable).add("root_column", v.root_column)
                               .add("certificate", std::string(to_string(v.certificate_status))));
    demo.text = os.str();
    return demo;
}

} // namespace clausedag
