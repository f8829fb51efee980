#pragma once

// Text and record renderings of matrices, conditions and CDAGs, plus the
// fully worked six-variable example used by the demo command.

#include "clausedag/cdag.hpp"
#include "clausedag/clause_matrix.hpp"
#include "clausedag/dimacs.hpp"
#include "clausedag/records.hpp"

#include <string>

namespace clausedag {

// One-character cell codes used by render_matrix.
[[nodiscard]] char cell_code(CellState s) noexcept;

// One line per row: rank, triple, then eight cells showing the clause when
// alive and a state code otherwise.
[[nodiscard]] std::string render_matrix(const ClauseMatrix& m);
[[nodiscard]] Trace matrix_records(const ClauseMatrix& m, const std::string& label);

// "unit ~x1", "pair ~x2 ~x3" lines in discovery order.
[[nodiscard]] std::string render_conditions(const RemovalConditions& rc);
[[nodiscard]] Trace condition_records(const RemovalConditions& rc, const std::string& label);

// Column by column, each node with its children.
[[nodiscard]] std::string render_cdag(const Cdag& cdag);

// The six-variable, six-clause instance the demo walks through.
[[nodiscard]] Formula worked_example();

struct Demo {
    std::string text;
    Trace records;
};

// Propagation, the source matrix for the first root, the staged
// construction trace, the final CDAG and the verified certificate.
[[nodiscard]] Demo run_demo();

} // namespace clausedag
