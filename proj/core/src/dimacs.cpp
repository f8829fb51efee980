#include "clausedag/dimacs.hpp"

#include "clausedag/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace clausedag {

void Formula::validate() const
{
    if (n < 0)
        throw Error(ErrorKind::InvalidArgument, "negative variable count");
    for (std::size_t idx = 0; idx < clauses.size(); ++idx) {
        if (clauses[idx].triple().k > n)
            throw Error(ErrorKind::OutOfRange,
                        "clause " + std::to_string(idx + 1) + " uses a variable above n");
        for (std::size_t other = 0; other < idx; ++other)
            if (clauses[other] == clauses[idx])
                throw Error(ErrorKind::InvalidArgument, "duplicate clause in formula");
    }
}

bool add_clause_unique(Formula& f, const Clause3& c)
{
    if (std::find(f.clauses.begin(), f.clauses.end(), c) != f.clauses.end())
        return false;
    f.clauses.push_back(c);
    f.n = std::max(f.n, c.triple().k);
    return true;
}

namespace {

struct Cursor {
    std::size_t line = 1;
    std::size_t token = 0;

    [[nodiscard]] std::string where() const
    {
        return "line " + std::to_string(line) + ", token " + std::to_string(token);
    }
};

std::vector<std::string_view> split_tokens(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r'))
            ++pos;
        const std::size_t start = pos;
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r')
            ++pos;
        if (pos > start)
            out.push_back(line.substr(start, pos - start));
    }
    return out;
}

long long parse_int(std::string_view tok, const Cursor& at)
{
    long long value = 0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (!tok.empty() && tok.front() == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last)
        throw Error(ErrorKind::SyntaxError,
                    at.where() + ": expected an integer, got '" + std::string(tok) + "'");
    return value;
}

} // namespace

Formula parse_dimacs(std::string_view text, ParseDiagnostics* diagnostics)
{
    ParseDiagnostics local;
    ParseDiagnostics& diag = diagnostics != nullptr ? *diagnostics : local;
    diag = ParseDiagnostics{};

    Formula f;
    bool header_seen = false;
    bool any_content = false;
    std::vector<int> pending;
    Cursor clause_start;
    Cursor at;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        const std::string_view line = text.substr(pos, eol - pos);
        const auto tokens = split_tokens(line);

        if (!tokens.empty()) {
            if (tokens.front().front() == 'c') {
                // comment
            } else if (tokens.front() == "p") {
                any_content = true;
                at.token = 1;
                if (header_seen)
                    throw Error(ErrorKind::SyntaxError, at.where() + ": second 'p' header");
                if (tokens.size() != 4 || tokens[1] != "cnf")
                    throw Error(ErrorKind::SyntaxError,
                                at.where() + ": header must read 'p cnf <vars> <clauses>'");
                at.token = 3;
                const long long vars = parse_int(tokens[2], at);
                at.token = 4;
                const long long count = parse_int(tokens[3], at);
                if (vars < 0 || count < 0 || vars > 1'000'000)
                    throw Error(ErrorKind::SyntaxError, at.where() + ": header values out of range");
                diag.header_vars = static_cast<int>(vars);
                diag.header_clauses = static_cast<std::size_t>(count);
                f.n = static_cast<int>(vars);
                header_seen = true;
            } else {
                any_content = true;
                for (std::size_t t = 0; t < tokens.size(); ++t) {
                    at.token = t + 1;
                    if (!header_seen)
                        throw Error(ErrorKind::SyntaxError,
                                    at.where() + ": clause data before the 'p cnf' header");
                    const long long value = parse_int(tokens[t], at);
                    if (value > 1'000'000 || value < -1'000'000)
                        throw Error(ErrorKind::SyntaxError, at.where() + ": variable index too large");
                    if (pending.empty())
                        clause_start = at;
                    if (value != 0) {
                        pending.push_back(static_cast<int>(value));
                        continue;
                    }
                    // Terminator: validate and normalize.
                    std::vector<int> vars;
                    for (int lit : pending)
                        vars.push_back(lit < 0 ? -lit : lit);
                    std::sort(vars.begin(), vars.end());
                    const bool distinct = std::adjacent_find(vars.begin(), vars.end()) == vars.end();
                    if (pending.size() != 3 || !distinct)
                        throw Error(ErrorKind::NotThreeCnf,
                                    clause_start.where() + ": clause must have exactly three distinct variables, got "
                                        + std::to_string(pending.size()) + " literal(s)"
                                        + (distinct ? "" : " with a repeated variable"));
                    const Clause3 c = make_clause(Literal::from_dimacs(pending[0]),
                                                  Literal::from_dimacs(pending[1]),
                                                  Literal::from_dimacs(pending[2]));
                    ++diag.clauses_read;
                    if (!add_clause_unique(f, c))
                        ++diag.duplicates_dropped;
                    pending.clear();
                }
            }
        }
        if (eol == text.size())
            break;
        pos = eol + 1;
        ++at.line;
        at.token = 0;
    }

    if (!any_content)
        throw Error(ErrorKind::EmptyInput, "input contains no DIMACS content");
    if (!header_seen)
        throw Error(ErrorKind::SyntaxError, "missing 'p cnf' header");
    if (!pending.empty())
        throw Error(ErrorKind::SyntaxError, clause_start.where() + ": clause not terminated by 0");

    if (diag.duplicates_dropped > 0)
        diag.warnings.push_back("dropped " + std::to_string(diag.duplicates_dropped)
                                + " duplicate clause(s)");
    if (diag.clauses_read != diag.header_clauses)
        diag.warnings.push_back("header announces " + std::to_string(diag.header_clauses)
                                + " clause(s) but " + std::to_string(diag.clauses_read) + " were read");
    if (f.n > diag.header_vars)
        diag.warnings.push_back("variables up to x" + std::to_string(f.n)
                                + " used but header announces " + std::to_string(diag.header_vars));
    return f;
}

Formula read_dimacs_file(const std::string& path, ParseDiagnostics* diagnostics)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::Io, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_dimacs(buffer.str(), diagnostics);
}

std::string emit_dimacs(const Formula& f)
{
    std::string out = "p cnf " + std::to_string(f.n) + " " + std::to_string(f.m()) + "\n";
    for (const Clause3& c : f.clauses) {
        for (const Literal& l : c.lits()) {
            out += std::to_string(l.to_dimacs());
            out += ' ';
        }
        out += "0\n";
    }
    return out;
}

void write_dimacs_file(const std::string& path, const Formula& f)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorKind::Io, "cannot write '" + path + "'");
    out << emit_dimacs(f);
    if (!out)
        throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

} // namespace clausedag
