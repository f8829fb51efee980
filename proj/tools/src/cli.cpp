#include "clausedag_cli/cli.hpp"

#include "clausedag/error.hpp"
#include "clausedag/harness.hpp"
#include "clausedag/oracle.hpp"
#include "clausedag/records.hpp"
#include "clausedag/render.hpp"
#include "clausedag/solver.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

namespace clausedag::cli {

namespace {

struct SolveArgs {
    std::string file;
    bool trace = false;
    bool certificate = false;
    std::uint64_t budget = kDefaultNodeBudget;
    bool machine = false;
};

struct OracleArgs {
    std::string file;
    std::string method = "truth-table";
    bool machine = false;
};

struct DiffArgs {
    std::string file;
    std::uint64_t budget = kDefaultNodeBudget;
    bool machine = false;
};

struct FuzzArgs {
    int vars = 6;
    std::string clauses = "20";
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    std::string out;
    bool planted = false;
    bool exhaustive = false;
    unsigned jobs = 1;
    std::uint64_t budget = kDefaultNodeBudget;
    bool machine = false;
};

struct DemoArgs {
    std::string out;
    bool machine = false;
};

struct BenchArgs {
    int max_vars = 10;
    double ratio = 4.26;
    std::uint64_t seed = 0;
    bool machine = false;
};

struct RevalidateArgs {
    std::string dir;
    std::uint64_t budget = kDefaultNodeBudget;
};

void print_record(std::ostream& out, const Record& r) { out << to_json_line(r) << "\n"; }

std::size_t parse_count(std::string_view s)
{
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw Error(ErrorKind::InvalidArgument, "expected a clause count, got '" + std::string(s) + "'");
    return v;
}

// "M" or "A..B".
std::pair<std::size_t, std::size_t> parse_clause_range(const std::string& text)
{
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const std::size_t m = parse_count(text);
        return {m, m};
    }
    const std::size_t a = parse_count(std::string_view(text).substr(0, dots));
    const std::size_t b = parse_count(std::string_view(text).substr(dots + 2));
    if (a > b)
        throw Error(ErrorKind::InvalidArgument, "clause range " + text + " is empty");
    return {a, b};
}

int cmd_solve(const SolveArgs& a, std::ostream& out)
{
    const Formula f = read_dimacs_file(a.file);
    SolveOptions opts;
    opts.trace = a.trace;
    opts.node_budget = a.budget;
    const Verdict v = solve(f, opts);
    if (a.machine) {
        if (v.trace)
            for (const Record& r : *v.trace)
                print_record(out, r);
        Record r("result");
        r.add("satisfiable", v.satisfiable)
            .add("certificate", std::string(to_string(v.certificate_status)))
            .add("unsat_reason", std::string(to_string(v.unsat_reason)))
            .add("root_column", v.root_column)
            .add("roots_tried", v.stats.roots_tried)
            .add("restarts", v.stats.restarts)
            .add("cdag_length", v.stats.cdag_length)
            .add("visits", static_cast<std::int64_t>(v.stats.visits));
        if (a.certificate && v.certificate)
            r.add("values", v.certificate->to_dimacs_values());
        print_record(out, r);
    } else {
        out << "c variables " << f.n << ", clauses " << f.m() << "\n";
        if (v.trace)
            for (const Record& r : *v.trace)
                out << "c " << to_text_line(r) << "\n";
        out << (v.satisfiable ? "s SATISFIABLE" : "s UNSATISFIABLE") << "\n";
        if (v.satisfiable) {
            out << "c certificate " << to_string(v.certificate_status) << "\n";
            if (a.certificate && v.certificate)
                out << "v " << v.certificate->to_dimacs_values() << "\n";
        } else {
            out << "c reason " << to_string(v.unsat_reason) << "\n";
        }
    }
    return v.satisfiable ? kExitSat : kExitUnsat;
}

int cmd_oracle(const OracleArgs& a, std::ostream& out)
{
    const Formula f = read_dimacs_file(a.file);
    const OracleVerdict v = a.method == "clause-set" ? clause_set_oracle(f) : brute_force(f);
    if (a.machine) {
        Record r("oracle");
        r.add("method", a.method).add("satisfiable", v.satisfiable)
            .add("checked", static_cast<std::int64_t>(v.assignments_checked));
        if (v.witness)
            r.add("values", v.witness->to_dimacs_values());
        print_record(out, r);
    } else {
        out << "c method " << a.method << ", assignments checked " << v.assignments_checked << "\n";
        out << (v.satisfiable ? "s SATISFIABLE" : "s UNSATISFIABLE") << "\n";
        if (v.witness)
            out << "v " << v.witness->to_dimacs_values() << "\n";
    }
    return v.satisfiable ? kExitSat : kExitUnsat;
}

Record diff_record(const DiffResult& r)
{
    Record rec("diff");
    rec.add("digest", hex_digest(r.digest))
        .add("solver_satisfiable", r.solver.satisfiable)
        .add("oracle_satisfiable", r.oracle.satisfiable)
        .add("agree", r.agree)
        .add("anomaly", std::string(to_string(r.anomaly)))
        .add("certificate", std::string(to_string(r.solver.certificate_status)))
        .add("unsat_reason", std::string(to_string(r.solver.unsat_reason)));
    return rec;
}

int cmd_diff(const DiffArgs& a, std::ostream& out)
{
    const Formula f = read_dimacs_file(a.file);
    DiffOptions opts;
    opts.node_budget = a.budget;
    const DiffResult r = run_diff(f, opts);
    if (a.machine)
        print_record(out, diff_record(r));
    else
        out << (r.anomaly == AnomalyKind::None ? "agree" : "ANOMALY") << " solver="
            << (r.solver.satisfiable ? "SAT" : "UNSAT") << " oracle=" << (r.oracle.satisfiable ? "SAT" : "UNSAT")
            << " anomaly=" << to_string(r.anomaly) << " certificate=" << to_string(r.solver.certificate_status)
            << " digest=" << hex_digest(r.digest) << "\n";
    return r.anomaly == AnomalyKind::None ? kExitOk : kExitDisagree;
}

int cmd_fuzz(const FuzzArgs& a, std::ostream& out)
{
    CampaignParams p;
    p.n = a.vars;
    std::tie(p.m_min, p.m_max) = parse_clause_range(a.clauses);
    p.mode = a.planted ? GenMode::Planted : GenMode::Uniform;
    p.seed = a.seed;
    p.trials = a.trials;
    p.exhaustive = a.exhaustive;
    p.jobs = a.jobs;
    p.out_dir = a.out;
    p.diff.node_budget = a.budget;
    const Report report = run_campaign(p);
    if (a.machine) {
        Record head = report.summary();
        head.add("digest", hex_digest(report.digest));
        print_record(out, head);
        for (const auto& c : report.counterexamples)
            print_record(out, Record("counterexample").add("digest", c.digest)
                                  .add("kind", std::string(to_string(c.kind))).add("trial", c.trial)
                                  .add("file", c.cnf_file));
    } else {
        out << to_text_line(report.summary()) << "\n";
        for (const auto& c : report.counterexamples)
            out << "counterexample " << c.cnf_file << " kind=" << to_string(c.kind) << " trial=" << c.trial << "\n";
        out << "digest " << hex_digest(report.digest) << "\n";
        out << "wall " << std::fixed << std::setprecision(1) << report.wall_ms << " ms\n";
    }
    return report.counterexamples.empty() && report.disagreements == 0 ? kExitOk : kExitDisagree;
}

int cmd_revalidate(const RevalidateArgs& a, std::ostream& out)
{
    DiffOptions opts;
    opts.node_budget = a.budget;
    const auto entries = revalidate_corpus(a.dir, opts);
    std::size_t failures = 0;
    for (const auto& e : entries) {
        failures += e.reproduced() ? 0 : 1;
        out << (e.reproduced() ? "reproduced " : "NOT REPRODUCED ") << e.cnf_file
            << " expected=" << to_string(e.expected) << " observed=" << to_string(e.observed) << "\n";
    }
    out << entries.size() << " counterexamples, " << failures << " not reproduced\n";
    return failures == 0 ? kExitOk : kExitDisagree;
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text))
        throw Error(ErrorKind::Io, "cannot write " + path.string());
}

int cmd_demo(const DemoArgs& a, std::ostream& out)
{
    const Demo demo = run_demo();
    std::string machine;
    for (const Record& r : demo.records)
        machine += to_json_line(r) + "\n";
    out << (a.machine ? machine : demo.text);
    if (!a.out.empty()) {
        const std::filesystem::path dir(a.out);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
        write_file(dir / "example.cnf", emit_dimacs(worked_example()));
        write_file(dir / "demo.txt", demo.text);
        write_file(dir / "demo.meta", machine);
    }
    return kExitOk;
}

int cmd_bench(const BenchArgs& a, std::ostream& out)
{
    const auto rows = run_bench(a.max_vars, a.ratio, a.seed);
    if (!a.machine)
        out << std::left << std::setw(4) << "n" << std::setw(7) << "m" << std::setw(8) << "verdict" << std::setw(17)
            << "certificate" << std::setw(7) << "roots" << std::setw(10) << "restarts" << std::setw(8) << "length"
            << "ms\n";
    for (const BenchRow& r : rows) {
        if (a.machine) {
            // Timings are left out so the stream is reproducible.
            print_record(out, Record("bench").add("n", r.n).add("m", r.m).add("digest", hex_digest(r.digest))
                                  .add("satisfiable", r.satisfiable).add("certificate", r.certificate)
                                  .add("roots_tried", r.roots_tried).add("restarts", r.restarts)
                                  .add("cdag_length", r.cdag_length));
        } else {
            out << std::left << std::setw(4) << r.n << std::setw(7) << r.m << std::setw(8)
                << (r.satisfiable ? "SAT" : "UNSAT") << std::setw(17) << r.certificate << std::setw(7)
                << r.roots_tried << std::setw(10) << r.restarts << std::setw(8) << r.cdag_length << std::fixed
                << std::setprecision(3) << r.solve_ms << "\n";
        }
    }
    return kExitOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Clause-matrix / CDAG 3-SAT decision procedure with a differential test harness", "clausedag"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "Decide a 3-CNF DIMACS file (exit 10 SAT, 20 UNSAT)");
    solve_cmd->add_option("file", solve_args.file, "DIMACS CNF file")->required();
    solve_cmd->add_flag("--trace", solve_args.trace, "Include the construction trace");
    solve_cmd->add_flag("--certificate", solve_args.certificate, "Print the satisfying assignment");
    solve_cmd->add_option("--budget", solve_args.budget, "Node-visit budget for certificate extraction");
    solve_cmd->add_flag("--machine", solve_args.machine, "Emit JSON lines");

    OracleArgs oracle_args;
    auto* oracle_cmd = app.add_subcommand("oracle", "Decide by exhaustive enumeration (n <= 26)");
    oracle_cmd->add_option("file", oracle_args.file, "DIMACS CNF file")->required();
    oracle_cmd->add_option("--method", oracle_args.method, "truth-table or clause-set")
        ->check(CLI::IsMember({"truth-table", "clause-set"}));
    oracle_cmd->add_flag("--machine", oracle_args.machine, "Emit JSON lines");

    DiffArgs diff_args;
    auto* diff_cmd = app.add_subcommand("diff", "Compare the solver with the truth-table oracle (exit 0 agree, 2 not)");
    diff_cmd->add_option("file", diff_args.file, "DIMACS CNF file")->required();
    diff_cmd->add_option("--budget", diff_args.budget, "Node-visit budget for certificate extraction");
    diff_cmd->add_flag("--machine", diff_args.machine, "Emit JSON lines");

    FuzzArgs fuzz_args;
    auto* fuzz_cmd = app.add_subcommand("fuzz", "Seeded differential campaign (exit 0 clean, 2 anomalies)");
    fuzz_cmd->add_option("--vars", fuzz_args.vars, "Variable count")->required();
    fuzz_cmd->add_option("--clauses", fuzz_args.clauses, "Clause count M or range A..B")->required();
    fuzz_cmd->add_option("--trials", fuzz_args.trials, "Number of random trials");
    fuzz_cmd->add_option("--seed", fuzz_args.seed, "Campaign seed");
    fuzz_cmd->add_option("--out", fuzz_args.out, "Corpus directory")->required();
    fuzz_cmd->add_flag("--planted", fuzz_args.planted, "Generate instances with a hidden solution");
    fuzz_cmd->add_flag("--exhaustive", fuzz_args.exhaustive, "Enumerate every formula of M clauses (n <= 4)");
    fuzz_cmd->add_option("--jobs", fuzz_args.jobs, "Worker threads")->check(CLI::PositiveNumber);
    fuzz_cmd->add_option("--budget", fuzz_args.budget, "Node-visit budget for certificate extraction");
    fuzz_cmd->add_flag("--machine", fuzz_args.machine, "Emit JSON lines");

    RevalidateArgs reval_args;
    auto* reval_cmd = app.add_subcommand("revalidate", "Re-run a counterexample corpus (exit 0 all reproduced)");
    reval_cmd->add_option("dir", reval_args.dir, "Corpus directory")->required();
    reval_cmd->add_option("--budget", reval_args.budget, "Node-visit budget for certificate extraction");

    DemoArgs demo_args;
    auto* demo_cmd = app.add_subcommand("demo", "Walk through the six-variable worked example");
    demo_cmd->add_option("--out", demo_args.out, "Also write demo.txt, demo.meta and example.cnf here");
    demo_cmd->add_flag("--machine", demo_args.machine, "Emit JSON lines");

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "Solve one seeded instance per variable count");
    bench_cmd->add_option("--max-vars", bench_args.max_vars, "Largest variable count (3..26)")->required();
    bench_cmd->add_option("--ratio", bench_args.ratio, "Clauses per variable")->required();
    bench_cmd->add_option("--seed", bench_args.seed, "Seed")->required();
    bench_cmd->add_flag("--machine", bench_args.machine, "Emit JSON lines without timings");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        const CLI::App* sub = nullptr;
        for (const CLI::App* s : app.get_subcommands())
            sub = s;
        err << (sub != nullptr ? sub->help() : app.help());
        return kExitError;
    }

    try {
        if (solve_cmd->parsed())
            return cmd_solve(solve_args, out);
        if (oracle_cmd->parsed())
            return cmd_oracle(oracle_args, out);
        if (diff_cmd->parsed())
            return cmd_diff(diff_args, out);
        if (fuzz_cmd->parsed())
            return cmd_fuzz(fuzz_args, out);
        if (reval_cmd->parsed())
            return cmd_revalidate(reval_args, out);
        if (demo_cmd->parsed())
            return cmd_demo(demo_args, out);
        if (bench_cmd->parsed())
            return cmd_bench(bench_args, out);
    } catch (const Error& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

} // namespace clausedag::cli
