// Acceptance checks. Prints one PASS/FAIL line per criterion; `--only N`
// runs a single criterion. Exit status is 0 iff every criterion run passed.

#include "clausedag/cdag.hpp"
#include "clausedag/clause_matrix.hpp"
#include "clausedag/harness.hpp"
#include "clausedag/oracle.hpp"
#include "clausedag/render.hpp"
#include "clausedag/solver.hpp"
#include "clausedag_cli/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace clausedag;
namespace fs = std::filesystem;

namespace {

// Pinned limits.
constexpr double kAc1MaxSeconds = 1.0;
constexpr double kAc4MaxSeconds = 60.0;
constexpr double kAc8MaxSeconds = 600.0;

struct Result {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string lit_pair(int a, int b)
{
    const std::string first = Literal::from_index(a).to_string();
    return a == b ? first : "{" + first + "," + Literal::from_index(b).to_string() + "}";
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("clausedag_acceptance_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "clausedag");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    CliRun r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    return r;
}

Result ac1_worked_example()
{
    const auto start = Clock::now();
    const Verdict v = solve(worked_example());
    const double secs = seconds_since(start);
    const bool ok = v.satisfiable && v.certificate_status == CertificateStatus::Verified && v.certificate
                    && *v.certificate == Assignment(6, false) && v.root_column == 1 && v.stats.roots_tried == 1
                    && secs < kAc1MaxSeconds;
    std::ostringstream d;
    d << "sat=" << v.satisfiable << " certificate=" << to_string(v.certificate_status)
      << " values=" << (v.certificate ? v.certificate->to_dimacs_values() : "-") << " root=" << v.root_column
      << " roots_tried=" << v.stats.roots_tried << " time=" << secs << "s";
    return {ok, d.str()};
}

Result ac2_propagation_golden()
{
    const Formula f = worked_example();
    ClauseMatrix cm = generate_cm(f.n);
    subtract(cm, f);
    RemovalConditions prc(f.n);
    garbage_collect(cm, prc);
    const std::set<std::pair<int, int>> expected{
        {Literal::neg(2).index(), Literal::neg(3).index()},
        {Literal::neg(2).index(), Literal::neg(5).index()},
        {Literal::pos(1).index(), Literal::neg(2).index()},
    };
    std::set<std::pair<int, int>> pairs;
    std::size_t units = 0;
    std::string found;
    for (const auto& [a, b] : prc.history()) {
        found += (found.empty() ? "" : " ") + lit_pair(a, b);
        if (a == b)
            ++units;
        else
            pairs.insert({a, b});
    }
    const bool ok = pairs == expected && units == 0 && matrix_is_valid(cm);
    return {ok, "expected exactly {~x2,~x3} {~x2,~x5} {x1,~x2}; found " + found + " (units=" + std::to_string(units)
                    + ", valid=" + (matrix_is_valid(cm) ? "true" : "false") + ")"};
}

Result ac3_source_matrix_golden()
{
    const Formula f = worked_example();
    ClauseMatrix cm = generate_cm(f.n);
    subtract(cm, f);
    RemovalConditions prc(f.n);
    garbage_collect(cm, prc);
    const SourceMatrix s = generate_sm(cm, prc, 1);
    std::string units;
    for (const Literal& l : s.lrc.units())
        units += (units.empty() ? "" : " ") + l.to_string();
    const bool ok = s.lrc.units() == std::vector<Literal>{Literal::neg(1), Literal::neg(2), Literal::neg(3)};
    return {ok, "unit conditions: " + units};
}

Result ac4_oracle_agreement()
{
    const auto start = Clock::now();
    std::size_t agree = 0;
    std::size_t total = 0;
    auto check = [&](const Formula& f) {
        ++total;
        agree += brute_force(f).satisfiable == clause_set_oracle(f).satisfiable ? 1 : 0;
    };
    for (std::size_t t = 0; t < 500; ++t) {
        SplitMix64 rng(trial_seed(4, t));
        const std::size_t m = 5 + static_cast<std::size_t>(rng.below(36));
        check(gen_random({6, m, GenMode::Uniform, rng.next()}));
    }
    check(worked_example());
    const double secs = seconds_since(start);
    return {agree == total && secs < kAc4MaxSeconds,
            std::to_string(agree) + "/" + std::to_string(total) + " agree, " + std::to_string(secs) + "s"};
}

Result ac5_gc_soundness()
{
    std::size_t violations = 0;
    std::size_t assignments = 0;
    for (std::size_t t = 0; t < 200; ++t) {
        SplitMix64 rng(trial_seed(5, t));
        const int n = 4 + static_cast<int>(rng.below(3));
        const std::size_t cap = std::min<std::size_t>(8 * triple_count(n), 40);
        const std::size_t m = 3 + static_cast<std::size_t>(rng.below(cap - 2));
        const Formula f = gen_random({n, m, GenMode::Uniform, rng.next()});
        ClauseMatrix cm = generate_cm(n);
        subtract(cm, f);
        RemovalConditions prc(n);
        garbage_collect(cm, prc);
        for (std::uint64_t index = 0; index < (std::uint64_t{1} << n); ++index) {
            const Assignment a = Assignment::from_index(index, n);
            if (!eval_formula(f, a))
                continue;
            ++assignments;
            for (const Clause3& c : clause_set_of_string(string_of_assignment(a)))
                violations += cm.alive(c) ? 0 : 1;
        }
    }
    return {violations == 0 && assignments > 0,
            std::to_string(violations) + " violations over " + std::to_string(assignments)
                + " satisfying assignments"};
}

Report campaign(int n, std::size_t lo, std::size_t hi, std::size_t trials, std::uint64_t seed, GenMode mode,
                const std::string& out = {})
{
    CampaignParams p;
    p.n = n;
    p.m_min = lo;
    p.m_max = hi;
    p.trials = trials;
    p.seed = seed;
    p.mode = mode;
    p.out_dir = out;
    return run_campaign(p);
}

Result ac6_empty_row_soundness()
{
    std::size_t empty_row = 0;
    std::size_t agree = 0;
    auto add = [&](const Report& r) {
        empty_row += r.empty_row_unsat;
        agree += r.empty_row_unsat_agree;
    };
    for (int n = 3; n <= 6; ++n) {
        const std::size_t cap = 8 * triple_count(n);
        add(campaign(n, 1, std::min<std::size_t>(cap, 8 * static_cast<std::size_t>(n)), 300, 60 + n,
                     GenMode::Uniform));
    }
    for (std::size_t m = 0; m <= 8; ++m) {
        CampaignParams p;
        p.n = 3;
        p.exhaustive = true;
        p.m_min = p.m_max = m;
        add(run_campaign(p));
    }
    for (std::size_t m = 0; m <= 3; ++m) {
        CampaignParams p;
        p.n = 4;
        p.exhaustive = true;
        p.m_min = p.m_max = m;
        add(run_campaign(p));
    }
    return {empty_row == agree && empty_row > 0,
            std::to_string(agree) + "/" + std::to_string(empty_row) + " empty-row UNSAT verdicts confirmed"};
}

Result ac7_certificate_soundness()
{
    // Every verified certificate re-checked by direct evaluation.
    std::size_t verified = 0;
    std::size_t bad = 0;
    std::size_t real_anomalies = 0;
    for (std::size_t t = 0; t < 400; ++t) {
        SplitMix64 rng(trial_seed(7, t));
        const int n = 4 + static_cast<int>(rng.below(5));
        const GenMode mode = t % 2 == 0 ? GenMode::Uniform : GenMode::Planted;
        const std::size_t m = 3 + static_cast<std::size_t>(rng.below(6 * static_cast<std::uint64_t>(n)));
        const Formula f = gen_random({n, std::min<std::size_t>(m, mode == GenMode::Planted ? 7 * triple_count(n)
                                                                                           : 8 * triple_count(n)),
                                      mode, rng.next()});
        const DiffResult r = run_diff(f);
        real_anomalies += r.anomaly == AnomalyKind::None ? 0 : 1;
        if (r.solver.certificate_status == CertificateStatus::Verified) {
            ++verified;
            bad += eval_formula(f, *r.solver.certificate) ? 0 : 1;
        }
    }

    // Anomaly plumbing: test doubles that report a mismatch and a missing
    // certificate must both be shrunk, persisted and reproduced from disk.
    std::size_t persisted = 0;
    std::size_t reproduced = 0;
    const std::vector<std::pair<std::string, SolverFn>> doubles{
        {"mismatch", [](const Formula& f) {
             Verdict v;
             v.satisfiable = f.m() == 0;
             return v;
         }},
        {"notfound", [](const Formula& f) {
             Verdict v = solve(f);
             if (v.satisfiable && f.m() > 0) {
                 v.certificate.reset();
                 v.certificate_status = CertificateStatus::NotFound;
             }
             return v;
         }},
    };
    for (const auto& [name, fn] : doubles) {
        const fs::path dir = scratch("ac7_" + name);
        CampaignParams p;
        p.n = 5;
        p.m_min = 4;
        p.m_max = 12;
        p.trials = 15;
        p.seed = 70;
        p.out_dir = dir.string();
        p.diff.solver = fn;
        const Report r = run_campaign(p);
        persisted += r.counterexamples.size();
        DiffOptions opts;
        opts.solver = fn;
        for (const auto& e : revalidate_corpus(dir.string(), opts))
            reproduced += e.reproduced() ? 1 : 0;
    }
    const bool ok = bad == 0 && verified > 0 && persisted > 0 && reproduced == persisted;
    return {ok, std::to_string(verified) + " verified certificates, " + std::to_string(bad) + " unsound; "
                    + std::to_string(real_anomalies) + " real anomalies; injected anomalies persisted "
                    + std::to_string(persisted) + ", reproduced " + std::to_string(reproduced)};
}

Result ac8_measurement()
{
    const auto start = Clock::now();
    const fs::path d1 = scratch("ac8_a");
    const Report r = campaign(6, 10, 40, 1000, 0, GenMode::Uniform, d1.string());
    const double secs = seconds_since(start);
    const fs::path d2 = scratch("ac8_b");
    CampaignParams p;
    p.n = 6;
    p.m_min = 10;
    p.m_max = 40;
    p.trials = 1000;
    p.seed = 0;
    p.jobs = 4;
    p.out_dir = d2.string();
    const Report again = run_campaign(p);
    std::size_t anomaly_sum = 0;
    for (std::size_t k = 1; k < kAnomalyKinds; ++k)
        anomaly_sum += r.anomalies[k];
    const bool identity = r.trials == 1000 && r.trials == r.agreements + r.disagreements
                          && r.anomaly_count(AnomalyKind::VerdictMismatch) == r.disagreements
                          && r.anomalies[0] + anomaly_sum == r.trials;
    const bool deterministic = r.digest == again.digest && slurp(d1 / "report.meta") == slurp(d2 / "report.meta");
    const bool persisted = r.counterexamples.size() <= anomaly_sum;
    std::ostringstream d;
    d << "agreement " << r.agreements << "/" << r.trials << " (" << 100.0 * static_cast<double>(r.agreements) / 1000.0
      << "%), anomalies " << anomaly_sum << ", digest " << hex_digest(r.digest) << ", deterministic "
      << (deterministic ? "yes" : "no") << ", " << secs << "s";
    return {identity && deterministic && persisted && secs < kAc8MaxSeconds, d.str()};
}

Result ac9_structural_counts()
{
    const bool rows = generate_cm(4).rows() == 4 && generate_cm(10).rows() == 120 && generate_cm(50).rows() == 19600;
    const auto set = clause_set_of_string(StringW::parse("x1x2x3~x4x5~x6"));
    const std::vector<std::string> listing{
        "x1 x2 x3",  "x1 x2 ~x4", "x1 x2 x5",   "x1 x2 ~x6",  "x1 x3 ~x4", "x1 x3 x5",  "x1 x3 ~x6",
        "x1 ~x4 x5", "x1 ~x4 ~x6", "x1 x5 ~x6", "x2 x3 ~x4",  "x2 x3 x5",  "x2 x3 ~x6", "x2 ~x4 x5",
        "x2 ~x4 ~x6", "x2 x5 ~x6", "x3 ~x4 x5", "x3 ~x4 ~x6", "x3 x5 ~x6", "~x4 x5 ~x6",
    };
    bool same = set.size() == listing.size();
    for (std::size_t i = 0; same && i < set.size(); ++i)
        same = set[i].to_short_string() == listing[i];
    return {rows && same, std::string("row counts ") + (rows ? "4/120/19600" : "WRONG") + ", clause set listing "
                              + (same ? "matches (with x2 x5 ~x6 corrected)" : "differs")};
}

Result ac10_determinism()
{
    std::vector<std::string> mismatched;
    auto twice = [&](const std::string& name, const std::vector<std::string>& a, const std::vector<std::string>& b) {
        const CliRun x = cli(a);
        const CliRun y = cli(b);
        if (x.code != y.code || x.out != y.out || x.out.empty())
            mismatched.push_back(name);
    };
    const fs::path f1 = scratch("ac10_f1");
    const fs::path f2 = scratch("ac10_f2");
    twice("fuzz",
          {"fuzz", "--vars", "6", "--clauses", "10..40", "--trials", "200", "--seed", "10", "--out", f1.string(),
           "--machine"},
          {"fuzz", "--vars", "6", "--clauses", "10..40", "--trials", "200", "--seed", "10", "--out", f2.string(),
           "--machine", "--jobs", "4"});
    if (slurp(f1 / "report.meta") != slurp(f2 / "report.meta"))
        mismatched.push_back("report.meta");
    twice("bench", {"bench", "--max-vars", "10", "--ratio", "4.26", "--seed", "3", "--machine"},
          {"bench", "--max-vars", "10", "--ratio", "4.26", "--seed", "3", "--machine"});
    twice("demo", {"demo"}, {"demo"});
    twice("demo-machine", {"demo", "--machine"}, {"demo", "--machine"});
    std::string names;
    for (const auto& m : mismatched)
        names += " " + m;
    return {mismatched.empty(), mismatched.empty() ? "fuzz, report.meta, bench, demo byte-identical"
                                                   : "differences in:" + names};
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
        {"worked example SAT with verified all-false certificate via first root", ac1_worked_example},
        {"propagation golden: exactly three pair conditions, no units, no empty row", ac2_propagation_golden},
        {"source matrix golden: units exactly ~x1 ~x2 ~x3", ac3_source_matrix_golden},
        {"oracle cross-validation on 500 seeded instances plus the worked example", ac4_oracle_agreement},
        {"propagation never kills a satisfying assignment's clause set", ac5_gc_soundness},
        {"empty-row UNSAT verdicts agree with brute force for n <= 6", ac6_empty_row_soundness},
        {"certificate soundness and self-validating anomaly corpus", ac7_certificate_soundness},
        {"1000-trial measurement campaign, deterministic report", ac8_measurement},
        {"structural counts and clause set listing", ac9_structural_counts},
        {"seeded commands reproduce byte-identical output", ac10_determinism},
    };
    int only = 0;
    for (int i = 1; i < argc; ++i)
        if (std::string(argv[i]) == "--only" && i + 1 < argc)
            only = std::atoi(argv[++i]);
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (only != 0 && only != id)
            continue;
        Result r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        all = all && r.pass;
        std::cout << "AC" << id << " " << (r.pass ? "PASS" : "FAIL") << " " << criteria[i].first << " -- " << r.detail
                  << std::endl;
    }
    return all ? 0 : 1;
}
