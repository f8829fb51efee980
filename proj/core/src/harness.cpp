#include "clausedag/harness.hpp"

#include "clausedag/error.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace clausedag {

std::uint64_t SplitMix64::next()
{
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound)
{
    if (bound == 0)
        throw Error(ErrorKind::InvalidArgument, "bounded draw needs a positive bound");
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
        const std::uint64_t r = next();
        if (r >= threshold)
            return r % bound;
    }
}

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex_digest(std::uint64_t digest)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
    return buf;
}

std::uint64_t formula_digest(const Formula& f) { return fnv1a64(emit_dimacs(f)); }

std::string_view to_string(GenMode m) noexcept
{
    return m == GenMode::Planted ? "planted" : "uniform";
}

namespace {

Clause3 clause_of_id(std::size_t id, int n)
{
    return clause_at(triple_table(n)[id / 8], static_cast<int>(id % 8) + 1);
}

// Draws m entries of pool without replacement, in draw order.
std::vector<std::size_t> partial_shuffle(std::vector<std::size_t> pool, std::size_t m, SplitMix64& rng)
{
    if (m > pool.size())
        throw Error(ErrorKind::InvalidArgument, "cannot draw " + std::to_string(m) + " distinct clauses from "
                                                    + std::to_string(pool.size()));
    for (std::size_t t = 0; t < m; ++t) {
        const std::size_t j = t + static_cast<std::size_t>(rng.below(pool.size() - t));
        std::swap(pool[t], pool[j]);
    }
    pool.resize(m);
    return pool;
}

} // namespace

Generated generate(const GenParams& p)
{
    if (p.n < 3 || p.n > kOracleMaxVars)
        throw Error(ErrorKind::InvalidArity, "generation needs 3 <= n <= 26, got " + std::to_string(p.n));
    SplitMix64 rng(p.seed);
    const std::size_t total = 8 * triple_count(p.n);
    Generated out;
    out.formula.n = p.n;
    std::vector<std::size_t> pool;
    if (p.mode == GenMode::Planted) {
        Assignment hidden(static_cast<std::size_t>(p.n));
        for (Var v = 1; v <= p.n; ++v)
            hidden.set(v, (rng.next() & 1U) != 0);
        for (std::size_t id = 0; id < total; ++id)
            if (eval_clause(clause_of_id(id, p.n), hidden))
                pool.push_back(id);
        out.hidden = std::move(hidden);
    } else {
        pool.resize(total);
        std::iota(pool.begin(), pool.end(), std::size_t{0});
    }
    for (const std::size_t id : partial_shuffle(std::move(pool), p.m, rng))
        out.formula.clauses.push_back(clause_of_id(id, p.n));
    return out;
}

Formula gen_random(const GenParams& p) { return generate(p).formula; }

std::string_view to_string(AnomalyKind k) noexcept
{
    switch (k) {
    case AnomalyKind::None: return "none";
    case AnomalyKind::VerdictMismatch: return "verdictMismatch";
    case AnomalyKind::CertificateFailed: return "certificateFailed";
    case AnomalyKind::CertificateNotFound: return "certificateNotFound";
    case AnomalyKind::BudgetExhausted: return "budgetExhausted";
    }
    return "unknown";
}

std::optional<AnomalyKind> anomaly_from_string(std::string_view s)
{
    for (std::size_t i = 0; i < kAnomalyKinds; ++i) {
        const auto k = static_cast<AnomalyKind>(i);
        if (to_string(k) == s)
            return k;
    }
    return std::nullopt;
}

AnomalyKind classify(const Verdict& solver, const OracleVerdict& oracle)
{
    if (solver.satisfiable != oracle.satisfiable)
        return AnomalyKind::VerdictMismatch;
    if (!solver.satisfiable)
        return AnomalyKind::None;
    switch (solver.certificate_status) {
    case CertificateStatus::Failed: return AnomalyKind::CertificateFailed;
    case CertificateStatus::NotFound: return AnomalyKind::CertificateNotFound;
    case CertificateStatus::BudgetExhausted: return AnomalyKind::BudgetExhausted;
    default: return AnomalyKind::None;
    }
}

namespace {

template <typename F>
double timed_ms(F&& f)
{
    const auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

DiffResult run_diff(const Formula& f, const DiffOptions& opts)
{
    DiffResult r;
    r.digest = formula_digest(f);
    r.solver_ms = timed_ms([&] {
        if (opts.solver) {
            r.solver = opts.solver(f);
        } else {
            SolveOptions so;
            so.node_budget = opts.node_budget;
            r.solver = solve(f, so);
        }
    });
    r.oracle_ms = timed_ms([&] { r.oracle = brute_force(f); });
    r.agree = r.solver.satisfiable == r.oracle.satisfiable;
    r.anomaly = classify(r.solver, r.oracle);
    return r;
}

Formula compact_variables(const Formula& f)
{
    std::set<Var> used;
    for (const Clause3& c : f.clauses)
        for (const Literal& l : c.lits())
            used.insert(l.var());
    std::vector<Var> rename(static_cast<std::size_t>(std::max(f.n, 0)) + 1, 0);
    Var next = 0;
    for (const Var v : used)
        rename[static_cast<std::size_t>(v)] = ++next;
    Formula out;
    out.n = std::max(next, 3);
    for (const Clause3& c : f.clauses) {
        const auto map = [&](const Literal& l) { return Literal(rename[static_cast<std::size_t>(l.var())], l.negated()); };
        out.clauses.push_back(make_clause(map(c[0]), map(c[1]), map(c[2])));
    }
    return out;
}

ShrinkResult shrink(const Formula& f, const FormulaPredicate& predicate)
{
    ShrinkResult out{f, false, 1};
    if (!predicate(f))
        return out;
    out.predicate_held = true;
    Formula current = f;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < current.clauses.size();) {
            Formula candidate = current;
            candidate.clauses.erase(candidate.clauses.begin() + static_cast<std::ptrdiff_t>(i));
            ++out.attempts;
            if (predicate(candidate)) {
                current = std::move(candidate);
                changed = true;
            } else {
                ++i;
            }
        }
        Formula renamed = compact_variables(current);
        if (renamed != current) {
            ++out.attempts;
            if (predicate(renamed)) {
                current = std::move(renamed);
                changed = true;
            }
        }
    }
    out.formula = std::move(current);
    return out;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t t)
{
    SplitMix64 stream(seed);
    std::uint64_t value = 0;
    for (std::size_t i = 0; i <= t; ++i)
        value = stream.next();
    return value;
}

Record Report::summary() const
{
    Record r("report");
    r.add("n", params.n)
        .add("m_min", params.m_min)
        .add("m_max", params.m_max)
        .add("mode", std::string(to_string(params.mode)))
        .add("seed", std::to_string(params.seed))
        .add("exhaustive", params.exhaustive)
        .add("trials", trials)
        .add("agreements", agreements)
        .add("disagreements", disagreements);
    for (std::size_t i = 1; i < kAnomalyKinds; ++i)
        r.add(std::string(to_string(static_cast<AnomalyKind>(i))), anomalies[i]);
    r.add("solver_sat", solver_sat)
        .add("oracle_sat", oracle_sat)
        .add("certificates_verified", certificates_verified)
        .add("empty_row_unsat", empty_row_unsat)
        .add("empty_row_unsat_agree", empty_row_unsat_agree)
        .add("counterexamples", counterexamples.size());
    return r;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::Io, "cannot write " + path.string());
    out << text;
    if (!out)
        throw Error(ErrorKind::Io, "write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::Io, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Instance {
    Formula formula;
    std::uint64_t seed = 0;
};

constexpr std::uint64_t kMaxExhaustive = 1'000'000;

// Every m-subset of the clause ids, in lexicographic order of the id tuple.
std::vector<Instance> exhaustive_instances(int n, std::size_t m)
{
    if (n > 4)
        throw Error(ErrorKind::TooLarge, "exhaustive campaigns are limited to n <= 4");
    const std::size_t total = 8 * triple_count(n);
    if (m > total)
        throw Error(ErrorKind::InvalidArgument, "m exceeds the clause space");
    if (binomial(total, m) > kMaxExhaustive)
        throw Error(ErrorKind::TooLarge, "more than " + std::to_string(kMaxExhaustive) + " formulas to enumerate");
    std::vector<Instance> out;
    std::vector<std::size_t> pick(m);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    while (true) {
        Instance inst;
        inst.formula.n = n;
        for (const std::size_t id : pick)
            inst.formula.clauses.push_back(clause_of_id(id, n));
        out.push_back(std::move(inst));
        std::size_t i = m;
        while (i > 0 && pick[i - 1] == total - m + (i - 1))
            --i;
        if (i == 0)
            break;
        ++pick[i - 1];
        for (std::size_t j = i; j < m; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    return out;
}

Instance random_instance(const CampaignParams& p, std::size_t t)
{
    SplitMix64 rng(trial_seed(p.seed, t));
    const std::size_t m = p.m_min + static_cast<std::size_t>(rng.below(p.m_max - p.m_min + 1));
    Instance inst;
    inst.seed = rng.next();
    inst.formula = gen_random({p.n, m, p.mode, inst.seed});
    return inst;
}

Record counterexample_record(const CounterexampleEntry& e, const Formula& shrunk, const Formula& original,
                             const DiffResult& shrunk_diff, std::uint64_t seed)
{
    Record r("counterexample");
    r.add("digest", e.digest)
        .add("kind", std::string(to_string(e.kind)))
        .add("trial", e.trial)
        .add("seed", std::to_string(seed))
        .add("n", shrunk.n)
        .add("m", shrunk.m())
        .add("original_digest", hex_digest(formula_digest(original)))
        .add("original_n", original.n)
        .add("original_m", original.m())
        .add("solver_satisfiable", shrunk_diff.solver.satisfiable)
        .add("oracle_satisfiable", shrunk_diff.oracle.satisfiable)
        .add("certificate", std::string(to_string(shrunk_diff.solver.certificate_status)))
        .add("unsat_reason", std::string(to_string(shrunk_diff.solver.unsat_reason)));
    return r;
}

} // namespace

Report run_campaign(const CampaignParams& p)
{
    const auto start = std::chrono::steady_clock::now();
    Report report;
    report.params = p;
    if (p.m_min > p.m_max)
        throw Error(ErrorKind::InvalidArgument, "clause range is empty");

    std::vector<Instance> instances;
    if (p.exhaustive) {
        if (p.m_min != p.m_max)
            throw Error(ErrorKind::InvalidArgument, "exhaustive campaigns take a single clause count");
        instances = exhaustive_instances(p.n, p.m_min);
    } else {
        if (p.n < 3 || p.n > kOracleMaxVars)
            throw Error(ErrorKind::InvalidArity, "campaigns need 3 <= n <= 26");
        if (p.m_max > 8 * triple_count(p.n))
            throw Error(ErrorKind::InvalidArgument, "m exceeds the clause space");
    }
    const std::size_t count = p.exhaustive ? instances.size() : p.trials;
    if (!p.exhaustive)
        instances.resize(count);

    std::vector<DiffResult> results(count);
    std::atomic<std::size_t> cursor{0};
    std::vector<std::exception_ptr> errors(count);
    auto worker = [&] {
        for (std::size_t t = cursor++; t < count; t = cursor++) {
            try {
                if (!p.exhaustive)
                    instances[t] = random_instance(p, t);
                results[t] = run_diff(instances[t].formula, p.diff);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        }
    };
    const unsigned jobs = std::max(1U, p.jobs);
    if (jobs == 1 || count < 2) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < std::min<std::size_t>(jobs, count); ++j)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    std::filesystem::path dir;
    if (!p.out_dir.empty() && count > 0) {
        dir = p.out_dir;
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
    }

    std::vector<std::string> meta_lines;
    std::set<std::string> persisted;
    for (std::size_t t = 0; t < count; ++t) {
        const DiffResult& r = results[t];
        ++report.trials;
        (r.agree ? report.agreements : report.disagreements) += 1;
        ++report.anomalies[static_cast<std::size_t>(r.anomaly)];
        report.solver_sat += r.solver.satisfiable ? 1 : 0;
        report.oracle_sat += r.oracle.satisfiable ? 1 : 0;
        report.certificates_verified += r.solver.certificate_status == CertificateStatus::Verified ? 1 : 0;
        if (r.solver.unsat_reason == UnsatReason::EmptyRowAfterPropagation) {
            ++report.empty_row_unsat;
            report.empty_row_unsat_agree += r.oracle.satisfiable ? 0 : 1;
        }
        if (r.anomaly == AnomalyKind::None)
            continue;

        const AnomalyKind kind = r.anomaly;
        const Formula& original = instances[t].formula;
        const ShrinkResult s = shrink(original, [&](const Formula& g) {
            return run_diff(g, p.diff).anomaly == kind;
        });
        CounterexampleEntry entry;
        entry.digest = hex_digest(formula_digest(s.formula));
        entry.kind = kind;
        entry.trial = t;
        entry.cnf_file = "cex-" + entry.digest + ".cnf";
        entry.meta_file = "cex-" + entry.digest + ".meta";
        if (!persisted.insert(entry.digest).second)
            continue;
        const DiffResult shrunk_diff = run_diff(s.formula, p.diff);
        const Record meta = counterexample_record(entry, s.formula, original, shrunk_diff, instances[t].seed);
        if (!dir.empty()) {
            write_dimacs_file((dir / entry.cnf_file).string(), s.formula);
            write_text(dir / entry.meta_file, to_json_line(meta) + "\n");
        }
        meta_lines.push_back(to_json_line(meta));
        report.counterexamples.push_back(std::move(entry));
    }

    std::string digest_input = to_json_line(report.summary()) + "\n";
    for (const auto& line : meta_lines)
        digest_input += line + "\n";
    report.digest = fnv1a64(digest_input);
    if (!dir.empty()) {
        Record head = report.summary();
        head.add("digest", hex_digest(report.digest));
        std::string text = to_json_line(head) + "\n";
        for (const auto& line : meta_lines)
            text += line + "\n";
        write_text(dir / "report.meta", text);
    }
    report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::vector<RevalidationEntry> revalidate_corpus(const std::string& dir, const DiffOptions& opts)
{
    std::vector<std::filesystem::path> metas;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
        const std::string name = entry.path().filename().string();
        if (name.starts_with("cex-") && entry.path().extension() == ".meta")
            metas.push_back(entry.path());
    }
    if (ec)
        throw Error(ErrorKind::Io, "cannot list " + dir + ": " + ec.message());
    std::sort(metas.begin(), metas.end());
    std::vector<RevalidationEntry> out;
    for (const auto& meta : metas) {
        std::string line = read_text(meta);
        while (!line.empty() && (line.back() == '\n' || line.back() == '\r'))
            line.pop_back();
        const Record r = parse_json_line(line);
        const auto kind = anomaly_from_string(r.get_string("kind").value_or(""));
        if (!kind)
            throw Error(ErrorKind::SyntaxError, meta.string() + ": unknown anomaly kind");
        auto cnf = meta;
        cnf.replace_extension(".cnf");
        RevalidationEntry e;
        e.cnf_file = cnf.string();
        e.expected = *kind;
        e.observed = run_diff(read_dimacs_file(cnf.string()), opts).anomaly;
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<BenchRow> run_bench(int maxVars, double ratio, std::uint64_t seed)
{
    if (maxVars < 3 || maxVars > kOracleMaxVars)
        throw Error(ErrorKind::InvalidArity, "bench needs 3 <= max-vars <= 26");
    if (!(ratio >= 0.0))
        throw Error(ErrorKind::InvalidArgument, "ratio must be non-negative");
    std::vector<BenchRow> rows;
    for (int n = 3; n <= maxVars; ++n) {
        const std::size_t total = 8 * triple_count(n);
        const auto m = std::min(total, static_cast<std::size_t>(std::llround(ratio * n)));
        const Formula f = gen_random({n, m, GenMode::Uniform, trial_seed(seed, static_cast<std::size_t>(n - 3))});
        BenchRow row;
        row.n = n;
        row.m = m;
        row.digest = formula_digest(f);
        Verdict v;
        row.solve_ms = timed_ms([&] { v = solve(f); });
        row.satisfiable = v.satisfiable;
        row.certificate = std::string(to_string(v.certificate_status));
        row.roots_tried = v.stats.roots_tried;
        row.restarts = v.stats.restarts;
        row.cdag_length = v.stats.cdag_length;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace clausedag
