#pragma once

// Seeded instance generation, solver-versus-oracle differential runs,
// counterexample shrinking, corpus persistence and campaign reports.
//
// PRNG: SplitMix64. Each draw adds 0x9E3779B97F4A7C15 to the state and
// mixes it with (z ^ z>>30) * 0xBF58476D1CE4E5B9, (z ^ z>>27) *
// 0x94D049BB133111EB, z ^ z>>31. Bounded draws reject values below
// (2^64 - bound) % bound and return the remainder.
//
// Digest: 64-bit FNV-1a (offset 0xcbf29ce484222325, prime 0x100000001b3)
// over the canonical DIMACS text, printed as 16 lowercase hex digits.

#include "clausedag/dimacs.hpp"
#include "clausedag/oracle.hpp"
#include "clausedag/records.hpp"
#include "clausedag/solver.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace clausedag {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    // Uniform in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

private:
    std::uint64_t state_;
};

[[nodiscard]] std::uint64_t fnv1a64(std::string_view bytes);
[[nodiscard]] std::string hex_digest(std::uint64_t digest);
[[nodiscard]] std::uint64_t formula_digest(const Formula& f);

enum class GenMode { Uniform, Planted };
[[nodiscard]] std::string_view to_string(GenMode m) noexcept;

struct GenParams {
    int n = 6;
    std::size_t m = 20;
    GenMode mode = GenMode::Uniform;
    std::uint64_t seed = 0;
};

struct Generated {
    Formula formula;
    // The assignment planted mode guarantees; absent in uniform mode.
    std::optional<Assignment> hidden;
};

// Draws m distinct clauses by a partial Fisher-Yates shuffle over the
// 8*C(n,3) clause ids (id = 8*(rank-1) + column-1). Planted mode first draws
// the hidden assignment (one bit per variable, x_1 first) and shuffles only
// the clauses it satisfies. Throws InvalidArity for n outside 3..26 and
// InvalidArgument when m exceeds the available clauses.
[[nodiscard]] Generated generate(const GenParams& p);
[[nodiscard]] Formula gen_random(const GenParams& p);

enum class AnomalyKind : std::uint8_t {
    None,
    VerdictMismatch,
    CertificateFailed,
    CertificateNotFound,
    BudgetExhausted,
};
inline constexpr std::size_t kAnomalyKinds = 5;
[[nodiscard]] std::string_view to_string(AnomalyKind k) noexcept;
[[nodiscard]] std::optional<AnomalyKind> anomaly_from_string(std::string_view s);

using SolverFn = std::function<Verdict(const Formula&)>;

struct DiffOptions {
    std::uint64_t node_budget = kDefaultNodeBudget;
    // Replaces the real solver, e.g. with a test double.
    SolverFn solver;
};

struct DiffResult {
    std::uint64_t digest = 0;
    Verdict solver;
    OracleVerdict oracle;
    bool agree = false;
    AnomalyKind anomaly = AnomalyKind::None;
    double solver_ms = 0.0;
    double oracle_ms = 0.0;
};

[[nodiscard]] AnomalyKind classify(const Verdict& solver, const OracleVerdict& oracle);
[[nodiscard]] DiffResult run_diff(const Formula& f, const DiffOptions& opts = {});

using FormulaPredicate = std::function<bool(const Formula&)>;

struct ShrinkResult {
    Formula formula;
    // False when the predicate did not hold on the input; formula is then the input.
    bool predicate_held = false;
    std::size_t attempts = 0;
};

// Greedy reduction: drop clauses one at a time, then compact variable
// indices, keeping each step only if the predicate still holds. Repeats
// until a full pass changes nothing, so the result is 1-minimal.
[[nodiscard]] ShrinkResult shrink(const Formula& f, const FormulaPredicate& predicate);

// Renames the variables f mentions to 1..k in ascending order; n becomes
// max(k, 3).
[[nodiscard]] Formula compact_variables(const Formula& f);

struct CampaignParams {
    int n = 6;
    std::size_t m_min = 20;
    std::size_t m_max = 20;
    GenMode mode = GenMode::Uniform;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    // Every m-subset of the clause space instead of random trials; n <= 4.
    bool exhaustive = false;
    unsigned jobs = 1;
    std::string out_dir;
    DiffOptions diff;
};

struct CounterexampleEntry {
    std::string digest;
    AnomalyKind kind = AnomalyKind::None;
    std::size_t trial = 0;
    std::string cnf_file;
    std::string meta_file;
};

struct Report {
    CampaignParams params;
    std::size_t trials = 0;
    std::size_t agreements = 0;
    std::size_t disagreements = 0;
    std::array<std::size_t, kAnomalyKinds> anomalies{};
    std::size_t solver_sat = 0;
    std::size_t oracle_sat = 0;
    std::size_t certificates_verified = 0;
    std::size_t empty_row_unsat = 0;
    std::size_t empty_row_unsat_agree = 0;
    std::vector<CounterexampleEntry> counterexamples;
    double wall_ms = 0.0;
    std::uint64_t digest = 0;

    [[nodiscard]] std::size_t anomaly_count(AnomalyKind k) const
    {
        return anomalies[static_cast<std::size_t>(k)];
    }
    // Deterministic summary record: no wall time, no output path.
    [[nodiscard]] Record summary() const;
};

// Runs the campaign, shrinks and persists every anomaly, writes report.meta
// when out_dir is set. Throws Io on filesystem failures.
[[nodiscard]] Report run_campaign(const CampaignParams& p);

// The seed of trial t: the (t+1)-th output of SplitMix64(seed).
[[nodiscard]] std::uint64_t trial_seed(std::uint64_t seed, std::size_t t);

struct RevalidationEntry {
    std::string cnf_file;
    AnomalyKind expected = AnomalyKind::None;
    AnomalyKind observed = AnomalyKind::None;
    [[nodiscard]] bool reproduced() const { return expected == observed; }
};

// Re-runs every cex-*.meta / cex-*.cnf pair under dir.
[[nodiscard]] std::vector<RevalidationEntry> revalidate_corpus(const std::string& dir,
                                                               const DiffOptions& opts = {});

struct BenchRow {
    int n = 0;
    std::size_t m = 0;
    std::uint64_t digest = 0;
    bool satisfiable = false;
    std::string certificate;
    std::size_t roots_tried = 0;
    std::size_t restarts = 0;
    std::size_t cdag_length = 0;
    double solve_ms = 0.0;
};

// One uniform instance per n in 3..maxVars with m = round(ratio * n),
// capped at the clause space. Seeds derive from seed as for campaigns.
[[nodiscard]] std::vector<BenchRow> run_bench(int maxVars, double ratio, std::uint64_t seed);

} // namespace clausedag
