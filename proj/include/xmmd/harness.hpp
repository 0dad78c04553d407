#pragma once

// Monte Carlo experiment runner: null histograms, type-I error, power curves,
// ROC curves and timing. Every trial draws its data from streams derived
// from (seed, size index, trial index), so outputs other than timings are a
// pure function of the ExperimentSpec.

#include "xmmd/calibration.hpp"
#include "xmmd/cross_mmd.hpp"
#include "xmmd/datagen.hpp"
#include "xmmd/kernels.hpp"
#include "xmmd/mmd.hpp"
#include "xmmd/parallel.hpp"
#include "xmmd/rng.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace xmmd {

inline constexpr const char* kVersion = "0.1.0";

enum class ExperimentKind { NullHist, TypeIError, PowerCurve, Roc, Bench };

inline std::string_view to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::NullHist: return "null-hist";
        case ExperimentKind::TypeIError: return "type-i-error";
        case ExperimentKind::PowerCurve: return "power-curve";
        case ExperimentKind::Roc: return "roc";
        case ExperimentKind::Bench: return "bench";
    }
    return "?";
}

/// A test in an experiment: xmmd, mmd-perm{B}, block{b}, linear. In ROC
/// runs mmd-perm contributes only its U-statistic (no permutations).
struct TestId {
    enum class Kind { XMmd, MmdPerm, Block, Linear };
    Kind kind = Kind::XMmd;
    std::size_t permutations = 200;
    std::optional<std::size_t> block;  // empty: floor(sqrt(n))

    static TestId xmmd() { return {Kind::XMmd, 200, std::nullopt}; }
    static TestId mmd_perm(std::size_t b = 200) { return {Kind::MmdPerm, b, std::nullopt}; }
    static TestId block_mmd(std::optional<std::size_t> b = std::nullopt) { return {Kind::Block, 200, b}; }
    static TestId linear() { return {Kind::Linear, 200, std::nullopt}; }

    [[nodiscard]] std::size_t block_size(std::size_t n) const {
        return block ? *block : static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
    }

    [[nodiscard]] std::string label() const {
        switch (kind) {
            case Kind::XMmd: return "xmmd";
            case Kind::MmdPerm: return "mmd-perm{" + std::to_string(permutations) + "}";
            case Kind::Block: return block ? "block{" + std::to_string(*block) + "}" : "block{sqrt}";
            case Kind::Linear: return "linear";
        }
        return "?";
    }

    /// Accepts "xmmd", "linear", "mmd-perm", "mmd-perm{B}", "mmd-perm:B",
    /// "block", "block{b}", "block:b", "block{sqrt}".
    static TestId parse(std::string_view text) {
        std::string_view name = text;
        std::optional<std::string_view> arg;
        if (auto pos = text.find_first_of("{:"); pos != std::string_view::npos) {
            name = text.substr(0, pos);
            auto rest = text.substr(pos + 1);
            if (text[pos] == '{') {
                require(!rest.empty() && rest.back() == '}', "test id: missing '}' in '" + std::string(text) + "'");
                rest.remove_suffix(1);
            }
            arg = rest;
        }
        const auto number = [&](std::string_view s) {
            std::size_t v = 0;
            const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            require(ec == std::errc() && p == s.data() + s.size() && v > 0,
                    "test id: bad parameter in '" + std::string(text) + "'");
            return v;
        };
        if (name == "xmmd" && !arg) return xmmd();
        if (name == "linear" && !arg) return linear();
        if (name == "mmd-perm" || name == "mmd") return mmd_perm(arg ? number(*arg) : 200);
        if (name == "block") {
            if (!arg || *arg == "sqrt") return block_mmd();
            return block_mmd(number(*arg));
        }
        throw InvalidInput("unknown test id '" + std::string(text) + "'");
    }

    friend bool operator==(const TestId&, const TestId&) = default;
};

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::PowerCurve;
    SourceSpec source;
    std::vector<std::pair<std::size_t, std::size_t>> sizes;  // (n, m)
    std::size_t trials = 100;
    std::vector<TestId> tests{TestId::xmmd()};
    double alpha = 0.05;
    std::uint64_t seed = 0;
    KernelConfig kernel;  // scale empty: median heuristic per trial
    std::size_t bootstrap = 200;

    void validate() const {
        source.validate();
        require_level(alpha);
        require(trials >= 1, "experiment: trials must be >= 1");
        require(!sizes.empty(), "experiment: sizes must be nonempty");
        require(!tests.empty(), "experiment: tests must be nonempty");
        if (kernel.scale) KernelSpec{kernel.family, *kernel.scale, kernel.degree}.validate();
        for (auto [n, m] : sizes) {
            require(n >= 2 && m >= 2, "experiment: every size needs n >= 2 and m >= 2");
            for (const auto& t : tests) {
                if (t.kind == TestId::Kind::XMmd)
                    require(n >= 4 && m >= 4, "experiment: xmmd needs n, m >= 4");
                if (t.kind == TestId::Kind::Block || t.kind == TestId::Kind::Linear)
                    require(n == m, "experiment: " + t.label() + " requires n == m");
                if (t.kind == TestId::Kind::Linear) require(n >= 4, "experiment: linear needs n >= 4");
                if (t.kind == TestId::Kind::Block) {
                    const auto b = t.block_size(n);
                    require(b >= 2 && b <= n && (b == n || n / b >= 2),
                            "experiment: block size " + std::to_string(b) + " invalid for n=" + std::to_string(n));
                }
            }
        }
        if (kind == ExperimentKind::NullHist || kind == ExperimentKind::TypeIError)
            require(source.is_null(), "experiment: " + std::string(to_string(kind)) + " needs a null source (eps = 0)");
        if (kind == ExperimentKind::Roc)
            require(!source.is_null(), "experiment: roc needs an alternative source (eps > 0)");
    }
};

/// One aggregate line per (experiment, test, n, m). Optional fields are
/// empty in CSV when not applicable.
struct ResultRow {
    std::string experiment;
    std::string test;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t d = 0;
    std::size_t trials = 0;
    std::optional<double> reject_rate;
    std::optional<double> reject_sd;  // bootstrap sd of reject_rate
    std::optional<double> mean_statistic;
    std::optional<double> ks_distance;
    std::size_t degenerate = 0;  // +-inf statistics, excluded from KS
    std::optional<double> predicted_power;
    std::optional<double> auc;
    std::optional<double> time_median_ms;
    std::optional<double> time_iqr_ms;

    friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct RocPoint {
    std::string test;
    double fpr = 0.0;
    double tpr = 0.0;
};

struct RawSample {
    std::string test;
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<double> values;
};

struct ResultTable {
    std::vector<ResultRow> rows;
    std::vector<RawSample> raw;     // per-trial statistics (null-hist)
    std::vector<RocPoint> roc;      // roc only
    std::uint64_t seed = 0;
    std::string rng_algorithm = kRngAlgorithm;
    std::string version = kVersion;
};

// ---------------------------------------------------------------------------
// Aggregation helpers

/// Rounds to 9 significant digits, the precision written to CSV, so tables
/// survive a write/read cycle unchanged.
inline double round_sig9(double v) {
    if (!std::isfinite(v)) return v;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::strtod(buf, nullptr);
}

inline double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

/// Linear-interpolated quantile of a sample (type 7).
inline double quantile_of(std::vector<double> v, double q) {
    require(!v.empty(), "quantile of empty sample");
    std::sort(v.begin(), v.end());
    const double h = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

/// Standard deviation of the rejection rate over `resamples` bootstrap
/// resamples of the per-trial 0/1 indicators.
inline double bootstrap_sd(const std::vector<char>& rejects, std::size_t resamples, std::uint64_t seed) {
    if (resamples < 2 || rejects.empty()) return 0.0;
    Rng rng(seed, 0xb007);
    std::vector<double> rates(resamples);
    for (auto& r : rates) {
        std::size_t hits = 0;
        for (std::size_t k = 0; k < rejects.size(); ++k) hits += rejects[rng.below(rejects.size())] ? 1 : 0;
        r = static_cast<double>(hits) / static_cast<double>(rejects.size());
    }
    const double mu = mean_of(rates);
    double ss = 0.0;
    for (double r : rates) ss += (r - mu) * (r - mu);
    return std::sqrt(ss / static_cast<double>(resamples - 1));
}

/// Exact step ROC: every observed value is a candidate threshold and a trial
/// is called positive when statistic >= threshold. Starts at (0,0), ends at (1,1).
inline std::vector<std::pair<double, double>> roc_curve(const std::vector<double>& null_stats,
                                                        const std::vector<double>& alt_stats) {
    require(!null_stats.empty() && !alt_stats.empty(), "roc_curve: both arms need values");
    std::vector<std::pair<double, int>> all;  // (value, 0 null / 1 alt)
    all.reserve(null_stats.size() + alt_stats.size());
    for (double v : null_stats) all.emplace_back(v, 0);
    for (double v : alt_stats) all.emplace_back(v, 1);
    std::sort(all.begin(), all.end(), [](auto& a, auto& b) { return a.first > b.first; });
    const auto n0 = static_cast<double>(null_stats.size());
    const auto n1 = static_cast<double>(alt_stats.size());
    std::vector<std::pair<double, double>> pts{{0.0, 0.0}};
    std::size_t fp = 0, tp = 0;
    for (std::size_t k = 0; k < all.size();) {
        const double v = all[k].first;
        for (; k < all.size() && all[k].first == v; ++k) (all[k].second ? tp : fp) += 1;
        pts.emplace_back(static_cast<double>(fp) / n0, static_cast<double>(tp) / n1);
    }
    return pts;
}

/// Trapezoid area under (fpr, tpr) points sorted by fpr.
inline double auc(const std::vector<std::pair<double, double>>& pts) {
    double area = 0.0;
    for (std::size_t k = 1; k < pts.size(); ++k)
        area += (pts[k].first - pts[k - 1].first) * 0.5 * (pts[k].second + pts[k - 1].second);
    return area;
}

// ---------------------------------------------------------------------------
// Trial execution

struct TrialEval {
    double statistic = 0.0;
    bool reject = false;
    std::int64_t elapsed_ns = 0;
};

namespace detail {

inline std::uint64_t trial_seed(std::uint64_t seed, std::size_t size_index, std::size_t trial, std::uint64_t salt) {
    return mix_seed(mix_seed(seed ^ salt, size_index), trial);
}

/// Runs one test on (x, y) with a resolved kernel. With decide == false the
/// permutation test skips its permutations (statistic only).
inline TrialEval evaluate(const TestId& id, const SampleMatrix& x, const SampleMatrix& y, const KernelSpec& k,
                          double alpha, std::uint64_t perm_seed, bool decide) {
    const auto start = std::chrono::steady_clock::now();
    TrialEval e;
    switch (id.kind) {
        case TestId::Kind::XMmd: {
            const auto r = xmmd_test(x, y, k, alpha);
            e = {r.statistic, r.reject};
            break;
        }
        case TestId::Kind::MmdPerm: {
            if (decide) {
                const auto r = mmd_permutation_test(x, y, k, alpha, {id.permutations, perm_seed});
                e = {r.statistic, r.reject};
            } else {
                e = {mmd_u_statistic(gram_matrix(k, x, y)), false};
            }
            break;
        }
        case TestId::Kind::Block: {
            const auto r = block_mmd_test(x, y, k, id.block_size(x.n()), alpha, {id.permutations, perm_seed});
            e = {r.statistic, r.reject};
            break;
        }
        case TestId::Kind::Linear: {
            const auto r = linear_mmd_test(x, y, k, alpha);
            e = {r.statistic, r.reject};
            break;
        }
    }
    e.elapsed_ns = nanoseconds_since(start);
    return e;
}

/// evals[test][trial] for one (n, m) and one arm of the source.
inline std::vector<std::vector<TrialEval>> run_trials(const ExperimentSpec& spec, std::size_t size_index,
                                                      Arm y_arm, std::uint64_t salt, bool decide,
                                                      bool serial = false) {
    const auto [n, m] = spec.sizes[size_index];
    std::vector<std::vector<TrialEval>> evals(spec.tests.size(), std::vector<TrialEval>(spec.trials));
    const auto one = [&](std::size_t t) {
        const std::uint64_t s = trial_seed(spec.seed, size_index, t, salt);
        const SampleMatrix x = sample(spec.source, Arm::P, n, {s, 0});
        const SampleMatrix y = sample(spec.source, y_arm, m, {s, 1});
        const KernelSpec k = spec.kernel.resolve(x, y);
        for (std::size_t i = 0; i < spec.tests.size(); ++i)
            evals[i][t] = evaluate(spec.tests[i], x, y, k, spec.alpha, mix_seed(s, 2 + i), decide);
    };
    if (serial) {
        for (std::size_t t = 0; t < spec.trials; ++t) one(t);
    } else {
        parallel_for(spec.trials, one);
    }
    return evals;
}

inline ResultRow base_row(const ExperimentSpec& spec, const TestId& id, std::size_t size_index) {
    ResultRow row;
    row.experiment = std::string(to_string(spec.kind));
    row.test = id.label();
    row.n = spec.sizes[size_index].first;
    row.m = spec.sizes[size_index].second;
    row.d = spec.source.d;
    row.trials = spec.trials;
    return row;
}

inline void fill_rejection(ResultRow& row, const std::vector<TrialEval>& evals, const ExperimentSpec& spec,
                           std::uint64_t boot_seed) {
    std::vector<char> rejects(evals.size());
    std::vector<double> finite;
    std::size_t hits = 0;
    for (std::size_t t = 0; t < evals.size(); ++t) {
        rejects[t] = evals[t].reject;
        hits += evals[t].reject ? 1 : 0;
        if (std::isfinite(evals[t].statistic)) finite.push_back(evals[t].statistic);
    }
    row.reject_rate = round_sig9(static_cast<double>(hits) / static_cast<double>(evals.size()));
    row.reject_sd = round_sig9(bootstrap_sd(rejects, spec.bootstrap, boot_seed));
    row.degenerate = evals.size() - finite.size();
    if (!finite.empty()) row.mean_statistic = round_sig9(mean_of(finite));
}

/// Rates of exactly 0 or 1 are pulled in by half a trial before prediction.
inline double predicted_from(double rate, std::size_t trials, double alpha) {
    const double half = 0.5 / static_cast<double>(trials);
    return predict_perm_power(std::clamp(rate, half, 1.0 - half), alpha);
}

}  // namespace detail

/// Per (n, m) and test: the sample of statistics across trials, its KS
/// distance to N(0,1), and the number of infinite (degenerate) values.
inline ResultTable run_null_hist(const ExperimentSpec& spec) {
    require(spec.kind == ExperimentKind::NullHist, "run_null_hist: spec kind must be null-hist");
    spec.validate();
    ResultTable table;
    table.seed = spec.seed;
    for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
        const auto evals = detail::run_trials(spec, s, Arm::P, 0x6e756c6cULL, true);
        for (std::size_t i = 0; i < spec.tests.size(); ++i) {
            ResultRow row = detail::base_row(spec, spec.tests[i], s);
            detail::fill_rejection(row, evals[i], spec, detail::trial_seed(spec.seed, s, i, 0xb0));
            RawSample raw{row.test, row.n, row.m, {}};
            for (const auto& e : evals[i]) raw.values.push_back(e.statistic);
            const EmpiricalSample emp(raw.values);
            if (emp.count() > 0) row.ks_distance = round_sig9(ks_distance(emp));
            table.rows.push_back(std::move(row));
            table.raw.push_back(std::move(raw));
        }
    }
    return table;
}

/// Rejection rate with a bootstrap band per (n, m) and test. xmmd rows also
/// carry the predicted permutation-test power. Used for both power curves
/// and type-I error studies (the latter on a null source).
inline ResultTable run_power_curve(const ExperimentSpec& spec) {
    require(spec.kind == ExperimentKind::PowerCurve || spec.kind == ExperimentKind::TypeIError,
            "run_power_curve: spec kind must be power-curve or type-i-error");
    spec.validate();
    ResultTable table;
    table.seed = spec.seed;
    for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
        const auto evals = detail::run_trials(spec, s, Arm::Q, 0x706f776572ULL, true);
        for (std::size_t i = 0; i < spec.tests.size(); ++i) {
            ResultRow row = detail::base_row(spec, spec.tests[i], s);
            detail::fill_rejection(row, evals[i], spec, detail::trial_seed(spec.seed, s, i, 0xb0));
            if (spec.tests[i].kind == TestId::Kind::XMmd)
                row.predicted_power = round_sig9(detail::predicted_from(*row.reject_rate, spec.trials, spec.alpha));
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

inline ResultTable run_type_i_error(const ExperimentSpec& spec) { return run_power_curve(spec); }

/// `trials` null and `trials` alternative draws per (n, m); ROC points and
/// AUC per test. The permutation test enters through its U-statistic.
inline ResultTable run_roc(const ExperimentSpec& spec) {
    require(spec.kind == ExperimentKind::Roc, "run_roc: spec kind must be roc");
    spec.validate();
    ResultTable table;
    table.seed = spec.seed;
    for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
        const auto null_evals = detail::run_trials(spec, s, Arm::P, 0x726f6330ULL, false);
        const auto alt_evals = detail::run_trials(spec, s, Arm::Q, 0x726f6331ULL, false);
        for (std::size_t i = 0; i < spec.tests.size(); ++i) {
            std::vector<double> h0, h1;
            for (const auto& e : null_evals[i]) h0.push_back(e.statistic);
            for (const auto& e : alt_evals[i]) h1.push_back(e.statistic);
            const auto pts = roc_curve(h0, h1);
            ResultRow row = detail::base_row(spec, spec.tests[i], s);
            row.auc = round_sig9(auc(pts));
            for (const auto& [f, t] : pts) table.roc.push_back({row.test, f, t});
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

/// Median and IQR of per-trial elapsed time (kernel resolution and data
/// generation excluded), with power. Trials run serially; each test is
/// warmed once on the first trial's data.
inline ResultTable run_bench(const ExperimentSpec& spec) {
    require(spec.kind == ExperimentKind::Bench, "run_bench: spec kind must be bench");
    spec.validate();
    ResultTable table;
    table.seed = spec.seed;
    for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
        {
            const auto [n, m] = spec.sizes[s];
            const std::uint64_t w = detail::trial_seed(spec.seed, s, 0, 0x7761726dULL);
            const SampleMatrix x = sample(spec.source, Arm::P, n, {w, 0});
            const SampleMatrix y = sample(spec.source, Arm::Q, m, {w, 1});
            const KernelSpec k = spec.kernel.resolve(x, y);
            for (const auto& t : spec.tests) detail::evaluate(t, x, y, k, spec.alpha, w, true);
        }
        const auto evals = detail::run_trials(spec, s, Arm::Q, 0x62656e6368ULL, true, /*serial=*/true);
        for (std::size_t i = 0; i < spec.tests.size(); ++i) {
            ResultRow row = detail::base_row(spec, spec.tests[i], s);
            detail::fill_rejection(row, evals[i], spec, detail::trial_seed(spec.seed, s, i, 0xb0));
            std::vector<double> ms;
            for (const auto& e : evals[i]) ms.push_back(static_cast<double>(e.elapsed_ns) * 1e-6);
            row.time_median_ms = round_sig9(quantile_of(ms, 0.5));
            row.time_iqr_ms = round_sig9(quantile_of(ms, 0.75) - quantile_of(ms, 0.25));
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

inline ResultTable run_experiment(const ExperimentSpec& spec) {
    switch (spec.kind) {
        case ExperimentKind::NullHist: return run_null_hist(spec);
        case ExperimentKind::TypeIError: return run_type_i_error(spec);
        case ExperimentKind::PowerCurve: return run_power_curve(spec);
        case ExperimentKind::Roc: return run_roc(spec);
        case ExperimentKind::Bench: return run_bench(spec);
    }
    throw InvalidInput("unknown experiment kind");
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr const char* kResultHeader =
    "experiment,test,n,m,d,trials,reject_rate,reject_sd,mean_statistic,ks_distance,degenerate,"
    "predicted_power,auc,time_median_ms,time_iqr_ms";

namespace detail {

inline std::string format_g9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline std::string format_opt(const std::optional<double>& v) { return v ? format_g9(*v) : std::string(); }

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    require(end != s.c_str() && *end == '\0', "CSV: not a number: '" + s + "'");
    return v;
}

inline std::optional<double> parse_opt(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return parse_double(s);
}

inline std::size_t parse_count(const std::string& s) {
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    require(ec == std::errc() && p == s.data() + s.size(), "CSV: not a count: '" + s + "'");
    return v;
}

}  // namespace detail

/// `timing == false` leaves the elapsed-time columns empty, which makes the
/// output a pure function of the spec.
inline void write_result_csv(std::ostream& os, const ResultTable& table, bool timing = true) {
    os << kResultHeader << '\n';
    for (const auto& r : table.rows) {
        os << r.experiment << ',' << r.test << ',' << r.n << ',' << r.m << ',' << r.d << ',' << r.trials << ','
           << detail::format_opt(r.reject_rate) << ',' << detail::format_opt(r.reject_sd) << ','
           << detail::format_opt(r.mean_statistic) << ',' << detail::format_opt(r.ks_distance) << ','
           << r.degenerate << ',' << detail::format_opt(r.predicted_power) << ',' << detail::format_opt(r.auc)
           << ',' << (timing ? detail::format_opt(r.time_median_ms) : "") << ','
           << (timing ? detail::format_opt(r.time_iqr_ms) : "") << '\n';
    }
}

inline std::vector<ResultRow> read_result_csv(std::istream& is) {
    std::string line;
    require(static_cast<bool>(std::getline(is, line)) && line == kResultHeader, "result CSV: missing or wrong header");
    std::vector<ResultRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto c = detail::split_csv_line(line);
        require(c.size() == 15, "result CSV: expected 15 columns, got " + std::to_string(c.size()));
        ResultRow r;
        r.experiment = c[0];
        r.test = c[1];
        r.n = detail::parse_count(c[2]);
        r.m = detail::parse_count(c[3]);
        r.d = detail::parse_count(c[4]);
        r.trials = detail::parse_count(c[5]);
        r.reject_rate = detail::parse_opt(c[6]);
        r.reject_sd = detail::parse_opt(c[7]);
        r.mean_statistic = detail::parse_opt(c[8]);
        r.ks_distance = detail::parse_opt(c[9]);
        r.degenerate = detail::parse_count(c[10]);
        r.predicted_power = detail::parse_opt(c[11]);
        r.auc = detail::parse_opt(c[12]);
        r.time_median_ms = detail::parse_opt(c[13]);
        r.time_iqr_ms = detail::parse_opt(c[14]);
        rows.push_back(std::move(r));
    }
    return rows;
}

/// Single-column dump of per-trial statistics; infinities written as inf/-inf.
inline void write_raw_csv(std::ostream& os, const RawSample& raw) {
    os << "statistic\n";
    for (double v : raw.values) os << detail::format_g9(v) << '\n';
}

inline void write_roc_csv(std::ostream& os, const std::vector<RocPoint>& pts) {
    os << "test,fpr,tpr\n";
    for (const auto& p : pts) os << p.test << ',' << detail::format_g9(p.fpr) << ',' << detail::format_g9(p.tpr) << '\n';
}

}  // namespace xmmd
