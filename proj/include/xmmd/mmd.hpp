#pragma once

// Quadratic-time MMD U-statistic with permutation calibration, and the
// block / linear-time MMD baselines with Gaussian calibration.

#include "xmmd/calibration.hpp"
#include "xmmd/kernels.hpp"
#include "xmmd/parallel.hpp"
#include "xmmd/result.hpp"
#include "xmmd/rng.hpp"

#include <chrono>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

namespace xmmd {

/// h(x, x', y, y') = k(x,x') - k(x,y') - k(y,x') + k(y,y'), read from the
/// pooled gram. i, i2 index X rows; j, j2 index Y rows.
inline double h_mmd(const GramBlocks& gram, std::size_t i, std::size_t i2, std::size_t j, std::size_t j2) {
    const std::size_t n = gram.n();
    require(i < n && i2 < n && j < gram.m() && j2 < gram.m(), "h_mmd: index out of range");
    return gram(i, i2) - gram(i, n + j2) - gram(n + j, i2) + gram(n + j, n + j2);
}

namespace detail {

/// Unbiased MMD^2 with the X sample at pooled positions xs and the Y sample
/// at ys. Off-diagonal sums only; O((|xs| + |ys|)^2) gram lookups.
inline double mmd_u_indexed(const Matrix& k, std::span<const std::size_t> xs, std::span<const std::size_t> ys) {
    const auto at = [&k](std::size_t a, std::size_t b) {
        return k(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    };
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t b = 0; b < xs.size(); ++b) {
        for (std::size_t a = 0; a < b; ++a) sxx += at(xs[a], xs[b]);
        for (std::size_t a = 0; a < ys.size(); ++a) sxy += at(ys[a], xs[b]);
    }
    for (std::size_t b = 0; b < ys.size(); ++b)
        for (std::size_t a = 0; a < b; ++a) syy += at(ys[a], ys[b]);
    const auto n = static_cast<double>(xs.size());
    const auto m = static_cast<double>(ys.size());
    return 2.0 * sxx / (n * (n - 1.0)) + 2.0 * syy / (m * (m - 1.0)) - 2.0 * sxy / (n * m);
}

inline std::vector<std::size_t> iota_from(std::size_t first, std::size_t count) {
    std::vector<std::size_t> v(count);
    std::iota(v.begin(), v.end(), first);
    return v;
}

inline std::int64_t nanoseconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace detail

/// Unbiased quadratic-time estimate of MMD^2 (off-diagonal block averages).
inline double mmd_u_statistic(const GramBlocks& gram) {
    require(gram.n() >= 2 && gram.m() >= 2, "mmd_u_statistic: need n >= 2 and m >= 2");
    const auto xs = detail::iota_from(0, gram.n());
    const auto ys = detail::iota_from(gram.n(), gram.m());
    return detail::mmd_u_indexed(gram.pooled(), xs, ys);
}

struct PermutationPlan {
    std::size_t permutations = 200;  // B
    std::uint64_t seed = 0;
};

/// Statistics of B relabelings of the pooled sample. Permutation b is a
/// Fisher-Yates shuffle drawn from Rng(seed, b), so the output does not
/// depend on how permutations are scheduled across threads.
inline std::vector<double> permutation_statistics(const GramBlocks& gram, const PermutationPlan& plan) {
    require(plan.permutations >= 1, "permutation test: B must be >= 1");
    require(gram.n() >= 2 && gram.m() >= 2, "permutation test: need n >= 2 and m >= 2");
    std::vector<double> stats(plan.permutations);
    const std::size_t total = gram.size();
    const std::size_t n = gram.n();
    parallel_for(plan.permutations, [&](std::size_t b) {
        Rng rng(plan.seed, b);
        auto idx = detail::iota_from(0, total);
        shuffle(idx.begin(), idx.end(), rng);
        const std::span<const std::size_t> all(idx);
        stats[b] = detail::mmd_u_indexed(gram.pooled(), all.first(n), all.subspan(n));
    });
    return stats;
}

/// Permutation test with the add-one p-value (1 + #{stat_b >= stat_obs}) / (B + 1).
inline TestResult permutation_test(const GramBlocks& gram, double alpha, const PermutationPlan& plan) {
    require_level(alpha);
    const auto start = std::chrono::steady_clock::now();
    const double observed = mmd_u_statistic(gram);
    const auto stats = permutation_statistics(gram, plan);
    std::size_t at_least = 0;
    for (double s : stats) at_least += (s >= observed) ? 1 : 0;
    const double p = static_cast<double>(1 + at_least) / static_cast<double>(plan.permutations + 1);
    TestMeta meta;
    meta.test = "mmd-perm";
    meta.n = gram.n();
    meta.m = gram.m();
    meta.seed = plan.seed;
    meta.elapsed_ns = detail::nanoseconds_since(start);
    meta.note = "B=" + std::to_string(plan.permutations);
    return TestResult::by_p_value(observed, p, alpha, std::move(meta));
}

/// Data-level convenience: gram assembly plus permutation_test.
inline TestResult mmd_permutation_test(const SampleMatrix& x, const SampleMatrix& y, const KernelSpec& spec,
                                       double alpha, const PermutationPlan& plan) {
    const auto start = std::chrono::steady_clock::now();
    TestResult r = permutation_test(gram_matrix(spec, x, y), alpha, plan);
    r.meta.d = x.d();
    r.meta.kernel = spec;
    r.meta.elapsed_ns = detail::nanoseconds_since(start);
    return r;
}

/// Per-block unbiased MMD^2 over floor(n / b) consecutive paired blocks.
/// Trailing rows that do not fill a block are ignored.
inline std::vector<double> block_mmd_statistics(const SampleMatrix& x, const SampleMatrix& y,
                                                const KernelSpec& spec, std::size_t block) {
    require(x.d() == y.d(), "block MMD: dimension mismatch");
    require(x.n() == y.n(), "block MMD: requires n == m");
    require(block >= 2 && block <= x.n(), "block MMD: block size must satisfy 2 <= b <= n");
    const std::size_t count = x.n() / block;
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k)
        out[k] = mmd_u_statistic(gram_matrix(spec, x.slice(k * block, block), y.slice(k * block, block)));
    return out;
}

/// Block MMD: mean of per-block statistics divided by (sample sd across
/// blocks) / sqrt(#blocks), compared with z_{1-alpha}. With b == n there is a
/// single block and calibration falls back to permutations. Block sizes that
/// leave one block with b < n are refused.
inline TestResult block_mmd_test(const SampleMatrix& x, const SampleMatrix& y, const KernelSpec& spec,
                                 std::size_t block, double alpha, const PermutationPlan& fallback = {}) {
    require_level(alpha);
    require(x.n() == y.n(), "block MMD: requires n == m");
    require(block >= 2 && block <= x.n(), "block MMD: block size must satisfy 2 <= b <= n");
    const auto start = std::chrono::steady_clock::now();
    if (block == x.n()) {
        TestResult r = mmd_permutation_test(x, y, spec, alpha, fallback);
        r.meta.test = "block";
        r.meta.note = "b=n: single block, permutation calibration (B=" + std::to_string(fallback.permutations) + ")";
        r.meta.elapsed_ns = detail::nanoseconds_since(start);
        return r;
    }
    require(x.n() / block >= 2, "block MMD: b > n/2 leaves one block; Gaussian calibration does not apply");

    const auto stats = block_mmd_statistics(x, y, spec, block);
    const auto count = static_cast<double>(stats.size());
    const double mean = std::accumulate(stats.begin(), stats.end(), 0.0) / count;
    double ss = 0.0;
    for (double s : stats) ss += (s - mean) * (s - mean);
    const double sd = std::sqrt(ss / (count - 1.0));
    const double t = studentized_ratio(mean, sd / std::sqrt(count));

    TestMeta meta = TestMeta::of("block", x, y, spec);
    meta.elapsed_ns = detail::nanoseconds_since(start);
    meta.note = "b=" + std::to_string(block) + " blocks=" + std::to_string(stats.size()) +
                " per-block unbiased U, across-block sd divisor blocks-1";
    return TestResult::by_threshold(t, normal_quantile(1.0 - alpha), alpha, std::move(meta));
}

/// Mean of h over the disjoint quadruples (X_2t, X_2t+1, Y_2t, Y_2t+1).
/// Returns the studentized value mean / (sd / sqrt(T)); O(n) kernel calls.
inline double linear_mmd_statistic(const SampleMatrix& x, const SampleMatrix& y, const KernelSpec& spec) {
    require(x.d() == y.d(), "linear MMD: dimension mismatch");
    require(x.n() == y.n(), "linear MMD: requires n == m");
    require(x.n() >= 4, "linear MMD: requires n >= 4");
    spec.validate();
    const std::size_t terms = x.n() / 2;
    std::vector<double> h(terms);
    const auto k = [&spec](std::span<const double> a, std::span<const double> b) {
        return detail::kernel_from_pair_stat(spec, detail::pair_stat(spec, a, b));
    };
    for (std::size_t t = 0; t < terms; ++t) {
        const auto x1 = x.row(2 * t), x2 = x.row(2 * t + 1);
        const auto y1 = y.row(2 * t), y2 = y.row(2 * t + 1);
        h[t] = k(x1, x2) - k(x1, y2) - k(y1, x2) + k(y1, y2);
    }
    const auto count = static_cast<double>(terms);
    const double mean = std::accumulate(h.begin(), h.end(), 0.0) / count;
    double ss = 0.0;
    for (double v : h) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (count - 1.0));
    return studentized_ratio(mean, sd / std::sqrt(count));
}

inline TestResult linear_mmd_test(const SampleMatrix& x, const SampleMatrix& y, const KernelSpec& spec,
                                  double alpha) {
    require_level(alpha);
    const auto start = std::chrono::steady_clock::now();
    const double t = linear_mmd_statistic(x, y, spec);
    TestMeta meta = TestMeta::of("linear", x, y, spec);
    meta.elapsed_ns = detail::nanoseconds_since(start);
    return TestResult::by_threshold(t, normal_quantile(1.0 - alpha), alpha, std::move(meta));
}

}  // namespace xmmd
