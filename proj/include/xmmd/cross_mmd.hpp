#pragma once

// Cross-MMD: split each sample in two, pair the empirical embeddings of the
// first halves against those of the second halves, and studentize. The
// studentized statistic is compared with a standard normal quantile, so no
// permutations are needed.

#include "xmmd/calibration.hpp"
#include "xmmd/kernels.hpp"
#include "xmmd/mmd.hpp"
#include "xmmd/result.hpp"
#include "xmmd/rng.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

namespace xmmd {

/// Sizes of the two splits of X (n1 + n2) and of Y (m1 + m2). Without a
/// shuffle seed the first n1 rows of X form X1 (likewise Y1); with one, rows
/// are permuted first by Rng(seed, 0) for X and Rng(seed, 1) for Y.
struct SplitPlan {
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    std::size_t m1 = 0;
    std::size_t m2 = 0;
    std::optional<std::uint64_t> shuffle_seed;

    /// n1 = floor(n/2), m1 = floor(m/2); odd sizes put the extra point in the second split.
    static SplitPlan balanced(std::size_t n, std::size_t m, std::optional<std::uint64_t> seed = std::nullopt) {
        SplitPlan p{n / 2, n - n / 2, m / 2, m - m / 2, seed};
        p.validate(n, m);
        return p;
    }

    [[nodiscard]] std::size_t n() const noexcept { return n1 + n2; }
    [[nodiscard]] std::size_t m() const noexcept { return m1 + m2; }

    void validate(std::size_t n, std::size_t m) const {
        require(n1 + n2 == n && m1 + m2 == m, "SplitPlan: split sizes do not add up to the sample sizes");
        require(n1 >= 1 && n2 >= 1 && m1 >= 1 && m2 >= 1, "SplitPlan: every split must be nonempty");
    }
};

/// Row indices of each split, into X (x1, x2) and into Y (y1, y2).
struct SplitIndices {
    std::vector<std::size_t> x1, x2, y1, y2;
};

inline SplitIndices split_indices(const SplitPlan& plan) {
    auto xs = detail::iota_from(0, plan.n());
    auto ys = detail::iota_from(0, plan.m());
    if (plan.shuffle_seed) {
        Rng rx(*plan.shuffle_seed, 0);
        Rng ry(*plan.shuffle_seed, 1);
        shuffle(xs.begin(), xs.end(), rx);
        shuffle(ys.begin(), ys.end(), ry);
    }
    const auto cut = [](const std::vector<std::size_t>& v, std::size_t k) {
        return std::pair{std::vector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k)),
                         std::vector(v.begin() + static_cast<std::ptrdiff_t>(k), v.end())};
    };
    auto [x1, x2] = cut(xs, plan.n1);
    auto [y1, y2] = cut(ys, plan.m1);
    return {std::move(x1), std::move(x2), std::move(y1), std::move(y2)};
}

struct Splits {
    SampleMatrix x1, x2, y1, y2;
};

inline Splits split_samples(const SampleMatrix& x, const SampleMatrix& y, const SplitPlan& plan) {
    plan.validate(x.n(), y.n());
    const auto idx = split_indices(plan);
    return {x.take(idx.x1), x.take(idx.x2), y.take(idx.y1), y.take(idx.y2)};
}

struct CrossMmdResult {
    double xmmd2 = 0.0;    // <mu1 - nu1, mu2 - nu2>
    double sigma_x2 = 0.0; // variance of ux, divisor n1
    double sigma_y2 = 0.0; // variance of uy, divisor m1
    double sigma = 0.0;    // sqrt(sigma_x2 / n1 + sigma_y2 / m1)
    double t = 0.0;        // xmmd2 / sigma, signed infinity when sigma == 0
    Vector ux;             // <k(X_i, .), mu2 - nu2>, X_i in X1
    Vector uy;             // <k(Y_j, .), mu2 - nu2>, Y_j in Y1
    SplitPlan split;
};

namespace detail {

/// Kernel block with rows [X1; Y1] and columns [X2; Y2], gathered from the pooled gram.
inline Matrix cross_block_from_gram(const GramBlocks& gram, const SplitPlan& plan) {
    plan.validate(gram.n(), gram.m());
    const auto idx = split_indices(plan);
    std::vector<Eigen::Index> rows, cols;
    rows.reserve(plan.n1 + plan.m1);
    cols.reserve(plan.n2 + plan.m2);
    for (auto i : idx.x1) rows.push_back(static_cast<Eigen::Index>(i));
    for (auto j : idx.y1) rows.push_back(static_cast<Eigen::Index>(gram.n() + j));
    for (auto i : idx.x2) cols.push_back(static_cast<Eigen::Index>(i));
    for (auto j : idx.y2) cols.push_back(static_cast<Eigen::Index>(gram.n() + j));
    return gram.pooled()(rows, cols);
}

inline std::pair<Vector, Vector> witness_terms(const Matrix& cross, const SplitPlan& p) {
    const auto n1 = static_cast<Eigen::Index>(p.n1), n2 = static_cast<Eigen::Index>(p.n2);
    const auto m1 = static_cast<Eigen::Index>(p.m1), m2 = static_cast<Eigen::Index>(p.m2);
    require(cross.rows() == n1 + m1 && cross.cols() == n2 + m2, "cross block shape does not match split plan");
    Vector ux = cross.topLeftCorner(n1, n2).rowwise().mean() - cross.topRightCorner(n1, m2).rowwise().mean();
    Vector uy = cross.bottomLeftCorner(m1, n2).rowwise().mean() - cross.bottomRightCorner(m1, m2).rowwise().mean();
    return {std::move(ux), std::move(uy)};
}

inline double population_variance(const Vector& v) {
    const double mean = v.mean();
    return (v.array() - mean).square().sum() / static_cast<double>(v.size());
}

/// Mean difference plus studentizer; shared by the MMD path and the general
/// cross U-statistic.
inline CrossMmdResult studentize_terms(Vector ux, Vector uy, double xmmd2, const SplitPlan& plan) {
    require(plan.n1 >= 2 && plan.m1 >= 2, "studentize: need n1 >= 2 and m1 >= 2");
    CrossMmdResult r;
    r.xmmd2 = xmmd2;
    r.sigma_x2 = population_variance(ux);
    r.sigma_y2 = population_variance(uy);
    r.sigma = std::sqrt(r.sigma_x2 / static_cast<double>(plan.n1) + r.sigma_y2 / static_cast<double>(plan.m1));
    r.t = studentized_ratio(xmmd2, r.sigma);
    r.ux = std::move(ux);
    r.uy = std::move(uy);
    r.split = plan;
    return r;
}

inline CrossMmdResult studentize_cross(const Matrix& cross, const SplitPlan& plan) {
    auto [ux, uy] = witness_terms(cross, plan);
    const double xmmd2 = ux.mean() - uy.mean();
    return studentize_terms(std::move(ux), std::move(uy), xmmd2, plan);
}

}  // namespace detail

/// Cross U-statistic (n1 m1 n2 m2)^-1 sum h(X_i, X_i', Y_j, Y_j') over
/// X_i in X1, X_i' in X2, Y_j in Y1, Y_j' in Y2, evaluated through block
/// averages of the gram in O((n+m)^2).
inline double cross_mmd_statistic(const GramBlocks& gram, const SplitPlan& plan) {
    const auto [ux, uy] = detail::witness_terms(detail::cross_block_from_gram(gram, plan), plan);
    return ux.mean() - uy.mean();
}

inline CrossMmdResult studentize(const GramBlocks& gram, const SplitPlan& plan) {
    return detail::studentize_cross(detail::cross_block_from_gram(gram, plan), plan);
}

/// Statistic and studentizer straight from data. Only the (n1+m1) x (n2+m2)
/// cross block of the kernel matrix is evaluated.
inline CrossMmdResult cross_mmd(const SampleMatrix& x, const SampleMatrix& y, const KernelSpec& spec,
                                const SplitPlan& plan) {
    require(x.d() == y.d(), "cross_mmd: dimension mismatch");
    require(plan.n1 >= 2 && plan.m1 >= 2, "studentize: need n1 >= 2 and m1 >= 2");
    const Splits s = split_samples(x, y, plan);
    const Matrix cross = cross_gram(spec, SampleMatrix::stack(s.x1, s.y1), SampleMatrix::stack(s.x2, s.y2));
    return detail::studentize_cross(cross, plan);
}

/// One-sided test: reject iff t >= z_{1-alpha}.
inline TestResult xmmd_test(const SampleMatrix& x, const SampleMatrix& y, const KernelSpec& spec, double alpha,
                            const SplitPlan& plan) {
    require_level(alpha);
    const auto start = std::chrono::steady_clock::now();
    const CrossMmdResult r = cross_mmd(x, y, spec, plan);
    TestMeta meta = TestMeta::of("xmmd", x, y, spec);
    meta.seed = plan.shuffle_seed.value_or(0);
    meta.n1 = plan.n1;
    meta.m1 = plan.m1;
    meta.elapsed_ns = detail::nanoseconds_since(start);
    return TestResult::by_threshold(r.t, normal_quantile(1.0 - alpha), alpha, std::move(meta));
}

inline TestResult xmmd_test(const SampleMatrix& x, const SampleMatrix& y, const KernelSpec& spec, double alpha) {
    return xmmd_test(x, y, spec, alpha, SplitPlan::balanced(x.n(), y.n()));
}

}  // namespace xmmd
