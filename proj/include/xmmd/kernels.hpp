#pragma once

#include "xmmd/common.hpp"
#include "xmmd/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xmmd {

enum class KernelFamily { Gaussian, Laplace, Polynomial };

inline std::string_view to_string(KernelFamily f) {
    switch (f) {
        case KernelFamily::Gaussian: return "gaussian";
        case KernelFamily::Laplace: return "laplace";
        case KernelFamily::Polynomial: return "poly";
    }
    return "?";
}

/// Positive-definite kernel identity.
///
///   Gaussian    exp(-scale * |x - y|^2)
///   Laplace     exp(-scale * |x - y|)
///   Polynomial  (1 + scale * <x, y>)^degree
///
/// The alternative polynomial convention (1 + <x, y> / s)^r is reached with
/// scale = 1 / s. degree is set iff family == Polynomial.
struct KernelSpec {
    KernelFamily family = KernelFamily::Gaussian;
    double scale = 1.0;
    std::optional<int> degree;

    static KernelSpec gaussian(double scale) { return checked({KernelFamily::Gaussian, scale, {}}); }
    static KernelSpec laplace(double scale) { return checked({KernelFamily::Laplace, scale, {}}); }
    static KernelSpec polynomial(int degree, double scale) {
        return checked({KernelFamily::Polynomial, scale, degree});
    }

    void validate() const {
        require(std::isfinite(scale) && scale > 0.0, "kernel scale must be a positive finite number");
        if (family == KernelFamily::Polynomial)
            require(degree.has_value() && *degree >= 1, "polynomial kernel needs degree >= 1");
        else
            require(!degree.has_value(), "degree is only meaningful for the polynomial kernel");
    }

    [[nodiscard]] bool uses_distance() const noexcept { return family != KernelFamily::Polynomial; }

    friend bool operator==(const KernelSpec&, const KernelSpec&) = default;

private:
    static KernelSpec checked(KernelSpec s) {
        s.validate();
        return s;
    }
};

namespace detail {

inline double squared_distance(std::span<const double> x, std::span<const double> y) noexcept {
    double acc = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double diff = x[k] - y[k];
        acc += diff * diff;
    }
    return acc;
}

inline double dot(std::span<const double> x, std::span<const double> y) noexcept {
    double acc = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) acc += x[k] * y[k];
    return acc;
}

/// Kernel value from the pair statistic it depends on: squared distance for
/// Gaussian/Laplace, inner product for Polynomial.
inline double kernel_from_pair_stat(const KernelSpec& spec, double stat) noexcept {
    switch (spec.family) {
        case KernelFamily::Gaussian: return std::exp(-spec.scale * stat);
        case KernelFamily::Laplace: return std::exp(-spec.scale * std::sqrt(stat));
        case KernelFamily::Polynomial: {
            const double base = 1.0 + spec.scale * stat;
            double out = 1.0;
            for (int r = 0; r < *spec.degree; ++r) out *= base;
            return out;
        }
    }
    return 0.0;
}

inline double pair_stat(const KernelSpec& spec, std::span<const double> x,
                        std::span<const double> y) noexcept {
    return spec.uses_distance() ? squared_distance(x, y) : dot(x, y);
}

inline constexpr std::size_t kRowBlock = 32;

}  // namespace detail

inline double eval_kernel(const KernelSpec& spec, std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size(), "eval_kernel: dimension mismatch");
    spec.validate();
    return detail::kernel_from_pair_stat(spec, detail::pair_stat(spec, x, y));
}

inline double eval_kernel(const KernelSpec& spec, std::initializer_list<double> x,
                          std::initializer_list<double> y) {
    return eval_kernel(spec, std::span<const double>(x.begin(), x.size()),
                       std::span<const double>(y.begin(), y.size()));
}

/// Pooled (n+m) x (n+m) kernel matrix over [X; Y] with X-block first.
class GramBlocks {
public:
    GramBlocks(Matrix pooled, std::size_t n, std::size_t m) : pooled_(std::move(pooled)), n_(n), m_(m) {
        require(pooled_.rows() == pooled_.cols() &&
                    static_cast<std::size_t>(pooled_.rows()) == n_ + m_,
                "GramBlocks: pooled matrix must be (n+m) x (n+m)");
    }

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t m() const noexcept { return m_; }
    [[nodiscard]] std::size_t size() const noexcept { return n_ + m_; }
    [[nodiscard]] const Matrix& pooled() const noexcept { return pooled_; }

    [[nodiscard]] double operator()(std::size_t a, std::size_t b) const noexcept {
        return pooled_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }

    [[nodiscard]] auto xx() const { return pooled_.topLeftCorner(rows(n_), rows(n_)); }
    [[nodiscard]] auto xy() const { return pooled_.topRightCorner(rows(n_), rows(m_)); }
    [[nodiscard]] auto yy() const { return pooled_.bottomRightCorner(rows(m_), rows(m_)); }

    /// Every entry multiplied by c.
    [[nodiscard]] GramBlocks scaled(double c) const { return {pooled_ * c, n_, m_}; }

private:
    static Eigen::Index rows(std::size_t k) { return static_cast<Eigen::Index>(k); }

    Matrix pooled_;
    std::size_t n_;
    std::size_t m_;
};

/// Symmetric matrix of pair statistics (squared distances or inner products)
/// over the rows of Z. Each unordered pair is evaluated once and mirrored;
/// row blocks run in parallel with identical per-entry arithmetic.
inline Matrix pairwise_stats(const RowMatrix& z, bool squared_distances) {
    const auto total = static_cast<std::size_t>(z.rows());
    const auto d = static_cast<std::size_t>(z.cols());
    Matrix out(z.rows(), z.rows());
    const std::size_t blocks = (total + detail::kRowBlock - 1) / detail::kRowBlock;
    parallel_for(blocks, [&](std::size_t blk) {
        const std::size_t lo = blk * detail::kRowBlock;
        const std::size_t hi = std::min(total, lo + detail::kRowBlock);
        for (std::size_t a = lo; a < hi; ++a) {
            std::span<const double> za(z.data() + a * d, d);
            for (std::size_t b = a; b < total; ++b) {
                std::span<const double> zb(z.data() + b * d, d);
                const double v = squared_distances ? detail::squared_distance(za, zb) : detail::dot(za, zb);
                out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
            }
        }
    });
    for (Eigen::Index a = 0; a < out.rows(); ++a)
        for (Eigen::Index b = a + 1; b < out.rows(); ++b) out(b, a) = out(a, b);
    return out;
}

/// Applies the kernel entry-wise to a matrix of pair statistics.
inline Matrix kernel_from_stats(const KernelSpec& spec, Matrix stats) {
    spec.validate();
    for (Eigen::Index c = 0; c < stats.cols(); ++c)
        for (Eigen::Index r = 0; r < stats.rows(); ++r)
            stats(r, c) = detail::kernel_from_pair_stat(spec, stats(r, c));
    return stats;
}

inline GramBlocks gram_matrix(const KernelSpec& spec, const SampleMatrix& x, const SampleMatrix& y) {
    require(x.d() == y.d(), "gram_matrix: X and Y have different dimensions");
    spec.validate();
    const SampleMatrix pooled = SampleMatrix::stack(x, y);
    return {kernel_from_stats(spec, pairwise_stats(pooled.data(), spec.uses_distance())), x.n(), y.n()};
}

/// Rectangular kernel block k(A_i, B_j).
inline Matrix cross_gram(const KernelSpec& spec, const SampleMatrix& a, const SampleMatrix& b) {
    require(a.d() == b.d(), "cross_gram: dimension mismatch");
    spec.validate();
    Matrix out(static_cast<Eigen::Index>(a.n()), static_cast<Eigen::Index>(b.n()));
    const std::size_t blocks = (a.n() + detail::kRowBlock - 1) / detail::kRowBlock;
    parallel_for(blocks, [&](std::size_t blk) {
        const std::size_t lo = blk * detail::kRowBlock;
        const std::size_t hi = std::min(a.n(), lo + detail::kRowBlock);
        for (std::size_t i = lo; i < hi; ++i) {
            const auto ai = a.row(i);
            for (std::size_t j = 0; j < b.n(); ++j)
                out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    detail::kernel_from_pair_stat(spec, detail::pair_stat(spec, ai, b.row(j)));
        }
    });
    return out;
}

namespace detail {

/// Median of the strict upper triangle of a symmetric squared-distance matrix,
/// returned as a distance. Even counts average the two middle distances.
inline double median_distance_from_sq(const Matrix& sq) {
    const auto total = static_cast<std::size_t>(sq.rows());
    std::vector<double> vals;
    vals.reserve(total * (total - 1) / 2);
    for (Eigen::Index b = 1; b < sq.cols(); ++b)
        for (Eigen::Index a = 0; a < b; ++a) vals.push_back(sq(a, b));
    const std::size_t count = vals.size();
    const std::size_t mid = count / 2;
    std::nth_element(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(mid), vals.end());
    const double upper = std::sqrt(vals[mid]);
    if (count % 2 == 1) return upper;
    const double lower = std::sqrt(*std::max_element(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(mid)));
    return 0.5 * (lower + upper);
}

inline double scale_from_median(KernelFamily family, double w) {
    if (!(w > 0.0))
        throw DegenerateData("median heuristic: median pairwise distance is zero (points identical)");
    return family == KernelFamily::Gaussian ? 1.0 / (2.0 * w * w) : 1.0 / w;
}

}  // namespace detail

/// Median-heuristic scale on the pooled sample: w is the median Euclidean
/// distance over distinct-index pairs; Gaussian gets 1/(2w^2), Laplace and
/// Polynomial get 1/w.
inline double median_bandwidth(const SampleMatrix& x, const SampleMatrix& y, KernelFamily family) {
    require(x.d() == y.d(), "median_bandwidth: dimension mismatch");
    require(x.n() + y.n() >= 2, "median_bandwidth: need at least two points");
    const SampleMatrix pooled = SampleMatrix::stack(x, y);
    return detail::scale_from_median(family,
                                     detail::median_distance_from_sq(pairwise_stats(pooled.data(), true)));
}

/// A kernel choice whose scale may be left to the median heuristic.
struct KernelConfig {
    KernelFamily family = KernelFamily::Gaussian;
    std::optional<int> degree;
    std::optional<double> scale;  // empty: median heuristic on the pooled sample

    [[nodiscard]] bool median_auto() const noexcept { return !scale.has_value(); }
    [[nodiscard]] std::string bandwidth_rule() const { return median_auto() ? "median" : "fixed"; }

    [[nodiscard]] KernelSpec resolve(const SampleMatrix& x, const SampleMatrix& y) const {
        KernelSpec spec{family, scale ? *scale : median_bandwidth(x, y, family), degree};
        spec.validate();
        return spec;
    }

    static KernelConfig from(const KernelSpec& spec) { return {spec.family, spec.degree, spec.scale}; }
};

}  // namespace xmmd
