#pragma once

// Brute-force reference computations. These evaluate the defining sums
// directly from eval_kernel and never touch the gram-block code paths.

#include "xmmd/xmmd.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

using xmmd::KernelSpec;
using xmmd::SampleMatrix;

inline double k(const KernelSpec& s, const SampleMatrix& a, std::size_t i, const SampleMatrix& b, std::size_t j) {
    return xmmd::eval_kernel(s, a.row(i), b.row(j));
}

inline double h(const KernelSpec& s, const SampleMatrix& xa, std::size_t i, const SampleMatrix& xb, std::size_t i2,
                const SampleMatrix& ya, std::size_t j, const SampleMatrix& yb, std::size_t j2) {
    return k(s, xa, i, xb, i2) - k(s, xa, i, yb, j2) - k(s, ya, j, xb, i2) + k(s, ya, j, yb, j2);
}

/// (n(n-1)m(m-1))^-1 sum over i != i', j != j' of h.
inline double mmd_u_quadruple(const KernelSpec& s, const SampleMatrix& x, const SampleMatrix& y) {
    const std::size_t n = x.n(), m = y.n();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            if (i == i2) continue;
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t j2 = 0; j2 < m; ++j2) {
                    if (j == j2) continue;
                    acc += h(s, x, i, x, i2, y, j, y, j2);
                }
        }
    return acc / (static_cast<double>(n) * (n - 1) * m * (m - 1));
}

/// (n1 n2 m1 m2)^-1 sum of h over X1 x X2 x Y1 x Y2.
inline double cross_quadruple(const KernelSpec& s, const SampleMatrix& x1, const SampleMatrix& x2,
                              const SampleMatrix& y1, const SampleMatrix& y2) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x1.n(); ++i)
        for (std::size_t i2 = 0; i2 < x2.n(); ++i2)
            for (std::size_t j = 0; j < y1.n(); ++j)
                for (std::size_t j2 = 0; j2 < y2.n(); ++j2) acc += h(s, x1, i, x2, i2, y1, j, y2, j2);
    return acc / (static_cast<double>(x1.n()) * x2.n() * y1.n() * y2.n());
}

/// U_{X,i} = <k(X1_i,.), mu2 - nu2> by direct sums.
inline std::vector<double> witness(const KernelSpec& s, const SampleMatrix& a, const SampleMatrix& x2,
                                   const SampleMatrix& y2) {
    std::vector<double> u(a.n());
    for (std::size_t i = 0; i < a.n(); ++i) {
        double px = 0.0, py = 0.0;
        for (std::size_t i2 = 0; i2 < x2.n(); ++i2) px += k(s, a, i, x2, i2);
        for (std::size_t j2 = 0; j2 < y2.n(); ++j2) py += k(s, a, i, y2, j2);
        u[i] = px / x2.n() - py / y2.n();
    }
    return u;
}

/// (1/N) sum (v_i - mean)^2.
inline double population_variance(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(v.size());
}

/// Median over all distinct-index pairs, by full sort.
inline double median_pairwise_distance(const SampleMatrix& pooled) {
    std::vector<double> d;
    for (std::size_t a = 0; a < pooled.n(); ++a)
        for (std::size_t b = a + 1; b < pooled.n(); ++b) {
            double ss = 0.0;
            for (std::size_t c = 0; c < pooled.d(); ++c) {
                const double diff = pooled.row(a)[c] - pooled.row(b)[c];
                ss += diff * diff;
            }
            d.push_back(std::sqrt(ss));
        }
    std::sort(d.begin(), d.end());
    const std::size_t mid = d.size() / 2;
    return d.size() % 2 ? d[mid] : 0.5 * (d[mid - 1] + d[mid]);
}

inline SampleMatrix random_sample(std::size_t n, std::size_t d, xmmd::Rng& rng, double shift = 0.0) {
    xmmd::RowMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(i, c) = rng.normal() + shift;
    return SampleMatrix(std::move(m));
}

inline bool rel_close(double a, double b, double rel, double abs_floor = 1e-300) {
    return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), abs_floor});
}

}  // namespace oracle
