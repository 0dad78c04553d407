#pragma once

#include "xmmd/common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace xmmd {

/// Standard normal CDF via the C library's erfc, which is accurate to a few
/// ulp; the complement form keeps relative accuracy in the lower tail.
inline double normal_cdf(double x) noexcept {
    if (x == std::numeric_limits<double>::infinity()) return 1.0;
    if (x == -std::numeric_limits<double>::infinity()) return 0.0;
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

inline double normal_pdf(double x) noexcept {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

/// Inverse of normal_cdf on (0, 1). Acklam's rational approximation
/// (relative error ~1e-9) followed by Halley refinement against normal_cdf.
inline double normal_quantile(double p) {
    require(p > 0.0 && p < 1.0, "normal_quantile: p must lie in (0, 1)");
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                   1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                   6.680131188771972e+01,  -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                   -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                   3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    for (int iter = 0; iter < 2; ++iter) {
        const double e = normal_cdf(x) - p;
        const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
        x -= u / (1.0 + 0.5 * x * u);
    }
    return x;
}

/// Sorted finite sample. Infinite entries (from degenerate studentizers) are
/// not part of the sample; they are counted on the side.
class EmpiricalSample {
public:
    explicit EmpiricalSample(std::vector<double> values) {
        values_.reserve(values.size());
        for (double v : values) {
            require(!std::isnan(v), "EmpiricalSample: NaN value");
            if (v == std::numeric_limits<double>::infinity())
                ++pos_inf_;
            else if (v == -std::numeric_limits<double>::infinity())
                ++neg_inf_;
            else
                values_.push_back(v);
        }
        std::sort(values_.begin(), values_.end());
    }

    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
    [[nodiscard]] std::size_t count() const noexcept { return values_.size(); }
    [[nodiscard]] std::size_t positive_infinities() const noexcept { return pos_inf_; }
    [[nodiscard]] std::size_t negative_infinities() const noexcept { return neg_inf_; }
    [[nodiscard]] std::size_t degenerate_count() const noexcept { return pos_inf_ + neg_inf_; }

private:
    std::vector<double> values_;
    std::size_t pos_inf_ = 0;
    std::size_t neg_inf_ = 0;
};

/// Kolmogorov-Smirnov distance between the empirical CDF and the standard normal.
inline double ks_distance(const EmpiricalSample& sample) {
    const auto& v = sample.values();
    require(!v.empty(), "ks_distance: empty sample");
    const auto count = static_cast<double>(v.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double phi = normal_cdf(v[i]);
        sup = std::max({sup, std::abs(static_cast<double>(i + 1) / count - phi),
                        std::abs(static_cast<double>(i) / count - phi)});
    }
    return sup;
}

/// Predicted power of the full permutation test from the measured power of
/// the split-sample test: Phi(z_a + sqrt(2) (Phi^-1(rho) - z_a)), z_a the
/// alpha-quantile.
inline double predict_perm_power(double rho, double alpha) {
    require(rho > 0.0 && rho < 1.0, "predict_perm_power: power must lie in (0, 1)");
    require_level(alpha);
    const double z = normal_quantile(alpha);
    return normal_cdf(z + std::numbers::sqrt2 * (normal_quantile(rho) - z));
}

}  // namespace xmmd
