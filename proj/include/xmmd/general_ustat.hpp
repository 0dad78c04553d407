#pragma once

// Cross U-statistic for an arbitrary two-sample kernel h(x1, x2, y1, y2) that
// is degenerate under the null. The MMD kernel is one instance; with it the
// result coincides with cross_mmd.
//
// Cost is n1 * m1 * n2 * m2 evaluations of h. This is the general/oracle
// path; the MMD fast path lives in cross_mmd.hpp.

#include "xmmd/cross_mmd.hpp"
#include "xmmd/kernels.hpp"
#include "xmmd/parallel.hpp"

#include <functional>
#include <span>
#include <string>

namespace xmmd {

struct DegenerateKernel {
    using Fn = std::function<double(std::span<const double> x1, std::span<const double> x2,
                                    std::span<const double> y1, std::span<const double> y2)>;
    std::string name;
    Fn h;
};

/// h(x, x', y, y') = k(x,x') - k(x,y') - k(y,x') + k(y,y').
inline DegenerateKernel mmd_kernel(const KernelSpec& spec) {
    spec.validate();
    return {"mmd", [spec](auto x1, auto x2, auto y1, auto y2) {
                const auto k = [&spec](std::span<const double> a, std::span<const double> b) {
                    return detail::kernel_from_pair_stat(spec, detail::pair_stat(spec, a, b));
                };
                return k(x1, x2) - k(x1, y2) - k(y1, x2) + k(y1, y2);
            }};
}

/// values(i, j) = phi(X1_i, Y1_j), the average of h over the second splits.
struct PhiMatrix {
    Matrix values;
};

inline PhiMatrix phi_matrix(const DegenerateKernel& kernel, const SampleMatrix& x1, const SampleMatrix& x2,
                            const SampleMatrix& y1, const SampleMatrix& y2) {
    require(x1.d() == x2.d() && x1.d() == y1.d() && x1.d() == y2.d(), "phi_matrix: dimension mismatch");
    require(static_cast<bool>(kernel.h), "phi_matrix: kernel has no function");
    const double inv = 1.0 / (static_cast<double>(x2.n()) * static_cast<double>(y2.n()));
    Matrix phi(static_cast<Eigen::Index>(x1.n()), static_cast<Eigen::Index>(y1.n()));
    parallel_for(x1.n(), [&](std::size_t i) {
        for (std::size_t j = 0; j < y1.n(); ++j) {
            double acc = 0.0;
            for (std::size_t i2 = 0; i2 < x2.n(); ++i2)
                for (std::size_t j2 = 0; j2 < y2.n(); ++j2) acc += kernel.h(x1.row(i), x2.row(i2), y1.row(j), y2.row(j2));
            phi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc * inv;
        }
    });
    return {std::move(phi)};
}

/// T = mean(phi) / sigma. The studentizer uses the row means of phi (over
/// Y1) in place of q-bar and the column means (over X1) in place of r-bar.
/// For the MMD kernel these differ from the exact projections by constants,
/// which the centred variances remove. In the returned record ux holds the
/// row means and uy the column means.
inline CrossMmdResult general_cross_t(const DegenerateKernel& kernel, const SampleMatrix& x,
                                      const SampleMatrix& y, const SplitPlan& plan) {
    require(plan.n1 >= 2 && plan.m1 >= 2, "studentize: need n1 >= 2 and m1 >= 2");
    const Splits s = split_samples(x, y, plan);
    const PhiMatrix phi = phi_matrix(kernel, s.x1, s.x2, s.y1, s.y2);
    Vector rows = phi.values.rowwise().mean();
    Vector cols = phi.values.colwise().mean().transpose();
    return detail::studentize_terms(std::move(rows), std::move(cols), phi.values.mean(), plan);
}

}  // namespace xmmd
