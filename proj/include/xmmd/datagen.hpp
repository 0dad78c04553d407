#pragma once

#include "xmmd/common.hpp"
#include "xmmd/rng.hpp"

#include <string_view>

namespace xmmd {

enum class SourceFamily { GaussianShift, Dirichlet };

inline std::string_view to_string(SourceFamily f) {
    return f == SourceFamily::GaussianShift ? "gmd" : "dirichlet";
}

enum class Arm { P, Q };

/// Synthetic source pair.
///   GaussianShift: P = N(0, I_d), Q = N(a, I_d), a = first j coordinates eps.
///   Dirichlet:     P = Dir(base * 1), Q = Dir(base * (1 + eps) * 1).
/// eps == 0 makes P and Q identical.
struct SourceSpec {
    SourceFamily family = SourceFamily::GaussianShift;
    std::size_t d = 1;
    double eps = 0.0;
    std::size_t j = 1;
    double base_alpha = 1.0;

    static SourceSpec gaussian_shift(std::size_t d, std::size_t j, double eps) {
        SourceSpec s{SourceFamily::GaussianShift, d, eps, j, 1.0};
        s.validate();
        return s;
    }
    static SourceSpec dirichlet(std::size_t d, double eps, double base = 1.0) {
        SourceSpec s{SourceFamily::Dirichlet, d, eps, 1, base};
        s.validate();
        return s;
    }

    [[nodiscard]] bool is_null() const noexcept { return eps == 0.0; }

    void validate() const {
        require(d >= 1, "source: d must be >= 1");
        require(std::isfinite(eps) && eps >= 0.0, "source: eps must be finite and >= 0");
        if (family == SourceFamily::GaussianShift)
            require(j >= 1 && j <= d, "source: need 1 <= j <= d");
        else
            require(std::isfinite(base_alpha) && base_alpha > 0.0, "source: Dirichlet base must be > 0");
    }
};

/// First j entries eps, the rest 0.
inline Vector shift_vector(std::size_t d, std::size_t j, double eps) {
    require(j >= 1 && j <= d, "shift_vector: need 1 <= j <= d");
    Vector a = Vector::Zero(static_cast<Eigen::Index>(d));
    a.head(static_cast<Eigen::Index>(j)).setConstant(eps);
    return a;
}

/// n i.i.d. rows from the chosen arm. Normals by Box-Muller; Dirichlet rows
/// are normalised Marsaglia-Tsang gamma draws.
inline SampleMatrix sample(const SourceSpec& source, Arm which, std::size_t n, RngState state) {
    source.validate();
    require(n >= 1, "sample: n must be >= 1");
    Rng rng(state);
    const auto rows = static_cast<Eigen::Index>(n);
    const auto cols = static_cast<Eigen::Index>(source.d);
    RowMatrix out(rows, cols);
    if (source.family == SourceFamily::GaussianShift) {
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index c = 0; c < cols; ++c) out(i, c) = rng.normal();
        if (which == Arm::Q && source.eps != 0.0)
            out.leftCols(static_cast<Eigen::Index>(source.j)).array() += source.eps;
    } else {
        const double shape = which == Arm::Q ? source.base_alpha * (1.0 + source.eps) : source.base_alpha;
        for (Eigen::Index i = 0; i < rows; ++i) {
            double total = 0.0;
            for (Eigen::Index c = 0; c < cols; ++c) total += (out(i, c) = rng.gamma(shape));
            out.row(i) /= total;
        }
    }
    return SampleMatrix(std::move(out));
}

}  // namespace xmmd
