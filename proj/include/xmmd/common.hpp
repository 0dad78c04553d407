#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace xmmd {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Bad arguments: mismatched dimensions, out-of-range sizes, levels outside (0,1).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The data cannot support the requested computation (e.g. all points identical).
class DegenerateData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw InvalidInput(what);
}

/// n x d block of observations, one sample per row. Entries are finite.
class SampleMatrix {
public:
    SampleMatrix() = default;

    explicit SampleMatrix(RowMatrix data) : data_(std::move(data)) {
        require(data_.rows() >= 1 && data_.cols() >= 1, "SampleMatrix: need n >= 1 and d >= 1");
        for (Eigen::Index i = 0; i < data_.rows(); ++i)
            for (Eigen::Index j = 0; j < data_.cols(); ++j)
                if (!std::isfinite(data_(i, j)))
                    throw InvalidInput("SampleMatrix: non-finite entry at row " + std::to_string(i) +
                                       ", column " + std::to_string(j));
    }

    static SampleMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        const auto n = static_cast<Eigen::Index>(rows.size());
        const auto d = n > 0 ? static_cast<Eigen::Index>(rows.begin()->size()) : 0;
        RowMatrix m(n, d);
        Eigen::Index i = 0;
        for (const auto& r : rows) {
            require(static_cast<Eigen::Index>(r.size()) == d, "SampleMatrix: ragged rows");
            Eigen::Index j = 0;
            for (double v : r) m(i, j++) = v;
            ++i;
        }
        return SampleMatrix(std::move(m));
    }

    /// 1-D convenience: one scalar observation per row.
    static SampleMatrix column(std::initializer_list<double> values) {
        RowMatrix m(static_cast<Eigen::Index>(values.size()), 1);
        Eigen::Index i = 0;
        for (double v : values) m(i++, 0) = v;
        return SampleMatrix(std::move(m));
    }

    [[nodiscard]] std::size_t n() const noexcept { return static_cast<std::size_t>(data_.rows()); }
    [[nodiscard]] std::size_t d() const noexcept { return static_cast<std::size_t>(data_.cols()); }

    [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
        return {data_.data() + static_cast<std::ptrdiff_t>(i) * data_.cols(), d()};
    }

    [[nodiscard]] const RowMatrix& data() const noexcept { return data_; }

    /// Rows selected by index, in the given order.
    template <class IndexRange>
    [[nodiscard]] SampleMatrix take(const IndexRange& idx) const {
        RowMatrix out(static_cast<Eigen::Index>(std::size(idx)), data_.cols());
        Eigen::Index r = 0;
        for (auto i : idx) out.row(r++) = data_.row(static_cast<Eigen::Index>(i));
        return SampleMatrix(std::move(out));
    }

    /// Rows [first, first + count).
    [[nodiscard]] SampleMatrix slice(std::size_t first, std::size_t count) const {
        require(first + count <= n() && count >= 1, "SampleMatrix::slice out of range");
        return SampleMatrix(RowMatrix(data_.middleRows(static_cast<Eigen::Index>(first),
                                                       static_cast<Eigen::Index>(count))));
    }

    /// Row-wise concatenation [a; b].
    static SampleMatrix stack(const SampleMatrix& a, const SampleMatrix& b) {
        require(a.d() == b.d(), "SampleMatrix::stack: dimension mismatch");
        RowMatrix out(a.data_.rows() + b.data_.rows(), a.data_.cols());
        out.topRows(a.data_.rows()) = a.data_;
        out.bottomRows(b.data_.rows()) = b.data_;
        return SampleMatrix(std::move(out));
    }

    friend bool operator==(const SampleMatrix& a, const SampleMatrix& b) {
        return a.data_.rows() == b.data_.rows() && a.data_.cols() == b.data_.cols() &&
               a.data_ == b.data_;
    }

private:
    RowMatrix data_;
};

inline void require_level(double alpha) {
    require(alpha > 0.0 && alpha < 1.0, "level alpha must lie in (0, 1)");
}

/// Signed-infinity rule for a ratio whose denominator is exactly zero.
inline double studentized_ratio(double numerator, double sd) {
    if (sd > 0.0) return numerator / sd;
    if (numerator > 0.0) return std::numeric_limits<double>::infinity();
    if (numerator < 0.0) return -std::numeric_limits<double>::infinity();
    return 0.0;
}

}  // namespace xmmd
