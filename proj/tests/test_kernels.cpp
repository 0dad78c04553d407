#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>

#include <numeric>

using namespace xmmd;
using Catch::Approx;

TEST_CASE("eval_kernel closed forms", "[kernels]") {
    const auto g = KernelSpec::gaussian(1.0);
    CHECK(eval_kernel(g, {3.2, -1.0}, {3.2, -1.0}) == 1.0);
    CHECK(eval_kernel(g, {0.0}, {1.0}) == Approx(0.36787944117144233).epsilon(1e-15));
    CHECK(eval_kernel(KernelSpec::polynomial(2, 1.0), {1.0, 0.0}, {0.0, 1.0}) == 1.0);
    CHECK(eval_kernel(KernelSpec::polynomial(3, 0.5), {1.0, 2.0}, {2.0, 1.0}) == Approx(27.0));
    CHECK(eval_kernel(KernelSpec::laplace(2.0), {0.0, 0.0}, {3.0, 4.0}) == Approx(std::exp(-10.0)));
}

TEST_CASE("eval_kernel rejects bad input", "[kernels]") {
    CHECK_THROWS_AS(eval_kernel(KernelSpec::gaussian(1.0), {0.0, 1.0}, {1.0}), InvalidInput);
    CHECK_THROWS_AS(KernelSpec::gaussian(0.0), InvalidInput);
    CHECK_THROWS_AS(KernelSpec::gaussian(-1.0), InvalidInput);
    CHECK_THROWS_AS(KernelSpec::polynomial(0, 1.0), InvalidInput);
    KernelSpec with_degree{KernelFamily::Gaussian, 1.0, 2};
    CHECK_THROWS_AS(with_degree.validate(), InvalidInput);
}

TEST_CASE("kernel symmetry and translation invariance", "[kernels][property]") {
    Rng rng(11, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto d = 1 + rng.below(6);
        std::vector<double> x(d), y(d), xs(d), ys(d);
        for (std::size_t c = 0; c < d; ++c) {
            x[c] = 3 * rng.normal();
            y[c] = 3 * rng.normal();
            const double shift = 10 * rng.normal();
            xs[c] = x[c] + shift;
            ys[c] = y[c] + shift;
        }
        for (const auto& spec : {KernelSpec::gaussian(0.3), KernelSpec::laplace(0.7), KernelSpec::polynomial(3, 0.2)})
            CHECK(eval_kernel(spec, x, y) == eval_kernel(spec, y, x));
        const auto g = KernelSpec::gaussian(0.1);
        CHECK(std::abs(eval_kernel(g, xs, ys) - eval_kernel(g, x, y)) <= 1e-12);
    }
}

TEST_CASE("gram_matrix entries and symmetry", "[kernels]") {
    const auto gram = gram_matrix(KernelSpec::gaussian(1.0), SampleMatrix::column({0.0}), SampleMatrix::column({1.0}));
    CHECK(gram.pooled()(0, 0) == 1.0);
    CHECK(gram.pooled()(1, 1) == 1.0);
    CHECK(gram.pooled()(0, 1) == Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(gram.pooled()(1, 0) == gram.pooled()(0, 1));

    Rng rng(3, 0);
    const auto x = oracle::random_sample(37, 4, rng);
    const auto y = oracle::random_sample(29, 4, rng);
    for (const auto& spec : {KernelSpec::gaussian(0.2), KernelSpec::polynomial(2, 0.5), KernelSpec::laplace(1.0)}) {
        const auto g = gram_matrix(spec, x, y);
        CHECK(g.pooled() == g.pooled().transpose());
        const auto pooled = SampleMatrix::stack(x, y);
        for (std::size_t a = 0; a < pooled.n(); a += 7)
            for (std::size_t b = 0; b < pooled.n(); b += 5)
                CHECK(g(a, b) == eval_kernel(spec, pooled.row(a), pooled.row(b)));
    }
    CHECK_THROWS_AS(gram_matrix(KernelSpec::gaussian(1.0), x, oracle::random_sample(3, 2, rng)), InvalidInput);
}

TEST_CASE("gram_matrix duplicate rows give duplicate gram rows", "[kernels]") {
    const auto x = SampleMatrix::from_rows({{0.5, 1.0}, {0.5, 1.0}, {2.0, -1.0}});
    const auto y = SampleMatrix::from_rows({{0.0, 0.0}, {1.0, 1.0}});
    const auto g = gram_matrix(KernelSpec::gaussian(0.7), x, y);
    CHECK(g.pooled().row(0) .isApprox(g.pooled().row(1), 0.0));
    CHECK(g.pooled().row(0) == g.pooled().row(1));
}

TEST_CASE("gram_matrix is bit-identical across thread counts", "[kernels][concurrency]") {
    Rng rng(5, 0);
    const auto x = oracle::random_sample(150, 7, rng);
    const auto y = oracle::random_sample(120, 7, rng);
    set_thread_count(1);
    const auto g1 = gram_matrix(KernelSpec::gaussian(0.05), x, y);
    set_thread_count(4);
    const auto g4 = gram_matrix(KernelSpec::gaussian(0.05), x, y);
    set_thread_count(0);
    CHECK(g1.pooled() == g4.pooled());
}

TEST_CASE("Gaussian gram is positive semidefinite", "[kernels][property]") {
    Rng rng(17, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto n = 1 + rng.below(10);
        const auto m = 1 + rng.below(10);
        const auto d = 1 + rng.below(4);
        const auto g = gram_matrix(KernelSpec::gaussian(0.05 + 2 * rng.uniform()), oracle::random_sample(n, d, rng),
                                   oracle::random_sample(m, d, rng));
        Eigen::SelfAdjointEigenSolver<Matrix> eig(g.pooled(), Eigen::EigenvaluesOnly);
        CHECK(eig.eigenvalues().minCoeff() >= -1e-8);
    }
}

TEST_CASE("median_bandwidth examples", "[kernels]") {
    const auto s = median_bandwidth(SampleMatrix::column({0.0, 1.0}), SampleMatrix::column({3.0}), KernelFamily::Gaussian);
    CHECK(s == Approx(0.125).epsilon(1e-15));
    CHECK(median_bandwidth(SampleMatrix::column({0.0}), SampleMatrix::column({2.0}), KernelFamily::Polynomial) ==
          Approx(0.5).epsilon(1e-15));
    CHECK(median_bandwidth(SampleMatrix::column({0.0}), SampleMatrix::column({2.0}), KernelFamily::Laplace) ==
          Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(median_bandwidth(SampleMatrix::column({5.0, 5.0}), SampleMatrix::column({5.0}),
                                     KernelFamily::Gaussian),
                    DegenerateData);
}

TEST_CASE("median_bandwidth even count averages the middle pair", "[kernels]") {
    // 4 points -> 6 distances {1,2,3,1,2,1}: sorted 1,1,1,2,2,3 -> w = 1.5
    const auto s = median_bandwidth(SampleMatrix::column({0.0, 1.0}), SampleMatrix::column({2.0, 3.0}),
                                    KernelFamily::Polynomial);
    CHECK(s == Approx(1.0 / 1.5));
}

TEST_CASE("median_bandwidth matches brute force and is permutation invariant", "[kernels][property]") {
    Rng rng(23, 0);
    for (int trial = 0; trial < 30; ++trial) {
        const auto n = 1 + rng.below(15);
        const auto m = 1 + rng.below(15);
        const auto x = oracle::random_sample(n, 3, rng);
        const auto y = oracle::random_sample(m, 3, rng);
        const double w = oracle::median_pairwise_distance(SampleMatrix::stack(x, y));
        const double s = median_bandwidth(x, y, KernelFamily::Gaussian);
        CHECK(s == Approx(1.0 / (2 * w * w)).epsilon(1e-13));
        CHECK(median_bandwidth(y, x, KernelFamily::Gaussian) == Approx(s).epsilon(1e-15));

        std::vector<std::size_t> idx(n + m);
        std::iota(idx.begin(), idx.end(), 0);
        shuffle(idx.begin(), idx.end(), rng);
        const auto pooled = SampleMatrix::stack(x, y).take(idx);
        const auto a = pooled.slice(0, 1), b = pooled.slice(1, n + m - 1);
        CHECK(median_bandwidth(a, b, KernelFamily::Gaussian) == Approx(s).epsilon(1e-15));
    }
}

TEST_CASE("KernelConfig resolves the median heuristic", "[kernels]") {
    const auto x = SampleMatrix::column({0.0, 1.0});
    const auto y = SampleMatrix::column({3.0});
    KernelConfig auto_cfg;
    CHECK(auto_cfg.median_auto());
    CHECK(auto_cfg.resolve(x, y).scale == Approx(0.125));
    KernelConfig fixed{KernelFamily::Polynomial, 5, 2.0};
    const auto k = fixed.resolve(x, y);
    CHECK(k.scale == 2.0);
    CHECK(k.degree == 5);
    CHECK(fixed.bandwidth_rule() == "fixed");
}

TEST_CASE("SampleMatrix rejects non-finite and empty data", "[kernels]") {
    RowMatrix bad(2, 1);
    bad << 1.0, std::nan("");
    CHECK_THROWS_AS(SampleMatrix(bad), InvalidInput);
    CHECK_THROWS_AS(SampleMatrix(RowMatrix(0, 3)), InvalidInput);
}
