#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace xmmd;
using Catch::Approx;

TEST_CASE("phi matrix of the MMD kernel matches direct sums", "[general][oracle]") {
    Rng rng(1, 0);
    const auto spec = KernelSpec::gaussian(0.4);
    const auto s = split_samples(oracle::random_sample(7, 2, rng), oracle::random_sample(6, 2, rng, 0.3),
                                 SplitPlan::balanced(7, 6));
    const auto phi = phi_matrix(mmd_kernel(spec), s.x1, s.x2, s.y1, s.y2);
    REQUIRE(phi.values.rows() == 3);
    REQUIRE(phi.values.cols() == 3);
    for (std::size_t i = 0; i < s.x1.n(); ++i)
        for (std::size_t j = 0; j < s.y1.n(); ++j) {
            double acc = 0.0;
            for (std::size_t i2 = 0; i2 < s.x2.n(); ++i2)
                for (std::size_t j2 = 0; j2 < s.y2.n(); ++j2)
                    acc += oracle::h(spec, s.x1, i, s.x2, i2, s.y1, j, s.y2, j2);
            CHECK(oracle::rel_close(phi.values(i, j), acc / (s.x2.n() * s.y2.n()), 1e-12, 1e-14));
        }
}

TEST_CASE("general cross statistic with the MMD kernel equals the fast path", "[general][oracle]") {
    Rng rng(2, 0);
    for (int trial = 0; trial < 40; ++trial) {
        const auto n = 4 + rng.below(6);
        const auto m = 4 + rng.below(6);
        const auto spec = KernelSpec::gaussian(0.3);
        const auto x = oracle::random_sample(n, 2, rng);
        const auto y = oracle::random_sample(m, 2, rng, 0.4);
        const auto plan = SplitPlan::balanced(n, m, static_cast<std::uint64_t>(trial));
        const auto g = general_cross_t(mmd_kernel(spec), x, y, plan);
        const auto f = cross_mmd(x, y, spec, plan);
        CHECK(oracle::rel_close(g.xmmd2, f.xmmd2, 1e-10, 1e-12));
        CHECK(oracle::rel_close(g.sigma, f.sigma, 1e-9, 1e-12));
        CHECK(oracle::rel_close(g.t, f.t, 1e-9, 1e-12));
    }
}

TEST_CASE("general cross statistic accepts a custom kernel", "[general]") {
    // Difference of means in the first coordinate: degenerate under the null.
    DegenerateKernel mean_diff{"mean", [](auto x1, auto x2, auto y1, auto y2) {
                                   return (x1[0] - y1[0]) * (x2[0] - y2[0]);
                               }};
    const auto x = SampleMatrix::column({1, 2, 3, 4, 5, 6});
    const auto y = SampleMatrix::column({0, 0, 1, 1, 0, 1});
    const auto plan = SplitPlan::balanced(6, 6);
    const auto r = general_cross_t(mean_diff, x, y, plan);
    // mean(x1) - mean(y1) = 2 - 1/3, mean(x2) - mean(y2) = 5 - 2/3
    CHECK(r.xmmd2 == Approx((2.0 - 1.0 / 3) * (5.0 - 2.0 / 3)));
    CHECK(std::isfinite(r.t));
    CHECK_THROWS_AS(general_cross_t(DegenerateKernel{"empty", {}}, x, y, plan), InvalidInput);
}
