#include <xmmd/xmmd.hpp>

#include <catch_amalgamated.hpp>

#include <limits>

using namespace xmmd;
using Catch::Approx;

TEST_CASE("normal quantile and CDF reference values", "[calibration]") {
    CHECK(std::abs(normal_quantile(0.95) - 1.6448536269514722) <= 1e-12);
    CHECK(std::abs(normal_quantile(0.05) + 1.6448536269514722) <= 1e-12);
    CHECK(normal_quantile(0.5) == Approx(0.0).margin(1e-15));
    CHECK(std::abs(normal_cdf(1.6448536) - 0.94999999722) <= 1e-10);
    CHECK(normal_cdf(0.0) == 0.5);
    CHECK(normal_cdf(std::numeric_limits<double>::infinity()) == 1.0);
    CHECK(normal_cdf(-std::numeric_limits<double>::infinity()) == 0.0);
    CHECK_THROWS_AS(normal_quantile(0.0), InvalidInput);
    CHECK_THROWS_AS(normal_quantile(1.0), InvalidInput);
}

TEST_CASE("normal quantile inverts the CDF", "[calibration][property]") {
    for (double p = 1e-4; p < 1.0 - 1e-4; p += 1e-3) CHECK(std::abs(normal_cdf(normal_quantile(p)) - p) <= 1e-7);
    for (double p : {1e-12, 1e-8, 1e-6, 0.02425, 0.97575, 1 - 1e-6})
        CHECK(normal_cdf(normal_quantile(p)) == Approx(p).epsilon(1e-9));
}

TEST_CASE("predicted permutation power", "[calibration]") {
    CHECK(std::abs(predict_perm_power(0.5, 0.05) - 0.7521656997816355) <= 1e-9);
    CHECK(predict_perm_power(0.05, 0.05) == Approx(0.05).epsilon(1e-9));
    double last = 0.0;
    for (double rho = 0.01; rho < 1.0; rho += 0.01) {
        const double p = predict_perm_power(rho, 0.05);
        CHECK(p > last);
        if (rho > 0.05 + 1e-9) CHECK(p >= rho);
        last = p;
    }
    CHECK_THROWS_AS(predict_perm_power(0.0, 0.05), InvalidInput);
    CHECK_THROWS_AS(predict_perm_power(1.0, 0.05), InvalidInput);
    CHECK_THROWS_AS(predict_perm_power(0.5, 0.0), InvalidInput);
}

TEST_CASE("empirical sample bookkeeping", "[calibration]") {
    const double inf = std::numeric_limits<double>::infinity();
    EmpiricalSample s({0.3, inf, -0.1, -inf, inf, 2.0});
    CHECK(s.count() == 3);
    CHECK(s.positive_infinities() == 2);
    CHECK(s.negative_infinities() == 1);
    CHECK(s.degenerate_count() == 3);
    CHECK(s.values() == std::vector<double>{-0.1, 0.3, 2.0});
    CHECK_THROWS_AS(EmpiricalSample({1.0, std::nan("")}), InvalidInput);
}

TEST_CASE("KS distance", "[calibration]") {
    CHECK(ks_distance(EmpiricalSample({0.0})) == Approx(0.5));
    CHECK(ks_distance(EmpiricalSample({-1e6, 1e6})) == Approx(0.5));
    std::vector<double> grid;
    for (int i = 0; i < 1000; ++i) grid.push_back(normal_quantile((i + 0.5) / 1000));
    CHECK(ks_distance(EmpiricalSample(grid)) == Approx(0.0005).margin(1e-9));
    CHECK_THROWS_AS(ks_distance(EmpiricalSample({})), InvalidInput);
}
