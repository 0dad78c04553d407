#include <xmmd/xmmd.hpp>

#include <catch_amalgamated.hpp>

using namespace xmmd;
using Catch::Approx;

TEST_CASE("shift vector", "[datagen]") {
    const auto a = shift_vector(5, 2, 0.7);
    CHECK(a(0) == 0.7);
    CHECK(a(1) == 0.7);
    CHECK(a.tail(3).isZero());
    CHECK_THROWS_AS(shift_vector(3, 4, 1.0), InvalidInput);
    CHECK_THROWS_AS(shift_vector(3, 0, 1.0), InvalidInput);
}

TEST_CASE("source validation", "[datagen]") {
    CHECK_THROWS_AS(SourceSpec::gaussian_shift(0, 1, 0.1), InvalidInput);
    CHECK_THROWS_AS(SourceSpec::gaussian_shift(3, 5, 0.1), InvalidInput);
    CHECK_THROWS_AS(SourceSpec::gaussian_shift(3, 1, -0.1), InvalidInput);
    CHECK_THROWS_AS(SourceSpec::dirichlet(3, 0.1, 0.0), InvalidInput);
    CHECK(SourceSpec::gaussian_shift(3, 1, 0.0).is_null());
    CHECK_FALSE(SourceSpec::dirichlet(3, 0.2).is_null());
}

TEST_CASE("sampling is deterministic per stream", "[datagen]") {
    const auto src = SourceSpec::gaussian_shift(4, 2, 0.5);
    CHECK(sample(src, Arm::P, 10, {3, 0}) == sample(src, Arm::P, 10, {3, 0}));
    CHECK_FALSE(sample(src, Arm::P, 10, {3, 0}) == sample(src, Arm::P, 10, {3, 1}));
    CHECK_FALSE(sample(src, Arm::P, 10, {3, 0}) == sample(src, Arm::P, 10, {4, 0}));
    // Q is P shifted on the first j coordinates for the same stream.
    const auto p = sample(src, Arm::P, 10, {3, 0});
    const auto q = sample(src, Arm::Q, 10, {3, 0});
    CHECK((q.data().leftCols(2).array() - p.data().leftCols(2).array() - 0.5).abs().maxCoeff() < 1e-12);
    CHECK(q.data().rightCols(2) == p.data().rightCols(2));
}

TEST_CASE("Gaussian shift moments", "[datagen][statistical]") {
    const auto src = SourceSpec::gaussian_shift(3, 1, 1.5);
    const auto q = sample(src, Arm::Q, 20000, {11, 0});
    const Vector mean = q.data().colwise().mean().transpose();
    CHECK(mean(0) == Approx(1.5).margin(0.04));
    CHECK(mean(1) == Approx(0.0).margin(0.04));
    const double var = (q.data().col(2).array() - mean(2)).square().mean();
    CHECK(var == Approx(1.0).margin(0.05));
}

TEST_CASE("Dirichlet rows live on the simplex with the right mean", "[datagen][statistical]") {
    const auto src = SourceSpec::dirichlet(4, 1.0, 0.5);
    for (auto arm : {Arm::P, Arm::Q}) {
        const auto s = sample(src, arm, 20000, {5, 0});
        CHECK((s.data().rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
        CHECK(s.data().minCoeff() >= 0.0);
        const Vector mean = s.data().colwise().mean().transpose();
        for (Eigen::Index c = 0; c < 4; ++c) CHECK(mean(c) == Approx(0.25).margin(0.01));
    }
    // Var of a symmetric Dir(a 1_d) coordinate: (d-1) / (d^2 (d a + 1)).
    const auto p = sample(src, Arm::P, 20000, {6, 0});
    const auto q = sample(src, Arm::Q, 20000, {6, 1});
    const auto var = [](const SampleMatrix& s) { return (s.data().col(0).array() - 0.25).square().mean(); };
    CHECK(var(p) == Approx(3.0 / (16 * 3.0)).epsilon(0.05));
    CHECK(var(q) == Approx(3.0 / (16 * 5.0)).epsilon(0.05));
}

TEST_CASE("rng primitives", "[datagen]") {
    Rng a(1, 2), b(1, 2), c(1, 3);
    CHECK(a() == b());
    CHECK(a() != c());
    Rng r(9, 0);
    std::vector<std::size_t> counts(7, 0);
    for (int i = 0; i < 70000; ++i) ++counts[r.below(7)];
    for (auto k : counts) CHECK(static_cast<double>(k) == Approx(10000).margin(400));
    for (int i = 0; i < 1000; ++i) {
        const double u = r.uniform_open();
        CHECK((u > 0.0 && u < 1.0));
    }
}
