#pragma once

#include "xmmd/kernels.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace xmmd {

struct TestMeta {
    std::string test;  // "xmmd", "mmd-perm", "block", "linear"
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t d = 0;
    KernelSpec kernel;
    std::string bandwidth_rule = "fixed";
    std::uint64_t seed = 0;
    std::int64_t elapsed_ns = 0;
    std::optional<std::size_t> n1;  // split sizes (xmmd only)
    std::optional<std::size_t> m1;
    std::string note;

    static TestMeta of(std::string test, const SampleMatrix& x, const SampleMatrix& y, const KernelSpec& spec) {
        TestMeta meta;
        meta.test = std::move(test);
        meta.n = x.n();
        meta.m = y.n();
        meta.d = x.d();
        meta.kernel = spec;
        return meta;
    }
};

/// Outcome of one test. Exactly one of p_value / threshold is set and it
/// alone drives reject: p_value <= alpha, or statistic >= threshold.
struct TestResult {
    double statistic = 0.0;
    std::optional<double> p_value;
    std::optional<double> threshold;
    double alpha = 0.05;
    bool reject = false;
    TestMeta meta;

    static TestResult by_threshold(double statistic, double threshold, double alpha, TestMeta meta) {
        return {statistic, std::nullopt, threshold, alpha, statistic >= threshold, std::move(meta)};
    }
    static TestResult by_p_value(double statistic, double p_value, double alpha, TestMeta meta) {
        return {statistic, p_value, std::nullopt, alpha, p_value <= alpha, std::move(meta)};
    }
};

}  // namespace xmmd
