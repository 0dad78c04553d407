#pragma once

// JSON encoding of test results and experiment specs (nlohmann/json).
// Non-finite statistics are written as the strings "inf" / "-inf".

#include "xmmd/harness.hpp"
#include "xmmd/result.hpp"

#include <json.hpp>

#include <cmath>
#include <string>

namespace xmmd {

using nlohmann::json;

inline json number_or_inf(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

inline json kernel_json(const KernelSpec& k, const std::string& rule) {
    json j{{"family", std::string(to_string(k.family))}, {"scale", k.scale}, {"bandwidth_rule", rule}};
    if (k.degree) j["degree"] = *k.degree;
    return j;
}

inline json to_json(const TestResult& r) {
    json j{{"test", r.meta.test},
           {"statistic", number_or_inf(r.statistic)},
           {"reject", r.reject},
           {"n", r.meta.n},
           {"m", r.meta.m},
           {"d", r.meta.d},
           {"kernel", kernel_json(r.meta.kernel, r.meta.bandwidth_rule)},
           {"alpha", r.alpha},
           {"seed", r.meta.seed},
           {"elapsed_ms", static_cast<double>(r.meta.elapsed_ns) * 1e-6}};
    if (r.threshold) j["threshold"] = *r.threshold;
    if (r.p_value) j["p_value"] = *r.p_value;
    if (r.meta.n1 && r.meta.m1) j["split"] = {{"n1", *r.meta.n1}, {"m1", *r.meta.m1}};
    if (!r.meta.note.empty()) j["note"] = r.meta.note;
    return j;
}

inline ExperimentKind parse_kind(const std::string& s) {
    for (auto k : {ExperimentKind::NullHist, ExperimentKind::TypeIError, ExperimentKind::PowerCurve,
                   ExperimentKind::Roc, ExperimentKind::Bench})
        if (s == to_string(k)) return k;
    throw InvalidInput("unknown experiment kind '" + s + "'");
}

inline KernelFamily parse_family(const std::string& s) {
    if (s == "gaussian") return KernelFamily::Gaussian;
    if (s == "laplace") return KernelFamily::Laplace;
    if (s == "poly" || s == "polynomial") return KernelFamily::Polynomial;
    throw InvalidInput("unknown kernel family '" + s + "'");
}

inline json to_json(const ExperimentSpec& s) {
    json tests = json::array();
    for (const auto& t : s.tests) tests.push_back(t.label());
    json sizes = json::array();
    for (auto [n, m] : s.sizes) sizes.push_back({n, m});
    json kernel{{"family", std::string(to_string(s.kernel.family))}};
    if (s.kernel.degree) kernel["degree"] = *s.kernel.degree;
    if (s.kernel.scale)
        kernel["scale"] = *s.kernel.scale;
    else
        kernel["scale"] = "median";
    json source{{"family", std::string(to_string(s.source.family))}, {"d", s.source.d}, {"eps", s.source.eps}};
    if (s.source.family == SourceFamily::GaussianShift)
        source["j"] = s.source.j;
    else
        source["base"] = s.source.base_alpha;
    return {{"kind", std::string(to_string(s.kind))},
            {"source", source},
            {"sizes", sizes},
            {"trials", s.trials},
            {"tests", tests},
            {"alpha", s.alpha},
            {"seed", s.seed},
            {"kernel", kernel},
            {"bootstrap", s.bootstrap}};
}

inline ExperimentSpec experiment_from_json(const json& j) {
    ExperimentSpec s;
    try {
        s.kind = parse_kind(j.at("kind").get<std::string>());
        const auto& src = j.at("source");
        const auto fam = src.at("family").get<std::string>();
        if (fam == "gmd")
            s.source = {SourceFamily::GaussianShift, src.at("d").get<std::size_t>(), src.at("eps").get<double>(),
                        src.value("j", std::size_t{1}), 1.0};
        else if (fam == "dirichlet")
            s.source = {SourceFamily::Dirichlet, src.at("d").get<std::size_t>(), src.at("eps").get<double>(), 1,
                        src.value("base", 1.0)};
        else
            throw InvalidInput("source.family: unknown source '" + fam + "'");
        s.sizes.clear();
        for (const auto& p : j.at("sizes")) s.sizes.emplace_back(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
        s.trials = j.at("trials").get<std::size_t>();
        s.tests.clear();
        for (const auto& t : j.at("tests")) s.tests.push_back(TestId::parse(t.get<std::string>()));
        s.alpha = j.value("alpha", 0.05);
        s.seed = j.value("seed", std::uint64_t{0});
        s.bootstrap = j.value("bootstrap", std::size_t{200});
        if (j.contains("kernel")) {
            const auto& k = j.at("kernel");
            s.kernel.family = parse_family(k.value("family", std::string("gaussian")));
            if (k.contains("degree")) s.kernel.degree = k.at("degree").get<int>();
            if (s.kernel.family == KernelFamily::Polynomial && !s.kernel.degree) s.kernel.degree = 2;
            if (k.contains("scale") && k.at("scale").is_number()) s.kernel.scale = k.at("scale").get<double>();
        }
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("experiment spec: ") + e.what());
    }
    s.validate();
    return s;
}

inline json metadata_json(const ExperimentSpec& spec, const ResultTable& table) {
    return {{"spec", to_json(spec)},
            {"metadata",
             {{"seed", table.seed},
              {"rng_algorithm", table.rng_algorithm},
              {"version", table.version},
              {"rows", table.rows.size()}}}};
}

}  // namespace xmmd
