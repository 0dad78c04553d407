// Command-line front end: run a two-sample test on CSV data, or run one of
// the Monte Carlo experiments and write CSV + JSON artifacts.
//
// Exit codes: 0 ran (whatever the reject decision), 2 usage error, 3 data error.

#include "xmmd/io.hpp"
#include "xmmd/json.hpp"
#include "xmmd/xmmd.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

struct KernelFlags {
    std::string kernel = "gaussian";
    std::string scale = "median";
    std::optional<double> poly_divisor;

    void add_to(CLI::App& app) {
        app.add_option("--kernel", kernel, "gaussian | laplace | poly:<degree>");
        app.add_option("--scale", scale, "kernel scale, or 'median' for the median heuristic");
        app.add_option("--poly-divisor", poly_divisor,
                       "polynomial kernel as (1 + <x,y>/s)^r; sets scale = 1/s");
    }

    xmmd::KernelConfig config() const {
        xmmd::KernelConfig c;
        std::string fam = kernel;
        if (auto colon = kernel.find(':'); colon != std::string::npos) {
            fam = kernel.substr(0, colon);
            const std::string deg = kernel.substr(colon + 1);
            char* end = nullptr;
            const long v = std::strtol(deg.c_str(), &end, 10);
            xmmd::require(end != deg.c_str() && *end == '\0' && v >= 1, "--kernel: bad degree '" + deg + "'");
            c.degree = static_cast<int>(v);
        }
        c.family = xmmd::parse_family(fam);
        if (c.family == xmmd::KernelFamily::Polynomial && !c.degree) c.degree = 2;
        xmmd::require(c.family == xmmd::KernelFamily::Polynomial || !c.degree, "--kernel: degree only applies to poly");
        if (poly_divisor) {
            xmmd::require(c.family == xmmd::KernelFamily::Polynomial, "--poly-divisor needs --kernel poly");
            xmmd::require(*poly_divisor > 0.0, "--poly-divisor must be > 0");
            c.scale = 1.0 / *poly_divisor;
        } else if (scale != "median") {
            char* end = nullptr;
            const double v = std::strtod(scale.c_str(), &end);
            xmmd::require(end != scale.c_str() && *end == '\0' && v > 0.0 && std::isfinite(v),
                          "--scale: expected a positive number or 'median'");
            c.scale = v;
        }
        return c;
    }
};

struct TestFlags {
    std::string x_path, y_path;
    std::string test = "xmmd";
    std::size_t permutations = 200;
    std::optional<std::size_t> block;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    bool no_shuffle = false;
    bool header = false;
    std::string out;
    KernelFlags kernel;
};

struct ExperimentFlags {
    std::string spec_file;
    std::string source = "gmd";
    std::size_t d = 10;
    std::size_t j = 1;
    double eps = 0.0;
    double base = 1.0;
    std::vector<std::string> sizes;
    std::size_t trials = 100;
    std::vector<std::string> tests{"xmmd"};
    double alpha = 0.05;
    std::uint64_t seed = 0;
    std::size_t bootstrap = 200;
    std::string out = "results";
    KernelFlags kernel;
};

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f) throw xmmd::DataError(path + ": cannot write");
    f << text << '\n';
}

int run_test(const TestFlags& f) {
    const xmmd::KernelConfig kc = f.kernel.config();
    xmmd::require_level(f.alpha);
    const xmmd::TestId id = xmmd::TestId::parse(f.test);

    const auto x = xmmd::read_sample_csv(f.x_path, f.header);
    const auto y = xmmd::read_sample_csv(f.y_path, f.header);
    if (x.d() != y.d())
        throw xmmd::DataError("dimension mismatch: " + f.x_path + " has " + std::to_string(x.d()) + " columns, " +
                              f.y_path + " has " + std::to_string(y.d()));

    const xmmd::KernelSpec k = kc.resolve(x, y);
    xmmd::TestResult r;
    switch (id.kind) {
        case xmmd::TestId::Kind::XMmd: {
            std::optional<std::uint64_t> shuffle;
            if (!f.no_shuffle) shuffle = f.seed;
            r = xmmd::xmmd_test(x, y, k, f.alpha, xmmd::SplitPlan::balanced(x.n(), y.n(), shuffle));
            break;
        }
        case xmmd::TestId::Kind::MmdPerm:
            r = xmmd::mmd_permutation_test(x, y, k, f.alpha, {f.permutations, f.seed});
            break;
        case xmmd::TestId::Kind::Block: {
            const std::size_t b = f.block ? *f.block : (id.block ? *id.block : id.block_size(x.n()));
            r = xmmd::block_mmd_test(x, y, k, b, f.alpha, {f.permutations, f.seed});
            break;
        }
        case xmmd::TestId::Kind::Linear:
            r = xmmd::linear_mmd_test(x, y, k, f.alpha);
            break;
    }
    r.meta.kernel = k;
    r.meta.d = x.d();
    r.meta.seed = f.seed;
    r.meta.bandwidth_rule = kc.bandwidth_rule();
    emit(xmmd::to_json(r).dump(2), f.out);
    return 0;
}

xmmd::ExperimentSpec build_spec(xmmd::ExperimentKind kind, const ExperimentFlags& f) {
    if (!f.spec_file.empty()) {
        std::ifstream in(f.spec_file);
        if (!in) throw xmmd::DataError(f.spec_file + ": cannot open file");
        xmmd::json j;
        try {
            in >> j;
        } catch (const xmmd::json::exception& e) {
            throw xmmd::DataError(f.spec_file + ": " + e.what());
        }
        j["kind"] = std::string(xmmd::to_string(kind));
        return xmmd::experiment_from_json(j);
    }
    xmmd::ExperimentSpec s;
    s.kind = kind;
    if (f.source == "gmd")
        s.source = {xmmd::SourceFamily::GaussianShift, f.d, f.eps, f.j, 1.0};
    else if (f.source == "dirichlet")
        s.source = {xmmd::SourceFamily::Dirichlet, f.d, f.eps, 1, f.base};
    else
        throw xmmd::InvalidInput("--source: expected gmd or dirichlet");
    xmmd::require(!f.sizes.empty(), "--sizes: at least one n:m pair is required");
    for (const auto& p : f.sizes) {
        std::size_t n = 0, m = 0;
        char sep = 0;
        std::istringstream ss(p);
        if (!(ss >> n) || !(ss >> sep) || sep != ':' || !(ss >> m) || !ss.eof())
            throw xmmd::InvalidInput("--sizes: expected n:m, got '" + p + "'");
        s.sizes.emplace_back(n, m);
    }
    s.trials = f.trials;
    s.tests.clear();
    for (const auto& t : f.tests) s.tests.push_back(xmmd::TestId::parse(t));
    s.alpha = f.alpha;
    s.seed = f.seed;
    s.bootstrap = f.bootstrap;
    s.kernel = f.kernel.config();
    s.validate();
    return s;
}

std::string optional_str(const std::optional<double>& v) {
    if (!v) return "-";
    std::ostringstream os;
    os << *v;
    return os.str();
}

int run_experiment(xmmd::ExperimentKind kind, const ExperimentFlags& f) {
    const xmmd::ExperimentSpec spec = build_spec(kind, f);
    const xmmd::ResultTable table = xmmd::run_experiment(spec);

    const auto open = [](const std::string& path) {
        std::ofstream os(path);
        if (!os) throw xmmd::DataError(path + ": cannot write");
        return os;
    };
    {
        auto os = open(f.out + ".csv");
        xmmd::write_result_csv(os, table);
    }
    {
        auto os = open(f.out + ".json");
        os << xmmd::metadata_json(spec, table).dump(2) << '\n';
    }
    for (const auto& raw : table.raw) {
        std::string tag = raw.test;
        for (char& c : tag)
            if (c == '{' || c == '}') c = '_';
        auto os = open(f.out + ".raw." + tag + ".n" + std::to_string(raw.n) + ".m" + std::to_string(raw.m) + ".csv");
        xmmd::write_raw_csv(os, raw);
    }
    if (!table.roc.empty()) {
        auto os = open(f.out + ".roc.csv");
        xmmd::write_roc_csv(os, table.roc);
    }
    for (const auto& r : table.rows) {
        std::cout << r.experiment << ' ' << r.test << " n=" << r.n << " m=" << r.m << " d=" << r.d
                  << " reject=" << optional_str(r.reject_rate) << " ks=" << optional_str(r.ks_distance)
                  << " auc=" << optional_str(r.auc) << " predicted=" << optional_str(r.predicted_power)
                  << " time_ms=" << optional_str(r.time_median_ms) << '\n';
    }
    return 0;
}

void add_experiment_options(CLI::App& sub, ExperimentFlags& f) {
    sub.add_option("--spec", f.spec_file, "JSON experiment spec (overrides the flags below)");
    sub.add_option("--source", f.source, "gmd | dirichlet");
    sub.add_option("--d", f.d, "dimension");
    sub.add_option("--j", f.j, "number of shifted coordinates (gmd)");
    sub.add_option("--eps", f.eps, "perturbation size");
    sub.add_option("--base", f.base, "Dirichlet base parameter");
    sub.add_option("--sizes", f.sizes, "n:m pairs")->delimiter(',');
    sub.add_option("--trials", f.trials, "Monte Carlo trials per size");
    sub.add_option("--tests", f.tests, "xmmd, mmd-perm:B, block[:b], linear")->delimiter(',');
    sub.add_option("--alpha", f.alpha, "level");
    sub.add_option("--seed", f.seed, "master seed");
    sub.add_option("--bootstrap", f.bootstrap, "bootstrap resamples for power bands");
    sub.add_option("--out", f.out, "output prefix (writes <out>.csv, <out>.json, ...)");
    f.kernel.add_to(sub);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kernel two-sample tests: cross-MMD, permutation MMD, block and linear MMD"};
    app.require_subcommand(1);
    std::size_t threads = 0;
    app.add_option("--threads", threads, "worker threads (default: XMMD_THREADS or hardware concurrency)");

    TestFlags tf;
    auto* test = app.add_subcommand("test", "run a two-sample test on two CSV files");
    test->add_option("x_csv", tf.x_path, "first sample")->required();
    test->add_option("y_csv", tf.y_path, "second sample")->required();
    test->add_option("--test", tf.test, "xmmd | mmd-perm | block | linear");
    test->add_option("--B", tf.permutations, "permutations for mmd-perm");
    test->add_option("--block", tf.block, "block size for block MMD (default floor(sqrt(n)))");
    test->add_option("--alpha", tf.alpha, "level");
    test->add_option("--seed", tf.seed, "seed for permutations and split shuffling");
    test->add_flag("--no-shuffle", tf.no_shuffle, "split in file order instead of a seeded shuffle");
    test->add_flag("--header", tf.header, "first non-comment line is a header");
    test->add_option("--out", tf.out, "write JSON here instead of stdout");
    tf.kernel.add_to(*test);

    struct Sub {
        const char* name;
        xmmd::ExperimentKind kind;
        const char* help;
    };
    const Sub subs[] = {
        {"null-sim", xmmd::ExperimentKind::NullHist, "null distribution of the statistic"},
        {"type-i-error", xmmd::ExperimentKind::TypeIError, "rejection rate under the null"},
        {"power-curve", xmmd::ExperimentKind::PowerCurve, "power versus sample size"},
        {"roc", xmmd::ExperimentKind::Roc, "ROC curves and AUC"},
        {"bench", xmmd::ExperimentKind::Bench, "timing and power"},
    };
    std::vector<ExperimentFlags> eflags(std::size(subs));
    std::vector<CLI::App*> esubs;
    for (std::size_t i = 0; i < std::size(subs); ++i) {
        auto* s = app.add_subcommand(subs[i].name, subs[i].help);
        add_experiment_options(*s, eflags[i]);
        esubs.push_back(s);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (threads > 0) xmmd::set_thread_count(threads);
    try {
        if (test->parsed()) return run_test(tf);
        for (std::size_t i = 0; i < esubs.size(); ++i)
            if (esubs[i]->parsed()) return run_experiment(subs[i].kind, eflags[i]);
    } catch (const xmmd::InvalidInput& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const xmmd::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const xmmd::DegenerateData& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}
