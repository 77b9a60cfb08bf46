// hkloost: Kloosterman sums with half-integral weight multipliers, the exact formula for the
// gamma(q) coefficients, test-function transforms, and the acceptance suite.

#include <functional>
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "run.hpp"

using hkloost::harness::ExperimentConfig;

namespace {

// Options are applied on top of the config file only when given on the command line.
class Overrides {
public:
    template <class T>
    CLI::Option* add(CLI::App& app, const std::string& flag, T ExperimentConfig::*field, const std::string& help) {
        auto holder = std::make_shared<T>();
        CLI::Option* opt = app.add_option(flag, *holder, help);
        entries_.push_back({opt, [holder, field](ExperimentConfig& c) { c.*field = *holder; }});
        return opt;
    }
    CLI::Option* flag(CLI::App& app, const std::string& name, bool ExperimentConfig::*field, bool value,
                      const std::string& help) {
        CLI::Option* opt = app.add_flag(name, help);
        entries_.push_back({opt, [field, value](ExperimentConfig& c) { c.*field = value; }});
        return opt;
    }
    void apply(ExperimentConfig& cfg) const {
        for (const auto& [opt, fn] : entries_)
            if (opt->count() > 0) fn(cfg);
    }

private:
    std::vector<std::pair<CLI::Option*, std::function<void(ExperimentConfig&)>>> entries_;
};

void multiplier_options(CLI::App& sub, Overrides& ov) {
    ov.add(sub, "--multiplier", &ExperimentConfig::multiplier, "eta | theta | trivial");
    ov.flag(sub, "--conjugate", &ExperimentConfig::conjugate, true, "use the conjugate multiplier");
    ov.flag(sub, "--no-conjugate", &ExperimentConfig::conjugate, false, "use the unconjugated multiplier");
    ov.add(sub, "--twist", &ExperimentConfig::twist, "twist by the character (./t); 1 = none");
    ov.add(sub, "--weight", &ExperimentConfig::weight, "weight as a rational, or 'auto'");
    ov.add(sub, "--level", &ExperimentConfig::level, "level N of Gamma_0(N)");
    ov.add(sub, "--m", &ExperimentConfig::m, "first Fourier index");
    ov.add(sub, "--n", &ExperimentConfig::n, "second Fourier index");
}

void common_options(CLI::App& sub, Overrides& ov) {
    ov.add(sub, "--output,-o", &ExperimentConfig::output, "artifact path (default: stdout)");
    ov.add(sub, "--cache", &ExperimentConfig::cache, "result cache file (default: $HKLOOST_CACHE_DIR)");
    ov.add(sub, "--threads,-j", &ExperimentConfig::threads, "worker threads");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kloosterman sums, exact formula and transform experiments"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags override it)");
    Overrides ov;

    auto* sum = app.add_subcommand("sum", "one Kloosterman sum S(m,n,c,nu)");
    multiplier_options(*sum, ov);
    ov.add(*sum, "--c", &ExperimentConfig::c, "modulus c (a multiple of the level)");
    common_options(*sum, ov);

    auto* partial = app.add_subcommand("partial", "running sums of S/c as CSV");
    multiplier_options(*partial, ov);
    ov.add(*partial, "--xmax", &ExperimentConfig::xmax, "largest c");
    auto* dyadic = partial->add_flag("--dyadic", "sample at c = level * 2^j");
    auto* all = partial->add_flag("--all", "one row per admissible c");
    auto* grid = partial->add_option("--grid", "sample at the largest admissible c <= k * step");
    common_options(*partial, ov);

    auto* window = app.add_subcommand("window", "sum of |S|/c over c in [y, x]");
    multiplier_options(*window, ov);
    ov.add(*window, "--y", &ExperimentConfig::y, "window start");
    ov.add(*window, "--x", &ExperimentConfig::x, "window end");
    common_options(*window, ov);

    auto* tail = app.add_subcommand("tail", "Bessel-weighted tail sum");
    multiplier_options(*tail, ov);
    ov.add(*tail, "--alpha", &ExperimentConfig::alpha, "tail starts at c > alpha sqrt|m~ n~|");
    ov.add(*tail, "--bessel", &ExperimentConfig::bessel, "I | J");
    ov.add(*tail, "--order", &ExperimentConfig::order, "1/2 | 3/2");
    ov.add(*tail, "--xmax", &ExperimentConfig::xmax, "largest c");
    common_options(*tail, ov);

    auto* exact = app.add_subcommand("exact", "truncated exact formula for G(n)");
    ov.add(*exact, "--n", &ExperimentConfig::n, "coefficient index n >= 1");
    ov.add(*exact, "--cutoff", &ExperimentConfig::cutoff, "truncation X");
    common_options(*exact, ov);

    auto* phi = app.add_subcommand("phi", "test-function transforms");
    ov.add(*phi, "--a", &ExperimentConfig::a, "a (default 4 pi)");
    ov.add(*phi, "--x", &ExperimentConfig::phi_x, "x (default 1e4 a)");
    ov.add(*phi, "--T", &ExperimentConfig::phi_t, "T (default x^(1-delta))");
    ov.add(*phi, "--delta", &ExperimentConfig::delta, "delta in (0, 1/2)");
    ov.add(*phi, "--profile", &ExperimentConfig::profile, "linear | smooth");
    ov.add(*phi, "--k", &ExperimentConfig::k, "weight 0.5 or 1.5");
    ov.add(*phi, "--r", &ExperimentConfig::r, "spectral parameter");
    common_options(*phi, ov);

    auto* verify = app.add_subcommand("verify", "run acceptance criteria 1-8");
    common_options(*verify, ov);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : hkloost::harness::kExitInvalidConfig;
    }

    ExperimentConfig cfg;
    try {
        if (!config_path.empty()) cfg = hkloost::harness::load_config_file(config_path);
    } catch (const hkloost::harness::ConfigError& e) {
        std::cerr << nlohmann::json{{"error", "invalid_config"}, {"exit_code", 2}, {"message", e.what()}}.dump() << "\n";
        return hkloost::harness::kExitInvalidConfig;
    }
    CLI::App* chosen = app.get_subcommands().front();
    cfg.command = chosen->get_name();
    ov.apply(cfg);
    if (chosen == partial) {
        if (dyadic->count() > 0) cfg.sampling = "dyadic";
        if (all->count() > 0) cfg.sampling = "all";
        if (grid->count() > 0) {
            cfg.sampling = "grid";
            cfg.grid_step = grid->as<std::int64_t>();
        }
    }
    return hkloost::harness::run(cfg, std::cout, std::cerr);
}
