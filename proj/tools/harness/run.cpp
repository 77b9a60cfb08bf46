#include "run.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>

#include "acceptance.hpp"
#include "hkloost/errors.hpp"
#include "hkloost/exact_formula.hpp"
#include "hkloost/result_cache.hpp"
#include "hkloost/test_function.hpp"

namespace hkloost::harness {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

// Writes text to cfg.output (creating parent directories) or to out.
void deliver(const ExperimentConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.output.empty()) {
        out << text;
        return;
    }
    const std::filesystem::path p(cfg.output);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file '" + cfg.output + "'");
    f << text;
    if (!f) throw std::runtime_error("write failed for output file '" + cfg.output + "'");
}

std::string record(const ExperimentConfig& cfg, nlohmann::json body) {
    body["config"] = to_json(cfg);
    return body.dump(2) + "\n";
}

struct CacheHandle {
    std::unique_ptr<ResultCache> cache;
    explicit CacheHandle(const ExperimentConfig& cfg) {
        if (auto path = effective_cache_path(cfg)) cache = std::make_unique<ResultCache>(*path);
    }
    SweepOptions options(const ExperimentConfig& cfg) const { return {cfg.threads, cache.get(), 512}; }
};

int run_sum(const ExperimentConfig& cfg, std::ostream& out) {
    const MultiplierSpec nu = multiplier_spec(cfg);
    const KloostermanValue v = kloosterman_sum({cfg.m, cfg.n, nu, cfg.c});
    deliver(cfg,
            record(cfg, {{"fingerprint", nu.fingerprint()},
                         {"m", cfg.m},
                         {"n", cfg.n},
                         {"c", cfg.c},
                         {"value", complex_json(v.value)},
                         {"term_count", v.term_count},
                         {"skipped_zero_character", v.skipped_zero_character},
                         {"max_phase_den", v.max_phase_den.get_str()}}),
            out);
    return kExitOk;
}

int run_partial(const ExperimentConfig& cfg, std::ostream& out) {
    const MultiplierSpec nu = multiplier_spec(cfg);
    CacheHandle cache(cfg);
    const auto series = partial_sums(nu, cfg.m, cfg.n, cfg.xmax, sampling_rule(cfg), cache.options(cfg));
    std::ostringstream csv;
    emit_csv(series, csv);
    deliver(cfg, csv.str(), out);
    if (!cfg.output.empty()) {
        // Provenance sidecar next to the CSV.
        std::ofstream side(cfg.output + ".json", std::ios::binary);
        side << record(cfg, {{"fingerprint", nu.fingerprint()}, {"rows", series.rows.size()}});
    }
    return kExitOk;
}

int run_window(const ExperimentConfig& cfg, std::ostream& out) {
    const MultiplierSpec nu = multiplier_spec(cfg);
    CacheHandle cache(cfg);
    const WindowResult w = windowed_average(nu, cfg.m, cfg.n, cfg.y, cfg.x, cache.options(cfg));
    deliver(cfg,
            record(cfg, {{"fingerprint", nu.fingerprint()},
                         {"sum_abs", w.sum_abs},
                         {"ratio", w.ratio},
                         {"count", w.count},
                         {"envelope_violations", w.envelope_violations}}),
            out);
    return kExitOk;
}

int run_tail(const ExperimentConfig& cfg, std::ostream& out) {
    const MultiplierSpec nu = multiplier_spec(cfg);
    CacheHandle cache(cfg);
    const TailResult t = bessel_tail(nu, cfg.m, cfg.n, cfg.alpha, parse_bessel_kind(cfg.bessel),
                                     parse_half_order(cfg.order), cfg.xmax, cache.options(cfg));
    deliver(cfg,
            record(cfg, {{"fingerprint", nu.fingerprint()},
                         {"value", complex_json(t.value)},
                         {"last_decade", complex_json(t.last_decade)},
                         {"first_c", t.first_c},
                         {"count", t.count}}),
            out);
    return kExitOk;
}

int run_exact(const ExperimentConfig& cfg, std::ostream& out) {
    const ExactFormulaResult r = mock_theta_coefficient(cfg.n, cfg.cutoff, cfg.threads);
    deliver(cfg,
            record(cfg, {{"n", r.n},
                         {"cutoff", r.cutoff},
                         {"value", r.value},
                         {"imag", r.imag},
                         {"nearest_int", r.nearest_int},
                         {"distance", r.distance},
                         {"last_decade_mass", r.last_decade_mass}}),
            out);
    return kExitOk;
}

int run_phi(const ExperimentConfig& cfg, std::ostream& out) {
    const double a = cfg.a > 0 ? cfg.a : 4.0 * std::numbers::pi;
    const double x = cfg.phi_x > 0 ? cfg.phi_x : 1e4 * a;
    const double T = cfg.phi_t > 0 ? cfg.phi_t : std::pow(x, 1.0 - cfg.delta);
    const TestFunction tf = build_phi(a, x, T, cfg.delta, parse_profile(cfg.profile));
    const TransformValue hat = phi_hat(tf, cfg.k, cfg.r);
    const TransformValue quarter = phi_hat_quarter(tf, cfg.k);
    const TransformValue tilde = phi_tilde(tf, cfg.r);
    deliver(cfg,
            record(cfg, {{"a", a},
                         {"x", x},
                         {"T", T},
                         {"t_prime", tf.t_prime()},
                         {"support", {tf.support_lo(), tf.support_hi()}},
                         {"phi_tilde", {{"r", cfg.r}, {"value", tilde.value.real()}, {"error", tilde.error}}},
                         {"phi_hat", {{"k", cfg.k}, {"r", cfg.r}, {"value", complex_json(hat.value)}, {"error", hat.error}}},
                         {"phi_hat_quarter", {{"k", cfg.k}, {"value", complex_json(quarter.value)}, {"error", quarter.error}}}}),
            out);
    return kExitOk;
}

int run_verify(const ExperimentConfig& cfg, std::ostream& out) {
    CacheHandle cache(cfg);
    AcceptanceOptions opts;
    opts.threads = cfg.threads;
    opts.cache = cache.cache.get();
    const auto results = run_acceptance(opts, &out);
    std::ostringstream table;
    print_table(results, table);
    if (!cfg.output.empty()) deliver(cfg, table.str(), out);
    for (const auto& r : results)
        if (!r.pass) return kExitFailure;
    return kExitOk;
}

void error_record(std::ostream& err, const char* kind, int code, const std::string& message,
                  const nlohmann::json& extra = nlohmann::json::object()) {
    nlohmann::json j = {{"error", kind}, {"exit_code", code}, {"message", message}};
    j.update(extra);
    err << j.dump() << "\n";
}

}  // namespace

void emit_csv(const PartialSumSeries& series, std::ostream& out) {
    out << "c,s_re,s_im,run_re,run_im\n";
    for (const auto& row : series.rows) {
        out << row.c << ',' << fmt17(row.s.real()) << ',' << fmt17(row.s.imag()) << ','
            << fmt17(row.running.real()) << ',' << fmt17(row.running.imag()) << '\n';
    }
}

int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        validate(cfg);
        if (cfg.command == "sum") return run_sum(cfg, out);
        if (cfg.command == "partial") return run_partial(cfg, out);
        if (cfg.command == "window") return run_window(cfg, out);
        if (cfg.command == "tail") return run_tail(cfg, out);
        if (cfg.command == "exact") return run_exact(cfg, out);
        if (cfg.command == "phi") return run_phi(cfg, out);
        return run_verify(cfg, out);
    } catch (const ConfigError& e) {
        error_record(err, "invalid_config", kExitInvalidConfig, e.what());
        return kExitInvalidConfig;
    } catch (const DomainError& e) {
        error_record(err, "invalid_config", kExitInvalidConfig, e.what());
        return kExitInvalidConfig;
    } catch (const RegimeError& e) {
        error_record(err, "numeric_regime", kExitRegime, e.what());
        return kExitRegime;
    } catch (const CacheCorruption& e) {
        error_record(err, "cache_corruption", kExitCacheCorruption, e.what(),
                     {{"path", e.path()}, {"line", e.line()}});
        return kExitCacheCorruption;
    } catch (const std::exception& e) {
        error_record(err, "failure", kExitFailure, e.what());
        return kExitFailure;
    }
}

}  // namespace hkloost::harness
