#include "config.hpp"

#include <fstream>
#include <numbers>
#include <set>

#include "hkloost/errors.hpp"
#include "hkloost/result_cache.hpp"

namespace hkloost::harness {

namespace {

const std::set<std::string> kCommands = {"sum", "partial", "window", "tail", "exact", "phi", "verify"};

template <class T>
void read(const nlohmann::json& j, const char* key, T& field) {
    if (!j.contains(key)) return;
    try {
        field = j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config field '") + key + "': " + e.what());
    }
}

}  // namespace

nlohmann::json to_json(const ExperimentConfig& c) {
    return {
        {"command", c.command},   {"multiplier", c.multiplier}, {"twist", c.twist},
        {"conjugate", c.conjugate}, {"weight", c.weight},     {"level", c.level},
        {"m", c.m},               {"n", c.n},                   {"c", c.c},
        {"xmax", c.xmax},         {"sampling", c.sampling},     {"grid_step", c.grid_step},
        {"y", c.y},               {"x", c.x},                   {"alpha", c.alpha},
        {"bessel", c.bessel},     {"order", c.order},           {"cutoff", c.cutoff},
        {"a", c.a},               {"phi_x", c.phi_x},           {"phi_t", c.phi_t},
        {"delta", c.delta},       {"profile", c.profile},       {"k", c.k},
        {"r", c.r},               {"output", c.output},         {"cache", c.cache},
        {"threads", c.threads},
    };
}

ExperimentConfig from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config document must be a JSON object");
    ExperimentConfig c;
    const nlohmann::json known = to_json(c);
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!known.contains(key)) throw ConfigError("unknown config field '" + key + "'");
    }
    read(j, "command", c.command);
    read(j, "multiplier", c.multiplier);
    read(j, "twist", c.twist);
    read(j, "conjugate", c.conjugate);
    read(j, "weight", c.weight);
    read(j, "level", c.level);
    read(j, "m", c.m);
    read(j, "n", c.n);
    read(j, "c", c.c);
    read(j, "xmax", c.xmax);
    read(j, "sampling", c.sampling);
    read(j, "grid_step", c.grid_step);
    read(j, "y", c.y);
    read(j, "x", c.x);
    read(j, "alpha", c.alpha);
    read(j, "bessel", c.bessel);
    read(j, "order", c.order);
    read(j, "cutoff", c.cutoff);
    read(j, "a", c.a);
    read(j, "phi_x", c.phi_x);
    read(j, "phi_t", c.phi_t);
    read(j, "delta", c.delta);
    read(j, "profile", c.profile);
    read(j, "k", c.k);
    read(j, "r", c.r);
    read(j, "output", c.output);
    read(j, "cache", c.cache);
    read(j, "threads", c.threads);
    return c;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    try {
        return from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
}

MultiplierSpec multiplier_spec(const ExperimentConfig& cfg) {
    MultiplierSpec nu;
    try {
        switch (parse_multiplier_base(cfg.multiplier)) {
            case MultiplierBase::Eta: nu = MultiplierSpec::eta(cfg.level); break;
            case MultiplierBase::Theta: nu = MultiplierSpec::theta(cfg.level); break;
            case MultiplierBase::Trivial: nu = MultiplierSpec::trivial(cfg.level); break;
        }
        if (cfg.conjugate) nu = nu.conjugate();
        nu = nu.twisted(cfg.twist);
        if (cfg.weight != "auto") nu = nu.with_weight(Rational::parse(cfg.weight));
        nu.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return nu;
}

Sampling sampling_rule(const ExperimentConfig& cfg) {
    if (cfg.sampling == "all") return Sampling::all();
    if (cfg.sampling == "dyadic") return Sampling::dyadic();
    if (cfg.sampling == "grid") return Sampling::grid(cfg.grid_step);
    throw ConfigError("sampling must be all, dyadic or grid, got '" + cfg.sampling + "'");
}

std::optional<std::string> effective_cache_path(const ExperimentConfig& cfg) {
    if (!cfg.cache.empty()) return cfg.cache;
    if (auto p = ResultCache::default_path()) return p->string();
    return std::nullopt;
}

void validate(const ExperimentConfig& c) {
    if (!kCommands.contains(c.command)) throw ConfigError("unknown command '" + c.command + "'");
    if (c.threads < 1) throw ConfigError("threads must be >= 1");
    auto need = [](bool ok, const std::string& what) {
        if (!ok) throw ConfigError(what);
    };
    if (c.command == "verify") return;
    if (c.command == "sum" || c.command == "partial" || c.command == "window" || c.command == "tail") {
        const MultiplierSpec nu = multiplier_spec(c);
        if (c.command == "sum") {
            need(c.c >= 1, "c must be >= 1");
            need(c.c % nu.level == 0, "c must be a multiple of the level");
        }
        if (c.command == "partial") {
            need(c.xmax >= 1, "xmax must be >= 1");
            sampling_rule(c);
            if (c.sampling == "grid") need(c.grid_step >= 1, "grid_step must be >= 1");
        }
        if (c.command == "window") {
            need(c.y > 0 && c.x > c.y, "window needs 0 < y < x");
            need(c.x - c.y >= std::pow(c.x, 2.0 / 3.0), "window needs x - y >= x^(2/3)");
        }
        if (c.command == "tail") {
            need(c.alpha > 0, "alpha must be positive");
            need(c.xmax >= 1, "xmax must be >= 1");
            try {
                parse_bessel_kind(c.bessel);
                parse_half_order(c.order);
            } catch (const DomainError& e) {
                throw ConfigError(e.what());
            }
        }
    }
    if (c.command == "exact") {
        need(c.n >= 1, "exact formula needs n >= 1");
        need(c.cutoff >= 3, "cutoff must be >= 3");
    }
    if (c.command == "phi") {
        need(c.a >= 0 && c.phi_x >= 0 && c.phi_t >= 0, "a, phi_x, phi_t must be >= 0 (0 = default)");
        need(c.delta > 0 && c.delta < 0.5, "delta must lie in (0, 1/2)");
        need(c.k == 0.5 || c.k == 1.5, "k must be 1/2 or 3/2");
        try {
            parse_profile(c.profile);
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        }
    }
}

}  // namespace hkloost::harness
