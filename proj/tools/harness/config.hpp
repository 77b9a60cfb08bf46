#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "hkloost/kloosterman.hpp"
#include "hkloost/multipliers.hpp"
#include "hkloost/test_function.hpp"

namespace hkloost::harness {

// Bad user input at the CLI/config level (maps to exit code 2).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
    std::string command = "verify";  // sum | partial | window | tail | exact | phi | verify

    // Multiplier: default is the twisted conjugate eta multiplier on Gamma_0(3).
    std::string multiplier = "eta";
    std::int64_t twist = 3;
    bool conjugate = true;
    std::string weight = "auto";  // "auto" = base weight (sign follows conjugation)
    std::int64_t level = 3;

    std::int64_t m = 0;
    std::int64_t n = 1;
    std::int64_t c = 3;  // sum

    std::int64_t xmax = 10000;        // partial, tail
    std::string sampling = "dyadic";  // all | dyadic | grid
    std::int64_t grid_step = 1000;

    double y = 1000.0;  // window [y, x]
    double x = 2000.0;

    double alpha = 1.0;        // tail threshold
    std::string bessel = "I";  // tail kernel kind
    std::string order = "1/2";

    std::int64_t cutoff = 10000;  // exact

    double a = 0.0;        // phi: 0 means 4*pi
    double phi_x = 0.0;    // phi: 0 means 1e4 * a
    double phi_t = 0.0;    // phi: 0 means x^{1-delta}
    double delta = 1.0 / 3.0;
    std::string profile = "smooth";
    double k = 0.5;
    double r = 1.0;

    std::string output;  // empty: stdout
    std::string cache;   // empty: $HKLOOST_CACHE_DIR/kloosterman.cache if set, else no cache
    unsigned threads = 1;

    bool operator==(const ExperimentConfig&) const = default;
};

nlohmann::json to_json(const ExperimentConfig& cfg);
/// Missing keys keep their defaults; unknown keys or wrong types raise ConfigError.
ExperimentConfig from_json(const nlohmann::json& j);
ExperimentConfig load_config_file(const std::string& path);

/// Checks every field against the preconditions of the command it drives.
void validate(const ExperimentConfig& cfg);

MultiplierSpec multiplier_spec(const ExperimentConfig& cfg);
Sampling sampling_rule(const ExperimentConfig& cfg);
std::optional<std::string> effective_cache_path(const ExperimentConfig& cfg);

}  // namespace hkloost::harness
