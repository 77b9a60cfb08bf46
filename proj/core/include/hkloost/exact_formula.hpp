#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hkloost/kloosterman.hpp"
#include "hkloost/multipliers.hpp"

namespace hkloost {

/// Truncation of the Rademacher-type series for the coefficients G(n) of the sixth-order mock
/// theta function gamma(q): the sum runs over 3 | c <= cutoff.
struct ExactFormulaResult {
    std::int64_t n = 0;
    std::int64_t cutoff = 0;
    double value = 0.0;       // real part of the truncated series
    double imag = 0.0;        // imaginary part (diagnostic; the limit is real)
    std::int64_t nearest_int = 0;
    double distance = 0.0;    // |value - nearest_int| <= 1/2
    double last_decade_mass = 0.0;  // |contribution of c in (cutoff/10, cutoff]|
};

/// (./3) times the conjugated eta multiplier on Gamma_0(3).
MultiplierSpec exact_formula_multiplier();

inline constexpr std::int64_t kDefaultCutoff = 10'000;

ExactFormulaResult mock_theta_coefficient(std::int64_t n, std::int64_t cutoff = kDefaultCutoff,
                                          unsigned threads = 1);

/// Results for every (n, cutoff) pair from one pass over c <= max(cutoffs); indexed [cutoff][n].
std::vector<std::vector<ExactFormulaResult>> mock_theta_coefficients(std::span<const std::int64_t> ns,
                                                                     std::span<const std::int64_t> cutoffs,
                                                                     unsigned threads = 1);

/// Real part of the same series restricted to 3 | c in (x_start, x_end]; 0 if x_start >= x_end.
double tail_R3(std::int64_t n, double x_start, double x_end, unsigned threads = 1);

/// True when the q-series reference was compiled in (HKLOOST_WITH_QSERIES_ORACLE).
bool qseries_oracle_available();

/// Coefficients G(0..n_max) of gamma(q) = sum_{n>=0} q^{n^2} (q;q)_n / (q^3;q^3)_n by exact
/// power-series arithmetic. Throws std::logic_error when the oracle is not compiled in.
std::vector<std::int64_t> qseries_oracle(std::int64_t n_max);

}  // namespace hkloost
