#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "hkloost/exact_arith.hpp"
#include "hkloost/multipliers.hpp"

namespace hkloost {

class ResultCache;

struct KloostermanQuery {
    std::int64_t m = 0;
    std::int64_t n = 0;
    MultiplierSpec nu;
    std::int64_t c = 1;
};

struct KloostermanValue {
    std::complex<double> value;
    std::int64_t term_count = 0;
    std::int64_t skipped_zero_character = 0;
    Integer max_phase_den = 0;  // 0 when the evaluation path did not track it
};

/// One term of S(m,n,c,nu): gamma = (a b; c d) and the exact phase of conj(nu(gamma)) e((m~a + n~d)/c).
struct KloostermanTerm {
    std::int64_t a = 0;
    std::int64_t d = 0;
    RationalPhase phase;
};

/// S(m,n,c,nu) = sum over d in [0,c) coprime to c of conj(nu(gamma)) e((m~ a + n~ d)/c),
/// a = d^{-1} mod c. Every phase is an exact integer multiple of 1/(24c) before e() is applied.
KloostermanValue kloosterman_sum(const KloostermanQuery& q);

/// Same sum through the arbitrary-precision multiplier evaluator; slow, used as a reference.
KloostermanValue kloosterman_sum_exact(const KloostermanQuery& q);
std::vector<KloostermanTerm> kloosterman_terms(const KloostermanQuery& q);

/// S(m, n_j, c, nu) for several n at once, sharing the multiplier evaluation.
std::vector<std::complex<double>> kloosterman_sums(const MultiplierSpec& nu, std::int64_t m,
                                                   std::span<const std::int64_t> ns, std::int64_t c);

/// Largest c evaluated with per-c inverse/symbol tables; above it terms use extended gcd directly.
inline constexpr std::int64_t kTablePathMaxC = 1'000'000;

namespace detail {
enum class TermPath { Auto, Table, Direct };
KloostermanValue kloosterman_sum_with(const KloostermanQuery& q, TermPath path);
}  // namespace detail

// ---------------------------------------------------------------------------------------------
// Sweeps over c

struct Sampling {
    enum class Kind { All, Dyadic, Grid };
    Kind kind = Kind::All;
    std::int64_t step = 0;  // Grid only

    static Sampling all() { return {Kind::All, 0}; }
    static Sampling dyadic() { return {Kind::Dyadic, 0}; }
    static Sampling grid(std::int64_t step) { return {Kind::Grid, step}; }
};

struct SweepOptions {
    unsigned threads = 1;
    ResultCache* cache = nullptr;
    std::int64_t block = 512;  // c values per cache flush
};

/// S(m,n,c,nu) for each c in cs (each a multiple of the level), cache-aware and parallel.
/// Results do not depend on the thread count.
std::vector<KloostermanValue> sweep(const MultiplierSpec& nu, std::int64_t m, std::int64_t n,
                                    std::span<const std::int64_t> cs, const SweepOptions& opts = {});

struct PartialSumRow {
    std::int64_t c = 0;
    std::complex<double> s;
    std::complex<double> running;  // sum over admissible c' <= c of S(c')/c'
};

struct PartialSumSeries {
    MultiplierSpec nu;
    std::int64_t m = 0;
    std::int64_t n = 0;
    std::vector<PartialSumRow> rows;
};

/// Running sums of S(m,n,c,nu)/c over level | c <= x_max; rows emitted per the sampling rule:
/// All = every admissible c, Dyadic = c = level * 2^j, Grid(s) = largest admissible c <= k*s.
PartialSumSeries partial_sums(const MultiplierSpec& nu, std::int64_t m, std::int64_t n,
                              std::int64_t x_max, Sampling sampling, const SweepOptions& opts = {});

struct WindowResult {
    double sum_abs = 0.0;      // sum |S|/c over level | c in [y, x]
    double ratio = 0.0;        // sum_abs / (sqrt x - sqrt y)
    std::int64_t count = 0;
    std::int64_t envelope_violations = 0;  // c with |S| > term_count (must be 0)
};

WindowResult windowed_average(const MultiplierSpec& nu, std::int64_t m, std::int64_t n, double y,
                              double x, const SweepOptions& opts = {});

enum class BesselKind { I, J };
enum class HalfOrder { OneHalf, ThreeHalves };

HalfOrder parse_half_order(std::string_view text);
BesselKind parse_bessel_kind(std::string_view text);

struct TailResult {
    std::complex<double> value;
    std::complex<double> last_decade;  // contribution of c in (c_max/10, c_max]
    std::int64_t first_c = 0;          // 0 if no admissible c
    std::int64_t count = 0;
};

/// sum over level | c, alpha sqrt|m~ n~| < c <= c_max of S(m,n,c,nu)/c * B_beta(4 pi sqrt|m~ n~| / c).
TailResult bessel_tail(const MultiplierSpec& nu, std::int64_t m, std::int64_t n, double alpha,
                       BesselKind kind, HalfOrder beta, std::int64_t c_max, const SweepOptions& opts = {});

struct GrowthFit {
    double exponent = 0.0;
    double r2 = 0.0;
    std::size_t points = 0;
};

/// Least-squares slope of log|running| against log c over rows with c >= x_min.
GrowthFit growth_fit(const PartialSumSeries& series, std::int64_t x_min);

}  // namespace hkloost
