#include "hkloost/exact_formula.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <gmpxx.h>

#include "hkloost/errors.hpp"
#include "hkloost/special_fn.hpp"
#include "hkloost/summation.hpp"

namespace hkloost {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::int64_t kLevel = 3;

// 2 pi e(-1/8) (24n - 1)^{-1/4}
std::complex<double> prefactor(std::int64_t n) {
    return 2.0 * kPi * std::polar(1.0, -kPi / 4.0) * std::pow(24.0 * static_cast<double>(n) - 1.0, -0.25);
}

// Bessel weight I_{1/2}(pi sqrt(24n - 1) / (6c)) / c.
double weight(std::int64_t n, std::int64_t c) {
    const double u = kPi * std::sqrt(24.0 * static_cast<double>(n) - 1.0) / (6.0 * static_cast<double>(c));
    return bessel_i(0.5, u) / static_cast<double>(c);
}

// Per-c contributions S(0, n_j, c) / c * I_{1/2}(...) for every c in cs, computed in parallel.
std::vector<std::vector<std::complex<double>>> contributions(std::span<const std::int64_t> ns,
                                                             const std::vector<std::int64_t>& cs, unsigned threads) {
    const MultiplierSpec nu = exact_formula_multiplier();
    std::vector<std::vector<std::complex<double>>> out(cs.size());
    auto work = [&](std::size_t i) {
        auto s = kloosterman_sums(nu, 0, ns, cs[i]);
        for (std::size_t j = 0; j < ns.size(); ++j) s[j] *= weight(ns[j], cs[i]);
        out[i] = std::move(s);
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cs.size())));
    if (threads == 1) {
        for (std::size_t i = 0; i < cs.size(); ++i) work(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t k; (k = next.fetch_add(1)) < cs.size();) work(cs.size() - 1 - k);
        });
    pool.clear();
    return out;
}

void require_n(std::int64_t n) {
    if (n < 1) throw DomainError("exact formula requires n >= 1");
}

}  // namespace

MultiplierSpec exact_formula_multiplier() { return MultiplierSpec::eta(kLevel).conjugate().twisted(3); }

std::vector<std::vector<ExactFormulaResult>> mock_theta_coefficients(std::span<const std::int64_t> ns,
                                                                     std::span<const std::int64_t> cutoffs,
                                                                     unsigned threads) {
    for (std::int64_t n : ns) require_n(n);
    for (std::int64_t x : cutoffs)
        if (x < kLevel) throw DomainError("exact formula cutoff must be >= 3");
    std::vector<std::vector<ExactFormulaResult>> results(cutoffs.size());
    if (cutoffs.empty()) return results;
    const std::int64_t x_max = *std::max_element(cutoffs.begin(), cutoffs.end());
    std::vector<std::int64_t> cs;
    for (std::int64_t c = kLevel; c <= x_max; c += kLevel) cs.push_back(c);
    const auto terms = contributions(ns, cs, threads);

    // Single ascending reduction; snapshot at every cutoff.
    for (std::size_t k = 0; k < cutoffs.size(); ++k) {
        const std::int64_t x = cutoffs[k];
        std::vector<CompensatedSum<std::complex<double>>> total(ns.size()), decade(ns.size());
        for (std::size_t i = 0; i < cs.size() && cs[i] <= x; ++i) {
            for (std::size_t j = 0; j < ns.size(); ++j) {
                total[j].add(terms[i][j]);
                if (10 * cs[i] > x) decade[j].add(terms[i][j]);
            }
        }
        for (std::size_t j = 0; j < ns.size(); ++j) {
            const std::complex<double> pre = prefactor(ns[j]);
            const std::complex<double> v = pre * total[j].value();
            ExactFormulaResult r;
            r.n = ns[j];
            r.cutoff = x;
            r.value = v.real();
            r.imag = v.imag();
            r.nearest_int = static_cast<std::int64_t>(std::llround(v.real()));
            r.distance = std::fabs(v.real() - static_cast<double>(r.nearest_int));
            r.last_decade_mass = std::abs(pre * decade[j].value());
            results[k].push_back(r);
        }
    }
    return results;
}

ExactFormulaResult mock_theta_coefficient(std::int64_t n, std::int64_t cutoff, unsigned threads) {
    const std::int64_t ns[] = {n};
    const std::int64_t xs[] = {cutoff};
    return mock_theta_coefficients(ns, xs, threads).front().front();
}

double tail_R3(std::int64_t n, double x_start, double x_end, unsigned threads) {
    require_n(n);
    if (!(x_start >= 0.0)) throw DomainError("tail_R3 requires x_start >= 0");
    if (x_start >= x_end) return 0.0;
    std::vector<std::int64_t> cs;
    const std::int64_t first = (static_cast<std::int64_t>(std::floor(x_start)) / kLevel + 1) * kLevel;
    for (std::int64_t c = first; static_cast<double>(c) <= x_end; c += kLevel) cs.push_back(c);
    const std::int64_t ns[] = {n};
    const auto terms = contributions(ns, cs, threads);
    CompensatedSum<std::complex<double>> acc;
    for (const auto& t : terms) acc.add(t[0]);
    return (prefactor(n) * acc.value()).real();
}

bool qseries_oracle_available() {
#ifdef HKLOOST_WITH_QSERIES_ORACLE
    return true;
#else
    return false;
#endif
}

std::vector<std::int64_t> qseries_oracle(std::int64_t n_max) {
#ifdef HKLOOST_WITH_QSERIES_ORACLE
    if (n_max < 0) throw DomainError("qseries_oracle requires n_max >= 0");
    const std::size_t len = static_cast<std::size_t>(n_max) + 1;
    std::vector<mpz_class> total(len, 0);
    // term_k = q^{k^2} (q;q)_k / (q^3;q^3)_k, truncated at degree n_max.
    std::vector<mpz_class> ratio(len, 0);  // (q;q)_k / (q^3;q^3)_k
    ratio[0] = 1;
    for (std::int64_t k = 0; k * k <= n_max; ++k) {
        if (k > 0) {
            for (std::size_t i = len; i-- > static_cast<std::size_t>(k);) ratio[i] -= ratio[i - k];  // * (1 - q^k)
            const std::size_t step = static_cast<std::size_t>(3 * k);
            for (std::size_t i = step; i < len; ++i) ratio[i] += ratio[i - step];  // / (1 - q^{3k})
        }
        const std::size_t shift = static_cast<std::size_t>(k * k);
        for (std::size_t i = shift; i < len; ++i) total[i] += ratio[i - shift];
    }
    std::vector<std::int64_t> out(len);
    for (std::size_t i = 0; i < len; ++i) {
        if (!total[i].fits_slong_p()) throw std::overflow_error("q-series coefficient exceeds 64 bits");
        out[i] = total[i].get_si();
    }
    return out;
#else
    (void)n_max;
    throw std::logic_error("q-series oracle not compiled in (HKLOOST_WITH_QSERIES_ORACLE=OFF)");
#endif
}

}  // namespace hkloost
