#include "acceptance.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "hkloost/exact_formula.hpp"
#include "hkloost/kloosterman.hpp"
#include "hkloost/multipliers.hpp"
#include "hkloost/result_cache.hpp"
#include "hkloost/special_fn.hpp"
#include "hkloost/test_function.hpp"

namespace hkloost::harness {

namespace {

constexpr double kPi = std::numbers::pi;

// Pinned tolerances and budgets.
constexpr std::int64_t kC1MaxC = 200;
constexpr double kC1Budget = 30.0;
constexpr int kC2Pairs = 1000;
constexpr double kC2Tol = 1e-12;
constexpr std::int64_t kC3MaxC = 500;
constexpr double kC3Tol = 1e-9;
constexpr std::int64_t kC4MaxC = 200;
constexpr double kC4Tol = 1e-10;
constexpr std::int64_t kC5NMax = 25;
constexpr std::int64_t kC5Cutoff = 10'000;
constexpr double kC5Distance = 1e-2;
constexpr double kC5Imag = 1e-6;
constexpr double kC5Budget = 600.0;
constexpr double kC6Tol = 0.05;
constexpr double kC6QuarterXa = 1e5;
constexpr double kC6TildeXa = 1e4;
constexpr double kC6Budget = 60.0;
constexpr double kC7SeriesTol = 1e-10;
constexpr double kC7RecurrenceTol = 1e-8;
constexpr double kC7ConjTol = 1e-12;
constexpr std::int64_t kC8XMax = 100'000;
constexpr std::int64_t kC8XMin = 1'000;
constexpr double kC8Exponent = 0.45;
constexpr double kC8Budget = 1200.0;

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

struct Outcome {
    bool pass;
    std::string detail;
};

// ---------------------------------------------------------------------------------------------

Outcome criterion1() {
    std::int64_t checked = 0, mismatches = 0;
    for (std::int64_t c = 1; c <= kC1MaxC; ++c) {
        const Integer cz(static_cast<long>(c));
        for (std::int64_t d = 0; d < c; ++d) {
            if (std::gcd(d, c) != 1) continue;
            const Integer dz(static_cast<long>(d));
            const Integer a = c == 1 ? Integer(1) : mod_inverse(dz, cz);
            const Integer b = (a * dz - 1) / cz;
            for (const GammaElement& g : {GammaElement(a, b, cz, dz), GammaElement(a + cz, b + dz, cz, dz)}) {
                ++checked;
                if (!(eval_eta_rademacher(g) == eval_eta_knopp(g))) ++mismatches;
            }
        }
    }
    return {mismatches == 0, std::to_string(checked) + " elements, " + std::to_string(mismatches) + " mismatches"};
}

GammaElement random_gamma0(std::mt19937_64& rng, std::int64_t level) {
    std::uniform_int_distribution<std::int64_t> kc(-30, 30), kd(-300, 300), kb(-50, 50);
    for (;;) {
        const std::int64_t c = level * kc(rng);
        const std::int64_t d = kd(rng);
        if (c == 0) {
            if (d != 1 && d != -1) continue;
            return GammaElement(Integer(static_cast<long>(d)), Integer(static_cast<long>(kb(rng))), 0,
                                Integer(static_cast<long>(d)));
        }
        if (std::gcd(c, d) != 1) continue;
        const Integer cz(static_cast<long>(c)), dz(static_cast<long>(d));
        const Integer mod = abs(cz);
        Integer a = mod == 1 ? Integer(0) : mod_inverse(dz, mod);
        a += mod * Integer(static_cast<long>(kb(rng)));
        // a d - b c = 1
        const Integer b = (a * dz - 1) / cz;
        return GammaElement(a, b, cz, dz);
    }
}

Outcome criterion2() {
    struct Case {
        const char* name;
        MultiplierSpec nu;
    };
    const Case cases[] = {
        {"nu_eta", MultiplierSpec::eta(1)},
        {"conj nu_eta", MultiplierSpec::eta(1).conjugate()},
        {"nu_theta", MultiplierSpec::theta(4)},
        {"(./3) conj nu_eta", MultiplierSpec::eta(3).conjugate().twisted(3)},
    };
    std::mt19937_64 rng(20240607);
    const std::complex<double> tau(0.31, 1.07);
    double worst = 0.0;
    std::ostringstream detail;
    for (const auto& cs : cases) {
        const double k = cs.nu.weight.to_double();
        double case_worst = 0.0;
        for (int i = 0; i < kC2Pairs; ++i) {
            const GammaElement g1 = random_gamma0(rng, cs.nu.level), g2 = random_gamma0(rng, cs.nu.level);
            const std::complex<double> lhs = eval(cs.nu, g1 * g2).value();
            const std::complex<double> rhs =
                cocycle_w(g1, g2, k, tau) * eval(cs.nu, g1).value() * eval(cs.nu, g2).value();
            case_worst = std::max(case_worst, std::abs(lhs - rhs));
        }
        worst = std::max(worst, case_worst);
        detail << cs.name << " " << fmt("%.1e", case_worst) << "; ";
    }
    detail << "max " << fmt("%.1e", worst);
    return {worst < kC2Tol, detail.str()};
}

Outcome criterion3() {
    const MultiplierSpec nu = MultiplierSpec::eta(3).conjugate().twisted(3);
    const MultiplierSpec nubar = nu.conjugate();
    const std::int64_t mn[] = {0, 1, 5};
    double worst = 0.0;
    std::int64_t checked = 0;
    for (std::int64_t c = 3; c <= kC3MaxC; c += 3) {
        for (std::int64_t m : mn) {
            for (std::int64_t n : mn) {
                const auto s = kloosterman_sum({m, n, nu, c}).value;
                const auto t = kloosterman_sum({1 - m, 1 - n, nubar, c}).value;
                worst = std::max(worst, std::abs(std::conj(s) - t) / (1.0 + std::abs(s)));
                ++checked;
            }
        }
    }
    return {worst < kC3Tol, std::to_string(checked) + " sums, max scaled residual " + fmt("%.2e", worst)};
}

Outcome criterion4() {
    const MultiplierSpec nu = MultiplierSpec::trivial(1);
    const std::pair<std::int64_t, std::int64_t> pairs[] = {{0, 0}, {1, 1}, {2, 5}, {3, -7}, {-4, 11}};
    double worst = 0.0;
    std::int64_t count_mismatch = 0, phi_mismatch = 0;
    for (std::int64_t c = 1; c <= kC4MaxC; ++c) {
        std::int64_t totient = 0;
        for (std::int64_t d = 0; d < c; ++d)
            if (std::gcd(d, c) == 1) ++totient;
        for (auto [m, n] : pairs) {
            // Two-loop brute force over a, d in [0, c) with a d = 1 mod c.
            std::complex<double> brute = 0.0;
            std::int64_t terms = 0;
            for (std::int64_t a = 0; a < c; ++a)
                for (std::int64_t d = 0; d < c; ++d)
                    if ((a * d - 1) % c == 0) {
                        ++terms;
                        const std::int64_t num = ((m * a + n * d) % c + c) % c;
                        brute += std::polar(1.0, 2.0 * kPi * static_cast<double>(num) / static_cast<double>(c));
                    }
            const auto fast = kloosterman_sum({m, n, nu, c});
            if (fast.term_count != terms) ++count_mismatch;
            worst = std::max(worst, std::abs(fast.value - brute));
            if (m == 0 && n == 0 && (std::abs(fast.value - static_cast<double>(totient)) > kC4Tol)) ++phi_mismatch;
        }
    }
    const bool ok = worst < kC4Tol && count_mismatch == 0 && phi_mismatch == 0;
    return {ok, "max |fast - brute| " + fmt("%.1e", worst) + ", term-count mismatches " +
                    std::to_string(count_mismatch) + ", S(0,0,c) != phi(c): " + std::to_string(phi_mismatch)};
}

Outcome criterion5(unsigned threads) {
    std::vector<std::int64_t> ns;
    for (std::int64_t n = 1; n <= kC5NMax; ++n) ns.push_back(n);
    const std::int64_t cutoffs[] = {kC5Cutoff, 2 * kC5Cutoff};
    const auto res = mock_theta_coefficients(ns, cutoffs, threads);
    double worst_dist = 0.0, worst_imag = 0.0;
    std::int64_t unstable = 0, oracle_mismatch = 0;
    std::string far;
    for (std::size_t j = 0; j < ns.size(); ++j) {
        const auto& r = res[0][j];
        worst_dist = std::max(worst_dist, r.distance);
        worst_imag = std::max(worst_imag, std::fabs(r.imag) / std::max(1.0, std::fabs(r.value)));
        if (r.nearest_int != res[1][j].nearest_int) ++unstable;
        if (r.distance >= kC5Distance) far += " n=" + std::to_string(r.n) + ":" + fmt("%.4f", r.distance);
    }
    std::string oracle = "q-series oracle off";
    if (qseries_oracle_available()) {
        const auto g = qseries_oracle(kC5NMax);
        for (std::size_t j = 0; j < ns.size(); ++j)
            if (res[0][j].nearest_int != g[static_cast<std::size_t>(ns[j])]) ++oracle_mismatch;
        oracle = "q-series mismatches " + std::to_string(oracle_mismatch);
    }
    const bool ok = worst_dist < kC5Distance && worst_imag < kC5Imag && unstable == 0 && oracle_mismatch == 0;
    std::string detail = "max distance " + fmt("%.4f", worst_dist) + ", max |Im|/|Re| " + fmt("%.1e", worst_imag) +
                         ", rounding changes at 2X " + std::to_string(unstable) + ", " + oracle;
    if (!far.empty()) detail += "; distance >= 1e-2 at" + far;
    return {ok, detail};
}

Outcome criterion6() {
    const double a = 4.0 * kPi;
    std::ostringstream detail;
    bool ok = true;
    {
        const double xa = kC6QuarterXa;
        const TestFunction tf = build_phi_default(a, xa * a, kDefaultDelta, Profile::Smooth);
        const auto q1 = phi_hat_quarter(tf, 0.5).value / (std::polar(1.0, kPi / 4) * std::sqrt(xa));
        const auto q3 = phi_hat_quarter(tf, 1.5).value / (std::polar(1.0, 3 * kPi / 4) / std::sqrt(xa));
        const double e1 = std::abs(q1 - phi_hat_quarter_limit(0.5)) / phi_hat_quarter_limit(0.5);
        const double e3 = std::abs(q3 - phi_hat_quarter_limit(1.5)) / phi_hat_quarter_limit(1.5);
        ok = ok && e1 < kC6Tol && e3 < kC6Tol;
        detail << "quarter k=1/2 ratio " << fmt("%.5f", q1.real()) << " (rel " << fmt("%.3f", e1) << "), k=3/2 ratio "
               << fmt("%.5f", q3.real()) << " (rel " << fmt("%.3f", e3) << ")";
    }
    {
        const double xa = kC6TildeXa;
        const TestFunction tf = build_phi_default(a, xa * a, kDefaultDelta, Profile::Smooth);
        for (double t : {0.05, 0.1}) {
            const double ratio = phi_tilde(tf, 1 - 2 * t).value.real() * std::pow(1.0 / xa, 2 * t);
            const double e = std::fabs(ratio - phi_tilde_limit(t)) / phi_tilde_limit(t);
            ok = ok && e < kC6Tol;
            detail << "; tilde t=" << t << " ratio " << fmt("%.5f", ratio) << " (rel " << fmt("%.3f", e) << ")";
        }
    }
    return {ok, detail.str()};
}

Outcome criterion7() {
    double series_err = 0.0;
    for (int i = 1; i <= 600; ++i) {
        const double u = 0.05 * i;
        const double closed = bessel_j(0.5, u), series = bessel_j_series(0.5, u);
        series_err = std::max(series_err, std::fabs(series - closed) / std::fabs(closed));
    }
    double landau = 0.0;  // max u^{1/3} |J_beta(u)|
    for (double beta = 0.5; beta <= 10.0 + 1e-12; beta += 0.25)
        for (int i = 1; i <= 1000; ++i) {
            const double u = 0.05 * i;
            landau = std::max(landau, std::cbrt(u) * std::fabs(bessel_j(beta, u)));
        }
    double recurrence = 0.0;
    constexpr double h = 1e-5;
    for (double beta = 1.0; beta <= 6.0 + 1e-12; beta += 0.25)
        for (double u = 0.5; u <= 20.0 + 1e-12; u += 0.25) {
            const double lhs = (bessel_j(beta - 1, u + h) - bessel_j(beta - 1, u - h)) / h;
            recurrence = std::max(recurrence, std::fabs(lhs - (bessel_j(beta - 2, u) - bessel_j(beta, u))));
        }
    double conj_err = 0.0;
    for (double r = -4.0; r <= 4.0 + 1e-12; r += 0.25)
        for (double u = 0.25; u <= 20.0 + 1e-12; u += 0.25)
            conj_err = std::max(conj_err, std::abs(std::conj(bessel_j_imag_order(r, u)) - bessel_j_imag_order(-r, u)));
    const bool ok = series_err < kC7SeriesTol && landau <= kLandauC0 && recurrence < kC7RecurrenceTol &&
                    conj_err < kC7ConjTol;
    return {ok, "J_1/2 series rel err " + fmt("%.1e", series_err) + ", max u^(1/3)|J| " + fmt("%.5f", landau) +
                    " (c0 0.7857), recurrence " + fmt("%.1e", recurrence) + ", conj " + fmt("%.1e", conj_err)};
}

Outcome criterion8(const AcceptanceOptions& opts) {
    const MultiplierSpec nu = MultiplierSpec::eta(3).conjugate().twisted(3);
    const auto series = partial_sums(nu, 0, 1, kC8XMax, Sampling::dyadic(), {opts.threads, opts.cache, 512});
    const GrowthFit fit = growth_fit(series, kC8XMin);
    return {fit.exponent < kC8Exponent, "growth exponent " + fmt("%.3f", fit.exponent) + " over " +
                                            std::to_string(fit.points) + " dyadic points (r2 " + fmt("%.2f", fit.r2) +
                                            "), bound 0.45"};
}

}  // namespace

std::string format_line(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << "  " << r.name << "  [" << r.detail << "]  "
       << fmt("%.1fs", r.seconds);
    return os.str();
}

void print_table(const std::vector<CriterionResult>& results, std::ostream& out) {
    int passed = 0;
    for (const auto& r : results) {
        out << format_line(r) << "\n";
        passed += r.pass ? 1 : 0;
    }
    out << passed << "/" << results.size() << " criteria passed\n";
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream* progress) {
    struct Spec {
        int id;
        const char* name;
        double budget;  // seconds, 0 = none
        std::function<Outcome()> body;
    };
    const std::vector<Spec> specs = {
        {1, "multiplier cross-formula equality", kC1Budget, criterion1},
        {2, "cocycle consistency", 0.0, criterion2},
        {3, "conjugation identity", 0.0, criterion3},
        {4, "classical reduction", 0.0, criterion4},
        {5, "exact formula integrality", kC5Budget, [&] { return criterion5(opts.threads); }},
        {6, "transform leading constants", kC6Budget, criterion6},
        {7, "Bessel layer", 0.0, criterion7},
        {8, "cancellation diagnostic", kC8Budget, [&] { return criterion8(opts); }},
    };
    std::vector<CriterionResult> out;
    for (const auto& s : specs) {
        if (!opts.only.empty() && !opts.only.contains(s.id)) continue;
        CriterionResult r{s.id, s.name, false, "", 0.0};
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const Outcome o = s.body();
            r.pass = o.pass;
            r.detail = o.detail;
        } catch (const std::exception& e) {
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (s.budget > 0 && r.seconds > s.budget) {
            r.pass = false;
            r.detail += "; over runtime budget " + fmt("%.0fs", s.budget);
        }
        if (progress) *progress << format_line(r) << std::endl;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace hkloost::harness
