#pragma once

// Independent reference implementations used only by the tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <numbers>
#include <vector>

#include <gmp.h>
#include <gmpxx.h>

namespace oracle {

inline int kronecker_gmp(long a, long b) { return mpz_si_kronecker(a, mpz_class(b).get_mpz_t()); }

// Legendre symbol by Euler's criterion, p an odd prime.
inline int legendre_euler(std::int64_t a, std::int64_t p) {
    std::int64_t base = ((a % p) + p) % p, e = (p - 1) / 2, r = 1;
    while (e > 0) {
        if (e & 1) r = static_cast<std::int64_t>(static_cast<__int128>(r) * base % p);
        base = static_cast<std::int64_t>(static_cast<__int128>(base) * base % p);
        e >>= 1;
    }
    return r == 0 ? 0 : (r == 1 ? 1 : -1);
}

// Classical Dedekind sum s(d, c) = sum_{r=1}^{c-1} ((r/c)) ((dr/c)) as an exact fraction.
inline mpq_class dedekind_sawtooth(std::int64_t d, std::int64_t c) {
    auto saw = [](const mpq_class& x) -> mpq_class {
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
        mpq_class frac = x - mpq_class(fl);
        if (frac == 0) return mpq_class(0);
        return frac - mpq_class(1, 2);
    };
    mpq_class s = 0;
    for (std::int64_t r = 1; r < c; ++r) {
        mpq_class x(r, c), y(d * r, c);
        x.canonicalize();
        y.canonicalize();
        s += saw(x) * saw(y);
    }
    s.canonicalize();
    return s;
}

// Classical Kloosterman sum by a double loop over a, d.
inline std::complex<double> kloosterman_brute(std::int64_t m, std::int64_t n, std::int64_t c) {
    std::complex<long double> s = 0;
    for (std::int64_t a = 0; a < c; ++a)
        for (std::int64_t d = 0; d < c; ++d)
            if (((a * d - 1) % c + c) % c == 0) {
                const std::int64_t num = ((m * a + n * d) % c + c) % c;
                const long double t = 2.0L * std::numbers::pi_v<long double> * num / c;
                s += std::complex<long double>(std::cos(t), std::sin(t));
            }
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

inline std::int64_t euler_phi(std::int64_t c) {
    std::int64_t k = 0;
    for (std::int64_t d = 0; d < c; ++d)
        if (std::gcd(d, c) == 1) ++k;
    return k;
}

// J_nu by its power series in long double (valid for moderate u, nu > -1).
inline long double bessel_series(long double nu, long double u) {
    long double term = std::pow(u / 2, nu) / std::tgamma(nu + 1), sum = term;
    for (int j = 1; j < 300; ++j) {
        term *= -(u * u / 4) / (j * (nu + j));
        sum += term;
        if (std::fabs(term) < 1e-30L) break;
    }
    return sum;
}

// Composite Simpson rule.
template <class F>
double simpson(const F& f, double a, double b, int n = 20000) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Coefficients of gamma(q) = sum q^{n^2} (q;q)_n / (q^3;q^3)_n by naive long-integer series
// multiplication and inversion (independent of the library's implementation).
inline std::vector<long long> gamma_series(int n_max) {
    const int len = n_max + 1;
    auto mul = [len](const std::vector<long long>& x, const std::vector<long long>& y) {
        std::vector<long long> z(len, 0);
        for (int i = 0; i < len; ++i)
            for (int j = 0; i + j < len; ++j) z[i + j] += x[i] * y[j];
        return z;
    };
    std::vector<long long> total(len, 0);
    for (int n = 0; n * n <= n_max; ++n) {
        std::vector<long long> num(len, 0), den(len, 0);
        num[0] = den[0] = 1;
        for (int k = 1; k <= n; ++k) {
            std::vector<long long> f(len, 0), g(len, 0);
            f[0] = g[0] = 1;
            if (k < len) f[k] = -1;
            if (3 * k < len) g[3 * k] = -1;
            num = mul(num, f);
            den = mul(den, g);
        }
        // 1 / den by recursion on coefficients (den[0] = 1).
        std::vector<long long> inv(len, 0);
        inv[0] = 1;
        for (int i = 1; i < len; ++i) {
            long long s = 0;
            for (int j = 1; j <= i; ++j) s += den[j] * inv[i - j];
            inv[i] = -s;
        }
        const auto t = mul(num, inv);
        for (int i = n * n; i < len; ++i) total[i] += t[i - n * n];
    }
    return total;
}

}  // namespace oracle
