#include "hkloost/special_fn.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "hkloost/errors.hpp"

namespace hkloost {

namespace {

using quad = __float128;
constexpr double kPi = std::numbers::pi;
constexpr int kMaxSeriesTerms = 200;

quad qabs(quad x) { return x < 0 ? -x : x; }

struct QComplex {
    quad re = 0, im = 0;
    QComplex operator*(const QComplex& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    QComplex operator/(const QComplex& o) const {
        const quad den = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / den, (im * o.re - re * o.im) / den};
    }
    QComplex& operator+=(const QComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    quad norm1() const { return qabs(re) + qabs(im); }
};

bool is_negative_integer(double order) { return order < 0 && std::floor(order) == order; }

void require_positive(double u, const char* who) {
    if (!(u > 0.0) || !std::isfinite(u)) throw DomainError(std::string(who) + ": argument must be positive and finite");
}

// Sum_{j>=0} (-1)^j (u^2/4)^j / (j! (nu+1)_j) in quad precision.
quad real_order_sum(double order, double u) {
    const quad z = static_cast<quad>(u) * static_cast<quad>(u) / 4;
    const quad nu1 = static_cast<quad>(order) + 1;
    quad term = 1, sum = 1, peak = 1;
    for (int j = 1; j <= kMaxSeriesTerms; ++j) {
        term *= -z / (static_cast<quad>(j) * (nu1 + (j - 1)));
        sum += term;
        if (qabs(term) > peak) peak = qabs(term);
        if (static_cast<double>(j) > u && qabs(term) < 1e-33Q * peak) return sum;
    }
    throw RegimeError("Bessel J series did not converge within " + std::to_string(kMaxSeriesTerms) + " terms");
}

const std::array<double, 9> kLanczos = {
    0.99999999999980993, 676.5203681218851,    -1259.1392167224028,
    771.32342877765313,  -176.61502916214059,  12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

double bessel_j_series(double order, double u) {
    require_positive(u, "bessel_j_series");
    if (u > kRealOrderMaxArgument)
        throw RegimeError("Bessel J series regime exceeded: u = " + std::to_string(u) + " > " +
                          std::to_string(kRealOrderMaxArgument));
    if (is_negative_integer(order)) throw DomainError("bessel_j_series: negative integer order has no direct series");
    // (u/2)^nu / Gamma(nu+1); for negative non-integer nu Gamma may be negative.
    const double prefactor = std::pow(u / 2.0, order) / std::tgamma(order + 1.0);
    return prefactor * static_cast<double>(real_order_sum(order, u));
}

double bessel_j(double order, double u) {
    require_positive(u, "bessel_j");
    const double s = std::sqrt(2.0 / (kPi * u));
    if (order == 0.5) return s * std::sin(u);
    if (order == -0.5) return s * std::cos(u);
    if (order == 1.5 && u >= 0.5) return s * (std::sin(u) / u - std::cos(u));
    if (is_negative_integer(order)) {
        const double n = -order;
        const double v = bessel_j_series(n, u);
        return std::fmod(n, 2.0) == 0.0 ? v : -v;
    }
    return bessel_j_series(order, u);
}

double bessel_i(double order, double u) {
    require_positive(u, "bessel_i");
    if (order != 0.5 && order != 1.5) throw DomainError("bessel_i: unsupported order " + std::to_string(order));
    if (u < 0.5) {
        // Series (all terms positive): (u/2)^nu / Gamma(nu+1) * sum (u^2/4)^j / (j! (nu+1)_j).
        const double z = u * u / 4.0;
        double term = 1.0, sum = 1.0;
        for (int j = 1; j < 40; ++j) {
            term *= z / (j * (order + j));
            sum += term;
        }
        return std::pow(u / 2.0, order) / std::tgamma(order + 1.0) * sum;
    }
    const double s = std::sqrt(2.0 / (kPi * u));
    if (order == 0.5) return s * std::sinh(u);
    return s * (std::cosh(u) - std::sinh(u) / u);
}

std::complex<double> gamma_complex(std::complex<double> z) {
    if (z.real() < 0.5) {
        // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
        return kPi / (std::sin(kPi * z) * gamma_complex(1.0 - z));
    }
    z -= 1.0;
    std::complex<double> x = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const std::complex<double> t = z + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

std::complex<double> bessel_j_imag_order(double r, double u) {
    require_positive(u, "bessel_j_imag_order");
    if (std::fabs(r) > kImagOrderMaxR || u > kImagOrderMaxArgument)
        throw RegimeError("imaginary-order Bessel regime exceeded (need |r| <= 4, u <= 20)");
    if (r == 0.0) return bessel_j_series(0.0, u);
    const double nu = 2.0 * r;  // order is i*nu
    // Prefactor (u/2)^{i nu} / Gamma(1 + i nu).
    const std::complex<double> pre =
        std::polar(1.0, nu * std::log(u / 2.0)) / gamma_complex({1.0, nu});
    const quad z = static_cast<quad>(u) * static_cast<quad>(u) / 4;
    QComplex term{1, 0}, sum{1, 0};
    quad peak = 1;
    for (int j = 1;; ++j) {
        if (j > kMaxSeriesTerms) throw RegimeError("imaginary-order Bessel series did not converge");
        // term *= -z / (j (j + i nu))
        term = term * QComplex{-z / j, 0} / QComplex{static_cast<quad>(j), static_cast<quad>(nu)};
        sum += term;
        if (term.norm1() > peak) peak = term.norm1();
        if (static_cast<double>(j) > u && term.norm1() < 1e-33Q * peak) break;
    }
    return pre * std::complex<double>(static_cast<double>(sum.re), static_cast<double>(sum.im));
}

double bessel_f_imag(double r, double u) {
    return bessel_j_imag_order(r, u).real() / std::cosh(kPi * r);
}

double bessel_g_imag(double r, double u) {
    if (r == 0.0) throw DomainError("G_{2ir} is undefined at r = 0");
    return bessel_j_imag_order(r, u).imag() / std::sinh(kPi * r);
}

std::complex<double> xi_k(double k, double r) {
    using namespace std::complex_literals;
    const std::complex<double> g1 = gamma_complex({0.5 - k / 2.0, r});
    const std::complex<double> g2 = gamma_complex({0.5 - k / 2.0, -r});
    const std::complex<double> rot = std::polar(1.0, (1.0 + k) * kPi / 2.0);
    return 2.0i * kPi * kPi * rot / (g1 * g2);
}

}  // namespace hkloost
