#pragma once

#include <complex>

namespace hkloost {

/// Largest argument accepted by the real-order power series (evaluated in quad precision).
inline constexpr double kRealOrderMaxArgument = 50.0;
/// Regime of the imaginary-order series: |r| <= 4 and 0 < u <= 20.
inline constexpr double kImagOrderMaxArgument = 20.0;
inline constexpr double kImagOrderMaxR = 4.0;

/// Landau's uniform constant: |J_beta(x)| <= c0 x^{-1/3} for beta > 0, x > 0.
inline constexpr double kLandauC0 = 0.7857;

/// J_order(u) for real order. Orders -1/2, 1/2 and 3/2 use closed forms at any u > 0; other
/// orders use the power series and require u <= kRealOrderMaxArgument. Negative integer orders
/// reduce to J_{-n} = (-1)^n J_n.
double bessel_j(double order, double u);

/// Power series only, for any real order (except the negative integers), u <= kRealOrderMaxArgument.
double bessel_j_series(double order, double u);

/// I_order(u) for order 1/2 or 3/2 (closed forms).
double bessel_i(double order, double u);

/// J_{2ir}(u) for real r, |r| <= 4, 0 < u <= 20; power series with a Lanczos complex Gamma prefactor.
std::complex<double> bessel_j_imag_order(double r, double u);

/// F_{2ir}(u) = Re J_{2ir}(u) / cosh(pi r) and G_{2ir}(u) = Im J_{2ir}(u) / sinh(pi r), r != 0.
double bessel_f_imag(double r, double u);
double bessel_g_imag(double r, double u);

/// Gamma(z) by the Lanczos approximation (g = 7, 9 coefficients), reflected for Re z < 1/2.
std::complex<double> gamma_complex(std::complex<double> z);

/// xi_k(r) = 2 i pi^2 e^{(1+k) pi i / 2} / (Gamma(1/2 - k/2 + ir) Gamma(1/2 - k/2 - ir)).
std::complex<double> xi_k(double k, double r);

}  // namespace hkloost
