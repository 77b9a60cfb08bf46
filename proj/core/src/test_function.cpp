#include "hkloost/test_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hkloost/errors.hpp"
#include "hkloost/quadrature.hpp"
#include "hkloost/special_fn.hpp"

namespace hkloost {

namespace {

constexpr double kPi = std::numbers::pi;

// Blend profile g(t) = S9(t) + 1386 t^5 (1-t)^5: g(0) = 0, g(1) = 1, derivatives 1..4 vanish at
// both ends, integral over [0,1] equals 1 and max g < 2.
constexpr std::array<double, 6> kBlend = {1512.0, -7350.0, 14400.0, -14175.0, 7000.0, -1386.0};  // t^5..t^10

double blend(double t) {
    double acc = 0.0;
    for (int i = 5; i >= 0; --i) acc = acc * t + kBlend[static_cast<std::size_t>(i)];
    return acc * std::pow(t, 5);
}

// Antiderivative of blend from 0, G(1) = 1.
double blend_integral(double t) {
    double acc = 0.0;
    for (int i = 5; i >= 0; --i) acc = acc * t + kBlend[static_cast<std::size_t>(i)] / (i + 6);
    return acc * std::pow(t, 6);
}

// Breakpoints for quadrature: knots of phi, and pieces of length <= pi once u >= 5
// so oscillatory kernels stay resolved.
std::vector<double> breakpoints(const TestFunction& tf) {
    std::vector<double> k = tf.knots();
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
        out.push_back(k[i]);
        const double lo = std::max(k[i], 5.0), hi = k[i + 1];
        if (hi - lo > kPi) {
            const int pieces = static_cast<int>(std::ceil((hi - lo) / kPi));
            if (lo > k[i]) out.push_back(lo);
            for (int j = 1; j < pieces; ++j) out.push_back(lo + (hi - lo) * j / pieces);
        }
    }
    if (!k.empty()) out.push_back(k.back());
    return out;
}

template <class F>
TransformValue integrate_phi(const TestFunction& tf, const F& kernel) {
    if (tf.is_null()) return {};
    const auto br = breakpoints(tf);
    auto f = [&](double u) { return kernel(u) * tf(u); };
    const auto res = integrate(f, std::span<const double>(br));
    return {std::complex<double>(res.value), res.error};
}

void require_imag_regime(const TestFunction& tf, double r) {
    if (std::fabs(r) > kImagOrderMaxR) throw RegimeError("phi_hat requires |r| <= 4");
    if (!tf.is_null() && tf.support_hi() > kImagOrderMaxArgument)
        throw RegimeError("phi_hat requires supp(phi) within (0, 20]; a/(x-T) = " + std::to_string(tf.support_hi()));
}

void require_half_weight(double k) {
    if (k != 0.5 && k != 1.5) throw DomainError("weight k must be 1/2 or 3/2");
}

}  // namespace

Profile parse_profile(std::string_view text) {
    if (text == "linear") return Profile::Linear;
    if (text == "smooth") return Profile::Smooth;
    throw DomainError("profile must be 'linear' or 'smooth', got '" + std::string(text) + "'");
}

std::string_view to_string(Profile p) { return p == Profile::Linear ? "linear" : "smooth"; }

TestFunction TestFunction::null() { return TestFunction{}; }

double TestFunction::support_lo() const { return pieces_.empty() ? 0.0 : pieces_.front().lo; }
double TestFunction::support_hi() const { return pieces_.empty() ? 0.0 : pieces_.back().hi; }
double TestFunction::rising_slope() const { return 2.0 * x_ * (x_ + T_) / (a_ * T_); }
double TestFunction::falling_slope() const { return x_ * (x_ - T_) / (a_ * T_); }

const TestFunction::Piece* TestFunction::locate(double u) const {
    if (pieces_.empty() || u < pieces_.front().lo || u > pieces_.back().hi) return nullptr;
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), u, [](double v, const Piece& p) { return v < p.hi; });
    if (it == pieces_.end()) --it;
    return &*it;
}

double TestFunction::operator()(double u) const {
    const Piece* p = locate(u);
    if (p == nullptr) return 0.0;
    const double w = p->hi - p->lo;
    double v = 0.0;
    switch (p->kind) {
        case Kind::Plateau: return 1.0;
        case Kind::Linear: v = p->start + p->slope * (u - p->lo); break;
        case Kind::BlendIn: v = p->start + p->slope * w * blend_integral((u - p->lo) / w); break;
        case Kind::BlendOut: v = p->start + p->slope * w * (1.0 - blend_integral((p->hi - u) / w)); break;
    }
    return std::clamp(v, 0.0, 1.0);
}

double TestFunction::derivative(double u) const {
    const Piece* p = locate(u);
    if (p == nullptr) return 0.0;
    const double w = p->hi - p->lo;
    switch (p->kind) {
        case Kind::Plateau: return 0.0;
        case Kind::Linear: return p->slope;
        case Kind::BlendIn: return p->slope * blend((u - p->lo) / w);
        case Kind::BlendOut: return p->slope * blend((p->hi - u) / w);
    }
    return 0.0;
}

std::vector<double> TestFunction::knots() const {
    std::vector<double> k;
    for (const auto& p : pieces_) k.push_back(p.lo);
    if (!pieces_.empty()) k.push_back(pieces_.back().hi);
    return k;
}

TestFunction build_phi(double a, double x, double T, double delta, Profile profile) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("test function: a must be positive");
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("test function: x must be positive");
    if (!(T > 0.0) || T > x / 3.0) throw DomainError("test function: need 0 < T <= x/3");
    if (!(delta > 0.0) || !(delta < 0.5)) throw DomainError("test function: need 0 < delta < 1/2");
    TestFunction tf;
    tf.a_ = a;
    tf.x_ = x;
    tf.T_ = T;
    tf.delta_ = delta;
    tf.profile_ = profile;
    tf.t_prime_ = T * std::pow(x, -delta);

    using Kind = TestFunction::Kind;
    const double u0 = a / (2 * x + 2 * T), u1 = a / (2 * x), u2 = a / x, u3 = a / (x - T);
    const double up = tf.rising_slope(), down = -tf.falling_slope();
    auto& ps = tf.pieces_;
    if (profile == Profile::Linear) {
        ps.push_back({u0, u1, Kind::Linear, up, 0.0});
        ps.push_back({u1, u2, Kind::Plateau, 0.0, 1.0});
        ps.push_back({u2, u3, Kind::Linear, down, 1.0});
        return tf;
    }
    const double tp = tf.t_prime_;
    if (!(tp < T / 2)) throw DomainError("test function: smooth profile needs T' < T/2");
    const double r0 = a / (2 * x + 2 * T - 2 * tp), r1 = a / (2 * x + 2 * tp);
    const double f0 = a / (x - tp), f1 = a / (x - T + tp);
    auto ramp = [&](double lo, double mid_lo, double mid_hi, double hi, double slope, double start) {
        double v = start;
        ps.push_back({lo, mid_lo, Kind::BlendIn, slope, v});
        v += slope * (mid_lo - lo);
        ps.push_back({mid_lo, mid_hi, Kind::Linear, slope, v});
        v += slope * (mid_hi - mid_lo);
        ps.push_back({mid_hi, hi, Kind::BlendOut, slope, v});
    };
    ramp(u0, r0, r1, u1, up, 0.0);
    ps.push_back({u1, u2, Kind::Plateau, 0.0, 1.0});
    ramp(u2, f0, f1, u3, down, 1.0);
    return tf;
}

TestFunction build_phi_default(double a, double x, double delta, Profile profile) {
    return build_phi(a, x, std::pow(x, 1.0 - delta), delta, profile);
}

TransformValue phi_tilde(const TestFunction& tf, double r) {
    const double order = r - 1.0;
    return integrate_phi(tf, [order](double u) { return bessel_j(order, u) / u; });
}

TransformValue phi_tilde_imag(const TestFunction& tf, double rho) {
    if (tf.is_null()) return {};
    if (tf.support_hi() > kImagOrderMaxArgument) throw RegimeError("phi_tilde_imag requires supp(phi) within (0, 20]");
    const auto br = breakpoints(tf);
    auto f = [&](double u) { return bessel_j_imag_order(rho, u) * (tf(u) / u); };
    const auto res = integrate(f, std::span<const double>(br));
    return {res.value, res.error};
}

TransformValue phi_hat(const TestFunction& tf, double k, double r) {
    require_half_weight(k);
    require_imag_regime(tf, r);
    if (tf.is_null()) return {};
    constexpr double h = 0.01;
    if (std::fabs(r) < h) {
        // Even in r: extrapolate phi_hat(0) from r = h, 2h and interpolate quadratically.
        const TransformValue v1 = phi_hat(tf, k, h), v2 = phi_hat(tf, k, 2 * h);
        const std::complex<double> v0 = (4.0 * v1.value - v2.value) / 3.0;
        const double s = (r / h) * (r / h);
        return {v0 + (v1.value - v0) * s, (4.0 * v1.error + v2.error) / 3.0 + std::abs(v1.value - v2.value) * 1e-4};
    }
    const double ck = std::cos(k * kPi / 2), sk = std::sin(k * kPi / 2);
    const double ch = std::cosh(kPi * r), sh = std::sinh(kPi * r);
    const TransformValue inner = integrate_phi(tf, [&](double u) {
        const std::complex<double> j = bessel_j_imag_order(r, u);
        return (j.imag() / sh * ck - j.real() / ch * sk) / u;
    });
    const std::complex<double> pref = xi_k(k, r) * ch / std::cosh(2 * kPi * r);
    return {pref * inner.value, std::abs(pref) * inner.error};
}

TransformValue phi_hat_via_tilde(const TestFunction& tf, double k, double r) {
    require_half_weight(k);
    require_imag_regime(tf, r);
    if (r == 0.0) throw DomainError("phi_hat_via_tilde is singular at r = 0");
    if (tf.is_null()) return {};
    using namespace std::complex_literals;
    const TransformValue plus = phi_tilde_imag(tf, r), minus = phi_tilde_imag(tf, -r);
    const double ck = std::cos(k * kPi / 2), sk = std::sin(k * kPi / 2);
    const double ch = std::cosh(kPi * r), sh = std::sinh(kPi * r);
    const std::complex<double> gammas = gamma_complex({0.5 - k / 2, r}) * gamma_complex({0.5 - k / 2, -r});
    const std::complex<double> pref = kPi * kPi * std::polar(1.0, (1 + k) * kPi / 2) /
                                      (sh * (std::cosh(2 * kPi * r) + std::cos(kPi * k)) * gammas);
    const std::complex<double> body = ck * ch * (plus.value - minus.value) - 1.0i * sk * sh * (plus.value + minus.value);
    return {pref * body, std::abs(pref) * (ch + sh) * (plus.error + minus.error)};
}

TransformValue phi_hat_quarter(const TestFunction& tf, double k) {
    require_half_weight(k);
    if (k == 0.5) {
        const TransformValue v = integrate_phi(tf, [](double u) { return std::cos(u) * std::pow(u, -1.5); });
        return {std::polar(1.0, kPi / 4) * v.value, v.error};
    }
    const TransformValue v = integrate_phi(tf, [](double u) { return std::sin(u) * std::pow(u, -1.5); });
    return {0.5 * std::polar(1.0, 3 * kPi / 4) * v.value, 0.5 * v.error};
}

double phi_tilde_limit(double t) {
    const double p = std::pow(2.0, 2 * t);
    return p * (p - 1.0) / (2 * t * std::tgamma(1 - 2 * t));
}

double phi_hat_quarter_limit(double k) {
    require_half_weight(k);
    return k == 0.5 ? 2.0 * (std::sqrt(2.0) - 1.0) : 1.0 - 1.0 / std::sqrt(2.0);
}

}  // namespace hkloost
