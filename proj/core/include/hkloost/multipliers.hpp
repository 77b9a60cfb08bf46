#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include "hkloost/exact_arith.hpp"

namespace hkloost {

/// An element (a b; c d) of SL2(Z).
class GammaElement {
public:
    GammaElement(Integer a, Integer b, Integer c, Integer d);

    static GammaElement identity() { return {1, 0, 0, 1}; }
    static GammaElement translation(const Integer& b) { return {1, b, 0, 1}; }
    static GammaElement inversion() { return {0, -1, 1, 0}; }

    const Integer& a() const { return a_; }
    const Integer& b() const { return b_; }
    const Integer& c() const { return c_; }
    const Integer& d() const { return d_; }

    GammaElement operator-() const { return {-a_, -b_, -c_, -d_}; }
    GammaElement inverse() const { return {d_, -b_, -c_, a_}; }
    friend GammaElement operator*(const GammaElement& x, const GammaElement& y);
    friend bool operator==(const GammaElement&, const GammaElement&) = default;

    bool in_gamma0(std::int64_t level) const;
    std::string str() const;

private:
    Integer a_, b_, c_, d_;
};

enum class MultiplierBase { Eta, Theta, Trivial };

std::string_view to_string(MultiplierBase base);
MultiplierBase parse_multiplier_base(std::string_view name);

/// Descriptor of a multiplier system chi(d) * nu_base on Gamma_0(level), optionally conjugated.
///
/// The twist t selects the character chi(d) = kronecker(d, t); t = 1 is the trivial character.
/// The weight is metadata: it only enters cocycle checks and the nu(-I) normalization.
struct MultiplierSpec {
    MultiplierBase base = MultiplierBase::Trivial;
    std::int64_t twist = 1;
    bool conjugated = false;
    Rational weight = 0;
    std::int64_t level = 1;

    static MultiplierSpec eta(std::int64_t level = 1);
    static MultiplierSpec theta(std::int64_t level = 4);
    static MultiplierSpec trivial(std::int64_t level = 1);

    /// Flips the conjugation flag and negates the weight.
    MultiplierSpec conjugate() const;
    MultiplierSpec twisted(std::int64_t t) const;
    MultiplierSpec with_level(std::int64_t n) const;
    MultiplierSpec with_weight(const Rational& k) const;

    /// Throws DomainError if the combination is not a multiplier system we support.
    void validate() const;

    /// Twisting character chi(d) in {-1, 0, 1}.
    int character(std::int64_t d) const;
    int character(const Integer& d) const;

    /// Canonical form, e.g. "eta,conj=1,twist=3,k=-1/2,N=3".
    std::string fingerprint() const;
    static MultiplierSpec parse_fingerprint(std::string_view text);

    friend bool operator==(const MultiplierSpec&, const MultiplierSpec&) = default;
};

/// Rademacher: nu_eta = e(-1/8) e^{-pi i s(d,c)} e((a+d)/(24c)) with the classical Dedekind sum. c > 0.
RationalPhase eval_eta_rademacher(const GammaElement& g);
/// Same formula with the variant sum s(d,c) = sum (r/c)(dr/c - floor(dr/c) - 1). Kept for comparison.
RationalPhase eval_eta_rademacher_displayed(const GammaElement& g);
/// Knopp's closed formula, split on the parity of c. c > 0.
RationalPhase eval_eta_knopp(const GammaElement& g);
/// nu_theta = (c/d) eps_d^{-1} on Gamma_0(4).
RationalPhase eval_theta(const GammaElement& g);

/// nu(g) for g in Gamma_0(level). Throws DomainError on level violation or a vanishing character.
RationalPhase eval(const MultiplierSpec& nu, const GammaElement& g);

struct AlphaData {
    Rational alpha;  // in [0, 1), e(-alpha) = nu(T)
    Rational tilde(const Integer& n) const { return Rational(n) - alpha; }
};

AlphaData alpha(const MultiplierSpec& nu);

/// w_k(g1, g2) = j(g2,tau)^k j(g1,g2 tau)^k j(g1 g2,tau)^{-k}, principal branch of arg in (-pi, pi].
std::complex<double> cocycle_w(const GammaElement& g1, const GammaElement& g2, double k,
                               std::complex<double> tau);

namespace fast {

/// Knopp's exponent for nu_eta(a b; c d) as a multiple of 1/24, given the symbol
/// psi = (d/c) for odd c and (c/d) for even c. Requires c > 0 and a, b, d >= 0.
inline int eta_phase24(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d, int psi) {
    const int a24 = static_cast<int>(a % 24), b24 = static_cast<int>(b % 24);
    const int c24 = static_cast<int>(c % 24), d24 = static_cast<int>(d % 24);
    const int csq1 = (c24 * c24 + 23) % 24;
    int e = (a24 + d24) * c24 - (b24 * d24 % 24) * csq1;
    if (c & 1) {
        e -= 3 * c24;
    } else {
        e += 3 * d24 - 3 - 3 * (c24 * d24 % 24);
    }
    e %= 24;
    if (e < 0) e += 24;
    if (psi < 0) e = (e + 12) % 24;
    return e;
}

/// (c/d) eps_d^{-1} as a multiple of 1/24, given psi = (c/d). Requires d >= 0 odd.
inline int theta_phase24(std::uint64_t d, int psi) {
    int e = (d % 4 == 3) ? 18 : 0;
    if (psi < 0) e = (e + 12) % 24;
    return e;
}

}  // namespace fast

}  // namespace hkloost
