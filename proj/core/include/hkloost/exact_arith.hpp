#pragma once

#include <gmpxx.h>

#include <complex>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace hkloost {

using Integer = mpz_class;

/// Exact rational number, always in lowest terms with positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(const Integer& n) : q_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(const Integer& num, const Integer& den);
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    /// Accepts "p", "p/q" or "-p/q".
    static Rational parse(std::string_view text);

    Integer num() const { return q_.get_num(); }
    Integer den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    Integer floor() const;
    /// x - floor(x), in [0, 1).
    Rational frac() const;
    bool is_integer() const { return q_.get_den() == 1; }
    double to_double() const { return q_.get_d(); }
    std::string str() const { return q_.get_str(); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int s = cmp(a.q_, b.q_);
        return s < 0 ? std::strong_ordering::less
                     : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_;
};

/// The unit complex number e(q) = exp(2 pi i q), stored as q mod 1 in [0, 1).
/// Multiplying unit values adds phases.
class RationalPhase {
public:
    RationalPhase() = default;
    explicit RationalPhase(const Rational& q) : q_(q.frac()) {}

    const Rational& turns() const { return q_; }
    bool is_zero() const { return q_ == Rational(0); }

    /// Value of the complex conjugate, e(-q).
    RationalPhase conj() const { return RationalPhase(-q_); }
    std::complex<double> value() const;

    friend RationalPhase operator*(const RationalPhase& a, const RationalPhase& b) {
        return RationalPhase(a.q_ + b.q_);
    }
    friend RationalPhase operator/(const RationalPhase& a, const RationalPhase& b) {
        return RationalPhase(a.q_ - b.q_);
    }
    friend bool operator==(const RationalPhase&, const RationalPhase&) = default;
    friend std::ostream& operator<<(std::ostream& os, const RationalPhase& p) {
        return os << "e(" << p.q_ << ")";
    }

private:
    Rational q_;
};

/// e(x) for a double x, with x reduced to [-1/2, 1/2) first.
std::complex<double> unit_phase(double turns);

/// Extended Kronecker symbol (a/b), including b <= 0 and b even.
int kronecker(std::int64_t a, std::int64_t b);
int kronecker(const Integer& a, const Integer& b);

/// epsilon_d: phase 0 for d = 1 mod 4, phase 1/4 (value i) for d = 3 mod 4.
RationalPhase epsilon(const Integer& d);

/// Inverse of a modulo m in [0, m). Throws DomainError unless gcd(a, m) = 1.
Integer mod_inverse(const Integer& a, const Integer& m);
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m);

/// Classical Dedekind sum s(d,c) = sum_{r mod c} ((r/c))((dr/c)) by direct summation, O(c).
Rational dedekind_direct(const Integer& d, const Integer& c);

/// The variant sum_{r=1}^{c-1} (r/c)(dr/c - floor(dr/c) - 1), without the -1/2 in the first
/// sawtooth. Differs from the classical sum by (c-1)/4.
Rational dedekind_displayed(const Integer& d, const Integer& c);

/// Classical Dedekind sum via reciprocity along the Euclidean algorithm, O(log c).
Rational dedekind_fast(const Integer& d, const Integer& c);

}  // namespace hkloost
