#include "hkloost/exact_arith.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "hkloost/errors.hpp"

namespace hkloost {

Rational::Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DomainError("Rational: zero denominator");
    q_.get_num() = num;
    q_.get_den() = den;
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    const std::string s(text);
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0) throw DomainError("not a rational number: '" + s + "'");
    if (q.get_den() == 0) throw DomainError("Rational: zero denominator in '" + s + "'");
    return Rational(q);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.q_ == 0) throw DomainError("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

Integer Rational::floor() const {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

Rational Rational::frac() const { return *this - Rational(floor()); }

std::complex<double> unit_phase(double turns) {
    const double t = turns - std::floor(turns + 0.5);
    const double angle = 2.0 * std::numbers::pi * t;
    return {std::cos(angle), std::sin(angle)};
}

std::complex<double> RationalPhase::value() const {
    // q in [0,1); shift to [-1/2, 1/2) before rounding to double.
    Rational t = q_;
    if (t >= Rational(Integer(1), Integer(2))) t -= Rational(1);
    const double angle = 2.0 * std::numbers::pi * t.to_double();
    return {std::cos(angle), std::sin(angle)};
}

namespace {

// (a/2) for the Kronecker symbol, indexed by a mod 8.
constexpr int kTwoTable[8] = {0, 1, 0, -1, 0, -1, 0, 1};

unsigned mod8(std::int64_t a) { return static_cast<unsigned>(a & 7); }
unsigned mod8(const Integer& a) { return static_cast<unsigned>(mpz_fdiv_ui(a.get_mpz_t(), 8)); }
bool is_even(std::int64_t a) { return (a & 1) == 0; }
bool is_even(const Integer& a) { return mpz_even_p(a.get_mpz_t()) != 0; }
bool is_negative(std::int64_t a) { return a < 0; }
bool is_negative(const Integer& a) { return sgn(a) < 0; }
bool is_abs_one(std::int64_t a) { return a == 1 || a == -1; }
bool is_abs_one(const Integer& a) { return a == 1 || a == -1; }

std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
    std::int64_t r = a % b;
    return r < 0 ? r + b : r;
}
Integer floor_mod(const Integer& a, const Integer& b) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

template <class T>
int kronecker_impl(T a, T b) {
    if (b == 0) return is_abs_one(a) ? 1 : 0;
    if (is_even(a) && is_even(b)) return 0;

    int k = 1;
    int v = 0;
    while (is_even(b)) {
        b /= 2;
        ++v;
    }
    if (v & 1) k = kTwoTable[mod8(a)];
    if (is_negative(b)) {
        b = -b;
        if (is_negative(a)) k = -k;
    }
    // b is odd and positive: Jacobi symbol from here on.
    a = floor_mod(a, b);
    while (a != 0) {
        v = 0;
        while (is_even(a)) {
            a /= 2;
            ++v;
        }
        if (v & 1) k *= kTwoTable[mod8(b)];
        if (mod8(a) % 4 == 3 && mod8(b) % 4 == 3) k = -k;
        T r = a;
        a = floor_mod(b, r);
        b = r;
    }
    return b == 1 ? k : 0;
}

void require_coprime(const Integer& d, const Integer& c, const char* who) {
    if (c <= 0) throw DomainError(std::string(who) + ": modulus must be positive");
    Integer g;
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), c.get_mpz_t());
    if (g != 1) throw DomainError(std::string(who) + ": arguments not coprime");
}

}  // namespace

int kronecker(std::int64_t a, std::int64_t b) { return kronecker_impl<std::int64_t>(a, b); }
int kronecker(const Integer& a, const Integer& b) { return kronecker_impl<Integer>(a, b); }

RationalPhase epsilon(const Integer& d) {
    if (is_even(d)) throw DomainError("epsilon: d must be odd");
    return mod8(d) % 4 == 1 ? RationalPhase() : RationalPhase(Rational(1, 4));
}

Integer mod_inverse(const Integer& a, const Integer& m) {
    if (m <= 0) throw DomainError("mod_inverse: modulus must be positive");
    Integer r;
    if (m == 1) return 0;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw DomainError("mod_inverse: not invertible");
    return r;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
    if (m == 0) throw DomainError("mod_inverse: modulus must be positive");
    if (m == 1) return 0;
    // Extended Euclid on signed 128-bit to keep the Bezout coefficients exact.
    __int128 r0 = m, r1 = a % m, t0 = 0, t1 = 1;
    while (r1 != 0) {
        const __int128 q = r0 / r1;
        std::tie(r0, r1) = std::pair<__int128, __int128>{r1, r0 - q * r1};
        std::tie(t0, t1) = std::pair<__int128, __int128>{t1, t0 - q * t1};
    }
    if (r0 != 1) throw DomainError("mod_inverse: not invertible");
    if (t0 < 0) t0 += m;
    return static_cast<std::uint64_t>(t0);
}

Rational dedekind_direct(const Integer& d, const Integer& c) {
    require_coprime(d, c, "dedekind_direct");
    // ((r/c))((dr/c)) = (2r - c)(2(dr mod c) - c) / (4c^2) for 0 < r < c, since dr/c is never integral.
    const Integer dm = floor_mod(d, c);
    Integer acc = 0;
    Integer dr = 0;
    for (Integer r = 1; r < c; ++r) {
        dr += dm;
        if (dr >= c) dr -= c;
        acc += (2 * r - c) * (2 * dr - c);
    }
    return Rational(acc, 4 * c * c);
}

Rational dedekind_displayed(const Integer& d, const Integer& c) {
    require_coprime(d, c, "dedekind_displayed");
    const Integer dm = floor_mod(d, c);
    Integer acc = 0;
    Integer dr = 0;
    for (Integer r = 1; r < c; ++r) {
        dr += dm;
        if (dr >= c) dr -= c;
        acc += r * (dr - c);
    }
    return Rational(acc, c * c);
}

Rational dedekind_fast(const Integer& d, const Integer& c) {
    require_coprime(d, c, "dedekind_fast");
    // s(h,k) + s(k,h) = (h/k + k/h + 1/(hk))/12 - 1/4 for coprime h,k > 0, and s(h,k) = s(h mod k, k).
    Integer h = floor_mod(d, c);
    Integer k = c;
    mpq_class acc = 0;
    int sign = 1;
    const mpq_class quarter(1, 4);
    while (k > 1) {
        mpq_class term(h * h + k * k + 1, 12 * h * k);
        term.canonicalize();
        term -= quarter;
        if (sign > 0) acc += term; else acc -= term;
        sign = -sign;
        Integer next = floor_mod(k, h);
        k = h;
        h = next;
    }
    return Rational(acc);
}

}  // namespace hkloost
