#include "hkloost/multipliers.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "hkloost/errors.hpp"

namespace hkloost {

namespace {

Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

const Rational kQuarter(1, 4);

void require_positive_c(const GammaElement& g, const char* who) {
    if (g.c() <= 0) throw DomainError(std::string(who) + ": requires c > 0, got " + g.str());
}

// Unconjugated, untwisted base multiplier, defined for every element of its group.
RationalPhase base_phase(MultiplierBase base, const GammaElement& g) {
    if (base == MultiplierBase::Trivial) return RationalPhase();
    // Both eta and theta have weight 1/2 here: nu(g) = e^{pi i/2} nu(-g) for c < 0, and
    // nu(-T^b) = nu(-I) nu(T^b) with nu(-I) = e^{-pi i/2}.
    if (g.c() < 0) return base_phase(base, -g) * RationalPhase(kQuarter);
    if (g.c() == 0 && g.d() < 0) return base_phase(base, -g) * RationalPhase(-kQuarter);
    if (base == MultiplierBase::Theta) return eval_theta(g);
    if (g.c() == 0) return RationalPhase(Rational(g.b(), 24));
    return eval_eta_knopp(g);
}

RationalPhase rademacher_with(const GammaElement& g, const Rational& s) {
    require_positive_c(g, "eval_eta_rademacher");
    const Rational p = Rational(-1, 8) - s / Rational(2) + Rational(g.a() + g.d(), 24 * g.c());
    return RationalPhase(p);
}

}  // namespace

GammaElement::GammaElement(Integer a, Integer b, Integer c, Integer d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (a_ * d_ - b_ * c_ != 1) throw DomainError("GammaElement: determinant is not 1 for " + str());
}

GammaElement operator*(const GammaElement& x, const GammaElement& y) {
    return {x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_,
            x.c_ * y.a_ + x.d_ * y.c_, x.c_ * y.b_ + x.d_ * y.d_};
}

bool GammaElement::in_gamma0(std::int64_t level) const {
    return level >= 1 && mpz_divisible_ui_p(c_.get_mpz_t(), static_cast<unsigned long>(level)) != 0;
}

std::string GammaElement::str() const {
    return "(" + a_.get_str() + "," + b_.get_str() + ";" + c_.get_str() + "," + d_.get_str() + ")";
}

std::string_view to_string(MultiplierBase base) {
    switch (base) {
        case MultiplierBase::Eta: return "eta";
        case MultiplierBase::Theta: return "theta";
        case MultiplierBase::Trivial: return "trivial";
    }
    return "?";
}

MultiplierBase parse_multiplier_base(std::string_view name) {
    if (name == "eta") return MultiplierBase::Eta;
    if (name == "theta") return MultiplierBase::Theta;
    if (name == "trivial") return MultiplierBase::Trivial;
    throw DomainError("unknown multiplier base '" + std::string(name) + "'");
}

MultiplierSpec MultiplierSpec::eta(std::int64_t level) {
    return {MultiplierBase::Eta, 1, false, Rational(1, 2), level};
}
MultiplierSpec MultiplierSpec::theta(std::int64_t level) {
    return {MultiplierBase::Theta, 1, false, Rational(1, 2), level};
}
MultiplierSpec MultiplierSpec::trivial(std::int64_t level) {
    return {MultiplierBase::Trivial, 1, false, Rational(0), level};
}

MultiplierSpec MultiplierSpec::conjugate() const {
    MultiplierSpec r = *this;
    r.conjugated = !conjugated;
    r.weight = -weight;
    return r;
}
MultiplierSpec MultiplierSpec::twisted(std::int64_t t) const {
    MultiplierSpec r = *this;
    r.twist = t;
    return r;
}
MultiplierSpec MultiplierSpec::with_level(std::int64_t n) const {
    MultiplierSpec r = *this;
    r.level = n;
    return r;
}
MultiplierSpec MultiplierSpec::with_weight(const Rational& k) const {
    MultiplierSpec r = *this;
    r.weight = k;
    return r;
}

void MultiplierSpec::validate() const {
    if (level < 1) throw DomainError("multiplier level must be >= 1");
    if (twist < 1) throw DomainError("twist must be a positive integer (1 = no twist)");
    if (base == MultiplierBase::Theta && level % 4 != 0)
        throw DomainError("theta multiplier requires 4 | level");
    if (base == MultiplierBase::Trivial) {
        if (weight != Rational(0)) throw DomainError("trivial multiplier has weight 0");
    } else {
        const Rational half(1, 2);
        const Rational base_weight = conjugated ? -half : half;
        const Rational diff = (weight - base_weight) / Rational(2);
        const bool allowed = weight == half || weight == -half || weight == Rational(3, 2) ||
                             weight == Rational(-3, 2);
        if (!allowed || !diff.is_integer())
            throw DomainError("weight " + weight.str() + " is not compatible with " +
                              std::string(to_string(base)) + (conjugated ? " (conjugated)" : ""));
    }
    if (twist != 1) {
        // chi(d) = (d/t) is periodic mod 8t; it must be periodic mod the level on units.
        const std::int64_t period = 8 * twist;
        for (std::int64_t d = 0; d < period; ++d) {
            if (std::gcd(d, level) != 1) continue;
            if (character(d) != character(d + level))
                throw DomainError("twist character (./" + std::to_string(twist) +
                                  ") is not well defined modulo level " + std::to_string(level));
        }
    }
}

int MultiplierSpec::character(std::int64_t d) const { return twist == 1 ? 1 : kronecker(d, twist); }
int MultiplierSpec::character(const Integer& d) const {
    return twist == 1 ? 1 : kronecker(d, Integer(static_cast<long>(twist)));
}

std::string MultiplierSpec::fingerprint() const {
    std::ostringstream os;
    os << to_string(base) << ",conj=" << (conjugated ? 1 : 0) << ",twist=" << twist
       << ",k=" << weight.str() << ",N=" << level;
    return os.str();
}

MultiplierSpec MultiplierSpec::parse_fingerprint(std::string_view text) {
    MultiplierSpec spec;
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    if (fields.size() != 5) throw DomainError("malformed multiplier fingerprint '" + std::string(text) + "'");
    spec.base = parse_multiplier_base(fields[0]);
    auto value_of = [&](const std::string& f, const std::string& key) {
        if (f.rfind(key + "=", 0) != 0)
            throw DomainError("malformed multiplier fingerprint field '" + f + "'");
        return f.substr(key.size() + 1);
    };
    try {
        const std::string conj = value_of(fields[1], "conj");
        if (conj != "0" && conj != "1") throw DomainError("conj must be 0 or 1");
        spec.conjugated = conj == "1";
        spec.twist = std::stoll(value_of(fields[2], "twist"));
        spec.weight = Rational::parse(value_of(fields[3], "k"));
        spec.level = std::stoll(value_of(fields[4], "N"));
    } catch (const std::logic_error& e) {
        throw DomainError("malformed multiplier fingerprint '" + std::string(text) + "': " + e.what());
    }
    spec.validate();
    return spec;
}

RationalPhase eval_eta_rademacher(const GammaElement& g) {
    require_positive_c(g, "eval_eta_rademacher");
    return rademacher_with(g, dedekind_fast(g.d(), g.c()));
}

RationalPhase eval_eta_rademacher_displayed(const GammaElement& g) {
    require_positive_c(g, "eval_eta_rademacher");
    return rademacher_with(g, dedekind_displayed(g.d(), g.c()));
}

RationalPhase eval_eta_knopp(const GammaElement& g) {
    require_positive_c(g, "eval_eta_knopp");
    const Integer& a = g.a();
    const Integer& b = g.b();
    const Integer& c = g.c();
    const Integer& d = g.d();
    Integer e;
    int symbol;
    if (mpz_odd_p(c.get_mpz_t())) {
        symbol = kronecker(d, c);
        e = (a + d) * c - b * d * (c * c - 1) - 3 * c;
    } else {
        symbol = kronecker(c, d);
        e = (a + d) * c - b * d * (c * c - 1) + 3 * d - 3 - 3 * c * d;
    }
    Rational p(mod(e, 24), 24);
    if (symbol < 0) p += Rational(1, 2);
    return RationalPhase(p);
}

RationalPhase eval_theta(const GammaElement& g) {
    if (!g.in_gamma0(4)) throw DomainError("eval_theta: requires 4 | c, got " + g.str());
    const int symbol = kronecker(g.c(), g.d());
    RationalPhase p = epsilon(g.d()).conj();
    if (symbol < 0) p = p * RationalPhase(Rational(1, 2));
    return p;
}

RationalPhase eval(const MultiplierSpec& nu, const GammaElement& g) {
    if (!g.in_gamma0(nu.level))
        throw DomainError("element " + g.str() + " is not in Gamma_0(" + std::to_string(nu.level) + ")");
    RationalPhase p = base_phase(nu.base, g);
    const int chi = nu.character(g.d());
    if (chi == 0) throw DomainError("twist character vanishes at d = " + g.d().get_str());
    if (chi < 0) p = p * RationalPhase(Rational(1, 2));
    return nu.conjugated ? p.conj() : p;
}

AlphaData alpha(const MultiplierSpec& nu) {
    const RationalPhase t = eval(nu, GammaElement::translation(1));
    return {t.conj().turns()};
}

std::complex<double> cocycle_w(const GammaElement& g1, const GammaElement& g2, double k,
                               std::complex<double> tau) {
    if (tau.imag() <= 0) throw DomainError("cocycle_w: tau must lie in the upper half plane");
    auto arg_j = [](const GammaElement& g, std::complex<double> z) {
        const double c = g.c().get_d(), d = g.d().get_d();
        return std::arg(std::complex<double>(c * z.real() + d, c * z.imag()));
    };
    const double a2 = g2.a().get_d(), b2 = g2.b().get_d(), c2 = g2.c().get_d(), d2 = g2.d().get_d();
    const std::complex<double> g2tau = (a2 * tau + b2) / (c2 * tau + d2);
    const double phase = k * (arg_j(g2, tau) + arg_j(g1, g2tau) - arg_j(g1 * g2, tau));
    return std::polar(1.0, phase);
}

}  // namespace hkloost
