#include "hkloost/kloosterman.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>
#include <thread>

#include "hkloost/errors.hpp"
#include "hkloost/result_cache.hpp"
#include "hkloost/special_fn.hpp"
#include "hkloost/summation.hpp"

namespace hkloost {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Fast path bound: 24c * c must fit in 64 bits.
constexpr std::int64_t kFastPathMaxC = std::int64_t{1} << 29;

struct Barrett {
    u64 m;
    u64 inv;
    explicit Barrett(u64 mod) : m(mod), inv(~u64{0} / mod) {}

    u64 reduce(u64 x) const {
        const u64 q = static_cast<u64>((static_cast<u128>(x) * inv) >> 64);
        u64 r = x - q * m;
        while (r >= m) r -= m;
        return r;
    }
    // x / m, for x known to be a multiple of m.
    u64 exact_quotient(u64 x) const {
        u64 q = static_cast<u64>((static_cast<u128>(x) * inv) >> 64);
        u64 r = x - q * m;
        while (r >= m) {
            r -= m;
            ++q;
        }
        return q;
    }
};

class Sieve {
public:
    explicit Sieve(std::uint32_t limit) : spf_(limit + 1, 0) {
        for (std::uint32_t i = 2; i <= limit; ++i) {
            if (spf_[i] != 0) continue;
            for (u64 j = i; j <= limit; j += i)
                if (spf_[j] == 0) spf_[j] = i;
        }
    }
    std::uint32_t limit() const { return static_cast<std::uint32_t>(spf_.size() - 1); }
    std::uint32_t spf(std::uint32_t d) const { return spf_[d]; }

private:
    std::vector<std::uint32_t> spf_;
};

std::shared_ptr<const Sieve> shared_sieve(std::uint32_t limit) {
    static std::mutex mu;
    static std::shared_ptr<const Sieve> current;
    std::lock_guard lock(mu);
    if (!current || current->limit() < limit) {
        const std::uint32_t grown = current ? std::max<std::uint32_t>(limit, 2 * current->limit()) : limit;
        current = std::make_shared<const Sieve>(std::min<std::uint32_t>(
            std::max<std::uint32_t>(grown, 1024), static_cast<std::uint32_t>(kTablePathMaxC)));
    }
    return current;
}

// Inverse of a modulo m, or 0 if gcd(a, m) != 1 (m >= 2).
u64 inverse_or_zero(u64 a, u64 m) {
    std::int64_t r0 = static_cast<std::int64_t>(m), r1 = static_cast<std::int64_t>(a % m);
    std::int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        const std::int64_t r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        const std::int64_t t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (r0 != 1) return 0;
    return static_cast<u64>(t0 < 0 ? t0 + static_cast<std::int64_t>(m) : t0);
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// Constants shared by every c of one (nu, m, n) evaluation.
struct TermSetup {
    MultiplierSpec nu;
    std::int64_t m24 = 0;  // 24 m~
    std::int64_t n24 = 0;  // 24 n~
    std::vector<std::int8_t> chi_table;  // chi(d) for d mod 8*twist; empty for twist 1

    TermSetup(const MultiplierSpec& spec, std::int64_t m, std::int64_t n) : nu(spec) {
        nu.validate();
        const Rational a24 = alpha(nu).alpha * Rational(24);
        if (!a24.is_integer()) throw DomainError("alpha is not a multiple of 1/24");
        const std::int64_t alpha24 = a24.num().get_si();
        if (std::abs(m) > (std::int64_t{1} << 55) || std::abs(n) > (std::int64_t{1} << 55))
            throw DomainError("|m|, |n| must be below 2^55");
        m24 = 24 * m - alpha24;
        n24 = 24 * n - alpha24;
        if (nu.twist != 1) {
            const std::int64_t period = 8 * nu.twist;
            chi_table.resize(static_cast<std::size_t>(period));
            for (std::int64_t d = 0; d < period; ++d)
                chi_table[static_cast<std::size_t>(d)] = static_cast<std::int8_t>(kronecker(d, nu.twist));
        }
    }

    int chi(u64 d) const {
        if (chi_table.empty()) return 1;
        return chi_table[d % chi_table.size()];
    }

    // Phase of conj(nu(gamma)) in units of 1/24, or -1 if the character vanishes.
    int conj_nu_phase24(u64 a, u64 b, u64 c, u64 d, int psi) const {
        int p = 0;
        switch (nu.base) {
            case MultiplierBase::Eta: p = fast::eta_phase24(a, b, c, d, psi); break;
            case MultiplierBase::Theta: p = fast::theta_phase24(d, psi); break;
            case MultiplierBase::Trivial: break;
        }
        const int x = chi(d);
        if (x == 0) return -1;
        if (x < 0) p = (p + 12) % 24;
        return nu.conjugated ? p : (24 - p) % 24;
    }
};

struct CTables {
    std::vector<std::uint32_t> inv;
    std::vector<std::int8_t> psi;
    std::vector<std::uint8_t> unit;
    std::vector<std::uint32_t> prefix;
};

// Jacobi symbol (a/n) for odd n.
int jacobi32(std::uint32_t a, std::uint32_t n) {
    a %= n;
    int t = 1;
    while (a != 0) {
        const int z = std::countr_zero(a);
        a >>= z;
        if ((z & 1) && ((n & 7) == 3 || (n & 7) == 5)) t = -t;
        if ((a & 3) == 3 && (n & 3) == 3) t = -t;
        std::swap(a, n);
        a %= n;
    }
    return n == 1 ? t : 0;
}

// inv[d] = d^{-1} mod c (0 for non-units), psi[d] = (d/c) for odd c, (c/d) for even c.
// Units are inverted together (one extended gcd per c); psi is completely multiplicative in d,
// so only primes need a Jacobi symbol.
void build_tables(u64 c, const Sieve& sieve, const Barrett& mod_c, bool need_psi, CTables& t) {
    t.inv.assign(c, 0);
    if (need_psi) t.psi.assign(c, 0);
    if (c < 2) return;

    // Coprimality mask from the prime factors of c.
    t.unit.assign(c, 1);
    t.unit[0] = 0;
    for (u64 rest = c; rest > 1;) {
        const std::uint32_t p = sieve.spf(static_cast<std::uint32_t>(rest));
        for (u64 j = p; j < c; j += p) t.unit[j] = 0;
        while (rest % p == 0) rest /= p;
    }

    // Batch inversion: prefix products, a single inverse, then unwind.
    t.prefix.resize(c);
    u64 running = 1;
    for (u64 d = 1; d < c; ++d) {
        if (t.unit[d]) running = mod_c.reduce(running * d);
        t.prefix[d] = static_cast<std::uint32_t>(running);
    }
    u64 inv_running = inverse_or_zero(running, c);
    for (u64 d = c - 1; d >= 1; --d) {
        if (!t.unit[d]) continue;
        const u64 before = d > 1 ? t.prefix[d - 1] : 1;
        t.inv[d] = static_cast<std::uint32_t>(mod_c.reduce(inv_running * before));
        inv_running = mod_c.reduce(inv_running * d);
    }
    if (c == 2) t.inv[1] = 1;

    if (!need_psi) return;
    const bool c_odd = (c & 1) != 0;
    const std::uint32_t c32 = static_cast<std::uint32_t>(c);
    t.psi[1] = 1;
    for (u64 d = 2; d < c; ++d) {
        if (!t.unit[d]) continue;
        const std::uint32_t p = sieve.spf(static_cast<std::uint32_t>(d));
        if (p == d) {
            t.psi[d] = static_cast<std::int8_t>(c_odd ? jacobi32(p, c32) : jacobi32(c32 % p, p));
        } else {
            t.psi[d] = static_cast<std::int8_t>(t.psi[p] * t.psi[d / p]);
        }
    }
}

struct EnumerationStats {
    std::int64_t terms = 0;
    std::int64_t skipped = 0;
};

// Calls visit(d, a, N) for every unit d in [1, c) with a character value != 0, where N in [0, 24c)
// is the numerator of the exact term phase N/(24c) (c >= 2).
template <class Visit>
EnumerationStats enumerate_terms(const TermSetup& s, u64 c, detail::TermPath path, Visit&& visit) {
    EnumerationStats st;
    const u64 modulus = 24 * c;
    const Barrett mod_c(c);
    const Barrett mod_24c(modulus);
    const u64 m24 = static_cast<u64>(floor_mod(s.m24, static_cast<std::int64_t>(modulus)));
    const u64 n24 = static_cast<u64>(floor_mod(s.n24, static_cast<std::int64_t>(modulus)));
    const bool need_psi = s.nu.base != MultiplierBase::Trivial;
    const bool c_odd = (c & 1) != 0;

    auto emit = [&](u64 d, u64 a, int psi) {
        const u64 b = mod_c.exact_quotient(a * d - 1);
        const int p24 = s.conj_nu_phase24(a, b, c, d, psi);
        if (p24 < 0) {
            ++st.skipped;
            return;
        }
        ++st.terms;
        u64 num = c * static_cast<u64>(p24) + mod_24c.reduce(m24 * a) + mod_24c.reduce(n24 * d);
        num = mod_24c.reduce(num);
        visit(d, a, num);
    };

    const bool use_tables =
        path == detail::TermPath::Table ||
        (path == detail::TermPath::Auto && static_cast<std::int64_t>(c) <= kTablePathMaxC);
    if (use_tables) {
        if (static_cast<std::int64_t>(c) > kTablePathMaxC)
            throw DomainError("table path requested above kTablePathMaxC");
        auto sieve = shared_sieve(static_cast<std::uint32_t>(c));
        thread_local CTables tables;
        build_tables(c, *sieve, mod_c, need_psi, tables);
        for (u64 d = 1; d < c; ++d) {
            const u64 a = tables.inv[d];
            if (a == 0) continue;
            emit(d, a, need_psi ? tables.psi[d] : 1);
        }
    } else {
        for (u64 d = 1; d < c; ++d) {
            const u64 a = inverse_or_zero(d, c);
            if (a == 0) continue;
            int psi = 1;
            if (need_psi) {
                psi = c_odd ? kronecker(static_cast<std::int64_t>(d), static_cast<std::int64_t>(c))
                            : kronecker(static_cast<std::int64_t>(c), static_cast<std::int64_t>(d));
            }
            emit(d, a, psi);
        }
    }
    return st;
}

std::complex<double> phase_value(u64 num, u64 c) {
    const u64 modulus = 24 * c;
    const double signed_num = num > modulus / 2 ? -static_cast<double>(modulus - num) : static_cast<double>(num);
    const double angle = 2.0 * std::numbers::pi * (signed_num / static_cast<double>(modulus));
    return {std::cos(angle), std::sin(angle)};
}

// e(k/c) for k in [0, c), by rotation with an exact restart every 32 steps.
void fill_roots(u64 c, std::vector<std::complex<double>>& roots) {
    roots.resize(c);
    const std::complex<double> step = phase_value(24, c);
    for (u64 k = 0; k < c; ++k) roots[k] = (k % 32 == 0) ? phase_value(24 * k, c) : roots[k - 1] * step;
}

// e(N/(24c)) = e(floor(N/24)/c) e((N mod 24)/(24c)).
struct PhaseTable {
    std::vector<std::complex<double>> coarse;
    std::array<std::complex<double>, 24> fine;

    void reset(u64 c) {
        fill_roots(c, coarse);
        for (u64 s = 0; s < 24; ++s) fine[s] = phase_value(s, c);
    }
    std::complex<double> operator()(u64 num) const { return coarse[num / 24] * fine[num % 24]; }
};

void require_admissible(const MultiplierSpec& nu, std::int64_t c) {
    if (c < 1) throw DomainError("Kloosterman modulus c must be >= 1");
    if (c % nu.level != 0)
        throw DomainError("level " + std::to_string(nu.level) + " does not divide c = " + std::to_string(c));
}

KloostermanValue evaluate_fast(const TermSetup& s, std::int64_t c, detail::TermPath path, bool track_den) {
    KloostermanValue out;
    if (c == 1 || c > kFastPathMaxC) {
        KloostermanQuery q;
        q.nu = s.nu;
        q.c = c;
        // m~, n~ are recovered from the setup: 24 m~ = 24 m - 24 alpha with integer m.
        const std::int64_t alpha24 = floor_mod(-s.m24, 24);
        q.m = (s.m24 + alpha24) / 24;
        q.n = (s.n24 + alpha24) / 24;
        return kloosterman_sum_exact(q);
    }
    const u64 uc = static_cast<u64>(c);
    const u64 modulus = 24 * uc;
    CompensatedSum<std::complex<double>> acc;
    u64 min_gcd = modulus;
    thread_local PhaseTable table;
    table.reset(uc);
    const auto st = enumerate_terms(s, uc, path, [&](u64, u64, u64 num) {
        acc.add(table(num));
        if (track_den) min_gcd = std::min<u64>(min_gcd, std::gcd(num, modulus));
    });
    out.value = acc.value();
    out.term_count = st.terms;
    out.skipped_zero_character = st.skipped;
    if (track_den && st.terms > 0) out.max_phase_den = static_cast<unsigned long>(modulus / min_gcd);
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------------------------

std::vector<KloostermanTerm> kloosterman_terms(const KloostermanQuery& q) {
    q.nu.validate();
    require_admissible(q.nu, q.c);
    const AlphaData al = alpha(q.nu);
    const Rational mt = al.tilde(Integer(static_cast<long>(q.m)));
    const Rational nt = al.tilde(Integer(static_cast<long>(q.n)));
    const Integer c(static_cast<long>(q.c));
    std::vector<KloostermanTerm> terms;
    for (std::int64_t d = 0; d < q.c; ++d) {
        if (std::gcd(d, q.c) != 1) continue;
        if (q.nu.character(d) == 0) continue;
        const Integer dz(static_cast<long>(d));
        const Integer a = mod_inverse(dz, c);
        const Integer b = (a * dz - 1) / c;
        const GammaElement g(a, b, c, dz);
        const RationalPhase p = eval(q.nu, g).conj() * RationalPhase((mt * Rational(a) + nt * Rational(dz)) / Rational(c));
        terms.push_back({a.get_si(), d, p});
    }
    return terms;
}

KloostermanValue kloosterman_sum_exact(const KloostermanQuery& q) {
    KloostermanValue out;
    CompensatedSum<std::complex<double>> acc;
    const auto terms = kloosterman_terms(q);
    for (const auto& t : terms) {
        acc.add(t.phase.value());
        const Integer den = t.phase.turns().den();
        if (den > out.max_phase_den) out.max_phase_den = den;
    }
    std::int64_t units = 0;
    for (std::int64_t d = 0; d < q.c; ++d)
        if (std::gcd(d, q.c) == 1) ++units;
    out.value = acc.value();
    out.term_count = static_cast<std::int64_t>(terms.size());
    out.skipped_zero_character = units - out.term_count;
    return out;
}

namespace detail {
KloostermanValue kloosterman_sum_with(const KloostermanQuery& q, TermPath path) {
    require_admissible(q.nu, q.c);
    const TermSetup setup(q.nu, q.m, q.n);
    return evaluate_fast(setup, q.c, path, true);
}
}  // namespace detail

KloostermanValue kloosterman_sum(const KloostermanQuery& q) {
    return detail::kloosterman_sum_with(q, detail::TermPath::Auto);
}

std::vector<std::complex<double>> kloosterman_sums(const MultiplierSpec& nu, std::int64_t m,
                                                   std::span<const std::int64_t> ns, std::int64_t c) {
    require_admissible(nu, c);
    std::vector<std::complex<double>> out(ns.size());
    if (c == 1 || c > kTablePathMaxC) {
        for (std::size_t j = 0; j < ns.size(); ++j)
            out[j] = kloosterman_sum({m, ns[j], nu, c}).value;
        return out;
    }
    const TermSetup setup(nu, m, 0);
    const u64 uc = static_cast<u64>(c);
    const Barrett mod_c(uc);
    // e(j/c) for j in [0, c); term(n) = e(N0/(24c)) e(n d / c).
    PhaseTable table;
    table.reset(uc);
    const auto& roots = table.coarse;
    std::vector<u64> n_mod(ns.size());
    for (std::size_t j = 0; j < ns.size(); ++j)
        n_mod[j] = static_cast<u64>(floor_mod(ns[j], c));
    std::vector<CompensatedSum<std::complex<double>>> acc(ns.size());
    enumerate_terms(setup, uc, detail::TermPath::Auto, [&](u64 d, u64, u64 num) {
        const std::complex<double> base = table(num);
        for (std::size_t j = 0; j < ns.size(); ++j)
            acc[j].add(base * roots[mod_c.reduce(n_mod[j] * d)]);
    });
    for (std::size_t j = 0; j < ns.size(); ++j) out[j] = acc[j].value();
    return out;
}

// ---------------------------------------------------------------------------------------------

std::vector<KloostermanValue> sweep(const MultiplierSpec& nu, std::int64_t m, std::int64_t n,
                                    std::span<const std::int64_t> cs, const SweepOptions& opts) {
    for (std::int64_t c : cs) require_admissible(nu, c);
    const TermSetup setup(nu, m, n);
    const std::string fp = nu.fingerprint();
    std::vector<KloostermanValue> out(cs.size());
    const std::size_t block = static_cast<std::size_t>(std::max<std::int64_t>(opts.block, 1));

    for (std::size_t start = 0; start < cs.size(); start += block) {
        const std::size_t stop = std::min(cs.size(), start + block);
        std::vector<std::size_t> todo;
        for (std::size_t i = start; i < stop; ++i) {
            if (opts.cache) {
                if (auto hit = opts.cache->find(fp, m, n, cs[i])) {
                    out[i].value = hit->value;
                    out[i].term_count = hit->term_count;
                    continue;
                }
            }
            todo.push_back(i);
        }
        auto work = [&](std::size_t k) {
            const std::size_t i = todo[k];
            out[i] = evaluate_fast(setup, cs[i], detail::TermPath::Auto, false);
        };
        const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(todo.size())));
        if (threads <= 1) {
            for (std::size_t k = 0; k < todo.size(); ++k) work(k);
        } else {
            // Largest c first balances the load; results land in fixed slots either way.
            std::atomic<std::size_t> next{0};
            std::vector<std::jthread> pool;
            pool.reserve(threads);
            for (unsigned t = 0; t < threads; ++t) {
                pool.emplace_back([&] {
                    for (std::size_t k; (k = next.fetch_add(1)) < todo.size();) work(todo.size() - 1 - k);
                });
            }
        }
        if (opts.cache) {
            for (std::size_t i : todo) opts.cache->append(fp, m, n, cs[i], out[i].value, out[i].term_count);
            opts.cache->flush();
        }
    }
    return out;
}

namespace {
std::vector<std::int64_t> admissible_range(std::int64_t level, std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> cs;
    if (hi < lo) return cs;
    std::int64_t first = std::max<std::int64_t>(lo, level);
    first = ((first + level - 1) / level) * level;
    for (std::int64_t c = first; c <= hi; c += level) cs.push_back(c);
    return cs;
}
}  // namespace

PartialSumSeries partial_sums(const MultiplierSpec& nu, std::int64_t m, std::int64_t n, std::int64_t x_max,
                              Sampling sampling, const SweepOptions& opts) {
    nu.validate();
    if (sampling.kind == Sampling::Kind::Grid && sampling.step < 1)
        throw DomainError("grid sampling step must be >= 1");
    PartialSumSeries series{nu, m, n, {}};
    const auto cs = admissible_range(nu.level, nu.level, x_max);
    if (cs.empty()) return series;
    const auto values = sweep(nu, m, n, cs, opts);

    auto is_sample = [&](std::size_t i) {
        const std::int64_t c = cs[i];
        switch (sampling.kind) {
            case Sampling::Kind::All: return true;
            case Sampling::Kind::Dyadic: {
                const std::int64_t q = c / nu.level;
                return (q & (q - 1)) == 0;
            }
            case Sampling::Kind::Grid: {
                // c is the largest admissible value <= k*step for some k*step <= x_max.
                const std::int64_t next = i + 1 < cs.size() ? cs[i + 1] : x_max + 1;
                const std::int64_t hi = std::min(next - 1, x_max);
                return hi / sampling.step >= (c + sampling.step - 1) / sampling.step;
            }
        }
        return false;
    };

    CompensatedSum<std::complex<double>> running;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        running.add(values[i].value / static_cast<double>(cs[i]));
        if (is_sample(i)) series.rows.push_back({cs[i], values[i].value, running.value()});
    }
    return series;
}

WindowResult windowed_average(const MultiplierSpec& nu, std::int64_t m, std::int64_t n, double y, double x,
                              const SweepOptions& opts) {
    nu.validate();
    if (!(y > 0.0) || !(x > y)) throw DomainError("window requires 0 < y < x");
    if (x - y < std::pow(x, 2.0 / 3.0)) throw DomainError("window too narrow: need x - y >= x^(2/3)");
    WindowResult r;
    const auto cs = admissible_range(nu.level, static_cast<std::int64_t>(std::ceil(y)),
                                     static_cast<std::int64_t>(std::floor(x)));
    const auto values = sweep(nu, m, n, cs, opts);
    CompensatedSum<double> acc;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const double mag = std::abs(values[i].value);
        if (mag > static_cast<double>(values[i].term_count) * (1.0 + 1e-12) + 1e-12) ++r.envelope_violations;
        acc.add(mag / static_cast<double>(cs[i]));
    }
    r.sum_abs = acc.value();
    r.count = static_cast<std::int64_t>(cs.size());
    r.ratio = r.sum_abs / (std::sqrt(x) - std::sqrt(y));
    return r;
}

HalfOrder parse_half_order(std::string_view text) {
    if (text == "1/2" || text == "0.5") return HalfOrder::OneHalf;
    if (text == "3/2" || text == "1.5") return HalfOrder::ThreeHalves;
    throw DomainError("Bessel order must be 1/2 or 3/2, got '" + std::string(text) + "'");
}

BesselKind parse_bessel_kind(std::string_view text) {
    if (text == "I" || text == "i") return BesselKind::I;
    if (text == "J" || text == "j") return BesselKind::J;
    throw DomainError("Bessel kind must be I or J, got '" + std::string(text) + "'");
}

TailResult bessel_tail(const MultiplierSpec& nu, std::int64_t m, std::int64_t n, double alpha_scale,
                       BesselKind kind, HalfOrder beta, std::int64_t c_max, const SweepOptions& opts) {
    nu.validate();
    if (!(alpha_scale > 0.0)) throw DomainError("tail threshold alpha must be positive");
    const AlphaData al = alpha(nu);
    const Rational prod = al.tilde(Integer(static_cast<long>(m))) * al.tilde(Integer(static_cast<long>(n)));
    const double root = std::sqrt(std::fabs(prod.to_double()));
    const double threshold = alpha_scale * root;
    TailResult r;
    const std::int64_t lo = static_cast<std::int64_t>(std::floor(threshold)) + 1;
    const auto cs = admissible_range(nu.level, lo, c_max);
    if (cs.empty()) return r;
    r.first_c = cs.front();
    r.count = static_cast<std::int64_t>(cs.size());
    const auto values = sweep(nu, m, n, cs, opts);
    const double order = beta == HalfOrder::OneHalf ? 0.5 : 1.5;
    CompensatedSum<std::complex<double>> total, decade;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const double c = static_cast<double>(cs[i]);
        const double u = 4.0 * std::numbers::pi * root / c;
        double w = 0.0;
        if (u > 0.0) w = kind == BesselKind::J ? bessel_j(order, u) : bessel_i(order, u);
        const std::complex<double> term = values[i].value / c * w;
        total.add(term);
        if (10 * cs[i] > c_max) decade.add(term);
    }
    r.value = total.value();
    r.last_decade = decade.value();
    return r;
}

GrowthFit growth_fit(const PartialSumSeries& series, std::int64_t x_min) {
    std::vector<double> xs, ys;
    for (const auto& row : series.rows) {
        if (row.c < x_min) continue;
        const double mag = std::abs(row.running);
        if (!(mag > 0.0)) throw DomainError("growth_fit: running sum vanishes at c = " + std::to_string(row.c));
        xs.push_back(std::log(static_cast<double>(row.c)));
        ys.push_back(std::log(mag));
    }
    if (xs.size() < 4) throw DomainError("growth_fit: need at least 4 sample points >= x_min");
    const double k = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    GrowthFit fit;
    fit.points = xs.size();
    fit.exponent = sxy / sxx;
    const double ss_res = syy - fit.exponent * sxy;
    fit.r2 = syy > 0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

}  // namespace hkloost
