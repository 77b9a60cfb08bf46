#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "hkloost/errors.hpp"

namespace hkloost {

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;  // estimated absolute error
    int intervals = 0;
};

struct QuadOptions {
    double abs_tol = 1e-11;
    double rel_tol = 1e-13;
    int max_intervals = 20000;
};

namespace quad_detail {

// 15-point Kronrod nodes (non-negative half) and weights; odd indices are the 7 Gauss nodes.
inline constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double v) { return std::fabs(v); }
inline double magnitude(std::complex<double> v) { return std::abs(v); }

template <class T>
struct Segment {
    double lo, hi;
    T value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class T, class F>
Segment<T> gk15(const F& f, double lo, double hi) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    const T fc = f(mid);
    T kron = fc * kKronrod[7];
    T gauss = fc * kGauss[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kNodes[i];
        const T sum = f(mid - dx) + f(mid + dx);
        kron += sum * kKronrod[i];
        if (i % 2 == 1) gauss += sum * kGauss[i / 2];
    }
    return {lo, hi, kron * half, magnitude((kron - gauss) * half)};
}

}  // namespace quad_detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [breaks.front(), breaks.back()],
/// starting from the given breakpoints. Throws RegimeError if the tolerance is not reached.
template <class F>
auto integrate(const F& f, std::span<const double> breaks, const QuadOptions& opt = {})
    -> QuadResult<std::invoke_result_t<F, double>> {
    using T = std::invoke_result_t<F, double>;
    using quad_detail::Segment;
    QuadResult<T> out;
    if (breaks.size() < 2) return out;
    std::priority_queue<Segment<T>> heap;
    T value{};
    double error = 0.0;
    auto push = [&](const Segment<T>& seg) {
        heap.push(seg);
        value += seg.value;
        error += seg.error;
    };
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] > breaks[i]) push(quad_detail::gk15<T>(f, breaks[i], breaks[i + 1]));
    }
    while (!heap.empty() && error > std::max(opt.abs_tol, opt.rel_tol * quad_detail::magnitude(value))) {
        if (static_cast<int>(heap.size()) >= opt.max_intervals)
            throw RegimeError("quadrature did not converge: error estimate " + std::to_string(error));
        const Segment<T> worst = heap.top();
        heap.pop();
        value -= worst.value;
        error -= worst.error;
        const double mid = 0.5 * (worst.lo + worst.hi);
        push(quad_detail::gk15<T>(f, worst.lo, mid));
        push(quad_detail::gk15<T>(f, mid, worst.hi));
    }
    // Final sum in a fixed order (by lower endpoint) so results are reproducible.
    std::vector<Segment<T>> segs;
    segs.reserve(heap.size());
    while (!heap.empty()) {
        segs.push_back(heap.top());
        heap.pop();
    }
    std::sort(segs.begin(), segs.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
    for (const auto& seg : segs) {
        out.value += seg.value;
        out.error += seg.error;
    }
    out.intervals = static_cast<int>(segs.size());
    return out;
}

template <class F>
auto integrate(const F& f, double lo, double hi, const QuadOptions& opt = {}) {
    const std::array<double, 2> b = {lo, hi};
    return integrate(f, std::span<const double>(b), opt);
}

}  // namespace hkloost
