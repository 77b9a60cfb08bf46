#pragma once

#include <cmath>
#include <complex>

namespace hkloost {

/// Neumaier-compensated accumulator. Order of additions is the caller's responsibility.
template <class T>
class CompensatedSum;

template <>
class CompensatedSum<double> {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

template <>
class CompensatedSum<std::complex<double>> {
public:
    void add(std::complex<double> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum<double> re_;
    CompensatedSum<double> im_;
};

}  // namespace hkloost
