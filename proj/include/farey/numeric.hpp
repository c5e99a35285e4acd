#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace farey {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
                                               boost::multiprecision::et_off>;

// 120 significant bits; expression templates off so auto works as expected.
using HighReal = boost::multiprecision::number<
    boost::multiprecision::backends::cpp_bin_float<120, boost::multiprecision::backends::digit_base_2>,
    boost::multiprecision::et_off>;

inline int sign(const Integer& v) { return v.sign(); }
inline int sign(const Rational& v) { return v.sign(); }

Integer floor_div(const Integer& a, const Integer& b);
Integer isqrt(const Integer& n);
bool is_perfect_square(const Integer& n);

// Splits n > 0 as s^2 * r. r is square-free whenever n < 2^60; above that,
// only squares of primes below 2^20 and an exact square cofactor are removed.
void split_square(const Integer& n, Integer& s, Integer& r);

// Exact rational value of a finite double.
Rational to_rational(double x);

Integer floor(const Rational& r);

HighReal to_high(const Integer& v);
HighReal to_high(const Rational& v);

double to_double(const Rational& r);

// Decimal rendering with the given number of significant digits.
std::string to_decimal(const HighReal& x, int digits);

// Compensated summation.
template <class T>
class KahanSum {
public:
    void add(const T& x) {
        T y = x - c_;
        T t = sum_ + y;
        c_ = (t - sum_) - y;
        sum_ = t;
    }
    const T& value() const { return sum_; }

private:
    T sum_{0};
    T c_{0};
};

// Hurwitz zeta sum_{k>=0} (q+k)^{-p} for p > 1, q > 0.
double hurwitz_zeta(double p, double q);

}  // namespace farey
