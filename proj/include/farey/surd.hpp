#pragma once

#include "farey/cf.hpp"
#include "farey/numeric.hpp"

#include <compare>
#include <string>
#include <vector>

namespace farey {

// Exact real quadratic irrational (a + b*sqrt(d)) / c with b != 0, c > 0,
// gcd(a, b, c) = 1 and d > 1 with square factors removed.
class QuadIrrational {
public:
    QuadIrrational(Integer a, Integer b, Integer c, Integer d);

    // Skips square extraction; d must already be in reduced form.
    static QuadIrrational with_reduced_radicand(Integer a, Integer b, Integer c, Integer d);

    const Integer& a() const { return a_; }
    const Integer& b() const { return b_; }
    const Integer& c() const { return c_; }
    const Integer& d() const { return d_; }

    QuadIrrational conjugate() const;
    int sign() const;
    Integer floor() const;
    // 0 < x < 1 and conjugate < -1.
    bool is_reduced() const;

    int compare(const Rational& r) const;
    int compare(const Integer& n) const { return compare(Rational(n)); }

    HighReal to_high() const;
    double to_double() const { return static_cast<double>(to_high()); }
    std::string to_decimal(int digits = 30) const;
    std::string to_string() const;

    friend bool operator==(const QuadIrrational&, const QuadIrrational&) = default;

private:
    QuadIrrational() = default;
    void normalize();

    Integer a_, b_, c_, d_;
};

// Exact ordering by value, valid across different radicands.
int compare(const QuadIrrational& x, const QuadIrrational& y);
inline bool less(const QuadIrrational& x, const QuadIrrational& y) { return compare(x, y) < 0; }

// (m11 x + m12) / (m21 x + m22).
QuadIrrational moebius(const QuadIrrational& x, const IntMatrix2& m);

// Sign of A + B sqrt(d), d > 0 not a perfect square.
int sign_of(const Integer& A, const Integer& B, const Integer& d);
// Sign of P + Q sqrt(d1) + R sqrt(d2).
int sign_of(const Integer& P, const Integer& Q, const Integer& d1, const Integer& R, const Integer& d2);

// Element (a + b*sqrt(d)) / c of a fixed real quadratic field, b may be zero.
class QuadNumber {
public:
    QuadNumber(Integer a, Integer b, Integer c, Integer d);
    QuadNumber(const QuadIrrational& x);  // NOLINT(google-explicit-constructor)
    QuadNumber(const Rational& r, const Integer& d);

    int sign() const { return sign_of(a_, b_, d_); }
    QuadNumber abs() const { return sign() < 0 ? -*this : *this; }
    QuadNumber operator-() const { return QuadNumber(-a_, -b_, c_, d_); }
    friend QuadNumber operator+(const QuadNumber& x, const QuadNumber& y);
    friend QuadNumber operator-(const QuadNumber& x, const QuadNumber& y) { return x + (-y); }
    friend QuadNumber operator*(const QuadNumber& x, const QuadNumber& y);
    friend QuadNumber operator/(const QuadNumber& x, const QuadNumber& y);
    int compare(const QuadNumber& y) const { return (*this - y).sign(); }

    const Integer& a() const { return a_; }
    const Integer& b() const { return b_; }
    const Integer& c() const { return c_; }
    const Integer& d() const { return d_; }

private:
    void normalize();
    Integer a_, b_, c_, d_;
};

struct PeriodicCF {
    std::vector<Digit> preperiod;
    CFWord period;

    PeriodicCF(std::vector<Digit> pre, CFWord per);
    explicit PeriodicCF(CFWord per) : PeriodicCF({}, std::move(per)) {}
    std::string to_string() const;
    friend bool operator==(const PeriodicCF&, const PeriodicCF&) = default;
};

QuadIrrational from_periodic(const PeriodicCF& pcf);
// Value of the purely periodic [period repeated].
QuadIrrational purely_periodic_value(const CFWord& period);
PeriodicCF to_periodic(const QuadIrrational& x);

// One step of the Gauss map on a surd in (0,1): 1/x - floor(1/x).
QuadIrrational gauss_step(const QuadIrrational& x);

}  // namespace farey
