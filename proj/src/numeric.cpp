#include "farey/numeric.hpp"

#include <boost/math/special_functions/bernoulli.hpp>

#include <cmath>
#include <limits>
#include <sstream>

namespace farey {

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q, r;
    boost::multiprecision::divide_qr(a, b, q, r);
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

Integer isqrt(const Integer& n) {
    if (n < 0) throw std::domain_error("isqrt of negative integer");
    return boost::multiprecision::sqrt(n);
}

bool is_perfect_square(const Integer& n) {
    if (n < 0) return false;
    Integer s = isqrt(n);
    return s * s == n;
}

namespace {

void split_small(std::uint64_t m, Integer& s, Integer& r) {
    std::uint64_t sq = 1;
    std::uint64_t rest = 1;
    auto strip = [&](std::uint64_t p) {
        while (m % (p * p) == 0) {
            m /= p * p;
            sq *= p;
        }
        if (m % p == 0) {
            m /= p;
            rest *= p;
        }
    };
    strip(2);
    for (std::uint64_t p = 3; p * p * p <= m; p += 2) strip(p);
    // m now has at most two prime factors, all larger than the last divisor tried
    s = sq;
    r = rest;
    Integer mm = m;
    Integer root = isqrt(mm);
    if (root * root == mm && m > 1) {
        s *= root;
    } else {
        r *= mm;
    }
}

}  // namespace

void split_square(const Integer& n, Integer& s, Integer& r) {
    if (n <= 0) throw std::domain_error("split_square expects a positive integer");
    if (n <= std::numeric_limits<std::uint64_t>::max()) {
        split_small(static_cast<std::uint64_t>(n), s, r);
        return;
    }
    Integer m = n;
    s = 1;
    r = 1;
    constexpr unsigned limit = 1u << 20;
    for (unsigned p = 2; p < limit; p = (p == 2 ? 3 : p + 2)) {
        Integer pp = Integer(p) * p;
        if (pp * p > m) break;
        while (m % pp == 0) {
            m /= pp;
            s *= p;
        }
        if (m % p == 0) {
            m /= p;
            r *= p;
        }
        if (m <= std::numeric_limits<std::uint64_t>::max()) {
            Integer s2, r2;
            split_small(static_cast<std::uint64_t>(m), s2, r2);
            s *= s2;
            r *= r2;
            return;
        }
    }
    Integer root = isqrt(m);
    if (root * root == m) {
        s *= root;
    } else {
        r *= m;
    }
}

Rational to_rational(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
    if (x == 0.0) return Rational(0);
    int e = 0;
    double mant = std::frexp(x, &e);
    // mant * 2^53 is an exact integer
    auto m = static_cast<long long>(std::ldexp(mant, 53));
    e -= 53;
    Integer num = m;
    Integer den = 1;
    if (e >= 0) {
        num <<= e;
    } else {
        den <<= -e;
    }
    return Rational(num, den);
}

Integer floor(const Rational& r) {
    return floor_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

HighReal to_high(const Integer& v) { return HighReal(v); }

HighReal to_high(const Rational& v) {
    return HighReal(boost::multiprecision::numerator(v)) / HighReal(boost::multiprecision::denominator(v));
}

double to_double(const Rational& r) { return static_cast<double>(to_high(r)); }

std::string to_decimal(const HighReal& x, int digits) {
    std::ostringstream os;
    os << std::fixed;
    os.precision(digits);
    os << x;
    return os.str();
}

double hurwitz_zeta(double p, double q) {
    if (!(p > 1.0) || !(q > 0.0)) throw std::domain_error("hurwitz_zeta needs p > 1 and q > 0");
    constexpr int shift = 16;
    long double sum = 0.0L;
    for (int k = 0; k < shift; ++k) sum += std::pow(static_cast<long double>(q) + k, -static_cast<long double>(p));
    long double x = static_cast<long double>(q) + shift;
    long double lp = p;
    sum += std::pow(x, 1.0L - lp) / (lp - 1.0L) + std::pow(x, -lp) / 2.0L;
    // Euler-Maclaurin corrections
    long double rising = lp;  // p (p+1) ... (p+2j-2)
    long double fact = 2.0L;  // (2j)!
    for (int j = 1; j <= 8; ++j) {
        long double b = boost::math::bernoulli_b2n<long double>(j);
        sum += b / fact * rising * std::pow(x, -lp - 2 * j + 1);
        rising *= (lp + 2 * j - 1) * (lp + 2 * j);
        fact *= (2.0L * j + 1) * (2.0L * j + 2);
    }
    return static_cast<double>(sum);
}

}  // namespace farey
