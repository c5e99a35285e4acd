#include "farey/surd.hpp"

#include "farey/errors.hpp"

#include <boost/integer/common_factor_rt.hpp>

namespace farey {

namespace {

Integer gcd3(const Integer& a, const Integer& b, const Integer& c) {
    Integer g = boost::multiprecision::gcd(a, b);
    return boost::multiprecision::gcd(g, c);
}

}  // namespace

int sign_of(const Integer& A, const Integer& B, const Integer& d) {
    const int sa = A.sign();
    const int sb = B.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    const int cmp = (A * A - B * B * d).sign();
    if (cmp > 0) return sa;
    if (cmp < 0) return sb;
    return 0;
}

int sign_of(const Integer& P, const Integer& Q, const Integer& d1, const Integer& R, const Integer& d2) {
    const int sx = sign_of(P, Q, d1);
    const int sy = R.sign();
    if (sy == 0) return sx;
    if (sx == 0 || sx == sy) return sy;
    // |X| against |Y| through X^2 - Y^2 = P^2 + Q^2 d1 - R^2 d2 + 2PQ sqrt(d1)
    const int s = sign_of(P * P + Q * Q * d1 - R * R * d2, 2 * P * Q, d1);
    if (s > 0) return sx;
    if (s < 0) return sy;
    return 0;
}

QuadIrrational::QuadIrrational(Integer a, Integer b, Integer c, Integer d) {
    if (d <= 1) throw InvalidArgument("radicand must exceed 1");
    Integer s, r;
    split_square(d, s, r);
    if (r == 1) throw InvalidArgument("radicand is a perfect square, value is rational");
    a_ = std::move(a);
    b_ = b * s;
    c_ = std::move(c);
    d_ = std::move(r);
    normalize();
}

QuadIrrational QuadIrrational::with_reduced_radicand(Integer a, Integer b, Integer c, Integer d) {
    QuadIrrational x;
    x.a_ = std::move(a);
    x.b_ = std::move(b);
    x.c_ = std::move(c);
    x.d_ = std::move(d);
    x.normalize();
    return x;
}

void QuadIrrational::normalize() {
    if (c_ == 0) throw PoleError("zero denominator");
    if (b_ == 0) throw InvalidArgument("surd coefficient of the radical is zero");
    if (c_ < 0) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
    }
    Integer g = gcd3(a_, b_, c_);
    if (g != 1) {
        a_ /= g;
        b_ /= g;
        c_ /= g;
    }
}

QuadIrrational QuadIrrational::conjugate() const { return with_reduced_radicand(a_, -b_, c_, d_); }

int QuadIrrational::sign() const { return sign_of(a_, b_, d_); }

Integer QuadIrrational::floor() const {
    Integer s = isqrt(b_ * b_ * d_);
    Integer fl = b_ > 0 ? a_ + s : a_ - s - 1;
    return floor_div(fl, c_);
}

bool QuadIrrational::is_reduced() const {
    return sign() > 0 && compare(Integer(1)) < 0 && conjugate().compare(Integer(-1)) < 0;
}

int QuadIrrational::compare(const Rational& r) const {
    const Integer& n = boost::multiprecision::numerator(r);
    const Integer& m = boost::multiprecision::denominator(r);
    return sign_of(a_ * m - n * c_, b_ * m, d_);
}

HighReal QuadIrrational::to_high() const {
    HighReal root = boost::multiprecision::sqrt(HighReal(d_));
    HighReal A(a_), B(b_);
    HighReal num;
    if (a_.sign() != 0 && a_.sign() != b_.sign()) {
        // rationalize to avoid cancellation
        num = HighReal(a_ * a_ - b_ * b_ * d_) / (A - B * root);
    } else {
        num = A + B * root;
    }
    return num / HighReal(c_);
}

std::string QuadIrrational::to_decimal(int digits) const { return farey::to_decimal(to_high(), digits); }

std::string QuadIrrational::to_string() const {
    return "(" + a_.str() + (b_ < 0 ? " - " : " + ") + boost::multiprecision::abs(b_).str() + "*sqrt(" + d_.str() +
           "))/" + c_.str();
}

int compare(const QuadIrrational& x, const QuadIrrational& y) {
    if (x.d() == y.d()) {
        return sign_of(x.a() * y.c() - y.a() * x.c(), x.b() * y.c() - y.b() * x.c(), x.d());
    }
    return sign_of(x.a() * y.c() - y.a() * x.c(), x.b() * y.c(), x.d(), -y.b() * x.c(), y.d());
}

QuadIrrational moebius(const QuadIrrational& x, const IntMatrix2& m) {
    // numerator and denominator as (A + B sqrt d)/c and (C + D sqrt d)/c
    Integer A = m.m11 * x.a() + m.m12 * x.c();
    Integer B = m.m11 * x.b();
    Integer C = m.m21 * x.a() + m.m22 * x.c();
    Integer D = m.m21 * x.b();
    if (C == 0 && D == 0) throw PoleError("Moebius denominator vanishes");
    Integer den = C * C - D * D * x.d();
    if (den == 0) throw PoleError("Moebius denominator vanishes");
    Integer num_a = A * C - B * D * x.d();
    Integer num_b = B * C - A * D;
    if (num_b == 0) throw InvalidArgument("singular matrix maps the surd to a rational");
    return QuadIrrational::with_reduced_radicand(std::move(num_a), std::move(num_b), std::move(den), x.d());
}

QuadNumber::QuadNumber(Integer a, Integer b, Integer c, Integer d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    normalize();
}

QuadNumber::QuadNumber(const QuadIrrational& x) : a_(x.a()), b_(x.b()), c_(x.c()), d_(x.d()) {}

QuadNumber::QuadNumber(const Rational& r, const Integer& d)
    : a_(boost::multiprecision::numerator(r)), b_(0), c_(boost::multiprecision::denominator(r)), d_(d) {}

void QuadNumber::normalize() {
    if (c_ == 0) throw PoleError("zero denominator");
    if (c_ < 0) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
    }
    Integer g = gcd3(a_, b_, c_);
    if (g > 1) {
        a_ /= g;
        b_ /= g;
        c_ /= g;
    }
}

namespace {

const Integer& common_radicand(const QuadNumber& x, const QuadNumber& y) {
    if (x.d() == y.d() || y.b() == 0) return x.d();
    if (x.b() == 0) return y.d();
    throw InvalidArgument("quadratic numbers from different fields");
}

}  // namespace

QuadNumber operator+(const QuadNumber& x, const QuadNumber& y) {
    const Integer& d = common_radicand(x, y);
    return QuadNumber(x.a() * y.c() + y.a() * x.c(), x.b() * y.c() + y.b() * x.c(), x.c() * y.c(), d);
}

QuadNumber operator*(const QuadNumber& x, const QuadNumber& y) {
    const Integer& d = common_radicand(x, y);
    return QuadNumber(x.a() * y.a() + x.b() * y.b() * d, x.a() * y.b() + x.b() * y.a(), x.c() * y.c(), d);
}

QuadNumber operator/(const QuadNumber& x, const QuadNumber& y) {
    const Integer& d = common_radicand(x, y);
    Integer norm = y.a() * y.a() - y.b() * y.b() * d;
    if (norm == 0) throw PoleError("division by zero");
    Integer a = (x.a() * y.a() - x.b() * y.b() * d) * y.c();
    Integer b = (x.b() * y.a() - x.a() * y.b()) * y.c();
    return QuadNumber(std::move(a), std::move(b), x.c() * norm, d);
}

PeriodicCF::PeriodicCF(std::vector<Digit> pre, CFWord per) : preperiod(std::move(pre)), period(std::move(per)) {
    for (Digit d : preperiod) {
        if (d == 0) throw InvalidArgument("continued fraction digits must be positive");
    }
    if (!period.is_primitive()) throw InvalidArgument("period must not be a proper power");
}

std::string PeriodicCF::to_string() const {
    std::string out = "[";
    for (Digit d : preperiod) out += std::to_string(d) + ",";
    return out + "(" + period.to_string() + ")]";
}

QuadIrrational purely_periodic_value(const CFWord& period) {
    auto m = convergent_matrix(period);
    // q_{n-1} x^2 + (q_n - p_{n-1}) x - p_n = 0, discriminant t^2 - 4(-1)^n
    Integer t = m.trace();
    Integer disc = t * t + (period.size() % 2 == 0 ? -4 : 4);
    return QuadIrrational(m.p_prev - m.q_n, 1, 2 * m.q_prev, disc);
}

QuadIrrational from_periodic(const PeriodicCF& pcf) {
    QuadIrrational x = purely_periodic_value(pcf.period);
    if (pcf.preperiod.empty()) return x;
    // [b_1, ..., b_m + x] = (p_m + x p_{m-1}) / (q_m + x q_{m-1})
    auto m = convergent_matrix(pcf.preperiod);
    return moebius(x, IntMatrix2{m.p_prev, m.p_n, m.q_prev, m.q_n});
}

QuadIrrational gauss_step(const QuadIrrational& x) {
    // 1/x = c (a - b sqrt d) / (a^2 - b^2 d)
    QuadIrrational r = moebius(x, IntMatrix2{0, 1, 1, 0});
    Integer k = r.floor();
    return QuadIrrational::with_reduced_radicand(r.a() - k * r.c(), r.b(), r.c(), r.d());
}

PeriodicCF to_periodic(const QuadIrrational& x) {
    if (x.sign() <= 0 || x.compare(Integer(1)) > 0) throw NotInRange("surd outside (0,1]");
    std::vector<Digit> pre;
    QuadIrrational y = x;
    auto next_digit = [](const QuadIrrational& v) {
        Integer k = moebius(v, IntMatrix2{0, 1, 1, 0}).floor();
        return static_cast<Digit>(k);
    };
    while (!y.is_reduced()) {
        pre.push_back(next_digit(y));
        y = gauss_step(y);
    }
    std::vector<Digit> per;
    QuadIrrational z = y;
    do {
        per.push_back(next_digit(z));
        z = gauss_step(z);
    } while (!(z == y));
    return PeriodicCF(std::move(pre), CFWord(std::move(per)));
}

}  // namespace farey
