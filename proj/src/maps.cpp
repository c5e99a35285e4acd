#include "farey/maps.hpp"

#include "farey/errors.hpp"

#include <cmath>
#include <numbers>

namespace farey {

namespace {

Rational moebius_rational(const Rational& r, const IntMatrix2& m) {
    Rational den = Rational(m.m21) * r + Rational(m.m22);
    if (den == 0) throw PoleError("Moebius denominator vanishes");
    return (Rational(m.m11) * r + Rational(m.m12)) / den;
}

const Rational kHalf(1, 2);

void require_unit(const Exact& x, const char* what) {
    if (compare(x, Rational(0)) < 0 || compare(x, Rational(1)) > 0) {
        throw NotInRange(std::string(what) + " outside [0,1]");
    }
}

bool is_zero(const Exact& x) {
    const auto* r = std::get_if<Rational>(&x);
    return r && *r == 0;
}

}  // namespace

int compare(const Exact& x, const Rational& r) {
    return std::visit(
        [&](const auto& v) -> int {
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Rational>) {
                return v < r ? -1 : (v > r ? 1 : 0);
            } else {
                return v.compare(r);
            }
        },
        x);
}

Integer floor(const Exact& x) {
    return std::visit(
        [](const auto& v) -> Integer {
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Rational>) {
                return farey::floor(v);
            } else {
                return v.floor();
            }
        },
        x);
}

Exact moebius(const Exact& x, const IntMatrix2& m) {
    if (const auto* r = std::get_if<Rational>(&x)) return moebius_rational(*r, m);
    return farey::moebius(std::get<QuadIrrational>(x), m);
}

HighReal to_high(const Exact& x) {
    return std::visit(
        [](const auto& v) -> HighReal {
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Rational>) {
                return farey::to_high(v);
            } else {
                return v.to_high();
            }
        },
        x);
}

double to_double(const Exact& x) { return static_cast<double>(to_high(x)); }

std::string to_decimal(const Exact& x, int digits) { return farey::to_decimal(to_high(x), digits); }

Exact gauss_map(const Exact& x) {
    require_unit(x, "gauss argument");
    if (is_zero(x)) return Rational(0);
    Exact r = moebius(x, IntMatrix2{0, 1, 1, 0});
    Integer k = floor(r);
    return moebius(r, IntMatrix2{1, -k, 0, 1});
}

PointPair gauss_ext(const PointPair& p) {
    require_unit(p.x, "x");
    require_unit(p.y, "y");
    if (is_zero(p.x)) throw NotInDomain("gauss extension undefined at x = 0");
    Integer k = floor(moebius(p.x, IntMatrix2{0, 1, 1, 0}));
    return {gauss_map(p.x), moebius(p.y, IntMatrix2{0, 1, 1, k})};
}

Exact farey_map(const Exact& x) {
    require_unit(x, "farey argument");
    if (compare(x, kHalf) <= 0) return moebius(x, IntMatrix2{1, 0, -1, 1});
    return moebius(x, IntMatrix2{-1, 1, 1, 0});
}

PointPair farey_ext(const PointPair& p) {
    require_unit(p.x, "x");
    require_unit(p.y, "y");
    if (compare(p.x, kHalf) <= 0) {
        return {moebius(p.x, IntMatrix2{1, 0, -1, 1}), moebius(p.y, IntMatrix2{1, 0, 1, 1})};
    }
    return {moebius(p.x, IntMatrix2{-1, 1, 1, 0}), moebius(p.y, IntMatrix2{0, 1, 1, 1})};
}

InducedStep induced_farey(const PointPair& p) {
    auto in_domain = [](const PointPair& q) {
        return compare(q.x, Rational(0)) > 0 && compare(q.x, Rational(1)) <= 0 && compare(q.y, kHalf) > 0 &&
               compare(q.y, Rational(1)) <= 0;
    };
    if (!in_domain(p)) throw NotInDomain("point outside (0,1] x (1/2,1]");
    // the return happens after floor(1/x) steps; more means the orbit hit x = 0
    Integer a1 = floor(moebius(p.x, IntMatrix2{0, 1, 1, 0}));
    InducedStep out{p, 0};
    do {
        out.point = farey_ext(out.point);
        ++out.steps;
        if (out.steps > a1 || is_zero(out.point.x)) throw NotInDomain("orbit does not return to the inducing set");
    } while (!in_domain(out.point));
    return out;
}

std::vector<Digit> leading_digits(const Exact& x, std::size_t count) {
    require_unit(x, "argument");
    std::vector<Digit> out;
    Exact y = x;
    while (out.size() < count && !is_zero(y)) {
        Exact r = moebius(y, IntMatrix2{0, 1, 1, 0});
        Integer k = floor(r);
        out.push_back(static_cast<Digit>(k));
        y = moebius(r, IntMatrix2{1, -k, 0, 1});
    }
    return out;
}

Rational Dyadic::value() const { return Rational(numerator, Integer(1) << bits); }

double Dyadic::to_double() const { return farey::to_double(value()); }

Dyadic minkowski_question(const Exact& x, unsigned precision) {
    require_unit(x, "argument");
    Dyadic out{0, precision};
    Exact y = x;
    Integer partial = 0;  // a_1 + ... + a_k
    int sign = 1;
    while (!is_zero(y)) {
        Exact r = moebius(y, IntMatrix2{0, 1, 1, 0});
        Integer k = floor(r);
        y = moebius(r, IntMatrix2{1, -k, 0, 1});
        partial += k;
        if (partial > Integer(precision) + 1) break;
        unsigned shift = precision + 1 - static_cast<unsigned>(partial);
        out.numerator += sign * (Integer(1) << shift);
        sign = -sign;
    }
    return out;
}

Dyadic tent(const Dyadic& v) {
    Integer two_v = 2 * v.numerator;
    Integer other = (Integer(1) << (v.bits + 1)) - two_v;
    return {two_v < other ? two_v : other, v.bits};
}

bool ReferenceMeasure::two_dimensional() const {
    return kind == MeasureKind::GaussExtension || kind == MeasureKind::FareyExtension;
}

double ReferenceMeasure::density(double x) const {
    switch (kind) {
        case MeasureKind::Lebesgue: return 1.0;
        case MeasureKind::Gauss: return 1.0 / ((1.0 + x) * std::numbers::ln2);
        case MeasureKind::Farey: return x >= x0 ? 1.0 / x : 0.0;
        default: throw InvalidArgument("two-dimensional measure evaluated at a single coordinate");
    }
}

double ReferenceMeasure::density(double x, double y) const {
    switch (kind) {
        case MeasureKind::GaussExtension: {
            double t = 1.0 + x * y;
            return 1.0 / (t * t * std::numbers::ln2);
        }
        case MeasureKind::FareyExtension: {
            double t = x + y - x * y;
            return 1.0 / (t * t);
        }
        default: throw InvalidArgument("one-dimensional measure evaluated at a pair");
    }
}

double ReferenceMeasure::cdf(double x) const {
    x = std::clamp(x, 0.0, 1.0);
    switch (kind) {
        case MeasureKind::Lebesgue: return x;
        case MeasureKind::Gauss: return std::log1p(x) / std::numbers::ln2;
        case MeasureKind::Farey: return x <= x0 ? 0.0 : std::log(x / x0) / std::log(1.0 / x0);
        default: throw InvalidArgument("distribution function needs a one-dimensional measure");
    }
}

double ReferenceMeasure::total_mass() const {
    switch (kind) {
        case MeasureKind::Lebesgue:
        case MeasureKind::Gauss: return 1.0;
        case MeasureKind::Farey: return std::log(1.0 / x0);
        default: throw InvalidArgument("total mass is only tracked for one-dimensional measures");
    }
}

std::string ReferenceMeasure::name() const {
    switch (kind) {
        case MeasureKind::Lebesgue: return "lebesgue";
        case MeasureKind::Gauss: return "gauss";
        case MeasureKind::Farey: return "farey";
        case MeasureKind::GaussExtension: return "gauss-extension";
        case MeasureKind::FareyExtension: return "farey-extension";
    }
    return "unknown";
}

}  // namespace farey
