#pragma once

#include "farey/cf.hpp"
#include "farey/surd.hpp"

#include <string>
#include <variant>
#include <vector>

namespace farey {

// Rational or quadratic irrational, both exact.
using Exact = std::variant<Rational, QuadIrrational>;

int compare(const Exact& x, const Rational& r);
Integer floor(const Exact& x);
Exact moebius(const Exact& x, const IntMatrix2& m);
HighReal to_high(const Exact& x);
double to_double(const Exact& x);
std::string to_decimal(const Exact& x, int digits = 30);

struct PointPair {
    Exact x;
    Exact y;
    friend bool operator==(const PointPair&, const PointPair&) = default;
};

// G(x) = {1/x}, G(0) = 0.
Exact gauss_map(const Exact& x);
// (G(x), 1/(floor(1/x) + y)); x must be nonzero.
PointPair gauss_ext(const PointPair& p);

// x/(1-x) on [0, 1/2], (1-x)/x on (1/2, 1].
Exact farey_map(const Exact& x);
PointPair farey_ext(const PointPair& p);

struct InducedStep {
    PointPair point;
    std::uint64_t steps = 0;
};

// First return of the Farey extension to (0,1] x (1/2,1].
InducedStep induced_farey(const PointPair& p);

// Up to `count` continued fraction digits of x in (0,1]; fewer for rationals.
std::vector<Digit> leading_digits(const Exact& x, std::size_t count);

// numerator / 2^bits.
struct Dyadic {
    Integer numerator;
    unsigned bits = 0;

    Rational value() const;
    double to_double() const;
};

// Minkowski question mark function, truncated to `precision` bits.
Dyadic minkowski_question(const Exact& x, unsigned precision);
// min(2x, 2 - 2x), exact on dyadics.
Dyadic tent(const Dyadic& v);

enum class MeasureKind { Lebesgue, Gauss, Farey, GaussExtension, FareyExtension };

struct ReferenceMeasure {
    MeasureKind kind = MeasureKind::Lebesgue;
    // lower cutoff for the Farey measures, which are infinite near 0
    double x0 = 0.0;

    static ReferenceMeasure lebesgue() { return {MeasureKind::Lebesgue, 0.0}; }
    static ReferenceMeasure gauss() { return {MeasureKind::Gauss, 0.0}; }
    static ReferenceMeasure farey(double x0) { return {MeasureKind::Farey, x0}; }
    static ReferenceMeasure gauss_extension() { return {MeasureKind::GaussExtension, 0.0}; }
    static ReferenceMeasure farey_extension() { return {MeasureKind::FareyExtension, 0.0}; }

    bool two_dimensional() const;
    double density(double x) const;
    double density(double x, double y) const;
    // Normalized distribution function on [0,1] (1D kinds).
    double cdf(double x) const;
    // Total mass of the 1D kinds; the Farey kind is restricted to [x0,1].
    double total_mass() const;
    std::string name() const;
};

}  // namespace farey
