#pragma once

#include "farey/periodic.hpp"

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>

namespace farey {

using Real = long double;
using Complex = std::complex<long double>;

// Point of the section: base on the positive imaginary axis, forward endpoint
// beta = eps / U, backward endpoint alpha = -eps (1/W - 1).
struct SectionPoint {
    Real U = 0.5;
    Real W = 0.5;
    int eps = 1;

    void validate() const;  // U in (0,1], W in (0,1), eps = +-1
    bool in_star_set() const { return U > 0 && U < 1 && W > 0 && W < 1; }
};

// Unit tangent vector on the upper half-plane. theta in (0, pi) is the angle
// between v and the upward vertical; dir is the sign of the horizontal part of v.
struct TangentVector {
    Real x = 0;
    Real y = 1;
    Real theta = 0;
    int dir = 1;
    Real alpha = 0;  // backward endpoint
    Real beta = 0;   // forward endpoint
    Real t = 0;      // signed distance from the apex of the geodesic

    Complex base() const { return {x, y}; }
};

// Builds the vector at z on the geodesic from alpha to beta.
TangentVector tangent_at(Complex z, Real alpha, Real beta);

// Endpoints of the geodesic through (x, y) in direction (theta, dir).
std::pair<Real, Real> endpoints_of(Real x, Real y, Real theta, int dir);

TangentVector lift(const SectionPoint& s);

// g_t: move a signed distance t along the geodesic.
TangentVector flow(const TangentVector& v, Real t);

struct Mobius {
    Real a = 1, b = 0, c = 0, d = 1;

    Complex operator()(Complex z) const { return (a * z + b) / (c * z + d); }
    Real operator()(Real x) const { return (a * x + b) / (c * x + d); }
    Mobius inverse() const { return {d, -b, -c, a}; }
    Mobius mirrored() const { return {a, -b, -c, d}; }  // conjugate by z -> -conj(z)
};

TangentVector apply(const Mobius& m, const TangentVector& v);
TangentVector mirror(const TangentVector& v);

struct ReturnResult {
    SectionPoint point;
    Real time = 0;
    TangentVector hit;  // vector on Re = eps before reduction
    Mobius reduction;   // brings hit back to the imaginary axis
    Real base_residual = 0;  // |Re| of the reduced base point
};

// Flows to the next crossing of Re = eps and reduces by the branch matrix.
ReturnResult first_return(const SectionPoint& s);

// -1/2 log((1-U)(1-W))
Real return_time_formula(Real U, Real W);
// Farey extension with the sign rule of the section
SectionPoint return_map_formula(const SectionPoint& s);

// Returns (integral of dU dW/(U+W-UW)^2 over the box, integral of
// d alpha d beta/(beta-alpha)^2 over its endpoint image).
std::pair<double, double> measure_correspondence_check(double u0, double u1, double w0, double w1);

// Point of Series' section: beta = eps / U, alpha = -eps V.
struct SeriesPoint {
    Real U = 0.5;
    Real V = 0.5;
    int eps = 1;
};

struct SeriesCheck {
    bool agrees = false;
    std::uint64_t steps = 0;  // returns to the new section per Series return
    Real max_error = 0;
    SectionPoint series_image;  // Series return, written in section coordinates
    SectionPoint composed;      // the composed returns
};

SeriesCheck series_section_check(const SeriesPoint& p, Real tol = 1e-9L);

// g_{r1 + r2} against two returns with the first reduction undone.
Real flow_additivity_error(const SectionPoint& s);

struct CycleTime {
    Real total = 0;           // sum of return times over digit-sum many steps
    Real expected = 0;        // length, halved for odd periods
    bool closes = false;      // coordinates come back exactly
    int closing_sign = 1;     // eps after the cycle relative to the start
    std::uint64_t steps = 0;
};

CycleTime cycle_return_time(const PeriodicPoint& p);

struct GeoflowReport {
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double max_coordinate_error = 0;
    double max_time_error = 0;
    double max_flow_error = 0;
    double max_base_residual = 0;
    SectionPoint worst;  // sample with the largest coordinate or time error

    bool passed(double tol) const {
        return max_coordinate_error < tol && max_time_error < tol && max_flow_error < tol;
    }
};

GeoflowReport verify_section(std::size_t samples, std::uint64_t seed);
GeoflowReport verify_points(std::span<const SectionPoint> points);
void write_report_json(std::ostream& os, const GeoflowReport& r, double tol);

}  // namespace farey
