#include "farey/geoflow.hpp"

#include "farey/errors.hpp"
#include "farey/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "json.hpp"

namespace farey {

namespace {

// signed position along the geodesic from its apex, from the offsets of z to
// the two endpoints; callers pass offsets computed without cancellation
Real position(Real dx_alpha, Real dx_beta, Real y) {
    return 0.5L * std::log((dx_alpha * dx_alpha + y * y) / (dx_beta * dx_beta + y * y));
}

void require_star(const SectionPoint& s) {
    s.validate();
    if (!s.in_star_set()) throw NotInStarSet("return map needs U, W in (0,1)");
}

}  // namespace

void SectionPoint::validate() const {
    if (!(U > 0 && U <= 1)) throw InvalidArgument("U must lie in (0,1]");
    if (!(W > 0 && W < 1)) throw NotInStarSet("W must lie in (0,1)");
    if (eps != 1 && eps != -1) throw InvalidArgument("eps must be +1 or -1");
}

TangentVector tangent_at(Complex z, Real alpha, Real beta) {
    if (!(z.imag() > 0)) throw InvalidArgument("base point must lie in the upper half-plane");
    if (alpha == beta) throw InvalidArgument("geodesic endpoints must differ");
    Real c = (alpha + beta) / 2;
    Real r = std::fabs(beta - alpha) / 2;
    Real vx = z.imag() / r;
    Real vy = -(z.real() - c) / r;
    if (beta < alpha) {
        vx = -vx;
        vy = -vy;
    }
    TangentVector v;
    v.x = z.real();
    v.y = z.imag();
    v.theta = std::atan2(std::fabs(vx), vy);
    v.dir = vx > 0 ? 1 : -1;
    v.alpha = alpha;
    v.beta = beta;
    v.t = position(z.real() - alpha, z.real() - beta, z.imag());
    return v;
}

std::pair<Real, Real> endpoints_of(Real x, Real y, Real theta, int dir) {
    if (!(theta > 0 && theta < std::numbers::pi_v<Real>)) throw InvalidArgument("vertical vectors have no finite endpoints");
    Real c = x + dir * y * std::cos(theta) / std::sin(theta);
    Real r = y / std::sin(theta);
    return {c - dir * r, c + dir * r};
}

TangentVector lift(const SectionPoint& s) {
    s.validate();
    Real a = (1 - s.W) / s.W;  // |alpha|
    Real beta = 1 / s.U;
    Real y = std::sqrt(a / s.U);
    TangentVector v = tangent_at({0, y}, -a, beta);
    // position at the base, from offsets a and beta
    v.t = position(a, -beta, y);
    return s.eps == 1 ? v : mirror(v);
}

TangentVector flow(const TangentVector& v, Real t) {
    Real s = v.t + t;
    Complex w(0, std::exp(s));
    if (v.beta < v.alpha) w = -w;
    Complex z = (v.alpha + v.beta * w) / (Real(1) + w);
    return tangent_at(z, v.alpha, v.beta);
}

TangentVector apply(const Mobius& m, const TangentVector& v) {
    if (m.a * m.d - m.b * m.c <= 0) throw InvalidArgument("orientation-reversing matrix");
    auto end = [&](Real x) {
        Real den = m.c * x + m.d;
        if (den == 0) throw PoleError("endpoint sent to infinity");
        return m(x);
    };
    return tangent_at(m(v.base()), end(v.alpha), end(v.beta));
}

TangentVector mirror(const TangentVector& v) {
    TangentVector m = v;
    m.x = -v.x;
    m.alpha = -v.alpha;
    m.beta = -v.beta;
    m.dir = -v.dir;
    return m;
}

ReturnResult first_return(const SectionPoint& s) {
    require_star(s);
    const Real U = s.U, W = s.W;
    // mirror image with eps = +1: alpha < 0 < 1 < beta
    const Real a = (1 - W) / W;       // -alpha
    const Real beta = 1 / U;
    const Real bm1 = (1 - U) / U;     // beta - 1
    const Real om = 1 / W;            // 1 - alpha
    const Real y0 = std::sqrt(a / U);
    const Real y1 = std::sqrt(bm1 * om);

    ReturnResult out;
    // the geodesic meets Re = 0 at i y0 and next meets Re = 1 at 1 + i y1
    out.time = position(om, -bm1, y1) - position(a, -beta, y0);
    out.hit = tangent_at({1, y1}, -a, beta);
    out.hit.t = position(om, -bm1, y1);

    Real alpha2, beta2;
    if (U <= 0.5L) {
        out.reduction = {1, -1, 0, 1};
        alpha2 = -om;  // alpha - 1
        beta2 = bm1;
    } else {
        out.reduction = {0, -1, 1, -1};
        alpha2 = W;  // -1/(alpha - 1)
        beta2 = -1 / bm1;
    }
    Complex z2 = out.reduction(Complex(1, y1));
    out.base_residual = std::fabs(z2.real());
    out.point.eps = beta2 > 0 ? 1 : -1;
    out.point.U = 1 / std::fabs(beta2);
    out.point.W = 1 / (1 + std::fabs(alpha2));

    if (s.eps == -1) {
        out.hit = mirror(out.hit);
        out.reduction = out.reduction.mirrored();
        out.point.eps = -out.point.eps;
    }
    return out;
}

Real return_time_formula(Real U, Real W) { return -0.5L * std::log((1 - U) * (1 - W)); }

SectionPoint return_map_formula(const SectionPoint& s) {
    require_star(s);
    if (s.U <= 0.5L) return {s.U / (1 - s.U), s.W / (1 + s.W), s.eps};
    return {(1 - s.U) / s.U, 1 / (1 + s.W), -s.eps};
}

std::pair<double, double> measure_correspondence_check(double u0, double u1, double w0, double w1) {
    if (!(u0 > 0 && u0 <= u1 && u1 <= 1 && w0 > 0 && w0 <= w1 && w1 <= 1)) {
        throw InvalidArgument("box must lie in (0,1]^2 with ordered corners");
    }
    if (u0 == u1 || w0 == w1) return {0.0, 0.0};
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    constexpr double tol = 1e-13;
    auto inner_uw = [&](double u) {
        return GK::integrate([u](double w) { double s = u + w - u * w; return 1.0 / (s * s); }, w0, w1, 15, tol);
    };
    double lhs = GK::integrate(inner_uw, u0, u1, 15, tol);
    // image: beta in [1/u1, 1/u0], |alpha| in [1/w1 - 1, 1/w0 - 1]
    double a0 = (1 - w1) / w1, a1 = (1 - w0) / w0;
    auto inner_ab = [&](double beta) {
        return GK::integrate([beta](double a) { double s = beta + a; return 1.0 / (s * s); }, a0, a1, 15, tol);
    };
    double rhs = GK::integrate(inner_ab, 1 / u1, 1 / u0, 15, tol);
    return {lhs, rhs};
}

SeriesCheck series_section_check(const SeriesPoint& p, Real tol) {
    if (!(p.U > 0 && p.U <= 1 && p.V > 0 && p.V <= 1)) throw InvalidArgument("Series coordinates lie in (0,1]");
    if (p.eps != 1 && p.eps != -1) throw InvalidArgument("eps must be +1 or -1");
    Real inv = 1 / p.U;
    Real a = std::floor(inv);
    if (inv == a) throw NotInStarSet("1/U is an integer");

    SeriesCheck out;
    out.steps = static_cast<std::uint64_t>(a);
    Real V2 = 1 / (a + p.V);
    out.series_image = {inv - a, 1 / (1 + V2), -p.eps};

    SectionPoint s{p.U, 1 / (1 + p.V), p.eps};
    bool branches_ok = true;
    for (std::uint64_t k = 0; k < out.steps; ++k) {
        bool last = k + 1 == out.steps;
        // every step but the last stays on the lower branch
        if ((s.U > 0.5L) != last) branches_ok = false;
        s = first_return(s).point;
    }
    out.composed = s;
    out.max_error = std::max(std::fabs(s.U - out.series_image.U), std::fabs(s.W - out.series_image.W));
    out.agrees = branches_ok && s.eps == out.series_image.eps && out.max_error <= tol;
    return out;
}

Real flow_additivity_error(const SectionPoint& s) {
    auto r1 = first_return(s);
    auto r2 = first_return(r1.point);
    Complex direct = flow(lift(s), r1.time + r2.time).base();
    Complex composed = apply(r1.reduction.inverse(), r2.hit).base();
    return std::abs(direct - composed) / std::max<Real>(1, std::abs(direct));
}

CycleTime cycle_return_time(const PeriodicPoint& p) {
    CycleTime out;
    PointPair start{Exact(p.value), Exact(p.tilde)};
    PointPair q = start;
    int eps = 1;
    KahanSum<Real> total;
    out.steps = static_cast<std::uint64_t>(p.period.digit_sum());
    for (std::uint64_t k = 0; k < out.steps; ++k) {
        SectionPoint s{static_cast<Real>(farey::to_high(q.x)), static_cast<Real>(farey::to_high(q.y)), eps};
        auto r = first_return(s);
        total.add(r.time);
        eps = r.point.eps;
        q = farey_ext(q);
    }
    out.total = total.value();
    out.closes = q == start;
    out.closing_sign = eps;
    out.expected = p.parity == Parity::Even ? p.length : p.length / 2;
    return out;
}

GeoflowReport verify_points(std::span<const SectionPoint> points) {
    GeoflowReport rep;
    rep.samples = points.size();
    double worst = -1;
    for (const auto& s : points) {
        auto r = first_return(s);
        auto ref = return_map_formula(s);
        double ce = static_cast<double>(std::max(std::fabs(r.point.U - ref.U), std::fabs(r.point.W - ref.W)));
        if (r.point.eps != ref.eps) ce = std::numeric_limits<double>::infinity();
        double te = static_cast<double>(std::fabs(r.time - return_time_formula(s.U, s.W)));
        rep.max_coordinate_error = std::max(rep.max_coordinate_error, ce);
        rep.max_time_error = std::max(rep.max_time_error, te);
        rep.max_base_residual = std::max(rep.max_base_residual, static_cast<double>(r.base_residual));
        if (r.point.in_star_set()) {
            rep.max_flow_error = std::max(rep.max_flow_error, static_cast<double>(flow_additivity_error(s)));
        }
        if (std::max(ce, te) > worst) {
            worst = std::max(ce, te);
            rep.worst = s;
        }
    }
    return rep;
}

GeoflowReport verify_section(std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw = [&] {
        double u;
        do u = unit(rng);
        while (u <= 0.0);
        return static_cast<Real>(u);
    };
    std::vector<SectionPoint> pts;
    pts.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        Real U = draw();
        Real W = draw();
        int eps = (rng() & 1) ? 1 : -1;
        pts.push_back({U, W, eps});
    }
    auto rep = verify_points(pts);
    rep.seed = seed;
    return rep;
}

void write_report_json(std::ostream& os, const GeoflowReport& r, double tol) {
    nlohmann::json j{{"samples", r.samples},
                     {"seed", r.seed},
                     {"max_coordinate_error", r.max_coordinate_error},
                     {"max_time_error", r.max_time_error},
                     {"max_flow_error", r.max_flow_error},
                     {"max_base_residual", r.max_base_residual},
                     {"worst_sample", {{"U", static_cast<double>(r.worst.U)}, {"W", static_cast<double>(r.worst.W)}, {"eps", r.worst.eps}}},
                     {"tolerance", tol},
                     {"passed", r.passed(tol)}};
    os << j.dump(2) << '\n';
}

}  // namespace farey
