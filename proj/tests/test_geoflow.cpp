#include "doctest.h"
#include "farey/errors.hpp"
#include "farey/geoflow.hpp"

#include <cmath>
#include <random>

using namespace farey;

namespace {

// integral of d alpha d beta/(beta - alpha)^2 over a rectangle, via the
// antiderivative log(beta - alpha)
double liouville_box(double u0, double u1, double w0, double w1) {
    double b0 = 1 / u1, b1 = 1 / u0;
    double a0 = -(1 / w0 - 1), a1 = -(1 / w1 - 1);
    auto F = [](double a, double b) { return std::log(b - a); };
    return F(a1, b1) - F(a0, b1) - F(a1, b0) + F(a0, b0);
}

}  // namespace

TEST_CASE("lift examples") {
    auto v = lift({0.5L, 0.5L, 1});
    CHECK(v.beta == doctest::Approx(2));
    CHECK(v.alpha == doctest::Approx(-1));
    CHECK(v.x == 0);
    auto b = lift({1, 0.5L, 1});
    CHECK(b.beta == doctest::Approx(1));
    CHECK(b.alpha == doctest::Approx(-1));
    auto c = lift({1.0L / 3, 2.0L / 3, 1});
    CHECK(c.beta == doctest::Approx(3));
    CHECK(c.alpha == doctest::Approx(-0.5));
    auto m = lift({1.0L / 3, 2.0L / 3, -1});
    CHECK(m.beta == doctest::Approx(-3));
    CHECK(m.alpha == doctest::Approx(0.5));
    CHECK(m.dir == -1);
}

TEST_CASE("lift relations on random points") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(1e-6, 1 - 1e-6);
    for (int i = 0; i < 2000; ++i) {
        SectionPoint s{unit(rng), unit(rng), (rng() & 1) ? 1 : -1};
        auto v = lift(s);
        Real h = std::tan(v.theta / 2);
        REQUIRE(std::fabs(s.U - h / v.y) < 1e-12L);
        REQUIRE(std::fabs(s.W - 1 / (1 + v.y * h)) < 1e-12L);
        auto [a, b] = endpoints_of(v.x, v.y, v.theta, v.dir);
        REQUIRE(std::fabs(a - v.alpha) < 1e-12L * std::max<Real>(1, std::fabs(v.alpha)));
        REQUIRE(std::fabs(b - v.beta) < 1e-12L * std::max<Real>(1, std::fabs(v.beta)));
        REQUIRE(v.dir == s.eps);
    }
    CHECK_THROWS_AS(lift({0, 0.5L, 1}), InvalidArgument);
    CHECK_THROWS_AS(lift({0.5L, 1, 1}), NotInStarSet);
    CHECK_THROWS_AS(lift({0.5L, 0.5L, 0}), InvalidArgument);
}

TEST_CASE("first return examples") {
    auto r = first_return({1.0L / 3, 0.5L, 1});
    CHECK(r.point.U == doctest::Approx(0.5));
    CHECK(r.point.W == doctest::Approx(1.0 / 3));
    CHECK(r.point.eps == 1);
    CHECK(static_cast<double>(r.time) == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-14));

    auto u = first_return({2.0L / 3, 0.5L, 1});
    CHECK(u.point.U == doctest::Approx(0.5));
    CHECK(u.point.W == doctest::Approx(2.0 / 3));
    CHECK(u.point.eps == -1);

    auto h = first_return({0.5L, 0.5L, 1});
    CHECK(static_cast<double>(h.time) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(h.base_residual == 0);
    CHECK(h.hit.x == doctest::Approx(1));

    auto m = first_return({2.0L / 3, 0.5L, -1});
    CHECK(m.point.eps == 1);
    CHECK(m.hit.x == doctest::Approx(-1));

    CHECK_THROWS_AS(first_return({1, 0.5L, 1}), NotInStarSet);
    CHECK_THROWS_AS(return_map_formula({1, 0.5L, 1}), NotInStarSet);
}

TEST_CASE("hit vector lies on the geodesic") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(1e-4, 1 - 1e-4);
    for (int i = 0; i < 500; ++i) {
        SectionPoint s{unit(rng), unit(rng), (rng() & 1) ? 1 : -1};
        auto v = lift(s);
        auto r = first_return(s);
        // flowing the lift by the return time lands on the hit vector
        auto f = flow(v, r.time);
        REQUIRE(std::abs(f.base() - r.hit.base()) < 1e-9L * std::max<Real>(1, std::abs(f.base())));
        REQUIRE(std::fabs(std::fabs(r.hit.x) - 1) < 1e-12L);
        // reduction carries the hit to the lift of the new section point
        auto red = apply(r.reduction, r.hit);
        auto l2 = lift(r.point);
        REQUIRE(std::fabs(red.x) < 1e-12L);
        REQUIRE(std::fabs(red.y - l2.y) < 1e-9L * l2.y);
        REQUIRE(std::fabs(red.theta - l2.theta) < 1e-9L);
        REQUIRE(red.dir == l2.dir);
    }
}

TEST_CASE("factor map and return time on random points") {
    auto rep = verify_section(10000, 42);
    CHECK(rep.samples == 10000);
    CHECK(rep.max_coordinate_error < 1e-9);
    CHECK(rep.max_time_error < 1e-9);
    CHECK(rep.max_flow_error < 1e-9);
    CHECK(rep.passed(1e-9));
    // same seed, same report
    auto again = verify_section(10000, 42);
    CHECK(again.max_time_error == rep.max_time_error);
}

TEST_CASE("near the boundary") {
    std::vector<SectionPoint> pts{{1 - 1e-9L, 0.5L, 1}, {1e-9L, 0.5L, -1}, {0.5L, 1 - 1e-9L, 1}, {0.3L, 1e-9L, 1}};
    auto rep = verify_points(pts);
    CHECK(rep.passed(1e-9));
}

TEST_CASE("flow is additive") {
    auto v = lift({0.3L, 0.6L, 1});
    auto a = flow(flow(v, 0.7L), 1.1L);
    auto b = flow(v, 1.8L);
    CHECK(std::abs(a.base() - b.base()) < 1e-14L);
    CHECK(flow(v, 0).y == doctest::Approx(static_cast<double>(v.y)));
    for (Real s : {0.1L, 0.45L, 0.9L}) CHECK(flow_additivity_error({s, 1 - s, 1}) < 1e-12L);
}

TEST_CASE("measure correspondence") {
    auto [l1, r1] = measure_correspondence_check(0.4, 0.6, 0.4, 0.6);
    CHECK(std::fabs(l1 - r1) < 1e-8);
    CHECK(std::fabs(r1 - liouville_box(0.4, 0.6, 0.4, 0.6)) < 1e-10);
    auto [l2, r2] = measure_correspondence_check(0.1, 0.9, 0.5, 0.9);
    CHECK(std::fabs(l2 - r2) < 1e-8);
    CHECK(std::fabs(r2 - liouville_box(0.1, 0.9, 0.5, 0.9)) < 1e-10);
    auto [l3, r3] = measure_correspondence_check(0.3, 0.3, 0.2, 0.7);
    CHECK(l3 == 0.0);
    CHECK(r3 == 0.0);
    CHECK_THROWS_AS(measure_correspondence_check(0.0, 0.5, 0.2, 0.7), InvalidArgument);
}

TEST_CASE("series section") {
    const Real phi = (std::sqrt(5.0L) - 1) / 2;
    auto g = series_section_check({phi, phi, 1});
    CHECK(g.agrees);
    CHECK(g.steps == 1);
    CHECK(g.composed.eps == -1);
    CHECK(std::fabs(g.composed.U - phi) < 1e-15L);

    const Real s2 = std::sqrt(2.0L) - 1;
    auto h = series_section_check({s2, s2, 1});
    CHECK(h.agrees);
    CHECK(h.steps == 2);
    CHECK(h.composed.eps == -1);

    CHECK_THROWS_AS(series_section_check({0.5L, 0.3L, 1}), NotInStarSet);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.01, 1.0);
    for (int i = 0; i < 1000; ++i) {
        auto c = series_section_check({unit(rng), unit(rng), (rng() & 1) ? 1 : -1});
        REQUIRE(c.agrees);
    }
}

TEST_CASE("return times add up to the geodesic length") {
    int odd = 0, even = 0;
    for (const auto& p : enumerate_farey(7.0)) {
        auto c = cycle_return_time(p);
        REQUIRE(c.closes);
        REQUIRE(std::fabs(c.total - c.expected) < 1e-8L);
        int n = static_cast<int>(p.period.size());
        REQUIRE(c.closing_sign == (n % 2 ? -1 : 1));
        (p.parity == Parity::Odd ? odd : even)++;
    }
    CHECK(odd > 0);
    CHECK(even > 0);
}
