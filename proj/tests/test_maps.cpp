#include "doctest.h"
#include "farey/errors.hpp"
#include "farey/maps.hpp"
#include "oracles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <functional>

using namespace farey;

namespace {

QuadIrrational surd(long a, long b, long c, long d) { return QuadIrrational(a, b, c, d); }

const QuadIrrational kPhi = surd(-1, 1, 2, 5);     // [1 repeated]
const QuadIrrational kSilver = surd(-1, 1, 1, 2);  // [2 repeated]

QuadIrrational neg_inv_conj(const QuadIrrational& x) { return moebius(x.conjugate(), IntMatrix2{0, -1, 1, 0}); }

// Random element of (0,1): a rational or a surd with a random expansion.
Exact random_exact(std::mt19937_64& rng, std::uint64_t first_digit) {
    auto tail = oracle::random_word(rng, 6, 9);
    std::vector<Digit> pre{first_digit};
    if (rng() % 2 == 0) {
        // a final digit 1 would make the expansion non-canonical
        if (tail.back() == 1) tail.back() = 2;
        pre.insert(pre.end(), tail.begin(), tail.end());
        return evaluate(pre);
    }
    CFWord period(tail);
    if (!period.is_primitive()) period = CFWord{tail.front()};
    return from_periodic(PeriodicCF(pre, period));
}

double quad(const std::function<double(double)>& f, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

double box_mass(double x1, double x2, double y1, double y2) {
    auto inner = [&](double x) {
        return quad([x](double y) { double t = x + y - x * y; return 1.0 / (t * t); }, y1, y2);
    };
    return quad(inner, x1, x2);
}

}  // namespace

TEST_CASE("gauss map examples") {
    CHECK(gauss_map(Exact(kSilver)) == Exact(kSilver));
    CHECK(gauss_map(Exact(Rational(0))) == Exact(Rational(0)));
    CHECK(gauss_map(Exact(Rational(2, 7))) == Exact(Rational(1, 2)));
    CHECK(gauss_map(Exact(Rational(1, 3))) == Exact(Rational(0)));
    PointPair fixed{kPhi, kPhi};
    CHECK(gauss_ext(fixed) == fixed);
    CHECK_THROWS_AS(gauss_map(Exact(Rational(3, 2))), NotInRange);
    CHECK_THROWS_AS(gauss_ext(PointPair{Rational(0), Rational(1, 2)}), NotInDomain);
}

TEST_CASE("farey map examples") {
    CHECK(farey_map(Exact(Rational(2, 5))) == Exact(Rational(2, 3)));
    CHECK(farey_map(Exact(surd(-1, 1, 1, 3))) == Exact(surd(-1, 1, 2, 3)));
    CHECK(farey_map(Exact(Rational(1))) == Exact(Rational(0)));
    CHECK(farey_map(Exact(Rational(0))) == Exact(Rational(0)));
    auto p = farey_ext(PointPair{Rational(1, 2), Rational(1, 2)});
    CHECK(p.x == Exact(Rational(1)));
    CHECK(p.y == Exact(Rational(1, 3)));
}

TEST_CASE("induced farey map") {
    auto a = induced_farey(PointPair{kPhi, kPhi});
    CHECK(a.steps == 1);
    CHECK(a.point == PointPair{kPhi, kPhi});

    // y = [1, 2, 2, ...] = 1/(1 + sqrt 2 - 1) = 1/sqrt 2
    auto b = induced_farey(PointPair{kSilver, surd(0, 1, 2, 2)});
    CHECK(b.steps == 2);
    CHECK(b.point.x == Exact(kSilver));

    std::mt19937_64 rng(41);
    for (int i = 0; i < 50; ++i) {
        Exact x = random_exact(rng, 3);
        Exact y = evaluate(std::vector<Digit>{1, 1 + rng() % 5, 1 + rng() % 5});
        auto r = induced_farey(PointPair{x, y});
        CHECK(r.steps == 3);
        CHECK(r.point.x == gauss_map(x));
    }
    CHECK_THROWS_AS(induced_farey(PointPair{kPhi, Rational(1, 2)}), NotInDomain);
    CHECK_THROWS_AS(induced_farey(PointPair{Rational(0), Rational(3, 4)}), NotInDomain);
}

TEST_CASE("farey map is a slowdown of the gauss map") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 500; ++i) {
        std::uint64_t a1 = 1 + rng() % 6;
        Exact x = random_exact(rng, a1);
        Exact y = x;
        for (std::uint64_t k = 0; k < a1; ++k) y = farey_map(y);
        REQUIRE(y == gauss_map(x));
    }
}

TEST_CASE("symbolic shift actions agree with exact arithmetic") {
    std::mt19937_64 rng(47);
    oracle::for_each_word(4, 4, [&](const std::vector<Digit>& w) {
        CFWord period(w);
        if (!period.is_primitive()) return;
        QuadIrrational x = purely_periodic_value(period);
        CFWord rot = period.rotated(1);
        QuadIrrational gx = purely_periodic_value(rot);
        REQUIRE(gauss_map(Exact(x)) == Exact(gx));

        // F([a1, ...]) = [a1 - 1, ...] or [a2, ...]
        Exact fx = w[0] >= 2 ? Exact(from_periodic(PeriodicCF({w[0] - 1}, rot))) : Exact(gx);
        REQUIRE(farey_map(Exact(x)) == fx);

        // the pair (x, -1/conj x) is shifted two-sidedly by the Gauss extension
        PointPair p{x, neg_inv_conj(x)};
        REQUIRE(gauss_ext(p) == PointPair{gx, neg_inv_conj(gx)});

        // Farey extension on an unrelated second coordinate [b1, b2, ...]
        auto b = oracle::random_word(rng, 3, 4);
        CFWord bw(b);
        if (!bw.is_primitive()) bw = CFWord{b[0]};
        QuadIrrational y = purely_periodic_value(bw);
        std::vector<Digit> pre_y;
        Exact expected_y = Rational(0);
        if (w[0] >= 2) {
            expected_y = from_periodic(PeriodicCF({bw[0] + 1}, bw.rotated(1)));
        } else {
            expected_y = from_periodic(PeriodicCF({1}, bw));
        }
        REQUIRE(farey_ext(PointPair{x, y}) == PointPair{fx, expected_y});
    });
}

TEST_CASE("gauss measure is invariant") {
    const double ln2 = std::log(2.0);
    auto nu = [&](double x) { return 1.0 / ((1.0 + x) * ln2); };
    std::vector<std::function<double(double)>> fs{
        [](double) { return 1.0; }, [](double x) { return x; }, [](double x) { return x * x; }};
    constexpr int K = 200;
    for (const auto& f : fs) {
        double direct = quad([&](double x) { return f(x) * nu(x); }, 0.0, 1.0);
        double pulled = 0.0;
        for (int k = 1; k <= K; ++k) {
            pulled += quad([&](double x) { return f(1.0 / x - k) * nu(x); }, 1.0 / (k + 1), 1.0 / k);
        }
        // branches k > K: x = 1/(k+y) and sum_{k>K} 1/((k+y)(k+y+1)) = 1/(K+1+y)
        pulled += quad([&](double y) { return f(y) / ((K + 1 + y) * ln2); }, 0.0, 1.0);
        CHECK(std::fabs(pulled - direct) < 1e-10);
    }
}

TEST_CASE("farey extension measure is invariant on boxes") {
    struct Box { double x1, x2, y1, y2; };
    for (Box b : {Box{0.2, 0.6, 0.3, 0.8}, Box{0.5, 1.0, 0.1, 0.4}, Box{0.1, 0.3, 0.6, 0.9}, Box{0.3, 0.9, 0.2, 0.45}}) {
        double mass = box_mass(b.x1, b.x2, b.y1, b.y2);
        double pre = 0.0;
        // lower branch covers images with y <= 1/2, upper branch y >= 1/2
        if (b.y1 < 0.5) {
            double ylo = b.y1, yhi = std::min(b.y2, 0.5);
            pre += box_mass(b.x1 / (1 + b.x1), b.x2 / (1 + b.x2), ylo / (1 - ylo), yhi / (1 - yhi));
        }
        if (b.y2 > 0.5) {
            double ylo = std::max(b.y1, 0.5), yhi = b.y2;
            pre += box_mass(1 / (1 + b.x2), 1 / (1 + b.x1), 1 / yhi - 1, 1 / ylo - 1);
        }
        CHECK(std::fabs(pre - mass) < 1e-10 * std::max(1.0, mass));
    }
}

TEST_CASE("minkowski question mark values") {
    CHECK(minkowski_question(Exact(Rational(1, 2)), 64).value() == Rational(1, 2));
    CHECK(minkowski_question(Exact(Rational(0)), 64).value() == Rational(0));
    CHECK(minkowski_question(Exact(Rational(1)), 64).value() == Rational(1));
    CHECK(minkowski_question(Exact(Rational(1, 3)), 64).value() == Rational(1, 4));
    Rational err = minkowski_question(Exact(kPhi), 64).value() - Rational(2, 3);
    CHECK(boost::multiprecision::abs(err) <= Rational(Integer(1), Integer(1) << 64));
    // [2, 1, 1, ...] -> 1/2 - 1/4 + 1/8 - ... = 1/3
    Rational err2 = minkowski_question(Exact(surd(3, -1, 2, 5)), 64).value() - Rational(1, 3);
    CHECK(boost::multiprecision::abs(err2) <= Rational(Integer(1), Integer(1) << 64));
    CHECK(tent(Dyadic{3, 2}).value() == Rational(1, 2));
    CHECK(tent(Dyadic{1, 2}).value() == Rational(1, 2));
}

TEST_CASE("minkowski conjugates the farey map to the tent map") {
    std::mt19937_64 rng(53);
    constexpr unsigned P = 64;
    const Rational bound(Integer(1), Integer(1) << (P - 2));
    for (int i = 0; i < 200; ++i) {
        Exact x = random_exact(rng, 1 + rng() % 6);
        Rational lhs = minkowski_question(farey_map(x), P).value();
        Rational rhs = tent(minkowski_question(x, P)).value();
        CHECK(boost::multiprecision::abs(lhs - rhs) < bound);
    }
}

TEST_CASE("reference measures") {
    auto nu = ReferenceMeasure::gauss();
    CHECK(nu.cdf(1.0) == doctest::Approx(1.0));
    CHECK(quad([&](double x) { return nu.density(x); }, 0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    auto mu = ReferenceMeasure::farey(0.25);
    CHECK(mu.total_mass() == doctest::Approx(std::log(4.0)));
    CHECK(quad([&](double x) { return mu.density(x); }, 0.25, 1) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(mu.cdf(0.5) == doctest::Approx(0.5));
    CHECK(ReferenceMeasure::farey_extension().density(0.5, 0.5) == doctest::Approx(1.0 / 0.5625));
    CHECK_THROWS_AS(ReferenceMeasure::lebesgue().density(0.1, 0.2), InvalidArgument);
}
