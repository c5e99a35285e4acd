#include "doctest.h"
#include "farey/errors.hpp"
#include "farey/measures.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace farey;

TEST_CASE("normalization is exact") {
    auto pts = enumerate_farey(8.0);
    auto m = EmpiricalMeasure1D::farey_weighted(pts);
    CHECK(m.integrate_high(TestFunction1D::one()) == HighReal(1));
    auto m2 = EmpiricalMeasure2D::farey_pairs(pts);
    CHECK(m2.integrate_high(TestFunction2D::one()) == HighReal(1));

    EmpiricalMeasure1D single({{HighReal(0.3), HighReal(2)}});
    CHECK(single.integrate(TestFunction1D::one()) == 1.0);
    CHECK(single.integrate(TestFunction1D::identity()) == doctest::Approx(0.3));
}

TEST_CASE("empty measures") {
    EmpiricalMeasure1D m({});
    CHECK_THROWS_AS(m.integrate(TestFunction1D::one()), EmptyMeasure);
    CHECK_THROWS_AS(cdf_distance(m, ReferenceMeasure::lebesgue()), EmptyMeasure);
    EmpiricalMeasure2D m2({});
    CHECK_THROWS_AS(m2.integrate(TestFunction2D::one()), EmptyMeasure);
    CHECK_THROWS_AS(EmpiricalMeasure1D({{HighReal(0.5), HighReal(-1)}}), InvalidArgument);
}

TEST_CASE("cdf distance on simple measures") {
    EmpiricalMeasure1D half({{HighReal(0.5), HighReal(1)}});
    CHECK(cdf_distance(half, ReferenceMeasure::lebesgue()) == doctest::Approx(0.5));

    // atoms at the midpoints of N equal cells: off by half an atom at most
    const int N = 200;
    std::vector<WeightedPoint1D> grid;
    for (int i = 0; i < N; ++i) grid.push_back({HighReal(i + 0.5) / N, HighReal(1)});
    EmpiricalMeasure1D g(grid);
    CHECK(cdf_distance(g, ReferenceMeasure::lebesgue()) == doctest::Approx(0.5 / N));
    CHECK(g.integrate(TestFunction1D::identity()) == doctest::Approx(0.5));

    // Gauss-distributed atoms against the Gauss target
    std::vector<WeightedPoint1D> gauss;
    for (int i = 0; i < N; ++i) {
        double u = (i + 0.5) / N;
        gauss.push_back({HighReal(std::pow(2.0, u) - 1.0), HighReal(1)});
    }
    CHECK(cdf_distance(EmpiricalMeasure1D(gauss), ReferenceMeasure::gauss()) == doctest::Approx(0.5 / N));
    CHECK_THROWS_AS(cdf_distance(g, ReferenceMeasure::farey_extension()), InvalidArgument);
}

TEST_CASE("weighted farey points approach lebesgue") {
    double prev_x = 1.0, prev_cdf = 1.0;
    for (double T : {4.0, 6.0, 8.0, 10.0}) {
        auto m = EmpiricalMeasure1D::farey_weighted(enumerate_farey(T));
        double ex = std::fabs(m.integrate(TestFunction1D::identity()) - 0.5);
        double ec = cdf_distance(m, ReferenceMeasure::lebesgue());
        CHECK(ex < prev_x);
        CHECK(ec <= 1.1 * prev_cdf);
        prev_x = ex;
        prev_cdf = ec;
    }
    CHECK(prev_x < 0.01);
    CHECK(prev_cdf < 0.015);
}

TEST_CASE("pair measure: symmetry and boxes") {
    auto pts = enumerate_farey(10.0);
    auto m2 = EmpiricalMeasure2D::farey_pairs(pts);
    CHECK(m2.integrate_high(TestFunction2D::first()) == m2.integrate_high(TestFunction2D::second()));
    for (auto [x, y] : {std::pair{0.25, 0.25}, {0.5, 0.25}, {0.5, 0.5}}) {
        auto box = TestFunction2D::upper_box(x, y);
        CHECK(std::fabs(m2.integrate(box) - (1 - x) * (1 - y)) < 0.03);
        CHECK(m2.integrate(box) == doctest::Approx(m2.integrate(TestFunction2D::upper_box(y, x))).epsilon(1e-15));
    }
    CHECK(std::fabs(m2.integrate(TestFunction2D::product()) - 0.25) < 0.02);
    CHECK(pair_weight(HighReal(0.3), HighReal(0.7)) == pair_weight(HighReal(0.7), HighReal(0.3)));
    CHECK(pair_weight(HighReal(1), HighReal(0.4)) == HighReal(1));
}

TEST_CASE("sums do not depend on thread count") {
    auto pts = enumerate_farey(9.0);
    auto a = EmpiricalMeasure2D::farey_pairs(pts, 1);
    auto b = EmpiricalMeasure2D::farey_pairs(pts, 4);
    CHECK(a.normalizer() == b.normalizer());
    CHECK(a.integrate_high(TestFunction2D::product()) == b.integrate_high(TestFunction2D::product()));
    auto c = EmpiricalMeasure1D::farey_weighted(pts, 1);
    auto d = EmpiricalMeasure1D::farey_weighted(pts, 3);
    CHECK(c.integrate_high(TestFunction1D::one_minus_log()) == d.integrate_high(TestFunction1D::one_minus_log()));

    std::vector<HighReal> terms;
    for (int i = 1; i <= 20000; ++i) terms.push_back(HighReal(1) / i);
    auto rev = terms;
    std::reverse(rev.begin(), rev.end());
    CHECK(stable_sum(terms, 1) == stable_sum(rev, 3));
}

TEST_CASE("unweighted restricted count") {
    auto pts = enumerate_farey(10.0);
    auto top = unweighted_restricted_count(pts, 10.0, 1.0);
    CHECK(top.count == 0);
    CHECK(top.main_term == 0.0);

    for (double x0 : {0.5, 0.25}) {
        auto r = unweighted_restricted_count(pts, 10.0, x0);
        long expected = 0;
        for (const auto& p : pts) expected += p.value.to_double() >= x0;
        CHECK(r.count == expected);
        CHECK(r.main_term == doctest::Approx(std::exp(10.0) * std::log(1 / x0)));
        // the enumeration tracks the 3/pi^2-normalized main term
        double ratio = static_cast<double>(r.count) / r.normalized_main_term;
        CHECK(std::fabs(ratio - 1) < 0.05);
    }
    // points >= 1/2 are exactly the Gauss points
    CHECK(unweighted_restricted_count(pts, 10.0, 0.5).count == enumerate_gauss(10.0).size());
    CHECK_THROWS_AS(unweighted_restricted_count(pts, 10.0, 0.0), InvalidArgument);
}

TEST_CASE("summary writers") {
    EmpiricalMeasure1D half({{HighReal(0.5), HighReal(1)}});
    std::vector<EquidistRow> rows{equidist_row(2.0, half, TestFunction1D::identity())};
    CHECK(rows[0].abs_error == 0.0);
    std::ostringstream csv, json;
    write_equidist_csv(csv, rows);
    write_equidist_json(json, rows);
    CHECK(csv.str() == "T,function,empirical,target,abs_error\n2,\"x\",0.5,0.5,0\n");
    CHECK(json.str().find("\"function\": \"x\"") != std::string::npos);
}
