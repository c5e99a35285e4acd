#pragma once

#include "farey/maps.hpp"
#include "farey/numeric.hpp"
#include "farey/periodic.hpp"

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace farey {

struct TestFunction1D {
    std::string name;
    std::function<HighReal(const HighReal&)> f;
    double lebesgue_integral = 0.0;  // over [0,1]

    static TestFunction1D one();
    static TestFunction1D identity();
    static TestFunction1D square();
    // indicator of [a, b]
    static TestFunction1D indicator(double a, double b);
    // 1 - log x, the weight used on the transfer side
    static TestFunction1D one_minus_log();
};

struct TestFunction2D {
    std::string name;
    std::function<HighReal(const HighReal&, const HighReal&)> f;
    double lebesgue_integral = 0.0;  // over [0,1]^2

    static TestFunction2D one();
    static TestFunction2D first();
    static TestFunction2D second();
    static TestFunction2D product();
    // indicator of [x0,1] x [y0,1]
    static TestFunction2D upper_box(double x0, double y0);
};

struct WeightedPoint1D {
    HighReal x;
    HighReal weight;
};

struct WeightedPoint2D {
    HighReal x;
    HighReal y;
    HighReal weight;
};

// Sums are formed from the sorted term list, so equal multisets of terms give
// bit-identical results whatever the point order or thread count.
class EmpiricalMeasure1D {
public:
    explicit EmpiricalMeasure1D(std::vector<WeightedPoint1D> points, unsigned threads = 1);

    // weight omega on each Farey periodic point
    static EmpiricalMeasure1D farey_weighted(std::span<const PeriodicPoint> points, unsigned threads = 1);

    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const std::vector<WeightedPoint1D>& points() const { return points_; }  // sorted by x
    const HighReal& normalizer() const { return normalizer_; }

    HighReal integrate_high(const TestFunction1D& f) const;
    double integrate(const TestFunction1D& f) const;

private:
    std::vector<WeightedPoint1D> points_;
    HighReal normalizer_;
    unsigned threads_;
};

class EmpiricalMeasure2D {
public:
    explicit EmpiricalMeasure2D(std::vector<WeightedPoint2D> points, unsigned threads = 1);

    // weight h(omega, omega~) = (x + y - xy)^2 on each pair
    static EmpiricalMeasure2D farey_pairs(std::span<const PeriodicPoint> points, unsigned threads = 1);

    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const std::vector<WeightedPoint2D>& points() const { return points_; }
    const HighReal& normalizer() const { return normalizer_; }

    HighReal integrate_high(const TestFunction2D& f) const;
    double integrate(const TestFunction2D& f) const;

private:
    std::vector<WeightedPoint2D> points_;
    HighReal normalizer_;
    unsigned threads_;
};

HighReal pair_weight(const HighReal& x, const HighReal& y);

// Order-independent compensated sum: terms are sorted, summed in fixed-size
// shards, and the shard totals reduced in shard order.
HighReal stable_sum(std::vector<HighReal> terms, unsigned threads = 1);

// sup over atoms of |F_emp - F_target|, both one-sided limits at each atom
double cdf_distance(const EmpiricalMeasure1D& measure, const ReferenceMeasure& target);

struct RestrictedCount {
    double T = 0.0;
    double x0 = 0.0;
    Integer count;
    double main_term = 0.0;             // e^T log(1/x0)
    double normalized_main_term = 0.0;  // the same times 3/pi^2
};

// Farey periodic points with omega >= x0 and length <= T.
RestrictedCount unweighted_restricted_count(double T, double x0, const EnumerationOptions& options = {});
RestrictedCount unweighted_restricted_count(std::span<const PeriodicPoint> points, double T, double x0);

struct EquidistRow {
    double T = 0.0;
    std::string function;
    double empirical = 0.0;
    double target = 0.0;
    double abs_error = 0.0;
};

EquidistRow equidist_row(double T, const EmpiricalMeasure1D& m, const TestFunction1D& f);
EquidistRow equidist_row(double T, const EmpiricalMeasure2D& m, const TestFunction2D& f);
void write_equidist_csv(std::ostream& os, std::span<const EquidistRow> rows);
void write_equidist_json(std::ostream& os, std::span<const EquidistRow> rows);

}  // namespace farey
