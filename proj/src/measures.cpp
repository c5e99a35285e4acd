#include "farey/measures.hpp"

#include "farey/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace farey {

namespace {

constexpr std::size_t kShard = 4096;

// Runs body(i) for i in [0, n); each index is touched by exactly one worker.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body body) {
    if (threads <= 1 || n < 2 * kShard) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            std::size_t begin = next.fetch_add(kShard);
            if (begin >= n) return;
            std::size_t end = std::min(n, begin + kShard);
            for (std::size_t i = begin; i < end; ++i) body(i);
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
}

double to_d(const HighReal& x) { return static_cast<double>(x); }

}  // namespace

TestFunction1D TestFunction1D::one() {
    return {"1", [](const HighReal&) { return HighReal(1); }, 1.0};
}

TestFunction1D TestFunction1D::identity() {
    return {"x", [](const HighReal& x) { return x; }, 0.5};
}

TestFunction1D TestFunction1D::square() {
    return {"x^2", [](const HighReal& x) { return x * x; }, 1.0 / 3.0};
}

TestFunction1D TestFunction1D::indicator(double a, double b) {
    if (!(a <= b)) throw InvalidArgument("indicator needs a <= b");
    HighReal ha(a), hb(b);
    double len = std::max(0.0, std::min(b, 1.0) - std::max(a, 0.0));
    std::ostringstream name;
    name << "1[" << a << "," << b << "]";
    return {name.str(), [ha, hb](const HighReal& x) { return HighReal(x >= ha && x <= hb ? 1 : 0); }, len};
}

TestFunction1D TestFunction1D::one_minus_log() {
    return {"1-log(x)", [](const HighReal& x) { return HighReal(1) - log(x); }, 2.0};
}

TestFunction2D TestFunction2D::one() {
    return {"1", [](const HighReal&, const HighReal&) { return HighReal(1); }, 1.0};
}

TestFunction2D TestFunction2D::first() {
    return {"x", [](const HighReal& x, const HighReal&) { return x; }, 0.5};
}

TestFunction2D TestFunction2D::second() {
    return {"y", [](const HighReal&, const HighReal& y) { return y; }, 0.5};
}

TestFunction2D TestFunction2D::product() {
    return {"xy", [](const HighReal& x, const HighReal& y) { return x * y; }, 0.25};
}

TestFunction2D TestFunction2D::upper_box(double x0, double y0) {
    if (!(x0 >= 0.0 && x0 <= 1.0 && y0 >= 0.0 && y0 <= 1.0)) throw InvalidArgument("box corner must lie in [0,1]^2");
    HighReal hx(x0), hy(y0);
    std::ostringstream name;
    name << "1[" << x0 << ",1]x[" << y0 << ",1]";
    return {name.str(),
            [hx, hy](const HighReal& x, const HighReal& y) { return HighReal(x >= hx && y >= hy ? 1 : 0); },
            (1.0 - x0) * (1.0 - y0)};
}

HighReal stable_sum(std::vector<HighReal> terms, unsigned threads) {
    std::sort(terms.begin(), terms.end());
    std::size_t shards = (terms.size() + kShard - 1) / kShard;
    std::vector<HighReal> partial(shards);
    parallel_for(shards, threads, [&](std::size_t s) {
        KahanSum<HighReal> acc;
        std::size_t end = std::min(terms.size(), (s + 1) * kShard);
        for (std::size_t i = s * kShard; i < end; ++i) acc.add(terms[i]);
        partial[s] = acc.value();
    });
    KahanSum<HighReal> total;
    for (const auto& p : partial) total.add(p);
    return total.value();
}

HighReal pair_weight(const HighReal& x, const HighReal& y) {
    HighReal s = x + y - x * y;
    return s * s;
}

EmpiricalMeasure1D::EmpiricalMeasure1D(std::vector<WeightedPoint1D> points, unsigned threads)
    : points_(std::move(points)), threads_(std::max(1u, threads)) {
    for (const auto& p : points_) {
        if (p.weight < 0) throw InvalidArgument("negative weight");
    }
    std::sort(points_.begin(), points_.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
    std::vector<HighReal> w;
    w.reserve(points_.size());
    for (const auto& p : points_) w.push_back(p.weight);
    normalizer_ = stable_sum(std::move(w), threads_);
    if (!points_.empty() && !(normalizer_ > 0)) throw InvalidArgument("total weight must be positive");
}

EmpiricalMeasure1D EmpiricalMeasure1D::farey_weighted(std::span<const PeriodicPoint> points, unsigned threads) {
    std::vector<WeightedPoint1D> pts(points.size());
    parallel_for(points.size(), threads, [&](std::size_t i) {
        HighReal x = points[i].value.to_high();
        pts[i] = {x, x};
    });
    return EmpiricalMeasure1D(std::move(pts), threads);
}

HighReal EmpiricalMeasure1D::integrate_high(const TestFunction1D& f) const {
    if (points_.empty()) throw EmptyMeasure("integrate over an empty measure");
    std::vector<HighReal> terms(points_.size());
    parallel_for(points_.size(), threads_, [&](std::size_t i) { terms[i] = points_[i].weight * f.f(points_[i].x); });
    return stable_sum(std::move(terms), threads_) / normalizer_;
}

double EmpiricalMeasure1D::integrate(const TestFunction1D& f) const { return to_d(integrate_high(f)); }

EmpiricalMeasure2D::EmpiricalMeasure2D(std::vector<WeightedPoint2D> points, unsigned threads)
    : points_(std::move(points)), threads_(std::max(1u, threads)) {
    for (const auto& p : points_) {
        if (p.weight < 0) throw InvalidArgument("negative weight");
    }
    std::vector<HighReal> w;
    w.reserve(points_.size());
    for (const auto& p : points_) w.push_back(p.weight);
    normalizer_ = stable_sum(std::move(w), threads_);
    if (!points_.empty() && !(normalizer_ > 0)) throw InvalidArgument("total weight must be positive");
}

EmpiricalMeasure2D EmpiricalMeasure2D::farey_pairs(std::span<const PeriodicPoint> points, unsigned threads) {
    std::vector<WeightedPoint2D> pts(points.size());
    parallel_for(points.size(), threads, [&](std::size_t i) {
        HighReal x = points[i].value.to_high();
        HighReal y = points[i].tilde.to_high();
        pts[i] = {x, y, pair_weight(x, y)};
    });
    return EmpiricalMeasure2D(std::move(pts), threads);
}

HighReal EmpiricalMeasure2D::integrate_high(const TestFunction2D& f) const {
    if (points_.empty()) throw EmptyMeasure("integrate over an empty measure");
    std::vector<HighReal> terms(points_.size());
    parallel_for(points_.size(), threads_, [&](std::size_t i) {
        const auto& p = points_[i];
        terms[i] = p.weight * f.f(p.x, p.y);
    });
    return stable_sum(std::move(terms), threads_) / normalizer_;
}

double EmpiricalMeasure2D::integrate(const TestFunction2D& f) const { return to_d(integrate_high(f)); }

double cdf_distance(const EmpiricalMeasure1D& measure, const ReferenceMeasure& target) {
    if (measure.empty()) throw EmptyMeasure("cdf distance of an empty measure");
    if (target.two_dimensional()) throw InvalidArgument("cdf distance needs a one-dimensional target");
    const auto& pts = measure.points();
    KahanSum<HighReal> cum;
    double worst = 0.0;
    std::size_t i = 0;
    while (i < pts.size()) {
        double before = to_d(cum.value() / measure.normalizer());
        std::size_t j = i;
        while (j < pts.size() && pts[j].x == pts[i].x) cum.add(pts[j++].weight);
        double after = to_d(cum.value() / measure.normalizer());
        double F = target.cdf(to_d(pts[i].x));
        worst = std::max({worst, std::fabs(before - F), std::fabs(after - F)});
        i = j;
    }
    return worst;
}

RestrictedCount unweighted_restricted_count(std::span<const PeriodicPoint> points, double T, double x0) {
    if (!(x0 > 0.0 && x0 <= 1.0)) throw InvalidArgument("x0 must lie in (0,1]");
    Rational r = to_rational(x0);
    RestrictedCount out;
    out.T = T;
    out.x0 = x0;
    out.count = 0;
    for (const auto& p : points) {
        if (p.length <= T && p.value.compare(r) >= 0) ++out.count;
    }
    out.main_term = std::exp(T) * std::log(1.0 / x0);
    out.normalized_main_term = out.main_term * 3.0 / (std::numbers::pi * std::numbers::pi);
    return out;
}

RestrictedCount unweighted_restricted_count(double T, double x0, const EnumerationOptions& options) {
    if (!(x0 > 0.0 && x0 <= 1.0)) throw InvalidArgument("x0 must lie in (0,1]");
    auto pts = enumerate_farey(T, options);
    return unweighted_restricted_count(pts, T, x0);
}

EquidistRow equidist_row(double T, const EmpiricalMeasure1D& m, const TestFunction1D& f) {
    double e = m.integrate(f);
    return {T, f.name, e, f.lebesgue_integral, std::fabs(e - f.lebesgue_integral)};
}

EquidistRow equidist_row(double T, const EmpiricalMeasure2D& m, const TestFunction2D& f) {
    double e = m.integrate(f);
    return {T, f.name, e, f.lebesgue_integral, std::fabs(e - f.lebesgue_integral)};
}

void write_equidist_csv(std::ostream& os, std::span<const EquidistRow> rows) {
    os << "T,function,empirical,target,abs_error\n";
    auto old = os.precision(17);
    for (const auto& r : rows) {
        os << r.T << ",\"" << r.function << "\"," << r.empirical << ',' << r.target << ',' << r.abs_error << '\n';
    }
    os.precision(old);
}

void write_equidist_json(std::ostream& os, std::span<const EquidistRow> rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"T", r.T},
                       {"function", r.function},
                       {"empirical", r.empirical},
                       {"target", r.target},
                       {"abs_error", r.abs_error}});
    }
    os << arr.dump(2) << '\n';
}

}  // namespace farey
