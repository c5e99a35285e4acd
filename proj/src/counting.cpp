#include "farey/counting.hpp"

#include "farey/errors.hpp"
#include "farey/surd.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

namespace farey {

namespace {

// Largest trace bound; keeps every entry (at most trace^2/4) well inside int64.
constexpr std::int64_t kMaxTrace = std::int64_t{1} << 30;

using Wide = __int128;

// Exact test of s * x <= y for a double s >= 0 and integers x, y >= 0.
class Scale {
public:
    explicit Scale(double s) {
        Rational r = to_rational(s);
        num_ = boost::multiprecision::numerator(r);
        den_ = boost::multiprecision::denominator(r);
        fast_ = num_ <= std::numeric_limits<std::int64_t>::max() && den_ <= std::numeric_limits<std::int64_t>::max();
        if (fast_) {
            n_ = static_cast<std::int64_t>(num_);
            d_ = static_cast<std::int64_t>(den_);
        }
    }

    bool times_le(std::int64_t x, std::int64_t y) const {
        if (fast_) return Wide(n_) * x <= Wide(d_) * y;
        return num_ * x <= den_ * y;
    }
    // y <= s * x
    bool ge_ratio(std::int64_t y, std::int64_t x) const {
        if (fast_) return Wide(d_) * y <= Wide(n_) * x;
        return den_ * y <= num_ * x;
    }

private:
    Integer num_, den_;
    bool fast_ = false;
    std::int64_t n_ = 0, d_ = 1;
};

void check_unit(double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        throw InvalidArgument(std::string(name) + " must lie in [0, 1]");
    }
}

void check_trace_bound(std::int64_t N) {
    if (N < 2) throw InvalidArgument("N must be at least 2");
    if (N > kMaxTrace) throw InvalidArgument("N too large for 64-bit enumeration");
}

void check_region(double u, double v, double floor) {
    if (u + v <= 0.0) throw DegenerateRegion("region at the origin is unbounded");
    if (u + v < floor) throw DegenerateRegion("region below the configured floor");
}

// Depth-first walk below B^{a1} A, appending A or B while the trace stays bounded.
template <class Visit>
void walk_shard(std::int64_t a1, std::int64_t N, Visit&& visit) {
    struct Node {
        SmallMatrix m;
        bool ends_in_a;
    };
    std::vector<Node> stack;
    stack.push_back({SmallMatrix{1 + a1, a1, 1, 1}, true});
    while (!stack.empty()) {
        Node node = stack.back();
        stack.pop_back();
        visit(node.m, node.ends_in_a);
        const SmallMatrix& m = node.m;
        // appending B adds c to the trace, appending A adds b
        if (m.trace() + m.c <= N) stack.push_back({SmallMatrix{m.a, m.b + m.a, m.c, m.d + m.c}, false});
        if (m.trace() + m.b <= N) stack.push_back({SmallMatrix{m.a + m.b, m.b, m.c + m.d, m.d}, true});
    }
}

double log_ratio_main(double num, double den, double scale) {
    return scale * std::log(num / den);
}

}  // namespace

SmallMatrix operator*(const SmallMatrix& x, const SmallMatrix& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

ABProduct ABProduct::from_exponents(std::vector<Digit> exponents) {
    if (exponents.empty()) throw InvalidArgument("empty product");
    SmallMatrix m;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] == 0) throw InvalidArgument("exponents must be positive");
        auto e = static_cast<std::int64_t>(exponents[i]);
        m = m * (i % 2 == 0 ? SmallMatrix{1, e, 0, 1} : SmallMatrix{1, 0, e, 1});
    }
    return {std::move(exponents), m};
}

void for_each_product(std::int64_t max_trace, const ProductVisitor& visit, unsigned threads) {
    if (max_trace < 3) return;
    if (max_trace > kMaxTrace) throw InvalidArgument("trace bound too large for 64-bit enumeration");
    const std::int64_t shards = max_trace - 2;
    auto run = [&](std::int64_t a1) {
        const auto shard = static_cast<std::size_t>(a1 - 1);
        walk_shard(a1, max_trace, [&](const SmallMatrix& m, bool ends_in_a) { visit(m, ends_in_a, shard); });
    };
    threads = std::max(1u, threads);
    if (threads == 1) {
        for (std::int64_t a1 = 1; a1 <= shards; ++a1) run(a1);
        return;
    }
    std::atomic<std::int64_t> next{1};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::int64_t a1; (a1 = next.fetch_add(1)) <= shards;) run(a1);
        });
    }
    for (auto& th : pool) th.join();
}

void for_each_product_word(std::int64_t max_trace, const std::function<void(const ABProduct&)>& visit) {
    if (max_trace < 3) return;
    if (max_trace > kMaxTrace) throw InvalidArgument("trace bound too large for 64-bit enumeration");
    for (std::int64_t a1 = 1; a1 + 2 <= max_trace; ++a1) {
        std::vector<ABProduct> stack;
        stack.push_back({{static_cast<Digit>(a1), 1}, SmallMatrix{1 + a1, a1, 1, 1}});
        while (!stack.empty()) {
            ABProduct node = std::move(stack.back());
            stack.pop_back();
            visit(node);
            const SmallMatrix& m = node.matrix;
            const bool ends_in_a = node.is_even();
            if (m.trace() + m.c <= max_trace) {
                ABProduct child = node;
                child.matrix = SmallMatrix{m.a, m.b + m.a, m.c, m.d + m.c};
                if (ends_in_a) child.exponents.push_back(1);
                else ++child.exponents.back();
                stack.push_back(std::move(child));
            }
            if (m.trace() + m.b <= max_trace) {
                ABProduct child = std::move(node);
                child.matrix = SmallMatrix{m.a + m.b, m.b, m.c + m.d, m.d};
                if (ends_in_a) ++child.exponents.back();
                else child.exponents.push_back(1);
                stack.push_back(std::move(child));
            }
        }
    }
}

const char* to_string(CountKind kind) {
    switch (kind) {
        case CountKind::QF: return "qf";
        case CountKind::QFTilde: return "qf-tilde";
        case CountKind::PsiEven: return "psi-ev";
        case CountKind::SOdd: return "s-odd";
    }
    return "?";
}

double CountReport::relative_error() const {
    if (!(main_term > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return std::abs(static_cast<double>(count) - main_term) / main_term;
}

double CountReport::normalized_relative_error() const {
    if (!(normalized_main > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return std::abs(static_cast<double>(count) - normalized_main) / normalized_main;
}

double small_region_floor(double N, double delta) { return std::pow(N, -1.0 / 3.0 + delta); }

double psi_even_main_term(double alpha, double beta, double N) {
    return log_ratio_main(1.0 + alpha * beta, 1.0, N * N / (2.0 * kZeta2));
}

double s_odd_main_term(double alpha, double beta, double N) {
    return log_ratio_main((1.0 + alpha) * (1.0 + beta), 2.0 * (alpha + beta), N * N / (2.0 * kZeta2));
}

CountReport count_psi_even(double alpha, double beta, std::int64_t N, const CountOptions& options) {
    check_unit(alpha, "alpha");
    check_unit(beta, "beta");
    check_trace_bound(N);
    const Scale sa(alpha), sb(beta);
    std::vector<std::uint64_t> tally(static_cast<std::size_t>(std::max<std::int64_t>(N - 2, 1)), 0);
    for_each_product(
        N,
        [&](const SmallMatrix& m, bool ends_in_a, std::size_t shard) {
            if (!ends_in_a) return;
            // [[q', q], [p', p]]
            const std::int64_t qp = m.a, q = m.b, pp = m.c, p = m.d;
            if (p > q || pp > qp) return;
            if (sa.ge_ratio(pp, qp) && sb.ge_ratio(q, qp)) ++tally[shard];
        },
        options.threads);
    CountReport r;
    r.kind = CountKind::PsiEven;
    r.size = static_cast<double>(N);
    r.a = alpha;
    r.b = beta;
    for (auto t : tally) r.count += t;
    r.main_term = psi_even_main_term(alpha, beta, r.size);
    return r;
}

CountReport count_s_odd(double alpha, double beta, std::int64_t N, const CountOptions& options) {
    check_unit(alpha, "alpha");
    check_unit(beta, "beta");
    check_trace_bound(N);
    check_region(alpha, beta, options.region_floor);
    const Scale sa(alpha), sb(beta);
    auto in_region = [&](const SmallMatrix& m) {
        // [[q, q'], [p, p']]
        const std::int64_t q = m.a, qp = m.b, p = m.c, pp = m.d;
        return p <= q && pp <= qp && q <= qp && sa.times_le(qp, pp) && sb.times_le(qp, q);
    };
    std::vector<std::uint64_t> tally(static_cast<std::size_t>(std::max<std::int64_t>(N - 2, 1)), 0);
    for_each_product(
        N,
        [&](const SmallMatrix& m, bool ends_in_a, std::size_t shard) {
            if (!ends_in_a && in_region(m)) ++tally[shard];
        },
        options.threads);
    CountReport r;
    r.kind = CountKind::SOdd;
    r.size = static_cast<double>(N);
    r.a = alpha;
    r.b = beta;
    for (auto t : tally) r.count += t;
    // B^{a} has trace 2; the region bounds a by 1/max(alpha, beta)
    for (std::int64_t a1 = 1; in_region(SmallMatrix{1, a1, 0, 1}); ++a1) ++r.count;
    r.main_term = s_odd_main_term(alpha, beta, r.size);
    return r;
}

double qf_prediction(double T) {
    const double e = std::exp(T);
    return T * e / (4.0 * kZeta2) + (kEulerGamma - 1.5 - kZetaPrime2 / kZeta2) * e / (2.0 * kZeta2);
}

CountReport count_qf(double T, const CountOptions& options) {
    if (!std::isfinite(T) || T < 0.0) throw InvalidArgument("T must be nonnegative");
    if (T > options.max_T) throw InvalidArgument("T exceeds the configured maximum");
    const Integer n = count_farey_points(T, {options.threads, options.max_points});
    CountReport r;
    r.kind = CountKind::QF;
    r.size = T;
    r.count = static_cast<std::uint64_t>(n);
    r.main_term = qf_prediction(T);
    r.residual = static_cast<double>(r.count) - r.main_term;
    r.scaled_residual = r.residual / (std::pow(T, 4) * std::exp(0.75 * T));
    return r;
}

double qf_tilde_main_term(double x, double y, double T) { return std::exp(T) * std::log(1.0 / (x + y - x * y)); }

CountReport count_qf_tilde(std::span<const PeriodicPoint> points, double x, double y, double T,
                           const CountOptions& options) {
    check_unit(x, "x");
    check_unit(y, "y");
    check_region(x, y, options.region_floor);
    const Rational rx = to_rational(x), ry = to_rational(y);
    CountReport r;
    r.kind = CountKind::QFTilde;
    r.size = T;
    r.a = x;
    r.b = y;
    for (const auto& p : points) {
        if (p.length <= T && p.value.compare(rx) >= 0 && p.tilde.compare(ry) >= 0) ++r.count;
    }
    r.main_term = qf_tilde_main_term(x, y, T);
    r.normalized_main = 3.0 / (std::numbers::pi * std::numbers::pi) * r.main_term;
    return r;
}

CountReport count_qf_tilde(double x, double y, double T, const CountOptions& options) {
    check_unit(x, "x");
    check_unit(y, "y");
    check_region(x, y, options.region_floor);
    if (!std::isfinite(T) || T < 0.0) throw InvalidArgument("T must be nonnegative");
    if (T > options.max_T) throw InvalidArgument("T exceeds the configured maximum");
    const auto points = enumerate_farey(T, {options.threads, options.max_points});
    return count_qf_tilde(points, x, y, T, options);
}

std::vector<std::vector<Digit>> even_words_from_orbits(std::int64_t N) {
    check_trace_bound(N);
    std::vector<std::vector<Digit>> out;
    const Integer bound = N;
    for (const auto& orbit : enumerate_orbits_by_trace(bound)) {
        const Integer t = orbit.even_trace;
        for (std::size_t r = 0; r < orbit.word.size(); ++r) {
            CFWord u = orbit.word.rotated(r);
            if (u.size() % 2 == 1) u = u.repeated(2);
            // trace of u^k follows t_k = t t_{k-1} - t_{k-2}
            Integer prev = 2, cur = t;
            for (std::size_t k = 1; cur <= bound; ++k) {
                const auto w = u.repeated(k);
                out.emplace_back(w.digits().begin(), w.digits().end());
                Integer next = t * cur - prev;
                prev = cur;
                cur = next;
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<Digit>> even_words_from_products(std::int64_t N) {
    check_trace_bound(N);
    std::vector<std::vector<Digit>> out;
    for_each_product_word(N, [&](const ABProduct& p) {
        if (p.is_even()) out.push_back(p.exponents);
    });
    std::sort(out.begin(), out.end());
    return out;
}

BijectionReport bijection_check(std::int64_t N) {
    BijectionReport rep;
    rep.N = N;
    check_trace_bound(N);
    std::vector<std::vector<Digit>> words;
    for_each_product_word(N, [&](const ABProduct& p) {
        if (!p.is_even()) return;
        words.push_back(p.exponents);
        const auto cm = convergent_matrix(std::span<const Digit>(p.exponents));
        const SmallMatrix& m = p.matrix;
        if (Integer(m.a) != cm.q_n || Integer(m.b) != cm.q_prev || Integer(m.c) != cm.p_n ||
            Integer(m.d) != cm.p_prev) {
            rep.matrices_match = false;
        }
    });
    std::sort(words.begin(), words.end());
    const auto from_orbits = even_words_from_orbits(N);
    rep.products = words.size();
    rep.orbit_words = from_orbits.size();
    rep.equal = rep.matrices_match && words == from_orbits;
    return rep;
}

OddProductPoint odd_product_point(const ABProduct& product) {
    const auto& e = product.exponents;
    if (e.size() < 3 || e.size() % 2 == 0) throw InvalidArgument("need an odd product with at least three runs");
    const Digit joined = e.front() + e.back();
    std::vector<Digit> period(e.begin() + 1, e.end() - 1);
    period.push_back(joined);
    std::vector<Digit> back(e.rbegin() + 1, e.rend() - 1);
    back.push_back(joined);
    auto value = [](Digit head, std::vector<Digit> per) {
        CFWord w(std::move(per));
        const std::size_t root = w.minimal_period();
        std::vector<Digit> r(w.digits().begin(), w.digits().begin() + static_cast<std::ptrdiff_t>(root));
        return from_periodic(PeriodicCF({head}, CFWord(std::move(r))));
    };
    return {value(e.front(), std::move(period)), value(e.back(), std::move(back))};
}

ApproximationReport approximation_check(double alpha, double beta, std::int64_t N, std::size_t stride) {
    check_unit(alpha, "alpha");
    check_unit(beta, "beta");
    check_trace_bound(N);
    check_region(alpha, beta, 0.0);
    if (stride == 0) throw InvalidArgument("stride must be positive");
    const Scale sa(alpha), sb(beta);
    const double qmin = std::sqrt(static_cast<double>(N) / (alpha + beta));
    ApproximationReport rep;
    std::size_t seen = 0;
    for_each_product_word(N, [&](const ABProduct& p) {
        if (p.is_even()) return;
        const SmallMatrix& m = p.matrix;
        const std::int64_t q = m.a, qp = m.b, pp = m.d;
        if (!(q <= qp && pp <= qp && sa.times_le(qp, pp) && sb.times_le(qp, q))) return;
        if (static_cast<double>(qp) < qmin) return;
        if (seen++ % stride != 0) return;
        const auto pt = odd_product_point(p);
        const Integer& d = pt.omega.d();
        const QuadNumber w(pt.omega);
        const QuadNumber lhs = (w - QuadNumber(Rational(pp, qp), d)).abs();
        const QuadNumber rhs = QuadNumber(Rational(1), d) /
                               (QuadNumber(Rational(Integer(qp) * qp), d) * (w + QuadNumber(pt.companion)));
        ++rep.checked;
        if (lhs.compare(rhs) > 0) ++rep.failures;
    });
    return rep;
}

namespace {

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

void write_counts_csv(std::ostream& os, std::span<const CountReport> rows) {
    os << "kind,size,a,b,count,main_term,relative_error,normalized_main,scaled_residual\n";
    for (const auto& r : rows) {
        os << to_string(r.kind) << ',' << fmt(r.size) << ',' << fmt(r.a) << ',' << fmt(r.b) << ',' << r.count << ','
           << fmt(r.main_term) << ',' << fmt(r.relative_error()) << ',' << fmt(r.normalized_main) << ','
           << fmt(r.scaled_residual) << '\n';
    }
}

void write_counts_json(std::ostream& os, std::span<const CountReport> rows) {
    auto num = [](double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); };
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
        out.push_back({{"kind", to_string(r.kind)},
                       {"size", r.size},
                       {"a", r.a},
                       {"b", r.b},
                       {"count", r.count},
                       {"main_term", r.main_term},
                       {"relative_error", num(r.relative_error())},
                       {"normalized_main", r.normalized_main},
                       {"scaled_residual", r.scaled_residual}});
    }
    os << out.dump(2) << '\n';
}

}  // namespace farey
