#include "farey/periodic.hpp"

#include "farey/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

namespace farey {

const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

namespace {

template <unsigned Bits>
bool try_floor_two_cosh_half(double T, Integer& out) {
    using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<Bits>,
                                               boost::multiprecision::et_off>;
    Real h = Real(T) / 2;
    Real b = exp(h) + exp(-h);
    Real f = floor(b);
    Real eps = ldexp(b, -static_cast<int>(Bits) + 16);
    if (b - f <= eps || f + 1 - b <= eps) return false;
    out = f.template convert_to<Integer>();
    return true;
}

HighReal length_high(const Integer& even_trace) {
    HighReal t(even_trace);
    return 2 * log((t + sqrt(t * t - 4)) / 2);
}

}  // namespace

Integer floor_two_cosh_half(double T) {
    if (!std::isfinite(T)) throw InvalidArgument("length bound must be finite");
    T = std::fabs(T);
    if (T == 0.0) return 2;
    Integer out;
    if (try_floor_two_cosh_half<128>(T, out)) return out;
    if (try_floor_two_cosh_half<256>(T, out)) return out;
    if (try_floor_two_cosh_half<512>(T, out)) return out;
    if (try_floor_two_cosh_half<2048>(T, out)) return out;
    throw ConvergenceError("could not decide floor(2 cosh(T/2))");
}

LengthBudget LengthBudget::for_length(double T) {
    if (!(T > 0.0)) throw InvalidArgument("length bound must be positive");
    return {T, floor_two_cosh_half(T)};
}

Integer even_trace(const CFWord& word) {
    CFWord base(std::vector<Digit>(word.digits().begin(),
                                   word.digits().begin() + static_cast<std::ptrdiff_t>(word.minimal_period())));
    Integer t = convergent_matrix(base).trace();
    return base.size() % 2 == 0 ? t : t * t + 2;
}

QuadIrrational length_eigenvalue(const Integer& even_trace) {
    return QuadIrrational(even_trace, 1, 2, even_trace * even_trace - 4);
}

double length_from_even_trace(const Integer& even_trace) {
    return static_cast<double>(length_high(even_trace));
}

LengthValue length_of(const CFWord& word) {
    const std::size_t n = word.minimal_period();
    CFWord base(std::vector<Digit>(word.digits().begin(), word.digits().begin() + static_cast<std::ptrdiff_t>(n)));
    LengthValue out;
    out.parity = n % 2 == 0 ? Parity::Even : Parity::Odd;
    out.even_trace = even_trace(base);
    out.via_eigenvalue = static_cast<double>(length_high(out.even_trace));

    QuadIrrational x = purely_periodic_value(base);
    HighReal sum = 0;
    for (std::size_t j = 0; j < n; ++j) {
        x = gauss_step(x);
        sum += log(x.to_high());
    }
    HighReal factor = out.parity == Parity::Even ? -2 : -4;
    out.via_orbit = static_cast<double>(factor * sum);
    return out;
}

double tuple_length(const CFWord& word) {
    auto m = convergent_matrix(word);
    HighReal t(m.trace());
    HighReal disc = word.size() % 2 == 0 ? t * t - 4 : t * t + 4;
    return static_cast<double>(2 * log((t + sqrt(disc)) / 2));
}

namespace {

enum class Weighting { Orbits, GaussPoints, FareyPoints };

struct SharedState {
    std::uint64_t bound = 0;
    Weighting weighting = Weighting::Orbits;
    std::size_t max_points = 0;
    std::atomic<std::uint64_t> points{0};
    std::atomic<bool> stop{false};
};

class LyndonSearch {
public:
    LyndonSearch(SharedState& shared, std::vector<PrimitiveOrbit>& out) : shared_(shared), out_(out) {}

    void run_root(Digit c) {
        word_.assign(1, c);
        // q_1 = c, q_0 = 1, p_1 = 1, p_0 = 0
        dfs(1, c, 1, 1, 0);
    }

private:
    void emit(std::uint64_t q, std::uint64_t p_prev) {
        const std::size_t k = word_.size();
        const std::uint64_t t = q + p_prev;
        unsigned __int128 te = t;
        if (k % 2 == 1) te = static_cast<unsigned __int128>(t) * t + 2;
        if (te > shared_.bound) return;
        PrimitiveOrbit orbit{CFWord(word_), Integer(t), Integer(static_cast<std::uint64_t>(te)),
                             k % 2 == 0 ? Parity::Even : Parity::Odd, 0.0};
        orbit.length = length_from_even_trace(orbit.even_trace);
        std::uint64_t weight = 1;
        if (shared_.weighting == Weighting::GaussPoints) weight = k;
        if (shared_.weighting == Weighting::FareyPoints) {
            weight = 0;
            for (Digit a : word_) weight += a;
        }
        std::uint64_t total = shared_.points.fetch_add(weight) + weight;
        if (shared_.max_points != 0 && total > shared_.max_points) {
            shared_.stop = true;
            throw ResourceLimit("enumeration exceeds the configured maximum of " +
                                std::to_string(shared_.max_points) + " points");
        }
        out_.push_back(std::move(orbit));
    }

    // Prefix word_ with Lyndon period p and convergent data (q, q_prev, pn, p_prev).
    void dfs(std::size_t p, std::uint64_t q, std::uint64_t q_prev, std::uint64_t pn, std::uint64_t p_prev) {
        if (shared_.stop) return;
        const std::size_t k = word_.size();
        if (p == k) emit(q, p_prev);
        if (q_prev > shared_.bound) return;
        // trace >= q_n >= q_k for every extension, so q above the bound prunes
        const std::uint64_t cmax = (shared_.bound - q_prev) / q;
        const Digit c0 = word_[k - p];
        for (Digit c = c0; c <= cmax; ++c) {
            word_.push_back(c);
            dfs(c == c0 ? p : k + 1, c * q + q_prev, q, c * pn + p_prev, pn);
            word_.pop_back();
        }
    }

    SharedState& shared_;
    std::vector<PrimitiveOrbit>& out_;
    std::vector<Digit> word_;
};

std::vector<PrimitiveOrbit> search(const Integer& max_even_trace, Weighting weighting,
                                   const EnumerationOptions& options) {
    if (max_even_trace > Integer(std::uint64_t(1) << 62)) throw InvalidArgument("trace bound too large to enumerate");
    SharedState shared;
    shared.bound = static_cast<std::uint64_t>(max_even_trace);
    shared.weighting = weighting;
    shared.max_points = options.max_points;

    std::vector<PrimitiveOrbit> all;
    if (shared.bound < 3) return all;
    // a Lyndon word starting with c has all digits >= c, so c^2 + 2 <= trace
    const Digit last_root = static_cast<Digit>(std::sqrt(static_cast<long double>(shared.bound))) + 1;
    const unsigned threads = std::max(1u, options.threads);

    if (threads == 1) {
        LyndonSearch s(shared, all);
        for (Digit c = 1; c <= last_root; ++c) s.run_root(c);
    } else {
        std::atomic<Digit> next{1};
        std::vector<std::vector<PrimitiveOrbit>> parts(threads);
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) {
            pool.emplace_back([&, i] {
                try {
                    LyndonSearch s(shared, parts[i]);
                    for (Digit c = next++; c <= last_root && !shared.stop; c = next++) s.run_root(c);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    shared.stop = true;
                }
            });
        }
        for (auto& t : pool) t.join();
        if (error) std::rethrow_exception(error);
        for (auto& part : parts) {
            all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
        }
    }
    std::sort(all.begin(), all.end(), [](const PrimitiveOrbit& a, const PrimitiveOrbit& b) {
        if (a.even_trace != b.even_trace) return a.even_trace < b.even_trace;
        return a.word < b.word;
    });
    return all;
}

void check_length(double T) {
    if (!(T > 0.0)) throw InvalidArgument("length bound must be positive");
    if (T > kMaxEnumerationLength) throw InvalidArgument("length bound above the supported maximum");
}

void sort_points(std::vector<PeriodicPoint>& pts) {
    std::sort(pts.begin(), pts.end(), [](const PeriodicPoint& a, const PeriodicPoint& b) {
        if (a.even_trace != b.even_trace) return a.even_trace < b.even_trace;
        if (a.period != b.period) return a.period < b.period;
        return a.shift < b.shift;
    });
}

}  // namespace

std::vector<PrimitiveOrbit> enumerate_orbits_by_trace(const Integer& max_even_trace,
                                                      const EnumerationOptions& options) {
    return search(max_even_trace, Weighting::Orbits, options);
}

std::vector<PrimitiveOrbit> enumerate_orbits(double T, const EnumerationOptions& options) {
    check_length(T);
    return search(LengthBudget::for_length(T).max_even_trace, Weighting::Orbits, options);
}

void expand_gauss(const PrimitiveOrbit& orbit, std::vector<PeriodicPoint>& out) {
    const std::size_t n = orbit.word.size();
    QuadIrrational x = purely_periodic_value(orbit.word);
    for (std::size_t r = 0; r < n; ++r) {
        // tilde = [1, reversed period] = conj / (conj - 1)
        QuadIrrational tilde = moebius(x.conjugate(), IntMatrix2{1, 0, 1, -1});
        out.push_back(PeriodicPoint{x, orbit.word.rotated(r), 0, std::move(tilde), orbit.even_trace, orbit.length,
                                    orbit.parity, n});
        if (r + 1 < n) x = gauss_step(x);
    }
}

void expand_farey(const PrimitiveOrbit& orbit, std::vector<PeriodicPoint>& out) {
    const std::size_t n = orbit.word.size();
    QuadIrrational x = purely_periodic_value(orbit.word);
    for (std::size_t r = 0; r < n; ++r) {
        CFWord period = orbit.word.rotated(r);
        QuadIrrational conj = x.conjugate();
        for (Digit k = 0; k < period[0]; ++k) {
            Integer kk(k);
            // F^k(x) = x / (1 - k x) and tilde = [1 + k, reversed period]
            out.push_back(PeriodicPoint{moebius(x, IntMatrix2{1, 0, -kk, 1}), period, k,
                                        moebius(conj, IntMatrix2{1, 0, kk + 1, -1}), orbit.even_trace, orbit.length,
                                        orbit.parity, n});
        }
        if (r + 1 < n) x = gauss_step(x);
    }
}

std::vector<PeriodicPoint> enumerate_gauss(double T, const EnumerationOptions& options) {
    check_length(T);
    auto orbits = search(LengthBudget::for_length(T).max_even_trace, Weighting::GaussPoints, options);
    std::vector<PeriodicPoint> pts;
    for (const auto& o : orbits) expand_gauss(o, pts);
    sort_points(pts);
    return pts;
}

std::vector<PeriodicPoint> enumerate_farey(double T, const EnumerationOptions& options) {
    check_length(T);
    auto orbits = search(LengthBudget::for_length(T).max_even_trace, Weighting::FareyPoints, options);
    std::vector<PeriodicPoint> pts;
    for (const auto& o : orbits) expand_farey(o, pts);
    sort_points(pts);
    return pts;
}

Integer count_farey_points(double T, const EnumerationOptions& options) {
    check_length(T);
    EnumerationOptions opts = options;
    opts.max_points = 0;
    Integer total = 0;
    for (const auto& o : search(LengthBudget::for_length(T).max_even_trace, Weighting::Orbits, opts)) {
        total += o.word.digit_sum();
    }
    return total;
}

namespace {

using SurdKey = std::tuple<Integer, Integer, Integer, Integer>;

SurdKey key(const QuadIrrational& x) { return {x.d(), x.a(), x.b(), x.c()}; }

}  // namespace

bool symmetry_check(std::span<const PeriodicPoint> points) {
    std::vector<std::pair<SurdKey, SurdKey>> direct, swapped;
    direct.reserve(points.size());
    swapped.reserve(points.size());
    for (const auto& p : points) {
        direct.emplace_back(key(p.value), key(p.tilde));
        swapped.emplace_back(key(p.tilde), key(p.value));
    }
    std::sort(direct.begin(), direct.end());
    std::sort(swapped.begin(), swapped.end());
    return direct == swapped;
}

bool symmetry_check(double T) {
    auto pts = enumerate_farey(T);
    return symmetry_check(pts);
}

void write_points_csv(std::ostream& os, std::span<const PeriodicPoint> points) {
    os << "period,k,omega,omega_tilde,length,parity,per\n";
    for (const auto& p : points) {
        os << '"' << p.period.to_string() << "\"," << p.shift << ',' << p.value.to_decimal(30) << ','
           << p.tilde.to_decimal(30) << ',' << to_decimal(length_high(p.even_trace), 30) << ',' << to_string(p.parity)
           << ',' << p.per << '\n';
    }
}

}  // namespace farey
