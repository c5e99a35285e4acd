#include "farey/transfer.hpp"

#include "farey/errors.hpp"
#include "farey/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <Eigen/Eigenvalues>

#include "json.hpp"

namespace farey {

namespace {

using Series = std::vector<double>;

Series mul(const Series& a, const Series& b) {
    const std::size_t J = a.size();
    Series out(J, 0.0);
    for (std::size_t i = 0; i < J; ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t k = 0; i + k < J; ++k) out[i + k] += a[i] * b[k];
    }
    return out;
}

Series exp_series(const Series& a) {
    const std::size_t J = a.size();
    Series e(J, 0.0);
    e[0] = std::exp(a[0]);
    for (std::size_t m = 1; m < J; ++m) {
        double acc = 0.0;
        for (std::size_t i = 1; i <= m; ++i) acc += static_cast<double>(i) * a[i] * e[m - i];
        e[m] = acc / static_cast<double>(m);
    }
    return e;
}

// Taylor coefficients in h of (1/(x+h) - 1)^k (x+h)^{-2s} exp(w f(1/(x+h)))
// for k = 0..cols-1, each to J terms; here x = n + 1 and z = 1 + h.
std::vector<Series> branch_columns(double x, const OperatorConfig& c, std::size_t cols, std::size_t J) {
    Series u(J), w(J);
    double inv = 1.0 / x;
    double p = inv;
    for (std::size_t m = 0; m < J; ++m) {
        u[m] = (m % 2 ? -p : p);
        p *= inv;
    }
    double b = std::pow(x, -2.0 * c.s);
    for (std::size_t m = 0; m < J; ++m) {
        w[m] = b;
        b *= (-2.0 * c.s - static_cast<double>(m)) / static_cast<double>(m + 1) * inv;
    }
    Series base = w;
    if (c.omega != 0.0) {
        Series poly(J, 0.0);
        for (auto it = c.weight.f1.rbegin(); it != c.weight.f1.rend(); ++it) {
            poly = mul(poly, u);
            poly[0] += *it;
        }
        Series f = poly;
        if (c.weight.log_factor) {
            // 1 - log(1/(x+h)) = 1 + log x + log(1 + h/x)
            Series l(J, 0.0);
            l[0] = 1.0 + std::log(x);
            double q = inv;
            for (std::size_t m = 1; m < J; ++m) {
                l[m] = (m % 2 ? q : -q) / static_cast<double>(m);
                q *= inv;
            }
            f = mul(poly, l);
        }
        for (auto& v : f) v *= c.omega;
        base = mul(w, exp_series(f));
    }
    Series v = u;
    v[0] -= 1.0;
    std::vector<Series> cols_out;
    cols_out.reserve(cols);
    cols_out.push_back(base);
    for (std::size_t k = 1; k < cols; ++k) cols_out.push_back(mul(cols_out.back(), v));
    return cols_out;
}

// the branch function itself at xi = z + n
double branch_value(double xi, std::size_t k, const OperatorConfig& c) {
    double u = 1.0 / xi;
    double val = std::pow(u - 1.0, static_cast<double>(k)) * std::pow(xi, -2.0 * c.s);
    if (c.omega != 0.0) val *= std::exp(c.omega * c.weight(u));
    return val;
}

struct Attempt {
    Eigen::MatrixXd m;
    double tail = 0.0;
};

Attempt assemble(const OperatorConfig& c, std::size_t N) {
    const std::size_t R = c.rank, P = c.em_terms;
    const std::size_t J = R + 2 * P;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(R), static_cast<Eigen::Index>(R));
    // direct terms, smallest contributions first
    for (std::size_t n = N - 1; n >= 1; --n) {
        auto cols = branch_columns(static_cast<double>(n + 1), c, R, R);
        for (std::size_t k = 0; k < R; ++k)
            for (std::size_t j = 0; j < R; ++j) m(j, k) += cols[k][j];
    }
    // Euler-Maclaurin for n >= N. With F(n) = c_j(n) = G^{(j)}(n+1)/j!, the
    // n-derivatives are F^{(r)}(N) = (j+r)!/j! c_{j+r}(N), and for j >= 1
    // the integral of F over [N, inf) is -c_{j-1}(N)/j.
    auto cols = branch_columns(static_cast<double>(N + 1), c, R, J);
    boost::math::quadrature::exp_sinh<double> integrator;
    double tail = 0.0;
    for (std::size_t k = 0; k < R; ++k) {
        const Series& ck = cols[k];
        for (std::size_t j = 0; j < R; ++j) {
            double integral;
            if (j == 0) {
                integral = integrator.integrate([&](double xi) { return branch_value(xi, k, c); },
                                                static_cast<double>(N + 1), std::numeric_limits<double>::infinity());
            } else {
                integral = -ck[j - 1] / static_cast<double>(j);
            }
            double sum = integral + ck[j] / 2.0;
            double last = 0.0;
            for (std::size_t p = 1; p <= P; ++p) {
                std::size_t r = 2 * p - 1;
                double ratio = 1.0;
                for (std::size_t i = 1; i <= r; ++i) ratio *= static_cast<double>(j + i);
                double fact = std::tgamma(static_cast<double>(2 * p + 1));
                last = boost::math::bernoulli_b2n<double>(static_cast<int>(p)) / fact * ratio * ck[j + r];
                sum -= last;
            }
            tail = std::max(tail, std::fabs(last));
            m(j, k) += sum;
        }
    }
    return {m, tail};
}

}  // namespace

double WeightFunction::poly(double x) const {
    double acc = 0.0;
    for (auto it = f1.rbegin(); it != f1.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double WeightFunction::operator()(double x) const {
    double p = poly(x);
    return log_factor ? p * (1.0 - std::log(x)) : p;
}

double WeightFunction::f1_sup() const {
    double best = 0.0;
    constexpr int samples = 4096;
    for (int i = 0; i < samples; ++i) {
        std::complex<double> z = 1.0 + std::polar(1.0, 2.0 * std::numbers::pi * i / samples);
        std::complex<double> acc = 0.0;
        for (auto it = f1.rbegin(); it != f1.rend(); ++it) acc = acc * z + *it;
        best = std::max(best, std::abs(acc));
    }
    return best;
}

double WeightFunction::domain_constant() const {
    // without the log factor |f| <= sup|f1| already holds on the branch images
    return log_factor ? f1_sup() * (1.0 + std::numbers::pi) : f1_sup();
}

void OperatorConfig::validate() const {
    if (!std::isfinite(s) || !std::isfinite(omega)) throw InvalidArgument("s and omega must be finite");
    if (rank < 2) throw InvalidArgument("rank must be at least 2");
    if (series_cutoff < 2) throw InvalidArgument("series cutoff must be at least 2");
    if (em_terms < 1) throw InvalidArgument("need at least one Euler-Maclaurin term");
    if (weight.f1.empty()) throw InvalidArgument("weight polynomial is empty");
    if (!(tolerance > 0)) throw InvalidArgument("tolerance must be positive");
}

bool OperatorConfig::in_domain() const {
    return s > (1.0 + weight.domain_constant() * std::fabs(omega)) / 2.0;
}

double OperatorMatrix::evaluate(const Eigen::VectorXd& coeffs, double z) {
    double acc = 0.0;
    for (Eigen::Index j = coeffs.size() - 1; j >= 0; --j) acc = acc * (z - 1.0) + coeffs(j);
    return acc;
}

OperatorMatrix build(const OperatorConfig& config) {
    config.validate();
    if (!config.in_domain()) throw DomainError("(s, omega) outside the admissible region");
    constexpr std::size_t max_cutoff = 4096;
    std::size_t N = config.series_cutoff;
    for (;;) {
        Attempt a = assemble(config, N);
        if (!a.m.allFinite()) throw ConvergenceError("operator matrix has non-finite entries");
        if (a.tail <= config.tolerance) {
            OperatorMatrix out;
            out.matrix = std::move(a.m);
            out.config = config;
            out.cutoff_used = N;
            out.tail_estimate = a.tail;
            return out;
        }
        if (N * 2 > max_cutoff) throw ConvergenceError("series tail above tolerance at the largest cutoff");
        N *= 2;
    }
}

std::vector<std::complex<double>> top_eigenvalues(const OperatorMatrix& m, std::size_t count) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m.matrix, false);
    if (solver.info() != Eigen::Success) throw ConvergenceError("eigenvalue solver failed");
    std::vector<std::complex<double>> ev(solver.eigenvalues().begin(), solver.eigenvalues().end());
    std::stable_sort(ev.begin(), ev.end(), [](auto a, auto b) { return std::abs(a) > std::abs(b); });
    if (ev.size() > count) ev.resize(count);
    return ev;
}

LeadingEigen leading_eigen(const OperatorMatrix& m, std::size_t max_iterations) {
    const auto& A = m.matrix;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(A.rows());
    v(0) = 1.0;
    double lambda = 0.0;
    LeadingEigen out;
    bool converged = false;
    for (std::size_t it = 1; it <= max_iterations; ++it) {
        Eigen::VectorXd w = A * v;
        double next = w.dot(v) / v.dot(v);
        double norm = w.norm();
        if (!(norm > 0) || !std::isfinite(norm)) throw NoDominantEigen("power iteration collapsed");
        w /= norm;
        double change = std::min((w - v).norm(), (w + v).norm());
        v = w;
        out.iterations = it;
        if (it > 1 && std::fabs(next - lambda) <= 1e-15 * std::max(1.0, std::fabs(next)) && change < 1e-12) {
            lambda = next;
            converged = true;
            break;
        }
        lambda = next;
    }
    if (!converged) throw NoDominantEigen("power iteration did not settle");
    // the dominant eigenvalue must be simple and separated from the rest
    auto ev = top_eigenvalues(m, 2);
    if (ev.size() > 1 && std::abs(ev[1]) >= std::abs(ev[0]) * (1 - 1e-8)) throw NoDominantEigen("no spectral gap");
    if (std::fabs(ev[0].imag()) > 1e-12 || std::fabs(ev[0].real() - lambda) > 1e-9 * std::max(1.0, std::fabs(lambda))) {
        throw NoDominantEigen("power iteration disagrees with the dense solver");
    }
    if (v(0) == 0.0) throw NoDominantEigen("eigenvector has no constant term");
    out.value = lambda;
    out.vector = v / v(0);
    return out;
}

Eigen::VectorXd gauss_density_coefficients(std::size_t rank) {
    Eigen::VectorXd d(static_cast<Eigen::Index>(rank));
    double p = 0.5;
    for (std::size_t j = 0; j < rank; ++j) {
        d(static_cast<Eigen::Index>(j)) = (j % 2 ? -p : p);
        p /= 2;
    }
    return d;
}

double gauss_integral(const WeightFunction& f) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    return integrator.integrate([&](double x) { return f(x) / (1.0 + x); }, 0.0, 1.0) / std::numbers::ln2;
}

DerivativeReport derivative_checks(const WeightFunction& f, std::size_t rank, double step) {
    if (!(step > 0)) throw InvalidArgument("step must be positive");
    auto lam = [&](double s, double w) {
        OperatorConfig c;
        c.s = s;
        c.omega = w;
        c.weight = f;
        c.rank = rank;
        return leading_eigen(build(c)).value;
    };
    DerivativeReport r;
    r.step = step;
    r.d_ds = (lam(1 + step, 0) - lam(1 - step, 0)) / (2 * step);
    r.d_ds_target = -std::numbers::pi * std::numbers::pi / (6 * std::numbers::ln2);
    r.d_domega = (lam(1, step) - lam(1, -step)) / (2 * step);
    r.d_domega_target = gauss_integral(f);
    return r;
}

TraceCheck trace_formula_check(int n, double s, std::size_t rank) {
    if (n != 1 && n != 2) throw InvalidArgument("trace check supports n = 1 or 2");
    if (!(s > 1)) throw InvalidArgument("trace formula needs s > 1");
    OperatorConfig c;
    c.s = s;
    c.omega = 0.0;
    c.rank = rank;
    auto M = build(c);
    TraceCheck out;
    out.n = n;
    out.s = s;
    out.matrix_trace = n == 1 ? M.trace() : (M.matrix * M.matrix).trace();

    constexpr double target = 1e-10;
    constexpr double limit = 1e-6;
    KahanSum<long double> sum;
    const long double ls = s;
    if (n == 1) {
        // fixed points x_a = [a, a, ...]; term x^{2s}/(1 + x^2); tail below zeta(2s, A+1)
        double A = std::ceil(std::pow((2 * s - 1) * target, -1.0 / (2 * s - 1)));
        std::size_t cutoff = static_cast<std::size_t>(std::min(A, 1e7));
        for (std::size_t a = cutoff; a >= 1; --a) {
            long double la = static_cast<long double>(a);
            long double x = 2.0L / (la + std::sqrt(la * la + 4.0L));
            sum.add(std::pow(x, 2 * ls) / (1.0L + x * x));
        }
        out.orbit_cutoff = cutoff;
        out.orbit_tail_bound = hurwitz_zeta(2 * s, static_cast<double>(cutoff + 1));
    } else {
        // period-two words (a1, a2) depend only on m = a1 a2 through the
        // eigenvalue e of trace m + 2; term e^{-2s}/(1 - e^{-2}), weighted by d(m)
        if (!(s > 0.75)) throw InvalidArgument("trace check needs s > 3/4");
        double M2 = std::ceil(std::pow((2 * s - 1.5) * target / 4, -1.0 / (2 * s - 1.5)));
        std::size_t cutoff = static_cast<std::size_t>(std::min(M2, 4e6));
        std::vector<std::uint32_t> divisors(cutoff + 1, 0);
        for (std::size_t d = 1; d <= cutoff; ++d)
            for (std::size_t k = d; k <= cutoff; k += d) ++divisors[k];
        for (std::size_t m = cutoff; m >= 1; --m) {
            long double t = static_cast<long double>(m) + 2.0L;
            long double inv = 2.0L / (t + std::sqrt(t * t - 4.0L));  // 1 / eigenvalue
            sum.add(divisors[m] * std::pow(inv, 2 * ls) / (1.0L - inv * inv));
        }
        out.orbit_cutoff = cutoff;
        // d(m) <= 2 sqrt(m) and the term is at most 2 m^{-2s}
        out.orbit_tail_bound = 4.0 * std::pow(static_cast<double>(cutoff), 1.5 - 2 * s) / (2 * s - 1.5);
    }
    out.orbit_sum = static_cast<double>(sum.value());
    if (out.orbit_tail_bound > limit) throw ConvergenceError("periodic-orbit tail bound too large");
    return out;
}

SpectrumReport spectrum_report(const OperatorConfig& config, double trace_s) {
    SpectrumReport r;
    r.config = config;
    auto M = build(config);
    r.cutoff_tail = M.tail_estimate;
    r.eigenvalues = top_eigenvalues(M, 5);
    r.leading = leading_eigen(M).value;
    r.derivative_one = derivative_checks(WeightFunction::one(), config.rank);
    r.derivative_log = derivative_checks(WeightFunction::one_minus_log(), config.rank);
    r.traces.push_back(trace_formula_check(1, trace_s, config.rank));
    r.traces.push_back(trace_formula_check(2, trace_s, config.rank));
    return r;
}

void write_spectrum_json(std::ostream& os, const SpectrumReport& r) {
    using nlohmann::json;
    json ev = json::array();
    for (auto z : r.eigenvalues) ev.push_back({{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}});
    auto deriv = [](const DerivativeReport& d) {
        return json{{"d_ds", d.d_ds},         {"d_ds_target", d.d_ds_target}, {"d_domega", d.d_domega},
                    {"d_domega_target", d.d_domega_target}, {"step", d.step}};
    };
    json traces = json::array();
    for (const auto& t : r.traces) {
        traces.push_back({{"n", t.n},
                          {"s", t.s},
                          {"matrix_trace", t.matrix_trace},
                          {"orbit_sum", t.orbit_sum},
                          {"residual", t.residual()},
                          {"orbit_tail_bound", t.orbit_tail_bound},
                          {"orbit_cutoff", t.orbit_cutoff}});
    }
    json j{{"config",
            {{"s", r.config.s},
             {"omega", r.config.omega},
             {"rank", r.config.rank},
             {"series_cutoff", r.config.series_cutoff},
             {"weight_f1", r.config.weight.f1},
             {"weight_log_factor", r.config.weight.log_factor}}},
           {"eigenvalues", ev},
           {"leading", r.leading},
           {"series_tail_estimate", r.cutoff_tail},
           {"derivatives", {{"f=1", deriv(r.derivative_one)}, {"f=1-log(x)", deriv(r.derivative_log)}}},
           {"traces", traces}};
    os << j.dump(2) << '\n';
}

}  // namespace farey
