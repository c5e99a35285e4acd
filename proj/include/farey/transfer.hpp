#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace farey {

// f(x) = f1(x) (1 - log x), or f(x) = f1(x) when log_factor is false.
struct WeightFunction {
    std::vector<double> f1{1.0};  // polynomial coefficients, constant term first
    bool log_factor = true;

    static WeightFunction one() { return {{1.0}, false}; }
    static WeightFunction one_minus_log() { return {{1.0}, true}; }

    double operator()(double x) const;
    double poly(double x) const;
    // sup of |f1| on the closed disk |z - 1| <= 1
    double f1_sup() const;
    // constant K of the admissible region Re(s) > (1 + K|w|)/2
    double domain_constant() const;
};

struct OperatorConfig {
    double s = 1.0;
    double omega = 0.0;
    WeightFunction weight = WeightFunction::one_minus_log();
    std::size_t rank = 30;
    // terms n < cutoff are summed directly; the rest by Euler-Maclaurin
    std::size_t series_cutoff = 32;
    std::size_t em_terms = 8;
    double tolerance = 1e-13;

    void validate() const;
    bool in_domain() const;
};

struct OperatorMatrix {
    Eigen::MatrixXd matrix;  // column k: Taylor coefficients at 1 of L applied to (z-1)^k
    OperatorConfig config;
    std::size_t cutoff_used = 0;
    double tail_estimate = 0.0;  // size of the last Euler-Maclaurin correction

    std::size_t rank() const { return static_cast<std::size_t>(matrix.rows()); }
    double trace() const { return matrix.trace(); }
    // evaluates sum_j c_j (z-1)^j
    static double evaluate(const Eigen::VectorXd& coeffs, double z);
};

OperatorMatrix build(const OperatorConfig& config);

struct LeadingEigen {
    double value = 0.0;
    Eigen::VectorXd vector;  // normalized so the constant coefficient is 1
    std::size_t iterations = 0;
};

LeadingEigen leading_eigen(const OperatorMatrix& m, std::size_t max_iterations = 20000);

// eigenvalues sorted by decreasing modulus
std::vector<std::complex<double>> top_eigenvalues(const OperatorMatrix& m, std::size_t count = 5);

// coefficients of 1/(1+z) at z = 1
Eigen::VectorXd gauss_density_coefficients(std::size_t rank);

struct DerivativeReport {
    double d_ds = 0.0;
    double d_ds_target = 0.0;  // minus the entropy of the Gauss map
    double d_domega = 0.0;
    double d_domega_target = 0.0;  // integral of f against the Gauss measure
    double step = 0.0;
};

// integral of f(x) dx / ((1+x) log 2) over [0,1]
double gauss_integral(const WeightFunction& f);

DerivativeReport derivative_checks(const WeightFunction& f, std::size_t rank = 30, double step = 1e-4);

struct TraceCheck {
    int n = 1;
    double s = 0.0;
    double matrix_trace = 0.0;
    double orbit_sum = 0.0;
    double orbit_tail_bound = 0.0;
    std::size_t orbit_cutoff = 0;

    double residual() const { return matrix_trace - orbit_sum; }
};

// n in {1, 2}, s > 1, omega = 0
TraceCheck trace_formula_check(int n, double s, std::size_t rank = 30);

struct SpectrumReport {
    OperatorConfig config;
    std::vector<std::complex<double>> eigenvalues;
    double leading = 0.0;
    DerivativeReport derivative_one;
    DerivativeReport derivative_log;
    std::vector<TraceCheck> traces;
    double cutoff_tail = 0.0;
};

SpectrumReport spectrum_report(const OperatorConfig& config, double trace_s = 1.5);
void write_spectrum_json(std::ostream& os, const SpectrumReport& r);

}  // namespace farey
