#pragma once

#include "farey/cf.hpp"
#include "farey/periodic.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace farey {

// Euler's constant and the derivative of zeta at 2, to 20 digits.
inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kZetaPrime2 = -0.93754825431584375370;
inline constexpr double kZeta2 = 1.64493406684822643647;

// 2x2 matrix with 64-bit entries, [[a, b], [c, d]].
struct SmallMatrix {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    std::int64_t trace() const { return a + d; }
    std::int64_t determinant() const { return a * d - b * c; }
    friend bool operator==(const SmallMatrix&, const SmallMatrix&) = default;
};

inline constexpr SmallMatrix kMatrixA{1, 0, 1, 1};
inline constexpr SmallMatrix kMatrixB{1, 1, 0, 1};

SmallMatrix operator*(const SmallMatrix& x, const SmallMatrix& y);

// B^{a_1} A^{a_2} B^{a_3} ... with positive exponents.
struct ABProduct {
    std::vector<Digit> exponents;
    SmallMatrix matrix;

    // Even products end in an A-run.
    bool is_even() const { return exponents.size() % 2 == 0; }
    static ABProduct from_exponents(std::vector<Digit> exponents);
};

// Visits every product B^{a_1} A^{a_2} ... containing at least one A with
// trace <= max_trace. Pure B-powers have trace 2 for every exponent and are
// never visited. The callback gets the matrix and whether the word ends in A.
// Shards run in parallel, so the callback must be thread safe when threads > 1;
// the shard index (first exponent minus one) is passed for lock-free tallies.
using ProductVisitor = std::function<void(const SmallMatrix&, bool ends_in_a, std::size_t shard)>;
void for_each_product(std::int64_t max_trace, const ProductVisitor& visit, unsigned threads = 1);

// Same enumeration, single threaded, with the exponent word attached.
void for_each_product_word(std::int64_t max_trace,
                           const std::function<void(const ABProduct&)>& visit);

enum class CountKind { QF, QFTilde, PsiEven, SOdd };

const char* to_string(CountKind kind);

struct CountReport {
    CountKind kind = CountKind::QF;
    double size = 0.0;  // N for matrix counts, T for point counts
    double a = 0.0;     // alpha or x
    double b = 0.0;     // beta or y
    std::uint64_t count = 0;
    double main_term = 0.0;
    // qf-tilde only: the main term scaled by 3/pi^2
    double normalized_main = 0.0;
    // qf only: count minus the two-term prediction, and that over T^4 e^{3T/4}
    double residual = 0.0;
    double scaled_residual = 0.0;

    // |count - main| / main, or NaN when the main term vanishes.
    double relative_error() const;
    double normalized_relative_error() const;
};

struct CountOptions {
    unsigned threads = 1;
    std::size_t max_points = 0;
    // DegenerateRegion below this value of alpha + beta (or x + y); zero still rejects the origin
    double region_floor = 0.0;
    double max_T = 14.0;
};

// Floor N^{-1/3 + delta} used when the small-region constraint is enforced.
double small_region_floor(double N, double delta);

// Even products [[q', q], [p', p]] with p'/q' <= alpha, q/q' <= beta, p + q' <= N.
CountReport count_psi_even(double alpha, double beta, std::int64_t N, const CountOptions& options = {});
// Odd products [[q, q'], [p, p']] with alpha q' <= p' <= q', beta q' <= q <= q', p' + q <= N.
CountReport count_s_odd(double alpha, double beta, std::int64_t N, const CountOptions& options = {});

double psi_even_main_term(double alpha, double beta, double N);
double s_odd_main_term(double alpha, double beta, double N);

// Two-term growth prediction for the number of Farey points of length <= T.
double qf_prediction(double T);
CountReport count_qf(double T, const CountOptions& options = {});

// Farey points (w, w~) with w >= x, w~ >= y and length <= T.
CountReport count_qf_tilde(double x, double y, double T, const CountOptions& options = {});
CountReport count_qf_tilde(std::span<const PeriodicPoint> points, double x, double y, double T,
                           const CountOptions& options = {});
double qf_tilde_main_term(double x, double y, double T);

// Even-length words with trace <= N, read off the Gauss orbits: every word is
// u^k where u is a rotation of a primitive orbit word, doubled when its length is odd.
std::vector<std::vector<Digit>> even_words_from_orbits(std::int64_t N);
// Exponent words of even products with trace <= N, sorted.
std::vector<std::vector<Digit>> even_words_from_products(std::int64_t N);

struct BijectionReport {
    std::int64_t N = 0;
    std::size_t products = 0;
    std::size_t orbit_words = 0;
    bool matrices_match = true;  // product matrix is the transposed convergent matrix
    bool equal = false;
};
BijectionReport bijection_check(std::int64_t N);

// Point attached to the odd product with exponents (a_1, ..., a_{2m+1}), m >= 1:
// [a_1; repeat(a_2, ..., a_{2m}, a_1 + a_{2m+1})], and its companion
// [a_{2m+1}; repeat(a_{2m}, ..., a_2, a_1 + a_{2m+1})].
struct OddProductPoint {
    QuadIrrational omega;
    QuadIrrational companion;
};
OddProductPoint odd_product_point(const ABProduct& product);

struct ApproximationReport {
    std::size_t checked = 0;
    std::size_t failures = 0;
    bool passed() const { return failures == 0 && checked > 0; }
};
// |w - p'/q'| <= 1/(q'^2 (w + companion)) checked exactly on every `stride`-th
// odd product in the S_N region with q' >= sqrt(N / (alpha + beta)).
ApproximationReport approximation_check(double alpha, double beta, std::int64_t N, std::size_t stride = 1);

// kind,size,a,b,count,main_term,relative_error,normalized_main,scaled_residual
void write_counts_csv(std::ostream& os, std::span<const CountReport> rows);
void write_counts_json(std::ostream& os, std::span<const CountReport> rows);

}  // namespace farey
