#pragma once

// Independent reference computations used only by the tests.

#include "farey/numeric.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using farey::Integer;
using farey::Rational;

struct Mat {
    Integer a, b, c, d;
    Mat operator*(const Mat& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
};

// Left product A_n ... A_1 of [[a_j, 1], [1, 0]].
inline Mat left_product(const std::vector<std::uint64_t>& w) {
    Mat m{1, 0, 0, 1};
    for (auto a : w) m = Mat{Integer(a), 1, 1, 0} * m;
    return m;
}

// [a_i, ..., a_n] by front-to-back recursion.
inline Rational cf_value(const std::vector<std::uint64_t>& w, std::size_t i = 0) {
    if (i + 1 == w.size()) return Rational(Integer(1), Integer(w[i]));
    return 1 / (Rational(w[i]) + cf_value(w, i + 1));
}

inline std::vector<std::uint64_t> random_word(std::mt19937_64& rng, std::size_t max_len, std::uint64_t max_digit) {
    std::uniform_int_distribution<std::size_t> len(1, max_len);
    std::uniform_int_distribution<std::uint64_t> dig(1, max_digit);
    std::vector<std::uint64_t> w(len(rng));
    for (auto& a : w) a = dig(rng);
    return w;
}

// Calls f on every word of length 1..max_len with digits 1..max_digit.
inline void for_each_word(std::size_t max_len, std::uint64_t max_digit,
                          const std::function<void(const std::vector<std::uint64_t>&)>& f) {
    std::vector<std::uint64_t> w;
    std::function<void()> rec = [&]() {
        if (!w.empty()) f(w);
        if (w.size() == max_len) return;
        for (std::uint64_t a = 1; a <= max_digit; ++a) {
            w.push_back(a);
            rec();
            w.pop_back();
        }
    };
    rec();
}

}  // namespace oracle

namespace oracle {

// Continued fraction digits of p/q in (0,1] by Euclid, canonical form.
inline std::vector<std::uint64_t> euclid_digits(Integer p, Integer q) {
    std::vector<std::uint64_t> out;
    while (p != 0) {
        Integer a = q / p;
        Integer r = q % p;
        out.push_back(static_cast<std::uint64_t>(a));
        q = p;
        p = r;
    }
    return out;
}

// Every word a (n >= 1) whose matrix [[q_n, p_n], [q_{n-1}, p_{n-1}]] has trace
// at most `max_trace`, found by scanning integer matrices of determinant +-1
// rather than by extending words.
inline std::vector<std::vector<std::uint64_t>> words_by_matrix_scan(long max_trace) {
    std::vector<std::vector<std::uint64_t>> out;
    for (long q = 1; q <= max_trace; ++q) {
        for (long p = 1; p <= q; ++p) {
            for (long qp = 1; qp <= q; ++qp) {
                for (int s : {-1, 1}) {
                    long num = p * qp + s;
                    if (num < 0 || num % q != 0) continue;
                    long pp = num / q;
                    if (pp > p || q + pp > max_trace) continue;
                    auto w = euclid_digits(p, q);
                    // two expansions of p/q; keep the one with q_{n-1} = qp
                    std::vector<std::vector<std::uint64_t>> cands{w};
                    if (w.back() > 1) {
                        auto alt = w;
                        alt.back() -= 1;
                        alt.push_back(1);
                        cands.push_back(alt);
                    }
                    for (const auto& c : cands) {
                        Mat m = left_product(c);
                        if (m.a == q && m.b == p && m.c == qp && m.d == pp) out.push_back(c);
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace oracle

namespace oracle {

struct SL2 {
    long a, b, c, d;
    std::string letters;  // factorization over {A, B}, left to right
};

// Writes a nonnegative determinant-one matrix as a word in A = [[1,0],[1,1]] and
// B = [[1,1],[0,1]] by peeling the dominated column off the right.
inline std::string ab_letters(long a, long b, long c, long d) {
    std::string rev;
    while (!(a == 1 && b == 0 && c == 0 && d == 1)) {
        if (a >= b && c >= d) {
            a -= b;
            c -= d;
            rev.push_back('A');
        } else {
            b -= a;
            d -= c;
            rev.push_back('B');
        }
    }
    return {rev.rbegin(), rev.rend()};
}

// Every nonnegative integer matrix with ad - bc = 1, a + d <= max_trace and
// off-diagonal entries at most max_off, found by factoring ad - 1.
inline std::vector<SL2> positive_sl2_scan(long max_trace, long max_off) {
    std::vector<SL2> out;
    for (long a = 1; a < max_trace; ++a) {
        for (long d = 1; a + d <= max_trace; ++d) {
            const long n = a * d - 1;
            if (n == 0) {
                out.push_back({a, 0, 0, d, ab_letters(a, 0, 0, d)});
                for (long k = 1; k <= max_off; ++k) {
                    out.push_back({1, k, 0, 1, ab_letters(1, k, 0, 1)});
                    out.push_back({1, 0, k, 1, ab_letters(1, 0, k, 1)});
                }
                continue;
            }
            for (long b = 1; b <= n && b <= max_off; ++b) {
                if (n % b == 0 && n / b <= max_off) out.push_back({a, b, n / b, d, ab_letters(a, b, n / b, d)});
            }
        }
    }
    return out;
}

}  // namespace oracle
