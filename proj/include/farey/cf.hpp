#pragma once

#include "farey/numeric.hpp"

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace farey {

using Digit = std::uint64_t;

// Nonempty word of positive partial quotients (a_1, ..., a_n).
class CFWord {
public:
    explicit CFWord(std::vector<Digit> digits);
    CFWord(std::initializer_list<Digit> digits);

    std::span<const Digit> digits() const { return digits_; }
    std::size_t size() const { return digits_.size(); }
    Digit operator[](std::size_t i) const { return digits_[i]; }
    Digit front() const { return digits_.front(); }
    Digit back() const { return digits_.back(); }

    CFWord reversed() const;
    // Left rotation: (a_{k+1}, ..., a_n, a_1, ..., a_k).
    CFWord rotated(std::size_t k) const;
    CFWord repeated(std::size_t times) const;
    CFWord concat(const CFWord& other) const;

    Integer digit_sum() const;
    // Length of the shortest word whose power is this word.
    std::size_t minimal_period() const;
    bool is_primitive() const { return minimal_period() == size(); }
    // Lexicographically least rotation.
    CFWord canonical_rotation() const;

    std::string to_string() const;
    static CFWord parse(std::string_view text);

    friend auto operator<=>(const CFWord&, const CFWord&) = default;
    friend bool operator==(const CFWord&, const CFWord&) = default;

private:
    std::vector<Digit> digits_;
};

struct IntMatrix2 {
    Integer m11, m12, m21, m22;

    Integer determinant() const { return m11 * m22 - m12 * m21; }
    Integer trace() const { return m11 + m22; }
    IntMatrix2 operator*(const IntMatrix2& o) const;
    friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;
};

// [[q_n, p_n], [q_{n-1}, p_{n-1}]] for a word of length n.
struct ConvergentMatrix {
    Integer q_n, p_n, q_prev, p_prev;
    std::size_t n = 0;

    Integer determinant() const { return q_n * p_prev - p_n * q_prev; }
    Integer trace() const { return q_n + p_prev; }
    IntMatrix2 matrix() const { return {q_n, p_n, q_prev, p_prev}; }
};

ConvergentMatrix convergent_matrix(std::span<const Digit> digits);
inline ConvergentMatrix convergent_matrix(const CFWord& w) { return convergent_matrix(w.digits()); }

// Same recurrence in 64-bit arithmetic for enumerations over short words.
// append throws NotInRange on overflow.
struct SmallConvergents {
    std::int64_t q_n = 1, p_n = 0, q_prev = 0, p_prev = 1;
    std::size_t n = 0;

    SmallConvergents append(Digit a) const;
    std::int64_t determinant() const { return q_n * p_prev - p_n * q_prev; }
};

struct Convergents {
    std::vector<Rational> ratios;  // p_j / q_j, j = 1..n
    ConvergentMatrix matrix;
};

Convergents convergents(const CFWord& word);

// Value of the finite continued fraction [a_1, ..., a_n] = 1/(a_1 + 1/(...)).
Rational evaluate(std::span<const Digit> digits);
inline Rational evaluate(const CFWord& w) { return evaluate(w.digits()); }

// Entry j-1 holds q_{j,n} for j = 1..n+2.
std::vector<Integer> tail_denominators(const CFWord& word);
// Entry j-1 holds p_{j,n} = q_{j+1,n} for j = 1..n.
std::vector<Integer> tail_numerators(const CFWord& word);

bool reverse_identity_check(const CFWord& word);

struct CylinderInterval {
    CFWord word;
    Rational lower;
    Rational upper;

    Rational length() const { return upper - lower; }
    // 1 / (q_n (q_n + q_{n-1})).
    Rational measure() const;
};

CylinderInterval cylinder(const CFWord& word);

}  // namespace farey
