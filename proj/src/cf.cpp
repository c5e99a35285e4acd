#include "farey/cf.hpp"

#include "farey/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <sstream>

namespace farey {

CFWord::CFWord(std::vector<Digit> digits) : digits_(std::move(digits)) {
    if (digits_.empty()) throw InvalidArgument("continued fraction word must be nonempty");
    for (Digit d : digits_) {
        if (d == 0) throw InvalidArgument("continued fraction digits must be positive");
    }
}

CFWord::CFWord(std::initializer_list<Digit> digits) : CFWord(std::vector<Digit>(digits)) {}

CFWord CFWord::reversed() const {
    return CFWord(std::vector<Digit>(digits_.rbegin(), digits_.rend()));
}

CFWord CFWord::rotated(std::size_t k) const {
    std::vector<Digit> out(digits_);
    std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k % out.size()), out.end());
    return CFWord(std::move(out));
}

CFWord CFWord::repeated(std::size_t times) const {
    if (times == 0) throw InvalidArgument("repeat count must be positive");
    std::vector<Digit> out;
    out.reserve(digits_.size() * times);
    for (std::size_t i = 0; i < times; ++i) out.insert(out.end(), digits_.begin(), digits_.end());
    return CFWord(std::move(out));
}

CFWord CFWord::concat(const CFWord& other) const {
    std::vector<Digit> out(digits_);
    out.insert(out.end(), other.digits_.begin(), other.digits_.end());
    return CFWord(std::move(out));
}

Integer CFWord::digit_sum() const {
    Integer s = 0;
    for (Digit d : digits_) s += d;
    return s;
}

std::size_t CFWord::minimal_period() const {
    const std::size_t n = digits_.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p != 0) continue;
        bool ok = true;
        for (std::size_t i = p; i < n && ok; ++i) ok = digits_[i] == digits_[i - p];
        if (ok) return p;
    }
    return n;
}

CFWord CFWord::canonical_rotation() const {
    CFWord best = *this;
    for (std::size_t k = 1; k < digits_.size(); ++k) {
        CFWord r = rotated(k);
        if (r.digits_ < best.digits_) best = std::move(r);
    }
    return best;
}

std::string CFWord::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(digits_[i]);
    }
    return out;
}

CFWord CFWord::parse(std::string_view text) {
    std::vector<Digit> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string_view::npos) next = text.size();
        std::string_view tok = text.substr(pos, next - pos);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        Digit d = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty()) {
            throw InvalidArgument("bad digit list: " + std::string(text));
        }
        out.push_back(d);
        pos = next + 1;
    }
    return CFWord(std::move(out));
}

IntMatrix2 IntMatrix2::operator*(const IntMatrix2& o) const {
    return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
            m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
}

ConvergentMatrix convergent_matrix(std::span<const Digit> digits) {
    Integer p_prev = 1, q_prev = 0;  // p_{-1}, q_{-1}
    Integer p = 0, q = 1;            // p_0, q_0
    for (Digit a : digits) {
        Integer pn = a * p + p_prev;
        Integer qn = a * q + q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(pn);
        q = std::move(qn);
    }
    return {q, p, q_prev, p_prev, digits.size()};
}

SmallConvergents SmallConvergents::append(Digit a) const {
    if (a == 0) throw InvalidArgument("continued fraction digits must be positive");
    SmallConvergents out;
    const auto d = static_cast<std::int64_t>(a);
    if (a > static_cast<Digit>(INT64_MAX) || __builtin_mul_overflow(d, q_n, &out.q_n) ||
        __builtin_add_overflow(out.q_n, q_prev, &out.q_n) || __builtin_mul_overflow(d, p_n, &out.p_n) ||
        __builtin_add_overflow(out.p_n, p_prev, &out.p_n)) {
        throw NotInRange("convergent exceeds 64 bits");
    }
    out.q_prev = q_n;
    out.p_prev = p_n;
    out.n = n + 1;
    return out;
}

Convergents convergents(const CFWord& word) {
    Convergents out;
    Integer p_prev = 1, q_prev = 0, p = 0, q = 1;
    for (Digit a : word.digits()) {
        Integer pn = a * p + p_prev;
        Integer qn = a * q + q_prev;
        p_prev = p;
        q_prev = q;
        p = pn;
        q = qn;
        out.ratios.emplace_back(p, q);
    }
    out.matrix = {q, p, q_prev, p_prev, word.size()};
    return out;
}

Rational evaluate(std::span<const Digit> digits) {
    if (digits.empty()) throw InvalidArgument("cannot evaluate an empty word");
    Rational x = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) x = 1 / (Rational(*it) + x);
    return x;
}

std::vector<Integer> tail_denominators(const CFWord& word) {
    const std::size_t n = word.size();
    std::vector<Integer> q(n + 2);
    q[n + 1] = 0;  // q_{n+2,n}
    q[n] = 1;      // q_{n+1,n}
    for (std::size_t j = n; j-- > 0;) q[j] = word[j] * q[j + 1] + q[j + 2];
    return q;
}

std::vector<Integer> tail_numerators(const CFWord& word) {
    auto q = tail_denominators(word);
    return std::vector<Integer>(q.begin() + 1, q.begin() + 1 + static_cast<std::ptrdiff_t>(word.size()));
}

bool reverse_identity_check(const CFWord& word) {
    auto m = convergent_matrix(word);
    return Rational(m.q_prev, m.q_n) == evaluate(word.reversed());
}

Rational CylinderInterval::measure() const {
    auto m = convergent_matrix(word);
    return Rational(Integer(1), m.q_n * (m.q_n + m.q_prev));
}

CylinderInterval cylinder(const CFWord& word) {
    auto m = convergent_matrix(word);
    // p_{n+1}(b,1)/q_{n+1}(b,1) = (p_n + p_{n-1}) / (q_n + q_{n-1})
    Rational a(m.p_n + m.p_prev, m.q_n + m.q_prev);
    Rational b(m.p_n, m.q_n);
    if (b < a) std::swap(a, b);
    return {word, a, b};
}

}  // namespace farey
