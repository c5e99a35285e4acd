#include "doctest.h"
#include "farey/cf.hpp"
#include "farey/errors.hpp"
#include "oracles.hpp"

using namespace farey;

TEST_CASE("word construction") {
    CHECK_THROWS_AS(CFWord(std::vector<Digit>{}), InvalidArgument);
    CHECK_THROWS_AS(CFWord({1, 0, 2}), InvalidArgument);
    CFWord w{1, 2, 3};
    CHECK(w.reversed() == CFWord{3, 2, 1});
    CHECK(w.rotated(1) == CFWord{2, 3, 1});
    CHECK(CFWord::parse("1, 2,3") == w);
    CHECK(w.to_string() == "1,2,3");
    CHECK(CFWord{1, 2, 1, 2}.minimal_period() == 2);
    CHECK(CFWord{3, 1, 2}.canonical_rotation() == CFWord{1, 2, 3});
    CHECK_THROWS_AS(CFWord::parse("1,,2"), InvalidArgument);
}

TEST_CASE("convergents examples") {
    auto c = convergents(CFWord{1, 2});
    REQUIRE(c.ratios.size() == 2);
    CHECK(c.ratios[0] == Rational(1));
    CHECK(c.ratios[1] == Rational(2, 3));
    CHECK(c.matrix.matrix() == IntMatrix2{3, 2, 1, 1});

    auto single = convergents(CFWord{7});
    CHECK(single.ratios[0] == Rational(1, 7));
    CHECK(single.matrix.matrix() == IntMatrix2{7, 1, 1, 0});

    auto fib = convergent_matrix(CFWord{1, 1, 1, 1, 1});
    CHECK(fib.q_n == 8);
    CHECK(fib.p_n == 5);
}

TEST_CASE("convergent matrix equals the left product of digit matrices") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        auto w = oracle::random_word(rng, 25, 1000);
        auto m = convergent_matrix(w);
        auto ref = oracle::left_product(w);
        CHECK(m.q_n == ref.a);
        CHECK(m.p_n == ref.b);
        CHECK(m.q_prev == ref.c);
        CHECK(m.p_prev == ref.d);
        CHECK(Rational(m.p_n, m.q_n) == oracle::cf_value(w));
        CHECK(boost::multiprecision::gcd(m.p_n, m.q_n) == 1);
    }
}

TEST_CASE("determinant alternates in sign") {
    oracle::for_each_word(8, 3, [](const std::vector<Digit>& w) {
        auto m = convergent_matrix(w);
        REQUIRE(m.determinant() == (w.size() % 2 == 0 ? 1 : -1));
    });
}

TEST_CASE("transpose symmetry of q_n") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        auto w = oracle::random_word(rng, 20, 50);
        CFWord word(w);
        CHECK(convergent_matrix(word).q_n == convergent_matrix(word.reversed()).q_n);
    }
}

TEST_CASE("tail denominators") {
    auto q = tail_denominators(CFWord{1, 2});
    REQUIRE(q.size() == 4);
    CHECK(q[0] == 3);
    CHECK(q[1] == 2);
    CHECK(q[2] == 1);
    CHECK(q[3] == 0);
    CHECK(tail_denominators(CFWord{9})[0] == 9);

    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
        auto w = oracle::random_word(rng, 15, 20);
        CFWord word(w);
        auto qs = tail_denominators(word);
        auto ps = tail_numerators(word);
        CHECK(qs[0] == convergent_matrix(word).q_n);
        Rational prod = 1;
        for (std::size_t j = 0; j < w.size(); ++j) {
            Rational v(ps[j], qs[j]);
            CHECK(v == oracle::cf_value(w, j));
            prod *= v;
        }
        CHECK(prod == Rational(Integer(1), qs[0]));
    }
}

TEST_CASE("reversal identity") {
    CHECK(reverse_identity_check(CFWord{1, 2}));
    CHECK(evaluate(CFWord{2, 1}) == Rational(1, 3));
    CHECK(reverse_identity_check(CFWord{1, 2, 1}));
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        auto w = oracle::random_word(rng, 20, 30);
        if (w.size() < 2) w.push_back(1);
        auto m = convergent_matrix(w);
        std::vector<Digit> rev(w.rbegin(), w.rend());
        CHECK(Rational(m.q_prev, m.q_n) == oracle::cf_value(rev));
        CHECK(reverse_identity_check(CFWord(w)));
    }
}

TEST_CASE("cylinder intervals") {
    auto c1 = cylinder(CFWord{1});
    CHECK(c1.lower == Rational(1, 2));
    CHECK(c1.upper == Rational(1));
    CHECK(c1.measure() == Rational(1, 2));
    auto c2 = cylinder(CFWord{2});
    CHECK(c2.lower == Rational(1, 3));
    CHECK(c2.upper == Rational(1, 2));
    CHECK(c2.measure() == Rational(1, 6));
    auto c12 = cylinder(CFWord{1, 2});
    CHECK(c12.lower == oracle::cf_value({1, 2}));
    CHECK(c12.upper == oracle::cf_value({1, 3}));
    CHECK(c12.measure() == Rational(1, 12));
}

TEST_CASE("children of a cylinder partition it") {
    // Children (b,k), k = 1..K, tile I_b except for the piece between
    // [b,K+1] and p_n/q_n.
    oracle::for_each_word(5, 5, [](const std::vector<Digit>& w) {
        CFWord b(w);
        auto parent = cylinder(b);
        REQUIRE(parent.measure() == parent.length());
        constexpr Digit K = 5;
        Rational total = 0;
        for (Digit k = 1; k <= K; ++k) {
            auto child = cylinder(b.concat(CFWord{k}));
            REQUIRE(child.measure() == child.length());
            REQUIRE(child.lower >= parent.lower);
            REQUIRE(child.upper <= parent.upper);
            total += child.measure();
        }
        auto m = convergent_matrix(b);
        Rational endpoint(m.p_n, m.q_n);
        std::vector<Digit> tail(w);
        tail.push_back(K + 1);
        Rational gap = oracle::cf_value(tail) - endpoint;
        if (gap < 0) gap = -gap;
        REQUIRE(total + gap == parent.measure());
    });
}

TEST_CASE("64-bit convergents follow the exact recurrence") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 300; ++i) {
        auto w = oracle::random_word(rng, 12, 30);
        SmallConvergents s;
        for (Digit a : w) s = s.append(a);
        auto m = convergent_matrix(w);
        CHECK(Integer(s.q_n) == m.q_n);
        CHECK(Integer(s.p_n) == m.p_n);
        CHECK(Integer(s.q_prev) == m.q_prev);
        CHECK(Integer(s.p_prev) == m.p_prev);
        CHECK(s.n == w.size());
        CHECK(s.determinant() == (w.size() % 2 == 0 ? 1 : -1));
    }
    SmallConvergents big;
    CHECK_THROWS_AS(big.append(Digit{1} << 63), NotInRange);
    CHECK_THROWS_AS(big.append(0), InvalidArgument);
    for (int i = 0; i < 3; ++i) big = big.append(Digit{1} << 20);
    CHECK_THROWS_AS(big.append(Digit{1} << 20), NotInRange);
}
