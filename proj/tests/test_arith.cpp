#include <rtvol/arith.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

using namespace rtvol;

TEST_CASE("negative continued fractions: worked examples") {
    CHECK(expand_negative_cf(3, 1).a == std::vector<long long>{3});
    CHECK(expand_negative_cf(5, 2).a == std::vector<long long>{2, 3});
    CHECK(expand_negative_cf(7, 3).a == std::vector<long long>{2, 2, 3});
    // evaluate_cf is the inverse oracle
    CHECK(evaluate_cf(expand_negative_cf(5, 2)) == rat(5, 2));
    CHECK(evaluate_cf(expand_negative_cf(7, 3)) == rat(7, 3));
}

TEST_CASE("evaluate_cf on explicit expansions") {
    CfExpansion cf;
    cf.a = {3};
    CHECK(evaluate_cf(cf) == rat(3, 1));
    cf.a = {2, 3};
    CHECK(evaluate_cf(cf) == rat(5, 2));
    cf.a = {2, 2, 3};
    CHECK(evaluate_cf(cf) == rat(7, 3));
}

TEST_CASE("expansion invariants and roundtrip over the full property range") {
    for (long long q = 1; q <= 20; ++q) {
        for (long long p = -200; p <= 200; ++p) {
            if (std::gcd(std::abs(p), q) != 1) continue;
            const CfExpansion cf = expand_negative_cf(p, q);
            REQUIRE(evaluate_cf(cf) == rat(p, q));
            REQUIRE(cf.c.front() == 1);
            REQUIRE(cf.c.back() == q);
            for (int i = 0; i + 1 < cf.k(); ++i) REQUIRE(cf.a[i] >= 2);
            for (int i = 2; i < cf.k(); ++i) REQUIRE(cf.c[i - 1] > cf.c[i - 2]);
            if (cf.k() >= 2) REQUIRE(cf.c[1] == cf.a[0]);
            // b_k = p/q
            REQUIRE(cf.b.back() == rat(p, q));
        }
    }
}

TEST_CASE("dual pair: examples and brute-force oracle") {
    CHECK(dual_pair(5, 1).p_prime == 0);
    CHECK(dual_pair(5, 1).q_prime == 1);
    CHECK(dual_pair(5, 2).p_prime == -1);
    CHECK(dual_pair(5, 2).q_prime == 3);
    CHECK(dual_pair(7, 3).p_prime == -2);
    CHECK(dual_pair(7, 3).q_prime == 5);

    auto brute = [](long long p, long long q) {
        for (long long pp = -q + 1; pp <= 0; ++pp)
            if ((1 - p * pp) % q == 0) return pp;
        FAIL("no dual in window");
        return 0LL;
    };
    for (long long q = 1; q <= 20; ++q)
        for (long long p = -200; p <= 200; ++p) {
            if (std::gcd(std::abs(p), q) != 1) continue;
            const DualPair d = dual_pair(p, q);
            REQUIRE(p * d.p_prime + q * d.q_prime == 1);
            REQUIRE(d.p_prime > -q);
            REQUIRE(d.p_prime <= 0);
            REQUIRE(d.p_prime == brute(p, q));
        }
}

TEST_CASE("cf_sum_identity equals -p'/q exactly") {
    CHECK(cf_sum_identity(expand_negative_cf(5, 2)) == rat(1, 2));
    CHECK(cf_sum_identity(expand_negative_cf(7, 3)) == rat(2, 3));
    CHECK(cf_sum_identity(expand_negative_cf(9, 1)) == rat(0, 1));  // empty sum at q=1
    for (long long q = 1; q <= 20; ++q)
        for (long long p = -200; p <= 200; ++p) {
            if (std::gcd(std::abs(p), q) != 1) continue;
            const DualPair d = dual_pair(p, q);
            REQUIRE(cf_sum_identity(expand_negative_cf(p, q)) == rat(-d.p_prime, q));
        }
}

TEST_CASE("linking signature") {
    CHECK(linking_signature(std::vector<long long>{3}) == 1);
    CHECK(linking_signature(std::vector<long long>{-2}) == -1);
    CHECK(linking_signature(std::vector<long long>{2, 3}) == 2);  // [[2,1],[1,3]] pos def
    // zero minors fall back to the Sturm count: [0] has the single eigenvalue 0,
    // [[1,1],[1,1]] has eigenvalues 0 and 2
    CHECK(linking_signature(std::vector<long long>{0}) == 0);
    CHECK(linking_signature(std::vector<long long>{1, 1}) == 1);
    // random cross-check: signature parity and bounds
    std::mt19937 rng(7);
    std::uniform_int_distribution<long long> dist(-4, 6);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<long long> a(1 + trial % 5);
        for (auto& ai : a) ai = dist(rng);
        const int sig = linking_signature(a);
        REQUIRE(std::abs(sig) <= static_cast<int>(a.size()));
    }
}

TEST_CASE("slope normalization and validation") {
    const SurgerySlope s(5, -2);
    CHECK(s.p == -5);
    CHECK(s.q == 2);
    CHECK_THROWS_AS(SurgerySlope(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(SurgerySlope(4, 2), std::invalid_argument);
    CHECK_THROWS_AS(expand_negative_cf(4, 2), std::invalid_argument);
}

TEST_CASE("exceptional slope flags") {
    for (long long p : {0LL, 1LL, -1LL, 2LL, -2LL, 3LL, -3LL, 4LL, -4LL})
        CHECK_FALSE(SurgerySlope(p, 1).hyperbolic());
    CHECK(SurgerySlope(5, 1).hyperbolic());
    CHECK(SurgerySlope(-5, 1).hyperbolic());
    CHECK(SurgerySlope(1, 2).hyperbolic());
    CHECK(SurgerySlope(1, 3).hyperbolic());
}
