#include <rtvol/rt_exact.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace rtvol;

TEST_CASE("root data tables") {
    const RootData rd5(5);
    // (t)_{r-1} = r: product over all nontrivial r-th roots of unity
    CHECK(std::abs(rd5.qfact[4] - 5.0) < 1e-9 * 5.0);
    // direct product oracle
    cplx prod = 1.0;
    for (int k = 1; k <= 4; ++k) prod *= 1.0 - std::exp(cplx(0, 4.0 * kPi * k / 5.0));
    CHECK(std::abs(rd5.qfact[4] - prod) < 1e-12 * std::abs(prod));
    const RootData rd3(3);
    CHECK(std::abs(rd3.braces_fact[1] - cplx(0, 2) * std::sin(2 * kPi / 3)) < 1e-15);
    CHECK(rd3.qfact[0] == cplx(1, 0));
    CHECK(rd3.braces_fact[0] == cplx(1, 0));
    CHECK_THROWS_AS(RootData(4), std::invalid_argument);
}

TEST_CASE("habiro bracket") {
    const RootData rd(7);
    CHECK(std::abs(habiro_bracket(rd, 0) - 1.0) < 1e-14);  // unknot normalization
    // {.}!-ratio oracle: <e_n> = (-1)^n/{1} sum {n+1+m}!/{n-m}!
    const int n = 2;
    cplx oracle = 0;
    for (int m = 0; m <= std::min(n, 7 - 2 - n); ++m)
        oracle += rd.braces_fact[n + 1 + m] / rd.braces_fact[n - m];
    oracle *= std::pow(-1.0, n) / rd.brace1();
    CHECK(std::abs(habiro_bracket(rd, n) - oracle) < 1e-12 * std::abs(oracle));
    // range boundary: n = r-2 evaluates, n = r-1 rejected
    CHECK_NOTHROW(habiro_bracket(RootData(5), 3));
    CHECK_THROWS_AS(habiro_bracket(RootData(5), 4), std::domain_error);
}

TEST_CASE("cross-formula agreement (symmetrized vs direct)") {
    for (auto [p, q] : std::vector<std::pair<int, int>>{{5, 2}, {7, 2}, {7, 3}, {-7, 3}, {1, 2}}) {
        for (int r = 5; r <= 31; r += 2) {
            const RootData rd(r);
            const SurgerySlope s(p, q);
            const cplx a = rt_symmetrized(s, rd).value;
            const cplx b = rt_direct(s, rd).value;
            REQUIRE(std::abs(a - b) / std::abs(a) < 1e-9);
        }
    }
}

TEST_CASE("k=1 slope: symmetrization factor is trivial") {
    const RootData rd(7);
    const SurgerySlope s(5, 1);
    CHECK(std::abs(rt_symmetrized(s, rd).value - rt_direct(s, rd).value) < 1e-12);
}

TEST_CASE("presentation independence across chains of different length") {
    // [2,3] and [1,3,3] both evaluate to 5/2; [3] and [1,4] to 3/1.
    for (int r : {5, 7, 11, 13}) {
        const RootData rd(r);
        const cplx a = rt_direct_chain<double>({2, 3}, linking_signature(std::vector<long long>{2, 3}), rd);
        const cplx b = rt_direct_chain<double>({1, 3, 3}, linking_signature(std::vector<long long>{1, 3, 3}), rd);
        REQUIRE(std::abs(a - b) / std::abs(a) < 1e-8);
        const cplx c = rt_direct_chain<double>({3}, 1, rd);
        const cplx d = rt_direct_chain<double>({1, 4}, linking_signature(std::vector<long long>{1, 4}), rd);
        REQUIRE(std::abs(c - d) / std::abs(c) < 1e-8);
    }
}

TEST_CASE("half-integer lattice sum with kappa_r reproduces the invariant") {
    for (auto [p, q] : std::vector<std::pair<int, int>>{{5, 2}, {7, 3}, {5, 1}}) {
        for (int r : {7, 11}) {
            const RootData rd(r);
            const SurgerySlope s(p, q);
            const CfExpansion cf = expand_negative_cf(p, q);
            const cplx lattice =
                kappa_r(r, cf, linking_signature(cf)) * rt_lattice_sum(s, rd);
            const cplx exact = rt_symmetrized(s, rd).value;
            REQUIRE(std::abs(lattice - exact) / std::abs(exact) < 1e-12);
        }
    }
}

TEST_CASE("g_r through the quantum dilogarithm matches the factorial form") {
    const int r = 11;
    const RootData rd(r);
    const QuantumDilog phi(r);
    const SurgerySlope s(5, 2);
    const CfExpansion cf = expand_negative_cf(5, 2);

    // case (1): 0 < y +- x_k < pi
    LatticePoint p1;
    p1.twice = {1, 1};
    p1.twice_m = 5;  // 2(m+mk)=6 in (0,r), 2(m-mk)=4 in (0,r)
    CHECK(std::abs(g_r_sample(cf, rd, phi, p1) - g_r_factorial(cf, rd, p1)) <
          1e-8 * std::abs(g_r_factorial(cf, rd, p1)));

    // case (2): pi < y - x_k < 2 pi   (2(m-mk) in (r, 2r))
    LatticePoint p2;
    p2.twice = {1, -7};
    p2.twice_m = 9;  // 2(m+mk)=2 in (0,r), 2(m-mk)=16 in (r,2r)
    CHECK(std::abs(g_r_sample(cf, rd, phi, p2) - g_r_factorial(cf, rd, p2)) <
          1e-8 * std::abs(g_r_factorial(cf, rd, p2)));

    // extremal sine weight: 2 pi m_1 / r = +- pi/2 is closest at m_1 = r/4
    LatticePoint p3;
    p3.twice = {5, 1};  // m_1 = 5/2, sin(2 pi m_1 / r) = sin(5 pi / 11) near 1
    p3.twice_m = 5;
    CHECK(std::abs(g_r_sample(cf, rd, phi, p3) - g_r_factorial(cf, rd, p3)) <
          1e-8 * std::abs(g_r_factorial(cf, rd, p3)));
    CHECK(std::abs(std::sin(2.0 * kPi * 2.5 / r)) > 0.97);

    // boundary points are rejected by the phi route
    LatticePoint pb;
    pb.twice = {1, -5};
    pb.twice_m = 5;  // 2(m+mk) = 0: no epsilon case applies
    CHECK_THROWS_AS(g_r_sample(cf, rd, phi, pb), std::domain_error);
}

TEST_CASE("magnitude law: log|{n}!| + (r/2pi) Lambda(2 pi n / r) = O(log r)") {
    double c_prev = -1;
    for (int r : {51, 101, 201}) {
        const RootData rd(r);
        double worst = 0;
        for (int n = 1; n <= r - 1; ++n) {
            const double lhs = std::log(std::abs(rd.braces_fact[n])) +
                               r / (2.0 * kPi) * lobachevsky(2.0 * kPi * n / r);
            worst = std::max(worst, std::abs(lhs));
        }
        const double c = worst / std::log(static_cast<double>(r));
        CHECK(c < 3.0);
        if (c_prev > 0) CHECK(c < 2.5 * c_prev);
        c_prev = c;
    }
}

TEST_CASE("tail bound outside the Prop-4.1 window", "[slow]") {
    const int r = 101;
    const RootData rd(r);
    const SurgerySlope s(5, 2);
    const CfExpansion cf = expand_negative_cf(5, 2);
    // delta from Lambda(delta) < eps/4 with eps = 0.05
    double lo = 1e-9, hi = 0.5;
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        (lobachevsky(mid) < 0.05 / 4 ? lo : hi) = mid;
    }
    const double delta = lo;
    const double bound = std::exp(r / (4.0 * kPi) * (0.5 * vol_figure8() + 0.05));
    double worst = 0;
    LatticePoint pt;
    pt.twice.assign(2, 0);
    pt.twice[0] = 1;  // |g_r| does not depend on m_1 beyond the sine factor
    for (long long mk = -(r - 2); mk <= r - 2; mk += 2) {
        pt.twice[1] = mk;
        for (long long m = std::abs(mk); m <= r - 2; m += 2) {
            pt.twice_m = m;
            if (in_prop41_window(m + mk, r, delta) && in_prop41_window(m - mk, r, delta))
                continue;
            worst = std::max(worst, std::abs(g_r_factorial(cf, rd, pt)) * 2.0);
        }
    }
    CHECK(worst <= bound);
}

TEST_CASE("summation order invariance of |value|") {
    // reversing the m_1 slice order only moves round-off
    const int r = 31;
    const RootData rd(r);
    const SurgerySlope s(7, 2);
    const CfExpansion cf = expand_negative_cf(7, 2);
    const auto habiro = habiro_table(rd);
    auto direct_with_order = [&](bool reversed) {
        KahanSum<double> acc;
        std::vector<int> order(r - 1);
        for (int i = 0; i < r - 1; ++i) order[i] = reversed ? r - 2 - i : i;
        for (int m1 : order)
            for (int m2 = 0; m2 <= r - 2; ++m2) {
                long long e = cf.a[0] * m1 * (m1 + 2) + cf.a[1] * m2 * (m2 + 2);
                long long sgn = m2 + cf.a[0] * m1 + cf.a[1] * m2;
                cplx term = rd.zeta(e) * rd.quantum_int(m1 + 1) *
                            rd.quantum_int(static_cast<long long>(m1 + 1) * (m2 + 1)) * habiro[m2];
                acc.add(sgn % 2 ? -term : term);
            }
        return acc.s;
    };
    const cplx a = direct_with_order(false), b = direct_with_order(true);
    CHECK(std::abs(std::abs(a) - std::abs(b)) < 1e-10 * std::abs(a));
}

TEST_CASE("invariant value bookkeeping") {
    const RootData rd(31);
    const InvariantValue v = rt_symmetrized(SurgerySlope(5, 2), rd);
    CHECK(std::abs(std::exp(v.log_value) - v.value) < 1e-9 * std::abs(v.value));
    CHECK(v.formula == "symmetrized");
    CHECK(v.r == 31);
}

TEST_CASE("tv proxy") {
    const RootData rd(31);
    const SurgerySlope s(5, 2);
    const double tv = tv_proxy(s, rd);
    CHECK(tv >= 0.0);
    CHECK(std::abs(tv - std::norm(rt_symmetrized(s, rd).value)) == 0.0);
}

TEST_CASE("budgets and caps") {
    const RootData rd(103);
    CHECK_THROWS_AS(rt_symmetrized(SurgerySlope(7, 3), rd), BudgetExceeded);   // q=3 cap is 101
    CHECK_NOTHROW(rt_symmetrized(SurgerySlope(7, 3), rd, 5e8, 201));           // raised cap
    const RootData rd31(31);
    CHECK_THROWS_AS(rt_symmetrized(SurgerySlope(7, 3), rd31, 100.0), BudgetExceeded);
}

TEST_CASE("long-double escape hatch behind the same interface") {
    const RootDataT<long double> rdl(11);
    const RootData rdd(11);
    const SurgerySlope s(5, 2);
    const InvariantValue a = rt_symmetrized_t(s, rdl);
    const InvariantValue b = rt_symmetrized_t(s, rdd);
    CHECK(std::abs(a.value - b.value) < 1e-12 * std::abs(b.value));
}
