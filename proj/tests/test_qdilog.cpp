#include <rtvol/qdilog.hpp>
#include <rtvol/rt_exact.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace rtvol;

namespace {
cplx exp_r4pii(const QuantumDilog& phi, cplx a, cplx b) {
    return std::exp(static_cast<double>(phi.r()) / (4.0 * kPi * cplx(0, 1)) *
                    (phi.value(a) - phi.value(b)));
}
}  // namespace

TEST_CASE("shift relation (Eq. 4 flavor): 1 - e^{2iz}") {
    const int r = 7;
    const QuantumDilog phi(r);
    const cplx z = kPi / 3;
    const cplx lhs = exp_r4pii(phi, z - kPi / r, z + kPi / r);
    CHECK(std::abs(lhs - (1.0 - std::exp(cplx(0, 2) * z))) < 1e-9);
}

TEST_CASE("pi-shift relation (Eq. 5 flavor): 1 + e^{riz}") {
    const int r = 7;
    const QuantumDilog phi(r);
    const cplx z = kPi / (2.0 * r);
    const cplx lhs = exp_r4pii(phi, z, z + kPi);
    CHECK(std::abs(lhs - (1.0 + std::exp(cplx(0, static_cast<double>(r)) * z))) < 1e-9);
}

TEST_CASE("factorial identities over the full n ranges") {
    for (int r : {5, 7, 11, 21}) {
        const QuantumDilog phi(r);
        const RootData rd(r);
        const cplx i4 = static_cast<double>(r) / (4.0 * kPi * cplx(0, 1));
        for (int n = 0; n <= r - 2; ++n) {
            const cplx v =
                std::exp(i4 * (phi.value(kPi / r) - phi.value(2.0 * kPi * n / r + kPi / r)));
            REQUIRE(std::abs(v - rd.qfact[n]) / std::abs(rd.qfact[n]) < 1e-8);
        }
        for (int n = (r - 1) / 2 + 1; n <= r - 2; ++n) {
            const cplx v = 2.0 * std::exp(i4 * (phi.value(kPi / r) -
                                                phi.value(2.0 * kPi * n / r + kPi / r - kPi)));
            REQUIRE(std::abs(v - rd.qfact[n]) / std::abs(rd.qfact[n]) < 1e-8);
        }
    }
}

TEST_CASE("asymptotics toward Li2: the 1/r^2 term and beyond") {
    // at z = pi/2 the next term is tiny; check the O(1/r^4) bound
    const cplx w = -1.0;
    const cplx c2 = 2.0 * kPi * kPi * w / (3.0 * (1.0 - w));
    double prev = 1e300;
    for (int r : {11, 21, 41, 81}) {
        const QuantumDilog phi(r);
        const double err =
            std::abs(phi.value(kPi / 2) - li2(w) - c2 / (static_cast<double>(r) * r));
        CHECK(err < 1e4 / (static_cast<double>(r) * r * r * r));
        CHECK(err < prev * 1.5);
        prev = err;
    }
    // at z = pi/3 the residual genuinely decays at fourth order
    const cplx w3 = std::exp(cplx(0, 2) * (kPi / 3));
    const cplx c23 = 2.0 * kPi * kPi * w3 / (3.0 * (1.0 - w3));
    std::vector<double> errs;
    std::vector<int> rs{11, 21, 41, 81};
    for (int r : rs) {
        const QuantumDilog phi(r);
        errs.push_back(std::abs(phi.value(kPi / 3) - li2(w3) - c23 / (static_cast<double>(r) * r)));
    }
    const double slope = std::log(errs.back() / errs.front()) /
                         std::log(static_cast<double>(rs.back()) / rs.front());
    CHECK(slope < -3.8);
}

TEST_CASE("uniform convergence to Li2 on a compact strip grid") {
    double c_prev = -1.0;
    for (int r : {21, 41, 81}) {
        const QuantumDilog phi(r);
        double worst = 0;
        for (int i = 1; i <= 8; ++i)
            for (int j = -2; j <= 2; ++j) {
                const cplx z(0.3 + (kPi - 0.6) * i / 8.0, 0.1 * j);
                worst = std::max(worst,
                                 std::abs(phi.value(z) - li2(std::exp(cplx(0, 2) * z))));
            }
        const double c = worst * r * r;
        if (c_prev > 0) CHECK(c < 2.0 * c_prev);  // C/r^2 with stable C
        c_prev = c;
    }
}

TEST_CASE("derivative: analytic vs central differences with Richardson") {
    const QuantumDilog phi(21);
    const cplx z(kPi / 4, 0.1);
    auto fd = [&phi, z](double h) {
        return (phi.value(z + h) - phi.value(z - h)) / (2.0 * h);
    };
    const cplx d1 = fd(1e-5), d2 = fd(5e-6);
    const cplx richardson = (4.0 * d2 - d1) / 3.0;
    CHECK(std::abs(phi.derivative_strip(z) - richardson) < 1e-7);
}

TEST_CASE("derivative tends to -2i log(1 - e^{2iz})") {
    double prev = 1e300;
    for (int r : {21, 41, 81}) {
        const QuantumDilog phi(r);
        const double err = std::abs(phi.derivative_strip(kPi / 2) - cplx(0, -2) * std::log(2.0));
        CHECK(err < 10.0 / (static_cast<double>(r) * r));
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("Schwarz reflection of the contour picks up the residue at 0") {
    // conj of the quadrature along the conjugated contour flips the semicircle
    // below the pole at 0, so
    //   conj(phi_r(conj z)) + phi_r(z) = (2z-pi)^2/2 - pi^2/6 - 2 pi^2/(3 r^2),
    // the right side being (8 pi^2 / r) Res_0 of the integrand.  Its r-free
    // part matches Li2(e^{2iz}) + Li2(e^{-2iz}) by inversion.
    for (int r : {11, 21}) {
        const QuantumDilog phi(r);
        for (cplx z : {cplx(1.1, 0.35), cplx(0.4, -0.2), cplx(2.0, 0.0)}) {
            const cplx rhs = (2.0 * z - kPi) * (2.0 * z - kPi) / 2.0 - kPi * kPi / 6.0 -
                             2.0 * kPi * kPi / (3.0 * static_cast<double>(r) * r);
            const cplx lhs = std::conj(phi.value(std::conj(z))) + phi.value(z);
            REQUIRE(std::abs(lhs - rhs) < 1e-9);
        }
    }
    // and the derivative version at a conjugation-symmetric pair
    const QuantumDilog phi(21);
    const cplx z(kPi / 4, 0.1);
    const cplx lhs = std::conj(phi.derivative_strip(std::conj(z))) + phi.derivative_strip(z);
    CHECK(std::abs(lhs - 2.0 * (2.0 * z - kPi)) < 1e-8);
}

TEST_CASE("pole and argument rejection") {
    const QuantumDilog phi(7);
    CHECK_THROWS_AS(phi.value(cplx(kPi + kPi / 7, 0)), std::domain_error);
    CHECK_THROWS_AS(phi.value(cplx(kPi + kPi / 7 + 5e-7, 0)), std::domain_error);
    CHECK_THROWS_AS(QuantumDilog(8), std::invalid_argument);
    CHECK_THROWS_AS(QuantumDilog(1), std::invalid_argument);
}
