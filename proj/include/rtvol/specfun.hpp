#pragma once

// Complex dilogarithm Li_2 (principal branch, cut (1,inf)) and the
// Lobachevsky function Lambda(theta) = -int_0^theta log|2 sin t| dt.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace rtvol {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

namespace detail {

// zeta(2n): direct sum to M with Euler-Maclaurin tail corrections,
// accurate to full double precision for every n >= 1.
inline const std::vector<double>& zeta_even_table() {
    static const std::vector<double> table = [] {
        std::vector<double> z;
        z.push_back(0.0);  // unused slot n=0
        const int M = 64;
        for (int n = 1; n <= 60; ++n) {
            const double s = 2.0 * n;
            double acc = 0.0;
            for (int m = M; m >= 1; --m) acc += std::pow(static_cast<double>(m), -s);
            const double Mp = static_cast<double>(M);
            acc += std::pow(Mp, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(Mp, -s) +
                   s / 12.0 * std::pow(Mp, -s - 1.0) -
                   s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(Mp, -s - 3.0);
            z.push_back(acc);
        }
        return z;
    }();
    return table;
}

// Maclaurin sum_{n>=1} z^n / n^2 for |z| <= 1/2 (and for test oracles).
inline cplx li2_series(cplx z) {
    cplx term = z, acc = z;
    for (int n = 2; n < 200; ++n) {
        term *= z;
        cplx add = term / static_cast<double>(n * n);
        acc += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(acc))) break;
    }
    return acc;
}

// coefficients B_n/(n+1)! of the u = -log(1-z) expansion of Li2, with the
// even-index values taken from zeta(2m) = (-1)^{m+1} B_{2m} (2 pi)^{2m} / (2 (2m)!)
// (stable, unlike recurs for raw Bernoulli numbers in doubles).
inline const std::vector<double>& li2_u_coeffs() {
    static const std::vector<double> table = [] {
        const auto& z2 = zeta_even_table();
        std::vector<double> c(2 * z2.size(), 0.0);
        c[0] = 1.0;    // B_0 / 1!
        c[1] = -0.25;  // B_1 / 2! with B_1 = -1/2
        const double two_pi = 2.0 * kPi;
        for (std::size_t m = 1; m < z2.size(); ++m) {
            // B_{2m}/(2m+1)! = (-1)^{m+1} 2 zeta(2m) / ((2m+1) (2 pi)^{2m})
            const double mag = 2.0 * z2[m] / ((2.0 * m + 1.0) * std::pow(two_pi, 2.0 * m));
            c[2 * m] = (m % 2 == 1 ? mag : -mag);
        }
        return c;
    }();
    return table;
}

}  // namespace detail

// Principal-branch dilogarithm, accurate to ~1e-14 relative away from z=1.
// Series inside |z|<=1/2; inversion and reflection map everything else there;
// the annulus near |z|=1 uses the Bernoulli series in u = -log(1-z).
inline cplx li2(cplx z) {
    if (z.imag() == 0.0 && z.real() > 1.0)
        throw std::domain_error("li2: argument on the cut (1,inf)");
    const double az = std::abs(z);
    if (az == 0.0) return 0.0;
    if (az <= 0.5) return detail::li2_series(z);
    if (az >= 2.0) {
        // Li2(z) = -Li2(1/z) - pi^2/6 - (1/2) log^2(-z)
        cplx lg = std::log(-z);
        return -detail::li2_series(1.0 / z) - kPi * kPi / 6.0 - 0.5 * lg * lg;
    }
    if (std::abs(1.0 - z) <= 0.5) {
        // Li2(z) = pi^2/6 - log(z)log(1-z) - Li2(1-z)
        if (z == cplx(1.0, 0.0)) return kPi * kPi / 6.0;
        return kPi * kPi / 6.0 - std::log(z) * std::log(1.0 - z) -
               detail::li2_series(1.0 - z);
    }
    // annulus: Li2(z) = sum_{n>=0} [B_n/(n+1)!] u^{n+1},  u = -log(1-z)
    const auto& c = detail::li2_u_coeffs();
    const cplx u = -std::log(1.0 - z);
    cplx up = u, acc = 0.0;  // up = u^{n+1}
    for (std::size_t n = 0; n < c.size(); ++n) {
        const cplx add = c[n] * up;
        acc += add;
        // odd coefficients past B_1 vanish; only test for convergence on even n
        if (n > 4 && n % 2 == 0 && std::abs(add) < 1e-18 * (1.0 + std::abs(acc))) break;
        up *= u;
    }
    return acc;
}

// Lobachevsky function.  Reduce by period pi and oddness to [0, pi/2], then
// Lambda(t) = t - t log(2t) + sum_{n>=1} zeta(2n) t^{2n+1} / (n (2n+1) pi^{2n}).
inline double lobachevsky(double theta) {
    double t = std::remainder(theta, kPi);  // [-pi/2, pi/2]
    double sign = 1.0;
    if (t < 0) { t = -t; sign = -1.0; }
    if (t == 0.0) return 0.0;
    const auto& z2 = detail::zeta_even_table();
    double acc = t - t * std::log(2.0 * t);
    const double tt = (t / kPi) * (t / kPi);
    double pw = tt * t;  // t^{2n+1} / pi^{2n} at n=1
    for (std::size_t n = 1; n < z2.size(); ++n) {
        double add = z2[n] * pw / (n * (2.0 * n + 1.0));
        acc += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(acc))) break;
        pw *= tt;
    }
    return sign * acc;
}

// Volume of the figure-eight knot complement, 6 Lambda(pi/3).
inline double vol_figure8() {
    static const double v = 6.0 * lobachevsky(kPi / 3.0);
    return v;
}

}  // namespace rtvol
