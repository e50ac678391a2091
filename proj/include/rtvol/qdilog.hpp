#pragma once

// The discrete quantum dilogarithm
//
//   phi_r(z) = (4 pi i / r) int_Omega e^{(2z-pi)x} / (4x sinh(pi x) sinh(2 pi x / r)) dx,
//
// Omega = (-inf,-eps] + upper semicircle of radius eps + [eps,inf), holomorphic
// on -pi/r < Re z < pi + pi/r, extended to Re z >= pi + pi/r through the shift
// relation prod_{k=1}^n (1 - e^{2i(z-(2k-1)pi/r)}) = e^{(r/4 pi i)(phi_r(z-2n pi/r) - phi_r(z))}
// and below the strip through 1 + e^{riz} = e^{(r/4 pi i)(phi_r(z) - phi_r(z+pi))}.
//
// The two rays combine into int_eps^inf sinh((2z-pi)x)/(2x sinh(pi x) sinh(2pi x/r)) dx,
// evaluated in the overflow-safe form
//   [e^{(2z-2pi-2pi/r)x} - e^{(-2z-2pi/r)x}] / (x (1-e^{-2pi x})(1-e^{-4pi x/r})).

#include "quadrature.hpp"
#include "specfun.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace rtvol {

struct ContourSpec {
    double epsilon = 0.5;   // semicircle radius, in (0,1)
    double cutoff = 0.0;    // ray truncation; 0 = choose from the decay rate
    int panel_nodes = 32;   // GL nodes per ray panel
};

class QuantumDilog {
  public:
    explicit QuantumDilog(int r, ContourSpec spec = {}) : r_(r), spec_(spec) {
        if (r < 3 || r % 2 == 0)
            throw std::invalid_argument("QuantumDilog: r must be odd and >= 3");
        if (!(spec_.epsilon > 0.0 && spec_.epsilon < 1.0))
            throw std::invalid_argument("QuantumDilog: epsilon outside (0,1)");
        build_tables();
    }

    int r() const { return r_; }

    // distance from z to the nearest pole (a+1)pi + b pi/r  /  -a pi - b pi/r
    double pole_distance(cplx z) const {
        double best = 1e300;
        const double x = z.real();
        const int amax = static_cast<int>(std::abs(x) / kPi) + 2;
        for (int a = 0; a <= amax; ++a) {
            for (int b = 1; b <= 2 * r_; b += 2) {
                double pp = (a + 1) * kPi + b * kPi / r_;
                double pm = -a * kPi - b * kPi / r_;
                best = std::min(best, std::abs(z - cplx(pp, 0.0)));
                best = std::min(best, std::abs(z - cplx(pm, 0.0)));
            }
        }
        return best;
    }

    // phi_r on the holomorphy strip of the contour integral.
    cplx value_strip(cplx z) const {
        require_in_strip(z);
        return integral(z);
    }

    // phi_r as a meromorphic function, via the shift relations outside the
    // strip.  Off the real axis the principal-log steps can differ from the
    // analytic continuation by multiples of 8 pi^2 / r; every caller here
    // consumes phi_r through exp((r/4 pi i) phi_r), where that drops out.
    cplx value(cplx z) const {
        if (pole_distance(z) < 1e-6)
            throw std::domain_error("QuantumDilog: z within 1e-6 of a pole");
        const double x = z.real();
        const double lo = -kPi / r_, hi = kPi + kPi / r_;
        if (x > lo && x < hi) return integral(z);
        if (x >= hi) {
            int n = 1;
            while (x - 2.0 * n * kPi / r_ >= hi) ++n;
            cplx logs = 0.0;
            for (int k = 1; k <= n; ++k)
                logs += std::log(1.0 - std::exp(cplx(0, 2) * (z - (2.0 * k - 1.0) * kPi / r_)));
            return integral(z - 2.0 * n * kPi / r_) - (4.0 * kPi * cplx(0, 1) / static_cast<double>(r_)) * logs;
        }
        // below the strip: phi_r(z) = phi_r(z+pi) + (4 pi i / r) log(1 + e^{r i z})
        int n = 1;
        while (x + n * kPi <= lo) ++n;
        cplx acc = value(z + static_cast<double>(n) * kPi);
        for (int k = 0; k < n; ++k) {
            cplx zk = z + static_cast<double>(k) * kPi;
            acc += (4.0 * kPi * cplx(0, 1) / static_cast<double>(r_)) *
                   std::log(1.0 + std::exp(cplx(0, static_cast<double>(r_)) * zk));
        }
        return acc;
    }

    // d phi_r / dz on the strip, differentiating under the integral sign:
    // the combined-ray integrand becomes cosh((2z-pi)x)/(sinh(pi x) sinh(2pi x/r)).
    cplx derivative_strip(cplx z) const {
        require_in_strip(z);
        const cplx c1 = 2.0 * z - 2.0 * kPi - 2.0 * kPi / r_;
        const cplx c2 = -2.0 * z - 2.0 * kPi / r_;
        cplx rays = 0.0;
        for (std::size_t i = 0; i < ray_x_.size(); ++i) {
            const double x = ray_x_[i];
            rays += ray_w_[i] * 2.0 * x * (std::exp(c1 * x) + std::exp(c2 * x));
        }
        cplx arc = 0.0;
        for (std::size_t i = 0; i < arc_z_.size(); ++i)
            arc += arc_w_[i] * 2.0 * arc_z_[i] * std::exp((2.0 * z - kPi) * arc_z_[i]);
        return 4.0 * kPi * cplx(0, 1) / static_cast<double>(r_) * (rays + arc);
    }

  private:
    void require_in_strip(cplx z) const {
        const double x = z.real();
        if (!(x > -kPi / r_ && x < kPi + kPi / r_))
            throw std::domain_error("QuantumDilog: Re z outside the contour strip");
        if (pole_distance(z) < 1e-6)
            throw std::domain_error("QuantumDilog: z within 1e-6 of a pole");
    }

    cplx integral(cplx z) const {
        const cplx c1 = 2.0 * z - 2.0 * kPi - 2.0 * kPi / r_;  // Re < 0 in strip
        const cplx c2 = -2.0 * z - 2.0 * kPi / r_;             // Re < 0 in strip
        cplx rays = 0.0;
        for (std::size_t i = 0; i < ray_x_.size(); ++i) {
            const double x = ray_x_[i];
            rays += ray_w_[i] * (std::exp(c1 * x) - std::exp(c2 * x));
        }
        cplx arc = 0.0;
        for (std::size_t i = 0; i < arc_z_.size(); ++i)
            arc += arc_w_[i] * std::exp((2.0 * z - kPi) * arc_z_[i]);
        return 4.0 * kPi * cplx(0, 1) / static_cast<double>(r_) * (rays + arc);
    }

    void build_tables() {
        const double eps = spec_.epsilon;
        // worst in-strip decay rate is 2(pi/r + strip margin); cutoff covers
        // |integrand| below ~1e-22 even at margin ~ 1e-3
        double cutoff = spec_.cutoff > 0.0 ? spec_.cutoff
                                           : std::max(40.0, 60.0 + 4.0 * r_);
        const auto& g = gauss_legendre(spec_.panel_nodes);
        std::vector<std::pair<double, double>> panels;
        double x0 = eps, w = eps;
        while (x0 < cutoff) {
            w = std::min(2.0, 2.0 * w);
            panels.emplace_back(x0, std::min(x0 + w, cutoff));
            x0 += w;
        }
        for (auto [a, b] : panels) {
            const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
            for (int i = 0; i < spec_.panel_nodes; ++i) {
                const double x = mid + hw * g.x[i];
                const double denom =
                    x * (1.0 - std::exp(-2.0 * kPi * x)) * (1.0 - std::exp(-4.0 * kPi * x / r_));
                ray_x_.push_back(x);
                ray_w_.push_back(hw * g.w[i] / denom);
            }
        }
        const auto& ga = gauss_legendre(32);
        for (int i = 0; i < 32; ++i) {
            const double th = 0.5 * kPi * (ga.x[i] + 1.0);
            const double wt = 0.5 * kPi * ga.w[i];
            const cplx az = eps * std::exp(cplx(0, th));
            arc_z_.push_back(az);
            arc_w_.push_back(-cplx(0, 1) * wt * az /
                             (4.0 * az * std::sinh(kPi * az) * std::sinh(2.0 * kPi * az / static_cast<double>(r_))));
        }
    }

    int r_;
    ContourSpec spec_;
    std::vector<double> ray_x_, ray_w_;
    std::vector<cplx> arc_z_, arc_w_;
};

}  // namespace rtvol
