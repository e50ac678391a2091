#pragma once

// Hyperbolic geometry of the p/q filling: the potential
//
//   V^{+-}(x,y) = (-p x^2 +- 2 pi x)/q - 2 pi x + 4 x y
//                 - Li2(e^{-2i(y+x)}) + Li2(e^{2i(y-x)}) - p' pi^2 / q
//
// whose critical point in D_C encodes the two-tetrahedron gluing equations of
// the figure-eight complement plus the p/q filling equation.  Solved by a
// Newton homotopy from the complete structure (0, pi/6); the critical value
// is i(Vol + i CS) mod pi^2.

#include "arith.hpp"
#include "specfun.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>

namespace rtvol {

enum class PotentialSign { plus, minus };

// Re(y) +- Re(x) in (0, pi/2):    region D  (complexified)
// Re(y+x) in (0,pi/2), Re(y-x) in (pi,3pi/2):  D'
// Re(y+x) in (pi,3pi/2), Re(y-x) in (0,pi/2):  D''
enum class RegionKind { D, Dp, Dpp };

inline bool in_region(RegionKind k, cplx x, cplx y, double margin = 0.0) {
    const double u = y.real() + x.real(), v = y.real() - x.real();
    auto inside = [margin](double t, double lo, double hi) {
        return t > lo + margin && t < hi - margin;
    };
    switch (k) {
        case RegionKind::D: return inside(u, 0, kPi / 2) && inside(v, 0, kPi / 2);
        case RegionKind::Dp: return inside(u, 0, kPi / 2) && inside(v, kPi, 1.5 * kPi);
        case RegionKind::Dpp: return inside(u, kPi, 1.5 * kPi) && inside(v, 0, kPi / 2);
    }
    return false;
}

inline double sign_of(PotentialSign s) { return s == PotentialSign::plus ? 1.0 : -1.0; }

inline cplx potential_v(PotentialSign sign, const SurgerySlope& slope, cplx x, cplx y) {
    if (!(in_region(RegionKind::D, x, y) || in_region(RegionKind::Dp, x, y) ||
          in_region(RegionKind::Dpp, x, y)))
        throw std::domain_error("potential_v: (x,y) outside D, D', D''");
    const double p = static_cast<double>(slope.p), q = static_cast<double>(slope.q);
    const long long pp = dual_pair(slope.p, slope.q).p_prime;
    const cplx wp = std::exp(cplx(0, -2) * (y + x));
    const cplx wm = std::exp(cplx(0, 2) * (y - x));
    return (-p * x * x + sign_of(sign) * 2.0 * kPi * x) / q - 2.0 * kPi * x + 4.0 * x * y -
           li2(wp) + li2(wm) - pp * kPi * kPi / q;
}

// gradient (dV/dx, dV/dy)
inline std::array<cplx, 2> grad_v(PotentialSign sign, const SurgerySlope& slope, cplx x, cplx y) {
    const double p = static_cast<double>(slope.p), q = static_cast<double>(slope.q);
    const cplx Lp = std::log(1.0 - std::exp(cplx(0, -2) * (y + x)));
    const cplx Lm = std::log(1.0 - std::exp(cplx(0, 2) * (y - x)));
    const cplx dvdx = (-2.0 * p * x + sign_of(sign) * 2.0 * kPi) / q + 4.0 * y - 2.0 * kPi -
                      cplx(0, 2) * Lp + cplx(0, 2) * Lm;
    const cplx dvdy = 4.0 * x - cplx(0, 2) * Lp - cplx(0, 2) * Lm;
    return {dvdx, dvdy};
}

// closed-form Hessian [[Vxx, Vxy],[Vxy, Vyy]] and its determinant, via
// A = e^{2i(y+x)}, B = e^{2i(y-x)}.  (The (2,2) entry is -4 - ..., matching
// finite differences of V.)
struct Hessian {
    cplx vxx, vxy, vyy;
    cplx det() const { return vxx * vyy - vxy * vxy; }
};

inline Hessian hessian_v(PotentialSign sign, const SurgerySlope& slope, cplx x, cplx y) {
    (void)sign;  // the +-2 pi x / q term is linear; Hessians of V+ and V- coincide
    const double p = static_cast<double>(slope.p), q = static_cast<double>(slope.q);
    const cplx A = std::exp(cplx(0, 2) * (y + x));
    const cplx B = std::exp(cplx(0, 2) * (y - x));
    const cplx fA = 4.0 * A / (1.0 - A), fB = 4.0 * B / (1.0 - B);
    Hessian h;
    h.vxx = -2.0 * p / q - 4.0 - fA - fB;
    h.vxy = -fA + fB;
    h.vyy = -4.0 - fA - fB;
    return h;
}

struct CriticalData {
    SurgerySlope slope;
    cplx x0, y0;
    cplx A, B;           // shape parameters e^{2i(y0+x0)}, e^{2i(y0-x0)}
    double volume = 0;   // Im V+(x0,y0)
    double cs = 0;       // -Re V+(x0,y0), reduced into (-pi^2/2, pi^2/2]
    cplx v_plus;         // unreduced critical value V+(x0,y0)
    cplx hess_det;       // det Hess V+(x0,y0)
    cplx holonomy_m, holonomy_l, holonomy_core;
    double residual_critical = 0;  // |grad V+| at the solution
    double residual_gluing = 0;    // gluing-equation residual through the log branches
    int newton_steps = 0;
};

namespace detail {

// branch-resolved logs of the shape parameters (V+ dictionary)
struct ShapeLogs {
    cplx logA, logAp, logApp, logB, logBp, logBpp;
};

inline ShapeLogs shape_logs(cplx x, cplx y) {
    const cplx Lp = std::log(1.0 - std::exp(cplx(0, -2) * (y + x)));
    const cplx Lm = std::log(1.0 - std::exp(cplx(0, 2) * (y - x)));
    ShapeLogs s;
    s.logA = cplx(0, 2) * (y + x);
    s.logAp = cplx(0, 1) * kPi - cplx(0, 2) * (y + x) - Lp;
    s.logApp = Lp;
    s.logB = cplx(0, 2) * (y - x);
    s.logBp = -Lm;
    s.logBpp = cplx(0, 1) * kPi - cplx(0, 2) * (y - x) + Lm;
    return s;
}

}  // namespace detail

// residuals of the gluing system (edge + p/q filling) under the V+ dictionary
// A = e^{2i(y+x)}, B = e^{2i(y-x)}; pass swap=true for the V- dictionary.
inline double gluing_residual(const SurgerySlope& slope, cplx x, cplx y, bool swap = false) {
    const auto s = detail::shape_logs(x, y);
    cplx logA = s.logA, logApp = s.logApp, logBp = s.logBp, logBpp = s.logBpp;
    if (swap) {
        // V- dictionary: A = e^{2i(y-x)}, B = e^{2i(y+x)}
        logA = s.logB;
        logApp = cplx(0, 1) * kPi - s.logB + (-s.logBp);  // pi i - 2i(y-x) + log(1-e^{2i(y-x)})
        logBp = cplx(0, 1) * kPi - s.logA - s.logApp;     // pi i - 2i(y+x) - log(1-e^{-2i(y+x)})
        logBpp = s.logApp;
    }
    const cplx two_pi_i(0, 2 * kPi);
    const cplx edge = logA + 2.0 * logApp + (swap ? s.logA : s.logB) + 2.0 * logBpp - two_pi_i;
    const cplx fill = static_cast<double>(slope.p) * (logBp - logApp) +
                      static_cast<double>(slope.q) * (two_pi_i - 2.0 * logA - 4.0 * logApp) -
                      two_pi_i;
    return std::abs(edge) + std::abs(fill);
}

// Newton homotopy: solve grad V+ = 0 with the filling equation's 2 pi term
// scaled by s, s = 0.1 .. 1.0.  At s = 0, x = 0 forces y = pi/6.
inline CriticalData solve_critical(const SurgerySlope& slope, double tol = 1e-13,
                                   int max_iter = 80) {
    if (!slope.hyperbolic())
        throw std::domain_error("solve_critical: exceptional (non-hyperbolic) slope " +
                                std::to_string(slope.p) + "/" + std::to_string(slope.q));
    const double p = static_cast<double>(slope.p), q = static_cast<double>(slope.q);
    cplx x = 0.0, y = kPi / 6.0;
    int steps = 0;
    for (int hs = 1; hs <= 10; ++hs) {
        const double s = hs / 10.0;
        for (int it = 0;; ++it) {
            if (it >= max_iter)
                throw std::runtime_error("solve_critical: Newton did not converge at s=" +
                                         std::to_string(s));
            const cplx Lp = std::log(1.0 - std::exp(cplx(0, -2) * (y + x)));
            const cplx Lm = std::log(1.0 - std::exp(cplx(0, 2) * (y - x)));
            const cplx F1 = 4.0 * x - cplx(0, 2) * (Lp + Lm);
            const cplx F2 = (-2.0 * p * x + 2.0 * kPi * s) / q + 4.0 * y - 2.0 * kPi -
                            cplx(0, 2) * Lp + cplx(0, 2) * Lm;
            if (std::abs(F1) + std::abs(F2) < tol) break;
            const cplx gp = std::exp(cplx(0, -2) * (y + x)) / (1.0 - std::exp(cplx(0, -2) * (y + x)));
            const cplx gm = std::exp(cplx(0, 2) * (y - x)) / (1.0 - std::exp(cplx(0, 2) * (y - x)));
            const cplx J11 = 4.0 + 4.0 * gp + 4.0 * gm;   // dF1/dx
            const cplx J12 = 4.0 * gp - 4.0 * gm;         // dF1/dy
            const cplx J21 = -2.0 * p / q + 4.0 * gp - 4.0 * gm;
            const cplx J22 = 4.0 + 4.0 * gp + 4.0 * gm;
            const cplx det = J11 * J22 - J12 * J21;
            if (std::abs(det) < 1e-14)
                throw std::runtime_error("solve_critical: singular Newton system");
            cplx dx = (-F1 * J22 + F2 * J12) / det;
            cplx dy = (-J11 * F2 + J21 * F1) / det;
            // step halving on residual increase
            double res0 = std::abs(F1) + std::abs(F2);
            double scale = 1.0;
            for (int h = 0; h < 40; ++h) {
                const cplx xn = x + scale * dx, yn = y + scale * dy;
                const cplx L1 = std::log(1.0 - std::exp(cplx(0, -2) * (yn + xn)));
                const cplx L2 = std::log(1.0 - std::exp(cplx(0, 2) * (yn - xn)));
                const cplx G1 = 4.0 * xn - cplx(0, 2) * (L1 + L2);
                const cplx G2 = (-2.0 * p * xn + 2.0 * kPi * s) / q + 4.0 * yn - 2.0 * kPi -
                                cplx(0, 2) * L1 + cplx(0, 2) * L2;
                if (std::abs(G1) + std::abs(G2) < res0 || scale < 1e-6) {
                    x = xn; y = yn;
                    break;
                }
                scale *= 0.5;
            }
            ++steps;
        }
    }

    CriticalData cd;
    cd.slope = slope;
    cd.x0 = x;
    cd.y0 = y;
    cd.A = std::exp(cplx(0, 2) * (y + x));
    cd.B = std::exp(cplx(0, 2) * (y - x));
    if (!(cd.A.imag() > 0.0 && cd.B.imag() > 0.0))
        throw std::runtime_error("solve_critical: solution left the geometric branch (Im A, Im B > 0)");
    const auto g = grad_v(PotentialSign::plus, slope, x, y);
    cd.residual_critical = std::abs(g[0]) + std::abs(g[1]);
    cd.residual_gluing = gluing_residual(slope, x, y);
    cd.v_plus = potential_v(PotentialSign::plus, slope, x, y);
    cd.volume = cd.v_plus.imag();
    double cs = -cd.v_plus.real();
    cs -= kPi * kPi * std::round(cs / (kPi * kPi));
    if (cs <= -kPi * kPi / 2) cs += kPi * kPi;  // representative in (-pi^2/2, pi^2/2]
    cd.cs = cs;
    cd.hess_det = hessian_v(PotentialSign::plus, slope, x, y).det();
    if (std::abs(cd.hess_det) < 1e-6)
        throw std::runtime_error("solve_critical: degenerate Hessian at the critical point");
    cd.holonomy_m = cplx(0, 2) * x;
    cd.holonomy_l = (cplx(0, 2 * kPi) - p * cd.holonomy_m) / q;
    const DualPair d = dual_pair(slope.p, slope.q);
    cd.holonomy_core = static_cast<double>(d.q_prime) * cd.holonomy_m -
                       static_cast<double>(d.p_prime) * cd.holonomy_l;
    cd.newton_steps = steps;
    return cd;
}

// holonomies (H(m), H(l), H(gamma)) recomputed from a critical point
inline std::array<cplx, 3> holonomies(const SurgerySlope& slope, const CriticalData& cd) {
    const DualPair d = dual_pair(slope.p, slope.q);
    const cplx hm = cplx(0, 2) * cd.x0;
    const cplx hl = (cplx(0, 2 * kPi) - static_cast<double>(slope.p) * hm) /
                    static_cast<double>(slope.q);
    const cplx hg = static_cast<double>(d.q_prime) * hm - static_cast<double>(d.p_prime) * hl;
    return {hm, hl, hg};
}

// Yoshida recombination: Vol + i CS = Phi(H(m))/i - H(m)H(l)/(4i) - pi H(gamma)/2
// with Phi(H(m)) = U(x0,y0) = 4 x0 y0 - 2 pi x0 - Li2(e^{-2i(y0+x0)}) + Li2(e^{2i(y0-x0)}).
// Returns the mod-pi^2 discrepancy against -i V+(x0,y0); exact algebraically.
inline double yoshida_check(const SurgerySlope& slope, const CriticalData& cd) {
    const auto h = holonomies(slope, cd);
    const cplx U = 4.0 * cd.x0 * cd.y0 - 2.0 * kPi * cd.x0 -
                   li2(std::exp(cplx(0, -2) * (cd.y0 + cd.x0))) +
                   li2(std::exp(cplx(0, 2) * (cd.y0 - cd.x0)));
    const cplx i(0, 1);
    const cplx volcs = U / i - h[0] * h[1] / (4.0 * i) - kPi * h[2] / 2.0;
    cplx diff = volcs - (-i * cd.v_plus);
    double im = diff.imag();
    im -= kPi * kPi * std::round(im / (kPi * kPi));
    return std::abs(diff.real()) + std::abs(im);
}

struct FkpBound {
    double value = 0.0;
    bool vacuous = false;  // p^2 + 12 q^2 <= 4 pi^2: no information
};

// Futer-Kalfagianni-Purcell:  Vol(M) >= (1 - (2 pi / L)^2)^{3/2} Vol(4_1),
// L(pm+ql) = sqrt(p^2 + 12 q^2) on the maximal cusp of the figure-eight knot.
inline FkpBound fkp_lower_bound(const SurgerySlope& slope) {
    const double L2 = static_cast<double>(slope.p) * slope.p + 12.0 * slope.q * slope.q;
    FkpBound b;
    if (L2 <= 4.0 * kPi * kPi) {
        b.vacuous = true;
        return b;
    }
    b.value = std::pow(1.0 - 4.0 * kPi * kPi / L2, 1.5) * vol_figure8();
    return b;
}

}  // namespace rtvol
