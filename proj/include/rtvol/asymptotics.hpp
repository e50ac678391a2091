#pragma once

// Poisson-summation side of the story: discrete potentials V_r^{+-}, numerical
// leading Fourier coefficients, the saddle-point prediction with prefactor,
// tail-coefficient decay surveys, and convergence tables.
//
// All 2D region integrals run in rotated coordinates u = y+x, v = y-x
// (dx dy = du dv / 2).  In these coordinates D, D', D'' are axis-aligned
// squares and the phi_r arguments depend on one axis each, so a tensor grid
// needs O(n_u + n_v) quantum-dilogarithm evaluations instead of O(n_u n_v).
// Contour shifts into C^2 are staged per axis; each Cauchy wall is again a
// product patch.

#include "arith.hpp"
#include "geometry.hpp"
#include "qdilog.hpp"
#include "rt_exact.hpp"
#include "specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace rtvol {

struct Region {
    RegionKind kind = RegionKind::D;
    double margin = 0.0;  // the epsilon inset
    bool contains(cplx x, cplx y) const { return in_region(kind, x, y, margin); }
};

// u- and v-ranges of a region square (margin 0)
inline std::pair<double, double> region_u_range(RegionKind k) {
    return k == RegionKind::Dpp ? std::make_pair(kPi, 1.5 * kPi) : std::make_pair(0.0, kPi / 2);
}
inline std::pair<double, double> region_v_range(RegionKind k) {
    return k == RegionKind::Dp ? std::make_pair(kPi, 1.5 * kPi) : std::make_pair(0.0, kPi / 2);
}
inline double region_epsilon_weight(RegionKind k) { return k == RegionKind::D ? 2.0 : 1.0; }

// phi_r argument maps per region (in-strip by construction)
inline cplx phi_arg_u(RegionKind k, int r, cplx u) {
    return (k == RegionKind::Dpp ? 2.0 * kPi : kPi) - u - kPi / r;
}
inline cplx phi_arg_v(RegionKind k, int r, cplx v) {
    return (k == RegionKind::Dp ? v - kPi : v) + kPi / r;
}

// V_r^{+-}(x,y) with the region-appropriate phi_r shifts
inline cplx v_r_potential(PotentialSign sign, const SurgerySlope& slope, const QuantumDilog& phi,
                          const Region& region, cplx x, cplx y) {
    if (!region.contains(x, y))
        throw std::domain_error("v_r_potential: (x,y) outside the requested region");
    const int r = phi.r();
    const double p = static_cast<double>(slope.p), q = static_cast<double>(slope.q);
    const long long pp = dual_pair(slope.p, slope.q).p_prime;
    const cplx u = y + x, v = y - x;
    return (-p * x * x + sign_of(sign) * 2.0 * kPi * x) / q - 2.0 * kPi * x + 4.0 * x * y -
           phi.value_strip(phi_arg_u(region.kind, r, u)) +
           phi.value_strip(phi_arg_v(region.kind, r, v)) - pp * kPi * kPi / q;
}

// ---------------------------------------------------------------------------
// product-patch quadrature
// ---------------------------------------------------------------------------

// integrand = point(u,v) * exp(pu(u) + pv(v)) over {u = cu(s), v = cv(t)},
// s in [sa,sb], t in [ta,tb]; jac is the constant (du/ds)(dv/dt) form factor
// including the 1/2 from dx dy = du dv / 2.
struct ProductPatch {
    std::function<cplx(double)> cu, cv;
    double sa, sb, ta, tb;
    cplx jac;
    std::function<cplx(cplx)> pu, pv;          // exponent parts (phi-heavy)
    std::function<cplx(cplx, cplx)> point;     // cheap prefactor weight
};

inline cplx integrate_product_patch(const ProductPatch& P, int ns, int nt) {
    const auto& gs = gauss_legendre(ns);
    const auto& gt = gauss_legendre(nt);
    const double ms = 0.5 * (P.sa + P.sb), hs = 0.5 * (P.sb - P.sa);
    const double mt = 0.5 * (P.ta + P.tb), ht = 0.5 * (P.tb - P.ta);
    std::vector<cplx> us(ns), pus(ns), vs(nt), pvs(nt);
    for (int i = 0; i < ns; ++i) {
        us[i] = P.cu(ms + hs * gs.x[i]);
        pus[i] = P.pu(us[i]);
    }
    for (int j = 0; j < nt; ++j) {
        vs[j] = P.cv(mt + ht * gt.x[j]);
        pvs[j] = P.pv(vs[j]);
    }
    KahanSum<double> acc;
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nt; ++j)
            acc.add(gs.w[i] * gt.w[j] * P.point(us[i], vs[j]) * std::exp(pus[i] + pvs[j]));
    return P.jac * hs * ht * acc.s;
}

// refine node counts until two successive estimates agree
inline cplx integrate_product_patch_adaptive(const ProductPatch& P, double rel_tol,
                                             double abs_floor, int n0 = 48, int nmax = 640) {
    cplx prev = integrate_product_patch(P, n0, n0);
    for (int n = n0 * 3 / 2; n <= nmax; n = n * 3 / 2) {
        cplx cur = integrate_product_patch(P, n, n);
        if (std::abs(cur - prev) <= rel_tol * std::abs(cur) + abs_floor) return cur;
        prev = cur;
    }
    return prev;
}

// ---------------------------------------------------------------------------
// region integrals of  point(u,v) exp((r/4 pi i)(Q(u,v) - phi(arg_u) + phi(arg_v)))
// over a region square, deformed by a staged shift (u -> u + i a, v -> v + i b).
// By holomorphy the five pieces (inner shifted square, two u-walls with v real,
// two v-walls with u shifted, plus the real collar between the delta/2 and
// delta squares) sum to the real-domain integral over the delta/2 square.
// ---------------------------------------------------------------------------

struct RegionIntegrand {
    // full exponent multiplier applied to (Q + phi parts)
    cplx r_over_4pii;
    std::function<cplx(cplx, cplx)> Q;      // closed-form exponent part in (u,v)
    std::function<cplx(cplx)> phi_u;        // -phi(arg_u(u)) evaluated as exponent part
    std::function<cplx(cplx)> phi_v;        // +phi(arg_v(v))
    std::function<cplx(cplx, cplx)> weight; // cheap prefactor (eps, sin, e^{-xi}, ...)
};

struct RegionQuadOptions {
    double delta_half = 0.0;   // inner inset of the integration square
    double delta = 0.0;        // inset where the deformation starts
    double rel_tol = 1e-7;
    double abs_floor = 0.0;
    int n0 = 48;
    int nmax = 640;
    int wall_n0 = 24;
    int wall_nmax = 240;
};

// Node counts for undeformed (real-domain) region integrals.  D' and D''
// carry no saddle: their value is exponentially smaller than the integrand
// peak, so the oscillation must be resolved outright; the per-axis structure
// of the integrand keeps even large grids cheap.
inline RegionQuadOptions real_domain_options(const RegionQuadOptions& base, int r) {
    RegionQuadOptions opt = base;
    opt.n0 = std::max(256, 4 * r);
    opt.nmax = std::max(1024, 12 * r);
    return opt;
}

inline cplx integrate_region_deformed(RegionKind kind, const RegionIntegrand& f, cplx shift_u,
                                      cplx shift_v, const RegionQuadOptions& opt) {
    const auto [u0, u1] = region_u_range(kind);
    const auto [v0, v1] = region_v_range(kind);
    const double dh = opt.delta_half, dd = opt.delta;
    const double ua = u0 + dh, ub = u1 - dh, va = v0 + dh, vb = v1 - dh;
    const double uA = u0 + dd, uB = u1 - dd, vA = v0 + dd, vB = v1 - dd;

    auto pu = [&f](cplx u) { return f.r_over_4pii * f.phi_u(u); };
    auto pv = [&f](cplx v) { return f.r_over_4pii * f.phi_v(v); };
    auto point = [&f](cplx u, cplx v) { return f.weight(u, v) * std::exp(f.r_over_4pii * f.Q(u, v)); };

    std::vector<cplx> parts;
    auto add_patch = [&](std::function<cplx(double)> cu, std::function<cplx(double)> cv,
                         double sa, double sb, double ta, double tb, cplx jac, bool wall) {
        if (sb < sa) { std::swap(sa, sb); jac = -jac; }  // reversed wall direction
        if (tb < ta) { std::swap(ta, tb); jac = -jac; }
        if (sb <= sa || tb <= ta) return;
        ProductPatch P{std::move(cu), std::move(cv), sa, sb, ta, tb, jac, pu, pv, point};
        parts.push_back(wall ? integrate_product_patch_adaptive(P, opt.rel_tol, opt.abs_floor,
                                                                opt.wall_n0, opt.wall_nmax)
                             : integrate_product_patch_adaptive(P, opt.rel_tol, opt.abs_floor,
                                                                opt.n0, opt.nmax));
    };
    auto ident = [](double s) { return cplx(s, 0.0); };

    // collar: [ua,ub]x[va,vb] minus [uA,uB]x[vA,vB], all real (4 rectangles)
    if (dd > dh) {
        add_patch(ident, ident, ua, uA, va, vb, cplx(0.5, 0), false);
        add_patch(ident, ident, uB, ub, va, vb, cplx(0.5, 0), false);
        add_patch(ident, ident, uA, uB, va, vA, cplx(0.5, 0), false);
        add_patch(ident, ident, uA, uB, vB, vb, cplx(0.5, 0), false);
    }

    // stage 1: shift u on [uA,uB]x[vA,vB]:
    //   int_real = int_{u+i su} + walls at u=uA (+) and u=uB (-)
    // wall at u = uA: u = uA + i t, t in [0, Im su]; jac carries the i du/dt
    const double au = shift_u.imag(), av = shift_v.imag();
    if (au != 0.0) {
        add_patch([uA](double t) { return cplx(uA, t); }, ident, 0.0, au, vA, vB,
                  cplx(0, 1) * cplx(0.5, 0), true);
        add_patch([uB](double t) { return cplx(uB, t); }, ident, 0.0, au, vA, vB,
                  -cplx(0, 1) * cplx(0.5, 0), true);
    }
    // stage 2: shift v with u already displaced
    if (av != 0.0) {
        add_patch([au](double s) { return cplx(s, au); },
                  [vA](double t) { return cplx(vA, t); }, uA, uB, 0.0, av,
                  cplx(0, 1) * cplx(0.5, 0), true);
        add_patch([au](double s) { return cplx(s, au); },
                  [vB](double t) { return cplx(vB, t); }, uA, uB, 0.0, av,
                  -cplx(0, 1) * cplx(0.5, 0), true);
    }
    // shifted inner square
    add_patch([au](double s) { return cplx(s, au); }, [av](double t) { return cplx(t, av); },
              uA, uB, vA, vB, cplx(0.5, 0), false);

    KahanSum<double> acc;
    for (cplx p : parts) acc.add(p);
    return acc.s;
}

// wall sign fix: stage-1 decomposition of int_a^b along the real axis versus
// the line Im = au is   int_real = int_shifted + i int_0^au f(a+it) dt - i int_0^au f(b+it) dt.
// (verified against direct quadrature in the test suite)

// delta solving Lambda(delta) = eps/4 (the Prop-4.1 recipe); eps defaults 0.05
inline double default_delta(double eps = 0.05) {
    double lo = 1e-9, hi = 0.5;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (lobachevsky(mid) < eps / 4.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// leading Fourier coefficients
// ---------------------------------------------------------------------------

struct FourierLeading {
    cplx hat_f0;        // hat f_r(0,...,0)
    cplx hat_fm1;       // hat f_r(-1,0,...,0)
    cplx d_part_f0;     // region-D contribution to hat_f0 (before prefactor? no: scaled)
    double delta = 0.0;
};

namespace detail {

struct HatFPieces {
    cplx total;
    cplx d_part;
};

// J = sum over regions of int eps(x,y) sin(((-1)^{k-1} x + sin_sign p' pi)/q)
//     e^{-x i + (r/4 pi i) V_r^{family}} dx dy, deformed through the critical point
inline HatFPieces hat_f_reduced(const SurgerySlope& slope, const QuantumDilog& phi,
                                const CriticalData& cd, PotentialSign family, double sin_sign,
                                const RegionQuadOptions& opt_in) {
    const int r = phi.r();
    const CfExpansion cf = expand_negative_cf(slope.p, slope.q);
    const int k = cf.k();
    const double p = static_cast<double>(slope.p), q = static_cast<double>(slope.q);
    const long long pp = dual_pair(slope.p, slope.q).p_prime;
    const double sgn = sign_of(family);
    const double parity = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^{k-1}

    RegionQuadOptions opt = opt_in;
    const cplx r4 = static_cast<double>(r) / (4.0 * kPi * cplx(0, 1));

    // saddle of V^family sits at x = sgn * x0; deform through it
    const cplx xs = sgn * cd.x0;
    const double su = cd.y0.imag() + xs.imag();
    const double sv = cd.y0.imag() - xs.imag();

    HatFPieces out{0.0, 0.0};
    for (RegionKind kind : {RegionKind::D, RegionKind::Dp, RegionKind::Dpp}) {
        RegionIntegrand f;
        f.r_over_4pii = r4;
        f.Q = [p, q, sgn, pp](cplx u, cplx v) {
            const cplx x = 0.5 * (u - v);
            return (-p * x * x + sgn * 2.0 * kPi * x) / q - 2.0 * kPi * x + (u * u - v * v) -
                   static_cast<double>(pp) * kPi * kPi / q;
        };
        f.phi_u = [&phi, kind, r](cplx u) { return -phi.value_strip(phi_arg_u(kind, r, u)); };
        f.phi_v = [&phi, kind, r](cplx v) { return phi.value_strip(phi_arg_v(kind, r, v)); };
        const double eps_w = region_epsilon_weight(kind);
        f.weight = [eps_w, parity, pp, q, sin_sign](cplx u, cplx v) {
            const cplx x = 0.5 * (u - v);
            return eps_w * std::sin((parity * x + sin_sign * static_cast<double>(pp) * kPi) / q) *
                   std::exp(-cplx(0, 1) * x);
        };
        cplx part;
        if (kind == RegionKind::D) {
            part = integrate_region_deformed(kind, f, cplx(0, su), cplx(0, sv), opt);
            out.d_part = part;
        } else {
            // D', D'' carry no saddle; push y upward to tame the integrand
            const double L = 0.6;
            part = integrate_region_deformed(kind, f, cplx(0, L), cplx(0, L), opt);
        }
        out.total += part;
    }
    return out;
}

}  // namespace detail

// hat f_r(0,...,0) and hat f_r(-1,0,...,0) by 2D quadrature, including the
// i^{(k-1)/2} r^{(k+3)/2} / (4 pi^2 sqrt q) prefactor.  V_0 pairs with the
// sign family (-1)^k and sin((( -1)^{k-1} x + p' pi)/q); V_1 with the opposite
// family, sin(((-1)^{k-1} x - p' pi)/q) and an overall minus.
inline FourierLeading fourier_leading(const SurgerySlope& slope, const QuantumDilog& phi,
                                      const CriticalData& cd, RegionQuadOptions opt = {}) {
    const CfExpansion cf = expand_negative_cf(slope.p, slope.q);
    const int k = cf.k();
    const int r = phi.r();
    if (opt.delta <= 0.0) opt.delta = default_delta();
    if (opt.delta_half <= 0.0) opt.delta_half = opt.delta / 2.0;
    const PotentialSign fam0 = (k % 2 == 0) ? PotentialSign::plus : PotentialSign::minus;
    const PotentialSign fam1 = (k % 2 == 0) ? PotentialSign::minus : PotentialSign::plus;
    const auto j0 = detail::hat_f_reduced(slope, phi, cd, fam0, +1.0, opt);
    const auto j1 = detail::hat_f_reduced(slope, phi, cd, fam1, -1.0, opt);
    const cplx pref = std::polar(1.0, kPi * (k - 1) / 4.0) *
                      std::pow(static_cast<double>(r), (k + 3) / 2.0) /
                      (4.0 * kPi * kPi * std::sqrt(static_cast<double>(slope.q)));
    FourierLeading out;
    out.hat_f0 = pref * j0.total;
    out.hat_fm1 = -pref * j1.total;
    out.d_part_f0 = pref * j0.d_part;
    out.delta = opt.delta;
    return out;
}

// ---------------------------------------------------------------------------
// saddle-point prediction (leading Fourier pair evaluated in closed form)
// ---------------------------------------------------------------------------

struct SaddlePrediction {
    cplx value;       // kappa_r (hat f0 + hat f-1) closed form
    cplx c_constant;  // the r-independent constant C
    int branch = +1;  // chosen square-root branch of -det Hess
};

inline SaddlePrediction saddle_prediction(const SurgerySlope& slope, int r,
                                          const CriticalData& cd, int branch = +1) {
    const CfExpansion cf = expand_negative_cf(slope.p, slope.q);
    const int k = cf.k();
    const int sigma = linking_signature(cf);
    const long long pp = dual_pair(slope.p, slope.q).p_prime;
    const double q = static_cast<double>(slope.q);
    const cplx sin_factor = std::sin((-cd.x0 + static_cast<double>(pp) * kPi) / q);
    if (std::abs(sin_factor) < 1e-12)
        throw std::runtime_error("saddle_prediction: vanishing sine factor (contradicts Im x0 != 0)");
    const cplx root = static_cast<double>(branch) * std::sqrt(-cd.hess_det);
    const cplx c = 8.0 * std::polar(1.0, kPi * (k - 1) / 4.0) * sin_factor /
                   (std::sqrt(q) * root);
    SaddlePrediction out;
    out.c_constant = c;
    out.branch = branch;
    out.value = kappa_r(r, cf, sigma) * c * std::pow(static_cast<double>(r), (k + 1) / 2.0) *
                std::exp(static_cast<double>(r) / (4.0 * kPi * cplx(0, 1)) * cd.v_plus);
    return out;
}

// pick the branch making the ratio phase small at a calibration r
inline int calibrate_saddle_branch(const SurgerySlope& slope, const CriticalData& cd,
                                   const RootData& rd) {
    const cplx rt = rt_symmetrized(slope, rd).value;
    const cplx plus = saddle_prediction(slope, rd.r, cd, +1).value;
    return std::abs(rt / plus - 1.0) <= std::abs(rt / (-plus) - 1.0) ? +1 : -1;
}

// ---------------------------------------------------------------------------
// Fourier tail decay
// ---------------------------------------------------------------------------

struct FourierIndex {
    std::vector<long long> n;  // n_1..n_{k-1}
    long long k1 = 0, k2 = 0;
    long long k0(const CfExpansion& cf) const {
        long long acc = 0;
        const int k = cf.k();
        for (std::size_t j = 0; j < n.size(); ++j) {
            const long long cj = cf.c[j];  // c_{j-1} with c_0 = 1 at j=0
            acc += ((k - 1 - static_cast<int>(j)) % 2 == 0 ? 1 : -1) * n[j] * cj;
        }
        return acc;
    }
};

struct TailReport {
    double exponent = 0.0;          // (4 pi / r) log |hat F|
    std::array<double, 3> by_region{};  // D, D', D''
    double volume = 0.0;
    bool leading = false;
};

// |hat F(k0,k1,k2)| = |int_{D_{delta/2}} e^{(r/4 pi i) V^{(k0,k1,k2)}}|, using
// the continuum V^{+-}, along the deformed surfaces of the decay lemmas.
inline TailReport fourier_tail_decay(const SurgerySlope& slope, int r, const FourierIndex& idx,
                                     const CriticalData& cd,
                                     PotentialSign family = PotentialSign::plus,
                                     RegionQuadOptions opt = {}) {
    const CfExpansion cf = expand_negative_cf(slope.p, slope.q);
    const long long k0 = idx.k0(cf);
    const double p = static_cast<double>(slope.p), q = static_cast<double>(slope.q);
    const long long pp = dual_pair(slope.p, slope.q).p_prime;
    const double sgn = sign_of(family);
    const double lin = 4.0 * kPi * (static_cast<double>(k0) / q + static_cast<double>(idx.k1));
    const double lin_y = 4.0 * kPi * static_cast<double>(idx.k2);
    if (opt.delta <= 0.0) opt.delta = default_delta();
    if (opt.delta_half <= 0.0) opt.delta_half = opt.delta / 2.0;
    const cplx r4 = static_cast<double>(r) / (4.0 * kPi * cplx(0, 1));

    TailReport rep;
    rep.volume = cd.volume;
    bool all_zero = (k0 == 0 && idx.k1 == 0 && idx.k2 == 0);
    for (long long nj : idx.n) all_zero = all_zero && (nj == 0);
    rep.leading = all_zero;

    cplx total = 0.0;
    int region_i = 0;
    for (RegionKind kind : {RegionKind::D, RegionKind::Dp, RegionKind::Dpp}) {
        RegionIntegrand f;
        f.r_over_4pii = r4;
        f.Q = [p, q, sgn, pp, lin, lin_y](cplx u, cplx v) {
            const cplx x = 0.5 * (u - v), y = 0.5 * (u + v);
            return (-p * x * x + sgn * 2.0 * kPi * x) / q - 2.0 * kPi * x + (u * u - v * v) -
                   static_cast<double>(pp) * kPi * kPi / q - lin * x - lin_y * y;
        };
        // continuum limit of the phi_r parts; e^{+-2i .} is the same on every sheet
        f.phi_u = [](cplx u) { return -li2(std::exp(cplx(0, -2) * u)); };
        f.phi_v = [](cplx v) { return li2(std::exp(cplx(0, 2) * v)); };
        f.weight = [](cplx, cplx) { return cplx(1.0, 0.0); };

        cplx su = 0.0, sv = 0.0;
        if (kind == RegionKind::D) {
            if (idx.k2 != 0) {
                const double L = (idx.k2 > 0 ? 1.0 : -1.0) * 0.75;
                su = cplx(0, L);
                sv = cplx(0, L);
            } else if (k0 != 0 || idx.k1 != 0) {
                const double ratio = static_cast<double>(k0) / q + static_cast<double>(idx.k1);
                const double sig = (ratio * cd.x0.imag() > 0) ? 1.0 : -1.0;
                su = cplx(0, cd.y0.imag() + sig * cd.x0.imag());
                sv = cplx(0, cd.y0.imag() - sig * cd.x0.imag());
            } else {
                const double sig = sign_of(family);
                su = cplx(0, cd.y0.imag() + sig * cd.x0.imag());
                sv = cplx(0, cd.y0.imag() - sig * cd.x0.imag());
            }
        } else {
            double L;
            if (kind == RegionKind::Dp)
                L = (idx.k2 >= 0 ? 1.0 : -1.0) * 0.75;
            else
                L = (idx.k2 > 0 ? 1.0 : -1.0) * 0.75;
            su = cplx(0, L);
            sv = cplx(0, L);
        }
        const cplx part = integrate_region_deformed(kind, f, su, sv, opt);
        rep.by_region[region_i++] =
            4.0 * kPi / r * std::log(std::max(std::abs(part), 1e-300));
        total += part;
    }
    rep.exponent = 4.0 * kPi / r * std::log(std::max(std::abs(total), 1e-300));
    return rep;
}

// x_i(x) along the completed-square critical lines for Fourier index n
// (family 0: the -(-1)^i pi/c_i shift; family 1 flips it).
inline std::vector<double> critical_line_x(const CfExpansion& cf, const std::vector<long long>& n,
                                           double x, bool family1 = false) {
    const int k = cf.k();
    std::vector<double> xs(k);
    xs[k - 1] = x;
    // 1-based: x_i = -x_{i+1}/b_i - sum_{j=1..i} (-1)^{i-j} 2 n_j c_{j-1} pi / c_i
    //                +- (-1)^i pi / c_i     (family 1 flips the last sign)
    for (int a = k - 2; a >= 0; --a) {  // a = i-1
        const double bi = to_double(cf.b[a]);
        const long long ci = cf.c[a + 1];
        double s = 0.0;
        for (int j = 0; j <= a && j < static_cast<int>(n.size()); ++j)
            s += (((a - j) % 2 == 0) ? 1.0 : -1.0) * 2.0 * n[j] * cf.c[j] * kPi / ci;
        const double alt = ((a + 1) % 2 == 0) ? 1.0 : -1.0;  // (-1)^i
        xs[a] = -xs[a + 1] / bi - s + (family1 ? -1.0 : 1.0) * alt * kPi / ci;
    }
    return xs;
}

// ---------------------------------------------------------------------------
// convergence records
// ---------------------------------------------------------------------------

struct ConvergenceRecord {
    int r = 0;
    cplx rt_log_scaled;  // (4 pi / r) log RT_r, log branch guided by CS
    cplx target;         // Vol + i CS
    double residual = 0.0;
    cplx saddle_ratio;   // RT_r / prediction
    double tv_scaled = 0.0;  // (2 pi / r) log tv_proxy
};

inline std::vector<ConvergenceRecord> convergence_table(const SurgerySlope& slope,
                                                        const std::vector<int>& r_list,
                                                        double max_terms = 5e8) {
    const CriticalData cd = solve_critical(slope);
    std::vector<ConvergenceRecord> out;
    int branch = 0;
    for (int r : r_list) {
        const RootData rd(r);
        const InvariantValue rt = rt_symmetrized(slope, rd, max_terms);
        if (branch == 0) branch = calibrate_saddle_branch(slope, cd, rd);
        ConvergenceRecord rec;
        rec.r = r;
        rec.target = cplx(cd.volume, cd.cs);
        // unwrap the log branch toward the CS-guided sheet
        const double want = r * cd.cs / (4.0 * kPi);
        const double arg0 = std::arg(rt.value);
        const double two_pi_n = 2.0 * kPi * std::round((want - arg0) / (2.0 * kPi));
        rec.rt_log_scaled =
            4.0 * kPi / r * cplx(std::log(std::abs(rt.value)), arg0 + two_pi_n);
        rec.residual = std::abs(rec.rt_log_scaled - rec.target);
        rec.saddle_ratio = rt.value / saddle_prediction(slope, r, cd, branch).value;
        rec.tv_scaled = 2.0 * kPi / r * std::log(std::norm(rt.value));
        out.push_back(rec);
    }
    return out;
}

// ---------------------------------------------------------------------------
// appendix numerics: 1D quadratic-phase integral and the 2D saddle model
// ---------------------------------------------------------------------------

struct GaussianPhaseResult {
    cplx numeric;
    cplx leading;       // sin(alpha+beta) 2 pi / (sqrt r sqrt(i gamma))
    bool interior = false;
    bool degenerate_sine = false;
};

// int_a^b sin(x+beta) e^{(r/4 pi i) gamma (x-alpha)^2} dx
inline GaussianPhaseResult gaussian_phase_integral(double a, double b, double alpha, cplx beta,
                                                   double gamma, double r, double rel_tol = 1e-10) {
    if (!(b > a)) throw std::invalid_argument("gaussian_phase_integral: need a < b");
    if (gamma == 0.0) throw std::invalid_argument("gaussian_phase_integral: gamma = 0");
    GaussianPhaseResult out;
    out.interior = (alpha > a && alpha < b);
    const cplx coeff = r / (4.0 * kPi * cplx(0, 1)) * gamma;
    auto f = [alpha, beta, coeff](double x) {
        return std::sin(x + beta) * std::exp(coeff * (x - alpha) * (x - alpha));
    };
    // panels sized to the local oscillation; adaptive on top
    out.numeric = adaptive_integrate(f, a, b, rel_tol, 1e-300);
    out.leading = std::sin(alpha + beta) * 2.0 * kPi /
                  (std::sqrt(r) * std::sqrt(cplx(0, 1) * gamma));
    out.degenerate_sine = out.interior && std::abs(std::sin(alpha + beta)) < 1e-12;
    return out;
}

struct Saddle2dReport {
    cplx numeric;
    cplx leading;
    double rel_error = 0.0;
};

// numeric int_{[-w,w]^2} g e^{r f} vs (2 pi / r) g(c) / sqrt(det(-Hess f)) e^{r f(c)}
// for the quadratic model f = -(z1^2 + z2^2), c = 0.
inline Saddle2dReport verify_saddle_2d_quadratic(const std::function<cplx(cplx, cplx)>& g,
                                                 double r, double w = 1.0, int n = 96) {
    const auto& gl = gauss_legendre(n);
    KahanSum<double> acc;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double z1 = w * gl.x[i], z2 = w * gl.x[j];
            acc.add(gl.w[i] * gl.w[j] * g(z1, z2) * std::exp(-r * (z1 * z1 + z2 * z2)));
        }
    Saddle2dReport rep;
    rep.numeric = w * w * acc.s;
    rep.leading = 2.0 * kPi / r * g(0.0, 0.0) / 2.0;  // sqrt(det(2 I)) = 2
    rep.rel_error = std::abs(rep.numeric - rep.leading) / std::abs(rep.leading);
    return rep;
}

}  // namespace rtvol
