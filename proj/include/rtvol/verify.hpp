#pragma once

// The acceptance battery.  Each criterion runs standalone, prints one
// pass/fail line with the measured values, and all tolerances are pinned
// here in code.

#include "arith.hpp"
#include "asymptotics.hpp"
#include "geometry.hpp"
#include "qdilog.hpp"
#include "rt_exact.hpp"
#include "specfun.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace rtvol {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace verify_detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// least-squares fit of y_i ~ (a log r_i + b) / r_i; returns relative residual
inline double fit_log_over_r(const std::vector<int>& rs, const std::vector<double>& ys) {
    double s11 = 0, s12 = 0, s22 = 0, t1 = 0, t2 = 0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const double f1 = std::log(static_cast<double>(rs[i])) / rs[i];
        const double f2 = 1.0 / rs[i];
        s11 += f1 * f1; s12 += f1 * f2; s22 += f2 * f2;
        t1 += f1 * ys[i]; t2 += f2 * ys[i];
    }
    const double det = s11 * s22 - s12 * s12;
    const double a = (t1 * s22 - t2 * s12) / det;
    const double b = (s11 * t2 - s12 * t1) / det;
    double num = 0, den = 0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const double model = (a * std::log(static_cast<double>(rs[i])) + b) / rs[i];
        num += (ys[i] - model) * (ys[i] - model);
        den += ys[i] * ys[i];
    }
    return std::sqrt(num / den);
}

// straight-line slope of log(err) against log(r)
inline double loglog_slope(const std::vector<int>& rs, const std::vector<double>& errs) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const double x = std::log(static_cast<double>(rs[i]));
        const double y = std::log(errs[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace verify_detail

// C1: rt_symmetrized vs rt_direct at 1e-9 relative
inline CriterionResult criterion_cross_formula(bool quick) {
    const std::vector<std::pair<int, int>> slopes{{5, 1}, {5, 2}, {7, 2}, {7, 3}};
    const int rmax = quick ? 21 : 31;
    double worst = 0.0;
    for (auto [p, q] : slopes) {
        for (int r = 5; r <= rmax; r += 2) {
            const RootData rd(r);
            const SurgerySlope s(p, q);
            const cplx a = rt_symmetrized(s, rd).value;
            const cplx b = rt_direct(s, rd).value;
            worst = std::max(worst, std::abs(a - b) / std::abs(a));
        }
    }
    return {"C1 cross-formula exactness", worst < 1e-9,
            "max_rel=" + verify_detail::fmt(worst) + " tol=1e-9"};
}

// C2: Lemma 5.1 arithmetic identities over |p|<=200, q<=20, exactly
inline CriterionResult criterion_arith(bool) {
    long long checked = 0;
    for (long long q = 1; q <= 20; ++q) {
        for (long long p = -200; p <= 200; ++p) {
            if (std::gcd(std::abs(p), q) != 1) continue;
            const CfExpansion cf = expand_negative_cf(p, q);
            if (evaluate_cf(cf) != rat(p, q))
                return {"C2 arithmetic identities", false, "roundtrip failed at p/q"};
            const DualPair d = dual_pair(p, q);
            if (p * d.p_prime + q * d.q_prime != 1 || !(-q < d.p_prime && d.p_prime <= 0))
                return {"C2 arithmetic identities", false, "Bezout window failed"};
            if (cf_sum_identity(cf) != rat(-d.p_prime, q))
                return {"C2 arithmetic identities", false, "Lemma 5.1 sum failed"};
            if (cf.c.back() != q)
                return {"C2 arithmetic identities", false, "c_{k-1} != q"};
            for (int i = 2; i < cf.k(); ++i)
                if (!(cf.c[i - 1] > cf.c[i - 2] || (i - 1 == 1)))
                    return {"C2 arithmetic identities", false, "c_i not increasing"};
            ++checked;
        }
    }
    return {"C2 arithmetic identities", true,
            std::to_string(checked) + " coprime pairs, all exact"};
}

// C3: quantum dilogarithm battery
inline CriterionResult criterion_qdilog(bool quick) {
    double worst = 0.0;
    for (int r : {5, 7, 11, 21}) {
        const QuantumDilog phi(r);
        const cplx i4pi = static_cast<double>(r) / (4.0 * kPi * cplx(0, 1));
        for (cplx z : {cplx(0.3, 0), cplx(0.8, 0), cplx(kPi / 3, 0), cplx(1.5, 0.2),
                       cplx(2.4, -0.15)}) {
            const cplx lhs = std::exp(i4pi * (phi.value(z - kPi / r) - phi.value(z + kPi / r)));
            const cplx rhs = 1.0 - std::exp(cplx(0, 2) * z);
            worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
        }
        for (cplx z : {cplx(kPi / (2 * r), 0), cplx(-kPi / (4 * r), 0.05), cplx(0.1 * kPi / r, 0)}) {
            const cplx lhs = std::exp(i4pi * (phi.value(z) - phi.value(z + kPi)));
            const cplx rhs = 1.0 + std::exp(cplx(0, static_cast<double>(r)) * z);
            worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
        }
        const RootData rd(r);
        for (int n = 0; n <= r - 2; ++n) {
            const cplx v = std::exp(i4pi * (phi.value(kPi / r) -
                                            phi.value(2.0 * kPi * n / r + kPi / r)));
            worst = std::max(worst, std::abs(v - rd.qfact[n]) / std::abs(rd.qfact[n]));
        }
        for (int n = (r - 1) / 2 + 1; n <= r - 2; ++n) {
            const cplx v = 2.0 * std::exp(i4pi * (phi.value(kPi / r) -
                                                  phi.value(2.0 * kPi * n / r + kPi / r - kPi)));
            worst = std::max(worst, std::abs(v - rd.qfact[n]) / std::abs(rd.qfact[n]));
        }
    }
    // Lemma 2.4(1): residual after the c2/r^2 term decays at order >= 1.9 in 1/r^2
    std::vector<int> rs = quick ? std::vector<int>{11, 21, 41} : std::vector<int>{11, 21, 41, 81};
    std::vector<double> errs;
    const cplx w = std::exp(cplx(0, 2) * (kPi / 3));
    const cplx c2 = 2.0 * kPi * kPi * w / (3.0 * (1.0 - w));
    for (int r : rs) {
        const QuantumDilog phi(r);
        errs.push_back(std::abs(phi.value(kPi / 3) - li2(w) - c2 / (static_cast<double>(r) * r)));
    }
    const double slope = verify_detail::loglog_slope(rs, errs);
    const bool pass = worst < 1e-8 && slope <= -3.8;
    return {"C3 quantum dilogarithm battery", pass,
            "max_rel=" + verify_detail::fmt(worst) + " tol=1e-8, 2.4-order=" +
                verify_detail::fmt(-slope / 2.0) + " (need >=1.9)"};
}

// C4: geometry solver over all hyperbolic slopes with |p| <= 12, q <= 3
inline CriterionResult criterion_geometry(bool) {
    double worst_c = 0, worst_g = 0, worst_y = 0, min_hess = 1e300;
    int solved = 0;
    for (long long q = 1; q <= 3; ++q) {
        for (long long p = -12; p <= 12; ++p) {
            if (std::gcd(std::abs(p), q) != 1) continue;
            const SurgerySlope s(p, q);
            if (!s.hyperbolic()) continue;
            const CriticalData cd = solve_critical(s);
            worst_c = std::max(worst_c, cd.residual_critical);
            worst_g = std::max(worst_g, cd.residual_gluing);
            worst_y = std::max(worst_y, yoshida_check(s, cd));
            min_hess = std::min(min_hess, std::abs(cd.hess_det));
            if (!(cd.A.imag() > 0 && cd.B.imag() > 0))
                return {"C4 geometry solver", false, "Im A/Im B <= 0 at some slope"};
            const FkpBound b = fkp_lower_bound(s);
            if (cd.volume < b.value)
                return {"C4 geometry solver", false, "FKP bound violated"};
            ++solved;
        }
    }
    // the eight small pairs from the FKP threshold analysis
    bool eight_ok = true;
    for (auto [p, q] : std::vector<std::pair<int, int>>{
             {6, 1}, {7, 1}, {8, 1}, {9, 1}, {1, 2}, {3, 2}, {5, 2}, {7, 2}}) {
        const CriticalData cd = solve_critical(SurgerySlope(p, q));
        if (!(cd.volume > 0.5 * vol_figure8())) eight_ok = false;
    }
    const bool pass = worst_c < 1e-12 && worst_g < 1e-10 && worst_y < 1e-9 &&
                      min_hess > 1e-6 && eight_ok;
    return {"C4 geometry solver", pass,
            std::to_string(solved) + " slopes, resC=" + verify_detail::fmt(worst_c) +
                " resHG=" + verify_detail::fmt(worst_g) + " yoshida=" +
                verify_detail::fmt(worst_y) + " min|hess|=" + verify_detail::fmt(min_hess) +
                (eight_ok ? ", 8 pairs > Vol(4_1)/2" : ", 8-pair check FAILED")};
}

struct TrendData {
    std::vector<int> rs;
    std::vector<ConvergenceRecord> recs;
};

inline TrendData run_trend(bool quick) {
    TrendData t;
    t.rs = quick ? std::vector<int>{11, 21, 31, 41, 51}
                 : std::vector<int>{51, 101, 151, 201, 251, 301};
    t.recs = convergence_table(SurgerySlope(5, 2), t.rs);
    return t;
}

// C5: Theorem 1.1 trend for (5,2)
inline CriterionResult criterion_volume_trend(const TrendData& t) {
    std::vector<double> resid;
    for (const auto& rec : t.recs) resid.push_back(rec.residual);
    const bool decreasing = resid.back() < resid.front();
    const double fitres = verify_detail::fit_log_over_r(t.rs, resid);
    const bool pass = decreasing && fitres < 0.20;
    std::ostringstream os;
    os << "resid(r=" << t.rs.front() << ")=" << verify_detail::fmt(resid.front())
       << " resid(r=" << t.rs.back() << ")=" << verify_detail::fmt(resid.back())
       << " fit_rel=" << verify_detail::fmt(fitres) << " (need <0.2)";
    return {"C5 volume-conjecture trend", pass, os.str()};
}

// C6: saddle-point prefactor for (5,2)
inline CriterionResult criterion_saddle(const TrendData& t, bool quick) {
    const int r_hi = quick ? 51 : 201;
    double lo = -1, hi = -1;
    for (std::size_t i = 0; i < t.rs.size(); ++i) {
        if (t.rs[i] == t.rs.front()) lo = std::abs(t.recs[i].saddle_ratio - 1.0);
        if (t.rs[i] == r_hi) hi = std::abs(t.recs[i].saddle_ratio - 1.0);
    }
    const bool pass = hi >= 0 && lo >= 0 && hi < lo && hi < 0.25;
    return {"C6 saddle-point prefactor", pass,
            "|ratio-1|(" + std::to_string(t.rs.front()) + ")=" + verify_detail::fmt(lo) +
                " |ratio-1|(" + std::to_string(r_hi) + ")=" + verify_detail::fmt(hi) +
                " (need <0.25 and decreasing)"};
}

// C7: Fourier pipeline for (5,2)
inline CriterionResult criterion_fourier(bool quick) {
    const SurgerySlope s(5, 2);
    const CriticalData cd = solve_critical(s);
    const int r = quick ? 51 : 101;
    const QuantumDilog phi(r);
    const RootData rd(r);
    const FourierLeading fl = fourier_leading(s, phi, cd);
    const CfExpansion cf = expand_negative_cf(s.p, s.q);
    const cplx approx = kappa_r(r, cf, linking_signature(cf)) * (fl.hat_f0 + fl.hat_fm1);
    const cplx exact = rt_symmetrized(s, rd).value;
    const double rel = std::abs(approx - exact) / std::abs(exact);

    // non-leading window |k0|,|k1|,|k2| <= 1 at r = 51, both sign families
    const int rt_tail = 51;
    double worst_gap = 1e300;
    int tails = 0;
    for (long long n1 = -1; n1 <= 1; ++n1)
        for (long long k1 = -1; k1 <= 1; ++k1)
            for (long long k2 = -1; k2 <= 1; ++k2) {
                if (n1 == 0 && k1 == 0 && k2 == 0) continue;
                FourierIndex idx{{n1}, k1, k2};
                for (PotentialSign fam : {PotentialSign::plus, PotentialSign::minus}) {
                    const TailReport rep = fourier_tail_decay(s, rt_tail, idx, cd, fam);
                    worst_gap = std::min(worst_gap, cd.volume - rep.exponent);
                    ++tails;
                }
            }
    const bool pass = rel < 0.2 && worst_gap > 0.05;
    return {"C7 fourier pipeline", pass,
            "leading_rel(r=" + std::to_string(r) + ")=" + verify_detail::fmt(rel) +
                " (need <0.2), min tail gap=" + verify_detail::fmt(worst_gap) + " over " +
                std::to_string(tails) + " indices (need >0.05)"};
}

// C8: appendix numerics
inline CriterionResult criterion_appendix(bool) {
    std::vector<int> rs{64, 256, 1024};
    std::vector<double> errs;
    for (int r : rs) {
        const auto g = gaussian_phase_integral(-1, 1, 0.0, cplx(kPi / 2, 0), 1.0, r);
        errs.push_back(std::abs(g.numeric / g.leading - 1.0));
    }
    const double slope = verify_detail::loglog_slope(rs, errs);
    // exterior case: |integral| * r stays bounded
    double vmax = 0, vmin = 1e300;
    for (int r : rs) {
        const auto g = gaussian_phase_integral(-1, 1, 2.0, cplx(kPi / 2, 0), 1.0, r);
        vmax = std::max(vmax, std::abs(g.numeric) * r);
        vmin = std::min(vmin, std::abs(g.numeric) * r);
    }
    // quadratic saddle model
    const auto rep = verify_saddle_2d_quadratic(
        [](cplx z1, cplx) { return 1.0 + z1; }, 60.0);
    const bool pass = slope <= -0.45 * 0.5 && vmax < 50.0 * std::max(vmin, 1e-12) &&
                      rep.rel_error < 1e-6;
    return {"C8 appendix numerics", pass,
            "interior order=" + verify_detail::fmt(-slope * 2.0) +
                " in 1/sqrt(r) (need >=0.45), exterior r*|I| in [" +
                verify_detail::fmt(vmin) + "," + verify_detail::fmt(vmax) +
                "], quad model rel=" + verify_detail::fmt(rep.rel_error)};
}

// C9: figure-eight constants
inline CriterionResult criterion_constants(bool) {
    // independent series oracle: Lambda(theta) = (1/2) sum sin(2 n theta)/n^2
    auto series = [](double theta, int N) {
        double s = 0;
        for (int n = N; n >= 1; --n) s += std::sin(2.0 * n * theta) / (static_cast<double>(n) * n);
        return 0.5 * s;
    };
    const double v41_series = 6.0 * series(kPi / 3, 200000);
    const double e1 = std::abs(vol_figure8() - 2.029883);
    const double e1b = std::abs(v41_series - 2.029883);
    const double e2 = std::abs(lobachevsky(kPi / 6) - 1.5 * lobachevsky(kPi / 3));
    double worst_sym = 0;
    for (int i = 1; i < 1000; ++i) {
        const double th = -2.0 * kPi + 4.0 * kPi * i / 1000.0;
        worst_sym = std::max(worst_sym, std::abs(lobachevsky(-th) + lobachevsky(th)));
        worst_sym = std::max(worst_sym, std::abs(lobachevsky(th + kPi) - lobachevsky(th)));
        worst_sym = std::max(worst_sym,
                             std::abs(0.5 * lobachevsky(2 * th) - lobachevsky(th) -
                                      lobachevsky(th + kPi / 2)));
    }
    const bool pass = e1 < 1e-5 && e1b < 1e-4 && e2 < 1e-12 && worst_sym < 1e-12;
    return {"C9 figure-eight constants", pass,
            "6L(pi/3) err=" + verify_detail::fmt(e1) + " series err=" + verify_detail::fmt(e1b) +
                " L(pi/6)-1.5L(pi/3)=" + verify_detail::fmt(e2) +
                " sym worst=" + verify_detail::fmt(worst_sym)};
}

// C10: Turaev-Viro side
inline CriterionResult criterion_tv(const TrendData& t) {
    const CriticalData cd = solve_critical(SurgerySlope(5, 2));
    const double lo = std::abs(t.recs.front().tv_scaled - cd.volume);
    const double hi = std::abs(t.recs.back().tv_scaled - cd.volume);
    return {"C10 TV trend", hi < lo,
            "tv_resid(" + std::to_string(t.rs.front()) + ")=" + verify_detail::fmt(lo) +
                " tv_resid(" + std::to_string(t.rs.back()) + ")=" + verify_detail::fmt(hi)};
}

inline std::vector<CriterionResult> run_acceptance(bool quick, std::FILE* log = stdout) {
    std::vector<CriterionResult> rs;
    auto emit = [log, &rs](CriterionResult r) {
        if (log)
            std::fprintf(log, "[%s] %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                         r.detail.c_str());
        rs.push_back(std::move(r));
    };
    emit(criterion_cross_formula(quick));
    emit(criterion_arith(quick));
    emit(criterion_qdilog(quick));
    emit(criterion_geometry(quick));
    const TrendData t = run_trend(quick);
    emit(criterion_volume_trend(t));
    emit(criterion_saddle(t, quick));
    emit(criterion_fourier(quick));
    emit(criterion_appendix(quick));
    emit(criterion_constants(quick));
    emit(criterion_tv(t));
    return rs;
}

}  // namespace rtvol
