#pragma once

// Exact evaluation of RT_r(M) at q = e^{2 pi i / r} (t = e^{4 pi i / r}) for
// M = p/q filling of the figure-eight knot, by two independent finite sums
// over the chain-link surgery presentation with framings a_1..a_k:
//
//  direct:      kappa'_r sum (-1)^{m_k + sum a_i m_i} t^{sum a_i m_i(m_i+2)/4}
//               [m_1+1] prod [(m_i+1)(m_{i+1}+1)] <e_{m_k}>_{4_1}
//  symmetrized: (-2^{k-1}/{1}^k) kappa'_r sum [m_1+1] (-1)^{sum a_i m_i}
//               t^{sum a_i m_i(m_i+2)/4 + sum (m_i+1)(m_{i+1}+1)/2 - (m_k+1)(m+1/2)}
//               (t)_{m_k+1+m} / (t)_{m_k-m}
//
// with kappa'_r = mu_r^{k+1} <mu_r w_r>_{U+}^{-sigma(L)} and
// <mu_r w_r>_{U+} = e^{(-3/r - (r+1)/4) pi i}.  The symmetrized prefactor
// carries {1}^{-k}, not {1}^{-1}: with {1}^{-1} the two sums differ by
// {1}^{k-1} and the value fails to be presentation independent (checked
// against chains of different length presenting the same manifold).
//
// Quarter-integer t-powers are handled as integer powers of zeta = e^{pi i/r}.

#include "arith.hpp"
#include "qdilog.hpp"
#include "specfun.hpp"

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rtvol {

struct BudgetExceeded : std::runtime_error {
    double required_terms;
    explicit BudgetExceeded(double required)
        : std::runtime_error("state-sum term budget exceeded; required ~" +
                             std::to_string(required) + " terms"),
          required_terms(required) {}
};

// Default r caps keeping double-precision cancellation under ~6 digits.
inline int default_r_cap(long long q) { return q <= 2 ? 501 : 101; }

template <class Real>
struct KahanSum {
    std::complex<Real> s{0, 0}, c{0, 0};
    void add(std::complex<Real> v) {
        std::complex<Real> y = v - c;
        std::complex<Real> t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

// Root-of-unity tables at level r: zeta^j = e^{pi i j / r} (period 2r),
// quantum factorials (t)_n = prod_{k<=n} (1-t^k), braces {n}! and the
// quantum integers [n] = sin(2 pi n / r)/sin(2 pi / r).
template <class Real>
struct RootDataT {
    using C = std::complex<Real>;
    int r = 0;
    C t_quarter;                 // e^{pi i / r}
    std::vector<C> pow_table;    // zeta^j, j in [0, 2r)
    std::vector<C> qfact;        // (t)_n, n in [0, r-1]
    std::vector<C> braces_fact;  // {n}!, n in [0, r-1]
    std::vector<Real> qint;      // [n], n in [0, r)

    explicit RootDataT(int r_) : r(r_) {
        if (r < 3 || r % 2 == 0)
            throw std::invalid_argument("RootData: r must be odd and >= 3");
        const Real pi = static_cast<Real>(kPi);
        t_quarter = std::polar<Real>(1, pi / r);
        pow_table.resize(2 * r);
        for (int j = 0; j < 2 * r; ++j) pow_table[j] = std::polar<Real>(1, pi * j / r);
        qfact.assign(r, C(1, 0));
        braces_fact.assign(r, C(1, 0));
        for (int n = 1; n < r; ++n) {
            const C t_n = pow_table[(4 * n) % (2 * r)];
            qfact[n] = qfact[n - 1] * (C(1, 0) - t_n);
            const C brace_n = C(0, 2) * std::sin(2 * pi * n / r);
            braces_fact[n] = braces_fact[n - 1] * brace_n;
        }
        qint.resize(r);
        const Real s1 = std::sin(2 * pi / r);
        for (int n = 0; n < r; ++n) qint[n] = std::sin(2 * pi * n / r) / s1;
    }

    // zeta^e for any integer e
    C zeta(long long e) const {
        long long m = e % (2 * r);
        if (m < 0) m += 2 * r;
        return pow_table[m];
    }
    C brace1() const { return C(0, 2) * std::sin(2 * static_cast<Real>(kPi) / r); }
    Real quantum_int(long long n) const {
        long long m = n % r;
        if (m < 0) m += r;
        return qint[m];
    }
};

using RootData = RootDataT<double>;

inline RootData build_root_data(int r) { return RootData(r); }

// Kauffman bracket of e_n cabled along the 0-framed figure-eight knot:
// <e_n> = (-1)^{n+1}/{1} sum_{m=0}^{min(n, r-2-n)} t^{-(n+1)(m+1/2)} (t)_{n+1+m}/(t)_{n-m}.
template <class Real>
std::complex<Real> habiro_bracket(const RootDataT<Real>& rd, int n) {
    const int r = rd.r;
    if (n < 0 || n > r - 2) throw std::domain_error("habiro_bracket: need 0 <= n <= r-2");
    KahanSum<Real> acc;
    for (int m = 0; m <= std::min(n, r - 2 - n); ++m)
        acc.add(rd.zeta(-static_cast<long long>(n + 1) * (4 * m + 2)) * rd.qfact[n + 1 + m] /
                rd.qfact[n - m]);
    const Real sign = (n % 2 == 0) ? Real(-1) : Real(1);  // (-1)^{n+1}
    return sign * acc.s / rd.brace1();
}

template <class Real>
std::vector<std::complex<Real>> habiro_table(const RootDataT<Real>& rd) {
    std::vector<std::complex<Real>> h(rd.r - 1);
    for (int n = 0; n <= rd.r - 2; ++n) h[n] = habiro_bracket(rd, n);
    return h;
}

struct InvariantValue {
    cplx value;
    cplx log_value;  // principal log, kept alongside for magnitude extremes
    std::string formula;
    int r = 0;
    SurgerySlope slope;
};

namespace detail {

// kappa'_r = mu_r^{k+1} e^{sigma (3/r + (r+1)/4) pi i}
template <class Real>
std::complex<Real> kappa_prime(int r, int k, int sigma) {
    const Real pi = static_cast<Real>(kPi);
    const Real mu = std::sin(2 * pi / r) / std::sqrt(static_cast<Real>(r));
    return std::pow(mu, Real(k + 1)) *
           std::polar<Real>(1, pi * sigma * (Real(3) / r + Real(r + 1) / 4));
}

// odometer over {0..r-2}^k; returns false after the last configuration
inline bool advance(std::vector<int>& idx, int r) {
    for (std::size_t j = 0; j < idx.size(); ++j) {
        if (++idx[j] <= r - 2) return true;
        idx[j] = 0;
    }
    return false;
}

}  // namespace detail

// Direct state sum over an explicit framing chain (a may violate the a_i >= 2
// normalization; any chain evaluating to p/q presents the same manifold).
template <class Real>
std::complex<Real> rt_direct_chain(const std::vector<long long>& a, int sigma,
                                   const RootDataT<Real>& rd,
                                   double max_terms = 5e8) {
    const int r = rd.r;
    const int k = static_cast<int>(a.size());
    const double terms = std::pow(static_cast<double>(r - 1), k);
    if (terms > max_terms) throw BudgetExceeded(terms);
    const auto habiro = habiro_table(rd);
    KahanSum<Real> acc;
    std::vector<int> m(k, 0);
    do {
        long long e = 0, sgn = m[k - 1];
        for (int i = 0; i < k; ++i) {
            e += a[i] * m[i] * (m[i] + 2);
            sgn += a[i] * m[i];
        }
        std::complex<Real> term = rd.zeta(e) * rd.quantum_int(m[0] + 1);
        for (int i = 0; i + 1 < k; ++i)
            term *= rd.quantum_int(static_cast<long long>(m[i] + 1) * (m[i + 1] + 1));
        term *= habiro[m[k - 1]];
        if (sgn % 2 != 0) term = -term;
        acc.add(term);
    } while (detail::advance(m, r));
    return detail::kappa_prime<Real>(r, k, sigma) * acc.s;
}

template <class Real>
InvariantValue rt_direct_t(const SurgerySlope& slope, const RootDataT<Real>& rd,
                           double max_terms = 5e8, int r_cap = 0) {
    if (rd.r > (r_cap > 0 ? r_cap : default_r_cap(slope.q)))
        throw BudgetExceeded(static_cast<double>(rd.r));
    const CfExpansion cf = expand_negative_cf(slope.p, slope.q);
    const std::complex<Real> v =
        rt_direct_chain(cf.a, linking_signature(cf), rd, max_terms);
    InvariantValue out;
    out.value = cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
    out.log_value = std::log(out.value);
    out.formula = "direct";
    out.r = rd.r;
    out.slope = slope;
    return out;
}

// Symmetrized sum (the completed-square form behind the Poisson analysis).
template <class Real>
InvariantValue rt_symmetrized_t(const SurgerySlope& slope, const RootDataT<Real>& rd,
                                double max_terms = 5e8, int r_cap = 0) {
    const int r = rd.r;
    if (r > (r_cap > 0 ? r_cap : default_r_cap(slope.q)))
        throw BudgetExceeded(static_cast<double>(r));
    const CfExpansion cf = expand_negative_cf(slope.p, slope.q);
    const int k = cf.k();
    const int sigma = linking_signature(cf);
    const auto& a = cf.a;
    const double terms = std::pow(static_cast<double>(r - 1), k) * (r / 4.0 + 1.0);
    if (terms > max_terms) throw BudgetExceeded(terms);

    // inner sum over m depends on m_k only; precompute per m_k
    std::vector<std::complex<Real>> inner(r - 1);
    for (int mk = 0; mk <= r - 2; ++mk) {
        KahanSum<Real> s;
        for (int m = 0; m <= std::min(mk, r - 2 - mk); ++m)
            s.add(rd.zeta(-static_cast<long long>(mk + 1) * (4 * m + 2)) *
                  rd.qfact[mk + 1 + m] / rd.qfact[mk - m]);
        inner[mk] = s.s;
    }

    KahanSum<Real> acc;
    std::vector<int> m(k, 0);
    do {
        long long e = 0;
        for (int i = 0; i < k; ++i)
            e += (static_cast<long long>(r) + m[i] + 2) * a[i] * m[i];  // r a_i m_i + a_i m_i(m_i+2)
        for (int i = 0; i + 1 < k; ++i)
            e += 2LL * (m[i] + 1) * (m[i + 1] + 1);
        acc.add(rd.zeta(e) * rd.quantum_int(m[0] + 1) * inner[m[k - 1]]);
    } while (detail::advance(m, r));

    // prefactor -2^{k-1} / {1}^k kappa'_r
    std::complex<Real> pref = -std::pow(Real(2), Real(k - 1));
    const std::complex<Real> b1 = rd.brace1();
    for (int i = 0; i < k; ++i) pref /= b1;
    pref *= detail::kappa_prime<Real>(r, k, sigma);

    InvariantValue out;
    const std::complex<Real> v = pref * acc.s;
    out.value = cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
    out.log_value = std::log(out.value);
    out.formula = "symmetrized";
    out.r = rd.r;
    out.slope = slope;
    return out;
}

inline InvariantValue rt_direct(const SurgerySlope& slope, const RootData& rd,
                                double max_terms = 5e8, int r_cap = 0) {
    return rt_direct_t(slope, rd, max_terms, r_cap);
}

inline InvariantValue rt_symmetrized(const SurgerySlope& slope, const RootData& rd,
                                     double max_terms = 5e8, int r_cap = 0) {
    return rt_symmetrized_t(slope, rd, max_terms, r_cap);
}

// |RT_r|^2; equals TV_r up to an r-independent scalar.
inline double tv_proxy(const SurgerySlope& slope, const RootData& rd,
                       double max_terms = 5e8) {
    const cplx v = rt_symmetrized(slope, rd, max_terms).value;
    return std::norm(v);
}

// ---------------------------------------------------------------------------
// The half-integer lattice normalization:  RT_r(M) = kappa_r sum g_r.
//
// kappa_r = (1/2) i^{2-k} r^{-(k+1)/2}
//           exp[i pi (sigma(3/r+(r+1)/4) + sum a_i (3r/4 - 1/r) + (k-1)r/2 - r + 1 + k)]
// ---------------------------------------------------------------------------

inline cplx kappa_r(int r, const CfExpansion& cf, int sigma) {
    const int k = cf.k();
    long long sa = 0;
    for (long long ai : cf.a) sa += ai;
    const double theta = sigma * (3.0 / r + (r + 1) / 4.0) + sa * (3.0 * r / 4.0 - 1.0 / r) +
                         (k - 1) * r / 2.0 - r + 1 + k;
    cplx ipow = 1.0;
    for (int j = 0; j < ((2 - k) % 4 + 4) % 4; ++j) ipow *= cplx(0, 1);
    return 0.5 * ipow * std::pow(static_cast<double>(r), -(k + 1) / 2.0) *
           std::polar(1.0, kPi * theta);
}

// Half-integer lattice point for Prop-3.1-style sums.  Components are stored
// doubled: twice[i] = 2 m_i (odd integers), twice_m = 2 m.
struct LatticePoint {
    std::vector<long long> twice;  // 2 m_1 .. 2 m_k
    long long twice_m = 0;         // 2 m
};

// Exact factorial-form summand  g_r = sin(x_1) e^{i pi (m_1+m_k)} zeta^{quad}
//                                      e^{-x_k i} (t)_{r-1-m-m_k} / (t)_{m-m_k}
inline cplx g_r_factorial(const CfExpansion& cf, const RootData& rd, const LatticePoint& pt) {
    const int r = rd.r;
    const int k = cf.k();
    const double mk = pt.twice[k - 1] / 2.0, mm = pt.twice_m / 2.0;
    const long long n1 = r - 1 - (pt.twice_m + pt.twice[k - 1]) / 2;
    const long long n2 = (pt.twice_m - pt.twice[k - 1]) / 2;
    if (n1 < 0 || n1 > r - 1 || n2 < 0 || n2 > r - 1)
        throw std::domain_error("g_r_factorial: lattice point out of range");
    double quad = 0.0;
    for (int i = 0; i < k; ++i) quad += cf.a[i] * (pt.twice[i] / 2.0) * (pt.twice[i] / 2.0);
    for (int i = 0; i + 1 < k; ++i) quad += 2.0 * (pt.twice[i] / 2.0) * (pt.twice[i + 1] / 2.0);
    const double phase = kPi * ((pt.twice[0] + pt.twice[k - 1]) / 2.0 +
                                (quad - 4.0 * mk * mm - 2.0 * mk) / r);
    return std::sin(2.0 * kPi * (pt.twice[0] / 2.0) / r) * std::polar(1.0, phase) *
           rd.qfact[n1] / rd.qfact[n2];
}

// g_r through the quantum dilogarithm (Prop-3.1 form), with the three-case
// epsilon bookkeeping.  Matches g_r_factorial via the factorial identity.
inline cplx g_r_sample(const CfExpansion& cf, const RootData& rd, const QuantumDilog& phi,
                       const LatticePoint& pt) {
    const int r = rd.r;
    const int k = cf.k();
    const long long smk = pt.twice_m + pt.twice[k - 1];  // 2(m + m_k)
    const long long dmk = pt.twice_m - pt.twice[k - 1];  // 2(m - m_k)
    const double y = kPi * pt.twice_m / r;
    const double xk = kPi * pt.twice[k - 1] / r;
    double eps_factor;
    cplx phi_part;
    if (0 < smk && smk < r && 0 < dmk && dmk < r) {
        eps_factor = 2.0;  // case (1): 0 < y +- x_k < pi
        phi_part = -phi.value(kPi - y - xk - kPi / r) + phi.value(y - xk + kPi / r);
    } else if (0 < smk && smk < r && r < dmk && dmk < 2 * r) {
        eps_factor = 1.0;  // case (2): pi < y - x_k < 2 pi
        phi_part = -phi.value(kPi - y - xk - kPi / r) + phi.value(y - xk - kPi + kPi / r);
    } else if (r < smk && smk < 2 * r && 0 < dmk && dmk < r) {
        eps_factor = 1.0;  // case (3): pi < y + x_k < 2 pi
        phi_part = -phi.value(2.0 * kPi - y - xk - kPi / r) + phi.value(y - xk + kPi / r);
    } else {
        throw std::domain_error("g_r_sample: (x_k, y) not interior to any case");
    }
    std::vector<double> x(k);
    for (int i = 0; i < k; ++i) x[i] = kPi * pt.twice[i] / r;
    cplx v = 0.0;
    for (int i = 0; i < k; ++i) v += -static_cast<double>(cf.a[i]) * x[i] * x[i];
    for (int i = 0; i + 1 < k; ++i) v += -2.0 * x[i] * x[i + 1];
    v += -2.0 * kPi * x[0] - 2.0 * kPi * xk + 4.0 * xk * y;
    v += phi_part;
    const cplx riv = static_cast<double>(r) / (4.0 * kPi * cplx(0, 1)) * v;
    return std::sin(x[0]) * eps_factor * std::exp(-cplx(0, 1) * xk + riv);
}

// Prop-3.1 window on 2(m +- m_k) used by the tail bound.
inline bool in_prop41_window(long long twice_sum, int r, double delta) {
    const double v = twice_sum / 2.0;
    const double d = delta * r / (2.0 * kPi);
    return (v > d && v < r / 4.0 - d) || (v > r / 2.0 + d && v < 3.0 * r / 4.0 - d);
}

// Exact lattice sum of g_r (factorial form).  `window` restricts to points
// with both 2(m+m_k) and 2(m-m_k) inside the Prop-4.1 window of width delta;
// pass delta < 0 for the unrestricted sum.  Multiplied by kappa_r this
// reproduces RT_r(M).
inline cplx rt_lattice_sum(const SurgerySlope& slope, const RootData& rd,
                           double window_delta = -1.0, double max_terms = 5e8) {
    const int r = rd.r;
    const CfExpansion cf = expand_negative_cf(slope.p, slope.q);
    const int k = cf.k();
    const double terms = std::pow(static_cast<double>(r - 1), k) * (r / 4.0 + 1.0);
    if (terms > max_terms) throw BudgetExceeded(terms);
    KahanSum<double> acc;
    LatticePoint pt;
    pt.twice.assign(k, -(r - 2));
    while (true) {
        for (pt.twice_m = std::abs(pt.twice[k - 1]); pt.twice_m <= r - 2; pt.twice_m += 2) {
            if (window_delta >= 0.0 &&
                !(in_prop41_window(pt.twice_m + pt.twice[k - 1], r, window_delta) &&
                  in_prop41_window(pt.twice_m - pt.twice[k - 1], r, window_delta)))
                continue;
            acc.add(g_r_factorial(cf, rd, pt));
        }
        int j = 0;
        for (; j < k; ++j) {
            pt.twice[j] += 2;
            if (pt.twice[j] <= r - 2) break;
            pt.twice[j] = -(r - 2);
        }
        if (j == k) break;
    }
    return acc.s;
}

}  // namespace rtvol
