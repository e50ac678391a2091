#pragma once

// Surgery-presentation arithmetic for p/q fillings of the figure-eight knot:
// negative continued fractions, the Bezout dual pair, and the signature of
// the chain-link linking matrix. Everything here is exact integer/rational.

#include "rational.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace rtvol {

using rat = Rational;

// A p/q surgery slope, normalized so q >= 1 and gcd(|p|,q) = 1.
struct SurgerySlope {
    long long p = 0;
    long long q = 1;

    SurgerySlope() = default;
    SurgerySlope(long long p_, long long q_) : p(p_), q(q_) {
        if (q < 0) { p = -p; q = -q; }  // slopes are projective
        if (q == 0) throw std::invalid_argument("SurgerySlope: q = 0");
        if (std::gcd(std::abs(p), q) != 1)
            throw std::invalid_argument("SurgerySlope: gcd(|p|,q) != 1");
    }

    // The figure-eight knot's exceptional (non-hyperbolic) fillings:
    // 0, +-1, +-2, +-3, +-4 (integral), all others are hyperbolic.
    bool hyperbolic() const { return !(q == 1 && std::abs(p) <= 4); }
};

// Negative continued fraction p/q = a_k - 1/(a_{k-1} - ... - 1/a_1),
// a_i >= 2 for i < k.  b_i = a_i - 1/b_{i-1} are the partial tails,
// c_i = b_1...b_i the partial products (integers, c_{k-1} = q).
struct CfExpansion {
    std::vector<long long> a;  // a_1..a_k (bottom-up)
    std::vector<rat> b;        // b_1..b_k, b_k = p/q
    std::vector<long long> c;  // c_0..c_{k-1}, c_0 = 1
    int k() const { return static_cast<int>(a.size()); }
};

// Bezout pair with p*p' + q*q' = 1 and -q < p' <= 0.
struct DualPair {
    long long p_prime = 0;
    long long q_prime = 1;
};

inline long long ceil_div(long long n, long long d) {
    // ceil(n/d) for d > 0
    return n / d + ((n % d != 0 && n > 0) ? 1 : 0);
}

inline CfExpansion expand_negative_cf(long long p, long long q) {
    SurgerySlope s(p, q);
    p = s.p; q = s.q;
    std::vector<long long> top;  // collected from a_k downwards
    long long num = p, den = q;
    while (true) {
        long long c = ceil_div(num, den);
        top.push_back(c);
        long long rem_num = c * den - num;  // c - num/den = rem_num/den in [0,1)
        if (rem_num == 0) break;
        num = den;  // 1/(c - x)
        den = rem_num;
    }
    CfExpansion cf;
    cf.a.assign(top.rbegin(), top.rend());
    cf.b.reserve(cf.a.size());
    cf.c.push_back(1);
    for (std::size_t i = 0; i < cf.a.size(); ++i) {
        rat bi(cf.a[i], 1);
        if (i > 0) bi -= rat(1) / cf.b[i - 1];
        cf.b.push_back(bi);
        if (i + 1 < cf.a.size()) {
            rat ci = cf.c.back() * bi;
            if (ci.denominator() != 1)
                throw std::logic_error("expand_negative_cf: c_i not integral");
            cf.c.push_back(ci.numerator());
        }
    }
    return cf;
}

inline rat evaluate_cf(const CfExpansion& cf) {
    if (cf.a.empty()) throw std::invalid_argument("evaluate_cf: empty expansion");
    rat acc(cf.a.front(), 1);
    for (int i = 1; i < cf.k(); ++i) {
        if (acc.num == 0) throw std::domain_error("evaluate_cf: zero tail");
        acc = rat(cf.a[i], 1) - rat(1) / acc;
    }
    return acc;
}

inline DualPair dual_pair(long long p, long long q) {
    SurgerySlope s(p, q);
    p = s.p; q = s.q;
    // extended Euclid, then shift p' into (-q, 0]
    long long r0 = p, r1 = q, s0 = 1, s1 = 0;
    while (r1 != 0) {
        long long qt = r0 / r1;
        long long r2 = r0 - qt * r1, s2 = s0 - qt * s1;
        r0 = r1; r1 = r2; s0 = s1; s1 = s2;
    }
    // r0 = +-1 = p*s0 + q*t0
    long long pp = (r0 > 0) ? s0 : -s0;
    pp %= q;
    if (pp > 0) pp -= q;
    DualPair d;
    d.p_prime = pp;
    d.q_prime = (1 - p * pp) / q;
    return d;
}

// Lemma-style exact sum  sum_{j=1}^{k-1} 1/(c_{j-1} c_j)  (equals -p'/q).
inline rat cf_sum_identity(const CfExpansion& cf) {
    rat acc(0);
    for (int j = 1; j < cf.k(); ++j)
        acc += rat(1, cf.c[j - 1] * cf.c[j]);
    return acc;
}

namespace detail {

// Count of eigenvalues of tridiag(a; offdiag 1) strictly below lambda,
// by the Sturm pivot recurrence d_i = (a_i - lambda) - 1/d_{i-1}.
inline int tridiag_count_below(const std::vector<long long>& a, double lambda) {
    int count = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = (static_cast<double>(a[i]) - lambda) - (i ? 1.0 / d : 0.0);
        if (d == 0.0) d = -1e-300;  // pivot on the negative side
        if (d < 0.0) ++count;
    }
    return count;
}

}  // namespace detail

// Signature of the symmetric tridiagonal linking matrix diag(a_1..a_k),
// off-diagonal 1.  Exact leading-principal-minor sign count when no minor
// vanishes; otherwise a Sturm eigenvalue count at +-tol.
inline int linking_signature(const std::vector<long long>& a, double tol = 1e-12) {
    if (a.empty()) throw std::invalid_argument("linking_signature: empty framing list");
    const int k = static_cast<int>(a.size());
    std::vector<long long> minors;
    minors.reserve(k + 1);
    minors.push_back(1);
    long long d0 = 1, d1 = a[0];
    minors.push_back(d1);
    bool exact_ok = (d1 != 0);
    for (int i = 1; i < k && exact_ok; ++i) {
        long long d2 = a[i] * d1 - d0;
        d0 = d1; d1 = d2;
        minors.push_back(d1);
        exact_ok = (d1 != 0);
    }
    if (exact_ok) {
        int changes = 0;
        for (int i = 0; i + 1 <= k; ++i)
            if ((minors[i] > 0) != (minors[i + 1] > 0)) ++changes;
        return k - 2 * changes;
    }
    // zero minor: count eigenvalues outside [-tol, tol]
    int neg = detail::tridiag_count_below(a, -tol);
    int below_pos = detail::tridiag_count_below(a, tol);
    int pos = k - below_pos;
    return pos - neg;
}

inline int linking_signature(const CfExpansion& cf, double tol = 1e-12) {
    return linking_signature(cf.a, tol);
}

}  // namespace rtvol
