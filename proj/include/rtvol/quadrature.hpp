#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace rtvol {

using cplx = std::complex<double>;

// Gauss-Legendre rule on [-1,1]. Nodes by Newton iteration on P_n.
struct GaussLegendre {
    std::vector<double> x, w;

    explicit GaussLegendre(int n) {
        if (n < 1) throw std::invalid_argument("GaussLegendre: n < 1");
        x.resize(n);
        w.resize(n);
        const int m = (n + 1) / 2;
        for (int i = 0; i < m; ++i) {
            double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p1 = 1.0, p2 = 0.0;
                for (int j = 0; j < n; ++j) {
                    double p3 = p2;
                    p2 = p1;
                    p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
                }
                pp = n * (z * p1 - p2) / (z * z - 1.0);
                double dz = p1 / pp;
                z -= dz;
                if (std::abs(dz) < 1e-15) break;
            }
            x[i] = -z;
            x[n - 1 - i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
            w[n - 1 - i] = w[i];
        }
    }
};

inline const GaussLegendre& gauss_legendre(int n) {
    static std::map<int, GaussLegendre> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, GaussLegendre(n)).first;
    return it->second;
}

template <class F>
cplx gl_integrate(const F& f, double a, double b, int n) {
    const auto& g = gauss_legendre(n);
    const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
    cplx acc = 0.0;
    for (int i = 0; i < n; ++i) acc += g.w[i] * f(mid + hw * g.x[i]);
    return hw * acc;
}

// Adaptive bisection with an embedded GL15/GL31 error estimate.
// abs_floor guards against endless refinement of negligible panels.
template <class F>
cplx adaptive_integrate(const F& f, double a, double b, double rel_tol,
                        double abs_floor = 0.0, int max_depth = 28) {
    struct Rec {
        const F& f;
        double rel_tol, abs_floor;
        int max_depth;
        cplx run(double a, double b, int depth) const {
            cplx lo = gl_integrate(f, a, b, 15);
            cplx hi = gl_integrate(f, a, b, 31);
            double err = std::abs(hi - lo);
            if (err <= rel_tol * std::abs(hi) + abs_floor || depth >= max_depth)
                return hi;
            double m = 0.5 * (a + b);
            return run(a, m, depth + 1) + run(m, b, depth + 1);
        }
    };
    return Rec{f, rel_tol, abs_floor, max_depth}.run(a, b, 0);
}

}  // namespace rtvol
