// Test-only oracles, kept independent of the library code paths they check:
// polynomial expansion by evaluation + Lagrange interpolation, complex
// frequency response through a long-double dense solve, analytic step
// responses, bisection root finding and finite differences.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "smcsim/lti.hpp"

namespace oracles {

using cplx = std::complex<long double>;

// Evaluates gain * prod (x - roots[i]) directly from the factors.
inline long double eval_factored(long double gain, const std::vector<double>& roots, long double x) {
    long double acc = gain;
    for (double r : roots) acc *= (x - static_cast<long double>(r));
    return acc;
}

// Recovers descending-power coefficients of gain * prod (x - roots[i]) by
// sampling the factored form at distinct integer points and running Lagrange
// interpolation; never multiplies polynomials, so it cannot share a bug with
// convolution-based expansion.
inline std::vector<double> expand_poly_oracle(double gain, const std::vector<double>& roots) {
    const std::size_t n = roots.size();
    const std::size_t m = n + 1;  // number of coefficients
    std::vector<long double> xs(m), ys(m);
    for (std::size_t i = 0; i < m; ++i) {
        xs[i] = static_cast<long double>(i) - static_cast<long double>(n) / 2.0L;
        ys[i] = eval_factored(gain, roots, xs[i]);
    }
    // Accumulate coefficients of sum_i ys[i] * prod_{j!=i} (x - xs[j])/(xs[i] - xs[j]).
    std::vector<long double> coeffs(m, 0.0L);  // ascending powers
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<long double> basis{1.0L};  // ascending
        long double denom = 1.0L;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            denom *= (xs[i] - xs[j]);
            std::vector<long double> next(basis.size() + 1, 0.0L);
            for (std::size_t k = 0; k < basis.size(); ++k) {
                next[k] += basis[k] * (-xs[j]);
                next[k + 1] += basis[k];
            }
            basis = std::move(next);
        }
        for (std::size_t k = 0; k < m; ++k) coeffs[k] += ys[i] / denom * basis[k];
    }
    std::vector<double> out(m);
    for (std::size_t k = 0; k < m; ++k) out[k] = static_cast<double>(coeffs[m - 1 - k]);
    return out;
}

// Dense complex solve with partial pivoting in long double.
inline std::vector<cplx> solve_dense(std::vector<std::vector<cplx>> a, std::vector<cplx> b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row) {
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        }
        if (std::abs(a[pivot][col]) == 0.0L) throw std::runtime_error("solve_dense: singular");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t row = col + 1; row < n; ++row) {
            const cplx f = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
            b[row] -= f * b[col];
        }
    }
    std::vector<cplx> x(n);
    for (std::size_t i = n; i-- > 0;) {
        cplx acc = b[i];
        for (std::size_t k = i + 1; k < n; ++k) acc -= a[i][k] * x[k];
        x[i] = acc / a[i][i];
    }
    return x;
}

// Frequency response of (A, B, C, D) at s: C (sI - A)^{-1} B + D.
inline std::complex<double> ss_freq_response(const smcsim::StateSpaceModel& ss,
                                             std::complex<double> s) {
    const std::size_t n = ss.n();
    if (n == 0) return {ss.D(0, 0), 0.0};
    std::vector<std::vector<cplx>> m(n, std::vector<cplx>(n));
    std::vector<cplx> b(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m[i][j] = (i == j ? cplx(s.real(), s.imag()) : cplx(0.0L)) - cplx(ss.A(i, j));
        }
        b[i] = cplx(ss.B(i, 0));
    }
    const std::vector<cplx> x = solve_dense(std::move(m), std::move(b));
    cplx acc = cplx(ss.D(0, 0));
    for (std::size_t j = 0; j < n; ++j) acc += cplx(ss.C(0, j)) * x[j];
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

// Analytic unit-step response of 7660 / (s (s + 40)) via partial fractions.
inline double h1_step_response(double t) {
    return 7660.0 / 40.0 * t - 7660.0 / 1600.0 * (1.0 - std::exp(-40.0 * t));
}

// Bisection on a sign change; the polynomial is evaluated by Horner.
inline double bisect_poly_root(const std::vector<double>& coeffs, double lo, double hi) {
    auto eval = [&coeffs](double x) {
        double acc = 0.0;
        for (double c : coeffs) acc = acc * x + c;
        return acc;
    };
    double flo = eval(lo);
    if (flo == 0.0) return lo;
    if (eval(hi) == 0.0) return hi;
    if (flo * eval(hi) > 0.0) throw std::runtime_error("bisect_poly_root: no sign change");
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fm = eval(mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

struct RandomTf {
    double gain;
    std::vector<double> zeros;
    std::vector<double> poles;
};

// Deterministic corpus of proper transfer functions with poles in
// [-50, -0.1] plus an optional integrator pole, as used by the realization
// fidelity checks.
inline std::vector<RandomTf> random_tf_corpus(std::size_t count, std::uint64_t seed = 12345) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pole_dist(-50.0, -0.1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<RandomTf> out;
    while (out.size() < count) {
        RandomTf tf;
        const std::size_t n = 1 + static_cast<std::size_t>(unit(rng) * 5.0);  // 1..5
        const bool integrator = unit(rng) < 0.35;
        std::vector<double> poles;
        if (integrator) poles.push_back(0.0);
        while (poles.size() < n) {
            const double cand = pole_dist(rng);
            bool ok = true;
            for (double p : poles) {
                if (std::abs(p - cand) < 0.25) ok = false;
            }
            if (ok) poles.push_back(cand);
        }
        const std::size_t nz = static_cast<std::size_t>(unit(rng) * static_cast<double>(n));
        std::vector<double> zeros;
        while (zeros.size() < nz) {
            const double cand = pole_dist(rng);
            bool ok = true;
            for (double z : zeros) {
                if (std::abs(z - cand) < 0.25) ok = false;
            }
            for (double p : poles) {
                if (std::abs(p - cand) < 0.25) ok = false;  // keep it minimal
            }
            if (ok) zeros.push_back(cand);
        }
        tf.gain = std::pow(10.0, -1.0 + 4.0 * unit(rng));
        tf.zeros = zeros;
        tf.poles = poles;
        out.push_back(tf);
    }
    return out;
}

// Central finite difference of a sampled series.
inline std::vector<double> central_diff(const std::vector<double>& series, double dt) {
    std::vector<double> out(series.size(), 0.0);
    for (std::size_t i = 1; i + 1 < series.size(); ++i) {
        out[i] = (series[i + 1] - series[i - 1]) / (2.0 * dt);
    }
    return out;
}

}  // namespace oracles
