/**
 * @file lti.hpp
 * @brief Rational transfer functions, controllable canonical realizations and
 *        fixed-step RK4 integration of continuous-time linear systems.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "smcsim/linalg.hpp"

namespace smcsim {

/// Rational SISO transfer function. Coefficients are stored in descending
/// powers of the Laplace variable; num = [b0 .. bm] means b0*s^m + ... + bm.
struct TransferFunction {
    Vec num;
    Vec den;

    TransferFunction(Vec numerator, Vec denominator)
        : num(std::move(numerator)), den(std::move(denominator)) {
        validate();
    }

    std::size_t order() const { return den.size() - 1; }

    void validate() const {
        if (num.empty() || den.empty()) {
            throw std::invalid_argument("TransferFunction: empty coefficient list");
        }
        if (den.front() == 0.0) {
            throw std::invalid_argument("TransferFunction: leading denominator coefficient is zero");
        }
        if (effective_degree(num) > den.size() - 1) {
            throw std::invalid_argument("TransferFunction: improper (deg num > deg den)");
        }
    }

    static std::size_t effective_degree(const Vec& coeffs) {
        std::size_t lead = 0;
        while (lead + 1 < coeffs.size() && coeffs[lead] == 0.0) ++lead;
        return coeffs.size() - 1 - lead;
    }
};

/// Continuous-time LTI state-space model: x' = A x + B u, y = C x + D u.
struct StateSpaceModel {
    Mat A;  // n x n
    Mat B;  // n x m
    Mat C;  // p x n
    Mat D;  // p x m

    std::size_t n() const { return A.rows(); }
    std::size_t m() const { return B.cols(); }
    std::size_t p() const { return C.rows(); }

    void validate() const {
        if (A.rows() != A.cols()) throw std::invalid_argument("StateSpaceModel: A not square");
        if (B.rows() != A.rows()) throw std::invalid_argument("StateSpaceModel: B row mismatch");
        if (C.cols() != A.rows()) throw std::invalid_argument("StateSpaceModel: C column mismatch");
        if (D.rows() != C.rows() || D.cols() != B.cols()) {
            throw std::invalid_argument("StateSpaceModel: D dimension mismatch");
        }
    }
};

namespace detail {

/// Expands prod_i (s - roots[i]) into descending-power coefficients.
inline Vec expand_roots(const Vec& roots) {
    Vec poly{1.0};
    for (double r : roots) {
        Vec next(poly.size() + 1, 0.0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i];
            next[i + 1] -= poly[i] * r;
        }
        poly = std::move(next);
    }
    return poly;
}

}  // namespace detail

/// Builds a transfer function from gain/zero/pole data:
///   gain * prod(s - z_i) / prod(s - p_i), denominator monic.
inline TransferFunction tf_from_factored(double gain, const Vec& zeros, const Vec& poles) {
    if (zeros.size() > poles.size()) {
        throw std::invalid_argument("tf_from_factored: more zeros than poles (improper)");
    }
    Vec num = detail::expand_roots(zeros);
    for (double& c : num) c *= gain;
    return TransferFunction(std::move(num), detail::expand_roots(poles));
}

/// Realizes a proper transfer function in controllable canonical (companion)
/// form. For a strictly proper input D is exactly zero.
inline StateSpaceModel tf_to_ss(const TransferFunction& tf) {
    tf.validate();

    const std::size_t n = tf.order();

    // Monic denominator coefficients a1..an and numerator padded to n+1.
    Vec a(tf.den);
    for (double& c : a) c /= tf.den[0];
    Vec b(n + 1, 0.0);
    for (std::size_t i = 0; i < tf.num.size(); ++i) {
        b[n + 1 - tf.num.size() + i] = tf.num[i] / tf.den[0];
    }

    StateSpaceModel ss;
    ss.A = Mat(n, n);
    ss.B = Mat(n, 1);
    ss.C = Mat(1, n);
    ss.D = Mat(1, 1);

    for (std::size_t i = 0; i + 1 < n; ++i) ss.A(i, i + 1) = 1.0;
    for (std::size_t j = 0; j < n; ++j) ss.A(n - 1, j) = -a[n - j];
    if (n > 0) ss.B(n - 1, 0) = 1.0;
    for (std::size_t j = 0; j < n; ++j) ss.C(0, j) = b[n - j] - b[0] * a[n - j];
    ss.D(0, 0) = b[0];

    return ss;
}

/// Evaluates num(s)/den(s) at a complex point. Evaluating at a pole is an error.
inline std::complex<double> eval_tf(const TransferFunction& tf, std::complex<double> s) {
    auto horner = [&s](const Vec& coeffs) {
        std::complex<double> acc = 0.0;
        for (double c : coeffs) acc = acc * s + c;
        return acc;
    };
    const std::complex<double> den = horner(tf.den);
    if (std::abs(den) == 0.0) {
        throw std::domain_error("eval_tf: evaluation at a pole");
    }
    return horner(tf.num) / den;
}

/// One classical 4th-order Runge-Kutta step of
///   x' = A x + B u + extra
/// with u and extra held constant over the step (zero-order hold).
/// `extra` carries any additive state-derivative term (disturbance,
/// observer injection); pass an empty vector for none.
inline Vec rk4_step(const StateSpaceModel& model, const Vec& x, const Vec& u,
                    const Vec& extra, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("rk4_step: dt must be positive");
    if (x.size() != model.n() || u.size() != model.m()) {
        throw std::invalid_argument("rk4_step: dimension mismatch");
    }
    if (!extra.empty() && extra.size() != model.n()) {
        throw std::invalid_argument("rk4_step: extra dimension mismatch");
    }

    Vec bu = matvec(model.B, u);
    if (!extra.empty()) {
        for (std::size_t i = 0; i < bu.size(); ++i) bu[i] += extra[i];
    }
    auto f = [&](const Vec& state) {
        Vec dx = matvec(model.A, state);
        for (std::size_t i = 0; i < dx.size(); ++i) dx[i] += bu[i];
        return dx;
    };

    const Vec k1 = f(x);
    const Vec k2 = f(axpy(0.5 * dt, k1, x));
    const Vec k3 = f(axpy(0.5 * dt, k2, x));
    const Vec k4 = f(axpy(dt, k3, x));

    Vec out(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

/// y = C x + D u
inline Vec output(const StateSpaceModel& model, const Vec& x, const Vec& u) {
    Vec y = matvec(model.C, x);
    const Vec du = matvec(model.D, u);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += du[i];
    return y;
}

}  // namespace smcsim
