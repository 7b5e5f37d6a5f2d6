/**
 * @file controllers.hpp
 * @brief Controller suite: PID baseline, first-order sliding mode with
 *        optional boundary layer, second-order sliding mode (relay on the
 *        control derivative), and standard-form twisting / super-twisting.
 *
 * Controllers are explicit-state step functions: (config, state, inputs) ->
 * (output, state'). Nothing here touches the plant; wiring lives in sim.hpp.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace smcsim {

/// Relay sign with sign(0) = 0, so no energy is injected exactly on the surface.
inline double sign(double x) {
    if (x > 0.0) return 1.0;
    if (x < 0.0) return -1.0;
    return 0.0;
}

/// Boundary-layer saturation: x/layer clamped to [-1, 1].
inline double sat(double x, double layer) {
    if (layer <= 0.0) throw std::invalid_argument("sat: layer must be > 0");
    return std::clamp(x / layer, -1.0, 1.0);
}

// ---------------------------------------------------------------------------
// PID baseline
// ---------------------------------------------------------------------------

struct PidConfig {
    double kp = 0.0;
    double ki = 0.0;
    double kd = 0.0;
    double integral_limit = 1e6;  // anti-windup clamp on the accumulator

    void validate() const {
        if (!(std::isfinite(kp) && std::isfinite(ki) && std::isfinite(kd))) {
            throw std::invalid_argument("PidConfig: gains must be finite");
        }
        if (kp < 0.0 || ki < 0.0 || kd < 0.0) {
            throw std::invalid_argument("PidConfig: gains must be >= 0");
        }
        if (integral_limit <= 0.0) {
            throw std::invalid_argument("PidConfig: integral_limit must be > 0");
        }
    }
};

struct PidState {
    double integral = 0.0;
    double prev_error = 0.0;
    bool has_prev = false;
};

struct PidResult {
    double u;
    PidState state;
};

inline PidResult pid_step(double e, const PidState& state, double dt, const PidConfig& cfg) {
    if (dt <= 0.0) throw std::invalid_argument("pid_step: dt must be positive");
    PidState next = state;
    next.integral = std::clamp(state.integral + e * dt, -cfg.integral_limit, cfg.integral_limit);
    const double derivative = state.has_prev ? (e - state.prev_error) / dt : 0.0;
    next.prev_error = e;
    next.has_prev = true;
    return PidResult{cfg.kp * e + cfg.ki * next.integral + cfg.kd * derivative, next};
}

// ---------------------------------------------------------------------------
// First-order sliding mode
// ---------------------------------------------------------------------------

struct Smc1Config {
    double k1 = 1.0;             // surface gain on e
    double k2 = 0.5;             // surface gain on e'
    double k = 1.0;              // relay gain
    double eta = 0.5;            // reaching rate
    double boundary_layer = 0.0; // 0 = pure relay

    void validate() const {
        if (k1 <= 0.0 || k2 <= 0.0) throw std::invalid_argument("Smc1Config: k1, k2 must be > 0");
        if (k <= 0.0) throw std::invalid_argument("Smc1Config: k must be > 0");
        if (eta <= 0.0) throw std::invalid_argument("Smc1Config: eta must be > 0");
        if (boundary_layer < 0.0) {
            throw std::invalid_argument("Smc1Config: boundary_layer must be >= 0");
        }
    }
};

/// s = k1 e + k2 e'
inline double surface1(double e, double e_dot, const Smc1Config& cfg) {
    return cfg.k1 * e + cfg.k2 * e_dot;
}

/// u = k sign(s), or k sat(s, layer) when a boundary layer is configured.
inline double smc1_control(double s, const Smc1Config& cfg) {
    if (cfg.boundary_layer > 0.0) return cfg.k * sat(s, cfg.boundary_layer);
    return cfg.k * sign(s);
}

/// Upper bound on the time to reach the surface implied by the reaching
/// condition s s' <= -eta |s|.
inline double reaching_time_bound(double s0, double eta) {
    if (eta <= 0.0) throw std::invalid_argument("reaching_time_bound: eta must be > 0");
    return std::abs(s0) / eta;
}

// ---------------------------------------------------------------------------
// Second-order sliding mode: relay on the control derivative
// ---------------------------------------------------------------------------

struct Smc2Config {
    double beta1 = 1.0;  // surface gain on e
    double beta2 = 2.0;  // surface gain on e'
    double beta3 = 1.0;  // surface gain on e''
    double k = 1.0;      // relay gain on u'
    double u_init = 0.0;
    double u_limit = 10.0;

    void validate() const {
        if (beta1 <= 0.0 || beta2 <= 0.0 || beta3 <= 0.0) {
            throw std::invalid_argument("Smc2Config: betas must be > 0");
        }
        if (k <= 0.0) throw std::invalid_argument("Smc2Config: k must be > 0");
        if (u_limit <= 0.0) throw std::invalid_argument("Smc2Config: u_limit must be > 0");
        if (std::abs(u_init) > u_limit) {
            throw std::invalid_argument("Smc2Config: |u_init| must be <= u_limit");
        }
    }
};

/// sigma = beta1 e + beta2 e' + beta3 e''
inline double surface2(double e, double e_dot, double e_ddot, const Smc2Config& cfg) {
    return cfg.beta1 * e + cfg.beta2 * e_dot + cfg.beta3 * e_ddot;
}

/// Integrated relay: u = clamp(u_prev - k sign(sigma) dt, +-u_limit). The
/// applied control is continuous (piecewise linear in time), which is the
/// chattering-removal mechanism.
inline double smc2_step(double sigma, double u_prev, double dt, const Smc2Config& cfg) {
    if (dt <= 0.0) throw std::invalid_argument("smc2_step: dt must be positive");
    return std::clamp(u_prev - cfg.k * sign(sigma) * dt, -cfg.u_limit, cfg.u_limit);
}

// ---------------------------------------------------------------------------
// Standard-form twisting / super-twisting
// ---------------------------------------------------------------------------

struct SuperTwistConfig {
    double alpha = 1.0;   // gain on |s|^(1/2) sign(s)
    double gamma = 1.0;   // gain on the integrated sign term
    double u_limit = 10.0;
    // Surface gains; the algorithm itself acts on s = k1 e + k2 e'.
    double k1 = 1.0;
    double k2 = 0.5;

    void validate() const {
        if (alpha <= 0.0 || gamma <= 0.0) {
            throw std::invalid_argument("SuperTwistConfig: alpha, gamma must be > 0");
        }
        if (u_limit <= 0.0) throw std::invalid_argument("SuperTwistConfig: u_limit must be > 0");
        if (k1 <= 0.0 || k2 <= 0.0) {
            throw std::invalid_argument("SuperTwistConfig: k1, k2 must be > 0");
        }
    }
};

struct SuperTwistResult {
    double u;
    double state;  // updated integrator value
};

/// Super-twisting: u = -alpha |s|^(1/2) sign(s) + v, v' = -gamma sign(s).
inline SuperTwistResult super_twisting_step(double s, double state, double dt,
                                            const SuperTwistConfig& cfg) {
    if (dt <= 0.0) throw std::invalid_argument("super_twisting_step: dt must be positive");
    const double next = state - cfg.gamma * sign(s) * dt;
    const double u =
        std::clamp(-cfg.alpha * std::sqrt(std::abs(s)) * sign(s) + next, -cfg.u_limit, cfg.u_limit);
    return SuperTwistResult{u, next};
}

struct TwistingConfig {
    double r1 = 5.0;  // gain when s s' > 0
    double r2 = 2.0;  // gain when s s' <= 0
    // Surface gains, as for SuperTwistConfig.
    double k1 = 1.0;
    double k2 = 0.5;

    void validate() const {
        if (!(r1 > r2 && r2 > 0.0)) {
            throw std::invalid_argument("TwistingConfig: must have r1 > r2 > 0");
        }
        if (k1 <= 0.0 || k2 <= 0.0) {
            throw std::invalid_argument("TwistingConfig: k1, k2 must be > 0");
        }
    }
};

/// Twisting: -r1 sign(s) while moving away from the surface (s s' > 0),
/// -r2 sign(s) otherwise.
inline double twisting_step(double s, double s_dot, const TwistingConfig& cfg) {
    return (s * s_dot > 0.0) ? -cfg.r1 * sign(s) : -cfg.r2 * sign(s);
}

}  // namespace smcsim
