/**
 * @file observer.hpp
 * @brief Sliding-mode state observer: a nominal model copy driven by a
 *        sign-of-output-error injection, used to estimate the unmeasured
 *        velocity state.
 */

#pragma once

#include <stdexcept>

#include "smcsim/controllers.hpp"
#include "smcsim/lti.hpp"

namespace smcsim {

/// Sign-injection state estimator:
///   xhat' = A xhat + B u + lambda * sign(y_meas - C xhat)
/// lambda is a per-state injection gain vector. The estimated velocity is
/// read out of xhat through the velocity_readout row; for a companion-form
/// channel that row is C A, i.e. the model-based derivative of the output.
struct SmObserver {
    StateSpaceModel model;
    Vec lambda_gain;
    Vec x_hat;
    Vec velocity_readout;

    void validate() const {
        model.validate();
        const std::size_t n = model.n();
        if (lambda_gain.size() != n || x_hat.size() != n || velocity_readout.size() != n) {
            throw std::invalid_argument("SmObserver: dimension mismatch");
        }
        bool any_positive = false;
        for (double l : lambda_gain) {
            if (l < 0.0) throw std::invalid_argument("SmObserver: lambda_gain entries must be >= 0");
            if (l > 0.0) any_positive = true;
        }
        if (!any_positive) {
            throw std::invalid_argument("SmObserver: lambda_gain needs at least one positive entry");
        }
    }
};

/// Builds an observer for a channel model with the canonical velocity
/// readout row (C A). The estimate starts at x_hat0 (zeros by default).
inline SmObserver make_observer(const StateSpaceModel& model, Vec lambda_gain, Vec x_hat0 = {}) {
    SmObserver obs;
    obs.model = model;
    obs.lambda_gain = std::move(lambda_gain);
    obs.x_hat = x_hat0.empty() ? Vec(model.n(), 0.0) : std::move(x_hat0);
    const Mat ca = model.C * model.A;
    obs.velocity_readout.resize(model.n());
    for (std::size_t j = 0; j < model.n(); ++j) obs.velocity_readout[j] = ca(0, j);
    return obs;
}

/// Advances the estimate one RK4 step with the sign injection held constant
/// over the step.
inline SmObserver observer_step(const SmObserver& obs, double u, double y_meas, double dt) {
    if (obs.x_hat.size() != obs.model.n()) {
        throw std::invalid_argument("observer_step: dimension mismatch");
    }
    const Vec y_hat = matvec(obs.model.C, obs.x_hat);
    const double injection_sign = sign(y_meas - y_hat[0]);
    Vec extra(obs.model.n());
    for (std::size_t i = 0; i < extra.size(); ++i) extra[i] = obs.lambda_gain[i] * injection_sign;

    SmObserver next = obs;
    next.x_hat = rk4_step(obs.model, obs.x_hat, Vec{u}, extra, dt);
    return next;
}

inline double estimated_velocity(const SmObserver& obs) {
    return dot(obs.velocity_readout, obs.x_hat);
}

/// eps = true velocity minus estimated velocity.
inline double velocity_error(double true_v, double est_v) {
    return true_v - est_v;
}

}  // namespace smcsim
