/**
 * @file sim.hpp
 * @brief Closed-loop orchestration: wires plant + controller (+ observer)
 *        per a Scenario, integrates with fixed-step RK4 and logs everything.
 *
 * Sampled-data semantics: the controller runs on the time grid and its output
 * is held constant between grid points, as a digital autopilot would do.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "smcsim/controllers.hpp"
#include "smcsim/metrics.hpp"
#include "smcsim/observer.hpp"
#include "smcsim/plant.hpp"

namespace smcsim {

// ---------------------------------------------------------------------------
// Scenario description
// ---------------------------------------------------------------------------

enum class ReferenceType { step, ramp, sine };

struct Reference {
    ReferenceType type = ReferenceType::step;
    double amplitude = 1.0;  // step, sine
    double t_on = 0.0;       // step
    double slope = 0.0;      // ramp
    double frequency = 1.0;  // rad/s, sine

    struct Sample {
        double r;
        double r_dot;
        double r_ddot;
        double r_dddot;
    };

    Sample eval(double t) const {
        switch (type) {
            case ReferenceType::step:
                return {t >= t_on ? amplitude : 0.0, 0.0, 0.0, 0.0};
            case ReferenceType::ramp:
                return {slope * t, slope, 0.0, 0.0};
            case ReferenceType::sine: {
                const double w = frequency;
                return {amplitude * std::sin(w * t), amplitude * w * std::cos(w * t),
                        -amplitude * w * w * std::sin(w * t),
                        -amplitude * w * w * w * std::cos(w * t)};
            }
        }
        return {0.0, 0.0, 0.0, 0.0};
    }

    bool operator==(const Reference&) const = default;
};

/// Optional replacement of a channel's transfer function (factored form).
struct TfOverride {
    double gain = 1.0;
    Vec zeros;
    Vec poles;
};

struct PlantConfig {
    Channel channel = Channel::immersion;
    Disturbance disturbance;
    Vec x0;  // empty = all zeros
    std::optional<TfOverride> tf;
};

using ControllerConfig =
    std::variant<PidConfig, Smc1Config, Smc2Config, TwistingConfig, SuperTwistConfig>;

inline const char* controller_name(const ControllerConfig& cfg) {
    switch (cfg.index()) {
        case 0: return "pid";
        case 1: return "smc1";
        case 2: return "smc2";
        case 3: return "twisting";
        case 4: return "super_twisting";
    }
    return "?";
}

struct ObserverConfig {
    bool enabled = false;
    Vec lambda;
    Vec x_hat0;  // empty = all zeros
    bool in_the_loop = false;
};

struct Scenario {
    std::string name = "scenario";
    PlantConfig plant;
    ControllerConfig controller = Smc1Config{};
    ObserverConfig observer;
    Reference reference;
    double duration = 10.0;
    double dt = 1e-3;
    std::uint64_t seed = 0;

    void validate() const {
        if (duration <= 0.0) throw std::invalid_argument("Scenario: duration must be > 0");
        if (dt <= 0.0) throw std::invalid_argument("Scenario: dt must be > 0");
        if (dt > duration / 100.0) {
            throw std::invalid_argument("Scenario: dt must be <= duration/100");
        }
        plant.disturbance.validate();
        std::visit([](const auto& c) { c.validate(); }, controller);
    }
};

// ---------------------------------------------------------------------------
// Run log
// ---------------------------------------------------------------------------

/// Sampled trajectory of one closed-loop run. All series share the grid.
/// e_dot/e_ddot/s_dot are the model-based derivative traces the controller
/// saw; they back the reaching-condition metrics and are not serialized.
struct RunLog {
    std::string scenario_name;
    double dt = 0.0;
    std::size_t n_states = 0;
    bool has_observer = false;

    std::vector<double> t;
    std::vector<Vec> x;
    std::vector<double> y, r, e, s, u, phi_norm;
    std::vector<Vec> x_hat;
    std::vector<double> eps;  // velocity estimation error

    std::vector<double> e_dot, e_ddot, s_dot;

    std::size_t size() const { return t.size(); }
};

struct DivergenceError : std::runtime_error {
    explicit DivergenceError(double when)
        : std::runtime_error("divergence: non-finite sample at t=" + std::to_string(when)),
          time(when) {}
    double time;
};

struct ScenarioMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Closed loop
// ---------------------------------------------------------------------------

namespace detail {

struct ControllerRuntime {
    PidState pid;
    double smc2_u = 0.0;
    double st_integrator = 0.0;
};

struct ControlDecision {
    double u = 0.0;
    double surface = 0.0;
    double surface_dot = 0.0;
};

/// Computes the control for one sample. The relay-on-derivative and the
/// twisting/super-twisting forms are written for surface dynamics whose input
/// gain is positive; on these channels (positive high-frequency gain, e = r - y)
/// the surface falls as u rises, so those controllers see the mirrored surface.
inline ControlDecision step_controller(const ControllerConfig& cfg, ControllerRuntime& rt,
                                       double e, double e_dot, double e_ddot, double e_dddot,
                                       double dt) {
    ControlDecision out;
    if (const auto* pid = std::get_if<PidConfig>(&cfg)) {
        const PidResult res = pid_step(e, rt.pid, dt, *pid);
        rt.pid = res.state;
        out.u = res.u;
    } else if (const auto* smc1 = std::get_if<Smc1Config>(&cfg)) {
        out.surface = surface1(e, e_dot, *smc1);
        out.surface_dot = smc1->k1 * e_dot + smc1->k2 * e_ddot;
        out.u = smc1_control(out.surface, *smc1);
    } else if (const auto* smc2 = std::get_if<Smc2Config>(&cfg)) {
        out.surface = surface2(e, e_dot, e_ddot, *smc2);
        out.surface_dot = smc2->beta1 * e_dot + smc2->beta2 * e_ddot + smc2->beta3 * e_dddot;
        rt.smc2_u = smc2_step(-out.surface, rt.smc2_u, dt, *smc2);
        out.u = rt.smc2_u;
    } else if (const auto* tw = std::get_if<TwistingConfig>(&cfg)) {
        out.surface = tw->k1 * e + tw->k2 * e_dot;
        out.surface_dot = tw->k1 * e_dot + tw->k2 * e_ddot;
        out.u = twisting_step(-out.surface, -out.surface_dot, *tw);
    } else if (const auto* st = std::get_if<SuperTwistConfig>(&cfg)) {
        out.surface = st->k1 * e + st->k2 * e_dot;
        out.surface_dot = st->k1 * e_dot + st->k2 * e_ddot;
        const SuperTwistResult res = super_twisting_step(-out.surface, rt.st_integrator, dt, *st);
        rt.st_integrator = res.state;
        out.u = res.u;
    }
    return out;
}

}  // namespace detail

inline TorpedoPlant plant_from_config(const PlantConfig& pc) {
    TorpedoPlant plant = make_default_plant(pc.disturbance, pc.channel);
    if (pc.tf) {
        if (pc.tf->zeros.size() >= pc.tf->poles.size()) {
            throw std::invalid_argument("plant.tf: channel must be strictly proper");
        }
        const StateSpaceModel ss = tf_to_ss(tf_from_factored(pc.tf->gain, pc.tf->zeros, pc.tf->poles));
        (pc.channel == Channel::inclination ? plant.inclination : plant.immersion) = ss;
    }
    return plant;
}

inline std::size_t grid_length(double duration, double dt) {
    return static_cast<std::size_t>(std::floor(duration / dt + 1e-9)) + 1;
}

inline RunLog run_closed_loop(const Scenario& sc) {
    sc.validate();

    const TorpedoPlant plant = plant_from_config(sc.plant);
    const StateSpaceModel& model = plant.active();
    const std::size_t n = model.n();
    const DerivativeRows rows(model);

    Vec x = sc.plant.x0.empty() ? Vec(n, 0.0) : sc.plant.x0;
    if (x.size() != n) throw std::invalid_argument("Scenario: x0 dimension mismatch");

    SmObserver obs;
    if (sc.observer.enabled) {
        obs = make_observer(model, sc.observer.lambda, sc.observer.x_hat0);
        obs.validate();
    }

    detail::ControllerRuntime rt;
    if (const auto* smc2 = std::get_if<Smc2Config>(&sc.controller)) rt.smc2_u = smc2->u_init;

    const std::size_t steps = grid_length(sc.duration, sc.dt);

    RunLog log;
    log.scenario_name = sc.name;
    log.dt = sc.dt;
    log.n_states = n;
    log.has_observer = sc.observer.enabled;
    log.t.reserve(steps);

    double u_prev = 0.0;  // control applied over the previous interval

    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) * sc.dt;
        const double y = dot(rows.c, x);
        const Reference::Sample ref = sc.reference.eval(t);
        const double e = ref.r - y;

        // Model-based output derivatives, from the true state or the
        // observer estimate when the observer closes the loop.
        const Vec& xs = (sc.observer.enabled && sc.observer.in_the_loop) ? obs.x_hat : x;
        const double y_dot = dot(rows.ca, xs) + rows.cb * u_prev;
        const double y_ddot = dot(rows.ca2, xs) + rows.cab * u_prev;
        const double y_dddot = dot(rows.ca3, xs) + rows.ca2b * u_prev;
        const double e_dot = ref.r_dot - y_dot;
        const double e_ddot = ref.r_ddot - y_ddot;
        const double e_dddot = ref.r_dddot - y_dddot;

        const detail::ControlDecision ctl =
            detail::step_controller(sc.controller, rt, e, e_dot, e_ddot, e_dddot, sc.dt);

        const Vec phi_v = phi(plant.disturbance, x, t);

        log.t.push_back(t);
        log.x.push_back(x);
        log.y.push_back(y);
        log.r.push_back(ref.r);
        log.e.push_back(e);
        log.s.push_back(ctl.surface);
        log.u.push_back(ctl.u);
        log.phi_norm.push_back(norm2(phi_v));
        log.e_dot.push_back(e_dot);
        log.e_ddot.push_back(e_ddot);
        log.s_dot.push_back(ctl.surface_dot);
        if (sc.observer.enabled) {
            log.x_hat.push_back(obs.x_hat);
            log.eps.push_back(velocity_error(dot(rows.ca, x), estimated_velocity(obs)));
        }

        if (!all_finite(x) || !std::isfinite(y) || !std::isfinite(ctl.u) ||
            !std::isfinite(ctl.surface)) {
            throw DivergenceError(t);
        }
        if (i + 1 == steps) break;

        x = rk4_step(model, x, Vec{ctl.u}, phi_v, sc.dt);
        if (sc.observer.enabled) obs = observer_step(obs, ctl.u, y, sc.dt);
        u_prev = ctl.u;
    }
    return log;
}

// ---------------------------------------------------------------------------
// Metrics over a run
// ---------------------------------------------------------------------------

/// Report conventions: 2% settling band, 10% steady-state tail, chattering
/// measured over the post-reach window with a switch deadband of 5% of the
/// post-reach control peak (filters the one-sample wobble of integrated-relay
/// controls without masking true relay reversals).
inline MetricsReport compute_metrics(const RunLog& log, const Scenario& sc) {
    MetricsReport rep;

    double eta = 0.0;
    double delta = 1e-4;
    if (const auto* smc1 = std::get_if<Smc1Config>(&sc.controller)) {
        eta = smc1->eta;
        if (smc1->boundary_layer > 0.0) delta = smc1->boundary_layer;
    }

    const ReachingCompliance rc = reaching_compliance(log.s, log.s_dot, eta, delta, log.dt);
    rep.reaching_time = rc.first_reach_time;
    rep.reaching_violations = rc.violation_fraction;

    const std::size_t reach_idx =
        rc.first_reach_time ? static_cast<std::size_t>(std::llround(*rc.first_reach_time / log.dt))
                            : 0;
    const std::span<const double> u_post(log.u.data() + reach_idx, log.u.size() - reach_idx);
    rep.total_variation_u = total_variation(u_post);
    double u_peak = 0.0;
    for (double v : u_post) u_peak = std::max(u_peak, std::abs(v));
    rep.switch_count_u = switch_count(u_post, 0.05 * u_peak);

    rep.settling_time = settling_time(log.y, log.r, 0.02, log.dt);
    rep.overshoot_pct = overshoot(log.y, log.r);
    rep.steady_state_err = steady_state_error(log.y, log.r, 0.1);

    if (log.has_observer) {
        std::vector<double> err(log.size());
        for (std::size_t i = 0; i < log.size(); ++i) {
            Vec d(log.n_states);
            for (std::size_t j = 0; j < log.n_states; ++j) d[j] = log.x[i][j] - log.x_hat[i][j];
            err[i] = norm2(d);
        }
        rep.observer_rms_error = rms(err);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Comparison runs
// ---------------------------------------------------------------------------

struct ComparisonReport {
    std::vector<std::string> names;
    std::vector<RunLog> logs;
    std::vector<MetricsReport> metrics;
};

/// Runs several scenarios that share reference, duration and dt, producing
/// aligned traces plus a per-scenario metrics table.
inline ComparisonReport run_comparison(const std::vector<Scenario>& scenarios) {
    if (scenarios.empty()) throw std::invalid_argument("run_comparison: no scenarios");
    for (const Scenario& sc : scenarios) {
        if (sc.dt != scenarios.front().dt || sc.duration != scenarios.front().duration ||
            !(sc.reference == scenarios.front().reference)) {
            throw ScenarioMismatchError("run_comparison: scenarios must share reference, duration and dt");
        }
    }
    ComparisonReport rep;
    for (const Scenario& sc : scenarios) {
        rep.names.push_back(sc.name);
        rep.logs.push_back(run_closed_loop(sc));
        rep.metrics.push_back(compute_metrics(rep.logs.back(), sc));
    }
    return rep;
}

}  // namespace smcsim
