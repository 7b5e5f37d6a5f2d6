/**
 * @file metrics.hpp
 * @brief Trajectory metrics: chattering (total variation, switch counts),
 *        settling, overshoot, steady-state error and reaching-condition
 *        compliance.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace smcsim {

/// Sum of absolute successive differences; the chattering index.
inline double total_variation(std::span<const double> series) {
    if (series.empty()) throw std::invalid_argument("total_variation: empty series");
    double tv = 0.0;
    for (std::size_t i = 1; i < series.size(); ++i) {
        tv += std::abs(series[i] - series[i - 1]);
    }
    return tv;
}

/// Number of sign changes after zeroing samples with |x| <= deadband.
inline int switch_count(std::span<const double> series, double deadband) {
    if (deadband < 0.0) throw std::invalid_argument("switch_count: deadband must be >= 0");
    int count = 0;
    double last_sign = 0.0;
    for (double v : series) {
        if (std::abs(v) <= deadband) continue;
        const double s = v > 0.0 ? 1.0 : -1.0;
        if (last_sign != 0.0 && s != last_sign) ++count;
        last_sign = s;
    }
    return count;
}

/// Earliest grid time after which |y - r| stays within band_fraction of the
/// final reference value. nullopt when the trajectory never settles.
inline std::optional<double> settling_time(std::span<const double> y, std::span<const double> r,
                                           double band_fraction, double dt) {
    if (y.empty() || y.size() != r.size()) {
        throw std::invalid_argument("settling_time: series mismatch");
    }
    if (band_fraction <= 0.0 || band_fraction >= 1.0) {
        throw std::invalid_argument("settling_time: band_fraction must be in (0, 1)");
    }
    const double band = band_fraction * std::abs(r.back());
    std::size_t settle_idx = y.size();
    for (std::size_t i = y.size(); i-- > 0;) {
        if (std::abs(y[i] - r[i]) > band) break;
        settle_idx = i;
    }
    if (settle_idx == y.size()) return std::nullopt;
    return static_cast<double>(settle_idx) * dt;
}

struct ReachingCompliance {
    std::optional<double> first_reach_time;
    double violation_fraction = 0.0;
};

/// First time the surface is attained (|s| <= delta, or a sign change
/// between consecutive samples, which means the surface was crossed inside a
/// step), plus the fraction of pre-reach samples violating s s' <= -eta |s|.
/// A small tolerance absorbs the sampled-data discretization of the
/// continuous-time inequality.
inline ReachingCompliance reaching_compliance(std::span<const double> s,
                                              std::span<const double> s_dot, double eta,
                                              double delta, double dt) {
    if (s.empty() || s.size() != s_dot.size()) {
        throw std::invalid_argument("reaching_compliance: series mismatch");
    }
    std::size_t reach_idx = s.size();
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (std::abs(s[i]) <= delta || (i > 0 && s[i] * s[i - 1] < 0.0)) {
            reach_idx = i;
            break;
        }
    }

    std::size_t violations = 0;
    const std::size_t pre = reach_idx == s.size() ? s.size() : reach_idx;
    for (std::size_t i = 0; i < pre; ++i) {
        const double tol = 1e-9 + 1e-6 * std::abs(s[i]);
        if (s[i] * s_dot[i] > -eta * std::abs(s[i]) + tol) ++violations;
    }

    ReachingCompliance out;
    if (reach_idx < s.size()) out.first_reach_time = static_cast<double>(reach_idx) * dt;
    out.violation_fraction = pre == 0 ? 0.0 : static_cast<double>(violations) / static_cast<double>(pre);
    return out;
}

inline double rms(std::span<const double> series) {
    if (series.empty()) throw std::invalid_argument("rms: empty series");
    double acc = 0.0;
    for (double v : series) acc += v * v;
    return std::sqrt(acc / static_cast<double>(series.size()));
}

/// Peak excursion beyond the final reference value, as a percentage of
/// |r_final|. Zero for a regulation-to-zero reference.
inline double overshoot(std::span<const double> y, std::span<const double> r) {
    if (y.empty() || y.size() != r.size()) throw std::invalid_argument("overshoot: series mismatch");
    const double r_final = r.back();
    if (r_final == 0.0) return 0.0;
    const double dir = r_final > 0.0 ? 1.0 : -1.0;
    double worst = 0.0;
    for (double v : y) worst = std::max(worst, dir * (v - r_final));
    return 100.0 * worst / std::abs(r_final);
}

/// Mean absolute error over the final tail_fraction of the run.
inline double steady_state_error(std::span<const double> y, std::span<const double> r,
                                 double tail_fraction) {
    if (y.empty() || y.size() != r.size()) {
        throw std::invalid_argument("steady_state_error: series mismatch");
    }
    if (tail_fraction <= 0.0 || tail_fraction > 1.0) {
        throw std::invalid_argument("steady_state_error: tail_fraction must be in (0, 1]");
    }
    std::size_t start = y.size() - std::max<std::size_t>(
        1, static_cast<std::size_t>(tail_fraction * static_cast<double>(y.size())));
    double acc = 0.0;
    for (std::size_t i = start; i < y.size(); ++i) acc += std::abs(r[i] - y[i]);
    return acc / static_cast<double>(y.size() - start);
}

/// Per-run summary of the comparison quantities.
struct MetricsReport {
    double total_variation_u = 0.0;       // over the post-reach window
    int switch_count_u = 0;               // over the post-reach window
    std::optional<double> settling_time;  // nullopt = not settled
    double overshoot_pct = 0.0;
    double steady_state_err = 0.0;
    std::optional<double> reaching_time;  // nullopt = surface never reached
    double reaching_violations = 0.0;     // fraction in [0, 1]
    std::optional<double> observer_rms_error;
};

}  // namespace smcsim
