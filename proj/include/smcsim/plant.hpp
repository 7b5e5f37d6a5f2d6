/**
 * @file plant.hpp
 * @brief Torpedo depth/inclination plant: two linear channels plus a bounded
 *        matched disturbance.
 *
 * The inclination channel is 7660 / (s (s + 40)); the immersion (depth)
 * channel is 6514 (s + 6.85) / (s (s + 1.91) (s + 12.5) (s + 40)). Both are
 * realized in controllable canonical form, so the control input and the
 * matched disturbance enter through the last state.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <stdexcept>

#include "smcsim/lti.hpp"

namespace smcsim {

enum class Channel { inclination, immersion };

enum class DisturbanceMode { none, sinusoid, noise };

/// Bounded matched perturbation phi(x, t) with ||phi|| < bound_M * ||x||,
/// enforced by construction: phi = amplitude_fraction * bound_M * ||x|| * d(t)
/// with |d(t)| <= 1, applied along the input channel (last state).
struct Disturbance {
    double bound_M = 1.0;
    DisturbanceMode mode = DisturbanceMode::none;
    double amplitude_fraction = 0.0;  // in [0, 1)
    double frequency = 0.0;           // rad/s, sinusoid only
    double phase = 0.0;               // rad, sinusoid only
    std::uint64_t seed = 0;           // noise only

    void validate() const {
        if (bound_M <= 0.0) throw std::invalid_argument("Disturbance: bound_M must be > 0");
        if (amplitude_fraction < 0.0 || amplitude_fraction >= 1.0) {
            throw std::invalid_argument("Disturbance: amplitude_fraction must be in [0, 1)");
        }
    }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stateless pseudo-random value in [-1, 1], a pure function of (seed, t).
inline double noise_sample(std::uint64_t seed, double t) {
    std::uint64_t tbits;
    static_assert(sizeof(tbits) == sizeof(t));
    std::memcpy(&tbits, &t, sizeof(tbits));
    const std::uint64_t h = splitmix64(seed ^ splitmix64(tbits));
    return static_cast<double>(h >> 11) * (2.0 / 9007199254740992.0) - 1.0;
}

}  // namespace detail

/// Disturbance direction factor d(t) in [-1, 1].
inline double disturbance_wave(const Disturbance& d, double t) {
    switch (d.mode) {
        case DisturbanceMode::none:
            return 0.0;
        case DisturbanceMode::sinusoid:
            return std::sin(d.frequency * t + d.phase);
        case DisturbanceMode::noise:
            return detail::noise_sample(d.seed, t);
    }
    return 0.0;
}

/// Evaluates phi(x, t). The result lies along the input channel (last state)
/// and satisfies ||phi|| <= amplitude_fraction * bound_M * ||x||.
inline Vec phi(const Disturbance& d, const Vec& x, double t) {
    Vec out(x.size(), 0.0);
    if (d.mode == DisturbanceMode::none || x.empty()) return out;
    out.back() = d.amplitude_fraction * d.bound_M * norm2(x) * disturbance_wave(d, t);
    return out;
}

/// The two-channel torpedo model.
struct TorpedoPlant {
    StateSpaceModel inclination;  // 2 states
    StateSpaceModel immersion;    // 4 states
    Disturbance disturbance;
    Channel active_channel = Channel::immersion;

    const StateSpaceModel& active() const {
        return active_channel == Channel::inclination ? inclination : immersion;
    }
};

inline TransferFunction default_inclination_tf() {
    return tf_from_factored(7660.0, {}, {0.0, -40.0});
}

inline TransferFunction default_immersion_tf() {
    return tf_from_factored(6514.0, {-6.85}, {0.0, -1.91, -12.5, -40.0});
}

inline TorpedoPlant make_default_plant(const Disturbance& disturbance,
                                       Channel active = Channel::immersion) {
    disturbance.validate();
    TorpedoPlant p;
    p.inclination = tf_to_ss(default_inclination_tf());
    p.immersion = tf_to_ss(default_immersion_tf());
    p.disturbance = disturbance;
    p.active_channel = active;
    return p;
}

/// x' = A x + B u + phi(x, t) for the active channel.
inline Vec plant_derivative(const TorpedoPlant& p, const Vec& x, double u, double t) {
    const StateSpaceModel& ss = p.active();
    if (x.size() != ss.n()) {
        throw std::invalid_argument("plant_derivative: state dimension mismatch");
    }
    Vec dx = matvec(ss.A, x);
    for (std::size_t i = 0; i < dx.size(); ++i) dx[i] += ss.B(i, 0) * u;
    const Vec d = phi(p.disturbance, x, t);
    for (std::size_t i = 0; i < dx.size(); ++i) dx[i] += d[i];
    return dx;
}

/// Model-based output derivatives of a strictly proper channel:
///   y = C x,  y' = CA x + CB u,  y'' = CA^2 x + CAB u.
/// Computed from the nominal linear model only; the disturbance contribution
/// is deliberately excluded so controllers stay disturbance-blind.
struct OutputDerivatives {
    double y;
    double y_dot;
    double y_ddot;
};

/// Precomputed output-derivative rows of one channel.
struct DerivativeRows {
    Vec c;        // C
    Vec ca;       // C A
    Vec ca2;      // C A^2
    Vec ca3;      // C A^3
    double cb;    // C B
    double cab;   // C A B
    double ca2b;  // C A^2 B

    explicit DerivativeRows(const StateSpaceModel& ss) {
        const Mat CA = ss.C * ss.A;
        const Mat CA2 = CA * ss.A;
        const Mat CA3 = CA2 * ss.A;
        const std::size_t n = ss.n();
        c.resize(n);
        ca.resize(n);
        ca2.resize(n);
        ca3.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            c[j] = ss.C(0, j);
            ca[j] = CA(0, j);
            ca2[j] = CA2(0, j);
            ca3[j] = CA3(0, j);
        }
        const Mat CB = ss.C * ss.B;
        const Mat CAB = CA * ss.B;
        const Mat CA2B = CA2 * ss.B;
        cb = CB(0, 0);
        cab = CAB(0, 0);
        ca2b = CA2B(0, 0);
    }
};

inline OutputDerivatives channel_output_derivatives(const TorpedoPlant& p, const Vec& x, double u) {
    const DerivativeRows rows(p.active());
    return OutputDerivatives{dot(rows.c, x), dot(rows.ca, x) + rows.cb * u,
                             dot(rows.ca2, x) + rows.cab * u};
}

}  // namespace smcsim
