#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "smcsim/sim.hpp"

using namespace smcsim;

namespace {

bool logs_identical(const RunLog& a, const RunLog& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.x[i] != b.x[i]) return false;
    }
    return a.t == b.t && a.y == b.y && a.r == b.r && a.e == b.e && a.s == b.s && a.u == b.u &&
           a.phi_norm == b.phi_norm && a.eps == b.eps;
}

}  // namespace

TEST_SUITE("sim") {

TEST_CASE("quiescent scenario logs exactly zero") {
    Scenario sc;
    sc.plant.channel = Channel::inclination;
    sc.reference.amplitude = 0.0;
    sc.duration = 2.0;
    sc.dt = 1e-3;

    SUBCASE("smc1") { sc.controller = Smc1Config{}; }
    SUBCASE("smc2") { sc.controller = Smc2Config{}; }
    SUBCASE("pid") {
        PidConfig pid;
        pid.kp = 3.0;
        pid.ki = 1.0;
        pid.kd = 0.1;
        sc.controller = pid;
    }

    const RunLog log = run_closed_loop(sc);
    for (std::size_t i = 0; i < log.size(); ++i) {
        CHECK(log.y[i] == 0.0);
        CHECK(log.u[i] == 0.0);
        CHECK(log.s[i] == 0.0);
        CHECK(log.x[i] == Vec(2, 0.0));
    }
}

TEST_CASE("grid integrity") {
    Scenario sc = fixtures::load_shipped("default_smc1_depth");
    const RunLog log = run_closed_loop(sc);
    CHECK(log.size() == grid_length(sc.duration, sc.dt));
    CHECK(log.size() == 10001);
    for (std::size_t i = 0; i < log.size(); i += 997) {
        CHECK(log.t[i] == static_cast<double>(i) * sc.dt);
    }
}

TEST_CASE("identical scenarios give bit-identical logs") {
    const Scenario sc = fixtures::load_shipped("default_smc1_depth");
    CHECK(logs_identical(run_closed_loop(sc), run_closed_loop(sc)));

    Scenario noisy = sc;
    noisy.plant.disturbance.mode = DisturbanceMode::noise;
    CHECK(logs_identical(run_closed_loop(noisy), run_closed_loop(noisy)));
}

TEST_CASE("default smc1 depth step reaches and holds the reference") {
    const Scenario sc = fixtures::load_shipped("default_smc1_depth");
    const RunLog log = run_closed_loop(sc);
    const MetricsReport m = compute_metrics(log, sc);

    REQUIRE(m.settling_time.has_value());
    CHECK(*m.settling_time < 0.8 * sc.duration);

    // Holds within 1% of the step over the final fifth of the run.
    const std::size_t tail = log.size() - log.size() / 5;
    for (std::size_t i = tail; i < log.size(); ++i) {
        CHECK(std::abs(log.e[i]) <= 0.01 * sc.reference.amplitude);
    }
}

TEST_CASE("default smc2 inclination run is smoother than smc1") {
    const Scenario s1 = fixtures::load_shipped("default_smc1_incl");
    const Scenario s2 = fixtures::load_shipped("default_smc2_incl");
    const RunLog l1 = run_closed_loop(s1);
    const RunLog l2 = run_closed_loop(s2);
    const MetricsReport m1 = compute_metrics(l1, s1);
    const MetricsReport m2 = compute_metrics(l2, s2);

    CHECK(m2.total_variation_u < m1.total_variation_u);

    // Inclination is regulated close to zero in both cases.
    const double theta0 = std::abs(l1.y.front());
    for (std::size_t i = l1.size() - l1.size() / 5; i < l1.size(); ++i) {
        CHECK(std::abs(l1.y[i]) < 0.05 * theta0);
        CHECK(std::abs(l2.y[i]) < 0.05 * theta0);
    }
}

TEST_CASE("run_comparison") {
    const Scenario sc = fixtures::load_shipped("default_smc1_depth");

    SUBCASE("single scenario gives one row") {
        const ComparisonReport rep = run_comparison({sc});
        CHECK(rep.names.size() == 1);
        CHECK(rep.metrics.size() == 1);
    }

    SUBCASE("duplicated scenario gives identical rows") {
        const ComparisonReport rep = run_comparison({sc, sc});
        CHECK(logs_identical(rep.logs[0], rep.logs[1]));
        CHECK(rep.metrics[0].total_variation_u == rep.metrics[1].total_variation_u);
        CHECK(rep.metrics[0].settling_time == rep.metrics[1].settling_time);
    }

    SUBCASE("grid mismatch is rejected") {
        Scenario other = sc;
        other.dt = 5e-4;
        CHECK_THROWS_AS(run_comparison({sc, other}), ScenarioMismatchError);

        Scenario ref_mismatch = sc;
        ref_mismatch.reference.amplitude = 2.0;
        CHECK_THROWS_AS(run_comparison({sc, ref_mismatch}), ScenarioMismatchError);
    }
}

TEST_CASE("comparative ordering of the default controllers") {
    const Scenario pid = fixtures::load_shipped("default_pid_depth");
    const Scenario smc1 = fixtures::load_shipped("default_smc1_depth");
    const Scenario smc2 = fixtures::load_shipped("default_smc2_depth");
    const ComparisonReport rep = run_comparison({pid, smc1, smc2});

    const MetricsReport& m_pid = rep.metrics[0];
    const MetricsReport& m_smc1 = rep.metrics[1];
    const MetricsReport& m_smc2 = rep.metrics[2];

    // TV(u): PID < SMC2 < SMC1.
    CHECK(m_pid.total_variation_u < m_smc2.total_variation_u);
    CHECK(m_smc2.total_variation_u < m_smc1.total_variation_u);

    // Settling: SMC2 <= SMC1 < PID (PID may be not settled).
    REQUIRE(m_smc1.settling_time.has_value());
    REQUIRE(m_smc2.settling_time.has_value());
    CHECK(*m_smc2.settling_time <= *m_smc1.settling_time);
    if (m_pid.settling_time.has_value()) {
        CHECK(*m_smc1.settling_time < *m_pid.settling_time);
    }
}

TEST_CASE("halving dt leaves the trajectories essentially unchanged") {
    SUBCASE("smc2 terminal output moves < 1e-3 relative") {
        Scenario sc = fixtures::load_shipped("default_smc2_depth");
        const RunLog coarse = run_closed_loop(sc);
        sc.dt /= 2.0;
        const RunLog fine = run_closed_loop(sc);
        const double rel =
            std::abs(coarse.y.back() - fine.y.back()) / std::max(1e-12, std::abs(fine.y.back()));
        CHECK(rel < 1e-3);
    }

    SUBCASE("smc1 output moves < 1e-2 relative") {
        Scenario sc = fixtures::load_shipped("default_smc1_depth");
        const RunLog coarse = run_closed_loop(sc);
        sc.dt /= 2.0;
        const RunLog fine = run_closed_loop(sc);
        const double rel =
            std::abs(coarse.y.back() - fine.y.back()) / std::max(1e-12, std::abs(fine.y.back()));
        CHECK(rel < 1e-2);
    }
}

TEST_CASE("seeded noise disturbance is rejected like the sinusoid") {
    Scenario sc = fixtures::load_shipped("default_smc1_depth");
    sc.plant.disturbance.mode = DisturbanceMode::noise;
    const RunLog log = run_closed_loop(sc);
    const MetricsReport m = compute_metrics(log, sc);
    REQUIRE(m.settling_time.has_value());
    CHECK(*m.settling_time < 0.5 * sc.duration);
    CHECK(m.reaching_violations <= 0.01);
    CHECK(m.steady_state_err < 0.01 * sc.reference.amplitude);
}

TEST_CASE("divergence raises an error carrying the failing time") {
    Scenario sc = fixtures::load_shipped("default_smc1_incl");
    sc.plant.tf = TfOverride{7660.0, {}, {200.0, 150.0}};
    CHECK_THROWS_AS(run_closed_loop(sc), DivergenceError);
    try {
        run_closed_loop(sc);
    } catch (const DivergenceError& ex) {
        CHECK(ex.time > 0.0);
        CHECK(ex.time <= sc.duration);
    }
}

TEST_CASE("model-based surface derivative matches finite differences pre-reach") {
    Scenario sc = fixtures::load_shipped("default_smc1_depth");
    sc.plant.disturbance.mode = DisturbanceMode::none;
    const RunLog log = run_closed_loop(sc);
    const MetricsReport m = compute_metrics(log, sc);
    REQUIRE(m.reaching_time.has_value());

    const std::size_t reach_idx = static_cast<std::size_t>(std::llround(*m.reaching_time / sc.dt));
    REQUIRE(reach_idx > 10);
    const std::vector<double> fd = oracles::central_diff(log.s, sc.dt);

    double num = 0.0, den = 0.0;
    for (std::size_t i = 1; i + 1 < reach_idx; ++i) {
        num += (log.s_dot[i] - fd[i]) * (log.s_dot[i] - fd[i]);
        den += log.s_dot[i] * log.s_dot[i];
    }
    REQUIRE(den > 0.0);
    CHECK(std::sqrt(num / den) <= 0.01);
}

TEST_CASE("disturbance bound holds over logged trajectories") {
    for (const char* name : {"default_smc1_depth", "default_smc2_depth", "default_smc1_incl"}) {
        const Scenario sc = fixtures::load_shipped(name);
        const RunLog log = run_closed_loop(sc);
        const double M = sc.plant.disturbance.bound_M;
        for (std::size_t i = 0; i < log.size(); ++i) {
            const double xn = norm2(log.x[i]);
            if (xn < 1e-12) continue;
            CHECK(log.phi_norm[i] / (M * xn) < 1.0);
        }
    }
}

TEST_CASE("observer in the loop still tracks") {
    const Scenario sc = fixtures::load_shipped("observer_in_loop");
    REQUIRE(sc.observer.enabled);
    REQUIRE(sc.observer.in_the_loop);
    const RunLog log = run_closed_loop(sc);
    const MetricsReport m = compute_metrics(log, sc);
    REQUIRE(m.settling_time.has_value());
    CHECK(m.reaching_violations <= 0.02);
}

TEST_CASE("scenario validation") {
    Scenario sc;
    sc.duration = 0.0;
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
    sc.duration = 10.0;
    sc.dt = 0.5;  // fewer than 100 steps
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);

    Scenario bad_x0 = fixtures::load_shipped("default_smc1_depth");
    bad_x0.plant.x0 = {1.0, 2.0};  // immersion channel has 4 states
    CHECK_THROWS_AS(run_closed_loop(bad_x0), std::invalid_argument);
}

TEST_CASE("boundary layer suppresses relay switching") {
    Scenario relay = fixtures::load_shipped("default_smc1_depth");
    Scenario layered = relay;
    auto& cfg = std::get<Smc1Config>(layered.controller);
    cfg.boundary_layer = 0.02;

    const MetricsReport m_relay = compute_metrics(run_closed_loop(relay), relay);
    const MetricsReport m_layer = compute_metrics(run_closed_loop(layered), layered);
    CHECK(m_layer.switch_count_u < m_relay.switch_count_u / 10);
    CHECK(m_layer.total_variation_u < 0.2 * m_relay.total_variation_u);

    REQUIRE(m_layer.settling_time.has_value());
    CHECK(*m_layer.settling_time < 0.8 * layered.duration);
}

TEST_CASE("reference derivatives are consistent with finite differences") {
    Reference sine;
    sine.type = ReferenceType::sine;
    sine.amplitude = 1.7;
    sine.frequency = 3.0;

    Reference ramp;
    ramp.type = ReferenceType::ramp;
    ramp.slope = 0.4;

    const double h = 1e-6;
    for (const Reference& ref : {sine, ramp}) {
        for (double t : {0.1, 0.75, 2.3}) {
            const auto lo = ref.eval(t - h);
            const auto hi = ref.eval(t + h);
            const auto mid = ref.eval(t);
            CHECK(mid.r_dot == doctest::Approx((hi.r - lo.r) / (2.0 * h)).epsilon(1e-6));
            CHECK(mid.r_ddot ==
                  doctest::Approx((hi.r_dot - lo.r_dot) / (2.0 * h)).epsilon(1e-6));
            CHECK(mid.r_dddot ==
                  doctest::Approx((hi.r_ddot - lo.r_ddot) / (2.0 * h)).epsilon(1e-6));
        }
    }
}

TEST_CASE("twisting and super-twisting regulate the inclination channel") {
    Scenario base = fixtures::load_shipped("default_smc1_incl");
    const double theta0 = 7660.0 * base.plant.x0[0];

    TwistingConfig tw;
    tw.r1 = 0.004;
    tw.r2 = 0.0015;
    tw.k1 = 1.0;
    tw.k2 = 0.5;
    Scenario twisting = base;
    twisting.controller = tw;

    SuperTwistConfig st;
    st.alpha = 0.01;
    st.gamma = 0.002;
    st.u_limit = 0.05;
    st.k1 = 1.0;
    st.k2 = 0.5;
    Scenario super_tw = base;
    super_tw.controller = st;

    const RunLog tw_log = run_closed_loop(twisting);
    const RunLog st_log = run_closed_loop(super_tw);

    for (std::size_t i = tw_log.size() - tw_log.size() / 5; i < tw_log.size(); ++i) {
        CHECK(std::abs(tw_log.y[i]) < 0.10 * theta0);
        CHECK(std::abs(st_log.y[i]) < 0.02 * theta0);
    }

    // The super-twisting control is continuous, the twisting control a relay.
    const MetricsReport m_tw = compute_metrics(tw_log, twisting);
    const MetricsReport m_st = compute_metrics(st_log, super_tw);
    CHECK(m_st.total_variation_u < 0.2 * m_tw.total_variation_u);
}

TEST_CASE("sine reference is tracked by the relay controller") {
    Scenario sc = fixtures::load_shipped("default_smc1_depth");
    sc.reference.type = ReferenceType::sine;
    sc.reference.amplitude = 0.5;
    sc.reference.frequency = 0.4;
    const RunLog log = run_closed_loop(sc);
    // After the reaching transient the output follows the moving reference.
    for (std::size_t i = log.size() / 2; i < log.size(); ++i) {
        CHECK(std::abs(log.e[i]) < 0.05 * sc.reference.amplitude);
    }
}

}  // TEST_SUITE
