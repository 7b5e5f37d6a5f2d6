/**
 * @file report.hpp
 * @brief Metrics rendering: fixed-width text tables and machine-readable JSON.
 */

#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "smcsim/metrics.hpp"

namespace smcsim {

namespace detail {

inline std::string fmt_metric(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace detail

inline std::string metrics_to_text(const std::string& name, const MetricsReport& m) {
    std::string out;
    out += "scenario: " + name + "\n";
    out += "  total_variation_u:   " + detail::fmt_metric(m.total_variation_u) + "\n";
    out += "  switch_count:        " + std::to_string(m.switch_count_u) + "\n";
    out += "  settling_time:       " +
           (m.settling_time ? detail::fmt_metric(*m.settling_time) + " s" : std::string("not settled")) +
           "\n";
    out += "  overshoot:           " + detail::fmt_metric(m.overshoot_pct) + " %\n";
    out += "  steady_state_error:  " + detail::fmt_metric(m.steady_state_err) + "\n";
    out += "  reaching_time:       " +
           (m.reaching_time ? detail::fmt_metric(*m.reaching_time) + " s" : std::string("not reached")) +
           "\n";
    out += "  reaching_violations: " + detail::fmt_metric(m.reaching_violations) + "\n";
    if (m.observer_rms_error) {
        out += "  observer_rms_error:  " + detail::fmt_metric(*m.observer_rms_error) + "\n";
    }
    return out;
}

inline nlohmann::json metrics_to_json(const std::string& name, const MetricsReport& m) {
    nlohmann::json j;
    j["scenario"] = name;
    j["total_variation_u"] = m.total_variation_u;
    j["switch_count"] = m.switch_count_u;
    j["settling_time"] = m.settling_time ? nlohmann::json(*m.settling_time) : nlohmann::json(nullptr);
    j["overshoot_pct"] = m.overshoot_pct;
    j["steady_state_error"] = m.steady_state_err;
    j["reaching_time"] = m.reaching_time ? nlohmann::json(*m.reaching_time) : nlohmann::json(nullptr);
    j["reaching_violations"] = m.reaching_violations;
    if (m.observer_rms_error) j["observer_rms_error"] = *m.observer_rms_error;
    return j;
}

/// Plain-text comparison table, one scenario per row.
inline std::string metrics_table_text(const std::vector<std::string>& names,
                                      const std::vector<MetricsReport>& metrics) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-24s %12s %8s %12s %10s %12s %12s\n", "scenario", "tv(u)",
                  "switches", "settling[s]", "over[%]", "sse", "reach[s]");
    out += line;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const MetricsReport& m = metrics[i];
        const std::string settle = m.settling_time ? detail::fmt_metric(*m.settling_time) : "never";
        const std::string reach = m.reaching_time ? detail::fmt_metric(*m.reaching_time) : "never";
        std::snprintf(line, sizeof(line), "%-24s %12s %8d %12s %10s %12s %12s\n", names[i].c_str(),
                      detail::fmt_metric(m.total_variation_u).c_str(), m.switch_count_u,
                      settle.c_str(), detail::fmt_metric(m.overshoot_pct).c_str(),
                      detail::fmt_metric(m.steady_state_err).c_str(), reach.c_str());
        out += line;
    }
    return out;
}

}  // namespace smcsim
