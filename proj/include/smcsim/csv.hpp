/**
 * @file csv.hpp
 * @brief CSV serialization of run logs and metrics tables. Values are printed
 *        with 17 significant digits so parsing an emitted file recovers every
 *        double exactly.
 */

#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "smcsim/sim.hpp"

namespace smcsim {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string format_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Header: t,x0..x{n-1},y,r,e,s,u,phi_norm[,xhat0..xhat{n-1},eps]
inline std::string runlog_csv_header(const RunLog& log) {
    std::string h = "t";
    for (std::size_t j = 0; j < log.n_states; ++j) h += ",x" + std::to_string(j);
    h += ",y,r,e,s,u,phi_norm";
    if (log.has_observer) {
        for (std::size_t j = 0; j < log.n_states; ++j) h += ",xhat" + std::to_string(j);
        h += ",eps";
    }
    return h;
}

inline std::string runlog_to_csv(const RunLog& log) {
    std::string out = runlog_csv_header(log) + "\n";
    for (std::size_t i = 0; i < log.size(); ++i) {
        out += format_full(log.t[i]);
        for (std::size_t j = 0; j < log.n_states; ++j) out += "," + format_full(log.x[i][j]);
        out += "," + format_full(log.y[i]);
        out += "," + format_full(log.r[i]);
        out += "," + format_full(log.e[i]);
        out += "," + format_full(log.s[i]);
        out += "," + format_full(log.u[i]);
        out += "," + format_full(log.phi_norm[i]);
        if (log.has_observer) {
            for (std::size_t j = 0; j < log.n_states; ++j) out += "," + format_full(log.x_hat[i][j]);
            out += "," + format_full(log.eps[i]);
        }
        out += "\n";
    }
    return out;
}

/// Combined comparison CSV: shared t and r, then y/e/s/u columns suffixed
/// with each scenario name.
inline std::string comparison_to_csv(const ComparisonReport& rep) {
    std::string out = "t,r";
    for (const std::string& name : rep.names) {
        out += ",y__" + name + ",e__" + name + ",s__" + name + ",u__" + name;
    }
    out += "\n";
    const RunLog& first = rep.logs.front();
    for (std::size_t i = 0; i < first.size(); ++i) {
        out += format_full(first.t[i]) + "," + format_full(first.r[i]);
        for (const RunLog& log : rep.logs) {
            out += "," + format_full(log.y[i]);
            out += "," + format_full(log.e[i]);
            out += "," + format_full(log.s[i]);
            out += "," + format_full(log.u[i]);
        }
        out += "\n";
    }
    return out;
}

inline std::string metrics_csv_header(bool with_observer, const std::string& key_column) {
    std::string h = key_column +
                    ",total_variation_u,switch_count,settling_time,overshoot_pct,"
                    "steady_state_error,reaching_time,reaching_violations";
    if (with_observer) h += ",observer_rms_error";
    return h;
}

inline std::string metrics_csv_row(const std::string& key, const MetricsReport& m,
                                   bool with_observer) {
    std::string row = key;
    row += "," + format_full(m.total_variation_u);
    row += "," + std::to_string(m.switch_count_u);
    row += "," + (m.settling_time ? format_full(*m.settling_time) : std::string("nan"));
    row += "," + format_full(m.overshoot_pct);
    row += "," + format_full(m.steady_state_err);
    row += "," + (m.reaching_time ? format_full(*m.reaching_time) : std::string("nan"));
    row += "," + format_full(m.reaching_violations);
    if (with_observer) {
        row += "," + (m.observer_rms_error ? format_full(*m.observer_rms_error) : std::string("nan"));
    }
    return row;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Parses a numeric CSV emitted by this module.
inline CsvTable read_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string field;
        if (first) {
            while (std::getline(fields, field, ',')) table.header.push_back(field);
            first = false;
            continue;
        }
        std::vector<double> row;
        while (std::getline(fields, field, ',')) row.push_back(std::strtod(field.c_str(), nullptr));
        table.rows.push_back(std::move(row));
    }
    return table;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError("write failed for '" + path + "'");
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace smcsim
