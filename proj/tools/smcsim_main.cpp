// Batch front end: scenario files in, CSV logs / metrics reports / SVG plots out.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smcsim/smcsim.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitDivergence = 3;
constexpr int kExitIo = 4;
constexpr int kExitGridMismatch = 5;

std::string resolve_output_path(const std::string& path) {
    if (fs::path(path).is_absolute()) return path;
    const char* dir = std::getenv("SMCSIM_OUT_DIR");
    if (dir == nullptr || *dir == '\0') return path;
    return (fs::path(dir) / path).string();
}

smcsim::ScenarioFile load(const std::string& path, const std::vector<std::string>& sets) {
    smcsim::json doc = smcsim::load_json_file(path);
    for (const std::string& s : sets) smcsim::apply_override(doc, s);
    smcsim::ScenarioFile sf = smcsim::parse_scenario(doc);
    if (!doc.contains("name")) sf.scenario.name = fs::path(path).stem().string();
    return sf;
}

struct CommonOpts {
    std::string csv;
    std::string svg;
    std::string report;
    std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--csv", opts.csv, "Write CSV output to PATH");
    cmd->add_option("--svg", opts.svg, "Write SVG plot(s) to PATH");
    cmd->add_option("--report", opts.report, "Report format: text|json-like")
        ->check(CLI::IsMember({"text", "json-like"}));
    cmd->add_option("--set", opts.sets, "Override a scenario field, e.g. --set smc1.k=0.05");
}

void print_report(const std::string& format, const std::vector<std::string>& names,
                  const std::vector<smcsim::MetricsReport>& metrics) {
    if (format == "json-like") {
        smcsim::json arr = smcsim::json::array();
        for (std::size_t i = 0; i < names.size(); ++i) {
            arr.push_back(smcsim::metrics_to_json(names[i], metrics[i]));
        }
        std::cout << arr.dump(2) << "\n";
    } else if (names.size() == 1) {
        std::cout << smcsim::metrics_to_text(names[0], metrics[0]);
    } else {
        std::cout << smcsim::metrics_table_text(names, metrics);
    }
}

int cmd_run(const std::string& scenario_path, const CommonOpts& opts) {
    smcsim::ScenarioFile sf = load(scenario_path, opts.sets);
    if (!opts.csv.empty()) sf.output.csv = opts.csv;
    if (!opts.svg.empty()) sf.output.svg = opts.svg;
    if (!opts.report.empty()) sf.output.report = opts.report;

    const smcsim::RunLog log = smcsim::run_closed_loop(sf.scenario);
    const smcsim::MetricsReport metrics = smcsim::compute_metrics(log, sf.scenario);

    if (sf.output.csv) {
        smcsim::write_text_file(resolve_output_path(*sf.output.csv), smcsim::runlog_to_csv(log));
    }
    if (sf.output.svg) {
        const std::vector<smcsim::SvgSeries> series = {{"y", &log.t, &log.y}, {"r", &log.t, &log.r}};
        smcsim::write_text_file(resolve_output_path(*sf.output.svg),
                                smcsim::svg_line_plot(sf.scenario.name, "output", series));
    }
    print_report(sf.output.report, {sf.scenario.name}, {metrics});
    return 0;
}

int cmd_compare(const std::vector<std::string>& paths, const CommonOpts& opts) {
    std::vector<smcsim::Scenario> scenarios;
    for (const std::string& p : paths) scenarios.push_back(load(p, opts.sets).scenario);

    const smcsim::ComparisonReport rep = smcsim::run_comparison(scenarios);

    if (!opts.csv.empty()) {
        const fs::path traces(resolve_output_path(opts.csv));
        smcsim::write_text_file(traces.string(), smcsim::comparison_to_csv(rep));
        bool with_observer = false;
        for (const smcsim::RunLog& log : rep.logs) with_observer = with_observer || log.has_observer;
        std::string metrics_csv = smcsim::metrics_csv_header(with_observer, "scenario") + "\n";
        for (std::size_t i = 0; i < rep.names.size(); ++i) {
            metrics_csv += smcsim::metrics_csv_row(rep.names[i], rep.metrics[i], with_observer) + "\n";
        }
        const fs::path metrics_path =
            traces.parent_path() / (traces.stem().string() + "_metrics.csv");
        smcsim::write_text_file(metrics_path.string(), metrics_csv);
    }
    if (!opts.svg.empty()) {
        const fs::path base(resolve_output_path(opts.svg));
        const fs::path stem = base.parent_path() / base.stem();
        const struct {
            const char* suffix;
            const std::vector<double> smcsim::RunLog::* series;
        } signals[] = {{"y", &smcsim::RunLog::y}, {"u", &smcsim::RunLog::u}, {"s", &smcsim::RunLog::s}};
        for (const auto& sig : signals) {
            std::vector<smcsim::SvgSeries> series;
            for (std::size_t i = 0; i < rep.logs.size(); ++i) {
                series.push_back({rep.names[i], &rep.logs[i].t, &(rep.logs[i].*sig.series)});
            }
            smcsim::write_text_file(stem.string() + "_" + sig.suffix + ".svg",
                                    smcsim::svg_line_plot(sig.suffix, sig.suffix, series));
        }
    }
    print_report(opts.report.empty() ? "text" : opts.report, rep.names, rep.metrics);
    return 0;
}

int cmd_sweep(const std::string& scenario_path, const std::string& param,
              const std::string& values_text, const CommonOpts& opts) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start < values_text.size()) {
        std::size_t comma = values_text.find(',', start);
        if (comma == std::string::npos) comma = values_text.size();
        const std::string field = values_text.substr(start, comma - start);
        if (!field.empty()) {
            std::size_t used = 0;
            const double v = std::stod(field, &used);
            if (used != field.size()) throw smcsim::ParseError("bad sweep value '" + field + "'");
            values.push_back(v);
        }
        start = comma + 1;
    }
    if (values.empty()) throw smcsim::ParseError("sweep: empty values list");

    std::vector<std::string> names;
    std::vector<smcsim::MetricsReport> metrics;
    bool with_observer = false;
    for (double v : values) {
        smcsim::json doc = smcsim::load_json_file(scenario_path);
        for (const std::string& s : opts.sets) smcsim::apply_override(doc, s);
        smcsim::set_numeric_param(doc, param, v);
        smcsim::ScenarioFile sf = smcsim::parse_scenario(doc);
        const smcsim::RunLog log = smcsim::run_closed_loop(sf.scenario);
        metrics.push_back(smcsim::compute_metrics(log, sf.scenario));
        names.push_back(param + "=" + smcsim::detail::fmt_metric(v));
        with_observer = with_observer || log.has_observer;
    }

    if (!opts.csv.empty()) {
        std::string csv = smcsim::metrics_csv_header(with_observer, param) + "\n";
        for (std::size_t i = 0; i < values.size(); ++i) {
            csv += smcsim::metrics_csv_row(smcsim::format_full(values[i]), metrics[i], with_observer) + "\n";
        }
        smcsim::write_text_file(resolve_output_path(opts.csv), csv);
    }
    print_report(opts.report.empty() ? "text" : opts.report, names, metrics);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "smcsim: sliding-mode control simulation toolkit for the torpedo depth/inclination plant.\n"
        "Exit codes: 0 success, 2 parse/schema error, 3 divergence, 4 I/O error, 5 grid mismatch.\n"
        "SMCSIM_OUT_DIR sets the directory for relative output paths."};
    app.require_subcommand(1);

    std::string scenario_path;
    std::vector<std::string> compare_paths;
    std::string sweep_param, sweep_values;
    CommonOpts run_opts, compare_opts, sweep_opts;

    CLI::App* run = app.add_subcommand("run", "Run one scenario file");
    run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    add_common(run, run_opts);

    CLI::App* compare = app.add_subcommand("compare", "Run several scenarios on a shared grid");
    compare->add_option("scenarios", compare_paths, "Scenario JSON files")->required()->expected(-1);
    add_common(compare, compare_opts);

    CLI::App* sweep = app.add_subcommand("sweep", "Sweep one numeric scenario parameter");
    sweep->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    sweep->add_option("--param", sweep_param, "Dotted parameter path, e.g. smc1.k")->required();
    sweep->add_option("--values", sweep_values, "Comma-separated values")->required();
    add_common(sweep, sweep_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(scenario_path, run_opts);
        if (compare->parsed()) return cmd_compare(compare_paths, compare_opts);
        if (sweep->parsed()) return cmd_sweep(scenario_path, sweep_param, sweep_values, sweep_opts);
    } catch (const smcsim::ParseError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitParse;
    } catch (const smcsim::DivergenceError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitDivergence;
    } catch (const smcsim::IoError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitIo;
    } catch (const smcsim::ScenarioMismatchError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitGridMismatch;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitParse;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
