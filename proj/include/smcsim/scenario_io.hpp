/**
 * @file scenario_io.hpp
 * @brief Scenario file loading: strict JSON schema mapping 1:1 onto Scenario,
 *        plus dotted-path overrides used by `--set` and parameter sweeps.
 *
 * Units in scenario files: time in seconds, angles in radians, depth in
 * meters, frequencies in rad/s. State vectors (x0, x_hat0) are in the
 * canonical realization coordinates of the selected channel.
 */

#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "smcsim/sim.hpp"

namespace smcsim {

using json = nlohmann::json;

/// Schema violation; the message names the offending key.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutputOptions {
    std::optional<std::string> csv;
    std::optional<std::string> svg;
    std::string report = "text";  // "text" | "json-like"
};

struct ScenarioFile {
    Scenario scenario;
    OutputOptions output;
};

namespace detail {

inline void expect_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
}

inline void reject_unknown_keys(const json& j, const std::string& where,
                                std::initializer_list<const char*> allowed) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed) {
            if (item.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) throw ParseError("unknown key '" + where + item.key() + "'");
    }
}

inline double require_number(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) throw ParseError("missing key '" + where + key + "'");
    if (!j.at(key).is_number()) throw ParseError("key '" + where + key + "' must be a number");
    return j.at(key).get<double>();
}

inline double number_or(const json& j, const std::string& where, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ParseError("key '" + where + key + "' must be a number");
    return j.at(key).get<double>();
}

inline std::string require_string(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) throw ParseError("missing key '" + where + key + "'");
    if (!j.at(key).is_string()) throw ParseError("key '" + where + key + "' must be a string");
    return j.at(key).get<std::string>();
}

inline Vec vec_or(const json& j, const std::string& where, const char* key, Vec fallback = {}) {
    if (!j.contains(key)) return fallback;
    const json& arr = j.at(key);
    if (!arr.is_array()) throw ParseError("key '" + where + key + "' must be an array");
    Vec out;
    for (const auto& v : arr) {
        if (!v.is_number()) throw ParseError("key '" + where + key + "' must hold numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

inline Disturbance parse_disturbance(const json& j, std::uint64_t scenario_seed) {
    expect_object(j, "plant.disturbance");
    reject_unknown_keys(j, "plant.disturbance.",
                        {"mode", "bound", "amplitude_fraction", "frequency", "phase", "seed"});
    Disturbance d;
    const std::string mode = require_string(j, "plant.disturbance.", "mode");
    if (mode == "none") {
        d.mode = DisturbanceMode::none;
    } else if (mode == "sinusoid") {
        d.mode = DisturbanceMode::sinusoid;
    } else if (mode == "noise") {
        d.mode = DisturbanceMode::noise;
    } else {
        throw ParseError("key 'plant.disturbance.mode' must be none|sinusoid|noise");
    }
    d.bound_M = number_or(j, "plant.disturbance.", "bound", 1.0);
    d.amplitude_fraction = number_or(j, "plant.disturbance.", "amplitude_fraction", 0.0);
    d.frequency = number_or(j, "plant.disturbance.", "frequency", 0.0);
    d.phase = number_or(j, "plant.disturbance.", "phase", 0.0);
    d.seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : scenario_seed;
    return d;
}

inline PlantConfig parse_plant(const json& j, std::uint64_t scenario_seed) {
    expect_object(j, "plant");
    reject_unknown_keys(j, "plant.", {"channel", "disturbance", "x0", "tf"});
    PlantConfig pc;
    const std::string channel = require_string(j, "plant.", "channel");
    if (channel == "immersion") {
        pc.channel = Channel::immersion;
    } else if (channel == "inclination") {
        pc.channel = Channel::inclination;
    } else {
        throw ParseError("key 'plant.channel' must be immersion|inclination");
    }
    if (j.contains("disturbance")) pc.disturbance = parse_disturbance(j.at("disturbance"), scenario_seed);
    pc.x0 = vec_or(j, "plant.", "x0");
    if (j.contains("tf")) {
        const json& tf = j.at("tf");
        expect_object(tf, "plant.tf");
        reject_unknown_keys(tf, "plant.tf.", {"gain", "zeros", "poles"});
        TfOverride ov;
        ov.gain = require_number(tf, "plant.tf.", "gain");
        ov.zeros = vec_or(tf, "plant.tf.", "zeros");
        ov.poles = vec_or(tf, "plant.tf.", "poles");
        if (ov.poles.empty()) throw ParseError("key 'plant.tf.poles' must be a non-empty array");
        pc.tf = ov;
    }
    return pc;
}

inline ControllerConfig parse_controller(const json& j) {
    expect_object(j, "controller");
    reject_unknown_keys(j, "controller.",
                        {"type", "pid", "smc1", "smc2", "twisting", "super_twisting"});
    const std::string type = require_string(j, "controller.", "type");

    auto sub = [&](const char* key) -> json {
        if (!j.contains(key)) return json::object();
        expect_object(j.at(key), std::string("controller.") + key);
        return j.at(key);
    };

    if (type == "pid") {
        const json c = sub("pid");
        reject_unknown_keys(c, "controller.pid.", {"kp", "ki", "kd", "integral_limit"});
        PidConfig cfg;
        cfg.kp = number_or(c, "controller.pid.", "kp", cfg.kp);
        cfg.ki = number_or(c, "controller.pid.", "ki", cfg.ki);
        cfg.kd = number_or(c, "controller.pid.", "kd", cfg.kd);
        cfg.integral_limit = number_or(c, "controller.pid.", "integral_limit", cfg.integral_limit);
        return cfg;
    }
    if (type == "smc1") {
        const json c = sub("smc1");
        reject_unknown_keys(c, "controller.smc1.", {"k1", "k2", "k", "eta", "boundary_layer"});
        Smc1Config cfg;
        cfg.k1 = number_or(c, "controller.smc1.", "k1", cfg.k1);
        cfg.k2 = number_or(c, "controller.smc1.", "k2", cfg.k2);
        cfg.k = number_or(c, "controller.smc1.", "k", cfg.k);
        cfg.eta = number_or(c, "controller.smc1.", "eta", cfg.eta);
        cfg.boundary_layer = number_or(c, "controller.smc1.", "boundary_layer", cfg.boundary_layer);
        return cfg;
    }
    if (type == "smc2") {
        const json c = sub("smc2");
        reject_unknown_keys(c, "controller.smc2.",
                            {"beta1", "beta2", "beta3", "k", "u_init", "u_limit"});
        Smc2Config cfg;
        cfg.beta1 = number_or(c, "controller.smc2.", "beta1", cfg.beta1);
        cfg.beta2 = number_or(c, "controller.smc2.", "beta2", cfg.beta2);
        cfg.beta3 = number_or(c, "controller.smc2.", "beta3", cfg.beta3);
        cfg.k = number_or(c, "controller.smc2.", "k", cfg.k);
        cfg.u_init = number_or(c, "controller.smc2.", "u_init", cfg.u_init);
        cfg.u_limit = number_or(c, "controller.smc2.", "u_limit", cfg.u_limit);
        return cfg;
    }
    if (type == "twisting") {
        const json c = sub("twisting");
        reject_unknown_keys(c, "controller.twisting.", {"r1", "r2", "k1", "k2"});
        TwistingConfig cfg;
        cfg.r1 = number_or(c, "controller.twisting.", "r1", cfg.r1);
        cfg.r2 = number_or(c, "controller.twisting.", "r2", cfg.r2);
        cfg.k1 = number_or(c, "controller.twisting.", "k1", cfg.k1);
        cfg.k2 = number_or(c, "controller.twisting.", "k2", cfg.k2);
        return cfg;
    }
    if (type == "super_twisting") {
        const json c = sub("super_twisting");
        reject_unknown_keys(c, "controller.super_twisting.",
                            {"alpha", "gamma", "u_limit", "k1", "k2"});
        SuperTwistConfig cfg;
        cfg.alpha = number_or(c, "controller.super_twisting.", "alpha", cfg.alpha);
        cfg.gamma = number_or(c, "controller.super_twisting.", "gamma", cfg.gamma);
        cfg.u_limit = number_or(c, "controller.super_twisting.", "u_limit", cfg.u_limit);
        cfg.k1 = number_or(c, "controller.super_twisting.", "k1", cfg.k1);
        cfg.k2 = number_or(c, "controller.super_twisting.", "k2", cfg.k2);
        return cfg;
    }
    throw ParseError("key 'controller.type' must be pid|smc1|smc2|twisting|super_twisting");
}

inline ObserverConfig parse_observer(const json& j) {
    expect_object(j, "observer");
    reject_unknown_keys(j, "observer.", {"enabled", "lambda", "x_hat0", "in_the_loop"});
    ObserverConfig oc;
    oc.enabled = j.contains("enabled") ? j.at("enabled").get<bool>() : true;
    oc.lambda = vec_or(j, "observer.", "lambda");
    oc.x_hat0 = vec_or(j, "observer.", "x_hat0");
    oc.in_the_loop = j.contains("in_the_loop") ? j.at("in_the_loop").get<bool>() : false;
    if (oc.enabled && oc.lambda.empty()) throw ParseError("missing key 'observer.lambda'");
    return oc;
}

inline Reference parse_reference(const json& j) {
    expect_object(j, "reference");
    reject_unknown_keys(j, "reference.", {"type", "amplitude", "t_on", "slope", "frequency"});
    Reference ref;
    const std::string type = require_string(j, "reference.", "type");
    if (type == "step") {
        ref.type = ReferenceType::step;
        ref.amplitude = require_number(j, "reference.", "amplitude");
        ref.t_on = number_or(j, "reference.", "t_on", 0.0);
    } else if (type == "ramp") {
        ref.type = ReferenceType::ramp;
        ref.slope = require_number(j, "reference.", "slope");
    } else if (type == "sine") {
        ref.type = ReferenceType::sine;
        ref.amplitude = require_number(j, "reference.", "amplitude");
        ref.frequency = require_number(j, "reference.", "frequency");
    } else {
        throw ParseError("key 'reference.type' must be step|ramp|sine");
    }
    return ref;
}

}  // namespace detail

namespace detail {

inline ScenarioFile parse_scenario_impl(const json& j);

}  // namespace detail

/// Parses a scenario document. Unknown keys are rejected; every schema
/// violation, including wrong JSON types, surfaces as ParseError.
inline ScenarioFile parse_scenario(const json& j) {
    try {
        return detail::parse_scenario_impl(j);
    } catch (const ParseError&) {
        throw;
    } catch (const json::exception& ex) {
        throw ParseError(std::string("scenario schema: ") + ex.what());
    }
}

namespace detail {

inline ScenarioFile parse_scenario_impl(const json& j) {
    detail::expect_object(j, "scenario");
    detail::reject_unknown_keys(j, "",
                                {"name", "description", "plant", "controller", "observer",
                                 "reference", "duration", "dt", "seed", "output"});
    ScenarioFile sf;
    Scenario& sc = sf.scenario;
    if (j.contains("name")) sc.name = j.at("name").get<std::string>();
    sc.duration = detail::require_number(j, "", "duration");
    sc.dt = detail::require_number(j, "", "dt");
    sc.seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : 0;
    if (!j.contains("plant")) throw ParseError("missing key 'plant'");
    sc.plant = detail::parse_plant(j.at("plant"), sc.seed);
    if (!j.contains("controller")) throw ParseError("missing key 'controller'");
    sc.controller = detail::parse_controller(j.at("controller"));
    if (j.contains("observer")) sc.observer = detail::parse_observer(j.at("observer"));
    if (!j.contains("reference")) throw ParseError("missing key 'reference'");
    sc.reference = detail::parse_reference(j.at("reference"));

    if (j.contains("output")) {
        const json& out = j.at("output");
        detail::expect_object(out, "output");
        detail::reject_unknown_keys(out, "output.", {"csv", "svg", "report"});
        if (out.contains("csv") && !out.at("csv").is_null()) {
            sf.output.csv = out.at("csv").get<std::string>();
        }
        if (out.contains("svg") && !out.at("svg").is_null()) {
            sf.output.svg = out.at("svg").get<std::string>();
        }
        if (out.contains("report")) sf.output.report = out.at("report").get<std::string>();
        if (sf.output.report != "text" && sf.output.report != "json-like") {
            throw ParseError("key 'output.report' must be text|json-like");
        }
    }

    try {
        sc.validate();
        if (sc.observer.enabled) {
            const TorpedoPlant plant = plant_from_config(sc.plant);
            SmObserver obs = make_observer(plant.active(), sc.observer.lambda, sc.observer.x_hat0);
            obs.validate();
        }
    } catch (const std::invalid_argument& ex) {
        throw ParseError(ex.what());
    }
    return sf;
}

}  // namespace detail

/// Resolves a dotted parameter path against the document. Paths may be given
/// relative to the root, to "controller" or to "plant" (so both
/// "controller.smc1.k" and "smc1.k" address the relay gain).
inline json* resolve_param_parent(json& j, const std::string& path, std::string& leaf) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = path.find('.', start);
        if (dot == std::string::npos) {
            parts.push_back(path.substr(start));
            break;
        }
        parts.push_back(path.substr(start, dot - start));
        start = dot + 1;
    }
    if (parts.empty() || parts.front().empty()) return nullptr;

    const std::vector<std::string> prefixes = {"", "controller", "plant"};
    for (const std::string& prefix : prefixes) {
        json* node = &j;
        if (!prefix.empty()) {
            if (!node->contains(prefix)) continue;
            node = &node->at(prefix);
        }
        if (!node->is_object() || !node->contains(parts.front())) continue;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
            if (!node->is_object() || !node->contains(parts[i])) {
                ok = false;
                break;
            }
            node = &node->at(parts[i]);
        }
        if (!ok || !node->is_object()) continue;
        leaf = parts.back();
        return node;
    }
    return nullptr;
}

/// Applies one `--set key=value` override. The value is parsed as JSON where
/// possible and treated as a bare string otherwise. The key path must name an
/// existing object; the leaf may be new (the strict parser still vets it).
inline void apply_override(json& j, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ParseError("override '" + assignment + "' is not of the form key=value");
    }
    const std::string path = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);

    std::string leaf;
    json* parent = resolve_param_parent(j, path, leaf);
    if (parent == nullptr) throw ParseError("unknown parameter path '" + path + "'");

    json value;
    try {
        value = json::parse(text);
    } catch (const json::exception&) {
        value = text;  // bare string
    }
    (*parent)[leaf] = value;
}

/// Sets a numeric parameter (sweep support). Errors if the path does not
/// address an existing numeric field.
inline void set_numeric_param(json& j, const std::string& path, double value) {
    std::string leaf;
    json* parent = resolve_param_parent(j, path, leaf);
    if (parent == nullptr || !parent->contains(leaf)) {
        throw ParseError("unknown parameter path '" + path + "'");
    }
    if (!parent->at(leaf).is_number()) {
        throw ParseError("parameter '" + path + "' is not numeric");
    }
    (*parent)[leaf] = value;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& ex) {
        throw ParseError("scenario file '" + path + "': " + ex.what());
    }
    return j;
}

inline ScenarioFile load_scenario_file(const std::string& path,
                                       const std::vector<std::string>& overrides = {}) {
    json j = load_json_file(path);
    for (const std::string& ov : overrides) apply_override(j, ov);
    return parse_scenario(j);
}

}  // namespace smcsim
