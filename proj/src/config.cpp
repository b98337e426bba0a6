#include "gpckit/config.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "gpckit/errors.hpp"

namespace gpckit {

namespace {

using nlohmann::json;

json parse_document(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string(what) + ": invalid JSON: " + e.what());
    }
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool found = false;
        for (const char* k : known) {
            if (key == k) {
                found = true;
                break;
            }
        }
        if (!found) {
            throw ConfigError("unknown key '" + key + "' in " + where);
        }
    }
}

double require_number(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError("missing key '" + std::string(key) + "' in " + where);
    if (!obj[key].is_number()) {
        throw ConfigError("key '" + std::string(key) + "' in " + where + " must be a number");
    }
    return obj[key].get<double>();
}

double optional_number(const json& obj, const char* key, double fallback,
                       const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) {
        throw ConfigError("key '" + std::string(key) + "' in " + where + " must be a number");
    }
    return obj[key].get<double>();
}

}  // namespace

void ConfigFile::validate() const {
    converter.validate();
    gpc.validate();
    if (margin < 0.0) throw ConfigError("margin must be >= 0");
    if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

ConfigFile parse_config(const std::string& json_text) {
    const json doc = parse_document(json_text, "config");
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");
    reject_unknown_keys(doc, {"converter", "gpc", "discretization", "margin", "output_dir"},
                        "config");

    ConfigFile cfg;
    if (!doc.contains("converter") || !doc["converter"].is_object()) {
        throw ConfigError("config: missing 'converter' block");
    }
    const json& cv = doc["converter"];
    reject_unknown_keys(cv, {"vg", "vo_ref", "l", "c", "r", "fs", "duty_min", "duty_max"},
                        "converter");
    cfg.converter.vg = require_number(cv, "vg", "converter");
    cfg.converter.vo_ref = require_number(cv, "vo_ref", "converter");
    cfg.converter.l = require_number(cv, "l", "converter");
    cfg.converter.c = require_number(cv, "c", "converter");
    cfg.converter.r = require_number(cv, "r", "converter");
    cfg.converter.fs = require_number(cv, "fs", "converter");
    cfg.converter.duty_min = optional_number(cv, "duty_min", 0.1, "converter");
    cfg.converter.duty_max = optional_number(cv, "duty_max", 0.9, "converter");

    if (!doc.contains("gpc") || !doc["gpc"].is_object()) {
        throw ConfigError("config: missing 'gpc' block");
    }
    const json& gc = doc["gpc"];
    reject_unknown_keys(gc, {"horizon_p", "horizon_nu", "lambda", "delta", "delay_d"}, "gpc");
    cfg.gpc.horizon_p = static_cast<int>(require_number(gc, "horizon_p", "gpc"));
    cfg.gpc.horizon_nu = static_cast<int>(optional_number(gc, "horizon_nu", 1, "gpc"));
    cfg.gpc.lambda_weight = require_number(gc, "lambda", "gpc");
    cfg.gpc.delta_weight = optional_number(gc, "delta", 1.0, "gpc");
    cfg.gpc.delay_d = static_cast<int>(optional_number(gc, "delay_d", 0, "gpc"));

    if (doc.contains("discretization")) {
        if (!doc["discretization"].is_string()) {
            throw ConfigError("config: 'discretization' must be a string");
        }
        cfg.discretization = discretization_from_string(doc["discretization"].get<std::string>());
    }
    cfg.margin = optional_number(doc, "margin", 0.0, "config");
    if (doc.contains("output_dir")) {
        if (!doc["output_dir"].is_string()) throw ConfigError("config: 'output_dir' must be a string");
        cfg.output_dir = doc["output_dir"].get<std::string>();
    }

    try {
        cfg.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

ConfigFile load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string dump_config(const ConfigFile& cfg) {
    json doc;
    doc["converter"] = {{"vg", cfg.converter.vg},       {"vo_ref", cfg.converter.vo_ref},
                        {"l", cfg.converter.l},         {"c", cfg.converter.c},
                        {"r", cfg.converter.r},         {"fs", cfg.converter.fs},
                        {"duty_min", cfg.converter.duty_min},
                        {"duty_max", cfg.converter.duty_max}};
    doc["gpc"] = {{"horizon_p", cfg.gpc.horizon_p},
                  {"horizon_nu", cfg.gpc.horizon_nu},
                  {"lambda", cfg.gpc.lambda_weight},
                  {"delta", cfg.gpc.delta_weight},
                  {"delay_d", cfg.gpc.delay_d}};
    doc["discretization"] = to_string(cfg.discretization);
    doc["margin"] = cfg.margin;
    doc["output_dir"] = cfg.output_dir;
    return doc.dump(2) + "\n";
}

Scenario parse_scenario(const std::string& json_text) {
    const json doc = parse_document(json_text, "scenario");
    if (!doc.is_object()) throw ConfigError("scenario: top level must be an object");
    reject_unknown_keys(
        doc, {"duration", "events", "initial", "model", "substeps", "initial_ref", "note"},
        "scenario");

    Scenario scn;
    scn.duration = require_number(doc, "duration", "scenario");
    scn.substeps = static_cast<int>(optional_number(doc, "substeps", 10, "scenario"));
    if (doc.contains("initial")) {
        const std::string v = doc["initial"].get<std::string>();
        if (v == "equilibrium") {
            scn.initial = InitialCondition::kEquilibrium;
        } else if (v == "zero_state") {
            scn.initial = InitialCondition::kZeroState;
        } else {
            throw ConfigError("scenario: initial must be 'equilibrium' or 'zero_state'");
        }
    }
    if (doc.contains("model")) {
        const std::string v = doc["model"].get<std::string>();
        if (v == "averaged") {
            scn.model = SimModel::kAveraged;
        } else if (v == "switched") {
            scn.model = SimModel::kSwitched;
        } else {
            throw ConfigError("scenario: model must be 'averaged' or 'switched'");
        }
    }
    if (doc.contains("initial_ref")) {
        scn.initial_ref = require_number(doc, "initial_ref", "scenario");
    }
    if (doc.contains("note")) {
        if (!doc["note"].is_string()) throw ConfigError("scenario: 'note' must be a string");
        scn.note = doc["note"].get<std::string>();
    }
    if (doc.contains("events")) {
        if (!doc["events"].is_array()) throw ConfigError("scenario: 'events' must be an array");
        for (const auto& ev : doc["events"]) {
            if (!ev.is_object()) throw ConfigError("scenario: each event must be an object");
            reject_unknown_keys(ev, {"time", "set_horizon", "set_load", "set_ref"},
                                "scenario event");
            SimEvent se;
            se.time = require_number(ev, "time", "scenario event");
            int changes = 0;
            if (ev.contains("set_horizon")) {
                se.kind = EventKind::kSetHorizon;
                se.value = ev["set_horizon"].get<double>();
                ++changes;
            }
            if (ev.contains("set_load")) {
                se.kind = EventKind::kSetLoad;
                se.value = ev["set_load"].get<double>();
                ++changes;
            }
            if (ev.contains("set_ref")) {
                se.kind = EventKind::kSetRef;
                se.value = ev["set_ref"].get<double>();
                ++changes;
            }
            if (changes != 1) {
                throw ConfigError(
                    "scenario event: exactly one of set_horizon/set_load/set_ref required");
            }
            scn.events.push_back(se);
        }
    }
    try {
        scn.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("scenario: ") + e.what());
    }
    return scn;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("scenario: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

}  // namespace gpckit
