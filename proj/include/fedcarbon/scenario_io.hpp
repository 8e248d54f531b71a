#pragma once

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fedcarbon/error.hpp"
#include "fedcarbon/policy.hpp"
#include "fedcarbon/profiles.hpp"
#include "fedcarbon/scenarios.hpp"
#include "fedcarbon/units.hpp"

// JSON scenario files. Field names carry their unit (power_w, data_mbit,
// sleep_energy_wh...); everything is normalized to SI at parse time and
// serialized back with the canonical SI field names. A file may start from a
// named preset and override individual fields.

namespace fedcarbon {

struct ParsedScenario {
    Scenario scenario;
    std::optional<StagePlan> plan;
};

namespace detail {

/// One accepted spelling of a numeric field and the factor that takes its
/// unit to SI.
struct NumberKey {
    const char* key;
    double scale;
};

inline const double ci_kg_per_kwh_scale = ci_to_grams_per_joule(1.0);

/// Reads one JSON object, tracks which keys were consumed, and reports
/// leftovers (misspellings, unknown unit suffixes) with their path.
class ObjectReader {
public:
    ObjectReader(const nlohmann::json& j, std::string path) : j_(&j), path_(std::move(path)) {
        if (!j.is_object()) throw ConfigError(path_ + ": expected a JSON object");
    }

    bool contains(const char* key) const { return j_->contains(key); }

    const nlohmann::json& child(const char* key) {
        seen_.insert(key);
        return j_->at(key);
    }

    /// Accepts any one of the listed spellings; more than one is an error.
    bool number(std::initializer_list<NumberKey> variants, double& out) {
        const NumberKey* found = nullptr;
        for (const auto& v : variants) {
            if (!j_->contains(v.key)) continue;
            if (found)
                throw ConfigError(path_ + ": give only one of \"" + std::string(found->key) +
                                  "\" and \"" + v.key + "\"");
            found = &v;
        }
        if (!found) return false;
        seen_.insert(found->key);
        const nlohmann::json& v = j_->at(found->key);
        if (!v.is_number())
            throw ConfigError(path_ + "." + found->key + ": expected a number");
        const double raw = v.get<double>();
        if (!std::isfinite(raw))
            throw ConfigError(path_ + "." + found->key + ": expected a finite number");
        out = raw * found->scale;
        return true;
    }

    bool integer(const char* key, int& out) {
        std::int64_t wide;
        if (!integer64(key, wide)) return false;
        if (wide < std::numeric_limits<int>::min() || wide > std::numeric_limits<int>::max())
            throw ConfigError(path_ + "." + key + ": value out of range");
        out = static_cast<int>(wide);
        return true;
    }

    bool integer64(const char* key, std::int64_t& out) {
        if (!j_->contains(key)) return false;
        seen_.insert(key);
        const nlohmann::json& v = j_->at(key);
        if (!v.is_number_integer())
            throw ConfigError(path_ + "." + key + ": expected an integer");
        out = v.get<std::int64_t>();
        return true;
    }

    bool boolean(const char* key, bool& out) {
        if (!j_->contains(key)) return false;
        seen_.insert(key);
        const nlohmann::json& v = j_->at(key);
        if (!v.is_boolean()) throw ConfigError(path_ + "." + key + ": expected true or false");
        out = v.get<bool>();
        return true;
    }

    bool string(const char* key, std::string& out) {
        if (!j_->contains(key)) return false;
        seen_.insert(key);
        const nlohmann::json& v = j_->at(key);
        if (!v.is_string()) throw ConfigError(path_ + "." + key + ": expected a string");
        out = v.get<std::string>();
        return true;
    }

    /// Call last: any key not consumed is unknown.
    void finish() const {
        for (const auto& item : j_->items())
            if (!seen_.count(item.key()))
                throw ConfigError(path_ + ": unknown field \"" + item.key() + "\"");
    }

    const std::string& path() const { return path_; }

private:
    const nlohmann::json* j_;
    std::string path_;
    std::set<std::string> seen_;
};

inline void read_device(const nlohmann::json& j, const std::string& path, DeviceProfile& d) {
    ObjectReader r(j, path);
    r.number({{"power_w", 1.0}}, d.power_w);
    r.number({{"batch_time_s", 1.0}, {"batch_time_ms", 1e-3}}, d.batch_time_s);
    r.integer("batches_per_round", d.batches_per_round);
    r.number({{"sleep_energy_j", 1.0}, {"sleep_energy_wh", joules_per_wh}}, d.sleep_energy_j);
    r.number({{"carbon_intensity_g_per_j", 1.0}, {"carbon_intensity_kg_per_kwh", ci_kg_per_kwh_scale}},
             d.carbon_intensity_g_per_j);
    r.number({{"data_bits", 1.0},
              {"data_kbit", bits_per_kbit},
              {"data_mbit", bits_per_mbit},
              {"data_mb", bits_per_mb}},
             d.data_bits);
    r.integer64("examples_count", d.examples_count);
    r.finish();
}

inline void read_center(const nlohmann::json& j, const std::string& path, CenterProfile& c) {
    ObjectReader r(j, path);
    r.number({{"power_w", 1.0}}, c.power_w);
    r.number({{"batch_time_s", 1.0}, {"batch_time_ms", 1e-3}}, c.batch_time_s);
    r.integer("batches_per_round", c.batches_per_round);
    r.number({{"pue", 1.0}}, c.pue);
    r.number({{"agg_fraction", 1.0}}, c.agg_fraction);
    r.number({{"carbon_intensity_g_per_j", 1.0}, {"carbon_intensity_kg_per_kwh", ci_kg_per_kwh_scale}},
             c.carbon_intensity_g_per_j);
    r.finish();
}

inline void read_comm(const nlohmann::json& j, const std::string& path, CommProfile& c) {
    ObjectReader r(j, path);
    double v = 0.0;
    if (r.number({{"ee_ul_bits_per_j", 1.0}, {"ee_ul_kbit_per_j", bits_per_kbit}}, v))
        c.ee_ul_bits_per_j = v;
    if (r.number({{"ee_dl_bits_per_j", 1.0}, {"ee_dl_kbit_per_j", bits_per_kbit}}, v))
        c.ee_dl_bits_per_j = v;
    if (r.number({{"ee_sl_bits_per_j", 1.0}, {"ee_sl_kbit_per_j", bits_per_kbit}}, v))
        c.ee_sl_bits_per_j = v;
    r.finish();
}

inline void read_model(const nlohmann::json& j, const std::string& path, ModelSpec& m) {
    ObjectReader r(j, path);
    r.integer64("param_count", m.param_count);
    r.integer("bits_per_param", m.bits_per_param);
    double v = 0.0;
    if (r.number({{"model_bits", 1.0},
                  {"model_kbit", bits_per_kbit},
                  {"model_mbit", bits_per_mbit},
                  {"model_mb", bits_per_mb}},
                 v))
        m.model_bits_override = v;
    r.finish();
}

inline Stage read_stage(const nlohmann::json& j, const std::string& path, const Stage& base) {
    ObjectReader r(j, path);
    Stage st = base;
    r.number({{"data_bits", 1.0},
              {"data_kbit", bits_per_kbit},
              {"data_mbit", bits_per_mbit},
              {"data_mb", bits_per_mb}},
             st.data_bits);
    r.integer("rounds", st.rounds);
    std::string policy;
    if (r.string("policy", policy)) {
        try {
            st.policy = parse_policy(policy);
        } catch (const std::out_of_range& e) {
            throw ConfigError(path + ".policy: " + e.what());
        }
    }
    r.number({{"sleep_wh_per_device", 1.0}, {"sleep_j_per_device", 1.0 / joules_per_wh}},
             st.sleep_wh_per_device);
    r.number({{"peripheral_wh_per_device", 1.0}, {"peripheral_j_per_device", 1.0 / joules_per_wh}},
             st.peripheral_wh_per_device);
    r.finish();
    return st;
}

inline StagePlan read_plan(const nlohmann::json& j, const std::string& path, StagePlan plan) {
    ObjectReader r(j, path);
    if (r.contains("stages")) {
        const nlohmann::json& stages = r.child("stages");
        if (!stages.is_array()) throw ConfigError(path + ".stages: expected an array");
        plan.stages.clear();
        for (std::size_t i = 0; i < stages.size(); ++i)
            plan.stages.push_back(
                read_stage(stages[i], path + ".stages[" + std::to_string(i) + "]", Stage{}));
    }
    r.boolean("charge_peripherals", plan.charge_peripherals);
    r.number({{"retrainings_per_day", 1.0}}, plan.retrainings_per_day);
    r.finish();
    return plan;
}

}  // namespace detail

/// Parses a scenario (and optional stage plan) from JSON text. Starts from
/// the named preset if "preset" is given, then applies overrides; validates
/// everything before returning.
inline ParsedScenario parse_scenario_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    detail::ObjectReader root(j, "scenario");

    ParsedScenario out;
    std::string preset;
    if (root.string("preset", preset)) {
        try {
            CaseStudy cs = case_study_preset(preset);
            out.scenario = std::move(cs.scenario);
            out.plan = std::move(cs.plan);
        } catch (const std::out_of_range& e) {
            throw ConfigError(std::string("scenario.preset: ") + e.what());
        }
    }
    Scenario& s = out.scenario;
    root.string("name", s.name);

    std::string comm_name;
    if (root.string("comm_profile", comm_name)) {
        try {
            s.comm = builtin_comm_profile(comm_name);
        } catch (const std::out_of_range& e) {
            throw ConfigError(std::string("scenario.comm_profile: ") + e.what());
        }
    }
    if (root.contains("comm")) detail::read_comm(root.child("comm"), "scenario.comm", s.comm);
    if (root.contains("center")) detail::read_center(root.child("center"), "scenario.center", s.center);
    if (root.contains("model")) detail::read_model(root.child("model"), "scenario.model", s.model);

    const bool has_list = root.contains("devices");
    const bool has_template = root.contains("device");
    const bool has_size = root.contains("fleet_size");
    if (has_list && (has_template || has_size))
        throw ConfigError("scenario: give either \"devices\" or \"device\"/\"fleet_size\", not both");
    if (has_list) {
        const nlohmann::json& devices = root.child("devices");
        if (!devices.is_array()) throw ConfigError("scenario.devices: expected an array");
        s.devices.clear();
        for (std::size_t k = 0; k < devices.size(); ++k) {
            DeviceProfile d;
            detail::read_device(devices[k], "scenario.devices[" + std::to_string(k) + "]", d);
            s.devices.push_back(d);
        }
    } else {
        DeviceProfile base = s.devices.empty() ? DeviceProfile{} : s.devices.front();
        if (has_template) detail::read_device(root.child("device"), "scenario.device", base);
        int fleet = s.fleet_size();
        if (root.integer("fleet_size", fleet) && fleet < 1)
            throw ConfigError("scenario.fleet_size: must be >= 1");
        if (has_template || has_size)
            s.devices.assign(static_cast<std::size_t>(std::max(fleet, 0)), base);
    }

    root.integer("k_active", s.k_active);
    root.integer("neighbors", s.neighbors);
    root.number({{"alpha", 1.0}}, s.alpha);
    root.number({{"peripheral_energy_j", 1.0}, {"peripheral_energy_wh", joules_per_wh}},
                s.peripheral_energy_j);

    if (root.contains("plan"))
        out.plan = detail::read_plan(root.child("plan"), "scenario.plan", out.plan.value_or(StagePlan{}));

    root.finish();
    try {
        validate_scenario(s);
        if (out.plan) check_plan(*out.plan);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return out;
}

inline ParsedScenario parse_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

inline nlohmann::json to_json(const DeviceProfile& d) {
    nlohmann::json j;
    j["power_w"] = d.power_w;
    j["batch_time_s"] = d.batch_time_s;
    j["batches_per_round"] = d.batches_per_round;
    j["sleep_energy_j"] = d.sleep_energy_j;
    j["carbon_intensity_g_per_j"] = d.carbon_intensity_g_per_j;
    j["data_bits"] = d.data_bits;
    j["examples_count"] = d.examples_count;
    return j;
}

inline nlohmann::json to_json(const Scenario& s) {
    nlohmann::json j;
    j["name"] = s.name;
    j["devices"] = nlohmann::json::array();
    for (const auto& d : s.devices) j["devices"].push_back(to_json(d));
    nlohmann::json& c = j["center"];
    c["power_w"] = s.center.power_w;
    c["batch_time_s"] = s.center.batch_time_s;
    c["batches_per_round"] = s.center.batches_per_round;
    c["pue"] = s.center.pue;
    c["agg_fraction"] = s.center.agg_fraction;
    c["carbon_intensity_g_per_j"] = s.center.carbon_intensity_g_per_j;
    nlohmann::json& m = j["comm"];
    m = nlohmann::json::object();
    if (s.comm.ee_ul_bits_per_j) m["ee_ul_bits_per_j"] = *s.comm.ee_ul_bits_per_j;
    if (s.comm.ee_dl_bits_per_j) m["ee_dl_bits_per_j"] = *s.comm.ee_dl_bits_per_j;
    if (s.comm.ee_sl_bits_per_j) m["ee_sl_bits_per_j"] = *s.comm.ee_sl_bits_per_j;
    nlohmann::json& mo = j["model"];
    mo["param_count"] = s.model.param_count;
    mo["bits_per_param"] = s.model.bits_per_param;
    if (s.model.model_bits_override) mo["model_bits"] = *s.model.model_bits_override;
    j["k_active"] = s.k_active;
    j["neighbors"] = s.neighbors;
    j["alpha"] = s.alpha;
    j["peripheral_energy_j"] = s.peripheral_energy_j;
    return j;
}

inline nlohmann::json to_json(const StagePlan& plan) {
    nlohmann::json j;
    j["stages"] = nlohmann::json::array();
    for (const auto& st : plan.stages) {
        nlohmann::json sj;
        sj["data_bits"] = st.data_bits;
        sj["rounds"] = st.rounds;
        sj["policy"] = policy_name(st.policy);
        sj["sleep_wh_per_device"] = st.sleep_wh_per_device;
        sj["peripheral_wh_per_device"] = st.peripheral_wh_per_device;
        j["stages"].push_back(sj);
    }
    j["charge_peripherals"] = plan.charge_peripherals;
    j["retrainings_per_day"] = plan.retrainings_per_day;
    return j;
}

/// Canonical SI-unit serialization; parse_scenario_text() round-trips it.
inline std::string serialize_scenario(const Scenario& s,
                                      const std::optional<StagePlan>& plan = std::nullopt) {
    nlohmann::json j = to_json(s);
    if (plan) j["plan"] = to_json(*plan);
    return j.dump(2) + "\n";
}

}
