#include "wigner/config.hpp"

#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "wigner/errors.hpp"

namespace wigner {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigInvalid(where + ": " + what);
}

void reject_unknown_keys(const json& obj, const std::string& where,
                         const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) fail(where, "unknown key \"" + key + "\"");
}

const json& require_object(const json& parent, const std::string& where,
                           const char* key) {
  if (!parent.contains(key)) fail(where, std::string(key) + " is required");
  const json& child = parent.at(key);
  if (!child.is_object()) fail(where, std::string(key) + " must be an object");
  return child;
}

double require_number(const json& obj, const std::string& where,
                      const char* key) {
  if (!obj.contains(key)) fail(where, std::string(key) + " is required");
  if (!obj.at(key).is_number())
    fail(where, std::string(key) + " must be a number");
  return obj.at(key).get<double>();
}

double optional_number(const json& obj, const std::string& where,
                       const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number())
    fail(where, std::string(key) + " must be a number");
  return obj.at(key).get<double>();
}

int optional_sign(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) return 1;
  if (!obj.at(key).is_number_integer())
    fail(where, std::string(key) + " must be +1 or -1");
  const int v = obj.at(key).get<int>();
  if (v != 1 && v != -1) fail(where, std::string(key) + " must be +1 or -1");
  return v;
}

// Angles are JSON numbers in radians, or strings "<value> deg" / "<value>
// rad".
double parse_angle(const json& value, const std::string& where,
                   const char* key) {
  const std::string ctx = where + "." + key;
  if (value.is_number()) return value.get<double>();
  if (!value.is_string())
    fail(ctx, "must be a number (radians) or a \"<value> deg|rad\" string");
  const std::string text = value.get<std::string>();
  std::istringstream in(text);
  double magnitude = 0.0;
  std::string unit;
  if (!(in >> magnitude >> unit))
    fail(ctx, "cannot parse \"" + text + "\" as an angle");
  std::string rest;
  if (in >> rest) fail(ctx, "trailing content in \"" + text + "\"");
  if (unit == "rad") return magnitude;
  if (unit == "deg") return magnitude * (std::numbers::pi / 180.0);
  fail(ctx, "angle unit must be deg or rad, got \"" + unit + "\"");
}

double require_angle(const json& obj, const std::string& where,
                     const char* key) {
  if (!obj.contains(key)) fail(where, std::string(key) + " is required");
  return parse_angle(obj.at(key), where, key);
}

SpacetimeParams parse_spacetime(const json& root) {
  const json& st = require_object(root, "config", "spacetime");
  reject_unknown_keys(st, "spacetime",
                      {"mass_kg", "mass_geometric_m", "surface_radius_m"});
  const bool has_kg = st.contains("mass_kg");
  const bool has_m = st.contains("mass_geometric_m");
  if (has_kg == has_m)
    fail("spacetime", "exactly one of mass_kg or mass_geometric_m is required");
  const double mass = has_kg
                          ? si::geometric_mass_from_kg(
                                require_number(st, "spacetime", "mass_kg"))
                          : require_number(st, "spacetime", "mass_geometric_m");
  const double surface = require_number(st, "spacetime", "surface_radius_m");
  try {
    return SpacetimeParams{mass, surface};
  } catch (const Error& e) {
    fail("spacetime", e.what());
  }
}

GaugeKind parse_gauge_kind(const std::string& name) {
  if (name == "chosen") return GaugeKind::chosen;
  if (name == "zero") return GaugeKind::zero;
  if (name == "plus_inv_r") return GaugeKind::plus_inv_r;
  if (name == "minus_inv_r") return GaugeKind::minus_inv_r;
  fail("gauge.kind",
       "must be one of chosen, zero, plus_inv_r, minus_inv_r; got \"" + name +
           "\"");
}

StateKind parse_state_kind(const std::string& name) {
  if (name == "superposition") return StateKind::superposition;
  if (name == "bell_plus") return StateKind::bell_plus;
  if (name == "bell_minus") return StateKind::bell_minus;
  if (name == "ghz") return StateKind::ghz;
  if (name == "product_qubits") return StateKind::product_qubits;
  fail("state.kind", "unknown state kind \"" + name + "\"");
}

OneSatelliteSpec parse_one_satellite(const json& obj) {
  reject_unknown_keys(obj, "scheme.one_satellite",
                      {"r_sat_m", "theta_lab1", "theta_sat", "theta_lab2",
                       "energy_factor"});
  OneSatelliteSpec spec;
  spec.r_sat = require_number(obj, "scheme.one_satellite", "r_sat_m");
  spec.theta_lab1 = require_angle(obj, "scheme.one_satellite", "theta_lab1");
  spec.theta_sat = require_angle(obj, "scheme.one_satellite", "theta_sat");
  spec.theta_lab2 = require_angle(obj, "scheme.one_satellite", "theta_lab2");
  spec.energy_factor =
      optional_number(obj, "scheme.one_satellite", "energy_factor", 1.0);
  if (!(spec.energy_factor > 0.0))
    fail("scheme.one_satellite", "energy_factor must be > 0");
  return spec;
}

TwoSatelliteSpec parse_two_satellites(const json& obj) {
  reject_unknown_keys(obj, "scheme.two_satellites",
                      {"r_sat1_m", "r_sat2_m", "theta_lab1", "theta_sat1",
                       "theta_sat2", "theta_lab2", "energy_factor"});
  TwoSatelliteSpec spec;
  spec.r_sat1 = require_number(obj, "scheme.two_satellites", "r_sat1_m");
  spec.r_sat2 = require_number(obj, "scheme.two_satellites", "r_sat2_m");
  spec.theta_lab1 = require_angle(obj, "scheme.two_satellites", "theta_lab1");
  spec.theta_sat1 = require_angle(obj, "scheme.two_satellites", "theta_sat1");
  spec.theta_sat2 = require_angle(obj, "scheme.two_satellites", "theta_sat2");
  spec.theta_lab2 = require_angle(obj, "scheme.two_satellites", "theta_lab2");
  spec.energy_factor =
      optional_number(obj, "scheme.two_satellites", "energy_factor", 1.0);
  if (!(spec.energy_factor > 0.0))
    fail("scheme.two_satellites", "energy_factor must be > 0");
  return spec;
}

std::vector<Waypoint> parse_waypoints(const json& arr) {
  if (!arr.is_array() || arr.size() < 2)
    fail("scheme.custom_waypoints", "must be an array of >= 2 waypoints");
  std::vector<Waypoint> out;
  out.reserve(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) {
    const json& w = arr.at(i);
    const std::string where =
        "scheme.custom_waypoints[" + std::to_string(i) + "]";
    if (!w.is_object()) fail(where, "must be an object");
    reject_unknown_keys(w, where, {"r_m", "theta"});
    Waypoint wp;
    wp.r = require_number(w, where, "r_m");
    wp.theta = require_angle(w, where, "theta");
    out.push_back(wp);
  }
  return out;
}

StudySpec parse_study(const json& obj) {
  reject_unknown_keys(obj, "study",
                      {"kind", "mass_ratios", "count", "kappa_fraction_max"});
  if (!obj.contains("kind") || !obj.at("kind").is_string())
    fail("study", "kind is required and must be a string");
  const std::string kind = obj.at("kind").get<std::string>();
  StudySpec spec;
  if (kind == "epsilon_scaling") {
    spec.kind = StudySpec::Kind::epsilon_scaling;
    if (!obj.contains("mass_ratios") || !obj.at("mass_ratios").is_array() ||
        obj.at("mass_ratios").size() < 2)
      fail("study", "epsilon_scaling needs mass_ratios with >= 2 entries");
    for (const auto& v : obj.at("mass_ratios")) {
      if (!v.is_number()) fail("study.mass_ratios", "entries must be numbers");
      const double ratio = v.get<double>();
      if (!(ratio > 0.0 && ratio < 0.1))
        fail("study.mass_ratios", "entries must sit in (0, 0.1)");
      spec.mass_ratios.push_back(ratio);
    }
  } else if (kind == "kappa_sweep") {
    spec.kind = StudySpec::Kind::kappa_sweep;
    spec.count = static_cast<int>(optional_number(obj, "study", "count", 16));
    if (spec.count < 2) fail("study", "count must be >= 2");
    spec.kappa_fraction_max =
        optional_number(obj, "study", "kappa_fraction_max", 0.9);
    if (!(spec.kappa_fraction_max > 0.0 && spec.kappa_fraction_max < 1.0))
      fail("study", "kappa_fraction_max must sit in (0, 1)");
  } else {
    fail("study.kind", "must be epsilon_scaling or kappa_sweep");
  }
  return spec;
}

std::string gauge_name(GaugeKind kind) {
  switch (kind) {
    case GaugeKind::chosen: return "chosen";
    case GaugeKind::zero: return "zero";
    case GaugeKind::plus_inv_r: return "plus_inv_r";
    case GaugeKind::minus_inv_r: return "minus_inv_r";
    case GaugeKind::custom: return "custom";
  }
  throw Unreachable("gauge kind out of range");
}

std::string state_name(StateKind kind) {
  switch (kind) {
    case StateKind::superposition: return "superposition";
    case StateKind::bell_plus: return "bell_plus";
    case StateKind::bell_minus: return "bell_minus";
    case StateKind::ghz: return "ghz";
    case StateKind::product_qubits: return "product_qubits";
  }
  throw Unreachable("state kind out of range");
}

std::string template_name(SchemeTemplate t) {
  switch (t) {
    case SchemeTemplate::one_satellite: return "one_satellite";
    case SchemeTemplate::two_satellites: return "two_satellites";
    case SchemeTemplate::custom_path: return "custom_path";
  }
  throw Unreachable("scheme template out of range");
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigInvalid(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("config", "top level must be an object");
  reject_unknown_keys(root, "config",
                      {"schema_version", "spacetime", "gauge", "scheme",
                       "state", "study"});

  if (!root.contains("schema_version") ||
      !root.at("schema_version").is_number_integer())
    fail("config", "schema_version is required and must be an integer");
  if (root.at("schema_version").get<int>() != config_schema_version)
    fail("config", "schema_version must be " +
                       std::to_string(config_schema_version));

  ScenarioConfig cfg;
  cfg.spacetime = parse_spacetime(root);

  if (root.contains("gauge")) {
    const json& g = root.at("gauge");
    if (!g.is_object()) fail("gauge", "must be an object");
    reject_unknown_keys(g, "gauge", {"kind", "eta1", "eta2"});
    if (g.contains("kind")) {
      if (!g.at("kind").is_string()) fail("gauge.kind", "must be a string");
      cfg.gauge = parse_gauge_kind(g.at("kind").get<std::string>());
    }
    cfg.gauge_eta1 = optional_sign(g, "gauge", "eta1");
    cfg.gauge_eta2 = optional_sign(g, "gauge", "eta2");
  }

  const json& scheme = require_object(root, "config", "scheme");
  reject_unknown_keys(scheme, "scheme",
                      {"template", "one_satellite", "two_satellites",
                       "custom_waypoints"});
  if (!scheme.contains("template") || !scheme.at("template").is_string())
    fail("scheme", "template is required and must be a string");
  const std::string tname = scheme.at("template").get<std::string>();
  if (tname == "one_satellite") {
    cfg.scheme = SchemeTemplate::one_satellite;
    cfg.one_satellite = parse_one_satellite(
        require_object(scheme, "scheme", "one_satellite"));
  } else if (tname == "two_satellites") {
    cfg.scheme = SchemeTemplate::two_satellites;
    cfg.two_satellites = parse_two_satellites(
        require_object(scheme, "scheme", "two_satellites"));
  } else if (tname == "custom_path") {
    cfg.scheme = SchemeTemplate::custom_path;
    if (!scheme.contains("custom_waypoints"))
      fail("scheme", "custom_path needs custom_waypoints");
    cfg.custom_waypoints = parse_waypoints(scheme.at("custom_waypoints"));
  } else {
    fail("scheme.template",
         "must be one_satellite, two_satellites, or custom_path; got \"" +
             tname + "\"");
  }

  if (root.contains("state")) {
    const json& st = root.at("state");
    if (!st.is_object()) fail("state", "must be an object");
    reject_unknown_keys(st, "state", {"kind", "m"});
    if (st.contains("kind")) {
      if (!st.at("kind").is_string()) fail("state.kind", "must be a string");
      cfg.state = parse_state_kind(st.at("kind").get<std::string>());
    }
    if (st.contains("m")) {
      if (!st.at("m").is_number_integer())
        fail("state.m", "must be an integer");
      cfg.state_m = st.at("m").get<int>();
      if (cfg.state_m < 1) fail("state.m", "must be >= 1");
    }
  }

  if (root.contains("study")) {
    const json& st = root.at("study");
    if (!st.is_object()) fail("study", "must be an object");
    cfg.study = parse_study(st);
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigInvalid("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

GaugeChoice gauge_from_config(const ScenarioConfig& cfg) {
  GaugeChoice gauge;
  switch (cfg.gauge) {
    case GaugeKind::chosen: gauge = GaugeChoice::chosen(); break;
    case GaugeKind::zero: gauge = GaugeChoice::zero(); break;
    case GaugeKind::plus_inv_r: gauge = GaugeChoice::plus_inv_r(); break;
    case GaugeKind::minus_inv_r: gauge = GaugeChoice::minus_inv_r(); break;
    case GaugeKind::custom:
      throw ConfigInvalid("custom gauge functions are not configurable");
  }
  gauge.eta1 = cfg.gauge_eta1;
  gauge.eta2 = cfg.gauge_eta2;
  return gauge;
}

SchemePath path_from_config(const ScenarioConfig& cfg) {
  switch (cfg.scheme) {
    case SchemeTemplate::one_satellite: {
      const OneSatelliteSpec& s = *cfg.one_satellite;
      return make_one_satellite_path(cfg.spacetime, s.r_sat, s.theta_lab1,
                                     s.theta_sat, s.theta_lab2,
                                     s.energy_factor);
    }
    case SchemeTemplate::two_satellites: {
      const TwoSatelliteSpec& s = *cfg.two_satellites;
      return make_two_satellite_path(cfg.spacetime, s.r_sat1, s.r_sat2,
                                     s.theta_lab1, s.theta_sat1, s.theta_sat2,
                                     s.theta_lab2, s.energy_factor);
    }
    case SchemeTemplate::custom_path:
      return make_custom_path(cfg.spacetime, *cfg.custom_waypoints);
  }
  throw Unreachable("scheme template out of range");
}

std::string config_echo_json(const ScenarioConfig& cfg) {
  json root;
  root["schema_version"] = config_schema_version;
  root["spacetime"] = {
      {"mass_geometric_m", cfg.spacetime.mass},
      {"surface_radius_m", cfg.spacetime.surface_radius},
  };
  root["gauge"] = {
      {"kind", gauge_name(cfg.gauge)},
      {"eta1", cfg.gauge_eta1},
      {"eta2", cfg.gauge_eta2},
  };
  json scheme;
  scheme["template"] = template_name(cfg.scheme);
  if (cfg.one_satellite) {
    const auto& s = *cfg.one_satellite;
    scheme["one_satellite"] = {
        {"r_sat_m", s.r_sat},
        {"theta_lab1", s.theta_lab1},
        {"theta_sat", s.theta_sat},
        {"theta_lab2", s.theta_lab2},
        {"energy_factor", s.energy_factor},
    };
  }
  if (cfg.two_satellites) {
    const auto& s = *cfg.two_satellites;
    scheme["two_satellites"] = {
        {"r_sat1_m", s.r_sat1},
        {"r_sat2_m", s.r_sat2},
        {"theta_lab1", s.theta_lab1},
        {"theta_sat1", s.theta_sat1},
        {"theta_sat2", s.theta_sat2},
        {"theta_lab2", s.theta_lab2},
        {"energy_factor", s.energy_factor},
    };
  }
  if (cfg.custom_waypoints) {
    json arr = json::array();
    for (const auto& w : *cfg.custom_waypoints)
      arr.push_back({{"r_m", w.r}, {"theta", w.theta}});
    scheme["custom_waypoints"] = arr;
  }
  root["scheme"] = scheme;
  root["state"] = {
      {"kind", state_name(cfg.state)},
      {"m", cfg.state_m},
  };
  if (cfg.study) {
    json st;
    if (cfg.study->kind == StudySpec::Kind::epsilon_scaling) {
      st["kind"] = "epsilon_scaling";
      st["mass_ratios"] = cfg.study->mass_ratios;
    } else {
      st["kind"] = "kappa_sweep";
      st["count"] = cfg.study->count;
      st["kappa_fraction_max"] = cfg.study->kappa_fraction_max;
    }
    root["study"] = st;
  }
  return root.dump(2) + "\n";
}

}  // namespace wigner
