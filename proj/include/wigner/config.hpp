#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wigner/frames.hpp"
#include "wigner/schemes.hpp"

namespace wigner {

inline constexpr int config_schema_version = 1;
inline constexpr const char* tool_version = "0.1.0";

enum class StateKind { superposition, bell_plus, bell_minus, ghz, product_qubits };

struct OneSatelliteSpec {
  double r_sat = 0.0;
  double theta_lab1 = 0.0;
  double theta_sat = 0.0;
  double theta_lab2 = 0.0;
  double energy_factor = 1.0;
};

struct TwoSatelliteSpec {
  double r_sat1 = 0.0;
  double r_sat2 = 0.0;
  double theta_lab1 = 0.0;
  double theta_sat1 = 0.0;
  double theta_sat2 = 0.0;
  double theta_lab2 = 0.0;
  double energy_factor = 1.0;
};

struct StudySpec {
  enum class Kind { epsilon_scaling, kappa_sweep };
  Kind kind = Kind::epsilon_scaling;
  std::vector<double> mass_ratios;       // epsilon_scaling: synthetic M / R_E
  int count = 16;                        // kappa_sweep: sample count
  double kappa_fraction_max = 0.9;       // kappa_sweep: top of sweep / kappa_max
};

// Parsed and validated scenario. Geometry is in meters and radians; the
// parser converts SI kilograms and degree-suffixed angles at the boundary.
struct ScenarioConfig {
  SpacetimeParams spacetime{0.0, 1.0};
  GaugeKind gauge = GaugeKind::chosen;
  int gauge_eta1 = +1;
  int gauge_eta2 = +1;
  SchemeTemplate scheme = SchemeTemplate::one_satellite;
  std::optional<OneSatelliteSpec> one_satellite;
  std::optional<TwoSatelliteSpec> two_satellites;
  std::optional<std::vector<Waypoint>> custom_waypoints;
  StateKind state = StateKind::superposition;
  int state_m = 1;
  std::optional<StudySpec> study;
};

// Throw ConfigInvalid with a line-of-sight message on any violation.
ScenarioConfig parse_config_text(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);

GaugeChoice gauge_from_config(const ScenarioConfig& cfg);
SchemePath path_from_config(const ScenarioConfig& cfg);

// Deterministic normalized echo of the parsed configuration.
std::string config_echo_json(const ScenarioConfig& cfg);

}  // namespace wigner
