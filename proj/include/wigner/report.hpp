#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wigner/config.hpp"
#include "wigner/quantum.hpp"

namespace wigner {

struct EpsilonScalingResult {
  std::vector<double> epsilon;
  std::vector<double> phase_deviation;  // |numeric - closed form| per epsilon
  std::vector<double> rate_deviation;   // same at the rate level
  double phase_slope = 0.0;             // log-log fit vs epsilon
  double rate_slope = 0.0;
};

struct KappaSweepResult {
  std::vector<double> kappa;
  std::vector<double> phase_numeric;
  std::vector<double> phase_closed;
  std::vector<double> phase_error;
};

struct QuantumReport {
  StateKind kind = StateKind::superposition;
  int m = 1;
  double loop_phase = 0.0;  // rotation angle fed to the state
  // superposition
  std::optional<VisibilityReadout> readout;
  // bell pairs
  std::optional<double> fidelity;
  // ghz / product
  std::optional<GhzPhase> relative_phase;
};

struct Report {
  ScenarioConfig config;
  SchemePath path;
  SchemePhaseBreakdown breakdown;
  QuantumReport quantum;
  std::optional<EpsilonScalingResult> epsilon_study;
  std::optional<KappaSweepResult> kappa_study;
};

// Solve the configured path, integrate every segment, evolve the configured
// state, and run the optional study block. rel_tol overrides the quadrature
// relative tolerance when set.
Report run_scenario(const ScenarioConfig& cfg,
                    std::optional<double> rel_tol = std::nullopt);

// Deterministic JSON rendering: sorted keys, shortest-round-trip numbers, no
// timestamps, provenance confined to its own block.
std::string report_json(const Report& report);

// Per-sample rate and cumulative-phase profile of one segment as CSV with
// header r,theta,wigner_rate_numeric,wigner_rate_perturbative,cumulative_phase
// and 17 significant digits per entry.
std::string profile_csv(const GeodesicSegment& seg, const GaugeChoice& gauge,
                        int samples,
                        std::optional<double> rel_tol = std::nullopt);

}  // namespace wigner
