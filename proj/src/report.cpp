#include "wigner/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <vector>

#include "json.hpp"
#include "wigner/errors.hpp"
#include "wigner/numerics.hpp"
#include "wigner/transport.hpp"

namespace wigner {

namespace {

using nlohmann::json;

// Studies compare against the leading-order closed forms, which are written
// in the reference gauge with default orientation signs, so they always run
// there regardless of the configured gauge.
GaugeChoice study_gauge() { return GaugeChoice::chosen(); }

const GeodesicSegment& representative_segment(const SchemePath& path) {
  for (const auto& seg : path.segments)
    if (seg.r_start != seg.r_end) return seg;
  throw InvalidArgument(
      "study needs at least one segment with a finite radial span");
}

QuantumReport evolve_state(const ScenarioConfig& cfg, double loop_phase) {
  QuantumReport q;
  q.kind = cfg.state;
  q.m = cfg.state_m;
  q.loop_phase = loop_phase;
  switch (cfg.state) {
    case StateKind::superposition: {
      HelicityState state = HelicityState::equal_superposition();
      state = apply_wigner_phase(state, loop_phase);
      q.readout = interference_visibility(state);
      break;
    }
    case StateKind::bell_plus:
      q.fidelity =
          bell_invariance_check(MultiPhotonKind::bell_plus, loop_phase);
      break;
    case StateKind::bell_minus:
      q.fidelity =
          bell_invariance_check(MultiPhotonKind::bell_minus, loop_phase);
      break;
    case StateKind::ghz:
    case StateKind::product_qubits:
      q.relative_phase = ghz_relative_phase(cfg.state_m, loop_phase);
      break;
  }
  return q;
}

EpsilonScalingResult run_epsilon_study(const ScenarioConfig& cfg,
                                       const QuadTolerances& tol) {
  EpsilonScalingResult out;
  const GaugeChoice gauge = study_gauge();
  for (const double ratio : cfg.study->mass_ratios) {
    ScenarioConfig scaled = cfg;
    scaled.spacetime = SpacetimeParams{
        ratio * cfg.spacetime.surface_radius, cfg.spacetime.surface_radius};
    const SchemePath path = path_from_config(scaled);
    const SchemePhaseBreakdown breakdown =
        evaluate_scheme(path, gauge, scaled.scheme, tol);
    const double phase_dev =
        std::fabs(breakdown.total - breakdown.closed_form_total);

    const GeodesicSegment& seg = representative_segment(path);
    const double r_mid = 0.5 * (seg.r_start + seg.r_end);
    const Point p{0.0, r_mid, std::numbers::pi / 2.0, seg.phi0};
    const double rate_full =
        wigner_rate_numeric(scaled.spacetime, seg.consts, p, gauge);
    const double rate_lead =
        wigner_rate_perturbative(scaled.spacetime, seg.consts, r_mid);
    const double rate_dev = std::fabs(rate_full - rate_lead);

    if (!(phase_dev > 0.0) || !(rate_dev > 0.0))
      throw InvalidArgument(
          "epsilon study needs a loop whose deviations stay resolvable; got "
          "an exact zero (radial or degenerate geometry)");
    out.epsilon.push_back(std::sqrt(ratio));
    out.phase_deviation.push_back(phase_dev);
    out.rate_deviation.push_back(rate_dev);
  }

  std::vector<double> lx, ly_phase, ly_rate;
  for (size_t i = 0; i < out.epsilon.size(); ++i) {
    lx.push_back(std::log(out.epsilon[i]));
    ly_phase.push_back(std::log(out.phase_deviation[i]));
    ly_rate.push_back(std::log(out.rate_deviation[i]));
  }
  out.phase_slope = num::fit_line(lx, ly_phase).slope;
  out.rate_slope = num::fit_line(lx, ly_rate).slope;
  return out;
}

KappaSweepResult run_kappa_study(const ScenarioConfig& cfg,
                                 const SchemePath& path,
                                 const QuadTolerances& tol) {
  KappaSweepResult out;
  const GaugeChoice gauge = study_gauge();
  const GeodesicSegment& base = representative_segment(path);
  const double top =
      cfg.study->kappa_fraction_max *
      kappa_max(base.params, base.r_start, base.r_end);
  for (int i = 0; i < cfg.study->count; ++i) {
    GeodesicSegment seg = base;
    seg.consts.kappa = top * (i + 1) / cfg.study->count;
    const PhaseResult numeric = wigner_phase_numeric(seg, gauge, tol);
    const PhaseResult closed = wigner_phase_closed(seg);
    out.kappa.push_back(seg.consts.kappa);
    out.phase_numeric.push_back(numeric.phase);
    out.phase_closed.push_back(closed.phase);
    out.phase_error.push_back(numeric.error_estimate);
  }
  return out;
}

json path_to_json(const SchemePath& path) {
  json segments = json::array();
  for (const auto& seg : path.segments)
    segments.push_back({
        {"r_start_m", seg.r_start},
        {"r_end_m", seg.r_end},
        {"theta_start", seg.theta_start},
        {"kappa_m2", seg.consts.kappa},
        {"energy", seg.consts.energy},
        {"eps_r", seg.consts.eps_r},
        {"eps_theta", seg.consts.eps_theta},
    });
  json reflections = json::array();
  for (const auto& ev : path.reflections)
    reflections.push_back({
        {"r_m", ev.r},
        {"theta", ev.theta},
        {"kind", ev.kind == ReflectorKind::static_mirror
                     ? "static_mirror"
                     : "orbiting_satellite"},
        {"energy_factor", ev.energy_factor},
    });
  return {{"segments", segments},
          {"reflections", reflections},
          {"closed", path.closed}};
}

const char* template_label(SchemeTemplate t) {
  switch (t) {
    case SchemeTemplate::one_satellite: return "one_satellite";
    case SchemeTemplate::two_satellites: return "two_satellites";
    case SchemeTemplate::custom_path: return "custom_path";
  }
  throw Unreachable("scheme template out of range");
}

const char* state_label(StateKind kind) {
  switch (kind) {
    case StateKind::superposition: return "superposition";
    case StateKind::bell_plus: return "bell_plus";
    case StateKind::bell_minus: return "bell_minus";
    case StateKind::ghz: return "ghz";
    case StateKind::product_qubits: return "product_qubits";
  }
  throw Unreachable("state kind out of range");
}

std::string format17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Report run_scenario(const ScenarioConfig& cfg, std::optional<double> rel_tol) {
  QuadTolerances tol;
  if (rel_tol) {
    if (!(*rel_tol > 0.0))
      throw InvalidArgument("relative tolerance must be > 0");
    tol.rel_tol = *rel_tol;
  }

  Report report;
  report.config = cfg;
  report.path = path_from_config(cfg);
  report.breakdown =
      evaluate_scheme(report.path, gauge_from_config(cfg), cfg.scheme, tol);
  report.quantum = evolve_state(cfg, report.breakdown.total);

  if (cfg.study) {
    if (cfg.study->kind == StudySpec::Kind::epsilon_scaling)
      report.epsilon_study = run_epsilon_study(cfg, tol);
    else
      report.kappa_study = run_kappa_study(cfg, report.path, tol);
  }
  return report;
}

std::string report_json(const Report& report) {
  json root;
  root["provenance"] = {
      {"schema_version", config_schema_version},
      {"tool_version", tool_version},
  };
  root["config"] = json::parse(config_echo_json(report.config));
  root["path"] = path_to_json(report.path);

  json per_segment = json::array();
  for (const auto& res : report.breakdown.per_segment)
    per_segment.push_back({
        {"phase", res.phase},
        {"error_estimate", res.error_estimate},
    });
  json phases = {
      {"per_segment", per_segment},
      {"total", report.breakdown.total},
      {"total_error", report.breakdown.total_error},
      {"closed_form_total", report.breakdown.closed_form_total},
      {"template_total", report.breakdown.template_total},
  };
  phases["matched_template"] =
      report.breakdown.matched_template
          ? json(template_label(*report.breakdown.matched_template))
          : json(nullptr);
  root["phases"] = phases;

  json quantum = {
      {"kind", state_label(report.quantum.kind)},
      {"m", report.quantum.m},
      {"loop_phase", report.quantum.loop_phase},
  };
  if (report.quantum.readout) {
    const auto& r = *report.quantum.readout;
    quantum["readout"] = {
        {"p_plus", r.p_plus},
        {"p_minus", r.p_minus},
        {"visibility", r.visibility},
        {"extracted_phase", r.extracted_phase},
    };
  }
  if (report.quantum.fidelity) quantum["fidelity"] = *report.quantum.fidelity;
  if (report.quantum.relative_phase)
    quantum["relative_phase"] = {
        {"total", report.quantum.relative_phase->total},
        {"wrapped", report.quantum.relative_phase->wrapped},
    };
  root["quantum"] = quantum;

  if (report.epsilon_study || report.kappa_study) {
    json studies;
    if (report.epsilon_study) {
      const auto& s = *report.epsilon_study;
      studies["epsilon_scaling"] = {
          {"epsilon", s.epsilon},
          {"phase_deviation", s.phase_deviation},
          {"rate_deviation", s.rate_deviation},
          {"phase_slope", s.phase_slope},
          {"rate_slope", s.rate_slope},
      };
    }
    if (report.kappa_study) {
      const auto& s = *report.kappa_study;
      studies["kappa_sweep"] = {
          {"kappa", s.kappa},
          {"phase_numeric", s.phase_numeric},
          {"phase_closed", s.phase_closed},
          {"phase_error", s.phase_error},
      };
    }
    root["studies"] = studies;
  }
  return root.dump(2) + "\n";
}

std::string profile_csv(const GeodesicSegment& seg, const GaugeChoice& gauge,
                        int samples, std::optional<double> rel_tol) {
  QuadTolerances tol;
  if (rel_tol) {
    if (!(*rel_tol > 0.0))
      throw InvalidArgument("relative tolerance must be > 0");
    tol.rel_tol = *rel_tol;
  }
  const std::vector<Point> points = sample_segment(seg, samples);

  std::string out =
      "r,theta,wigner_rate_numeric,wigner_rate_perturbative,cumulative_phase\n";
  for (size_t i = 0; i < points.size(); ++i) {
    const Point& p = points[i];
    const double rate = wigner_rate_numeric(seg.params, seg.consts, p, gauge);
    double rate_lead = std::numeric_limits<double>::quiet_NaN();
    try {
      rate_lead = wigner_rate_perturbative(seg.params, seg.consts, p.r);
    } catch (const DegenerateKappa&) {
    }
    double cumulative = 0.0;
    if (i > 0 && p.r != seg.r_start) {
      GeodesicSegment partial = seg;
      partial.r_end = p.r;
      cumulative = wigner_phase_numeric(partial, gauge, tol).phase;
    }
    out += format17(p.r) + "," + format17(p.theta) + "," + format17(rate) +
           "," + format17(rate_lead) + "," + format17(cumulative) + "\n";
  }
  return out;
}

}  // namespace wigner
