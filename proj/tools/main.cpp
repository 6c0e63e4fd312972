#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "wigner/errors.hpp"
#include "wigner/report.hpp"

namespace {

int write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file: " << out_path << "\n";
    return 1;
  }
  out << text;
  if (!out) {
    std::cerr << "error: short write to " << out_path << "\n";
    return 1;
  }
  return 0;
}

const char* template_label(wigner::SchemeTemplate t) {
  switch (t) {
    case wigner::SchemeTemplate::one_satellite: return "one_satellite";
    case wigner::SchemeTemplate::two_satellites: return "two_satellites";
    case wigner::SchemeTemplate::custom_path: return "custom_path";
  }
  return "?";
}

std::string human_summary(const wigner::Report& report) {
  std::string out;
  char line[256];
  auto add = [&](const char* fmt, auto... args) {
    std::snprintf(line, sizeof line, fmt, args...);
    out += line;
  };
  const auto& b = report.breakdown;
  add("path: %zu segments, %zu reflections%s\n", report.path.segments.size(),
      report.path.reflections.size(), report.path.closed ? ", closed" : "");
  add("phase total:        % .12e rad  (quadrature error %.3e)\n", b.total,
      b.total_error);
  add("closed-form total:  % .12e rad\n", b.closed_form_total);
  if (b.matched_template)
    add("template %s: % .12e rad\n", template_label(*b.matched_template),
        b.template_total);
  const auto& q = report.quantum;
  switch (q.kind) {
    case wigner::StateKind::superposition:
      add("state superposition: p_plus %.12g, p_minus %.12g, visibility "
          "%.12g\n",
          q.readout->p_plus, q.readout->p_minus, q.readout->visibility);
      add("extracted phase:    % .12e rad (expect twice the loop phase, mod "
          "2 pi)\n",
          q.readout->extracted_phase);
      break;
    case wigner::StateKind::bell_plus:
    case wigner::StateKind::bell_minus:
      add("state bell pair: fidelity with the unrotated state %.17g\n",
          *q.fidelity);
      break;
    case wigner::StateKind::ghz:
    case wigner::StateKind::product_qubits:
      add("state %s (m = %d): branch phase % .12e rad, wrapped %.12e\n",
          q.kind == wigner::StateKind::ghz ? "ghz" : "product_qubits", q.m,
          q.relative_phase->total, q.relative_phase->wrapped);
      break;
  }
  if (report.epsilon_study)
    add("epsilon study: phase slope %.4f, rate slope %.4f over %zu masses\n",
        report.epsilon_study->phase_slope, report.epsilon_study->rate_slope,
        report.epsilon_study->epsilon.size());
  if (report.kappa_study)
    add("kappa sweep: %zu samples\n", report.kappa_study->kappa.size());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Helicity rotation of photons on closed ground-satellite-ground null "
      "paths around a spherical mass"};
  app.set_version_flag("--version", wigner::tool_version);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format = "json";
  double tolerance = 0.0;
  int segment_index = 0;
  int samples = 200;

  CLI::App* run = app.add_subcommand(
      "run", "Solve the configured loop and report phases and the state");
  run->add_option("--config", config_path, "Scenario JSON file")->required();
  run->add_option("--out", out_path, "Write output here instead of stdout");
  run->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  run->add_option("--tolerance", tolerance,
                  "Relative quadrature tolerance override")
      ->check(CLI::PositiveNumber);

  CLI::App* profile = app.add_subcommand(
      "profile", "CSV rate and phase profile along one segment");
  profile->add_option("--config", config_path, "Scenario JSON file")
      ->required();
  profile->add_option("--segment", segment_index, "Segment index, from 0")
      ->check(CLI::NonNegativeNumber);
  profile->add_option("--samples", samples, "Sample count along the segment")
      ->check(CLI::Range(2, 1000000));
  profile->add_option("--out", out_path, "Write output here instead of stdout");
  profile->add_option("--tolerance", tolerance,
                      "Relative quadrature tolerance override")
      ->check(CLI::PositiveNumber);

  CLI::App* study = app.add_subcommand(
      "study", "Run only the study block of the scenario");
  study->add_option("--config", config_path, "Scenario JSON file")->required();
  study->add_option("--out", out_path, "Write output here instead of stdout");
  study->add_option("--tolerance", tolerance,
                    "Relative quadrature tolerance override")
      ->check(CLI::PositiveNumber);

  CLI::App* validate = app.add_subcommand(
      "validate", "Parse the scenario and echo its normalized form");
  validate->add_option("--config", config_path, "Scenario JSON file")
      ->required();
  validate->add_option("--out", out_path,
                       "Write output here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const wigner::ScenarioConfig cfg = wigner::load_config(config_path);
    if (validate->parsed())
      return write_output(wigner::config_echo_json(cfg), out_path);

    std::optional<double> tol;
    if (tolerance > 0.0) tol = tolerance;

    if (profile->parsed()) {
      const wigner::SchemePath path = wigner::path_from_config(cfg);
      if (segment_index >= static_cast<int>(path.segments.size()))
        throw wigner::InvalidArgument(
            "segment index " + std::to_string(segment_index) +
            " out of range; the path has " +
            std::to_string(path.segments.size()) + " segments");
      return write_output(
          wigner::profile_csv(path.segments[segment_index],
                              wigner::gauge_from_config(cfg), samples, tol),
          out_path);
    }

    if (study->parsed() && !cfg.study)
      throw wigner::ConfigInvalid(
          "config has no study block; add one or use the run command");

    const wigner::Report report = wigner::run_scenario(cfg, tol);
    if (study->parsed()) {
      nlohmann::json full = nlohmann::json::parse(wigner::report_json(report));
      nlohmann::json trimmed = {
          {"provenance", full.at("provenance")},
          {"studies", full.at("studies")},
      };
      return write_output(trimmed.dump(2) + "\n", out_path);
    }
    const std::string text = (run->parsed() && format == "text")
                                 ? human_summary(report)
                                 : wigner::report_json(report);
    return write_output(text, out_path);
  } catch (const wigner::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
