#pragma once

#include "sddac/dac.hpp"
#include "sddac/scenario.hpp"

#include <string>
#include <vector>

namespace sddac {

struct ScenarioResult {
  Scenario scenario;  // as run
  ElementBank bank;
  std::vector<int> codes;
  std::vector<double> levels;
  DacOutput dac;
  std::vector<double> analyzed;  // what the PSD saw (after optional cancel)
  PsdEstimate psd;
  SndrReport sndr;
  ToneReport tones;
  double max_state_abs = 0.0;
  double saturated_fraction = 0.0;
};

ScenarioResult run_scenario(const Scenario& sc);

// One full pipeline run per amplitude. Per-point failures (e.g. instability)
// land in the point's error field as NaN SNDR; the sweep itself never throws
// for them. jobs > 1 fans points out over threads; results are ordered by
// amplitude either way.
DrCurve run_sweep(const Scenario& base, const std::vector<double>& amplitudes,
                  int jobs = 1);

// Bundle writers: manifest.cfg + CSVs + SVG + report.txt under dir.
void write_scenario_bundle(const ScenarioResult& r, const std::string& dir);
void write_sweep_bundle(const Scenario& base, const ElementBank& bank,
                        const DrCurve& curve, const std::string& dir);

std::string scenario_report(const ScenarioResult& r);
std::string sweep_report(const Scenario& base, const DrCurve& curve);

// CSV bodies (also used by the determinism tests)
std::string codes_csv(const ScenarioResult& r);
std::string dac_csv(const ScenarioResult& r);
std::string psd_csv(const PsdEstimate& psd);
std::string curve_csv(const DrCurve& curve);

}  // namespace sddac
