#pragma once

#include "sddac/bank.hpp"
#include "sddac/modulator.hpp"
#include "sddac/select.hpp"
#include "sddac/spectral.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sddac {

// Exactly one source must be set: preset name, gain file path, inline gains,
// or a generator spec (count > 0).
struct BankConfig {
  std::string preset;
  std::string path;
  std::vector<double> gains;
  int count = 0;
  MismatchSpec mismatch;
  ElementBank resolve() const;
};

struct AnalysisConfig {
  std::size_t n_fft = 65536;
  Window window = Window::rectangular;
  int osr = 128;
  std::size_t transient_discard = 2048;
  double overlap_fraction = 0.0;
  double tone_threshold_db = 12.0;
  // Subtract s(n)*delta (the added sequence at nominal weight) before the
  // PSD. A constant s only moves DC, which the guard absorbs anyway; for
  // seeded-random s this removes the known injected sequence so the
  // measurement sees mismatch noise, not s itself. Raw v(n) is unaffected.
  bool cancel_added_nominal = true;
  double band_edge_hz(double sample_rate_hz) const {
    return sample_rate_hz / (2.0 * osr);
  }
};

struct Scenario {
  std::string name = "scenario";
  InputSpec input;
  ModulatorConfig mod;
  Strategy strategy = Strategy::dwa;
  AddedSequenceSpec added;
  int initial_pointer = 1;
  BankConfig bank;
  AnalysisConfig analysis;
  std::uint64_t seed = 1;  // default for added/bank seeds when not given
  std::vector<double> sweep_amplitudes;  // optional [sweep] section

  // Cross-field checks; resolves the bank to verify count-vs-strategy
  // (thermometer/dwa need L elements, sadwa needs L+1).
  void validate() const;
};

// Flat sectioned key = value text. Unknown sections or keys are errors.
Scenario parse_scenario(const std::string& text, const std::string& name_hint);
Scenario load_scenario_file(const std::string& path);

// Manifest form: every field resolved, bank embedded as inline gains, so the
// output reproduces the run with no other file present.
std::string serialize_scenario(const Scenario& sc, const ElementBank& resolved_bank);

struct Preset {
  std::string name;
  std::string description;
  Scenario scenario;
};

const std::vector<Preset>& preset_catalog();
Scenario preset_scenario(const std::string& name);

std::vector<double> default_sweep_grid();  // -110..-10 in 5 dB steps, then -1

}  // namespace sddac
