#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sddac {

// A set of nominally identical unit-element gains. Dimensionless multipliers
// of the unit weight (delta); the absolute weight lives in the DAC stage.
struct ElementBank {
  std::vector<double> gains;
  double nominal_gain = 1.0;
  int count() const { return static_cast<int>(gains.size()); }
  void validate() const;  // non-empty, every gain finite and > 0
};

enum class Distribution { uniform, normal };

struct MismatchSpec {
  double sigma = 0.0;  // relative std dev (0.0116 == 1.16 %)
  Distribution distribution = Distribution::uniform;
  std::uint64_t seed = 1;
};

// i.i.d. gains around 1.0; uniform support is [1 - sqrt(3)s, 1 + sqrt(3)s]
// so the population std equals sigma. Pure function of (count, spec).
ElementBank generate_element_bank(int count, const MismatchSpec& spec);

struct BankStats {
  double mean = 0.0;
  double sample_std = 0.0;     // n-1 denominator
  double max_abs_error = 0.0;  // max |g_k - 1|
};
BankStats bank_statistics(const ElementBank& bank);

// Built-in banks: paper-bank-8 / paper-bank-7 (the reference mismatch set
// used by the fig2-* / fig4-* presets) and ideal-8 / ideal-7 (all ones).
const std::vector<std::string>& bank_preset_names();
ElementBank bank_preset(const std::string& name);

// plain text, one decimal gain per line
std::string serialize_bank(const ElementBank& bank);
ElementBank parse_bank(const std::string& text);
ElementBank load_bank_file(const std::string& path);
void save_bank_file(const ElementBank& bank, const std::string& path);

}  // namespace sddac
