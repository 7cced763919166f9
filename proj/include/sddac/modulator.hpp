#pragma once

#include <cstddef>
#include <vector>

namespace sddac {

struct InputSpec {
  double amplitude_dbfs = -50.0;  // relative to peak reconstruction level
  double freq_hz = 5722.0458984375;  // bin 30 of a 2^16 record at 12.5 MHz
  double dc_offset = 0.0;            // in units of delta
  double sample_rate_hz = 12.5e6;
  std::size_t n_samples = 67584;  // 2^16 plus 2048 transient samples
  void validate() const;
};

struct ModulatorConfig {
  int bits = 3;
  double delta = 1.0;
  double a1 = 1.0;  // integrator gains; loop is i1 += a1*(x - q), i2 += a2*(i1 - q)
  double a2 = 1.0;
  double instability_bound = 1e4;  // in units of delta
  int levels() const { return 1 << bits; }
  int max_code() const { return (1 << bits) - 1; }  // L
  double full_scale() const { return max_code() * delta / 2.0; }
  void validate() const;
};

// x(n) = A sin(2 pi f n / fs) + offset*delta, A = full_scale * 10^(dbfs/20).
// amplitude_dbfs = -inf is a valid way to ask for A = 0.
std::vector<double> generate_input(const InputSpec& in, const ModulatorConfig& cfg);

// Saturating mid-rise quantizer: code = floor(v/delta) + 2^(bits-1), clamped
// to [0, L]. The two levels around zero are -delta/2 (code 3) and +delta/2
// (code 4) at bits = 3.
int quantize(double v, const ModulatorConfig& cfg);
double quantizer_level(int code, const ModulatorConfig& cfg);  // (code - L/2)*delta

// Second-order loop state. The previous cycle's reconstruction level is part
// of the state because it is what feeds back.
struct SdmState {
  double integ1 = 0.0;
  double integ2 = 0.0;
  double prev_level = 0.0;
};

struct StepOut {
  int code;
  double level;
};

// Advances the state in place: both integrators update with the previous
// level fed back, then the second integrator is quantized.
StepOut sdm_step(SdmState& state, double x, const ModulatorConfig& cfg);

struct ModulatorRun {
  std::vector<int> codes;
  std::vector<double> levels;
  double max_state_abs = 0.0;
  std::size_t saturated = 0;  // cycles where the quantizer clamped
  double saturated_fraction() const {
    return codes.empty() ? 0.0 : static_cast<double>(saturated) / codes.size();
  }
};

// Zero initial state. Throws InstabilityError (with the cycle index) when an
// integrator passes instability_bound * delta.
ModulatorRun run_modulator(const InputSpec& in, const ModulatorConfig& cfg);

}  // namespace sddac
