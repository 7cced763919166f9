#include "sddac/modulator.hpp"

#include "sddac/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace sddac {

void InputSpec::validate() const {
  if (!(sample_rate_hz > 0.0)) throw ConfigError("sample_rate_hz must be > 0");
  if (!(freq_hz > 0.0) || freq_hz >= sample_rate_hz / 2.0)
    throw ConfigError("freq_hz must lie in (0, sample_rate/2)");
  if (n_samples < 1) throw ConfigError("n_samples must be >= 1");
  if (std::isnan(amplitude_dbfs)) throw ConfigError("amplitude_dbfs is NaN");
  if (!std::isfinite(dc_offset)) throw ConfigError("dc_offset must be finite");
}

void ModulatorConfig::validate() const {
  if (bits < 1 || bits > 16) throw ConfigError("bits must be in [1, 16]");
  if (!(delta > 0.0)) throw ConfigError("delta must be > 0");
  if (!std::isfinite(a1) || !std::isfinite(a2))
    throw ConfigError("loop coefficients must be finite");
  if (!(instability_bound > 0.0)) throw ConfigError("instability_bound must be > 0");
}

std::vector<double> generate_input(const InputSpec& in, const ModulatorConfig& cfg) {
  in.validate();
  cfg.validate();
  const double amp = cfg.full_scale() * std::pow(10.0, in.amplitude_dbfs / 20.0);
  const double off = in.dc_offset * cfg.delta;
  std::vector<double> x(in.n_samples);
  const double w = 2.0 * std::numbers::pi * in.freq_hz;
  for (std::size_t n = 0; n < in.n_samples; ++n)
    x[n] = amp * std::sin(w * static_cast<double>(n) / in.sample_rate_hz) + off;
  return x;
}

int quantize(double v, const ModulatorConfig& cfg) {
  const int half = cfg.levels() / 2;
  const double idx = std::floor(v / cfg.delta);
  // clamp in double space first: a wild input must not overflow int
  double k = idx + half;
  if (k < 0.0) k = 0.0;
  const int top = cfg.max_code();
  if (k > top) k = top;
  return static_cast<int>(k);
}

double quantizer_level(int code, const ModulatorConfig& cfg) {
  return (code - cfg.max_code() / 2.0) * cfg.delta;
}

StepOut sdm_step(SdmState& st, double x, const ModulatorConfig& cfg) {
  st.integ1 += cfg.a1 * (x - st.prev_level);
  st.integ2 += cfg.a2 * (st.integ1 - st.prev_level);
  const int code = quantize(st.integ2, cfg);
  const double level = quantizer_level(code, cfg);
  st.prev_level = level;
  return {code, level};
}

ModulatorRun run_modulator(const InputSpec& in, const ModulatorConfig& cfg) {
  const std::vector<double> x = generate_input(in, cfg);
  ModulatorRun r;
  r.codes.resize(x.size());
  r.levels.resize(x.size());
  SdmState st;
  const double bound = cfg.instability_bound * cfg.delta;
  const int half = cfg.levels() / 2;
  for (std::size_t n = 0; n < x.size(); ++n) {
    const StepOut o = sdm_step(st, x[n], cfg);
    const double m = std::max(std::fabs(st.integ1), std::fabs(st.integ2));
    if (m > r.max_state_abs) r.max_state_abs = m;
    if (!(m <= bound))
      throw InstabilityError("integrator reached " + std::to_string(m) +
                                 " (bound " + std::to_string(bound) +
                                 ") at cycle " + std::to_string(n),
                             n);
    // clamped when the unsaturated index disagrees with the emitted code
    const double raw = std::floor(st.integ2 / cfg.delta) + half;
    if (raw != static_cast<double>(o.code)) ++r.saturated;
    r.codes[n] = o.code;
    r.levels[n] = o.level;
  }
  return r;
}

}  // namespace sddac
