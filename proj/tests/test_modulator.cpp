#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sddac/errors.hpp"
#include "sddac/modulator.hpp"

#include <cmath>
#include <limits>
#include <numeric>

using namespace sddac;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

InputSpec dc_input(double offset_delta, std::size_t n) {
  InputSpec in;
  in.amplitude_dbfs = -kInf;
  in.dc_offset = offset_delta;
  in.n_samples = n;
  return in;
}
}  // namespace

TEST_CASE("quantizer splits around zero at half delta") {
  ModulatorConfig cfg;
  CHECK(quantize(0.25, cfg) == 4);
  CHECK(quantize(-0.25, cfg) == 3);
  CHECK(quantize(0.0, cfg) == 4);  // mid-rise: zero belongs to the upper level
  CHECK(quantize(-1e-12, cfg) == 3);
  CHECK(quantize(0.999, cfg) == 4);
  CHECK(quantize(1.0, cfg) == 5);
  CHECK(quantize(-1.0, cfg) == 3);
  CHECK(quantize(-1.0000001, cfg) == 2);
}

TEST_CASE("quantizer clamps at the rails") {
  ModulatorConfig cfg;
  CHECK(quantize(1e6, cfg) == 7);
  CHECK(quantize(-1e6, cfg) == 0);
  CHECK(quantize(3.6, cfg) == 7);
  CHECK(quantize(-3.6, cfg) == 0);
  CHECK(quantize(1e300, cfg) == 7);  // far outside int range
  CHECK(quantize(-1e300, cfg) == 0);
}

TEST_CASE("quantizer codes are monotone in the input") {
  ModulatorConfig cfg;
  int prev = 0;
  for (double v = -5.0; v <= 5.0; v += 0.01) {
    const int c = quantize(v, cfg);
    REQUIRE(c >= prev);
    prev = c;
  }
  CHECK(prev == 7);
}

TEST_CASE("levels are symmetric half-integers times delta") {
  ModulatorConfig cfg;
  CHECK(quantizer_level(0, cfg) == -3.5);
  CHECK(quantizer_level(3, cfg) == -0.5);
  CHECK(quantizer_level(4, cfg) == 0.5);
  CHECK(quantizer_level(7, cfg) == 3.5);
  cfg.delta = 2.0;
  CHECK(quantizer_level(4, cfg) == 1.0);
  CHECK(cfg.full_scale() == 7.0);
}

TEST_CASE("reconstruction level feeds the quantizer and level back") {
  ModulatorConfig cfg;
  SdmState st;
  // constant x = 0.3: hand-computed two-integrator trace
  StepOut o = sdm_step(st, 0.3, cfg);
  CHECK(o.code == 4);
  CHECK(o.level == 0.5);
  CHECK(st.integ1 == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(st.integ2 == doctest::Approx(0.3).epsilon(1e-15));
  o = sdm_step(st, 0.3, cfg);
  CHECK(o.code == 3);
  CHECK(st.integ1 == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(st.integ2 == doctest::Approx(-0.1).epsilon(1e-12));
  o = sdm_step(st, 0.3, cfg);
  CHECK(o.code == 5);
  CHECK(o.level == 1.5);
  CHECK(st.integ2 == doctest::Approx(1.3).epsilon(1e-12));
}

TEST_CASE("zero input settles into the 4,3,3,4 idle pattern") {
  const InputSpec in = dc_input(0.0, 64);
  const ModulatorRun run = run_modulator(in, ModulatorConfig{});
  REQUIRE(run.codes.size() == 64);
  const int expect8[] = {4, 3, 3, 4, 4, 3, 3, 4};
  for (int i = 0; i < 8; ++i) REQUIRE(run.codes[i] == expect8[i]);
  for (std::size_t i = 0; i < 64; ++i) {
    REQUIRE((run.codes[i] == 3 || run.codes[i] == 4));
    REQUIRE(run.codes[i] == run.codes[i % 4]);  // period four
  }
  CHECK(run.saturated == 0);
}

TEST_CASE("input generator hits the requested amplitude and offset") {
  InputSpec in;
  in.amplitude_dbfs = -50.0;
  in.dc_offset = 0.25;
  in.n_samples = 65536;
  const ModulatorConfig cfg;
  const std::vector<double> x = generate_input(in, cfg);
  REQUIRE(x.size() == 65536);
  CHECK(x[0] == 0.25);  // sin(0) leaves only the offset
  const double amp = 3.5 * std::pow(10.0, -50.0 / 20.0);
  CHECK(amp == doctest::Approx(0.011067971810589328).epsilon(1e-15));
  double peak = 0.0, mean = 0.0;
  for (double v : x) {
    peak = std::max(peak, std::fabs(v - 0.25));
    mean += v;
  }
  CHECK(peak <= amp * (1 + 1e-12));
  CHECK(peak >= amp * 0.999);  // bin-30 sampling comes close to the crest
  CHECK(mean / x.size() == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("minus infinity dBFS means zero amplitude") {
  const std::vector<double> x = generate_input(dc_input(0.0, 16), ModulatorConfig{});
  for (double v : x) CHECK(v == 0.0);
}

TEST_CASE("amplitude scales 6 dB per factor of two") {
  InputSpec a, b;
  a.amplitude_dbfs = -44.0;
  b.amplitude_dbfs = -44.0 + 20.0 * std::log10(2.0);
  a.n_samples = b.n_samples = 8;
  const ModulatorConfig cfg;
  const auto xa = generate_input(a, cfg), xb = generate_input(b, cfg);
  for (std::size_t i = 0; i < 8; ++i)
    CHECK(xb[i] == doctest::Approx(2.0 * xa[i]).epsilon(1e-12));
}

TEST_CASE("input validation rejects out-of-range fields") {
  ModulatorConfig cfg;
  InputSpec in;
  in.freq_hz = 6.25e6;  // Nyquist
  CHECK_THROWS_AS(in.validate(), ConfigError);
  in.freq_hz = 0.0;
  CHECK_THROWS_AS(in.validate(), ConfigError);
  in = InputSpec{};
  in.n_samples = 0;
  CHECK_THROWS_AS(in.validate(), ConfigError);
  in = InputSpec{};
  in.sample_rate_hz = -1.0;
  CHECK_THROWS_AS(in.validate(), ConfigError);
  in = InputSpec{};
  in.amplitude_dbfs = std::nan("");
  CHECK_THROWS_AS(in.validate(), ConfigError);
  in = InputSpec{};
  in.dc_offset = kInf;
  CHECK_THROWS_AS(in.validate(), ConfigError);
  in = InputSpec{};
  CHECK_NOTHROW(in.validate());
  in.amplitude_dbfs = -kInf;  // explicitly allowed
  CHECK_NOTHROW(in.validate());

  cfg.bits = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = ModulatorConfig{};
  cfg.bits = 17;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = ModulatorConfig{};
  cfg.delta = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = ModulatorConfig{};
  cfg.instability_bound = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("positive half-delta DC pins the upper mid code") {
  const ModulatorRun run = run_modulator(dc_input(0.5, 4096), ModulatorConfig{});
  const double mean =
      std::accumulate(run.codes.begin(), run.codes.end(), 0.0) / 4096.0;
  CHECK(mean == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("loop passes DC through at unity gain") {
  for (double off : {0.3, -1.2, 2.0}) {
    const InputSpec in = dc_input(off, 8192);
    const ModulatorRun run = run_modulator(in, ModulatorConfig{});
    const double mean_level =
        std::accumulate(run.levels.begin(), run.levels.end(), 0.0) / 8192.0;
    CHECK(std::fabs(mean_level - off) < 0.01);  // within delta/100
  }
}

TEST_CASE("sine through the loop reproduces at unity gain in time average") {
  InputSpec in;
  in.amplitude_dbfs = -20.0;
  in.n_samples = 65536;
  const ModulatorConfig cfg;
  const std::vector<double> x = generate_input(in, cfg);
  const ModulatorRun run = run_modulator(in, cfg);
  // correlate output levels against the input tone: unity signal transfer
  double xx = 0.0, xy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xx += x[i] * x[i];
    xy += x[i] * run.levels[i];
  }
  CHECK(xy / xx == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("delta rescales the analog side but not the codes") {
  InputSpec in;
  in.amplitude_dbfs = -50.0;
  in.n_samples = 4096;
  ModulatorConfig c1, c2;
  c2.delta = 2.0;
  const ModulatorRun r1 = run_modulator(in, c1), r2 = run_modulator(in, c2);
  REQUIRE(r1.codes == r2.codes);
  for (std::size_t i = 0; i < 64; ++i)
    CHECK(r2.levels[i] == doctest::Approx(2.0 * r1.levels[i]).epsilon(1e-12));
}

TEST_CASE("overload drives the loop past the instability bound") {
  InputSpec in;
  in.amplitude_dbfs = 0.0;  // full-scale sine
  in.dc_offset = 0.5;
  in.n_samples = 67584;
  CHECK_THROWS_AS(run_modulator(in, ModulatorConfig{}), InstabilityError);

  // constant input above the top rail ramps the integrators without bound
  CHECK_THROWS_AS(run_modulator(dc_input(5.0, 8192), ModulatorConfig{}),
                  InstabilityError);
  try {
    run_modulator(dc_input(5.0, 8192), ModulatorConfig{});
  } catch (const InstabilityError& e) {
    CHECK(e.cycle > 0);
    CHECK(std::string(e.what()).find("cycle") != std::string::npos);
  }
}

TEST_CASE("short overload runs saturate the quantizer before diverging") {
  const ModulatorRun run = run_modulator(dc_input(5.0, 64), ModulatorConfig{});
  CHECK(run.saturated_fraction() > 0.9);
  CHECK(run.max_state_abs < 1e4);
  for (std::size_t i = 4; i < 64; ++i) REQUIRE(run.codes[i] == 7);
}

TEST_CASE("runs are pure functions of their spec") {
  InputSpec in;
  in.amplitude_dbfs = -30.0;
  in.n_samples = 16384;
  const ModulatorRun a = run_modulator(in, ModulatorConfig{});
  const ModulatorRun b = run_modulator(in, ModulatorConfig{});
  REQUIRE(a.codes == b.codes);
  REQUIRE(a.levels == b.levels);
  CHECK(a.max_state_abs == b.max_state_abs);
}
