#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sddac/csvio.hpp"
#include "sddac/errors.hpp"
#include "sddac/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>

using namespace sddac;

namespace {

// Small, fast scenario: 4k FFT, osr 8, signal on bin 30.
std::string tiny_text(const std::string& extra = "") {
  return "name = tiny\n"
         "seed = 5\n"
         "[input]\n"
         "amplitude_dbfs = -50\n"
         "snap_to_bin = 30\n"
         "[strategy]\n"
         "kind = dwa\n"
         "[bank]\n"
         "preset = paper-bank-7\n"
         "[analysis]\n"
         "n_fft = 4096\n"
         "osr = 8\n"
         "transient_discard = 256\n" +
         extra;
}

Scenario tiny() { return parse_scenario(tiny_text(), "tiny"); }

}  // namespace

TEST_CASE("parsing fills defaults and derived fields") {
  const Scenario sc = tiny();
  CHECK(sc.name == "tiny");
  CHECK(sc.seed == 5);
  CHECK(sc.added.seed == 5);           // top-level seed flows down
  CHECK(sc.bank.mismatch.seed == 5);
  CHECK(sc.input.freq_hz == doctest::Approx(30.0 * 12.5e6 / 4096).epsilon(1e-15));
  CHECK(sc.input.n_samples == 4096 + 256);  // n_fft + discard when absent
  CHECK(sc.strategy == Strategy::dwa);
  CHECK(sc.analysis.osr == 8);
  CHECK_NOTHROW(sc.validate());
}

TEST_CASE("explicit seeds win over the top-level one") {
  const Scenario sc = parse_scenario(
      tiny_text("[strategy]\nadded_seed = 9\n[bank]\nseed = 11\n"), "t");
  CHECK(sc.seed == 5);
  CHECK(sc.added.seed == 9);
  CHECK(sc.bank.mismatch.seed == 11);
}

TEST_CASE("serialize/parse is a fixed point") {
  const Scenario sc = tiny();
  const ElementBank bank = sc.bank.resolve();
  const std::string once = serialize_scenario(sc, bank);
  const Scenario back = parse_scenario(once, sc.name);
  CHECK(back.bank.preset.empty());  // manifest embeds gains inline
  REQUIRE(back.bank.gains == bank.gains);
  const std::string twice = serialize_scenario(back, back.bank.resolve());
  CHECK(once == twice);
}

TEST_CASE("unknown sections and keys are named with their line") {
  CHECK_THROWS_WITH_AS(parse_scenario("[nope]\nx = 1\n", "t"),
                       doctest::Contains("unknown section"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_scenario("[input]\nfrequency = 3\n", "t"),
                       doctest::Contains("input.frequency"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_scenario("[input]\nfrequency = 3\n", "t"),
                       doctest::Contains("line 2"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("just some text\n", "t"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[input\nx = 1\n", "t"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[input]\namplitude_dbfs =\n", "t"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[input]\namplitude_dbfs = abc\n", "t"),
                  ConfigError);
  CHECK_THROWS_AS(parse_scenario("seed = -4\n", "t"), ConfigError);
}

TEST_CASE("comments and blank lines are ignored") {
  const Scenario sc = parse_scenario(
      "# a comment\n\nname = c\n   # indented comment\n[input]\n"
      "amplitude_dbfs = -30\n\n", "x");
  CHECK(sc.name == "c");
  CHECK(sc.input.amplitude_dbfs == -30.0);
}

TEST_CASE("snap_to_bin and freq_hz cannot both be set") {
  CHECK_THROWS_WITH_AS(
      parse_scenario("[input]\nfreq_hz = 100\nsnap_to_bin = 30\n", "t"),
      doctest::Contains("mutually exclusive"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[input]\nsnap_to_bin = 0\n", "t"), ConfigError);
}

TEST_CASE("bank sources resolve singly and reject combinations") {
  BankConfig bc;
  CHECK_THROWS_AS(bc.resolve(), ConfigError);
  bc.preset = "ideal-7";
  CHECK(bc.resolve().count() == 7);
  bc.gains = {1.0, 1.0};
  CHECK_THROWS_WITH_AS(bc.resolve(), doctest::Contains("mutually exclusive"),
                       ConfigError);
  bc = BankConfig{};
  bc.gains = {1.01, 0.99};
  CHECK(bc.resolve().gains == std::vector<double>{1.01, 0.99});
  bc = BankConfig{};
  bc.count = 8;
  bc.mismatch.sigma = 0.0116;
  bc.mismatch.seed = 3;
  const ElementBank g = bc.resolve();
  CHECK(g.count() == 8);
  CHECK(g.gains == generate_element_bank(8, bc.mismatch).gains);

  const auto dir = std::filesystem::temp_directory_path() / "sddac-test-pipe";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "b.txt").string();
  save_bank_file(bank_preset("paper-bank-8"), path);
  bc = BankConfig{};
  bc.path = path;
  CHECK(bc.resolve().gains == bank_preset("paper-bank-8").gains);
  std::filesystem::remove_all(dir);
}

TEST_CASE("element count must match the strategy") {
  Scenario sc = tiny();
  sc.strategy = Strategy::sadwa;  // needs 8, bank preset has 7
  CHECK_THROWS_WITH_AS(sc.validate(), doctest::Contains("8 elements"),
                       ConfigError);
  sc.bank.preset = "paper-bank-8";
  CHECK_NOTHROW(sc.validate());
  sc.strategy = Strategy::dwa;  // needs 7, bank has 8
  CHECK_THROWS_AS(sc.validate(), ConfigError);
}

TEST_CASE("cross-field validation catches bad combinations") {
  Scenario sc = tiny();
  sc.input.freq_hz = 1e6;  // past the osr-8 band edge of 781250 Hz
  CHECK_THROWS_AS(sc.validate(), ConfigError);
  sc = tiny();
  sc.input.n_samples = 1000;  // < discard + n_fft
  CHECK_THROWS_AS(sc.validate(), ConfigError);
  sc = tiny();
  sc.analysis.n_fft = 3000;
  CHECK_THROWS_AS(sc.validate(), ConfigError);
  sc = tiny();
  sc.initial_pointer = 8;  // 7-element bank
  CHECK_THROWS_AS(sc.validate(), ConfigError);
  sc = tiny();
  sc.sweep_amplitudes = {-20.0, -20.0};
  CHECK_THROWS_AS(sc.validate(), ConfigError);
}

TEST_CASE("all built-in scenarios validate and catalog names are stable") {
  const auto& cat = preset_catalog();
  for (const auto& p : cat) {
    CHECK_NOTHROW(p.scenario.validate());
    CHECK(preset_scenario(p.name).name == p.name);
  }
  for (const char* name :
       {"fig2-ideal", "fig2-top", "fig2-mid", "fig2-bottom", "sadwa-random",
        "fig4-a", "fig4-b", "fig4-c", "fig4-d"}) {
    bool found = false;
    for (const auto& p : cat) found = found || p.name == name;
    CHECK_MESSAGE(found, name);
  }
  CHECK_THROWS_WITH_AS(preset_scenario("fig9-z"),
                       doctest::Contains("unknown preset"), ConfigError);
}

TEST_CASE("scenario runs are deterministic") {
  const Scenario sc = tiny();
  const ScenarioResult a = run_scenario(sc);
  const ScenarioResult b = run_scenario(sc);
  REQUIRE(a.codes == b.codes);
  REQUIRE(a.dac.v == b.dac.v);
  REQUIRE(a.psd.bin_power == b.psd.bin_power);
  CHECK(a.sndr.sndr_db == b.sndr.sndr_db);
  CHECK(codes_csv(a) == codes_csv(b));
  CHECK(dac_csv(a) == dac_csv(b));
  CHECK(psd_csv(a.psd) == psd_csv(b.psd));
}

TEST_CASE("cancellation only touches the analyzed track, and only for sadwa") {
  Scenario sc = tiny();
  sc.strategy = Strategy::sadwa;
  sc.bank.preset = "paper-bank-8";
  sc.added.kind = AddedKind::seeded_random;
  const ScenarioResult with = run_scenario(sc);
  Scenario raw = sc;
  raw.analysis.cancel_added_nominal = false;
  const ScenarioResult without = run_scenario(raw);
  REQUIRE(with.dac.v == without.dac.v);  // the DAC output is untouched
  bool any_diff = false;
  for (std::size_t n = 0; n < with.analyzed.size(); ++n) {
    const double want = with.dac.v[n] - 1.0 * with.dac.s[n];
    REQUIRE(with.analyzed[n] == want);
    any_diff = any_diff || with.analyzed[n] != without.analyzed[n];
  }
  CHECK(any_diff);
  CHECK(without.analyzed == without.dac.v);

  // dwa never has anything to cancel
  const ScenarioResult d = run_scenario(tiny());
  CHECK(d.analyzed == d.dac.v);
}

TEST_CASE("sweeps order points by amplitude regardless of thread count") {
  Scenario sc = tiny();
  const std::vector<double> amps = {-90, -70, -50, -35, -20, -10};
  const DrCurve c1 = run_sweep(sc, amps, 1);
  const DrCurve c8 = run_sweep(sc, amps, 8);
  REQUIRE(c1.points.size() == amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    CHECK(c1.points[i].amplitude_dbfs == amps[i]);
    REQUIRE(c1.points[i].sndr_db == c8.points[i].sndr_db);
  }
  CHECK(curve_csv(c1) == curve_csv(c8));
  CHECK(c1.dynamic_range_db == c8.dynamic_range_db);
}

TEST_CASE("a failing sweep point is recorded, not fatal") {
  Scenario sc = tiny();
  const DrCurve c = run_sweep(sc, {-50.0, 40.0}, 2);
  REQUIRE(c.points.size() == 2);
  CHECK(std::isfinite(c.points[0].sndr_db));
  CHECK(c.points[0].error.empty());
  CHECK(std::isnan(c.points[1].sndr_db));  // +40 dBFS overloads the loop
  CHECK(!c.points[1].error.empty());
  CHECK(c.points[1].error.find("cycle") != std::string::npos);
}

TEST_CASE("sweep amplitude lists are validated") {
  const Scenario sc = tiny();
  CHECK_THROWS_AS(run_sweep(sc, {}, 1), ConfigError);
  CHECK_THROWS_AS(run_sweep(sc, {-20.0, -20.0}, 1), ConfigError);
  CHECK_THROWS_AS(run_sweep(sc, {-20.0, -30.0}, 1), ConfigError);
}

TEST_CASE("default sweep grid spans -110 to -1") {
  const std::vector<double> g = default_sweep_grid();
  REQUIRE(g.size() == 22);
  CHECK(g.front() == -110.0);
  CHECK(g[20] == -10.0);
  CHECK(g.back() == -1.0);
  for (std::size_t i = 0; i + 2 < g.size(); ++i)
    CHECK(g[i + 1] - g[i] == 5.0);
}

TEST_CASE("manifests reproduce their run exactly") {
  Scenario sc = preset_scenario("fig2-top");
  // shrink for speed but keep the full path: parse -> run -> serialize -> rerun
  sc.analysis.n_fft = 4096;
  sc.analysis.osr = 8;
  sc.analysis.transient_discard = 256;
  sc.input.n_samples = 4352;
  sc.input.freq_hz = 30.0 * 12.5e6 / 4096;
  const ScenarioResult first = run_scenario(sc);
  const std::string manifest = serialize_scenario(sc, first.bank);
  const Scenario back = parse_scenario(manifest, sc.name);
  const ScenarioResult second = run_scenario(back);
  REQUIRE(codes_csv(first) == codes_csv(second));
  REQUIRE(dac_csv(first) == dac_csv(second));
  REQUIRE(psd_csv(first.psd) == psd_csv(second.psd));
  CHECK(first.sndr.sndr_db == second.sndr.sndr_db);
}

TEST_CASE("bundles land on disk and rewrite byte-identically") {
  const auto dir = std::filesystem::temp_directory_path() / "sddac-test-bundle";
  std::filesystem::remove_all(dir);
  const ScenarioResult r = run_scenario(tiny());
  write_scenario_bundle(r, dir.string());
  for (const char* f :
       {"manifest.cfg", "codes.csv", "dac.csv", "psd.csv", "psd.svg", "report.txt"})
    CHECK_MESSAGE(std::filesystem::exists(dir / f), f);
  const std::string psd1 = read_file((dir / "psd.csv").string());
  write_scenario_bundle(r, dir.string());
  CHECK(read_file((dir / "psd.csv").string()) == psd1);
  // no temp files left behind by the atomic writes
  for (const auto& e : std::filesystem::directory_iterator(dir))
    CHECK(e.path().filename().string().find(".tmp-") == std::string::npos);

  const Scenario base = tiny();
  const DrCurve c = run_sweep(base, {-60, -40, -20}, 2);
  write_sweep_bundle(base, base.bank.resolve(), c, (dir / "sweep").string());
  for (const char* f : {"manifest.cfg", "curve.csv", "curve.svg", "report.txt"})
    CHECK_MESSAGE(std::filesystem::exists(dir / "sweep" / f), f);
  // the sweep manifest remembers its grid
  const Scenario back =
      parse_scenario(read_file((dir / "sweep" / "manifest.cfg").string()), "x");
  CHECK(back.sweep_amplitudes == std::vector<double>{-60, -40, -20});
  std::filesystem::remove_all(dir);
}

TEST_CASE("csv bodies carry the expected headers and shapes") {
  Scenario sc = tiny();
  sc.input.n_samples = 4352;
  const ScenarioResult r = run_scenario(sc);
  const std::string codes = codes_csv(r);
  CHECK(codes.substr(0, codes.find('\n')) == "n,code,level");
  const std::string dac = dac_csv(r);
  CHECK(dac.substr(0, dac.find('\n')) == "n,code,s,tau,v,e");
  const std::string psd = psd_csv(r.psd);
  CHECK(psd.substr(0, psd.find('\n')) == "freq_hz,power_db");
  CHECK(std::count(codes.begin(), codes.end(), '\n') == 4353);
  CHECK(std::count(psd.begin(), psd.end(), '\n') == 2050);  // 4096/2 + 1 bins

  DrCurve c;
  c.points = {{-50.0, 41.5, ""},
              {-10.0, std::numeric_limits<double>::quiet_NaN(), "boom"}};
  const std::string curve = curve_csv(c);
  CHECK(curve == "amplitude_dbfs,sndr_db\n-50,41.5\n-10,nan\n");
}
