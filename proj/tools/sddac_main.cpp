// sddac: behavioral sigma-delta DAC simulator with DWA / added-sequence DWA
// element selection and PSD / SNDR / dynamic-range analysis.
#include "CLI11.hpp"

#include "sddac/csvio.hpp"
#include "sddac/errors.hpp"
#include "sddac/pipeline.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace sddac;

std::string out_root() {
  if (const char* env = std::getenv("SDDAC_OUT_DIR"); env && *env)
    return env;
  return "results";
}

Scenario resolve_scenario(const std::string& file, const std::string& preset) {
  if (!file.empty() && !preset.empty())
    throw ConfigError("give either a scenario file or --preset, not both");
  if (!file.empty()) return load_scenario_file(file);
  if (!preset.empty()) return preset_scenario(preset);
  throw ConfigError("need a scenario file or --preset");
}

std::vector<double> parse_amp_list(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::string tok = csv.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
      throw ConfigError("bad amplitude '" + tok + "' in --amplitudes");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw ConfigError("--amplitudes is empty");
  return out;
}

int cmd_presets() {
  std::printf("scenario presets:\n");
  for (const auto& p : preset_catalog())
    std::printf("  %-14s %s\n", p.name.c_str(), p.description.c_str());
  std::printf("bank presets:\n");
  for (const auto& n : bank_preset_names()) {
    const BankStats st = bank_statistics(bank_preset(n));
    std::printf("  %-14s %d elements, sample std %s\n", n.c_str(),
                bank_preset(n).count(), dstr(st.sample_std).c_str());
  }
  return 0;
}

int cmd_simulate(const std::string& file, const std::string& preset,
                 std::string out_dir) {
  Scenario sc = resolve_scenario(file, preset);
  if (out_dir.empty())
    out_dir = (std::filesystem::path(out_root()) / sc.name).string();
  ScenarioResult r = run_scenario(sc);
  write_scenario_bundle(r, out_dir);
  std::printf("%s: SNDR %.3f dB, %zu tone(s), noise floor %.3f dB\n",
              sc.name.c_str(), r.sndr.sndr_db, r.tones.tones.size(),
              r.tones.noise_floor_db);
  std::printf("wrote %s\n", out_dir.c_str());
  return 0;
}

int cmd_sweep(const std::string& file, const std::string& preset,
              bool amps_given, const std::string& amps_csv, int jobs,
              std::string out_dir) {
  Scenario sc = resolve_scenario(file, preset);
  std::vector<double> amps;
  if (amps_given)
    amps = parse_amp_list(amps_csv);
  else if (!sc.sweep_amplitudes.empty())
    amps = sc.sweep_amplitudes;
  else
    amps = default_sweep_grid();
  if (out_dir.empty())
    out_dir =
        (std::filesystem::path(out_root()) / (sc.name + "-sweep")).string();
  const DrCurve curve = run_sweep(sc, amps, jobs);
  write_sweep_bundle(sc, sc.bank.resolve(), curve, out_dir);
  std::printf("%s: DR %.3f dB, peak %.3f dB at %s dBFS, crossing %s dBFS\n",
              sc.name.c_str(), curve.dynamic_range_db, curve.peak_sndr_db,
              dstr(curve.peak_amplitude_dbfs).c_str(),
              dstr(curve.zero_cross_dbfs).c_str());
  std::printf("wrote %s\n", out_dir.c_str());
  return 0;
}

int cmd_psd(const std::string& file, const std::string& column,
            std::size_t n_fft, const std::string& window_name, double overlap,
            double fs, double signal_freq, int osr, std::string out_path) {
  Window win;
  if (window_name == "rectangular" || window_name == "rect")
    win = Window::rectangular;
  else if (window_name == "hann")
    win = Window::hann;
  else
    throw ConfigError("unknown window '" + window_name + "'");
  const std::vector<double> samples = read_csv_column(file, column);
  const PsdEstimate psd = estimate_psd(samples, win, n_fft, overlap, fs);
  if (out_path.empty())
    out_path = (std::filesystem::path(out_root()) / "psd.csv").string();
  std::filesystem::path parent = std::filesystem::path(out_path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
    if (ec)
      throw IoError("cannot create " + parent.string() + ": " + ec.message());
  }
  atomic_write_file(out_path, psd_csv(psd));
  std::printf("%zu samples, %zu segment(s) of %zu, bin width %s Hz\n",
              samples.size(), psd.n_averages, psd.n_fft,
              dstr(psd.bin_width_hz).c_str());
  if (signal_freq > 0.0) {
    const double band = fs / (2.0 * osr);
    const SndrReport s = compute_sndr(psd, signal_freq, band);
    const ToneReport t = detect_tones(psd, signal_freq, band);
    std::printf("SNDR %.3f dB in 0..%s Hz, %zu tone(s)\n", s.sndr_db,
                dstr(band).c_str(), t.tones.size());
    for (const auto& tone : t.tones)
      std::printf("  tone at %s Hz, +%.2f dB above floor\n",
                  dstr(tone.freq_hz).c_str(), tone.power_db_above_floor);
  }
  std::printf("wrote %s\n", out_path.c_str());
  return 0;
}

int cmd_bank_gen(int count, double sigma, const std::string& dist_name,
                 std::uint64_t seed, const std::string& out_path) {
  MismatchSpec spec;
  spec.sigma = sigma;
  spec.seed = seed;
  if (dist_name == "uniform")
    spec.distribution = Distribution::uniform;
  else if (dist_name == "normal")
    spec.distribution = Distribution::normal;
  else
    throw ConfigError("unknown distribution '" + dist_name + "'");
  const ElementBank bank = generate_element_bank(count, spec);
  if (out_path.empty()) {
    std::fputs(serialize_bank(bank).c_str(), stdout);
  } else {
    save_bank_file(bank, out_path);
    std::printf("wrote %s\n", out_path.c_str());
  }
  return 0;
}

int cmd_bank_stats(const std::string& file, const std::string& preset) {
  if (!file.empty() && !preset.empty())
    throw ConfigError("give either a bank file or --preset, not both");
  ElementBank bank;
  if (!file.empty())
    bank = load_bank_file(file);
  else if (!preset.empty())
    bank = bank_preset(preset);
  else
    throw ConfigError("need a bank file or --preset");
  const BankStats st = bank_statistics(bank);
  std::printf("count %d\n", bank.count());
  std::printf("mean %s\n", dstr(st.mean).c_str());
  std::printf("sample_std %s\n", dstr(st.sample_std).c_str());
  std::printf("max_abs_error %s\n", dstr(st.max_abs_error).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"behavioral sigma-delta DAC simulator (DWA / SaDWA)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sddac 1.0.0");

  auto* presets = app.add_subcommand("presets", "list built-in scenarios and banks");

  auto* sim = app.add_subcommand("simulate", "run one scenario, write a bundle");
  std::string sim_file, sim_preset, sim_out;
  sim->add_option("scenario", sim_file, "scenario config file");
  sim->add_option("--preset", sim_preset, "built-in scenario name");
  sim->add_option("--out", sim_out, "output directory (default $SDDAC_OUT_DIR/<name>)");

  auto* swp = app.add_subcommand("sweep", "SNDR vs amplitude over a grid");
  std::string swp_file, swp_preset, swp_amps, swp_out;
  int swp_jobs = static_cast<int>(
      std::max(1u, std::thread::hardware_concurrency()));
  swp->add_option("scenario", swp_file, "scenario config file");
  swp->add_option("--preset", swp_preset, "built-in scenario name");
  swp->add_option("--amplitudes", swp_amps,
                  "comma-separated dBFS list (default: scenario grid)");
  swp->add_option("--jobs", swp_jobs, "worker threads");
  swp->add_option("--out", swp_out, "output directory");

  auto* psd = app.add_subcommand("psd", "PSD (and optional SNDR) of a CSV column");
  std::string psd_file, psd_col, psd_win = "rectangular", psd_out;
  std::size_t psd_nfft = 65536;
  double psd_overlap = 0.0, psd_fs = 12.5e6, psd_sig = 0.0;
  int psd_osr = 128;
  psd->add_option("csv", psd_file, "input CSV")->required();
  psd->add_option("--column", psd_col, "column name (default: v, or the only one)");
  psd->add_option("--n-fft", psd_nfft, "segment length (power of two)");
  psd->add_option("--window", psd_win, "rectangular | hann");
  psd->add_option("--overlap", psd_overlap, "segment overlap fraction [0,1)");
  psd->add_option("--sample-rate-hz", psd_fs, "sample rate");
  psd->add_option("--signal-freq-hz", psd_sig, "also report SNDR and tones");
  psd->add_option("--osr", psd_osr, "oversampling ratio for the band edge");
  psd->add_option("--out", psd_out, "output CSV path");

  auto* bank = app.add_subcommand("bank", "element gain banks");
  bank->require_subcommand(1);
  auto* bgen = bank->add_subcommand("gen", "generate a mismatch bank");
  int bg_count = 0;
  double bg_sigma = 0.0116;
  std::string bg_dist = "uniform", bg_out;
  std::uint64_t bg_seed = 1;
  bgen->add_option("--count", bg_count, "number of elements")->required();
  bgen->add_option("--sigma", bg_sigma, "relative gain std dev");
  bgen->add_option("--distribution", bg_dist, "uniform | normal");
  bgen->add_option("--seed", bg_seed, "generator seed");
  bgen->add_option("--out", bg_out, "output file (default: stdout)");
  auto* bstats = bank->add_subcommand("stats", "summarize a bank");
  std::string bs_file, bs_preset;
  bstats->add_option("bank", bs_file, "gain file, one per line");
  bstats->add_option("--preset", bs_preset, "built-in bank name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (presets->parsed()) return cmd_presets();
    if (sim->parsed()) return cmd_simulate(sim_file, sim_preset, sim_out);
    if (swp->parsed())
      return cmd_sweep(swp_file, swp_preset, swp->count("--amplitudes") > 0,
                       swp_amps, swp_jobs, swp_out);
    if (psd->parsed())
      return cmd_psd(psd_file, psd_col, psd_nfft, psd_win, psd_overlap,
                     psd_fs, psd_sig, psd_osr, psd_out);
    if (bank->parsed()) {
      if (bgen->parsed())
        return cmd_bank_gen(bg_count, bg_sigma, bg_dist, bg_seed, bg_out);
      if (bstats->parsed()) return cmd_bank_stats(bs_file, bs_preset);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const InstabilityError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
