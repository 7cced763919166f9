#include "sddac/pipeline.hpp"

#include "sddac/csvio.hpp"
#include "sddac/errors.hpp"
#include "sddac/modulator.hpp"
#include "sddac/svg.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>
#include <thread>

namespace sddac {

ScenarioResult run_scenario(const Scenario& sc) {
  sc.validate();
  ScenarioResult r;
  r.scenario = sc;
  r.bank = sc.bank.resolve();

  ModulatorRun mr = run_modulator(sc.input, sc.mod);
  r.max_state_abs = mr.max_state_abs;
  r.saturated_fraction = mr.saturated_fraction();
  r.codes = std::move(mr.codes);
  r.levels = std::move(mr.levels);

  const SelectorSpec sel{sc.strategy, sc.added, sc.initial_pointer};
  r.dac = run_dac(r.codes, sel, r.bank, sc.mod.delta);

  r.analyzed = r.dac.v;
  if (sc.strategy == Strategy::sadwa && sc.analysis.cancel_added_nominal) {
    const double unit = r.bank.nominal_gain * sc.mod.delta;
    for (std::size_t n = 0; n < r.analyzed.size(); ++n)
      r.analyzed[n] -= unit * r.dac.s[n];
  }

  const std::span<const double> tail(r.analyzed.data() + sc.analysis.transient_discard,
                                     r.analyzed.size() - sc.analysis.transient_discard);
  r.psd = estimate_psd(tail, sc.analysis.window, sc.analysis.n_fft,
                       sc.analysis.overlap_fraction, sc.input.sample_rate_hz);
  const double band = sc.analysis.band_edge_hz(sc.input.sample_rate_hz);
  r.sndr = compute_sndr(r.psd, sc.input.freq_hz, band);
  r.tones = detect_tones(r.psd, sc.input.freq_hz, band,
                         sc.analysis.tone_threshold_db);
  return r;
}

DrCurve run_sweep(const Scenario& base, const std::vector<double>& amplitudes,
                  int jobs) {
  if (amplitudes.empty()) throw ConfigError("amplitude list is empty");
  for (std::size_t i = 1; i < amplitudes.size(); ++i)
    if (!(amplitudes[i] > amplitudes[i - 1]))
      throw ConfigError("amplitudes must be strictly increasing");
  base.validate();

  DrCurve curve;
  curve.points.resize(amplitudes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < amplitudes.size();
         i = next.fetch_add(1)) {
      Scenario sc = base;
      sc.input.amplitude_dbfs = amplitudes[i];
      DrPoint pt;
      pt.amplitude_dbfs = amplitudes[i];
      try {
        pt.sndr_db = run_scenario(sc).sndr.sndr_db;
      } catch (const std::exception& ex) {
        pt.sndr_db = std::numeric_limits<double>::quiet_NaN();
        pt.error = ex.what();
      }
      curve.points[i] = std::move(pt);
    }
  };

  const int n = std::max(1, jobs);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n - 1; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
  }
  finish_dr_curve(curve);
  return curve;
}

std::string codes_csv(const ScenarioResult& r) {
  std::string out = "n,code,level\n";
  for (std::size_t n = 0; n < r.codes.size(); ++n)
    out += std::to_string(n) + ',' + std::to_string(r.codes[n]) + ',' +
           dstr(r.levels[n]) + '\n';
  return out;
}

std::string dac_csv(const ScenarioResult& r) {
  std::string out = "n,code,s,tau,v,e\n";
  for (std::size_t n = 0; n < r.codes.size(); ++n)
    out += std::to_string(n) + ',' + std::to_string(r.codes[n]) + ',' +
           std::to_string(r.dac.s[n]) + ',' + std::to_string(r.dac.tau[n]) +
           ',' + dstr(r.dac.v[n]) + ',' + dstr(r.dac.e[n]) + '\n';
  return out;
}

std::string psd_csv(const PsdEstimate& psd) {
  std::string out = "freq_hz,power_db\n";
  for (std::size_t k = 0; k < psd.bin_power.size(); ++k) {
    const double p = psd.bin_power[k];
    const double db = p > 0.0 ? 10.0 * std::log10(p)
                              : -std::numeric_limits<double>::infinity();
    out += dstr(k * psd.bin_width_hz) + ',' + dstr(db) + '\n';
  }
  return out;
}

std::string curve_csv(const DrCurve& curve) {
  std::string out = "amplitude_dbfs,sndr_db\n";
  for (const auto& pt : curve.points)
    out += dstr(pt.amplitude_dbfs) + ',' + dstr(pt.sndr_db) + '\n';
  return out;
}

namespace {

std::string fmt_db(double v) {
  if (!std::isfinite(v)) return dstr(v);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string scenario_report(const ScenarioResult& r) {
  const Scenario& sc = r.scenario;
  std::ostringstream o;
  o << "scenario " << sc.name << "\n";
  o << "strategy: ";
  switch (sc.strategy) {
    case Strategy::thermometer: o << "thermometer"; break;
    case Strategy::dwa: o << "dwa"; break;
    case Strategy::sadwa: o << "sadwa"; break;
  }
  o << " over " << r.bank.count() << " elements, initial pointer "
    << sc.initial_pointer << "\n";
  if (sc.strategy == Strategy::sadwa) {
    o << "added sequence: ";
    switch (sc.added.kind) {
      case AddedKind::constant_zero: o << "zero"; break;
      case AddedKind::constant_one: o << "one"; break;
      case AddedKind::periodic_01: o << "periodic_01"; break;
      case AddedKind::seeded_random: o << "seeded_random (seed "
                                       << sc.added.seed << ")"; break;
    }
    o << ", cancel_added_nominal = "
      << (sc.analysis.cancel_added_nominal ? "true" : "false") << "\n";
  }
  const BankStats bs = bank_statistics(r.bank);
  o << "bank: mean " << fmt_db(bs.mean) << ", sample std " << dstr(bs.sample_std)
    << ", max |g-1| " << dstr(bs.max_abs_error) << "\n";
  o << "input: " << dstr(sc.input.amplitude_dbfs) << " dBFS at "
    << dstr(sc.input.freq_hz) << " Hz, offset " << dstr(sc.input.dc_offset)
    << " delta, fs " << dstr(sc.input.sample_rate_hz) << " Hz, "
    << sc.input.n_samples << " samples\n";
  o << "analysis: n_fft " << sc.analysis.n_fft << ", window "
    << (sc.analysis.window == Window::rectangular ? "rectangular" : "hann")
    << ", osr " << sc.analysis.osr << ", discard "
    << sc.analysis.transient_discard << "\n";
  o << "SNDR " << fmt_db(r.sndr.sndr_db) << " dB (signal bin "
    << r.sndr.signal_bin << ", signal power " << dstr(r.sndr.signal_power)
    << ", in-band N+D " << dstr(r.sndr.inband_nd_power) << ")\n";
  o << "noise floor (median in-band bin) " << fmt_db(r.tones.noise_floor_db)
    << " dB\n";
  o << "tones: " << r.tones.tones.size() << "\n";
  for (const auto& t : r.tones.tones)
    o << "  bin " << t.bin << " at " << dstr(t.freq_hz) << " Hz, +"
      << fmt_db(t.power_db_above_floor) << " dB above floor\n";
  o << "modulator: max |state| " << dstr(r.max_state_abs)
    << ", saturated fraction " << dstr(r.saturated_fraction) << "\n";
  return o.str();
}

std::string sweep_report(const Scenario& base, const DrCurve& c) {
  std::ostringstream o;
  o << "sweep " << base.name << " (" << c.points.size() << " amplitudes)\n";
  o << "peak SNDR " << fmt_db(c.peak_sndr_db) << " dB at "
    << dstr(c.peak_amplitude_dbfs) << " dBFS\n";
  o << "SNDR = 0 crossing at " << dstr(c.zero_cross_dbfs) << " dBFS\n";
  o << "dynamic range " << fmt_db(c.dynamic_range_db) << " dB\n";
  for (const auto& pt : c.points) {
    o << "  " << dstr(pt.amplitude_dbfs) << " dBFS: " << fmt_db(pt.sndr_db)
      << " dB";
    if (!pt.error.empty()) o << "  FAILED: " << pt.error;
    o << "\n";
  }
  return o.str();
}

namespace {

void write_in(const std::string& dir, const std::string& file,
              const std::string& content) {
  atomic_write_file((std::filesystem::path(dir) / file).string(), content);
}

}  // namespace

void write_scenario_bundle(const ScenarioResult& r, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  write_in(dir, "manifest.cfg", serialize_scenario(r.scenario, r.bank));
  write_in(dir, "codes.csv", codes_csv(r));
  write_in(dir, "dac.csv", dac_csv(r));
  write_in(dir, "psd.csv", psd_csv(r.psd));
  PlotSeries ps;
  ps.label = r.scenario.name;
  for (std::size_t k = 1; k < r.psd.bin_power.size(); ++k) {
    const double p = r.psd.bin_power[k];
    ps.pts.emplace_back(k * r.psd.bin_width_hz,
                        p > 0.0 ? 10.0 * std::log10(p) : -400.0);
  }
  write_in(dir, "psd.svg",
           line_plot_svg("PSD: " + r.scenario.name, "frequency / Hz",
                         "power / dB", {ps}, true));
  write_in(dir, "report.txt", scenario_report(r));
}

void write_sweep_bundle(const Scenario& base, const ElementBank& bank,
                        const DrCurve& curve, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  Scenario manifest = base;
  if (manifest.sweep_amplitudes.empty()) {
    manifest.sweep_amplitudes.reserve(curve.points.size());
    for (const auto& pt : curve.points)
      manifest.sweep_amplitudes.push_back(pt.amplitude_dbfs);
  }
  write_in(dir, "manifest.cfg", serialize_scenario(manifest, bank));
  write_in(dir, "curve.csv", curve_csv(curve));
  PlotSeries ps;
  ps.label = base.name;
  for (const auto& pt : curve.points)
    ps.pts.emplace_back(pt.amplitude_dbfs, pt.sndr_db);
  write_in(dir, "curve.svg",
           line_plot_svg("SNDR vs amplitude: " + base.name, "amplitude / dBFS",
                         "SNDR / dB", {ps}, false));
  write_in(dir, "report.txt", sweep_report(base, curve));
}

}  // namespace sddac
