#include "sddac/scenario.hpp"

#include "sddac/csvio.hpp"
#include "sddac/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>

namespace sddac {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw ConfigError(key + ": not a number: '" + v + "'");
  return x;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0' || v.find('-') != std::string::npos)
    throw ConfigError(key + ": not an unsigned integer: '" + v + "'");
  return x;
}

std::size_t to_index(const std::string& key, const std::string& v) {
  return static_cast<std::size_t>(to_u64(key, v));
}

int to_int(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    throw ConfigError(key + ": not an integer: '" + v + "'");
  return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": not a boolean: '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::istringstream is(v);
  std::string tok;
  while (is >> tok) out.push_back(to_double(key, tok));
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

Window to_window(const std::string& key, const std::string& v) {
  if (v == "rectangular" || v == "rect") return Window::rectangular;
  if (v == "hann") return Window::hann;
  throw ConfigError(key + ": unknown window '" + v + "'");
}

Strategy to_strategy(const std::string& key, const std::string& v) {
  if (v == "thermometer") return Strategy::thermometer;
  if (v == "dwa") return Strategy::dwa;
  if (v == "sadwa") return Strategy::sadwa;
  throw ConfigError(key + ": unknown strategy '" + v + "'");
}

AddedKind to_added(const std::string& key, const std::string& v) {
  if (v == "zero" || v == "constant_zero") return AddedKind::constant_zero;
  if (v == "one" || v == "constant_one") return AddedKind::constant_one;
  if (v == "periodic_01" || v == "periodic") return AddedKind::periodic_01;
  if (v == "seeded_random" || v == "random") return AddedKind::seeded_random;
  throw ConfigError(key + ": unknown added-sequence kind '" + v + "'");
}

Distribution to_distribution(const std::string& key, const std::string& v) {
  if (v == "uniform") return Distribution::uniform;
  if (v == "normal") return Distribution::normal;
  throw ConfigError(key + ": unknown distribution '" + v + "'");
}

const char* window_name(Window w) {
  return w == Window::rectangular ? "rectangular" : "hann";
}

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::thermometer: return "thermometer";
    case Strategy::dwa: return "dwa";
    case Strategy::sadwa: return "sadwa";
  }
  return "?";
}

const char* added_name(AddedKind k) {
  switch (k) {
    case AddedKind::constant_zero: return "zero";
    case AddedKind::constant_one: return "one";
    case AddedKind::periodic_01: return "periodic_01";
    case AddedKind::seeded_random: return "seeded_random";
  }
  return "?";
}

}  // namespace

ElementBank BankConfig::resolve() const {
  int sources = 0;
  if (!preset.empty()) ++sources;
  if (!path.empty()) ++sources;
  if (!gains.empty()) ++sources;
  if (count > 0) ++sources;
  if (sources == 0)
    throw ConfigError("bank: set one of preset, path, gains, or count+sigma");
  if (sources > 1)
    throw ConfigError("bank: preset, path, gains, and count are mutually exclusive");
  if (!preset.empty()) return bank_preset(preset);
  if (!path.empty()) return load_bank_file(path);
  if (!gains.empty()) {
    ElementBank b;
    b.gains = gains;
    b.validate();
    return b;
  }
  return generate_element_bank(count, mismatch);
}

void Scenario::validate() const {
  input.validate();
  mod.validate();
  if (initial_pointer < 1) throw ConfigError("initial_pointer must be >= 1");
  if (analysis.n_fft < 2 || (analysis.n_fft & (analysis.n_fft - 1)) != 0)
    throw ConfigError("analysis.n_fft must be a power of two");
  if (analysis.osr < 1) throw ConfigError("analysis.osr must be >= 1");
  if (!(analysis.overlap_fraction >= 0.0) || analysis.overlap_fraction >= 1.0)
    throw ConfigError("analysis.overlap_fraction must be in [0, 1)");
  if (!(analysis.tone_threshold_db > 0.0))
    throw ConfigError("analysis.tone_threshold_db must be > 0");
  if (input.n_samples < analysis.transient_discard + analysis.n_fft)
    throw ConfigError("n_samples must cover transient_discard + n_fft (" +
                      std::to_string(analysis.transient_discard + analysis.n_fft) +
                      ")");
  const double band = analysis.band_edge_hz(input.sample_rate_hz);
  if (input.freq_hz >= band)
    throw ConfigError("signal frequency " + dstr(input.freq_hz) +
                      " Hz is outside the band (" + dstr(band) + " Hz)");
  const ElementBank b = bank.resolve();
  const int L = mod.max_code();
  const int want = strategy == Strategy::sadwa ? L + 1 : L;
  if (b.count() != want)
    throw ConfigError(std::string(strategy_name(strategy)) + " needs " +
                      std::to_string(want) + " elements, bank has " +
                      std::to_string(b.count()));
  if (initial_pointer > b.count())
    throw ConfigError("initial_pointer exceeds element count");
  for (double a : sweep_amplitudes)
    if (!std::isfinite(a)) throw ConfigError("sweep amplitudes must be finite");
  for (std::size_t i = 1; i < sweep_amplitudes.size(); ++i)
    if (!(sweep_amplitudes[i] > sweep_amplitudes[i - 1]))
      throw ConfigError("sweep amplitudes must be strictly increasing");
}

Scenario parse_scenario(const std::string& text, const std::string& name_hint) {
  Scenario sc;
  sc.name = name_hint;
  std::optional<int> snap_bin;
  bool have_freq = false, have_added_seed = false, have_bank_seed = false;
  bool have_nsamp = false;

  std::istringstream is(text);
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": bad section header");
      section = trim(t.substr(1, t.size() - 2));
      if (section != "input" && section != "modulator" && section != "strategy" &&
          section != "bank" && section != "analysis" && section != "sweep")
        throw ConfigError("line " + std::to_string(lineno) +
                          ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string val = trim(t.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
    const std::string qual = section.empty() ? key : section + "." + key;

    if (section.empty()) {
      if (key == "name") sc.name = val;
      else if (key == "seed") sc.seed = to_u64(qual, val);
      else throw ConfigError("unknown key '" + key + "' (line " +
                             std::to_string(lineno) + ")");
    } else if (section == "input") {
      if (key == "amplitude_dbfs") sc.input.amplitude_dbfs = to_double(qual, val);
      else if (key == "freq_hz") { sc.input.freq_hz = to_double(qual, val); have_freq = true; }
      else if (key == "snap_to_bin") snap_bin = to_int(qual, val);
      else if (key == "dc_offset_delta") sc.input.dc_offset = to_double(qual, val);
      else if (key == "sample_rate_hz") sc.input.sample_rate_hz = to_double(qual, val);
      else if (key == "n_samples") { sc.input.n_samples = to_index(qual, val); have_nsamp = true; }
      else throw ConfigError("unknown key '" + qual + "' (line " +
                             std::to_string(lineno) + ")");
    } else if (section == "modulator") {
      if (key == "bits") sc.mod.bits = to_int(qual, val);
      else if (key == "delta") sc.mod.delta = to_double(qual, val);
      else if (key == "a1") sc.mod.a1 = to_double(qual, val);
      else if (key == "a2") sc.mod.a2 = to_double(qual, val);
      else if (key == "instability_bound") sc.mod.instability_bound = to_double(qual, val);
      else throw ConfigError("unknown key '" + qual + "' (line " +
                             std::to_string(lineno) + ")");
    } else if (section == "strategy") {
      if (key == "kind") sc.strategy = to_strategy(qual, val);
      else if (key == "added") sc.added.kind = to_added(qual, val);
      else if (key == "added_seed") { sc.added.seed = to_u64(qual, val); have_added_seed = true; }
      else if (key == "initial_pointer") sc.initial_pointer = to_int(qual, val);
      else throw ConfigError("unknown key '" + qual + "' (line " +
                             std::to_string(lineno) + ")");
    } else if (section == "bank") {
      if (key == "preset") sc.bank.preset = val;
      else if (key == "path") sc.bank.path = val;
      else if (key == "gains") sc.bank.gains = to_list(qual, val);
      else if (key == "count") sc.bank.count = to_int(qual, val);
      else if (key == "sigma") sc.bank.mismatch.sigma = to_double(qual, val);
      else if (key == "distribution") sc.bank.mismatch.distribution = to_distribution(qual, val);
      else if (key == "seed") { sc.bank.mismatch.seed = to_u64(qual, val); have_bank_seed = true; }
      else throw ConfigError("unknown key '" + qual + "' (line " +
                             std::to_string(lineno) + ")");
    } else if (section == "analysis") {
      if (key == "n_fft") sc.analysis.n_fft = to_index(qual, val);
      else if (key == "window") sc.analysis.window = to_window(qual, val);
      else if (key == "osr") sc.analysis.osr = to_int(qual, val);
      else if (key == "transient_discard") sc.analysis.transient_discard = to_index(qual, val);
      else if (key == "overlap_fraction") sc.analysis.overlap_fraction = to_double(qual, val);
      else if (key == "tone_threshold_db") sc.analysis.tone_threshold_db = to_double(qual, val);
      else if (key == "cancel_added_nominal") sc.analysis.cancel_added_nominal = to_bool(qual, val);
      else throw ConfigError("unknown key '" + qual + "' (line " +
                             std::to_string(lineno) + ")");
    } else {  // sweep
      if (key == "amplitudes") sc.sweep_amplitudes = to_list(qual, val);
      else throw ConfigError("unknown key '" + qual + "' (line " +
                             std::to_string(lineno) + ")");
    }
  }

  if (snap_bin) {
    if (have_freq)
      throw ConfigError("input.freq_hz and input.snap_to_bin are mutually exclusive");
    if (*snap_bin < 1) throw ConfigError("input.snap_to_bin must be >= 1");
    sc.input.freq_hz = *snap_bin * sc.input.sample_rate_hz /
                       static_cast<double>(sc.analysis.n_fft);
  }
  if (!have_nsamp)
    sc.input.n_samples = sc.analysis.n_fft + sc.analysis.transient_discard;
  if (!have_added_seed) sc.added.seed = sc.seed;
  if (!have_bank_seed) sc.bank.mismatch.seed = sc.seed;
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::string stem = path;
  const auto slash = stem.find_last_of('/');
  if (slash != std::string::npos) stem = stem.substr(slash + 1);
  const auto dot = stem.find_last_of('.');
  if (dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
  return parse_scenario(read_file(path), stem);
}

std::string serialize_scenario(const Scenario& sc, const ElementBank& bank) {
  std::ostringstream o;
  o << "name = " << sc.name << "\n";
  o << "seed = " << sc.seed << "\n\n";
  o << "[input]\n";
  o << "amplitude_dbfs = " << dstr(sc.input.amplitude_dbfs) << "\n";
  o << "freq_hz = " << dstr(sc.input.freq_hz) << "\n";
  o << "dc_offset_delta = " << dstr(sc.input.dc_offset) << "\n";
  o << "sample_rate_hz = " << dstr(sc.input.sample_rate_hz) << "\n";
  o << "n_samples = " << sc.input.n_samples << "\n\n";
  o << "[modulator]\n";
  o << "bits = " << sc.mod.bits << "\n";
  o << "delta = " << dstr(sc.mod.delta) << "\n";
  o << "a1 = " << dstr(sc.mod.a1) << "\n";
  o << "a2 = " << dstr(sc.mod.a2) << "\n";
  o << "instability_bound = " << dstr(sc.mod.instability_bound) << "\n\n";
  o << "[strategy]\n";
  o << "kind = " << strategy_name(sc.strategy) << "\n";
  o << "added = " << added_name(sc.added.kind) << "\n";
  o << "added_seed = " << sc.added.seed << "\n";
  o << "initial_pointer = " << sc.initial_pointer << "\n\n";
  o << "[bank]\n";
  o << "gains =";
  for (double g : bank.gains) o << ' ' << dstr(g);
  o << "\n\n";
  o << "[analysis]\n";
  o << "n_fft = " << sc.analysis.n_fft << "\n";
  o << "window = " << window_name(sc.analysis.window) << "\n";
  o << "osr = " << sc.analysis.osr << "\n";
  o << "transient_discard = " << sc.analysis.transient_discard << "\n";
  o << "overlap_fraction = " << dstr(sc.analysis.overlap_fraction) << "\n";
  o << "tone_threshold_db = " << dstr(sc.analysis.tone_threshold_db) << "\n";
  o << "cancel_added_nominal = "
    << (sc.analysis.cancel_added_nominal ? "true" : "false") << "\n";
  if (!sc.sweep_amplitudes.empty()) {
    o << "\n[sweep]\namplitudes =";
    for (double a : sc.sweep_amplitudes) o << ' ' << dstr(a);
    o << "\n";
  }
  return o.str();
}

}  // namespace sddac
