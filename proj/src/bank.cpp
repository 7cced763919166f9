#include "sddac/bank.hpp"

#include "sddac/csvio.hpp"
#include "sddac/errors.hpp"
#include "sddac/rng.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace sddac {

void ElementBank::validate() const {
  if (gains.empty()) throw ConfigError("element bank is empty");
  for (std::size_t i = 0; i < gains.size(); ++i) {
    if (!std::isfinite(gains[i]) || gains[i] <= 0.0)
      throw ConfigError("element gain " + std::to_string(i + 1) +
                        " must be finite and positive");
  }
}

ElementBank generate_element_bank(int count, const MismatchSpec& spec) {
  if (count < 1) throw ConfigError("element count must be >= 1");
  if (!(spec.sigma >= 0.0)) throw ConfigError("mismatch sigma must be >= 0");
  ElementBank b;
  b.gains.resize(static_cast<std::size_t>(count));
  const double s3 = std::sqrt(3.0) * spec.sigma;
  for (int i = 0; i < count; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    if (spec.distribution == Distribution::uniform)
      b.gains[i] = 1.0 + s3 * (2.0 * u53_at(spec.seed, idx) - 1.0);
    else
      b.gains[i] = 1.0 + spec.sigma * normal_at(spec.seed, idx);
  }
  b.validate();
  return b;
}

BankStats bank_statistics(const ElementBank& bank) {
  bank.validate();
  const auto n = bank.gains.size();
  BankStats st;
  double sum = 0.0;
  for (double g : bank.gains) {
    sum += g;
    st.max_abs_error = std::max(st.max_abs_error, std::fabs(g - bank.nominal_gain));
  }
  st.mean = sum / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double g : bank.gains) ss += (g - st.mean) * (g - st.mean);
    st.sample_std = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return st;
}

namespace {
const std::vector<double> kRefGains8 = {1.0109, 1.0141, 0.9871, 1.0143,
                                        1.0046, 0.9861, 0.9923, 1.0016};
}

const std::vector<std::string>& bank_preset_names() {
  static const std::vector<std::string> names = {"paper-bank-8", "paper-bank-7",
                                                 "ideal-8", "ideal-7"};
  return names;
}

ElementBank bank_preset(const std::string& name) {
  ElementBank b;
  if (name == "paper-bank-8") {
    b.gains = kRefGains8;
  } else if (name == "paper-bank-7") {
    b.gains.assign(kRefGains8.begin(), kRefGains8.begin() + 7);
  } else if (name == "ideal-8") {
    b.gains.assign(8, 1.0);
  } else if (name == "ideal-7") {
    b.gains.assign(7, 1.0);
  } else {
    throw ConfigError("unknown bank preset: " + name);
  }
  return b;
}

std::string serialize_bank(const ElementBank& bank) {
  std::string out;
  for (double g : bank.gains) {
    out += dstr(g);
    out += '\n';
  }
  return out;
}

ElementBank parse_bank(const std::string& text) {
  ElementBank b;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(first, last - first + 1);
    char* end = nullptr;
    const double g = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
      throw ConfigError("bank line " + std::to_string(lineno) +
                        " is not a number: '" + tok + "'");
    b.gains.push_back(g);
  }
  b.validate();
  return b;
}

ElementBank load_bank_file(const std::string& path) {
  return parse_bank(read_file(path));
}

void save_bank_file(const ElementBank& bank, const std::string& path) {
  atomic_write_file(path, serialize_bank(bank));
}

}  // namespace sddac
