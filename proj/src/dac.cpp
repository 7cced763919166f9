#include "sddac/dac.hpp"

#include "sddac/errors.hpp"

namespace sddac {

namespace {

void check_sizes(const SelectionMask& mask, const ElementBank& bank) {
  if (static_cast<int>(mask.bits.size()) != bank.count())
    throw ConfigError("mask has " + std::to_string(mask.bits.size()) +
                      " bits but bank has " + std::to_string(bank.count()) +
                      " elements");
}

double ideal_level(int popc, int M, double nominal, double delta) {
  return delta * nominal * (popc - M / 2.0);
}

}  // namespace

double element_error(const SelectionMask& mask, const ElementBank& bank, double delta) {
  check_sizes(mask, bank);
  double acc = 0.0;
  for (std::size_t k = 0; k < mask.bits.size(); ++k)
    if (mask.bits[k]) acc += bank.gains[k] - bank.nominal_gain;
  return delta * acc;
}

double dac_convert(const SelectionMask& mask, const ElementBank& bank, double delta) {
  // ideal part + error, in this order, so that
  // dac_convert(bank) == dac_convert(ideal) + element_error(bank) bit-exactly
  return ideal_level(mask.popcount(), bank.count(), bank.nominal_gain, delta) +
         element_error(mask, bank, delta);
}

DacOutput run_dac(const std::vector<int>& codes, const SelectorSpec& sel,
                  const ElementBank& bank, double delta) {
  bank.validate();
  const int M = bank.count();
  if (sel.initial_pointer < 1 || sel.initial_pointer > M)
    throw ConfigError("initial pointer " + std::to_string(sel.initial_pointer) +
                      " outside [1, " + std::to_string(M) + "]");
  DwaState st{sel.initial_pointer, M};
  const std::size_t n = codes.size();
  DacOutput out;
  out.v.resize(n);
  out.e.resize(n);
  out.tau.resize(n);
  out.s.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    try {
      const int s = sel.strategy == Strategy::sadwa
                        ? added_sequence(i, sel.added)
                        : 0;
      int tau = 1;
      SelectionMask mask;
      switch (sel.strategy) {
        case Strategy::thermometer:
          mask = thermometer_select(codes[i], M);
          break;
        case Strategy::dwa:
          tau = st.pointer;
          mask = dwa_select(st, codes[i]);
          break;
        case Strategy::sadwa:
          tau = st.pointer;
          mask = sadwa_select(st, codes[i], s);
          break;
      }
      out.s[i] = s;
      out.tau[i] = tau;
      out.e[i] = element_error(mask, bank, delta);
      out.v[i] = ideal_level(mask.popcount(), M, bank.nominal_gain, delta) + out.e[i];
    } catch (const ConfigError& ex) {
      throw ConfigError("cycle " + std::to_string(i) + ": " + ex.what());
    }
  }
  return out;
}

}  // namespace sddac
