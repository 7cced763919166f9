#pragma once

#include "sddac/bank.hpp"
#include "sddac/select.hpp"

#include <vector>

namespace sddac {

// v = delta * (sum of selected gains - M/2). Computed as ideal + error so the
// decomposition below holds bit-exactly.
double dac_convert(const SelectionMask& mask, const ElementBank& bank, double delta);

// e = delta * sum over selected elements of (g_k - nominal); exactly
// dac_convert(mask, bank) - dac_convert(mask, ideal bank).
double element_error(const SelectionMask& mask, const ElementBank& bank, double delta);

struct DacOutput {
  std::vector<double> v;  // analog output per cycle
  std::vector<double> e;  // mismatch error per cycle
  std::vector<int> tau;   // pointer before each selection (1 for thermometer)
  std::vector<int> s;     // added bit per cycle (all zero unless sadwa)
};

// Per cycle: fetch s(n) if sadwa, select, record the pre-update pointer,
// convert. Selection/range errors are rethrown with the cycle index attached.
DacOutput run_dac(const std::vector<int>& codes, const SelectorSpec& sel,
                  const ElementBank& bank, double delta);

}  // namespace sddac
