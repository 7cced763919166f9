#include "sddac/select.hpp"

#include "sddac/errors.hpp"
#include "sddac/rng.hpp"

#include <numeric>

namespace sddac {

int SelectionMask::popcount() const {
  return static_cast<int>(std::accumulate(bits.begin(), bits.end(), 0));
}

std::string SelectionMask::to_string() const {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) s[i] = '1';
  return s;
}

int wrap_RL(long long k, int M) {
  if (k < 1) throw ConfigError("wrap_RL needs k >= 1, got " + std::to_string(k));
  if (M < 1) throw ConfigError("wrap_RL needs modulus >= 1, got " + std::to_string(M));
  const long long f = (k - 1) / M;  // k >= 1, so this is the true floor
  return static_cast<int>(k - static_cast<long long>(M) * f);
}

SelectionMask dwa_select(DwaState& st, int y) {
  const int M = st.modulus;
  if (M < 1) throw ConfigError("selector modulus must be >= 1");
  if (st.pointer < 1 || st.pointer > M)
    throw ConfigError("pointer " + std::to_string(st.pointer) +
                      " outside [1, " + std::to_string(M) + "]");
  if (y < 0 || y > M)
    throw ConfigError("code " + std::to_string(y) + " outside [0, " +
                      std::to_string(M) + "]");
  SelectionMask m;
  m.bits.assign(static_cast<std::size_t>(M), 0);
  for (int j = 0; j < y; ++j)
    m.bits[static_cast<std::size_t>(wrap_RL(st.pointer + j, M)) - 1] = 1;
  st.pointer = wrap_RL(st.pointer + y, M);
  return m;
}

SelectionMask sadwa_select(DwaState& st, int y, int s) {
  if (s != 0 && s != 1)
    throw ConfigError("added bit must be 0 or 1, got " + std::to_string(s));
  if (y < 0) throw ConfigError("code must be >= 0, got " + std::to_string(y));
  if (y + s > st.modulus)
    throw ConfigError("code " + std::to_string(y) + " + added " +
                      std::to_string(s) + " exceeds " +
                      std::to_string(st.modulus) + " elements");
  return dwa_select(st, y + s);
}

SelectionMask thermometer_select(int y, int M) {
  if (M < 1) throw ConfigError("element count must be >= 1");
  if (y < 0 || y > M)
    throw ConfigError("code " + std::to_string(y) + " outside [0, " +
                      std::to_string(M) + "]");
  SelectionMask m;
  m.bits.assign(static_cast<std::size_t>(M), 0);
  for (int j = 0; j < y; ++j) m.bits[j] = 1;
  return m;
}

int added_sequence(std::uint64_t n, const AddedSequenceSpec& spec) {
  switch (spec.kind) {
    case AddedKind::constant_zero: return 0;
    case AddedKind::constant_one: return 1;
    case AddedKind::periodic_01: return static_cast<int>(n & 1);
    case AddedKind::seeded_random: return bit_at(spec.seed, n);
  }
  throw ConfigError("bad added-sequence kind");
}

std::string selection_trace_csv(const std::vector<int>& codes,
                                const SelectorSpec& sel, int modulus) {
  DwaState st{sel.initial_pointer, modulus};
  std::string out = "n,code,s,pointer_before,mask\n";
  for (std::size_t n = 0; n < codes.size(); ++n) {
    const int s =
        sel.strategy == Strategy::sadwa ? added_sequence(n, sel.added) : 0;
    int tau = 1;
    SelectionMask m;
    switch (sel.strategy) {
      case Strategy::thermometer:
        m = thermometer_select(codes[n], modulus);
        break;
      case Strategy::dwa:
        tau = st.pointer;
        m = dwa_select(st, codes[n]);
        break;
      case Strategy::sadwa:
        tau = st.pointer;
        m = sadwa_select(st, codes[n], s);
        break;
    }
    out += std::to_string(n) + ',' + std::to_string(codes[n]) + ',' +
           std::to_string(s) + ',' + std::to_string(tau) + ',' + m.to_string() +
           '\n';
  }
  return out;
}

}  // namespace sddac
