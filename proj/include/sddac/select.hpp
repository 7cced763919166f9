#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sddac {

enum class Strategy { thermometer, dwa, sadwa };

// Circular pointer over M unit elements, 1-based like the element indices.
struct DwaState {
  int pointer = 1;
  int modulus = 8;
};

enum class AddedKind { constant_zero, constant_one, periodic_01, seeded_random };

struct AddedSequenceSpec {
  AddedKind kind = AddedKind::constant_zero;
  std::uint64_t seed = 1;
};

struct SelectionMask {
  std::vector<std::uint8_t> bits;  // bits[k-1] set when element k fires
  int popcount() const;
  std::string to_string() const;  // '0'/'1' per element, element 1 first
};

// wrap to [1, M]: k - M*floor((k-1)/M)
int wrap_RL(long long k, int M);

// Fires elements wrap(p), wrap(p+1), ..., wrap(p+y-1), then advances the
// pointer to wrap(p+y). y = 0 fires nothing and leaves the pointer alone.
SelectionMask dwa_select(DwaState& st, int y);

// DWA fed with y + s over an (L+1)-element bank. A combination with
// y + s > M is rejected, never clamped.
SelectionMask sadwa_select(DwaState& st, int y, int s);

// Elements 1..y, no state.
SelectionMask thermometer_select(int y, int M);

int added_sequence(std::uint64_t n, const AddedSequenceSpec& spec);

struct SelectorSpec {
  Strategy strategy = Strategy::dwa;
  AddedSequenceSpec added;  // consulted by sadwa only
  int initial_pointer = 1;
};

// Golden-trace export: "n,code,s,pointer_before,mask" rows.
std::string selection_trace_csv(const std::vector<int>& codes,
                                const SelectorSpec& sel, int modulus);

}  // namespace sddac
