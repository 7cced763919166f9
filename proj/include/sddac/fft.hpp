#pragma once

#include <complex>
#include <vector>

namespace sddac {

// In-place iterative radix-2 DIT, forward, unscaled. Size must be a power of
// two (that is all the PSD path ever needs).
void fft_inplace(std::vector<std::complex<double>>& a);

// Real input -> bins 0..n/2 of the DFT.
std::vector<std::complex<double>> rfft(const std::vector<double>& x);

}  // namespace sddac
