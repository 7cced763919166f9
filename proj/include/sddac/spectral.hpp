#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace sddac {

enum class Window { rectangular, hann };

struct PsdEstimate {
  std::vector<double> bin_power;  // one-sided; sums to the mean square
  double bin_width_hz = 0.0;
  Window window = Window::rectangular;
  std::size_t n_fft = 0;
  std::size_t n_averages = 0;
  double sample_rate_hz() const { return bin_width_hz * static_cast<double>(n_fft); }
};

// Averaged periodogram: segment, remove each segment's mean, window,
// transform, average. Bin powers are window-power corrected (divided by
// sum(w^2)) so the one-sided spectrum integrates to the mean square.
PsdEstimate estimate_psd(std::span<const double> samples, Window window,
                         std::size_t n_fft, double overlap_fraction,
                         double sample_rate_hz);

struct SndrReport {
  double sndr_db = 0.0;
  double signal_power = 0.0;
  double inband_nd_power = 0.0;
  int signal_bin = 0;
  double band_edge_hz = 0.0;
  std::vector<int> excluded_bins;  // DC guard plus signal guard
};

// Signal power = signal bin +- guard (0 bins rectangular, 3 hann); N+D = all
// other bins from 3 (DC guard excludes 0..2) through the band-edge bin
// inclusive. A zero N+D floor reports 400 dB rather than infinity.
SndrReport compute_sndr(const PsdEstimate& psd, double signal_freq_hz,
                        double band_edge_hz);

struct Tone {
  int bin = 0;
  double freq_hz = 0.0;
  double power_db_above_floor = 0.0;  // above the median in-band bin
};

struct ToneReport {
  std::vector<Tone> tones;
  double noise_floor_db = 0.0;  // median in-band bin power, dB
};

// A bin is a tone when it is a local maximum and sits threshold_db above
// BOTH the global in-band median and the local median (+-25 bins, with a
// +-2 notch around the candidate). The local test keeps the rising shaped
// floor near the band edge from counting as tones. Signal and DC guard bins
// are never candidates.
ToneReport detect_tones(const PsdEstimate& psd, double signal_freq_hz,
                        double band_edge_hz, double threshold_db = 12.0);

struct DrPoint {
  double amplitude_dbfs = 0.0;
  double sndr_db = 0.0;   // NaN when the point failed
  std::string error;      // why, when it did
};

struct DrCurve {
  std::vector<DrPoint> points;  // strictly increasing amplitudes
  double dynamic_range_db = 0.0;
  double peak_amplitude_dbfs = 0.0;
  double peak_sndr_db = 0.0;
  double zero_cross_dbfs = 0.0;
};

// Fills the derived fields: peak over finite points, 0 dB crossing by linear
// interpolation between the first bracketing pair, DR = peak amplitude minus
// crossing. All NaN when the curve never crosses.
void finish_dr_curve(DrCurve& curve);

}  // namespace sddac
