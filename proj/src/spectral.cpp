#include "sddac/spectral.hpp"

#include "sddac/errors.hpp"
#include "sddac/fft.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace sddac {

namespace {

constexpr int kDcGuard = 2;          // bins 0..2 never count as in-band
constexpr int kLocalHalf = 25;       // tone test: local window half-width
constexpr int kLocalNotch = 2;       // ... excluding this many bins each side
constexpr double kSndrCap = 400.0;   // reported when N+D is exactly zero

double median(std::vector<double> v) {
  const std::size_t n = v.size();
  std::sort(v.begin(), v.end());
  if (n == 0) return 0.0;
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int band_edge_bin(const PsdEstimate& psd, double band_edge_hz) {
  if (!(band_edge_hz > 0.0)) throw ConfigError("band edge must be > 0");
  int bb = static_cast<int>(std::floor(band_edge_hz / psd.bin_width_hz + 1e-9));
  const int top = static_cast<int>(psd.n_fft / 2);
  return std::min(bb, top);
}

int signal_bin_of(const PsdEstimate& psd, double f) {
  return static_cast<int>(std::llround(f / psd.bin_width_hz));
}

int guard_of(const PsdEstimate& psd) {
  return psd.window == Window::rectangular ? 0 : 3;
}

}  // namespace

PsdEstimate estimate_psd(std::span<const double> samples, Window window,
                         std::size_t n_fft, double overlap_fraction,
                         double sample_rate_hz) {
  if (n_fft < 2 || (n_fft & (n_fft - 1)) != 0)
    throw ConfigError("n_fft must be a power of two >= 2");
  if (samples.size() < n_fft)
    throw ConfigError("need at least n_fft samples (" + std::to_string(n_fft) +
                      "), got " + std::to_string(samples.size()));
  if (!(overlap_fraction >= 0.0) || overlap_fraction >= 1.0)
    throw ConfigError("overlap_fraction must be in [0, 1)");
  if (!(sample_rate_hz > 0.0)) throw ConfigError("sample_rate_hz must be > 0");

  std::size_t step = static_cast<std::size_t>(
      std::llround((1.0 - overlap_fraction) * static_cast<double>(n_fft)));
  if (step < 1) step = 1;

  std::vector<double> w(n_fft, 1.0);
  if (window == Window::hann)
    for (std::size_t i = 0; i < n_fft; ++i)
      w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi *
                                  static_cast<double>(i) / static_cast<double>(n_fft));
  double wpow = 0.0;
  for (double wi : w) wpow += wi * wi;  // == n_fft for rectangular

  PsdEstimate est;
  est.bin_power.assign(n_fft / 2 + 1, 0.0);
  est.bin_width_hz = sample_rate_hz / static_cast<double>(n_fft);
  est.window = window;
  est.n_fft = n_fft;

  std::vector<std::complex<double>> buf(n_fft);
  for (std::size_t start = 0; start + n_fft <= samples.size(); start += step) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n_fft; ++i) mean += samples[start + i];
    mean /= static_cast<double>(n_fft);
    for (std::size_t i = 0; i < n_fft; ++i)
      buf[i] = (samples[start + i] - mean) * w[i];
    fft_inplace(buf);
    const double norm = static_cast<double>(n_fft) * wpow;
    for (std::size_t k = 0; k <= n_fft / 2; ++k) {
      double p = std::norm(buf[k]) / norm;
      if (k != 0 && k != n_fft / 2) p *= 2.0;  // one-sided fold
      est.bin_power[k] += p;
    }
    ++est.n_averages;
  }
  for (double& p : est.bin_power) p /= static_cast<double>(est.n_averages);
  return est;
}

SndrReport compute_sndr(const PsdEstimate& psd, double signal_freq_hz,
                        double band_edge_hz) {
  if (psd.bin_power.empty()) throw ConfigError("empty psd");
  if (!(signal_freq_hz > 0.0) || signal_freq_hz >= band_edge_hz)
    throw ConfigError("signal frequency outside the band");
  const int bb = band_edge_bin(psd, band_edge_hz);
  const int sb = signal_bin_of(psd, signal_freq_hz);
  const int guard = guard_of(psd);
  if (sb - guard <= kDcGuard)
    throw ConfigError("signal bin " + std::to_string(sb) + " inside the DC guard");
  if (sb + guard > bb)
    throw ConfigError("signal guard extends past the band edge");

  SndrReport r;
  r.signal_bin = sb;
  r.band_edge_hz = band_edge_hz;
  for (int k = 0; k <= kDcGuard; ++k) r.excluded_bins.push_back(k);
  for (int k = sb - guard; k <= sb + guard; ++k) {
    r.signal_power += psd.bin_power[k];
    r.excluded_bins.push_back(k);
  }
  for (int k = kDcGuard + 1; k <= bb; ++k) {
    if (k >= sb - guard && k <= sb + guard) continue;
    r.inband_nd_power += psd.bin_power[k];
  }
  r.sndr_db = r.inband_nd_power > 0.0
                  ? 10.0 * std::log10(r.signal_power / r.inband_nd_power)
                  : kSndrCap;
  return r;
}

ToneReport detect_tones(const PsdEstimate& psd, double signal_freq_hz,
                        double band_edge_hz, double threshold_db) {
  if (!(threshold_db > 0.0)) throw ConfigError("tone threshold must be > 0 dB");
  const int bb = band_edge_bin(psd, band_edge_hz);
  const int sb = signal_bin_of(psd, signal_freq_hz);
  const int guard = guard_of(psd);
  const auto& p = psd.bin_power;
  const int top = static_cast<int>(psd.n_fft / 2);

  const int lo_bin = kDcGuard + 1;
  std::vector<double> inband(p.begin() + lo_bin, p.begin() + bb + 1);
  const double gmed = median(inband);
  const double thr = std::pow(10.0, threshold_db / 10.0);

  ToneReport rep;
  rep.noise_floor_db = gmed > 0.0 ? 10.0 * std::log10(gmed)
                                  : -std::numeric_limits<double>::infinity();
  std::vector<double> nb;
  for (int k = lo_bin; k <= bb; ++k) {
    if (k >= sb - guard && k <= sb + guard) continue;
    const double right = k + 1 <= top ? p[k + 1] : 0.0;
    if (p[k] < p[k - 1] || p[k] < right) continue;  // not a local max
    if (p[k] < gmed * thr) continue;                // vs the whole band
    nb.clear();                                     // vs the neighborhood
    const int wlo = std::max(lo_bin, k - kLocalHalf);
    const int whi = std::min(bb, k + kLocalHalf);
    for (int j = wlo; j <= whi; ++j)
      if (std::abs(j - k) > kLocalNotch) nb.push_back(p[j]);
    if (p[k] < median(nb) * thr) continue;
    rep.tones.push_back({k, k * psd.bin_width_hz,
                         10.0 * std::log10(p[k] / gmed)});
  }
  return rep;
}

void finish_dr_curve(DrCurve& c) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  c.dynamic_range_db = c.peak_amplitude_dbfs = c.peak_sndr_db = c.zero_cross_dbfs = nan;
  for (const auto& pt : c.points) {
    if (!std::isfinite(pt.sndr_db)) continue;
    if (!std::isfinite(c.peak_sndr_db) || pt.sndr_db > c.peak_sndr_db) {
      c.peak_sndr_db = pt.sndr_db;
      c.peak_amplitude_dbfs = pt.amplitude_dbfs;
    }
  }
  for (std::size_t i = 0; i + 1 < c.points.size(); ++i) {
    const auto& a = c.points[i];
    const auto& b = c.points[i + 1];
    if (!std::isfinite(a.sndr_db) || !std::isfinite(b.sndr_db)) continue;
    if (a.sndr_db < 0.0 && b.sndr_db >= 0.0) {
      c.zero_cross_dbfs =
          a.amplitude_dbfs + (0.0 - a.sndr_db) *
                                 (b.amplitude_dbfs - a.amplitude_dbfs) /
                                 (b.sndr_db - a.sndr_db);
      break;
    }
  }
  if (std::isfinite(c.peak_amplitude_dbfs) && std::isfinite(c.zero_cross_dbfs))
    c.dynamic_range_db = c.peak_amplitude_dbfs - c.zero_cross_dbfs;
}

}  // namespace sddac
