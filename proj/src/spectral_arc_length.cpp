#include "reachsim/analysis.hpp"

#include <unsupported/Eigen/FFT>

#include <bit>
#include <cmath>
#include <complex>
#include <numbers>

namespace reachsim {

std::size_t sal_fft_length(std::size_t n) {
  // Nine extra doublings of zero padding, never fewer than kMinSpectrumBins.
  // The spectrum has kinks at its zeros and the central differences there
  // cost O(bin width), so the grid has to be fine.
  return std::max(kMinSpectrumBins, std::bit_ceil(std::max<std::size_t>(n, 1)) << 9);
}

double spectral_arc_length_from_spectrum(std::span<const double> omega, std::span<const double> vhat,
                                         double omega_c) {
  const std::size_t n = omega.size();
  if (n < 2 || vhat.size() != n) throw std::invalid_argument("spectrum needs >= 2 matching samples");
  if (!(omega_c > 0.0)) throw std::invalid_argument("omega_c must be > 0");

  // Three-point finite differences on a possibly non-uniform grid.
  std::vector<double> slope(n);
  slope.front() = (vhat[1] - vhat[0]) / (omega[1] - omega[0]);
  slope.back() = (vhat[n - 1] - vhat[n - 2]) / (omega[n - 1] - omega[n - 2]);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double h0 = omega[k] - omega[k - 1];
    const double h1 = omega[k + 1] - omega[k];
    slope[k] = (h0 * h0 * (vhat[k + 1] - vhat[k]) + h1 * h1 * (vhat[k] - vhat[k - 1])) / (h0 * h1 * (h0 + h1));
  }

  const double inv_wc2 = 1.0 / (omega_c * omega_c);
  double length = 0.0;
  double prev = std::sqrt(inv_wc2 + slope[0] * slope[0]);
  for (std::size_t k = 1; k < n; ++k) {
    const double cur = std::sqrt(inv_wc2 + slope[k] * slope[k]);
    length += 0.5 * (prev + cur) * (omega[k] - omega[k - 1]);
    prev = cur;
  }
  return -length;
}

double spectral_arc_length(const SpeedProfile& profile, double omega_c) {
  if (profile.values.empty()) throw EmptyInput("empty speed profile");
  if (!(profile.sample_period > 0.0)) throw std::invalid_argument("sample period must be > 0");
  if (!(omega_c > 0.0)) throw std::invalid_argument("omega_c must be > 0");

  const std::size_t nfft = sal_fft_length(profile.values.size());
  std::vector<double> padded(nfft, 0.0);
  std::copy(profile.values.begin(), profile.values.end(), padded.begin());
  std::vector<std::complex<double>> spectrum;
  Eigen::FFT<double> fft;
  fft.fwd(spectrum, padded);

  const double v0 = std::abs(spectrum[0]);
  if (!(v0 > 0.0)) throw ZeroSignal("speed profile has zero DC magnitude");

  const double bin = 2.0 * std::numbers::pi / (static_cast<double>(nfft) * profile.sample_period);
  std::vector<double> omega;
  std::vector<double> vhat;
  std::size_t k = 0;
  for (; k < nfft / 2 && static_cast<double>(k) * bin <= omega_c; ++k) {
    omega.push_back(static_cast<double>(k) * bin);
    vhat.push_back(std::abs(spectrum[k]) / v0);
  }
  if (omega.back() < omega_c) {
    if (k >= nfft / 2) throw std::invalid_argument("omega_c exceeds the Nyquist frequency");
    // Close the band exactly at omega_c.
    const double w = (omega_c - omega.back()) / bin;
    omega.push_back(omega_c);
    vhat.push_back(vhat.back() + w * (std::abs(spectrum[k]) / v0 - vhat.back()));
  }
  return spectral_arc_length_from_spectrum(omega, vhat, omega_c);
}

}  // namespace reachsim
