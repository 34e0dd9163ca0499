// SPDX-License-Identifier: MIT
//
// Sampling kernels and the joint continuous/digital noise model.
//
// A scheme holds a frequency set F and a mixing matrix B (N x |F|): kernel n
// is s_n(t) = sum_{f in F} conj(B_{nf}) exp(j 2 pi f t / T), chosen so that
// the noiseless measurement is simply
//
//   c_n = <y, s_n> = sum_f B_{nf} (T y_f),   i.e.  c = B (T y_F).
//
// Identity mixing gives pure exponential kernels (c_n = T y_n); the trig
// mixing gives the classic {1, cos, sin} set.  The measurement noise has two
// parts: continuous-time white noise of intensity sigma_c entering through
// the kernels, cov(n_c) = sigma_c^2 * gram(scheme), plus per-sample digital
// noise of variance sigma_d^2.
//
// Real/complex bookkeeping: every kernel splits into at most two real-valued
// channels, Re c_n = <y, Re s_n> and Im c_n = <y, -Im s_n> (valid for real
// signals y).  All noise is drawn in that real channel basis, which makes
// real kernels produce exactly real samples and keeps the covariance law
// correct for conjugate-pair frequency sets.  Digital noise convention: a
// real kernel's sample gets real noise of variance sigma_d^2; a complex
// kernel's sample gets circular complex noise of total variance sigma_d^2
// (sigma_d^2/2 per quadrature).

#pragma once

#include "fri/errors.hpp"
#include "fri/rng.hpp"
#include "fri/signal_model.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include <json.hpp>

namespace fri {

struct SamplingScheme {
  double base_period = 1.0;
  std::vector<long> freq_support;  // sorted F
  Eigen::MatrixXcd mixing;         // N x |F|

  int N() const { return static_cast<int>(mixing.rows()); }
  bool identity_mixing() const;
  /// True when F = -F as a set.
  bool symmetric_support() const;
  bool contiguous_support() const;

  /// Pure exponential kernels at the given frequencies.
  static SamplingScheme exponentials(std::vector<long> freqs, double T);
  /// Contiguous centered band of N frequencies: {-floor(N/2), ...} (for odd
  /// N this is {-(N-1)/2 .. (N-1)/2}).
  static SamplingScheme contiguous(int N, double T);
  /// Real trig kernels {1, cos(2 pi p t/T), sin(2 pi p t/T) : p = 1..p_max},
  /// N = 2 p_max + 1.
  static SamplingScheme trig(int p_max, double T);
  static SamplingScheme custom(std::vector<long> freqs, Eigen::MatrixXcd mixing, double T);

  // JSON: {"type": "exponential"|"trig"|"custom", "period": T,
  //        "freqs": [...], "mixing": [[[re,im],...], ...] (custom only)}
  static SamplingScheme from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct NoiseSpec {
  double sigma_c = 0.0;
  double sigma_d = 0.0;

  /// ConfigError on negative values.
  void validate() const;
  /// Additionally requires at least one positive variance (NoiseModelError
  /// otherwise) -- a Fisher matrix at exactly zero noise is undefined.
  void validate_for_crb() const;
};

/// Kernel Gram matrix (S*S)_{ij} = <s_j, s_i> = T (B B^H)_{ij}; Hermitian
/// positive definite.  Throws DegenerateSchemeError when the kernels are
/// linearly dependent (relative eigenvalue tolerance 1e-12).
Eigen::MatrixXcd gram(const SamplingScheme& scheme);

/// Noiseless measurements mu = B (T x_F); coefficients outside the signal
/// support read as zero.
Eigen::VectorXcd measurement_mean(const FourierCoeffVector& x, const SamplingScheme& scheme);

// ---- real channel decomposition ---------------------------------------------

/// The scheme's kernels re-expressed as real-valued channel functions.
/// Channel coefficient rows live on the symmetric closure V of F and are
/// conjugate-symmetric.  chan_re/chan_im map channel positions back to the
/// complex sample vector: c_n = m[chan_re[n]] + j m[chan_im[n]] (index -1
/// meaning the part is absent/zero).
struct RealifiedScheme {
  std::vector<long> index_set;  // V = F union -F, sorted
  Eigen::MatrixXcd R;           // channels x |V|
  std::vector<int> chan_re, chan_im;  // per kernel, -1 if absent
  Eigen::VectorXd digital_scale;      // per channel: 1 (real kernel) or 1/2
  double period = 1.0;

  int channels() const { return static_cast<int>(R.rows()); }
};

RealifiedScheme realify(const SamplingScheme& scheme);

/// Gram of the real channels, T * Re(R R^H); exactly real symmetric PSD.
Eigen::MatrixXd real_gram(const RealifiedScheme& rs);

/// Channel noise covariance sigma_c^2 * real_gram + sigma_d^2 * diag(scale).
Eigen::MatrixXd channel_covariance(const RealifiedScheme& rs, const NoiseSpec& noise);

// ---- noisy sampling ----------------------------------------------------------

/// c = mu + n with n drawn in the real channel basis from `rng` (channel
/// order is kernel-major: kernel 0's Re then Im channel, kernel 1, ...).
/// Real signals + real kernels thus get exactly real samples, and the
/// complex covariance law  cov(c) = sigma_c^2 gram + sigma_d^2 I  holds.
Eigen::VectorXcd sample_noisy(const FourierCoeffVector& x, const SamplingScheme& scheme,
                              const NoiseSpec& noise, TrialRng& rng);

/// Convenience overload: one-shot draw from stream (seed, trial).
Eigen::VectorXcd sample_noisy(const FourierCoeffVector& x, const SamplingScheme& scheme,
                              const NoiseSpec& noise, std::uint64_t seed, std::uint64_t trial = 0);

}  // namespace fri
