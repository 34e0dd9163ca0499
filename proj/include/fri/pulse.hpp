// SPDX-License-Identifier: MIT
//
// Periodic pulse shapes represented by their Fourier-series coefficients:
//   h(t) = sum_k h_k exp(j 2 pi k t / T).
// Only finitely many coefficients are nonzero; the sorted index list is the
// pulse "support".  Built-in generators cover the three shapes used by the
// bench experiments (flat band, Lorentzian decay, filtered rectangle), and
// arbitrary pulses load from JSON.

#pragma once

#include "fri/errors.hpp"

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

namespace fri {

class FourierPulse {
public:
  /// Builds a pulse from (index, coefficient) pairs.  Exact-zero
  /// coefficients are dropped, indices are sorted, duplicates rejected.
  FourierPulse(double period, std::vector<long> indices,
               std::vector<std::complex<double>> coefficients);

  double period() const { return period_; }
  const std::vector<long>& support() const { return support_; }
  const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }
  std::size_t size() const { return support_.size(); }

  /// Coefficient at index k; zero when k is outside the support.
  std::complex<double> coeff(long k) const;
  bool contains(long k) const;

  /// True when h_{-k} = conj(h_k) holds across the support (tolerance
  /// 1e-12 relative to the largest coefficient), i.e. h(t) is real-valued.
  bool real_valued() const { return real_valued_; }
  double max_abs_coeff() const { return max_abs_; }

  // Built-in shapes (period T, band limit B, i.e. support {-B..B}).
  static FourierPulse flat(long B, double T = 1.0);
  /// h_k = 1 / (1 + (decay*k)^2); default decay 0.1 gives 1/(1+0.01 k^2).
  static FourierPulse lorentzian(long B, double T = 1.0, double decay = 0.1);
  /// Centered rectangle of width P periodized at T: h_k = (P/T) sinc(kP/T).
  /// Near-zeros of the sinc stay in the support (they are not exactly 0 in
  /// floating point), which is what makes them visible to spectral-null
  /// handling downstream.
  static FourierPulse rect(long B, double width = 0.04, double T = 1.0);

  // JSON: {"period": number, "coeffs": [[k, re, im], ...]}
  static FourierPulse from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  static FourierPulse load(const std::string& path);

  /// Maximal runs of consecutive indices, as [begin, end) positions into
  /// support()/coeffs().  Synthesis walks these to use ramped phasors.
  const std::vector<std::pair<std::size_t, std::size_t>>& runs() const { return runs_; }

private:
  double period_;
  std::vector<long> support_;
  std::vector<std::complex<double>> coeffs_;
  std::vector<std::pair<std::size_t, std::size_t>> runs_;
  bool real_valued_ = false;
  double max_abs_ = 0.0;
};

}  // namespace fri
