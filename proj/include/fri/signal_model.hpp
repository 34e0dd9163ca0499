// SPDX-License-Identifier: MIT
//
// Finite-rate-of-innovation signal classes in the Fourier domain.
//
// Periodic stream (period T):        x(t) = sum_l a_l h(t - t_l)
// Semi-periodic stream (period T0=MT): x(t) = sum_m sum_l a_l[m] g(t - t_l - mT)
// Subspace model:                    x(t) = sum_k theta_k g_k(t)
//
// All signals are finite Fourier sums x(t) = sum_k x_k exp(j 2 pi k t / T),
// and every inner product is a Parseval sum <f, g> = T sum_k f_k conj(g_k).
// The parameter vector theta is always real:
//   periodic        theta = (a_1..a_L, t_1..t_L)                 K = 2L
//   semi-periodic   theta = (a_1[0..M-1], ..., a_L[0..M-1], t_1..t_L), K = LM+L
//   subspace        theta = (theta_1..theta_K)

#pragma once

#include "fri/errors.hpp"
#include "fri/pulse.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

namespace fri {

enum class SignalModel { periodic, semi_periodic, subspace };

const char* model_name(SignalModel m);

/// Parameters of a pulse stream.  Amplitudes are flattened l-major for the
/// semi-periodic model: a_l[m] sits at index l*M + m.
struct PulseStreamTheta {
  SignalModel model = SignalModel::periodic;
  Eigen::VectorXd amplitudes;
  Eigen::VectorXd delays;  // empty for subspace
  int M = 1;               // semi-periodic: short periods per long period

  /// Set by check_no_overlap: pulses stay clear of the period edges so the
  /// periodized representation is faithful.
  std::optional<bool> no_overlap;

  int L() const { return static_cast<int>(delays.size()); }
  int K() const;

  /// Concatenated real parameter vector [amplitudes; delays].
  Eigen::VectorXd pack() const;
  static PulseStreamTheta unpack(SignalModel model, const Eigen::VectorXd& packed, int L, int M);

  /// Validates shape and delay range against a pulse (ConfigError on
  /// failure).  For semi-periodic the pulse period is the long period T0
  /// and delays must fall in [0, T0/M).
  void validate(const FourierPulse& pulse) const;
};

/// Records whether every pulse's time support [t_l + t_a, t_l + t_b] stays
/// inside the (short) period window, writing theta.no_overlap.  [t_a, t_b]
/// is the time support of the pulse shape.
bool check_no_overlap(PulseStreamTheta& theta, const FourierPulse& pulse, double t_a, double t_b);

/// A finite Fourier sum: sorted support and matching coefficients.
struct FourierCoeffVector {
  double period = 1.0;
  std::vector<long> support;
  Eigen::VectorXcd values;

  std::complex<double> coeff(long k) const;
  /// Parseval energy  T * sum |x_k|^2  =  integral of |x|^2 over a period.
  double energy() const;
  bool conjugate_symmetric(double rel_tol = 1e-10) const;
};

/// Derivative of the coefficient vector with respect to theta: rows follow
/// `support`, columns follow the packed parameter order.
struct JacobianMatrix {
  double period = 1.0;
  std::vector<long> support;
  Eigen::MatrixXcd D;

  int K() const { return static_cast<int>(D.cols()); }
  /// True when every column is conjugate-symmetric in the index, i.e. the
  /// model is real-valued and stays real under perturbation of theta.
  bool conjugate_symmetric(double rel_tol = 1e-10) const;
};

/// Subspace model: K generator signals given by their coefficient columns.
struct SubspaceGenerators {
  double period = 1.0;
  std::vector<long> support;
  Eigen::MatrixXcd G;  // |support| x K

  int K() const { return static_cast<int>(G.cols()); }
  /// Gram matrix <g_j, g_i> via Parseval (K x K, Hermitian PSD).
  Eigen::MatrixXcd gram() const;
};

// ---- synthesis ---------------------------------------------------------------

/// Coefficients of the stream on the pulse's support.
///   periodic:       x_k = h_k sum_l a_l exp(-j 2 pi k t_l / T)
///   semi-periodic:  x_q = g_q sum_l exp(-j 2 pi q t_l / T0)
///                              sum_m a_l[m] exp(-j 2 pi q m / M)
FourierCoeffVector synthesize_fourier(const PulseStreamTheta& theta, const FourierPulse& pulse);

/// Subspace model: x = G theta.
FourierCoeffVector synthesize_fourier(const SubspaceGenerators& gen, const Eigen::VectorXd& theta);

// ---- evaluation --------------------------------------------------------------

/// x(t) = sum_k x_k exp(j 2 pi k t / period) at each grid point.
std::vector<std::complex<double>> evaluate_time(const FourierCoeffVector& x,
                                                const std::vector<double>& grid);

/// Real-part evaluation for conjugate-symmetric coefficient vectors; throws
/// NumericalError if the imaginary residue exceeds 1e-10 relative.
std::vector<double> evaluate_time_real(const FourierCoeffVector& x, const std::vector<double>& grid);

// ---- differentiation ---------------------------------------------------------

/// d x_k / d theta_i.  Periodic model:
///   amplitude column l:  h_k exp(-j 2 pi k t_l / T)
///   delay column l:      a_l (-j 2 pi k / T) h_k exp(-j 2 pi k t_l / T)
/// Semi-periodic analogue on the long period; subspace Jacobian is G itself.
/// Throws ConfigError when a column is identically zero (locally redundant
/// parametrization, e.g. zero amplitude on a delay parameter).
JacobianMatrix jacobian_fourier(const PulseStreamTheta& theta, const FourierPulse& pulse);
JacobianMatrix jacobian_fourier(const SubspaceGenerators& gen);

// ---- rates of innovation -----------------------------------------------------

/// Periodic / single-burst stream: 2L / T0.
double rate_of_innovation_periodic(int L, double T0);
/// Shift-invariant space with M generators, generator support [t_a, t_b]:
///   (1/T) (1 + ceil((t_b - t_a)/T) / M).
double rate_of_innovation_shift_invariant(double T, int M, double t_a, double t_b);
/// Semi-periodic stream: (L/T) (1 + (1 + ceil((t_b - t_a)/T)) / M).
double rate_of_innovation_semi_periodic(int L, int M, double T, double t_a, double t_b);

// ---- metrics -----------------------------------------------------------------

/// Parseval MSE  period * sum_k |a_k - b_k|^2  over the union of supports.
double signal_mse(const FourierCoeffVector& a, const FourierCoeffVector& b);

}  // namespace fri
