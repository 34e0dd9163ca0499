// SPDX-License-Identifier: MIT

#include "fri/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fri {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Switch to the divide-and-conquer SVD once Jacobi gets slow.
constexpr Eigen::Index kBdcThreshold = 48;

Eigen::VectorXd hankel_singular_values(const Eigen::MatrixXcd& Y, Eigen::MatrixXcd& V_out) {
  if (std::min(Y.rows(), Y.cols()) > kBdcThreshold) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(Y, Eigen::ComputeThinV);
    V_out = svd.matrixV();
    return svd.singularValues();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Y, Eigen::ComputeThinV);
  V_out = svd.matrixV();
  return svd.singularValues();
}

}  // namespace

EstimateReport matrix_pencil(const Eigen::VectorXcd& c, const SamplingScheme& scheme,
                             const FourierPulse& pulse, int L, const PencilOptions& opts) {
  if (L < 1) throw ConfigError("matrix_pencil requires L >= 1");
  if (c.size() != scheme.N()) throw ConfigError("sample vector length must equal kernel count");
  if (!scheme.contiguous_support())
    throw ConfigError("matrix_pencil requires a contiguous frequency band");
  if (std::abs(pulse.period() - scheme.base_period) >
      1e-12 * std::max(pulse.period(), scheme.base_period))
    throw ConfigError("pulse/scheme period mismatch");

  const double T = pulse.period();
  const auto& F = scheme.freq_support;
  const int Nf = static_cast<int>(F.size());
  if (Nf < 2 * L + 1)
    throw ConfigError("matrix_pencil needs at least 2L+1 frequencies on the band");

  // Un-mix to exponential samples y = T * x_F.
  Eigen::VectorXcd y;
  if (scheme.identity_mixing()) {
    y = c;
  } else {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(scheme.mixing);
    if (cod.rank() < scheme.mixing.cols())
      throw ConfigError("matrix_pencil cannot un-mix: mixing has deficient column rank");
    y = cod.solve(c);
  }

  // Deconvolve by the pulse spectrum; refuse at spectral nulls.
  double max_h = 0.0;
  for (long f : F) max_h = std::max(max_h, std::abs(pulse.coeff(f)));
  Eigen::VectorXcd w(Nf);
  for (int m = 0; m < Nf; ++m) {
    const std::complex<double> h = pulse.coeff(F[static_cast<std::size_t>(m)]);
    if (std::abs(h) < opts.eps_h_rel * max_h || max_h == 0.0)
      throw SpectralNullError("pulse coefficient at index " +
                                  std::to_string(F[static_cast<std::size_t>(m)]) +
                                  " is a spectral null; cannot deconvolve",
                              F[static_cast<std::size_t>(m)]);
    w[m] = y[m] / (T * h);
  }

  // Hankel pencil: w_m = sum_l b_l z_l^m with z_l = exp(-j 2 pi t_l / T).
  const int P = Nf / 2;
  const int rows = Nf - P;
  Eigen::MatrixXcd Y(rows, P + 1);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j <= P; ++j) Y(i, j) = w[i + j];

  EstimateReport rep;
  Eigen::MatrixXcd V;
  rep.singular_values = hankel_singular_values(Y, V);

  const Eigen::MatrixXcd VL = V.leftCols(L);
  const Eigen::MatrixXcd V1 = VL.topRows(P);
  const Eigen::MatrixXcd V2 = VL.bottomRows(P);
  const Eigen::MatrixXcd E = V1.colPivHouseholderQr().solve(V2);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(E);
  if (eig.info() != Eigen::Success) throw NumericalError("matrix_pencil: eigensolver failed");

  // Delays from the pencil eigenvalues, wrapped into [0, T).  The shift
  // structure lives in the right singular vectors, which span the conjugate
  // Vandermonde space, so the eigenvalues are conj(z_l) = exp(+j 2 pi t_l/T).
  std::vector<double> delays;
  delays.reserve(static_cast<std::size_t>(L));
  for (Eigen::Index l = 0; l < L; ++l) {
    double t = T * std::arg(eig.eigenvalues()[l]) / kTwoPi;
    t = std::fmod(t, T);
    if (t < 0.0) t += T;
    if (t >= T) t = 0.0;
    delays.push_back(t);
  }
  std::sort(delays.begin(), delays.end());

  // Merge coincident delays (circularly): collapsed pulses would make the
  // Vandermonde system singular.
  const double merge_tol = opts.merge_tol_rel * T;
  std::vector<double> merged;
  for (double t : delays) {
    if (!merged.empty() && t - merged.back() <= merge_tol) {
      ++rep.merged_delays;
      continue;
    }
    merged.push_back(t);
  }
  if (merged.size() > 1 && (T - merged.back()) + merged.front() <= merge_tol) {
    merged.pop_back();
    ++rep.merged_delays;
  }
  const int Lh = static_cast<int>(merged.size());

  // Vandermonde least squares on the band: A(m, l) = z_l^{k0 + m}.
  Eigen::MatrixXcd A(Nf, Lh);
  for (int l = 0; l < Lh; ++l) {
    const double phi = -kTwoPi * merged[static_cast<std::size_t>(l)] / T;
    for (int m = 0; m < Nf; ++m) {
      const double k = static_cast<double>(F[static_cast<std::size_t>(m)]);
      A(m, l) = std::polar(1.0, phi * k);
    }
  }
  const Eigen::VectorXcd b = A.colPivHouseholderQr().solve(w);
  rep.residual_norm = (A * b - w).norm();
  rep.amplitudes_complex = b;

  rep.theta_hat.model = SignalModel::periodic;
  rep.theta_hat.delays = Eigen::Map<const Eigen::VectorXd>(merged.data(), Lh);
  rep.theta_hat.amplitudes = b.real();
  rep.x_hat = synthesize_fourier(rep.theta_hat, pulse);
  return rep;
}

nlohmann::json EstimateReport::to_json() const {
  nlohmann::json j;
  j["model"] = model_name(theta_hat.model);
  j["delays"] = std::vector<double>(theta_hat.delays.data(),
                                    theta_hat.delays.data() + theta_hat.delays.size());
  j["amplitudes"] = std::vector<double>(theta_hat.amplitudes.data(),
                                        theta_hat.amplitudes.data() + theta_hat.amplitudes.size());
  nlohmann::json amps_c = nlohmann::json::array();
  for (Eigen::Index i = 0; i < amplitudes_complex.size(); ++i)
    amps_c.push_back({amplitudes_complex[i].real(), amplitudes_complex[i].imag()});
  j["amplitudes_complex"] = amps_c;
  j["singular_values"] = std::vector<double>(singular_values.data(),
                                             singular_values.data() + singular_values.size());
  j["merged_delays"] = merged_delays;
  j["residual_norm"] = residual_norm;
  return j;
}

Eigen::VectorXcd subspace_consistent(const Eigen::VectorXcd& c, const Eigen::MatrixXcd& G_gram,
                                     const Eigen::MatrixXcd& S_cross) {
  const Eigen::Index K = S_cross.cols();
  if (G_gram.rows() != K || G_gram.cols() != K)
    throw ConfigError("subspace_consistent: G_gram must be K x K");
  if (S_cross.rows() != S_cross.cols())
    throw ConfigError("subspace_consistent requires as many kernels as parameters (N = K)");
  if (c.size() != S_cross.rows())
    throw ConfigError("subspace_consistent: sample length must equal kernel count");

  Eigen::FullPivLU<Eigen::MatrixXcd> lu(S_cross);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible())
    throw UnidentifiableError("subspace_consistent: cross Gram S*G is singular",
                              Eigen::MatrixXd::Zero(K, 0));
  return lu.solve(c);
}

double subspace_consistent_mse(const Eigen::MatrixXcd& G_gram, const Eigen::MatrixXcd& S_cross,
                               const Eigen::MatrixXcd& S_gram, double sigma_c) {
  const Eigen::Index K = S_cross.cols();
  if (S_cross.rows() != K) throw ConfigError("subspace_consistent_mse requires N = K");
  if (G_gram.rows() != K || G_gram.cols() != K || S_gram.rows() != K || S_gram.cols() != K)
    throw ConfigError("subspace_consistent_mse: inconsistent Gram dimensions");
  if (!(sigma_c >= 0.0)) throw ConfigError("sigma_c must be >= 0");

  Eigen::FullPivLU<Eigen::MatrixXcd> lu(S_cross);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible())
    throw UnidentifiableError("subspace_consistent_mse: cross Gram S*G is singular",
                              Eigen::MatrixXd::Zero(K, 0));
  // B = S^{-1} S_gram S^{-H}: covariance transfer of the solve.
  const Eigen::MatrixXcd T1 = lu.solve(0.5 * (S_gram + S_gram.adjoint()));
  const Eigen::MatrixXcd B = lu.solve(T1.adjoint()).adjoint();
  return sigma_c * sigma_c * (0.5 * (G_gram + G_gram.adjoint()) * B).trace().real();
}

FourierCoeffVector bayes_linear_reconstruct(const Eigen::VectorXcd& c,
                                            const KernelBudgetPlan& plan, bool shrunk) {
  if (c.size() != static_cast<Eigen::Index>(plan.indices.size()))
    throw ConfigError("bayes_linear_reconstruct: sample/plan length mismatch");

  // Plan indices are ordered by eigenvalue; the coefficient vector needs
  // sorted support.
  std::vector<std::size_t> order(plan.indices.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return plan.indices[a] < plan.indices[b]; });

  FourierCoeffVector x;
  x.period = plan.period;
  x.support.reserve(order.size());
  x.values.resize(static_cast<Eigen::Index>(order.size()));
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t s = order[i];
    x.support.push_back(plan.indices[s]);
    const double alpha = shrunk ? plan.shrinkage[static_cast<Eigen::Index>(s)] : 1.0;
    x.values[static_cast<Eigen::Index>(i)] =
        alpha * c[static_cast<Eigen::Index>(s)] / plan.period;
  }
  return x;
}

}  // namespace fri
