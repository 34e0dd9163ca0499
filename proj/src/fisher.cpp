// SPDX-License-Identifier: MIT

#include "fri/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fri {

namespace {

constexpr double kRankTol = 1e-12;      // identifiability rank tolerance
constexpr double kHardSingular = 1e-15; // below this, crb_trace refuses
constexpr double kIllCond = 1e12;       // tagging threshold

/// Embeds the Jacobian rows onto an index set (zero rows for absent indices).
Eigen::MatrixXcd embed_rows(const JacobianMatrix& D, const std::vector<long>& index_set) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(index_set.size()),
                                                D.D.cols());
  std::size_t pos = 0;
  for (std::size_t i = 0; i < index_set.size(); ++i) {
    while (pos < D.support.size() && D.support[pos] < index_set[i]) ++pos;
    if (pos < D.support.size() && D.support[pos] == index_set[i])
      out.row(static_cast<Eigen::Index>(i)) = D.D.row(static_cast<Eigen::Index>(pos));
  }
  return out;
}

/// Real channel sensitivity map W(m, i) = d(channel m)/d(theta_i)
///                                      = T * Re( conj(R) D )(m, i).
/// Exact for real-valued models; the imaginary residue is asserted small.
Eigen::MatrixXd realified_map(const JacobianMatrix& D, const RealifiedScheme& rs) {
  const Eigen::MatrixXcd Dv = embed_rows(D, rs.index_set);
  const Eigen::MatrixXcd W = rs.period * (rs.R.conjugate() * Dv);
  const double scale = std::max(1.0, W.cwiseAbs().maxCoeff());
  if (W.imag().cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw NumericalError("sampled sensitivity map has a complex residue; model is not real-valued");
  return W.real();
}

void check_model_real(const JacobianMatrix& D) {
  if (!D.conjugate_symmetric())
    throw ConfigError(
        "sampled-CRB machinery requires a real-valued model (conjugate-symmetric Jacobian)");
}

void check_periods(double a, double b) {
  if (std::abs(a - b) > 1e-12 * std::max(a, b))
    throw ConfigError("Jacobian/scheme period mismatch");
}

Eigen::MatrixXd null_basis_from_eig(const Eigen::MatrixXd& vecs, const Eigen::VectorXd& vals,
                                    double tol) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    if (vals[i] <= tol) idx.push_back(i);
  Eigen::MatrixXd basis(vecs.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    basis.col(static_cast<Eigen::Index>(i)) = vecs.col(idx[i]);
  return basis;
}

}  // namespace

FisherMatrix FisherMatrix::make(Eigen::MatrixXd mat, Provenance prov, double sigma_c,
                                double sigma_d) {
  if (mat.rows() != mat.cols() || mat.rows() == 0)
    throw ConfigError("Fisher matrix must be square and nonempty");
  FisherMatrix f;
  f.mat_ = 0.5 * (mat + mat.transpose());
  f.provenance_ = prov;
  f.sigma_c_ = sigma_c;
  f.sigma_d_ = sigma_d;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(f.mat_);
  if (eig.info() != Eigen::Success) throw NumericalError("Fisher eigendecomposition failed");
  Eigen::VectorXd vals = eig.eigenvalues();
  const double mx = vals.cwiseAbs().maxCoeff();
  if (vals.minCoeff() < -1e-10 * mx)
    throw NumericalError("Fisher matrix is not positive semidefinite");
  f.eigenvalues_ = vals.cwiseMax(0.0);
  f.eigenvectors_ = eig.eigenvectors();
  const double mn = f.eigenvalues_.minCoeff();
  f.condition_number_ =
      (mn > 0.0) ? f.eigenvalues_.maxCoeff() / mn : std::numeric_limits<double>::infinity();
  return f;
}

Eigen::MatrixXd m_matrix(const JacobianMatrix& D) {
  if (D.D.size() == 0) throw ConfigError("empty Jacobian");
  const Eigen::MatrixXcd G = D.period * (D.D.adjoint() * D.D);
  Eigen::MatrixXd M = G.real();
  if (D.conjugate_symmetric()) {
    const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    if (G.imag().cwiseAbs().maxCoeff() > 1e-10 * scale)
      throw NumericalError("m_matrix: unexpected complex residue for a real model");
  }
  return 0.5 * (M + M.transpose());
}

FisherMatrix fim_continuous(const JacobianMatrix& D, double sigma_c) {
  if (!(sigma_c > 0.0)) throw NoiseModelError("fim_continuous requires sigma_c > 0");
  return FisherMatrix::make(m_matrix(D) / (sigma_c * sigma_c), FisherMatrix::Provenance::continuous,
                            sigma_c, 0.0);
}

FisherMatrix fim_sampled(const JacobianMatrix& D, const SamplingScheme& scheme,
                         const NoiseSpec& noise) {
  noise.validate_for_crb();
  check_periods(D.period, scheme.base_period);
  check_model_real(D);
  const double T = D.period;

  // Fast path: conjugate-symmetric pure-exponential scheme, continuous noise
  // only.  The projection onto the sampled band gives
  //   J = (T / sigma_c^2) Re(D_F^H D_F).
  if (noise.sigma_d == 0.0 && scheme.identity_mixing() && scheme.symmetric_support()) {
    const Eigen::MatrixXcd Df = embed_rows(D, scheme.freq_support);
    const Eigen::MatrixXd J = (T / (noise.sigma_c * noise.sigma_c)) * (Df.adjoint() * Df).real();
    return FisherMatrix::make(J, FisherMatrix::Provenance::sampled, noise.sigma_c, noise.sigma_d);
  }

  // General path in the real channel basis.
  gram(scheme);  // enforces kernel linear independence (DegenerateSchemeError)
  const RealifiedScheme rs = realify(scheme);
  const Eigen::MatrixXd W = realified_map(D, rs);
  const Eigen::MatrixXd cov = channel_covariance(rs, noise);

  Eigen::MatrixXd J;
  if (noise.sigma_d > 0.0) {
    // Positive definite: digital noise puts mass on every channel.
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success)
      throw NumericalError("channel covariance factorization failed");
    J = W.transpose() * llt.solve(W);
  } else {
    // sigma_d = 0: the channel covariance is PSD with exact degeneracies
    // (conjugate-pair channels coincide).  Those null directions carry no
    // signal either, so a pseudo-inverse is exact.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    const Eigen::VectorXd vals = eig.eigenvalues();
    const double mx = vals.maxCoeff();
    if (!(mx > 0.0)) throw DegenerateSchemeError("channel covariance is identically zero");
    const Eigen::MatrixXd Wt = eig.eigenvectors().transpose() * W;  // rotated map
    J = Eigen::MatrixXd::Zero(W.cols(), W.cols());
    double dropped = 0.0;
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
      if (vals[i] > kRankTol * mx) {
        J.noalias() += Wt.row(i).transpose() * Wt.row(i) / vals[i];
      } else {
        dropped = std::max(dropped, Wt.row(i).cwiseAbs().maxCoeff());
      }
    }
    if (dropped > 1e-8 * std::max(1.0, W.cwiseAbs().maxCoeff()))
      throw NumericalError("zero-noise channel direction carries signal; covariance model invalid");
  }
  return FisherMatrix::make(J, FisherMatrix::Provenance::sampled, noise.sigma_c, noise.sigma_d);
}

namespace {

CrbValue crb_from_eig(const Eigen::MatrixXd& M, const FisherMatrix& J, bool clip) {
  if (M.rows() != M.cols() || M.rows() != J.mat().rows())
    throw ConfigError("crb_trace: M and J dimensions must agree");
  const Eigen::VectorXd& vals = J.eigenvalues();
  const Eigen::MatrixXd& vecs = J.eigenvectors();
  const double mx = vals.maxCoeff();

  if (!(mx > 0.0)) {
    if (!clip) {
      throw UnidentifiableError("Fisher information is identically zero",
                                Eigen::MatrixXd::Identity(J.K(), J.K()));
    }
    CrbValue v;
    v.mse_bound = std::numeric_limits<double>::infinity();
    v.K = J.K();
    v.per_parameter = Eigen::VectorXd::Constant(J.K(), std::numeric_limits<double>::infinity());
    v.condition_number = std::numeric_limits<double>::infinity();
    v.ill_conditioned = true;
    return v;
  }

  bool clipped_any = false;
  Eigen::VectorXd lam = vals;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam[i] <= kHardSingular * mx) {
      if (!clip)
        throw UnidentifiableError(
            "Fisher information is singular: unidentifiable parameter directions",
            null_basis_from_eig(vecs, vals, kRankTol * mx));
      lam[i] = kHardSingular * mx;
      clipped_any = true;
    }
  }

  // Tr(M J^{-1}) = sum_i v_i^T M v_i / lam_i ; diagonal contributions from
  // diag(M V Lam^{-1} V^T).
  const Eigen::MatrixXd MV = M * vecs;
  CrbValue v;
  v.K = J.K();
  v.per_parameter = Eigen::VectorXd::Zero(J.K());
  double total = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    total += vecs.col(i).dot(MV.col(i)) / lam[i];
    v.per_parameter += MV.col(i).cwiseProduct(vecs.col(i)) / lam[i];
  }
  v.mse_bound = total;
  v.condition_number = J.condition_number();
  v.ill_conditioned = clipped_any || !(v.condition_number <= kIllCond);
  return v;
}

}  // namespace

CrbValue crb_trace(const Eigen::MatrixXd& M, const FisherMatrix& J) {
  return crb_from_eig(M, J, /*clip=*/false);
}

CrbValue crb_trace_clipped(const Eigen::MatrixXd& M, const FisherMatrix& J) {
  CrbValue v = crb_from_eig(M, J, /*clip=*/true);
  v.ill_conditioned = true;
  return v;
}

CrbValue crb_continuous(int K, double sigma_c) {
  if (K < 1) throw ConfigError("crb_continuous requires K >= 1");
  if (!(sigma_c > 0.0)) throw NoiseModelError("crb_continuous requires sigma_c > 0");
  CrbValue v;
  v.K = K;
  v.mse_bound = K * sigma_c * sigma_c;
  v.per_parameter = Eigen::VectorXd::Constant(K, sigma_c * sigma_c);
  v.condition_number = 1.0;
  v.ill_conditioned = false;
  return v;
}

double crb_continuous_normalized(int K, double sigma_c, double window) {
  if (!(window > 0.0)) throw ConfigError("normalized CRB requires a positive window");
  return crb_continuous(K, sigma_c).mse_bound / window;
}

CrbValue subspace_crb(const Eigen::MatrixXcd& G_gram, const Eigen::MatrixXcd& S_cross,
                      const Eigen::MatrixXcd& S_gram, double sigma_c) {
  if (!(sigma_c > 0.0)) throw NoiseModelError("subspace_crb requires sigma_c > 0");
  const Eigen::Index K = G_gram.rows();
  const Eigen::Index N = S_gram.rows();
  if (G_gram.cols() != K || S_gram.cols() != N || S_cross.rows() != N || S_cross.cols() != K)
    throw ConfigError("subspace_crb: inconsistent Gram dimensions");

  Eigen::LLT<Eigen::MatrixXcd> llt(0.5 * (S_gram + S_gram.adjoint()));
  if (llt.info() != Eigen::Success)
    throw DegenerateSchemeError("kernel Gram matrix is not positive definite");

  Eigen::MatrixXcd X = S_cross.adjoint() * llt.solve(S_cross);
  X = 0.5 * (X + X.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(X);
  const Eigen::VectorXd vals = eig.eigenvalues();
  const double mx = vals.maxCoeff();
  if (!(mx > 0.0) || vals.minCoeff() <= kRankTol * mx) {
    // Report the blind directions as a real basis [Re; Im] stacked.
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < vals.size(); ++i)
      if (!(mx > 0.0) || vals[i] <= kRankTol * mx) idx.push_back(i);
    Eigen::MatrixXd basis(2 * K, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) {
      basis.col(static_cast<Eigen::Index>(i)).head(K) = eig.eigenvectors().col(idx[i]).real();
      basis.col(static_cast<Eigen::Index>(i)).tail(K) = eig.eigenvectors().col(idx[i]).imag();
    }
    throw UnidentifiableError("subspace_crb: generator subspace meets the kernels' orthogonal "
                              "complement (S*G singular)",
                              basis);
  }

  const Eigen::MatrixXcd U = eig.eigenvectors();
  const Eigen::MatrixXcd GU = 0.5 * (G_gram + G_gram.adjoint()) * U;
  CrbValue v;
  v.K = static_cast<int>(K);
  v.per_parameter = Eigen::VectorXd::Zero(K);
  double total = 0.0;
  for (Eigen::Index i = 0; i < K; ++i) {
    total += (U.col(i).dot(GU.col(i))).real() / vals[i];
    v.per_parameter += (GU.col(i).cwiseProduct(U.col(i).conjugate()) / vals[i]).real();
  }
  v.mse_bound = sigma_c * sigma_c * total;
  v.per_parameter *= sigma_c * sigma_c;
  v.condition_number = mx / vals.minCoeff();
  v.ill_conditioned = !(v.condition_number <= kIllCond);
  return v;
}

IdentifiabilityReport identifiability(const JacobianMatrix& D, const SamplingScheme& scheme) {
  check_periods(D.period, scheme.base_period);
  check_model_real(D);
  const RealifiedScheme rs = realify(scheme);
  const Eigen::MatrixXd W = realified_map(D, rs);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(W, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double mx = sv.size() ? sv.maxCoeff() : 0.0;
  IdentifiabilityReport rep;
  rep.K = D.K();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > kRankTol * mx && mx > 0.0) ++rank;
  rep.rank = rank;
  rep.identifiable = (rank == rep.K);
  if (!rep.identifiable) {
    rep.null_basis = svd.matrixV().rightCols(rep.K - rank);
  } else {
    rep.null_basis.resize(rep.K, 0);
  }
  return rep;
}

}  // namespace fri
