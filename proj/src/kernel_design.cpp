// SPDX-License-Identifier: MIT

#include "fri/kernel_design.hpp"

#include <algorithm>
#include <cmath>

namespace fri {

namespace {

/// Tie order for equal eigenvalues: smaller |index| first, then positive
/// before negative.
bool index_tie_before(long a, long b) {
  const long aa = std::labs(a), ab = std::labs(b);
  if (aa != ab) return aa < ab;
  return a > b;
}

/// Hermitian square root and inverse square root via eigendecomposition.
struct HermitianRoots {
  Eigen::MatrixXcd sqrt, inv_sqrt;
};

HermitianRoots hermitian_roots(const Eigen::MatrixXcd& A, double rank_tol, const char* what) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (A + A.adjoint()));
  if (eig.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  const Eigen::VectorXd vals = eig.eigenvalues();
  const double mx = vals.maxCoeff();
  if (!(mx > 0.0) || vals.minCoeff() <= rank_tol * mx)
    throw DegenerateSchemeError(std::string(what) + " is singular");
  HermitianRoots r;
  const Eigen::VectorXd s = vals.cwiseSqrt();
  r.sqrt = eig.eigenvectors() * s.asDiagonal() * eig.eigenvectors().adjoint();
  r.inv_sqrt = eig.eigenvectors() * s.cwiseInverse().asDiagonal() * eig.eigenvectors().adjoint();
  return r;
}

}  // namespace

SpectrumDesign periodic_spectrum(const FourierPulse& pulse, int L, double sigma_a) {
  if (L < 1) throw ConfigError("periodic_spectrum requires L >= 1");
  if (!(sigma_a > 0.0)) throw ConfigError("periodic_spectrum requires sigma_a > 0");
  const double T = pulse.period();
  const double scale = static_cast<double>(L) * sigma_a * sigma_a * T;

  std::vector<std::size_t> order(pulse.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<double> lam(pulse.size());
  for (std::size_t i = 0; i < pulse.size(); ++i)
    lam[i] = scale * std::norm(pulse.coeffs()[i]);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (lam[a] != lam[b]) return lam[a] > lam[b];
    return index_tie_before(pulse.support()[a], pulse.support()[b]);
  });

  SpectrumDesign spec;
  spec.period = T;
  spec.L = L;
  spec.sigma_a = sigma_a;
  spec.indices.reserve(order.size());
  spec.eigenvalues.resize(static_cast<Eigen::Index>(order.size()));
  for (std::size_t i = 0; i < order.size(); ++i) {
    spec.indices.push_back(pulse.support()[order[i]]);
    spec.eigenvalues[static_cast<Eigen::Index>(i)] = lam[order[i]];
  }
  return spec;
}

KernelBudgetPlan top_n_kernels(const SpectrumDesign& spec, int N, double sigma_c) {
  if (N <= 0) throw ConfigError("kernel budget must be positive");
  if (sigma_c < 0.0) throw ConfigError("sigma_c must be >= 0");
  if (spec.indices.size() != static_cast<std::size_t>(spec.eigenvalues.size()))
    throw ConfigError("spectrum indices/eigenvalues length mismatch");

  KernelBudgetPlan plan;
  plan.period = spec.period;
  plan.budget = N;
  plan.sigma_c = sigma_c;

  int take = 0;
  for (Eigen::Index i = 0; i < spec.eigenvalues.size() && take < N; ++i) {
    if (spec.eigenvalues[i] > 0.0) ++take;
    else break;  // spectrum is sorted descending; rest are zero
  }
  plan.saturated = take < N;

  plan.indices.assign(spec.indices.begin(), spec.indices.begin() + take);
  plan.eigenvalues = spec.eigenvalues.head(take);
  plan.shrinkage.resize(take);
  for (int i = 0; i < take; ++i) {
    const double lam = plan.eigenvalues[i];
    plan.shrinkage[i] = lam / (lam + sigma_c * sigma_c);
  }

  // Note a tie at the selection boundary (the chosen set is then one of
  // several equally optimal plans).
  if (take > 0 && take < static_cast<int>(spec.indices.size()) &&
      spec.eigenvalues[take - 1] == spec.eigenvalues[take]) {
    plan.tie_break_note =
        "boundary tie broken by smaller |index| first, positive before negative";
  }
  if (plan.saturated)
    plan.tie_break_note += std::string(plan.tie_break_note.empty() ? "" : "; ") +
                           "budget exceeds nonzero spectrum; plan truncated";
  return plan;
}

nlohmann::json KernelBudgetPlan::to_json() const {
  nlohmann::json j;
  j["period"] = period;
  j["budget"] = budget;
  j["sigma_c"] = sigma_c;
  j["indices"] = indices;
  j["eigenvalues"] = std::vector<double>(eigenvalues.data(), eigenvalues.data() + eigenvalues.size());
  j["shrinkage"] = std::vector<double>(shrinkage.data(), shrinkage.data() + shrinkage.size());
  j["saturated"] = saturated;
  if (!tie_break_note.empty()) j["tie_break_note"] = tie_break_note;
  j["kernels"] = "unit exponentials exp(j*2*pi*p*t/T); sample c_n = T*x_{p_n} + noise";
  return j;
}

KernelBudgetPlan KernelBudgetPlan::from_json(const nlohmann::json& j) {
  try {
    KernelBudgetPlan p;
    p.period = j.at("period").get<double>();
    p.budget = j.at("budget").get<int>();
    p.sigma_c = j.value("sigma_c", 0.0);
    p.indices = j.at("indices").get<std::vector<long>>();
    const auto ev = j.at("eigenvalues").get<std::vector<double>>();
    const auto sh = j.at("shrinkage").get<std::vector<double>>();
    if (ev.size() != p.indices.size() || sh.size() != p.indices.size())
      throw ConfigError("plan arrays must have equal length");
    p.eigenvalues = Eigen::Map<const Eigen::VectorXd>(ev.data(), static_cast<Eigen::Index>(ev.size()));
    p.shrinkage = Eigen::Map<const Eigen::VectorXd>(sh.data(), static_cast<Eigen::Index>(sh.size()));
    p.saturated = j.value("saturated", false);
    p.tie_break_note = j.value("tie_break_note", std::string());
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid plan JSON: ") + e.what());
  }
}

double bayes_linear_mse(const SpectrumDesign& spec, int N, double sigma_c) {
  const KernelBudgetPlan plan = top_n_kernels(spec, N, sigma_c);
  double captured = 0.0;
  for (Eigen::Index i = 0; i < plan.eigenvalues.size(); ++i) {
    const double lam = plan.eigenvalues[i];
    if (lam > 0.0) captured += lam * lam / (lam + sigma_c * sigma_c);
  }
  return spec.total_energy() - captured;
}

double truncated_projection_mse(const SpectrumDesign& spec, int N, double sigma_c) {
  const KernelBudgetPlan plan = top_n_kernels(spec, N, sigma_c);
  const double kept = plan.eigenvalues.sum();
  return (spec.total_energy() - kept) + plan.size() * sigma_c * sigma_c;
}

KltBasis klt_subspace(const Eigen::MatrixXcd& G_gram, const Eigen::MatrixXcd& R_theta) {
  const Eigen::Index K = G_gram.rows();
  if (G_gram.cols() != K || R_theta.rows() != K || R_theta.cols() != K)
    throw ConfigError("klt_subspace: G_gram and R_theta must be K x K");

  // R_theta must be PSD (it is a covariance).
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (R_theta + R_theta.adjoint()),
                                                        Eigen::EigenvaluesOnly);
    const double mx = std::max(eig.eigenvalues().maxCoeff(), 0.0);
    if (eig.eigenvalues().minCoeff() < -1e-10 * std::max(mx, 1.0))
      throw ConstraintViolationError("klt_subspace: R_theta is not positive semidefinite");
  }

  const HermitianRoots g = hermitian_roots(G_gram, 1e-12, "generator Gram matrix");
  Eigen::MatrixXcd C = g.sqrt * (0.5 * (R_theta + R_theta.adjoint())) * g.sqrt;
  C = 0.5 * (C + C.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(C);
  if (eig.info() != Eigen::Success) throw NumericalError("klt_subspace: eigendecomposition failed");

  // Eigen returns ascending order; flip to descending.
  KltBasis basis;
  basis.eigenvalues.resize(K);
  basis.coords.resize(K, K);
  const Eigen::MatrixXcd psi = g.inv_sqrt * eig.eigenvectors();
  for (Eigen::Index i = 0; i < K; ++i) {
    basis.eigenvalues[i] = std::max(eig.eigenvalues()[K - 1 - i], 0.0);
    basis.coords.col(i) = psi.col(K - 1 - i);
  }

  // The eigenfunctions must come out orthonormal: Psi^H G Psi = I.
  const Eigen::MatrixXcd check = basis.coords.adjoint() * G_gram * basis.coords;
  if ((check - Eigen::MatrixXcd::Identity(K, K)).cwiseAbs().maxCoeff() > 1e-8)
    throw NumericalError("klt_subspace: eigenfunction orthonormality check failed");
  return basis;
}

double brute_force_design_objective(const Eigen::MatrixXcd& A, const Eigen::VectorXd& lambdas,
                                    double sigma_c) {
  if (A.cols() != lambdas.size())
    throw ConfigError("design objective: A columns must match eigenvalue count");
  if (sigma_c < 0.0) throw ConfigError("sigma_c must be >= 0");
  for (Eigen::Index k = 0; k < lambdas.size(); ++k)
    if (lambdas[k] < 0.0) throw ConfigError("eigenvalues must be >= 0");

  const Eigen::MatrixXcd AAh = A * A.adjoint();
  if ((AAh - Eigen::MatrixXcd::Identity(A.rows(), A.rows())).cwiseAbs().maxCoeff() > 1e-10)
    throw ConstraintViolationError("design matrix rows are not orthonormal");

  double value = 0.0;
  for (Eigen::Index n = 0; n < A.rows(); ++n) {
    for (Eigen::Index k = 0; k < A.cols(); ++k) {
      const double lam = lambdas[k];
      const double denom = lam + sigma_c * sigma_c;
      if (denom > 0.0) value += std::norm(A(n, k)) * lam * lam / denom;
    }
  }
  return value;
}

}  // namespace fri
