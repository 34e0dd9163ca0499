// SPDX-License-Identifier: MIT

#include "fri/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace fri {

namespace {

void expect(bool cond, const std::string& msg) {
  if (!cond) throw ConfigError(msg);
}

std::size_t position_of(const std::vector<long>& sorted, long k) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), k);
  return static_cast<std::size_t>(it - sorted.begin());
}

bool contains(const std::vector<long>& sorted, long k) {
  return std::binary_search(sorted.begin(), sorted.end(), k);
}

}  // namespace

bool SamplingScheme::identity_mixing() const {
  if (mixing.rows() != mixing.cols()) return false;
  return mixing.isIdentity(1e-14);
}

bool SamplingScheme::symmetric_support() const {
  for (long f : freq_support)
    if (!contains(freq_support, -f)) return false;
  return true;
}

bool SamplingScheme::contiguous_support() const {
  for (std::size_t i = 1; i < freq_support.size(); ++i)
    if (freq_support[i] != freq_support[i - 1] + 1) return false;
  return !freq_support.empty();
}

SamplingScheme SamplingScheme::exponentials(std::vector<long> freqs, double T) {
  expect(T > 0.0, "scheme period must be positive");
  expect(!freqs.empty(), "scheme needs at least one frequency");
  std::sort(freqs.begin(), freqs.end());
  expect(std::adjacent_find(freqs.begin(), freqs.end()) == freqs.end(),
         "duplicate frequency in scheme");
  SamplingScheme s;
  s.base_period = T;
  const auto n = static_cast<Eigen::Index>(freqs.size());
  s.freq_support = std::move(freqs);
  s.mixing = Eigen::MatrixXcd::Identity(n, n);
  return s;
}

SamplingScheme SamplingScheme::contiguous(int N, double T) {
  expect(N >= 1, "scheme needs at least one kernel");
  std::vector<long> freqs(static_cast<std::size_t>(N));
  const long lo = -static_cast<long>(N / 2);
  for (int i = 0; i < N; ++i) freqs[static_cast<std::size_t>(i)] = lo + i;
  return exponentials(std::move(freqs), T);
}

SamplingScheme SamplingScheme::trig(int p_max, double T) {
  expect(p_max >= 0, "trig scheme needs p_max >= 0");
  expect(T > 0.0, "scheme period must be positive");
  SamplingScheme s;
  s.base_period = T;
  for (long f = -p_max; f <= p_max; ++f) s.freq_support.push_back(f);
  const int F = 2 * p_max + 1;
  s.mixing = Eigen::MatrixXcd::Zero(F, F);
  // Measurements are c = B (T y_F).  DC: c_0 = T y_0.
  // cos_p: <y, cos> = T (y_p + y_{-p}) / 2;  sin_p: <y, sin> = jT (y_p - y_{-p}) / 2.
  const auto col = [&](long f) { return static_cast<Eigen::Index>(position_of(s.freq_support, f)); };
  Eigen::Index row = 0;
  s.mixing(row++, col(0)) = 1.0;
  for (int p = 1; p <= p_max; ++p) {
    s.mixing(row, col(p)) = 0.5;
    s.mixing(row, col(-p)) = 0.5;
    ++row;
    s.mixing(row, col(p)) = std::complex<double>(0.0, 0.5);
    s.mixing(row, col(-p)) = std::complex<double>(0.0, -0.5);
    ++row;
  }
  return s;
}

SamplingScheme SamplingScheme::custom(std::vector<long> freqs, Eigen::MatrixXcd mixing, double T) {
  expect(T > 0.0, "scheme period must be positive");
  expect(!freqs.empty(), "scheme needs at least one frequency");
  expect(static_cast<std::size_t>(mixing.cols()) == freqs.size(),
         "mixing column count must equal frequency count");
  expect(mixing.rows() >= 1, "scheme needs at least one kernel");
  // Keep columns aligned with the sorted frequency list.
  std::vector<std::size_t> order(freqs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return freqs[a] < freqs[b]; });
  SamplingScheme s;
  s.base_period = T;
  s.mixing.resize(mixing.rows(), mixing.cols());
  for (std::size_t i = 0; i < order.size(); ++i) {
    s.freq_support.push_back(freqs[order[i]]);
    s.mixing.col(static_cast<Eigen::Index>(i)) = mixing.col(static_cast<Eigen::Index>(order[i]));
  }
  expect(std::adjacent_find(s.freq_support.begin(), s.freq_support.end()) == s.freq_support.end(),
         "duplicate frequency in scheme");
  return s;
}

SamplingScheme SamplingScheme::from_json(const nlohmann::json& j) {
  try {
    const std::string type = j.at("type").get<std::string>();
    const double T = j.value("period", 1.0);
    if (type == "trig") {
      return trig(j.at("p_max").get<int>(), T);
    }
    std::vector<long> freqs = j.at("freqs").get<std::vector<long>>();
    if (type == "exponential") return exponentials(std::move(freqs), T);
    if (type == "custom") {
      const auto& rows = j.at("mixing");
      Eigen::MatrixXcd B(rows.size(), freqs.size());
      for (Eigen::Index r = 0; r < B.rows(); ++r) {
        const auto& row = rows[static_cast<std::size_t>(r)];
        if (row.size() != freqs.size())
          throw ConfigError("mixing row length must equal frequency count");
        for (Eigen::Index c = 0; c < B.cols(); ++c) {
          const auto& cell = row[static_cast<std::size_t>(c)];
          B(r, c) = std::complex<double>(cell.at(0).get<double>(), cell.at(1).get<double>());
        }
      }
      return custom(std::move(freqs), std::move(B), T);
    }
    throw ConfigError("unknown scheme type: " + type);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid scheme JSON: ") + e.what());
  }
}

nlohmann::json SamplingScheme::to_json() const {
  nlohmann::json j;
  j["period"] = base_period;
  j["freqs"] = freq_support;
  if (identity_mixing()) {
    j["type"] = "exponential";
  } else {
    j["type"] = "custom";
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < mixing.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < mixing.cols(); ++c)
        row.push_back({mixing(r, c).real(), mixing(r, c).imag()});
      rows.push_back(row);
    }
    j["mixing"] = rows;
  }
  return j;
}

void NoiseSpec::validate() const {
  if (sigma_c < 0.0 || sigma_d < 0.0) throw ConfigError("noise std must be >= 0");
}

void NoiseSpec::validate_for_crb() const {
  validate();
  if (sigma_c == 0.0 && sigma_d == 0.0)
    throw NoiseModelError("Fisher information undefined at exactly zero noise");
}

Eigen::MatrixXcd gram(const SamplingScheme& scheme) {
  expect(scheme.mixing.rows() >= 1, "scheme needs at least one kernel");
  Eigen::MatrixXcd G = scheme.base_period * (scheme.mixing * scheme.mixing.adjoint());
  G = 0.5 * (G + G.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(G, Eigen::EigenvaluesOnly);
  const double mx = eig.eigenvalues().maxCoeff();
  if (!(mx > 0.0) || eig.eigenvalues().minCoeff() <= 1e-12 * mx)
    throw DegenerateSchemeError("sampling kernels are linearly dependent (singular Gramian)");
  return G;
}

Eigen::VectorXcd measurement_mean(const FourierCoeffVector& x, const SamplingScheme& scheme) {
  if (std::abs(x.period - scheme.base_period) > 1e-12 * std::max(x.period, scheme.base_period))
    throw ConfigError("signal/scheme period mismatch");
  Eigen::VectorXcd xf(static_cast<Eigen::Index>(scheme.freq_support.size()));
  for (std::size_t i = 0; i < scheme.freq_support.size(); ++i)
    xf[static_cast<Eigen::Index>(i)] = x.coeff(scheme.freq_support[i]);
  return scheme.mixing * (scheme.base_period * xf);
}

RealifiedScheme realify(const SamplingScheme& scheme) {
  RealifiedScheme rs;
  rs.period = scheme.base_period;

  std::set<long> vset;
  for (long f : scheme.freq_support) {
    vset.insert(f);
    vset.insert(-f);
  }
  rs.index_set.assign(vset.begin(), vset.end());
  const auto nv = static_cast<Eigen::Index>(rs.index_set.size());
  const int N = scheme.N();

  // Kernel n's coefficient row on V: sigma_k = conj(B_{nf}) at k = f.
  Eigen::MatrixXcd sigma = Eigen::MatrixXcd::Zero(N, nv);
  for (int n = 0; n < N; ++n)
    for (std::size_t i = 0; i < scheme.freq_support.size(); ++i)
      sigma(n, static_cast<Eigen::Index>(position_of(rs.index_set, scheme.freq_support[i]))) =
          std::conj(scheme.mixing(n, static_cast<Eigen::Index>(i)));

  // Mirror permutation on V (V is symmetric by construction).
  std::vector<Eigen::Index> mirror(static_cast<std::size_t>(nv));
  for (Eigen::Index i = 0; i < nv; ++i)
    mirror[static_cast<std::size_t>(i)] =
        static_cast<Eigen::Index>(position_of(rs.index_set, -rs.index_set[static_cast<std::size_t>(i)]));

  std::vector<Eigen::RowVectorXcd> rows;
  rs.chan_re.assign(static_cast<std::size_t>(N), -1);
  rs.chan_im.assign(static_cast<std::size_t>(N), -1);
  std::vector<double> scales;
  const std::complex<double> half_j(0.0, 0.5);
  for (int n = 0; n < N; ++n) {
    Eigen::RowVectorXcd rho(nv), eta(nv);
    for (Eigen::Index k = 0; k < nv; ++k) {
      const std::complex<double> s_k = sigma(n, k);
      const std::complex<double> s_mk = std::conj(sigma(n, mirror[static_cast<std::size_t>(k)]));
      rho[k] = 0.5 * (s_k + s_mk);      // coefficients of Re s_n
      eta[k] = half_j * (s_k - s_mk);   // coefficients of -Im s_n
    }
    const double knorm = sigma.row(n).norm();
    const bool has_re = rho.norm() > 1e-12 * knorm;
    const bool has_im = eta.norm() > 1e-12 * knorm;
    const double scale = (has_re && has_im) ? 0.5 : 1.0;
    if (has_re) {
      rs.chan_re[static_cast<std::size_t>(n)] = static_cast<int>(rows.size());
      rows.push_back(rho);
      scales.push_back(scale);
    }
    if (has_im) {
      rs.chan_im[static_cast<std::size_t>(n)] = static_cast<int>(rows.size());
      rows.push_back(eta);
      scales.push_back(scale);
    }
  }

  rs.R.resize(static_cast<Eigen::Index>(rows.size()), nv);
  rs.digital_scale.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    rs.R.row(static_cast<Eigen::Index>(r)) = rows[r];
    rs.digital_scale[static_cast<Eigen::Index>(r)] = scales[r];
  }
  return rs;
}

Eigen::MatrixXd real_gram(const RealifiedScheme& rs) {
  Eigen::MatrixXd G = (rs.period * (rs.R * rs.R.adjoint())).real();
  return 0.5 * (G + G.transpose());
}

Eigen::MatrixXd channel_covariance(const RealifiedScheme& rs, const NoiseSpec& noise) {
  noise.validate();
  Eigen::MatrixXd cov = (noise.sigma_c * noise.sigma_c) * real_gram(rs);
  cov.diagonal() += (noise.sigma_d * noise.sigma_d) * rs.digital_scale;
  return cov;
}

Eigen::VectorXcd sample_noisy(const FourierCoeffVector& x, const SamplingScheme& scheme,
                              const NoiseSpec& noise, TrialRng& rng) {
  noise.validate();
  Eigen::VectorXcd c = measurement_mean(x, scheme);
  if (noise.sigma_c == 0.0 && noise.sigma_d == 0.0) return c;

  const RealifiedScheme rs = realify(scheme);
  const Eigen::MatrixXd cov = channel_covariance(rs, noise);
  const Eigen::Index ch = cov.rows();

  Eigen::VectorXd z(ch);
  for (Eigen::Index i = 0; i < ch; ++i) z[i] = rng.gaussian();

  // Cholesky when positive definite; eigenvalue square root otherwise (the
  // covariance is only PSD when sigma_d = 0 and conjugate-pair kernels make
  // channels coincide -- the degenerate directions then correctly produce
  // identical noise on paired channels).
  Eigen::VectorXd w;
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() == Eigen::Success) {
    w = llt.matrixL() * z;
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    w = eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() * z;
  }

  for (int n = 0; n < scheme.N(); ++n) {
    const int ir = rs.chan_re[static_cast<std::size_t>(n)];
    const int ii = rs.chan_im[static_cast<std::size_t>(n)];
    c[n] += std::complex<double>(ir >= 0 ? w[ir] : 0.0, ii >= 0 ? w[ii] : 0.0);
  }
  return c;
}

Eigen::VectorXcd sample_noisy(const FourierCoeffVector& x, const SamplingScheme& scheme,
                              const NoiseSpec& noise, std::uint64_t seed, std::uint64_t trial) {
  TrialRng rng(seed, trial);
  return sample_noisy(x, scheme, noise, rng);
}

}  // namespace fri
