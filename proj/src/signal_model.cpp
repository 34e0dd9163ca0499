// SPDX-License-Identifier: MIT

#include "fri/signal_model.hpp"

#include "fri/kernels/phasor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace fri {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Split-array workspace sized to a pulse support, with the pulse
/// coefficients preloaded as (re, im) arrays.
struct SplitCoeffs {
  std::vector<double> re, im;
  explicit SplitCoeffs(const Eigen::VectorXcd& v) : re(v.size()), im(v.size()) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      re[static_cast<std::size_t>(i)] = v[i].real();
      im[static_cast<std::size_t>(i)] = v[i].imag();
    }
  }
  SplitCoeffs(const std::vector<std::complex<double>>& v) : re(v.size()), im(v.size()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      re[i] = v[i].real();
      im[i] = v[i].imag();
    }
  }
  explicit SplitCoeffs(std::size_t n) : re(n, 0.0), im(n, 0.0) {}
  void zero() {
    std::fill(re.begin(), re.end(), 0.0);
    std::fill(im.begin(), im.end(), 0.0);
  }
  Eigen::VectorXcd assemble() const {
    Eigen::VectorXcd out(re.size());
    for (std::size_t i = 0; i < re.size(); ++i)
      out[static_cast<Eigen::Index>(i)] = {re[i], im[i]};
    return out;
  }
};

/// out += s * phasor(theta(k) = rate * k) (*) other, walking the pulse runs.
/// `rate` is the phase increment per unit index; theta(k) = rate * k.
void accumulate_modulated(const FourierPulse& pulse, std::complex<double> s, double rate,
                          const SplitCoeffs& other, SplitCoeffs& out, SplitCoeffs& scratch) {
  for (const auto& [b, e] : pulse.runs()) {
    const std::size_t n = e - b;
    const double theta0 = rate * static_cast<double>(pulse.support()[b]);
    kernels::phasor_ramp(theta0, rate, n, scratch.re.data() + b, scratch.im.data() + b);
    kernels::cmul_accum(n, s, scratch.re.data() + b, scratch.im.data() + b,
                        other.re.data() + b, other.im.data() + b,
                        out.re.data() + b, out.im.data() + b);
  }
}

void expect(bool cond, const char* msg) {
  if (!cond) throw ConfigError(msg);
}

/// ceil with a tiny backoff so that exact integer ratios computed in floating
/// point (e.g. (t_b - t_a)/T == 1.0000000000000002) do not round up.
double ceil_safe(double x) { return std::ceil(x - 1e-12 * std::max(1.0, std::abs(x))); }

}  // namespace

const char* model_name(SignalModel m) {
  switch (m) {
    case SignalModel::periodic: return "periodic";
    case SignalModel::semi_periodic: return "semi_periodic";
    case SignalModel::subspace: return "subspace";
  }
  return "?";
}

int PulseStreamTheta::K() const {
  if (model == SignalModel::subspace) return static_cast<int>(amplitudes.size());
  return static_cast<int>(amplitudes.size() + delays.size());
}

Eigen::VectorXd PulseStreamTheta::pack() const {
  Eigen::VectorXd out(amplitudes.size() + delays.size());
  out << amplitudes, delays;
  return out;
}

PulseStreamTheta PulseStreamTheta::unpack(SignalModel model, const Eigen::VectorXd& packed,
                                          int L, int M) {
  expect(L >= 0 && M >= 1, "unpack: L must be >= 0 and M >= 1");
  PulseStreamTheta t;
  t.model = model;
  t.M = M;
  if (model == SignalModel::subspace) {
    t.amplitudes = packed;
    return t;
  }
  const Eigen::Index na = (model == SignalModel::periodic) ? L : static_cast<Eigen::Index>(L) * M;
  expect(packed.size() == na + L, "unpack: packed length inconsistent with (L, M)");
  t.amplitudes = packed.head(na);
  t.delays = packed.tail(L);
  return t;
}

void PulseStreamTheta::validate(const FourierPulse& pulse) const {
  switch (model) {
    case SignalModel::periodic: {
      expect(delays.size() >= 1, "periodic model needs at least one pulse");
      expect(amplitudes.size() == delays.size(),
             "periodic model needs one amplitude per delay");
      for (Eigen::Index l = 0; l < delays.size(); ++l)
        expect(delays[l] >= 0.0 && delays[l] < pulse.period(),
               "delays must lie in [0, T)");
      break;
    }
    case SignalModel::semi_periodic: {
      expect(M >= 1, "semi-periodic model needs M >= 1");
      expect(delays.size() >= 1, "semi-periodic model needs at least one pulse");
      expect(amplitudes.size() == delays.size() * M,
             "semi-periodic model needs L*M amplitudes");
      const double t_short = pulse.period() / M;
      for (Eigen::Index l = 0; l < delays.size(); ++l)
        expect(delays[l] >= 0.0 && delays[l] < t_short,
               "semi-periodic delays must lie in [0, T0/M)");
      break;
    }
    case SignalModel::subspace:
      throw ConfigError("subspace parameters validate against generators, not a pulse");
  }
}

bool check_no_overlap(PulseStreamTheta& theta, const FourierPulse& pulse, double t_a, double t_b) {
  expect(t_a <= t_b, "pulse time support must satisfy t_a <= t_b");
  theta.validate(pulse);
  const double window =
      (theta.model == SignalModel::semi_periodic) ? pulse.period() / theta.M : pulse.period();
  bool ok = true;
  for (Eigen::Index l = 0; l < theta.delays.size(); ++l) {
    const double t = theta.delays[l];
    if (t + t_a < 0.0 || t + t_b > window) ok = false;
  }
  theta.no_overlap = ok;
  return ok;
}

std::complex<double> FourierCoeffVector::coeff(long k) const {
  auto it = std::lower_bound(support.begin(), support.end(), k);
  if (it == support.end() || *it != k) return {0.0, 0.0};
  return values[static_cast<Eigen::Index>(it - support.begin())];
}

double FourierCoeffVector::energy() const { return period * values.squaredNorm(); }

bool FourierCoeffVector::conjugate_symmetric(double rel_tol) const {
  const double tol = rel_tol * (values.size() ? values.cwiseAbs().maxCoeff() : 0.0);
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (std::abs(coeff(-support[i]) - std::conj(values[static_cast<Eigen::Index>(i)])) > tol)
      return false;
  }
  return true;
}

bool JacobianMatrix::conjugate_symmetric(double rel_tol) const {
  if (D.size() == 0) return true;
  const double tol = rel_tol * D.cwiseAbs().maxCoeff();
  // Map index -> row once.
  for (std::size_t r = 0; r < support.size(); ++r) {
    auto it = std::lower_bound(support.begin(), support.end(), -support[r]);
    if (it == support.end() || *it != -support[r]) {
      if ((D.row(static_cast<Eigen::Index>(r)).cwiseAbs().array() > tol).any()) return false;
      continue;
    }
    const Eigen::Index rc = static_cast<Eigen::Index>(it - support.begin());
    if (((D.row(static_cast<Eigen::Index>(r)) - D.row(rc).conjugate()).cwiseAbs().array() > tol)
            .any())
      return false;
  }
  return true;
}

Eigen::MatrixXcd SubspaceGenerators::gram() const {
  // Parseval: gram(i, j) = <g_j, g_i> = T sum_k G(k,j) conj(G(k,i))
  //                      = T * (G^H G)(i, j).
  return period * (G.adjoint() * G);
}

FourierCoeffVector synthesize_fourier(const PulseStreamTheta& theta, const FourierPulse& pulse) {
  theta.validate(pulse);
  const std::size_t n = pulse.size();
  SplitCoeffs h(pulse.coeffs());
  SplitCoeffs out(n), scratch(n);

  if (theta.model == SignalModel::periodic) {
    const double T = pulse.period();
    for (Eigen::Index l = 0; l < theta.delays.size(); ++l)
      accumulate_modulated(pulse, theta.amplitudes[l], -kTwoPi * theta.delays[l] / T, h, out,
                           scratch);
  } else {
    // Semi-periodic on the long period T0 = M*T:
    //   x_q = g_q sum_l exp(-j 2 pi q t_l / T0) A_l(q),
    //   A_l(q) = sum_m a_l[m] exp(-j 2 pi q m / M).
    const double T0 = pulse.period();
    const int M = theta.M;
    SplitCoeffs ones(n);
    std::fill(ones.re.begin(), ones.re.end(), 1.0);
    SplitCoeffs acc(n), tmp(n);
    for (Eigen::Index l = 0; l < theta.delays.size(); ++l) {
      acc.zero();
      for (int m = 0; m < M; ++m)
        accumulate_modulated(pulse, theta.amplitudes[l * M + m],
                             -kTwoPi * static_cast<double>(m) / M, ones, acc, scratch);
      tmp.zero();
      accumulate_modulated(pulse, 1.0, -kTwoPi * theta.delays[l] / T0, acc, tmp, scratch);
      for (std::size_t i = 0; i < n; ++i) {
        const double pr = tmp.re[i] * h.re[i] - tmp.im[i] * h.im[i];
        const double pi = tmp.re[i] * h.im[i] + tmp.im[i] * h.re[i];
        out.re[i] += pr;
        out.im[i] += pi;
      }
    }
  }

  FourierCoeffVector x;
  x.period = pulse.period();
  x.support = pulse.support();
  x.values = out.assemble();
  return x;
}

FourierCoeffVector synthesize_fourier(const SubspaceGenerators& gen, const Eigen::VectorXd& theta) {
  expect(theta.size() == gen.G.cols(), "subspace theta length must equal generator count");
  FourierCoeffVector x;
  x.period = gen.period;
  x.support = gen.support;
  x.values = gen.G * theta.cast<std::complex<double>>();
  return x;
}

std::vector<std::complex<double>> evaluate_time(const FourierCoeffVector& x,
                                                const std::vector<double>& grid) {
  const std::size_t n = x.support.size();
  SplitCoeffs v(x.values), phs(n);
  // Contiguous runs of the support.
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i == n || x.support[i] != x.support[i - 1] + 1) {
      runs.emplace_back(begin, i);
      begin = i;
    }
  }
  std::vector<std::complex<double>> out;
  out.reserve(grid.size());
  for (double t : grid) {
    const double rate = kTwoPi * t / x.period;
    std::complex<double> acc = 0.0;
    for (const auto& [b, e] : runs) {
      const std::size_t len = e - b;
      kernels::phasor_ramp(rate * static_cast<double>(x.support[b]), rate, len,
                           phs.re.data() + b, phs.im.data() + b);
      acc += kernels::dot_cplx(len, phs.re.data() + b, phs.im.data() + b, v.re.data() + b,
                               v.im.data() + b);
    }
    out.push_back(acc);
  }
  return out;
}

std::vector<double> evaluate_time_real(const FourierCoeffVector& x,
                                       const std::vector<double>& grid) {
  const auto vals = evaluate_time(x, grid);
  double max_abs = 0.0, max_imag = 0.0;
  for (const auto& v : vals) {
    max_abs = std::max(max_abs, std::abs(v));
    max_imag = std::max(max_imag, std::abs(v.imag()));
  }
  if (max_imag > 1e-10 * std::max(1.0, max_abs))
    throw NumericalError("evaluate_time_real: signal is not real-valued");
  std::vector<double> out;
  out.reserve(vals.size());
  for (const auto& v : vals) out.push_back(v.real());
  return out;
}

JacobianMatrix jacobian_fourier(const PulseStreamTheta& theta, const FourierPulse& pulse) {
  theta.validate(pulse);
  const std::size_t n = pulse.size();
  const int L = theta.L();
  SplitCoeffs h(pulse.coeffs());
  SplitCoeffs col(n), scratch(n);

  JacobianMatrix jac;
  jac.period = pulse.period();
  jac.support = pulse.support();
  jac.D.resize(static_cast<Eigen::Index>(n), theta.K());

  Eigen::VectorXcd kvec(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    kvec[static_cast<Eigen::Index>(i)] = static_cast<double>(pulse.support()[i]);

  if (theta.model == SignalModel::periodic) {
    const double T = pulse.period();
    for (int l = 0; l < L; ++l) {
      col.zero();
      accumulate_modulated(pulse, 1.0, -kTwoPi * theta.delays[l] / T, h, col, scratch);
      jac.D.col(l) = col.assemble();
      // delay column = a_l * (-j 2 pi k / T) * amplitude column
      jac.D.col(L + l) = (std::complex<double>(0.0, -kTwoPi / T) * theta.amplitudes[l]) *
                         kvec.cwiseProduct(jac.D.col(l));
    }
  } else {
    const double T0 = pulse.period();
    const int M = theta.M;
    SplitCoeffs ones(n);
    std::fill(ones.re.begin(), ones.re.end(), 1.0);
    SplitCoeffs acc(n), tmp(n);
    for (int l = 0; l < L; ++l) {
      const double rate_l = -kTwoPi * theta.delays[l] / T0;
      // Amplitude columns: g_q exp(-j 2 pi q t_l / T0) exp(-j 2 pi q m / M).
      for (int m = 0; m < M; ++m) {
        col.zero();
        accumulate_modulated(pulse, 1.0, rate_l - kTwoPi * static_cast<double>(m) / M, h, col,
                             scratch);
        jac.D.col(static_cast<Eigen::Index>(l) * M + m) = col.assemble();
      }
      // Delay column: g_q (-j 2 pi q / T0) exp(-j 2 pi q t_l / T0) A_l(q).
      acc.zero();
      for (int m = 0; m < M; ++m)
        accumulate_modulated(pulse, theta.amplitudes[static_cast<Eigen::Index>(l) * M + m],
                             -kTwoPi * static_cast<double>(m) / M, ones, acc, scratch);
      tmp.zero();
      accumulate_modulated(pulse, 1.0, rate_l, acc, tmp, scratch);
      col.zero();
      for (std::size_t i = 0; i < n; ++i) {
        col.re[i] = tmp.re[i] * h.re[i] - tmp.im[i] * h.im[i];
        col.im[i] = tmp.re[i] * h.im[i] + tmp.im[i] * h.re[i];
      }
      jac.D.col(static_cast<Eigen::Index>(L) * M + l) =
          std::complex<double>(0.0, -kTwoPi / T0) * kvec.cwiseProduct(col.assemble());
    }
  }

  for (Eigen::Index c = 0; c < jac.D.cols(); ++c) {
    if (jac.D.col(c).norm() == 0.0)
      throw ConfigError("jacobian column " + std::to_string(c) +
                        " is identically zero (locally redundant parametrization)");
  }
  return jac;
}

JacobianMatrix jacobian_fourier(const SubspaceGenerators& gen) {
  JacobianMatrix jac;
  jac.period = gen.period;
  jac.support = gen.support;
  jac.D = gen.G;
  for (Eigen::Index c = 0; c < jac.D.cols(); ++c) {
    if (jac.D.col(c).norm() == 0.0)
      throw ConfigError("generator " + std::to_string(c) + " is identically zero");
  }
  return jac;
}

double rate_of_innovation_periodic(int L, double T0) {
  if (L < 1 || !(T0 > 0.0)) throw ConfigError("rate_of_innovation: L >= 1 and T0 > 0 required");
  return 2.0 * L / T0;
}

double rate_of_innovation_shift_invariant(double T, int M, double t_a, double t_b) {
  if (M <= 0 || !(T > 0.0)) throw ConfigError("rate_of_innovation: M > 0 and T > 0 required");
  if (t_b < t_a) throw ConfigError("rate_of_innovation: t_b >= t_a required");
  return (1.0 / T) * (1.0 + ceil_safe((t_b - t_a) / T) / M);
}

double rate_of_innovation_semi_periodic(int L, int M, double T, double t_a, double t_b) {
  if (L < 1 || M <= 0 || !(T > 0.0))
    throw ConfigError("rate_of_innovation: L >= 1, M > 0, T > 0 required");
  if (t_b < t_a) throw ConfigError("rate_of_innovation: t_b >= t_a required");
  return (static_cast<double>(L) / T) * (1.0 + (1.0 + ceil_safe((t_b - t_a) / T)) / M);
}

double signal_mse(const FourierCoeffVector& a, const FourierCoeffVector& b) {
  if (std::abs(a.period - b.period) > 1e-12 * std::max(a.period, b.period))
    throw ConfigError("signal_mse: period mismatch");
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.support.size() || j < b.support.size()) {
    long ka = i < a.support.size() ? a.support[i] : std::numeric_limits<long>::max();
    long kb = j < b.support.size() ? b.support[j] : std::numeric_limits<long>::max();
    std::complex<double> d;
    if (ka == kb) {
      d = a.values[static_cast<Eigen::Index>(i++)] - b.values[static_cast<Eigen::Index>(j++)];
    } else if (ka < kb) {
      d = a.values[static_cast<Eigen::Index>(i++)];
    } else {
      d = -b.values[static_cast<Eigen::Index>(j++)];
    }
    sum += std::norm(d);
  }
  return a.period * sum;
}

}  // namespace fri
