// Tests for sampling schemes, kernel Gram matrices, and the joint
// continuous/digital noise model (covariance law, real-channel bookkeeping,
// reproducible draws).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fri/errors.hpp>
#include <fri/sampling.hpp>
#include <fri/signal_model.hpp>

#include <cmath>
#include <complex>
#include <vector>

using namespace fri;
using Cplx = std::complex<double>;

namespace {

FourierCoeffVector coeffs(double period, std::vector<long> support, std::vector<Cplx> values) {
  FourierCoeffVector x;
  x.period = period;
  x.support = std::move(support);
  x.values = Eigen::Map<Eigen::VectorXcd>(values.data(), static_cast<Eigen::Index>(values.size()));
  return x;
}

FourierCoeffVector zero_signal(double period) { return coeffs(period, {0}, {Cplx(0, 0)}); }

}  // namespace

// ---- Gram matrices -------------------------------------------------------------

TEST_CASE("distinct exponential kernels are orthogonal with norm T") {
  const auto s1 = SamplingScheme::exponentials({-2, 0, 5}, 1.0);
  const Eigen::MatrixXcd g1 = gram(s1);
  CHECK((g1 - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);

  const auto s2 = SamplingScheme::exponentials({-1, 1}, 2.5);
  const Eigen::MatrixXcd g2 = gram(s2);
  CHECK((g2 - 2.5 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("trig kernels have squared norms T and T/2") {
  const auto s = SamplingScheme::trig(2, 1.0);
  REQUIRE(s.N() == 5);
  const Eigen::MatrixXcd g = gram(s);
  Eigen::VectorXd expect(5);
  expect << 1.0, 0.5, 0.5, 0.5, 0.5;
  CHECK((g.diagonal().real() - expect).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(g.imag().cwiseAbs().maxCoeff() < 1e-14);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (i != j) CHECK(std::abs(g(i, j)) < 1e-14);
}

TEST_CASE("linearly dependent kernels are rejected") {
  Eigen::MatrixXcd mixing(2, 3);
  mixing << 1, 2, 0, 2, 4, 0;  // second row is twice the first
  const auto s = SamplingScheme::custom({-1, 0, 1}, mixing, 1.0);
  CHECK_THROWS_AS((void)gram(s), DegenerateSchemeError);
}

// ---- scheme predicates ----------------------------------------------------------

TEST_CASE("scheme predicates reflect support and mixing structure") {
  const auto odd = SamplingScheme::contiguous(5, 1.0);
  CHECK(odd.freq_support == std::vector<long>({-2, -1, 0, 1, 2}));
  CHECK(odd.identity_mixing());
  CHECK(odd.symmetric_support());
  CHECK(odd.contiguous_support());

  const auto even = SamplingScheme::contiguous(4, 1.0);
  CHECK(even.freq_support == std::vector<long>({-2, -1, 0, 1}));
  CHECK_FALSE(even.symmetric_support());
  CHECK(even.contiguous_support());

  const auto gapped = SamplingScheme::exponentials({-2, 0, 2}, 1.0);
  CHECK(gapped.symmetric_support());
  CHECK_FALSE(gapped.contiguous_support());

  const auto t = SamplingScheme::trig(1, 1.0);
  CHECK_FALSE(t.identity_mixing());
  CHECK(t.symmetric_support());
}

// ---- noiseless measurements ------------------------------------------------------

TEST_CASE("measurement mean is T times the picked coefficients") {
  const auto x = coeffs(1.0, {0}, {Cplx(1, 0)});
  const auto s = SamplingScheme::exponentials({0}, 1.0);
  const Eigen::VectorXcd mu = measurement_mean(x, s);
  REQUIRE(mu.size() == 1);
  CHECK(std::abs(mu[0] - Cplx(1, 0)) < 1e-15);
}

TEST_CASE("sampling a quarter-period pulse through one exponential kernel") {
  // x_1 = -2j; the matching kernel reads T x_1.
  const FourierPulse pulse = FourierPulse::flat(1);
  PulseStreamTheta theta;
  theta.model = SignalModel::periodic;
  theta.amplitudes = Eigen::VectorXd::Constant(1, 2.0);
  theta.delays = Eigen::VectorXd::Constant(1, 0.25);
  const auto x = synthesize_fourier(theta, pulse);
  const Eigen::VectorXcd mu = measurement_mean(x, SamplingScheme::exponentials({1}, 1.0));
  CHECK(std::abs(mu[0] - Cplx(0, -2)) < 1e-14);
}

TEST_CASE("kernels outside the signal band read zero") {
  const auto x = coeffs(1.0, {0}, {Cplx(3, 1)});
  const Eigen::VectorXcd mu = measurement_mean(x, SamplingScheme::exponentials({5, -7}, 1.0));
  CHECK(mu.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("trig kernels project onto their own harmonics") {
  // x(t) = sin(2 pi t): only the sine kernel responds, with its norm T/2.
  const auto x_sin = coeffs(1.0, {-1, 1}, {Cplx(0, 0.5), Cplx(0, -0.5)});
  const auto s = SamplingScheme::trig(1, 1.0);  // rows: 1, cos, sin
  const Eigen::VectorXcd mu = measurement_mean(x_sin, s);
  REQUIRE(mu.size() == 3);
  CHECK(std::abs(mu[0]) < 1e-15);
  CHECK(std::abs(mu[1]) < 1e-15);
  CHECK(std::abs(mu[2] - Cplx(0.5, 0)) < 1e-15);

  const auto x_cos = coeffs(1.0, {-1, 1}, {Cplx(0.5, 0), Cplx(0.5, 0)});
  const Eigen::VectorXcd mu2 = measurement_mean(x_cos, s);
  CHECK(std::abs(mu2[0]) < 1e-15);
  CHECK(std::abs(mu2[1] - Cplx(0.5, 0)) < 1e-15);
  CHECK(std::abs(mu2[2]) < 1e-15);
}

TEST_CASE("signal and scheme periods must agree") {
  const auto x = coeffs(2.0, {0}, {Cplx(1, 0)});
  CHECK_THROWS_AS((void)measurement_mean(x, SamplingScheme::exponentials({0}, 1.0)), ConfigError);
}

// ---- real channel decomposition ---------------------------------------------------

TEST_CASE("realified channels cover complex kernels twice and real kernels once") {
  const auto exp_pair = realify(SamplingScheme::exponentials({-1, 1}, 1.0));
  CHECK(exp_pair.channels() == 4);  // Re/Im for each kernel
  CHECK((exp_pair.digital_scale.array() == 0.5).all());
  CHECK(exp_pair.index_set == std::vector<long>({-1, 1}));

  const auto trig = realify(SamplingScheme::trig(1, 1.0));
  CHECK(trig.channels() == 3);  // every trig kernel is real
  CHECK((trig.digital_scale.array() == 1.0).all());
  for (int n = 0; n < 3; ++n) {
    CHECK(trig.chan_re[n] >= 0);
    CHECK(trig.chan_im[n] == -1);
  }
}

TEST_CASE("channel covariance assembles the two noise sources") {
  const auto rs = realify(SamplingScheme::exponentials({-1, 0, 1}, 1.0));
  const NoiseSpec noise{0.3, 0.05};
  const Eigen::MatrixXd cov = channel_covariance(rs, noise);
  const Eigen::MatrixXd expect =
      0.09 * real_gram(rs) + 0.0025 * Eigen::MatrixXd(rs.digital_scale.asDiagonal());
  CHECK((cov - expect).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(cov.isApprox(cov.transpose(), 1e-14));
}

// ---- noisy sampling -----------------------------------------------------------------

TEST_CASE("zero noise passes the mean through unchanged") {
  const auto x = coeffs(1.0, {-1, 0, 1}, {Cplx(0.5, 0.25), Cplx(1, 0), Cplx(0.5, -0.25)});
  const auto s = SamplingScheme::contiguous(3, 1.0);
  const Eigen::VectorXcd c = sample_noisy(x, s, NoiseSpec{0.0, 0.0}, 7, 0);
  const Eigen::VectorXcd mu = measurement_mean(x, s);
  CHECK((c - mu).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("real kernels sampling a real signal produce exactly real samples") {
  const auto x_cos = coeffs(1.0, {-1, 1}, {Cplx(0.5, 0), Cplx(0.5, 0)});
  const auto s = SamplingScheme::trig(2, 1.0);
  for (std::uint64_t trial = 0; trial < 8; ++trial) {
    const Eigen::VectorXcd c = sample_noisy(x_cos, s, NoiseSpec{0.2, 0.1}, 99, trial);
    CHECK(c.imag().cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("draws are keyed by (seed, trial)") {
  const auto x = zero_signal(1.0);
  const auto s = SamplingScheme::contiguous(3, 1.0);
  const NoiseSpec noise{1.0, 0.0};
  const Eigen::VectorXcd a = sample_noisy(x, s, noise, 5, 17);
  const Eigen::VectorXcd b = sample_noisy(x, s, noise, 5, 17);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  const Eigen::VectorXcd c = sample_noisy(x, s, noise, 5, 18);
  CHECK((a - c).cwiseAbs().maxCoeff() > 0.0);
  const Eigen::VectorXcd d = sample_noisy(x, s, noise, 6, 17);
  CHECK((a - d).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("continuous noise realizes the kernel-Gram covariance law") {
  // Pure noise through orthogonal exponentials: cov(c) = sigma_c^2 T I and
  // the conjugate-pair coupling E[n_f n_g] = sigma_c^2 T at g = -f.
  const auto x = zero_signal(1.0);
  const auto s = SamplingScheme::contiguous(3, 1.0);  // freqs {-1, 0, 1}
  const NoiseSpec noise{1.0, 0.0};
  const int n = 40000;

  Eigen::MatrixXcd cov = Eigen::MatrixXcd::Zero(3, 3);
  Eigen::MatrixXcd pseudo = Eigen::MatrixXcd::Zero(3, 3);
  Eigen::VectorXcd mean = Eigen::VectorXcd::Zero(3);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXcd c = sample_noisy(x, s, noise, 31, static_cast<std::uint64_t>(i));
    cov += c * c.adjoint();
    pseudo += c * c.transpose();
    mean += c;
  }
  cov /= n;
  pseudo /= n;
  mean /= n;

  CHECK(mean.cwiseAbs().maxCoeff() < 0.03);
  CHECK((cov - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 0.03);

  Eigen::MatrixXcd pseudo_expect = Eigen::MatrixXcd::Zero(3, 3);
  pseudo_expect(0, 2) = pseudo_expect(2, 0) = 1.0;  // f = -1 with f = +1
  pseudo_expect(1, 1) = 1.0;                        // the DC kernel is real
  CHECK((pseudo - pseudo_expect).cwiseAbs().maxCoeff() < 0.03);
}

TEST_CASE("digital noise is white across kernels") {
  const auto x = zero_signal(1.0);
  const auto s = SamplingScheme::contiguous(3, 1.0);
  const NoiseSpec noise{0.0, 1.0};
  const int n = 40000;

  Eigen::MatrixXcd cov = Eigen::MatrixXcd::Zero(3, 3);
  Eigen::MatrixXcd pseudo = Eigen::MatrixXcd::Zero(3, 3);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXcd c = sample_noisy(x, s, noise, 77, static_cast<std::uint64_t>(i));
    cov += c * c.adjoint();
    pseudo += c * c.transpose();
  }
  cov /= n;
  pseudo /= n;

  // Total variance sigma_d^2 per sample; complex kernels circular (zero
  // pseudo-variance), the real DC kernel fully real.
  CHECK((cov - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 0.03);
  CHECK(std::abs(pseudo(0, 0)) < 0.03);
  CHECK(std::abs(pseudo(2, 2)) < 0.03);
  CHECK(std::abs(pseudo(1, 1) - 1.0) < 0.03);
  CHECK(std::abs(pseudo(0, 2)) < 0.03);  // independent kernels stay uncoupled
}

TEST_CASE("trig-kernel noise variances follow the kernel norms") {
  const auto x = zero_signal(1.0);
  const auto s = SamplingScheme::trig(1, 1.0);
  const NoiseSpec noise{1.0, 0.0};
  const int n = 40000;
  Eigen::VectorXd var = Eigen::VectorXd::Zero(3);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXcd c = sample_noisy(x, s, noise, 13, static_cast<std::uint64_t>(i));
    var += c.real().cwiseAbs2();
  }
  var /= n;
  CHECK(std::abs(var[0] - 1.0) < 0.03);
  CHECK(std::abs(var[1] - 0.5) < 0.02);
  CHECK(std::abs(var[2] - 0.5) < 0.02);
}

// ---- noise validation ----------------------------------------------------------------

TEST_CASE("noise levels are validated") {
  const NoiseSpec neg_c{-1.0, 0.0};
  const NoiseSpec neg_d{0.0, -0.5};
  const NoiseSpec zero{0.0, 0.0};
  const NoiseSpec cont{1e-3, 0.0};
  const NoiseSpec digi{0.0, 1e-3};
  CHECK_THROWS_AS(neg_c.validate(), ConfigError);
  CHECK_THROWS_AS(neg_d.validate(), ConfigError);
  CHECK_NOTHROW(zero.validate());
  CHECK_THROWS_AS(zero.validate_for_crb(), NoiseModelError);
  CHECK_NOTHROW(cont.validate_for_crb());
  CHECK_NOTHROW(digi.validate_for_crb());
}

// ---- serialization ---------------------------------------------------------------------

TEST_CASE("schemes round-trip through JSON") {
  const auto exp = SamplingScheme::exponentials({-3, 0, 4}, 2.0);
  const auto exp_rt = SamplingScheme::from_json(exp.to_json());
  CHECK(exp_rt.freq_support == exp.freq_support);
  CHECK(exp_rt.base_period == exp.base_period);
  CHECK(exp_rt.identity_mixing());

  const auto trig = SamplingScheme::trig(2, 1.5);
  const auto trig_rt = SamplingScheme::from_json(trig.to_json());
  CHECK(trig_rt.freq_support == trig.freq_support);
  CHECK((trig_rt.mixing - trig.mixing).cwiseAbs().maxCoeff() == 0.0);

  Eigen::MatrixXcd mixing(1, 2);
  mixing << Cplx(0.5, -0.25), Cplx(0, 1);
  const auto cust = SamplingScheme::custom({-1, 2}, mixing, 3.0);
  const auto cust_rt = SamplingScheme::from_json(cust.to_json());
  CHECK(cust_rt.base_period == 3.0);
  CHECK((cust_rt.mixing - mixing).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS((void)SamplingScheme::from_json({{"type", "mystery"}}), ConfigError);
}
