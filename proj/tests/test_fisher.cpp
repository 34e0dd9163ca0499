// Tests for Fisher information matrices and Cramer-Rao bounds: closed-form
// anchors, sampled-vs-continuous consistency, mixing invariances,
// identifiability diagnostics, and conditioning thresholds.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fri/errors.hpp>
#include <fri/fisher.hpp>
#include <fri/pulse.hpp>
#include <fri/rng.hpp>
#include <fri/sampling.hpp>
#include <fri/signal_model.hpp>

#include <cmath>
#include <complex>
#include <vector>

using namespace fri;
using Cplx = std::complex<double>;

namespace {

PulseStreamTheta periodic_theta(std::initializer_list<double> amps,
                                std::initializer_list<double> delays) {
  PulseStreamTheta theta;
  theta.model = SignalModel::periodic;
  theta.amplitudes = Eigen::VectorXd(static_cast<Eigen::Index>(amps.size()));
  theta.delays = Eigen::VectorXd(static_cast<Eigen::Index>(delays.size()));
  Eigen::Index i = 0;
  for (double a : amps) theta.amplitudes[i++] = a;
  i = 0;
  for (double t : delays) theta.delays[i++] = t;
  return theta;
}

PulseStreamTheta bench_theta() { return periodic_theta({0.3204, 0.6063}, {0.6678, 0.9863}); }

double rel_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double scale = std::max(a.norm(), b.norm());
  return scale == 0.0 ? 0.0 : (a - b).norm() / scale;
}

// Haar-ish random unitary via QR of a complex Gaussian matrix.
Eigen::MatrixXcd random_unitary(int n, TrialRng& rng) {
  Eigen::MatrixXcd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = Cplx(rng.gaussian(), rng.gaussian());
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

}  // namespace

// ---- sensitivity Gram ----------------------------------------------------------

TEST_CASE("amplitude self-sensitivity equals the pulse energy sum") {
  const FourierPulse pulse = FourierPulse::flat(200);
  const auto D = jacobian_fourier(bench_theta(), pulse);
  const Eigen::MatrixXd M = m_matrix(D);
  REQUIRE(M.rows() == 4);
  // T sum_k |h_k|^2 = 401 for the unit flat band.
  CHECK(M(0, 0) == doctest::Approx(401.0).epsilon(1e-12));
  CHECK(M(1, 1) == doctest::Approx(401.0).epsilon(1e-12));
  CHECK(M.isApprox(M.transpose(), 1e-12));
}

TEST_CASE("orthonormal generators have identity sensitivity Gram") {
  SubspaceGenerators gen;
  gen.period = 1.0;
  gen.support = {0, 1, 2};
  gen.G = Eigen::MatrixXcd::Identity(3, 2);
  const Eigen::MatrixXd M = m_matrix(jacobian_fourier(gen));
  CHECK((M - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
}

// ---- continuous-observation information ------------------------------------------

TEST_CASE("continuous information for orthonormal generators is I over sigma squared") {
  SubspaceGenerators gen;
  gen.period = 1.0;
  gen.support = {0, 1};
  gen.G = Eigen::MatrixXcd::Identity(2, 2);
  const auto D = jacobian_fourier(gen);

  const FisherMatrix J = fim_continuous(D, 0.1);
  CHECK((J.mat() - 100.0 * Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(J.provenance() == FisherMatrix::Provenance::continuous);

  // Doubling the noise level quarters the information.
  const FisherMatrix J2 = fim_continuous(D, 0.2);
  CHECK(rel_diff(J2.mat(), 0.25 * J.mat()) < 1e-14);

  CHECK_THROWS_AS((void)fim_continuous(D, 0.0), NoiseModelError);
}

// ---- sampled-observation information ----------------------------------------------

TEST_CASE("full-band sampling recovers the continuous information") {
  const FourierPulse pulse = FourierPulse::flat(20);
  const auto D = jacobian_fourier(bench_theta(), pulse);
  const NoiseSpec noise{1e-3, 0.0};
  const FisherMatrix cont = fim_continuous(D, noise.sigma_c);
  const FisherMatrix samp = fim_sampled(D, SamplingScheme::contiguous(41, 1.0), noise);
  CHECK(rel_diff(samp.mat(), cont.mat()) < 1e-10);
  CHECK(samp.provenance() == FisherMatrix::Provenance::sampled);

  const FourierPulse lor = FourierPulse::lorentzian(12);
  const auto D2 = jacobian_fourier(periodic_theta({1.1, -0.6}, {0.2, 0.44}), lor);
  const FisherMatrix cont2 = fim_continuous(D2, 0.05);
  const FisherMatrix samp2 = fim_sampled(D2, SamplingScheme::contiguous(25, 1.0), NoiseSpec{0.05, 0.0});
  CHECK(rel_diff(samp2.mat(), cont2.mat()) < 1e-10);
}

TEST_CASE("the DC kernel alone carries no delay information") {
  const FourierPulse pulse = FourierPulse::flat(5);
  const auto D = jacobian_fourier(periodic_theta({1.0}, {0.3}), pulse);
  const FisherMatrix J = fim_sampled(D, SamplingScheme::exponentials({0}, 1.0), NoiseSpec{0.1, 0.0});
  REQUIRE(J.K() == 2);
  CHECK(J.mat()(0, 0) == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(J.mat()(0, 1) == 0.0);
  CHECK(J.mat()(1, 0) == 0.0);
  CHECK(J.mat()(1, 1) == 0.0);
}

TEST_CASE("pure digital noise scales the information by one over sigma_d squared") {
  const FourierPulse pulse = FourierPulse::flat(6);
  const auto D = jacobian_fourier(bench_theta(), pulse);
  const auto scheme = SamplingScheme::contiguous(13, 1.0);
  const FisherMatrix j1 = fim_sampled(D, scheme, NoiseSpec{0.0, 1.0});
  const FisherMatrix j2 = fim_sampled(D, scheme, NoiseSpec{0.0, 1000.0});
  CHECK(rel_diff(j2.mat(), 1e-6 * j1.mat()) < 1e-12);
  // Overwhelming digital noise drives the information to zero.
  const FisherMatrix j3 = fim_sampled(D, scheme, NoiseSpec{0.0, 1e9});
  CHECK(j3.mat().cwiseAbs().maxCoeff() < 1e-12 * j1.mat().cwiseAbs().maxCoeff());
}

TEST_CASE("zero noise is rejected for sampled information") {
  const FourierPulse pulse = FourierPulse::flat(5);
  const auto D = jacobian_fourier(bench_theta(), pulse);
  CHECK_THROWS_AS((void)fim_sampled(D, SamplingScheme::contiguous(11, 1.0), NoiseSpec{0.0, 0.0}),
                  NoiseModelError);
}

// ---- mixing invariances --------------------------------------------------------------

TEST_CASE("invertible remixing preserves the information under continuous noise") {
  const FourierPulse pulse = FourierPulse::flat(6);
  const auto D = jacobian_fourier(bench_theta(), pulse);
  const auto base = SamplingScheme::contiguous(13, 1.0);
  const NoiseSpec noise{1e-2, 0.0};
  const FisherMatrix J0 = fim_sampled(D, base, noise);

  TrialRng rng(101, 0);
  for (int rep = 0; rep < 3; ++rep) {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(13, 13);
    for (int i = 0; i < 13; ++i)
      for (int j = 0; j < 13; ++j) M(i, j) += 0.3 * Cplx(rng.gaussian(), rng.gaussian());
    const auto mixed = SamplingScheme::custom(base.freq_support, M, 1.0);
    const FisherMatrix J1 = fim_sampled(D, mixed, noise);
    CHECK(rel_diff(J1.mat(), J0.mat()) < 1e-10);
  }
}

TEST_CASE("with digital noise only unitary remixing preserves the information") {
  const FourierPulse pulse = FourierPulse::flat(5);
  const auto D = jacobian_fourier(bench_theta(), pulse);
  const auto base = SamplingScheme::contiguous(11, 1.0);
  const NoiseSpec noise{1e-2, 5e-3};
  const FisherMatrix J0 = fim_sampled(D, base, noise);

  // The digital-noise model is attached per kernel (a real kernel reads out
  // one real sample, a complex kernel two quadratures), so the invariance
  // holds for unitaries that keep each kernel's real/complex character: here,
  // any unitary acting on the ten complex rows that fixes the real DC row.
  TrialRng rng(202, 0);
  const Eigen::MatrixXcd U10 = random_unitary(10, rng);
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(11, 11);
  const int dc_row = 5;  // freq_support is {-5..5}, so f = 0 sits at index 5
  std::vector<int> rest;
  for (int i = 0; i < 11; ++i)
    if (i != dc_row) rest.push_back(i);
  for (int r = 0; r < 10; ++r)
    for (int c = 0; c < 10; ++c) U(rest[r], rest[c]) = U10(r, c);
  const FisherMatrix Ju =
      fim_sampled(D, SamplingScheme::custom(base.freq_support, U, 1.0), noise);
  CHECK(rel_diff(Ju.mat(), J0.mat()) < 1e-10);

  // A dense unitary that turns the real DC kernel into a complex one changes
  // the readout hardware model (sigma_d^2 in one real channel vs split over
  // two quadratures), so the information shifts slightly.
  const FisherMatrix Jd = fim_sampled(
      D, SamplingScheme::custom(base.freq_support, random_unitary(11, rng), 1.0), noise);
  CHECK(rel_diff(Jd.mat(), J0.mat()) > 1e-8);
  CHECK(rel_diff(Jd.mat(), J0.mat()) < 1e-2);

  // A non-unitary (but invertible) remix redistributes the digital noise and
  // genuinely changes the attainable information.
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Identity(11, 11);
  S(0, 0) = 4.0;
  const FisherMatrix Js =
      fim_sampled(D, SamplingScheme::custom(base.freq_support, S, 1.0), noise);
  CHECK(rel_diff(Js.mat(), J0.mat()) > 1e-4);
}

TEST_CASE("a global phase remix exercises the general path and matches the fast path") {
  // Identity mixing rides a specialized formula; a diagonal phase matrix is
  // unitary, forces the general real-channel path, and must agree.
  const FourierPulse pulse = FourierPulse::flat(8);
  const auto D = jacobian_fourier(bench_theta(), pulse);
  const auto base = SamplingScheme::contiguous(17, 1.0);
  const NoiseSpec noise{1e-3, 0.0};
  const FisherMatrix fast = fim_sampled(D, base, noise);

  Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(17, 17);
  for (int i = 0; i < 17; ++i) P(i, i) = std::polar(1.0, 0.37 * i);
  const FisherMatrix general =
      fim_sampled(D, SamplingScheme::custom(base.freq_support, P, 1.0), noise);
  CHECK(rel_diff(general.mat(), fast.mat()) < 1e-10);
}

// ---- trace bound -----------------------------------------------------------------------

TEST_CASE("identity sensitivity with diagonal information gives K sigma squared") {
  const int K = 4;
  const double sigma = 0.05;
  const FisherMatrix J = FisherMatrix::make(
      Eigen::MatrixXd::Identity(K, K) / (sigma * sigma), FisherMatrix::Provenance::continuous,
      sigma, 0.0);
  const CrbValue crb = crb_trace(Eigen::MatrixXd::Identity(K, K), J);
  CHECK(crb.mse_bound == doctest::Approx(K * sigma * sigma).epsilon(1e-14));
  CHECK(crb.K == K);
  CHECK(crb.per_parameter.sum() == doctest::Approx(crb.mse_bound).epsilon(1e-14));
  CHECK_FALSE(crb.ill_conditioned);
}

TEST_CASE("full-band bound hits the parameter-count floor on the wide flat band") {
  const FourierPulse pulse = FourierPulse::flat(200);
  const auto D = jacobian_fourier(bench_theta(), pulse);
  const Eigen::MatrixXd M = m_matrix(D);
  const NoiseSpec noise{1e-5, 0.0};

  const CrbValue full = crb_trace(M, fim_sampled(D, SamplingScheme::contiguous(401, 1.0), noise));
  CHECK(std::abs(full.mse_bound - 4e-10) <= 1e-9 * 4e-10);

  const CrbValue five = crb_trace(M, fim_sampled(D, SamplingScheme::contiguous(5, 1.0), noise));
  CHECK(five.mse_bound == doctest::Approx(0.00017839097343875474).epsilon(1e-9));
  CHECK(five.mse_bound / full.mse_bound >= 1e3);
}

TEST_CASE("undersampling below the parameter count is flagged unidentifiable") {
  const FourierPulse pulse = FourierPulse::flat(20);
  const auto D = jacobian_fourier(bench_theta(), pulse);  // K = 4
  const Eigen::MatrixXd M = m_matrix(D);
  const FisherMatrix J = fim_sampled(D, SamplingScheme::contiguous(3, 1.0), NoiseSpec{1e-3, 0.0});
  try {
    (void)crb_trace(M, J);
    FAIL("expected UnidentifiableError");
  } catch (const UnidentifiableError& e) {
    CHECK(e.null_space_basis.rows() == 4);
    CHECK(e.null_space_basis.cols() >= 1);
    const Eigen::MatrixXd gram = e.null_space_basis.transpose() * e.null_space_basis;
    CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <
          1e-10);
  }
}

TEST_CASE("growing a nested kernel set never loosens the bound") {
  TrialRng rng(303, 0);
  const FourierPulse pulse = FourierPulse::flat(20);
  for (int rep = 0; rep < 5; ++rep) {
    const int L = 1 + static_cast<int>(rng.uniform01() * 3.0);
    PulseStreamTheta theta;
    theta.model = SignalModel::periodic;
    theta.amplitudes = Eigen::VectorXd(L);
    theta.delays = Eigen::VectorXd(L);
    for (int l = 0; l < L; ++l) {
      theta.amplitudes[l] = rng.uniform(0.3, 1.5);
      theta.delays[l] = (l + rng.uniform(0.2, 0.8)) / L;
    }
    const auto D = jacobian_fourier(theta, pulse);
    const Eigen::MatrixXd M = m_matrix(D);
    const NoiseSpec noise{1e-3, 0.0};
    const double floor = theta.K() * noise.sigma_c * noise.sigma_c;

    double prev = std::numeric_limits<double>::infinity();
    for (int N : {2 * L + 3, 2 * L + 7, 21, 31, 41}) {
      const CrbValue crb = crb_trace(M, fim_sampled(D, SamplingScheme::contiguous(N, 1.0), noise));
      CHECK(crb.mse_bound <= prev * (1.0 + 1e-9));
      CHECK(crb.mse_bound >= floor * (1.0 - 1e-9));
      prev = crb.mse_bound;
    }
  }
}

TEST_CASE("relabeling the pulses leaves the bound unchanged") {
  const FourierPulse pulse = FourierPulse::flat(12);
  const auto a = periodic_theta({0.8, 1.3}, {0.25, 0.7});
  const auto b = periodic_theta({1.3, 0.8}, {0.7, 0.25});
  const NoiseSpec noise{1e-3, 0.0};
  const auto scheme = SamplingScheme::contiguous(15, 1.0);
  const auto Da = jacobian_fourier(a, pulse);
  const auto Db = jacobian_fourier(b, pulse);
  const double ca = crb_trace(m_matrix(Da), fim_sampled(Da, scheme, noise)).mse_bound;
  const double cb = crb_trace(m_matrix(Db), fim_sampled(Db, scheme, noise)).mse_bound;
  CHECK(ca == doctest::Approx(cb).epsilon(1e-12));
}

TEST_CASE("conditioning thresholds: flagged above 1e12, rejected at 1e15") {
  const Eigen::MatrixXd M = Eigen::MatrixXd::Identity(2, 2);

  Eigen::MatrixXd ill(2, 2);
  ill << 1.0, 0.0, 0.0, 1e-13;
  const auto J_ill = FisherMatrix::make(ill, FisherMatrix::Provenance::continuous, 1.0, 0.0);
  const CrbValue flagged = crb_trace(M, J_ill);
  CHECK(flagged.ill_conditioned);
  CHECK(flagged.mse_bound == doctest::Approx(1.0 + 1e13).epsilon(1e-9));
  CHECK(flagged.condition_number > 1e12);

  Eigen::MatrixXd sing(2, 2);
  sing << 1.0, 0.0, 0.0, 5e-16;
  const auto J_sing = FisherMatrix::make(sing, FisherMatrix::Provenance::continuous, 1.0, 0.0);
  CHECK_THROWS_AS((void)crb_trace(M, J_sing), UnidentifiableError);

  // The diagnostic variant clips instead of throwing and always warns.
  const CrbValue clipped = crb_trace_clipped(M, J_sing);
  CHECK(clipped.ill_conditioned);
  CHECK(std::isfinite(clipped.mse_bound));
  CHECK(clipped.mse_bound >= 1.0);
}

// ---- closed forms ---------------------------------------------------------------------

TEST_CASE("continuous-observation bound closed forms") {
  CHECK(crb_continuous(20, 1e-3).mse_bound == doctest::Approx(2e-5).epsilon(1e-14));
  CHECK(crb_continuous(4, 1e-5).mse_bound == doctest::Approx(4e-10).epsilon(1e-14));
  CHECK(crb_continuous(1, 1.0).mse_bound == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(crb_continuous_normalized(4, 0.1, 2.0) == doctest::Approx(0.02).epsilon(1e-14));
}

// ---- subspace bound --------------------------------------------------------------------

TEST_CASE("matched orthonormal kernels attain K sigma squared") {
  const Eigen::MatrixXcd I2 = Eigen::MatrixXcd::Identity(2, 2);
  const CrbValue crb = subspace_crb(I2, I2, I2, 0.01);
  CHECK(crb.mse_bound == doctest::Approx(2e-4).epsilon(1e-12));
}

TEST_CASE("kernels at 45 degrees to the subspace double the bound twice over") {
  // Each kernel projects onto its generator with cos(45deg); the bound grows
  // by 1/cos^2 per dimension: 2 sigma^2 -> 4 sigma^2.
  const double c = std::sqrt(0.5);
  const Eigen::MatrixXcd I2 = Eigen::MatrixXcd::Identity(2, 2);
  const double sigma = 1e-2;
  const CrbValue crb = subspace_crb(I2, c * I2, I2, sigma);
  CHECK(crb.mse_bound == doctest::Approx(4.0 * sigma * sigma).epsilon(1e-12));
}

TEST_CASE("kernels orthogonal to the subspace see nothing") {
  const Eigen::MatrixXcd I2 = Eigen::MatrixXcd::Identity(2, 2);
  const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(2, 2);
  CHECK_THROWS_AS((void)subspace_crb(I2, zero, I2, 0.1), UnidentifiableError);
}

TEST_CASE("subspace bound is invariant under unitary kernel rotations") {
  TrialRng rng(404, 0);
  const int K = 3;
  Eigen::MatrixXcd G(6, K), S(6, K);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < K; ++j) {
      G(i, j) = Cplx(rng.gaussian(), rng.gaussian());
      S(i, j) = Cplx(rng.gaussian(), rng.gaussian());
    }
  const Eigen::MatrixXcd G_gram = G.adjoint() * G;
  const Eigen::MatrixXcd S_gram = S.adjoint() * S;
  const Eigen::MatrixXcd S_cross = S.adjoint() * G;

  const double base = subspace_crb(G_gram, S_cross, S_gram, 0.1).mse_bound;
  const Eigen::MatrixXcd U = random_unitary(K, rng);
  // Rotating the kernel set: s' = U s transforms the Grams congruently.
  const double rotated =
      subspace_crb(G_gram, U * S_cross, U * S_gram * U.adjoint(), 0.1).mse_bound;
  CHECK(rotated == doctest::Approx(base).epsilon(1e-10));
}

// ---- identifiability --------------------------------------------------------------------

TEST_CASE("three kernels cannot identify four parameters") {
  const FourierPulse pulse = FourierPulse::flat(20);
  const auto D = jacobian_fourier(bench_theta(), pulse);
  const auto report = identifiability(D, SamplingScheme::trig(1, 1.0));
  CHECK_FALSE(report.identifiable);
  CHECK(report.K == 4);
  CHECK(report.rank == 3);
  REQUIRE(report.null_basis.cols() == 1);
  CHECK(std::abs(report.null_basis.col(0).norm() - 1.0) < 1e-12);
}

TEST_CASE("the full band identifies the model; the DC kernel alone does not") {
  const FourierPulse pulse = FourierPulse::flat(20);
  const auto D = jacobian_fourier(bench_theta(), pulse);

  const auto full = identifiability(D, SamplingScheme::contiguous(41, 1.0));
  CHECK(full.identifiable);
  CHECK(full.rank == 4);
  CHECK(full.null_basis.size() == 0);

  const auto dc = identifiability(D, SamplingScheme::exponentials({0}, 1.0));
  CHECK_FALSE(dc.identifiable);
  CHECK(dc.rank == 1);
  CHECK(dc.null_basis.cols() == 3);
}
