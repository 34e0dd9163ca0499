// SPDX-License-Identifier: MIT

#include "fri/simlab.hpp"

#include "fri/meta.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>
#include <utility>

namespace fri {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

double circular_distance(double a, double b, double T) {
  double d = std::fabs(a - b);
  d = std::fmod(d, T);
  return std::min(d, T - d);
}

}  // namespace

int thread_budget(int tasks) {
  if (tasks < 1) return 1;
  const unsigned hw = std::thread::hardware_concurrency();
  long n = hw == 0 ? 1 : static_cast<long>(hw);
  if (const char* env = std::getenv("FRI_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) n = v;
  }
  return static_cast<int>(std::max(1L, std::min(n, static_cast<long>(tasks))));
}

MonteCarloResult monte_carlo_mse(int trials, std::uint64_t seed,
                                 const std::function<double(TrialRng&)>& trial_fn) {
  if (trials < 1) throw ConfigError("monte_carlo_mse requires trials >= 1");
  if (!trial_fn) throw ConfigError("monte_carlo_mse requires a trial function");

  MonteCarloResult res;
  res.trials = trials;
  res.values.assign(static_cast<std::size_t>(trials), kNan);

  std::atomic<int> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;

  auto work = [&]() {
    for (;;) {
      const int t = next.fetch_add(1, std::memory_order_relaxed);
      if (t >= trials) return;
      try {
        TrialRng rng(seed, static_cast<std::uint64_t>(t));
        res.values[static_cast<std::size_t>(t)] = trial_fn(rng);
      } catch (const NumericalError&) {
        // Failed trial: the NaN slot stands.
      } catch (...) {
        const std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const int workers = thread_budget(trials);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  // Reduce serially in trial order with extended precision, so the result is
  // independent of scheduling and stable against rounding drift.
  long double sum = 0.0L;
  long n = 0;
  for (double v : res.values) {
    if (std::isnan(v)) continue;
    sum += v;
    ++n;
  }
  res.failures = trials - static_cast<int>(n);
  if (2 * res.failures > trials)
    throw DiagnosticError("monte_carlo_mse: " + std::to_string(res.failures) + " of " +
                          std::to_string(trials) + " trials failed");

  res.mean = static_cast<double>(sum / static_cast<long double>(n));
  if (n >= 2) {
    long double ss = 0.0L;
    for (double v : res.values) {
      if (std::isnan(v)) continue;
      const long double d = static_cast<long double>(v) - res.mean;
      ss += d * d;
    }
    res.std_error = static_cast<double>(
        std::sqrt(ss / (static_cast<long double>(n) * static_cast<long double>(n - 1))));
  }
  return res;
}

MonteCarloResult mc_pencil_mse(const PulseStreamTheta& theta, const FourierPulse& pulse,
                               const SamplingScheme& scheme, const NoiseSpec& noise, int L,
                               int trials, std::uint64_t seed, const PencilOptions& opts) {
  theta.validate(pulse);
  noise.validate();
  const FourierCoeffVector x_true = synthesize_fourier(theta, pulse);
  return monte_carlo_mse(trials, seed, [&, x_true](TrialRng& rng) {
    const Eigen::VectorXcd c = sample_noisy(x_true, scheme, noise, rng);
    const EstimateReport rep = matrix_pencil(c, scheme, pulse, L, opts);
    return signal_mse(rep.x_hat, x_true);
  });
}

MonteCarloResult mc_subspace_mse(const SubspaceGenerators& gen, const Eigen::VectorXd& theta,
                                 const SamplingScheme& scheme, const NoiseSpec& noise, int trials,
                                 std::uint64_t seed) {
  noise.validate();
  if (theta.size() != gen.K()) throw ConfigError("mc_subspace_mse: theta length must equal K");
  const FourierCoeffVector x_true = synthesize_fourier(gen, theta);
  const Eigen::MatrixXcd G_gram = gen.gram();

  // Cross Gram S_cross(n, k) = <g_k, s_n> = T * (B G_F)(n, k) with the
  // generator rows embedded on the scheme's frequencies.
  const auto& F = scheme.freq_support;
  Eigen::MatrixXcd G_F = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(F.size()), gen.K());
  for (std::size_t i = 0; i < F.size(); ++i) {
    const auto it = std::lower_bound(gen.support.begin(), gen.support.end(), F[i]);
    if (it != gen.support.end() && *it == F[i])
      G_F.row(static_cast<Eigen::Index>(i)) =
          gen.G.row(static_cast<Eigen::Index>(it - gen.support.begin()));
  }
  const Eigen::MatrixXcd S_cross = gen.period * (scheme.mixing * G_F);

  const Eigen::VectorXcd theta_c = theta.cast<std::complex<double>>();
  return monte_carlo_mse(trials, seed, [&, x_true, G_gram, S_cross, theta_c](TrialRng& rng) {
    const Eigen::VectorXcd c = sample_noisy(x_true, scheme, noise, rng);
    const Eigen::VectorXcd theta_hat = subspace_consistent(c, G_gram, S_cross);
    const Eigen::VectorXcd e = theta_hat - theta_c;
    return (e.adjoint() * G_gram * e)(0, 0).real();
  });
}

MonteCarloResult mc_bayes_mse(const FourierPulse& pulse, int L, double sigma_a,
                              const KernelBudgetPlan& plan, double sigma_c, bool shrunk,
                              int trials, std::uint64_t seed) {
  if (L < 1) throw ConfigError("mc_bayes_mse requires L >= 1");
  if (!(sigma_a > 0.0)) throw ConfigError("mc_bayes_mse requires sigma_a > 0");
  if (!(sigma_c >= 0.0)) throw ConfigError("mc_bayes_mse requires sigma_c >= 0");
  if (plan.size() == 0) throw ConfigError("mc_bayes_mse: empty kernel plan");
  if (std::abs(plan.period - pulse.period()) > 1e-12 * std::max(plan.period, pulse.period()))
    throw ConfigError("mc_bayes_mse: plan/pulse period mismatch");

  const double T = pulse.period();
  const SamplingScheme scheme = SamplingScheme::exponentials(plan.indices, T);
  const NoiseSpec noise{sigma_c, 0.0};

  // The scheme sorts its frequencies; map each plan slot to its sample.
  std::vector<Eigen::Index> slot_of(plan.indices.size());
  for (std::size_t s = 0; s < plan.indices.size(); ++s) {
    const auto it = std::lower_bound(scheme.freq_support.begin(), scheme.freq_support.end(),
                                     plan.indices[s]);
    slot_of[s] = static_cast<Eigen::Index>(it - scheme.freq_support.begin());
  }

  return monte_carlo_mse(trials, seed, [&, scheme, noise, slot_of](TrialRng& rng) {
    PulseStreamTheta theta;
    theta.model = SignalModel::periodic;
    theta.amplitudes.resize(L);
    theta.delays.resize(L);
    for (int l = 0; l < L; ++l) theta.amplitudes[l] = sigma_a * rng.gaussian();
    for (int l = 0; l < L; ++l) theta.delays[l] = rng.uniform(0.0, T);
    const FourierCoeffVector x = synthesize_fourier(theta, pulse);
    const Eigen::VectorXcd c_sorted = sample_noisy(x, scheme, noise, rng);
    Eigen::VectorXcd c(static_cast<Eigen::Index>(slot_of.size()));
    for (std::size_t s = 0; s < slot_of.size(); ++s)
      c[static_cast<Eigen::Index>(s)] = c_sorted[slot_of[s]];
    const FourierCoeffVector x_hat = bayes_linear_reconstruct(c, plan, shrunk);
    return signal_mse(x_hat, x);
  });
}

double max_circular_delay_error(const Eigen::VectorXd& t_hat, const Eigen::VectorXd& t_true,
                                double T) {
  if (t_hat.size() != t_true.size())
    throw ConfigError("max_circular_delay_error: size mismatch");
  if (t_hat.size() == 0) throw ConfigError("max_circular_delay_error: empty delay sets");
  if (!(T > 0.0)) throw ConfigError("max_circular_delay_error: period must be positive");

  const auto L = static_cast<std::size_t>(t_hat.size());
  std::vector<double> a(t_hat.data(), t_hat.data() + t_hat.size());
  std::vector<double> b(t_true.data(), t_true.data() + t_true.size());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());

  // For sorted points on a circle the optimal matching is a cyclic shift.
  double best = kInf;
  for (std::size_t s = 0; s < L; ++s) {
    double worst = 0.0;
    for (std::size_t i = 0; i < L; ++i)
      worst = std::max(worst, circular_distance(a[(i + s) % L], b[i], T));
    best = std::min(best, worst);
  }
  return best;
}

// ---- experiments -----------------------------------------------------------

const char* experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::crb_vs_n: return "crb_vs_n";
    case ExperimentKind::pulse_spacing: return "pulse_spacing";
    case ExperimentKind::periodic_vs_semiperiodic: return "periodic_vs_semiperiodic";
  }
  return "unknown";
}

FourierPulse pulse_from_spec(const nlohmann::json& spec) {
  try {
    if (spec.is_object() && spec.contains("shape")) {
      const std::string shape = spec.at("shape").get<std::string>();
      const double T = spec.value("period", 1.0);
      const long B = spec.at("half_band").get<long>();
      if (shape == "flat") return FourierPulse::flat(B, T);
      if (shape == "lorentzian") return FourierPulse::lorentzian(B, T, spec.value("decay", 0.1));
      if (shape == "rect") return FourierPulse::rect(B, spec.value("width", 0.04), T);
      throw ConfigError("unknown pulse shape: " + shape);
    }
    return FourierPulse::from_json(spec);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad pulse spec: ") + e.what());
  }
}

FourierPulse ExperimentConfig::make_pulse() const { return pulse_from_spec(pulse_spec); }

namespace {

ExperimentKind experiment_from_name(const std::string& name) {
  if (name == "crb_vs_n") return ExperimentKind::crb_vs_n;
  if (name == "pulse_spacing") return ExperimentKind::pulse_spacing;
  if (name == "periodic_vs_semiperiodic") return ExperimentKind::periodic_vs_semiperiodic;
  throw ConfigError("unknown experiment: " + name);
}

SignalModel model_from_name(const std::string& name) {
  if (name == "periodic") return SignalModel::periodic;
  if (name == "semi_periodic") return SignalModel::semi_periodic;
  if (name == "subspace") return SignalModel::subspace;
  throw ConfigError("unknown signal model: " + name);
}

PulseStreamTheta theta_from_json(const nlohmann::json& j) {
  PulseStreamTheta theta;
  theta.model = model_from_name(j.at("model").get<std::string>());
  const auto amps = j.at("amplitudes").get<std::vector<double>>();
  const auto delays = j.at("delays").get<std::vector<double>>();
  theta.amplitudes = Eigen::Map<const Eigen::VectorXd>(amps.data(),
                                                       static_cast<Eigen::Index>(amps.size()));
  theta.delays = Eigen::Map<const Eigen::VectorXd>(delays.data(),
                                                   static_cast<Eigen::Index>(delays.size()));
  theta.M = j.value("M", 1);
  return theta;
}

nlohmann::json theta_to_json(const PulseStreamTheta& theta) {
  nlohmann::json j;
  j["model"] = model_name(theta.model);
  j["amplitudes"] = std::vector<double>(theta.amplitudes.data(),
                                        theta.amplitudes.data() + theta.amplitudes.size());
  j["delays"] =
      std::vector<double>(theta.delays.data(), theta.delays.data() + theta.delays.size());
  j["M"] = theta.M;
  return j;
}

void check_grid_sorted(const std::vector<int>& grid, const char* what) {
  if (grid.empty()) throw ConfigError(std::string(what) + " must be nonempty");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (grid[i] >= grid[i + 1])
      throw ConfigError(std::string(what) + " must be strictly increasing");
}

void check_grid_sorted(const std::vector<double>& grid, const char* what) {
  if (grid.empty()) throw ConfigError(std::string(what) + " must be nonempty");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1]))
      throw ConfigError(std::string(what) + " must be strictly increasing");
}

/// Pencil Monte Carlo for one experiment row; diagnostic failures become a
/// NaN entry rather than aborting the sweep.
void attach_pencil_mc(ExperimentRow& row, const PulseStreamTheta& theta,
                      const FourierPulse& pulse, const SamplingScheme& scheme,
                      const NoiseSpec& noise, int L, int trials, std::uint64_t seed) {
  if (scheme.N() < 2 * L + 1) return;  // below the pencil's sample floor
  try {
    const MonteCarloResult mc = mc_pencil_mse(theta, pulse, scheme, noise, L, trials, seed);
    row.mc_mse = mc.mean;
    row.mc_stderr = mc.std_error;
    row.failures = mc.failures;
  } catch (const DiagnosticError&) {
    row.mc_mse = kNan;
    row.mc_stderr = kNan;
    row.failures = trials;
  }
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  try {
    const std::string version = j.value("version", "v1");
    if (version != "v1") throw ConfigError("unsupported config version: " + version);

    ExperimentConfig cfg;
    cfg.experiment = experiment_from_name(j.at("experiment").get<std::string>());
    cfg.label = j.value("label", "");
    cfg.pulse_spec = j.at("pulse");
    cfg.theta = theta_from_json(j.at("theta"));
    if (j.contains("theta_b")) cfg.theta_b = theta_from_json(j.at("theta_b"));
    if (j.contains("noise")) {
      cfg.noise.sigma_c = j.at("noise").value("sigma_c", 0.0);
      cfg.noise.sigma_d = j.at("noise").value("sigma_d", 0.0);
    }
    cfg.noise.validate();
    if (j.contains("n_grid")) cfg.n_grid = j.at("n_grid").get<std::vector<int>>();
    if (j.contains("t2_grid")) cfg.t2_grid = j.at("t2_grid").get<std::vector<double>>();
    cfg.scheme_n = j.value("scheme_n", 11);
    cfg.estimator = j.value("estimator", "matrix_pencil");
    if (cfg.estimator != "matrix_pencil" && cfg.estimator != "none")
      throw ConfigError("unknown estimator: " + cfg.estimator);
    cfg.pencil_L = j.value("pencil_L", 0);
    cfg.trials = j.value("trials", 200);
    if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
    cfg.seed = j.value("seed", std::uint64_t{1});
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad experiment config: ") + e.what());
  }
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["version"] = "v1";
  j["experiment"] = experiment_name(experiment);
  j["label"] = label;
  j["pulse"] = pulse_spec;
  j["theta"] = theta_to_json(theta);
  if (theta_b) j["theta_b"] = theta_to_json(*theta_b);
  j["noise"] = {{"sigma_c", noise.sigma_c}, {"sigma_d", noise.sigma_d}};
  if (!n_grid.empty()) j["n_grid"] = n_grid;
  if (!t2_grid.empty()) j["t2_grid"] = t2_grid;
  j["scheme_n"] = scheme_n;
  j["estimator"] = estimator;
  j["pencil_L"] = pencil_L;
  j["trials"] = trials;
  j["seed"] = seed;
  return j;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse config file " + path + ": " + e.what());
  }
  return from_json(j);
}

namespace {

ExperimentResult make_result(const ExperimentConfig& cfg) {
  ExperimentResult res;
  res.experiment = cfg.experiment;
  res.label = cfg.label.empty() ? experiment_name(cfg.experiment) : cfg.label;
  res.config_hash = hex64(fnv1a64(cfg.to_json().dump()));
  res.seed = cfg.seed;
  res.trials = cfg.trials;
  return res;
}

}  // namespace

ExperimentResult run_crb_vs_n(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const FourierPulse pulse = cfg.make_pulse();
  cfg.theta.validate(pulse);
  cfg.noise.validate_for_crb();
  check_grid_sorted(cfg.n_grid, "n_grid");
  if (cfg.n_grid.back() > static_cast<int>(pulse.size()))
    throw ConfigError("n_grid exceeds the pulse support size");
  const bool run_mc = cfg.estimator == "matrix_pencil";
  if (run_mc && cfg.theta.model != SignalModel::periodic)
    throw ConfigError("the matrix_pencil estimator applies to the periodic model only");

  const JacobianMatrix D = jacobian_fourier(cfg.theta, pulse);
  const Eigen::MatrixXd M = m_matrix(D);
  const double crb_cont = crb_continuous(cfg.theta.K(), cfg.noise.sigma_c).mse_bound;
  const int L = cfg.pencil_L > 0 ? cfg.pencil_L : cfg.theta.L();

  ExperimentResult res = make_result(cfg);
  for (int N : cfg.n_grid) {
    const SamplingScheme scheme = SamplingScheme::contiguous(N, pulse.period());
    ExperimentRow row;
    row.series = res.label;
    row.sweep = N;
    row.crb_continuous = crb_cont;
    row.mc_mse = kNan;
    row.mc_stderr = kNan;
    try {
      const FisherMatrix J = fim_sampled(D, scheme, cfg.noise);
      const CrbValue crb = crb_trace(M, J);
      row.crb_sampled = crb.mse_bound;
      row.condition_number = crb.condition_number;
      row.ill_conditioned = crb.ill_conditioned;
    } catch (const UnidentifiableError&) {
      row.crb_sampled = kNan;
      row.condition_number = kInf;
      row.ill_conditioned = true;
    }
    if (run_mc)
      attach_pencil_mc(row, cfg.theta, pulse, scheme, cfg.noise, L, cfg.trials, cfg.seed);
    res.rows.push_back(std::move(row));
  }
  res.runtime_seconds = elapsed_seconds(start);
  return res;
}

ExperimentResult run_pulse_spacing(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const FourierPulse pulse = cfg.make_pulse();
  const double T = pulse.period();
  if (cfg.theta.model != SignalModel::periodic || cfg.theta.L() != 2)
    throw ConfigError("pulse_spacing requires a periodic model with L = 2");
  cfg.theta.validate(pulse);
  cfg.noise.validate_for_crb();
  check_grid_sorted(cfg.t2_grid, "t2_grid");
  const double t1 = cfg.theta.delays[0];
  for (double t2 : cfg.t2_grid) {
    if (t2 == t1) throw ConfigError("t2_grid must exclude exact coincidence with t1");
    if (!(t2 >= 0.0 && t2 < T)) throw ConfigError("t2_grid values must lie in [0, T)");
  }
  if (cfg.scheme_n < 1) throw ConfigError("scheme_n must be >= 1");
  const bool run_mc = cfg.estimator == "matrix_pencil";
  const int L = cfg.pencil_L > 0 ? cfg.pencil_L : 2;

  const SamplingScheme scheme = SamplingScheme::contiguous(cfg.scheme_n, T);
  const double crb_cont = crb_continuous(cfg.theta.K(), cfg.noise.sigma_c).mse_bound;

  ExperimentResult res = make_result(cfg);
  for (double t2 : cfg.t2_grid) {
    PulseStreamTheta th = cfg.theta;
    th.delays[1] = t2;
    const JacobianMatrix D = jacobian_fourier(th, pulse);
    const Eigen::MatrixXd M = m_matrix(D);
    ExperimentRow row;
    row.series = res.label;
    row.sweep = t2;
    row.crb_continuous = crb_cont;
    row.mc_mse = kNan;
    row.mc_stderr = kNan;
    const FisherMatrix J = fim_sampled(D, scheme, cfg.noise);
    try {
      const CrbValue crb = crb_trace(M, J);
      row.crb_sampled = crb.mse_bound;
      row.condition_number = crb.condition_number;
      row.ill_conditioned = crb.ill_conditioned;
    } catch (const UnidentifiableError&) {
      // Probe the near-coincident regime with the clipped diagnostic bound.
      const CrbValue crb = crb_trace_clipped(M, J);
      row.crb_sampled = crb.mse_bound;
      row.condition_number = crb.condition_number;
      row.ill_conditioned = true;
    }
    if (run_mc) attach_pencil_mc(row, th, pulse, scheme, cfg.noise, L, cfg.trials, cfg.seed);
    res.rows.push_back(std::move(row));
  }
  res.runtime_seconds = elapsed_seconds(start);
  return res;
}

ExperimentResult run_periodic_vs_semiperiodic(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const FourierPulse pulse = cfg.make_pulse();
  if (!cfg.theta_b) throw ConfigError("periodic_vs_semiperiodic requires theta_b");
  cfg.theta.validate(pulse);
  cfg.theta_b->validate(pulse);
  if (cfg.theta.K() != cfg.theta_b->K())
    throw ConfigError("periodic_vs_semiperiodic requires equal parameter counts (got " +
                      std::to_string(cfg.theta.K()) + " vs " +
                      std::to_string(cfg.theta_b->K()) + ")");
  cfg.noise.validate_for_crb();
  check_grid_sorted(cfg.n_grid, "n_grid");
  if (cfg.n_grid.back() > static_cast<int>(pulse.size()))
    throw ConfigError("n_grid exceeds the pulse support size");

  struct Series {
    std::string name;
    JacobianMatrix D;
    Eigen::MatrixXd M;
  };
  const std::array<const PulseStreamTheta*, 2> models{&cfg.theta, &*cfg.theta_b};
  std::vector<Series> series;
  for (const PulseStreamTheta* th : models) {
    Series s;
    s.name = model_name(th->model);
    s.D = jacobian_fourier(*th, pulse);
    s.M = m_matrix(s.D);
    series.push_back(std::move(s));
  }
  const double crb_cont = crb_continuous(cfg.theta.K(), cfg.noise.sigma_c).mse_bound;

  ExperimentResult res = make_result(cfg);
  for (int N : cfg.n_grid) {
    const SamplingScheme scheme = SamplingScheme::contiguous(N, pulse.period());
    for (const Series& s : series) {
      ExperimentRow row;
      row.series = s.name;
      row.sweep = N;
      row.crb_continuous = crb_cont;
      row.mc_mse = kNan;
      row.mc_stderr = kNan;
      try {
        const FisherMatrix J = fim_sampled(s.D, scheme, cfg.noise);
        const CrbValue crb = crb_trace(s.M, J);
        row.crb_sampled = crb.mse_bound;
        row.condition_number = crb.condition_number;
        row.ill_conditioned = crb.ill_conditioned;
      } catch (const UnidentifiableError&) {
        row.crb_sampled = kNan;
        row.condition_number = kInf;
        row.ill_conditioned = true;
      }
      res.rows.push_back(std::move(row));
    }
  }
  res.runtime_seconds = elapsed_seconds(start);
  return res;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case ExperimentKind::crb_vs_n: return run_crb_vs_n(cfg);
    case ExperimentKind::pulse_spacing: return run_pulse_spacing(cfg);
    case ExperimentKind::periodic_vs_semiperiodic: return run_periodic_vs_semiperiodic(cfg);
  }
  throw ConfigError("unknown experiment kind");
}

}  // namespace fri
