// SPDX-License-Identifier: MIT
//
// Deterministic Monte Carlo engine and the three benchmark experiments:
//
//   * crb_vs_n                 -- sampled CRB (and matrix-pencil MSE) as the
//                                 kernel count grows, for a fixed pulse;
//   * pulse_spacing            -- CRB and pencil MSE as two pulses approach
//                                 each other;
//   * periodic_vs_semiperiodic -- CRB comparison of two stream models with
//                                 equal parameter counts and equal kernels.
//
// Determinism contract: every trial owns the random stream keyed by
// (seed, trial index), values are recorded per trial, and all reductions run
// serially in trial order -- results are bit-identical for any thread count.
// FRI_LAB_THREADS caps the worker pool.

#pragma once

#include "fri/errors.hpp"
#include "fri/estimators.hpp"
#include "fri/fisher.hpp"
#include "fri/kernel_design.hpp"
#include "fri/pulse.hpp"
#include "fri/rng.hpp"
#include "fri/sampling.hpp"
#include "fri/signal_model.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace fri {

/// Worker count for a job of `tasks` independent units: hardware concurrency
/// capped by FRI_LAB_THREADS (and by the task count), at least 1.
int thread_budget(int tasks);

// ---- Monte Carlo engine --------------------------------------------------

struct MonteCarloResult {
  double mean = 0.0;
  double std_error = 0.0;
  int trials = 0;
  int failures = 0;
  /// Per-trial metric in trial order; NaN marks a failed trial.
  std::vector<double> values;
};

/// Runs `trial_fn` once per trial with an independent stream (seed, trial)
/// and reduces mean / standard error over the successful trials in trial
/// order.  A NumericalError inside a trial counts as a failure (NaN value);
/// any other exception propagates.  More than 50% failures aborts with
/// DiagnosticError.
MonteCarloResult monte_carlo_mse(int trials, std::uint64_t seed,
                                 const std::function<double(TrialRng&)>& trial_fn);

/// Signal-domain MSE of matrix_pencil on noisy samples of a fixed stream.
MonteCarloResult mc_pencil_mse(const PulseStreamTheta& theta, const FourierPulse& pulse,
                               const SamplingScheme& scheme, const NoiseSpec& noise, int L,
                               int trials, std::uint64_t seed, const PencilOptions& opts = {});

/// Signal-domain MSE of subspace_consistent on a fixed subspace signal
/// (requires scheme.N() == gen.K()).
MonteCarloResult mc_subspace_mse(const SubspaceGenerators& gen, const Eigen::VectorXd& theta,
                                 const SamplingScheme& scheme, const NoiseSpec& noise, int trials,
                                 std::uint64_t seed);

/// Signal-domain MSE of the shrinkage (or plain projection, shrunk = false)
/// reconstruction under the stream prior: each trial draws L amplitudes
/// ~ N(0, sigma_a^2) and L delays ~ U[0, T), samples through the plan's
/// exponential kernels with continuous noise sigma_c, and reconstructs.
MonteCarloResult mc_bayes_mse(const FourierPulse& pulse, int L, double sigma_a,
                              const KernelBudgetPlan& plan, double sigma_c, bool shrunk,
                              int trials, std::uint64_t seed);

/// Largest circular delay error under the best label assignment: both delay
/// sets are sorted and compared over all cyclic alignments (the optimal
/// bijection for points on a circle).  Sizes must match (ConfigError).
double max_circular_delay_error(const Eigen::VectorXd& t_hat, const Eigen::VectorXd& t_true,
                                double T);

// ---- experiments -----------------------------------------------------------

enum class ExperimentKind { crb_vs_n, pulse_spacing, periodic_vs_semiperiodic };

const char* experiment_name(ExperimentKind kind);

/// One experiment request.  `pulse_spec` keeps the pulse description in its
/// JSON form (either {"shape": "flat"|"lorentzian"|"rect", "half_band", ...}
/// or an explicit {"period", "coeffs"} table) so that serializing the config
/// is lossless; make_pulse() materializes it.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::crb_vs_n;
  std::string label;
  nlohmann::json pulse_spec;
  PulseStreamTheta theta;
  std::optional<PulseStreamTheta> theta_b;  // second model for the comparison
  NoiseSpec noise;
  std::vector<int> n_grid;      // crb_vs_n, periodic_vs_semiperiodic
  std::vector<double> t2_grid;  // pulse_spacing: positions of the second pulse
  int scheme_n = 11;            // pulse_spacing: fixed kernel count
  std::string estimator = "matrix_pencil";  // "matrix_pencil" | "none"
  int pencil_L = 0;                         // 0 -> theta.L()
  int trials = 200;
  std::uint64_t seed = 1;

  FourierPulse make_pulse() const;

  // Schema "v1"; unknown versions or experiments are ConfigErrors.
  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  static ExperimentConfig load(const std::string& path);
};

/// Pulse from a config-level spec: either a named shape
///   {"shape": "flat"|"lorentzian"|"rect", "half_band": B, "period": T,
///    "decay": d (lorentzian), "width": w (rect)}
/// or the explicit coefficient table understood by FourierPulse::from_json.
FourierPulse pulse_from_spec(const nlohmann::json& spec);

struct ExperimentRow {
  std::string series;
  double sweep = 0.0;  // N or t_2
  double crb_sampled = 0.0;
  double crb_continuous = 0.0;
  double mc_mse = 0.0;  // NaN when no estimator ran
  double mc_stderr = 0.0;
  double condition_number = 0.0;
  bool ill_conditioned = false;
  int failures = 0;
};

struct ExperimentResult {
  ExperimentKind experiment = ExperimentKind::crb_vs_n;
  std::string label;
  /// FNV-1a over the canonical config JSON, as 16 hex digits.
  std::string config_hash;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<ExperimentRow> rows;
  double runtime_seconds = 0.0;
};

/// CRB (and optional pencil MSE) over a grid of centered contiguous schemes.
/// Rows where the model is unidentifiable at that N carry NaN bounds and the
/// ill_conditioned flag instead of aborting the sweep.
ExperimentResult run_crb_vs_n(const ExperimentConfig& cfg);

/// CRB and pencil MSE as the second of two pulses sweeps past the first.
/// Near-coincident rows fall back to the clipped-eigenvalue diagnostic bound
/// and are flagged ill_conditioned.
ExperimentResult run_pulse_spacing(const ExperimentConfig& cfg);

/// Two CRB curves (series "periodic" and "semi_periodic") over a shared
/// kernel grid; both models must have equal parameter counts (ConfigError).
ExperimentResult run_periodic_vs_semiperiodic(const ExperimentConfig& cfg);

/// Dispatch on cfg.experiment.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace fri
