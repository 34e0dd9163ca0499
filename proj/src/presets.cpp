// SPDX-License-Identifier: MIT

#include "fri/presets.hpp"

namespace fri {

namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

constexpr std::uint64_t kPresetSeed = 20260818;

/// Two-pulse test signal used throughout the bound-vs-sample-count sweeps.
PulseStreamTheta two_pulse_theta() {
  PulseStreamTheta theta;
  theta.model = SignalModel::periodic;
  theta.amplitudes = vec({0.3204, 0.6063});
  theta.delays = vec({0.6678, 0.9863});
  return theta;
}

nlohmann::json shape_spec(const char* shape, long half_band) {
  nlohmann::json j;
  j["shape"] = shape;
  j["half_band"] = half_band;
  j["period"] = 1.0;
  if (std::string(shape) == "rect") j["width"] = 0.04;
  return j;
}

ExperimentConfig crb_vs_n_preset(const std::string& label, const char* shape, long half_band) {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::crb_vs_n;
  cfg.label = label;
  cfg.pulse_spec = shape_spec(shape, half_band);
  cfg.theta = two_pulse_theta();
  cfg.noise = NoiseSpec{1e-5, 0.0};
  cfg.n_grid = half_band >= 200 ? std::vector<int>{5, 11, 21, 41, 81, 161, 321, 401}
                                : std::vector<int>{5, 9, 13, 21, 29, 41};
  // The rectangle band contains near-null coefficients; deconvolution-based
  // estimation is meaningless there, so that preset reports bounds only.
  cfg.estimator = std::string(shape) == "rect" ? "none" : "matrix_pencil";
  cfg.trials = 200;
  cfg.seed = kPresetSeed;
  return cfg;
}

ExperimentConfig spacing_preset() {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::pulse_spacing;
  cfg.label = "spacing";
  cfg.pulse_spec = shape_spec("lorentzian", 200);
  cfg.theta = two_pulse_theta();
  cfg.theta.delays = vec({0.5, 0.65});  // delays[1] is the swept placeholder
  cfg.noise = NoiseSpec{1e-3, 0.0};
  cfg.t2_grid = {0.30, 0.35, 0.40, 0.45, 0.53, 0.65, 0.70};
  cfg.scheme_n = 11;
  cfg.estimator = "matrix_pencil";
  cfg.trials = 200;
  cfg.seed = kPresetSeed;
  return cfg;
}

ExperimentConfig comparison_preset() {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::periodic_vs_semiperiodic;
  cfg.label = "periodic_vs_semiperiodic";
  cfg.pulse_spec = shape_spec("lorentzian", 200);

  // Ten pulses on the unit period, clear of the period edges; frozen draws.
  cfg.theta.model = SignalModel::periodic;
  cfg.theta.delays = vec({0.1438, 0.2551, 0.3466, 0.3928, 0.4528, 0.5635, 0.6361, 0.7009,
                          0.8082, 0.8950});
  cfg.theta.amplitudes = vec({0.5962, 0.7013, 1.2876, 1.0815, 1.3855, 1.1684, 0.7051, 0.6962,
                              1.0828, 1.4614});

  // Two pulses per short period T = 1/9, amplitudes varying across the nine
  // periods (flattened pulse-major); 2*9 + 2 = 20 parameters, matching the
  // periodic model's 2*10.
  PulseStreamTheta semi;
  semi.model = SignalModel::semi_periodic;
  semi.M = 9;
  semi.delays = vec({0.0352, 0.0789});
  semi.amplitudes = vec({1.0411, 1.124, 0.9, 0.779, 0.6932, 1.4949, 1.0526, 0.5901, 0.5979,
                         0.8254, 0.5874, 0.7765, 1.2165, 0.6401, 0.9966, 0.8337, 1.023, 0.6285});
  cfg.theta_b = semi;

  cfg.noise = NoiseSpec{1e-3, 0.0};
  cfg.n_grid = {21, 41, 81, 161, 241, 321, 401};
  cfg.estimator = "none";
  cfg.trials = 1;
  cfg.seed = kPresetSeed;
  return cfg;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"flat41",  "flat401", "lorentz41", "lorentz401",
          "rect41",  "rect401", "spacing",   "periodic-vs-semiperiodic"};
}

ExperimentConfig preset_config(const std::string& name) {
  if (name == "flat41") return crb_vs_n_preset(name, "flat", 20);
  if (name == "flat401") return crb_vs_n_preset(name, "flat", 200);
  if (name == "lorentz41") return crb_vs_n_preset(name, "lorentzian", 20);
  if (name == "lorentz401") return crb_vs_n_preset(name, "lorentzian", 200);
  if (name == "rect41") return crb_vs_n_preset(name, "rect", 20);
  if (name == "rect401") return crb_vs_n_preset(name, "rect", 200);
  if (name == "spacing") return spacing_preset();
  if (name == "periodic-vs-semiperiodic") return comparison_preset();
  throw ConfigError("unknown preset: " + name + " (see `fri-lab presets list`)");
}

}  // namespace fri
