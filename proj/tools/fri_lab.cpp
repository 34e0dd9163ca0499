// SPDX-License-Identifier: MIT
//
// fri-lab: command-line front end for the FRI estimation bench.
//
//   crb         sampled/continuous Cramer-Rao bounds for a configuration
//   design      MSE-optimal kernel budget plan for a pulse prior
//   estimate    matrix-pencil estimation on sampled (or supplied) data
//   experiment  the reproducible benchmark sweeps (CSV/JSON/SVG artifacts)
//   presets     list the bundled configurations
//
// Exit codes: 0 success, 2 configuration/usage error, 3 numerical error
// (with a machine-readable JSON object on stderr), 1 unexpected failure.

#include "fri/errors.hpp"
#include "fri/estimators.hpp"
#include "fri/fisher.hpp"
#include "fri/io.hpp"
#include "fri/kernel_design.hpp"
#include "fri/meta.hpp"
#include "fri/presets.hpp"
#include "fri/simlab.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace fri;

ExperimentConfig resolve_config(const std::string& preset, const std::string& config_path) {
  if (!preset.empty() && !config_path.empty())
    throw ConfigError("give either --preset or --config, not both");
  if (!preset.empty()) return preset_config(preset);
  if (!config_path.empty()) return ExperimentConfig::load(config_path);
  throw ConfigError("missing --preset or --config");
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  try {
    nlohmann::json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse " + path + ": " + e.what());
  }
}

std::string error_type_name(const NumericalError& e) {
  if (dynamic_cast<const UnidentifiableError*>(&e)) return "UnidentifiableError";
  if (dynamic_cast<const SpectralNullError*>(&e)) return "SpectralNullError";
  if (dynamic_cast<const DegenerateSchemeError*>(&e)) return "DegenerateSchemeError";
  if (dynamic_cast<const NoiseModelError*>(&e)) return "NoiseModelError";
  if (dynamic_cast<const ConstraintViolationError*>(&e)) return "ConstraintViolationError";
  if (dynamic_cast<const DiagnosticError*>(&e)) return "DiagnosticError";
  return "NumericalError";
}

nlohmann::json error_json(const NumericalError& e) {
  nlohmann::json j;
  j["error"]["type"] = error_type_name(e);
  j["error"]["message"] = e.what();
  if (const auto* u = dynamic_cast<const UnidentifiableError*>(&e))
    j["error"]["null_space_dim"] = u->null_space_basis.cols();
  if (const auto* s = dynamic_cast<const SpectralNullError*>(&e))
    j["error"]["frequency_index"] = s->frequency_index;
  return j;
}

void emit(const std::string& out_dir, const std::string& name, const std::string& content) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const std::string path = (fs::path(out_dir) / name).string();
  io::write_text_file(path, content);
  std::cout << path << "\n";
}

io::PlotSpec plot_from_result(const ExperimentResult& res) {
  io::PlotSpec spec;
  const bool spacing = res.experiment == ExperimentKind::pulse_spacing;
  spec.title = res.label;
  spec.x_label = spacing ? "second pulse position t2" : "samples N";
  spec.y_label = "MSE";
  spec.log_x = !spacing;
  spec.log_y = true;

  std::vector<std::string> order;
  for (const ExperimentRow& row : res.rows)
    if (std::find(order.begin(), order.end(), row.series) == order.end())
      order.push_back(row.series);

  io::PlotSeries continuous;
  continuous.name = "continuous CRB";
  for (const std::string& name : order) {
    io::PlotSeries crb, mse;
    crb.name = name + " CRB";
    mse.name = name + " pencil MSE";
    for (const ExperimentRow& row : res.rows) {
      if (row.series != name) continue;
      crb.x.push_back(row.sweep);
      crb.y.push_back(row.crb_sampled);
      mse.x.push_back(row.sweep);
      mse.y.push_back(row.mc_mse);
      if (name == order.front()) {
        continuous.x.push_back(row.sweep);
        continuous.y.push_back(row.crb_continuous);
      }
    }
    spec.series.push_back(std::move(crb));
    const bool any_mse = std::any_of(mse.y.begin(), mse.y.end(),
                                     [](double v) { return std::isfinite(v); });
    if (any_mse) spec.series.push_back(std::move(mse));
  }
  spec.series.push_back(std::move(continuous));
  return spec;
}

struct CrbArgs {
  std::string preset, config, out_dir;
  int N = 0;
  std::vector<int> n_grid;
  double sigma_c = -1.0, sigma_d = -1.0;
};

void run_crb(const CrbArgs& args) {
  ExperimentConfig cfg = resolve_config(args.preset, args.config);
  if (args.sigma_c >= 0.0) cfg.noise.sigma_c = args.sigma_c;
  if (args.sigma_d >= 0.0) cfg.noise.sigma_d = args.sigma_d;
  cfg.noise.validate_for_crb();

  const FourierPulse pulse = cfg.make_pulse();
  cfg.theta.validate(pulse);
  const JacobianMatrix D = jacobian_fourier(cfg.theta, pulse);
  const Eigen::MatrixXd M = m_matrix(D);
  const double crb_cont = crb_continuous(cfg.theta.K(), cfg.noise.sigma_c).mse_bound;

  const auto bound_at = [&](int N) {
    const SamplingScheme scheme = SamplingScheme::contiguous(N, pulse.period());
    return crb_trace(M, fim_sampled(D, scheme, cfg.noise));
  };

  if (args.N > 0) {
    std::cout << io::format_double(bound_at(args.N).mse_bound) << "\n";
    return;
  }

  const std::vector<int>& grid = args.n_grid.empty() ? cfg.n_grid : args.n_grid;
  if (grid.empty()) throw ConfigError("no --N and no N grid available");
  std::vector<io::CrbSweepRow> rows;
  for (int N : grid) {
    const CrbValue crb = bound_at(N);
    rows.push_back({N, crb.mse_bound, crb_cont, crb.condition_number});
  }
  const std::string csv = io::crb_sweep_csv(rows);
  if (args.out_dir.empty())
    std::cout << csv;
  else
    emit(args.out_dir, (cfg.label.empty() ? std::string("crb") : cfg.label) + "_crb.csv", csv);
}

struct DesignArgs {
  std::string preset, pulse_path, out_dir;
  int budget = 0;
  int L = 0;
  double sigma_a = 1.0;
  double sigma_c = -1.0;
};

void run_design(const DesignArgs& args) {
  std::optional<FourierPulse> pulse;
  int L = args.L;
  double sigma_c = args.sigma_c >= 0.0 ? args.sigma_c : 0.0;
  if (!args.preset.empty()) {
    const ExperimentConfig cfg = preset_config(args.preset);
    pulse = cfg.make_pulse();
    if (L <= 0) L = cfg.theta.L();
    if (args.sigma_c < 0.0) sigma_c = cfg.noise.sigma_c;
  } else if (!args.pulse_path.empty()) {
    pulse = pulse_from_spec(load_json_file(args.pulse_path));
  } else {
    throw ConfigError("missing --preset or --pulse");
  }
  if (L <= 0) L = 2;
  if (args.budget < 1) throw ConfigError("--budget must be >= 1");

  const SpectrumDesign spec = periodic_spectrum(*pulse, L, args.sigma_a);
  const KernelBudgetPlan plan = top_n_kernels(spec, args.budget, sigma_c);
  const std::string text = plan.to_json().dump(2) + "\n";
  if (args.out_dir.empty())
    std::cout << text;
  else
    emit(args.out_dir, "plan.json", text);
}

struct EstimateArgs {
  std::string preset, config, samples_path, out_dir;
  int N = 0;
  int L = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  double sigma_c = -1.0, sigma_d = -1.0;
};

void run_estimate(const EstimateArgs& args) {
  ExperimentConfig cfg = resolve_config(args.preset, args.config);
  if (args.sigma_c >= 0.0) cfg.noise.sigma_c = args.sigma_c;
  if (args.sigma_d >= 0.0) cfg.noise.sigma_d = args.sigma_d;
  const FourierPulse pulse = cfg.make_pulse();
  cfg.theta.validate(pulse);
  const int L = args.L > 0 ? args.L : cfg.theta.L();
  int N = args.N;
  if (N <= 0) N = std::min<int>(2 * L + 3, static_cast<int>(pulse.size()));
  const SamplingScheme scheme = SamplingScheme::contiguous(N, pulse.period());
  const std::uint64_t seed = args.seed_given ? args.seed : cfg.seed;

  Eigen::VectorXcd c;
  bool synthesized = false;
  if (!args.samples_path.empty()) {
    const nlohmann::json j = load_json_file(args.samples_path);
    const auto& arr = j.contains("samples") ? j.at("samples") : j;
    if (!arr.is_array()) throw ConfigError("samples file must hold an array of [re, im] pairs");
    c.resize(static_cast<Eigen::Index>(arr.size()));
    Eigen::Index i = 0;
    for (const auto& item : arr) {
      if (!item.is_array() || item.size() != 2)
        throw ConfigError("samples file must hold an array of [re, im] pairs");
      c[i++] = std::complex<double>(item[0].get<double>(), item[1].get<double>());
    }
    if (c.size() != scheme.N())
      throw ConfigError("sample count " + std::to_string(c.size()) +
                        " does not match the scheme size " + std::to_string(scheme.N()));
  } else {
    const FourierCoeffVector x = synthesize_fourier(cfg.theta, pulse);
    c = sample_noisy(x, scheme, cfg.noise, seed, 0);
    synthesized = true;
  }

  const EstimateReport rep = matrix_pencil(c, scheme, pulse, L);
  nlohmann::json j = rep.to_json();
  j["scheme_n"] = N;
  if (synthesized) j["seed"] = seed;
  const std::string text = j.dump(2) + "\n";
  if (args.out_dir.empty())
    std::cout << text;
  else
    emit(args.out_dir, "estimate.json", text);
}

struct ExperimentArgs {
  std::string preset, config, out_dir = ".", format = "csv";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int trials = 0;
  bool svg = false;
};

void run_experiment_cmd(const ExperimentArgs& args) {
  ExperimentConfig cfg = resolve_config(args.preset, args.config);
  if (args.seed_given) cfg.seed = args.seed;
  if (args.trials > 0) cfg.trials = args.trials;

  const ExperimentResult res = run_experiment(cfg);
  emit(args.out_dir, res.label + ".csv", io::experiment_csv(res));
  if (args.format == "json")
    emit(args.out_dir, res.label + ".json", io::experiment_rows_json(res).dump(2) + "\n");
  emit(args.out_dir, res.label + "_manifest.json", io::run_manifest(res).dump(2) + "\n");
  if (args.svg) emit(args.out_dir, res.label + ".svg", io::svg_line_plot(plot_from_result(res)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FRI estimation bench: Cramer-Rao bounds, kernel design, estimators"};
  app.require_subcommand(1);

  CrbArgs crb_args;
  CLI::App* crb_cmd = app.add_subcommand("crb", "Compute sampled/continuous CRBs");
  crb_cmd->add_option("--preset", crb_args.preset, "Bundled configuration name");
  crb_cmd->add_option("--config", crb_args.config, "Experiment config JSON path");
  crb_cmd->add_option("--N", crb_args.N, "Single kernel count: print the sampled bound");
  crb_cmd->add_option("--n-grid", crb_args.n_grid, "Kernel-count sweep (CSV output)")
      ->delimiter(',');
  crb_cmd->add_option("--sigma-c", crb_args.sigma_c, "Override continuous noise level");
  crb_cmd->add_option("--sigma-d", crb_args.sigma_d, "Override digital noise level");
  crb_cmd->add_option("--out", crb_args.out_dir, "Write CSV into this directory");
  crb_cmd->callback([&] { run_crb(crb_args); });

  DesignArgs design_args;
  CLI::App* design_cmd = app.add_subcommand("design", "Design an optimal kernel budget plan");
  design_cmd->add_option("--preset", design_args.preset, "Bundled configuration name");
  design_cmd->add_option("--pulse", design_args.pulse_path, "Pulse spec JSON path");
  design_cmd->add_option("--budget", design_args.budget, "Number of kernels")->required();
  design_cmd->add_option("--L", design_args.L, "Pulses per period in the prior");
  design_cmd->add_option("--sigma-a", design_args.sigma_a, "Prior amplitude std dev");
  design_cmd->add_option("--sigma-c", design_args.sigma_c, "Continuous noise level");
  design_cmd->add_option("--out", design_args.out_dir, "Write plan.json into this directory");
  design_cmd->callback([&] { run_design(design_args); });

  EstimateArgs est_args;
  CLI::App* est_cmd = app.add_subcommand("estimate", "Matrix-pencil estimation");
  est_cmd->add_option("--preset", est_args.preset, "Bundled configuration name");
  est_cmd->add_option("--config", est_args.config, "Experiment config JSON path");
  est_cmd->add_option("--samples", est_args.samples_path, "JSON file with measured samples");
  est_cmd->add_option("--N", est_args.N, "Kernel count (default 2L+3)");
  est_cmd->add_option("--L", est_args.L, "Pulse count to estimate");
  est_cmd->add_option("--seed", est_args.seed, "Noise seed for synthesized samples")
      ->each([&](const std::string&) { est_args.seed_given = true; });
  est_cmd->add_option("--sigma-c", est_args.sigma_c, "Override continuous noise level");
  est_cmd->add_option("--sigma-d", est_args.sigma_d, "Override digital noise level");
  est_cmd->add_option("--out", est_args.out_dir, "Write estimate.json into this directory");
  est_cmd->callback([&] { run_estimate(est_args); });

  ExperimentArgs exp_args;
  CLI::App* exp_cmd = app.add_subcommand("experiment", "Run a benchmark sweep");
  exp_cmd->add_option("--preset", exp_args.preset, "Bundled configuration name");
  exp_cmd->add_option("--config", exp_args.config, "Experiment config JSON path");
  exp_cmd->add_option("--out", exp_args.out_dir, "Output directory (default .)");
  exp_cmd->add_option("--seed", exp_args.seed, "Override the config seed")
      ->each([&](const std::string&) { exp_args.seed_given = true; });
  exp_cmd->add_option("--trials", exp_args.trials, "Override the trial count");
  exp_cmd->add_option("--format", exp_args.format, "csv (default) or json (adds rows JSON)")
      ->check(CLI::IsMember({"csv", "json"}));
  exp_cmd->add_flag("--svg", exp_args.svg, "Also write an SVG line plot");
  exp_cmd->callback([&] { run_experiment_cmd(exp_args); });

  CLI::App* presets_cmd = app.add_subcommand("presets", "Bundled configurations");
  presets_cmd->require_subcommand(1);
  CLI::App* list_cmd = presets_cmd->add_subcommand("list", "List preset names");
  list_cmd->callback([] {
    for (const std::string& name : fri::preset_names()) std::cout << name << "\n";
  });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const fri::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fri::NumericalError& e) {
    std::cerr << error_json(e).dump() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
