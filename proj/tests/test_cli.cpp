// End-to-end tests for the fri-lab command-line tool: each case invokes the
// real binary (path injected by the build as FRI_LAB_BIN) and checks exit
// codes, stdout/stderr contracts, and artifact files against values computed
// in-process through the library.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fri/fisher.hpp>
#include <fri/io.hpp>
#include <fri/presets.hpp>
#include <fri/sampling.hpp>
#include <fri/signal_model.hpp>
#include <fri/simlab.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using namespace fri;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("fri_cli_" + std::to_string(static_cast<long>(::getpid())));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out_path = scratch_dir() / ("out" + std::to_string(counter) + ".txt");
  const fs::path err_path = scratch_dir() / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = std::string("\"") + FRI_LAB_BIN + "\" " + args + " > \"" +
                          out_path.string() + "\" 2> \"" + err_path.string() + "\"";
  const int raw = std::system(cmd.c_str());
  CliResult res;
  res.exit_code = (raw >= 0 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
  res.out = slurp(out_path);
  res.err = slurp(err_path);
  return res;
}

double sampled_bound(const ExperimentConfig& cfg, int N) {
  const FourierPulse pulse = cfg.make_pulse();
  const JacobianMatrix D = jacobian_fourier(cfg.theta, pulse);
  const SamplingScheme scheme = SamplingScheme::contiguous(N, pulse.period());
  return crb_trace(m_matrix(D), fim_sampled(D, scheme, cfg.noise)).mse_bound;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

TEST_CASE("presets list prints the eight bundled names") {
  const CliResult res = run_cli("presets list");
  CHECK(res.exit_code == 0);
  CHECK(res.err.empty());
  const auto names = lines_of(res.out);
  REQUIRE(names.size() == 8);
  CHECK(std::find(names.begin(), names.end(), "flat41") != names.end());
  CHECK(std::find(names.begin(), names.end(), "periodic-vs-semiperiodic") != names.end());
}

TEST_CASE("crb with a single N prints exactly the library's bound") {
  const CliResult res = run_cli("crb --preset flat401 --N 401");
  CHECK(res.exit_code == 0);
  const double expected = sampled_bound(preset_config("flat401"), 401);
  CHECK(res.out == io::format_double(expected) + "\n");
}

TEST_CASE("crb honors noise overrides") {
  const CliResult res = run_cli("crb --preset flat41 --N 41 --sigma-c 1e-3");
  CHECK(res.exit_code == 0);
  ExperimentConfig cfg = preset_config("flat41");
  cfg.noise.sigma_c = 1e-3;
  CHECK(res.out == io::format_double(sampled_bound(cfg, 41)) + "\n");
}

TEST_CASE("crb grid mode reproduces the CSV writer byte for byte") {
  const CliResult res = run_cli("crb --preset flat41 --n-grid 5,9,21");
  CHECK(res.exit_code == 0);

  const ExperimentConfig cfg = preset_config("flat41");
  const double cont = crb_continuous(cfg.theta.K(), cfg.noise.sigma_c).mse_bound;
  const FourierPulse pulse = cfg.make_pulse();
  const JacobianMatrix D = jacobian_fourier(cfg.theta, pulse);
  std::vector<io::CrbSweepRow> rows;
  for (int N : {5, 9, 21}) {
    const auto crb =
        crb_trace(m_matrix(D), fim_sampled(D, SamplingScheme::contiguous(N, 1.0), cfg.noise));
    rows.push_back({N, crb.mse_bound, cont, crb.condition_number});
  }
  CHECK(res.out == io::crb_sweep_csv(rows));
}

TEST_CASE("an unidentifiable request exits 3 with a machine-readable error") {
  const CliResult res = run_cli("crb --preset flat401 --N 3");
  CHECK(res.exit_code == 3);
  CHECK(res.out.empty());
  const nlohmann::json j = nlohmann::json::parse(res.err);
  CHECK(j.at("error").at("type") == "UnidentifiableError");
  CHECK(j.at("error").at("null_space_dim").get<int>() >= 1);
}

TEST_CASE("an all-zero noise model exits 3 with its error type") {
  const CliResult res = run_cli("crb --preset flat41 --N 41 --sigma-c 0 --sigma-d 0");
  CHECK(res.exit_code == 3);
  const nlohmann::json j = nlohmann::json::parse(res.err);
  CHECK(j.at("error").at("type") == "NoiseModelError");
}

TEST_CASE("design emits the same plan the library computes") {
  const CliResult res = run_cli("design --preset rect401 --budget 49");
  CHECK(res.exit_code == 0);
  const nlohmann::json plan = nlohmann::json::parse(res.out);
  const auto indices = plan.at("indices").get<std::vector<long>>();
  REQUIRE(indices.size() == 49);
  for (long k : indices) CHECK(std::labs(k) != 25);  // the sinc nulls never make the cut

  // Replicate the tool's pipeline in-process: preset pulse, L from the preset
  // stream, default prior scale, preset noise level.
  const ExperimentConfig cfg = preset_config("rect401");
  const SpectrumDesign spec = periodic_spectrum(cfg.make_pulse(), cfg.theta.L(), 1.0);
  const KernelBudgetPlan expected = top_n_kernels(spec, 49, cfg.noise.sigma_c);
  CHECK(indices == expected.indices);

  const auto lambdas = plan.at("eigenvalues").get<std::vector<double>>();
  REQUIRE(lambdas.size() == 49);
  for (std::size_t i = 1; i < lambdas.size(); ++i) CHECK(lambdas[i] <= lambdas[i - 1] + 1e-18);
}

TEST_CASE("design requires a budget") {
  const CliResult res = run_cli("design --preset rect401");
  CHECK(res.exit_code == 2);
}

TEST_CASE("noiseless estimation recovers the bench delays") {
  const CliResult res = run_cli("estimate --preset flat41 --sigma-c 0 --sigma-d 0");
  CHECK(res.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(res.out);
  CHECK(j.at("scheme_n").get<int>() == 7);
  CHECK(j.contains("seed"));
  auto delays = j.at("delays").get<std::vector<double>>();
  auto amps = j.at("amplitudes").get<std::vector<double>>();
  REQUIRE(delays.size() == 2);
  REQUIRE(amps.size() == 2);
  std::vector<std::pair<double, double>> pairs{{delays[0], amps[0]}, {delays[1], amps[1]}};
  std::sort(pairs.begin(), pairs.end());
  CHECK(pairs[0].first == doctest::Approx(0.6678).epsilon(1e-6));
  CHECK(pairs[1].first == doctest::Approx(0.9863).epsilon(1e-6));
  CHECK(pairs[0].second == doctest::Approx(0.3204).epsilon(1e-6));
  CHECK(pairs[1].second == doctest::Approx(0.6063).epsilon(1e-6));
}

TEST_CASE("estimation accepts externally measured samples") {
  const ExperimentConfig cfg = preset_config("flat41");
  const FourierPulse pulse = cfg.make_pulse();
  const SamplingScheme scheme = SamplingScheme::contiguous(7, pulse.period());
  const Eigen::VectorXcd c = measurement_mean(synthesize_fourier(cfg.theta, pulse), scheme);

  nlohmann::json samples;
  samples["samples"] = nlohmann::json::array();
  for (Eigen::Index i = 0; i < c.size(); ++i)
    samples["samples"].push_back({c[i].real(), c[i].imag()});
  const fs::path path = scratch_dir() / "samples.json";
  std::ofstream(path) << samples.dump();

  const CliResult res = run_cli("estimate --preset flat41 --samples " + path.string() + " --N 7");
  CHECK(res.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(res.out);
  CHECK_FALSE(j.contains("seed"));  // nothing was synthesized
  auto delays = j.at("delays").get<std::vector<double>>();
  std::sort(delays.begin(), delays.end());
  CHECK(delays[0] == doctest::Approx(0.6678).epsilon(1e-6));
  CHECK(delays[1] == doctest::Approx(0.9863).epsilon(1e-6));

  // A sample count that disagrees with the scheme is a usage error.
  const CliResult bad = run_cli("estimate --preset flat41 --samples " + path.string() + " --N 9");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("experiment runs are seed-deterministic across invocations") {
  const fs::path dir_a = scratch_dir() / "exp_a";
  const fs::path dir_b = scratch_dir() / "exp_b";
  const CliResult res_a = run_cli("experiment --preset flat41 --trials 20 --out " + dir_a.string() +
                                  " --format json --svg");
  const CliResult res_b = run_cli("experiment --preset flat41 --trials 20 --out " + dir_b.string());
  CHECK(res_a.exit_code == 0);
  CHECK(res_b.exit_code == 0);
  CHECK(lines_of(res_a.out).size() == 4);  // csv, rows json, manifest, svg
  CHECK(lines_of(res_b.out).size() == 2);  // csv, manifest

  const std::string csv_a = slurp(dir_a / "flat41.csv");
  const std::string csv_b = slurp(dir_b / "flat41.csv");
  CHECK_FALSE(csv_a.empty());
  CHECK(csv_a == csv_b);

  const nlohmann::json man_a = nlohmann::json::parse(slurp(dir_a / "flat41_manifest.json"));
  const nlohmann::json man_b = nlohmann::json::parse(slurp(dir_b / "flat41_manifest.json"));
  CHECK(man_a.at("config_hash") == man_b.at("config_hash"));
  CHECK(man_a.at("trials").get<int>() == 20);
  CHECK(man_a.at("seed").get<std::uint64_t>() == 20260818u);

  const nlohmann::json rows = nlohmann::json::parse(slurp(dir_a / "flat41.json"));
  CHECK(rows.is_array());
  CHECK_FALSE(rows.empty());

  const std::string svg = slurp(dir_a / "flat41.svg");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("").exit_code == 2);                                    // missing subcommand
  CHECK(run_cli("crb").exit_code == 2);                                 // no preset or config
  CHECK(run_cli("crb --preset nope --N 5").exit_code == 2);             // unknown preset
  CHECK(run_cli("experiment --config /nonexistent/cfg.json").exit_code == 2);
  const CliResult both =
      run_cli("crb --preset flat41 --config /tmp/also.json --N 5");
  CHECK(both.exit_code == 2);
  CHECK(both.err.rfind("error:", 0) == 0);
}
