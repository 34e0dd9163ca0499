// SPDX-License-Identifier: MIT

#include "fri/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace fri {

namespace {
double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}
}  // namespace

FourierPulse::FourierPulse(double period, std::vector<long> indices,
                           std::vector<std::complex<double>> coefficients)
    : period_(period) {
  if (!(period > 0.0)) throw ConfigError("pulse period must be positive");
  if (indices.size() != coefficients.size())
    throw ConfigError("pulse index/coefficient length mismatch");

  // Sort by index, dropping exact zeros.
  std::vector<std::size_t> order(indices.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return indices[a] < indices[b]; });
  support_.reserve(order.size());
  coeffs_.reserve(order.size());
  for (std::size_t i : order) {
    if (coefficients[i] == std::complex<double>(0.0, 0.0)) continue;
    if (!support_.empty() && support_.back() == indices[i])
      throw ConfigError("duplicate pulse coefficient index " + std::to_string(indices[i]));
    support_.push_back(indices[i]);
    coeffs_.push_back(coefficients[i]);
  }
  if (support_.empty()) throw ConfigError("pulse has no nonzero coefficients");

  for (const auto& c : coeffs_) max_abs_ = std::max(max_abs_, std::abs(c));

  // Conjugate-symmetry check => real-valued h(t).
  const double tol = 1e-12 * max_abs_;
  real_valued_ = true;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (std::abs(coeff(-support_[i]) - std::conj(coeffs_[i])) > tol) {
      real_valued_ = false;
      break;
    }
  }

  // Contiguous runs for ramped-phasor synthesis.
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= support_.size(); ++i) {
    if (i == support_.size() || support_[i] != support_[i - 1] + 1) {
      runs_.emplace_back(begin, i);
      begin = i;
    }
  }
}

std::complex<double> FourierPulse::coeff(long k) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), k);
  if (it == support_.end() || *it != k) return {0.0, 0.0};
  return coeffs_[static_cast<std::size_t>(it - support_.begin())];
}

bool FourierPulse::contains(long k) const {
  return std::binary_search(support_.begin(), support_.end(), k);
}

FourierPulse FourierPulse::flat(long B, double T) {
  if (B < 0) throw ConfigError("flat pulse band limit must be >= 0");
  std::vector<long> idx;
  std::vector<std::complex<double>> c;
  for (long k = -B; k <= B; ++k) {
    idx.push_back(k);
    c.emplace_back(1.0, 0.0);
  }
  return {T, std::move(idx), std::move(c)};
}

FourierPulse FourierPulse::lorentzian(long B, double T, double decay) {
  if (B < 0) throw ConfigError("lorentzian band limit must be >= 0");
  std::vector<long> idx;
  std::vector<std::complex<double>> c;
  for (long k = -B; k <= B; ++k) {
    idx.push_back(k);
    const double kk = decay * static_cast<double>(k);
    c.emplace_back(1.0 / (1.0 + kk * kk), 0.0);
  }
  return {T, std::move(idx), std::move(c)};
}

FourierPulse FourierPulse::rect(long B, double width, double T) {
  if (B < 0) throw ConfigError("rect band limit must be >= 0");
  if (!(width > 0.0) || width > T) throw ConfigError("rect width must lie in (0, T]");
  std::vector<long> idx;
  std::vector<std::complex<double>> c;
  for (long k = -B; k <= B; ++k) {
    idx.push_back(k);
    c.emplace_back((width / T) * sinc(static_cast<double>(k) * width / T), 0.0);
  }
  return {T, std::move(idx), std::move(c)};
}

FourierPulse FourierPulse::from_json(const nlohmann::json& j) {
  try {
    const double T = j.at("period").get<double>();
    std::vector<long> idx;
    std::vector<std::complex<double>> c;
    for (const auto& entry : j.at("coeffs")) {
      if (!entry.is_array() || entry.size() != 3)
        throw ConfigError("pulse coeff entries must be [k, re, im] triples");
      idx.push_back(entry[0].get<long>());
      c.emplace_back(entry[1].get<double>(), entry[2].get<double>());
    }
    return {T, std::move(idx), std::move(c)};
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid pulse JSON: ") + e.what());
  }
}

nlohmann::json FourierPulse::to_json() const {
  nlohmann::json coeffs = nlohmann::json::array();
  for (std::size_t i = 0; i < support_.size(); ++i)
    coeffs.push_back({support_[i], coeffs_[i].real(), coeffs_[i].imag()});
  return {{"period", period_}, {"coeffs", coeffs}};
}

FourierPulse FourierPulse::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open pulse file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse pulse file " + path + ": " + e.what());
  }
  return from_json(j);
}

}  // namespace fri
