// SPDX-License-Identifier: MIT
//
// Exception taxonomy for the FRI lab.  Two top-level families matter to
// callers (and to the CLI exit-code mapping):
//
//   * ConfigError     -- the request itself is malformed (bad dimensions,
//                        inconsistent model/pulse pairing, unparsable input).
//   * NumericalError  -- the request is well-formed but the computation
//                        cannot produce a trustworthy answer (singular Fisher
//                        information, spectral null in a deconvolution band,
//                        degenerate kernel set, ...).
//
// Subclasses carry machine-readable payloads where a caller can act on them
// (e.g. the null-space basis of an unidentifiable model, or the index of the
// offending spectral null).

#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>

namespace fri {

/// Root of all library exceptions.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed request: bad shapes, inconsistent options, unparsable files.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Well-formed request whose computation is numerically meaningless.
class NumericalError : public Error {
public:
  using Error::Error;
};

/// Kernel set is linearly dependent (Gram matrix rank-deficient).
class DegenerateSchemeError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Noise description unusable for the requested operation
/// (e.g. all variances zero when a CRB is requested).
class NoiseModelError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Fisher information is singular: some parameter directions are invisible
/// to the measurements.  Carries an orthonormal basis of the unidentifiable
/// subspace (columns), so diagnostics can name the blind directions.
class UnidentifiableError : public NumericalError {
public:
  UnidentifiableError(const std::string& msg, Eigen::MatrixXd null_basis)
      : NumericalError(msg), null_space_basis(std::move(null_basis)) {}
  Eigen::MatrixXd null_space_basis;
};

/// Deconvolution requested through a vanishing pulse coefficient.
/// Carries the offending frequency index.
class SpectralNullError : public NumericalError {
public:
  SpectralNullError(const std::string& msg, long index)
      : NumericalError(msg), frequency_index(index) {}
  long frequency_index = 0;
};

/// A hard mathematical constraint was violated by caller-supplied data
/// (e.g. a design matrix that is not row-orthonormal).
class ConstraintViolationError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// A Monte Carlo run discarded too many trials to report a meaningful
/// statistic (more than half failed).
class DiagnosticError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

}  // namespace fri
