// Copyright 2026 The cmbrbg Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace cmbrbg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid model or operation parameter (negative amplitude, bad sigma, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Requested multipole range exceeds what a grid or spectrum can represent.
class BandLimitError : public Error {
 public:
  using Error::Error;
};

/// Two inputs that must agree in size or shape do not.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Malformed or truncated file.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Matrix that must be symmetric / positive definite is not.
class MatrixError : public Error {
 public:
  using Error::Error;
};

/// Key halves V and W share the same provenance.
class IndependenceError : public Error {
 public:
  using Error::Error;
};

/// Not enough pad (or stream) bits left for the request.
class ExhaustedError : public Error {
 public:
  using Error::Error;
};

/// A pad offset that has already been consumed was requested again.
class LedgerConflict : public Error {
 public:
  using Error::Error;
};

}  // namespace cmbrbg
