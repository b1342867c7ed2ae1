// Copyright 2026 The usdreduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace usd {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
  public:
    using Error::Error;
};

class NotHermitian : public Error {
  public:
    using Error::Error;
};

class NotPsd : public Error {
  public:
    using Error::Error;
};

class ConvergenceFailure : public Error {
  public:
    using Error::Error;
};

class EmptySubspace : public Error {
  public:
    using Error::Error;
};

class InvalidProblem : public Error {
  public:
    using Error::Error;
};

class InvalidPovm : public Error {
  public:
    using Error::Error;
};

class CommonSubspacePresent : public Error {
  public:
    using Error::Error;
};

class NotUsdOnReduced : public Error {
  public:
    using Error::Error;
};

class InvalidPair : public Error {
  public:
    using Error::Error;
};

class RegimeMismatch : public Error {
  public:
    using Error::Error;
};

class TooLarge : public Error {
  public:
    using Error::Error;
};

class DegeneratePrior : public Error {
  public:
    using Error::Error;
};

class InfeasibleShape : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    using Error::Error;
};

} // namespace usd
