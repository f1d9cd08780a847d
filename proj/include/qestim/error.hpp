// Copyright 2026 The qestim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qestim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatches, non-Hermitian input, zero vectors.
class InvalidInput : public Error {
  public:
    using Error::Error;
};

/// The inputs are well formed but fall outside the domain where an
/// operation's claim holds (e.g. a biased estimator handed to the
/// unbiased product check).
class PreconditionViolation : public Error {
  public:
    using Error::Error;
};

/// A position density with vanishing Fisher information.
class DegenerateDensity : public Error {
  public:
    using Error::Error;
};

/// A grid wavefunction that does not decay at the boundary, so a discrete
/// Fourier transform would wrap around.
class AliasingError : public Error {
  public:
    using Error::Error;
};

/// A scenario configuration that violates its invariants.
class InvalidConfig : public Error {
  public:
    using Error::Error;
};

} // namespace qestim
