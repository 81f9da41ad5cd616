#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The Adex Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <stdexcept>
#include <string>

namespace adex {

/// Input failed a structural or semantic validation step (bad file, bad
/// table, non-monotone valuation, inconsistent ids, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation was asked to enumerate something beyond its desk-scale guard.
class SizeGuardError : public std::runtime_error {
 public:
  explicit SizeGuardError(const std::string& what) : std::runtime_error(what) {}
};

/// No Walrasian equilibrium supports the input (possible for non-GS bidders).
class NoWalrasianEquilibrium : public std::runtime_error {
 public:
  explicit NoWalrasianEquilibrium(const std::string& what) : std::runtime_error(what) {}
};

/// No Walrasian equilibrium with reserve prices supports the input.
class NoWerpEquilibrium : public std::runtime_error {
 public:
  explicit NoWerpEquilibrium(const std::string& what) : std::runtime_error(what) {}
};

/// Meet/join of two price vectors failed re-verification as equilibrium
/// prices.  Signals a solver defect or a non-GS input.
class LatticeViolation : public std::runtime_error {
 public:
  explicit LatticeViolation(const std::string& what) : std::runtime_error(what) {}
};

/// The three-party solver could not assemble a valid certificate.
class NoEquilibrium : public std::runtime_error {
 public:
  explicit NoEquilibrium(const std::string& what) : std::runtime_error(what) {}
};

/// The exact LP oracle found an empty feasible region.
class InfeasibleLp : public std::runtime_error {
 public:
  explicit InfeasibleLp(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace adex
