#pragma once

// Algebraic invariant suites run by the `verify` subcommand and the
// acceptance tests: group axioms, action laws, convolution identities,
// irrep/Schur checks, Parseval, Fourier round-trip, spectra invariance,
// Clebsch-Gordan intertwining, and recovery on exact Fourier weights.

#include <cstdint>
#include <string>
#include <vector>

#include "speclearn/group.hpp"

namespace speclearn {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

std::vector<CheckResult> run_selfchecks(const FiniteGroup& G,
                                        std::uint64_t seed = 42);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace speclearn
