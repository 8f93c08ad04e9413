#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fock.hpp"

namespace ncbound {

struct GridPoint {
  double nbar;
  double eta;
};

// Configuration for the verify suite. An empty grid means the default
// 31 x 20 grid nbar in {0, 0.1, ..., 3.0} times eta in {0.05, 0.10, ..., 1.0}.
struct VerifyConfig {
  double tail_tol = 1e-12;
  double match_tol = 1e-9;
  std::vector<GridPoint> grid;
  std::uint64_t rng_seed = 42;
};

std::vector<GridPoint> default_grid();

struct VerifyCheck {
  std::string name;
  double max_abs_error;
  bool passed;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool overall;
  std::uint64_t rng_seed;
};

// Runs the cross-validation suite: every closed form in the library against
// a brute-force route that does not share its algebra. Checks never abort
// on failure; each one reports its worst error and the report collects them
// in a fixed order. Deterministic for a given seed.
VerifyReport run_verify(const VerifyConfig& cfg = {});

// Phase-averaged coherent state (Poissonian number distribution with mean
// lambda). A classical state, used by the no-violation checks.
FockDiagonal poisson_state(double lambda, double tail_tol = 1e-12);

// Composite Simpson quadrature with a fixed even interval count; the
// workhorse behind the normalization cross-checks.
double simpson(const std::function<double(double)>& f, double a, double b,
               int intervals);

}  // namespace ncbound
