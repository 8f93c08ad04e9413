#pragma once

#include <functional>

namespace ncbound {

struct MaxResult {
  double u_star;
  double q_max;
  long evaluations;
  double bracket_lo;
  double bracket_hi;
};

// Maximize a nonnegative radial profile on [0, u_hi]: a coarse inclusive
// scan locates the best sample, then golden-section refinement narrows the
// bracket around it to the requested relative width. If the best coarse
// sample is the left endpoint and refinement finds nothing better, the
// result reports u_star = 0 exactly (boundary maximum).
//
// The profile must be finite on the interval; a non-finite value throws.
MaxResult maximize_radial(const std::function<double(double)>& profile,
                          double u_hi, int coarse_points = 1024,
                          double tol = 1e-10);

// Search ceiling generous enough for every profile in this library: the
// lossy photon-added thermal Q peaks near eta*nbar + 1 and the detector Q
// near 1/eta, both far below 10 (nbar + 1) / eta + 10.
double default_search_ceiling(double nbar, double eta);

}  // namespace ncbound
