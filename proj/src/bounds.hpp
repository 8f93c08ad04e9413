#pragma once

#include "models.hpp"

namespace ncbound {

// Everything one experiment point certifies: the click probability of the
// photon-added thermal state on the inefficient detector, the three
// classical ceilings it is measured against, and the resulting strict
// violation flags. p above S certifies both state and measurement
// nonclassical at once; p above M_delta certifies the measurement alone;
// p above M_delta_tilde certifies the state alone.
struct BoundReport {
  double nbar;
  double eta;
  double p;
  double s_bound;
  double m_delta;
  double m_delta_tilde;
  MDeltaMode m_delta_mode;
  bool violates_s;
  bool violates_m_delta;
  bool violates_m_delta_tilde;
};

// Click probability in closed form:
//   p = eta (1 + 2 nbar - eta nbar) / (1 + eta nbar)^3.
double probability(double nbar, double eta);

// Joint classical ceiling pi * max Q_delta = 1/e. Parameter free.
double bound_s();

// Measurement-side ceiling pi * max Q of the lossy state, times tr(delta).
// Mode selects the published stationary formula or the patched true maximum
// (they differ only where the stationary point falls at negative u).
double bound_m_delta(double nbar, double eta, MDeltaMode mode);

// State-side ceiling pi * max Q_pats * tr(delta_tilde) = 1 / (e eta (nbar + 1)).
double bound_m_delta_tilde(double nbar, double eta);

BoundReport report(double nbar, double eta, MDeltaMode mode);

}  // namespace ncbound
