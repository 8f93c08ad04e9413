#include "bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ncbound {

namespace {

void require_point(double nbar, double eta) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw std::domain_error("mean photon number nbar must be finite and "
                            "nonnegative");
  }
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::domain_error("detector efficiency eta must lie in (0, 1]");
  }
}

}  // namespace

double probability(double nbar, double eta) {
  require_point(nbar, eta);
  const double c = 1.0 + eta * nbar;
  return eta * (1.0 + 2.0 * nbar - eta * nbar) / (c * c * c);
}

double bound_s() { return std::exp(-1.0); }

double bound_m_delta(double nbar, double eta, MDeltaMode mode) {
  require_point(nbar, eta);
  // tr(delta) = 1, so the bound is just pi times the lossy Q maximum.
  return std::numbers::pi * lossy_pats_q_max(nbar, eta, mode).q_max;
}

double bound_m_delta_tilde(double nbar, double eta) {
  require_point(nbar, eta);
  // pi * Q_pats maximum * tr(delta_tilde), with tr(delta_tilde) = 1/eta.
  // Written as this product, rather than the collapsed 1/(e eta (nbar + 1)),
  // so that at eta = 1 it evaluates the exact same expression as
  // bound_m_delta and the two ceilings compare equal to the bit.
  return std::numbers::pi * pats_q_max(nbar).q_max * (1.0 / eta);
}

BoundReport report(double nbar, double eta, MDeltaMode mode) {
  require_point(nbar, eta);
  BoundReport r;
  r.nbar = nbar;
  r.eta = eta;
  r.m_delta_mode = mode;
  r.p = probability(nbar, eta);
  r.s_bound = bound_s();
  r.m_delta = bound_m_delta(nbar, eta, mode);
  r.m_delta_tilde = bound_m_delta_tilde(nbar, eta);
  r.violates_s = r.p > r.s_bound;
  r.violates_m_delta = r.p > r.m_delta;
  r.violates_m_delta_tilde = r.p > r.m_delta_tilde;
  return r;
}

}  // namespace ncbound
