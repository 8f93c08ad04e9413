#include "models.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace ncbound {

namespace {

constexpr std::size_t kCutoffFloor = 32;
constexpr std::size_t kCutoffCeiling = std::size_t{1} << 22;

void require_nbar(double nbar) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw std::domain_error("mean photon number nbar must be finite and "
                            "nonnegative");
  }
}

void require_eta(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::domain_error("detector efficiency eta must lie in (0, 1]");
  }
}

void require_tail_tol(double tail_tol) {
  if (!(tail_tol > 0.0) || !std::isfinite(tail_tol)) {
    throw std::domain_error("tail tolerance must be finite and positive");
  }
}

// Smallest cutoff (at least the floor) whose analytic tail is within tol.
// tail(N) must be nonincreasing in N.
template <typename TailFn>
std::size_t choose_cutoff(double tol, TailFn tail) {
  std::size_t n = kCutoffFloor;
  while (tail(n) > static_cast<long double>(tol)) {
    if (n >= kCutoffCeiling) {
      throw std::domain_error("tail tolerance unreachable at a practical "
                              "cutoff; loosen tail_tol or reduce nbar");
    }
    ++n;
  }
  return n;
}

}  // namespace

ThermalParams thermal_params(double nbar) {
  require_nbar(nbar);
  return ThermalParams{nbar, nbar / (nbar + 1.0)};
}

FockDiagonal thermal(double nbar, double tail_tol) {
  const ThermalParams tp = thermal_params(nbar);
  require_tail_tol(tail_tol);
  const long double xi = static_cast<long double>(tp.xi);
  if (nbar == 0.0) {
    // Vacuum; keep the cutoff floor so downstream loss maps have room.
    std::vector<double> w(kCutoffFloor + 1, 0.0);
    w[0] = 1.0;
    return FockDiagonal(std::move(w), OperatorKind::State, 0.0);
  }
  // Geometric weights w_n = (1 - xi) xi^n; tail past N is xi^(N + 1).
  const std::size_t cutoff = choose_cutoff(tail_tol, [&](std::size_t n) {
    return std::pow(xi, static_cast<long double>(n + 1));
  });
  std::vector<double> w(cutoff + 1);
  long double term = 1.0L - xi;
  for (std::size_t n = 0; n <= cutoff; ++n) {
    w[n] = static_cast<double>(term);
    term *= xi;
  }
  const double tail =
      static_cast<double>(std::pow(xi, static_cast<long double>(cutoff + 1)));
  return FockDiagonal(std::move(w), OperatorKind::State, tail);
}

FockDiagonal photon_added_thermal(double nbar, double tail_tol) {
  const ThermalParams tp = thermal_params(nbar);
  require_tail_tol(tail_tol);
  const long double xi = static_cast<long double>(tp.xi);
  if (nbar == 0.0) {
    // Adding a photon to the vacuum gives the one-photon state.
    std::vector<double> w(kCutoffFloor + 1, 0.0);
    w[1] = 1.0;
    return FockDiagonal(std::move(w), OperatorKind::State, 0.0);
  }
  // w_0 = 0 and w_n = (1 - xi)^2 n xi^(n - 1): the thermal distribution
  // tilted by n, which is what adding one photon does to the weights.
  // Tail past N sums to xi^N ((N + 1)(1 - xi) + xi).
  const auto tail_at = [&](std::size_t n) {
    return std::pow(xi, static_cast<long double>(n)) *
           (static_cast<long double>(n + 1) * (1.0L - xi) + xi);
  };
  const std::size_t cutoff = choose_cutoff(tail_tol, tail_at);
  std::vector<double> w(cutoff + 1);
  w[0] = 0.0;
  long double geom = (1.0L - xi) * (1.0L - xi);  // (1 - xi)^2 xi^(n - 1)
  for (std::size_t n = 1; n <= cutoff; ++n) {
    w[n] = static_cast<double>(static_cast<long double>(n) * geom);
    geom *= xi;
  }
  return FockDiagonal(std::move(w), OperatorKind::State,
                      static_cast<double>(tail_at(cutoff)));
}

FockDiagonal ideal_detector() {
  std::vector<double> w{0.0, 1.0};
  return FockDiagonal(std::move(w), OperatorKind::PovmElement, 0.0);
}

FockDiagonal inefficient_detector(DetectorSpec det, double tail_tol) {
  require_eta(det.eta);
  require_tail_tol(tail_tol);
  const double eta = det.eta;
  if (eta == 1.0) {
    return ideal_detector();
  }
  const long double x = 1.0L - static_cast<long double>(eta);
  // Weights w_m = eta m x^(m - 1) for m >= 1. The trace is 1/eta; the trace
  // mass past M is x^M ((M + 1) eta + x) / eta, which is what the tail
  // tolerance is measured against.
  const auto tail_at = [&](std::size_t m) {
    return std::pow(x, static_cast<long double>(m)) *
           (static_cast<long double>(m + 1) * eta + x) /
           static_cast<long double>(eta);
  };
  const std::size_t cutoff = choose_cutoff(tail_tol, tail_at);
  std::vector<double> w(cutoff + 1);
  w[0] = 0.0;
  long double geom = static_cast<long double>(eta);  // eta x^(m - 1)
  for (std::size_t m = 1; m <= cutoff; ++m) {
    w[m] = static_cast<double>(static_cast<long double>(m) * geom);
    geom *= x;
  }
  return FockDiagonal(std::move(w), OperatorKind::PovmElement,
                      static_cast<double>(tail_at(cutoff)));
}

double pats_p_rep(double u, double nbar) {
  require_nbar(nbar);
  if (!(u >= 0.0) || !std::isfinite(u)) {
    throw std::domain_error("radial coordinate u must be finite and "
                            "nonnegative");
  }
  if (nbar == 0.0) {
    throw std::domain_error("the P function of a photon-added thermal state "
                            "needs nbar > 0 (at nbar = 0 it is a derivative "
                            "of a delta, not a function)");
  }
  const double n3 = nbar * nbar * nbar;
  return ((nbar + 1.0) * u - nbar) * std::exp(-u / nbar) /
         (std::numbers::pi * n3);
}

double pats_q(double u, double nbar) {
  require_nbar(nbar);
  if (!(u >= 0.0) || !std::isfinite(u)) {
    throw std::domain_error("radial coordinate u must be finite and "
                            "nonnegative");
  }
  const double c = nbar + 1.0;
  return u * std::exp(-u / c) / (std::numbers::pi * c * c);
}

double ideal_det_q(double u) {
  if (!(u >= 0.0) || !std::isfinite(u)) {
    throw std::domain_error("radial coordinate u must be finite and "
                            "nonnegative");
  }
  return u * std::exp(-u) / std::numbers::pi;
}

double inefficient_det_q(double u, double eta) {
  require_eta(eta);
  if (!(u >= 0.0) || !std::isfinite(u)) {
    throw std::domain_error("radial coordinate u must be finite and "
                            "nonnegative");
  }
  return eta * u * std::exp(-eta * u) / std::numbers::pi;
}

double lossy_pats_q(double u, double nbar, double eta) {
  require_nbar(nbar);
  require_eta(eta);
  if (!(u >= 0.0) || !std::isfinite(u)) {
    throw std::domain_error("radial coordinate u must be finite and "
                            "nonnegative");
  }
  // Q of the photon-added thermal state after transmittance eta. The scale
  // c = eta nbar + 1 replaces nbar + 1, and a vacuum-like term appears with
  // weight 1 - eta.
  const double c = eta * nbar + 1.0;
  const double linear = (nbar + 1.0) * eta * u / (c * c * c);
  const double flat = (1.0 - eta) / (c * c);
  return (linear + flat) * std::exp(-u / c) / std::numbers::pi;
}

QMax pats_q_max(double nbar) {
  require_nbar(nbar);
  const double c = nbar + 1.0;
  return QMax{c, std::exp(-1.0) / (std::numbers::pi * c)};
}

QMax ideal_det_q_max() {
  return QMax{1.0, std::exp(-1.0) / std::numbers::pi};
}

QMax inefficient_det_q_max(double eta) {
  require_eta(eta);
  return QMax{1.0 / eta, std::exp(-1.0) / std::numbers::pi};
}

QMax lossy_pats_q_max(double nbar, double eta, MDeltaMode mode) {
  require_nbar(nbar);
  require_eta(eta);
  if (eta == 1.0) {
    // Lossless limit; both modes coincide with the plain profile maximum.
    // Routed through the same expression so the equality is exact, not just
    // close, which downstream ordering checks rely on.
    return pats_q_max(nbar);
  }
  const double c = eta * nbar + 1.0;
  // Stationary point of the lossy profile. Negative values mean the
  // stationary point is unphysical and the true maximum sits at u = 0.
  const double u_star =
      1.0 + eta * nbar - (1.0 - eta) * (1.0 + eta * nbar) /
                             (eta * (nbar + 1.0));
  const double stationary_q =
      eta * (nbar + 1.0) / (std::numbers::pi * c * c) *
      std::exp(-(eta * nbar + 2.0 * eta - 1.0) / (eta * (nbar + 1.0)));
  if (mode == MDeltaMode::Paper) {
    // Published formula verbatim, including the regime where u_star < 0 and
    // the value overshoots the actual maximum.
    return QMax{u_star, stationary_q};
  }
  if (u_star >= 0.0) {
    return QMax{u_star, stationary_q};
  }
  // Boundary regime: the profile decreases from u = 0 onward.
  return QMax{0.0, (1.0 - eta) / (std::numbers::pi * c * c)};
}

QProfile::QProfile(Form form) : form_(std::move(form)) {}

QProfile QProfile::pats(double nbar) {
  require_nbar(nbar);
  return QProfile(Form{PatsForm{nbar}});
}

QProfile QProfile::lossy_pats(double nbar, double eta) {
  require_nbar(nbar);
  require_eta(eta);
  return QProfile(Form{LossyPatsForm{nbar, eta}});
}

QProfile QProfile::ideal_det() { return QProfile(Form{IdealDetForm{}}); }

QProfile QProfile::inefficient_det(double eta) {
  require_eta(eta);
  return QProfile(Form{IneffDetForm{eta}});
}

QProfile QProfile::fock_sum(FockDiagonal op) {
  return QProfile(Form{std::move(op)});
}

double QProfile::operator()(double u) const {
  return std::visit(
      [u](const auto& form) -> double {
        using T = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<T, PatsForm>) {
          return pats_q(u, form.nbar);
        } else if constexpr (std::is_same_v<T, LossyPatsForm>) {
          return lossy_pats_q(u, form.nbar, form.eta);
        } else if constexpr (std::is_same_v<T, IdealDetForm>) {
          return ideal_det_q(u);
        } else if constexpr (std::is_same_v<T, IneffDetForm>) {
          return inefficient_det_q(u, form.eta);
        } else {
          return q_at(form, u);
        }
      },
      form_);
}

}  // namespace ncbound
