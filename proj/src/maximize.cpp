#include "maximize.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ncbound {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2

}  // namespace

MaxResult maximize_radial(const std::function<double(double)>& profile,
                          double u_hi, int coarse_points, double tol) {
  if (!profile) {
    throw std::invalid_argument("maximize_radial needs a profile");
  }
  if (!(u_hi > 0.0) || !std::isfinite(u_hi)) {
    throw std::domain_error("search ceiling u_hi must be finite and "
                            "positive");
  }
  if (coarse_points < 16) {
    throw std::domain_error("coarse_points must be at least 16");
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw std::domain_error("tolerance must be finite and positive");
  }

  long evaluations = 0;
  const auto eval = [&](double u) {
    const double v = profile(u);
    ++evaluations;
    if (!std::isfinite(v)) {
      throw std::domain_error("profile returned a non-finite value during "
                              "maximization");
    }
    return v;
  };

  // Coarse scan, endpoints included.
  const int n = coarse_points;
  std::vector<double> grid(static_cast<std::size_t>(n) + 1);
  int best_i = 0;
  double best_v = -1.0;
  for (int i = 0; i <= n; ++i) {
    const double u = u_hi * static_cast<double>(i) / static_cast<double>(n);
    grid[static_cast<std::size_t>(i)] = u;
    const double v = eval(u);
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  const double left_value = (best_i == 0) ? best_v : -1.0;

  // Golden-section refinement inside the bracket around the best sample.
  double a = grid[static_cast<std::size_t>(best_i > 0 ? best_i - 1 : 0)];
  double b = grid[static_cast<std::size_t>(best_i < n ? best_i + 1 : n)];
  const double bracket_lo = a;
  const double bracket_hi = b;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > tol * std::max(1.0, b)) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = eval(d);
    }
  }
  double u_star = 0.5 * (a + b);
  double q_max = eval(u_star);

  // Keep the best coarse sample if refinement somehow landed lower; with a
  // profile unimodal inside the bracket this never fires.
  if (best_v > q_max) {
    u_star = grid[static_cast<std::size_t>(best_i)];
    q_max = best_v;
  }
  // Boundary maximum is reported exactly at zero.
  if (best_i == 0 && left_value >= q_max) {
    u_star = 0.0;
    q_max = left_value;
  }
  return MaxResult{u_star, q_max, evaluations, bracket_lo, bracket_hi};
}

double default_search_ceiling(double nbar, double eta) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw std::domain_error("mean photon number nbar must be finite and "
                            "nonnegative");
  }
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::domain_error("detector efficiency eta must lie in (0, 1]");
  }
  return 10.0 * (nbar + 1.0) / eta + 10.0;
}

}  // namespace ncbound
