#include "fock.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ncbound {

namespace {

// Allowance for accumulated rounding when checking the state normalization
// against the analytic tail bound.
constexpr double kNormSlack = 1e-13;

// Allowance on the POVM weight ceiling; exact constructions sit at or below
// 1 but may round a hair above it.
constexpr double kPovmSlack = 1e-12;

// Cumulative log factorials lf[k] = log(k!) in extended precision. Built per
// call to keep the module free of mutable global state.
std::vector<long double> log_factorials(std::size_t n_max) {
  std::vector<long double> lf(n_max + 1, 0.0L);
  for (std::size_t k = 1; k <= n_max; ++k) {
    lf[k] = lf[k - 1] + std::log(static_cast<long double>(k));
  }
  return lf;
}

void validate_weights(const std::vector<double>& w, OperatorKind kind,
                      double tail_bound) {
  if (w.empty()) {
    throw std::domain_error("weights must be nonempty");
  }
  if (!(tail_bound >= 0.0) || !std::isfinite(tail_bound)) {
    throw std::domain_error("tail_bound must be finite and nonnegative");
  }
  long double sum = 0.0L;
  for (double x : w) {
    if (!std::isfinite(x) || x < 0.0) {
      throw std::domain_error("weights must be finite and nonnegative");
    }
    if (kind == OperatorKind::PovmElement && x > 1.0 + kPovmSlack) {
      throw std::domain_error(
          "POVM element weights cannot exceed 1 (event probability on a "
          "number state)");
    }
    sum += x;
  }
  if (kind == OperatorKind::State) {
    long double defect = sum - 1.0L;
    if (defect < 0.0L) defect = -defect;
    if (defect > tail_bound + kNormSlack) {
      throw std::domain_error(
          "state weights must sum to 1 within the declared tail_bound, got "
          "defect " +
          std::to_string(static_cast<double>(defect)));
    }
  }
}

}  // namespace

FockDiagonal::FockDiagonal(std::vector<double> weights, OperatorKind kind,
                           double tail_bound)
    : weights_(std::move(weights)), kind_(kind), tail_bound_(tail_bound) {
  validate_weights(weights_, kind_, tail_bound_);
}

FockDiagonal::FockDiagonal(Unchecked, std::vector<double> weights,
                           OperatorKind kind, double tail_bound)
    : weights_(std::move(weights)), kind_(kind), tail_bound_(tail_bound) {}

double pair_probability(const FockDiagonal& a, const FockDiagonal& b) {
  const auto& wa = a.weights();
  const auto& wb = b.weights();
  const std::size_t n = std::min(wa.size(), wb.size());
  long double sum = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    sum += static_cast<long double>(wa[i]) * wb[i];
  }
  return static_cast<double>(sum);
}

double trace(const FockDiagonal& op) {
  long double sum = 0.0L;
  for (double x : op.weights()) sum += x;
  return static_cast<double>(sum);
}

FockDiagonal apply_loss(const FockDiagonal& op, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::domain_error("loss transmittance eta must lie in [0, 1]");
  }
  const auto& w = op.weights();
  if (eta == 1.0) return op;
  if (eta == 0.0) {
    // Everything ends up in the vacuum.
    std::vector<double> out(w.size(), 0.0);
    out[0] = trace(op);
    return FockDiagonal(FockDiagonal::Unchecked{}, std::move(out), op.kind(),
                        op.tail_bound());
  }
  const std::size_t size = w.size();
  const auto lf = log_factorials(size - 1);
  const long double log_eta = std::log(static_cast<long double>(eta));
  const long double log_loss = std::log(1.0L - static_cast<long double>(eta));
  std::vector<long double> acc(size, 0.0L);
  for (std::size_t n = 0; n < size; ++n) {
    if (w[n] == 0.0) continue;
    // Binomial row for source level n, assembled in log space so large n
    // does not overflow the factorials.
    for (std::size_t k = 0; k <= n; ++k) {
      const long double log_coeff = lf[n] - lf[k] - lf[n - k] +
                                    static_cast<long double>(k) * log_eta +
                                    static_cast<long double>(n - k) * log_loss;
      acc[k] += static_cast<long double>(w[n]) * std::exp(log_coeff);
    }
  }
  std::vector<double> out(size);
  for (std::size_t k = 0; k < size; ++k) out[k] = static_cast<double>(acc[k]);
  return FockDiagonal(FockDiagonal::Unchecked{}, std::move(out), op.kind(),
                      op.tail_bound());
}

double q_at(const FockDiagonal& op, double u) {
  if (!(u >= 0.0) || !std::isfinite(u)) {
    throw std::domain_error("radial coordinate u = |alpha|^2 must be finite "
                            "and nonnegative");
  }
  const auto& w = op.weights();
  if (u == 0.0) {
    // Only the vacuum term survives; avoids log(0) below.
    return w[0] / std::numbers::pi;
  }
  const auto lf = log_factorials(w.size() - 1);
  const long double log_u = std::log(static_cast<long double>(u));
  long double sum = 0.0L;
  for (std::size_t n = 0; n < w.size(); ++n) {
    if (w[n] == 0.0) continue;
    const long double log_term =
        static_cast<long double>(n) * log_u - static_cast<long double>(u) -
        lf[n];
    sum += static_cast<long double>(w[n]) * std::exp(log_term);
  }
  return static_cast<double>(sum / std::numbers::pi_v<long double>);
}

Moments moments(const FockDiagonal& state) {
  if (state.kind() != OperatorKind::State) {
    throw std::invalid_argument("moments are defined for states only");
  }
  const auto& w = state.weights();
  long double m1 = 0.0L;
  long double m2 = 0.0L;
  for (std::size_t n = 0; n < w.size(); ++n) {
    const long double nw = static_cast<long double>(n) * w[n];
    m1 += nw;
    m2 += static_cast<long double>(n) * nw;
  }
  return Moments{static_cast<double>(m1), static_cast<double>(m2 - m1 * m1)};
}

double mandel_q(const FockDiagonal& state) {
  const Moments m = moments(state);
  if (!(m.mean > 0.0)) {
    throw std::domain_error("Mandel Q is undefined for zero mean photon "
                            "number");
  }
  return (m.variance - m.mean) / m.mean;
}

}  // namespace ncbound
