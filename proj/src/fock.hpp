#pragma once

#include <cstddef>
#include <vector>

namespace ncbound {

// Whether a diagonal operator is meant as a density operator (unit trace up
// to truncation) or as a POVM element (every weight in [0, 1], trace free).
// The kind gates which operations make sense, not how weights are stored.
enum class OperatorKind { State, PovmElement };

// Truncated Fock-diagonal operator: weights[n] multiplies |n><n| for
// n = 0..cutoff. Immutable after construction; every operation on it is a
// pure function, so instances can be shared across threads freely.
//
// tail_bound is an upper bound on the weight mass discarded by truncation.
// For states the constructor enforces |sum(weights) - 1| <= tail_bound (plus
// a tiny rounding allowance); for POVM elements it enforces weights <= 1.
class FockDiagonal {
 public:
  FockDiagonal(std::vector<double> weights, OperatorKind kind,
               double tail_bound);

  // Trusted construction for internal call sites whose weights already
  // satisfy the kind invariant structurally (for example the loss channel,
  // which maps valid weights to valid weights). Skips validation.
  struct Unchecked {};
  FockDiagonal(Unchecked, std::vector<double> weights, OperatorKind kind,
               double tail_bound);

  const std::vector<double>& weights() const { return weights_; }
  std::size_t cutoff() const { return weights_.size() - 1; }
  OperatorKind kind() const { return kind_; }
  double tail_bound() const { return tail_bound_; }

  // weight(n) for n beyond the cutoff reads as 0, matching the truncation.
  double weight(std::size_t n) const {
    return n < weights_.size() ? weights_[n] : 0.0;
  }

 private:
  std::vector<double> weights_;
  OperatorKind kind_;
  double tail_bound_;
};

// tr(A B) for two Fock-diagonal operators: sum of elementwise products up to
// the shorter cutoff. With a state and a POVM element this is the detection
// probability p.
double pair_probability(const FockDiagonal& a, const FockDiagonal& b);

// Plain trace, sum of weights.
double trace(const FockDiagonal& op);

// Beam-splitter loss channel with transmittance eta in [0, 1]: each |n><n|
// scatters to a binomial mixture over k <= n. Trace and kind are preserved;
// the cutoff and tail_bound carry over unchanged (loss never moves weight
// upward).
FockDiagonal apply_loss(const FockDiagonal& op, double eta);

// Husimi Q function on the radial coordinate u = |alpha|^2:
//   Q(u) = (1/pi) * sum_n weights[n] * u^n e^{-u} / n!
// Poisson factors are evaluated in log space so large u and n survive.
double q_at(const FockDiagonal& op, double u);

struct Moments {
  double mean;      // <n>
  double variance;  // <n^2> - <n>^2
};

// Photon-number mean and variance. States only.
Moments moments(const FockDiagonal& state);

// Mandel Q = (var - mean) / mean. States with positive mean only; negative
// values certify sub-Poissonian (nonclassical) statistics.
double mandel_q(const FockDiagonal& state);

}  // namespace ncbound
