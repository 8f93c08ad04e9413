#pragma once

#include <cstddef>
#include <variant>

#include "fock.hpp"

namespace ncbound {

// Default ceiling on the weight mass a truncated construction may discard.
inline constexpr double kDefaultTailTol = 1e-12;

// Which closed form the lossy maximum reports. Paper evaluates the published
// stationary-point formula verbatim, even where the stationary point falls
// at negative u and the formula stops being the true maximum. True patches
// that regime with the actual boundary maximum at u = 0. Paper matches the
// published curves; True is the defensible bound.
enum class MDeltaMode { Paper, True };

// Derived quantities of a thermal state with mean photon number nbar.
// xi = nbar / (nbar + 1) is the geometric ratio of the number distribution.
struct ThermalParams {
  double nbar;
  double xi;
};

ThermalParams thermal_params(double nbar);

// Detector efficiency wrapper so call sites cannot swap eta with nbar.
struct DetectorSpec {
  double eta;
};

// Location and value of a radial Q maximum.
struct QMax {
  double u_star;
  double q_max;
};

// Truncated number distributions. Cutoffs are chosen so the analytic tail
// mass is at most tail_tol, never below a floor of 32 levels.
FockDiagonal thermal(double nbar, double tail_tol = kDefaultTailTol);
FockDiagonal photon_added_thermal(double nbar, double tail_tol = kDefaultTailTol);

// Measurement operators. The ideal detector projects on |1><1|; the
// inefficient one smears over all n >= 1 with weights eta*m*(1-eta)^(m-1).
FockDiagonal ideal_detector();
FockDiagonal inefficient_detector(DetectorSpec det,
                                  double tail_tol = kDefaultTailTol);

// Closed-form phase-space densities on the radial coordinate u = |alpha|^2.
// pats_p_rep is the Glauber-Sudarshan P of the photon-added thermal state
// (it dips negative for u < nbar/(nbar+1), the nonclassical signature);
// the rest are Husimi Q functions.
double pats_p_rep(double u, double nbar);
double pats_q(double u, double nbar);
double ideal_det_q(double u);
double inefficient_det_q(double u, double eta);
double lossy_pats_q(double u, double nbar, double eta);

// Analytic maxima of the Q profiles above.
QMax pats_q_max(double nbar);
QMax ideal_det_q_max();
QMax inefficient_det_q_max(double eta);
QMax lossy_pats_q_max(double nbar, double eta, MDeltaMode mode);

// A radial Q profile as a value: either one of the closed forms above or a
// brute-force Fock sum over a truncated operator. Lets the maximizer and the
// verify checks treat analytic and numeric routes uniformly.
class QProfile {
 public:
  static QProfile pats(double nbar);
  static QProfile lossy_pats(double nbar, double eta);
  static QProfile ideal_det();
  static QProfile inefficient_det(double eta);
  static QProfile fock_sum(FockDiagonal op);

  double operator()(double u) const;

 private:
  struct PatsForm {
    double nbar;
  };
  struct LossyPatsForm {
    double nbar;
    double eta;
  };
  struct IdealDetForm {};
  struct IneffDetForm {
    double eta;
  };
  using Form =
      std::variant<PatsForm, LossyPatsForm, IdealDetForm, IneffDetForm,
                   FockDiagonal>;

  explicit QProfile(Form form);

  Form form_;
};

}  // namespace ncbound
