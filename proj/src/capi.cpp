#include "ncbound.h"

#include <exception>
#include <new>
#include <stdexcept>
#include <string>
#include <utility>

#include "bounds.hpp"
#include "fock.hpp"
#include "models.hpp"
#include "oracle.hpp"

struct ncb_fock {
  ncbound::FockDiagonal op;
};

struct ncb_verify {
  ncbound::VerifyReport report;
};

namespace {

thread_local std::string t_last_error;

ncb_status fail(ncb_status status, const char* message) {
  t_last_error = message;
  return status;
}

// Runs the body, translating C++ failure modes into status codes. The body
// performs all out-parameter writes itself, so nothing is written on error.
template <typename Fn>
ncb_status guarded(Fn&& body) {
  try {
    std::forward<Fn>(body)();
    return NCB_OK;
  } catch (const std::domain_error& e) {
    return fail(NCB_ERR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(NCB_ERR_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(NCB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(NCB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(NCB_ERR_INTERNAL, "unknown internal error");
  }
}

ncb_status require(bool ok) {
  return ok ? NCB_OK
            : fail(NCB_ERR_NULL_ARG, "a required pointer argument was NULL");
}

ncbound::MDeltaMode to_mode(ncb_mdelta_mode mode) {
  return mode == NCB_MDELTA_TRUE ? ncbound::MDeltaMode::True
                                 : ncbound::MDeltaMode::Paper;
}

double or_default(double value, double fallback) {
  return value == 0.0 ? fallback : value;
}

}  // namespace

extern "C" {

const char* ncb_last_error(void) { return t_last_error.c_str(); }

ncb_status ncb_probability(double nbar, double eta, double* out) {
  if (ncb_status s = require(out != nullptr)) return s;
  return guarded([&] { *out = ncbound::probability(nbar, eta); });
}

ncb_status ncb_bound_s(double* out) {
  if (ncb_status s = require(out != nullptr)) return s;
  *out = ncbound::bound_s();
  return NCB_OK;
}

ncb_status ncb_bound_m_delta(double nbar, double eta, ncb_mdelta_mode mode,
                             double* out) {
  if (ncb_status s = require(out != nullptr)) return s;
  return guarded(
      [&] { *out = ncbound::bound_m_delta(nbar, eta, to_mode(mode)); });
}

ncb_status ncb_bound_m_delta_tilde(double nbar, double eta, double* out) {
  if (ncb_status s = require(out != nullptr)) return s;
  return guarded([&] { *out = ncbound::bound_m_delta_tilde(nbar, eta); });
}

ncb_status ncb_report(double nbar, double eta, ncb_mdelta_mode mode,
                      ncb_bound_report* out) {
  if (ncb_status s = require(out != nullptr)) return s;
  return guarded([&] {
    const ncbound::BoundReport r =
        ncbound::report(nbar, eta, to_mode(mode));
    out->nbar = r.nbar;
    out->eta = r.eta;
    out->p = r.p;
    out->s_bound = r.s_bound;
    out->m_delta = r.m_delta;
    out->m_delta_tilde = r.m_delta_tilde;
    out->m_delta_mode =
        r.m_delta_mode == ncbound::MDeltaMode::True ? NCB_MDELTA_TRUE
                                                    : NCB_MDELTA_PAPER;
    out->violates_s = r.violates_s ? 1 : 0;
    out->violates_m_delta = r.violates_m_delta ? 1 : 0;
    out->violates_m_delta_tilde = r.violates_m_delta_tilde ? 1 : 0;
  });
}

ncb_status ncb_fock_thermal(double nbar, double tail_tol, ncb_fock** out) {
  if (ncb_status s = require(out != nullptr)) return s;
  return guarded([&] {
    *out = new ncb_fock{ncbound::thermal(
        nbar, or_default(tail_tol, ncbound::kDefaultTailTol))};
  });
}

ncb_status ncb_fock_photon_added_thermal(double nbar, double tail_tol,
                                         ncb_fock** out) {
  if (ncb_status s = require(out != nullptr)) return s;
  return guarded([&] {
    *out = new ncb_fock{ncbound::photon_added_thermal(
        nbar, or_default(tail_tol, ncbound::kDefaultTailTol))};
  });
}

ncb_status ncb_fock_ideal_detector(ncb_fock** out) {
  if (ncb_status s = require(out != nullptr)) return s;
  return guarded([&] { *out = new ncb_fock{ncbound::ideal_detector()}; });
}

ncb_status ncb_fock_inefficient_detector(double eta, double tail_tol,
                                         ncb_fock** out) {
  if (ncb_status s = require(out != nullptr)) return s;
  return guarded([&] {
    *out = new ncb_fock{ncbound::inefficient_detector(
        ncbound::DetectorSpec{eta},
        or_default(tail_tol, ncbound::kDefaultTailTol))};
  });
}

ncb_status ncb_fock_from_weights(const double* weights, size_t count,
                                 int is_povm, double tail_bound,
                                 ncb_fock** out) {
  if (ncb_status s = require(out != nullptr && weights != nullptr)) return s;
  return guarded([&] {
    std::vector<double> w(weights, weights + count);
    *out = new ncb_fock{ncbound::FockDiagonal(
        std::move(w),
        is_povm ? ncbound::OperatorKind::PovmElement
                : ncbound::OperatorKind::State,
        tail_bound)};
  });
}

ncb_status ncb_fock_apply_loss(const ncb_fock* op, double eta,
                               ncb_fock** out) {
  if (ncb_status s = require(op != nullptr && out != nullptr)) return s;
  return guarded(
      [&] { *out = new ncb_fock{ncbound::apply_loss(op->op, eta)}; });
}

ncb_status ncb_fock_pair_probability(const ncb_fock* a, const ncb_fock* b,
                                     double* out) {
  if (ncb_status s = require(a != nullptr && b != nullptr && out != nullptr)) {
    return s;
  }
  return guarded([&] { *out = ncbound::pair_probability(a->op, b->op); });
}

ncb_status ncb_fock_trace(const ncb_fock* op, double* out) {
  if (ncb_status s = require(op != nullptr && out != nullptr)) return s;
  *out = ncbound::trace(op->op);
  return NCB_OK;
}

ncb_status ncb_fock_q_at(const ncb_fock* op, double u, double* out) {
  if (ncb_status s = require(op != nullptr && out != nullptr)) return s;
  return guarded([&] { *out = ncbound::q_at(op->op, u); });
}

ncb_status ncb_fock_cutoff(const ncb_fock* op, size_t* out) {
  if (ncb_status s = require(op != nullptr && out != nullptr)) return s;
  *out = op->op.cutoff();
  return NCB_OK;
}

ncb_status ncb_fock_tail_bound(const ncb_fock* op, double* out) {
  if (ncb_status s = require(op != nullptr && out != nullptr)) return s;
  *out = op->op.tail_bound();
  return NCB_OK;
}

ncb_status ncb_fock_moments(const ncb_fock* state, double* mean,
                            double* variance) {
  if (ncb_status s =
          require(state != nullptr && mean != nullptr && variance != nullptr)) {
    return s;
  }
  return guarded([&] {
    const ncbound::Moments m = ncbound::moments(state->op);
    *mean = m.mean;
    *variance = m.variance;
  });
}

ncb_status ncb_fock_mandel_q(const ncb_fock* state, double* out) {
  if (ncb_status s = require(state != nullptr && out != nullptr)) return s;
  return guarded([&] { *out = ncbound::mandel_q(state->op); });
}

void ncb_fock_free(ncb_fock* op) { delete op; }

ncb_status ncb_verify_run(double match_tol, double tail_tol, uint64_t seed,
                          ncb_verify** out) {
  if (ncb_status s = require(out != nullptr)) return s;
  return guarded([&] {
    ncbound::VerifyConfig cfg;
    cfg.match_tol = or_default(match_tol, cfg.match_tol);
    cfg.tail_tol = or_default(tail_tol, cfg.tail_tol);
    cfg.rng_seed = seed;
    *out = new ncb_verify{ncbound::run_verify(cfg)};
  });
}

ncb_status ncb_verify_check_count(const ncb_verify* v, size_t* out) {
  if (ncb_status s = require(v != nullptr && out != nullptr)) return s;
  *out = v->report.checks.size();
  return NCB_OK;
}

ncb_status ncb_verify_check_name(const ncb_verify* v, size_t index,
                                 const char** out) {
  if (ncb_status s = require(v != nullptr && out != nullptr)) return s;
  if (index >= v->report.checks.size()) {
    return fail(NCB_ERR_DOMAIN, "check index out of range");
  }
  *out = v->report.checks[index].name.c_str();
  return NCB_OK;
}

ncb_status ncb_verify_check_error(const ncb_verify* v, size_t index,
                                  double* out) {
  if (ncb_status s = require(v != nullptr && out != nullptr)) return s;
  if (index >= v->report.checks.size()) {
    return fail(NCB_ERR_DOMAIN, "check index out of range");
  }
  *out = v->report.checks[index].max_abs_error;
  return NCB_OK;
}

ncb_status ncb_verify_check_passed(const ncb_verify* v, size_t index,
                                   int* out) {
  if (ncb_status s = require(v != nullptr && out != nullptr)) return s;
  if (index >= v->report.checks.size()) {
    return fail(NCB_ERR_DOMAIN, "check index out of range");
  }
  *out = v->report.checks[index].passed ? 1 : 0;
  return NCB_OK;
}

ncb_status ncb_verify_overall(const ncb_verify* v, int* out) {
  if (ncb_status s = require(v != nullptr && out != nullptr)) return s;
  *out = v->report.overall ? 1 : 0;
  return NCB_OK;
}

void ncb_verify_free(ncb_verify* v) { delete v; }

}  // extern "C"
