/* ncbound: nonclassicality certification for Fock-diagonal states and
 * measurements. C interface to the shared library.
 *
 * Conventions: every function that can fail returns an ncb_status and
 * writes its result through out-parameters, which are touched only on
 * NCB_OK. On failure, ncb_last_error() returns a message describing what
 * went wrong; the message is thread-local and stays valid until the next
 * failing call on the same thread. Handles are created by ncb_* factory
 * functions and released with the matching *_free; passing NULL to a free
 * function is a no-op.
 */
#ifndef NCBOUND_H
#define NCBOUND_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ncb_status {
  NCB_OK = 0,
  NCB_ERR_NULL_ARG = 1, /* a required pointer was NULL */
  NCB_ERR_DOMAIN = 2,   /* an argument was outside its documented domain */
  NCB_ERR_INTERNAL = 3  /* unexpected failure, see ncb_last_error() */
} ncb_status;

/* Which closed form the measurement-side ceiling M_delta uses: the
 * published stationary-point formula verbatim (paper) or the genuine
 * maximum over physical phase space (true). They differ only where the
 * stationary point falls at negative radial coordinate. */
typedef enum ncb_mdelta_mode {
  NCB_MDELTA_PAPER = 0,
  NCB_MDELTA_TRUE = 1
} ncb_mdelta_mode;

/* One certification point: click probability of the photon-added thermal
 * state with mean nbar on a detector of efficiency eta, the three classical
 * ceilings, and strict-violation flags (1 = bound exceeded, certifying
 * nonclassicality). */
typedef struct ncb_bound_report {
  double nbar;
  double eta;
  double p;
  double s_bound;
  double m_delta;
  double m_delta_tilde;
  ncb_mdelta_mode m_delta_mode;
  int violates_s;
  int violates_m_delta;
  int violates_m_delta_tilde;
} ncb_bound_report;

const char* ncb_last_error(void);

/* Closed-form certification quantities. Domain: nbar >= 0, eta in (0, 1]. */
ncb_status ncb_probability(double nbar, double eta, double* out);
ncb_status ncb_bound_s(double* out);
ncb_status ncb_bound_m_delta(double nbar, double eta, ncb_mdelta_mode mode,
                             double* out);
ncb_status ncb_bound_m_delta_tilde(double nbar, double eta, double* out);
ncb_status ncb_report(double nbar, double eta, ncb_mdelta_mode mode,
                      ncb_bound_report* out);

/* Truncated Fock-diagonal operators behind an opaque handle. */
typedef struct ncb_fock ncb_fock;

/* tail_tol caps the weight mass lost to truncation; pass 0 for the library
 * default of 1e-12. */
ncb_status ncb_fock_thermal(double nbar, double tail_tol, ncb_fock** out);
ncb_status ncb_fock_photon_added_thermal(double nbar, double tail_tol,
                                         ncb_fock** out);
ncb_status ncb_fock_ideal_detector(ncb_fock** out);
ncb_status ncb_fock_inefficient_detector(double eta, double tail_tol,
                                         ncb_fock** out);

/* Arbitrary weights; is_povm selects POVM-element validation (weights in
 * [0, 1]) instead of state validation (weights sum to 1 within tail_bound). */
ncb_status ncb_fock_from_weights(const double* weights, size_t count,
                                 int is_povm, double tail_bound,
                                 ncb_fock** out);

ncb_status ncb_fock_apply_loss(const ncb_fock* op, double eta, ncb_fock** out);
ncb_status ncb_fock_pair_probability(const ncb_fock* a, const ncb_fock* b,
                                     double* out);
ncb_status ncb_fock_trace(const ncb_fock* op, double* out);
ncb_status ncb_fock_q_at(const ncb_fock* op, double u, double* out);
ncb_status ncb_fock_cutoff(const ncb_fock* op, size_t* out);
ncb_status ncb_fock_tail_bound(const ncb_fock* op, double* out);
ncb_status ncb_fock_moments(const ncb_fock* state, double* mean,
                            double* variance);
ncb_status ncb_fock_mandel_q(const ncb_fock* state, double* out);
void ncb_fock_free(ncb_fock* op);

/* Cross-validation suite: every closed form against an independent
 * brute-force route. Deterministic for a given seed. */
typedef struct ncb_verify ncb_verify;

/* Pass 0 for either tolerance to get the defaults (match_tol 1e-9,
 * tail_tol 1e-12). */
ncb_status ncb_verify_run(double match_tol, double tail_tol, uint64_t seed,
                          ncb_verify** out);
ncb_status ncb_verify_check_count(const ncb_verify* v, size_t* out);
/* The returned name is owned by the handle and valid until it is freed. */
ncb_status ncb_verify_check_name(const ncb_verify* v, size_t index,
                                 const char** out);
ncb_status ncb_verify_check_error(const ncb_verify* v, size_t index,
                                  double* out);
ncb_status ncb_verify_check_passed(const ncb_verify* v, size_t index,
                                   int* out);
ncb_status ncb_verify_overall(const ncb_verify* v, int* out);
void ncb_verify_free(ncb_verify* v);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* NCBOUND_H */
