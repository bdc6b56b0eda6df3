/* C interface to the GHZ measurement-dependence toolkit.
 *
 * Every fallible call returns a ghzmd_status; on failure ghzmd_last_error()
 * describes the problem (thread local, valid until the next failing call on
 * the same thread). Strings returned through char** are heap allocated and
 * must be released with ghzmd_string_free. Handles are opaque and released
 * with their matching *_destroy function.
 *
 * Angles are radians throughout. Joint distributions are double[8] in the
 * outcome order "+++", "++-", "+-+", "+--", "-++", "-+-", "--+", "---"
 * (parties A, B, C). Marginals are double[6]: <A>, <B>, <C>, <AB>, <BC>, <CA>.
 */
#ifndef GHZMD_GHZMD_H
#define GHZMD_GHZMD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GHZMD_API __declspec(dllexport)
#else
#define GHZMD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ghzmd_status {
  GHZMD_OK = 0,
  GHZMD_ERR_INVALID_ARGUMENT = 1,
  GHZMD_ERR_ZERO_LENGTH_DIVISION = 2,
  GHZMD_ERR_UNNORMALIZED_INPUT = 3,
  GHZMD_ERR_BUDGET_TOO_SMALL = 4,
  GHZMD_ERR_INFEASIBLE = 5,
  GHZMD_ERR_IO = 6,
  GHZMD_ERR_INTERNAL = 99
} ghzmd_status;

typedef enum ghzmd_variant { GHZMD_VARIANT_FULL = 0, GHZMD_VARIANT_EXPECTATION = 1 } ghzmd_variant;
typedef enum ghzmd_mode { GHZMD_MODE_CORRECTED = 0, GHZMD_MODE_LITERAL = 1 } ghzmd_mode;

typedef struct ghzmd_model_config {
  double lambda0;
  ghzmd_variant variant;
  ghzmd_mode mode;
} ghzmd_model_config;

typedef struct ghzmd_search_config {
  int grid;
  int multistarts;
  int max_iterations;
  double initial_step;
  double tolerance;
  int random_starts;
  uint64_t seed;
  unsigned threads;
} ghzmd_search_config;

typedef struct ghzmd_acceptance_config {
  uint64_t seed;
  ghzmd_search_config search;
  uint64_t mc_samples;
  int mc_triples;
  unsigned threads;
} ghzmd_acceptance_config;

typedef struct ghzmd_measure ghzmd_measure;
typedef struct ghzmd_report ghzmd_report;
typedef struct ghzmd_acceptance ghzmd_acceptance;

GHZMD_API const char* ghzmd_version(void);
GHZMD_API const char* ghzmd_last_error(void);
GHZMD_API void ghzmd_string_free(char* s);

GHZMD_API void ghzmd_model_config_default(ghzmd_model_config* cfg);
GHZMD_API void ghzmd_search_config_default(ghzmd_search_config* cfg);
GHZMD_API void ghzmd_acceptance_config_default(ghzmd_acceptance_config* cfg);

/* Quantum statistics. theta in [0, pi]. */
GHZMD_API ghzmd_status ghzmd_closed_form_joint(const double theta[3], const double phi[3], double out[8]);
GHZMD_API ghzmd_status ghzmd_born_rule_joint(const double theta[3], const double phi[3], double out[8]);
GHZMD_API ghzmd_status ghzmd_equatorial_joint(const double phi[3], double out[8]);
GHZMD_API double ghzmd_expectation(const double joint[8]);
GHZMD_API void ghzmd_marginals(const double joint[8], double out[6]);
/* Serializes a joint distribution as a JSON object keyed by outcome. */
GHZMD_API ghzmd_status ghzmd_joint_json(const double joint[8], char** out);

/* Setting-conditioned hidden-variable measures. */
GHZMD_API ghzmd_status ghzmd_measure_create(const double phi[3], const ghzmd_model_config* cfg, ghzmd_measure** out);
GHZMD_API void ghzmd_measure_destroy(ghzmd_measure* m);
GHZMD_API ghzmd_status ghzmd_measure_joint(const ghzmd_measure* m, double out[8]);
GHZMD_API ghzmd_status ghzmd_measure_mass(const ghzmd_measure* m, double* out);
GHZMD_API ghzmd_status ghzmd_measure_distance(const ghzmd_measure* a, const ghzmd_measure* b, double* out);
/* Fills lambdas[n] and outcomes[n] (outcome index as in the joint order). */
GHZMD_API ghzmd_status ghzmd_measure_sample(const ghzmd_measure* m, uint64_t seed, uint64_t n, double* lambdas,
                                            int* outcomes);

/* Monte Carlo run: JSON run artifact and per-outcome CSV. Either output may be NULL. */
GHZMD_API ghzmd_status ghzmd_simulate(const double phi[3], const ghzmd_model_config* cfg, uint64_t n, uint64_t seed,
                                      unsigned threads, char** json_out, char** csv_out);

/* Measurement dependence. */
GHZMD_API ghzmd_status ghzmd_independence_check(const ghzmd_model_config* cfg, uint64_t trials, uint64_t seed,
                                                int* independent);
GHZMD_API ghzmd_status ghzmd_measurement_dependence(const ghzmd_model_config* cfg, const ghzmd_search_config* search,
                                                    ghzmd_report** out);
GHZMD_API void ghzmd_report_destroy(ghzmd_report* r);
GHZMD_API double ghzmd_report_m(const ghzmd_report* r);
GHZMD_API double ghzmd_report_f(const ghzmd_report* r);
/* argmax as (phiA, phiB, phiC, phiA', phiB', phiC'). */
GHZMD_API void ghzmd_report_argmax(const ghzmd_report* r, double out[6]);
GHZMD_API size_t ghzmd_report_trace_length(const ghzmd_report* r);
/* Report JSON including the region structure of the argmax pair. */
GHZMD_API ghzmd_status ghzmd_report_json(const ghzmd_report* r, char** out);
GHZMD_API ghzmd_status ghzmd_report_trace_csv(const ghzmd_report* r, char** out);

/* Communication-assisted baseline correlation. */
GHZMD_API double ghzmd_e1(double phi);
GHZMD_API ghzmd_status ghzmd_dominance_check(int grid, int* holds, double* min_slack, double* min_slack_phi);
GHZMD_API ghzmd_status ghzmd_e1_curve_csv(int points, char** out);
GHZMD_API ghzmd_status ghzmd_mixture_decompose(int m_max, int grid, double* residual, char** json_out);

/* Verification. */
GHZMD_API ghzmd_status ghzmd_verify_oracle(uint64_t seed, int triples, int* passed, char** json_out);
GHZMD_API ghzmd_status ghzmd_run_acceptance(const ghzmd_acceptance_config* cfg, ghzmd_acceptance** out);
GHZMD_API void ghzmd_acceptance_destroy(ghzmd_acceptance* a);
GHZMD_API size_t ghzmd_acceptance_count(const ghzmd_acceptance* a);
GHZMD_API int ghzmd_acceptance_id(const ghzmd_acceptance* a, size_t i);
GHZMD_API int ghzmd_acceptance_passed(const ghzmd_acceptance* a, size_t i);
GHZMD_API const char* ghzmd_acceptance_name(const ghzmd_acceptance* a, size_t i);
GHZMD_API const char* ghzmd_acceptance_summary(const ghzmd_acceptance* a, size_t i);
GHZMD_API double ghzmd_acceptance_seconds(const ghzmd_acceptance* a, size_t i);
GHZMD_API ghzmd_status ghzmd_acceptance_json(const ghzmd_acceptance* a, char** out);

#ifdef __cplusplus
}
#endif

#endif /* GHZMD_GHZMD_H */
