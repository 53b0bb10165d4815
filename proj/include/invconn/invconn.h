/* C interface to the invariant-connection classifier.
 *
 * All functions returning ivc_status leave a human-readable message in
 * ivc_last_error() on failure (thread-local, valid until the next call on
 * the same thread).  Objects are opaque; create/free in matched pairs.
 */
#ifndef INVCONN_H
#define INVCONN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define IVC_API __declspec(dllexport)
#else
#define IVC_API __attribute__((visibility("default")))
#endif

typedef enum ivc_status {
  IVC_OK = 0,
  IVC_ERR_INPUT = 1,
  IVC_ERR_PARSE = 2,
  IVC_ERR_CONSTRUCTION = 3,
  IVC_ERR_HYPOTHESIS = 4,
  IVC_ERR_UNSUPPORTED = 5,
  IVC_ERR_NUMERIC = 6,
  IVC_ERR_INTERNAL = 7,
  IVC_ERR_NOMEM = 8
} ivc_status;

typedef struct ivc_options ivc_options;
typedef struct ivc_problem ivc_problem;
typedef struct ivc_report ivc_report;

IVC_API const char* ivc_last_error(void);

/* ------------------------------------------------------------------ */
/* options (NULL everywhere means defaults: exact arithmetic, eps 1e-9,
 * grid 5, step 1e-4, seed 12345, 12 invariance samples)               */

IVC_API ivc_options* ivc_options_new(void);
IVC_API void ivc_options_free(ivc_options* o);
IVC_API ivc_status ivc_options_set_mode(ivc_options* o, const char* mode);
IVC_API ivc_status ivc_options_set_eps(ivc_options* o, double eps);
IVC_API ivc_status ivc_options_set_grid(ivc_options* o, size_t per_axis);
IVC_API ivc_status ivc_options_set_step(ivc_options* o, double h);
IVC_API ivc_status ivc_options_set_seed(ivc_options* o, uint64_t seed);
IVC_API ivc_status ivc_options_set_samples(ivc_options* o, size_t samples);
/* classify only: additionally sweep the homomorphism over integer multiples
 * lo..hi and report the invariant dimension for each (needs abelian kS). */
IVC_API ivc_status ivc_options_set_beta_range(ivc_options* o, long lo,
                                              long hi);

/* ------------------------------------------------------------------ */
/* built-in catalog                                                    */

IVC_API size_t ivc_catalog_size(void);
/* Borrowed pointer into static storage; NULL when index is out of range. */
IVC_API const char* ivc_catalog_id(size_t index);
/* JSON text of an entry; free with ivc_string_free.  indent < 0 compact. */
IVC_API ivc_status ivc_export_entry(const char* id, int indent, char** out);
/* Every entry, as one JSON array. */
IVC_API ivc_status ivc_export_catalog(int indent, char** out);

/* ------------------------------------------------------------------ */
/* problems                                                            */

IVC_API ivc_status ivc_problem_from_catalog(const char* id,
                                            const ivc_options* o,
                                            ivc_problem** out);
IVC_API ivc_status ivc_problem_from_file(const char* path,
                                         const ivc_options* o,
                                         ivc_problem** out);
IVC_API ivc_status ivc_problem_from_json(const char* text,
                                         const ivc_options* o,
                                         ivc_problem** out);
IVC_API const char* ivc_problem_id(const ivc_problem* p);
/* Drop every declared pair except the named one. */
/* Add a candidate pair from a JSON file of the shape
 *   { "id", "omega", "beta"?: { "dbeta", "zGenerator", "zWeightOnN" },
 *     "expectHolomorphic"? }.
 * A beta block re-bases the problem on that homomorphism; pairs and expected
 * facts tied to the previous one are dropped.  Duplicate ids are refused. */
IVC_API ivc_status ivc_problem_add_pair_file(ivc_problem* p, const char* path,
                                             const ivc_options* o);
IVC_API ivc_status ivc_problem_select_pair(ivc_problem* p,
                                           const char* pair_id);
IVC_API void ivc_problem_free(ivc_problem* p);

/* ------------------------------------------------------------------ */
/* runs.  IVC_OK means the run completed and *out holds a report; the
 * report's exit code distinguishes acceptance (0), rejection of the
 * entry or its hypotheses (2) and a verdict contradicting a declared
 * expectation (3).                                                    */

IVC_API ivc_status ivc_run_validate(const ivc_problem* p,
                                    const ivc_options* o, ivc_report** out);
IVC_API ivc_status ivc_run_classify(const ivc_problem* p,
                                    const ivc_options* o, ivc_report** out);
IVC_API ivc_status ivc_run_verify(const ivc_problem* p, const ivc_options* o,
                                  ivc_report** out);

IVC_API int ivc_report_exit_code(const ivc_report* r);
/* Serialized report; free with ivc_string_free.  indent < 0 compact. */
IVC_API char* ivc_report_json(const ivc_report* r, int indent);
IVC_API void ivc_report_free(ivc_report* r);

IVC_API void ivc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* INVCONN_H */
