/* C interface of the ucaw library.
 *
 * Objects are opaque handles. Every fallible call returns a ucaw_status;
 * on failure ucaw_last_error() describes the problem (per thread, valid
 * until the next call on that thread). Results are UTF-8 JSON documents
 * allocated by the library and released with ucaw_string_free. Elements are
 * 0-based, variables x1, x2, ... and word positions are 1-based.
 */
#ifndef UCAW_UCAW_H
#define UCAW_UCAW_H

#include <stddef.h>
#include <stdint.h>

#if defined(UCAW_BUILDING_LIBRARY)
#define UCAW_API __attribute__((visibility("default")))
#else
#define UCAW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ucaw_status {
  UCAW_OK = 0,
  UCAW_ERR_INVALID_ARGUMENT = 1,
  UCAW_ERR_PARSE = 2,
  UCAW_ERR_PRECONDITION = 3,
  UCAW_ERR_BUDGET = 4,
  UCAW_ERR_IO = 5,
  UCAW_ERR_INTERNAL = 6
} ucaw_status;

typedef struct ucaw_algebra ucaw_algebra;
typedef struct ucaw_clonoid_spec ucaw_clonoid_spec;

typedef struct ucaw_options {
  /* Total tuples the closures of one call may create. */
  uint64_t max_tuples;
  /* Wall-clock limit in milliseconds; 0 means none. */
  uint64_t max_millis;
} ucaw_options;

/* Defaults: 10^7 tuples, no time limit. */
UCAW_API void ucaw_options_init(ucaw_options* options);

UCAW_API const char* ucaw_version(void);
UCAW_API const char* ucaw_last_error(void);
UCAW_API const char* ucaw_status_name(ucaw_status status);
UCAW_API void ucaw_string_free(char* s);

/* Algebras */
UCAW_API ucaw_status ucaw_algebra_parse(const char* text, ucaw_algebra** out);
UCAW_API ucaw_status ucaw_algebra_load(const char* path, ucaw_algebra** out);
UCAW_API void ucaw_algebra_free(ucaw_algebra* alg);
UCAW_API size_t ucaw_algebra_size(const ucaw_algebra* alg);
/* Canonical algebra-file text. */
UCAW_API ucaw_status ucaw_algebra_serialize(const ucaw_algebra* alg,
                                            char** out);

/* Commands. `options` may be NULL for the defaults. */
UCAW_API ucaw_status ucaw_info(const ucaw_algebra* alg, char** json);
UCAW_API ucaw_status ucaw_edge_term(const ucaw_algebra* alg, size_t k,
                                    const ucaw_options* options, char** json);
UCAW_API ucaw_status ucaw_min_edge_arity(const ucaw_algebra* alg,
                                         size_t k_max,
                                         const ucaw_options* options,
                                         char** json);
UCAW_API ucaw_status ucaw_malcev_term(const ucaw_algebra* alg,
                                      const ucaw_options* options,
                                      char** json);
UCAW_API ucaw_status ucaw_nu_term(const ucaw_algebra* alg, size_t k,
                                  const ucaw_options* options, char** json);
/* Number of term operations of the given arity. */
UCAW_API ucaw_status ucaw_clone_size(const ucaw_algebra* alg, size_t arity,
                                     const ucaw_options* options, char** json);
/* cache_dir may be NULL to disable the result cache. */
UCAW_API ucaw_status ucaw_free_algebra(const ucaw_algebra* alg, size_t k,
                                       const char* cache_dir,
                                       const ucaw_options* options,
                                       char** json);
/* Is b in the variety generated by a? */
UCAW_API ucaw_status ucaw_member(const ucaw_algebra* b, const ucaw_algebra* a,
                                 const ucaw_options* options, char** json);
/* Forks of sg(gens) <= A^width; with super_gens (may be NULL) also the fork
 * criterion against sg(gens + super_gens) for edge arity k. Tuple lists look
 * like "0 1; 1 0". */
UCAW_API ucaw_status ucaw_forks(const ucaw_algebra* alg, size_t width,
                                const char* gens, const char* super_gens,
                                size_t k, const ucaw_options* options,
                                char** json);
UCAW_API ucaw_status ucaw_subcovers(const ucaw_algebra* alg, size_t bound,
                                    const ucaw_options* options, char** json);
UCAW_API ucaw_status ucaw_critical(const ucaw_algebra* b,
                                   uint64_t candidate_limit,
                                   const ucaw_options* options, char** json);

/* Words over {0..t-1}, written "0 0 1". */
UCAW_API ucaw_status ucaw_wpo_lea(const char* a, const char* b, size_t t,
                                  char** json);
UCAW_API ucaw_status ucaw_wpo_tab(const char* a, const char* b, size_t t,
                                  char** json);
UCAW_API ucaw_status ucaw_wpo_antichain(const char* const* words, size_t count,
                                        size_t t, char** json);

/* Clonoids. A seed file names its target algebra by a path relative to the
 * seed file, or inlines it. */
UCAW_API ucaw_status ucaw_clonoid_load(const char* path,
                                       ucaw_clonoid_spec** out);
UCAW_API ucaw_status ucaw_clonoid_parse(const char* text, const char* base_dir,
                                        ucaw_clonoid_spec** out);
UCAW_API void ucaw_clonoid_free(ucaw_clonoid_spec* spec);
UCAW_API ucaw_status ucaw_clonoid_generate(const ucaw_clonoid_spec* spec,
                                           size_t bound,
                                           const ucaw_options* options,
                                           char** json);
UCAW_API ucaw_status ucaw_clonoid_forks(const ucaw_clonoid_spec* spec,
                                        size_t bound, const char* word,
                                        const ucaw_options* options,
                                        char** json);
/* bound 0 picks max(max_length, t^(k-1)). */
UCAW_API ucaw_status ucaw_clonoid_leq(const ucaw_clonoid_spec* c,
                                      const ucaw_clonoid_spec* d, size_t k,
                                      size_t max_length, size_t bound,
                                      const ucaw_options* options,
                                      char** json);
UCAW_API ucaw_status ucaw_clonoid_th(const ucaw_algebra* a,
                                     const ucaw_algebra* b, size_t arity,
                                     const ucaw_options* options, char** json);
UCAW_API ucaw_status ucaw_galois(const ucaw_algebra* a, const ucaw_algebra* b1,
                                 const ucaw_algebra* b2, size_t n_max,
                                 const ucaw_options* options, char** json);

#ifdef __cplusplus
}
#endif

#endif
