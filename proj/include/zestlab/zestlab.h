/* zestlab C API
 *
 * A flat, extern-C surface over the zestlab core: twisted-double modular
 * data for the metacyclic groups Z_q x| Z_p, cyclic ribbon zesting, colored
 * link invariants, and the relabeling-equivalence comparisons.
 *
 * Conventions
 *   - Every fallible function returns a zl_status.  ZL_OK means success.
 *     ZL_ERROR means failure; call zl_last_error() for a message.
 *     ZL_DISTINGUISHABLE is a *non-error* outcome of compare/experiment:
 *     the inputs were proven inequivalent (exhausted relabeling search).
 *     Output parameters are written on ZL_OK and ZL_DISTINGUISHABLE.
 *   - Strings returned through `char**` are heap-allocated, NUL-terminated
 *     UTF-8 (JSON documents).  Release them with zl_string_free().
 *   - zl_last_error() returns a thread-local buffer, valid until the next
 *     zestlab call on the same thread.  Never free it.
 *   - Handles are opaque; release with the matching *_free function.
 *     Passing NULL to a *_free function is a no-op.
 *   - Long-running computations honor the ZESTLAB_CACHE environment
 *     variable (cache directory, default ".zestlab-cache") whenever the
 *     `use_cache` argument is nonzero.
 */

#ifndef ZESTLAB_H
#define ZESTLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zl_status {
  ZL_OK = 0,
  ZL_ERROR = 1,
  ZL_DISTINGUISHABLE = 2
} zl_status;

/* Library version, e.g. "1.0.0".  Static storage; do not free. */
const char* zl_version(void);

/* Message for the most recent failure on this thread ("" if none). */
const char* zl_last_error(void);

/* Releases a string returned through a `char**` output parameter. */
void zl_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Modular data                                                       */
/* ------------------------------------------------------------------ */

/* Opaque handle: the (S, T) matrices plus label metadata of one
 * twisted-double modular category, exact (cyclotomic) or float backed. */
typedef struct zl_modular_data zl_modular_data;

/* Computes the modular data of the twisted Drinfeld double of
 * Z_q x|_n Z_p with cocycle parameter u (exact backend).
 * Requires primes p, q with p | q - 1 and 0 <= u < p.  Pass n = 0 to use
 * the canonical multiplier (the smallest n of order p modulo q). */
zl_status zl_modular_data_compute(int p, int q, int n, int u,
                                  zl_modular_data** out);

/* Parses a modular-data JSON document (either backend). */
zl_status zl_modular_data_from_json(const char* json_text,
                                    zl_modular_data** out);

/* Serializes a handle.  float_backend nonzero writes [re, im] entries;
 * zero writes exact cyclotomic entries (fails on a float-backed handle). */
zl_status zl_modular_data_to_json(const zl_modular_data* md,
                                  int float_backend, char** out_json);

/* Number of simple-object labels, or -1 on a NULL handle. */
int zl_modular_data_rank(const zl_modular_data* md);

/* Nonzero iff the handle carries exact cyclotomic entries. */
int zl_modular_data_is_exact(const zl_modular_data* md);

void zl_modular_data_free(zl_modular_data* md);

/* ------------------------------------------------------------------ */
/* Cyclic ribbon zesting                                              */
/* ------------------------------------------------------------------ */

/* Applies the canonical cyclic zesting indexed by u:
 * (a, b, s) = (2u mod N, u mod N, zeta_{N^2}^{-u}) with N = p. */
zl_status zl_zest_u(const zl_modular_data* in, int u, zl_modular_data** out);

/* Applies the cyclic zesting (a, b, s) with s = zeta_{s_conductor}^{s_exponent}.
 * The triple is validated: a = 2b (mod N) and s^N * zeta_{2N}^{2b} = 1. */
zl_status zl_zest_abs(const zl_modular_data* in, int a, int b,
                      long long s_conductor, long long s_exponent,
                      zl_modular_data** out);

/* ------------------------------------------------------------------ */
/* Link invariants                                                    */
/* ------------------------------------------------------------------ */

/* Evaluates the colored invariant of the braid closure.
 *   braid_word   whitespace-separated letters "s<i>" / "s<i>^-1" / "s<i>^k"
 *   colors       one simple-object label index per strand; the number of
 *                strands is num_colors; colors must agree on each closure
 *                component
 *   zero_framed  nonzero corrects each component to zero framing
 * Writes a JSON document with the exact value and its float image. */
zl_status zl_link_invariant_json(int p, int q, int n, int u,
                                 const char* braid_word, const int* colors,
                                 int num_colors, int zero_framed,
                                 char** out_json);

/* Computes the invariant battery (Whitehead matrix W, 5_2 vector, seeded
 * Borromean sample) for the twisted double at (p, q, n, u) and writes the
 * suite document.  `which` must be "w", "b", or "five2"; it is echoed in
 * the document (the suite is computed as a whole and shared via the cache).
 * `sample` is the Borromean sample size, `seed` its RNG seed. */
zl_status zl_invariants_json(int p, int q, int n, int u, const char* which,
                             int sample, uint64_t seed, int use_cache,
                             char** out_json);

/* ------------------------------------------------------------------ */
/* Comparison and experiment                                          */
/* ------------------------------------------------------------------ */

/* Runs the relabeling-equivalence comparison between two modular-data
 * documents, optionally with attached invariant batteries:
 *   with_w_left / with_w_right   suite documents for the {W, T} search
 *   with_b_left / with_b_right   suite documents for the {B-sample, T} search
 * Either *_right may be NULL, in which case the right-hand battery is
 * recomputed from the right header (W) or evaluated on demand (B).
 * Attaching W or B requires the corresponding left document.
 * `limit` caps the number of relabeling witnesses per search (>= 1).
 * Returns ZL_OK with a report when every requested search found a witness
 * or remained inconclusive, ZL_DISTINGUISHABLE with a report when some
 * search proved inequivalence by exhaustion, ZL_ERROR on failure. */
zl_status zl_compare_json(const char* left_md_json, const char* right_md_json,
                          const char* with_w_left, const char* with_w_right,
                          const char* with_b_left, const char* with_b_right,
                          int limit, int use_cache, char** out_report);

/* Runs the full isotope experiment for (p, q): modular data for every u,
 * zesting reconstruction checks, and pairwise (S,T), {W,T}, {B,T}
 * relabeling searches.  Writes the experiment report.
 * `verbose` nonzero streams stage/progress notes to stderr (the report
 * bytes are deterministic either way).
 * Returns ZL_DISTINGUISHABLE when some pair was proven inequivalent. */
zl_status zl_experiment_json(int p, int q, int sample, uint64_t seed,
                             int limit, int use_cache, int verbose,
                             char** out_report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ZESTLAB_H */
