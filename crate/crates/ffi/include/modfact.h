#ifndef MODFACT_H
#define MODFACT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call. Zero is success.
 */
typedef enum ModfactStatus {
  MODFACT_STATUS_OK = 0,
  MODFACT_STATUS_NULL_POINTER = 1,
  MODFACT_STATUS_INVALID_ARGUMENT = 2,
  MODFACT_STATUS_NOT_COPRIME = 3,
  MODFACT_STATUS_NO_INVERSE = 4,
  MODFACT_STATUS_INVALID_FACTOR = 5,
  MODFACT_STATUS_INVALID_FACTORIZATION = 6,
  MODFACT_STATUS_INVALID_JSON = 7,
  MODFACT_STATUS_BUFFER_TOO_SMALL = 8,
  MODFACT_STATUS_COST_GUARD = 9,
  MODFACT_STATUS_PANIC = 10,
} ModfactStatus;

/**
 * Opaque handle to a single factor.
 */
typedef struct ModfactFactor ModfactFactor;

/**
 * Opaque handle to a complete factorization.
 */
typedef struct ModfactFactorization ModfactFactorization;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL.
 *
 * The pointer stays valid until the next call into the library on the same
 * thread.
 */
const char *modfact_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *modfact_version(void);

/**
 * Releases a string returned by the library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void modfact_string_free(char *s);

uint64_t modfact_gcd(int64_t a, int64_t b);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum ModfactStatus modfact_totient(uint64_t n, uint64_t *out);

/**
 * Inverse of `r` modulo `n`, in `0..n`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ModfactStatus modfact_mod_inverse(int64_t r, uint64_t n, uint64_t *out);

/**
 * The `v` in `0..n` with `2v ≡ k (mod n)`; `n` must be odd.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ModfactStatus modfact_half_mod(uint64_t k, uint64_t n, uint64_t *out);

/**
 * The `p` in `0..s*t` with `p ≡ k (mod s)` and `p ≡ l (mod t)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ModfactStatus modfact_crt_combine(uint64_t k,
                                       uint64_t s,
                                       uint64_t l,
                                       uint64_t t,
                                       uint64_t *out);

/**
 * `F_k` of `K_n` for odd `n`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ModfactStatus modfact_factor_new_modular(size_t n, size_t k, struct ModfactFactor **out);

/**
 * The perfect matching `F_k` of `K_n` for even `n`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ModfactStatus modfact_factor_new_even(size_t n, size_t k, struct ModfactFactor **out);

/**
 * `D_{k,l}` on `K_{st}`, with pair `(i, j)` numbered `i*t + j`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ModfactStatus modfact_factor_new_product(size_t s,
                                              size_t t,
                                              size_t k,
                                              size_t l,
                                              struct ModfactFactor **out);

/**
 * Parses a factor from JSON and validates it.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum ModfactStatus modfact_factor_from_json(const char *json, struct ModfactFactor **out);

/**
 * # Safety
 * `f` must come from this library and not have been freed. NULL is ignored.
 */
void modfact_factor_free(struct ModfactFactor *f);

/**
 * Order of the host graph, or 0 for NULL.
 *
 * # Safety
 * `f` must be NULL or a live handle.
 */
size_t modfact_factor_order(const struct ModfactFactor *f);

/**
 * Number of edges, or 0 for NULL.
 *
 * # Safety
 * `f` must be NULL or a live handle.
 */
size_t modfact_factor_edge_count(const struct ModfactFactor *f);

/**
 * Writes the isolated vertex to `out` and returns true, or returns false
 * when the factor covers every vertex.
 *
 * # Safety
 * `f` must be NULL or a live handle; `out` must be valid for writes.
 */
bool modfact_factor_isolated(const struct ModfactFactor *f, size_t *out);

/**
 * Copies the edges as `u0, v0, u1, v1, ...` with `u < v`, sorted.
 *
 * `capacity` counts `size_t` slots. `written` receives the number of slots
 * needed; when that exceeds `capacity` nothing is copied and
 * `BufferTooSmall` is returned.
 *
 * # Safety
 * `f` must be a live handle; `buf` must hold `capacity` slots; `written`
 * must be valid for writes.
 */
enum ModfactStatus modfact_factor_edges(const struct ModfactFactor *f,
                                        size_t *buf,
                                        size_t capacity,
                                        size_t *written);

/**
 * Ok when the factor covers its vertices correctly, InvalidFactor otherwise.
 *
 * # Safety
 * `f` must be a live handle.
 */
enum ModfactStatus modfact_factor_validate(const struct ModfactFactor *f);

/**
 * # Safety
 * `f` must be a live handle; `out` must be valid for writes. Release the
 * string with `modfact_string_free`.
 */
enum ModfactStatus modfact_factor_to_json(const struct ModfactFactor *f, char **out);

/**
 * Whether the union of two factors is a Hamiltonian path (odd order) or
 * cycle (even order), decided by walking it.
 *
 * # Safety
 * `f` and `g` must be live handles; `out` must be valid for writes.
 */
enum ModfactStatus modfact_classify_pair(const struct ModfactFactor *f,
                                         const struct ModfactFactor *g,
                                         bool *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum ModfactStatus modfact_is_perfect_by_gcd(size_t k, size_t l, size_t n, bool *out);

/**
 * The `i`-th edge (1-based) of the walk through `F_k ∪ F_l` on `K_n`.
 *
 * # Safety
 * `u` and `v` must be valid for writes.
 */
enum ModfactStatus modfact_nth_union_edge(size_t k,
                                          size_t l,
                                          size_t n,
                                          size_t i,
                                          size_t *u,
                                          size_t *v);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum ModfactStatus modfact_is_perfect_product_pair(size_t s,
                                                   size_t t,
                                                   size_t k,
                                                   size_t l,
                                                   size_t k2,
                                                   size_t l2,
                                                   bool *out);

/**
 * Perfect pairs of the product family by traversal, and by the two-gcd
 * rule. Either out-pointer may be NULL.
 *
 * # Safety
 * Non-NULL pointers must be valid for writes.
 */
enum ModfactStatus modfact_count_perfect_product_pairs(size_t s,
                                                       size_t t,
                                                       size_t *traversal,
                                                       size_t *predicted);

/**
 * The family `{F_k}` of `K_n`, `n` odd.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ModfactStatus modfact_factorization_new_modular(size_t n, struct ModfactFactorization **out);

/**
 * The family `{D_{k,l}}` on `K_{st}`, factor `k*t + l` at that position.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ModfactStatus modfact_factorization_new_product(size_t s,
                                                     size_t t,
                                                     struct ModfactFactorization **out);

/**
 * Parses and validates a factorization from JSON.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum ModfactStatus modfact_factorization_from_json(const char *json,
                                                   struct ModfactFactorization **out);

/**
 * # Safety
 * `fz` must come from this library and not have been freed. NULL is ignored.
 */
void modfact_factorization_free(struct ModfactFactorization *fz);

/**
 * # Safety
 * `fz` must be NULL or a live handle.
 */
size_t modfact_factorization_order(const struct ModfactFactorization *fz);

/**
 * Number of factors, or 0 for NULL.
 *
 * # Safety
 * `fz` must be NULL or a live handle.
 */
size_t modfact_factorization_len(const struct ModfactFactorization *fz);

/**
 * A copy of factor `index`; free it with `modfact_factor_free`.
 *
 * # Safety
 * `fz` must be a live handle; `out` must be valid for writes.
 */
enum ModfactStatus modfact_factorization_get(const struct ModfactFactorization *fz,
                                             size_t index,
                                             struct ModfactFactor **out);

/**
 * Number of unordered perfect pairs, or 0 for NULL.
 *
 * # Safety
 * `fz` must be NULL or a live handle.
 */
size_t modfact_factorization_count_perfect_pairs(const struct ModfactFactorization *fz);

/**
 * # Safety
 * `fz` must be a live handle; `out` must be valid for writes. Release the
 * string with `modfact_string_free`.
 */
enum ModfactStatus modfact_factorization_to_json(const struct ModfactFactorization *fz, char **out);

/**
 * The CRT equivalence report for coprime odd `s`, `t`, as JSON.
 *
 * # Safety
 * `out` must be valid for writes. Release the string with
 * `modfact_string_free`.
 */
enum ModfactStatus modfact_equivalence_report_json(size_t s, size_t t, char **out);

/**
 * Maximum number of perfect pairs over all near-one-factorizations of
 * `K_n` by exhaustive search. Order 9 returns `CostGuard` unless
 * `allow_expensive` is set.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ModfactStatus modfact_exact_c(size_t n, bool allow_expensive, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MODFACT_H */
