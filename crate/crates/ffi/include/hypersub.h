#ifndef HYPERSUB_H
#define HYPERSUB_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum HsStatus {
  HS_STATUS_OK = 0,
  HS_STATUS_NULL_POINTER = 1,
  HS_STATUS_INVALID_CONFIG = 2,
  HS_STATUS_LABEL_OUT_OF_RANGE = 3,
  HS_STATUS_INVALID_TILE = 4,
  HS_STATUS_LEVEL_OUT_OF_RANGE = 5,
  HS_STATUS_CAP_EXCEEDED = 6,
  HS_STATUS_NOT_SEPARATED = 7,
  HS_STATUS_INVALID_SUBDIVISION = 8,
  HS_STATUS_UNSUPPORTED = 9,
  HS_STATUS_PARSE = 10,
  HS_STATUS_INTERNAL = 11,
  HS_STATUS_INVALID_UTF8 = 12,
  HS_STATUS_OVERFLOW = 13,
  HS_STATUS_PANIC = 14,
} HsStatus;

/**
 * Opaque point configuration.
 */
typedef struct HsConfig HsConfig;

/**
 * Opaque hypersimplicial subdivision.
 */
typedef struct HsSubdivision HsSubdivision;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *hs_status_message(enum HsStatus status);

/**
 * Library version, a static string.
 */
const char *hs_version(void);

/**
 * Builds a configuration of `n` points in dimension `dim` from `n * dim`
 * row-major integer coordinates.
 *
 * # Safety
 * `coords` must point to `n * dim` readable values and `out` must be writable.
 */
enum HsStatus hs_config_from_ints(size_t dim,
                                  size_t n,
                                  const int64_t *coords,
                                  struct HsConfig **out);

/**
 * Parses a configuration from JSON (`{"dim": d, "points": [[..], ..]}`).
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum HsStatus hs_config_from_json(const char *json, struct HsConfig **out);

/**
 * Loads a named fixture such as `hexagon` or `cyclic-6-3`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` writable.
 */
enum HsStatus hs_config_fixture(const char *name, struct HsConfig **out);

/**
 * Releases a configuration; null is ignored.
 *
 * # Safety
 * `cfg` must come from this library and not be freed twice.
 */
void hs_config_free(struct HsConfig *cfg);

/**
 * Number of points; 0 for null.
 *
 * # Safety
 * `cfg` must be null or a live handle.
 */
size_t hs_config_num_points(const struct HsConfig *cfg);

/**
 * Separation of the tiles `[x1,y1]` and `[x2,y2]` given as label bitmasks
 * (bit `i-1` for label `i`). When not separated, the circuit is written to
 * `circuit_pos` / `circuit_neg` (both may be null).
 *
 * # Safety
 * `cfg` must be a live handle; output pointers must be writable or null
 * where allowed.
 */
enum HsStatus hs_tiles_separated(const struct HsConfig *cfg,
                                 uint64_t x1,
                                 uint64_t y1,
                                 uint64_t x2,
                                 uint64_t y2,
                                 bool *separated,
                                 uint64_t *circuit_pos,
                                 uint64_t *circuit_neg);

/**
 * Number of hypertriangulations of the second level of the `n`-gon.
 *
 * # Safety
 * `out` must be writable.
 */
enum HsStatus hs_hypercatalan2(size_t n, uint64_t *out);

/**
 * Number of fine subdivisions of level `k`, failing with `CapExceeded`
 * beyond `cap`.
 *
 * # Safety
 * `cfg` must be a live handle and `out` writable.
 */
enum HsStatus hs_count_fine(const struct HsConfig *cfg, size_t k, size_t cap, size_t *out);

/**
 * Parses a subdivision from JSON (`{"k": k, "cells": [{"X": [..], "Y": [..]}, ..]}`).
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum HsStatus hs_subdivision_from_json(const char *json, struct HsSubdivision **out);

/**
 * Coherent subdivision of level `k` for integer weights, one per point.
 *
 * # Safety
 * `cfg` must be a live handle, `weights` must hold `len` values and `out`
 * must be writable.
 */
enum HsStatus hs_coherent_subdivision(const struct HsConfig *cfg,
                                      size_t k,
                                      const int64_t *weights,
                                      size_t len,
                                      struct HsSubdivision **out);

/**
 * Releases a subdivision; null is ignored.
 *
 * # Safety
 * `sub` must come from this library and not be freed twice.
 */
void hs_subdivision_free(struct HsSubdivision *sub);

/**
 * Level of a subdivision; 0 for null.
 *
 * # Safety
 * `sub` must be null or a live handle.
 */
size_t hs_subdivision_level(const struct HsSubdivision *sub);

/**
 * Number of full-dimensional cells.
 *
 * # Safety
 * Both handles must be live and `out` writable.
 */
enum HsStatus hs_subdivision_num_cells(const struct HsConfig *cfg,
                                       const struct HsSubdivision *sub,
                                       size_t *out);

/**
 * Writes the subdivision as a newly allocated JSON string, released with
 * [`hs_string_free`].
 *
 * # Safety
 * `sub` must be a live handle and `out` writable.
 */
enum HsStatus hs_subdivision_to_json(const struct HsSubdivision *sub, char **out);

/**
 * Coherence verdict of a validated subdivision.
 *
 * # Safety
 * Both handles must be live and `out` writable.
 */
enum HsStatus hs_is_coherent(const struct HsConfig *cfg,
                             const struct HsSubdivision *sub,
                             bool *out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void hs_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERSUB_H */
