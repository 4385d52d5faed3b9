#ifndef HYPERGRID_H
#define HYPERGRID_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HgStatus {
  HG_STATUS_OK = 0,
  HG_STATUS_NULL_POINTER = 1,
  HG_STATUS_INVALID_ARGUMENT = 2,
  HG_STATUS_PARSE = 3,
  HG_STATUS_BUFFER_TOO_SMALL = 4,
  HG_STATUS_INTERNAL = 5,
} HgStatus;

/**
 * Opaque handle to a cellular automaton: region, rule and current state.
 */
typedef struct HgCa HgCa;

/**
 * Opaque handle to one of the supported tilings.
 */
typedef struct HgTiling HgTiling;

/**
 * Copies the last error message of this thread, empty if none.
 *
 * # Safety
 * `buf` must be valid for `cap` bytes; `needed` may be null.
 */
enum HgStatus hg_last_error(char *buf, size_t cap, size_t *needed);

/**
 * Creates a handle for `{p,q}`; only `{7,3}` and `{5,4}` are supported.
 *
 * # Safety
 * `out` must be valid for a write. Release the handle with
 * [`hg_tiling_free`].
 */
enum HgStatus hg_tiling_new(uint32_t p, uint32_t q, struct HgTiling **out);

/**
 * # Safety
 * `tiling` must come from [`hg_tiling_new`] and not be used afterwards.
 */
void hg_tiling_free(struct HgTiling *tiling);

/**
 * Neighbor of the tile `coord` (`"0"` or `"sector:node"`) across `side`,
 * and the number of that side in the neighbor.
 *
 * # Safety
 * Pointers must be valid; `buf` for `cap` bytes. `needed` may be null.
 */
enum HgStatus hg_tile_neighbor(const struct HgTiling *tiling,
                               const char *coord,
                               uint32_t side,
                               char *buf,
                               size_t cap,
                               size_t *needed,
                               uint32_t *side_in_neighbor);

/**
 * Neighbors 1, 2 and 3 of the triangle `coord` (`"tile/a1.a2..."`), one
 * per line.
 *
 * # Safety
 * Pointers must be valid; `buf` for `cap` bytes. `needed` may be null.
 */
enum HgStatus hg_tri_neighbors(const struct HgTiling *tiling,
                               const char *coord,
                               char *buf,
                               size_t cap,
                               size_t *needed);

/**
 * Greedy representation of `value` over the basis of `{p,q}`.
 *
 * # Safety
 * `buf` must be valid for `cap` bytes; `needed` may be null.
 */
enum HgStatus hg_num_encode(uint32_t p,
                            uint32_t q,
                            uint64_t value,
                            char *buf,
                            size_t cap,
                            size_t *needed);

/**
 * Value of a digit string over the basis of `{p,q}`; fails if it exceeds
 * `u64`.
 *
 * # Safety
 * `digits` must be a valid string and `out` valid for a write.
 */
enum HgStatus hg_num_decode(uint32_t p, uint32_t q, const char *digits, uint64_t *out);

/**
 * Builds an automaton on the `subdiv`-triangles within `level` tiles of the
 * centre. `rule` is the text of a rule file, `seed` lists
 * `coord=state` pairs separated by commas and may be empty or null.
 *
 * # Safety
 * Pointers must be valid. Release the handle with [`hg_ca_free`].
 */
enum HgStatus hg_ca_new(const struct HgTiling *tiling,
                        const char *rule,
                        uint32_t level,
                        size_t subdiv,
                        const char *seed,
                        struct HgCa **out);

/**
 * # Safety
 * `ca` must come from [`hg_ca_new`] and not be used afterwards.
 */
void hg_ca_free(struct HgCa *ca);

/**
 * Advances `steps` synchronous updates.
 *
 * # Safety
 * `ca` must be a live handle.
 */
enum HgStatus hg_ca_step(struct HgCa *ca, size_t steps);

/**
 * Number of cells in the region.
 *
 * # Safety
 * `ca` must be a live handle and `out` valid for a write.
 */
enum HgStatus hg_ca_len(const struct HgCa *ca, size_t *out);

/**
 * Hash of the current frame, as printed by `hypergrid ca run`.
 *
 * # Safety
 * `ca` must be a live handle and `out` valid for a write.
 */
enum HgStatus hg_ca_hash(const struct HgCa *ca, uint64_t *out);

/**
 * Copies the current states, in region order, into `buf`.
 *
 * # Safety
 * `ca` must be a live handle and `buf` valid for `cap` values.
 */
enum HgStatus hg_ca_states(const struct HgCa *ca, uint32_t *buf, size_t cap);

#endif  /* HYPERGRID_H */
