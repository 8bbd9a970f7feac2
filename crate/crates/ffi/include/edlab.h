#ifndef EDLAB_H
#define EDLAB_H

#include <stddef.h>
#include <stdint.h>

typedef enum EdlStatus {
  EDL_STATUS_OK = 0,
  EDL_STATUS_NULL_POINTER = 1,
  EDL_STATUS_INVALID_ARGUMENT = 2,
  EDL_STATUS_INVALID_PROFILE = 3,
  EDL_STATUS_PROFILE_MISMATCH = 4,
  EDL_STATUS_NOT_FOUND = 5,
  EDL_STATUS_INTERNAL = 6,
  EDL_STATUS_PANIC = 7,
} EdlStatus;

typedef enum EdlAlgo {
  // Block Sorting; `param` is the block size k.
  EDL_ALGO_BLOCK = 0,
  // Median Recursion; `param` is L.
  EDL_ALGO_MEDIAN = 1,
  // Needs a profile.
  EDL_ALGO_CLAIRVOYANT = 2,
  // Needs a profile.
  EDL_ALGO_PREPROCESSED = 3,
  EDL_ALGO_OBLIVIOUS = 4,
  EDL_ALGO_DOUBLING = 5,
} EdlAlgo;

typedef enum EdlOutcome {
  EDL_OUTCOME_DUPLICATE = 0,
  EDL_OUTCOME_DISTINCT = 1,
  EDL_OUTCOME_GAVE_UP = 2,
} EdlOutcome;

// Opaque input instance.
typedef struct EdlInstance EdlInstance;

// Opaque cluster profile.
typedef struct EdlProfile EdlProfile;

typedef struct EdlBounds {
  double median;
  double block;
  double combined;
} EdlBounds;

typedef struct EdlRunReport {
  enum EdlOutcome outcome;
  uint64_t comparisons;
  // Valid only for `EDL_OUTCOME_DUPLICATE`.
  size_t witness_x;
  size_t witness_y;
} EdlRunReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static, NUL-terminated description of a status.
const char *edl_status_message(enum EdlStatus status);

// Builds a profile from `len` positive cluster sizes.
//
// # Safety
// `sizes` must point to `len` readable values; `out` must be writable.
enum EdlStatus edl_profile_new(const size_t *sizes, size_t len, struct EdlProfile **out);

// # Safety
// `profile` must come from `edl_profile_new` and not be freed twice. Null is ignored.
void edl_profile_free(struct EdlProfile *profile);

// Number of elements; 0 for a null handle.
//
// # Safety
// `profile` must be null or a live handle.
size_t edl_profile_n(const struct EdlProfile *profile);

// Number of clusters; 0 for a null handle.
//
// # Safety
// `profile` must be null or a live handle.
size_t edl_profile_m(const struct EdlProfile *profile);

// `C(L)` and `D(L)`.
//
// # Safety
// `profile` must be a live handle; `c` and `d` writable.
enum EdlStatus edl_profile_cd(const struct EdlProfile *profile, size_t l, size_t *c, size_t *d);

// The median-recursion parameter and its bound; `EDL_STATUS_NOT_FOUND`
// when no `L >= 2` has `C(L) < n`.
//
// # Safety
// `profile` must be a live handle; outputs writable.
enum EdlStatus edl_profile_select_l1(const struct EdlProfile *profile, size_t *l, double *bound);

// The block-sorting parameter and its objective.
//
// # Safety
// `profile` must be a live handle; outputs writable.
enum EdlStatus edl_profile_select_l2(const struct EdlProfile *profile, size_t *l, double *bound);

// # Safety
// `profile` must be a live handle; `out` writable.
enum EdlStatus edl_profile_bounds(const struct EdlProfile *profile, struct EdlBounds *out);

// Writes 1 or 0 to `holds`; `EDL_STATUS_INVALID_PROFILE` for a single cluster.
//
// # Safety
// `profile` must be a live handle; `holds` writable.
enum EdlStatus edl_profile_check_linear_subset(const struct EdlProfile *profile, int32_t *holds);

// An instance from `len` ranks; equal ranks are equal elements.
//
// # Safety
// `ranks` must point to `len` readable values; `out` writable.
enum EdlStatus edl_instance_from_ranks(const uint64_t *ranks, size_t len, struct EdlInstance **out);

// A seed-determined instance whose duplicate graph realizes `profile`.
//
// # Safety
// `profile` must be a live handle; `out` writable.
enum EdlStatus edl_instance_realize(const struct EdlProfile *profile,
                                    uint64_t seed,
                                    struct EdlInstance **out);

// # Safety
// `instance` must come from this library and not be freed twice. Null is ignored.
void edl_instance_free(struct EdlInstance *instance);

// # Safety
// `instance` must be null or a live handle.
size_t edl_instance_len(const struct EdlInstance *instance);

// Rank of element `index`. Intended for inspection, not for algorithms.
//
// # Safety
// `instance` must be a live handle; `rank` writable.
enum EdlStatus edl_instance_rank(const struct EdlInstance *instance, size_t index, uint64_t *rank);

// Writes 1 when the instance's duplicate graph is isomorphic to `profile`.
//
// # Safety
// Both handles must be live; `matches` writable.
enum EdlStatus edl_instance_verify(const struct EdlInstance *instance,
                                   const struct EdlProfile *profile,
                                   int32_t *matches);

// Runs one algorithm on `instance`. `param` is k for Block and L for
// Median and ignored otherwise; `profile` is required for Clairvoyant and
// Preprocessed and ignored otherwise.
//
// # Safety
// `instance` must be a live handle; `profile` null or live; `out` writable.
enum EdlStatus edl_run(const struct EdlInstance *instance,
                       enum EdlAlgo algo,
                       size_t param,
                       const struct EdlProfile *profile,
                       struct EdlRunReport *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EDLAB_H */
