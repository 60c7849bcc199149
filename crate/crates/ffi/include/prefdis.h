#ifndef PREFDIS_H
#define PREFDIS_H

/* Generated by cbindgen from prefdis-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Strategic model: the observed profile is a pure Nash equilibrium.
 */
#define PREFDIS_MODEL_NASH 0

/**
 * Non-strategic model: the observed action maximizes the best case.
 */
#define PREFDIS_MODEL_MAXMAX 1

/**
 * Non-strategic model: the observed action maximizes the worst case.
 */
#define PREFDIS_MODEL_MAXMIN 2

/**
 * Weighted aggregation; the estimated parameter is the safety weight.
 */
#define PREFDIS_AGGREGATION_WEIGHTED 0

/**
 * Satisficing aggregation; the estimated parameter is the aspiration level.
 */
#define PREFDIS_AGGREGATION_SATISFICING 1

/**
 * Result of every fallible call.
 */
typedef enum PrefdisStatus {
  PREFDIS_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  PREFDIS_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  PREFDIS_STATUS_INVALID_UTF8 = 2,
  /**
   * The record JSON failed to parse or validate.
   */
  PREFDIS_STATUS_PARSE_ERROR = 3,
  /**
   * A value was out of range or inconsistent with the game.
   */
  PREFDIS_STATUS_INVALID_ARGUMENT = 4,
  /**
   * The game violates a structural precondition.
   */
  PREFDIS_STATUS_INVALID_CONFIGURATION = 5,
  /**
   * The operation is not supported for this game shape.
   */
  PREFDIS_STATUS_UNSUPPORTED = 6,
  /**
   * The requested concept has no solution.
   */
  PREFDIS_STATUS_NO_SOLUTION = 7,
  PREFDIS_STATUS_IO_ERROR = 8,
  /**
   * The interval set is empty and has no representative.
   */
  PREFDIS_STATUS_EMPTY_SET = 9,
  /**
   * An index was past the end of the collection.
   */
  PREFDIS_STATUS_INDEX_OUT_OF_RANGE = 10,
} PrefdisStatus;

/**
 * Opaque handle to an estimated parameter set.
 */
typedef struct PrefdisIntervalSet PrefdisIntervalSet;

/**
 * Opaque handle to one parsed observation record.
 */
typedef struct PrefdisRecord PrefdisRecord;

/**
 * One interval of the estimated set, with endpoint closedness flags.
 */
typedef struct PrefdisInterval {
  double lo;
  double hi;
  bool lo_closed;
  bool hi_closed;
} PrefdisInterval;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread, or an empty
 * string after a success. The pointer is valid until the next call.
 */
const char *prefdis_last_error_message(void);

/**
 * Parses one observation record from a JSON line (the dataset row format).
 *
 * On success stores a new handle in `out`; free it with
 * [`prefdis_record_free`].
 *
 * # Safety
 * `json` must point to a NUL-terminated string and `out` to a writable slot.
 */
enum PrefdisStatus prefdis_record_parse(const char *json, struct PrefdisRecord **out);

/**
 * Releases a record handle. Passing null is a no-op.
 *
 * # Safety
 * `record` must be null or a pointer returned by [`prefdis_record_parse`]
 * that has not been freed yet.
 */
void prefdis_record_free(struct PrefdisRecord *record);

/**
 * Number of players in the record's game.
 *
 * # Safety
 * `record` must be a live handle and `out` a writable slot.
 */
enum PrefdisStatus prefdis_record_player_count(const struct PrefdisRecord *record, size_t *out);

/**
 * Index of the player whose parameter is being estimated.
 *
 * # Safety
 * `record` must be a live handle and `out` a writable slot.
 */
enum PrefdisStatus prefdis_record_focal_player(const struct PrefdisRecord *record, size_t *out);

/**
 * The focal player's observed action index.
 *
 * # Safety
 * `record` must be a live handle and `out` a writable slot.
 */
enum PrefdisStatus prefdis_record_observed_action(const struct PrefdisRecord *record, size_t *out);

/**
 * Estimates the rationalisable parameter set of the record's focal player.
 *
 * `model` is one of the `PREFDIS_MODEL_*` codes, `aggregation` one of the
 * `PREFDIS_AGGREGATION_*` codes. On success stores a new handle in `out`;
 * free it with [`prefdis_interval_set_free`].
 *
 * # Safety
 * `record` must be a live handle and `out` a writable slot.
 */
enum PrefdisStatus prefdis_estimate(const struct PrefdisRecord *record,
                                    uint32_t model,
                                    uint32_t aggregation,
                                    struct PrefdisIntervalSet **out);

/**
 * Releases an interval-set handle. Passing null is a no-op.
 *
 * # Safety
 * `set` must be null or a pointer returned by [`prefdis_estimate`] that has
 * not been freed yet.
 */
void prefdis_interval_set_free(struct PrefdisIntervalSet *set);

/**
 * Number of disjoint intervals in the set.
 *
 * # Safety
 * `set` must be a live handle and `out` a writable slot.
 */
enum PrefdisStatus prefdis_interval_set_len(const struct PrefdisIntervalSet *set, size_t *out);

/**
 * Copies the interval at `index` (sorted ascending) into `out`.
 *
 * # Safety
 * `set` must be a live handle and `out` a writable slot.
 */
enum PrefdisStatus prefdis_interval_set_get(const struct PrefdisIntervalSet *set,
                                            size_t index,
                                            struct PrefdisInterval *out);

/**
 * Whether the parameter value `x` lies in the set.
 *
 * # Safety
 * `set` must be a live handle and `out` a writable slot.
 */
enum PrefdisStatus prefdis_interval_set_contains(const struct PrefdisIntervalSet *set,
                                                 double x,
                                                 bool *out);

/**
 * Total length of the set (sum of interval widths).
 *
 * # Safety
 * `set` must be a live handle and `out` a writable slot.
 */
enum PrefdisStatus prefdis_interval_set_measure(const struct PrefdisIntervalSet *set, double *out);

/**
 * Midpoint of the widest interval: the set's point summary.
 *
 * Returns [`PrefdisStatus::EmptySet`] when the set is empty.
 *
 * # Safety
 * `set` must be a live handle and `out` a writable slot.
 */
enum PrefdisStatus prefdis_interval_set_representative(const struct PrefdisIntervalSet *set,
                                                       double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PREFDIS_H */
