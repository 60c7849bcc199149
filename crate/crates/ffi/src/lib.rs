//! C ABI over the core estimators.
//!
//! Records and interval sets are opaque handles created and destroyed here;
//! every fallible call returns a [`PrefdisStatus`] and stores a
//! human-readable message retrievable with [`prefdis_last_error_message`].
//! Handles are not thread-safe; the error message is thread-local and valid
//! until the next `prefdis_*` call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use prefdis_core::game::Aggregation;
use prefdis_core::interval::IntervalSet;
use prefdis_core::pipeline::{estimate_record, read_dataset, ObservationRecord};
use prefdis_core::solvers::EstimableModel;
use prefdis_core::Error;

/// Strategic model: the observed profile is a pure Nash equilibrium.
pub const PREFDIS_MODEL_NASH: u32 = 0;
/// Non-strategic model: the observed action maximizes the best case.
pub const PREFDIS_MODEL_MAXMAX: u32 = 1;
/// Non-strategic model: the observed action maximizes the worst case.
pub const PREFDIS_MODEL_MAXMIN: u32 = 2;

/// Weighted aggregation; the estimated parameter is the safety weight.
pub const PREFDIS_AGGREGATION_WEIGHTED: u32 = 0;
/// Satisficing aggregation; the estimated parameter is the aspiration level.
pub const PREFDIS_AGGREGATION_SATISFICING: u32 = 1;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrefdisStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The record JSON failed to parse or validate.
    ParseError = 3,
    /// A value was out of range or inconsistent with the game.
    InvalidArgument = 4,
    /// The game violates a structural precondition.
    InvalidConfiguration = 5,
    /// The operation is not supported for this game shape.
    Unsupported = 6,
    /// The requested concept has no solution.
    NoSolution = 7,
    IoError = 8,
    /// The interval set is empty and has no representative.
    EmptySet = 9,
    /// An index was past the end of the collection.
    IndexOutOfRange = 10,
}

/// One interval of the estimated set, with endpoint closedness flags.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrefdisInterval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

/// Opaque handle to one parsed observation record.
pub struct PrefdisRecord(ObservationRecord);

/// Opaque handle to an estimated parameter set.
pub struct PrefdisIntervalSet(IntervalSet);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn clear_error() {
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::default();
    });
}

fn fail(error: &Error) -> PrefdisStatus {
    set_error(&error.to_string());
    match error {
        Error::InvalidArgument(_) => PrefdisStatus::InvalidArgument,
        Error::UnsupportedConfiguration(_) => PrefdisStatus::Unsupported,
        Error::InvalidConfiguration(_) => PrefdisStatus::InvalidConfiguration,
        Error::NoSolution(_) => PrefdisStatus::NoSolution,
        Error::Dataset { .. } => PrefdisStatus::ParseError,
        Error::Io(_) => PrefdisStatus::IoError,
    }
}

fn null_pointer() -> PrefdisStatus {
    set_error("null pointer argument");
    PrefdisStatus::NullPointer
}

fn model_from(code: u32) -> Result<EstimableModel, PrefdisStatus> {
    match code {
        PREFDIS_MODEL_NASH => Ok(EstimableModel::Nash),
        PREFDIS_MODEL_MAXMAX => Ok(EstimableModel::Maxmax),
        PREFDIS_MODEL_MAXMIN => Ok(EstimableModel::Maxmin),
        _ => {
            set_error(&format!("unknown model code {code}"));
            Err(PrefdisStatus::InvalidArgument)
        }
    }
}

fn aggregation_from(code: u32) -> Result<Aggregation, PrefdisStatus> {
    match code {
        PREFDIS_AGGREGATION_WEIGHTED => Ok(Aggregation::Weighted),
        PREFDIS_AGGREGATION_SATISFICING => Ok(Aggregation::Satisficing),
        _ => {
            set_error(&format!("unknown aggregation code {code}"));
            Err(PrefdisStatus::InvalidArgument)
        }
    }
}

/// Message describing the most recent failure on this thread, or an empty
/// string after a success. The pointer is valid until the next call.
#[no_mangle]
pub extern "C" fn prefdis_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parses one observation record from a JSON line (the dataset row format).
///
/// On success stores a new handle in `out`; free it with
/// [`prefdis_record_free`].
///
/// # Safety
/// `json` must point to a NUL-terminated string and `out` to a writable slot.
#[no_mangle]
pub unsafe extern "C" fn prefdis_record_parse(
    json: *const c_char,
    out: *mut *mut PrefdisRecord,
) -> PrefdisStatus {
    clear_error();
    if json.is_null() || out.is_null() {
        return null_pointer();
    }
    unsafe { *out = ptr::null_mut() };
    let text = match unsafe { CStr::from_ptr(json) }.to_str() {
        Ok(text) => text,
        Err(_) => {
            set_error("record JSON is not valid UTF-8");
            return PrefdisStatus::InvalidUtf8;
        }
    };
    match read_dataset(text.as_bytes()) {
        Ok(mut records) if records.len() == 1 => {
            let handle = Box::new(PrefdisRecord(records.remove(0)));
            unsafe { *out = Box::into_raw(handle) };
            PrefdisStatus::Ok
        }
        Ok(records) => {
            set_error(&format!("expected exactly one record, got {}", records.len()));
            PrefdisStatus::InvalidArgument
        }
        Err(error) => fail(&error),
    }
}

/// Releases a record handle. Passing null is a no-op.
///
/// # Safety
/// `record` must be null or a pointer returned by [`prefdis_record_parse`]
/// that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn prefdis_record_free(record: *mut PrefdisRecord) {
    if !record.is_null() {
        drop(unsafe { Box::from_raw(record) });
    }
}

/// Number of players in the record's game.
///
/// # Safety
/// `record` must be a live handle and `out` a writable slot.
#[no_mangle]
pub unsafe extern "C" fn prefdis_record_player_count(
    record: *const PrefdisRecord,
    out: *mut usize,
) -> PrefdisStatus {
    clear_error();
    if record.is_null() || out.is_null() {
        return null_pointer();
    }
    unsafe { *out = (*record).0.game.player_count() };
    PrefdisStatus::Ok
}

/// Index of the player whose parameter is being estimated.
///
/// # Safety
/// `record` must be a live handle and `out` a writable slot.
#[no_mangle]
pub unsafe extern "C" fn prefdis_record_focal_player(
    record: *const PrefdisRecord,
    out: *mut usize,
) -> PrefdisStatus {
    clear_error();
    if record.is_null() || out.is_null() {
        return null_pointer();
    }
    unsafe { *out = (*record).0.focal_player };
    PrefdisStatus::Ok
}

/// The focal player's observed action index.
///
/// # Safety
/// `record` must be a live handle and `out` a writable slot.
#[no_mangle]
pub unsafe extern "C" fn prefdis_record_observed_action(
    record: *const PrefdisRecord,
    out: *mut usize,
) -> PrefdisStatus {
    clear_error();
    if record.is_null() || out.is_null() {
        return null_pointer();
    }
    unsafe { *out = (*record).0.observed_action() };
    PrefdisStatus::Ok
}

/// Estimates the rationalisable parameter set of the record's focal player.
///
/// `model` is one of the `PREFDIS_MODEL_*` codes, `aggregation` one of the
/// `PREFDIS_AGGREGATION_*` codes. On success stores a new handle in `out`;
/// free it with [`prefdis_interval_set_free`].
///
/// # Safety
/// `record` must be a live handle and `out` a writable slot.
#[no_mangle]
pub unsafe extern "C" fn prefdis_estimate(
    record: *const PrefdisRecord,
    model: u32,
    aggregation: u32,
    out: *mut *mut PrefdisIntervalSet,
) -> PrefdisStatus {
    clear_error();
    if record.is_null() || out.is_null() {
        return null_pointer();
    }
    unsafe { *out = ptr::null_mut() };
    let model = match model_from(model) {
        Ok(model) => model,
        Err(status) => return status,
    };
    let aggregation = match aggregation_from(aggregation) {
        Ok(aggregation) => aggregation,
        Err(status) => return status,
    };
    match estimate_record(unsafe { &(*record).0 }, model, aggregation) {
        Ok(set) => {
            unsafe { *out = Box::into_raw(Box::new(PrefdisIntervalSet(set))) };
            PrefdisStatus::Ok
        }
        Err(error) => fail(&error),
    }
}

/// Releases an interval-set handle. Passing null is a no-op.
///
/// # Safety
/// `set` must be null or a pointer returned by [`prefdis_estimate`] that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn prefdis_interval_set_free(set: *mut PrefdisIntervalSet) {
    if !set.is_null() {
        drop(unsafe { Box::from_raw(set) });
    }
}

/// Number of disjoint intervals in the set.
///
/// # Safety
/// `set` must be a live handle and `out` a writable slot.
#[no_mangle]
pub unsafe extern "C" fn prefdis_interval_set_len(
    set: *const PrefdisIntervalSet,
    out: *mut usize,
) -> PrefdisStatus {
    clear_error();
    if set.is_null() || out.is_null() {
        return null_pointer();
    }
    unsafe { *out = (*set).0.intervals().len() };
    PrefdisStatus::Ok
}

/// Copies the interval at `index` (sorted ascending) into `out`.
///
/// # Safety
/// `set` must be a live handle and `out` a writable slot.
#[no_mangle]
pub unsafe extern "C" fn prefdis_interval_set_get(
    set: *const PrefdisIntervalSet,
    index: usize,
    out: *mut PrefdisInterval,
) -> PrefdisStatus {
    clear_error();
    if set.is_null() || out.is_null() {
        return null_pointer();
    }
    let intervals = unsafe { (*set).0.intervals() };
    let Some(interval) = intervals.get(index) else {
        set_error(&format!("index {index} out of range for {} intervals", intervals.len()));
        return PrefdisStatus::IndexOutOfRange;
    };
    unsafe {
        *out = PrefdisInterval {
            lo: interval.lo,
            hi: interval.hi,
            lo_closed: interval.lo_closed,
            hi_closed: interval.hi_closed,
        };
    }
    PrefdisStatus::Ok
}

/// Whether the parameter value `x` lies in the set.
///
/// # Safety
/// `set` must be a live handle and `out` a writable slot.
#[no_mangle]
pub unsafe extern "C" fn prefdis_interval_set_contains(
    set: *const PrefdisIntervalSet,
    x: f64,
    out: *mut bool,
) -> PrefdisStatus {
    clear_error();
    if set.is_null() || out.is_null() {
        return null_pointer();
    }
    unsafe { *out = (*set).0.contains(x) };
    PrefdisStatus::Ok
}

/// Total length of the set (sum of interval widths).
///
/// # Safety
/// `set` must be a live handle and `out` a writable slot.
#[no_mangle]
pub unsafe extern "C" fn prefdis_interval_set_measure(
    set: *const PrefdisIntervalSet,
    out: *mut f64,
) -> PrefdisStatus {
    clear_error();
    if set.is_null() || out.is_null() {
        return null_pointer();
    }
    unsafe { *out = (*set).0.measure() };
    PrefdisStatus::Ok
}

/// Midpoint of the widest interval: the set's point summary.
///
/// Returns [`PrefdisStatus::EmptySet`] when the set is empty.
///
/// # Safety
/// `set` must be a live handle and `out` a writable slot.
#[no_mangle]
pub unsafe extern "C" fn prefdis_interval_set_representative(
    set: *const PrefdisIntervalSet,
    out: *mut f64,
) -> PrefdisStatus {
    clear_error();
    if set.is_null() || out.is_null() {
        return null_pointer();
    }
    match unsafe { (*set).0.representative() } {
        Some(value) => {
            unsafe { *out = value };
            PrefdisStatus::Ok
        }
        None => {
            set_error("interval set is empty");
            PrefdisStatus::EmptySet
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    use prefdis_core::game::{MultiObjectiveGame, StrategyProfile};
    use prefdis_core::pipeline::write_dataset;
    use prefdis_core::tree::{FeatureRecord, Scenario};

    fn turning_record_json() -> CString {
        let cells = [
            [[0.5, 0.1], [0.3, 0.4]],
            [[0.8, 0.1], [0.6, -0.2]],
            [[-0.9, 1.0], [-0.7, 0.6]],
            [[0.2, -0.5], [0.0, 0.3]],
        ];
        let game = MultiObjectiveGame::from_fn(
            vec!["safety".into(), "progress".into()],
            vec![
                vec!["wait".into(), "turn".into()],
                vec!["uphold".into(), "deviate".into()],
            ],
            vec![Some(0), Some(0)],
            |player, profile| cells[profile.action(0) * 2 + profile.action(1)][player].to_vec(),
        )
        .unwrap();
        let record = ObservationRecord {
            id: "turning".into(),
            game,
            focal_player: 0,
            observed: StrategyProfile::new(vec![0, 0]),
            features: FeatureRecord {
                velocity: 1.0,
                scenario: Scenario::Intersection,
                task: "left-turn".into(),
                model: String::new(),
            },
        };
        let mut buffer = Vec::new();
        write_dataset(&mut buffer, std::slice::from_ref(&record)).unwrap();
        CString::new(buffer).unwrap()
    }

    fn last_error() -> String {
        unsafe { CStr::from_ptr(prefdis_last_error_message()) }
            .to_str()
            .unwrap()
            .to_string()
    }

    fn parse(json: &CStr) -> *mut PrefdisRecord {
        let mut record = ptr::null_mut();
        let status = unsafe { prefdis_record_parse(json.as_ptr(), &mut record) };
        assert_eq!(status, PrefdisStatus::Ok, "{}", last_error());
        assert!(!record.is_null());
        record
    }

    #[test]
    fn estimates_the_golden_record_through_the_c_abi() {
        let json = turning_record_json();
        let record = parse(&json);

        let mut players = 0usize;
        assert_eq!(
            unsafe { prefdis_record_player_count(record, &mut players) },
            PrefdisStatus::Ok
        );
        assert_eq!(players, 2);
        let mut action = usize::MAX;
        assert_eq!(
            unsafe { prefdis_record_observed_action(record, &mut action) },
            PrefdisStatus::Ok
        );
        assert_eq!(action, 0);

        let mut set = ptr::null_mut();
        let status = unsafe {
            prefdis_estimate(record, PREFDIS_MODEL_NASH, PREFDIS_AGGREGATION_WEIGHTED, &mut set)
        };
        assert_eq!(status, PrefdisStatus::Ok, "{}", last_error());

        let mut len = 0usize;
        assert_eq!(unsafe { prefdis_interval_set_len(set, &mut len) }, PrefdisStatus::Ok);
        assert_eq!(len, 1);

        let mut interval = PrefdisInterval { lo: 0.0, hi: 0.0, lo_closed: false, hi_closed: false };
        assert_eq!(
            unsafe { prefdis_interval_set_get(set, 0, &mut interval) },
            PrefdisStatus::Ok
        );
        assert!((interval.lo - 9.0 / 23.0).abs() < 1e-9);
        assert!((interval.hi - 1.0).abs() < 1e-9);
        assert!(interval.lo_closed && interval.hi_closed);

        let mut inside = false;
        assert_eq!(
            unsafe { prefdis_interval_set_contains(set, 0.5, &mut inside) },
            PrefdisStatus::Ok
        );
        assert!(inside);
        assert_eq!(
            unsafe { prefdis_interval_set_contains(set, 0.1, &mut inside) },
            PrefdisStatus::Ok
        );
        assert!(!inside);

        let mut representative = f64::NAN;
        assert_eq!(
            unsafe { prefdis_interval_set_representative(set, &mut representative) },
            PrefdisStatus::Ok
        );
        assert!((representative - (9.0 / 23.0 + 1.0) / 2.0).abs() < 1e-9);

        let mut measure = f64::NAN;
        assert_eq!(
            unsafe { prefdis_interval_set_measure(set, &mut measure) },
            PrefdisStatus::Ok
        );
        assert!((measure - (1.0 - 9.0 / 23.0)).abs() < 1e-9);

        assert_eq!(
            unsafe { prefdis_interval_set_get(set, 1, &mut interval) },
            PrefdisStatus::IndexOutOfRange
        );
        assert!(last_error().contains("out of range"));

        unsafe {
            prefdis_interval_set_free(set);
            prefdis_record_free(record);
        }
    }

    #[test]
    fn satisficing_estimates_keep_endpoint_closedness() {
        let json = turning_record_json();
        let record = parse(&json);
        let mut set = ptr::null_mut();
        let status = unsafe {
            prefdis_estimate(
                record,
                PREFDIS_MODEL_MAXMAX,
                PREFDIS_AGGREGATION_SATISFICING,
                &mut set,
            )
        };
        assert_eq!(status, PrefdisStatus::Ok, "{}", last_error());

        let mut len = 0usize;
        assert_eq!(unsafe { prefdis_interval_set_len(set, &mut len) }, PrefdisStatus::Ok);
        assert_eq!(len, 2);
        let mut interval = PrefdisInterval { lo: 0.0, hi: 0.0, lo_closed: false, hi_closed: false };
        assert_eq!(
            unsafe { prefdis_interval_set_get(set, 0, &mut interval) },
            PrefdisStatus::Ok
        );
        assert!((interval.lo + 0.9).abs() < 1e-9);
        assert!((interval.hi - 0.2).abs() < 1e-9);
        assert!(interval.lo_closed);
        assert!(!interval.hi_closed);

        unsafe {
            prefdis_interval_set_free(set);
            prefdis_record_free(record);
        }
    }

    #[test]
    fn failures_set_status_and_message() {
        let mut record = ptr::null_mut();
        assert_eq!(
            unsafe { prefdis_record_parse(ptr::null(), &mut record) },
            PrefdisStatus::NullPointer
        );
        assert!(!last_error().is_empty());

        let bad = CString::new("{not json").unwrap();
        assert_eq!(
            unsafe { prefdis_record_parse(bad.as_ptr(), &mut record) },
            PrefdisStatus::ParseError
        );
        assert!(last_error().contains("line 1"), "{}", last_error());
        assert!(record.is_null());

        let json = turning_record_json();
        let record = parse(&json);
        let mut set = ptr::null_mut();
        assert_eq!(
            unsafe { prefdis_estimate(record, 99, PREFDIS_AGGREGATION_WEIGHTED, &mut set) },
            PrefdisStatus::InvalidArgument
        );
        assert!(last_error().contains("model code 99"));
        assert!(set.is_null());

        unsafe { prefdis_record_free(record) };
        unsafe {
            prefdis_record_free(ptr::null_mut());
            prefdis_interval_set_free(ptr::null_mut());
        }
    }

    #[test]
    fn generated_header_covers_the_surface() {
        let header = include_str!("../include/prefdis.h");
        for needle in [
            "PREFDIS_H",
            "PrefdisStatus",
            "PrefdisInterval",
            "PrefdisRecord",
            "PrefdisIntervalSet",
            "prefdis_record_parse",
            "prefdis_record_free",
            "prefdis_estimate",
            "prefdis_interval_set_len",
            "prefdis_interval_set_get",
            "prefdis_interval_set_representative",
            "prefdis_interval_set_free",
            "prefdis_last_error_message",
            "PREFDIS_MODEL_NASH",
            "PREFDIS_AGGREGATION_SATISFICING",
        ] {
            assert!(header.contains(needle), "header is missing {needle}");
        }
    }
}
