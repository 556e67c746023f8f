//! C interface to the stirlab library.
//!
//! Conventions, uniformly applied:
//!
//! * Every fallible function returns a [`StirlabStatus`]; results travel
//!   through `out` pointers that are written only on `Ok`.
//! * Exact values cross the boundary as NUL-terminated decimal strings
//!   (`"65"`, `"9/32"`), or as opaque [`StirlabRational`] handles when the
//!   caller needs to feed them back in.
//! * Strings returned through `out` parameters are owned by the caller and
//!   must be released with [`stirlab_string_free`]; handles with
//!   [`stirlab_rational_free`].  [`stirlab_version`] returns a static
//!   string that must not be freed.
//! * On any non-`Ok` status, [`stirlab_last_error_message`] returns a
//!   thread-local description of what went wrong, valid until the next
//!   failing call on the same thread.
//!
//! The matching header is generated into `include/stirlab.h` at build
//! time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use stirlab::commands::StirlingMethod;
use stirlab::exact::{format_rational, parse_rational, rat_to_f64, Rat};
use stirlab::poly;
use stirlab::sim::{self, SimConfig};
use stirlab::stirling::RECORD_TUPLE_CAP;
use stirlab::suite::GridSpec;
use stirlab::Error;

/// Result of every fallible call in this interface.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StirlabStatus {
    /// The call succeeded and every `out` parameter is filled in.
    Ok = 0,
    /// The arguments are outside the mathematical domain of the operation.
    DomainError = 1,
    /// The computation would enumerate more objects than its cap allows.
    BoundExceeded = 2,
    /// A library invariant broke (or a panic was caught); this is a bug.
    InternalError = 3,
    /// A required pointer argument was NULL.
    NullPointer = 4,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 5,
}

/// Opaque handle to an exact rational number.
pub struct StirlabRational {
    value: Rat,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(CString::new(text).expect("NUL bytes were replaced"));
    });
}

fn fail(status: StirlabStatus, message: impl Into<String>) -> StirlabStatus {
    set_last_error(message);
    status
}

fn status_of(err: &Error) -> StirlabStatus {
    match err {
        Error::Domain(_) => StirlabStatus::DomainError,
        Error::BoundExceeded { .. } => StirlabStatus::BoundExceeded,
        Error::Internal(_) => StirlabStatus::InternalError,
    }
}

/// Run `body` with panics converted to `InternalError` — nothing may
/// unwind across the C boundary.
fn guarded(body: impl FnOnce() -> StirlabStatus) -> StirlabStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(panic) => {
            let message = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic with a non-string payload".to_string());
            fail(
                StirlabStatus::InternalError,
                format!("caught panic: {message}"),
            )
        }
    }
}

/// # Safety
/// `ptr` must be NULL or a valid NUL-terminated string.
unsafe fn read_utf8<'a>(ptr: *const c_char) -> Result<&'a str, StirlabStatus> {
    if ptr.is_null() {
        return Err(fail(
            StirlabStatus::NullPointer,
            "a string argument was NULL",
        ));
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().map_err(|_| {
        fail(
            StirlabStatus::InvalidUtf8,
            "a string argument was not UTF-8",
        )
    })
}

fn write_string(out: *mut *mut c_char, text: String) -> StirlabStatus {
    debug_assert!(!out.is_null(), "checked by every caller");
    let c_text = CString::new(text.replace('\0', " ")).expect("NUL bytes were replaced");
    unsafe { *out = c_text.into_raw() };
    StirlabStatus::Ok
}

fn write_rational(out: *mut *mut StirlabRational, value: Rat) -> StirlabStatus {
    debug_assert!(!out.is_null(), "checked by every caller");
    let handle = Box::new(StirlabRational { value });
    unsafe { *out = Box::into_raw(handle) };
    StirlabStatus::Ok
}

/// # Safety
/// `handle` must be a live pointer returned by this library.
unsafe fn read_rational<'a>(handle: *const StirlabRational) -> Result<&'a Rat, StirlabStatus> {
    if handle.is_null() {
        return Err(fail(
            StirlabStatus::NullPointer,
            "a rational handle was NULL",
        ));
    }
    Ok(unsafe { &(*handle).value })
}

/// Library version as a static string.  Do not free.
#[no_mangle]
pub extern "C" fn stirlab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Description of the most recent failure on this thread, or NULL if no
/// call has failed yet.  The pointer stays valid until the next failing
/// call on the same thread.  Do not free.
#[no_mangle]
pub extern "C" fn stirlab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |s| s.as_ptr())
    })
}

/// Release a string returned through an `out` parameter.
///
/// # Safety
/// `s` must be NULL or a string obtained from this library, freed at most
/// once.
#[no_mangle]
pub unsafe extern "C" fn stirlab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parse an exact rational from text such as `"4"`, `"-7/3"`, or `"9/32"`.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stirlab_rational_parse(
    text: *const c_char,
    out: *mut *mut StirlabRational,
) -> StirlabStatus {
    guarded(|| {
        if out.is_null() {
            return fail(StirlabStatus::NullPointer, "out was NULL");
        }
        let text = match unsafe { read_utf8(text) } {
            Ok(t) => t,
            Err(status) => return status,
        };
        match parse_rational(text) {
            Ok(value) => write_rational(out, value),
            Err(err) => fail(status_of(&err), err.to_string()),
        }
    })
}

/// Wrap an integer as a rational handle.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stirlab_rational_from_int(
    value: i64,
    out: *mut *mut StirlabRational,
) -> StirlabStatus {
    guarded(|| {
        if out.is_null() {
            return fail(StirlabStatus::NullPointer, "out was NULL");
        }
        write_rational(out, stirlab::exact::rat_int(value))
    })
}

/// Render a rational handle as text (`"65"`, `"9/32"`).
///
/// # Safety
/// `value` must be a live handle and `out` a valid pointer.  Free the
/// result with [`stirlab_string_free`].
#[no_mangle]
pub unsafe extern "C" fn stirlab_rational_to_string(
    value: *const StirlabRational,
    out: *mut *mut c_char,
) -> StirlabStatus {
    guarded(|| {
        if out.is_null() {
            return fail(StirlabStatus::NullPointer, "out was NULL");
        }
        match unsafe { read_rational(value) } {
            Ok(r) => write_string(out, format_rational(r)),
            Err(status) => status,
        }
    })
}

/// Approximate a rational handle as a double.
///
/// # Safety
/// `value` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stirlab_rational_to_double(
    value: *const StirlabRational,
    out: *mut f64,
) -> StirlabStatus {
    guarded(|| {
        if out.is_null() {
            return fail(StirlabStatus::NullPointer, "out was NULL");
        }
        match unsafe { read_rational(value) } {
            Ok(r) => {
                unsafe { *out = rat_to_f64(r) };
                StirlabStatus::Ok
            }
            Err(status) => status,
        }
    })
}

/// Release a rational handle.
///
/// # Safety
/// `value` must be NULL or a handle obtained from this library, freed at
/// most once.
#[no_mangle]
pub unsafe extern "C" fn stirlab_rational_free(value: *mut StirlabRational) {
    if !value.is_null() {
        drop(unsafe { Box::from_raw(value) });
    }
}

/// Compute the partition count `S(n, d)` as a decimal string.
///
/// `method` selects the route by its wire name — `"oracle"`,
/// `"recurrence"`, `"euler"`, `"record"`, `"record-dp"`, or `"duality"` —
/// and NULL runs `"record-dp"`, the route that scales best.
///
/// # Safety
/// `method` must be NULL or a valid NUL-terminated string; `out` must be a
/// valid pointer.  Free the result with [`stirlab_string_free`].
#[no_mangle]
pub unsafe extern "C" fn stirlab_stirling(
    n: u32,
    d: u32,
    method: *const c_char,
    out: *mut *mut c_char,
) -> StirlabStatus {
    guarded(|| {
        if out.is_null() {
            return fail(StirlabStatus::NullPointer, "out was NULL");
        }
        let method = if method.is_null() {
            StirlingMethod::RecordDp
        } else {
            let name = match unsafe { read_utf8(method) } {
                Ok(t) => t,
                Err(status) => return status,
            };
            match StirlingMethod::from_str(name) {
                Ok(m) => m,
                Err(message) => return fail(StirlabStatus::DomainError, message),
            }
        };
        // Route through the same dispatcher the CLI uses so both surfaces
        // stay in lockstep.
        let outcome = stirlab::commands::run_stirling(&stirlab::commands::StirlingArgs {
            n,
            d,
            method: Some(method),
            max_enum: None,
        });
        match outcome {
            Ok(outcome) => {
                let value = outcome.envelope.rows()[0][3]
                    .as_str()
                    .expect("the value column is always a string")
                    .to_string();
                write_string(out, value)
            }
            Err(err) => fail(status_of(&err), err.to_string()),
        }
    })
}

/// Exact probability that `n` throws cover all `d` boxes when each box is
/// hit with probability `1/x` (alternating-sum route).
///
/// # Safety
/// `x` must be a live handle and `out` a valid pointer.  Free the result
/// with [`stirlab_rational_free`].
#[no_mangle]
pub unsafe extern "C" fn stirlab_coverage_probability(
    n: u32,
    d: u32,
    x: *const StirlabRational,
    out: *mut *mut StirlabRational,
) -> StirlabStatus {
    guarded(|| {
        if out.is_null() {
            return fail(StirlabStatus::NullPointer, "out was NULL");
        }
        let x = match unsafe { read_rational(x) } {
            Ok(r) => r,
            Err(status) => return status,
        };
        match sim::exact_prob_incl_excl(n, d, x) {
            Ok(p) => write_rational(out, p),
            Err(err) => fail(status_of(&err), err.to_string()),
        }
    })
}

/// Exact coverage probability via the record-route tuple sum — a genuinely
/// independent second route, useful for cross-checking.
///
/// # Safety
/// Same contract as [`stirlab_coverage_probability`].
#[no_mangle]
pub unsafe extern "C" fn stirlab_coverage_probability_record(
    n: u32,
    d: u32,
    x: *const StirlabRational,
    out: *mut *mut StirlabRational,
) -> StirlabStatus {
    guarded(|| {
        if out.is_null() {
            return fail(StirlabStatus::NullPointer, "out was NULL");
        }
        let x = match unsafe { read_rational(x) } {
            Ok(r) => r,
            Err(status) => return status,
        };
        match sim::exact_prob_record_times(n, d, x, RECORD_TUPLE_CAP) {
            Ok(p) => write_rational(out, p),
            Err(err) => fail(status_of(&err), err.to_string()),
        }
    })
}

/// The normalized alternating difference `g(x) / x^n` at an exact point.
///
/// # Safety
/// Same contract as [`stirlab_coverage_probability`].
#[no_mangle]
pub unsafe extern "C" fn stirlab_kappa(
    d: u32,
    n: u32,
    x: *const StirlabRational,
    out: *mut *mut StirlabRational,
) -> StirlabStatus {
    guarded(|| {
        if out.is_null() {
            return fail(StirlabStatus::NullPointer, "out was NULL");
        }
        let x = match unsafe { read_rational(x) } {
            Ok(r) => r,
            Err(status) => return status,
        };
        match poly::kappa(d, n, x) {
            Ok(v) => write_rational(out, v),
            Err(err) => fail(status_of(&err), err.to_string()),
        }
    })
}

/// The normalized tuple sum `f(x) / x^n` at an exact point; equal to
/// [`stirlab_kappa`] everywhere both are defined.
///
/// # Safety
/// Same contract as [`stirlab_coverage_probability`].
#[no_mangle]
pub unsafe extern "C" fn stirlab_rho(
    d: u32,
    n: u32,
    x: *const StirlabRational,
    out: *mut *mut StirlabRational,
) -> StirlabStatus {
    guarded(|| {
        if out.is_null() {
            return fail(StirlabStatus::NullPointer, "out was NULL");
        }
        let x = match unsafe { read_rational(x) } {
            Ok(r) => r,
            Err(status) => return status,
        };
        match poly::rho(d, n, x, RECORD_TUPLE_CAP) {
            Ok(v) => write_rational(out, v),
            Err(err) => fail(status_of(&err), err.to_string()),
        }
    })
}

/// Monte Carlo estimate of the coverage probability.  The outcome is a
/// pure function of `(n, d, x, trials, seed)` — thread count never changes
/// it.  `out_hits` may be NULL if only the estimate is wanted.
///
/// # Safety
/// `x` must be a live handle; `out_estimate` must be valid; `out_hits`
/// must be NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn stirlab_simulate(
    n: u32,
    d: u32,
    x: *const StirlabRational,
    trials: u64,
    seed: u64,
    out_estimate: *mut f64,
    out_hits: *mut u64,
) -> StirlabStatus {
    guarded(|| {
        if out_estimate.is_null() {
            return fail(StirlabStatus::NullPointer, "out_estimate was NULL");
        }
        let x = match unsafe { read_rational(x) } {
            Ok(r) => r,
            Err(status) => return status,
        };
        let cfg = SimConfig {
            n,
            d,
            x: x.clone(),
            trials,
            seed,
        };
        match sim::simulate(&cfg) {
            Ok(result) => {
                unsafe { *out_estimate = result.estimate };
                if !out_hits.is_null() {
                    unsafe { *out_hits = result.hits };
                }
                StirlabStatus::Ok
            }
            Err(err) => fail(status_of(&err), err.to_string()),
        }
    })
}

/// Run the full identity suite over a grid and return the verify document
/// as JSON (the same document the command-line tool prints).  The status
/// reports whether the suite *ran*; read `results.all_pass` inside the
/// document for the verdict.
///
/// # Safety
/// `out` must be a valid pointer.  Free the result with
/// [`stirlab_string_free`].
#[no_mangle]
pub unsafe extern "C" fn stirlab_verify_json(
    n_max: u32,
    trials: u64,
    seed: u64,
    out: *mut *mut c_char,
) -> StirlabStatus {
    guarded(|| {
        if out.is_null() {
            return fail(StirlabStatus::NullPointer, "out was NULL");
        }
        let args = stirlab::commands::VerifyArgs {
            grid: GridSpec {
                n_max,
                trials,
                seed,
                ..GridSpec::default()
            },
            only: None,
        };
        match stirlab::commands::run_verify(&args) {
            Ok(outcome) => write_string(out, outcome.envelope.without_timing().to_json()),
            Err(err) => fail(status_of(&err), err.to_string()),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;
    use std::ptr;

    fn c(text: &str) -> CString {
        CString::new(text).unwrap()
    }

    unsafe fn own_string(ptr: *mut c_char) -> String {
        let text = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
        unsafe { stirlab_string_free(ptr) };
        text
    }

    #[test]
    fn version_is_a_static_string() {
        let ptr = stirlab_version();
        assert!(!ptr.is_null());
        let text = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap();
        assert_eq!(text, env!("CARGO_PKG_VERSION"));
    }

    #[test]
    fn rational_handles_round_trip() {
        unsafe {
            let mut handle: *mut StirlabRational = ptr::null_mut();
            let text = c("-9/32");
            assert_eq!(
                stirlab_rational_parse(text.as_ptr(), &mut handle),
                StirlabStatus::Ok
            );
            let mut rendered: *mut c_char = ptr::null_mut();
            assert_eq!(
                stirlab_rational_to_string(handle, &mut rendered),
                StirlabStatus::Ok
            );
            assert_eq!(own_string(rendered), "-9/32");
            let mut approx = 0.0f64;
            assert_eq!(
                stirlab_rational_to_double(handle, &mut approx),
                StirlabStatus::Ok
            );
            assert!((approx + 0.28125).abs() < 1e-12);
            stirlab_rational_free(handle);
        }
    }

    #[test]
    fn parse_rejects_bad_input_with_a_message() {
        unsafe {
            let mut handle: *mut StirlabRational = ptr::null_mut();
            let text = c("1/0");
            assert_eq!(
                stirlab_rational_parse(text.as_ptr(), &mut handle),
                StirlabStatus::DomainError
            );
            assert!(handle.is_null(), "out is untouched on failure");
            let message = stirlab_last_error_message();
            assert!(!message.is_null());
            let message = CStr::from_ptr(message).to_str().unwrap();
            assert!(message.contains("denominator"), "{message}");
        }
    }

    #[test]
    fn stirling_routes_agree_across_the_boundary() {
        unsafe {
            for method in [None, Some("euler"), Some("record"), Some("duality")] {
                let method_text = method.map(c);
                let method_ptr = method_text.as_ref().map_or(ptr::null(), |m| m.as_ptr());
                let mut value: *mut c_char = ptr::null_mut();
                assert_eq!(
                    stirlab_stirling(6, 4, method_ptr, &mut value),
                    StirlabStatus::Ok,
                    "method {method:?}"
                );
                assert_eq!(own_string(value), "65", "method {method:?}");
            }
        }
    }

    #[test]
    fn stirling_rejects_unknown_methods_and_bad_domains() {
        unsafe {
            let mut value: *mut c_char = ptr::null_mut();
            let bogus = c("bogus");
            assert_eq!(
                stirlab_stirling(6, 4, bogus.as_ptr(), &mut value),
                StirlabStatus::DomainError
            );
            let record = c("record");
            assert_eq!(
                stirlab_stirling(4, 6, record.as_ptr(), &mut value),
                StirlabStatus::DomainError
            );
            assert_eq!(
                stirlab_stirling(6, 4, ptr::null(), ptr::null_mut()),
                StirlabStatus::NullPointer
            );
        }
    }

    #[test]
    fn probability_routes_agree_across_the_boundary() {
        unsafe {
            let mut x: *mut StirlabRational = ptr::null_mut();
            assert_eq!(stirlab_rational_from_int(4, &mut x), StirlabStatus::Ok);

            let mut by_sum: *mut StirlabRational = ptr::null_mut();
            let mut by_record: *mut StirlabRational = ptr::null_mut();
            assert_eq!(
                stirlab_coverage_probability(3, 2, x, &mut by_sum),
                StirlabStatus::Ok
            );
            assert_eq!(
                stirlab_coverage_probability_record(3, 2, x, &mut by_record),
                StirlabStatus::Ok
            );

            let mut lhs: *mut c_char = ptr::null_mut();
            let mut rhs: *mut c_char = ptr::null_mut();
            assert_eq!(
                stirlab_rational_to_string(by_sum, &mut lhs),
                StirlabStatus::Ok
            );
            assert_eq!(
                stirlab_rational_to_string(by_record, &mut rhs),
                StirlabStatus::Ok
            );
            assert_eq!(own_string(lhs), "9/32");
            assert_eq!(own_string(rhs), "9/32");

            let mut kappa_out: *mut StirlabRational = ptr::null_mut();
            let mut rho_out: *mut StirlabRational = ptr::null_mut();
            assert_eq!(stirlab_kappa(2, 3, x, &mut kappa_out), StirlabStatus::Ok);
            assert_eq!(stirlab_rho(2, 3, x, &mut rho_out), StirlabStatus::Ok);
            assert_eq!((*kappa_out).value, (*rho_out).value);

            for handle in [x, by_sum, by_record, kappa_out, rho_out] {
                stirlab_rational_free(handle);
            }
        }
    }

    #[test]
    fn simulate_is_deterministic_across_the_boundary() {
        unsafe {
            let mut x: *mut StirlabRational = ptr::null_mut();
            assert_eq!(stirlab_rational_from_int(4, &mut x), StirlabStatus::Ok);
            let run = |seed: u64| -> (f64, u64) {
                let mut estimate = 0.0f64;
                let mut hits = 0u64;
                assert_eq!(
                    stirlab_simulate(3, 2, x, 100_000, seed, &mut estimate, &mut hits),
                    StirlabStatus::Ok
                );
                (estimate, hits)
            };
            let first = run(9);
            let second = run(9);
            assert_eq!(first, second);
            assert!((first.0 - 9.0 / 32.0).abs() < 0.02);
            stirlab_rational_free(x);
        }
    }

    #[test]
    fn simulate_rejects_out_of_domain_models() {
        unsafe {
            let mut x: *mut StirlabRational = ptr::null_mut();
            assert_eq!(stirlab_rational_from_int(1, &mut x), StirlabStatus::Ok);
            let mut estimate = 0.0f64;
            // x < d violates the model.
            assert_eq!(
                stirlab_simulate(3, 2, x, 1000, 0, &mut estimate, ptr::null_mut()),
                StirlabStatus::DomainError
            );
            stirlab_rational_free(x);
        }
    }

    #[test]
    fn verify_json_parses_and_passes() {
        unsafe {
            let mut text: *mut c_char = ptr::null_mut();
            assert_eq!(
                stirlab_verify_json(3, 65_536, 0, &mut text),
                StirlabStatus::Ok
            );
            let text = own_string(text);
            let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
            assert_eq!(doc["results"]["all_pass"], serde_json::Value::Bool(true));
            assert!(
                doc.get("timing_ms").is_none(),
                "the C surface is reproducible"
            );
        }
    }
}
