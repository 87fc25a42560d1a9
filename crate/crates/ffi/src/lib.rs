//! C ABI over the `mcsusy` engine.
//!
//! Values cross the boundary as opaque handles (`McFunction`, `McSystem`)
//! created and released by this library. Every fallible call returns an
//! [`McStatus`]; on failure, [`mc_last_error_message`] describes the error
//! on the calling thread. Strings returned through out-parameters are owned
//! by the caller and released with [`mc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use mcsusy::jc::{self, Example, JcSystem};
use mcsusy::star::{poisson_bracket, HbarMode, Moyal, PhaseSpaceFunction};
use mcsusy::susy::{SusyInputs, SusySystem};
use mcsusy::Error;

/// Result codes. `MC_STATUS_OK` is zero; every other value is an error.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum McStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    ConditionViolated = 4,
    Envelope = 5,
    NotRealValued = 6,
    IndexOutOfRange = 7,
    Unsupported = 8,
    InvalidArgument = 9,
    Internal = 10,
    Panic = 11,
}

/// Arithmetic mode: `MC_HBAR_FORMAL` keeps ħ symbolic, `MC_HBAR_ONE` sets ħ = 1.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum McHbar {
    Formal = 0,
    One = 1,
}

impl McHbar {
    fn moyal(self) -> Moyal {
        Moyal::new(match self {
            McHbar::Formal => HbarMode::Formal,
            McHbar::One => HbarMode::One,
        })
    }
}

/// Opaque phase-space function.
pub struct McFunction(PhaseSpaceFunction);

enum SystemKind {
    General(Box<SusySystem>),
    Example(Box<JcSystem>),
}

/// Opaque SUSY system built from four input functions or an example.
pub struct McSystem(SystemKind);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn status_of(e: &Error) -> McStatus {
    match e {
        Error::Parse { .. } | Error::UnknownKey { .. } | Error::BadExpression { .. } => McStatus::Parse,
        Error::ConditionViolated(_) => McStatus::ConditionViolated,
        Error::VacuumSquareOutsideIntegral
        | Error::NonTerminatingStar
        | Error::EnvelopeUnsupported
        | Error::EnvelopeInFormalMode
        | Error::EnvelopeMismatch
        | Error::DivergentIntegral => McStatus::Envelope,
        Error::NotRealValued(_) => McStatus::NotRealValued,
        Error::IndexOutOfRange(_) => McStatus::IndexOutOfRange,
        Error::UnsupportedK | Error::HbarFixedMode | Error::SingularLimit => McStatus::Unsupported,
        Error::BadKArgument { .. }
        | Error::InvalidArgument(_)
        | Error::NonInvertible(_)
        | Error::DimensionMismatch(..)
        | Error::Io(_) => McStatus::InvalidArgument,
        Error::InternalMismatch(_) => McStatus::Internal,
    }
}

/// Runs `body`, converting errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), McStatus>) -> McStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => McStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_last_error("panic inside mcsusy");
            McStatus::Panic
        }
    }
}

fn fail(e: Error) -> McStatus {
    set_last_error(&e.to_string());
    status_of(&e)
}

fn null(what: &str) -> McStatus {
    set_last_error(&format!("{what} is null"));
    McStatus::NullPointer
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, McStatus> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_last_error(&format!("{what} is not valid UTF-8"));
        McStatus::InvalidUtf8
    })
}

unsafe fn read_function<'a>(f: *const McFunction, what: &str) -> Result<&'a PhaseSpaceFunction, McStatus> {
    f.as_ref().map(|f| &f.0).ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), McStatus> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_function(out: *mut *mut McFunction, f: PhaseSpaceFunction) -> Result<(), McStatus> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(Box::into_raw(Box::new(McFunction(f))));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), McStatus> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| {
        set_last_error("string contains an interior NUL");
        McStatus::Internal
    })?;
    out.write(c.into_raw());
    Ok(())
}

fn example_of(n: u8) -> Result<Example, McStatus> {
    Example::from_number(i64::from(n)).map_err(fail)
}

/// Message for the most recent failure on this thread, or an empty string.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an expression such as `"q1*p2 - q2*p1"`.
///
/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_function_parse(src: *const c_char, out: *mut *mut McFunction) -> McStatus {
    guard(|| {
        let src = read_str(src, "src")?;
        let f = mcsusy::expr::parse(src).map_err(fail)?;
        write_function(out, f)
    })
}

/// Releases a function handle. Null is ignored.
///
/// # Safety
/// `f` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mc_function_free(f: *mut McFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// `*out = a ⋆ b`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_function_star(
    mode: McHbar,
    a: *const McFunction,
    b: *const McFunction,
    out: *mut *mut McFunction,
) -> McStatus {
    guard(|| {
        let (a, b) = (read_function(a, "a")?, read_function(b, "b")?);
        let f = mode.moyal().star(a, b).map_err(fail)?;
        write_function(out, f)
    })
}

/// `*out = a ⋆ b − b ⋆ a`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_function_bracket(
    mode: McHbar,
    a: *const McFunction,
    b: *const McFunction,
    out: *mut *mut McFunction,
) -> McStatus {
    guard(|| {
        let (a, b) = (read_function(a, "a")?, read_function(b, "b")?);
        let f = mode.moyal().bracket(a, b).map_err(fail)?;
        write_function(out, f)
    })
}

/// `*out = {a, b}`, the Poisson bracket.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_function_poisson(
    a: *const McFunction,
    b: *const McFunction,
    out: *mut *mut McFunction,
) -> McStatus {
    guard(|| {
        let (a, b) = (read_function(a, "a")?, read_function(b, "b")?);
        let f = poisson_bracket(a, b).map_err(fail)?;
        write_function(out, f)
    })
}

/// Renders `f` in the expression grammar accepted by [`mc_function_parse`].
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_function_to_string(f: *const McFunction, out: *mut *mut c_char) -> McStatus {
    guard(|| {
        let f = read_function(f, "f")?;
        write_string(out, f.to_string())
    })
}

/// Serializes `f` as its JSON term list.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_function_to_json(f: *const McFunction, out: *mut *mut c_char) -> McStatus {
    guard(|| {
        let f = read_function(f, "f")?;
        let json = serde_json::to_string(f).map_err(|e| {
            set_last_error(&e.to_string());
            McStatus::Internal
        })?;
        write_string(out, json)
    })
}

/// `*out = 1` if `f` is exactly zero, else `0`.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_function_is_zero(f: *const McFunction, out: *mut bool) -> McStatus {
    guard(|| {
        let f = read_function(f, "f")?;
        write_out(out, f.is_zero())
    })
}

/// Builds a system from `W1, W2, P1, P2`. Fails with
/// `MC_STATUS_CONDITION_VIOLATED` when the nilpotency conditions do not hold.
///
/// # Safety
/// The four inputs must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_system_new(
    mode: McHbar,
    w1: *const McFunction,
    w2: *const McFunction,
    p1: *const McFunction,
    p2: *const McFunction,
    out: *mut *mut McSystem,
) -> McStatus {
    guard(|| {
        let inputs = SusyInputs::new(
            read_function(w1, "w1")?.clone(),
            read_function(w2, "w2")?.clone(),
            read_function(p1, "p1")?.clone(),
            read_function(p2, "p2")?.clone(),
        );
        let system = SusySystem::new(mode.moyal(), inputs).map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(McSystem(SystemKind::General(Box::new(system))))))
    })
}

/// Builds Example 1 or 2 (ħ = 1) with coupling `k`; null `k` means `K = 0`.
///
/// # Safety
/// `k` must be null or a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_system_example(example: u8, k: *const McFunction, out: *mut *mut McSystem) -> McStatus {
    guard(|| {
        let example = example_of(example)?;
        let k = k.as_ref().map_or_else(PhaseSpaceFunction::zero, |k| k.0.clone());
        let system = JcSystem::new(example, k).map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(McSystem(SystemKind::Example(Box::new(system))))))
    })
}

/// Releases a system handle. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mc_system_free(s: *mut McSystem) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Runs every applicable identity check. Writes the JSON report to `json`
/// and the number of failed checks to `failures`.
///
/// # Safety
/// `s` must be a live handle; `json` and `failures` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_system_verify_json(s: *const McSystem, json: *mut *mut c_char, failures: *mut usize) -> McStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("system"))?;
        let report = match &s.0 {
            SystemKind::General(sys) => sys.verify_all(),
            SystemKind::Example(jc) => jc.verify_all(),
        }
        .map_err(fail)?;
        write_out(failures, report.failures())?;
        write_string(json, report.to_json())
    })
}

/// Eigenvalue of the bare state `(j, n_a, n_b)` of an example with `K = 0`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_eigenvalue(example: u8, j: u8, n_a: u32, n_b: u32, out: *mut i64) -> McStatus {
    guard(|| {
        let example = example_of(example)?;
        let lambda = jc::eigenvalue(example, j, [n_a, n_b]).map_err(fail)?;
        write_out(out, lambda)
    })
}

/// Verifies the spectrum of an example with `K = 0` for indices up to
/// `n_max`. Writes the CSV table to `csv` and the failure count to `failures`.
///
/// # Safety
/// `csv` and `failures` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_verify_spectrum(
    example: u8,
    n_max: u32,
    csv: *mut *mut c_char,
    failures: *mut usize,
) -> McStatus {
    guard(|| {
        let example = example_of(example)?;
        let system = JcSystem::new(example, PhaseSpaceFunction::zero()).map_err(fail)?;
        let report = system.verify_spectrum(n_max).map_err(fail)?;
        write_out(failures, report.failures())?;
        write_string(csv, report.to_csv())
    })
}
