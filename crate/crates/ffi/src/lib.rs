//! C ABI over the subideal engine.
//!
//! Sequences and ideals are opaque handles created by the `*_parse`
//! functions and released with the matching `*_free`. Every fallible call
//! returns a [`SubidealStatus`]; on failure, [`subideal_last_error`] gives a
//! message for the calling thread. Strings handed out by the library must be
//! released with [`subideal_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::c_char;
use subideal::{classify_principal, is_soft, member, parse_ideal, parse_seq, EngineConfig, Error, IdealDesc, Outcome, SeqExpr};

/// Opaque sequence expression.
pub struct SubidealSeq(SeqExpr);

/// Opaque ideal description.
pub struct SubidealIdeal(IdealDesc);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubidealStatus {
    Ok = 0,
    NullPointer = 1,
    Syntax = 2,
    Domain = 3,
    Precondition = 4,
    Argument = 5,
    Utf8 = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubidealOutcome {
    Yes = 0,
    No = 1,
    Unknown = 2,
}

impl From<Outcome> for SubidealOutcome {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::Yes => SubidealOutcome::Yes,
            Outcome::No => SubidealOutcome::No,
            Outcome::Unknown => SubidealOutcome::Unknown,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: SubidealStatus, msg: &str) -> SubidealStatus {
    set_error(msg);
    status
}

fn from_error(e: &Error) -> SubidealStatus {
    let status = match e {
        Error::Domain(_) => SubidealStatus::Domain,
        Error::Syntax { .. } => SubidealStatus::Syntax,
        Error::Precondition(_) => SubidealStatus::Precondition,
        Error::Argument(_) => SubidealStatus::Argument,
    };
    fail(status, &e.to_string())
}

fn guard(f: impl FnOnce() -> SubidealStatus) -> SubidealStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(SubidealStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, SubidealStatus> {
    if text.is_null() {
        return Err(fail(SubidealStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(text).to_str().map_err(|_| fail(SubidealStatus::Utf8, "input is not valid UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> SubidealStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            SubidealStatus::Ok
        }
        Err(_) => fail(SubidealStatus::Utf8, "output contains a nul byte"),
    }
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn subideal_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a sequence expression such as `amp(2,pow(1))`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subideal_seq_parse(text: *const c_char, out: *mut *mut SubidealSeq) -> SubidealStatus {
    guard(|| {
        if out.is_null() {
            return fail(SubidealStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_seq(text) {
            Ok(e) => {
                *out = Box::into_raw(Box::new(SubidealSeq(e)));
                SubidealStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `seq` must come from [`subideal_seq_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn subideal_seq_free(seq: *mut SubidealSeq) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// Parses an ideal description such as `prod(prin(pow(1)),KH)`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subideal_ideal_parse(text: *const c_char, out: *mut *mut SubidealIdeal) -> SubidealStatus {
    guard(|| {
        if out.is_null() {
            return fail(SubidealStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_ideal(text) {
            Ok(i) => {
                *out = Box::into_raw(Box::new(SubidealIdeal(i)));
                SubidealStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `ideal` must come from [`subideal_ideal_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn subideal_ideal_free(ideal: *mut SubidealIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// Canonical text form of a sequence; free with [`subideal_string_free`].
///
/// # Safety
/// `seq` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subideal_seq_render(seq: *const SubidealSeq, out: *mut *mut c_char) -> SubidealStatus {
    guard(|| {
        if seq.is_null() || out.is_null() {
            return fail(SubidealStatus::NullPointer, "null argument");
        }
        write_string(out, (*seq).0.to_string())
    })
}

/// Decides whether `diag(seq)` lies in `ideal`.
///
/// # Safety
/// `seq` and `ideal` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subideal_member(
    seq: *const SubidealSeq,
    ideal: *const SubidealIdeal,
    out: *mut SubidealOutcome,
) -> SubidealStatus {
    guard(|| {
        if seq.is_null() || ideal.is_null() || out.is_null() {
            return fail(SubidealStatus::NullPointer, "null argument");
        }
        *out = member(&(*seq).0, &(*ideal).0, &EngineConfig::default()).outcome().into();
        SubidealStatus::Ok
    })
}

/// Decides whether the principal ideal generated by `seq` is soft in
/// `ideal`. On Yes, `*k_out` receives the ampliation order of the witness
/// (0 otherwise); `k_out` may be NULL.
///
/// # Safety
/// `seq` and `ideal` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subideal_is_soft(
    seq: *const SubidealSeq,
    ideal: *const SubidealIdeal,
    out: *mut SubidealOutcome,
    k_out: *mut u64,
) -> SubidealStatus {
    guard(|| {
        if seq.is_null() || ideal.is_null() || out.is_null() {
            return fail(SubidealStatus::NullPointer, "null argument");
        }
        match is_soft(&(*seq).0, &(*ideal).0, &EngineConfig::default()) {
            Ok(res) => {
                *out = res.outcome().into();
                if !k_out.is_null() {
                    *k_out = res.witness_detail.as_ref().map_or(0, |w| w.k);
                }
                SubidealStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Subideal classification report as JSON; free with
/// [`subideal_string_free`].
///
/// # Safety
/// `seq` and `ideal` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subideal_classify_json(
    seq: *const SubidealSeq,
    ideal: *const SubidealIdeal,
    out: *mut *mut c_char,
) -> SubidealStatus {
    guard(|| {
        if seq.is_null() || ideal.is_null() || out.is_null() {
            return fail(SubidealStatus::NullPointer, "null argument");
        }
        match classify_principal(&(*seq).0, &(*ideal).0, &EngineConfig::default()) {
            Ok(report) => match subideal::cli::report_json(&report) {
                Some(s) => write_string(out, s),
                None => fail(SubidealStatus::Panic, "report serialization failed"),
            },
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn subideal_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
