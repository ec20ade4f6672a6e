//! C interface. Presentations are opaque handles; every fallible call
//! returns a [`DkStatus`] and leaves a message for
//! [`dk_last_error_message`]. Strings handed out must be released with
//! [`dk_string_free`], handles with [`dk_presentation_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dehnkit::format::{format_presentation, parse_presentation, parse_word};
use dehnkit::magnus::{descend, DescendOptions};
use dehnkit::oracle::{hom_count, Budget};
use dehnkit::query::{descent_json, result_json, wp, Answer};
use dehnkit::tietze::simplify;
use dehnkit::{classify_torsion, surface_presentation, Presentation, TorsionClassification};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DkStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    Unsupported = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DkVerdict {
    Trivial = 0,
    Nontrivial = 1,
    Unknown = 2,
}

/// Torsion classification of a one-relator presentation.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DkTorsion {
    Torsion = 0,
    TorsionFree = 1,
    NotOneRelator = 2,
}

pub struct DkPresentation {
    inner: Presentation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(DkStatus, String);

type FfiResult<T> = Result<T, Failure>;

fn guard(f: impl FnOnce() -> FfiResult<()>) -> DkStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DkStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            DkStatus::Panic
        }
    }
}

unsafe fn c_str<'a>(s: *const c_char, what: &str) -> FfiResult<&'a str> {
    if s.is_null() {
        return Err(Failure(DkStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure(DkStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(p: *const DkPresentation) -> FfiResult<&'a Presentation> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| Failure(DkStatus::NullArgument, "presentation is null".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(Failure(DkStatus::NullArgument, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

fn new_handle(p: Presentation) -> *mut DkPresentation {
    Box::into_raw(Box::new(DkPresentation { inner: p }))
}

/// The message left by the last failed call on this thread, or null. The
/// pointer stays valid until the next call into the library.
#[no_mangle]
pub extern "C" fn dk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn dk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse presentation file text (`generators:` and `relator:` lines).
///
/// # Safety
/// `text` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dk_presentation_parse(text: *const c_char, out: *mut *mut DkPresentation) -> DkStatus {
    guard(|| {
        let t = c_str(text, "text")?;
        let p = parse_presentation(t).map_err(|e| Failure(DkStatus::ParseError, e.to_string()))?;
        write_out(out, new_handle(p))
    })
}

/// The standard presentation of the closed orientable surface group.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_presentation_surface(genus: usize, out: *mut *mut DkPresentation) -> DkStatus {
    guard(|| {
        let p = surface_presentation(genus).map_err(|e| Failure(DkStatus::InvalidArgument, e.to_string()))?;
        write_out(out, new_handle(p))
    })
}

/// # Safety
/// `p` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dk_presentation_free(p: *mut DkPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dk_presentation_rank(p: *const DkPresentation, out: *mut usize) -> DkStatus {
    guard(|| write_out(out, handle(p)?.rank()))
}

/// File-format text of the presentation.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dk_presentation_format(p: *const DkPresentation, out: *mut *mut c_char) -> DkStatus {
    guard(|| write_out(out, c_string(format_presentation(handle(p)?))))
}

/// Torsion classification; `exponent` receives the relator's power (1 when
/// torsion-free, 0 when not one-relator).
///
/// # Safety
/// `p` must be a live handle; `kind` and `exponent` writable.
#[no_mangle]
pub unsafe extern "C" fn dk_classify(p: *const DkPresentation, kind: *mut DkTorsion, exponent: *mut u64) -> DkStatus {
    guard(|| {
        let (k, n) = match classify_torsion(handle(p)?) {
            TorsionClassification::Torsion { exponent, .. } => (DkTorsion::Torsion, exponent as u64),
            TorsionClassification::TorsionFree { .. } => (DkTorsion::TorsionFree, 1),
            TorsionClassification::NotOneRelator { .. } => (DkTorsion::NotOneRelator, 0),
        };
        write_out(kind, k)?;
        write_out(exponent, n)
    })
}

/// Decide whether `word` is trivial, with the default oracle budget.
///
/// # Safety
/// `p` must be a live handle, `word` a nul-terminated string and
/// `verdict` writable.
#[no_mangle]
pub unsafe extern "C" fn dk_word_problem(
    p: *const DkPresentation,
    word: *const c_char,
    verdict: *mut DkVerdict,
) -> DkStatus {
    guard(|| {
        let p = handle(p)?;
        let w = parse_word(c_str(word, "word")?, p.generators()).map_err(|e| Failure(DkStatus::ParseError, e.to_string()))?;
        let v = match wp(p, &w, &Budget::default()).answer {
            Answer::Trivial => DkVerdict::Trivial,
            Answer::Nontrivial => DkVerdict::Nontrivial,
            Answer::Unknown => DkVerdict::Unknown,
        };
        write_out(verdict, v)
    })
}

/// Like [`dk_word_problem`] but returns the full result (verdict, method,
/// trace, certificate) as JSON.
///
/// # Safety
/// As for [`dk_word_problem`]; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_word_problem_json(
    p: *const DkPresentation,
    word: *const c_char,
    out: *mut *mut c_char,
) -> DkStatus {
    guard(|| {
        let p = handle(p)?;
        let w = parse_word(c_str(word, "word")?, p.generators()).map_err(|e| Failure(DkStatus::ParseError, e.to_string()))?;
        let r = wp(p, &w, &Budget::default());
        write_out(out, c_string(result_json(&r, p).to_string()))
    })
}

/// Number of homomorphisms into the symmetric group of the given degree.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dk_hom_count(p: *const DkPresentation, degree: usize, out: *mut u64) -> DkStatus {
    guard(|| {
        let n = hom_count(handle(p)?, degree).map_err(|e| Failure(DkStatus::InvalidArgument, e.to_string()))?;
        write_out(out, n)
    })
}

/// Run the one-relator descent with default choices and return it as JSON.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dk_descend_json(p: *const DkPresentation, out: *mut *mut c_char) -> DkStatus {
    guard(|| {
        let t = descend(handle(p)?, &DescendOptions::default())
            .map_err(|e| Failure(DkStatus::Unsupported, e.to_string()))?;
        write_out(out, c_string(descent_json(&t, None).to_string()))
    })
}

/// Simplify by Tietze moves into a new handle.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dk_simplify(p: *const DkPresentation, out: *mut *mut DkPresentation) -> DkStatus {
    guard(|| {
        let (q, _) = simplify(handle(p)?);
        write_out(out, new_handle(q))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_arguments_are_reported() {
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { dk_presentation_parse(ptr::null(), &mut out) }, DkStatus::NullArgument);
        let msg = unsafe { CStr::from_ptr(dk_last_error_message()) };
        assert_eq!(msg.to_str().unwrap(), "text is null");
        let mut n = 0;
        assert_eq!(unsafe { dk_hom_count(ptr::null(), 2, &mut n) }, DkStatus::NullArgument);
    }
}
