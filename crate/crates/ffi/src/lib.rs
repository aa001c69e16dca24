//! C interface to `cubicomp`.
//!
//! Every fallible function returns a [`CubicStatus`]; on failure a
//! message is available from [`cubic_last_error`] on the same thread.
//! Objects are opaque handles released with their `*_free` function and
//! strings returned through `char **` are released with
//! [`cubic_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cubicomp::classgroup::{enumerate_classes, equivalent, identity_form, EquivalenceVerdict, SearchLimits};
use cubicomp::composition::{compose, verify_composition, BilinearMap, CompositionResult};
use cubicomp::{form_to_pair, json, CubicForm, Discriminant, Error, Unimodular};
use num::{BigInt, ToPrimitive};

/// Result codes for every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubicStatus {
    Ok = 0,
    NullPointer = 1,
    ParseError = 2,
    InvalidDiscriminant = 3,
    DiscriminantMismatch = 4,
    NotProjective = 5,
    NotUnimodular = 6,
    UnbalancedPair = 7,
    ClassNotFound = 8,
    Overflow = 9,
    InternalError = 10,
}

/// A validated discriminant.
pub struct CubicDisc(Discriminant);

/// A binary cubic form `(a0, a1, a2, a3)` in the triplicate convention.
pub struct CubicFormHandle(CubicForm);

/// The result of composing two forms.
pub struct CubicComposition(CompositionResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> CubicStatus {
    match e {
        Error::InvalidDiscriminant { .. } => CubicStatus::InvalidDiscriminant,
        Error::DiscriminantMismatch { .. } => CubicStatus::DiscriminantMismatch,
        Error::NotUnimodular(_) => CubicStatus::NotUnimodular,
        Error::NotProjective(_) => CubicStatus::NotProjective,
        Error::UnbalancedPair(_) | Error::DegenerateBasis | Error::NotAnIdeal | Error::NotInModule(_) => {
            CubicStatus::UnbalancedPair
        }
        Error::ClassNotFound(_) => CubicStatus::ClassNotFound,
        Error::Parse(_) => CubicStatus::ParseError,
        Error::DivisionByZero | Error::Internal(_) => CubicStatus::InternalError,
    }
}

struct Failure(CubicStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(CubicStatus::NullPointer, format!("{what} is NULL"))
}

/// Runs `body`, recording any error or panic.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> CubicStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => CubicStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside cubicomp");
            CubicStatus::InternalError
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(CubicStatus::ParseError, format!("{what} is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(CubicStatus::InternalError, "string contains NUL".into()))?;
    write_out(out, c.into_raw(), "out")
}

fn to_i64(n: &BigInt) -> Result<i64, Failure> {
    n.to_i64()
        .ok_or_else(|| Failure(CubicStatus::Overflow, format!("{n} does not fit in 64 bits")))
}

unsafe fn write_i64s(out: *mut i64, values: &[BigInt; 4]) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let v: Vec<i64> = values.iter().map(to_i64).collect::<Result<_, _>>()?;
    ptr::copy_nonoverlapping(v.as_ptr(), out, 4);
    Ok(())
}

unsafe fn read_i64s(p: *const i64, what: &str) -> Result<[BigInt; 4], Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    let s = std::slice::from_raw_parts(p, 4);
    Ok(std::array::from_fn(|i| BigInt::from(s[i])))
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cubic_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cubic_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a decimal discriminant.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cubic_disc_new(text: *const c_char, out: *mut *mut CubicDisc) -> CubicStatus {
    guard(|| {
        let d: Discriminant = read_str(text, "text")?.parse()?;
        write_out(out, boxed(CubicDisc(d)), "out")
    })
}

/// # Safety
/// `d` must come from [`cubic_disc_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cubic_disc_free(d: *mut CubicDisc) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Parses `"a0,a1,a2,a3"` (triplicate convention) or `{"a":[...]}`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cubic_form_parse(text: *const c_char, out: *mut *mut CubicFormHandle) -> CubicStatus {
    guard(|| {
        let text = read_str(text, "text")?.trim();
        let f = if text.starts_with('{') {
            json::parse_form(text)?
        } else {
            text.parse()?
        };
        write_out(out, boxed(CubicFormHandle(f)), "out")
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cubic_form_from_i64(
    a0: i64,
    a1: i64,
    a2: i64,
    a3: i64,
    out: *mut *mut CubicFormHandle,
) -> CubicStatus {
    guard(|| write_out(out, boxed(CubicFormHandle(CubicForm::from_i64(a0, a1, a2, a3))), "out"))
}

/// # Safety
/// `f` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cubic_form_free(f: *mut CubicFormHandle) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Writes the four coefficients, failing with `Overflow` if any exceeds 64 bits.
///
/// # Safety
/// `f` must be a live handle; `out` must have room for 4 values.
#[no_mangle]
pub unsafe extern "C" fn cubic_form_coefficients(f: *const CubicFormHandle, out: *mut i64) -> CubicStatus {
    guard(|| write_i64s(out, &deref(f, "f")?.0.a))
}

/// `"a0,a1,a2,a3"`.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cubic_form_to_string(f: *const CubicFormHandle, out: *mut *mut c_char) -> CubicStatus {
    guard(|| write_string(out, deref(f, "f")?.0.to_string()))
}

/// Decimal discriminant of any form.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cubic_form_discriminant(f: *const CubicFormHandle, out: *mut *mut c_char) -> CubicStatus {
    guard(|| write_string(out, deref(f, "f")?.0.discriminant().to_string()))
}

/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cubic_form_is_projective(f: *const CubicFormHandle, out: *mut bool) -> CubicStatus {
    guard(|| write_out(out, deref(f, "f")?.0.is_projective(), "out"))
}

/// The covariant as `"c0,c1,c2,c3"` with exact halves such as `-1/2`.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cubic_form_covariant(f: *const CubicFormHandle, out: *mut *mut c_char) -> CubicStatus {
    guard(|| write_string(out, deref(f, "f")?.0.covariant().to_string()))
}

/// `f(px + qy, rx + sy)`; the matrix must have determinant 1.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cubic_form_act(
    f: *const CubicFormHandle,
    p: i64,
    q: i64,
    r: i64,
    s: i64,
    out: *mut *mut CubicFormHandle,
) -> CubicStatus {
    guard(|| {
        let g = Unimodular::from_i64(p, q, r, s)?;
        let h = deref(f, "f")?.0.act(&g);
        write_out(out, boxed(CubicFormHandle(h)), "out")
    })
}

/// The balanced pair of a projective form, as JSON
/// `{"ideal":{"alpha":..,"beta":..},"delta":..,"signed_norm":..}`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cubic_form_to_pair_json(
    f: *const CubicFormHandle,
    disc: *const CubicDisc,
    out: *mut *mut c_char,
) -> CubicStatus {
    guard(|| {
        let pair = form_to_pair(&deref(f, "f")?.0, &deref(disc, "disc")?.0)?;
        write_string(out, json::render(&json::pair(&pair)))
    })
}

/// # Safety
/// `disc` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cubic_identity_form(disc: *const CubicDisc, out: *mut *mut CubicFormHandle) -> CubicStatus {
    guard(|| {
        let f = identity_form(&deref(disc, "disc")?.0);
        write_out(out, boxed(CubicFormHandle(f)), "out")
    })
}

/// Composes two projective forms of discriminant `disc`. The result has
/// already passed symbolic verification.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cubic_compose(
    disc: *const CubicDisc,
    f1: *const CubicFormHandle,
    f2: *const CubicFormHandle,
    out: *mut *mut CubicComposition,
) -> CubicStatus {
    guard(|| {
        let r = compose(&deref(f1, "f1")?.0, &deref(f2, "f2")?.0, &deref(disc, "disc")?.0)?;
        write_out(out, boxed(CubicComposition(r)), "out")
    })
}

/// # Safety
/// `c` must come from [`cubic_compose`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cubic_composition_free(c: *mut CubicComposition) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// A new handle holding the composite form `P`.
///
/// # Safety
/// `c` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cubic_composition_form(
    c: *const CubicComposition,
    out: *mut *mut CubicFormHandle,
) -> CubicStatus {
    guard(|| write_out(out, boxed(CubicFormHandle(deref(c, "c")?.0.form.clone())), "out"))
}

/// The bilinear coefficients `m1..m4` of `X` and `n1..n4` of `Y`.
///
/// # Safety
/// `c` must be live; `m` and `n` must each have room for 4 values.
#[no_mangle]
pub unsafe extern "C" fn cubic_composition_bilinear(
    c: *const CubicComposition,
    m: *mut i64,
    n: *mut i64,
) -> CubicStatus {
    guard(|| {
        let c = deref(c, "c")?;
        write_i64s(m, &c.0.xy.m)?;
        write_i64s(n, &c.0.xy.n)
    })
}

/// `{"P":{"a":[..]},"X":[..],"Y":[..],"verified":true}`.
///
/// # Safety
/// `c` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cubic_composition_to_json(c: *const CubicComposition, out: *mut *mut c_char) -> CubicStatus {
    guard(|| write_string(out, json::render(&json::composition(&deref(c, "c")?.0))))
}

/// Checks `P(X, Y) = p1' p2 + p1 p2'` for `X = sum m_i (..)`, `Y = sum n_i (..)`.
///
/// # Safety
/// Handles must be live; `m`, `n` must point to 4 values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cubic_verify(
    f1: *const CubicFormHandle,
    f2: *const CubicFormHandle,
    p: *const CubicFormHandle,
    m: *const i64,
    n: *const i64,
    out: *mut bool,
) -> CubicStatus {
    guard(|| {
        let xy = BilinearMap::new(read_i64s(m, "m")?, read_i64s(n, "n")?);
        let ok = verify_composition(&deref(f1, "f1")?.0, &deref(f2, "f2")?.0, &deref(p, "p")?.0, &xy);
        write_out(out, ok, "out")
    })
}

/// Bounded search for `g` with `f1 . g = f2`. `depth = 0` selects the
/// default. On success `*found` is true and `witness` holds `p, q, r, s`;
/// otherwise `*found` is false, which does not prove inequivalence.
///
/// # Safety
/// Handles must be live; `found` writable; `witness` room for 4 values.
#[no_mangle]
pub unsafe extern "C" fn cubic_equivalent(
    f1: *const CubicFormHandle,
    f2: *const CubicFormHandle,
    depth: u32,
    found: *mut bool,
    witness: *mut i64,
) -> CubicStatus {
    guard(|| {
        let limits = if depth == 0 {
            SearchLimits::default()
        } else {
            SearchLimits::with_depth(depth as usize)
        };
        match equivalent(&deref(f1, "f1")?.0, &deref(f2, "f2")?.0, &limits)? {
            EquivalenceVerdict::Equivalent(g) => {
                let [p, q, r, s] = g.entries();
                write_i64s(witness, &[p.clone(), q.clone(), r.clone(), s.clone()])?;
                write_out(found, true, "found")
            }
            EquivalenceVerdict::NotFoundWithinBound { .. } => write_out(found, false, "found"),
        }
    })
}

/// Enumerates classes with `|a_i| <= bound` and returns the table as
/// `{"D":..,"reps":[..],"identity":i,"table":[[..]]}`. `depth = 0` selects
/// the default search depth.
///
/// # Safety
/// `disc` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cubic_classes_json(
    disc: *const CubicDisc,
    bound: u32,
    depth: u32,
    out: *mut *mut c_char,
) -> CubicStatus {
    guard(|| {
        let limits = if depth == 0 {
            SearchLimits::default()
        } else {
            SearchLimits::with_depth(depth as usize)
        };
        let t = enumerate_classes(&deref(disc, "disc")?.0, bound, &limits)?;
        write_string(out, json::render(&json::class_table(&t)))
    })
}
