//! C interface to `vtl_core`.
//!
//! Elements and class tables are handed out as opaque heap handles that the
//! caller releases with the matching `*_free` function. Every fallible call
//! returns a [`VtlStatus`]; on failure a message is available from
//! [`vtl_last_error`] until the next failing call on the same thread.
//! Strings returned through `char **` outputs are owned by the caller and
//! released with [`vtl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use vtl_core::diagram::Generator;
use vtl_core::field::{parse_rational, FieldError};
use vtl_core::projector::{self, Construction};
use vtl_core::verify::{self, Options, Suite};
use vtl_core::{ClassTable, Element, Error};

/// Opaque element of the algebra over ℚ(d).
pub struct VtlElement(Element);

/// Opaque per-class coefficient table.
pub struct VtlClassTable(ClassTable);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VtlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    StrandMismatch = 3,
    Pole = 4,
    Parse = 5,
    NotClassUniform = 6,
    Internal = 7,
}

pub const VTL_FORM_EXPLICIT: u32 = 0;
pub const VTL_FORM_RECURSIVE: u32 = 1;
pub const VTL_FORM_SIMPLIFIED: u32 = 2;

pub const VTL_GEN_IDENTITY: u32 = 0;
pub const VTL_GEN_E: u32 = 1;
pub const VTL_GEN_V: u32 = 2;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> VtlStatus {
    match e {
        Error::StrandMismatch { .. } => VtlStatus::StrandMismatch,
        Error::TermPole { .. } | Error::Field(FieldError::Pole { .. }) => VtlStatus::Pole,
        Error::Field(FieldError::Parse(_)) => VtlStatus::Parse,
        Error::NotClassUniform { .. } => VtlStatus::NotClassUniform,
        _ => VtlStatus::InvalidArgument,
    }
}

struct Fail(VtlStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

impl From<FieldError> for Fail {
    fn from(e: FieldError) -> Self {
        Error::from(e).into()
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> VtlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => VtlStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            VtlStatus::Internal
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(VtlStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(VtlStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| Fail(VtlStatus::Internal, "string contains nul".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn construction(form: u32) -> Result<Construction, Fail> {
    match form {
        VTL_FORM_EXPLICIT => Ok(Construction::Explicit),
        VTL_FORM_RECURSIVE => Ok(Construction::Recursive),
        VTL_FORM_SIMPLIFIED => Ok(Construction::Simplified),
        other => Err(Fail(VtlStatus::InvalidArgument, format!("unknown construction {other}"))),
    }
}

fn json<T: serde::Serialize>(v: &T) -> Result<String, Fail> {
    serde_json::to_string(v).map_err(|e| Fail(VtlStatus::Internal, e.to_string()))
}

/// Message of the last failing call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn vtl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Projector `f_n` as a class table.
///
/// # Safety
/// `out` must be a valid pointer to write a handle to.
#[no_mangle]
pub unsafe extern "C" fn vtl_projector_table(n: u32, form: u32, out: *mut *mut VtlClassTable) -> VtlStatus {
    guard(|| {
        let t = projector::projector_table(n as usize, construction(form)?)?;
        put(out, VtlClassTable(t))
    })
}

/// Projector `f_n` as a full element.
///
/// # Safety
/// `out` must be a valid pointer to write a handle to.
#[no_mangle]
pub unsafe extern "C" fn vtl_projector_element(n: u32, form: u32, out: *mut *mut VtlElement) -> VtlStatus {
    guard(|| {
        let e = projector::projector_element(n as usize, construction(form)?)?;
        put(out, VtlElement((*e).clone()))
    })
}

/// Planar projector `P_n`.
///
/// # Safety
/// `out` must be a valid pointer to write a handle to.
#[no_mangle]
pub unsafe extern "C" fn vtl_jones_wenzl(n: u32, out: *mut *mut VtlElement) -> VtlStatus {
    guard(|| put(out, VtlElement(projector::jones_wenzl(n as usize)?)))
}

/// Generator on `n` strands: identity, `e_i` or `v_i` (`i` is 1-based and
/// ignored for the identity).
///
/// # Safety
/// `out` must be a valid pointer to write a handle to.
#[no_mangle]
pub unsafe extern "C" fn vtl_generator(n: u32, kind: u32, i: u32, out: *mut *mut VtlElement) -> VtlStatus {
    guard(|| {
        let g = match kind {
            VTL_GEN_IDENTITY => Generator::Identity,
            VTL_GEN_E => Generator::E(i as usize),
            VTL_GEN_V => Generator::V(i as usize),
            other => return Err(Fail(VtlStatus::InvalidArgument, format!("unknown generator kind {other}"))),
        };
        put(out, VtlElement(Element::generator(n as usize, g)?))
    })
}

/// `a * b` (a stacked above b).
///
/// # Safety
/// `a`, `b` must be live handles; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vtl_element_mul(
    a: *const VtlElement,
    b: *const VtlElement,
    out: *mut *mut VtlElement,
) -> VtlStatus {
    guard(|| {
        let (a, b) = (deref(a, "a")?, deref(b, "b")?);
        put(out, VtlElement(a.0.mul(&b.0)?))
    })
}

/// `a + b`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vtl_element_add(
    a: *const VtlElement,
    b: *const VtlElement,
    out: *mut *mut VtlElement,
) -> VtlStatus {
    guard(|| {
        let (a, b) = (deref(a, "a")?, deref(b, "b")?);
        put(out, VtlElement(a.0.add(&b.0)?))
    })
}

/// `a - b`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vtl_element_sub(
    a: *const VtlElement,
    b: *const VtlElement,
    out: *mut *mut VtlElement,
) -> VtlStatus {
    guard(|| {
        let (a, b) = (deref(a, "a")?, deref(b, "b")?);
        put(out, VtlElement(a.0.sub(&b.0)?))
    })
}

/// Writes 1 to `out` when the elements are equal, 0 otherwise.
///
/// # Safety
/// `a`, `b` must be live handles; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vtl_element_equal(a: *const VtlElement, b: *const VtlElement, out: *mut i32) -> VtlStatus {
    guard(|| {
        let (a, b) = (deref(a, "a")?, deref(b, "b")?);
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = i32::from(a.0 == b.0);
        Ok(())
    })
}

/// Number of stored terms and strand count.
///
/// # Safety
/// `a` must be a live handle; `terms`, `strands` valid pointers or null.
#[no_mangle]
pub unsafe extern "C" fn vtl_element_shape(a: *const VtlElement, terms: *mut usize, strands: *mut u32) -> VtlStatus {
    guard(|| {
        let a = deref(a, "a")?;
        if !terms.is_null() {
            *terms = a.0.len();
        }
        if !strands.is_null() {
            *strands = a.0.n() as u32;
        }
        Ok(())
    })
}

/// Markov trace as rational-function JSON `{"num": [...], "den": [...]}`,
/// coefficients listed from the constant term up.
///
/// # Safety
/// `a` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vtl_element_trace_json(a: *const VtlElement, out: *mut *mut c_char) -> VtlStatus {
    guard(|| {
        let a = deref(a, "a")?;
        put_string(out, json(&a.0.markov_trace())?)
    })
}

/// Markov trace specialized at `d` (given as `"p"` or `"p/q"`), written as a
/// reduced rational string.
///
/// # Safety
/// `a` must be a live handle; `d` a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vtl_element_trace_at(
    a: *const VtlElement,
    d: *const c_char,
    out: *mut *mut c_char,
) -> VtlStatus {
    guard(|| {
        let a = deref(a, "a")?;
        let v = parse_rational(text(d, "d")?)?;
        put_string(out, a.0.markov_trace().eval(&v)?.to_string())
    })
}

/// Element JSON `{"n", "terms": [{"partner", "coeff"}]}`.
///
/// # Safety
/// `a` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vtl_element_to_json(a: *const VtlElement, out: *mut *mut c_char) -> VtlStatus {
    guard(|| put_string(out, json(&deref(a, "a")?.0)?))
}

/// Parses element JSON.
///
/// # Safety
/// `s` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vtl_element_from_json(s: *const c_char, out: *mut *mut VtlElement) -> VtlStatus {
    guard(|| {
        let e: Element = serde_json::from_str(text(s, "json")?).map_err(|e| Fail(VtlStatus::Parse, e.to_string()))?;
        put(out, VtlElement(e))
    })
}

/// Numeric specialization at `d` as JSON `{"n", "terms": [{"partner", "coeff": "p/q"}]}`.
///
/// # Safety
/// `a` must be a live handle; `d` a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vtl_element_eval_json(
    a: *const VtlElement,
    d: *const c_char,
    out: *mut *mut c_char,
) -> VtlStatus {
    guard(|| {
        let a = deref(a, "a")?;
        let v = parse_rational(text(d, "d")?)?;
        let e = a.0.eval(&v)?;
        let terms: Vec<serde_json::Value> = e
            .terms()
            .map(|(d, c)| serde_json::json!({ "partner": d.partners(), "coeff": c.to_string() }))
            .collect();
        put_string(out, json(&serde_json::json!({ "n": e.n(), "terms": terms }))?)
    })
}

/// Compresses a class-uniform element.
///
/// # Safety
/// `a` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vtl_element_class_decompose(a: *const VtlElement, out: *mut *mut VtlClassTable) -> VtlStatus {
    guard(|| put(out, VtlClassTable(deref(a, "a")?.0.class_decompose()?)))
}

/// Expands a class table into a full element.
///
/// # Safety
/// `t` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vtl_table_expand(t: *const VtlClassTable, out: *mut *mut VtlElement) -> VtlStatus {
    guard(|| put(out, VtlElement(deref(t, "table")?.0.expand()?)))
}

/// Class table JSON `{"n", "coeffs": [{"l", "coeff"}]}`.
///
/// # Safety
/// `t` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vtl_table_to_json(t: *const VtlClassTable, out: *mut *mut c_char) -> VtlStatus {
    guard(|| put_string(out, json(&deref(t, "table")?.0)?))
}

/// Parses class table JSON.
///
/// # Safety
/// `s` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vtl_table_from_json(s: *const c_char, out: *mut *mut VtlClassTable) -> VtlStatus {
    guard(|| {
        let t: ClassTable = serde_json::from_str(text(s, "json")?).map_err(|e| Fail(VtlStatus::Parse, e.to_string()))?;
        put(out, VtlClassTable(t))
    })
}

/// One-line rendering such as `f_2 = (1/2)[2]_2 - (1/d)[0]_2`.
///
/// # Safety
/// `t` must be a live handle; `name` a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vtl_table_render(
    t: *const VtlClassTable,
    name: *const c_char,
    out: *mut *mut c_char,
) -> VtlStatus {
    guard(|| {
        let t = deref(t, "table")?;
        put_string(out, t.0.render(text(name, "name")?))
    })
}

/// Runs a verification suite and writes its report JSON; `passed` receives
/// 1 when every gating check passed.
///
/// # Safety
/// `suite` must be a NUL-terminated string; `out` a valid pointer; `passed`
/// a valid pointer or null.
#[no_mangle]
pub unsafe extern "C" fn vtl_verify(
    suite: *const c_char,
    n: u32,
    seed: u64,
    force: i32,
    out: *mut *mut c_char,
    passed: *mut i32,
) -> VtlStatus {
    guard(|| {
        let suite: Suite = text(suite, "suite")?.parse()?;
        let report = verify::run(suite, n as usize, &Options { seed, force: force != 0 })?;
        if !passed.is_null() {
            *passed = i32::from(report.passed());
        }
        put_string(out, json(&report)?)
    })
}

/// # Safety
/// `a` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vtl_element_free(a: *mut VtlElement) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `t` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vtl_table_free(t: *mut VtlClassTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vtl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
