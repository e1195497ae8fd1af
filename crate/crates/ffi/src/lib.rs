//! C ABI for `a1deg`.
//!
//! Objects cross the boundary as opaque pointers. Every fallible call
//! returns an [`A1degStatus`] and writes its result through an out
//! pointer; on failure [`a1deg_last_error`] describes the problem for the
//! calling thread. Strings returned by the library are freed with
//! [`a1deg_string_free`], handles with their matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use a1deg::cancel::CancelToken;
use a1deg::degree;
use a1deg::enumerative;
use a1deg::error::Error;
use a1deg::etale::EtaleAlgebra;
use a1deg::gw::GWElement;
use a1deg::poly::{PolyMap, Polynomial, Ring};
use a1deg::scalar::{Field, Scalar};

/// Result codes. Input and precondition errors match the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum A1degStatus {
    Ok = 0,
    NullPointer = 1,
    InputError = 2,
    PreconditionFailed = 3,
    Cancelled = 4,
    Internal = 5,
}

/// An element of the Grothendieck–Witt ring.
pub struct A1degGw(GWElement);

/// A cooperative cancellation flag shared with running computations.
pub struct A1degCancel(CancelToken);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> A1degStatus {
    if err.is_input_error() {
        A1degStatus::InputError
    } else {
        match err {
            Error::Cancelled => A1degStatus::Cancelled,
            Error::Internal(_) => A1degStatus::Internal,
            _ => A1degStatus::PreconditionFailed,
        }
    }
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

/// Runs `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> A1degStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            A1degStatus::Ok
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(&format!("null pointer: {what}"));
            A1degStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            A1degStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Lib(Error::InvalidInput(format!("{what} is not valid UTF-8"))))
}

unsafe fn gw_ref<'a>(p: *const A1degGw, what: &'static str) -> Result<&'a GWElement, Failure> {
    p.as_ref().map(|g| &g.0).ok_or(Failure::Null(what))
}

unsafe fn put_gw(out: *mut *mut A1degGw, value: GWElement) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    *out = Box::into_raw(Box::new(A1degGw(value)));
    Ok(())
}

unsafe fn token(cancel: *const A1degCancel) -> CancelToken {
    cancel.as_ref().map(|c| c.0.clone()).unwrap_or_default()
}

unsafe fn field(spec: *const c_char) -> Result<Field, Failure> {
    Ok(Field::parse(text(spec, "field")?)?)
}

unsafe fn system(f: Field, vars: *const c_char, sys: *const c_char) -> Result<PolyMap, Failure> {
    let ring = Ring::from_var_list(f, text(vars, "vars")?)?;
    Ok(PolyMap::parse(text(sys, "system")?, &ring)?)
}

fn point(f: Field, s: &str) -> Result<Vec<Scalar>, Failure> {
    Ok(s.split(',')
        .map(|c| f.parse_scalar(c.trim()))
        .collect::<Result<_, _>>()?)
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the most recent failure on this thread; empty after a
/// success. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn a1deg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn a1deg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub extern "C" fn a1deg_cancel_new() -> *mut A1degCancel {
    Box::into_raw(Box::new(A1degCancel(CancelToken::new())))
}

/// Requests cancellation; safe to call from another thread.
///
/// # Safety
/// `c` must be null or a live handle from [`a1deg_cancel_new`].
#[no_mangle]
pub unsafe extern "C" fn a1deg_cancel_trigger(c: *const A1degCancel) {
    if let Some(c) = c.as_ref() {
        c.0.cancel();
    }
}

/// # Safety
/// `c` must be null or a live handle from [`a1deg_cancel_new`].
#[no_mangle]
pub unsafe extern "C" fn a1deg_cancel_free(c: *mut A1degCancel) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn a1deg_gw_free(g: *mut A1degGw) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Parses `"<a> + 2<b> + H"` over the field `"q"`, `"r"`, `"c"` or `"fp:<p>"`.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn a1deg_gw_parse(
    field_spec: *const c_char,
    element: *const c_char,
    out: *mut *mut A1degGw,
) -> A1degStatus {
    guard(|| {
        let f = field(field_spec)?;
        put_gw(out, GWElement::parse(text(element, "element")?, f)?)
    })
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn a1deg_gw_add(
    a: *const A1degGw,
    b: *const A1degGw,
    out: *mut *mut A1degGw,
) -> A1degStatus {
    guard(|| put_gw(out, gw_ref(a, "a")?.add(gw_ref(b, "b")?)?.simplify()))
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn a1deg_gw_mul(
    a: *const A1degGw,
    b: *const A1degGw,
    out: *mut *mut A1degGw,
) -> A1degStatus {
    guard(|| put_gw(out, gw_ref(a, "a")?.mul(gw_ref(b, "b")?)?.simplify()))
}

/// Writes 1 to `out` if the classes are equal, 0 otherwise.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn a1deg_gw_eq(
    a: *const A1degGw,
    b: *const A1degGw,
    out: *mut i32,
) -> A1degStatus {
    guard(|| {
        let eq = gw_ref(a, "a")?.gw_eq(gw_ref(b, "b")?)?;
        *out.as_mut().ok_or(Failure::Null("out"))? = i32::from(eq);
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn a1deg_gw_rank(g: *const A1degGw) -> usize {
    g.as_ref().map_or(0, |g| g.0.rank())
}

/// Writes the signature and returns 1 over Q and the real reading; returns
/// 0 and leaves `out` untouched elsewhere.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn a1deg_gw_signature(g: *const A1degGw, out: *mut i64) -> i32 {
    match (g.as_ref().and_then(|g| g.0.signature()), out.as_mut()) {
        (Some(s), Some(o)) => {
            *o = s;
            1
        }
        _ => 0,
    }
}

/// Pretty form such as `"⟨1⟩ + ⟨−1⟩"` (UTF-8). Free with [`a1deg_string_free`].
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn a1deg_gw_to_string(g: *const A1degGw) -> *mut c_char {
    g.as_ref()
        .map_or(ptr::null_mut(), |g| into_c_string(g.0.to_string()))
}

/// JSON invariants `{"rank", "disc", "signature"?, "hasse"?, "diagonal"}`.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn a1deg_gw_to_json(g: *const A1degGw) -> *mut c_char {
    g.as_ref().map_or(ptr::null_mut(), |g| {
        into_c_string(g.0.to_json().to_string())
    })
}

/// EKL class of `system` (components separated by `;`) at a rational point
/// given as comma separated coordinates.
///
/// # Safety
/// String arguments must be NUL-terminated; `cancel` may be null; `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn a1deg_ekl(
    field_spec: *const c_char,
    vars: *const c_char,
    system_text: *const c_char,
    point_text: *const c_char,
    cancel: *const A1degCancel,
    out: *mut *mut A1degGw,
) -> A1degStatus {
    guard(|| {
        let f = field(field_spec)?;
        let map = system(f, vars, system_text)?;
        let p = point(f, text(point_text, "point")?)?;
        put_gw(
            out,
            degree::ekl_class_with(&map, &p, &token(cancel))?
                .gw
                .simplify(),
        )
    })
}

/// Scheja–Storch class of a system with finitely many zeros.
///
/// # Safety
/// As for [`a1deg_ekl`].
#[no_mangle]
pub unsafe extern "C" fn a1deg_global_degree(
    field_spec: *const c_char,
    vars: *const c_char,
    system_text: *const c_char,
    cancel: *const A1degCancel,
    out: *mut *mut A1degGw,
) -> A1degStatus {
    guard(|| {
        let f = field(field_spec)?;
        let map = system(f, vars, system_text)?;
        put_gw(
            out,
            degree::scheja_storch_form_with(&map, &token(cancel))?
                .gw
                .simplify(),
        )
    })
}

/// A¹-Milnor number of `poly` at the origin.
///
/// # Safety
/// As for [`a1deg_ekl`].
#[no_mangle]
pub unsafe extern "C" fn a1deg_milnor(
    field_spec: *const c_char,
    vars: *const c_char,
    poly: *const c_char,
    cancel: *const A1degCancel,
    out: *mut *mut A1degGw,
) -> A1degStatus {
    guard(|| {
        let f = field(field_spec)?;
        let ring = Ring::from_var_list(f, text(vars, "vars")?)?;
        let p = Polynomial::parse(text(poly, "poly")?, &ring)?;
        put_gw(
            out,
            enumerative::milnor_number_with(&p, &token(cancel))?
                .gw
                .simplify(),
        )
    })
}

/// Trace form `Tr⟨a⟩` of `k[var]/(modulus)`.
///
/// # Safety
/// As for [`a1deg_ekl`].
#[no_mangle]
pub unsafe extern "C" fn a1deg_trace_form(
    field_spec: *const c_char,
    var: *const c_char,
    modulus: *const c_char,
    element: *const c_char,
    out: *mut *mut A1degGw,
) -> A1degStatus {
    guard(|| {
        let f = field(field_spec)?;
        let var = text(var, "var")?;
        let alg = EtaleAlgebra::parse(f, var, text(modulus, "modulus")?)?;
        let ring = Ring::new(f, &[var])?;
        let a =
            alg.element_from_polynomial(&Polynomial::parse(text(element, "element")?, &ring)?)?;
        put_gw(out, alg.trace_form(&a)?.simplify())
    })
}

/// Enriched count of lines meeting four lines given as JSON
/// `[{"span": [[..], [..]]}, ...]`.
///
/// # Safety
/// As for [`a1deg_ekl`].
#[no_mangle]
pub unsafe extern "C" fn a1deg_four_lines(
    field_spec: *const c_char,
    lines_json: *const c_char,
    cancel: *const A1degCancel,
    out: *mut *mut A1degGw,
) -> A1degStatus {
    guard(|| {
        let f = field(field_spec)?;
        let value: serde_json::Value = serde_json::from_str(text(lines_json, "lines")?)
            .map_err(|e| Error::InvalidInput(e.to_string()))?;
        let lines = enumerative::lines_from_json(f, &value)?;
        put_gw(
            out,
            enumerative::four_lines_count_with(&lines, &token(cancel))?
                .gw
                .simplify(),
        )
    })
}

/// Enriched count of lines on the smooth cubic surface `poly` in `x0..x3`.
///
/// # Safety
/// As for [`a1deg_ekl`].
#[no_mangle]
pub unsafe extern "C" fn a1deg_cubic_lines(
    field_spec: *const c_char,
    poly: *const c_char,
    cancel: *const A1degCancel,
    out: *mut *mut A1degGw,
) -> A1degStatus {
    guard(|| {
        let f = field(field_spec)?;
        let ring = Ring::new(f, &["x0", "x1", "x2", "x3"])?;
        let p = Polynomial::parse(text(poly, "poly")?, &ring)?;
        put_gw(
            out,
            enumerative::cubic_lines_count_with(&p, &token(cancel))?
                .gw
                .simplify(),
        )
    })
}
