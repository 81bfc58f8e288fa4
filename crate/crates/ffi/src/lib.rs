//! C ABI over the `brieskorn` library.
//!
//! Polynomials are passed as opaque `BkPoly` handles created by
//! [`bk_poly_parse`] and released with [`bk_poly_free`]. Every fallible call
//! returns a [`BkStatus`]; on failure a message is available from
//! [`bk_last_error`] on the same thread. Strings handed out by the library
//! must be released with [`bk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use brieskorn::brieskorn::{classify_pair, BrieskornPoly};
use brieskorn::fibers::{beta_closed, beta_recursive, FiberQuery, Target};
use brieskorn::recovery::recover;
use brieskorn::zeta::{default_order, modified_zeta, plain_zeta};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Computation = 5,
    Panic = 6,
}

/// Zeta function flavour for [`bk_zeta_json`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BkZetaKind {
    Modified = 0,
    Plain = 1,
}

/// Opaque polynomial handle.
pub struct BkPoly(BrieskornPoly);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: BkStatus, msg: impl Into<String>) -> BkStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> BkStatus) -> BkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(BkStatus::Panic, "internal panic"),
    }
}

unsafe fn poly_ref<'a>(p: *const BkPoly) -> Result<&'a BrieskornPoly, BkStatus> {
    p.as_ref().map(|h| &h.0).ok_or_else(|| fail(BkStatus::NullPointer, "null polynomial handle"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> BkStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            BkStatus::Ok
        }
        Err(_) => fail(BkStatus::Computation, "output contains a NUL byte"),
    }
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message describing the last failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses `text` into a new handle stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_poly_parse(text: *const c_char, out: *mut *mut BkPoly) -> BkStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(BkStatus::NullPointer, "null argument");
        }
        let Ok(s) = CStr::from_ptr(text).to_str() else {
            return fail(BkStatus::InvalidUtf8, "input is not UTF-8");
        };
        match BrieskornPoly::parse(s) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(BkPoly(p)));
                BkStatus::Ok
            }
            Err(e) => fail(BkStatus::Parse, e.to_string()),
        }
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `p` must come from [`bk_poly_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bk_poly_free(p: *mut BkPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_poly_num_variables(p: *const BkPoly, out: *mut usize) -> BkStatus {
    guard(|| {
        let f = try_ffi!(poly_ref(p));
        if out.is_null() {
            return fail(BkStatus::NullPointer, "null output");
        }
        *out = f.num_variables();
        BkStatus::Ok
    })
}

/// Normalized text of the polynomial.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_poly_normalized(p: *const BkPoly, out: *mut *mut c_char) -> BkStatus {
    guard(|| {
        let f = try_ffi!(poly_ref(p));
        if out.is_null() {
            return fail(BkStatus::NullPointer, "null output");
        }
        write_string(out, f.normalize().to_string())
    })
}

/// Decides equivalence; `*equivalent` receives 1 or 0.
///
/// # Safety
/// `f` and `g` must be live handles and `equivalent` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_classify(f: *const BkPoly, g: *const BkPoly, equivalent: *mut i32) -> BkStatus {
    guard(|| {
        let (f, g) = (try_ffi!(poly_ref(f)), try_ffi!(poly_ref(g)));
        if equivalent.is_null() {
            return fail(BkStatus::NullPointer, "null output");
        }
        match classify_pair(f, g) {
            Ok(v) => {
                *equivalent = i32::from(v.equivalent);
                BkStatus::Ok
            }
            Err(e) => fail(BkStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Virtual Poincaré polynomial of `f = target` (target in -1, 0, 1) as
/// text, with its value at `u = -1`. Either output may be null.
///
/// # Safety
/// `p` must be a live handle; non-null outputs must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bk_fiber(
    p: *const BkPoly,
    target: i32,
    beta: *mut *mut c_char,
    euler_characteristic: *mut i64,
) -> BkStatus {
    guard(|| {
        let f = try_ffi!(poly_ref(p));
        let Some(t) = Target::from_value(i64::from(target)) else {
            return fail(BkStatus::InvalidArgument, "target must be -1, 0 or 1");
        };
        let q = FiberQuery::of(f, t);
        let closed = beta_closed(&q);
        match beta_recursive(&q) {
            Ok(r) if r == closed => {}
            Ok(r) => return fail(BkStatus::Computation, format!("engines disagree: {closed} vs {r}")),
            Err(e) => return fail(BkStatus::Computation, e.to_string()),
        }
        if !euler_characteristic.is_null() {
            match closed.euler_characteristic() {
                Ok(chi) => *euler_characteristic = chi,
                Err(e) => return fail(BkStatus::Computation, e.to_string()),
            }
        }
        if beta.is_null() {
            BkStatus::Ok
        } else {
            write_string(beta, closed.to_string())
        }
    })
}

/// Realized zeta function as JSON. `order == 0` picks twice the largest
/// exponent.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_zeta_json(
    p: *const BkPoly,
    kind: BkZetaKind,
    order: u32,
    out: *mut *mut c_char,
) -> BkStatus {
    guard(|| {
        let f = try_ffi!(poly_ref(p)).normalize();
        if out.is_null() {
            return fail(BkStatus::NullPointer, "null output");
        }
        let order = if order == 0 { default_order(&f) } else { order };
        let z = match kind {
            BkZetaKind::Modified => modified_zeta(&f, order),
            BkZetaKind::Plain => plain_zeta(&f, order),
        };
        match z.map(|z| serde_json::to_string(&z)) {
            Ok(Ok(s)) => write_string(out, s),
            Ok(Err(e)) => fail(BkStatus::Computation, e.to_string()),
            Err(e) => fail(BkStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Sign recovery from the modified zeta function, as JSON. `order == 0`
/// picks twice the largest exponent.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_recover_json(p: *const BkPoly, order: u32, out: *mut *mut c_char) -> BkStatus {
    guard(|| {
        let f = try_ffi!(poly_ref(p)).normalize();
        if out.is_null() {
            return fail(BkStatus::NullPointer, "null output");
        }
        let order = if order == 0 { default_order(&f) } else { order };
        let rec = modified_zeta(&f, order)
            .map_err(|e| e.to_string())
            .and_then(|z| recover(&f.exponents(), &z).map_err(|e| e.to_string()));
        match rec {
            Ok(r) => match serde_json::to_string(&r) {
                Ok(s) => write_string(out, s),
                Err(e) => fail(BkStatus::Computation, e.to_string()),
            },
            Err(e) => fail(BkStatus::InvalidArgument, e),
        }
    })
}
