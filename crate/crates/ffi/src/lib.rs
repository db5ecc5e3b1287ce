//! C ABI for `dimalg`.
//!
//! Handles are opaque and owned by the caller; release each with its
//! `_free` function. Strings handed out by the library are released with
//! [`dimalg_string_free`]. Every fallible call returns a [`DimalgStatus`];
//! the message for the most recent failure on the calling thread is
//! available from [`dimalg_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dimalg::files::{PoissonFile, Structure};
use dimalg::quantity::{Format, Quantity, QuantityError, UnitRegistry};

/// A unit registry: base dimensions and unit symbols with exact factors.
pub struct DimalgRegistry(UnitRegistry);

/// An exact quantity together with the unit it is displayed in.
pub struct DimalgQuantity(Quantity);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimalgStatus {
    Ok = 0,
    /// Addition or subtraction across different dimensions.
    DimensionMismatch = 1,
    /// Conversion to a unit of another dimension.
    Incompatible = 2,
    ParseError = 3,
    UnknownUnit = 4,
    DivisionByZero = 5,
    InvalidRegistry = 6,
    /// Malformed structure or Poisson description.
    InvalidInput = 7,
    /// The input loaded but at least one law failed; the report is still set.
    LawFailed = 8,
    NullArgument = 9,
    InvalidUtf8 = 10,
    /// A panic was caught at the boundary.
    Internal = 11,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Fail(DimalgStatus, String);

impl From<QuantityError> for Fail {
    fn from(e: QuantityError) -> Self {
        let status = match &e {
            QuantityError::Parse { .. } => DimalgStatus::ParseError,
            QuantityError::UnknownUnit { .. } => DimalgStatus::UnknownUnit,
            QuantityError::DimensionMismatch { .. } => DimalgStatus::DimensionMismatch,
            QuantityError::Incompatible { .. } => DimalgStatus::Incompatible,
            QuantityError::DivisionByZero => DimalgStatus::DivisionByZero,
            QuantityError::Registry(_) => DimalgStatus::InvalidRegistry,
            QuantityError::Algebra(_) => DimalgStatus::InvalidInput,
        };
        Fail(status, e.to_string())
    }
}

fn set_error(msg: Option<String>) {
    let c = msg.map(|m| CString::new(m.replace('\0', " ")).expect("no interior nul"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<DimalgStatus, Fail>) -> DimalgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => {
            if status == DimalgStatus::Ok {
                set_error(None);
            }
            status
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(Some(msg));
            status
        }
        Err(_) => {
            set_error(Some("internal error".into()));
            DimalgStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(DimalgStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(DimalgStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(DimalgStatus::NullArgument, format!("{what} is null")))
}

fn out_ptr<T>(p: *mut T, what: &str) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail(DimalgStatus::NullArgument, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// The message of the last failed call on this thread, or null. Valid until
/// the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn dimalg_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// A static description of a status code.
#[no_mangle]
pub extern "C" fn dimalg_status_message(status: DimalgStatus) -> *const c_char {
    let s: &'static CStr = match status {
        DimalgStatus::Ok => c"ok",
        DimalgStatus::DimensionMismatch => c"dimension mismatch",
        DimalgStatus::Incompatible => c"incompatible units",
        DimalgStatus::ParseError => c"parse error",
        DimalgStatus::UnknownUnit => c"unknown unit",
        DimalgStatus::DivisionByZero => c"division by zero",
        DimalgStatus::InvalidRegistry => c"invalid registry",
        DimalgStatus::InvalidInput => c"invalid input",
        DimalgStatus::LawFailed => c"law failed",
        DimalgStatus::NullArgument => c"null argument",
        DimalgStatus::InvalidUtf8 => c"invalid UTF-8",
        DimalgStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

#[no_mangle]
pub extern "C" fn dimalg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` is null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dimalg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The bundled registry: length and time with `m, cm, L, s, min`.
#[no_mangle]
pub extern "C" fn dimalg_registry_si() -> *mut DimalgRegistry {
    Box::into_raw(Box::new(DimalgRegistry(UnitRegistry::si_subset())))
}

/// # Safety
/// `json` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dimalg_registry_from_json(json: *const c_char, out: *mut *mut DimalgRegistry) -> DimalgStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let reg = UnitRegistry::from_json(text(json, "json")?)?;
        *out = Box::into_raw(Box::new(DimalgRegistry(reg)));
        Ok(DimalgStatus::Ok)
    })
}

/// # Safety
/// `r` is null or a registry from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dimalg_registry_free(r: *mut DimalgRegistry) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Number of base dimensions, or 0 for a null registry.
///
/// # Safety
/// `r` is null or a live registry.
#[no_mangle]
pub unsafe extern "C" fn dimalg_registry_rank(r: *const DimalgRegistry) -> usize {
    r.as_ref().map_or(0, |r| r.0.rank())
}

/// Evaluates an expression such as `"2.2 L/min + 2.1 L/min"`.
///
/// # Safety
/// `r` is a live registry, `expr` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dimalg_eval(r: *const DimalgRegistry, expr: *const c_char, out: *mut *mut DimalgQuantity) -> DimalgStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let r = handle(r, "registry")?;
        let q = r.0.evaluate(text(expr, "expr")?)?;
        *out = Box::into_raw(Box::new(DimalgQuantity(q)));
        Ok(DimalgStatus::Ok)
    })
}

/// A new quantity equal to `q`, displayed in `unit`.
///
/// # Safety
/// `r` and `q` are live handles, `unit` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dimalg_convert(
    r: *const DimalgRegistry,
    q: *const DimalgQuantity,
    unit: *const c_char,
    out: *mut *mut DimalgQuantity,
) -> DimalgStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let (r, q) = (handle(r, "registry")?, handle(q, "quantity")?);
        let c = r.0.convert(&q.0, text(unit, "unit")?)?;
        *out = Box::into_raw(Box::new(DimalgQuantity(c)));
        Ok(DimalgStatus::Ok)
    })
}

/// Renders `q` as the CLI does: `digits` significant digits, or the exact
/// fraction when `digits` is 0. Free the result with `dimalg_string_free`.
///
/// # Safety
/// `r` and `q` are live handles and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dimalg_quantity_format(
    r: *const DimalgRegistry,
    q: *const DimalgQuantity,
    digits: u32,
    out: *mut *mut c_char,
) -> DimalgStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let (r, q) = (handle(r, "registry")?, handle(q, "quantity")?);
        let format = if digits == 0 { Format::Exact } else { Format::Digits(digits as usize) };
        *out = owned_string(r.0.format(&q.0, format)?);
        Ok(DimalgStatus::Ok)
    })
}

/// The display value as the nearest double.
///
/// # Safety
/// `r` and `q` are live handles and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dimalg_quantity_value(r: *const DimalgRegistry, q: *const DimalgQuantity, out: *mut f64) -> DimalgStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let (r, q) = (handle(r, "registry")?, handle(q, "quantity")?);
        let v = r.0.display_value(&q.0)?;
        // Exact decimal first so large numerators and denominators do not overflow.
        let s = dimalg::rational::to_significant(&v, 17);
        *out = s.parse().unwrap_or(f64::NAN);
        Ok(DimalgStatus::Ok)
    })
}

/// Copies the exponent vector of `q` into `buf` (up to `len` entries) and
/// stores its full length in `count`.
///
/// # Safety
/// `q` is a live quantity, `buf` has room for `len` values (or is null when
/// `len` is 0), and `count` is writable.
#[no_mangle]
pub unsafe extern "C" fn dimalg_quantity_exponents(q: *const DimalgQuantity, buf: *mut i64, len: usize, count: *mut usize) -> DimalgStatus {
    guard(|| {
        out_ptr(count, "count")?;
        let q = handle(q, "quantity")?;
        let e = &q.0.value.exponents().0;
        *count = e.len();
        if len > 0 {
            out_ptr(buf, "buf")?;
            for (i, x) in e.iter().take(len).enumerate() {
                *buf.add(i) = *x;
            }
        }
        Ok(DimalgStatus::Ok)
    })
}

/// # Safety
/// `q` is null or a quantity from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dimalg_quantity_free(q: *mut DimalgQuantity) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Runs the ring axiom suite on a structure description. On `OK` or
/// `LAW_FAILED`, `report` receives the law-by-law report as JSON.
///
/// # Safety
/// `json` is a nul-terminated string and `report` is writable.
#[no_mangle]
pub unsafe extern "C" fn dimalg_check_structure(json: *const c_char, report: *mut *mut c_char) -> DimalgStatus {
    guard(|| {
        out_ptr(report, "report")?;
        let invalid = |e: dimalg::files::InputError| Fail(DimalgStatus::InvalidInput, e.to_string());
        let s = Structure::load(text(json, "json")?).map_err(invalid)?;
        let rep = s.check().map_err(invalid)?;
        *report = owned_string(serde_json::to_string(&rep).expect("reports serialize"));
        if rep.all_passed() {
            Ok(DimalgStatus::Ok)
        } else {
            let n = rep.failures().count();
            set_error(Some(format!("{n} law(s) failed")));
            Ok(DimalgStatus::LawFailed)
        }
    })
}

/// `{f, g}` in the Poisson algebra described by `json`, as text.
///
/// # Safety
/// All strings are nul-terminated and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dimalg_poisson_bracket(
    json: *const c_char,
    f: *const c_char,
    g: *const c_char,
    out: *mut *mut c_char,
) -> DimalgStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let invalid = |e: dimalg::files::InputError| Fail(DimalgStatus::InvalidInput, e.to_string());
        let p = PoissonFile::load(text(json, "json")?).map_err(invalid)?;
        let (f, g) = (p.parse(text(f, "f")?).map_err(invalid)?, p.parse(text(g, "g")?).map_err(invalid)?);
        let b = p.poisson.bracket(&f, &g);
        *out = owned_string(p.ring().display(&b));
        Ok(DimalgStatus::Ok)
    })
}
