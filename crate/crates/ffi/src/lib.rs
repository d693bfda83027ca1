//! C interface to `multi_appell`.
//!
//! Every function returns an [`MaStatus`]. Results come back through out
//! pointers; on failure the out pointer is left untouched and
//! `ma_last_error` describes the problem. Rationals cross the boundary as
//! strings such as `"-3/4"`. Strings returned by the library must be released
//! with `ma_string_free`, polynomials with `ma_poly_free` and families with
//! `ma_family_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use multi_appell::appell::build_via_c;
use multi_appell::io::{family_to_json, Basis, PolyJson, SeedFile};
use multi_appell::ortho::{charlier_identification, Identification};
use multi_appell::rational::parse_rational;
use multi_appell::{
    charlier_explicit, charlier_family, CharlierParams, Error, FFPoly, Family, MultiIndex,
    DEFAULT_DEGREE_CAP,
};

/// Result code of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    ArityMismatch = 4,
    DegenerateSeed = 5,
    /// Index, degree or order outside what the object holds or allows.
    OutOfRange = 6,
    NotAppell = 7,
    InvalidArgument = 8,
    /// The computation ran but a check failed.
    VerificationFailed = 9,
    Panic = 10,
}

/// An exact polynomial in the falling-factorial basis.
pub struct MaPoly(FFPoly);

/// A finite table of polynomials indexed by multi-indices.
pub struct MaFamily(Family);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Fail(MaStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse(_) => MaStatus::Parse,
            Error::ArityMismatch { .. } => MaStatus::ArityMismatch,
            Error::DegenerateSeed => MaStatus::DegenerateSeed,
            Error::OutOfOrder { .. }
            | Error::NegativeIndex { .. }
            | Error::DegreeCap { .. }
            | Error::MissingMember(_) => MaStatus::OutOfRange,
            Error::NotAppell { .. } => MaStatus::NotAppell,
            _ => MaStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            MaStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            MaStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(MaStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(MaStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn index(n: *const usize, arity: usize) -> Result<MultiIndex, Fail> {
    if arity == 0 {
        return Err(Fail(
            MaStatus::InvalidArgument,
            "arity must be at least 1".into(),
        ));
    }
    if n.is_null() {
        return Err(null("index"));
    }
    Ok(MultiIndex::new(
        std::slice::from_raw_parts(n, arity).to_vec(),
    ))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

fn basis(monomial: bool) -> Basis {
    if monomial {
        Basis::Monomial
    } else {
        Basis::Ff
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn ma_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ma_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The multiple Charlier polynomial with index `n[0..arity]` and comma
/// separated weights `a`, e.g. `"1,1/2"`.
///
/// # Safety
/// `n` must point to `arity` values, `a` to a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ma_charlier(
    n: *const usize,
    arity: usize,
    a: *const c_char,
    out: *mut *mut MaPoly,
) -> MaStatus {
    guard(|| {
        let n = index(n, arity)?;
        let params = CharlierParams::parse(text(a, "a")?)?;
        if n.total() > DEFAULT_DEGREE_CAP {
            return Err(Error::DegreeCap {
                degree: n.total(),
                cap: DEFAULT_DEGREE_CAP,
            }
            .into());
        }
        let p = charlier_explicit(&n, &params)?;
        put(out, Box::into_raw(Box::new(MaPoly(p))))
    })
}

/// # Safety
/// `p` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ma_poly_free(p: *mut MaPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Degree of `p`; the zero polynomial reports `InvalidArgument`.
///
/// # Safety
/// `p` must be a live polynomial handle.
#[no_mangle]
pub unsafe extern "C" fn ma_poly_degree(p: *const MaPoly, out: *mut usize) -> MaStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("polynomial"))?;
        let d = p.0.degree().ok_or_else(|| {
            Fail(
                MaStatus::InvalidArgument,
                "zero polynomial has no degree".into(),
            )
        })?;
        put(out, d)
    })
}

/// Exact value `p(x)` as a newly allocated string.
///
/// # Safety
/// `p` must be a live handle and `x` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ma_poly_eval(
    p: *const MaPoly,
    x: *const c_char,
    out: *mut *mut c_char,
) -> MaStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("polynomial"))?;
        let x = parse_rational(text(x, "x")?)?;
        put(out, owned_string(p.0.eval(&x).to_string()))
    })
}

/// `Delta_omega p` as a new handle.
///
/// # Safety
/// `p` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ma_poly_delta(p: *const MaPoly, out: *mut *mut MaPoly) -> MaStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("polynomial"))?;
        put(out, Box::into_raw(Box::new(MaPoly(p.0.delta()))))
    })
}

/// JSON `{"basis", "omega", "coeffs"}` in the falling-factorial or the
/// monomial basis.
///
/// # Safety
/// `p` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ma_poly_to_json(
    p: *const MaPoly,
    monomial: bool,
    out: *mut *mut c_char,
) -> MaStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("polynomial"))?;
        let json = serde_json::to_string(&PolyJson::encode(&p.0, basis(monomial)))
            .map_err(|e| Fail(MaStatus::InvalidArgument, e.to_string()))?;
        put(out, owned_string(json))
    })
}

/// Builds the Appell family of a seed file given as JSON text.
///
/// # Safety
/// `seed_json` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ma_appell_build(
    seed_json: *const c_char,
    out: *mut *mut MaFamily,
) -> MaStatus {
    guard(|| {
        let seed = SeedFile::parse(text(seed_json, "seed")?)?.to_seed(DEFAULT_DEGREE_CAP)?;
        put(
            out,
            Box::into_raw(Box::new(MaFamily(build_via_c(&seed).into_family()))),
        )
    })
}

/// The Charlier family with weights `a` for all `|n| <= order`.
///
/// # Safety
/// `a` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ma_charlier_family(
    a: *const c_char,
    order: usize,
    out: *mut *mut MaFamily,
) -> MaStatus {
    guard(|| {
        let params = CharlierParams::parse(text(a, "a")?)?;
        if order > DEFAULT_DEGREE_CAP {
            return Err(Error::DegreeCap {
                degree: order,
                cap: DEFAULT_DEGREE_CAP,
            }
            .into());
        }
        put(
            out,
            Box::into_raw(Box::new(MaFamily(charlier_family(&params, order)))),
        )
    })
}

/// # Safety
/// `f` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ma_family_free(f: *mut MaFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Arity and truncation order of `f`. Either out pointer may be null.
///
/// # Safety
/// `f` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ma_family_shape(
    f: *const MaFamily,
    arity: *mut usize,
    order: *mut usize,
) -> MaStatus {
    guard(|| {
        let f = f.as_ref().ok_or_else(|| null("family"))?;
        if !arity.is_null() {
            arity.write(f.0.arity());
        }
        if !order.is_null() {
            order.write(f.0.order());
        }
        Ok(())
    })
}

/// Copies the member at `n[0..arity]` into a new polynomial handle.
///
/// # Safety
/// `f` must be a live handle and `n` point to `arity` values.
#[no_mangle]
pub unsafe extern "C" fn ma_family_get(
    f: *const MaFamily,
    n: *const usize,
    arity: usize,
    out: *mut *mut MaPoly,
) -> MaStatus {
    guard(|| {
        let f = f.as_ref().ok_or_else(|| null("family"))?;
        let n = index(n, arity)?;
        if n.arity() != f.0.arity() {
            return Err(Error::ArityMismatch {
                expected: f.0.arity(),
                found: n.arity(),
            }
            .into());
        }
        let p = f.0.get(&n)?.clone();
        put(out, Box::into_raw(Box::new(MaPoly(p))))
    })
}

/// The family as JSON, the format read by the command-line tool.
///
/// # Safety
/// `f` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ma_family_to_json(
    f: *const MaFamily,
    monomial: bool,
    out: *mut *mut c_char,
) -> MaStatus {
    guard(|| {
        let f = f.as_ref().ok_or_else(|| null("family"))?;
        put(out, owned_string(family_to_json(&f.0, basis(monomial))))
    })
}

/// Decides whether `f` is a multiple Charlier family on `|n| <= max_degree`.
/// On success `out` receives the weights, e.g. `"(1,2)"`; otherwise the call
/// returns `VerificationFailed` and `ma_last_error` names the failing stage.
///
/// # Safety
/// `f` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ma_family_identify_charlier(
    f: *const MaFamily,
    max_degree: usize,
    out: *mut *mut c_char,
) -> MaStatus {
    guard(|| {
        let f = f.as_ref().ok_or_else(|| null("family"))?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        match charlier_identification(&f.0, max_degree) {
            Identification::Identified { params, .. } => put(out, owned_string(params.to_string())),
            Identification::Refuted { stage, index, .. } => {
                let at = index.map(|n| format!(" at {n}")).unwrap_or_default();
                Err(Fail(
                    MaStatus::VerificationFailed,
                    format!("not a Charlier family: refuted at the {stage} stage{at}"),
                ))
            }
        }
    })
}

/// Runs one `verify` suite (`"difference"`, `"addition"`, ..., `"all"`) for
/// weights `a` over `|n| <= max_degree`. `out` receives the JSON-lines
/// records; it is set on both `Ok` and `VerificationFailed`.
///
/// # Safety
/// `suite` and `a` must be NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn ma_verify(
    suite: *const c_char,
    a: *const c_char,
    max_degree: usize,
    out: *mut *mut c_char,
) -> MaStatus {
    guard(|| {
        let suite = text(suite, "suite")?;
        let a = text(a, "a")?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let max = max_degree.to_string();
        let args = [
            "multi-appell",
            "--format",
            "json",
            "--max-degree",
            &max,
            "verify",
            "--suite",
            suite,
            "--a",
            a,
        ];
        let mut records = Vec::new();
        let mut errors = Vec::new();
        let code = multi_appell::cli::run(args, &mut records, &mut errors);
        let errors = String::from_utf8_lossy(&errors).trim().to_owned();
        match code {
            multi_appell::cli::EXIT_PASS => put(
                out,
                owned_string(String::from_utf8_lossy(&records).into_owned()),
            ),
            multi_appell::cli::EXIT_FAIL => {
                out.write(owned_string(String::from_utf8_lossy(&records).into_owned()));
                Err(Fail(
                    MaStatus::VerificationFailed,
                    "verification failed".into(),
                ))
            }
            _ => Err(Fail(MaStatus::InvalidArgument, errors)),
        }
    })
}
