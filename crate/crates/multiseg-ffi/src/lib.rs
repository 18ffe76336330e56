//! C interface to the multiseg engine.
//!
//! Every entry point returns an [`MsStatus`]; results go through out
//! pointers. Strings returned to the caller are owned by the caller and must
//! be released with [`ms_string_free`]. The message of the most recent
//! failure on the calling thread is available from [`ms_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use multiseg::weyl::Perm;
use multiseg::{Engine, Error, Multisegment, Route};
use serde_json::json;

/// Status codes. Nonzero values match the CLI exit codes where they overlap.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MsStatus {
    Ok = 0,
    Internal = 1,
    Parse = 2,
    Precondition = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    /// Routes computed different answers.
    Disagreement = 6,
}

/// Route selector for [`ms_derive_json`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MsRoute {
    Quantum = 0,
    BasisChange = 1,
    ParabolicTheta = 2,
    /// Every route, with an agreement check.
    All = 3,
}

/// Opaque engine handle.
pub struct MsEngine {
    inner: Engine,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn status_of(e: &Error) -> MsStatus {
    match e {
        Error::Parse { .. } => MsStatus::Parse,
        Error::Precondition(_) => MsStatus::Precondition,
        Error::Internal(_) => MsStatus::Internal,
    }
}

type FfiResult<T> = std::result::Result<T, MsStatus>;

fn lib<T>(r: multiseg::Result<T>) -> FfiResult<T> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

unsafe fn read_str<'a>(p: *const c_char) -> FfiResult<&'a str> {
    if p.is_null() {
        set_error("null string argument");
        return Err(MsStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        MsStatus::InvalidUtf8
    })
}

unsafe fn read_ms(p: *const c_char) -> FfiResult<Multisegment> {
    lib(read_str(p)?.parse())
}

unsafe fn engine<'a>(p: *const MsEngine) -> FfiResult<&'a Engine> {
    if p.is_null() {
        set_error("null engine handle");
        return Err(MsStatus::NullPointer);
    }
    Ok(&(*p).inner)
}

unsafe fn write<T>(out: *mut T, v: T) -> FfiResult<()> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(MsStatus::NullPointer);
    }
    *out = v;
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    let c = CString::new(s).map_err(|_| {
        set_error("result contains a NUL byte");
        MsStatus::Internal
    })?;
    write(out, c.into_raw())
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> FfiResult<()>) -> MsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MsStatus::Ok,
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("internal panic: {}", msg));
            MsStatus::Internal
        }
    }
}

/// A new engine without persistent cache. Never returns null.
#[no_mangle]
pub extern "C" fn ms_engine_new() -> *mut MsEngine {
    Box::into_raw(Box::new(MsEngine { inner: Engine::new() }))
}

/// A new engine backed by the cache directory `dir`; null if `dir` is null
/// or not UTF-8.
///
/// # Safety
/// `dir` must be null or a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ms_engine_with_cache(dir: *const c_char) -> *mut MsEngine {
    match read_str(dir) {
        Ok(d) => Box::into_raw(Box::new(MsEngine { inner: Engine::with_cache(d) })),
        Err(_) => ptr::null_mut(),
    }
}

/// Persists cached tables, if the engine has a cache directory.
///
/// # Safety
/// `e` must be null or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ms_engine_flush(e: *const MsEngine) -> MsStatus {
    guard(|| {
        engine(e)?.flush();
        Ok(())
    })
}

/// Releases an engine. Null is ignored.
///
/// # Safety
/// `e` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ms_engine_free(e: *mut MsEngine) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ms_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message of the last failure on this thread; empty if none. The
/// pointer stays valid until the next call into this library on the thread.
#[no_mangle]
pub extern "C" fn ms_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Canonical form of a multisegment.
///
/// # Safety
/// `input` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ms_canonicalize(input: *const c_char, out: *mut *mut c_char) -> MsStatus {
    guard(|| write_string(out, read_ms(input)?.to_string()))
}

/// `b ≤ a`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn ms_leq(e: *const MsEngine, b: *const c_char, a: *const c_char, out: *mut bool) -> MsStatus {
    guard(|| {
        let eng = engine(e)?;
        let (b, a) = (read_ms(b)?, read_ms(a)?);
        write(out, eng.leq(&b, &a))
    })
}

/// `b ⪯_k a`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn ms_prec_k(
    e: *const MsEngine,
    b: *const c_char,
    a: *const c_char,
    k: i32,
    out: *mut bool,
) -> MsStatus {
    guard(|| {
        let eng = engine(e)?;
        let (b, a) = (read_ms(b)?, read_ms(a)?);
        write(out, eng.prec_k(&b, &a, k))
    })
}

/// `m(b, a)`: the multiplicity of `L_b` in `π(a)`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn ms_multiplicity(
    e: *const MsEngine,
    b: *const c_char,
    a: *const c_char,
    out: *mut i64,
) -> MsStatus {
    guard(|| {
        let eng = engine(e)?;
        let (b, a) = (read_ms(b)?, read_ms(a)?);
        let row = lib(eng.mult_row(&a))?;
        write(out, row.get(&b).copied().unwrap_or(0))
    })
}

/// `P_{x,y}(q)` as a coefficient list, lowest degree first, written into
/// `coeffs` (capacity `cap`). `len` receives the number of coefficients;
/// if it exceeds `cap` only the first `cap` are written.
///
/// # Safety
/// `x`, `y` NUL-terminated one-line permutations such as "2 1 3"; `coeffs`
/// valid for `cap` writes (or null when `cap` is 0); `len` valid.
#[no_mangle]
pub unsafe extern "C" fn ms_kl_poly(
    e: *const MsEngine,
    x: *const c_char,
    y: *const c_char,
    coeffs: *mut i64,
    cap: usize,
    len: *mut usize,
) -> MsStatus {
    guard(|| {
        let eng = engine(e)?;
        let x: Perm = lib(read_str(x)?.parse())?;
        let y: Perm = lib(read_str(y)?.parse())?;
        let p = lib(eng.kl_poly(&x, &y))?;
        write(len, p.0.len())?;
        if cap > 0 {
            if coeffs.is_null() {
                set_error("null coefficient buffer");
                return Err(MsStatus::NullPointer);
            }
            for (i, c) in p.0.iter().take(cap).enumerate() {
                *coeffs.add(i) = *c;
            }
        }
        Ok(())
    })
}

/// `𝒟^k(L_a)` as JSON `{"input", "k", "basis", "terms": [{"coeff", "ms"}],
/// "route", "agreement"}`. With [`MsRoute::All`] a disagreement still
/// writes the JSON and returns [`MsStatus::Disagreement`].
///
/// # Safety
/// Pointers must be valid; `a` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn ms_derive_json(
    e: *const MsEngine,
    a: *const c_char,
    k: i32,
    route: MsRoute,
    out: *mut *mut c_char,
) -> MsStatus {
    let mut agree = true;
    let st = guard(|| {
        let eng = engine(e)?;
        let a = read_ms(a)?;
        let (v, name) = match route {
            MsRoute::All => {
                let (all, ok) = lib(eng.derive_all_routes(&a, k))?;
                agree = ok;
                (all[0].1.clone(), "all")
            }
            r => {
                let r = match r {
                    MsRoute::Quantum => Route::Quantum,
                    MsRoute::BasisChange => Route::BasisChange,
                    _ => Route::ParabolicTheta,
                };
                (lib(eng.derive_irreducible(&a, k, r))?, r.name())
            }
        };
        let terms: Vec<_> =
            v.sorted_terms().into_iter().map(|(b, c)| json!({"coeff": c, "ms": b.to_string()})).collect();
        let j = json!({
            "input": a.to_string(), "k": k, "basis": "irreducible",
            "terms": terms, "route": name, "agreement": agree,
        });
        write_string(out, j.to_string())
    });
    if st == MsStatus::Ok && !agree {
        set_error("routes disagree");
        return MsStatus::Disagreement;
    }
    st
}
