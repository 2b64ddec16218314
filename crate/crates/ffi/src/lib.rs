//! C ABI over qfoam. Objects are opaque handles created by the `*_builtin`
//! and `*_parse` functions and released with the matching `*_free`. Every
//! fallible call returns a `QfoamStatus`; the message of the last failure on
//! the calling thread is available from `qfoam_last_error`.

use qfoam::algebra::{check_gfamily_axioms, linear_gfamily, parse_gfamily, r_tilde, GFamilyTable};
use qfoam::diagrams::{coloring_count, parse_graph_diagram};
use qfoam::foam::movie::{cocycle_invariant, parse_movie, validate_movie};
use qfoam::foam::spin::{parse_tangle, twist_spin};
use qfoam::foam::{Movie, Still};
use qfoam::homology::{parse_cocycle, verify_cocycle_conditions, verify_oriented_conditions, CocycleTable};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QfoamStatus {
    Ok = 0,
    /// The input was well formed but a check failed.
    Failed = 1,
    /// The input could not be parsed or is inconsistent.
    Invalid = 2,
    NullPointer = 3,
    /// An output buffer was too small.
    BufferTooSmall = 4,
}

pub struct QfoamFamily(GFamilyTable);
pub struct QfoamCocycle(CocycleTable);
pub struct QfoamMovie {
    movie: Movie,
    stills: Vec<Still>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: QfoamStatus, msg: impl ToString) -> QfoamStatus {
    let msg = CString::new(msg.to_string().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
    status
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, QfoamStatus> {
    if p.is_null() {
        return Err(fail(QfoamStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p).to_str().map_err(|e| fail(QfoamStatus::Invalid, e))
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! handle {
    ($p:expr) => {
        match $p.as_ref() {
            Some(h) => h,
            None => return fail(QfoamStatus::NullPointer, "null handle"),
        }
    };
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> QfoamStatus {
    if out.is_null() {
        return fail(QfoamStatus::NullPointer, "null output pointer");
    }
    *out = Box::into_raw(Box::new(v));
    QfoamStatus::Ok
}

/// Message of the last failure on this thread. Valid until the next call.
#[no_mangle]
pub extern "C" fn qfoam_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// `name` is `r-tilde`, `trivial` or `linear:<p>:<u,u,...>`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qfoam_family_builtin(name: *const c_char, out: *mut *mut QfoamFamily) -> QfoamStatus {
    let name = tri!(text(name));
    let f = match name {
        "r-tilde" => r_tilde(),
        "trivial" => GFamilyTable::trivial(),
        s if s.starts_with("linear:") => {
            let mut it = s[7..].splitn(2, ':');
            let p = it.next().and_then(|x| x.parse().ok());
            let units: Option<Vec<u32>> = it.next().map(|u| u.split(',').filter_map(|x| x.parse().ok()).collect());
            match (p, units) {
                (Some(p), Some(u)) => match linear_gfamily(p, &u) {
                    Ok(f) => f,
                    Err(e) => return fail(QfoamStatus::Invalid, e),
                },
                _ => return fail(QfoamStatus::Invalid, format!("bad family `{s}`")),
            }
        }
        other => return fail(QfoamStatus::Invalid, format!("unknown family `{other}`")),
    };
    put(out, QfoamFamily(f))
}

/// # Safety
/// `src` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qfoam_family_parse(src: *const c_char, out: *mut *mut QfoamFamily) -> QfoamStatus {
    match parse_gfamily(tri!(text(src))) {
        Ok(f) => put(out, QfoamFamily(f)),
        Err(e) => fail(QfoamStatus::Invalid, e),
    }
}

/// # Safety
/// `f` must come from a family constructor and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qfoam_family_free(f: *mut QfoamFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Returns `Ok` when every axiom holds and `Failed` otherwise.
///
/// # Safety
/// `f` must be a live family handle.
#[no_mangle]
pub unsafe extern "C" fn qfoam_family_check_axioms(f: *const QfoamFamily) -> QfoamStatus {
    let f = handle!(f);
    let r = check_gfamily_axioms(&f.0);
    if r.passed() {
        QfoamStatus::Ok
    } else {
        fail(QfoamStatus::Failed, r.render())
    }
}

/// `name` is `mochizuki` or `zero`.
///
/// # Safety
/// `name` must be a NUL-terminated string, `f` a live family handle and
/// `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qfoam_cocycle_builtin(
    name: *const c_char,
    f: *const QfoamFamily,
    out: *mut *mut QfoamCocycle,
) -> QfoamStatus {
    let f = handle!(f);
    let c = match tri!(text(name)) {
        "mochizuki" if f.0.pair_count() == 6 => CocycleTable::mochizuki(),
        "mochizuki" => return fail(QfoamStatus::Invalid, "the mochizuki table is defined over r-tilde"),
        "zero" => CocycleTable::zero(&f.0, 3),
        other => return fail(QfoamStatus::Invalid, format!("unknown cocycle `{other}`")),
    };
    put(out, QfoamCocycle(c))
}

/// # Safety
/// `src` must be a NUL-terminated string, `f` a live family handle and
/// `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qfoam_cocycle_parse(
    src: *const c_char,
    f: *const QfoamFamily,
    out: *mut *mut QfoamCocycle,
) -> QfoamStatus {
    let f = handle!(f);
    match parse_cocycle(&f.0, tri!(text(src))) {
        Ok(c) => put(out, QfoamCocycle(c)),
        Err(e) => fail(QfoamStatus::Invalid, e),
    }
}

/// # Safety
/// `c` must come from a cocycle constructor and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qfoam_cocycle_free(c: *mut QfoamCocycle) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Runs both the cocycle conditions and the oriented conditions.
///
/// # Safety
/// Both handles must be live.
#[no_mangle]
pub unsafe extern "C" fn qfoam_cocycle_verify(f: *const QfoamFamily, c: *const QfoamCocycle) -> QfoamStatus {
    let (f, c) = (handle!(f), handle!(c));
    let a = verify_cocycle_conditions(&f.0, &c.0);
    let b = verify_oriented_conditions(&c.0.theta);
    if a.passed() && b.passed() {
        QfoamStatus::Ok
    } else {
        fail(QfoamStatus::Failed, format!("{}{}", a.render(), b.render()))
    }
}

/// # Safety
/// `src` must be a NUL-terminated string, `f` a live family handle and
/// `count` writable.
#[no_mangle]
pub unsafe extern "C" fn qfoam_graph_coloring_count(
    src: *const c_char,
    f: *const QfoamFamily,
    count: *mut u64,
) -> QfoamStatus {
    let f = handle!(f);
    let d = match parse_graph_diagram(tri!(text(src))) {
        Ok(d) => d,
        Err(e) => return fail(QfoamStatus::Invalid, e),
    };
    if count.is_null() {
        return fail(QfoamStatus::NullPointer, "null output pointer");
    }
    *count = coloring_count(&d, &f.0) as u64;
    QfoamStatus::Ok
}

/// Parses and validates a movie. `still ref` designations are not checked
/// here since there is no file system context.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qfoam_movie_parse(src: *const c_char, out: *mut *mut QfoamMovie) -> QfoamStatus {
    let movie = match parse_movie(tri!(text(src))) {
        Ok(m) => m,
        Err(e) => return fail(QfoamStatus::Invalid, e),
    };
    match validate_movie(&movie) {
        Ok(stills) => put(out, QfoamMovie { movie, stills }),
        Err(e) => fail(QfoamStatus::Invalid, e),
    }
}

/// # Safety
/// `m` must come from `qfoam_movie_parse` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qfoam_movie_free(m: *mut QfoamMovie) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of events, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live movie handle.
#[no_mangle]
pub unsafe extern "C" fn qfoam_movie_event_count(m: *const QfoamMovie) -> usize {
    m.as_ref().map_or(0, |m| m.movie.events.len())
}

/// Writes the multiplicity of each value 0..modulus into `counts`; `len`
/// is the capacity and `written` receives the modulus.
///
/// # Safety
/// Handles must be live, `counts` must hold `len` values and `written` be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn qfoam_movie_invariant(
    m: *const QfoamMovie,
    f: *const QfoamFamily,
    c: *const QfoamCocycle,
    counts: *mut u64,
    len: usize,
    written: *mut usize,
) -> QfoamStatus {
    let (m, f, c) = (handle!(m), handle!(f), handle!(c));
    if counts.is_null() || written.is_null() {
        return fail(QfoamStatus::NullPointer, "null output pointer");
    }
    let r = match cocycle_invariant(&m.movie, &m.stills, &f.0, &c.0) {
        Ok(r) => r,
        Err(e) => return fail(QfoamStatus::Failed, e),
    };
    let values = &r.multiset.counts;
    *written = values.len();
    if values.len() > len {
        return fail(QfoamStatus::BufferTooSmall, format!("need room for {} values", values.len()));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), counts, values.len());
    QfoamStatus::Ok
}

/// Movie text of the n-twist spin of a tangle; free it with
/// `qfoam_string_free`.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qfoam_twist_spin(src: *const c_char, n: u32, out: *mut *mut c_char) -> QfoamStatus {
    if out.is_null() {
        return fail(QfoamStatus::NullPointer, "null output pointer");
    }
    let t = match parse_tangle(tri!(text(src))) {
        Ok(t) => t,
        Err(e) => return fail(QfoamStatus::Invalid, e),
    };
    let s = twist_spin(&t, n as usize).to_string();
    *out = CString::new(s).expect("movie text has no NUL").into_raw();
    QfoamStatus::Ok
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qfoam_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
