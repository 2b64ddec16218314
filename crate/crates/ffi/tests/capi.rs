use qfoam_ffi::*;
use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::ptr;

fn data(name: &str) -> CString {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    CString::new(std::fs::read_to_string(p).unwrap()).unwrap()
}

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(qfoam_last_error()) }.to_string_lossy().into_owned()
}

fn family(name: &str) -> *mut QfoamFamily {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { qfoam_family_builtin(c(name).as_ptr(), &mut f) }, QfoamStatus::Ok);
    f
}

#[test]
fn families() {
    let f = family("r-tilde");
    assert_eq!(unsafe { qfoam_family_check_axioms(f) }, QfoamStatus::Ok);
    unsafe { qfoam_family_free(f) };
    let f = family("linear:7:1,2,4");
    assert_eq!(unsafe { qfoam_family_check_axioms(f) }, QfoamStatus::Ok);
    unsafe { qfoam_family_free(f) };

    let mut f = ptr::null_mut();
    assert_eq!(unsafe { qfoam_family_parse(data("corrupted.gfam").as_ptr(), &mut f) }, QfoamStatus::Ok);
    assert_eq!(unsafe { qfoam_family_check_axioms(f) }, QfoamStatus::Failed);
    assert!(!last_error().is_empty());
    unsafe { qfoam_family_free(f) };

    let mut f = ptr::null_mut();
    assert_eq!(unsafe { qfoam_family_builtin(c("nope").as_ptr(), &mut f) }, QfoamStatus::Invalid);
    assert!(last_error().contains("nope"));
    assert!(f.is_null());
}

#[test]
fn null_pointers_are_reported() {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { qfoam_family_builtin(ptr::null(), &mut f) }, QfoamStatus::NullPointer);
    assert_eq!(unsafe { qfoam_family_builtin(c("r-tilde").as_ptr(), ptr::null_mut()) }, QfoamStatus::NullPointer);
    assert_eq!(unsafe { qfoam_family_check_axioms(ptr::null()) }, QfoamStatus::NullPointer);
    assert_eq!(unsafe { qfoam_movie_event_count(ptr::null()) }, 0);
    unsafe { qfoam_family_free(ptr::null_mut()) };
    unsafe { qfoam_string_free(ptr::null_mut()) };
}

#[test]
fn cocycles() {
    let f = family("r-tilde");
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { qfoam_cocycle_builtin(c("mochizuki").as_ptr(), f, &mut m) }, QfoamStatus::Ok);
    assert_eq!(unsafe { qfoam_cocycle_verify(f, m) }, QfoamStatus::Ok);
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { qfoam_cocycle_parse(data("perturbed.theta").as_ptr(), f, &mut p) }, QfoamStatus::Ok);
    assert_eq!(unsafe { qfoam_cocycle_verify(f, p) }, QfoamStatus::Failed);
    assert!(last_error().contains("<1><2><3><4>"));
    unsafe {
        qfoam_cocycle_free(m);
        qfoam_cocycle_free(p);
        qfoam_family_free(f);
    }
    let t = family("trivial");
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { qfoam_cocycle_builtin(c("mochizuki").as_ptr(), t, &mut m) }, QfoamStatus::Invalid);
    unsafe { qfoam_family_free(t) };
}

#[test]
fn colorings_and_invariant() {
    let f = family("r-tilde");
    let mut n = 0u64;
    assert_eq!(unsafe { qfoam_graph_coloring_count(data("5_2.graph").as_ptr(), f, &mut n) }, QfoamStatus::Ok);
    assert_eq!(n, 84);
    assert_eq!(unsafe { qfoam_graph_coloring_count(c("arc a\n").as_ptr(), f, &mut n) }, QfoamStatus::Invalid);

    let mut th = ptr::null_mut();
    assert_eq!(unsafe { qfoam_cocycle_builtin(c("mochizuki").as_ptr(), f, &mut th) }, QfoamStatus::Ok);
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { qfoam_movie_parse(data("5_2_2twist.movie").as_ptr(), &mut m) }, QfoamStatus::Ok);
    assert_eq!(unsafe { qfoam_movie_event_count(m) }, 122);
    let mut counts = [0u64; 3];
    let mut written = 0;
    let st = unsafe { qfoam_movie_invariant(m, f, th, counts.as_mut_ptr(), 2, &mut written) };
    assert_eq!((st, written), (QfoamStatus::BufferTooSmall, 3));
    let st = unsafe { qfoam_movie_invariant(m, f, th, counts.as_mut_ptr(), 3, &mut written) };
    assert_eq!(st, QfoamStatus::Ok);
    assert_eq!(counts, [60, 12, 12]);
    unsafe {
        qfoam_movie_free(m);
        qfoam_cocycle_free(th);
        qfoam_family_free(f);
    }
}

#[test]
fn twist_spin_text() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { qfoam_twist_spin(data("5_2.tangle").as_ptr(), 2, &mut s) }, QfoamStatus::Ok);
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { qfoam_movie_parse(s, &mut m) }, QfoamStatus::Ok);
    assert_eq!(unsafe { qfoam_movie_event_count(m) }, 122);
    unsafe {
        qfoam_movie_free(m);
        qfoam_string_free(s);
    }
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { qfoam_movie_parse(c("r3 0 ->").as_ptr(), &mut m) }, QfoamStatus::Invalid);
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/qfoam.h")).unwrap();
    for name in [
        "qfoam_last_error",
        "qfoam_family_builtin",
        "qfoam_family_free",
        "qfoam_cocycle_verify",
        "qfoam_graph_coloring_count",
        "qfoam_movie_parse",
        "qfoam_movie_invariant",
        "qfoam_twist_spin",
        "QFOAM_STATUS_BUFFER_TOO_SMALL",
        "typedef struct QfoamMovie QfoamMovie",
    ] {
        assert!(h.contains(name), "{name}");
    }
}
