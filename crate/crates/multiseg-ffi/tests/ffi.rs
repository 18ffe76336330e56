use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use multiseg_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    ms_string_free(p);
    s
}

unsafe fn last_error() -> String {
    CStr::from_ptr(ms_last_error()).to_str().unwrap().to_string()
}

#[test]
fn canonicalize_and_errors() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(ms_canonicalize(c("[2] + [1,1]").as_ptr(), &mut out), MsStatus::Ok);
        assert_eq!(take(out), "[1]+[2]");
        assert_eq!(ms_canonicalize(c("[2,1]").as_ptr(), &mut out), MsStatus::Parse);
        assert!(last_error().contains("position"));
        assert_eq!(ms_canonicalize(ptr::null(), &mut out), MsStatus::NullPointer);
        assert_eq!(ms_canonicalize(c("[1]").as_ptr(), ptr::null_mut()), MsStatus::NullPointer);
    }
}

#[test]
fn orders_and_multiplicities() {
    unsafe {
        let e = ms_engine_new();
        let mut b = false;
        assert_eq!(ms_leq(e, c("[1,2]").as_ptr(), c("[1]+[2]").as_ptr(), &mut b), MsStatus::Ok);
        assert!(b);
        assert_eq!(ms_prec_k(e, c("[1]").as_ptr(), c("[1,2]").as_ptr(), 2, &mut b), MsStatus::Ok);
        assert!(b);
        assert_eq!(ms_prec_k(e, c("[2]").as_ptr(), c("[1,2]").as_ptr(), 2, &mut b), MsStatus::Ok);
        assert!(!b);
        let mut m = 0i64;
        assert_eq!(ms_multiplicity(e, c("[1,2]").as_ptr(), c("[1]+[2]").as_ptr(), &mut m), MsStatus::Ok);
        assert_eq!(m, 1);
        assert_eq!(ms_leq(ptr::null(), c("[1]").as_ptr(), c("[1]").as_ptr(), &mut b), MsStatus::NullPointer);
        ms_engine_free(e);
    }
}

#[test]
fn kl_polynomials() {
    unsafe {
        let e = ms_engine_new();
        let mut buf = [0i64; 4];
        let mut len = 0usize;
        let st = ms_kl_poly(e, c("1 3 2 4").as_ptr(), c("3 4 1 2").as_ptr(), buf.as_mut_ptr(), buf.len(), &mut len);
        assert_eq!(st, MsStatus::Ok);
        assert_eq!(&buf[..len], &[1, 1]);
        assert_eq!(
            ms_kl_poly(e, c("1 2").as_ptr(), c("1 2 3").as_ptr(), ptr::null_mut(), 0, &mut len),
            MsStatus::Precondition
        );
        assert_eq!(ms_kl_poly(e, c("1 x").as_ptr(), c("1 2").as_ptr(), ptr::null_mut(), 0, &mut len), MsStatus::Parse);
        ms_engine_free(e);
    }
}

#[test]
fn derive_json() {
    unsafe {
        let e = ms_engine_new();
        for route in [MsRoute::Quantum, MsRoute::BasisChange, MsRoute::ParabolicTheta, MsRoute::All] {
            let mut out = ptr::null_mut();
            assert_eq!(ms_derive_json(e, c("[1,2]").as_ptr(), 2, route, &mut out), MsStatus::Ok);
            let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
            assert_eq!(v["basis"], "irreducible");
            assert_eq!(v["agreement"], true);
            assert_eq!(v["terms"], serde_json::json!([{"coeff": 1, "ms": "[1,2]"}, {"coeff": 1, "ms": "[1]"}]));
        }
        ms_engine_free(e);
    }
}

#[test]
fn cached_engine() {
    let dir = tempfile::tempdir().unwrap();
    unsafe {
        let e = ms_engine_with_cache(c(dir.path().to_str().unwrap()).as_ptr());
        assert!(!e.is_null());
        let mut m = 0i64;
        assert_eq!(ms_multiplicity(e, c("[1,2]").as_ptr(), c("[1]+[2]").as_ptr(), &mut m), MsStatus::Ok);
        assert_eq!(ms_engine_flush(e), MsStatus::Ok);
        ms_engine_free(e);
        assert!(ms_engine_with_cache(ptr::null()).is_null());
    }
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
}

#[test]
fn header_is_generated_and_compiles() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let header = std::fs::read_to_string(format!("{}/include/multiseg.h", dir)).unwrap();
    for name in [
        "ms_engine_new",
        "ms_engine_free",
        "ms_derive_json",
        "ms_last_error",
        "MS_STATUS_PARSE",
        "typedef struct MsEngine MsEngine",
    ] {
        assert!(header.contains(name), "{}", name);
    }
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("probe.c");
    std::fs::write(
        &src,
        "#include \"multiseg.h\"\nint main(void) { MsEngine *e = ms_engine_new(); bool b; \
         MsStatus s = ms_leq(e, \"[1,2]\", \"[1]+[2]\", &b); ms_engine_free(e); return s == MS_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    match std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-I"])
        .arg(format!("{}/include", dir))
        .arg(&src)
        .status()
    {
        Ok(st) => assert!(st.success(), "header does not compile"),
        Err(_) => eprintln!("no C compiler found; skipping compile check"),
    }
}
