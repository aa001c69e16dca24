use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use cubicomp_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    cubic_string_free(p);
    s
}

unsafe fn form(text: &str) -> *mut CubicFormHandle {
    let mut f = ptr::null_mut();
    assert_eq!(cubic_form_parse(cstr(text).as_ptr(), &mut f), CubicStatus::Ok);
    f
}

unsafe fn disc(text: &str) -> *mut CubicDisc {
    let mut d = ptr::null_mut();
    assert_eq!(cubic_disc_new(cstr(text).as_ptr(), &mut d), CubicStatus::Ok);
    d
}

#[test]
fn form_queries() {
    unsafe {
        let f = form("-1,1,0,1");
        let mut out = ptr::null_mut();
        assert_eq!(cubic_form_discriminant(f, &mut out), CubicStatus::Ok);
        assert_eq!(take_string(out), "5");
        assert_eq!(cubic_form_covariant(f, &mut out), CubicStatus::Ok);
        assert_eq!(take_string(out), "3/2,-1/2,1,1/2");
        let mut proj = false;
        assert_eq!(cubic_form_is_projective(f, &mut proj), CubicStatus::Ok);
        assert!(proj);
        let mut g = ptr::null_mut();
        assert_eq!(cubic_form_act(f, 0, 1, -1, 0, &mut g), CubicStatus::Ok);
        let mut coefs = [0i64; 4];
        assert_eq!(cubic_form_coefficients(g, coefs.as_mut_ptr()), CubicStatus::Ok);
        assert_eq!(coefs, [-1, 0, -1, -1]);
        assert_eq!(cubic_form_act(f, 2, 0, 0, 1, &mut g), CubicStatus::NotUnimodular);
        cubic_form_free(g);
        cubic_form_free(f);
    }
}

#[test]
fn json_form_input_and_pair() {
    unsafe {
        let f = form(r#"{"a":[-1,1,0,1]}"#);
        let d = disc("5");
        let mut out = ptr::null_mut();
        assert_eq!(cubic_form_to_pair_json(f, d, &mut out), CubicStatus::Ok);
        assert_eq!(
            take_string(out),
            r#"{"ideal":{"alpha":"-1/2+1/2*sqrt(5)","beta":"1+0*sqrt(5)"},"delta":"-1/2+1/2*sqrt(5)","signed_norm":"-1"}"#
        );
        let wrong = disc("-31");
        assert_eq!(
            cubic_form_to_pair_json(f, wrong, &mut out),
            CubicStatus::DiscriminantMismatch
        );
        cubic_disc_free(wrong);
        cubic_disc_free(d);
        cubic_form_free(f);
    }
}

#[test]
fn compose_and_verify() {
    unsafe {
        let d = disc("5");
        let (f1, f2) = (form("-1,1,0,1"), form("-3,2,-1,1"));
        let mut c = ptr::null_mut();
        assert_eq!(cubic_compose(d, f1, f2, &mut c), CubicStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(cubic_composition_to_json(c, &mut json), CubicStatus::Ok);
        assert!(take_string(json).ends_with(r#""verified":true}"#));

        let mut p = ptr::null_mut();
        assert_eq!(cubic_composition_form(c, &mut p), CubicStatus::Ok);
        let (mut m, mut n) = ([0i64; 4], [0i64; 4]);
        assert_eq!(
            cubic_composition_bilinear(c, m.as_mut_ptr(), n.as_mut_ptr()),
            CubicStatus::Ok
        );
        let mut ok = false;
        assert_eq!(
            cubic_verify(f1, f2, p, m.as_ptr(), n.as_ptr(), &mut ok),
            CubicStatus::Ok
        );
        assert!(ok);
        m[3] += 1;
        assert_eq!(
            cubic_verify(f1, f2, p, m.as_ptr(), n.as_ptr(), &mut ok),
            CubicStatus::Ok
        );
        assert!(!ok);

        let reference = form("-8,5,-3,2");
        let mut found = false;
        let mut w = [0i64; 4];
        assert_eq!(
            cubic_equivalent(p, reference, 0, &mut found, w.as_mut_ptr()),
            CubicStatus::Ok
        );
        assert!(found);
        assert_eq!(w[0] * w[3] - w[1] * w[2], 1);

        for h in [f1, f2, p, reference] {
            cubic_form_free(h);
        }
        cubic_composition_free(c);
        cubic_disc_free(d);
    }
}

#[test]
fn identity_and_classes() {
    unsafe {
        let d = disc("-31");
        let mut e = ptr::null_mut();
        assert_eq!(cubic_identity_form(d, &mut e), CubicStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(cubic_form_to_string(e, &mut out), CubicStatus::Ok);
        assert_eq!(take_string(out), "0,1,1,-7");
        assert_eq!(cubic_classes_json(d, 5, 0, &mut out), CubicStatus::Ok);
        let table = take_string(out);
        assert!(table.starts_with(r#"{"D":-31,"reps":["#), "{table}");
        cubic_form_free(e);
        cubic_disc_free(d);
    }
}

#[test]
fn error_reporting() {
    unsafe {
        let mut d = ptr::null_mut();
        assert_eq!(cubic_disc_new(cstr("8").as_ptr(), &mut d), CubicStatus::Ok);
        cubic_disc_free(d);
        assert_eq!(
            cubic_disc_new(cstr("6").as_ptr(), &mut d),
            CubicStatus::InvalidDiscriminant
        );
        let msg = CStr::from_ptr(cubic_last_error()).to_str().unwrap();
        assert!(msg.contains("0 or 1 mod 4"), "{msg}");
        assert_eq!(cubic_disc_new(ptr::null(), &mut d), CubicStatus::NullPointer);
        let mut f = ptr::null_mut();
        assert_eq!(
            cubic_form_parse(cstr("1,2,3").as_ptr(), &mut f),
            CubicStatus::ParseError
        );
        assert_eq!(
            cubic_form_parse(cstr("1,2,3,4").as_ptr(), ptr::null_mut()),
            CubicStatus::NullPointer
        );

        let big = form("123456789012345678901234567890,0,0,1");
        let mut coefs = [0i64; 4];
        assert_eq!(cubic_form_coefficients(big, coefs.as_mut_ptr()), CubicStatus::Overflow);
        cubic_form_free(big);

        let dd = disc("5");
        let (np, ok) = (form("2,0,0,2"), form("-1,1,0,1"));
        let mut c = ptr::null_mut();
        assert_eq!(cubic_compose(dd, np, ok, &mut c), CubicStatus::DiscriminantMismatch);
        cubic_form_free(np);
        cubic_form_free(ok);
        cubic_disc_free(dd);
        // freeing NULL is a no-op
        cubic_form_free(ptr::null_mut());
        cubic_string_free(ptr::null_mut());
    }
}

/// Compiles `tests/c/smoke.c` against the generated header and the static
/// library, then runs it.
#[test]
fn c_program_links_against_header() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libcubicomp_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let out = std::env::temp_dir().join(format!("cubicomp_smoke_{}", std::process::id()));
    let status = Command::new(&cc)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout), "c smoke ok\n");
}

fn which_cc() -> Result<String, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok() {
            return Ok(cc.to_string());
        }
    }
    Err(())
}
