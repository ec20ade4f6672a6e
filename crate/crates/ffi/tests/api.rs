use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use dehnkit_ffi::*;

fn parse(text: &str) -> *mut DkPresentation {
    let t = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { dk_presentation_parse(t.as_ptr(), &mut p) }, DkStatus::Ok);
    assert!(!p.is_null());
    p
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { dk_string_free(s) };
    out
}

fn verdict(p: *const DkPresentation, word: &str) -> DkVerdict {
    let w = CString::new(word).unwrap();
    let mut v = DkVerdict::Unknown;
    assert_eq!(unsafe { dk_word_problem(p, w.as_ptr(), &mut v) }, DkStatus::Ok);
    v
}

#[test]
fn word_problem_round_trip() {
    let p = parse("generators: a\nrelator: a^3\n");
    assert_eq!(verdict(p, "a^6"), DkVerdict::Trivial);
    assert_eq!(verdict(p, "a^2"), DkVerdict::Nontrivial);

    let w = CString::new("a^3").unwrap();
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { dk_word_problem_json(p, w.as_ptr(), &mut json) }, DkStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    assert_eq!(v["verdict"], "trivial");
    assert_eq!(v["method"], "dehn");

    let mut text = ptr::null_mut();
    assert_eq!(unsafe { dk_presentation_format(p, &mut text) }, DkStatus::Ok);
    assert_eq!(take(text), "generators: a\nrelator: a^3\n");
    unsafe { dk_presentation_free(p) };
}

#[test]
fn parse_errors_carry_messages() {
    let t = CString::new("generators: a\nrelator: b").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { dk_presentation_parse(t.as_ptr(), &mut p) }, DkStatus::ParseError);
    assert!(p.is_null());
    let msg = unsafe { CStr::from_ptr(dk_last_error_message()) }.to_str().unwrap();
    assert_eq!(msg, "line 2, column 10: unknown generator `b`");

    let q = parse("generators: a\n");
    let bad = CString::new("a z").unwrap();
    let mut v = DkVerdict::Unknown;
    assert_eq!(unsafe { dk_word_problem(q, bad.as_ptr(), &mut v) }, DkStatus::ParseError);
    // a successful call clears the message
    let mut rank = 0;
    assert_eq!(unsafe { dk_presentation_rank(q, &mut rank) }, DkStatus::Ok);
    assert_eq!(rank, 1);
    assert!(dk_last_error_message().is_null());
    unsafe { dk_presentation_free(q) };
}

#[test]
fn surfaces_counts_and_simplify() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { dk_presentation_surface(0, &mut s) }, DkStatus::InvalidArgument);
    assert_eq!(unsafe { dk_presentation_surface(2, &mut s) }, DkStatus::Ok);
    assert_eq!(verdict(s, "a1"), DkVerdict::Nontrivial);
    assert_eq!(verdict(s, "a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1"), DkVerdict::Trivial);
    unsafe { dk_presentation_free(s) };

    let chain = parse("generators: a b c\nrelator: a b c\nrelator: c b^-2\n");
    let mut n = 0;
    assert_eq!(unsafe { dk_hom_count(chain, 3, &mut n) }, DkStatus::Ok);
    assert_eq!(n, 6);
    let mut q = ptr::null_mut();
    assert_eq!(unsafe { dk_simplify(chain, &mut q) }, DkStatus::Ok);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { dk_presentation_format(q, &mut text) }, DkStatus::Ok);
    assert_eq!(take(text), "generators: b\n");
    let mut kind = DkTorsion::Torsion;
    let mut exponent = 0;
    assert_eq!(unsafe { dk_classify(chain, &mut kind, &mut exponent) }, DkStatus::Ok);
    assert_eq!(kind, DkTorsion::NotOneRelator);
    unsafe {
        dk_presentation_free(q);
        dk_presentation_free(chain);
        dk_presentation_free(ptr::null_mut());
        dk_string_free(ptr::null_mut());
    }
}

#[test]
fn descent_as_json() {
    let p = parse("generators: a b\nrelator: a b a^-1 b^-1\n");
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { dk_descend_json(p, &mut json) }, DkStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    assert_eq!(v["shape"], "Z");
    unsafe { dk_presentation_free(p) };

    let two = parse("generators: a b\nrelator: a^2\nrelator: b^2\n");
    assert_eq!(unsafe { dk_descend_json(two, &mut json) }, DkStatus::Unsupported);
    unsafe { dk_presentation_free(two) };
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/dehnkit.h");
    let src = std::env::temp_dir().join(format!("dehnkit-header-{}.c", std::process::id()));
    std::fs::write(
        &src,
        format!("#include \"{header}\"\nint main(void) {{ DkPresentation *p = 0; DkStatus s = dk_presentation_surface(2, &p); dk_presentation_free(p); return s; }}\n"),
    )
    .unwrap();
    let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror"]).arg(&src).output() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
