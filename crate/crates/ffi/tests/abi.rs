use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use vtl_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    vtl_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(vtl_last_error()).to_str().unwrap().to_owned()
}

#[test]
fn projector_is_idempotent_through_handles() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(vtl_projector_element(3, VTL_FORM_RECURSIVE, &mut f), VtlStatus::Ok);
        let mut sq = ptr::null_mut();
        assert_eq!(vtl_element_mul(f, f, &mut sq), VtlStatus::Ok);
        let mut eq = 0;
        assert_eq!(vtl_element_equal(f, sq, &mut eq), VtlStatus::Ok);
        assert_eq!(eq, 1);
        let (mut terms, mut strands) = (0usize, 0u32);
        assert_eq!(vtl_element_shape(f, &mut terms, &mut strands), VtlStatus::Ok);
        assert_eq!((terms, strands), (15, 3));

        let mut e = ptr::null_mut();
        assert_eq!(vtl_generator(3, VTL_GEN_E, 2, &mut e), VtlStatus::Ok);
        let mut fe = ptr::null_mut();
        assert_eq!(vtl_element_mul(f, e, &mut fe), VtlStatus::Ok);
        let (mut n_terms, mut n) = (1usize, 0u32);
        vtl_element_shape(fe, &mut n_terms, &mut n);
        assert_eq!(n_terms, 0);
        for h in [f, sq, e, fe] {
            vtl_element_free(h);
        }
    }
}

#[test]
fn tables_render_and_round_trip() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(vtl_projector_table(4, VTL_FORM_EXPLICIT, &mut t), VtlStatus::Ok);
        let name = CString::new("f_4").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(vtl_table_render(t, name.as_ptr(), &mut s), VtlStatus::Ok);
        assert_eq!(take(s), "f_4 = (1/4!)[4]_4 - (2/(4!(d+4)))[2]_4 + (1/(3(d+2)(d+4)))[0]_4");

        assert_eq!(vtl_table_to_json(t, &mut s), VtlStatus::Ok);
        let json = CString::new(take(s)).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(vtl_table_from_json(json.as_ptr(), &mut back), VtlStatus::Ok);

        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(vtl_table_expand(back, &mut a), VtlStatus::Ok);
        assert_eq!(vtl_projector_element(4, VTL_FORM_SIMPLIFIED, &mut b), VtlStatus::Ok);
        let mut eq = 0;
        vtl_element_equal(a, b, &mut eq);
        assert_eq!(eq, 1);

        let mut again = ptr::null_mut();
        assert_eq!(vtl_element_class_decompose(b, &mut again), VtlStatus::Ok);
        assert_eq!(vtl_table_to_json(again, &mut s), VtlStatus::Ok);
        assert_eq!(CString::new(take(s)).unwrap(), json);

        assert_eq!(vtl_element_to_json(a, &mut s), VtlStatus::Ok);
        let ej = CString::new(take(s)).unwrap();
        let mut c = ptr::null_mut();
        assert_eq!(vtl_element_from_json(ej.as_ptr(), &mut c), VtlStatus::Ok);
        vtl_element_equal(a, c, &mut eq);
        assert_eq!(eq, 1);

        vtl_table_free(t);
        vtl_table_free(back);
        vtl_table_free(again);
        for h in [a, b, c] {
            vtl_element_free(h);
        }
    }
}

#[test]
fn trace_and_evaluation() {
    unsafe {
        let mut f = ptr::null_mut();
        vtl_projector_element(2, VTL_FORM_EXPLICIT, &mut f);
        let d = CString::new("3").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(vtl_element_trace_at(f, d.as_ptr(), &mut s), VtlStatus::Ok);
        // (d^2 + d - 2)/2 at d = 3
        assert_eq!(take(s), "5");
        assert_eq!(vtl_element_trace_json(f, &mut s), VtlStatus::Ok);
        let tr: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(tr["num"], serde_json::json!(["-2", "1", "1"]));

        assert_eq!(vtl_element_eval_json(f, d.as_ptr(), &mut s), VtlStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        let mut coeffs: Vec<&str> = v["terms"].as_array().unwrap().iter().map(|t| t["coeff"].as_str().unwrap()).collect();
        coeffs.sort();
        assert_eq!(coeffs, ["-1/3", "1/2", "1/2"]);

        let zero = CString::new("0").unwrap();
        assert_eq!(vtl_element_eval_json(f, zero.as_ptr(), &mut s), VtlStatus::Pole);
        assert!(last_error().contains("pole"));
        vtl_element_free(f);
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut e = ptr::null_mut();
        assert_eq!(vtl_generator(3, VTL_GEN_V, 3, &mut e), VtlStatus::InvalidArgument);
        assert!(last_error().contains("out of range"));
        assert_eq!(vtl_generator(3, 9, 1, &mut e), VtlStatus::InvalidArgument);
        assert_eq!(vtl_projector_table(3, 7, ptr::null_mut()), VtlStatus::InvalidArgument);
        assert_eq!(vtl_projector_table(3, VTL_FORM_EXPLICIT, ptr::null_mut()), VtlStatus::NullPointer);

        let (mut a, mut b, mut c) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        vtl_generator(2, VTL_GEN_E, 1, &mut a);
        vtl_generator(3, VTL_GEN_E, 1, &mut b);
        assert_eq!(vtl_element_add(a, b, &mut c), VtlStatus::StrandMismatch);
        assert_eq!(vtl_element_mul(a, ptr::null(), &mut c), VtlStatus::NullPointer);

        let mut t = ptr::null_mut();
        assert_eq!(vtl_element_class_decompose(b, &mut t), VtlStatus::NotClassUniform);

        let bad = CString::new("{\"n\": 2").unwrap();
        assert_eq!(vtl_element_from_json(bad.as_ptr(), &mut c), VtlStatus::Parse);
        let d = CString::new("1/0").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(vtl_element_trace_at(a, d.as_ptr(), &mut s), VtlStatus::Parse);
        vtl_element_free(a);
        vtl_element_free(b);
        vtl_element_free(ptr::null_mut());
        vtl_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_reports_json() {
    unsafe {
        let suite = CString::new("relations").unwrap();
        let mut s = ptr::null_mut();
        let mut passed = 0;
        assert_eq!(vtl_verify(suite.as_ptr(), 3, 20240917, 0, &mut s, &mut passed), VtlStatus::Ok);
        assert_eq!(passed, 1);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["suite"], "relations");
        assert_eq!(vtl_verify(suite.as_ptr(), 40, 1, 0, &mut s, &mut passed), VtlStatus::InvalidArgument);
        let bogus = CString::new("bogus").unwrap();
        assert_ne!(vtl_verify(bogus.as_ptr(), 3, 1, 0, &mut s, &mut passed), VtlStatus::Ok);
    }
}

fn target_dir() -> PathBuf {
    // target/<profile>/deps/abi-<hash>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_header() {
    let lib = target_dir().join("libvtl_ffi.a");
    let header_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library at {}", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "vtl.h"

int main(void) {
    VtlClassTable *t = NULL;
    char *s = NULL;
    if (vtl_projector_table(3, VTL_FORM_EXPLICIT, &t) != VTL_STATUS_OK) return 1;
    if (vtl_table_render(t, "f_3", &s) != VTL_STATUS_OK) return 2;
    puts(s);
    vtl_string_free(s);
    vtl_table_free(t);
    VtlElement *e = NULL;
    if (vtl_generator(2, VTL_GEN_E, 5, &e) != VTL_STATUS_INVALID_ARGUMENT) return 3;
    puts(vtl_last_error());
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("f_3 = (1/3!)[3]_3 - (2/(3!(d+2)))[1]_3"));
    assert!(lines.next().unwrap().contains("out of range"));
}
