use qsv_ffi::*;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    qsv_string_free(s);
    out
}

unsafe fn coefficients(s: *const QsvSeries) -> Vec<(String, String)> {
    (0..qsv_series_len(s))
        .map(|i| {
            let (mut q, mut z, mut c) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
            assert_eq!(qsv_series_term(s, i, &mut q, &mut z, &mut c), QsvStatus::Ok);
            let _ = take(z);
            (take(q), take(c))
        })
        .collect()
}

#[test]
fn level_one_vacuum_through_the_abi() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(qsv_string_coeff(1, 3, 0, 0, true, 8, 1, &mut s), QsvStatus::Ok);
        let got = coefficients(s);
        let want: Vec<(String, String)> =
            [1, 1, 2, 3, 5, 7, 11, 15].iter().enumerate().map(|(n, c)| (n.to_string(), c.to_string())).collect();
        assert_eq!(got, want);
        let mut o = ptr::null_mut();
        assert_eq!(qsv_series_order(s, &mut o), QsvStatus::Ok);
        assert_eq!(take(o), "8");
        qsv_series_free(s);
    }
}

#[test]
fn fractional_exponents_are_exact_strings() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(qsv_string_coeff(1, 3, 0, 0, false, 2, 1, &mut s), QsvStatus::Ok);
        assert_eq!(coefficients(s)[0], ("-1/24".to_string(), "1".to_string()));
        qsv_series_free(s);
    }
}

#[test]
fn invalid_parameters_set_status_and_message() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(qsv_string_coeff(2, 4, 0, 0, true, 5, 1, &mut s), QsvStatus::InvalidParameters);
        assert!(s.is_null());
        assert!(take(qsv_last_error()).contains("gcd"));
        assert_eq!(qsv_string_coeff(1, 3, 0, 0, true, 0, 1, &mut s), QsvStatus::InvalidParameters);
        assert_eq!(qsv_string_coeff(1, 3, 0, 0, true, 5, 1, ptr::null_mut()), QsvStatus::NullPointer);
    }
}

#[test]
fn term_index_is_bounds_checked() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(qsv_string_coeff(1, 3, 0, 0, true, 3, 1, &mut s), QsvStatus::Ok);
        let (mut q, mut z, mut c) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(qsv_series_term(s, 99, &mut q, &mut z, &mut c), QsvStatus::IndexOutOfRange);
        assert_eq!(qsv_series_len(ptr::null()), 0);
        qsv_series_free(s);
        qsv_series_free(ptr::null_mut());
    }
}

#[test]
fn character_handle_carries_z_exponents() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(qsv_character(1, 3, 0, 2, 1, &mut s), QsvStatus::Ok);
        let (mut q, mut z, mut c) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(qsv_series_term(s, 0, &mut q, &mut z, &mut c), QsvStatus::Ok);
        assert_eq!((take(q), take(z), take(c)), ("-1/24".into(), "0".into(), "1".into()));
        qsv_series_free(s);
    }
}

#[test]
fn checks_run_by_id() {
    unsafe {
        assert!(qsv_check_count() >= 60);
        assert!(qsv_check_id(usize::MAX).is_null());
        let first = take(qsv_check_id(0));
        let id = CString::new(first).unwrap();
        let mut st = QsvCheckStatus::Fail;
        let mut vo = ptr::null_mut();
        assert_eq!(qsv_run_check(id.as_ptr(), 20, 1, &mut st, &mut vo), QsvStatus::Ok);
        assert_eq!(st, QsvCheckStatus::Pass);
        assert_eq!(take(vo), "20");

        let unknown = CString::new("no:such:check").unwrap();
        assert_eq!(qsv_run_check(unknown.as_ptr(), 0, 0, &mut st, ptr::null_mut()), QsvStatus::UnknownCheck);
        assert_eq!(qsv_run_check(ptr::null(), 0, 0, &mut st, ptr::null_mut()), QsvStatus::NullPointer);
    }
}

#[test]
fn verify_json_is_canonical() {
    unsafe {
        let f = CString::new("lemma:unusualThetaIdentity*").unwrap();
        let mut a = ptr::null_mut();
        let mut b = ptr::null_mut();
        assert_eq!(qsv_verify_json(f.as_ptr(), 1, &mut a), QsvStatus::Ok);
        assert_eq!(qsv_verify_json(f.as_ptr(), 4, &mut b), QsvStatus::Ok);
        let (a, b) = (take(a), take(b));
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["summary"]["fail"], 0);
        assert!(v["checks"][0].get("wall_time_ms").is_none());
    }
}

#[test]
fn generated_header_declares_the_abi() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/qsv.h")).unwrap();
    for sym in [
        "typedef struct QsvSeries QsvSeries",
        "QSV_STATUS_INVALID_PARAMETERS = 2",
        "qsv_string_coeff(",
        "qsv_series_term(",
        "qsv_series_free(",
        "qsv_run_check(",
        "qsv_verify_json(",
        "qsv_last_error(",
    ] {
        assert!(h.contains(sym), "header lacks {sym}");
    }
}

/// The header must be valid C on its own; skipped when no C compiler exists.
#[test]
fn header_compiles_as_c() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("probe.c");
    std::fs::write(
        &src,
        "#include \"qsv.h\"\nint main(void) { QsvSeries *s = 0; return qsv_series_len(s) == 0 ? 0 : 1; }\n",
    )
    .unwrap();
    let status = std::process::Command::new("cc")
        .args(["-std=c99", "-fsyntax-only", "-Wall", "-Werror", "-I", concat!(env!("CARGO_MANIFEST_DIR"), "/include")])
        .arg(&src)
        .status();
    match status {
        Ok(s) => assert!(s.success(), "cc rejected qsv.h"),
        Err(_) => eprintln!("no C compiler; header compile skipped"),
    }
}
