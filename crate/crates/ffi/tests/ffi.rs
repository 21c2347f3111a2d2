use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::ptr;

use ivlev_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let owned = CStr::from_ptr(s).to_str().unwrap().to_string();
    ivlev_string_free(s);
    owned
}

unsafe fn last_error() -> String {
    let p = ivlev_last_error();
    assert!(!p.is_null(), "no error recorded");
    CStr::from_ptr(p).to_str().unwrap().to_string()
}

unsafe fn system(name: &str, nd: bool) -> *mut IvlevSystem {
    let mut sys = ptr::null_mut();
    assert_eq!(ivlev_system_new(c(name).as_ptr(), nd, &mut sys), IvlevStatus::Ok);
    sys
}

unsafe fn formula(text: &str, constants: Option<&str>) -> *mut IvlevFormula {
    let mut f = ptr::null_mut();
    let constants = constants.map(c);
    let cp = constants.as_ref().map_or(ptr::null(), |s| s.as_ptr());
    assert_eq!(ivlev_formula_parse(c(text).as_ptr(), cp, &mut f), IvlevStatus::Ok, "{}", last_error());
    f
}

#[test]
fn systems_and_formulas_round_trip() {
    unsafe {
        let sys = system("t45m-c", true);
        let mut name = ptr::null_mut();
        assert_eq!(ivlev_system_name(sys, &mut name), IvlevStatus::Ok);
        assert_eq!(take(name), "t45m-c (nd quantifiers)");
        ivlev_system_free(sys);

        let f = formula("forall x.P(x,c)->[]Q", Some("c"));
        let mut text = ptr::null_mut();
        assert_eq!(ivlev_formula_to_string(f, &mut text), IvlevStatus::Ok);
        assert_eq!(take(text), "forall x. P(x, c) -> []Q");
        ivlev_formula_free(f);

        let version = CStr::from_ptr(ivlev_version()).to_str().unwrap();
        assert_eq!(version, env!("CARGO_PKG_VERSION"));
    }
}

#[test]
fn tautology_verdicts() {
    unsafe {
        let tm = system("tm", false);
        let km = system("km", false);
        let k = formula("[](A -> B) -> ([]A -> []B)", None);
        let mut verdict = IvlevVerdict::Undecided;
        let mut witness = ptr::null_mut();
        assert_eq!(ivlev_check_tautology(tm, k, 0, &mut verdict, &mut witness), IvlevStatus::Ok);
        assert_eq!(verdict, IvlevVerdict::Holds);
        assert!(witness.is_null());

        assert_eq!(ivlev_check_tautology(km, k, 0, &mut verdict, &mut witness), IvlevStatus::Ok);
        assert_eq!(verdict, IvlevVerdict::Refuted);
        let witness: serde_json::Value = serde_json::from_str(&take(witness)).unwrap();
        assert!(witness.to_string().contains("I+"), "{witness}");

        assert_eq!(ivlev_check_tautology(tm, k, 1, &mut verdict, ptr::null_mut()), IvlevStatus::Ok);
        assert_eq!(verdict, IvlevVerdict::Undecided);

        let q = formula("forall x. P(x)", None);
        assert_eq!(ivlev_check_tautology(tm, q, 0, &mut verdict, ptr::null_mut()), IvlevStatus::InvalidInput);
        assert!(last_error().contains("not propositional"));

        for f in [k, q] {
            ivlev_formula_free(f);
        }
        ivlev_system_free(tm);
        ivlev_system_free(km);
    }
}

#[test]
fn countermodel_search() {
    unsafe {
        let km = system("km", false);
        let tm = system("tm", false);
        let cbf = formula("([]forall x. P(x)) -> forall x. []P(x)", None);
        let mut verdict = IvlevVerdict::Holds;
        let mut json = ptr::null_mut();
        assert_eq!(ivlev_find_countermodel(km, cbf, 2, 0, &mut verdict, &mut json), IvlevStatus::Ok);
        assert_eq!(verdict, IvlevVerdict::Refuted);
        let cm: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(cm["structure"]["universe"], 2);

        assert_eq!(ivlev_find_countermodel(tm, cbf, 2, 0, &mut verdict, &mut json), IvlevStatus::Ok);
        assert_eq!(verdict, IvlevVerdict::Holds);
        assert!(json.is_null());

        assert_eq!(ivlev_find_countermodel(tm, cbf, 2, 1, &mut verdict, ptr::null_mut()), IvlevStatus::Ok);
        assert_eq!(verdict, IvlevVerdict::Undecided);
        ivlev_formula_free(cbf);
        ivlev_system_free(km);
        ivlev_system_free(tm);
    }
}

#[test]
fn proof_checking() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/proofs");
    unsafe {
        for (name, expected) in [("box_implies_diamond", IvlevVerdict::Holds), ("reject_mp", IvlevVerdict::Refuted)] {
            let doc = c(&std::fs::read_to_string(dir.join(format!("{name}.json"))).unwrap());
            let mut verdict = IvlevVerdict::Undecided;
            let mut report = ptr::null_mut();
            assert_eq!(ivlev_check_proof(doc.as_ptr(), &mut verdict, &mut report), IvlevStatus::Ok);
            assert_eq!(verdict, expected, "{name}");
            let report: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
            assert!(report["verdict"].is_string());
        }
        let mut verdict = IvlevVerdict::Undecided;
        assert_eq!(ivlev_check_proof(c("{").as_ptr(), &mut verdict, ptr::null_mut()), IvlevStatus::InvalidInput);
    }
}

#[test]
fn errors_are_reported_by_code_and_message() {
    unsafe {
        let mut sys = ptr::null_mut();
        assert_eq!(ivlev_system_new(c("s5").as_ptr(), false, &mut sys), IvlevStatus::UnknownSystem);
        assert!(sys.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(ivlev_system_new(ptr::null(), false, &mut sys), IvlevStatus::NullArgument);
        assert_eq!(ivlev_system_new(c("tm").as_ptr(), false, ptr::null_mut()), IvlevStatus::NullArgument);

        let mut f = ptr::null_mut();
        assert_eq!(ivlev_formula_parse(c("A ->").as_ptr(), ptr::null(), &mut f), IvlevStatus::ParseError);
        assert!(f.is_null());
        let bad = [0xffu8, 0];
        assert_eq!(ivlev_formula_parse(bad.as_ptr().cast(), ptr::null(), &mut f), IvlevStatus::InvalidUtf8);

        let mut verdict = IvlevVerdict::Holds;
        assert_eq!(
            ivlev_check_tautology(ptr::null(), ptr::null(), 0, &mut verdict, ptr::null_mut()),
            IvlevStatus::NullArgument
        );

        // a successful call clears the message
        let sys = system("tm", false);
        assert!(ivlev_last_error().is_null());
        ivlev_system_free(sys);
        ivlev_system_free(ptr::null_mut());
        ivlev_formula_free(ptr::null_mut());
        ivlev_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_exported_functions() {
    let header = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/ivlev.h")).unwrap();
    for name in [
        "ivlev_last_error",
        "ivlev_version",
        "ivlev_string_free",
        "ivlev_system_new",
        "ivlev_system_name",
        "ivlev_system_free",
        "ivlev_formula_parse",
        "ivlev_formula_to_string",
        "ivlev_formula_free",
        "ivlev_check_tautology",
        "ivlev_find_countermodel",
        "ivlev_check_proof",
    ] {
        assert!(header.contains(&format!("{name}(")), "{name} missing from the header");
    }
    assert!(header.contains("typedef struct IvlevSystem IvlevSystem;"));
    assert!(header.contains("IVLEV_STATUS_PARSE_ERROR = -4"));
}

#[test]
fn c_program_links_against_the_static_library() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let archive = lib_dir.join("libivlev_ffi.a");
    if !archive.exists() || std::process::Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library at {}", archive.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = std::process::Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = std::process::Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "[](A -> B) -> []A -> []B refuted witness\nerror reported\n");
}
