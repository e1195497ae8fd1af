use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use a1deg_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(a1deg_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn pretty(g: *const A1degGw) -> String {
    unsafe {
        let s = a1deg_gw_to_string(g);
        let out = CStr::from_ptr(s).to_str().unwrap().to_string();
        a1deg_string_free(s);
        out
    }
}

#[test]
fn ekl_and_equality() {
    unsafe {
        let mut g = ptr::null_mut();
        let st = a1deg_ekl(
            c("q").as_ptr(),
            c("z").as_ptr(),
            c("z^2").as_ptr(),
            c("0").as_ptr(),
            ptr::null(),
            &mut g,
        );
        assert_eq!(st, A1degStatus::Ok);
        assert_eq!(pretty(g), "⟨1⟩ + ⟨−1⟩");
        assert_eq!(a1deg_gw_rank(g), 2);
        let mut sig = 7;
        assert_eq!(a1deg_gw_signature(g, &mut sig), 1);
        assert_eq!(sig, 0);
        let mut h = ptr::null_mut();
        assert_eq!(
            a1deg_gw_parse(c("q").as_ptr(), c("<1> + <-1>").as_ptr(), &mut h),
            A1degStatus::Ok
        );
        let mut eq = -1;
        assert_eq!(a1deg_gw_eq(g, h, &mut eq), A1degStatus::Ok);
        assert_eq!(eq, 1);
        let mut sum = ptr::null_mut();
        assert_eq!(a1deg_gw_add(g, h, &mut sum), A1degStatus::Ok);
        assert_eq!(a1deg_gw_rank(sum), 4);
        let json = a1deg_gw_to_json(sum);
        let v: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["rank"], 4);
        a1deg_string_free(json);
        for p in [g, h, sum] {
            a1deg_gw_free(p);
        }
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        let st = a1deg_ekl(
            c("q").as_ptr(),
            c("x,y").as_ptr(),
            c("x; x").as_ptr(),
            c("0,0").as_ptr(),
            ptr::null(),
            &mut g,
        );
        assert_eq!(st, A1degStatus::PreconditionFailed);
        assert!(g.is_null());
        assert!(last_error().contains("not isolated"));
        let st = a1deg_gw_parse(c("fp:4").as_ptr(), c("<1>").as_ptr(), &mut g);
        assert_eq!(st, A1degStatus::InputError);
        let st = a1deg_gw_parse(ptr::null(), c("<1>").as_ptr(), &mut g);
        assert_eq!(st, A1degStatus::NullPointer);
        let mut eq = 0;
        assert_eq!(
            a1deg_gw_eq(ptr::null(), ptr::null(), &mut eq),
            A1degStatus::NullPointer
        );
    }
}

#[test]
fn cancellation_is_observed() {
    unsafe {
        let token = a1deg_cancel_new();
        a1deg_cancel_trigger(token);
        let mut g = ptr::null_mut();
        let st = a1deg_global_degree(
            c("q").as_ptr(),
            c("x,y").as_ptr(),
            c("x^3 - y^2 + x*y; y^3 - x - 1").as_ptr(),
            token,
            &mut g,
        );
        assert_eq!(st, A1degStatus::Cancelled);
        a1deg_cancel_free(token);
    }
}

#[test]
fn enumerative_counts() {
    unsafe {
        let lines = include_str!("../../core/tests/fixtures/four_lines_generic.json");
        let mut g = ptr::null_mut();
        assert_eq!(
            a1deg_four_lines(c("q").as_ptr(), c(lines).as_ptr(), ptr::null(), &mut g),
            A1degStatus::Ok
        );
        assert_eq!(pretty(g), "⟨1⟩ + ⟨−1⟩");
        a1deg_gw_free(g);
        let cubic = include_str!("../../core/tests/fixtures/cubic_f7.txt").trim();
        assert_eq!(
            a1deg_cubic_lines(c("fp:7").as_ptr(), c(cubic).as_ptr(), ptr::null(), &mut g),
            A1degStatus::Ok
        );
        assert_eq!(a1deg_gw_rank(g), 27);
        a1deg_gw_free(g);
        assert_eq!(
            a1deg_trace_form(
                c("q").as_ptr(),
                c("t").as_ptr(),
                c("t^2 + 1").as_ptr(),
                c("1").as_ptr(),
                &mut g
            ),
            A1degStatus::Ok
        );
        assert_eq!(pretty(g), "⟨1⟩ + ⟨−1⟩");
        a1deg_gw_free(g);
    }
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn c_program_links_against_the_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("liba1deg_ffi.a");
    let compiler = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || Command::new(&compiler).arg("--version").output().is_err() {
        eprintln!(
            "skipping: no static library at {} or no C compiler",
            lib.display()
        );
        return;
    }
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("a1deg_smoke");
    let status = Command::new(&compiler)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "smoke test exited with {:?}",
        out.status
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "⟨1⟩ + ⟨−1⟩");
}
