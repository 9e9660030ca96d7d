use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use symdiv_ffi::*;

fn parse(src: &str) -> *mut SdDivOp {
    let text = CString::new(src).unwrap();
    let mut op = ptr::null_mut();
    assert_eq!(unsafe { sd_div_op_parse(text.as_ptr(), &mut op) }, SdStatus::Ok);
    assert!(!op.is_null());
    op
}

fn text_of(op: *const SdDivOp) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sd_div_op_to_string(op, &mut s) }, SdStatus::Ok);
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { sd_string_free(s) };
    out
}

fn last_error() -> String {
    let p = sd_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn power_through_handles() {
    let op = parse("b0 = x^4\nb1 = x^2");
    assert_eq!(unsafe { sd_div_op_half_order(op) }, 1);
    let mut sq = ptr::null_mut();
    assert_eq!(unsafe { sd_div_op_power(op, 2, &mut sq) }, SdStatus::Ok);
    let text = text_of(sq);
    assert!(text.contains("b0 = x^8 - 20*x^4"), "{text}");
    assert!(text.contains("b1 = 2*x^6 - 2*x^2"), "{text}");
    assert!(text.contains("b2 = x^4"), "{text}");
    unsafe {
        sd_div_op_free(sq);
        sd_div_op_free(op);
    }
}

#[test]
fn weyl_quantization_and_scaling() {
    let mut q = ptr::null_mut();
    assert_eq!(unsafe { sd_quantize_weyl(2, 2, &mut q) }, SdStatus::Ok);
    let text = text_of(q);
    assert!(text.contains("b0 = -1/2*s^4") && text.contains("b1 = x^2"), "{text}");
    let op = parse("b0 = x^2\nb1 = 1");
    let mut scaled = ptr::null_mut();
    assert_eq!(unsafe { sd_div_op_scale_hbar(op, &mut scaled) }, SdStatus::Ok);
    assert!(text_of(scaled).contains("b0 = s^2*x^2"));
    unsafe {
        sd_div_op_free(scaled);
        sd_div_op_free(op);
        sd_div_op_free(q);
    }
}

#[test]
fn positivity_eigenvalue() {
    let op = parse("b0 = x^2 - 1\nb1 = 1");
    let mut lambda = f64::NAN;
    assert_eq!(unsafe { sd_positivity_min_eigenvalue(op, 1, 1.0, 16, &mut lambda) }, SdStatus::Ok);
    assert!(lambda.abs() < 1e-9);
    unsafe { sd_div_op_free(op) };
}

#[test]
fn error_reporting() {
    let bad = CString::new("b0 = 3*x^^2").unwrap();
    let mut op = ptr::null_mut();
    assert_eq!(unsafe { sd_div_op_parse(bad.as_ptr(), &mut op) }, SdStatus::Parse);
    assert!(op.is_null());
    assert!(last_error().starts_with("1:10:"));
    assert_eq!(unsafe { sd_div_op_parse(ptr::null(), &mut op) }, SdStatus::NullPointer);
    let asym = CString::new("a1 = 1").unwrap();
    assert_eq!(unsafe { sd_div_op_parse(asym.as_ptr(), &mut op) }, SdStatus::Math);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sd_div_op_to_string(ptr::null(), &mut s) }, SdStatus::NullPointer);
    assert_eq!(unsafe { sd_div_op_half_order(ptr::null()) }, 0);
    let ok = parse("b0 = 1");
    assert!(sd_last_error_message().is_null());
    unsafe {
        sd_div_op_free(ok);
        sd_div_op_free(ptr::null_mut());
        sd_string_free(ptr::null_mut());
    }
}

#[test]
fn header_compiles_as_c() {
    let header = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/symdiv.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["sd_div_op_parse", "sd_div_op_free", "sd_string_free", "sd_last_error_message", "SD_STATUS_OK"] {
        assert!(text.contains(name), "header lacks {name}");
    }
    let dir = std::env::temp_dir().join(format!("symdiv-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("use_header.c");
    std::fs::write(
        &src,
        "#include \"symdiv.h\"\nint main(void) {\n  SdDivOp *op = 0;\n  SdStatus st = sd_div_op_parse(\"b0 = 1\", &op);\n  return st == SD_STATUS_OK ? 0 : 1;\n}\n",
    )
    .unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(header.parent().unwrap())
        .arg(&src)
        .status()
        .expect("a C compiler is available as `cc`");
    assert!(status.success());
}

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = lib_dir.join("libsymdiv_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let dir = std::env::temp_dir().join(format!("symdiv-ffi-run-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("square.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "symdiv.h"

int main(void) {
  SdDivOp *op = NULL, *sq = NULL;
  char *text = NULL;
  if (sd_div_op_parse("b0 = x^4\nb1 = x^2\n", &op) != SD_STATUS_OK) return 2;
  if (sd_div_op_power(op, 2, &sq) != SD_STATUS_OK) return 3;
  if (sd_div_op_to_string(sq, &text) != SD_STATUS_OK) return 4;
  printf("%s", text);
  int ok = strstr(text, "b0 = x^8 - 20*x^4") != NULL;
  sd_string_free(text);
  sd_div_op_free(sq);
  sd_div_op_free(op);
  if (sd_div_op_parse("b0 = x^^2", &op) != SD_STATUS_PARSE) return 5;
  printf("error: %s\n", sd_last_error_message());
  return ok ? 0 : 1;
}
"#,
    )
    .unwrap();
    let exe = dir.join("square");
    let status = Command::new("cc")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler is available as `cc`");
    assert!(status.success(), "linking the C program failed");
    let out = Command::new(&exe).output().unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "C program exited with {:?}: {stdout}", out.status);
    assert!(stdout.contains("b2 = x^4"));
    assert!(stdout.contains("error: 1:"));
}
