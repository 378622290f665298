//! Compiles and runs a small C program against the generated header and
//! the shared library, proving the ABI surface end to end.

use std::path::PathBuf;
use std::process::Command;

fn target_debug_dir() -> PathBuf {
    // tests run from target/debug/deps/<bin>; the library sits one level up
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_drives_the_library() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    let lib_dir = target_debug_dir();
    assert!(
        lib_dir.join("libcrtool_ffi.so").exists() || lib_dir.join("libcrtool_ffi.a").exists(),
        "library artifact missing in {}",
        lib_dir.display()
    );

    let c_src = r#"
#include <stdio.h>
#include <string.h>
#include "crtool.h"

int main(void) {
    const char *spec = "{\"n\": 5, \"blocks\": [{\"size\": 4, \"sign\": 1, "
                       "\"jet\": {\"family\": \"Zero\", \"order\": 4}}]}";
    CrtModel *model = NULL;
    if (crt_model_parse(spec, &model) != CRT_STATUS_OK) return 1;
    char *json = NULL;
    int pass = -1;
    if (crt_model_check2nd(model, &json, &pass) != CRT_STATUS_OK) return 2;
    if (pass != 1) return 3;
    if (strstr(json, "jordan_type") == NULL) return 4;
    crt_string_free(json);
    crt_model_free(model);

    char *report = NULL;
    int verdict = -1;
    if (crt_run("enumerate", "{\"n\": 5}", -1, 0, &report, &verdict) != CRT_STATUS_OK) return 5;
    if (verdict != 2) return 6;
    if (strstr(report, "\"count\": 3") == NULL) return 7;
    crt_string_free(report);

    CrtModel *bad = NULL;
    if (crt_model_parse("{\"n\": 3, \"blocks\": []}", &bad) != CRT_STATUS_ERROR) return 8;
    char *err = crt_last_error();
    if (err == NULL) return 9;
    crt_string_free(err);

    printf("c-smoke-ok\n");
    return 0;
}
"#;
    let dir = std::env::temp_dir().join("crtool-c-smoke");
    std::fs::create_dir_all(&dir).unwrap();
    let src_path = dir.join("smoke.c");
    std::fs::write(&src_path, c_src).unwrap();
    let bin_path = dir.join("smoke");

    let status = Command::new("cc")
        .arg(&src_path)
        .arg("-I")
        .arg(&include)
        .arg("-L")
        .arg(&lib_dir)
        .arg("-lcrtool_ffi")
        .arg("-lpthread")
        .arg("-ldl")
        .arg("-lm")
        .arg(format!("-Wl,-rpath,{}", lib_dir.display()))
        .arg("-o")
        .arg(&bin_path)
        .status()
        .expect("cc not available");
    assert!(status.success(), "C compilation failed");

    let out = Command::new(&bin_path).output().unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("c-smoke-ok"));
}
