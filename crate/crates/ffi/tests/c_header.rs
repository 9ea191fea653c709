//! Compiles a small C program against the generated header and the shared
//! library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "permod.h"

int main(void) {
    PermodField *f = NULL;
    PermodGroup *g = NULL;
    char *json = NULL;
    if (permod_field_new("2", &f) != PERMOD_STATUS_OK) return 10;
    if (permod_group_parse("6\n1 2 3 4 5 0\n", &g) != PERMOD_STATUS_OK) return 11;
    if (permod_verify(g, f, "1,0,0,1,0,0", &json) != PERMOD_STATUS_OK) return 12;
    if (strstr(json, "\"block-equality\"") == NULL) return 13;
    printf("%s\n", json);
    permod_string_free(json);
    if (permod_field_new("nope", &f) != PERMOD_STATUS_PARSE) return 14;
    if (permod_last_error() == NULL) return 15;
    permod_group_free(g);
    permod_field_free(f);
    return 0;
}
"#;

fn have_cc() -> bool {
    Command::new("cc").arg("--version").output().is_ok()
}

#[test]
fn c_program_links_and_runs() {
    if !have_cc() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("permod.h").exists());
    // target/<profile>/deps/<test> -> target/<profile>
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().unwrap().parent().unwrap().to_path_buf();
    assert!(
        lib_dir.join("libpermod.so").exists() || lib_dir.join("libpermod.dylib").exists(),
        "shared library not found in {}",
        lib_dir.display()
    );

    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = tmp.join("permod_smoke.c");
    let bin = tmp.join("permod_smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg("-L")
        .arg(&lib_dir)
        .arg("-lpermod")
        .arg("-o")
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "cc failed");
    let out = Command::new(&bin)
        .env("LD_LIBRARY_PATH", &lib_dir)
        .env("DYLD_LIBRARY_PATH", &lib_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["t"], 2);
    assert_eq!(json["d"], 3);
}
