//! Compiles a small C program against the generated header and static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include "bihole.h"

int main(void) {
    BhGraph *g = NULL;
    if (bh_gen_extremal_paths(2, &g) != BH_STATUS_OK) return 10;
    BhBihole *b = NULL;
    bool optimal = false;
    if (bh_max_bihole(g, 0, &b, &optimal) != BH_STATUS_OK) return 11;
    size_t s[16];
    size_t k = bh_bihole_s(b, s, 16);
    printf("order=%zu optimal=%d s_len=%zu\n", bh_bihole_order(b), optimal, k);
    if (bh_graph_parse("p 1 1 2\ne 0 0\n", &g) != BH_STATUS_PARSE) return 12;
    printf("error=%s\n", bh_last_error());
    bh_bihole_free(b);
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let mut cargo = Command::new(env!("CARGO"));
    cargo
        .args(["build", "--quiet", "--lib", "--manifest-path"])
        .arg(manifest.join("Cargo.toml"));
    if profile_dir.file_name().is_some_and(|n| n == "release") {
        cargo.arg("--release");
    }
    assert!(cargo.status().unwrap().success());
    let lib = profile_dir.join("libbihole_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler on PATH, skipping");
        return;
    }

    let dir = std::env::temp_dir().join(format!("bihole-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    let bin = dir.join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let built = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .unwrap();
    assert!(
        built.status.success(),
        "{}",
        String::from_utf8_lossy(&built.stderr)
    );

    let run = Command::new(&bin).output().unwrap();
    let _ = std::fs::remove_dir_all(&dir);
    assert!(run.status.success(), "exit {:?}", run.status.code());
    let out = String::from_utf8(run.stdout).unwrap();
    assert!(out.starts_with("order=5 optimal=1 s_len=5\n"), "{out}");
    assert!(out.contains("error=") && out.contains("line"), "{out}");
}
