//! Compiles and runs a real C program against the generated header and the
//! static library, proving the ABI end to end. Skips quietly when no C
//! compiler is on PATH.

use std::path::PathBuf;
use std::process::Command;

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "mirror_descent.h"

int main(void) {
    MdProblem *problem = md_problem_fts(50, 5, 1, true);
    if (!problem) { fprintf(stderr, "problem: %s\n", md_last_error_message()); return 1; }
    MdProx *prox = md_prox_default(problem);
    if (!prox) { fprintf(stderr, "prox: %s\n", md_last_error_message()); return 1; }
    double x[50];
    MdRunStats stats;
    MdStatus status = md_solve(problem, prox, MD_ALGORITHM_NEW_ADAPTIVE,
                               0.5, 2.0, x, &stats);
    if (status != MD_STATUS_OK) {
        fprintf(stderr, "solve: %s\n", md_last_error_message());
        return 2;
    }
    if (stats.n_total != 16) { fprintf(stderr, "want 16 iterations, got %zu\n", stats.n_total); return 3; }
    printf("c-smoke ok: %zu iterations, best_f %.6f\n", stats.n_total, stats.best_f);
    md_prox_free(prox);
    md_problem_free(problem);
    return 0;
}
"#;

fn cc_available() -> bool {
    Command::new("cc")
        .arg("--version")
        .output()
        .map(|o| o.status.success())
        .unwrap_or(false)
}

#[test]
fn c_program_links_and_runs() {
    if !cc_available() {
        eprintln!("skipping: no C compiler on PATH");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    // target dir of the enclosing build ("<workspace>/target/<profile>")
    let lib_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = lib_dir.join("libmirror_descent_ffi.a");
    assert!(lib.exists(), "static library missing at {lib:?}");

    let scratch = std::env::temp_dir().join(format!("md_c_smoke_{}", std::process::id()));
    std::fs::create_dir_all(&scratch).unwrap();
    let src = scratch.join("smoke.c");
    let bin = scratch.join("smoke");
    std::fs::write(&src, C_PROGRAM).unwrap();

    let compile = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&bin)
        .output()
        .unwrap();
    assert!(
        compile.status.success(),
        "cc failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&bin).output().unwrap();
    assert!(
        run.status.success(),
        "smoke binary failed:\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&run.stdout),
        String::from_utf8_lossy(&run.stderr)
    );
    assert!(String::from_utf8_lossy(&run.stdout).contains("c-smoke ok"));
    let _ = std::fs::remove_dir_all(&scratch);
}
