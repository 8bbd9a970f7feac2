//! The generated header compiles as C and declares the whole API.

use std::path::Path;
use std::process::Command;

const USE_ALL: &str = r#"
#include "edlab.h"
int main(void) {
    size_t sizes[2] = {2, 1};
    EdlProfile *p = NULL;
    EdlInstance *inst = NULL;
    EdlRunReport r;
    EdlBounds b;
    size_t l, c, d;
    double v;
    int32_t ok;
    uint64_t rank;
    EdlStatus s = edl_profile_new(sizes, 2, &p);
    s = edl_profile_cd(p, 2, &c, &d);
    s = edl_profile_select_l1(p, &l, &v);
    s = edl_profile_select_l2(p, &l, &v);
    s = edl_profile_bounds(p, &b);
    s = edl_profile_check_linear_subset(p, &ok);
    s = edl_instance_realize(p, 1, &inst);
    s = edl_instance_verify(inst, p, &ok);
    s = edl_instance_rank(inst, 0, &rank);
    s = edl_run(inst, EDL_ALGO_OBLIVIOUS, 0, p, &r);
    (void)edl_status_message(s);
    (void)edl_profile_n(p);
    (void)edl_profile_m(p);
    (void)edl_instance_len(inst);
    edl_instance_free(inst);
    edl_profile_free(p);
    return r.outcome == EDL_OUTCOME_DUPLICATE && s == EDL_STATUS_OK ? 0 : 1;
}
"#;

#[test]
fn header_compiles_as_c() {
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let header = include.join("edlab.h");
    let text = std::fs::read_to_string(&header).expect("header generated by the build script");
    for name in ["edl_run", "edl_status_message", "EdlRunReport", "EDL_STATUS_PANIC"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use_all.c");
    std::fs::write(&src, USE_ALL).unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-c", "-o"])
        .arg(dir.path().join("use_all.o"))
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .status()
        .expect("a C compiler");
    assert!(status.success());
}
