//! CLI cases shared by the golden tests and the acceptance run.

use std::path::PathBuf;

use twistalex_cli::run;

pub const CASES: &[(&str, &str)] = &[
    ("alex_trefoil", "alex --builtin trefoil"),
    ("alex_unknot", "alex --builtin unknot"),
    ("alex_braid_trefoil", "alex --braid '2: 1 1 1'"),
    ("alex_trefoil_file", "alex --knot tests/data/trefoil.knot --oracle --verbose"),
    ("alex_figure8", "alex --builtin figure8 --oracle --verbose"),
    ("alex_figure8_json", "alex --builtin figure8 --json"),
    ("twisted_trefoil_trivial", "twisted --builtin trefoil"),
    ("twisted_trefoil_two", "twisted --builtin trefoil --rep tests/data/trefoil_two.rep"),
    ("twisted_trefoil_minus_one", "twisted --builtin trefoil --scalar -1"),
    ("twisted_trefoil_broken", "twisted --builtin trefoil --rep tests/data/trefoil_broken.rep"),
    ("twisted_trefoil_sl2", "twisted --builtin trefoil --rep tests/data/trefoil_sl2.rep --oracle --verbose"),
    ("twisted_trefoil_sl2_json", "twisted --builtin trefoil --rep tests/data/trefoil_sl2.rep --json"),
    ("verify_trefoil_root", "verify --builtin trefoil --alpha root-of 't^2-t+1' --inverse"),
    ("verify_trefoil_two", "verify --builtin trefoil --alpha 2"),
    ("verify_figure8_root", "verify --builtin figure8 --alpha root-of 't^2-3t+1' --inverse"),
    ("verify_sl2_i", "verify --builtin trefoil --rep tests/data/trefoil_sl2.rep --alpha i --inverse"),
    ("verify_trefoil_json", "verify --builtin trefoil --alpha root-of 't^2-t+1' --inverse --json"),
    ("crowell_trefoil_minus_one", "crowell --builtin trefoil --rep tests/data/trefoil_minus_one.rep"),
    ("crowell_z2_word", "crowell --action tests/data/z2_free.action --word '^0(a) ^1(b)'"),
    ("crowell_z2_invert", "crowell --action tests/data/z2_free.action --word '^0(a) ^1(b)' --invert"),
    ("crowell_z2_act", "crowell --action tests/data/z2_free.action --word '^0(a) ^0(b)' --act 1"),
    ("crowell_trefoil_sl2", "crowell --builtin trefoil --rep tests/data/trefoil_sl2.rep"),
    ("reciprocal_figure8", "reciprocal --builtin figure8"),
    ("reciprocal_trefoil_two", "reciprocal --builtin trefoil --scalar 2"),
    ("reciprocal_trefoil_gaussian", "reciprocal --builtin trefoil --scalar i"),
    ("error_no_source", "alex"),
    ("error_not_a_knot", "alex --braid '2: 1 1'"),
];

/// Splits on whitespace, keeping single-quoted groups together.
fn words(cmd: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    for c in cmd.chars() {
        match c {
            '\'' => quoted = !quoted,
            c if c.is_whitespace() && !quoted => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

pub fn transcript(cmd: &str) -> String {
    let mut args = vec!["twistalex".to_string()];
    args.extend(words(cmd));
    let o = run(args);
    format!(
        "$ twistalex {cmd}\n[exit {}]\n--- stdout\n{}--- stderr\n{}",
        o.code, o.stdout, o.stderr
    )
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.txt"))
}
