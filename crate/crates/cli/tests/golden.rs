//! Byte-exact regression of CLI transcripts against `tests/golden/*.txt`.
//! Set `TWISTALEX_BLESS=1` to rewrite the files after an intended change.

mod common;

use std::fs;

use common::{golden_path, transcript, CASES};
use twistalex_cli::run;

#[test]
fn golden_transcripts() {
    let bless = std::env::var_os("TWISTALEX_BLESS").is_some();
    let mut mismatches = Vec::new();
    for (name, cmd) in CASES {
        let got = transcript(cmd);
        let path = golden_path(name);
        if bless {
            fs::write(&path, &got).unwrap();
            continue;
        }
        let want = fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("missing golden {}: {e}", path.display()));
        if got != want {
            mismatches.push(format!("{name}:\n--- want\n{want}--- got\n{got}"));
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

#[test]
fn runs_are_deterministic() {
    for (_, cmd) in CASES {
        assert_eq!(transcript(cmd), transcript(cmd));
    }
}

#[test]
fn braid_matches_builtin() {
    assert_eq!(
        run(["twistalex", "alex", "--builtin", "trefoil"]).stdout,
        run(["twistalex", "alex", "--braid", "2: 1 1 1"]).stdout
    );
}
