//! Acceptance criterion 9: every CLI command with a fixed seed emits
//! byte-identical artifacts across two runs.

use std::path::PathBuf;
use std::process::Command;

fn run_to_file(args: &[&str], out: &PathBuf) {
    let status = Command::new(env!("CARGO_BIN_EXE_saqec"))
        .args(args)
        .arg("--out")
        .arg(out)
        .status()
        .expect("binary runs");
    assert!(status.success(), "command failed: {args:?}");
}

#[test]
fn criterion_9_cli_determinism() {
    let outcome = std::panic::catch_unwind(|| {
        let dir = std::env::temp_dir().join("saqec-acceptance");
        std::fs::create_dir_all(&dir).unwrap();
        let channel_spec = dir.join("dephasing.json");
        std::fs::write(&channel_spec, r#"{"kind":"dephasing","param":0.11}"#).unwrap();
        let state_spec = dir.join("state.json");
        std::fs::write(
            &state_spec,
            r#"{"dim":2,"matrix":[[[0.7,0],[0.1,0.1]],[[0.1,-0.1],[0.3,0]]]}"#,
        )
        .unwrap();
        let spec_str = channel_spec.to_str().unwrap().to_owned();
        let state_str = state_spec.to_str().unwrap().to_owned();

        let commands: Vec<(&str, Vec<String>)> = vec![
            (
                "capacity",
                vec![
                    "capacity", "--spec", &spec_str, "--functional", "coherent", "--seed", "42",
                ]
                .into_iter()
                .map(String::from)
                .collect(),
            ),
            (
                "petz",
                ["petz", "--spec", &spec_str, "--state", &state_str]
                    .into_iter()
                    .map(String::from)
                    .collect(),
            ),
            (
                "klcheck",
                ["klcheck", "--code", "five_qubit", "--errors", "weight_le_1"]
                    .into_iter()
                    .map(String::from)
                    .collect(),
            ),
            (
                "sadecode-csv",
                [
                    "sadecode", "--code", "five_qubit", "--p", "0.1", "--q", "0.01", "--trials",
                    "50000", "--seed", "7", "--format", "csv",
                ]
                .into_iter()
                .map(String::from)
                .collect(),
            ),
            (
                "sadecode-json",
                [
                    "sadecode", "--code", "five_qubit", "--p", "0.1", "--q", "0", "--trials",
                    "20000", "--seed", "11",
                ]
                .into_iter()
                .map(String::from)
                .collect(),
            ),
            (
                "switch",
                [
                    "switch", "--prep", "plus", "--start", "steane", "--path",
                    "reed_muller,steane", "--seed", "5",
                ]
                .into_iter()
                .map(String::from)
                .collect(),
            ),
            (
                "threshold",
                [
                    "threshold", "--family", "dephasing", "--functional", "coherent_1letter",
                    "--seed", "3",
                ]
                .into_iter()
                .map(String::from)
                .collect(),
            ),
            (
                "sweep",
                [
                    "sweep", "--family", "depolarizing", "--functional", "mutual_half", "--grid",
                    "0:0.5:5", "--seed", "9", "--format", "csv",
                ]
                .into_iter()
                .map(String::from)
                .collect(),
            ),
        ];

        for (name, args) in &commands {
            let arg_refs: Vec<&str> = args.iter().map(String::as_str).collect();
            let first = dir.join(format!("{name}-1.out"));
            let second = dir.join(format!("{name}-2.out"));
            run_to_file(&arg_refs, &first);
            run_to_file(&arg_refs, &second);
            let a = std::fs::read(&first).unwrap();
            let b = std::fs::read(&second).unwrap();
            assert!(!a.is_empty(), "{name} produced an empty artifact");
            assert_eq!(a, b, "{name} artifacts differ between runs");
        }

        // Error path: malformed (non-CPTP) Kraus set exits nonzero with a
        // machine-readable message naming the deviation.
        let bad = dir.join("bad.json");
        std::fs::write(
            &bad,
            r#"{"din":2,"dout":2,"kraus":[[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]]}"#,
        )
        .unwrap();
        let output = Command::new(env!("CARGO_BIN_EXE_saqec"))
            .args(["capacity", "--spec", bad.to_str().unwrap()])
            .output()
            .unwrap();
        assert!(!output.status.success());
        let err: serde_json::Value =
            serde_json::from_slice(&output.stderr).expect("stderr is JSON");
        assert!(err["error"]["message"]
            .as_str()
            .unwrap()
            .contains("trace-preserving"));
    });
    match &outcome {
        Ok(()) => println!("PASS criterion 9: CLI determinism under fixed seeds"),
        Err(_) => println!("FAIL criterion 9: CLI determinism under fixed seeds"),
    }
    if let Err(payload) = outcome {
        std::panic::resume_unwind(payload);
    }
}
