use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotoidlab"))
        .args(args)
        .env_remove("KNOTOIDLAB_BRIDGE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn underclosure_of_two_one_is_a_trefoil() {
    let o = run(&["invariants", "--name", "2_1", "--closure", "under", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let jones = v["rows"][0]["jones"].as_str().unwrap();
    let trefoil = ["1*A^-4+1*A^-12-1*A^-16", "-1*A^16+1*A^12+1*A^4"];
    assert!(trefoil.contains(&jones), "{jones}");
    let o = run(&["invariants", "--name", "2_1", "--closure", "over", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"][0]["jones"], "1*A^0");
}

#[test]
fn integer_filter_residual() {
    let o = run(&["bounds", "--integer-filter", "--threshold", "5.33349"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("# integer residual: 1,2\n"), "{}", stdout(&o));
}

#[test]
fn table_without_engine() {
    let o = run(&["table", "--surface", "sphere", "--max-crossings", "4"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.ends_with("\tneeds-engine")).count(), 12, "{s}");
    assert!(s.lines().nth(2).unwrap().starts_with("2_1\t2\tfigure\tneeds-engine\t5.33349"));
}

#[test]
fn reports_are_byte_stable() {
    for args in [
        &["gen", "--rational", "2,2", "--steps", "30", "--seed", "11"][..],
        &["map", "--map", "doubling", "--max-crossings", "4"][..],
        &["bounds", "--format", "json"][..],
        &["invariants", "--surface", "plane"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = run(&["gen", "--name", "4_6", "--steps", "30", "--seed", "1"]);
    let b = run(&["gen", "--name", "4_6", "--steps", "30", "--seed", "2"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn failures_are_machine_readable() {
    for (args, kind) in [
        (&["invariants", "--code", "sphere; C1+o"][..], "invalid"),
        (&["gen", "--name", "9_99"][..], "unknown-name"),
        (&["gen", "--integer", "3"][..], "two-components"),
        (&["map", "--name", "2_1", "--surface", "plane"][..], "surface-mismatch"),
        (&["table", "--bridge", "true"][..], "bridge"),
    ] {
        let o = run(args);
        assert!(!o.status.success(), "{args:?}");
        let v: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap_or_else(|_| panic!("{args:?}"));
        assert_eq!(v["error"]["kind"], kind, "{args:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("knotoidlab-out-{}.tsv", std::process::id()));
    let o = run(&["gen", "--name", "2_1", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(text, "name\tsurface\tcrossings\tcode\n2_1\tsphere\t2\tsphere; C1+o C2+u C1+u C2+o\n");
}

/// Runs only when a worker is configured.
#[test]
fn table_with_engine() {
    let Ok(cmd) = std::env::var("KNOTOIDLAB_BRIDGE") else {
        eprintln!("KNOTOIDLAB_BRIDGE unset; skipped");
        return;
    };
    let o = run(&["table", "--max-crossings", "4", "--check", "--bridge", &cmd]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("# mismatched: 0\n"));
}
