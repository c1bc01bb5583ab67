use std::process::{Command, Output};

fn hmskit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hmskit")).args(args).env_remove("HMSKIT_DB").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("hmskit-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn help_for_every_subcommand() {
    let top = hmskit(&["--help"]);
    assert_eq!(top.status.code(), Some(0));
    for sub in [
        "invariants",
        "k3",
        "fibers",
        "height",
        "nsdisc",
        "count",
        "rm-test",
        "mktable",
        "curve-from-ic",
        "show",
        "verify",
        "twist-search",
    ] {
        assert!(stdout(&top).contains(sub), "{sub}");
        let o = hmskit(&[sub, "--help"]);
        assert_eq!(o.status.code(), Some(0), "{sub}");
        assert!(stdout(&o).contains("Usage: hmskit"), "{sub}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(hmskit(&["bogus"]).status.code(), Some(2));
    assert_eq!(hmskit(&["count", "--curve", "1,0,0,0,0,0,1"]).status.code(), Some(2));
    // bad reduction
    assert_eq!(hmskit(&["count", "--curve", "1,0,0,0,0,0,-1", "--prime", "3"]).status.code(), Some(2));
    // not a fundamental discriminant
    assert_eq!(hmskit(&["rm-test", "--curve", "0,1,0,0,0,1,1", "--prime", "7", "--disc", "20"]).status.code(), Some(2));
    assert_eq!(hmskit(&["show", "--disc", "6"]).status.code(), Some(2));
    assert_eq!(hmskit(&["verify", "--disc", "5"]).status.code(), Some(0));
    assert_eq!(hmskit(&["mktable", "--prime", "17", "--out", "/dev/null"]).status.code(), Some(2));
}

#[test]
fn arithmetic_commands() {
    let o = hmskit(&["height", "--chi", "2", "--po", "0", "--contr", "3/2"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "5/2\n"));
    let o = hmskit(&["height", "--chi", "2", "--po", "0", "--component", "A8:3"]);
    assert_eq!(stdout(&o), "2\n");
    let o = hmskit(&["nsdisc", "--fibers", "A2,E7", "--gram", "2,1;1,2"]);
    assert_eq!(stdout(&o), "18\n");
    let o = hmskit(&["count", "--curve", "0,1,0,0,0,0,1", "--prime", "7"]);
    assert_eq!(stdout(&o), "8\n");
    let o = hmskit(&["invariants", "--curve", "0,1,0,0,0,0,-1"]);
    assert!(stdout(&o).starts_with("I2 = 0\nI4 = 0\nI6 = 0\n"));
    let o = hmskit(&["k3", "--from-ic", "24", "0", "0", "4"]);
    assert!(stdout(&o).contains("a = 0\na' = -1\nb'' = 1\nb = 0\nb' = 1\n"), "{}", stdout(&o));
    let o = hmskit(&["k3", "--to-ic", "0", "0", "1", "1", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_is_deterministic() {
    let args = ["--json", "verify", "--disc", "8", "--rm-primes", "7,11"];
    let (a, b) = (hmskit(&args), hmskit(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["records"][0]["rows_total"], 16);
    let o = hmskit(&["--json", "--threads", "1", "verify", "--disc", "8", "--rm-primes", "7,11"]);
    assert_eq!(o.stdout, a.stdout);
}

#[test]
fn database_override() {
    let d = tmp("db");
    let path = d.join("hms.json");
    let mut v: serde_json::Value = serde_json::from_str(hmskit::hmsdb::BUNDLED_JSON).unwrap();
    // break a D=97 row: the check must now fail with exit code 1
    let pts = v["records"][29]["points"].as_array_mut().unwrap();
    pts[0]["coords"][1] = "1/7".into();
    std::fs::write(&path, serde_json::to_string_pretty(&v).unwrap()).unwrap();

    let via_env = Command::new(env!("CARGO_BIN_EXE_hmskit"))
        .args(["verify", "--disc", "97"])
        .env("HMSKIT_DB", &path)
        .output()
        .unwrap();
    assert_eq!(via_env.status.code(), Some(1));
    let via_flag = hmskit(&["--db", path.to_str().unwrap(), "verify", "--disc", "97"]);
    assert_eq!(via_flag.status.code(), Some(1));
    assert_eq!(hmskit(&["verify", "--disc", "97"]).status.code(), Some(0));

    // the flag wins over the environment
    let good = d.join("good.json");
    std::fs::write(&good, hmskit::hmsdb::BUNDLED_JSON).unwrap();
    let both = Command::new(env!("CARGO_BIN_EXE_hmskit"))
        .args(["--db", good.to_str().unwrap(), "verify", "--disc", "97"])
        .env("HMSKIT_DB", &path)
        .output()
        .unwrap();
    assert_eq!(both.status.code(), Some(0));

    std::fs::write(&path, "").unwrap();
    assert_eq!(hmskit(&["--db", path.to_str().unwrap(), "show", "--disc", "5"]).status.code(), Some(2));
    std::fs::remove_dir_all(&d).unwrap();
}

#[test]
fn tables_on_disk() {
    let d = tmp("tables");
    let t5 = d.join("t5.bin");
    let o = hmskit(&["mktable", "--prime", "5", "--out", t5.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    // invariants of y^2 = x^5 + x + 1 mod 5 find a curve; I10 = 0 does not
    let ic = hmskit(&["--json", "invariants", "--curve", "0,1,0,0,0,1,1"]);
    let v: serde_json::Value = serde_json::from_slice(&ic.stdout).unwrap();
    let get = |k: &str| v["invariants"][k].as_str().unwrap().to_string();
    let o = hmskit(&[
        "curve-from-ic",
        "--table",
        t5.to_str().unwrap(),
        "--ic",
        &get("I2"),
        &get("I4"),
        &get("I6"),
        &get("I10"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = hmskit(&["curve-from-ic", "--table", t5.to_str().unwrap(), "--ic", "1", "1", "1", "0"]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_dir_all(&d).unwrap();
}

#[test]
fn twist_search_at_three() {
    let d = tmp("twist");
    let o = hmskit(&["twist-search", "--disc", "5", "--primes", "3", "--tables", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("incomplete separation"));
    assert!(d.join("table_3.bin").exists());
    // second run reads the saved table
    let o2 = hmskit(&["twist-search", "--disc", "5", "--primes", "3", "--tables", d.to_str().unwrap()]);
    assert_eq!(o.stdout, o2.stdout);
    std::fs::remove_dir_all(&d).unwrap();
}
