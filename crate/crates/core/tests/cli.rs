use std::path::PathBuf;
use std::process::{Command, Output};

fn data(rel: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("data");
    p.push(rel);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobpair")).args(args).env_remove("FROBPAIR_AXIOMS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", "--builtin", "aps"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok).ends_with("result: pass\n"));

    let it = run(&["verify", "--builtin", "it"]);
    assert_eq!(it.status.code(), Some(1));
    let text = stdout(&it);
    assert!(text.contains("FAIL  consistency"), "{text}");
    assert!(text.contains("lhs = "));

    let bad = run(&["verify", "--builtin", "nope"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("invalid value"));

    let missing = run(&["verify", "--pair", "/nonexistent/pair.json"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).starts_with("error: "));
}

#[test]
fn shipped_pair_files_match_builtins() {
    for name in ["aps", "tt", "it"] {
        let built = run(&["construct", "--builtin", name]);
        let file = std::fs::read_to_string(data(&format!("pairs/{name}.json"))).unwrap();
        assert_eq!(stdout(&built), file, "{name}");
    }
    let from_file = run(&["verify", "--pair", &data("pairs/tt.json"), "--report", "json"]);
    let builtin = run(&["verify", "--builtin", "tt", "--report", "json"]);
    assert_eq!(from_file.stdout, builtin.stdout);
}

#[test]
fn json_report_shape() {
    let o = run(&["verify", "--builtin", "it", "--groups", "consistency", "--report", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(v["pair"], "it");
    let records = v["records"].as_array().unwrap();
    assert!(!records.is_empty());
    assert!(records.iter().all(|r| r["group"] == "consistency"));
}

#[test]
fn rank2_parameters() {
    let ok = run(&["verify", "--builtin", "rank2"]);
    assert_eq!(ok.status.code(), Some(0));
    let off = run(&["verify", "--builtin", "rank2", "--params", "eY=2"]);
    assert_eq!(off.status.code(), Some(1));
    let unknown = run(&["verify", "--builtin", "rank2", "--params", "zz=1"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(stderr(&unknown).contains("unknown parameter 'zz'"));
}

#[test]
fn eval_closed_surfaces() {
    let torus = run(&["eval", "--builtin", "aps", &data("cobordisms/torus.cob")]);
    assert_eq!(stdout(&torus), "2\n");
    let sphere = run(&["eval", "--builtin", "aps", &data("cobordisms/sphere.cob")]);
    assert_eq!(stdout(&sphere), "0\n");
    let klein = run(&["eval", "--builtin", "aps", &data("cobordisms/klein.cob")]);
    assert_eq!(klein.status.code(), Some(0));
}

#[test]
fn degree_output() {
    let o = run(&["degree", "+-", "++"]);
    assert_eq!(stdout(&o), "1 0 total=1 essential\n");
    let lr = run(&["degree", "LR", "RL"]);
    assert_eq!(stdout(&lr), "1 1 total=2 essential\n");
    let flat = run(&["degree", "++--"]);
    assert_eq!(stdout(&flat), "0 total=0 inessential\n");
    let odd = run(&["degree", "+-+"]);
    assert_eq!(odd.status.code(), Some(2));
    assert!(stderr(&odd).contains("pole count must be even, got 3"));
}

#[test]
fn cube_homology() {
    let split = run(&["cube", "--builtin", "aps", &data("cubes/split.json")]);
    assert_eq!(stdout(&split), "d^2 = 0\nbetti 0 2\n");
    let merge = run(&["cube", "--builtin", "aps", &data("cubes/merge.json"), "--coeff", "z2"]);
    assert_eq!(stdout(&merge), "d^2 = 0\nbetti 2 0\n");
    let square = run(&["cube", "--builtin", "aps", &data("cubes/square.json"), "--coeff", "z"]);
    assert_eq!(square.status.code(), Some(0), "{}", stderr(&square));
    let it = run(&["cube", "--builtin", "it", &data("cubes/square.json")]);
    assert_eq!(it.status.code(), Some(1));
    assert!(stdout(&it).starts_with("d^2 != 0"));
    let free = run(&["cube", "--builtin", "tt", &data("cubes/split.json")]);
    assert_eq!(free.status.code(), Some(2));
    let fixed = run(&["cube", "--builtin", "tt", &data("cubes/split.json"), "--specialize", "lambda=1", "--coeff", "z2"]);
    assert_eq!(fixed.status.code(), Some(0), "{}", stderr(&fixed));
}

#[test]
fn snf_output() {
    let o = run(&["snf", &data("matrices/diag23.txt")]);
    let text = stdout(&o);
    assert!(text.starts_with("diagonal 1 6\nD\n1 0\n0 6\n"), "{text}");
}

#[test]
fn diamond_exit_codes() {
    assert_eq!(run(&["diamond", "--builtin", "aps"]).status.code(), Some(0));
    assert_eq!(run(&["diamond", "--builtin", "it"]).status.code(), Some(1));
}

#[test]
fn axioms_from_environment() {
    let dir = std::env::temp_dir().join(format!("frobpair-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tiny.eq");
    std::fs::write(&path, "version 1\neq only_unit [frobA]: (eta (x) id_A) ; mu_A == id_A\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_frobpair"))
        .args(["verify", "--builtin", "aps"])
        .env("FROBPAIR_AXIOMS", &path)
        .output()
        .unwrap();
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(text.contains("only_unit"), "{text}");
    assert!(!text.contains("assoc"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn help_is_not_an_error() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify"));
}
