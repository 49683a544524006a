use std::process::{Command, Output};

use serde_json::Value;

fn buckdens(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_buckdens")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn density_of_two_progressions_is_exactly_one_half() {
    let out = buckdens(&["density", r#"{"progressions":[[1,3],[2,6]]}"#, "--mode", "buck-upper"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    let e = &v["estimates"][0];
    assert_eq!(e["kind"], "exact");
    assert_eq!(e["estimate"], serde_json::json!({"num": 1, "den": 2}));
}

#[test]
fn density_csv_and_text() {
    let set = r#"{"progressions":[[1,2]]}"#;
    let csv = buckdens(&["density", set, "--mode", "buck-lower", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "quantity,kind,estimate_num,estimate_den,lo_num,lo_den,hi_num,hi_den,lo_certified,hi_certified");
    assert_eq!(lines.next().unwrap(), "buck_lower,exact,1,2,1,2,1,2,true,true");
    assert!(!text.contains('\r'));

    let out = buckdens(&["density", set, "--format", "text"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("buck_upper: exact 1/2"));
}

#[test]
fn window_densities_of_x0_are_near_zero() {
    let out = buckdens(&["density", r#"{"family":"x0"}"#, "--mode", "windows", "--horizon", "65536"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    let names: Vec<&str> = v["estimates"].as_array().unwrap().iter().map(|e| e["quantity"].as_str().unwrap()).collect();
    assert_eq!(names, ["d_lower", "d_upper", "banach_lower", "banach_upper"]);
    assert_eq!(v["window"], 256);
}

#[test]
fn classify_finds_the_quasi_periodic_witness() {
    let out = buckdens(&["classify", "--mod", "4", "--elems", "0", "1", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert!(v["quasi_periodic"].is_object());
    assert_eq!(v["quasi_periodic"]["subgroup"]["generator"], 2);
    assert_eq!(v["size"], 3);
}

#[test]
fn gen_lists_members() {
    let out = buckdens(&["gen", r#"{"family":"x0"}"#, "--horizon", "21"]);
    assert_eq!(json(&out)["members"], serde_json::json!([0, 1, 4, 5, 16, 17, 20, 21]));
    let csv = buckdens(&["gen", r#"{"family":"b_alpha","bits":"01"}"#, "--horizon", "9", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap(), "n\n2\n6\n");
}

#[test]
fn sumset_profile_table() {
    let odd = r#"{"progressions":[[1,2]]}"#;
    let out = buckdens(&["sumset", odd, odd, "--horizon", "10", "--max-mod", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["members"], serde_json::json!([2, 4, 6, 8, 10]));
    assert_eq!(v["profiles"][1]["attained"], serde_json::json!([0]));
    assert_eq!(v["profiles"][3]["infinitely_attained"], serde_json::json!([0, 2]));
}

#[test]
fn analyze_odds() {
    let out = buckdens(&["analyze", r#"{"progressions":[[1,2]]}"#]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["q"], 2);
    assert_eq!(v["r"], serde_json::json!([1, 1]));
    assert_eq!(v["sparse_periodicity"].as_array().unwrap().len(), 8);
}

#[test]
fn verify_dk_xi_passes_and_reports_the_small_case() {
    let out = buckdens(&["verify", "dk-xi", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("PASS [ 4] dk-xi"));
    assert!(text.contains("|Z_1| = 7, xi = 7/16"));
}

#[test]
fn verify_output_is_deterministic() {
    let a = buckdens(&["verify", "ruzsa", "--seed", "7"]);
    let b = buckdens(&["verify", "ruzsa", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8(a.stdout).unwrap().contains("seed 0x7"));
}

#[test]
fn output_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("buckdens-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("x0.csv");
    let out = buckdens(&["gen", r#"{"family":"x0"}"#, "--horizon", "5", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "n\n0\n1\n4\n5\n");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn set_descriptions_load_from_files() {
    let dir = std::env::temp_dir().join(format!("buckdens-file-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("set.json");
    std::fs::write(&path, r#"{"family":"d_k","k_prefix":[1,3]}"#).unwrap();
    let out = buckdens(&["gen", path.to_str().unwrap(), "--horizon", "8"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&out)["family"], "d_k");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn malformed_json_exits_2_naming_the_field() {
    let out = buckdens(&["gen", r#"{"family":"d_k","k_prefix":"x"}"#]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("k_prefix"), "{}", stderr(&out));

    let out = buckdens(&["density", r#"{"progressions":[[1,"a"]]}"#]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("progressions"), "{}", stderr(&out));

    let out = buckdens(&["gen", r#"{"family":"weyl","alpha":0.3}"#]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("theta"), "{}", stderr(&out));

    let out = buckdens(&["gen", "{not json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(buckdens(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(buckdens(&["gen", r#"{"family":"x0"}"#, "--horizon", "0"]).status.code(), Some(2));
    assert_eq!(buckdens(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(buckdens(&["density", r#"{"family":"x0"}"#, "--chain", "fibonacci"]).status.code(), Some(2));
}

#[test]
fn limits_exit_3() {
    let out = buckdens(&["gen", r#"{"family":"basis_chain","moduli":[1024,1024,2]}"#]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    let out = buckdens(&["classify", "--mod", "2000000", "--elems", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn thread_variable_is_validated() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_buckdens")).env("BUCKDENS_THREADS", v).args(["classify", "--mod", "6", "--elems", "0", "3"]).output().unwrap()
    };
    assert_eq!(run("2").status.code(), Some(0));
    assert_eq!(run("zero").status.code(), Some(2));
    assert_eq!(run("0").status.code(), Some(2));
}
