use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_crystal-pop"));
    cmd.args(args).env_remove("CRYSTAL_POP_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn gen_dot_has_one_node_per_vertex() {
    let o = run(&["gen", "--shape", "2,1", "--n", "2", "--format", "dot"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.matches("[label=\"").count() - text.matches("->").count(), 8);
    assert_eq!(text.matches("->").count(), 8);
}

#[test]
fn gen_single_box_is_a_chain() {
    let o = run(&["gen", "--shape", "1", "--n", "1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 2);
    assert_eq!(v["edges"].as_array().unwrap().len(), 1);
}

#[test]
fn gen_json_counts() {
    let o = run(&["gen", "--shape", "2,2", "--n", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 20);
}

#[test]
fn pop_longest_orbit() {
    for (shape, n, h) in [("2,1", "2", 3), ("1,1", "3", 4)] {
        let o = run(&["pop", "--shape", shape, "--n", n, "--format", "json"]);
        assert_eq!(code(&o), 0);
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["max_orbit"], h);
        assert_eq!(v["coxeter_number"], h);
    }
}

#[test]
fn pop_trajectory_of_the_minimum_is_trivial() {
    let o = run(&["pop", "--shape", "2,1", "--n", "2", "--element", "1,1/2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["length"], 1);
}

#[test]
fn pop_sweep_passes() {
    let o = run(&["pop", "--max-n", "3", "--max-cells", "3", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("lambda,n,max_orbit"));
}

#[test]
fn perm_pop_first_step() {
    let o = run(&["perm-pop", "--element", "532481976"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with("235418679"));
}

#[test]
fn perm_pop_identity_is_fixed() {
    let o = run(&["perm-pop", "--element", "1234", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["length"], 1);
}

#[test]
fn perm_pop_longest_orbits() {
    let o = run(&["perm-pop", "--max-n", "8", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for (k, row) in v.as_array().unwrap().iter().enumerate() {
        assert_eq!(row["max_orbit"], k + 1);
    }
}

#[test]
fn lattice_verdicts() {
    let o = run(&["lattice", "--shape", "3,2,1", "--n", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["is_lattice"], true);
    assert_eq!(v["clause"], "3,2,1;n=3");

    let o = run(&["lattice", "--shape", "5,2", "--n", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["is_lattice"], false);
    assert_eq!(v["certificate"]["kind"], "bowtie");
    assert_eq!(v["certificate_verified"], true);

    let o = run(&["lattice", "--shape", "1,1", "--n", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("distributive: yes"));
}

#[test]
fn classify_small_range() {
    let o = run(&["classify", "--max-n", "3", "--max-cells", "4"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("lambda,n,predicted,brute_force,clause,vertices,millis"));
    assert_eq!(text.lines().count(), 1 + 25);
}

#[test]
fn verify_suites_pass() {
    assert_eq!(code(&run(&["verify", "--shape", "2,1", "--n", "2"])), 0);
    assert_eq!(code(&run(&["verify", "--n", "4"])), 0);
}

#[test]
fn invalid_input_exits_two() {
    assert_eq!(code(&run(&["pop", "--shape", "", "--n", "2"])), 2);
    assert_eq!(code(&run(&["gen", "--shape", "1,2", "--n", "2"])), 2);
    assert_eq!(code(&run(&["gen", "--shape", "1,1,1", "--n", "2"])), 2);
    assert_eq!(code(&run(&["gen", "--shape", "x", "--n", "2"])), 2);
    assert_eq!(code(&run(&["perm-pop", "--element", "1134"])), 2);
    assert_eq!(code(&run(&["gen", "--shape", "1", "--n", "1", "--format", "csv"])), 2);
    assert_eq!(code(&run(&["classify", "--max-n", "2"])), 2);
    assert_eq!(code(&run(&["bogus"])), 2);
}

#[test]
fn cap_comes_from_the_environment() {
    let o = run_env(&["gen", "--shape", "3,1", "--n", "3"], &[("CRYSTAL_POP_CAP", "10")]);
    assert_eq!(code(&o), 2);
    let o = run_env(&["gen", "--shape", "3,1", "--n", "3", "--cap", "1000"], &[("CRYSTAL_POP_CAP", "10")]);
    assert_eq!(code(&o), 0);
    let o = run_env(&["gen", "--shape", "1", "--n", "1"], &[("CRYSTAL_POP_CAP", "lots")]);
    assert_eq!(code(&o), 2);
}

#[test]
fn out_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.json");
    let o = run(&["gen", "--shape", "2,1", "--n", "2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 8);
}

#[test]
fn output_is_deterministic() {
    let args = ["pop", "--max-n", "3", "--max-cells", "4", "--format", "json", "--jobs", "3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["lattice", "--shape", "4,3,1", "--n", "3", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
