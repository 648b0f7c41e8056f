use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_solqsol")).args(args).env_remove("SOLQSOL_MAX_ORDER").output().unwrap()
}

fn run_env(args: &[&str], cap: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_solqsol")).args(args).env("SOLQSOL_MAX_ORDER", cap).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn temp_path(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("solqsol-cli-{}-{name}", std::process::id()))
}

#[test]
fn qsol_of_d8_by_order() {
    let doc = json(&run(&["qsol", "D8"]));
    let family = &doc["families"][0];
    assert_eq!(family["family"], "qsol");
    assert_eq!(family["orders"], serde_json::json!([1, 2, 8]));
    assert_eq!(family["members"][1]["quotient_type"], "C2xC2");
    assert_eq!(doc["schema_version"], 1);
}

#[test]
fn sol_of_trivial_group() {
    let doc = json(&run(&["families", "C1", "sol"]));
    assert_eq!(doc["families"][0]["orders"], serde_json::json!([1]));
    assert_eq!(doc["group"]["order"], 1);
}

#[test]
fn show_reports_flags_and_histogram() {
    let doc = json(&run(&["show", "Q8xC2"]));
    assert_eq!(doc["group"]["flags"]["hamiltonian"], true);
    assert_eq!(doc["group"]["flags"]["abelian"], false);
    assert_eq!(doc["histogram"]["4"], 12);
    let e = json(&run(&["show", "Ab(3:[1,1])"]));
    assert_eq!(e["group"]["flags"]["elementary_abelian"], true);
}

#[test]
fn projection_claim_is_refuted_as_expected() {
    let out = run(&["verify", "--id", "prop-2.3"]);
    let doc = json(&out);
    let result = &doc["results"][0];
    assert_eq!(result["status"], "refuted");
    assert_eq!(result["expected"], "refuted");
    assert_eq!(result["witness"]["group"], "D6xD10");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["show", "C2x"]).status.code(), Some(2));
    assert_eq!(run(&["show", "D7"]).status.code(), Some(2));
    assert_eq!(run(&["families", "D8", "everything"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--id", "no-such-claim"]).status.code(), Some(2));
    assert_eq!(run(&["show", "C500"]).status.code(), Some(3));
    assert_eq!(run_env(&["show", "D12"], "10").status.code(), Some(3));
    assert_eq!(run_env(&["show", "D10"], "10").status.code(), Some(0));
    assert_eq!(run_env(&["show", "D10"], "ten").status.code(), Some(2));
    let err = String::from_utf8(run(&["show", "C500"]).stderr).unwrap();
    assert!(err.contains("500"), "{err}");
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    for args in [
        &["families", "S4", "char"][..],
        &["sol", "D8xC3"],
        &["census", "--max-order", "12", "--families", "dihedral,abelian"],
        &["verify", "--id", "z2z4-example"],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn census_emits_one_json_line_per_group() {
    let out = run(&["census", "--max-order", "8", "--families", "cyclic"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let orders: Vec<u64> = rows.iter().map(|r| r["order"].as_u64().unwrap()).collect();
    assert_eq!(orders, (1..=8).collect::<Vec<u64>>());
    assert!(rows.iter().all(|r| r["qsol_lattice"]["node_count"].is_u64()));
}

fn dot_edges(dot: &str) -> BTreeSet<(usize, usize)> {
    dot.lines()
        .filter_map(|l| l.trim().strip_suffix(';')?.split_once(" -> "))
        .map(|(a, b)| (a.trim_start_matches('n').parse().unwrap(), b.trim_start_matches('n').parse().unwrap()))
        .collect()
}

#[test]
fn dot_is_the_hasse_diagram_of_the_json_lattice() {
    for (spec, which) in [("D12", "subgroups"), ("Q8xC2", "normal"), ("C2xC4", "sol"), ("S4", "char")] {
        let path = temp_path(&format!("{spec}-{which}.dot"));
        let doc = json(&run(&["families", spec, which, "--dot", path.to_str().unwrap()]));
        let dot = std::fs::read_to_string(&path).unwrap();
        std::fs::remove_file(&path).ok();
        let lattice = &doc["families"][0]["lattice"];
        let nodes: Vec<BTreeSet<u64>> = lattice["json"]["nodes"]
            .as_array()
            .unwrap()
            .iter()
            .map(|n| n["members"].as_array().unwrap().iter().map(|m| m.as_u64().unwrap()).collect())
            .collect();
        let covers: BTreeSet<(usize, usize)> = lattice["json"]["covers"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| (c[0].as_u64().unwrap() as usize, c[1].as_u64().unwrap() as usize))
            .collect();
        let edges = dot_edges(&dot);
        assert_eq!(edges, covers, "{spec} {which}");
        assert_eq!(edges.len() as u64, lattice["edge_count"].as_u64().unwrap());

        // Reflexive-transitive closure of the edges must be inclusion of member sets.
        let k = nodes.len();
        let mut reach = vec![vec![false; k]; k];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in &edges {
            reach[a][b] = true;
        }
        for m in 0..k {
            for a in 0..k {
                for b in 0..k {
                    if reach[a][m] && reach[m][b] {
                        reach[a][b] = true;
                    }
                }
            }
        }
        for a in 0..k {
            for b in 0..k {
                assert_eq!(reach[a][b], nodes[a].is_subset(&nodes[b]), "{spec} {which}: {a} vs {b}");
                if a != b {
                    assert!(!(reach[a][b] && reach[b][a]), "cycle");
                }
            }
        }
    }
}
