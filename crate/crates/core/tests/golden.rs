//! Golden values and command-line behaviour.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

use srlin::linear_part::betti_table;
use srlin::oracle::{minimal_free_resolution, nu_report};
use srlin::simplicial::{complex_from_ideal, polarize};
use srlin::{Field, MonomialIdeal, SimplicialComplex, VertexSet};

const EXAMPLE: &str = r#"{"n":5,"facets":[[1,4,5],[2,4,5],[3,4,5],[2,3]]}"#;

fn srlin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_srlin"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(args: &[&str], stdin: &str) -> Value {
    let out = srlin(args, stdin);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn lindef_reports() {
    let v = json(&["lindef"], EXAMPLE);
    assert_eq!(v["ld_ideal"], 0);
    assert_eq!(v["p"], 32003);
    let v = json(
        &["lindef"],
        r#"{"n":6,"facets":[[1,2],[2,3],[3,4],[4,5],[5,6],[1,6]]}"#,
    );
    assert_eq!(
        (v["ld_ideal"].as_u64(), v["froberg"].as_u64()),
        (Some(3), Some(3))
    );
    let v = json(&["lindef"], r#"{"n":3,"facets":[[1,2,3]]}"#);
    assert_eq!(v["ld_ideal"], 0);
    assert_eq!(v["zero_ideal"], true);
    let v = json(
        &["lindef", "--char", "2"],
        r#"{"n":4,"generators":[[1,0,1,0],[0,1,0,1]]}"#,
    );
    assert_eq!(
        (v["ld_ideal"].as_u64(), v["p"].as_u64()),
        (Some(1), Some(2))
    );
}

#[test]
fn oracle_dump_for_principal_ideal() {
    let out = srlin(&["oracle"], r#"{"n":2,"generators":[[1,1]]}"#);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text,
        concat!(
            r#"{"command":"oracle","n":2,"nu":{"ld_ideal":0,"ld_quotient":1,"positions":[{"U":[1,2],"i":1,"kernel_dim":1}]},"p":32003,"#,
            r#""resolution":{"base":"quotient","n":2,"p":32003,"ranks":[1,1],"steps":[{"degrees":[[]],"entries":[],"i":0},"#,
            r#"{"degrees":[[1,2]],"entries":[{"coeff":1,"col":0,"mono":[1,1],"row":0}],"i":1}]}}"#,
            "\n"
        )
    );
}

#[test]
fn dot_matches_the_arrow_diagram() {
    let out = srlin(&["linpart", "--dot"], EXAMPLE);
    let dot = String::from_utf8(out.stdout).unwrap();
    let edges: Vec<&str> = dot.lines().filter(|l| l.contains("->")).collect();
    assert_eq!(edges.len(), 9);
    for e in [
        "\"3_12345\" -> \"2_1234\"",
        "\"3_12345\" -> \"2_1235\"",
        "\"3_12345\" -> \"2_2345\"",
        "\"2_1235\" -> \"1_235\"",
        "\"2_2345\" -> \"1_235\"",
        "\"2_2345\" -> \"1_234\"",
        "\"2_1234\" -> \"1_234\"",
        "\"2_123\" -> \"1_12\"",
        "\"2_123\" -> \"1_13\"",
    ] {
        assert!(edges.iter().any(|l| l.contains(e)), "{e}");
    }
    assert!(dot.contains("\"2_123\" [label=\"(2,123,0,1)\"]"));
}

#[test]
fn csv_and_polarize() {
    let out = srlin(&["betti", "--format", "csv"], EXAMPLE);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("i,U,beta\n0,,1\n1,12,1\n"));
    let v = json(&["polarize"], r#"{"n":2,"generators":[[2,1],[0,3]]}"#);
    assert_eq!(
        v["polarized"],
        serde_json::json!([[1, 1, 1, 0, 0], [0, 0, 1, 1, 1]])
    );
    assert_eq!(v["map"][4], serde_json::json!({"original": 2, "slot": 3}));
}

#[test]
fn exit_codes() {
    assert_eq!(srlin(&["betti"], r#"{"n":2}"#).status.code(), Some(2));
    assert_eq!(srlin(&["betti"], "not json").status.code(), Some(2));
    assert_eq!(
        srlin(&["betti", "--char", "4"], EXAMPLE).status.code(),
        Some(2)
    );
    assert_eq!(
        srlin(&["cwl", "--format", "csv"], EXAMPLE).status.code(),
        Some(2)
    );
    assert_eq!(
        srlin(&["lindef"], r#"{"n":2,"generators":[[0,0]]}"#)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        srlin(&["oracle", "--max-step", "1"], EXAMPLE).status.code(),
        Some(3)
    );
    assert_eq!(srlin(&["cwl"], EXAMPLE).status.code(), Some(0));
}

#[test]
fn random_stream_round_trips() {
    let out = srlin(&["random", "--seed", "11", "--count", "5", "--n", "5"], "");
    let docs = String::from_utf8(out.stdout).unwrap();
    assert_eq!(docs.lines().count(), 5);
    let betti = srlin(&["betti"], &docs);
    assert!(betti.status.success());
    assert_eq!(String::from_utf8(betti.stdout).unwrap().lines().count(), 5);
}

/// The Koszul complex on two coprime monomials, written out by hand.
#[test]
fn four_cycle_is_a_complete_intersection() {
    let c = SimplicialComplex::cycle(4).unwrap();
    let f = Field::default();
    let b = betti_table(&c, f).unwrap();
    let g1 = VertexSet::from_labels(4, [1, 3]).unwrap();
    let g2 = VertexSet::from_labels(4, [2, 4]).unwrap();
    let koszul = [(0, VertexSet::EMPTY), (1, g1), (1, g2), (2, g1.union(g2))];
    assert_eq!(b.entries().len(), koszul.len());
    for (i, u) in koszul {
        assert_eq!(b.get(i, u), 1);
    }
    assert_eq!(
        minimal_free_resolution(&c, f, 4).unwrap().ranks(),
        vec![1, 2, 1]
    );
}

/// Polarizing x1^2 x2, x2^3 gives two generators sharing one variable, so
/// the resolution is `S ← S² ← S` with a single syzygy.
#[test]
fn polarized_ideal_resolution() {
    let ideal = MonomialIdeal::new(2, vec![vec![2, 1], vec![0, 3]]).unwrap();
    let (polar, _) = polarize(&ideal).unwrap();
    let c = complex_from_ideal(&polar).unwrap();
    let r = minimal_free_resolution(&c, Field::default(), c.n()).unwrap();
    assert_eq!(r.ranks(), vec![1, 2, 1]);
    assert_eq!(
        r.ranks(),
        betti_table(&c, Field::default()).unwrap().ranks()
    );
    // The syzygy y4 y5 e1 - y1 y2 e2 has no linear entries.
    let nu = nu_report(&r).unwrap();
    assert_eq!((nu.ld_quotient, nu.ld_ideal), (2, 1));
}
