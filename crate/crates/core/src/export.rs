//! Serialized forms of crystals, witnesses and sweep results.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::classifier::{Certificate, SweepReport};
use crate::crystal::CrystalGraph;
use crate::error::{Error, Result};
use crate::key::KeyRecord;

/// Edge colors for DOT output, cycled by color index.
const PALETTE: [&str; 8] = [
    "red", "blue", "forestgreen", "darkorange", "purple", "brown", "deeppink", "teal",
];

pub fn dot_color(i: usize) -> &'static str {
    PALETTE[(i - 1) % PALETTE.len()]
}

/// `{lambda, n, vertices: [{id, rows}], edges: [{src, dst, color}]}`.
pub fn crystal_json(b: &CrystalGraph) -> Value {
    let vertices: Vec<Value> = (0..b.len())
        .map(|v| json!({ "id": v, "rows": b.tableau(v).to_string() }))
        .collect();
    let edges: Vec<Value> = b
        .edges()
        .into_iter()
        .map(|(src, dst, color)| json!({ "src": src, "dst": dst, "color": color }))
        .collect();
    json!({
        "lambda": b.lambda().parts(),
        "n": b.rank(),
        "vertices": vertices,
        "edges": edges,
    })
}

pub fn crystal_dot(b: &CrystalGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph crystal {{");
    let _ = writeln!(out, "  // B_({})^{}", b.lambda(), b.rank());
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=box, fontname=\"monospace\"];");
    for v in 0..b.len() {
        let _ = writeln!(out, "  v{v} [label=\"{}\"];", b.tableau(v));
    }
    for (s, d, i) in b.edges() {
        let c = dot_color(i);
        let _ = writeln!(out, "  v{s} -> v{d} [label=\"F{i}\", color={c}, fontcolor={c}];");
    }
    out.push_str("}\n");
    out
}

/// One line per vertex: id, tableau, one line per edge: `src -F<i>-> dst`.
pub fn crystal_text(b: &CrystalGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "B_({})^{}: {} vertices", b.lambda(), b.rank(), b.len());
    for v in 0..b.len() {
        let _ = writeln!(out, "{v}\t{}", b.tableau(v));
    }
    for (s, d, i) in b.edges() {
        let _ = writeln!(out, "{s} -F{i}-> {d}");
    }
    out
}

/// `{kind, lemma, tableaux}`; tableaux are `[T1, T2, U1, U2]` for a
/// bowtie and the two elements of a pair otherwise.
pub fn certificate_json(c: &Certificate) -> Value {
    let tableaux: Vec<String> = c.tableaux().iter().map(|t| t.to_string()).collect();
    json!({
        "kind": c.kind(),
        "lemma": c.lemma().to_string(),
        "tableaux": tableaux,
    })
}

fn csv_string(build: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    build(&mut w).map_err(|e| Error::Parse(format!("csv: {e}")))?;
    let bytes = w.into_inner().map_err(|e| Error::Parse(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(format!("csv: {e}")))
}

/// `id,tableau,length` for every vertex.
pub fn orbit_csv(b: &CrystalGraph, lengths: &[usize]) -> Result<String> {
    csv_string(|w| {
        w.write_record(["id", "tableau", "length"])?;
        for (v, l) in lengths.iter().enumerate() {
            w.write_record([v.to_string(), b.tableau(v).to_string(), l.to_string()])?;
        }
        Ok(())
    })
}

/// `lambda,n,predicted,brute_force,clause,vertices,millis`.
pub fn classification_csv(report: &SweepReport) -> Result<String> {
    csv_string(|w| {
        w.write_record(["lambda", "n", "predicted", "brute_force", "clause", "vertices", "millis"])?;
        for r in &report.rows {
            w.write_record([
                r.lambda.clone(),
                r.n.to_string(),
                r.predicted.to_string(),
                r.brute_force.to_string(),
                r.clause.map_or_else(|| "none".to_string(), |c| c.to_string()),
                r.vertices.to_string(),
                r.millis.to_string(),
            ])?;
        }
        Ok(())
    })
}

/// `[{id, tableau, key}]`.
pub fn key_json(records: &[KeyRecord]) -> Value {
    serde_json::to_value(records).expect("plain records serialize")
}

pub fn to_json_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain records serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::certificate_for;
    use crate::crystal::generate_crystal;
    use crate::pop::orbit_lengths;
    use crate::tableaux::Partition;

    fn b21() -> CrystalGraph {
        generate_crystal(&Partition::new(&[2, 1], 2).unwrap()).unwrap()
    }

    #[test]
    fn json_shape() {
        let b = b21();
        let v = crystal_json(&b);
        assert_eq!(v["lambda"], json!([2, 1]));
        assert_eq!(v["n"], 2);
        assert_eq!(v["vertices"].as_array().unwrap().len(), 8);
        assert_eq!(v["edges"].as_array().unwrap().len(), 8);
        assert_eq!(v["vertices"][0], json!({"id": 0, "rows": "1,1/2"}));
    }

    #[test]
    fn dot_shape() {
        let dot = crystal_dot(&b21());
        assert_eq!(dot.matches(" [label=\"").count(), 16);
        assert!(dot.contains("v0 [label=\"1,1/2\"]"));
        assert!(dot.contains("label=\"F1\", color=red"));
        assert!(dot.contains("label=\"F2\", color=blue"));
    }

    #[test]
    fn csv_quotes_commas() {
        let b = b21();
        let csv = orbit_csv(&b, &orbit_lengths(&b)).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("id,tableau,length"));
        assert_eq!(lines.next(), Some("0,\"1,1/2\",1"));
        assert_eq!(csv.lines().count(), 9);
    }

    #[test]
    fn certificate_shape() {
        let lambda = Partition::new(&[5, 2], 3).unwrap();
        let c = certificate_for(&lambda, 100_000).unwrap().unwrap();
        let v = certificate_json(&c);
        assert_eq!(v["kind"], "bowtie");
        assert_eq!(v["lemma"], "E");
        assert_eq!(v["tableaux"][0], "1,1,1,1,3/3,4");
    }
}
