use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::json;

use crystal_pop::classifier::{certificate_for, classification_sweep, predict_lattice};
use crystal_pop::crystal::{default_vertex_cap, generate_crystal_capped, CrystalGraph};
use crystal_pop::export;
use crystal_pop::perm::{all_permutations, verify_coxeter_lemmas};
use crystal_pop::poset::{is_distributive, is_lattice};
use crystal_pop::pop::{orbit, orbit_lengths, permutation_orbit};
use crystal_pop::sweeps::{orbit_sweep, verify_crystal, OrbitSweepRecord};
use crystal_pop::{Partition, Permutation, ReachabilityIndex};

use crate::{Command, CommonArgs, Format, OptShapeArgs, ShapeArgs, SweepArgs};

/// Largest lattice checked for distributivity (the check is cubic).
const DISTRIBUTIVE_LIMIT: usize = 500;
/// Largest `m` for exhaustive work over `S_m`.
const MAX_PERM_SIZE: usize = 10;

pub enum Status {
    Passed,
    Failed,
}

impl Status {
    fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Passed
        } else {
            Status::Failed
        }
    }
}

/// Bad flags or flag combinations.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Usage(msg.into()).into())
}

/// 2 for anything the caller can fix, 1 for a failed mathematical check.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<crystal_pop::Error>() {
            return if err.is_invalid_input() { 2 } else { 1 };
        }
    }
    2
}

pub fn run(command: Command) -> Result<Status> {
    match command {
        Command::Gen { shape, format, common } => gen(&shape, format, &common),
        Command::Pop {
            shape,
            element,
            bounds,
            format,
            common,
        } => pop(&shape, element.as_deref(), &bounds, format, &common),
        Command::PermPop {
            element,
            max_n,
            format,
            common,
        } => perm_pop(element.as_deref(), max_n, format, &common),
        Command::Lattice { shape, format, common } => lattice(&shape, format, &common),
        Command::Classify { bounds, format, common } => classify(&bounds, format, &common),
        Command::Verify { shape, format, common } => verify(&shape, format, &common),
    }
}

fn vertex_cap(common: &CommonArgs) -> Result<usize> {
    if let Some(cap) = common.cap {
        return Ok(cap);
    }
    if let Ok(raw) = std::env::var("CRYSTAL_POP_CAP") {
        if raw.trim().parse::<usize>().is_err() {
            return usage(format!("CRYSTAL_POP_CAP={raw:?} is not a vertex count"));
        }
    }
    Ok(default_vertex_cap())
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn require_format(format: Format, allowed: &[Format], command: &str) -> Result<()> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        usage(format!("{command} does not support --format {format:?}").to_lowercase())
    }
}

fn partition(shape: &str, n: usize) -> Result<Partition> {
    Ok(Partition::parse(shape, n)?)
}

fn opt_partition(args: &OptShapeArgs) -> Result<Option<Partition>> {
    match (&args.shape, args.n) {
        (Some(s), Some(n)) => Ok(Some(partition(s, n)?)),
        (Some(_), None) => usage("--shape needs --n"),
        _ => Ok(None),
    }
}

fn nonzero(lambda: &Partition) -> Result<()> {
    if lambda.is_empty() {
        usage("the shape must be a nonzero weight")
    } else {
        Ok(())
    }
}

fn crystal(lambda: &Partition, common: &CommonArgs) -> Result<CrystalGraph> {
    Ok(generate_crystal_capped(lambda, vertex_cap(common)?)?)
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

fn gen(shape: &ShapeArgs, format: Format, common: &CommonArgs) -> Result<Status> {
    require_format(format, &[Format::Text, Format::Json, Format::Dot], "gen")?;
    let b = crystal(&partition(&shape.shape, shape.n)?, common)?;
    let text = match format {
        Format::Json => pretty(&export::crystal_json(&b)),
        Format::Dot => export::crystal_dot(&b),
        _ => export::crystal_text(&b),
    };
    emit(common.out.as_deref(), &text)?;
    Ok(Status::Passed)
}

fn report_skipped(skipped: &[crystal_pop::classifier::SkippedShape]) {
    for s in skipped {
        eprintln!("skipped ({}) n={}: {} vertices exceeds the cap", s.lambda, s.n, s.vertices);
    }
}

fn sweep_bounds(bounds: &SweepArgs) -> Result<Option<(usize, usize)>> {
    match (bounds.max_n, bounds.max_cells) {
        (Some(n), Some(c)) if n >= 1 => Ok(Some((n, c))),
        (Some(_), Some(_)) => usage("--max-n must be positive"),
        (None, None) => Ok(None),
        _ => usage("--max-n and --max-cells go together"),
    }
}

fn pop(
    shape: &OptShapeArgs,
    element: Option<&str>,
    bounds: &SweepArgs,
    format: Format,
    common: &CommonArgs,
) -> Result<Status> {
    require_format(format, &[Format::Text, Format::Json, Format::Csv], "pop")?;
    let lambda = opt_partition(shape)?;
    if let Some((max_n, max_cells)) = sweep_bounds(bounds)? {
        if lambda.is_some() || element.is_some() {
            return usage("a sweep takes --max-n and --max-cells, not --shape or --element");
        }
        let sweep = orbit_sweep(max_n, max_cells, vertex_cap(common)?, bounds.jobs)?;
        report_skipped(&sweep.skipped);
        let text = match format {
            Format::Json => pretty(&serde_json::to_value(&sweep)?),
            Format::Csv => {
                let mut s = String::from("lambda,n,max_orbit,coxeter_number,witness,vertices\n");
                for r in &sweep.records {
                    let _ = writeln!(
                        s,
                        "\"{}\",{},{},{},\"{}\",{}",
                        r.lambda, r.n, r.max_orbit, r.coxeter_number, r.witness, r.vertices
                    );
                }
                s
            }
            _ => {
                let mut s = String::new();
                for r in &sweep.records {
                    let mark = if r.holds() { "ok" } else { "FAIL" };
                    let _ = writeln!(
                        s,
                        "({}) n={}: max orbit {} (h = {}) at {} [{mark}]",
                        r.lambda, r.n, r.max_orbit, r.coxeter_number, r.witness
                    );
                }
                s
            }
        };
        emit(common.out.as_deref(), &text)?;
        return Ok(Status::from_ok(sweep.failures().is_empty()));
    }

    let Some(lambda) = lambda else {
        return usage("pop needs --shape and --n, or --max-n and --max-cells");
    };
    nonzero(&lambda)?;
    let b = crystal(&lambda, common)?;
    let h = lambda.rank() + 1;
    if let Some(text) = element {
        let v = b.find(text)?;
        let o = orbit(&b, v)?;
        let rows: Vec<String> = o.trajectory.iter().map(|&x| b.tableau(x).to_string()).collect();
        let out = match format {
            Format::Json => pretty(&json!({ "start": rows[0], "trajectory": rows, "length": o.length })),
            Format::Csv => {
                let mut s = String::from("step,id,tableau\n");
                for (k, (&x, r)) in o.trajectory.iter().zip(&rows).enumerate() {
                    let _ = writeln!(s, "{k},{x},\"{r}\"");
                }
                s
            }
            _ => {
                let mut s = String::new();
                for (k, r) in rows.iter().enumerate() {
                    let _ = writeln!(s, "{k}: {r}");
                }
                let _ = writeln!(s, "orbit length {} (h = {h})", o.length);
                s
            }
        };
        emit(common.out.as_deref(), &out)?;
        let ends = o.trajectory.last() == Some(&b.min_vertex());
        return Ok(Status::from_ok(o.length <= h && ends));
    }

    let record = OrbitSweepRecord::from_crystal(&b);
    let out = match format {
        Format::Json => pretty(&serde_json::to_value(&record)?),
        Format::Csv => export::orbit_csv(&b, &orbit_lengths(&b))?,
        _ => format!(
            "B_({})^{}: {} vertices\nmax orbit: {}\ncoxeter number: {}\nwitness: {}\n",
            lambda,
            lambda.rank(),
            b.len(),
            record.max_orbit,
            record.coxeter_number,
            record.witness
        ),
    };
    emit(common.out.as_deref(), &out)?;
    Ok(Status::from_ok(record.holds()))
}

fn perm_pop(element: Option<&str>, max_n: Option<usize>, format: Format, common: &CommonArgs) -> Result<Status> {
    require_format(format, &[Format::Text, Format::Json], "perm-pop")?;
    match (element, max_n) {
        (Some(text), None) => {
            let w = Permutation::parse(text)?;
            let orbit: Vec<String> = permutation_orbit(&w).iter().map(|x| x.to_string()).collect();
            let out = match format {
                Format::Json => pretty(&json!({ "orbit": orbit, "length": orbit.len() })),
                _ => {
                    let mut s = String::new();
                    for (k, x) in orbit.iter().enumerate() {
                        let _ = writeln!(s, "{k}: {x}");
                    }
                    let _ = writeln!(s, "orbit length {}", orbit.len());
                    s
                }
            };
            emit(common.out.as_deref(), &out)?;
            Ok(Status::from_ok(orbit.len() <= w.size().max(1)))
        }
        (None, Some(max)) => {
            if max == 0 || max > MAX_PERM_SIZE {
                return usage(format!("--max-n must be in 1..={MAX_PERM_SIZE}"));
            }
            let mut rows = Vec::new();
            for m in 1..=max {
                let (best, witness) = all_permutations(m)
                    .into_iter()
                    .map(|w| (permutation_orbit(&w).len(), w))
                    .fold((0, Permutation::identity(m)), |acc, x| if x.0 > acc.0 { x } else { acc });
                rows.push((m, best, witness));
            }
            let out = match format {
                Format::Json => pretty(&json!(rows
                    .iter()
                    .map(|(m, best, w)| json!({ "m": m, "max_orbit": best, "witness": w.to_string() }))
                    .collect::<Vec<_>>())),
                _ => rows
                    .iter()
                    .map(|(m, best, w)| format!("S_{m}: max orbit {best} at {w}\n"))
                    .collect(),
            };
            emit(common.out.as_deref(), &out)?;
            Ok(Status::from_ok(rows.iter().all(|(m, best, _)| m == best)))
        }
        _ => usage("perm-pop takes exactly one of --element and --max-n"),
    }
}

fn lattice(shape: &ShapeArgs, format: Format, common: &CommonArgs) -> Result<Status> {
    require_format(format, &[Format::Text, Format::Json], "lattice")?;
    let lambda = partition(&shape.shape, shape.n)?;
    let cap = vertex_cap(common)?;
    let b = crystal(&lambda, common)?;
    let index = ReachabilityIndex::build(&b);
    let verdict = is_lattice(&b, &index);
    let prediction = predict_lattice(&lambda);
    let distributive = (verdict.is_lattice && b.len() <= DISTRIBUTIVE_LIMIT)
        .then(|| is_distributive(&index))
        .flatten();
    let certificate = if verdict.is_lattice { None } else { certificate_for(&lambda, cap)? };
    let verified = match &certificate {
        Some(c) => Some(c.verify(&b, &index)?),
        None => None,
    };
    let pair = verdict
        .witness
        .map(|(u, v)| [b.tableau(u).to_string(), b.tableau(v).to_string()]);
    let ok = verdict.is_lattice == prediction.is_lattice_predicted && verified != Some(false);

    let yes_no = |x: bool| if x { "yes" } else { "no" };
    let out = match format {
        Format::Json => pretty(&json!({
            "lambda": lambda.parts(),
            "n": lambda.rank(),
            "vertices": b.len(),
            "is_lattice": verdict.is_lattice,
            "predicted": prediction.is_lattice_predicted,
            "clause": prediction.matched_clause.map(|c| c.to_string()),
            "distributive": distributive,
            "pair_without_join": pair,
            "certificate": certificate.as_ref().map(export::certificate_json),
            "certificate_verified": verified,
        })),
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "B_({lambda})^{}: {} vertices", lambda.rank(), b.len());
            let _ = writeln!(s, "lattice: {}", yes_no(verdict.is_lattice));
            let clause = prediction.matched_clause.map(|c| format!(" (clause {c})")).unwrap_or_default();
            let _ = writeln!(s, "predicted: {}{clause}", yes_no(prediction.is_lattice_predicted));
            if verdict.is_lattice {
                let d = distributive.map_or("not checked".to_string(), |d| yes_no(d).to_string());
                let _ = writeln!(s, "distributive: {d}");
            }
            if let Some([x, y]) = &pair {
                let _ = writeln!(s, "first pair without a join: {x} and {y}");
            }
            if let Some(c) = &certificate {
                let _ = writeln!(s, "witness: {} (lemma {})", c.kind(), c.lemma());
                let names: &[&str] = if c.tableaux().len() == 4 { &["T1", "T2", "U1", "U2"] } else { &["X", "Y"] };
                for (name, t) in names.iter().zip(c.tableaux()) {
                    let _ = writeln!(s, "  {name} = {t}");
                }
                let _ = writeln!(s, "witness verified: {}", yes_no(verified == Some(true)));
            }
            s
        }
    };
    emit(common.out.as_deref(), &out)?;
    Ok(Status::from_ok(ok))
}

fn classify(bounds: &SweepArgs, format: Format, common: &CommonArgs) -> Result<Status> {
    require_format(format, &[Format::Text, Format::Json, Format::Csv], "classify")?;
    let Some((max_n, max_cells)) = sweep_bounds(bounds)? else {
        return usage("classify needs --max-n and --max-cells");
    };
    let report = classification_sweep(max_n, max_cells, vertex_cap(common)?, bounds.jobs)?;
    report_skipped(&report.skipped);
    let out = match format {
        Format::Json => pretty(&serde_json::to_value(&report)?),
        Format::Csv => export::classification_csv(&report)?,
        _ => {
            let mut s = String::new();
            for r in &report.rows {
                let mark = if r.agrees() { "ok" } else { "DISAGREE" };
                let clause = r.clause.map_or("none".to_string(), |c| c.to_string());
                let _ = writeln!(
                    s,
                    "({}) n={}: predicted {} brute force {} clause {clause} [{mark}]",
                    r.lambda, r.n, r.predicted, r.brute_force
                );
            }
            let _ = writeln!(s, "{} shapes, {} disagreements", report.rows.len(), report.disagreements().len());
            s
        }
    };
    emit(common.out.as_deref(), &out)?;
    Ok(Status::from_ok(report.disagreements().is_empty()))
}

fn verify(shape: &OptShapeArgs, format: Format, common: &CommonArgs) -> Result<Status> {
    require_format(format, &[Format::Text, Format::Json], "verify")?;
    let reports = match (opt_partition(shape)?, shape.n) {
        (Some(lambda), _) => {
            nonzero(&lambda)?;
            verify_crystal(&crystal(&lambda, common)?)?
        }
        (None, Some(m)) => {
            if m == 0 || m > 8 {
                bail!(Usage("the S_m lemma suite takes --n m with 1 <= m <= 8".into()));
            }
            vec![verify_coxeter_lemmas(m)]
        }
        (None, None) => return usage("verify needs --shape and --n, or --n m alone for S_m"),
    };
    let out = match format {
        Format::Json => pretty(&serde_json::to_value(&reports)?),
        _ => reports.iter().map(|r| r.to_string()).collect(),
    };
    emit(common.out.as_deref(), &out)?;
    Ok(Status::from_ok(reports.iter().all(|r| r.passed())))
}
