//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line to
//! stderr (bypassing the test harness capture) and the test fails if any
//! criterion fails.

mod common;

use std::io::Write;
use std::time::Instant;

use crystal_pop::classifier::{
    bowtie_a, bowtie_b, bowtie_e, classification_sweep, nojoin_d, Certificate, Lemma,
};
use crystal_pop::crystal::{embed_parabolic_quotient, generate_crystal, generate_crystal_capped};
use crystal_pop::key::{verify_key_properties, verify_pop_key_inequality, DemazureFamily};
use crystal_pop::perm::{all_permutations, verify_coxeter_lemmas};
use crystal_pop::pop::{coxeter_pop, is_poppable, pop_crystal, pop_permutation, semilattice_pop};
use crystal_pop::sweeps::{orbit_sweep, shapes_up_to};
use crystal_pop::{Partition, ReachabilityIndex, Tableau};

const CAP: usize = 100_000;

type Outcome = Result<(), String>;

fn check(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(parts: &[usize], n: usize) -> Partition {
    Partition::new(parts, n).unwrap()
}

fn t(text: &str, n: usize) -> Tableau {
    Tableau::parse(text, n).unwrap()
}

fn operator_examples() -> Outcome {
    let x = t("1,1,2,2,3/3,3", 2);
    let f1 = x.lower(1).ok_or("F_1 undefined")?;
    check(f1 == t("1,2,2,2,3/3,3", 2), || format!("F_1 gave {f1}"))?;
    check(f1.get(0, 1) == 2 && x.get(0, 1) == 1, || "F_1 changed the wrong cell".into())?;
    check(x.lower(2).is_none(), || "F_2 should be undefined".into())
}

fn b21() -> Outcome {
    let b = generate_crystal(&p(&[2, 1], 2)).map_err(|e| e.to_string())?;
    check(b.len() == 8, || format!("{} vertices", b.len()))?;
    let mut edges: Vec<(String, String, usize)> = b
        .edges()
        .into_iter()
        .map(|(s, d, i)| (b.tableau(s).to_string(), b.tableau(d).to_string(), i))
        .collect();
    edges.sort();
    let mut expected: Vec<(String, String, usize)> = [
        ("1,1/2", "1,1/3", 2),
        ("1,1/3", "1,2/3", 1),
        ("1,2/3", "2,2/3", 1),
        ("2,2/3", "2,3/3", 2),
        ("1,1/2", "1,2/2", 1),
        ("1,2/2", "1,3/2", 2),
        ("1,3/2", "1,3/3", 2),
        ("1,3/3", "2,3/3", 1),
    ]
    .into_iter()
    .map(|(s, d, i)| (s.to_string(), d.to_string(), i))
    .collect();
    expected.sort();
    check(edges == expected, || format!("edges {edges:?}"))?;
    let emb = embed_parabolic_quotient(&b);
    let mut orbit: Vec<String> = emb.vertices.iter().map(|&v| b.tableau(v).to_string()).collect();
    orbit.sort();
    check(orbit == ["1,1/2", "1,1/3", "1,2/2", "1,3/3", "2,2/3", "2,3/3"], || {
        format!("orbit {orbit:?}")
    })
}

fn ungar() -> Outcome {
    for m in 1..=8 {
        let mut best = 0;
        for w in all_permutations(m) {
            let popped = pop_permutation(&w);
            check(popped.one_line() == common::pop_stack(&w.one_line()), || format!("Pop({w})"))?;
            if m <= 7 {
                check(popped == coxeter_pop(&w), || format!("coxeter Pop({w})"))?;
            }
            best = best.max(common::orbit_size(w, pop_permutation));
        }
        check(best == m, || format!("m = {m}: max orbit {best}"))?;
    }
    Ok(())
}

fn orbit_bound_sweep() -> Outcome {
    let sweep = orbit_sweep(4, 8, CAP, 0).map_err(|e| e.to_string())?;
    check(sweep.skipped.is_empty(), || format!("skipped {:?}", sweep.skipped))?;
    check(sweep.failures().is_empty(), || format!("{:?}", sweep.failures()))?;
    // every orbit reaches T_min within n + 1 elements
    for lambda in shapes_up_to(4, 8, CAP).map_err(|e| e.to_string())?.0 {
        let b = generate_crystal_capped(&lambda, CAP).map_err(|e| e.to_string())?;
        for v in 0..b.len() {
            let size = common::orbit_size(v, |&x| pop_crystal(&b, x));
            let mut x = v;
            for _ in 0..size {
                x = pop_crystal(&b, x);
            }
            check(size <= lambda.rank() + 1 && x == b.min_vertex(), || {
                format!("({lambda}) n={}: {} has orbit {size}", lambda.rank(), b.tableau(v))
            })?;
        }
    }
    Ok(())
}

fn classification_sweep_check() -> Outcome {
    let report = classification_sweep(4, 8, CAP, 0).map_err(|e| e.to_string())?;
    check(report.skipped.is_empty(), || format!("skipped {:?}", report.skipped))?;
    let bad = report.disagreements();
    check(bad.is_empty(), || format!("{bad:?}"))?;
    let row = |l: &str, n: usize| report.rows.iter().find(|r| r.lambda == l && r.n == n);
    check(row("3,2,1", 3).is_some_and(|r| r.brute_force), || "(3,2,1) n=3".into())?;
    check(row("3,2,1", 4).is_some_and(|r| !r.brute_force), || "(3,2,1) n=4".into())?;
    // independent lattice oracle on the smaller crystals
    for r in report.rows.iter().filter(|r| r.vertices <= 300) {
        let b = generate_crystal(&Partition::parse(&r.lambda, r.n).unwrap()).unwrap();
        check(common::naive_is_lattice(&b) == r.brute_force, || {
            format!("oracle disagrees on ({}) n={}", r.lambda, r.n)
        })?;
    }
    Ok(())
}

fn certificates() -> Outcome {
    let bowties = [
        (Lemma::A, p(&[5, 2, 2], 3), bowtie_a(&p(&[5, 2, 2], 3))),
        (Lemma::B, p(&[6, 3, 1], 3), bowtie_b(&p(&[6, 3, 1], 3))),
        (Lemma::E, p(&[5, 2], 3), bowtie_e(&p(&[5, 2], 3))),
    ];
    let expected = [
        ["1,2,2,4,4/2,3/3,4", "1,1,3,4,4/2,2/3,4", "1,2,3,4,4/2,3/3,4", "1,2,3,4,4/2,3/4,4"],
        ["1,1,3,3,4,4/2,4,4/4", "1,1,3,3,3,4/2,4,4/4", "1,1,3,3,4,4/3,4,4/4", "1,3,3,3,4,4/2,4,4/4"],
        ["1,1,1,1,3/3,4", "1,1,1,1,2/3,4", "1,1,1,1,3/4,4", "1,1,1,2,3/3,4"],
    ];
    for ((lemma, lambda, q), texts) in bowties.into_iter().zip(expected) {
        let q = q.map_err(|e| e.to_string())?;
        let got = [&q.t1, &q.t2, &q.u1, &q.u2].map(|x| x.to_string());
        check(got == texts, || format!("{lemma}: {got:?}"))?;
        let b = generate_crystal(&lambda).unwrap();
        let idx = ReachabilityIndex::build(&b);
        let cert = Certificate::Bowtie { lemma, tableaux: q };
        check(cert.verify(&b, &idx).unwrap(), || format!("{lemma} bowtie fails"))?;
    }
    for parts in [[3, 3, 2, 1], [3, 2, 1, 1]] {
        let lambda = p(&parts, 4);
        let (first, second) = nojoin_d(&lambda).map_err(|e| e.to_string())?;
        let b = generate_crystal(&lambda).unwrap();
        let up = common::upsets(&b);
        let (x, y) = (b.vertex_of(&first).unwrap(), b.vertex_of(&second).unwrap());
        let common_up: Vec<usize> = up[x].intersection(&up[y]).copied().collect();
        let has_join = common_up.iter().any(|&z| common_up.iter().all(|w| up[z].contains(w)));
        check(!has_join, || format!("({lambda}) pair has a join"))?;
    }
    Ok(())
}

fn poppability() -> Outcome {
    for lambda in shapes_up_to(4, 8, CAP).map_err(|e| e.to_string())?.0 {
        let b = generate_crystal_capped(&lambda, CAP).map_err(|e| e.to_string())?;
        check(is_poppable(&b).map_err(|e| e.to_string())?, || {
            format!("({lambda}) n={}", lambda.rank())
        })?;
    }
    Ok(())
}

/// Every `λ` with at most `n` parts and at most `limit` tableaux. The
/// search box on `λ_1` is generous; the test checks that its outer band
/// contributes nothing.
fn shapes_with_at_most(n: usize, limit: u128) -> Vec<Partition> {
    let bound = match n {
        1 => limit as usize,
        2 => 150,
        _ => 50,
    };
    let mut out = Vec::new();
    for size in 0..=bound * n {
        for parts in crystal_pop::partitions_of(size, n) {
            if parts.first().is_some_and(|&x| x > bound) {
                continue;
            }
            let lambda = p(&parts, n);
            if lambda.hook_content_count() <= limit {
                assert!(n == 1 || parts.first().is_none_or(|&x| x <= bound / 2), "search box too small for ({lambda})");
                out.push(lambda);
            }
        }
    }
    out
}

fn key_suite() -> Outcome {
    for n in 1..=3 {
        let shapes = shapes_with_at_most(n, 2000);
        for lambda in shapes {
            let b = generate_crystal(&lambda).map_err(|e| e.to_string())?;
            let fam = DemazureFamily::build(&b).map_err(|e| e.to_string())?;
            let emb = embed_parabolic_quotient(&b);
            let props = verify_key_properties(&b, &fam, Some(&emb)).map_err(|e| e.to_string())?;
            check(props.passed(), || props.to_string())?;
            let ineq = verify_pop_key_inequality(&b, &fam).map_err(|e| e.to_string())?;
            check(ineq.passed(), || ineq.to_string())?;
        }
    }
    Ok(())
}

fn cardinality() -> Outcome {
    for lambda in shapes_up_to(4, 8, CAP).map_err(|e| e.to_string())?.0 {
        let b = generate_crystal_capped(&lambda, CAP).map_err(|e| e.to_string())?;
        let n = lambda.rank();
        let brute = common::count_ssyt(lambda.parts(), n + 1);
        check(b.len() as u64 == brute, || format!("({lambda}) n={n}: {} vs {brute}", b.len()))?;
        check(b.len() as u128 == lambda.hook_content_count(), || format!("({lambda}) hook-content"))?;
        check(b.len() as u128 == common::weyl_dimension(lambda.parts(), n), || {
            format!("({lambda}) Weyl dimension")
        })?;
    }
    Ok(())
}

fn coxeter_lemmas(max_m: usize) -> Outcome {
    for m in 1..=max_m {
        let report = verify_coxeter_lemmas(m);
        check(report.passed(), || report.to_string())?;
    }
    Ok(())
}

fn operator_disagreement() -> Outcome {
    let b = generate_crystal(&p(&[2, 1], 2)).unwrap();
    let idx = ReachabilityIndex::build(&b);
    let differ = (0..b.len()).any(|v| semilattice_pop(&b, &idx, v).unwrap() != pop_crystal(&b, v));
    check(differ, || "semilattice pop agrees everywhere".into())
}

fn report(lines: &mut Vec<(usize, String, Outcome)>, id: usize, name: &str, run: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let outcome = run();
    let status = if outcome.is_ok() { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "[{status}] criterion {id:>2}: {name} ({:.2?})", start.elapsed());
    if let Err(e) = &outcome {
        let _ = writeln!(err, "        {e}");
    }
    lines.push((id, name.to_string(), outcome));
}

#[test]
fn acceptance() {
    let mut lines = Vec::new();
    report(&mut lines, 1, "operator examples", operator_examples);
    report(&mut lines, 2, "B_(2,1)^2 crystal and embedded orbit", b21);
    report(&mut lines, 3, "pop-stack orbits on S_m, m <= 8", ungar);
    report(&mut lines, 4, "longest Pop orbit is n+1 (|lambda| <= 8, n <= 4)", orbit_bound_sweep);
    report(&mut lines, 5, "lattice classification sweep (|lambda| <= 8, n <= 4)", classification_sweep_check);
    report(&mut lines, 6, "explicit bowties and no-join pairs", certificates);
    report(&mut lines, 7, "poppability", poppability);
    report(&mut lines, 8, "key map properties (<= 2000 vertices, n <= 3)", key_suite);
    report(&mut lines, 9, "cardinality oracles", cardinality);
    report(&mut lines, 10, "Coxeter lemma suite, m <= 5", || coxeter_lemmas(5));
    report(&mut lines, 11, "semilattice pop differs from crystal pop", operator_disagreement);
    let failed: Vec<String> = lines
        .iter()
        .filter(|(_, _, o)| o.is_err())
        .map(|(id, name, _)| format!("{id} ({name})"))
        .collect();
    assert!(failed.is_empty(), "failed criteria: {}", failed.join(", "));
}

/// The slow tier of criterion 10.
#[test]
#[ignore]
fn acceptance_coxeter_lemmas_m6() {
    coxeter_lemmas(6).unwrap();
}
