//! Which crystals `B_λ^n` are lattices.
//!
//! [`predict_lattice`] is the closed-form classification. For shapes it
//! rejects, [`certificate_for`] builds an explicit witness: a bowtie or a
//! pair without a join in a small base crystal, carried into `B_λ^n` by
//! the row and column embeddings below. [`classification_sweep`] compares
//! the prediction with a brute-force lattice test.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::crystal::{dual_crystal, generate_crystal_capped, ColoredDigraph, CrystalGraph};
use crate::error::{Error, Result};
use crate::poset::{is_lattice, verify_bowtie, BowtieCertificate, ReachabilityIndex};
use crate::tableaux::{Partition, Tableau};

/// The clause of the classification that made a shape a lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Clause {
    /// Every crystal of rank one or two.
    TypeA1A2,
    /// `(1^m)`, `0 ≤ m ≤ n`.
    Column,
    /// `(2, 1^m)`, `1 ≤ m ≤ n − 1`.
    TwoThenOnes,
    /// `(2^{n−m}, 1^m)`, `1 ≤ m ≤ n − 1`.
    TwosThenOnes,
    /// `(k)`.
    Row,
    /// `(k^n)`.
    Rectangle,
    /// `(k, 1)`.
    RowThenOne,
    /// `(k^{n−1}, k − 1)`.
    NearRectangle,
    /// `(3, 2, 1)` with `n = 3`.
    Staircase,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Clause::TypeA1A2 => "rank<=2",
            Clause::Column => "1^m",
            Clause::TwoThenOnes => "2,1^m",
            Clause::TwosThenOnes => "2^(n-m),1^m",
            Clause::Row => "k",
            Clause::Rectangle => "k^n",
            Clause::RowThenOne => "k,1",
            Clause::NearRectangle => "k^(n-1),k-1",
            Clause::Staircase => "3,2,1;n=3",
        };
        f.write_str(s)
    }
}

/// The predicted verdict for one `(λ, n)`.
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub lambda: Partition,
    pub is_lattice_predicted: bool,
    pub matched_clause: Option<Clause>,
}

/// First matching clause, in the order the classification lists them.
fn matching_clause(lambda: &Partition) -> Option<Clause> {
    let n = lambda.rank();
    let p = lambda.parts();
    let l = p.len();
    if n <= 2 {
        return Some(Clause::TypeA1A2);
    }
    let ones = p.iter().filter(|&&x| x == 1).count();
    let twos = p.iter().filter(|&&x| x == 2).count();
    if ones == l {
        return Some(Clause::Column);
    }
    if p[0] == 2 && ones == l - 1 && ones >= 1 {
        return Some(Clause::TwoThenOnes);
    }
    if l == n && twos + ones == l && twos >= 1 && ones >= 1 {
        return Some(Clause::TwosThenOnes);
    }
    if l == 1 {
        return Some(Clause::Row);
    }
    if l == n && p.iter().all(|&x| x == p[0]) {
        return Some(Clause::Rectangle);
    }
    if l == 2 && p[1] == 1 {
        return Some(Clause::RowThenOne);
    }
    let k = p[0];
    if (1..n).all(|i| lambda.part(i) == k) && lambda.part(n) == k - 1 {
        return Some(Clause::NearRectangle);
    }
    if n == 3 && p == [3, 2, 1] {
        return Some(Clause::Staircase);
    }
    None
}

pub fn predict_lattice(lambda: &Partition) -> Classification {
    let matched_clause = matching_clause(lambda);
    Classification {
        lambda: lambda.clone(),
        is_lattice_predicted: matched_clause.is_some(),
        matched_clause,
    }
}

/// The lemma a witness comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Lemma {
    /// `λ_p > λ_{p+1} ≥ λ_{p+2} ≥ 2`.
    A,
    /// `λ_p − 2 ≥ λ_{p+1} ≥ λ_{p+2}`.
    B,
    /// `λ_p ≥ λ_{p+1} ≥ λ_{p+2} + 2`, through the dual crystal.
    C,
    /// `(3^m, 2, 1^{ℓ−m−1})` with `ℓ ≥ 4`.
    D,
    /// `2 ≤ ℓ < n` and `λ_2 ≥ 2`.
    E,
    /// A run `(k + 1, k, 1)`, `k ≥ 3`, used where the dual route leads back
    /// to a shape with no other witness.
    SelfDual,
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A bowtie given by tableaux.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BowtieTableaux {
    pub t1: Tableau,
    pub t2: Tableau,
    pub u1: Tableau,
    pub u2: Tableau,
}

impl BowtieTableaux {
    fn map(&self, f: impl Fn(&Tableau) -> Result<Tableau>) -> Result<Self> {
        Ok(BowtieTableaux {
            t1: f(&self.t1)?,
            t2: f(&self.t2)?,
            u1: f(&self.u1)?,
            u2: f(&self.u2)?,
        })
    }

    /// Vertex ids in `b`.
    pub fn resolve(&self, b: &CrystalGraph) -> Result<BowtieCertificate> {
        let id = |t: &Tableau| b.vertex_of(t).ok_or_else(|| Error::UnknownVertex(t.to_string()));
        Ok(BowtieCertificate {
            t1: id(&self.t1)?,
            t2: id(&self.t2)?,
            u1: id(&self.u1)?,
            u2: id(&self.u2)?,
        })
    }

    pub fn from_ids(b: &CrystalGraph, c: &BowtieCertificate) -> Self {
        BowtieTableaux {
            t1: b.tableau(c.t1),
            t2: b.tableau(c.t2),
            u1: b.tableau(c.u1),
            u2: b.tableau(c.u2),
        }
    }
}

/// A witness that `B_λ^n` is not a lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Bowtie { lemma: Lemma, tableaux: BowtieTableaux },
    NoJoinPair { lemma: Lemma, first: Tableau, second: Tableau },
}

impl Certificate {
    pub fn lemma(&self) -> Lemma {
        match self {
            Certificate::Bowtie { lemma, .. } | Certificate::NoJoinPair { lemma, .. } => *lemma,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Bowtie { .. } => "bowtie",
            Certificate::NoJoinPair { .. } => "no-join-pair",
        }
    }

    pub fn tableaux(&self) -> Vec<&Tableau> {
        match self {
            Certificate::Bowtie { tableaux: q, .. } => vec![&q.t1, &q.t2, &q.u1, &q.u2],
            Certificate::NoJoinPair { first, second, .. } => vec![first, second],
        }
    }

    /// Checks the witness in `b`: the bowtie conditions, or that the pair
    /// has no join.
    pub fn verify(&self, b: &CrystalGraph, index: &ReachabilityIndex) -> Result<bool> {
        match self {
            Certificate::Bowtie { tableaux, .. } => {
                Ok(verify_bowtie(b, index, &tableaux.resolve(b)?))
            }
            Certificate::NoJoinPair { first, second, .. } => {
                let id = |t: &Tableau| b.vertex_of(t).ok_or_else(|| Error::UnknownVertex(t.to_string()));
                let (x, y) = (id(first)?, id(second)?);
                Ok(!index.comparable(x, y) && index.join(x, y).is_none())
            }
        }
    }
}

fn rows_tableau(rows: &[Vec<usize>], n: usize) -> Result<Tableau> {
    let lens: Vec<usize> = rows.iter().map(Vec::len).collect();
    Tableau::validate(&Partition::new(&lens, n)?, rows)
}

fn row(runs: &[(usize, usize)]) -> Vec<usize> {
    runs.iter()
        .flat_map(|&(value, count)| std::iter::repeat_n(value, count))
        .collect()
}

fn require(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::HypothesisViolated(what()))
    }
}

/// The bowtie for `λ = (λ1, λ2, 2)` with `λ1 > λ2 ≥ 2`, `n ≥ 3`.
pub fn bowtie_a(lambda: &Partition) -> Result<BowtieTableaux> {
    let p = lambda.parts();
    let n = lambda.rank();
    require(n >= 3 && p.len() == 3 && p[2] == 2 && p[0] > p[1] && p[1] >= 2, || {
        format!("({lambda}) with n = {n} is not (a,b,2) with a > b >= 2, n >= 3")
    })?;
    let (a, b) = (p[0], p[1]);
    let mk = |rows: [Vec<usize>; 3]| rows_tableau(&rows, n);
    Ok(BowtieTableaux {
        t1: mk([
            row(&[(1, b - 1), (2, 2), (4, a - b - 1)]),
            row(&[(2, b - 1), (3, 1)]),
            vec![3, 4],
        ])?,
        t2: mk([
            row(&[(1, b), (3, 1), (4, a - b - 1)]),
            row(&[(2, b)]),
            vec![3, 4],
        ])?,
        u1: mk([
            row(&[(1, b - 1), (2, 1), (3, 1), (4, a - b - 1)]),
            row(&[(2, b - 1), (3, 1)]),
            vec![3, 4],
        ])?,
        u2: mk([
            row(&[(1, b - 1), (2, 1), (3, 1), (4, a - b - 1)]),
            row(&[(2, b - 1), (3, 1)]),
            vec![4, 4],
        ])?,
    })
}

/// The bowtie for `λ = (λ1, λ2, 1)` with `λ1 − 2 ≥ λ2 ≥ 1`, `n ≥ 3`.
pub fn bowtie_b(lambda: &Partition) -> Result<BowtieTableaux> {
    let p = lambda.parts();
    let n = lambda.rank();
    require(n >= 3 && p.len() == 3 && p[2] == 1 && p[0] >= p[1] + 2, || {
        format!("({lambda}) with n = {n} is not (a,b,1) with a - 2 >= b, n >= 3")
    })?;
    let (a, b) = (p[0], p[1]);
    let mk = |rows: [Vec<usize>; 3]| rows_tableau(&rows, n);
    Ok(BowtieTableaux {
        t1: mk([
            row(&[(1, 2), (3, b - 1), (4, a - b - 1)]),
            row(&[(2, 1), (4, b - 1)]),
            vec![4],
        ])?,
        t2: mk([
            row(&[(1, 2), (3, b), (4, a - b - 2)]),
            row(&[(2, 1), (4, b - 1)]),
            vec![4],
        ])?,
        u1: mk([
            row(&[(1, 2), (3, b - 1), (4, a - b - 1)]),
            row(&[(3, 1), (4, b - 1)]),
            vec![4],
        ])?,
        u2: mk([
            row(&[(1, 1), (3, b), (4, a - b - 1)]),
            row(&[(2, 1), (4, b - 1)]),
            vec![4],
        ])?,
    })
}

/// The bowtie for `λ = (λ1, 2)` with `n ≥ 3`.
pub fn bowtie_e(lambda: &Partition) -> Result<BowtieTableaux> {
    let p = lambda.parts();
    let n = lambda.rank();
    require(n >= 3 && p.len() == 2 && p[1] == 2, || {
        format!("({lambda}) with n = {n} is not (a,2) with n >= 3")
    })?;
    let a = p[0];
    let mk = |rows: [Vec<usize>; 2]| rows_tableau(&rows, n);
    Ok(BowtieTableaux {
        t1: mk([row(&[(1, a - 1), (3, 1)]), vec![3, 4]])?,
        t2: mk([row(&[(1, a - 1), (2, 1)]), vec![3, 4]])?,
        u1: mk([row(&[(1, a - 1), (3, 1)]), vec![4, 4]])?,
        u2: mk([row(&[(1, a - 2), (2, 1), (3, 1)]), vec![3, 4]])?,
    })
}

/// The bowtie for `λ = (k + 1, k, 1)` with `k ≥ 3`, `n = 3`.
pub fn bowtie_self_dual(lambda: &Partition) -> Result<BowtieTableaux> {
    let p = lambda.parts();
    let n = lambda.rank();
    require(n == 3 && p.len() == 3 && p[2] == 1 && p[1] >= 3 && p[0] == p[1] + 1, || {
        format!("({lambda}) with n = {n} is not (k+1,k,1) with k >= 3, n = 3")
    })?;
    let k = p[1];
    let mk = |rows: [Vec<usize>; 3]| rows_tableau(&rows, n);
    Ok(BowtieTableaux {
        t1: mk([row(&[(1, k), (2, 1)]), row(&[(2, k - 1), (3, 1)]), vec![3]])?,
        t2: mk([row(&[(1, k + 1)]), row(&[(2, k - 1), (4, 1)]), vec![3]])?,
        u1: mk([row(&[(1, k), (2, 1)]), row(&[(2, k - 1), (4, 1)]), vec![3]])?,
        u2: mk([row(&[(1, k), (2, 1)]), row(&[(2, k - 2), (3, 1), (4, 1)]), vec![3]])?,
    })
}

/// A pair without a join in `B_{(3,3,2,1)}^n` or `B_{(3,2,1,1)}^n`, `n ≥ 4`.
pub fn nojoin_d(lambda: &Partition) -> Result<(Tableau, Tableau)> {
    let n = lambda.rank();
    let text = match lambda.parts() {
        [3, 3, 2, 1] if n >= 4 => ("1,2,2/3,3,4/4,5/5", "1,2,3/3,3,4/4,5/5"),
        [3, 2, 1, 1] if n >= 4 => ("1,1,3/2,5/4/5", "1,1,4/2,5/4/5"),
        _ => {
            return Err(Error::HypothesisViolated(format!(
                "({lambda}) with n = {n} is not (3,3,2,1) or (3,2,1,1) with n >= 4"
            )))
        }
    };
    Ok((Tableau::parse(text.0, n)?, Tableau::parse(text.1, n)?))
}

/// Embeds `B_μ^{n−1}`, `μ = (λ_2, …, λ_ℓ)`, into `B_λ^n`: a new first row
/// of 1s, every other entry raised by one.
pub fn iota_embed(t: &Tableau, lambda: &Partition) -> Result<Tableau> {
    let n = lambda.rank();
    if lambda.is_empty() || t.shape().parts() != &lambda.parts()[1..] || t.shape().rank() + 1 != n {
        return Err(Error::ShapeMismatch(format!(
            "cannot add a top row to ({}) in rank {} to get ({lambda}) in rank {n}",
            t.shape(),
            t.shape().rank()
        )));
    }
    let mut rows = vec![vec![1; lambda.part(1)]];
    rows.extend(t.rows().into_iter().map(|r| r.into_iter().map(|e| e + 1).collect()));
    Tableau::validate(lambda, &rows)
}

/// Embeds `B_μ^{n−1}`, `μ = (λ_1, …, λ_{ℓ−1})`, into `B_λ^n`: a new last
/// row filled with `n + 1`.
pub fn append_row_embed(t: &Tableau, lambda: &Partition) -> Result<Tableau> {
    let n = lambda.rank();
    let l = lambda.len();
    if l == 0 || t.shape().parts() != &lambda.parts()[..l - 1] || t.shape().rank() + 1 != n {
        return Err(Error::ShapeMismatch(format!(
            "cannot add a bottom row to ({}) in rank {} to get ({lambda}) in rank {n}",
            t.shape(),
            t.shape().rank()
        )));
    }
    let mut rows = t.rows();
    rows.push(vec![n + 1; lambda.part(l)]);
    Tableau::validate(lambda, &rows)
}

/// Embeds `B_μ^n`, `μ_i = λ_i − t`, into `B_λ^n` by prefixing `t` columns
/// whose row `i` entries are `i`.
pub fn eta_embed(t: &Tableau, lambda: &Partition, cols: usize) -> Result<Tableau> {
    let ok = t.shape().rank() == lambda.rank()
        && t.shape().len() <= lambda.len()
        && (cols == 0 || cols < lambda.part(lambda.len()))
        && (1..=lambda.len()).all(|i| t.shape().part(i) + cols == lambda.part(i));
    if !ok {
        return Err(Error::ShapeMismatch(format!(
            "({}) is not ({lambda}) minus {cols} columns",
            t.shape()
        )));
    }
    let rows: Vec<Vec<usize>> = (0..lambda.len())
        .map(|i| {
            let mut r = vec![i + 1; cols];
            if let Some(rest) = t.rows().get(i) {
                r.extend(rest);
            }
            r
        })
        .collect();
    Tableau::validate(lambda, &rows)
}

/// Carries a tableau of the consecutive rows `p..p+m−1` of `λ`, with the
/// first `cols` columns removed, into `B_λ^n`. The base may live in any
/// rank up to `n − ℓ + m`.
pub fn lift(base: &Tableau, lambda: &Partition, p: usize, cols: usize) -> Result<Tableau> {
    let m = base.shape().len();
    let l = lambda.len();
    let n = lambda.rank();
    if p == 0 || p + m - 1 > l || n + m < l + base.shape().rank() {
        return Err(Error::ShapeMismatch(format!(
            "rows {p}..{} of ({lambda}) cannot host ({})",
            p + m - 1,
            base.shape()
        )));
    }
    let mut rank = n - l + m;
    let mut shape = Partition::new(&lambda.parts()[p - 1..p + m - 1], rank)?;
    let mut t = eta_embed(&base.with_rank(rank)?, &shape, cols)?;
    for r in p + m..=l {
        rank += 1;
        shape = Partition::new(&lambda.parts()[p - 1..r], rank)?;
        t = append_row_embed(&t, &shape)?;
    }
    for top in (1..p).rev() {
        rank += 1;
        shape = Partition::new(&lambda.parts()[top - 1..], rank)?;
        t = iota_embed(&t, &shape)?;
    }
    debug_assert_eq!(rank, n);
    Ok(t)
}

fn triples(lambda: &Partition) -> impl Iterator<Item = (usize, usize, usize, usize)> + '_ {
    let l = lambda.len();
    (1..=l.saturating_sub(2)).map(move |p| (p, lambda.part(p), lambda.part(p + 1), lambda.part(p + 2)))
}

/// Bowtie in `B_λ^n` from the `λ_p > λ_{p+1} ≥ λ_{p+2} ≥ 2` pattern.
pub fn lifted_bowtie_a(lambda: &Partition, p: usize) -> Result<BowtieTableaux> {
    let (a, b, c) = (lambda.part(p), lambda.part(p + 1), lambda.part(p + 2));
    require(p >= 1 && p + 2 <= lambda.len() && a > b && b >= c && c >= 2, || {
        format!("no A pattern at row {p} of ({lambda})")
    })?;
    let cols = c - 2;
    let base = bowtie_a(&Partition::new(&[a - cols, b - cols, 2], 3)?)?;
    base.map(|t| lift(t, lambda, p, cols))
}

/// Bowtie in `B_λ^n` from the `λ_p − 2 ≥ λ_{p+1} ≥ λ_{p+2}` pattern.
pub fn lifted_bowtie_b(lambda: &Partition, p: usize) -> Result<BowtieTableaux> {
    let (a, b, c) = (lambda.part(p), lambda.part(p + 1), lambda.part(p + 2));
    require(p >= 1 && p + 2 <= lambda.len() && a >= b + 2 && b >= c && c >= 1, || {
        format!("no B pattern at row {p} of ({lambda})")
    })?;
    let cols = c - 1;
    let base = bowtie_b(&Partition::new(&[a - cols, b - cols, 1], 3)?)?;
    base.map(|t| lift(t, lambda, p, cols))
}

/// Bowtie in `B_λ^n` when `2 ≤ ℓ < n` and `λ_2 ≥ 2`.
pub fn lifted_bowtie_e(lambda: &Partition) -> Result<BowtieTableaux> {
    let l = lambda.len();
    require(l >= 2 && l < lambda.rank() && lambda.part(2) >= 2, || {
        format!("({lambda}) with n = {} needs 2 <= l < n and second part >= 2", lambda.rank())
    })?;
    let cols = lambda.part(2) - 2;
    let base = bowtie_e(&Partition::new(&[lambda.part(1) - cols, 2], 3)?)?;
    base.map(|t| lift(t, lambda, 1, cols))
}

/// Bowtie in `B_λ^n` from consecutive parts `(k + 1, k, 1)`, `k ≥ 3`, at
/// row `p`.
pub fn lifted_bowtie_self_dual(lambda: &Partition, p: usize) -> Result<BowtieTableaux> {
    let (a, b, c) = (lambda.part(p), lambda.part(p + 1), lambda.part(p + 2));
    require(p >= 1 && p + 2 <= lambda.len() && c == 1 && b >= 3 && a == b + 1, || {
        format!("no (k+1,k,1) run at row {p} of ({lambda})")
    })?;
    let base = bowtie_self_dual(&Partition::new(&[a, b, 1], 3)?)?;
    base.map(|t| lift(t, lambda, p, 0))
}

/// Pair without a join in `B_λ^n` for `λ = (3^m, 2, 1^{ℓ−m−1})`, `ℓ ≥ 4`.
pub fn lifted_nojoin_d(lambda: &Partition) -> Result<(Tableau, Tableau)> {
    let p = lambda.parts();
    let l = p.len();
    let threes = p.iter().take_while(|&&x| x == 3).count();
    let shape_ok = l >= 4
        && (1..=l - 2).contains(&threes)
        && p[threes] == 2
        && p[threes + 1..].iter().all(|&x| x == 1);
    require(shape_ok, || format!("({lambda}) is not (3^m,2,1^(l-m-1)) with l >= 4"))?;
    let (start, base_shape) = if threes >= 2 {
        (threes - 1, [3, 3, 2, 1])
    } else {
        (1, [3, 2, 1, 1])
    };
    let (x, y) = nojoin_d(&Partition::new(&base_shape, 4)?)?;
    Ok((lift(&x, lambda, start, 0)?, lift(&y, lambda, start, 0)?))
}

/// A witness for `λ` built in `B_{λ*}^n` and pulled back through the
/// duality isomorphism. The dual pattern sits at row `n − p`. When the
/// dual triple runs into zero parts there, another witness for `λ*` is
/// used. If `λ*` has no witness other than this one, the route loops, and
/// the bowtie for a run `(k + 1, k, 1)` inside `λ` is used instead.
pub fn bowtie_c_via_duality(lambda: &Partition, p: usize, cap: usize) -> Result<Certificate> {
    let (a, b, c) = (lambda.part(p), lambda.part(p + 1), lambda.part(p + 2));
    require(p >= 1 && p + 2 <= lambda.len() && a >= b && b >= c + 2, || {
        format!("no C pattern at row {p} of ({lambda})")
    })?;
    let n = lambda.rank();
    let dual_shape = lambda.dual();
    let q = n - p;
    let dual_witness = if q + 2 <= dual_shape.len() {
        Certificate::Bowtie {
            lemma: Lemma::C,
            tableaux: lifted_bowtie_b(&dual_shape, q)?,
        }
    } else if let Some(w) = certificate_excluding(&dual_shape, false, cap)? {
        w
    } else {
        let row = triples(lambda)
            .find(|&(_, a, b, c)| c == 1 && b >= 3 && a == b + 1)
            .map(|(row, ..)| row)
            .ok_or_else(|| Error::HypothesisViolated(format!("no witness for the dual ({dual_shape})")))?;
        return Ok(Certificate::Bowtie {
            lemma: Lemma::SelfDual,
            tableaux: lifted_bowtie_self_dual(lambda, row)?,
        });
    };
    let b_lambda = generate_crystal_capped(lambda, cap)?;
    let dual = dual_crystal(&b_lambda)?;
    let pull = |t: &Tableau| -> Result<Tableau> {
        dual.vertex_of(t)
            .map(|v| b_lambda.tableau(v))
            .ok_or_else(|| Error::UnknownVertex(t.to_string()))
    };
    Ok(match dual_witness {
        Certificate::Bowtie { tableaux, .. } => Certificate::Bowtie {
            lemma: Lemma::C,
            tableaux: tableaux.map(pull)?,
        },
        Certificate::NoJoinPair { first, second, .. } => Certificate::NoJoinPair {
            lemma: Lemma::C,
            first: pull(&first)?,
            second: pull(&second)?,
        },
    })
}

/// The first lemma whose hypothesis `λ` satisfies, in the order A, B, D,
/// E, C, with the row it applies at (1 for D and E).
pub fn applicable_lemma(lambda: &Partition) -> Option<(Lemma, usize)> {
    applicable(lambda, true)
}

fn applicable(lambda: &Partition, allow_c: bool) -> Option<(Lemma, usize)> {
    if let Some((p, ..)) = triples(lambda).find(|&(_, a, b, c)| a > b && c >= 2) {
        return Some((Lemma::A, p));
    }
    if let Some((p, ..)) = triples(lambda).find(|&(_, a, b, _)| a >= b + 2) {
        return Some((Lemma::B, p));
    }
    if lifted_nojoin_d(lambda).is_ok() {
        return Some((Lemma::D, 1));
    }
    if lambda.len() >= 2 && lambda.len() < lambda.rank() && lambda.part(2) >= 2 {
        return Some((Lemma::E, 1));
    }
    if allow_c {
        if let Some((p, ..)) = triples(lambda).find(|&(_, _, b, c)| b >= c + 2) {
            return Some((Lemma::C, p));
        }
    }
    None
}

fn certificate_excluding(lambda: &Partition, allow_c: bool, cap: usize) -> Result<Option<Certificate>> {
    let Some((lemma, p)) = applicable(lambda, allow_c) else {
        return Ok(None);
    };
    let bowtie = |tableaux| Certificate::Bowtie { lemma, tableaux };
    Ok(Some(match lemma {
        Lemma::A => bowtie(lifted_bowtie_a(lambda, p)?),
        Lemma::B => bowtie(lifted_bowtie_b(lambda, p)?),
        Lemma::E => bowtie(lifted_bowtie_e(lambda)?),
        Lemma::D => {
            let (first, second) = lifted_nojoin_d(lambda)?;
            Certificate::NoJoinPair { lemma, first, second }
        }
        Lemma::C => bowtie_c_via_duality(lambda, p, cap)?,
        Lemma::SelfDual => bowtie(lifted_bowtie_self_dual(lambda, p)?),
    }))
}

/// A witness that `B_λ^n` is not a lattice, from the first applicable
/// pattern (checked in the order A, B, D, E, C), or `None` if no pattern
/// applies. `cap` bounds the crystals generated for the dual route.
pub fn certificate_for(lambda: &Partition, cap: usize) -> Result<Option<Certificate>> {
    certificate_excluding(lambda, true, cap)
}

/// One row of the classification sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub lambda: String,
    pub n: usize,
    pub predicted: bool,
    pub brute_force: bool,
    pub clause: Option<Clause>,
    pub vertices: usize,
    pub millis: u128,
    /// First pair without a join, as tableaux.
    pub witness: Option<(String, String)>,
    /// Lemma of the constructed witness and whether it verified.
    pub certificate: Option<(Lemma, bool)>,
}

impl SweepRow {
    pub fn agrees(&self) -> bool {
        self.predicted == self.brute_force && self.certificate.is_none_or(|(_, ok)| ok)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SkippedShape {
    pub lambda: String,
    pub n: usize,
    pub vertices: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub skipped: Vec<SkippedShape>,
}

impl SweepReport {
    pub fn disagreements(&self) -> Vec<&SweepRow> {
        self.rows.iter().filter(|r| !r.agrees()).collect()
    }
}

/// Brute-force lattice test of one crystal against the prediction, with
/// the constructed witness checked whenever the prediction is negative.
pub fn classify_one(lambda: &Partition, cap: usize) -> Result<SweepRow> {
    let start = Instant::now();
    let b = generate_crystal_capped(lambda, cap)?;
    let index = ReachabilityIndex::build(&b);
    let verdict = is_lattice(&b, &index);
    let prediction = predict_lattice(lambda);
    let certificate = if prediction.is_lattice_predicted {
        None
    } else {
        match certificate_for(lambda, cap)? {
            Some(c) => Some((c.lemma(), c.verify(&b, &index)?)),
            None => None,
        }
    };
    Ok(SweepRow {
        lambda: lambda.to_string(),
        n: lambda.rank(),
        predicted: prediction.is_lattice_predicted,
        brute_force: verdict.is_lattice,
        clause: prediction.matched_clause,
        vertices: b.vertex_count(),
        millis: start.elapsed().as_millis(),
        witness: verdict
            .witness
            .map(|(u, v)| (b.tableau(u).to_string(), b.tableau(v).to_string())),
        certificate,
    })
}

/// Every `(λ, n)` with `1 ≤ n ≤ max_n`, `|λ| ≤ max_cells` and `ℓ ≤ n`, in
/// order of `n`, then `|λ|`, then reverse lexicographic `λ`. Shapes whose
/// crystal exceeds `cap` vertices are listed as skipped. `jobs = 0` uses
/// every core.
pub fn classification_sweep(max_n: usize, max_cells: usize, cap: usize, jobs: usize) -> Result<SweepReport> {
    let mut shapes = Vec::new();
    let mut skipped = Vec::new();
    for n in 1..=max_n {
        for size in 0..=max_cells {
            for parts in crate::partitions_of(size, n) {
                let lambda = Partition::new(&parts, n)?;
                let vertices = lambda.hook_content_count();
                if vertices > cap as u128 {
                    skipped.push(SkippedShape {
                        lambda: lambda.to_string(),
                        n,
                        vertices,
                    });
                } else {
                    shapes.push(lambda);
                }
            }
        }
    }
    let rows = crate::sweeps::thread_pool(jobs)?.install(|| {
        shapes
            .par_iter()
            .map(|lambda| classify_one(lambda, cap))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(SweepReport { rows, skipped })
}
