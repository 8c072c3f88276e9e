//! The key map `κ: B_λ → ᴷW`.
//!
//! `D_e = {T_min}` and `D_{u·s_i} = F_i^*(D_u)` whenever `u < u·s_i` in
//! `ᴷW`, where `F_i^*` closes a set under `F_i`. Every cover path to `w`
//! must produce the same set. `κ(v)` is the Bruhat-least `w` with
//! `v ∈ D_w`; the set of such `w` is asserted to be exactly the Bruhat
//! up-set of `κ(v)` inside `ᴷW`. It is a weak-order up-set, but in general
//! it has several weak-order minimal elements, so the weak order alone does
//! not pin `κ`.

use std::collections::HashMap;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::crystal::{stabilizer, ColoredDigraph, CrystalGraph, QuotientEmbedding};
use crate::error::{Error, Result};
use crate::perm::{bruhat_leq, parabolic_quotient, weak_leq, GeneratorSet, Permutation};
use crate::pop::{coxeter_pop, pop_crystal};
use crate::report::{CheckOutcome, SuiteReport};

/// The Demazure crystals `D_w ⊆ B_λ` for `w ∈ ᴷW`.
#[derive(Clone, Debug)]
pub struct DemazureFamily {
    pub stabilizer: GeneratorSet,
    /// `ᴷW` in weak-order breadth-first order.
    pub elements: Vec<Permutation>,
    position: HashMap<Permutation, usize>,
    sets: Vec<BitSet>,
    bruhat: Vec<BitSet>,
}

fn closure(b: &CrystalGraph, set: &BitSet, i: usize) -> BitSet {
    let mut out = set.clone();
    for v in set.iter() {
        let mut x = v;
        while let Some(y) = b.up(x, i) {
            if !out.insert(y) {
                break;
            }
            x = y;
        }
    }
    out
}

impl DemazureFamily {
    pub fn build(b: &CrystalGraph) -> Result<Self> {
        let k = stabilizer(b.lambda());
        let m = b.rank() + 1;
        let elements = parabolic_quotient(k, m);
        let position: HashMap<Permutation, usize> = elements
            .iter()
            .enumerate()
            .map(|(p, w)| (w.clone(), p))
            .collect();
        let mut sets: Vec<BitSet> = Vec::with_capacity(elements.len());
        for w in &elements {
            if w.is_identity() {
                let mut s = BitSet::new(b.len());
                s.insert(b.min_vertex());
                sets.push(s);
                continue;
            }
            let mut found: Option<(usize, BitSet)> = None;
            for i in w.right_descents().iter() {
                let below = &position[&w.mul_generator(i)];
                let set = closure(b, &sets[*below], i);
                match &found {
                    None => found = Some((i, set)),
                    Some((j, other)) if *other != set => {
                        return Err(Error::InconsistentFamily(format!(
                            "{w}: paths ending in s{j} and s{i} disagree"
                        )))
                    }
                    Some(_) => {}
                }
            }
            sets.push(found.expect("non-identity element has a right descent").1);
        }
        let bruhat = elements
            .iter()
            .map(|u| {
                let mut s = BitSet::new(elements.len());
                for (p, w) in elements.iter().enumerate() {
                    if bruhat_leq(u, w) {
                        s.insert(p);
                    }
                }
                s
            })
            .collect();
        Ok(DemazureFamily {
            stabilizer: k,
            elements,
            position,
            sets,
            bruhat,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, w: &Permutation) -> Option<usize> {
        self.position.get(w).copied()
    }

    /// `D_w` as a sorted vertex list.
    pub fn demazure(&self, w: &Permutation) -> Option<Vec<usize>> {
        self.position(w).map(|p| self.sets[p].iter().collect())
    }

    pub fn contains(&self, w: usize, v: usize) -> bool {
        self.sets[w].contains(v)
    }

    /// Positions of the `w` with `v ∈ D_w`.
    pub fn indices_containing(&self, v: usize) -> BitSet {
        let mut s = BitSet::new(self.len());
        for (p, set) in self.sets.iter().enumerate() {
            if set.contains(v) {
                s.insert(p);
            }
        }
        s
    }

    /// Position of `κ(v)` in [`Self::elements`].
    pub fn key_index(&self, v: usize) -> Result<usize> {
        let holders = self.indices_containing(v);
        let minimal: Vec<usize> = holders
            .iter()
            .filter(|&p| holders.iter().all(|q| q == p || !self.bruhat[q].contains(p)))
            .collect();
        match minimal.as_slice() {
            [p] if holders.is_subset(&self.bruhat[*p]) => Ok(*p),
            _ => Err(Error::NonUniqueMinimum {
                vertex: v,
                candidates: minimal.len(),
            }),
        }
    }

    /// `κ` at every vertex, as positions in [`Self::elements`].
    pub fn key_indices(&self, b: &CrystalGraph) -> Result<Vec<usize>> {
        (0..b.len()).map(|v| self.key_index(v)).collect()
    }

    pub fn keys(&self, b: &CrystalGraph) -> Result<Vec<Permutation>> {
        Ok(self
            .key_indices(b)?
            .into_iter()
            .map(|p| self.elements[p].clone())
            .collect())
    }
}

pub fn build_demazure_family(b: &CrystalGraph) -> Result<DemazureFamily> {
    DemazureFamily::build(b)
}

/// `κ(v)`.
pub fn key_map(fam: &DemazureFamily, v: usize) -> Result<Permutation> {
    Ok(fam.elements[fam.key_index(v)?].clone())
}

/// Checks the defining properties of `κ` on every vertex and color:
///
/// * (a) `E_i(v) ≠ 0 ≠ F_i(v) ⇒ κ(F_i v) = κ(v)`;
/// * (b) `E_i(v) = 0 ≠ F_i(v) ⇒ κ(F_i v) ∈ {κ(v)s_i, κ(v)}`;
/// * (c) `s_i ∈ D_R(κ(v)) ⇒ E_i(v) ≠ 0`;
/// * (d) `κ(v) = e ⇒ v = T_min`;
///
/// plus order preservation on covers, monotonicity of the family, the
/// shape of `{w : v ∈ D_w}`, and `κ(v_λ·w) = w` on the embedded quotient.
pub fn verify_key_properties(
    b: &CrystalGraph,
    fam: &DemazureFamily,
    emb: Option<&QuotientEmbedding>,
) -> Result<SuiteReport> {
    let keys = fam.keys(b)?;
    let n = b.rank();
    let name = |v: usize| b.tableau(v).to_string();

    let mut a = CheckOutcome::new("(a) F_i inside an i-string keeps the key");
    let mut bb = CheckOutcome::new("(b) F_i from an i-string top multiplies the key by s_i or keeps it");
    let mut c = CheckOutcome::new("(c) a right descent s_i of the key forces E_i");
    let mut d = CheckOutcome::new("(d) only T_min has key e");
    let mut order = CheckOutcome::new("key is order preserving on covers");
    for v in 0..b.len() {
        let kv = &keys[v];
        d.record(!kv.is_identity() || v == b.min_vertex(), || name(v));
        for i in 1..=n {
            let up = b.up(v, i);
            let down = b.down(v, i);
            if let Some(w) = up {
                let kw = &keys[w];
                if down.is_some() {
                    a.record(kw == kv, || format!("{} i={i}", name(v)));
                } else {
                    bb.record(kw == kv || *kw == kv.mul_generator(i), || {
                        format!("{} i={i}: {kv} -> {kw}", name(v))
                    });
                }
                order.record(weak_leq(kv, kw), || format!("{} i={i}", name(v)));
            }
            if kv.right_descents().contains(i) {
                c.record(down.is_some(), || format!("{} i={i}", name(v)));
            }
        }
    }

    let mut monotone = CheckOutcome::new("u <=_R w implies D_u within D_w; the top set is everything");
    for (p, u) in fam.elements.iter().enumerate() {
        for (q, w) in fam.elements.iter().enumerate() {
            if weak_leq(u, w) {
                monotone.record(fam.sets[p].is_subset(&fam.sets[q]), || format!("{u} {w}"));
            }
        }
    }
    let top = fam.len() - 1;
    monotone.record(fam.sets[top].count() == b.len(), || {
        format!("top {} misses vertices", fam.elements[top])
    });

    let mut filter = CheckOutcome::new("{w : v in D_w} is the Bruhat up-set of the key and a weak-order up-set");
    for v in 0..b.len() {
        let holders = fam.indices_containing(v);
        let p = fam.position(&keys[v]).expect("key lies in the quotient");
        let upset_ok = holders == fam.bruhat[p];
        let weak_ok = holders.iter().all(|x| {
            fam.elements
                .iter()
                .enumerate()
                .all(|(y, w)| !weak_leq(&fam.elements[x], w) || holders.contains(y))
        });
        filter.record(upset_ok && weak_ok, || name(v));
    }

    let mut embedded = CheckOutcome::new("key of v_lambda.w is w");
    if let Some(emb) = emb {
        for (w, v) in emb.iter() {
            embedded.record(&keys[v] == w, || format!("{w} -> {}", keys[v]));
        }
    }

    Ok(SuiteReport {
        subject: format!("key map on B_({})^{n}", b.lambda()),
        checks: vec![a, bb, c, d, order, monotone, filter, embedded],
    })
}

/// Checks `κ(Pop_◊(v)) ≤_R Pop_W(κ(v))` for every vertex.
pub fn verify_pop_key_inequality(b: &CrystalGraph, fam: &DemazureFamily) -> Result<SuiteReport> {
    let keys = fam.keys(b)?;
    let mut check = CheckOutcome::new("key(Pop(v)) <=_R Pop(key(v))");
    for v in 0..b.len() {
        let lhs = &keys[pop_crystal(b, v)];
        let rhs = coxeter_pop(&keys[v]);
        check.record(weak_leq(lhs, &rhs), || {
            format!("{}: {lhs} vs {rhs}", b.tableau(v))
        });
    }
    Ok(SuiteReport {
        subject: format!("pop/key inequality on B_({})^{}", b.lambda(), b.rank()),
        checks: vec![check],
    })
}

/// Per-vertex key values for export.
#[derive(Clone, Debug, Serialize)]
pub struct KeyRecord {
    pub id: usize,
    pub tableau: String,
    pub key: String,
}

pub fn key_records(b: &CrystalGraph, fam: &DemazureFamily) -> Result<Vec<KeyRecord>> {
    Ok(fam
        .keys(b)?
        .into_iter()
        .enumerate()
        .map(|(id, k)| KeyRecord {
            id,
            tableau: b.tableau(id).to_string(),
            key: k.to_string(),
        })
        .collect())
}
