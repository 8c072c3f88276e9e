//! The symmetric group `S_m` as a Coxeter group.
//!
//! Conventions: `s_i` is the adjacent transposition `(i i+1)`. Right
//! multiplication `w·s_i` swaps the entries in positions `i` and `i+1` of
//! the one-line notation; left multiplication `s_i·w` swaps the values `i`
//! and `i+1`. The right weak order is containment of the value-pair
//! inversion sets `{(a, b) : a < b, w⁻¹(a) > w⁻¹(b)}`; this orientation is
//! pinned by the cover-relation oracle in the tests.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pop::coxeter_pop;
use crate::report::{CheckOutcome, SuiteReport};

/// A permutation of `[m]` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Permutation(Vec<u8>);

/// A set of simple generators `s_1, …, s_{m-1}`, stored as a bitmask
/// (bit `i - 1` for `s_i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct GeneratorSet(u32);

impl GeneratorSet {
    pub const fn empty() -> Self {
        GeneratorSet(0)
    }

    /// All of `S` for `S_m`.
    pub fn all(m: usize) -> Self {
        GeneratorSet(((1u64 << m.saturating_sub(1)) - 1) as u32)
    }

    pub fn from_bits(bits: u32) -> Self {
        GeneratorSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i >= 1 && i <= 32 && self.0 >> (i - 1) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << (i - 1);
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << (i - 1));
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: GeneratorSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: GeneratorSet) -> GeneratorSet {
        GeneratorSet(self.0 & other.0)
    }

    pub fn difference(self, other: GeneratorSet) -> GeneratorSet {
        GeneratorSet(self.0 & !other.0)
    }

    /// True iff the generators pairwise commute, i.e. no `s_i, s_{i+1}` pair.
    pub fn pairwise_commuting(self) -> bool {
        self.0 & (self.0 >> 1) == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (1..=32).filter(move |&i| self.contains(i))
    }
}

impl FromIterator<usize> for GeneratorSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = GeneratorSet::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|i| format!("s{i}")).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl Permutation {
    pub fn new(one_line: &[usize]) -> Result<Self> {
        let m = one_line.len();
        if m > u8::MAX as usize {
            return Err(Error::InvalidPermutation(format!("size {m} too large")));
        }
        let mut seen = vec![false; m + 1];
        for &v in one_line {
            if v == 0 || v > m || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{one_line:?} is not a bijection on [{m}]"
                )));
            }
        }
        Ok(Permutation(one_line.iter().map(|&v| v as u8).collect()))
    }

    /// Parses a digit string (`"532481976"`) or a comma-separated list.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let values: Vec<usize> = if text.contains(',') {
            text.split(',')
                .map(|s| {
                    s.trim()
                        .parse()
                        .map_err(|e| Error::Parse(format!("permutation entry {s:?}: {e}")))
                })
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(&values)
    }

    pub fn identity(m: usize) -> Self {
        Permutation((1..=m as u8).collect())
    }

    /// The longest element `w_0 = m … 2 1`.
    pub fn longest(m: usize) -> Self {
        Permutation((1..=m as u8).rev().collect())
    }

    /// Product `s_{i1} s_{i2} ⋯ s_{ir}`.
    pub fn from_word(m: usize, word: &[usize]) -> Self {
        let mut w = Permutation::identity(m);
        for &i in word {
            w = w.mul_generator(i);
        }
        w
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|&v| v as usize).collect()
    }

    /// `w(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &v)| v as usize == k + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.0.len()];
        for (k, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = (k + 1) as u8;
        }
        Permutation(inv)
    }

    /// The product `self · other`, i.e. the composite `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.size(), other.size());
        Permutation(other.0.iter().map(|&k| self.0[k as usize - 1]).collect())
    }

    /// `w · s_i`: swap positions `i` and `i + 1`.
    pub fn mul_generator(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.swap(i - 1, i);
        Permutation(v)
    }

    /// `s_i · w`: swap values `i` and `i + 1`.
    pub fn generator_mul(&self, i: usize) -> Self {
        let (a, b) = (i as u8, i as u8 + 1);
        Permutation(
            self.0
                .iter()
                .map(|&v| if v == a { b } else if v == b { a } else { v })
                .collect(),
        )
    }

    /// Coxeter length: the number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len())
            .map(|a| (a + 1..w.len()).filter(|&b| w[a] > w[b]).count())
            .sum()
    }

    /// `D_R(w) = {s_i : w(i) > w(i+1)}`.
    pub fn right_descents(&self) -> GeneratorSet {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, p)| p[0] > p[1])
            .map(|(k, _)| k + 1)
            .collect()
    }

    /// `D_L(w) = D_R(w⁻¹)`.
    pub fn left_descents(&self) -> GeneratorSet {
        self.inverse().right_descents()
    }

    /// A reduced word `(i1, …, ir)` with `w = s_{i1} ⋯ s_{ir}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.length());
        while let Some(i) = w.right_descents().iter().next() {
            word.push(i);
            w = w.mul_generator(i);
        }
        word.reverse();
        word
    }

    /// Value-pair inversion set as a bitmask over pairs `a < b`.
    fn inversion_mask(&self) -> u128 {
        let inv = self.inverse();
        let m = self.size();
        let mut mask = 0u128;
        let mut bit = 0;
        for a in 0..m {
            for b in a + 1..m {
                if inv.0[a] > inv.0[b] {
                    mask |= 1 << bit;
                }
                bit += 1;
            }
        }
        mask
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let s: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", s.join(","))
        }
    }
}

/// Right weak order `u ≤_R w`.
pub fn weak_leq(u: &Permutation, w: &Permutation) -> bool {
    assert_eq!(u.size(), w.size());
    if u.size() <= 16 {
        let (a, b) = (u.inversion_mask(), w.inversion_mask());
        return a & !b == 0;
    }
    let (ui, wi) = (u.inverse(), w.inverse());
    let m = u.size();
    (0..m).all(|a| (a + 1..m).all(|b| ui.0[a] < ui.0[b] || wi.0[a] > wi.0[b]))
}

/// Bruhat order `u ≤_B w` by rank-matrix dominance: for all `i, j`,
/// `#{a ≤ i : u(a) ≥ j} ≤ #{a ≤ i : w(a) ≥ j}`.
pub fn bruhat_leq(u: &Permutation, w: &Permutation) -> bool {
    assert_eq!(u.size(), w.size());
    let m = u.size();
    let mut ru = vec![0usize; m + 2];
    let mut rw = vec![0usize; m + 2];
    for i in 0..m {
        for j in 1..=u.0[i] as usize {
            ru[j] += 1;
        }
        for j in 1..=w.0[i] as usize {
            rw[j] += 1;
        }
        if (1..=m).any(|j| ru[j] > rw[j]) {
            return false;
        }
    }
    true
}

/// Maximal runs of consecutive generators in `j`, as value windows `[a, b]`.
fn blocks(j: GeneratorSet, m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 1;
    for i in 1..=m {
        if i == m || !j.contains(i) {
            out.push((start, i));
            start = i + 1;
        }
    }
    out
}

/// The longest element `w_0(J)` of the parabolic subgroup `W_J` of `S_m`:
/// reverse each window of consecutive generators in `J`.
pub fn longest_parabolic(j: GeneratorSet, m: usize) -> Permutation {
    let mut v: Vec<u8> = (1..=m as u8).collect();
    for (a, b) in blocks(j, m) {
        v[a - 1..b].reverse();
    }
    Permutation(v)
}

/// The minimal-length representative `ᴶw` of the coset `W_J w`: within each
/// value block of `J`, the values are placed in increasing order along the
/// positions the block occupies.
pub fn min_coset_rep(w: &Permutation, j: GeneratorSet) -> Permutation {
    let m = w.size();
    let mut block_of = vec![0usize; m + 1];
    let bl = blocks(j, m);
    for (k, &(a, b)) in bl.iter().enumerate() {
        for v in a..=b {
            block_of[v] = k;
        }
    }
    let mut next: Vec<usize> = bl.iter().map(|&(a, _)| a).collect();
    Permutation(
        w.0.iter()
            .map(|&v| {
                let k = block_of[v as usize];
                let out = next[k];
                next[k] += 1;
                out as u8
            })
            .collect(),
    )
}

/// The parabolic quotient `ᴶW = {x : D_L(x) ⊆ S ∖ J}` of `S_m`, listed in
/// breadth-first order up the right weak order (so by length).
pub fn parabolic_quotient(j: GeneratorSet, m: usize) -> Vec<Permutation> {
    let e = Permutation::identity(m);
    let mut seen: HashSet<Permutation> = HashSet::from([e.clone()]);
    let mut queue = VecDeque::from([e]);
    let mut out = Vec::new();
    while let Some(w) = queue.pop_front() {
        for i in 1..m {
            if w.right_descents().contains(i) {
                continue;
            }
            let up = w.mul_generator(i);
            if up.left_descents().intersection(j).is_empty() && seen.insert(up.clone()) {
                queue.push_back(up);
            }
        }
        out.push(w);
    }
    out
}

/// All of `S_m` in lexicographic order of one-line notation.
pub fn all_permutations(m: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (1..=m as u8).collect();
    loop {
        out.push(Permutation(cur.clone()));
        // next lexicographic permutation
        let Some(k) = (0..m.saturating_sub(1)).rev().find(|&k| cur[k] < cur[k + 1]) else {
            break;
        };
        let l = (k + 1..m).rev().find(|&l| cur[k] < cur[l]).unwrap();
        cur.swap(k, l);
        cur[k + 1..].reverse();
    }
    out
}

/// Exhaustively checks, over `S_m`, the projection and pop-stack lemmas
/// used to bound orbit sizes:
///
/// * `y ≤_R z ⇒ ᴶy ≤_R ᴶz` for all `J`;
/// * `x ≤_B y` and pairwise-commuting `D_R(y)` `⇒ Pop(x) ≤_B Pop(y)`;
/// * `ᴶ(Pop w) ≤_R Pop(ᴶw)` for all `J`, `w`;
/// * for `J = S ∖ {s}`: `Pop^{m-1}(ᴶw_0) = e`, `Pop^{m-2}(ᴶw_0) ≠ e`, and
///   every iterate has pairwise-commuting right descents.
pub fn verify_coxeter_lemmas(m: usize) -> SuiteReport {
    let perms = all_permutations(m);
    let subsets: Vec<GeneratorSet> = (0..1u32 << m.saturating_sub(1))
        .map(GeneratorSet::from_bits)
        .collect();
    let pops: Vec<Permutation> = perms.iter().map(coxeter_pop).collect();

    let mut projection = CheckOutcome::new("weak order is preserved by J-projection");
    for &j in &subsets {
        let reps: Vec<Permutation> = perms.iter().map(|w| min_coset_rep(w, j)).collect();
        for (a, y) in perms.iter().enumerate() {
            for (b, z) in perms.iter().enumerate() {
                if weak_leq(y, z) {
                    projection.record(weak_leq(&reps[a], &reps[b]), || {
                        format!("J={j} y={y} z={z}")
                    });
                }
            }
        }
    }

    let mut bruhat_pop = CheckOutcome::new("Pop is Bruhat-monotone below commuting-descent elements");
    for (b, y) in perms.iter().enumerate() {
        if !y.right_descents().pairwise_commuting() {
            continue;
        }
        for (a, x) in perms.iter().enumerate() {
            if bruhat_leq(x, y) {
                bruhat_pop.record(bruhat_leq(&pops[a], &pops[b]), || format!("x={x} y={y}"));
            }
        }
    }

    let mut pop_projection = CheckOutcome::new("J-projection of Pop(w) lies weakly below Pop of projection");
    for &j in &subsets {
        for (a, w) in perms.iter().enumerate() {
            let lhs = min_coset_rep(&pops[a], j);
            let rhs = coxeter_pop(&min_coset_rep(w, j));
            pop_projection.record(weak_leq(&lhs, &rhs), || format!("J={j} w={w}"));
        }
    }

    let mut w0_orbit = CheckOutcome::new("Pop^(h-1) kills the maximal quotient element, Pop^(h-2) does not");
    let mut commuting = CheckOutcome::new("iterates of the maximal quotient element have commuting descents");
    let all = GeneratorSet::all(m);
    for s in all.iter() {
        let mut j = all;
        j.remove(s);
        let top = min_coset_rep(&Permutation::longest(m), j);
        let mut iterates = vec![top.clone()];
        for _ in 0..m {
            let next = coxeter_pop(iterates.last().unwrap());
            iterates.push(next);
        }
        for it in &iterates {
            commuting.record(it.right_descents().pairwise_commuting(), || {
                format!("s{s}: iterate {it}")
            });
        }
        let h = m;
        w0_orbit.record(
            iterates[h - 1].is_identity() && (h < 2 || !iterates[h - 2].is_identity()),
            || format!("s{s}: top={top}"),
        );
    }

    SuiteReport {
        subject: format!("Coxeter lemma suite for S_{m}"),
        checks: vec![projection, bruhat_pop, pop_projection, w0_orbit, commuting],
    }
}
