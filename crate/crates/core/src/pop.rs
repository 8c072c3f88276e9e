//! Pop-stack sorting: the crystal operator `Pop_◊`, pop-stack sorting on
//! permutations, its Coxeter form `w ↦ w·w_0(D_R(w))`, the semilattice
//! variant, and orbit statistics.

use rayon::prelude::*;
use serde::Serialize;

use crate::crystal::{levi_restrict, ColorSet, ColoredDigraph, CrystalGraph, QuotientEmbedding};
use crate::error::{Error, Result};
use crate::perm::{longest_parabolic, Permutation};
use crate::poset::{components_and_sources, ReachabilityIndex};

/// Largest rank for which [`is_poppable`] enumerates all color subsets.
pub const POPPABLE_MAX_COLORS: usize = 12;

/// `v_↓`: colors of the edges entering `v`.
pub fn down_colors<G: ColoredDigraph + ?Sized>(g: &G, v: usize) -> ColorSet {
    (1..=g.colors()).filter(|&i| g.down(v, i).is_some()).collect()
}

/// `Pop_◊(v)`: the source of the component of `B|_{v_↓}` containing `v`,
/// reached by walking down edges with colors in `v_↓`, smallest color first.
pub fn pop_crystal<G: ColoredDigraph + ?Sized>(g: &G, v: usize) -> usize {
    let colors = down_colors(g, v);
    let mut x = v;
    'walk: loop {
        for i in colors.iter() {
            if let Some(y) = g.down(x, i) {
                x = y;
                continue 'walk;
            }
        }
        return x;
    }
}

/// `Pop_◊(v)` straight from the definition: materialize the component and
/// demand a unique source.
pub fn pop_crystal_by_component<G: ColoredDigraph + ?Sized>(g: &G, v: usize) -> Result<usize> {
    let view = levi_restrict(g, down_colors(g, v));
    let (_, sources) = components_and_sources(&view, v);
    match sources.as_slice() {
        [s] => Ok(*s),
        _ => Err(Error::NotPoppable {
            vertex: v,
            sources: sources.len(),
        }),
    }
}

/// The semilattice pop: the meet of `v` and every element it covers.
pub fn semilattice_pop<G: ColoredDigraph + ?Sized>(
    g: &G,
    index: &ReachabilityIndex,
    v: usize,
) -> Result<usize> {
    let mut set = vec![v];
    set.extend((1..=g.colors()).filter_map(|i| g.down(v, i)));
    index.meet(&set).ok_or(Error::MeetUndefined)
}

/// A forward orbit, ending at its first fixed point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub start: usize,
    pub trajectory: Vec<usize>,
    pub length: usize,
}

/// Iterates `step` from `start` until a fixed point, giving up after
/// `limit` distinct elements.
pub fn orbit_with(
    start: usize,
    limit: usize,
    mut step: impl FnMut(usize) -> Result<usize>,
) -> Result<OrbitReport> {
    let mut trajectory = vec![start];
    loop {
        let x = *trajectory.last().expect("nonempty");
        let y = step(x)?;
        if y == x {
            break;
        }
        if trajectory.len() >= limit {
            return Err(Error::NonTermination(limit));
        }
        trajectory.push(y);
    }
    let length = trajectory.len();
    Ok(OrbitReport {
        start,
        trajectory,
        length,
    })
}

/// The `Pop_◊` orbit of `v`.
pub fn orbit<G: ColoredDigraph + ?Sized>(g: &G, v: usize) -> Result<OrbitReport> {
    orbit_with(v, g.vertex_count(), |x| Ok(pop_crystal(g, x)))
}

/// The semilattice-pop orbit of `v`.
pub fn semilattice_orbit<G: ColoredDigraph + ?Sized>(
    g: &G,
    index: &ReachabilityIndex,
    v: usize,
) -> Result<OrbitReport> {
    orbit_with(v, g.vertex_count(), |x| semilattice_pop(g, index, x))
}

/// `|O(v)|` under `Pop_◊` for every vertex. Uses that `Pop_◊(v) < v` in
/// id order whenever `v ≠ T_min`, since ids are topological.
pub fn orbit_lengths(b: &CrystalGraph) -> Vec<usize> {
    let pops: Vec<usize> = (0..b.len()).into_par_iter().map(|v| pop_crystal(b, v)).collect();
    let mut lengths = vec![0usize; b.len()];
    for v in 0..b.len() {
        lengths[v] = if pops[v] == v {
            1
        } else {
            debug_assert!(pops[v] < v);
            lengths[pops[v]] + 1
        };
    }
    lengths
}

/// The largest `Pop_◊` orbit, with the first vertex attaining it.
pub fn max_orbit_size(b: &CrystalGraph) -> (usize, usize) {
    let lengths = orbit_lengths(b);
    let mut best = (0, 0);
    for (v, &l) in lengths.iter().enumerate() {
        if l > best.0 {
            best = (l, v);
        }
    }
    best
}

/// A color set and vertex whose `B|_J` component has several sources.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoppabilityViolation {
    pub colors: ColorSet,
    pub vertex: usize,
    pub sources: usize,
}

/// Checks every `J ⊆ [n]`: each component of `B|_J` has one source.
pub fn poppability_violation<G: ColoredDigraph + ?Sized>(
    g: &G,
) -> Result<Option<PoppabilityViolation>> {
    let n = g.colors();
    if n > POPPABLE_MAX_COLORS {
        return Err(Error::TooManyColors {
            n,
            limit: POPPABLE_MAX_COLORS,
        });
    }
    let size = g.vertex_count();
    Ok((0..1u64 << n).into_par_iter().find_map_first(|bits| {
        let colors = ColorSet::from_bits(bits);
        let mut parent: Vec<usize> = (0..size).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for v in 0..size {
            for i in colors.iter() {
                if let Some(w) = g.up(v, i) {
                    let (a, b) = (root(&mut parent, v), root(&mut parent, w));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut sources = vec![0usize; size];
        let mut witness = vec![usize::MAX; size];
        for v in 0..size {
            if colors.iter().all(|i| g.down(v, i).is_none()) {
                let r = root(&mut parent, v);
                sources[r] += 1;
                witness[r] = witness[r].min(v);
            }
        }
        (0..size).find(|&r| sources[r] > 1).map(|r| PoppabilityViolation {
            colors,
            vertex: witness[r],
            sources: sources[r],
        })
    }))
}

pub fn is_poppable<G: ColoredDigraph + ?Sized>(g: &G) -> Result<bool> {
    Ok(poppability_violation(g)?.is_none())
}

/// Pop-stack sorting: reverse each maximal descending run.
pub fn pop_permutation(w: &Permutation) -> Permutation {
    let mut v = w.one_line();
    let mut start = 0;
    for k in 1..=v.len() {
        if k == v.len() || v[k - 1] < v[k] {
            v[start..k].reverse();
            start = k;
        }
    }
    Permutation::new(&v).expect("reversing runs keeps a permutation")
}

/// `Pop_W(w) = w · w_0(D_R(w))`.
pub fn coxeter_pop(w: &Permutation) -> Permutation {
    w.compose(&longest_parabolic(w.right_descents(), w.size()))
}

/// `|O(w)|` under pop-stack sorting.
pub fn permutation_orbit(w: &Permutation) -> Vec<Permutation> {
    let mut out = vec![w.clone()];
    loop {
        let next = pop_permutation(out.last().expect("nonempty"));
        if &next == out.last().expect("nonempty") {
            return out;
        }
        out.push(next);
    }
}

/// Result of comparing `Pop_◊` with `Pop_W` on the embedded quotient.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientAgreement {
    pub checked: usize,
    /// `(w, image of Pop_◊, image of Pop_W)` for each disagreement.
    pub mismatches: Vec<(String, usize, usize)>,
}

impl QuotientAgreement {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks `Pop_◊(v_λ·w) = v_λ·Pop_W(w)` for every `w ∈ ᴷW`.
pub fn pop_agreement_on_quotient(b: &CrystalGraph, emb: &QuotientEmbedding) -> QuotientAgreement {
    let mut mismatches = Vec::new();
    for (w, v) in emb.iter() {
        let lhs = pop_crystal(b, v);
        let popped = crate::perm::min_coset_rep(&coxeter_pop(w), emb.stabilizer);
        let rhs = emb.image(&popped).unwrap_or(usize::MAX);
        if lhs != rhs {
            mismatches.push((w.to_string(), lhs, rhs));
        }
    }
    QuotientAgreement {
        checked: emb.len(),
        mismatches,
    }
}
