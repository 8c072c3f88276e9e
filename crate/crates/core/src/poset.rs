//! Order queries on a colored DAG: reachability, joins, meets, lattice
//! testing and bowtie certificates.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::crystal::ColoredDigraph;

/// Up-sets and down-sets of every vertex, as bitsets over topological
/// positions.
#[derive(Clone, Debug)]
pub struct ReachabilityIndex {
    order: Vec<usize>,
    position: Vec<usize>,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
}

impl ReachabilityIndex {
    /// Builds the index. Panics if the graph has a directed cycle.
    pub fn build<G: ColoredDigraph + ?Sized>(g: &G) -> Self {
        let size = g.vertex_count();
        let n = g.colors();
        let mut indegree: Vec<usize> = (0..size)
            .map(|v| (1..=n).filter(|&i| g.down(v, i).is_some()).count())
            .collect();
        let mut queue: VecDeque<usize> = (0..size).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(size);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for i in 1..=n {
                if let Some(w) = g.up(v, i) {
                    indegree[w] -= 1;
                    if indegree[w] == 0 {
                        queue.push_back(w);
                    }
                }
            }
        }
        assert_eq!(order.len(), size, "graph has a directed cycle");
        let mut position = vec![0; size];
        for (p, &v) in order.iter().enumerate() {
            position[v] = p;
        }
        let mut up = vec![BitSet::new(size); size];
        for &v in order.iter().rev() {
            let mut set = BitSet::new(size);
            set.insert(position[v]);
            for i in 1..=n {
                if let Some(w) = g.up(v, i) {
                    set.union_with(&up[w]);
                }
            }
            up[v] = set;
        }
        let mut down = vec![BitSet::new(size); size];
        for &v in &order {
            let mut set = BitSet::new(size);
            set.insert(position[v]);
            for i in 1..=n {
                if let Some(w) = g.down(v, i) {
                    set.union_with(&down[w]);
                }
            }
            down[v] = set;
        }
        ReachabilityIndex {
            order,
            position,
            up,
            down,
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// `u ≤ v`.
    pub fn leq(&self, u: usize, v: usize) -> bool {
        self.up[u].contains(self.position[v])
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.leq(u, v) || self.leq(v, u)
    }

    /// Vertices `≥ v`, in topological order.
    pub fn upset(&self, v: usize) -> Vec<usize> {
        self.up[v].iter().map(|p| self.order[p]).collect()
    }

    /// Vertices `≤ v`, in topological order.
    pub fn downset(&self, v: usize) -> Vec<usize> {
        self.down[v].iter().map(|p| self.order[p]).collect()
    }

    /// Least upper bound of `u` and `v`.
    pub fn join(&self, u: usize, v: usize) -> Option<usize> {
        let common = self.up[u].intersection(&self.up[v]);
        let candidate = self.order[common.first()?];
        common.is_subset(&self.up[candidate]).then_some(candidate)
    }

    /// Minimal elements of the common up-set of `u` and `v`.
    pub fn minimal_upper_bounds(&self, u: usize, v: usize) -> Vec<usize> {
        let common = self.up[u].intersection(&self.up[v]);
        common
            .iter()
            .map(|p| self.order[p])
            .filter(|&x| self.down[x].intersection(&common).count() == 1)
            .collect()
    }

    /// Greatest lower bound of a nonempty set.
    pub fn meet(&self, set: &[usize]) -> Option<usize> {
        let (&first, rest) = set.split_first()?;
        let mut common = self.down[first].clone();
        for &v in rest {
            common.intersect_with(&self.down[v]);
        }
        let candidate = self.order[common.last()?];
        common.is_subset(&self.down[candidate]).then_some(candidate)
    }

    /// First pair `(u, v)`, `u < v` in id order, that has no join.
    pub fn first_pair_without_join(&self) -> Option<(usize, usize)> {
        let size = self.len();
        (0..size).into_par_iter().find_map_first(|u| {
            (u + 1..size)
                .find(|&v| !self.comparable(u, v) && self.join(u, v).is_none())
                .map(|v| (u, v))
        })
    }
}

/// Result of a lattice test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeVerdict {
    pub is_lattice: bool,
    /// The first pair in id order without a join.
    pub witness: Option<(usize, usize)>,
}

/// Decides whether the graph, ordered by reachability, is a lattice.
/// A finite poset with a least element is a lattice iff every pair has a
/// join, so only joins are scanned.
pub fn is_lattice<G: ColoredDigraph + ?Sized>(g: &G, index: &ReachabilityIndex) -> LatticeVerdict {
    let n = g.colors();
    let sources: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| (1..=n).all(|i| g.down(v, i).is_none()))
        .take(2)
        .collect();
    if sources.len() > 1 {
        return LatticeVerdict {
            is_lattice: false,
            witness: Some((sources[0], sources[1])),
        };
    }
    let witness = index.first_pair_without_join();
    LatticeVerdict {
        is_lattice: witness.is_none(),
        witness,
    }
}

/// Four vertices witnessing that `t1` and `t2` have no join.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BowtieCertificate {
    pub t1: usize,
    pub t2: usize,
    pub u1: usize,
    pub u2: usize,
}

/// Checks `t1 ∥ t2`, `u1 ∥ u2`, `t1 ⋖ u1` (an edge), `t1 ≤ u2`, `t2 ≤ u1`
/// and `t2 ≤ u2`. Then `u1` and `u2` are both minimal upper bounds of
/// `t1, t2`: any common upper bound below `u1` lies strictly between
/// `t1` and `u1` or equals one of them.
pub fn verify_bowtie<G: ColoredDigraph + ?Sized>(
    g: &G,
    index: &ReachabilityIndex,
    c: &BowtieCertificate,
) -> bool {
    let size = g.vertex_count();
    if [c.t1, c.t2, c.u1, c.u2].iter().any(|&v| v >= size) {
        return false;
    }
    let cover = (1..=g.colors()).any(|i| g.up(c.t1, i) == Some(c.u1));
    !index.comparable(c.t1, c.t2)
        && !index.comparable(c.u1, c.u2)
        && cover
        && index.leq(c.t1, c.u2)
        && index.leq(c.t2, c.u1)
        && index.leq(c.t2, c.u2)
}

/// Searches for any bowtie, scanning `t1` in id order and the cover
/// `u1 = F_i(t1)` by color.
pub fn find_bowtie<G: ColoredDigraph + ?Sized>(
    g: &G,
    index: &ReachabilityIndex,
) -> Option<BowtieCertificate> {
    let size = g.vertex_count();
    (0..size).into_par_iter().find_map_first(|t1| {
        for i in 1..=g.colors() {
            let Some(u1) = g.up(t1, i) else { continue };
            for t2 in index.downset(u1) {
                if index.comparable(t1, t2) {
                    continue;
                }
                let mut free = index.up[t1].intersection(&index.up[t2]);
                free.difference_with(&index.up[u1]);
                free.difference_with(&index.down[u1]);
                if let Some(p) = free.first() {
                    return Some(BowtieCertificate {
                        t1,
                        t2,
                        u1,
                        u2: index.order[p],
                    });
                }
            }
        }
        None
    })
}

/// The weakly connected component of `start` in `g`, and its sources.
pub fn components_and_sources<G: ColoredDigraph + ?Sized>(
    g: &G,
    start: usize,
) -> (Vec<usize>, Vec<usize>) {
    let n = g.colors();
    let mut seen = vec![false; g.vertex_count()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut component = Vec::new();
    while let Some(v) = queue.pop_front() {
        component.push(v);
        for i in 1..=n {
            for w in [g.up(v, i), g.down(v, i)].into_iter().flatten() {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    component.sort_unstable();
    let sources = component
        .iter()
        .copied()
        .filter(|&v| (1..=n).all(|i| g.down(v, i).is_none()))
        .collect();
    (component, sources)
}

/// Whether the poset is a distributive lattice, checking
/// `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)` on all triples. `None` if some pair
/// lacks a join or meet. Cubic in the size.
pub fn is_distributive(index: &ReachabilityIndex) -> Option<bool> {
    let size = index.len();
    let table = |op: &(dyn Fn(usize, usize) -> Option<usize> + Sync)| -> Option<Vec<usize>> {
        (0..size * size)
            .into_par_iter()
            .map(|k| op(k / size, k % size))
            .collect()
    };
    let join = table(&|u, v| index.join(u, v))?;
    let meet = table(&|u, v| index.meet(&[u, v]))?;
    let ok = (0..size).into_par_iter().all(|x| {
        (0..size).all(|y| {
            (0..size).all(|z| {
                meet[x * size + join[y * size + z]] == join[meet[x * size + y] * size + meet[x * size + z]]
            })
        })
    });
    Some(ok)
}
