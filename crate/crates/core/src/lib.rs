//! Type-A crystal combinatorics: the crystal posets `B_λ^n` of
//! semistandard tableaux, pop-stack sorting on crystals and permutations,
//! the key map to the parabolic quotient, and lattice classification with
//! bowtie certificates.

pub mod bitset;
pub mod classifier;
pub mod crystal;
pub mod key;
pub mod error;
pub mod export;
pub mod perm;
pub mod pop;
pub mod poset;
pub mod report;
pub mod sweeps;
pub mod tableaux;

pub use crystal::{
    dual_crystal, embed_parabolic_quotient, generate_crystal, generate_crystal_capped,
    levi_restrict, weyl_act, weyl_reflect, ColorSet, ColoredDigraph, ColoredGraph, CrystalGraph,
    QuotientEmbedding,
};
pub use error::{Error, Result};
pub use perm::{GeneratorSet, Permutation};
pub use poset::{BowtieCertificate, ReachabilityIndex};
pub use tableaux::{Partition, Tableau, WeightVector};

/// Partitions of `size` with at most `max_parts` parts, in reverse
/// lexicographic order (so `(size)` comes first).
pub fn partitions_of(size: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, cap: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=cap.min(rest)).rev() {
            cur.push(part);
            go(rest - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(size, size, max_parts, &mut Vec::new(), &mut out);
    out
}
