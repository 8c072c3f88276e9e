//! Brute-force oracles shared by the integration tests. None of these
//! call into the library's own algorithms beyond generating objects.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use crystal_pop::{ColoredDigraph, CrystalGraph, Permutation};

/// Number of semistandard fillings of `parts` with entries in `1..=max`,
/// by filling cells in row-major order.
pub fn count_ssyt(parts: &[usize], max: usize) -> u64 {
    fn go(parts: &[usize], max: usize, grid: &mut Vec<Vec<usize>>, r: usize, c: usize) -> u64 {
        if r == parts.len() {
            return 1;
        }
        let (nr, nc) = if c + 1 == parts[r] { (r + 1, 0) } else { (r, c + 1) };
        let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
        let mut total = 0;
        for x in lo_row.max(lo_col)..=max {
            grid[r][c] = x;
            total += go(parts, max, grid, nr, nc);
        }
        total
    }
    if parts.is_empty() {
        return 1;
    }
    let mut grid: Vec<Vec<usize>> = parts.iter().map(|&p| vec![0; p]).collect();
    go(parts, max, &mut grid, 0, 0)
}

/// Weyl's dimension formula for `sl_{n+1}`.
pub fn weyl_dimension(parts: &[usize], n: usize) -> u128 {
    let lam = |i: usize| parts.get(i).copied().unwrap_or(0) as i128;
    let (mut num, mut den) = (1i128, 1i128);
    for i in 0..=n {
        for j in i + 1..=n {
            num *= lam(i) - lam(j) + (j - i) as i128;
            den *= (j - i) as i128;
        }
    }
    (num / den) as u128
}

/// Up-sets by depth-first search from every vertex.
pub fn upsets(g: &CrystalGraph) -> Vec<HashSet<usize>> {
    (0..g.vertex_count())
        .map(|v| {
            let mut seen = HashSet::from([v]);
            let mut stack = vec![v];
            while let Some(x) = stack.pop() {
                for i in 1..=g.colors() {
                    if let Some(y) = g.up(x, i) {
                        if seen.insert(y) {
                            stack.push(y);
                        }
                    }
                }
            }
            seen
        })
        .collect()
}

/// Lattice test by listing common upper bounds of every pair.
pub fn naive_is_lattice(g: &CrystalGraph) -> bool {
    let up = upsets(g);
    let n = g.vertex_count();
    let sources = (0..n)
        .filter(|&v| (1..=g.colors()).all(|i| g.down(v, i).is_none()))
        .count();
    if sources != 1 {
        return false;
    }
    for u in 0..n {
        for v in u + 1..n {
            let common: Vec<usize> = up[u].intersection(&up[v]).copied().collect();
            let least = common
                .iter()
                .filter(|&&z| common.iter().all(|y| up[z].contains(y)))
                .count();
            if least != 1 {
                return false;
            }
        }
    }
    true
}

/// Pop-stack sorting, by splitting into descending runs and reversing.
pub fn pop_stack(w: &[usize]) -> Vec<usize> {
    let mut runs: Vec<Vec<usize>> = Vec::new();
    for &x in w {
        match runs.last_mut() {
            Some(run) if *run.last().unwrap() > x => run.push(x),
            _ => runs.push(vec![x]),
        }
    }
    runs.into_iter().flat_map(|r| r.into_iter().rev()).collect()
}

/// Number of elements in the forward orbit of `w` under `step`, ending
/// at the first fixed point.
pub fn orbit_size<T: Clone + Eq + std::hash::Hash>(w: T, step: impl Fn(&T) -> T) -> usize {
    let mut seen = HashMap::new();
    let mut x = w;
    loop {
        let next = step(&x);
        let k = seen.len();
        seen.insert(x.clone(), k);
        if next == x {
            return seen.len();
        }
        assert!(!seen.contains_key(&next), "orbit cycles");
        x = next;
    }
}

pub fn perm(text: &str) -> Permutation {
    Permutation::parse(text).unwrap()
}
