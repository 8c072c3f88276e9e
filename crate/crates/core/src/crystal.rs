//! Crystal operators on tableaux and the crystal graph `B_λ^n`.
//!
//! `F_i` and `E_i` act by parenthesis matching on the reading word: letters
//! `i + 1` open, letters `i` close. The graph is generated breadth-first
//! from the highest-weight tableau, so vertex ids are a topological order
//! (each `F_i` raises the rank by one).

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{parabolic_quotient, GeneratorSet, Permutation};
use crate::tableaux::{Partition, Tableau};

/// Default vertex cap for crystal generation.
pub const DEFAULT_VERTEX_CAP: usize = 2_000_000;

/// Largest rank supported by [`ColorSet`].
pub const MAX_COLORS: usize = 64;

const NONE: u32 = u32::MAX;

/// A set of colors drawn from `1..=64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColorSet(u64);

impl ColorSet {
    pub const fn empty() -> Self {
        ColorSet(0)
    }

    /// All colors `1..=n`.
    pub fn all(n: usize) -> Self {
        if n >= 64 {
            ColorSet(u64::MAX)
        } else {
            ColorSet((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        ColorSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=64).contains(&i) && self.0 >> (i - 1) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << (i - 1);
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn intersection(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i + 1)
        })
    }

    /// The same colors as simple generators of the Weyl group.
    pub fn to_generators(self) -> GeneratorSet {
        self.iter().collect()
    }
}

impl FromIterator<usize> for ColorSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ColorSet::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// A finite digraph whose edges carry colors `1..=n`, with at most one
/// outgoing and one incoming edge of each color per vertex.
pub trait ColoredDigraph: Sync {
    fn vertex_count(&self) -> usize;
    fn colors(&self) -> usize;
    /// Head of the outgoing `i`-edge at `v`.
    fn up(&self, v: usize, i: usize) -> Option<usize>;
    /// Tail of the incoming `i`-edge at `v`.
    fn down(&self, v: usize, i: usize) -> Option<usize>;
}

/// A colored digraph given by an explicit edge list.
#[derive(Clone, Debug)]
pub struct ColoredGraph {
    n: usize,
    succ: Vec<u32>,
    pred: Vec<u32>,
}

impl ColoredGraph {
    /// Builds a graph from `(src, dst, color)` triples. Rejects a second
    /// edge of the same color leaving or entering a vertex.
    pub fn from_edges(vertices: usize, n: usize, edges: &[(usize, usize, usize)]) -> Result<Self> {
        let mut succ = vec![NONE; vertices * n];
        let mut pred = vec![NONE; vertices * n];
        for &(s, d, i) in edges {
            if i == 0 || i > n {
                return Err(Error::InvalidColor { color: i, n });
            }
            if s >= vertices || d >= vertices {
                return Err(Error::UnknownVertex(format!("{}", s.max(d))));
            }
            let (a, b) = (s * n + i - 1, d * n + i - 1);
            if succ[a] != NONE || pred[b] != NONE {
                return Err(Error::Parse(format!("duplicate {i}-edge at {s} -> {d}")));
            }
            succ[a] = d as u32;
            pred[b] = s as u32;
        }
        Ok(ColoredGraph { n, succ, pred })
    }
}

impl ColoredDigraph for ColoredGraph {
    fn vertex_count(&self) -> usize {
        self.succ.len() / self.n.max(1)
    }

    fn colors(&self) -> usize {
        self.n
    }

    fn up(&self, v: usize, i: usize) -> Option<usize> {
        lookup(&self.succ, self.n, v, i)
    }

    fn down(&self, v: usize, i: usize) -> Option<usize> {
        lookup(&self.pred, self.n, v, i)
    }
}

#[inline]
fn lookup(table: &[u32], n: usize, v: usize, i: usize) -> Option<usize> {
    if i == 0 || i > n {
        return None;
    }
    match table[v * n + i - 1] {
        NONE => None,
        w => Some(w as usize),
    }
}

/// Position (in the row-major buffer) of the entry `F_i` changes.
fn lowering_site(entries: &[u8], order: &[usize], i: usize) -> Option<usize> {
    let (close, open) = (i as u8, i as u8 + 1);
    let mut depth = 0usize;
    let mut site = None;
    for &k in order {
        let e = entries[k];
        if e == open {
            depth += 1;
        } else if e == close {
            if depth == 0 {
                site = Some(k);
            } else {
                depth -= 1;
            }
        }
    }
    site
}

/// Position of the entry `E_i` changes.
fn raising_site(entries: &[u8], order: &[usize], i: usize) -> Option<usize> {
    let (close, open) = (i as u8, i as u8 + 1);
    let mut depth = 0usize;
    let mut site = None;
    for &k in order {
        let e = entries[k];
        if e == open {
            if depth == 0 {
                site = Some(k);
            }
            depth += 1;
        } else if e == close && depth > 0 {
            depth -= 1;
        }
    }
    if depth > 0 {
        site
    } else {
        None
    }
}

impl Tableau {
    /// `F_i(T)`, or `None` when it is zero or `i` is not a color.
    pub fn lower(&self, i: usize) -> Option<Tableau> {
        if i == 0 || i > self.shape().rank() {
            return None;
        }
        let order = self.shape().reading_order();
        let k = lowering_site(self.entries(), &order, i)?;
        let mut entries = self.entries().to_vec();
        entries[k] += 1;
        Some(Tableau::from_entries(self.shape().clone(), entries))
    }

    /// `E_i(T)`, or `None` when it is zero or `i` is not a color.
    pub fn raise(&self, i: usize) -> Option<Tableau> {
        if i == 0 || i > self.shape().rank() {
            return None;
        }
        let order = self.shape().reading_order();
        let k = raising_site(self.entries(), &order, i)?;
        let mut entries = self.entries().to_vec();
        entries[k] -= 1;
        Some(Tableau::from_entries(self.shape().clone(), entries))
    }
}

/// `F_i(T)` with the color checked against the rank.
pub fn lowering_f(t: &Tableau, i: usize) -> Result<Option<Tableau>> {
    check_color(i, t.shape().rank())?;
    Ok(t.lower(i))
}

/// `E_i(T)` with the color checked against the rank.
pub fn raising_e(t: &Tableau, i: usize) -> Result<Option<Tableau>> {
    check_color(i, t.shape().rank())?;
    Ok(t.raise(i))
}

fn check_color(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        Err(Error::InvalidColor { color: i, n })
    } else {
        Ok(())
    }
}

/// The vertex cap, overridden by `CRYSTAL_POP_CAP` when it parses.
pub fn default_vertex_cap() -> usize {
    std::env::var("CRYSTAL_POP_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_VERTEX_CAP)
}

/// The crystal graph `B_λ^n`.
#[derive(Clone, Debug)]
pub struct CrystalGraph {
    lambda: Partition,
    cells: usize,
    entries: Vec<u8>,
    index: HashMap<Box<[u8]>, u32>,
    succ: Vec<u32>,
    pred: Vec<u32>,
}

/// Generates `B_λ^n` with the default cap.
pub fn generate_crystal(lambda: &Partition) -> Result<CrystalGraph> {
    generate_crystal_capped(lambda, default_vertex_cap())
}

/// Generates `B_λ^n`, failing once more than `cap` vertices are found.
pub fn generate_crystal_capped(lambda: &Partition, cap: usize) -> Result<CrystalGraph> {
    let n = lambda.rank();
    if n > MAX_COLORS {
        return Err(Error::TooManyColors {
            n,
            limit: MAX_COLORS,
        });
    }
    let cells = lambda.size();
    let order = lambda.reading_order();
    let top = Tableau::highest_weight(lambda);
    let mut entries: Vec<u8> = top.entries().to_vec();
    let mut index: HashMap<Box<[u8]>, u32> = HashMap::new();
    index.insert(top.entries().into(), 0);
    let mut succ: Vec<u32> = vec![NONE; n];
    let mut pred: Vec<u32> = vec![NONE; n];
    let mut queue = VecDeque::from([0usize]);
    let mut buf = vec![0u8; cells];
    while let Some(v) = queue.pop_front() {
        for i in 1..=n {
            buf.copy_from_slice(&entries[v * cells..(v + 1) * cells]);
            let Some(k) = lowering_site(&buf, &order, i) else {
                continue;
            };
            buf[k] += 1;
            let w = match index.get(buf.as_slice()) {
                Some(&w) => w as usize,
                None => {
                    let w = index.len();
                    if w >= cap {
                        return Err(Error::SizeLimitExceeded { cap });
                    }
                    index.insert(buf.clone().into_boxed_slice(), w as u32);
                    entries.extend_from_slice(&buf);
                    succ.extend(std::iter::repeat_n(NONE, n));
                    pred.extend(std::iter::repeat_n(NONE, n));
                    queue.push_back(w);
                    w
                }
            };
            succ[v * n + i - 1] = w as u32;
            pred[w * n + i - 1] = v as u32;
        }
    }
    Ok(CrystalGraph {
        lambda: lambda.clone(),
        cells,
        entries,
        index,
        succ,
        pred,
    })
}

impl CrystalGraph {
    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn rank(&self) -> usize {
        self.lambda.rank()
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Id of `T_min`; always 0.
    pub fn min_vertex(&self) -> usize {
        0
    }

    /// Id of the unique sink, the lowest-weight tableau.
    pub fn max_vertex(&self) -> usize {
        self.len() - 1
    }

    pub fn entries(&self, v: usize) -> &[u8] {
        &self.entries[v * self.cells..(v + 1) * self.cells]
    }

    pub fn tableau(&self, v: usize) -> Tableau {
        Tableau::from_entries(self.lambda.clone(), self.entries(v).to_vec())
    }

    pub fn vertex_of(&self, t: &Tableau) -> Option<usize> {
        if t.shape() != &self.lambda {
            return None;
        }
        self.index.get(t.entries()).map(|&v| v as usize)
    }

    /// Parses a tableau in text form and looks it up.
    pub fn find(&self, text: &str) -> Result<usize> {
        let t = Tableau::parse(text, self.rank())?;
        self.vertex_of(&t)
            .ok_or_else(|| Error::UnknownVertex(text.to_string()))
    }

    pub fn tableaux(&self) -> impl Iterator<Item = Tableau> + '_ {
        (0..self.len()).map(|v| self.tableau(v))
    }

    /// All edges `(src, dst, color)`, ordered by source id then color.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let n = self.rank();
        (0..self.len())
            .flat_map(|v| (1..=n).filter_map(move |i| self.up(v, i).map(|w| (v, w, i))))
            .collect()
    }

    /// Colored edge-for-edge identity of the two graphs and their labels.
    pub fn identical(&self, other: &CrystalGraph) -> bool {
        self.lambda == other.lambda
            && self.entries == other.entries
            && self.succ == other.succ
            && self.pred == other.pred
    }
}

impl ColoredDigraph for CrystalGraph {
    fn vertex_count(&self) -> usize {
        self.len()
    }

    fn colors(&self) -> usize {
        self.rank()
    }

    #[inline]
    fn up(&self, v: usize, i: usize) -> Option<usize> {
        lookup(&self.succ, self.rank(), v, i)
    }

    #[inline]
    fn down(&self, v: usize, i: usize) -> Option<usize> {
        lookup(&self.pred, self.rank(), v, i)
    }
}

/// The restriction `B|_J`: only edges with colors in `J` remain.
#[derive(Clone, Copy)]
pub struct LeviView<'a, G: ColoredDigraph + ?Sized> {
    graph: &'a G,
    colors: ColorSet,
}

pub fn levi_restrict<G: ColoredDigraph + ?Sized>(graph: &G, colors: ColorSet) -> LeviView<'_, G> {
    LeviView { graph, colors }
}

impl<G: ColoredDigraph + ?Sized> LeviView<'_, G> {
    pub fn allowed(&self) -> ColorSet {
        self.colors
    }
}

impl<G: ColoredDigraph + ?Sized> ColoredDigraph for LeviView<'_, G> {
    fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    fn colors(&self) -> usize {
        self.graph.colors()
    }

    fn up(&self, v: usize, i: usize) -> Option<usize> {
        if self.colors.contains(i) {
            self.graph.up(v, i)
        } else {
            None
        }
    }

    fn down(&self, v: usize, i: usize) -> Option<usize> {
        if self.colors.contains(i) {
            self.graph.down(v, i)
        } else {
            None
        }
    }
}

/// Matches two colored digraphs by simultaneous BFS from the given sources.
/// Every `i`-edge of `g` must correspond to a `recolor(i)`-edge of `h`.
/// Each vertex has at most one edge per color, so the matching is forced
/// and the result is the unique isomorphism (`g` id to `h` id), if any.
pub fn forced_isomorphism<G, H>(
    g: &G,
    g_source: usize,
    h: &H,
    h_source: usize,
    recolor: impl Fn(usize) -> usize,
) -> Result<Vec<usize>>
where
    G: ColoredDigraph + ?Sized,
    H: ColoredDigraph + ?Sized,
{
    let size = g.vertex_count();
    if size != h.vertex_count() || g.colors() != h.colors() {
        return Err(Error::IsomorphismFailure(format!(
            "{} vertices / {} colors against {} / {}",
            size,
            g.colors(),
            h.vertex_count(),
            h.colors()
        )));
    }
    let n = g.colors();
    let mut fwd = vec![usize::MAX; size];
    let mut back = vec![usize::MAX; size];
    fwd[g_source] = h_source;
    back[h_source] = g_source;
    let mut queue = VecDeque::from([g_source]);
    let mut bind = |a: usize, b: usize, fwd: &mut Vec<usize>, queue: &mut VecDeque<usize>| {
        if fwd[a] == usize::MAX && back[b] == usize::MAX {
            fwd[a] = b;
            back[b] = a;
            queue.push_back(a);
            Ok(())
        } else if fwd[a] == b {
            Ok(())
        } else {
            Err(Error::IsomorphismFailure(format!(
                "vertex {a} forced onto {b} inconsistently"
            )))
        }
    };
    while let Some(a) = queue.pop_front() {
        let b = fwd[a];
        for i in 1..=n {
            let j = recolor(i);
            for (ga, hb) in [(g.up(a, i), h.up(b, j)), (g.down(a, i), h.down(b, j))] {
                match (ga, hb) {
                    (None, None) => {}
                    (Some(x), Some(y)) => bind(x, y, &mut fwd, &mut queue)?,
                    _ => {
                        return Err(Error::IsomorphismFailure(format!(
                            "color {i} at vertex {a} has no partner"
                        )))
                    }
                }
            }
        }
    }
    if let Some(a) = fwd.iter().position(|&b| b == usize::MAX) {
        return Err(Error::IsomorphismFailure(format!("vertex {a} unreachable")));
    }
    Ok(fwd)
}

/// The dual crystal: the same digraph with color `i` renamed `n + 1 − i`,
/// labelled by tableaux of shape `λ*`. Vertex ids are those of `b`.
pub fn dual_crystal(b: &CrystalGraph) -> Result<CrystalGraph> {
    let n = b.rank();
    let dual_shape = b.lambda.dual();
    let target = generate_crystal_capped(&dual_shape, b.len().max(1))?;
    let map = forced_isomorphism(b, b.min_vertex(), &target, target.min_vertex(), |i| n + 1 - i)?;
    let cells = dual_shape.size();
    let mut entries = Vec::with_capacity(cells * b.len());
    let mut index = HashMap::with_capacity(b.len());
    for (v, &t) in map.iter().enumerate() {
        let e = target.entries(t);
        entries.extend_from_slice(e);
        index.insert(Box::from(e), v as u32);
    }
    let mut succ = vec![NONE; b.len() * n];
    let mut pred = vec![NONE; b.len() * n];
    for v in 0..b.len() {
        for i in 1..=n {
            succ[v * n + (n - i)] = b.succ[v * n + i - 1];
            pred[v * n + (n - i)] = b.pred[v * n + i - 1];
        }
    }
    Ok(CrystalGraph {
        lambda: dual_shape,
        cells,
        entries,
        index,
        succ,
        pred,
    })
}

/// `(steps down, steps up)` along the `i`-chain through `v`.
pub fn chain_position<G: ColoredDigraph + ?Sized>(g: &G, v: usize, i: usize) -> (usize, usize) {
    let count = |step: &dyn Fn(usize) -> Option<usize>| {
        let (mut x, mut k) = (v, 0);
        while let Some(y) = step(x) {
            x = y;
            k += 1;
        }
        k
    };
    (count(&|x| g.down(x, i)), count(&|x| g.up(x, i)))
}

/// The simple reflection `s_i` acting on `v` by reversing its `i`-chain.
pub fn weyl_reflect<G: ColoredDigraph + ?Sized>(g: &G, v: usize, i: usize) -> usize {
    let (down, up) = chain_position(g, v, i);
    let mut x = v;
    if up > down {
        for _ in 0..up - down {
            x = g.up(x, i).expect("chain length was measured");
        }
    } else {
        for _ in 0..down - up {
            x = g.down(x, i).expect("chain length was measured");
        }
    }
    x
}

/// `v · s_{i1} ⋯ s_{ir}`, applying `s_{i1}` first.
pub fn weyl_act<G: ColoredDigraph + ?Sized>(g: &G, v: usize, word: &[usize]) -> usize {
    word.iter().fold(v, |x, &i| weyl_reflect(g, x, i))
}

/// The stabilizer `K = {i : λ_i = λ_{i+1}}`, with λ padded to `n + 1` parts.
pub fn stabilizer(lambda: &Partition) -> GeneratorSet {
    let p = lambda.padded();
    (1..=lambda.rank()).filter(|&i| p[i - 1] == p[i]).collect()
}

/// The embedding `ᴷW → B_λ`, `w ↦ v_λ · w`.
#[derive(Clone, Debug)]
pub struct QuotientEmbedding {
    pub stabilizer: GeneratorSet,
    /// `ᴷW` in weak-order breadth-first order, starting at `e`.
    pub elements: Vec<Permutation>,
    /// `vertices[k]` is the image of `elements[k]`.
    pub vertices: Vec<usize>,
    position: HashMap<Permutation, usize>,
}

impl QuotientEmbedding {
    pub fn image(&self, w: &Permutation) -> Option<usize> {
        self.position.get(w).map(|&k| self.vertices[k])
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, usize)> {
        self.elements.iter().zip(self.vertices.iter().copied())
    }
}

pub fn embed_parabolic_quotient(b: &CrystalGraph) -> QuotientEmbedding {
    let k = stabilizer(b.lambda());
    let elements = parabolic_quotient(k, b.rank() + 1);
    let vertices = elements
        .iter()
        .map(|w| weyl_act(b, b.min_vertex(), &w.reduced_word()))
        .collect();
    let position = elements
        .iter()
        .enumerate()
        .map(|(p, w)| (w.clone(), p))
        .collect();
    QuotientEmbedding {
        stabilizer: k,
        elements,
        vertices,
        position,
    }
}
