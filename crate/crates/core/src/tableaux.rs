//! Partitions, semistandard tableaux, reading words and weights.
//!
//! A [`Partition`] carries the rank `n` of the crystal it belongs to, because
//! the same shape gives different crystals for different `n`. Tableau entries
//! live in `[1, n+1]` and are stored row-major in a single buffer, so a
//! tableau hashes and compares by its entry bytes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported entry. Entries are stored as bytes.
pub const MAX_ENTRY: usize = u8::MAX as usize;

/// A dominant weight of `sl_{n+1}`: a weakly decreasing tuple of positive
/// integers with at most `n` parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
    n: usize,
}

impl Partition {
    pub fn new(parts: &[usize], n: usize) -> Result<Self> {
        if n == 0 || n + 1 > MAX_ENTRY {
            return Err(Error::InvalidPartition(format!("rank n = {n} unsupported")));
        }
        let mut parts = parts.to_vec();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has an interior zero"
            )));
        }
        if parts.len() > n {
            return Err(Error::TooManyParts {
                parts: parts.len(),
                n,
            });
        }
        Ok(Partition { parts, n })
    }

    /// Parses `"λ1,λ2,…"`. The empty string and `"0"` give the empty partition.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Partition::new(&[], n);
        }
        let parts = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("partition part {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(&parts, n)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Crystal rank `n`; entries are bounded by `n + 1`.
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn max_entry(&self) -> usize {
        self.n + 1
    }

    /// Number of nonzero parts, `ℓ`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Total number of cells `|λ|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Part `i` (1-based), zero beyond `ℓ`.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    /// The parts padded with zeros to length `n + 1`.
    pub fn padded(&self) -> Vec<usize> {
        (1..=self.n + 1).map(|i| self.part(i)).collect()
    }

    /// The same shape at a different rank.
    pub fn with_rank(&self, n: usize) -> Result<Self> {
        Partition::new(&self.parts, n)
    }

    /// The highest weight of the dual representation,
    /// `(λ1, λ1 − λn, …, λ1 − λ2, 0)`.
    pub fn dual(&self) -> Partition {
        let p = self.padded();
        let parts: Vec<usize> = (1..=self.n + 1).map(|i| p[0] - p[self.n + 1 - i]).collect();
        Partition::new(&parts, self.n).expect("dual of a valid partition is valid")
    }

    /// Start offset of row `i` (0-based) in a row-major buffer.
    pub fn row_offset(&self, i: usize) -> usize {
        self.parts[..i].iter().sum()
    }

    /// Buffer positions in reading order: rows from bottom to top, each read
    /// left to right.
    pub fn reading_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.size());
        for i in (0..self.len()).rev() {
            let start = self.row_offset(i);
            order.extend(start..start + self.parts[i]);
        }
        order
    }

    /// Number of SSYT of this shape with entries in `[1, n+1]`, by the
    /// hook-content formula `∏ (n + 1 + c(u)) / h(u)`. The factors are
    /// cancelled prime by prime, so only the final product can overflow;
    /// it saturates at `u128::MAX`.
    pub fn hook_content_count(&self) -> u128 {
        let conj: Vec<usize> = (0..self.part(1))
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        let top = self.n + 1 + self.part(1) + self.parts.len();
        let mut exponent = vec![0i64; top + 1];
        let mut add = |mut x: usize, sign: i64| {
            let mut d = 2;
            while d * d <= x {
                while x % d == 0 {
                    exponent[d] += sign;
                    x /= d;
                }
                d += 1;
            }
            if x > 1 {
                exponent[x] += sign;
            }
        };
        for (i, &row) in self.parts.iter().enumerate() {
            for (j, &col) in conj.iter().enumerate().take(row) {
                add(self.n + 1 + j - i, 1);
                add(row - j + col - i - 1, -1);
            }
        }
        let mut total = 1u128;
        for (prime, &e) in exponent.iter().enumerate() {
            debug_assert!(e >= 0, "hook-content product is an integer");
            for _ in 0..e {
                total = total.saturating_mul(prime as u128);
            }
        }
        total
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A semistandard Young tableau of shape `λ` with entries in `[1, n+1]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tableau {
    shape: Partition,
    entries: Vec<u8>,
}

impl Tableau {
    /// Validates a grid of rows against `shape`.
    pub fn validate(shape: &Partition, grid: &[Vec<usize>]) -> Result<Self> {
        if grid.len() != shape.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} rows, shape {} has {}",
                grid.len(),
                shape,
                shape.len()
            )));
        }
        let max = shape.max_entry();
        let mut entries = Vec::with_capacity(shape.size());
        for (i, row) in grid.iter().enumerate() {
            if row.len() != shape.parts[i] {
                return Err(Error::ShapeMismatch(format!(
                    "row {} has {} cells, expected {}",
                    i + 1,
                    row.len(),
                    shape.parts[i]
                )));
            }
            for (j, &value) in row.iter().enumerate() {
                if value == 0 || value > max {
                    return Err(Error::EntryOutOfRange {
                        row: i + 1,
                        col: j + 1,
                        value,
                        max,
                    });
                }
                entries.push(value as u8);
            }
        }
        let t = Tableau {
            shape: shape.clone(),
            entries,
        };
        t.check_semistandard()?;
        Ok(t)
    }

    fn check_semistandard(&self) -> Result<()> {
        for i in 0..self.shape.len() {
            for j in 0..self.shape.parts[i] {
                let v = self.get(i, j);
                if j > 0 && self.get(i, j - 1) > v {
                    return Err(Error::RowViolation { row: i + 1, col: j + 1 });
                }
                if i > 0 && self.get(i - 1, j) >= v {
                    return Err(Error::ColumnViolation { row: i + 1, col: j + 1 });
                }
            }
        }
        Ok(())
    }

    /// The highest-weight tableau `T_min`, with every cell of row `i` equal to `i`.
    pub fn highest_weight(shape: &Partition) -> Self {
        let mut entries = Vec::with_capacity(shape.size());
        for (i, &p) in shape.parts.iter().enumerate() {
            entries.extend(std::iter::repeat_n((i + 1) as u8, p));
        }
        Tableau {
            shape: shape.clone(),
            entries,
        }
    }

    /// Builds a tableau from a trusted row-major buffer.
    pub(crate) fn from_entries(shape: Partition, entries: Vec<u8>) -> Self {
        debug_assert_eq!(entries.len(), shape.size());
        Tableau { shape, entries }
    }

    /// Parses the canonical text form, e.g. `"1,1,2,2,3/3,3"`. The shape is
    /// read off the row lengths.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let text = text.trim();
        let grid: Vec<Vec<usize>> = if text.is_empty() {
            Vec::new()
        } else {
            text.split('/')
                .map(|row| {
                    row.split(',')
                        .map(|s| {
                            s.trim()
                                .parse::<usize>()
                                .map_err(|e| Error::Parse(format!("tableau entry {s:?}: {e}")))
                        })
                        .collect()
                })
                .collect::<Result<_>>()?
        };
        let lens: Vec<usize> = grid.iter().map(Vec::len).collect();
        let shape = Partition::new(&lens, n)?;
        if shape.len() != grid.len() {
            return Err(Error::ShapeMismatch("empty row".into()));
        }
        Tableau::validate(&shape, &grid)
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    /// The same filling viewed in `B_λ^{n'}`.
    pub fn with_rank(&self, n: usize) -> Result<Self> {
        Tableau::validate(&self.shape.with_rank(n)?, &self.rows())
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// Entry at row `i`, column `j` (both 0-based).
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[self.shape.row_offset(i) + j] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(self.shape.len());
        let mut start = 0;
        for &p in &self.shape.parts {
            out.push(self.entries[start..start + p].iter().map(|&e| e as usize).collect());
            start += p;
        }
        out
    }

    pub fn reading_word(&self) -> Vec<usize> {
        self.shape
            .reading_order()
            .into_iter()
            .map(|k| self.entries[k] as usize)
            .collect()
    }

    pub fn weight(&self) -> WeightVector {
        let mut counts = vec![0; self.shape.max_entry()];
        for &e in &self.entries {
            counts[e as usize - 1] += 1;
        }
        WeightVector(counts)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join("/"))
    }
}

/// Content vector: `counts[k-1]` is the number of entries equal to `k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct WeightVector(pub Vec<usize>);

impl WeightVector {
    /// `self − α_i`, or `None` if the count of `i` is already zero.
    pub fn minus_simple_root(&self, i: usize) -> Option<WeightVector> {
        let mut c = self.0.clone();
        if i == 0 || i >= c.len() || c[i - 1] == 0 {
            return None;
        }
        c[i - 1] -= 1;
        c[i] += 1;
        Some(WeightVector(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize], n: usize) -> Partition {
        Partition::new(parts, n).unwrap()
    }

    /// Brute-force SSYT enumeration: every filling, filtered by the
    /// semistandard conditions checked cell by cell here.
    fn brute_ssyt(shape: &Partition) -> Vec<Vec<Vec<usize>>> {
        let cells: Vec<(usize, usize)> = shape
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(i, &l)| (0..l).map(move |j| (i, j)))
            .collect();
        let m = shape.max_entry();
        let total = m.pow(cells.len() as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut c = code;
            let mut grid: Vec<Vec<usize>> = shape.parts().iter().map(|&l| vec![0; l]).collect();
            for &(i, j) in &cells {
                grid[i][j] = c % m + 1;
                c /= m;
            }
            let ok = cells.iter().all(|&(i, j)| {
                (j == 0 || grid[i][j - 1] <= grid[i][j]) && (i == 0 || grid[i - 1][j] < grid[i][j])
            });
            if ok {
                out.push(grid);
            }
        }
        out
    }

    #[test]
    fn hook_content_on_long_rows() {
        // two-row sl_3 dimension (a + 1)(b + 1)(a + b + 2) / 2 with gaps a, b
        for (l1, l2) in [(126usize, 3usize), (200, 0), (300, 150)] {
            let (a, b) = ((l1 - l2) as u128, l2 as u128);
            let expected = (a + 1) * (b + 1) * (a + b + 2) / 2;
            assert_eq!(Partition::new(&[l1, l2], 2).unwrap().hook_content_count(), expected);
        }
        assert_eq!(Partition::new(&[1000], 1).unwrap().hook_content_count(), 1001);
        let huge = Partition::new(&[200, 150, 100, 50], 40).unwrap();
        assert_eq!(huge.hook_content_count(), u128::MAX);
    }

    #[test]
    fn partition_normalizes_and_rejects() {
        assert_eq!(p(&[2, 1, 0, 0], 3).parts(), &[2, 1]);
        assert!(matches!(
            Partition::new(&[1, 2], 3),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            Partition::new(&[1, 1, 1], 2),
            Err(Error::TooManyParts { parts: 3, n: 2 })
        ));
        assert_eq!(Partition::parse("3,2,1", 3).unwrap(), p(&[3, 2, 1], 3));
        assert!(Partition::parse("", 2).unwrap().is_empty());
        assert!(Partition::parse("2,x", 2).is_err());
    }

    #[test]
    fn validate_examples() {
        let shape = p(&[2, 1], 2);
        assert!(Tableau::validate(&shape, &[vec![1, 1], vec![2]]).is_ok());
        assert!(Tableau::validate(&p(&[1], 1), &[vec![1]]).is_ok());
        assert_eq!(
            Tableau::validate(&shape, &[vec![1, 1], vec![1]]),
            Err(Error::ColumnViolation { row: 2, col: 1 })
        );
        assert_eq!(
            Tableau::validate(&shape, &[vec![2, 1], vec![3]]),
            Err(Error::RowViolation { row: 1, col: 2 })
        );
        assert!(matches!(
            Tableau::validate(&shape, &[vec![1, 4], vec![2]]),
            Err(Error::EntryOutOfRange { value: 4, .. })
        ));
        assert!(matches!(
            Tableau::validate(&shape, &[vec![1, 1]]),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn highest_weight_examples() {
        assert_eq!(
            Tableau::highest_weight(&p(&[2, 1], 2)).rows(),
            vec![vec![1, 1], vec![2]]
        );
        assert_eq!(Tableau::highest_weight(&p(&[1], 1)).rows(), vec![vec![1]]);
        assert_eq!(
            Tableau::highest_weight(&p(&[3, 2, 2], 3)).rows(),
            vec![vec![1, 1, 1], vec![2, 2], vec![3, 3]]
        );
    }

    #[test]
    fn reading_word_examples() {
        let t = Tableau::parse("1,1,2,4/2,4/4", 3).unwrap();
        assert_eq!(t.reading_word(), vec![4, 2, 4, 1, 1, 2, 4]);
        let t = Tableau::parse("1,1,2,2,3/3,3", 2).unwrap();
        assert_eq!(t.reading_word(), vec![3, 3, 1, 1, 2, 2, 3]);
        let t = Tableau::parse("1,2,3", 2).unwrap();
        assert_eq!(t.reading_word(), vec![1, 2, 3]);
    }

    #[test]
    fn weight_examples() {
        assert_eq!(
            Tableau::highest_weight(&p(&[2, 1], 2)).weight(),
            WeightVector(vec![2, 1, 0])
        );
        assert_eq!(
            Tableau::parse("1,2/3", 2).unwrap().weight(),
            WeightVector(vec![1, 1, 1])
        );
        assert_eq!(
            Tableau::parse("2,3/3", 2).unwrap().weight(),
            WeightVector(vec![0, 1, 2])
        );
    }

    #[test]
    fn text_round_trip() {
        let t = Tableau::parse("1,1,2,2,3/3,3", 2).unwrap();
        assert_eq!(t.to_string(), "1,1,2,2,3/3,3");
        assert_eq!(Tableau::parse(&t.to_string(), 2).unwrap(), t);
    }

    #[test]
    fn dual_partition() {
        assert_eq!(p(&[1], 2).dual(), p(&[1, 1], 2));
        assert_eq!(p(&[2, 1], 2).dual(), p(&[2, 1], 2));
        assert_eq!(p(&[3], 4).dual(), p(&[3, 3, 3, 3], 4));
        assert_eq!(p(&[3, 3, 1], 3).dual(), p(&[3, 2], 3));
    }

    #[test]
    fn validation_matches_brute_force_enumeration() {
        for n in 1..=4 {
            for size in 0..=8usize {
                for parts in crate::partitions_of(size, n) {
                    let shape = p(&parts, n);
                    let m = shape.max_entry();
                    if m.pow(size as u32) > 400_000 {
                        continue;
                    }
                    let good = brute_ssyt(&shape);
                    assert_eq!(good.len() as u128, shape.hook_content_count(), "{shape} n={n}");
                    for g in &good {
                        let t = Tableau::validate(&shape, g).unwrap();
                        assert_eq!(t.reading_word().len(), shape.size());
                        let w = t.weight();
                        assert_eq!(w.0.iter().sum::<usize>(), shape.size());
                        let is_min = t == Tableau::highest_weight(&shape);
                        let dominant: Vec<usize> = shape.padded();
                        assert_eq!(is_min, w.0 == dominant);
                    }
                    // Every filling (capped) is accepted iff it was enumerated.
                    for code in 0..m.pow(size as u32).min(2000) {
                        let mut c = code;
                        let grid: Vec<Vec<usize>> = shape
                            .parts()
                            .iter()
                            .map(|&l| {
                                (0..l)
                                    .map(|_| {
                                        let v = c % m + 1;
                                        c /= m;
                                        v
                                    })
                                    .collect()
                            })
                            .collect();
                        let valid = good.contains(&grid);
                        assert_eq!(Tableau::validate(&shape, &grid).is_ok(), valid);
                    }
                }
            }
        }
    }
}
