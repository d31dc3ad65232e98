//! (a,b)-stochastic sets in the rook's graph H(1,q)□H(1,q').
//!
//! A [`GridSet`] has `rows` row symbols and `cols` column symbols. Cell
//! `(j, i)` is row `j`, column `i`. A column (fixed `i`) is a clique of
//! size `rows`; a row (fixed `j`) is a clique of size `cols`. The set is
//! (a,b)-stochastic when every column holds `a` cells and every row holds `b`.

use serde::Serialize;

use crate::bits::BitSet;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GridSet {
    rows: usize,
    cols: usize,
    members: BitSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct StochasticProfile {
    /// count in every column (size-`rows` clique)
    pub a: usize,
    /// count in every row (size-`cols` clique)
    pub b: usize,
}

impl StochasticProfile {
    pub fn gamma(&self) -> usize {
        self.a + self.b
    }
}

impl GridSet {
    pub fn empty(rows: usize, cols: usize) -> GridSet {
        GridSet { rows, cols, members: BitSet::new(rows * cols) }
    }

    pub fn full(rows: usize, cols: usize) -> GridSet {
        GridSet { rows, cols, members: BitSet::full(rows * cols) }
    }

    pub fn from_cells(rows: usize, cols: usize, cells: impl IntoIterator<Item = (usize, usize)>) -> Result<GridSet> {
        let mut g = GridSet::empty(rows, cols);
        for (j, i) in cells {
            if j >= rows || i >= cols {
                return Err(Error::InvalidParameters(format!("cell ({j},{i}) outside a {rows}x{cols} grid")));
            }
            g.insert(j, i);
        }
        Ok(g)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn contains(&self, row: usize, col: usize) -> bool {
        row < self.rows && col < self.cols && self.members.get(row * self.cols + col)
    }

    pub fn insert(&mut self, row: usize, col: usize) {
        self.members.set(row * self.cols + col, true);
    }

    pub fn len(&self) -> usize {
        self.members.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.rows * self.cols
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.members.iter_ones().map(|k| (k / self.cols, k % self.cols))
    }

    pub fn column_count(&self, col: usize) -> usize {
        (0..self.rows).filter(|&j| self.contains(j, col)).count()
    }

    pub fn row_count(&self, row: usize) -> usize {
        (0..self.cols).filter(|&i| self.contains(row, i)).count()
    }

    /// Swaps the roles of rows and columns.
    pub fn transpose(&self) -> GridSet {
        let mut t = GridSet::empty(self.cols, self.rows);
        for (j, i) in self.cells() {
            t.insert(i, j);
        }
        t
    }
}

impl std::fmt::Debug for GridSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "GridSet {}x{}", self.rows, self.cols)?;
        for j in 0..self.rows {
            let line: String = (0..self.cols).map(|i| if self.contains(j, i) { '*' } else { '.' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// `(a, b)` when all columns hold `a` cells and all rows hold `b`.
pub fn profile(set: &GridSet) -> Option<StochasticProfile> {
    let a = set.column_count(0);
    let b = set.row_count(0);
    let columns_ok = (1..set.cols).all(|i| set.column_count(i) == a);
    let rows_ok = (1..set.rows).all(|j| set.row_count(j) == b);
    (columns_ok && rows_ok).then_some(StochasticProfile { a, b })
}

/// Column and row degrees `(a, b)` of the stochastic set with parameter γ.
fn degrees(rows: usize, cols: usize, gamma: usize) -> Result<(usize, usize)> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidParameters("grid dimensions must be positive".into()));
    }
    let sum = rows + cols;
    if !(rows * gamma).is_multiple_of(sum) {
        return Err(Error::DivisibilityViolated(format!("{rows}+{cols} does not divide {rows}*{gamma}")));
    }
    let a = rows * gamma / sum;
    if a == 0 || a > rows {
        return Err(Error::DegreeOutOfRange(format!("column degree {a} outside 1..={rows}")));
    }
    Ok((a, cols * gamma / sum))
}

/// The cyclic stochastic set with parameter γ.
///
/// Column `i` holds the interval `{0..a-1}` shifted by `i·a` modulo `rows`,
/// where `a = rows·γ/(rows+cols)`. The interval contains `a/d` symbols of
/// every residue class modulo `d = gcd(a, rows)`, so every row is hit by
/// exactly `b = cols·γ/(rows+cols)` columns. `a == rows` gives the full grid.
pub fn build(rows: usize, cols: usize, gamma: usize) -> Result<GridSet> {
    let (a, _) = degrees(rows, cols, gamma)?;
    let mut g = GridSet::empty(rows, cols);
    for i in 0..cols {
        let shift = (i * a) % rows;
        for j in 0..a {
            g.insert((j + shift) % rows, i);
        }
    }
    Ok(g)
}

/// Builds the stochastic set with column degree `a` and row degree `b`.
pub fn build_with_profile(rows: usize, cols: usize, a: usize, b: usize) -> Result<GridSet> {
    if a * cols != b * rows {
        return Err(Error::DivisibilityViolated(format!("a*cols = {} differs from b*rows = {}", a * cols, b * rows)));
    }
    build(rows, cols, a + b)
}

/// Whether a stochastic set with parameter γ and `a < rows` exists,
/// i.e. a covering radius 1 code with eigenvalue -2 in the rook's graph.
pub fn exists(rows: usize, cols: usize, gamma: usize) -> bool {
    matches!(degrees(rows, cols, gamma), Ok((a, _)) if a < rows)
}

/// Neighbour counts of a grid set read as a code in H(1,rows)□H(1,cols):
/// `(γ, β)` when every non-member has γ member neighbours and every member
/// has β non-member neighbours.
pub fn grid_intersection_numbers(set: &GridSet) -> Option<(usize, usize)> {
    let mut gamma = None;
    let mut beta = None;
    for j in 0..set.rows {
        for i in 0..set.cols {
            let inside = (0..set.rows).filter(|&jj| jj != j && set.contains(jj, i)).count()
                + (0..set.cols).filter(|&ii| ii != i && set.contains(j, ii)).count();
            let valency = set.rows + set.cols - 2;
            let (slot, value) = if set.contains(j, i) { (&mut beta, valency - inside) } else { (&mut gamma, inside) };
            match *slot {
                None => *slot = Some(value),
                Some(v) if v != value => return None,
                _ => {}
            }
        }
    }
    Some((gamma?, beta?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_examples() {
        let perm = GridSet::from_cells(4, 4, [(0, 2), (1, 0), (2, 3), (3, 1)]).unwrap();
        assert_eq!(profile(&perm), Some(StochasticProfile { a: 1, b: 1 }));
        assert_eq!(profile(&GridSet::full(3, 5)), Some(StochasticProfile { a: 3, b: 5 }));
        let diag = GridSet::from_cells(3, 3, (0..3).map(|i| (i, i))).unwrap();
        assert_eq!(profile(&diag), Some(StochasticProfile { a: 1, b: 1 }));
        assert_eq!(grid_intersection_numbers(&diag), Some((2, 4)));
        let lopsided = GridSet::from_cells(3, 3, [(0, 0), (0, 1)]).unwrap();
        assert_eq!(profile(&lopsided), None);
    }

    #[test]
    fn build_examples() {
        let g = build(3, 3, 2).unwrap();
        assert_eq!(profile(&g), Some(StochasticProfile { a: 1, b: 1 }));
        let g = build(5, 5, 4).unwrap();
        assert_eq!(profile(&g), Some(StochasticProfile { a: 2, b: 2 }));
        assert_eq!(g.len(), 10);
        let g = build(4, 4, 8).unwrap();
        assert!(g.is_full());
        assert_eq!(profile(&g), Some(StochasticProfile { a: 4, b: 4 }));
        assert!(matches!(build(4, 4, 3), Err(Error::DivisibilityViolated(_))));
        assert!(matches!(build(4, 4, 0), Err(Error::DegreeOutOfRange(_))));
        assert!(matches!(build(4, 4, 10), Err(Error::DegreeOutOfRange(_))));
    }

    #[test]
    fn exists_examples() {
        assert!(!exists(4, 4, 3));
        assert!(exists(3, 3, 2));
        assert!(exists(28, 16, 11));
        assert_eq!(degrees(28, 16, 11).unwrap(), (7, 4));
        assert!(!exists(4, 4, 8));
    }

    #[test]
    fn rectangular_build_is_balanced() {
        // a = 6, rows = 9: gcd 3, needs the interval to hit each residue twice
        let g = build(9, 6, 10).unwrap();
        assert_eq!(profile(&g), Some(StochasticProfile { a: 6, b: 4 }));
        assert_eq!(grid_intersection_numbers(&g), Some((10, 3 + 2)));
    }
}
