//! Hamming spaces H(n,q), their vertices, codes, maximal cliques and hyperfaces.
//!
//! Vertices are q-ary words of length n over the alphabet `0..q`. They are
//! indexed lexicographically with position 0 as the most significant digit,
//! so `index(vertex(j)) == j`. Positions are 0-based throughout the library.

use serde::Serialize;

use crate::bits::BitSet;
use crate::error::{Error, Result};

pub type Symbol = u32;

/// Largest vertex count accepted by [`Space::new`].
pub const MAX_VERTICES: u64 = 1 << 32;

/// The Hamming graph H(n,q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Space {
    n: usize,
    q: u32,
    size: usize,
}

/// A word of the space, one symbol per position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(pub Vec<Symbol>);

impl Vertex {
    pub fn coords(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Vertex {
    fn from(v: Vec<Symbol>) -> Self {
        Vertex(v)
    }
}

impl<const N: usize> From<[Symbol; N]> for Vertex {
    fn from(v: [Symbol; N]) -> Self {
        Vertex(v.to_vec())
    }
}

/// Maximal clique: all q words that agree with `fixed` outside `codirection`.
///
/// `fixed` lists the symbols of the n-1 other positions in increasing
/// position order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clique {
    pub codirection: usize,
    pub fixed: Vec<Symbol>,
}

/// The words `{x : x[direction] == symbol}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperface {
    pub direction: usize,
    pub symbol: Symbol,
}

pub fn make_space(n: usize, q: u32) -> Result<Space> {
    Space::new(n, q)
}

impl Space {
    pub fn new(n: usize, q: u32) -> Result<Space> {
        if n < 1 {
            return Err(Error::InvalidDimensions { n, q: q.into(), reason: "n must be at least 1" });
        }
        if q < 2 {
            return Err(Error::InvalidDimensions { n, q: q.into(), reason: "q must be at least 2" });
        }
        let mut size: u64 = 1;
        for _ in 0..n {
            size = size.checked_mul(q as u64).filter(|&s| s <= MAX_VERTICES).ok_or(Error::InvalidDimensions {
                n,
                q: q.into(),
                reason: "q^n exceeds 2^32",
            })?;
        }
        Ok(Space { n, q, size: size as usize })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of vertices, q^n.
    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    /// Valency n(q-1).
    #[inline]
    pub fn valency(&self) -> usize {
        self.n * (self.q as usize - 1)
    }

    /// Index weight of `position`, i.e. q^(n-1-position).
    #[inline]
    pub fn stride(&self, position: usize) -> usize {
        (self.q as usize).pow((self.n - 1 - position) as u32)
    }

    pub fn strides(&self) -> Vec<usize> {
        (0..self.n).map(|p| self.stride(p)).collect()
    }

    pub fn check_vertex(&self, v: &Vertex) -> Result<()> {
        if v.0.len() != self.n || v.0.iter().any(|&s| s >= self.q) {
            return Err(Error::VertexOutOfSpace { coords: v.0.clone(), n: self.n, q: self.q });
        }
        Ok(())
    }

    pub fn index_of(&self, v: &Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.index_unchecked(&v.0))
    }

    #[inline]
    pub(crate) fn index_unchecked(&self, coords: &[Symbol]) -> usize {
        coords.iter().fold(0usize, |acc, &s| acc * self.q as usize + s as usize)
    }

    pub fn vertex(&self, index: usize) -> Vertex {
        Vertex(self.coords_of(index))
    }

    pub fn coords_of(&self, mut index: usize) -> Vec<Symbol> {
        debug_assert!(index < self.size);
        let q = self.q as usize;
        let mut coords = vec![0; self.n];
        for slot in coords.iter_mut().rev() {
            *slot = (index % q) as Symbol;
            index /= q;
        }
        coords
    }

    #[inline]
    pub fn symbol_at(&self, index: usize, position: usize) -> Symbol {
        ((index / self.stride(position)) % self.q as usize) as Symbol
    }

    /// Neighbours of `v`, position-major then symbol ascending.
    pub fn neighbors(&self, v: &Vertex) -> Result<Vec<Vertex>> {
        let idx = self.index_of(v)?;
        Ok(self.neighbor_indices(idx).map(|j| self.vertex(j)).collect())
    }

    /// Indices of the n(q-1) neighbours of `index`, in the same order as [`Space::neighbors`].
    pub fn neighbor_indices(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        let q = self.q as usize;
        (0..self.n).flat_map(move |p| {
            let stride = self.stride(p);
            let digit = (index / stride) % q;
            let base = index - digit * stride;
            (0..q).filter(move |&s| s != digit).map(move |s| base + s * stride)
        })
    }

    /// Hamming distance between two vertex indices.
    pub fn distance(&self, a: usize, b: usize) -> usize {
        let q = self.q as usize;
        let (mut a, mut b) = (a, b);
        let mut d = 0;
        for _ in 0..self.n {
            if a % q != b % q {
                d += 1;
            }
            a /= q;
            b /= q;
        }
        d
    }

    pub fn check_clique(&self, c: &Clique) -> Result<()> {
        if c.codirection >= self.n {
            return Err(Error::InvalidClique(format!("codirection {} out of range for n={}", c.codirection, self.n)));
        }
        if c.fixed.len() != self.n - 1 || c.fixed.iter().any(|&s| s >= self.q) {
            return Err(Error::InvalidClique(format!(
                "fixed symbols {:?} invalid for H({},{})",
                c.fixed, self.n, self.q
            )));
        }
        Ok(())
    }

    /// Index of the clique member whose free coordinate is 0.
    fn clique_base(&self, c: &Clique) -> usize {
        let mut coords = Vec::with_capacity(self.n);
        let mut fixed = c.fixed.iter();
        for p in 0..self.n {
            coords.push(if p == c.codirection { 0 } else { *fixed.next().unwrap() });
        }
        self.index_unchecked(&coords)
    }

    pub fn clique_indices(&self, c: &Clique) -> Result<Vec<usize>> {
        self.check_clique(c)?;
        let base = self.clique_base(c);
        let stride = self.stride(c.codirection);
        Ok((0..self.q as usize).map(|s| base + s * stride).collect())
    }

    pub fn clique_vertices(&self, c: &Clique) -> Result<Vec<Vertex>> {
        Ok(self.clique_indices(c)?.into_iter().map(|j| self.vertex(j)).collect())
    }

    /// The maximal clique of codirection `codirection` through vertex `index`.
    pub fn clique_through(&self, index: usize, codirection: usize) -> Clique {
        let coords = self.coords_of(index);
        let fixed = coords.iter().enumerate().filter(|&(p, _)| p != codirection).map(|(_, &s)| s).collect();
        Clique { codirection, fixed }
    }

    /// All n·q^(n-1) maximal cliques, codirection-major, then by fixed symbols.
    pub fn cliques(&self) -> impl Iterator<Item = Clique> + '_ {
        (0..self.n).flat_map(move |p| {
            (0..self.size).filter(move |&j| self.symbol_at(j, p) == 0).map(move |j| self.clique_through(j, p))
        })
    }

    pub fn check_hyperface(&self, h: &Hyperface) -> Result<()> {
        if h.direction >= self.n || h.symbol >= self.q {
            return Err(Error::InvalidHyperface { direction: h.direction, symbol: h.symbol, n: self.n, q: self.q });
        }
        Ok(())
    }

    pub fn hyperface_indices(&self, h: &Hyperface) -> Result<Vec<usize>> {
        self.check_hyperface(h)?;
        Ok((0..self.size).filter(|&j| self.symbol_at(j, h.direction) == h.symbol).collect())
    }

    pub fn hyperface_vertices(&self, h: &Hyperface) -> Result<Vec<Vertex>> {
        Ok(self.hyperface_indices(h)?.into_iter().map(|j| self.vertex(j)).collect())
    }
}

/// A set of vertices of a Hamming space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Code {
    space: Space,
    members: BitSet,
}

impl Code {
    pub fn empty(space: Space) -> Code {
        Code { space, members: BitSet::new(space.size) }
    }

    pub fn full(space: Space) -> Code {
        Code { space, members: BitSet::full(space.size) }
    }

    pub fn from_indices(space: Space, indices: impl IntoIterator<Item = usize>) -> Code {
        let mut code = Code::empty(space);
        for j in indices {
            code.members.set(j, true);
        }
        code
    }

    pub fn from_vertices<'a>(space: Space, vertices: impl IntoIterator<Item = &'a Vertex>) -> Result<Code> {
        let mut code = Code::empty(space);
        for v in vertices {
            let j = space.index_of(v)?;
            code.members.set(j, true);
        }
        Ok(code)
    }

    /// Builds a code from a membership predicate on coordinates.
    pub fn from_fn(space: Space, mut member: impl FnMut(&[Symbol]) -> bool) -> Code {
        let mut code = Code::empty(space);
        let mut coords = vec![0 as Symbol; space.n];
        for j in 0..space.size {
            if member(&coords) {
                code.members.set(j, true);
            }
            // odometer increment
            for slot in coords.iter_mut().rev() {
                *slot += 1;
                if *slot < space.q {
                    break;
                }
                *slot = 0;
            }
        }
        code
    }

    #[inline]
    pub fn space(&self) -> &Space {
        &self.space
    }

    #[inline]
    pub fn contains_index(&self, index: usize) -> bool {
        self.members.get(index)
    }

    pub fn contains(&self, v: &Vertex) -> Result<bool> {
        Ok(self.members.get(self.space.index_of(v)?))
    }

    pub fn insert(&mut self, index: usize) {
        self.members.set(index, true);
    }

    pub fn remove(&mut self, index: usize) {
        self.members.set(index, false);
    }

    /// Cardinality |C|.
    pub fn len(&self) -> usize {
        self.members.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.space.size
    }

    pub fn complement(&self) -> Code {
        Code { space: self.space, members: self.members.complement() }
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    /// Codeword indices in increasing (lexicographic) order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter_ones()
    }

    pub fn codewords(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.indices().map(|j| self.space.vertex(j))
    }

    /// Number of codewords among the neighbours of `index`.
    pub fn neighbors_inside(&self, index: usize) -> usize {
        self.space.neighbor_indices(index).filter(|&j| self.members.get(j)).count()
    }

    /// Applies one symbol permutation per position: `perms[p][old] = new`.
    pub fn relabel(&self, perms: &[Vec<Symbol>]) -> Result<Code> {
        let space = self.space;
        if perms.len() != space.n
            || perms.iter().any(|p| {
                let mut seen = vec![false; space.q as usize];
                p.len() != space.q as usize
                    || p.iter().any(|&s| s >= space.q || std::mem::replace(&mut seen[s as usize], true))
            })
        {
            return Err(Error::InvalidParameters("relabelling must be one permutation of 0..q per position".into()));
        }
        let mut out = Code::empty(space);
        for j in self.indices() {
            let coords: Vec<Symbol> =
                space.coords_of(j).iter().enumerate().map(|(p, &s)| perms[p][s as usize]).collect();
            out.insert(space.index_unchecked(&coords));
        }
        Ok(out)
    }
}

impl std::fmt::Debug for Code {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Code(H({},{}), |C|={})", self.space.n, self.space.q, self.len())
    }
}
