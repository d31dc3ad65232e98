//! Structural analysis of codes in H(3,q): coordinate derivatives of the
//! indicator function, decomposition into disjoint maximal cliques, and
//! recovery of the three stochastic blocks of a strong clique code.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::assemble_d;
use crate::error::{Error, Result};
use crate::hamming::{Clique, Code, Space, Symbol};
use crate::parameters::ConditionOneWitness;
use crate::stochastic::{self, GridSet, StochasticProfile};

fn require_h3(code: &Code) -> Result<Space> {
    let space = *code.space();
    if space.n() != 3 {
        return Err(Error::InvalidParameters(format!("expected a code in H(3,q), got n={}", space.n())));
    }
    Ok(space)
}

/// A {-1,0,1}-valued function on A², stored row-major: `values[y0*q + y1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivativeFunction {
    pub q: u32,
    pub values: Vec<i8>,
}

impl DerivativeFunction {
    pub fn from_fn(q: u32, f: impl Fn(Symbol, Symbol) -> i8) -> Self {
        let values = (0..q).flat_map(|y0| (0..q).map(move |y1| (y0, y1))).map(|(y0, y1)| f(y0, y1)).collect();
        DerivativeFunction { q, values }
    }

    #[inline]
    pub fn at(&self, y0: Symbol, y1: Symbol) -> i8 {
        self.values[(y0 * self.q + y1) as usize]
    }
}

/// `χ_C(x with u at position i) - χ_C(x with v at position i)` as a function
/// of the two remaining coordinates.
pub fn derivative(code: &Code, position: usize, u: Symbol, v: Symbol) -> Result<DerivativeFunction> {
    let space = require_h3(code)?;
    if position >= 3 {
        return Err(Error::InvalidPosition { position, n: 3 });
    }
    let q = space.q();
    if u >= q || v >= q {
        return Err(Error::InvalidParameters(format!("symbols {u}, {v} outside 0..{q}")));
    }
    let insert = |y0: Symbol, y1: Symbol, s: Symbol| -> usize {
        let coords = match position {
            0 => [s, y0, y1],
            1 => [y0, s, y1],
            _ => [y0, y1, s],
        };
        space.index_unchecked(&coords)
    };
    Ok(DerivativeFunction::from_fn(q, |y0, y1| {
        code.contains_index(insert(y0, y1, u)) as i8 - code.contains_index(insert(y0, y1, v)) as i8
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class")]
pub enum DerivativeClass {
    Zero,
    /// +1 where coordinate `axis` lies in `x`, -1 where it lies in `y`.
    String {
        x: Vec<Symbol>,
        y: Vec<Symbol>,
        axis: usize,
    },
    /// +1 on `x × (A∖y)`, -1 on `(A∖x) × y`.
    Cross {
        x: Vec<Symbol>,
        y: Vec<Symbol>,
    },
    Unclassified,
}

impl DerivativeClass {
    pub fn is_classified(&self) -> bool {
        !matches!(self, DerivativeClass::Unclassified)
    }
}

fn classify_string(f: &DerivativeFunction, axis: usize) -> Option<DerivativeClass> {
    let q = f.q;
    let at = |along: Symbol, across: Symbol| if axis == 0 { f.at(along, across) } else { f.at(across, along) };
    let mut x = Vec::new();
    let mut y = Vec::new();
    for s in 0..q {
        let value = at(s, 0);
        if (1..q).any(|o| at(s, o) != value) {
            return None;
        }
        match value {
            1 => x.push(s),
            -1 => y.push(s),
            _ => {}
        }
    }
    (!x.is_empty() && x.len() == y.len()).then_some(DerivativeClass::String { x, y, axis })
}

fn classify_cross(f: &DerivativeFunction) -> Option<DerivativeClass> {
    let q = f.q;
    let x: Vec<Symbol> = (0..q).filter(|&r| (0..q).any(|c| f.at(r, c) == 1)).collect();
    let y: Vec<Symbol> = (0..q).filter(|&c| (0..q).any(|r| f.at(r, c) == -1)).collect();
    let proper = |s: &Vec<Symbol>| !s.is_empty() && s.len() < q as usize;
    if !proper(&x) || !proper(&y) || x.len() != y.len() {
        return None;
    }
    let mut in_x = vec![false; q as usize];
    let mut in_y = vec![false; q as usize];
    x.iter().for_each(|&s| in_x[s as usize] = true);
    y.iter().for_each(|&s| in_y[s as usize] = true);
    let matches = (0..q).all(|r| {
        (0..q).all(|c| {
            let expected = match (in_x[r as usize], in_y[c as usize]) {
                (true, false) => 1,
                (false, true) => -1,
                _ => 0,
            };
            f.at(r, c) == expected
        })
    });
    matches.then_some(DerivativeClass::Cross { x, y })
}

/// Zero, then string along axis 0, string along axis 1, then cross.
pub fn classify(f: &DerivativeFunction) -> DerivativeClass {
    if f.values.iter().all(|&v| v == 0) {
        return DerivativeClass::Zero;
    }
    classify_string(f, 0)
        .or_else(|| classify_string(f, 1))
        .or_else(|| classify_cross(f))
        .unwrap_or(DerivativeClass::Unclassified)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct DerivativeCensus {
    pub zero: usize,
    pub string: usize,
    pub cross: usize,
    pub unclassified: usize,
}

impl DerivativeCensus {
    pub fn total(&self) -> usize {
        self.zero + self.string + self.cross + self.unclassified
    }
}

/// Classifies all 3·q·(q-1) derivatives with `u != v`.
pub fn derivative_census(code: &Code) -> Result<DerivativeCensus> {
    let q = require_h3(code)?.q();
    let triples: Vec<(usize, Symbol, Symbol)> = (0..3)
        .flat_map(|i| (0..q).flat_map(move |u| (0..q).filter(move |&v| v != u).map(move |v| (i, u, v))))
        .collect();
    let classes: Vec<DerivativeClass> =
        triples.par_iter().map(|&(i, u, v)| derivative(code, i, u, v).map(|f| classify(&f))).collect::<Result<_>>()?;
    let mut census = DerivativeCensus::default();
    for c in classes {
        match c {
            DerivativeClass::Zero => census.zero += 1,
            DerivativeClass::String { .. } => census.string += 1,
            DerivativeClass::Cross { .. } => census.cross += 1,
            DerivativeClass::Unclassified => census.unclassified += 1,
        }
    }
    Ok(census)
}

/// Every maximal clique lying entirely inside the code, in [`Space::cliques`] order.
pub fn full_cliques(code: &Code) -> Vec<Clique> {
    let space = code.space();
    space.cliques().filter(|c| space.clique_indices(c).unwrap().into_iter().all(|j| code.contains_index(j))).collect()
}

/// Minimal symbol sets and stochastic blocks of a strong clique code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Envelope {
    /// first coordinates of codirection-2 cliques
    pub r: Vec<Symbol>,
    /// second coordinates of codirection-1 cliques
    pub s: Vec<Symbol>,
    /// third coordinates of codirection-1 cliques
    pub t: Vec<Symbol>,
    /// `D¹ ⊆ S×T`, `D² ⊆ R×T̄`, `D³ ⊆ R̄×S̄`, rows and columns in increasing symbol order
    pub blocks: [GridSet; 3],
    /// `(a,b)`, `(a,c)`, `(b,c)`
    pub profiles: [StochasticProfile; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueDecomposition {
    /// Disjoint maximal cliques covering the code, grouped by codirection.
    pub cliques: [Vec<Clique>; 3],
    pub strong: bool,
    /// Present exactly when `strong`.
    pub envelope: Option<Envelope>,
}

/// Exact cover of the code by full maximal cliques; prefers covers using
/// all three codirections.
struct CoverSearch<'a> {
    space: Space,
    full: &'a [Clique],
    members: Vec<Vec<usize>>,
    through: Vec<Vec<usize>>,
    covered: Vec<bool>,
    chosen: Vec<usize>,
    first: Option<Vec<usize>>,
    strong: Option<Vec<usize>>,
    want_strong: bool,
    codewords: Vec<usize>,
}

impl CoverSearch<'_> {
    fn available(&self, clique: usize) -> bool {
        self.members[clique].iter().all(|&j| !self.covered[j])
    }

    fn is_strong(&self, chosen: &[usize]) -> bool {
        let mut seen = [false; 3];
        for &c in chosen {
            seen[self.full[c].codirection] = true;
        }
        seen.iter().all(|&s| s)
    }

    fn run(&mut self) -> bool {
        let mut best: Option<(usize, Vec<usize>)> = None;
        for &j in &self.codewords {
            if self.covered[j] {
                continue;
            }
            let options: Vec<usize> = self.through[j].iter().copied().filter(|&c| self.available(c)).collect();
            if best.as_ref().is_none_or(|(_, o)| options.len() < o.len()) {
                let done = options.len() <= 1;
                best = Some((j, options));
                if done {
                    break;
                }
            }
        }
        let Some((_, options)) = best else {
            if self.first.is_none() {
                self.first = Some(self.chosen.clone());
            }
            if self.is_strong(&self.chosen) {
                self.strong = Some(self.chosen.clone());
                return true;
            }
            return !self.want_strong;
        };
        for c in options {
            for &j in &self.members[c] {
                self.covered[j] = true;
            }
            self.chosen.push(c);
            let stop = self.run();
            self.chosen.pop();
            for &j in &self.members[c] {
                self.covered[j] = false;
            }
            if stop {
                return true;
            }
        }
        false
    }
}

fn complement_of(set: &BTreeSet<Symbol>, q: Symbol) -> Vec<Symbol> {
    (0..q).filter(|s| !set.contains(s)).collect()
}

fn project(cliques: &[Clique], rows: &[Symbol], cols: &[Symbol]) -> Result<GridSet> {
    let rank = |set: &[Symbol], s: Symbol| set.binary_search(&s).ok();
    let mut g = GridSet::empty(rows.len(), cols.len());
    for c in cliques {
        match (rank(rows, c.fixed[0]), rank(cols, c.fixed[1])) {
            (Some(j), Some(i)) => g.insert(j, i),
            _ => return Err(Error::LemmaViolated(format!("clique {c:?} falls outside its complementary envelope"))),
        }
    }
    Ok(g)
}

fn envelope(q: Symbol, cliques: &[Vec<Clique>; 3]) -> Result<Envelope> {
    let coords =
        |group: usize, slot: usize| -> BTreeSet<Symbol> { cliques[group].iter().map(|c| c.fixed[slot]).collect() };
    // codirection 1 fixes (x2,x3); codirection 2 fixes (x1,x3); codirection 3 fixes (x1,x2)
    let (s, t) = (coords(0, 0), coords(0, 1));
    let (r, t2) = (coords(1, 0), coords(1, 1));
    let (r3, s3) = (coords(2, 0), coords(2, 1));
    let (r_bar, s_bar, t_bar) = (complement_of(&r, q), complement_of(&s, q), complement_of(&t, q));
    for (name, found, expected) in [("R'", &r3, &r_bar), ("S'", &s3, &s_bar), ("T'", &t2, &t_bar)] {
        if found.iter().copied().collect::<Vec<_>>() != *expected {
            return Err(Error::LemmaViolated(format!("{name} = {found:?} is not the complement {expected:?}")));
        }
    }
    let (r, s, t): (Vec<Symbol>, Vec<Symbol>, Vec<Symbol>) =
        (r.into_iter().collect(), s.into_iter().collect(), t.into_iter().collect());
    let blocks =
        [project(&cliques[0], &s, &t)?, project(&cliques[1], &r, &t_bar)?, project(&cliques[2], &r_bar, &s_bar)?];
    let mut profiles = [StochasticProfile { a: 0, b: 0 }; 3];
    for (k, block) in blocks.iter().enumerate() {
        profiles[k] = stochastic::profile(block)
            .ok_or_else(|| Error::LemmaViolated(format!("block D{} is not stochastic", k + 1)))?;
    }
    let [p1, p2, p3] = profiles;
    if p1.a != p2.a || p1.b != p3.a || p2.b != p3.b {
        return Err(Error::LemmaViolated(format!(
            "block profiles {:?}, {:?}, {:?} do not share (a,b,c)",
            (p1.a, p1.b),
            (p2.a, p2.b),
            (p3.a, p3.b)
        )));
    }
    Ok(Envelope { r, s, t, blocks, profiles })
}

/// Decomposes a code of H(3,q) into disjoint maximal cliques.
pub fn clique_cover(code: &Code) -> Result<CliqueDecomposition> {
    let space = require_h3(code)?;
    let full = full_cliques(code);
    let members: Vec<Vec<usize>> = full.iter().map(|c| space.clique_indices(c).unwrap()).collect();
    let mut through = vec![Vec::new(); space.size()];
    for (k, m) in members.iter().enumerate() {
        for &j in m {
            through[j].push(k);
        }
    }
    let codewords: Vec<usize> = code.indices().collect();
    if let Some(&j) = codewords.iter().find(|&&j| through[j].is_empty()) {
        return Err(Error::NotCliquePartition { witness: space.coords_of(j), covered: 0 });
    }
    let mut directions = [false; 3];
    full.iter().for_each(|c| directions[c.codirection] = true);
    let mut search = CoverSearch {
        space,
        full: &full,
        members,
        through,
        covered: vec![false; space.size()],
        chosen: Vec::new(),
        first: None,
        strong: None,
        want_strong: directions.iter().all(|&d| d),
        codewords,
    };
    search.run();
    let Some(chosen) = search.strong.clone().or(search.first.clone()) else {
        let j = search.codewords.iter().copied().find(|&j| search.through[j].len() > 1).unwrap_or(search.codewords[0]);
        return Err(Error::NotCliquePartition { witness: search.space.coords_of(j), covered: search.through[j].len() });
    };
    let mut cliques: [Vec<Clique>; 3] = Default::default();
    for c in chosen {
        cliques[full[c].codirection].push(full[c].clone());
    }
    cliques.iter_mut().for_each(|g| g.sort());
    let strong = cliques.iter().all(|g| !g.is_empty());
    let envelope = if strong { Some(envelope(space.q(), &cliques)?) } else { None };
    Ok(CliqueDecomposition { cliques, strong, envelope })
}

/// Construction D data recovered from a strong clique code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionDData {
    pub q: u32,
    pub witness: ConditionOneWitness,
    pub r: Vec<Symbol>,
    pub s: Vec<Symbol>,
    pub t: Vec<Symbol>,
    pub blocks: [GridSet; 3],
}

impl ConstructionDData {
    /// Per-position symbol permutations sending R, S, T to initial intervals
    /// (members first, both parts in increasing order).
    pub fn canonical_relabeling(&self) -> Vec<Vec<Symbol>> {
        [&self.r, &self.s, &self.t]
            .iter()
            .map(|set| {
                let mut perm = vec![0; self.q as usize];
                let rest = (0..self.q).filter(|x| !set.contains(x));
                for (new, old) in set.iter().copied().chain(rest).enumerate() {
                    perm[old as usize] = new as Symbol;
                }
                perm
            })
            .collect()
    }

    /// Reassembles the code from its blocks in canonical labels.
    pub fn rebuild(&self) -> Result<Code> {
        assemble_d(self.q, &self.witness, &self.blocks)
    }
}

pub fn extract_construction_d(code: &Code) -> Result<ConstructionDData> {
    let decomposition = clique_cover(code)?;
    let Some(env) = decomposition.envelope else {
        return Err(Error::PreconditionViolated("code does not have the strong clique property".into()));
    };
    let [p1, p2, _] = env.profiles;
    let witness = ConditionOneWitness::new(
        env.r.len() as u32,
        env.s.len() as u32,
        env.t.len() as u32,
        p1.a as u32,
        p1.b as u32,
        p2.b as u32,
    );
    Ok(ConstructionDData { q: code.space().q(), witness, r: env.r, s: env.s, t: env.t, blocks: env.blocks })
}
