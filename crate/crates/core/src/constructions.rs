//! Explicit covering radius 1 codes in H(3,q).
//!
//! Every alphabet subset used below (B, R, S, T) is an initial interval
//! `{0, …, size-1}`; complements are the matching final intervals.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamming::{Code, Space, Symbol};
use crate::parameters::{check_condition1, feasible_h3q, ConditionOneWitness, FeasibilityRule};
use crate::stochastic::{self, GridSet};
use crate::verifier;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ConstructionSpec {
    /// A stochastic code of H(2,q) with a nonessential first position.
    A { q: u32, gamma: u32 },
    /// Lifting of a second-eigenvalue code of H(3,2) by symbol parity.
    B { q: u32, variant: u8 },
    /// The book construction, `q/2 < t < q`.
    C { q: u32, t: u32 },
    /// Three stochastic blocks glued by a Condition 1 witness.
    D { q: u32, witness: ConditionOneWitness },
    /// `B × A × A` with `|B| = size`.
    Index1 { q: u32, size: u32 },
    /// Union of `m` residue classes of `x1+x2+x3 mod q`.
    Index3 { q: u32, m: u32 },
}

/// Parameters a construction promises. `gamma` is `None` when only the
/// verifier can tell (variant 2 of the lifting).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub gamma: Option<usize>,
    pub beta: Option<usize>,
    pub eigenvalue_index: usize,
}

impl ConstructionSpec {
    pub fn q(&self) -> u32 {
        match *self {
            ConstructionSpec::A { q, .. }
            | ConstructionSpec::B { q, .. }
            | ConstructionSpec::C { q, .. }
            | ConstructionSpec::D { q, .. }
            | ConstructionSpec::Index1 { q, .. }
            | ConstructionSpec::Index3 { q, .. } => q,
        }
    }

    pub fn build(&self) -> Result<Code> {
        match *self {
            ConstructionSpec::A { q, gamma } => build_a(q, gamma),
            ConstructionSpec::B { q, variant } => build_b(q, variant),
            ConstructionSpec::C { q, t } => build_c(q, t),
            ConstructionSpec::D { q, witness } => build_d(q, &witness),
            ConstructionSpec::Index1 { q, size } => build_index1(q, size),
            ConstructionSpec::Index3 { q, m } => build_index3(q, m),
        }
    }

    pub fn expected(&self) -> Expected {
        let (gamma, sum, index) = match *self {
            ConstructionSpec::A { q, gamma } => (Some(gamma), 2 * q, 2),
            ConstructionSpec::B { q, variant: 1 } => (Some(q / 2), 2 * q, 2),
            ConstructionSpec::B { q, .. } => (None, 2 * q, 2),
            ConstructionSpec::C { q, t } => (Some(t), 2 * q, 2),
            ConstructionSpec::D { q, witness } => (Some(witness.gamma()), 2 * q, 2),
            ConstructionSpec::Index1 { q, size } => (Some(size), q, 1),
            ConstructionSpec::Index3 { q, m } => (Some(3 * m), 3 * q, 3),
        };
        Expected { gamma: gamma.map(|g| g as usize), beta: gamma.map(|g| (sum - g) as usize), eigenvalue_index: index }
    }
}

fn h3(q: u32) -> Result<Space> {
    Space::new(3, q)
}

/// Reads a grid set as a code of H(2,q): cell (row, col) is the word (row, col).
pub fn grid_as_code(set: &GridSet) -> Result<Code> {
    if set.rows() != set.cols() {
        return Err(Error::InvalidParameters("only square grids are codes of H(2,q)".into()));
    }
    let space = Space::new(2, set.rows() as u32)?;
    Ok(Code::from_fn(space, |x| set.contains(x[0] as usize, x[1] as usize)))
}

pub fn build_a(q: u32, gamma: u32) -> Result<Code> {
    if !gamma.is_multiple_of(2) || gamma < 2 || gamma > 2 * q - 2 {
        return Err(Error::InvalidParameters(format!(
            "construction A needs an even gamma with 2 <= gamma <= {}",
            2 * q - 2
        )));
    }
    let planar = grid_as_code(&stochastic::build(q as usize, q as usize, gamma as usize)?)?;
    verifier::extend(&planar, 0)
}

pub fn build_b(q: u32, variant: u8) -> Result<Code> {
    if !q.is_multiple_of(2) || q < 2 {
        return Err(Error::InvalidParameters(format!("construction B needs even q, got {q}")));
    }
    let seed: &[[Symbol; 3]] = match variant {
        1 => &[[0, 0, 0], [1, 1, 1]],
        2 => &[[0, 0, 0], [1, 0, 0], [1, 1, 1], [0, 1, 1]],
        _ => return Err(Error::InvalidParameters(format!("construction B variant must be 1 or 2, got {variant}"))),
    };
    Ok(Code::from_fn(h3(q)?, |x| seed.iter().any(|w| w.iter().zip(x).all(|(&a, &b)| a == b % 2))))
}

pub fn build_c(q: u32, t: u32) -> Result<Code> {
    if !q.is_multiple_of(2) || 2 * t <= q || t >= q {
        return Err(Error::InvalidParameters(format!("construction C needs even q and q/2 < t < q, got q={q}, t={t}")));
    }
    let d = stochastic::build(t as usize, t as usize, (2 * t - q) as usize)?;
    let half = q / 2;
    Ok(Code::from_fn(h3(q)?, |x| {
        let (x1, x2, x3) = (x[0], x[1], x[2]);
        (x1 < t && x2 >= t && x3 < half)
            || (x1 >= t && x2 < t && x3 >= half)
            || (x1 < t && x2 < t && d.contains(x1 as usize, x2 as usize))
    }))
}

/// The three stochastic blocks of construction D:
/// `D¹ ⊆ S×T` with profile (a,b), `D² ⊆ R×T̄` with (a,c), `D³ ⊆ R̄×S̄` with (b,c).
pub fn construction_d_blocks(q: u32, w: &ConditionOneWitness) -> Result<[GridSet; 3]> {
    if !check_condition1(q, w) {
        let ConditionOneWitness { r, s, t, a, b, c } = *w;
        return Err(Error::ConditionOneViolated { q, r, s, t, a, b, c });
    }
    let (q, r, s, t) = (q as usize, w.r as usize, w.s as usize, w.t as usize);
    let (a, b, c) = (w.a as usize, w.b as usize, w.c as usize);
    Ok([
        stochastic::build_with_profile(s, t, a, b)?,
        stochastic::build_with_profile(r, q - t, a, c)?,
        stochastic::build_with_profile(q - r, q - s, b, c)?,
    ])
}

/// Glues three blocks into `C¹ ∪ C² ∪ C³`:
/// `C¹ = {x : (x2,x3) ∈ D¹}`, `C² = {x : (x1,x3) ∈ D²}`, `C³ = {x : (x1,x2) ∈ D³}`.
pub fn assemble_d(q: u32, w: &ConditionOneWitness, blocks: &[GridSet; 3]) -> Result<Code> {
    let (r, s, t) = (w.r, w.s, w.t);
    let dims = [(s, t), (r, q - t), (q - r, q - s)];
    for (block, &(rows, cols)) in blocks.iter().zip(&dims) {
        if block.rows() != rows as usize || block.cols() != cols as usize {
            return Err(Error::InvalidParameters(format!(
                "block is {}x{}, expected {rows}x{cols}",
                block.rows(),
                block.cols()
            )));
        }
    }
    let [d1, d2, d3] = blocks;
    Ok(Code::from_fn(h3(q)?, |x| {
        let (x1, x2, x3) = (x[0], x[1], x[2]);
        if x2 < s && x3 < t {
            d1.contains(x2 as usize, x3 as usize)
        } else if x1 < r && x3 >= t {
            d2.contains(x1 as usize, (x3 - t) as usize)
        } else if x1 >= r && x2 >= s {
            d3.contains((x1 - r) as usize, (x2 - s) as usize)
        } else {
            false
        }
    }))
}

pub fn build_d(q: u32, w: &ConditionOneWitness) -> Result<Code> {
    let blocks = construction_d_blocks(q, w)?;
    assemble_d(q, w, &blocks)
}

pub fn build_index1(q: u32, size: u32) -> Result<Code> {
    if size < 1 || size >= q {
        return Err(Error::InvalidParameters(format!("index-1 code needs 1 <= |B| <= {}, got {size}", q - 1)));
    }
    Ok(Code::from_fn(h3(q)?, |x| x[0] < size))
}

pub fn build_index3(q: u32, m: u32) -> Result<Code> {
    if m < 1 || m >= q {
        return Err(Error::InvalidParameters(format!("index-3 code needs 1 <= m <= {}, got {m}", q - 1)));
    }
    Ok(Code::from_fn(h3(q)?, |x| (x.iter().map(|&s| s as u64).sum::<u64>() % q as u64) < m as u64))
}

/// The construction that realizes a feasible `(q, γ, index)` in H(3,q).
pub fn designated(q: u32, gamma: u32, index: usize) -> Result<ConstructionSpec> {
    let verdict = feasible_h3q(q, gamma, index)?;
    if !verdict.feasible {
        return Err(Error::InvalidParameters(format!(
            "no code with q={q}, gamma={gamma}, index={index}: {}",
            verdict.rule
        )));
    }
    Ok(match verdict.rule {
        FeasibilityRule::FirstEigenvalueRange => ConstructionSpec::Index1 { q, size: gamma },
        FeasibilityRule::EvenGamma => ConstructionSpec::A { q, gamma },
        FeasibilityRule::HalfToFull if 2 * gamma == q => ConstructionSpec::B { q, variant: 1 },
        FeasibilityRule::HalfToFull => ConstructionSpec::C { q, t: gamma },
        FeasibilityRule::ConditionOne => ConstructionSpec::D { q, witness: verdict.witness.unwrap() },
        FeasibilityRule::DivisibleByThree => ConstructionSpec::Index3 { q, m: gamma / 3 },
        rule => unreachable!("feasible verdict with infeasibility rule {rule:?}"),
    })
}
