//! Eigenvalue arithmetic of H(n,q), the Condition 1 system and the
//! feasibility predicates for covering radius 1 codes.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// λ_i(n,q) = n(q-1) - q·i.
pub fn lambda(n: usize, q: u32, i: usize) -> Result<i64> {
    if i > n {
        return Err(Error::IndexOutOfRange { i, n });
    }
    Ok(n as i64 * (q as i64 - 1) - q as i64 * i as i64)
}

/// Multiplicity C(n,i)·(q-1)^i of λ_i(n,q).
pub fn multiplicity(n: usize, q: u32, i: usize) -> Result<u128> {
    if i > n {
        return Err(Error::IndexOutOfRange { i, n });
    }
    let mut binom: u128 = 1;
    for j in 0..i as u128 {
        binom = binom * (n as u128 - j) / (j + 1);
    }
    Ok(binom * (q as u128 - 1).pow(i as u32))
}

/// The index i with λ_i(n,q) = `eigenvalue`, if there is one.
pub fn eigenvalue_index(n: usize, q: u32, eigenvalue: i64) -> Option<usize> {
    let diff = n as i64 * (q as i64 - 1) - eigenvalue;
    if diff < 0 || diff % q as i64 != 0 {
        return None;
    }
    let i = (diff / q as i64) as usize;
    (i <= n).then_some(i)
}

/// Integers (r,s,t,a,b,c) for Condition 1 at a fixed alphabet size q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ConditionOneWitness {
    pub r: u32,
    pub s: u32,
    pub t: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl ConditionOneWitness {
    pub fn new(r: u32, s: u32, t: u32, a: u32, b: u32, c: u32) -> Self {
        ConditionOneWitness { r, s, t, a, b, c }
    }

    pub fn gamma(&self) -> u32 {
        self.a + self.b + self.c
    }

    /// `(q-s)·t·r == s·(q-t)·(q-r)`, the product of the three equations.
    pub fn product_identity_holds(&self, q: u32) -> bool {
        let (q, r, s, t) = (q as u64, self.r as u64, self.s as u64, self.t as u64);
        if r >= q || s >= q || t >= q {
            return false;
        }
        (q - s) * t * r == s * (q - t) * (q - r)
    }
}

impl fmt::Display for ConditionOneWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r,s,t,a,b,c)=({},{},{},{},{},{})", self.r, self.s, self.t, self.a, self.b, self.c)
    }
}

pub fn check_condition1(q: u32, w: &ConditionOneWitness) -> bool {
    let ConditionOneWitness { r, s, t, a, b, c } = *w;
    let in_range = |x: u32| 0 < x && x < q;
    if !(in_range(r) && in_range(s) && in_range(t)) {
        return false;
    }
    if !(0 < c && c <= (q - s).min(q - t)) {
        return false;
    }
    if !(0 < b && b <= t.min(q - r)) {
        return false;
    }
    if !(0 < a && a <= r.min(s)) {
        return false;
    }
    let (q, r, s, t, a, b, c) = (q as u64, r as u64, s as u64, t as u64, a as u64, b as u64, c as u64);
    c * r == a * (q - t) && b * (q - s) == c * (q - r) && a * t == b * s
}

/// All Condition 1 witnesses for `q`, restricted to γ = a+b+c when `gamma` is given,
/// in lexicographic (r,s,t,a,b,c) order.
pub fn solve_condition1(q: u32, gamma: Option<u32>) -> Vec<ConditionOneWitness> {
    if q < 2 {
        return Vec::new();
    }
    (1..q)
        .into_par_iter()
        .flat_map_iter(|r| {
            let mut found = Vec::new();
            for s in 1..q {
                for t in 1..q {
                    // a fixed γ fixes a: γ = a·(1 + t/s + (q-t)/r)
                    let (lo, hi) = match gamma {
                        Some(g) => {
                            let (r64, s64, t64) = (r as u64, s as u64, t as u64);
                            let num = g as u64 * r64 * s64;
                            let den = r64 * s64 + r64 * t64 + s64 * (q as u64 - t64);
                            if !num.is_multiple_of(den) || num < den {
                                continue;
                            }
                            let a = (num / den) as u32;
                            (a, a)
                        }
                        None => (1, r.min(s)),
                    };
                    for a in lo..=hi {
                        if (a * t) % s != 0 || !(a * (q - t)).is_multiple_of(r) {
                            continue;
                        }
                        let b = a * t / s;
                        let c = a * (q - t) / r;
                        let w = ConditionOneWitness { r, s, t, a, b, c };
                        if gamma.is_some_and(|g| w.gamma() != g) {
                            continue;
                        }
                        if check_condition1(q, &w) {
                            found.push(w);
                        }
                    }
                }
            }
            found
        })
        .collect()
}

/// Which clause of the classification decided a feasibility query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FeasibilityRule {
    /// first eigenvalue: 1 <= γ <= q/2
    FirstEigenvalueRange,
    /// second eigenvalue: γ even, 2 <= γ <= q
    EvenGamma,
    /// second eigenvalue: q even, q/2 <= γ <= q
    HalfToFull,
    /// second eigenvalue: q even, γ odd below q/2, Condition 1 solvable
    ConditionOne,
    /// third eigenvalue: 3 | γ, 3 <= γ <= 3q/2
    DivisibleByThree,
    /// second eigenvalue, q odd: γ must be even
    OddAlphabetOddGamma,
    /// second eigenvalue in H(2,q): γ must be even
    TwoDimensionalOddGamma,
    /// q even, γ odd below q/2, Condition 1 has no solution
    ConditionOneUnsolvable,
    /// third eigenvalue: γ not divisible by 3
    NotDivisibleByThree,
}

impl fmt::Display for FeasibilityRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            FeasibilityRule::FirstEigenvalueRange => "eigenvalue index 1 admits every gamma with 0 < gamma <= q/2",
            FeasibilityRule::EvenGamma => "even gamma with 2 <= gamma <= q is always realizable",
            FeasibilityRule::HalfToFull => "even q admits every gamma with q/2 <= gamma <= q",
            FeasibilityRule::ConditionOne => "even q, odd gamma < q/2: Condition 1 has a solution",
            FeasibilityRule::DivisibleByThree => {
                "eigenvalue index 3 admits gamma divisible by 3; the bound 3 <= gamma <= 3q/2 follows from gamma+beta = 3q and gamma <= beta"
            }
            FeasibilityRule::OddAlphabetOddGamma => {
                "odd q: |C| = q^3*gamma/(2q) must be an integer, so gamma must be even"
            }
            FeasibilityRule::TwoDimensionalOddGamma => "in H(2,q) the second eigenvalue forces even gamma",
            FeasibilityRule::ConditionOneUnsolvable => "even q, odd gamma < q/2: Condition 1 has no solution",
            FeasibilityRule::NotDivisibleByThree => "eigenvalue index 3 requires gamma divisible by 3",
        };
        f.write_str(text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FeasibilityVerdict {
    pub feasible: bool,
    pub rule: FeasibilityRule,
    pub witness: Option<ConditionOneWitness>,
}

impl FeasibilityVerdict {
    fn yes(rule: FeasibilityRule) -> Self {
        FeasibilityVerdict { feasible: true, rule, witness: None }
    }

    fn no(rule: FeasibilityRule) -> Self {
        FeasibilityVerdict { feasible: false, rule, witness: None }
    }
}

/// Rejects γ outside `1 <= γ <= β` where `γ + β = sum`.
fn check_normalized(gamma: u32, sum: u32) -> Result<()> {
    if gamma == 0 || gamma >= sum {
        return Err(Error::InvalidParameters(format!("gamma must satisfy 1 <= gamma < {sum}")));
    }
    if 2 * gamma > sum {
        return Err(Error::NotNormalized { gamma, beta: sum - gamma });
    }
    Ok(())
}

/// Odd γ at even q. A Condition 1 witness is attached whenever one exists,
/// even when the range clause already decides the query.
fn odd_gamma_even_alphabet(q: u32, gamma: u32) -> FeasibilityVerdict {
    let witness = solve_condition1(q, Some(gamma)).first().copied();
    let rule = if 2 * gamma >= q {
        FeasibilityRule::HalfToFull
    } else if witness.is_some() {
        FeasibilityRule::ConditionOne
    } else {
        FeasibilityRule::ConditionOneUnsolvable
    };
    FeasibilityVerdict { feasible: rule != FeasibilityRule::ConditionOneUnsolvable, rule, witness }
}

/// Existence of a covering radius 1 code in H(3,q) with the given γ and eigenvalue index.
///
/// γ must be normalized: γ <= β with γ + β = q·index.
pub fn feasible_h3q(q: u32, gamma: u32, index: usize) -> Result<FeasibilityVerdict> {
    if q < 2 {
        return Err(Error::InvalidParameters("q must be at least 2".into()));
    }
    if !(1..=3).contains(&index) {
        return Err(Error::IndexOutOfRange { i: index, n: 3 });
    }
    check_normalized(gamma, q * index as u32)?;
    Ok(match index {
        1 => FeasibilityVerdict::yes(FeasibilityRule::FirstEigenvalueRange),
        2 => {
            if gamma.is_multiple_of(2) {
                FeasibilityVerdict::yes(FeasibilityRule::EvenGamma)
            } else if q % 2 == 1 {
                FeasibilityVerdict::no(FeasibilityRule::OddAlphabetOddGamma)
            } else {
                odd_gamma_even_alphabet(q, gamma)
            }
        }
        _ => {
            if gamma.is_multiple_of(3) {
                FeasibilityVerdict::yes(FeasibilityRule::DivisibleByThree)
            } else {
                FeasibilityVerdict::no(FeasibilityRule::NotDivisibleByThree)
            }
        }
    })
}

/// Existence of a covering radius 1 code with eigenvalue λ_2(n,q) and normalized γ in H(n,q).
pub fn feasible_hnq(n: usize, q: u32, gamma: u32) -> Result<FeasibilityVerdict> {
    if n < 2 {
        return Err(Error::InvalidParameters("the second eigenvalue needs n >= 2".into()));
    }
    if q < 2 {
        return Err(Error::InvalidParameters("q must be at least 2".into()));
    }
    check_normalized(gamma, 2 * q)?;
    Ok(if gamma.is_multiple_of(2) {
        FeasibilityVerdict::yes(FeasibilityRule::EvenGamma)
    } else if n == 2 {
        FeasibilityVerdict::no(FeasibilityRule::TwoDimensionalOddGamma)
    } else if q % 2 == 1 {
        FeasibilityVerdict::no(FeasibilityRule::OddAlphabetOddGamma)
    } else {
        odd_gamma_even_alphabet(q, gamma)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda(3, 6, 2).unwrap(), 3);
        for q in 2..20 {
            assert_eq!(lambda(3, q, 3).unwrap(), -3);
        }
        assert_eq!(lambda(3, 2, 0).unwrap(), 3);
        assert!(matches!(lambda(3, 2, 4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn multiplicities_sum_to_vertex_count() {
        for n in 1..6 {
            for q in 2..7u32 {
                let total: u128 = (0..=n).map(|i| multiplicity(n, q, i).unwrap()).sum();
                assert_eq!(total, (q as u128).pow(n as u32));
            }
        }
    }

    #[test]
    fn eigenvalue_index_inverts_lambda() {
        for n in 1..5 {
            for q in 2..8 {
                for i in 0..=n {
                    assert_eq!(eigenvalue_index(n, q, lambda(n, q, i).unwrap()), Some(i));
                }
            }
        }
        assert_eq!(eigenvalue_index(3, 4, 8), None);
        assert_eq!(eigenvalue_index(3, 4, -7), None);
    }

    #[test]
    fn condition1_examples() {
        assert!(check_condition1(8, &ConditionOneWitness::new(4, 4, 4, 2, 2, 2)));
        assert!(!check_condition1(8, &ConditionOneWitness::new(4, 4, 4, 2, 2, 3)));
        let w = ConditionOneWitness::new(28, 28, 16, 7, 4, 4);
        assert!(check_condition1(32, &w));
        assert_eq!(w.gamma(), 15);
        assert!(check_condition1(45, &ConditionOneWitness::new(9, 15, 30, 3, 6, 5)));
    }

    #[test]
    fn solver_examples() {
        assert!(solve_condition1(8, Some(7)).contains(&ConditionOneWitness::new(2, 4, 6, 2, 3, 2)));
        assert!(solve_condition1(45, Some(14)).contains(&ConditionOneWitness::new(9, 15, 30, 3, 6, 5)));
        assert!(solve_condition1(4, Some(1)).is_empty());
        let all = solve_condition1(8, None);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn feasibility_examples() {
        let v = feasible_h3q(7, 3, 2).unwrap();
        assert!(!v.feasible);
        assert_eq!(v.rule, FeasibilityRule::OddAlphabetOddGamma);

        let v = feasible_h3q(8, 7, 2).unwrap();
        assert!(v.feasible);
        assert_eq!(v.rule, FeasibilityRule::HalfToFull);
        assert_eq!(v.witness, Some(ConditionOneWitness::new(2, 4, 6, 2, 3, 2)));

        let v = feasible_h3q(2, 1, 2).unwrap();
        assert_eq!((v.feasible, v.rule), (true, FeasibilityRule::HalfToFull));

        let v = feasible_h3q(8, 3, 2).unwrap();
        assert_eq!((v.feasible, v.rule), (true, FeasibilityRule::ConditionOne));
        assert!(check_condition1(8, &v.witness.unwrap()));

        assert!(matches!(feasible_h3q(8, 5, 1), Err(Error::NotNormalized { gamma: 5, beta: 3 })));
        assert!(matches!(feasible_h3q(8, 0, 2), Err(Error::InvalidParameters(_))));
        assert!(feasible_h3q(8, 12, 3).unwrap().feasible);
        assert!(!feasible_h3q(8, 10, 3).unwrap().feasible);
    }

    #[test]
    fn hnq_examples() {
        let v = feasible_hnq(2, 8, 7).unwrap();
        assert_eq!((v.feasible, v.rule), (false, FeasibilityRule::TwoDimensionalOddGamma));
        assert!(feasible_hnq(3, 8, 7).unwrap().feasible);
        assert_eq!(feasible_hnq(5, 6, 4).unwrap().rule, FeasibilityRule::EvenGamma);
        assert!(feasible_hnq(1, 6, 4).is_err());
    }
}
