//! Naive reference computations that avoid the library's indexing.

#![allow(dead_code)]

use std::collections::HashSet;

use crc_forge::Code;

/// All words of length `n` over `0..q`, last position varying fastest.
pub fn words(n: usize, q: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..q).map(move |s| {
                    let mut w = w.clone();
                    w.push(s);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn hamming(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Words at distance one from `w`.
pub fn neighbours(w: &[u32], q: u32) -> impl Iterator<Item = Vec<u32>> + '_ {
    (0..w.len()).flat_map(move |p| {
        (0..q).filter(move |&s| s != w[p]).map(move |s| {
            let mut v = w.to_vec();
            v[p] = s;
            v
        })
    })
}

/// `(γ, β)` when the set is a covering radius 1 code with an equitable
/// partition {C, complement}, otherwise `None`.
pub fn radius_one_numbers(n: usize, q: u32, members: &HashSet<Vec<u32>>) -> Option<(usize, usize)> {
    let mut gamma = None;
    let mut beta = None;
    for w in words(n, q) {
        let inside = neighbours(&w, q).filter(|v| members.contains(v)).count();
        let (slot, value) =
            if members.contains(&w) { (&mut beta, n * (q as usize - 1) - inside) } else { (&mut gamma, inside) };
        match *slot {
            None => *slot = Some(value),
            Some(x) if x != value => return None,
            _ => {}
        }
    }
    let (g, b) = (gamma?, beta?);
    (g > 0).then_some((g, b))
}

pub fn member_set(code: &Code) -> HashSet<Vec<u32>> {
    code.codewords().map(|v| v.0).collect()
}

/// Oracle certificate `(γ, β, eigenvalue index)` of a library code.
pub fn oracle(code: &Code) -> Option<(usize, usize, usize)> {
    let s = code.space();
    let (g, b) = radius_one_numbers(s.n(), s.q(), &member_set(code))?;
    let sum = g + b;
    (sum % s.q() as usize == 0).then_some((g, b, sum / s.q() as usize))
}

use crc_forge::constructions::ConstructionSpec;
use crc_forge::parameters::solve_condition1;

/// Every construction of H(3,q) with parameters allowed by its builder.
pub fn catalogue(q: u32) -> Vec<ConstructionSpec> {
    let mut out = Vec::new();
    out.extend((1..q).map(|size| ConstructionSpec::Index1 { q, size }));
    out.extend((1..q).map(|m| ConstructionSpec::Index3 { q, m }));
    out.extend((1..q).map(|h| ConstructionSpec::A { q, gamma: 2 * h }));
    if q.is_multiple_of(2) {
        out.extend([1, 2].map(|variant| ConstructionSpec::B { q, variant }));
        out.extend((q / 2 + 1..q).map(|t| ConstructionSpec::C { q, t }));
        out.extend(solve_condition1(q, None).into_iter().map(|witness| ConstructionSpec::D { q, witness }));
    }
    out
}
