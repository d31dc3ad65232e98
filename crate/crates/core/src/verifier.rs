//! Distance partitions, complete-regularity checks and certificates.
//!
//! [`check_crc`] works for any covering radius and reports the full
//! intersection array; only covering radius 1 certificates carry the code
//! eigenvalues and the eigenvalue index i with `k - (γ+β) = n(q-1) - q·i`.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamming::{Code, Space, Vertex};
use crate::parameters;

/// Spaces at least this large count neighbours in parallel.
const PARALLEL_THRESHOLD: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistancePartition {
    /// Distance from each vertex to the code.
    pub layer_of: Vec<usize>,
    /// Covering radius.
    pub rho: usize,
}

impl DistancePartition {
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.rho + 1];
        for &l in &self.layer_of {
            sizes[l] += 1;
        }
        sizes
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.rho + 1];
        for (j, &l) in self.layer_of.iter().enumerate() {
            classes[l].push(j);
        }
        classes
    }
}

pub fn distance_partition(code: &Code) -> Result<DistancePartition> {
    if code.is_empty() {
        return Err(Error::EmptyCode);
    }
    let space = code.space();
    let mut layer_of = vec![usize::MAX; space.size()];
    let mut queue = VecDeque::new();
    for j in code.indices() {
        layer_of[j] = 0;
        queue.push_back(j);
    }
    let mut rho = 0;
    while let Some(j) = queue.pop_front() {
        let next = layer_of[j] + 1;
        for w in space.neighbor_indices(j) {
            if layer_of[w] == usize::MAX {
                layer_of[w] = next;
                rho = rho.max(next);
                queue.push_back(w);
            }
        }
    }
    Ok(DistancePartition { layer_of, rho })
}

/// Certificate of complete regularity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrcCertificate {
    pub n: usize,
    pub q: u32,
    pub size: usize,
    pub rho: usize,
    /// β_0, …, β_{ρ-1}: neighbours in the next class.
    pub betas: Vec<usize>,
    /// γ_1, …, γ_ρ: neighbours in the previous class.
    pub gammas: Vec<usize>,
    /// α_0, …, α_ρ: neighbours in the same class.
    pub alphas: Vec<usize>,
    /// `(k, k - (γ+β))` for covering radius 1.
    pub eigenvalues: Option<(i64, i64)>,
    pub eigenvalue_index: Option<usize>,
}

impl CrcCertificate {
    pub fn gamma(&self) -> usize {
        self.gammas[0]
    }

    pub fn beta(&self) -> usize {
        self.betas[0]
    }

    pub fn alpha0(&self) -> usize {
        self.alphas[0]
    }

    pub fn alpha1(&self) -> usize {
        self.alphas[1]
    }

    pub fn valency(&self) -> usize {
        self.n * (self.q as usize - 1)
    }

    /// The non-trivial eigenvalue k - (γ+β) for covering radius 1.
    pub fn eigenvalue(&self) -> Option<i64> {
        self.eigenvalues.map(|(_, l)| l)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CountKind {
    /// neighbours in the previous class
    Gamma,
    /// neighbours in the next class
    Beta,
}

/// First vertex whose neighbour count differs from its class's reference count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrcFailure {
    pub witness_vertex: Vec<u32>,
    pub class_index: usize,
    pub kind: CountKind,
    pub observed_count: usize,
    pub expected_count: usize,
}

impl CrcFailure {
    /// Recounts the witness against `code`; true iff the recorded violation is real.
    pub fn recheck(&self, code: &Code) -> bool {
        let Ok(part) = distance_partition(code) else { return false };
        let space = code.space();
        let Ok(j) = space.index_of(&Vertex(self.witness_vertex.clone())) else { return false };
        if part.layer_of[j] != self.class_index {
            return false;
        }
        let target = match self.kind {
            CountKind::Gamma if self.class_index > 0 => self.class_index - 1,
            CountKind::Beta => self.class_index + 1,
            _ => return false,
        };
        let observed = space.neighbor_indices(j).filter(|&w| part.layer_of[w] == target).count();
        observed == self.observed_count && observed != self.expected_count
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrcVerdict {
    Regular(CrcCertificate),
    NotRegular(CrcFailure),
}

impl CrcVerdict {
    pub fn certificate(&self) -> Option<&CrcCertificate> {
        match self {
            CrcVerdict::Regular(c) => Some(c),
            CrcVerdict::NotRegular(_) => None,
        }
    }

    pub fn into_certificate(self) -> Option<CrcCertificate> {
        match self {
            CrcVerdict::Regular(c) => Some(c),
            CrcVerdict::NotRegular(_) => None,
        }
    }
}

fn layer_counts(space: &Space, part: &DistancePartition, j: usize) -> (usize, usize) {
    let l = part.layer_of[j];
    let mut down = 0;
    let mut up = 0;
    for w in space.neighbor_indices(j) {
        let lw = part.layer_of[w];
        if lw + 1 == l {
            down += 1;
        } else if lw == l + 1 {
            up += 1;
        }
    }
    (down, up)
}

pub fn check_crc(code: &Code) -> Result<CrcVerdict> {
    if code.is_empty() || code.is_full() {
        return Err(Error::EmptyOrFullCode);
    }
    let space = *code.space();
    let part = distance_partition(code)?;
    let counts: Vec<(usize, usize)> = if space.size() >= PARALLEL_THRESHOLD {
        (0..space.size()).into_par_iter().map(|j| layer_counts(&space, &part, j)).collect()
    } else {
        (0..space.size()).map(|j| layer_counts(&space, &part, j)).collect()
    };

    let mut reference: Vec<Option<(usize, usize)>> = vec![None; part.rho + 1];
    for (j, &(down, up)) in counts.iter().enumerate() {
        let l = part.layer_of[j];
        match reference[l] {
            None => reference[l] = Some((down, up)),
            Some((exp_down, exp_up)) => {
                let mismatch = if down != exp_down {
                    Some((CountKind::Gamma, down, exp_down))
                } else if up != exp_up {
                    Some((CountKind::Beta, up, exp_up))
                } else {
                    None
                };
                if let Some((kind, observed_count, expected_count)) = mismatch {
                    return Ok(CrcVerdict::NotRegular(CrcFailure {
                        witness_vertex: space.coords_of(j),
                        class_index: l,
                        kind,
                        observed_count,
                        expected_count,
                    }));
                }
            }
        }
    }

    let k = space.valency();
    let reference: Vec<(usize, usize)> = reference.into_iter().map(|r| r.unwrap()).collect();
    let betas: Vec<usize> = reference[..part.rho].iter().map(|&(_, up)| up).collect();
    let gammas: Vec<usize> = reference[1..].iter().map(|&(down, _)| down).collect();
    let alphas: Vec<usize> = reference.iter().map(|&(down, up)| k - down - up).collect();
    let (eigenvalues, eigenvalue_index) = if part.rho == 1 {
        let lambda = k as i64 - (gammas[0] + betas[0]) as i64;
        (Some((k as i64, lambda)), parameters::eigenvalue_index(space.n(), space.q(), lambda))
    } else {
        (None, None)
    };
    Ok(CrcVerdict::Regular(CrcCertificate {
        n: space.n(),
        q: space.q(),
        size: code.len(),
        rho: part.rho,
        betas,
        gammas,
        alphas,
        eigenvalues,
        eigenvalue_index,
    }))
}

/// Counts `|{x ∈ C : x_i = a}|` for every position i and symbol a.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HyperfaceProfile {
    /// `counts[i][a]`
    pub counts: Vec<Vec<usize>>,
}

impl HyperfaceProfile {
    pub fn is_balanced(&self) -> bool {
        self.common().is_some()
    }

    /// The shared count when the profile is balanced.
    pub fn common(&self) -> Option<usize> {
        let first = *self.counts.first()?.first()?;
        self.counts.iter().flatten().all(|&c| c == first).then_some(first)
    }
}

pub fn hyperface_profile(code: &Code) -> HyperfaceProfile {
    let space = code.space();
    let mut counts = vec![vec![0; space.q() as usize]; space.n()];
    for j in code.indices() {
        for (p, row) in counts.iter_mut().enumerate() {
            row[space.symbol_at(j, p) as usize] += 1;
        }
    }
    HyperfaceProfile { counts }
}

/// Codeword counts of every maximal clique, in [`Space::cliques`] order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueProfile {
    pub counts: Vec<usize>,
    pub constant: Option<usize>,
}

impl CliqueProfile {
    pub fn is_constant(&self) -> bool {
        self.constant.is_some()
    }
}

pub fn clique_profile(code: &Code) -> CliqueProfile {
    let space = code.space();
    let q = space.q() as usize;
    let mut counts = Vec::with_capacity(space.n() * space.size() / q);
    for p in 0..space.n() {
        let stride = space.stride(p);
        for base in (0..space.size()).filter(|&j| space.symbol_at(j, p) == 0) {
            counts.push((0..q).filter(|&s| code.contains_index(base + s * stride)).count());
        }
    }
    let constant = counts.first().copied().filter(|&c| counts.iter().all(|&x| x == c));
    CliqueProfile { counts, constant }
}

/// Positions p such that some edge of direction p joins C and its complement.
pub fn essential_positions(code: &Code) -> Vec<usize> {
    let space = code.space();
    (0..space.n())
        .filter(|&p| {
            let stride = space.stride(p);
            (0..space.size()).filter(|&j| space.symbol_at(j, p) == 0).any(|base| {
                let first = code.contains_index(base);
                (1..space.q() as usize).any(|s| code.contains_index(base + s * stride) != first)
            })
        })
        .collect()
}

/// Deletes every nonessential position.
pub fn reduce(code: &Code) -> Result<Code> {
    let essential = essential_positions(code);
    if essential.is_empty() {
        return Err(Error::NoEssentialPositions);
    }
    let space = code.space();
    let reduced = Space::new(essential.len(), space.q())?;
    let mut full = vec![0u32; space.n()];
    Ok(Code::from_fn(reduced, |x| {
        for (&p, &s) in essential.iter().zip(x) {
            full[p] = s;
        }
        code.contains_index(space.index_unchecked(&full))
    }))
}

/// Inserts a nonessential position so that it becomes position `at` (0..=n).
pub fn extend(code: &Code, at: usize) -> Result<Code> {
    let space = code.space();
    if at > space.n() {
        return Err(Error::InvalidPosition { position: at, n: space.n() });
    }
    let extended = Space::new(space.n() + 1, space.q())?;
    let mut short = vec![0u32; space.n()];
    Ok(Code::from_fn(extended, |x| {
        short[..at].copy_from_slice(&x[..at]);
        short[at..].copy_from_slice(&x[at + 1..]);
        code.contains_index(space.index_unchecked(&short))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamming::make_space;

    fn code(n: usize, q: u32, words: &[&[u32]]) -> Code {
        let s = make_space(n, q).unwrap();
        let vs: Vec<Vertex> = words.iter().map(|w| Vertex(w.to_vec())).collect();
        Code::from_vertices(s, &vs).unwrap()
    }

    #[test]
    fn distance_partition_examples() {
        let c = code(3, 2, &[&[0, 0, 0], &[1, 1, 1]]);
        let p = distance_partition(&c).unwrap();
        assert_eq!((p.class_sizes(), p.rho), (vec![2, 6], 1));

        let full = Code::full(make_space(3, 2).unwrap());
        let p = distance_partition(&full).unwrap();
        assert_eq!((p.class_sizes(), p.rho), (vec![8], 0));

        let c = code(3, 3, &[&[0, 0, 0]]);
        let p = distance_partition(&c).unwrap();
        assert_eq!((p.class_sizes(), p.rho), (vec![1, 6, 12, 8], 3));

        assert_eq!(distance_partition(&Code::empty(make_space(2, 2).unwrap())), Err(Error::EmptyCode));
    }

    #[test]
    fn check_crc_examples() {
        let c = code(3, 2, &[&[0, 0, 0], &[1, 1, 1]]);
        let cert = check_crc(&c).unwrap().into_certificate().unwrap();
        assert_eq!((cert.rho, cert.gamma(), cert.beta()), (1, 1, 3));
        assert_eq!(cert.eigenvalues, Some((3, -1)));
        assert_eq!(cert.eigenvalue_index, Some(2));

        let c = code(3, 2, &[&[0, 0, 0], &[1, 0, 0], &[1, 1, 1], &[0, 1, 1]]);
        let cert = check_crc(&c).unwrap().into_certificate().unwrap();
        assert_eq!((cert.rho, cert.gamma(), cert.beta(), cert.eigenvalue_index), (1, 2, 2, Some(2)));

        let c = code(3, 3, &[&[0, 0, 0], &[0, 1, 1], &[1, 1, 0], &[1, 0, 1]]);
        match check_crc(&c).unwrap() {
            CrcVerdict::NotRegular(f) => assert!(f.recheck(&c)),
            v => panic!("expected failure, got {v:?}"),
        }
    }

    #[test]
    fn check_crc_rejects_trivial_codes() {
        let s = make_space(2, 3).unwrap();
        assert_eq!(check_crc(&Code::empty(s)), Err(Error::EmptyOrFullCode));
        assert_eq!(check_crc(&Code::full(s)), Err(Error::EmptyOrFullCode));
    }

    #[test]
    fn general_radius_intersection_array() {
        // a single vertex of the cube carries the cube's own intersection array
        let c = code(3, 2, &[&[0, 0, 0]]);
        let cert = check_crc(&c).unwrap().into_certificate().unwrap();
        assert_eq!(cert.rho, 3);
        assert_eq!(cert.betas, vec![3, 2, 1]);
        assert_eq!(cert.gammas, vec![1, 2, 3]);
        assert_eq!(cert.eigenvalue_index, None);
    }

    #[test]
    fn hyperface_profile_examples() {
        let s = make_space(3, 4).unwrap();
        let c = Code::from_fn(s, |x| x[0] == 0);
        let p = hyperface_profile(&c);
        assert_eq!(p.counts[0], vec![16, 0, 0, 0]);
        assert!(!p.is_balanced());
    }

    #[test]
    fn clique_profile_examples() {
        let s = make_space(3, 5).unwrap();
        let c = Code::from_fn(s, |x| (x[0] + x[1] + x[2]) % 5 == 0);
        let p = clique_profile(&c);
        assert_eq!(p.constant, Some(1));
        assert_eq!(check_crc(&c).unwrap().certificate().unwrap().gamma(), 3);

        let p = clique_profile(&Code::full(s));
        assert_eq!(p.constant, Some(5));

        let s = make_space(3, 4).unwrap();
        let c = Code::from_fn(s, |x| (x[0] + x[1] + x[2]) % 4 < 2);
        assert_eq!(clique_profile(&c).constant, Some(2));
        assert_eq!(check_crc(&c).unwrap().certificate().unwrap().gamma(), 6);
    }

    #[test]
    fn essential_positions_examples() {
        let c = code(3, 2, &[&[0, 0, 0], &[1, 1, 1]]);
        assert_eq!(essential_positions(&c), vec![0, 1, 2]);
        assert!(essential_positions(&Code::full(make_space(3, 2).unwrap())).is_empty());
        assert_eq!(reduce(&c).unwrap(), c);
        assert_eq!(reduce(&Code::full(make_space(3, 2).unwrap())), Err(Error::NoEssentialPositions));
    }

    #[test]
    fn extend_then_reduce() {
        let c = code(2, 3, &[&[0, 0], &[1, 1], &[2, 2]]);
        for at in 0..=2 {
            let e = extend(&c, at).unwrap();
            assert_eq!(e.len(), 9);
            let ess = essential_positions(&e);
            assert_eq!(ess.len(), 2);
            assert!(!ess.contains(&at));
            assert_eq!(reduce(&e).unwrap(), c);
        }
        assert!(matches!(extend(&c, 3), Err(Error::InvalidPosition { .. })));
    }
}
