//! Exhaustive enumeration of covering radius 1 completely regular codes in
//! small Hamming spaces.
//!
//! The search runs once per admissible intersection array `(γ, β)` with
//! `γ + β = q·i`. Vertices are decided in lexicographic order; a branch is cut
//! as soon as some vertex can no longer reach its exact count (β non-code
//! neighbours for a codeword, γ code neighbours otherwise), when the code
//! size `q^n·γ/(γ+β)` is out of reach, or, for `i >= 2`, when a hyperface can
//! no longer hold exactly `|C|/q` codewords. Vertex sets are `u64` masks, so
//! spaces are capped at 64 vertices.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamming::{Code, Space};
use crate::verifier::{check_crc, CrcCertificate, CrcVerdict};

pub const MAX_SEARCH_VERTICES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConstraints {
    pub space: Space,
    /// Normalized target γ (γ <= β).
    pub gamma: Option<u32>,
    pub eigenvalue_index: Option<usize>,
    /// Skip the sink; codes are still verified and counted.
    pub count_only: bool,
    /// Only codes containing the all-zero word.
    pub fix_zero: bool,
}

impl SearchConstraints {
    pub fn new(space: Space) -> Self {
        SearchConstraints { space, gamma: None, eigenvalue_index: None, count_only: false, fix_zero: false }
    }

    /// The intersection arrays `(γ, β, i)` to search, smallest index first.
    pub fn targets(&self) -> Result<Vec<(usize, usize, usize)>> {
        let n = self.space.n();
        let q = self.space.q() as usize;
        let size = self.space.size();
        if let Some(i) = self.eigenvalue_index {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { i, n });
            }
            if let Some(g) = self.gamma {
                let sum = (q * i) as u32;
                if g == 0 || g >= sum {
                    return Err(Error::InvalidParameters(format!("gamma must satisfy 1 <= gamma < {sum}")));
                }
                if 2 * g > sum {
                    return Err(Error::NotNormalized { gamma: g, beta: sum - g });
                }
            }
        }
        let mut targets = Vec::new();
        for i in 1..=n {
            if self.eigenvalue_index.is_some_and(|t| t != i) {
                continue;
            }
            let sum = q * i;
            for gamma in 1..sum {
                let beta = sum - gamma;
                if let Some(g) = self.gamma {
                    if gamma != g as usize || gamma > beta {
                        continue;
                    }
                }
                if (size * gamma).is_multiple_of(sum) {
                    targets.push((gamma, beta, i));
                }
            }
        }
        Ok(targets)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    /// `(γ, β, eigenvalue index)` of every code found.
    pub parameter_sets: BTreeSet<(usize, usize, usize)>,
    pub codes_found: u64,
    pub nodes_visited: u64,
}

impl SearchSummary {
    fn merge(mut self, other: SearchSummary) -> SearchSummary {
        self.parameter_sets.extend(other.parameter_sets);
        self.codes_found += other.codes_found;
        self.nodes_visited += other.nodes_visited;
        self
    }

    /// `(min(γ,β), index)` pairs, i.e. parameters up to complementation.
    pub fn normalized(&self) -> BTreeSet<(usize, usize)> {
        self.parameter_sets.iter().map(|&(g, b, i)| (g.min(b), i)).collect()
    }
}

/// Precomputed masks shared by all workers of one target.
struct Problem {
    size: usize,
    valency: u32,
    gamma: u32,
    beta: u32,
    code_size: u32,
    neighbors: Vec<u64>,
    /// hyperface masks touching each vertex (empty when not pruning by hyperfaces)
    hyperfaces_of: Vec<Vec<u64>>,
    hyperface_quota: u32,
    hyperface_size: u32,
}

#[derive(Clone, Copy)]
struct State {
    inside: u64,
    outside: u64,
}

impl Problem {
    fn new(space: &Space, gamma: usize, beta: usize, index: usize) -> Problem {
        let size = space.size();
        let neighbors = (0..size).map(|v| space.neighbor_indices(v).fold(0u64, |m, w| m | (1 << w))).collect();
        let q = space.q() as usize;
        let code_size = size * gamma / (gamma + beta);
        let hyperfaces_of = if index >= 2 {
            let mut masks = vec![0u64; space.n() * q];
            for v in 0..size {
                for p in 0..space.n() {
                    masks[p * q + space.symbol_at(v, p) as usize] |= 1 << v;
                }
            }
            (0..size).map(|v| (0..space.n()).map(|p| masks[p * q + space.symbol_at(v, p) as usize]).collect()).collect()
        } else {
            vec![Vec::new(); size]
        };
        Problem {
            size,
            valency: space.valency() as u32,
            gamma: gamma as u32,
            beta: beta as u32,
            code_size: code_size as u32,
            neighbors,
            hyperfaces_of,
            hyperface_quota: (code_size / q) as u32,
            hyperface_size: (size / q) as u32,
        }
    }

    #[inline]
    fn vertex_ok(&self, st: &State, w: usize) -> bool {
        let nb = self.neighbors[w];
        let ins = (nb & st.inside).count_ones();
        let outs = (nb & st.outside).count_ones();
        let open = self.valency - ins - outs;
        let can_in = outs <= self.beta && outs + open >= self.beta;
        let can_out = ins <= self.gamma && ins + open >= self.gamma;
        let bit = 1u64 << w;
        if st.inside & bit != 0 {
            can_in
        } else if st.outside & bit != 0 {
            can_out
        } else {
            can_in || can_out
        }
    }

    /// Checks every constraint touched by the decision on `v`.
    fn consistent(&self, st: &State, v: usize) -> bool {
        let decided_in = st.inside.count_ones();
        let decided_out = st.outside.count_ones();
        if decided_in > self.code_size || decided_out > self.size as u32 - self.code_size {
            return false;
        }
        for hf in &self.hyperfaces_of[v] {
            if (hf & st.inside).count_ones() > self.hyperface_quota
                || (hf & st.outside).count_ones() > self.hyperface_size - self.hyperface_quota
            {
                return false;
            }
        }
        if !self.vertex_ok(st, v) {
            return false;
        }
        let mut nb = self.neighbors[v];
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if !self.vertex_ok(st, w) {
                return false;
            }
        }
        true
    }
}

struct Worker<'a, F> {
    problem: &'a Problem,
    space: Space,
    target: (usize, usize, usize),
    count_only: bool,
    sink: &'a F,
    cancel: &'a AtomicBool,
    failure: &'a Mutex<Option<String>>,
    summary: SearchSummary,
}

impl<F: Fn(&Code, &CrcCertificate) + Sync> Worker<'_, F> {
    fn descend(&mut self, st: State, next: usize) {
        if next == self.problem.size {
            self.emit(st.inside);
            return;
        }
        if self.cancel.load(Ordering::Relaxed) {
            return;
        }
        for take in [true, false] {
            let bit = 1u64 << next;
            let child = if take {
                State { inside: st.inside | bit, outside: st.outside }
            } else {
                State { inside: st.inside, outside: st.outside | bit }
            };
            if self.problem.consistent(&child, next) {
                self.summary.nodes_visited += 1;
                self.descend(child, next + 1);
            }
        }
    }

    fn emit(&mut self, mask: u64) {
        let code = Code::from_indices(self.space, (0..self.problem.size).filter(|&v| mask >> v & 1 == 1));
        let (gamma, beta, index) = self.target;
        let verdict = check_crc(&code);
        let cert = match verdict {
            Ok(CrcVerdict::Regular(c))
                if c.rho == 1 && c.gamma() == gamma && c.beta() == beta && c.eigenvalue_index == Some(index) =>
            {
                c
            }
            other => {
                let mut slot = self.failure.lock().unwrap();
                slot.get_or_insert_with(|| {
                    format!(
                        "mask {mask:#x} expected (gamma,beta,index)=({gamma},{beta},{index}), verifier said {other:?}"
                    )
                });
                self.cancel.store(true, Ordering::Relaxed);
                return;
            }
        };
        self.summary.codes_found += 1;
        self.summary.parameter_sets.insert(self.target);
        if !self.count_only {
            (self.sink)(&code, &cert);
        }
    }
}

/// Enumerates every covering radius 1 completely regular code matching
/// `constraints`, passing each one with its certificate to `sink`.
///
/// Each code is emitted exactly once. Emission order across workers is
/// unspecified; the returned summary is deterministic.
pub fn enumerate_crcs<F>(constraints: &SearchConstraints, sink: F) -> Result<SearchSummary>
where
    F: Fn(&Code, &CrcCertificate) + Sync,
{
    let space = constraints.space;
    if space.size() > MAX_SEARCH_VERTICES {
        return Err(Error::SpaceTooLarge { vertices: space.size(), cap: MAX_SEARCH_VERTICES });
    }
    let cancel = AtomicBool::new(false);
    let failure = Mutex::new(None);
    let mut total = SearchSummary::default();
    for target in constraints.targets()? {
        let (gamma, beta, index) = target;
        let problem = Problem::new(&space, gamma, beta, index);

        // the first two decisions split the tree into independent subtrees
        let mut roots = vec![(State { inside: 0, outside: 0 }, 0usize)];
        for _ in 0..2.min(problem.size) {
            let mut next_roots = Vec::new();
            for (st, v) in roots {
                let bit = 1u64 << v;
                let options: &[bool] = if v == 0 && constraints.fix_zero { &[true] } else { &[true, false] };
                for &take in options {
                    let child = if take {
                        State { inside: st.inside | bit, outside: st.outside }
                    } else {
                        State { inside: st.inside, outside: st.outside | bit }
                    };
                    if problem.consistent(&child, v) {
                        total.nodes_visited += 1;
                        next_roots.push((child, v + 1));
                    }
                }
            }
            roots = next_roots;
        }

        let part = roots
            .into_par_iter()
            .map(|(st, next)| {
                let mut worker = Worker {
                    problem: &problem,
                    space,
                    target,
                    count_only: constraints.count_only,
                    sink: &sink,
                    cancel: &cancel,
                    failure: &failure,
                    summary: SearchSummary::default(),
                };
                worker.descend(st, next);
                worker.summary
            })
            .reduce(SearchSummary::default, SearchSummary::merge);
        total = total.merge(part);
        if let Some(msg) = failure.lock().unwrap().take() {
            return Err(Error::SearchVerification(msg));
        }
    }
    Ok(total)
}
