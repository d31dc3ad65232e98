mod common;

use std::collections::BTreeSet;

use crc_forge::parameters::{lambda, multiplicity};
use crc_forge::{make_space, Hyperface, Vertex};
use num_bigint::BigUint;
use proptest::prelude::*;

use common::{hamming, words};

fn small_spaces() -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    for n in 1..=6 {
        for q in 2..=16u32 {
            if (q as u64).pow(n as u32) <= 4096 {
                out.push((n, q));
            }
        }
    }
    out
}

#[test]
fn indexing_is_a_lexicographic_bijection() {
    for (n, q) in small_spaces() {
        let space = make_space(n, q).unwrap();
        let all = words(n, q);
        assert_eq!(all.len(), space.size());
        for (j, w) in all.iter().enumerate() {
            assert_eq!(space.index_of(&Vertex(w.clone())).unwrap(), j);
            assert_eq!(space.vertex(j).0, *w);
        }
    }
}

#[test]
fn adjacency_is_symmetric_and_matches_distance_one() {
    for (n, q) in small_spaces() {
        let space = make_space(n, q).unwrap();
        let adj: Vec<BTreeSet<usize>> = (0..space.size()).map(|j| space.neighbor_indices(j).collect()).collect();
        for (j, set) in adj.iter().enumerate() {
            assert_eq!(set.len(), space.valency(), "H({n},{q}) vertex {j}");
            for &k in set {
                assert!(adj[k].contains(&j));
                assert_eq!(hamming(&space.coords_of(j), &space.coords_of(k)), 1);
            }
        }
    }
}

#[test]
fn cliques_meet_hyperfaces_in_one_vertex_or_lie_inside() {
    for (n, q) in [(2, 5), (3, 4), (4, 3)] {
        let space = make_space(n, q).unwrap();
        let cliques: Vec<_> = space.cliques().collect();
        assert_eq!(cliques.len(), n * space.size() / q as usize);
        for c in &cliques {
            let members: BTreeSet<usize> = space.clique_indices(c).unwrap().into_iter().collect();
            for direction in 0..n {
                for symbol in 0..q {
                    let face: BTreeSet<usize> =
                        space.hyperface_indices(&Hyperface { direction, symbol }).unwrap().into_iter().collect();
                    let meet = members.intersection(&face).count();
                    if direction == c.codirection {
                        assert_eq!(meet, 1);
                    } else {
                        assert!(meet == 0 || meet == q as usize);
                    }
                }
            }
        }
    }
}

/// Bron–Kerbosch with pivoting over an explicit adjacency list.
fn maximal_cliques(adj: &[BTreeSet<usize>]) -> Vec<BTreeSet<usize>> {
    fn expand(
        adj: &[BTreeSet<usize>],
        r: BTreeSet<usize>,
        mut p: BTreeSet<usize>,
        mut x: BTreeSet<usize>,
        out: &mut Vec<BTreeSet<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            out.push(r);
            return;
        }
        let pivot = *p.union(&x).max_by_key(|&&u| adj[u].intersection(&p).count()).unwrap();
        let candidates: Vec<usize> = p.difference(&adj[pivot]).copied().collect();
        for v in candidates {
            let mut r2 = r.clone();
            r2.insert(v);
            let p2 = p.intersection(&adj[v]).copied().collect();
            let x2 = x.intersection(&adj[v]).copied().collect();
            expand(adj, r2, p2, x2, out);
            p.remove(&v);
            x.insert(v);
        }
    }
    let mut out = Vec::new();
    expand(adj, BTreeSet::new(), (0..adj.len()).collect(), BTreeSet::new(), &mut out);
    out
}

#[test]
fn brute_force_maximal_cliques_of_h34() {
    let all = words(3, 4);
    let adj: Vec<BTreeSet<usize>> = all
        .iter()
        .map(|a| all.iter().enumerate().filter(|(_, b)| hamming(a, b) == 1).map(|(k, _)| k).collect())
        .collect();
    let found: BTreeSet<BTreeSet<usize>> = maximal_cliques(&adj).into_iter().collect();
    assert_eq!(found.len(), 48);
    assert!(found.iter().all(|c| c.len() == 4));
    let space = make_space(3, 4).unwrap();
    let ours: BTreeSet<BTreeSet<usize>> =
        space.cliques().map(|c| space.clique_indices(&c).unwrap().into_iter().collect()).collect();
    assert_eq!(ours, found);
}

fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, j| acc * BigUint::from(n - j) / BigUint::from(j + 1))
}

#[test]
fn spectrum_of_h3_45_against_big_integers() {
    let (n, q) = (3usize, 45u32);
    let space = make_space(n, q).unwrap();
    assert_eq!(space.size(), 91_125);
    let mut total = BigUint::from(0u32);
    for i in 0..=n {
        let m = binomial(n, i) * BigUint::from(q - 1).pow(i as u32);
        assert_eq!(BigUint::from(multiplicity(n, q, i).unwrap()), m);
        total += m;
        assert_eq!(lambda(n, q, i).unwrap(), (n as i64) * (q as i64 - 1) - (q as i64) * i as i64);
    }
    assert_eq!(total, BigUint::from(q).pow(n as u32));
    // a code with γ = 14, β = 76 has q^3·γ/(γ+β) codewords
    let size = BigUint::from(q).pow(3) * BigUint::from(14u32) / BigUint::from(90u32);
    assert_eq!(size, BigUint::from(14_175u32));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn adjacency_symmetry(n in 1usize..=5, q in 2u32..=7, a in any::<u64>(), b in any::<u64>()) {
        let space = make_space(n, q).unwrap();
        let (a, b) = ((a % space.size() as u64) as usize, (b % space.size() as u64) as usize);
        let ab = space.neighbor_indices(a).any(|k| k == b);
        let ba = space.neighbor_indices(b).any(|k| k == a);
        prop_assert_eq!(ab, ba);
        prop_assert_eq!(ab, hamming(&space.coords_of(a), &space.coords_of(b)) == 1);
        prop_assert_eq!(space.distance(a, b), hamming(&space.coords_of(a), &space.coords_of(b)));
    }
}
