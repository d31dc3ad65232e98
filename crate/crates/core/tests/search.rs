mod common;

use std::collections::{BTreeSet, HashSet};
use std::sync::Mutex;

use crc_forge::parameters::feasible_h3q;
use crc_forge::search::{enumerate_crcs, SearchConstraints};
use crc_forge::verifier::check_crc;
use crc_forge::{make_space, Code};

use common::{radius_one_numbers, words};

/// Normalized `(γ, index)` of every radius one subset of H(n,q) by brute force.
fn brute_force(n: usize, q: u32) -> (BTreeSet<(usize, usize)>, usize) {
    let all = words(n, q);
    assert!(all.len() <= 16);
    let mut found = BTreeSet::new();
    let mut codes = 0;
    for mask in 1u32..(1 << all.len()) - 1 {
        let members: HashSet<Vec<u32>> =
            all.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, w)| w.clone()).collect();
        if let Some((g, b)) = radius_one_numbers(n, q, &members) {
            found.insert((g.min(b), (g + b) / q as usize));
            codes += 1;
        }
    }
    (found, codes)
}

fn feasible_set(q: u32) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for index in 1..=3usize {
        for gamma in 1..=q * index as u32 / 2 {
            if feasible_h3q(q, gamma, index).unwrap().feasible {
                out.insert((gamma as usize, index));
            }
        }
    }
    out
}

fn collect(constraints: &SearchConstraints) -> (Vec<Code>, crc_forge::search::SearchSummary) {
    let codes = Mutex::new(Vec::new());
    let summary = enumerate_crcs(constraints, |c, k| {
        assert_eq!(check_crc(c).unwrap().certificate(), Some(k));
        codes.lock().unwrap().push(c.clone());
    })
    .unwrap();
    (codes.into_inner().unwrap(), summary)
}

#[test]
fn h32_search_matches_brute_force_and_classification() {
    let (expected, count) = brute_force(3, 2);
    assert_eq!(expected, BTreeSet::from([(1, 1), (1, 2), (2, 2), (3, 3)]));
    let (codes, summary) = collect(&SearchConstraints::new(make_space(3, 2).unwrap()));
    assert_eq!(summary.normalized(), expected);
    assert_eq!(codes.len(), count);
    assert_eq!(summary.codes_found as usize, count);
    assert_eq!(feasible_set(2), expected);
}

#[test]
fn h23_second_eigenvalue_only_with_even_gamma() {
    let (expected, _) = brute_force(2, 3);
    assert!(expected.contains(&(2, 2)));
    assert!(!expected.iter().any(|&(g, i)| i == 2 && g != 2));
    let c = SearchConstraints { eigenvalue_index: Some(2), ..SearchConstraints::new(make_space(2, 3).unwrap()) };
    let (_, summary) = collect(&c);
    assert_eq!(summary.normalized(), BTreeSet::from([(2, 2)]));
}

#[test]
fn h33_search_matches_classification() {
    let (codes, summary) = collect(&SearchConstraints::new(make_space(3, 3).unwrap()));
    assert_eq!(summary.normalized(), feasible_set(3));
    assert_eq!(summary.normalized(), BTreeSet::from([(1, 1), (2, 2), (3, 3)]));
    let distinct: HashSet<Vec<usize>> = codes.iter().map(|c| c.indices().collect()).collect();
    assert_eq!(distinct.len(), codes.len());
}

#[test]
fn node_counts_are_reproducible() {
    let c = SearchConstraints { eigenvalue_index: Some(2), ..SearchConstraints::new(make_space(3, 3).unwrap()) };
    let first = enumerate_crcs(&c, |_, _| {}).unwrap();
    let second = enumerate_crcs(&c, |_, _| {}).unwrap();
    assert_eq!(first, second);
}

#[test]
fn h34_has_no_second_eigenvalue_code_with_gamma_one() {
    assert!(!feasible_h3q(4, 1, 2).unwrap().feasible);
    let c = SearchConstraints {
        gamma: Some(1),
        eigenvalue_index: Some(2),
        ..SearchConstraints::new(make_space(3, 4).unwrap())
    };
    let (codes, summary) = collect(&c);
    assert!(codes.is_empty());
    assert_eq!(summary.codes_found, 0);
}

#[test]
fn count_only_and_fixed_zero() {
    let space = make_space(3, 3).unwrap();
    let all = SearchConstraints { eigenvalue_index: Some(3), ..SearchConstraints::new(space) };
    let (codes, full) = collect(&all);
    let counted = enumerate_crcs(&SearchConstraints { count_only: true, ..all }, |_, _| panic!("sink called")).unwrap();
    assert_eq!(counted.codes_found, full.codes_found);
    let (zero, _) = collect(&SearchConstraints { fix_zero: true, ..all });
    let with_zero = codes.iter().filter(|c| c.contains_index(0)).count();
    assert_eq!(zero.len(), with_zero);
    assert!(zero.iter().all(|c| c.contains_index(0)));
}
