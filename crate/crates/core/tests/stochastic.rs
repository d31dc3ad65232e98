use std::sync::OnceLock;

use crc_forge::stochastic::{build, exists, grid_intersection_numbers, profile, GridSet, StochasticProfile};
use proptest::prelude::*;

/// Admissible γ for a `rows × cols` grid: `(rows+cols) | rows·γ` and `0 < a < rows`.
fn admissible(rows: usize, cols: usize) -> impl Iterator<Item = usize> {
    (1..rows + cols).filter(move |&g| (rows * g).is_multiple_of(rows + cols))
}

fn triples() -> &'static [(usize, usize, usize)] {
    static ALL: OnceLock<Vec<(usize, usize, usize)>> = OnceLock::new();
    ALL.get_or_init(|| {
        (1..=64)
            .flat_map(|rows| (1..=64).flat_map(move |cols| admissible(rows, cols).map(move |g| (rows, cols, g))))
            .collect()
    })
}

fn check(rows: usize, cols: usize, gamma: usize) {
    let a = rows * gamma / (rows + cols);
    let b = cols * gamma / (rows + cols);
    let g = build(rows, cols, gamma).unwrap();
    assert_eq!(profile(&g), Some(StochasticProfile { a, b }), "{rows}x{cols} gamma={gamma}");
    assert_eq!(g.len(), a * cols);
    assert_eq!(g.len(), b * rows);
    assert_eq!(grid_intersection_numbers(&g), Some((gamma, rows + cols - gamma)));
    assert!(exists(rows, cols, gamma));
    assert_eq!(profile(&g.transpose()), Some(StochasticProfile { a: b, b: a }));
}

#[test]
fn sweep_all_admissible_grids_up_to_64() {
    let mut count = 0;
    for rows in 1..=64 {
        for cols in 1..=64 {
            for gamma in admissible(rows, cols) {
                check(rows, cols, gamma);
                count += 1;
            }
        }
    }
    assert_eq!(count, triples().len());
}

#[test]
fn inadmissible_parameters_are_rejected() {
    for rows in 1..=20 {
        for cols in 1..=20 {
            for gamma in 1..rows + cols {
                let ok = (rows * gamma) % (rows + cols) == 0;
                assert_eq!(build(rows, cols, gamma).is_ok(), ok);
                assert_eq!(exists(rows, cols, gamma), ok);
            }
        }
    }
}

#[test]
fn full_grid_is_stochastic_without_being_a_code() {
    let g = GridSet::full(4, 6);
    assert_eq!(profile(&g), Some(StochasticProfile { a: 4, b: 6 }));
    assert_eq!(grid_intersection_numbers(&g), None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn build_and_profile_agree(pick in any::<prop::sample::Index>()) {
        let (rows, cols, gamma) = *pick.get(triples());
        check(rows, cols, gamma);
    }

    #[test]
    fn balanced_sets_are_radius_one_codes(rows in 2usize..=9, cols in 2usize..=9, bits in any::<u128>()) {
        let cells = (0..rows * cols).filter(|&k| bits >> k & 1 == 1).map(|k| (k / cols, k % cols));
        let g = GridSet::from_cells(rows, cols, cells).unwrap();
        prop_assume!(!g.is_empty() && !g.is_full());
        if let Some(p) = profile(&g) {
            prop_assert_eq!(grid_intersection_numbers(&g), Some((p.gamma(), rows + cols - p.gamma())));
        }
    }
}
