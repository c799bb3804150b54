//! The rational-curve numbers of the projective plane against known values
//! and against each other.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use wdvv_core::corpus::perturbed_kontsevich_table;
use wdvv_core::kontsevich::{build_series, certify_table, nk_recursion, pde_residual, solve_from_pde};
use wdvv_core::Status;

/// Classical values of `N_1..N_10`.
const KNOWN: [&str; 10] = [
    "1",
    "1",
    "12",
    "620",
    "87304",
    "26312976",
    "14616808192",
    "13525751027392",
    "19385778269260800",
    "40739017561997799680",
];

fn known() -> Vec<BigInt> {
    KNOWN.iter().map(|s| s.parse().unwrap()).collect()
}

#[test]
fn recursion_reproduces_known_values() {
    assert_eq!(nk_recursion(10).unwrap().values(), known().as_slice());
}

#[test]
fn coefficient_matching_agrees_with_the_recursion() {
    for k in 1..=10 {
        assert_eq!(solve_from_pde(k).unwrap(), nk_recursion(k).unwrap(), "order {k}");
    }
}

#[test]
fn recursion_table_has_zero_residual() {
    let table = nk_recursion(10).unwrap();
    assert!(pde_residual(&build_series(&table)).is_zero());
    let report = certify_table(&table);
    assert_eq!(report.status, Status::Pass);
}

#[test]
fn entries_are_positive_integers() {
    let table = nk_recursion(12).unwrap();
    assert!(table.values().iter().all(|n| n.is_positive()));
    assert!(table.values().windows(2).skip(1).all(|w| w[1] > w[0]));
}

#[test]
fn a_perturbation_is_detected_in_its_own_slice() {
    for k in 2..=8u32 {
        let mut table = nk_recursion(8).unwrap();
        let bumped = table.get(k) + BigInt::one();
        table.set(k, bumped);
        let residual = pde_residual(&build_series(&table));
        let first = residual.iter().next().expect("nonzero residual");
        assert_eq!((first.0, first.1), (k, 3 * k - 4), "perturbing N_{k}");
        let report = certify_table(&table);
        assert_eq!(report.status, Status::Fail);
        assert!(report.clause("pde_residual_zero").unwrap().witness.is_some());
    }
}

#[test]
fn documented_negative_control() {
    let report = certify_table(&perturbed_kontsevich_table(4));
    assert_eq!(report.status, Status::Fail);
    let witness = report.clause("pde_residual_zero").unwrap().witness.clone().unwrap();
    assert!(witness.contains("e^(3*x2)"), "{witness}");
}
