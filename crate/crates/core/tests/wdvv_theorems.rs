//! Structural theorems about the WDVV residuals, checked on seeded corpora.

mod common;

use wdvv_core::algebra::Poly;
use wdvv_core::corpus::{ordinary_solutions, quad, quad_perturbed, random_prepotential};
use wdvv_core::lenard::{operators_commute, recursion_operators, SquareOfFunctions};
use wdvv_core::wdvv::{check_wdvv, hessian_data, structure_matrices, wdvv_residuals, Prepotential};
use wdvv_core::Error;

/// Random prepotentials with every fourth member replaced by a known
/// solution, so both verdicts occur.
fn mixed_corpus(seed: u64, count: usize) -> Vec<Prepotential> {
    let mut rng = common::rng(seed);
    let mut solutions = ordinary_solutions(&mut rng, count / 4 + 1).into_iter();
    (0..count)
        .map(|i| {
            if i % 4 == 0 {
                solutions.next().expect("enough solutions")
            } else {
                random_prepotential(&mut rng, 3, 4)
            }
        })
        .collect()
}

#[test]
fn two_variable_prepotentials_always_satisfy_wdvv() {
    let mut rng = common::rng(2);
    for _ in 0..100 {
        let p = random_prepotential(&mut rng, 2, 5);
        let v = check_wdvv(&p).unwrap();
        assert!(v.satisfied, "{}", p.f.to_string_in(&p.ctx));
        assert!(wdvv_residuals(&p).unwrap().iter().all(|r| r.matrix.is_zero()));
    }
}

#[test]
fn residual_form_matches_associativity_form() {
    let corpus = mixed_corpus(3, 200);
    let mut seen = [false; 2];
    for p in &corpus {
        let residuals_zero = wdvv_residuals(p).unwrap().iter().all(|r| r.matrix.is_zero());
        let cs = structure_matrices(p).unwrap();
        let commute = (0..3).all(|a| (a + 1..3).all(|b| cs[a].commutator_num(&cs[b]).is_zero()));
        assert_eq!(residuals_zero, commute, "{}", p.f.to_string_in(&p.ctx));
        seen[usize::from(residuals_zero)] = true;
    }
    assert_eq!(seen, [true, true], "the corpus must contain both verdicts");
}

#[test]
fn operator_commutation_matches_wdvv_on_hessian_squares() {
    let corpus = mixed_corpus(4, 120);
    let mut counts = [0usize; 2];
    for p in &corpus {
        let satisfied = check_wdvv(p).unwrap().satisfied;
        let square = SquareOfFunctions::hessian_of(p.ctx.clone(), &p.f, p.pivot).unwrap();
        let ops = recursion_operators(&square).unwrap();
        assert_eq!(operators_commute(&ops), satisfied, "{}", p.f.to_string_in(&p.ctx));
        counts[usize::from(satisfied)] += 1;
    }
    assert!(counts[0] > 0 && counts[1] > 0, "{counts:?}");
}

#[test]
fn hessian_and_slices_are_symmetric() {
    for p in mixed_corpus(5, 40) {
        let data = hessian_data(&p);
        assert!(data.h.is_symmetric());
        for (j, c) in data.c.iter().enumerate() {
            assert!(c.is_symmetric());
            assert_eq!(*c, data.h.derivative(j));
        }
        let scaled = wdvv_core::PolyMatrix::identity(3, 3).scale(&data.det1);
        assert_eq!(&data.c[data.pivot] * &data.adj1, scaled);
    }
}

#[test]
fn verdicts_are_covariant_under_swapping_pivot_variables() {
    let mut rng = common::rng(6);
    let swap = |f: &Poly| f.compose(&[Poly::var(3, 1), Poly::var(3, 0), Poly::var(3, 2)]);
    for _ in 0..30 {
        let p = random_prepotential(&mut rng, 3, 4);
        let symmetric = &p.f + &swap(&p.f);
        let at = |pivot| Prepotential::new(p.ctx.clone(), symmetric.clone(), pivot).unwrap();
        match (check_wdvv(&at(0)), check_wdvv(&at(1))) {
            (Ok(a), Ok(b)) => {
                assert_eq!(a.satisfied, b.satisfied);
                assert_eq!(a.ordinary, b.ordinary);
                assert_eq!(a.witnesses.len(), b.witnesses.len());
            }
            (Err(Error::DegeneratePivot), Err(Error::DegeneratePivot)) => {}
            (a, b) => panic!(
                "pivots disagree: {:?} vs {:?}",
                a.map(|v| v.satisfied),
                b.map(|v| v.satisfied)
            ),
        }
    }
}

#[test]
fn documented_examples() {
    let v = check_wdvv(&quad()).unwrap();
    assert!(v.satisfied && v.ordinary);
    let v = check_wdvv(&quad_perturbed()).unwrap();
    assert!(!v.satisfied && !v.witnesses.is_empty());
    let zero = Prepotential::with_default_pivot(wdvv_core::VarCtx::standard(3), Poly::zero(3)).unwrap();
    assert!(matches!(check_wdvv(&zero), Err(Error::DegeneratePivot)));
}
