//! Library dimensions against the brute-force oracle in `common`.

mod common;

use relcoh_core::algebra::{direct_sum, Algebra};
use relcoh_core::bimodule::dual_bimodule;
use relcoh_core::cyclic::cyclic_cohomology_range;
use relcoh_core::hochschild::{cohomology_range, Limits};
use relcoh_core::theoremlab::random_small_algebra;
use relcoh_core::Field;

const Q: Field = Field::Rationals;

fn h(a: &Algebra, max: usize) -> Vec<usize> {
    cohomology_range(a, &dual_bimodule(a), None, max, &Limits::default())
        .unwrap()
        .iter()
        .map(|r| r.dim_cohomology())
        .collect()
}

fn hc(a: &Algebra, max: usize) -> Vec<usize> {
    cyclic_cohomology_range(a, None, max, &Limits::new(max.max(3), 200_000)).unwrap().iter().map(|r| r.dim_cohomology()).collect()
}

#[test]
fn matrix_algebra() {
    let m2 = Algebra::matrix(2, Q);
    assert_eq!(common::dual_hochschild_dims(&m2, 2), vec![1, 0, 0]);
    assert_eq!(h(&m2, 2), vec![1, 0, 0]);
    assert_eq!(common::cyclic_dims(&m2, 3), vec![1, 0, 1, 0]);
    assert_eq!(hc(&m2, 3), vec![1, 0, 1, 0]);
}

#[test]
fn scalars_cyclic_to_degree_four() {
    let k = Algebra::scalars(Q);
    assert_eq!(common::cyclic_dims(&k, 4), vec![1, 0, 1, 0, 1]);
    assert_eq!(hc(&k, 4), vec![1, 0, 1, 0, 1]);
}

#[test]
fn dual_numbers() {
    let d = Algebra::dual_numbers(Q);
    let expected = common::dual_hochschild_dims(&d, 3);
    assert_eq!(expected, vec![2, 1, 1, 1]);
    assert_eq!(h(&d, 3), expected);
    assert_eq!(hc(&d, 3), common::cyclic_dims(&d, 3));
}

#[test]
fn upper_triangular() {
    let ut2 = Algebra::upper_triangular(2, Q);
    assert_eq!(h(&ut2, 3), common::dual_hochschild_dims(&ut2, 3));
    assert_eq!(hc(&ut2, 3), common::cyclic_dims(&ut2, 3));
}

#[test]
fn matrix_plus_dual_numbers() {
    let a = direct_sum(&[Algebra::matrix(2, Q), Algebra::dual_numbers(Q)]).unwrap().algebra;
    let expected = common::dual_hochschild_dims(&a, 2);
    assert_eq!(expected, vec![3, 1, 1]);
    assert_eq!(h(&a, 2), expected);
}

#[test]
fn zero_product_and_its_unitization() {
    for a in [Algebra::zero_product(2, Q), Algebra::zero_product(2, Q).unitize()] {
        assert_eq!(h(&a, 2), common::dual_hochschild_dims(&a, 2));
        assert_eq!(hc(&a, 2), common::cyclic_dims(&a, 2));
    }
}

#[test]
fn random_algebras() {
    for seed in 0..16 {
        let a = random_small_algebra(seed, Q);
        assert_eq!(h(&a, 2), common::dual_hochschild_dims(&a, 2), "seed {seed}");
        assert_eq!(hc(&a, 2), common::cyclic_dims(&a, 2), "seed {seed}");
    }
}
