//! Shared fixtures for the benchmarks.

use relcoh_core::bimodule::dual_bimodule;
use relcoh_core::{Algebra, Bimodule, Field, Limits, SubalgebraSpec, SparseVec};

/// A named algebra with its dual module.
pub struct Instance {
    pub name: &'static str,
    pub algebra: Algebra,
    pub dual: Bimodule,
}

fn instance(name: &'static str, algebra: Algebra) -> Instance {
    let dual = dual_bimodule(&algebra);
    Instance { name, algebra, dual }
}

pub fn instances() -> Vec<Instance> {
    let q = Field::Rationals;
    vec![
        instance("scalars", Algebra::scalars(q)),
        instance("dual_numbers", Algebra::dual_numbers(q)),
        instance("matrix2", Algebra::matrix(2, q)),
        instance("upper_triangular2", Algebra::upper_triangular(2, q)),
        instance("matrix2_gaussian", Algebra::matrix(2, Field::GaussianRationals)),
    ]
}

/// The diagonal of the upper triangular 2×2 matrices.
pub fn ut2_diagonal() -> (Algebra, SubalgebraSpec) {
    let a = Algebra::upper_triangular(2, Field::Rationals);
    let s = SubalgebraSpec::new(&a, false, vec![SparseVec::unit(0), SparseVec::unit(2)]).expect("diagonal");
    (a, s)
}

pub fn limits(max_degree: usize) -> Limits {
    Limits::new(max_degree, 2_000_000)
}
