//! Verdicts over the built-in cases and a few hand-made ones.

use std::collections::BTreeSet;

use relcoh_core::algebra::{direct_sum, Algebra, IdealSpec, SubalgebraSpec};
use relcoh_core::bimodule::Bimodule;
use relcoh_core::cyclic::CyclicCase;
use relcoh_core::theoremlab::{builtin_cases, verify};
use relcoh_core::{Field, Limits, SparseVec, Status, TheoremCase};

const Q: Field = Field::Rationals;

#[test]
fn every_builtin_case_passes() {
    let limits = Limits::default();
    for named in builtin_cases() {
        let v = verify(&named.case, false, &limits).unwrap();
        assert_eq!(v.overall(), Status::Pass, "{}: {v:?}", named.name);
        assert_eq!(v.status.len(), v.degrees.len(), "{}", named.name);
        assert!(v.hypotheses.values().count() > 0 || v.theorem == "4.3", "{}", named.name);
    }
}

#[test]
fn builtin_cases_cover_every_theorem() {
    let ids: BTreeSet<&str> = builtin_cases().iter().map(|c| c.case.theorem_id()).collect();
    for id in ["1.6", "1.7", "1.10", "2.1", "2.2", "2.4", "4.1", "4.2", "4.3", "4.4", "4.7"] {
        assert!(ids.contains(id), "missing {id}");
    }
}

#[test]
fn ideal_vanishing_on_matrix_algebra() {
    let m2 = Algebra::matrix(2, Q);
    let ideal = IdealSpec::new(&m2, (0..4).map(SparseVec::unit).collect()).unwrap();
    let v = verify(&TheoremCase::IdealVanishing { algebra: m2, ideal, max_degree: 3 }, false, &Limits::default())
        .unwrap();
    assert_eq!(v.lhs_dims, vec![1, 0, 0, 0]);
    assert_eq!(v.overall(), Status::Pass);
}

#[test]
fn triangular_hochschild_dims() {
    let k = Algebra::scalars(Q);
    let case = TheoremCase::Triangular { a1: k.clone(), a2: k.clone(), y: Bimodule::regular(&k), max_degree: 3 };
    let v = verify(&case, false, &Limits::default()).unwrap();
    assert_eq!(v.lhs_dims, vec![2, 0, 0, 0]);
    assert_eq!(v.rhs_dims, vec![2, 0, 0, 0]);
    assert_eq!(v.overall(), Status::Pass);
}

#[test]
fn quotient_dual_with_trace_on_the_ideal() {
    let ds = direct_sum(&[Algebra::matrix(2, Q), Algebra::dual_numbers(Q)]).unwrap();
    let ideal = IdealSpec::new(&ds.algebra, (0..4).map(SparseVec::unit).collect()).unwrap();
    let v = verify(&TheoremCase::QuotientDual { algebra: ds.algebra, ideal, max_degree: 3 }, false, &Limits::default())
        .unwrap();
    assert_eq!(v.degrees, vec![1, 2, 3]);
    assert_eq!(v.lhs_dims[1..], v.rhs_dims[1..]);
    assert_eq!(v.overall(), Status::Pass);
}

#[test]
fn missing_certificate_is_not_certified() {
    let d = Algebra::dual_numbers(Q);
    let case = TheoremCase::Relative { algebra: d.clone(), subalgebra: SubalgebraSpec::whole(&d), module: None, max_degree: 2 };
    let v = verify(&case, false, &Limits::default()).unwrap();
    assert_eq!(v.overall(), Status::NotCertified);
    let forced = verify(&case, true, &Limits::default()).unwrap();
    assert_ne!(forced.overall(), Status::NotCertified);
    assert_eq!(forced.lhs_dims, v.lhs_dims);

    let cyclic = TheoremCase::Cyclic(CyclicCase::Relative { algebra: d.clone(), subalgebra: SubalgebraSpec::whole(&d), max_degree: 2 });
    assert_eq!(verify(&cyclic, false, &Limits::default()).unwrap().overall(), Status::NotCertified);
}

#[test]
fn non_unital_direct_sum_part_is_refused() {
    let z = Algebra::zero_product(1, Q);
    let case = TheoremCase::Cyclic(CyclicCase::DirectSum { parts: vec![Algebra::scalars(Q), z], max_degree: 1 });
    assert!(verify(&case, false, &Limits::default()).is_err());
}

#[test]
fn verdict_json_shape() {
    let case = &builtin_cases()[0].case;
    let v = verify(case, false, &Limits::default()).unwrap();
    let json = serde_json::to_value(&v).unwrap();
    let keys: BTreeSet<&str> = json.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, BTreeSet::from(["theorem", "degrees", "status", "hypotheses", "lhs_dims", "rhs_dims"]));
    assert!(json["status"].as_array().unwrap().iter().all(|s| s == "PASS"));
}

#[test]
fn verdicts_are_deterministic() {
    let limits = Limits::default();
    for named in builtin_cases().into_iter().take(5) {
        let a = serde_json::to_string(&verify(&named.case, false, &limits).unwrap()).unwrap();
        let b = serde_json::to_string(&verify(&named.case, false, &limits).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
