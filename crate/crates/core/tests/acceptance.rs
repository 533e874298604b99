//! One PASS/FAIL line per acceptance criterion.

mod common;

use std::time::{Duration, Instant};

use relcoh_core::algebra::{direct_sum, Algebra, IdealSpec, SubalgebraSpec};
use relcoh_core::bimodule::{dual_bimodule, Bimodule};
use relcoh_core::cyclic::{
    bar_delta, connes_tsygan, cyclic_cohomology_range, cyclic_delta, cyclic_spaces, cyclic_t, sbi_exactness,
    CyclicCase,
};
use relcoh_core::hochschild::{
    comparison_inclusion_range, direct_sum_maps, hochschild_delta, quotient_comparison_range, relative_cochains,
    Limits,
};
use relcoh_core::theoremlab::{random_small_algebra, verify, Status, TheoremCase, Verdict};
use relcoh_core::{Field, LinearMap, SparseVec, Subspace};

const Q: Field = Field::Rationals;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn hc_dims(a: &Algebra, s: Option<&SubalgebraSpec>, max: usize) -> Vec<usize> {
    cyclic_cohomology_range(a, s, max, &Limits::default()).unwrap().iter().map(|r| r.dim_cohomology()).collect()
}

fn passes(v: &Verdict) -> bool {
    v.overall() == Status::Pass
}

fn matrix_pattern() -> Outcome {
    let m1 = hc_dims(&Algebra::matrix(1, Q), None, 3);
    let start = Instant::now();
    let m2 = hc_dims(&Algebra::matrix(2, Q), None, 3);
    let elapsed = start.elapsed();
    let ok = m1 == [1, 0, 1, 0] && m2 == [1, 0, 1, 0] && elapsed < Duration::from_secs(60);
    outcome(ok, format!("HC(M1) = {m1:?}, HC(M2) = {m2:?} in {elapsed:.2?}"))
}

/// Instances for the SBI and Connes–Tsygan criteria: `(name, A, S)`.
fn sbi_instances() -> Vec<(String, Algebra, Option<SubalgebraSpec>)> {
    let mut out: Vec<(String, Algebra, Option<SubalgebraSpec>)> = Vec::new();
    let m2 = Algebra::matrix(2, Q);
    let qq = direct_sum(&[Algebra::scalars(Q), Algebra::scalars(Q)]).unwrap();
    let ut2 = Algebra::upper_triangular(2, Q);
    let dual = Algebra::dual_numbers(Q);
    let diag_m2 = SubalgebraSpec::new(&m2, false, vec![SparseVec::unit(0), SparseVec::unit(3)]).unwrap();
    let diag_ut2 = SubalgebraSpec::new(&ut2, false, vec![SparseVec::unit(0), SparseVec::unit(2)]).unwrap();
    out.push(("M2, S = e+".into(), m2.clone(), None));
    out.push(("M2, S = diagonal".into(), m2.clone(), Some(diag_m2)));
    out.push(("M2, S = M2".into(), m2.clone(), Some(SubalgebraSpec::whole(&m2))));
    out.push(("Q+Q, S = e+".into(), qq.algebra.clone(), None));
    out.push(("Q+Q, S = Q+Q".into(), qq.algebra.clone(), Some(qq.idempotent_subalgebra().unwrap())));
    out.push(("UT2, S = e+".into(), ut2.clone(), None));
    out.push(("UT2, S = diagonal".into(), ut2.clone(), Some(diag_ut2)));
    out.push(("D, S = e+".into(), dual.clone(), None));
    out.push(("D, S = D".into(), dual.clone(), Some(SubalgebraSpec::whole(&dual))));
    for seed in 0..6 {
        let a = random_small_algebra(seed, Q);
        out.push((format!("random #{seed}, S = e+"), a.clone(), None));
        out.push((format!("random #{seed}, S = A"), a.clone(), Some(SubalgebraSpec::whole(&a))));
    }
    out
}

fn sbi_criterion() -> Outcome {
    let instances = sbi_instances();
    let mut bad = Vec::new();
    for (name, a, s) in &instances {
        let report = sbi_exactness(a, s.as_ref(), 3, &Limits::default()).unwrap();
        if !report.is_exact() {
            bad.push(name.clone());
        }
    }
    outcome(bad.is_empty(), format!("{} instances, inexact: {bad:?}", instances.len()))
}

fn ct_criterion() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (name, a, s) in sbi_instances().iter().filter(|(_, a, _)| a.is_unital()) {
        checked += 1;
        match connes_tsygan(a, s.as_ref(), 3, &Limits::default()) {
            Ok(ct) if ct.is_exact() && ct.eta_invertible().iter().all(|&b| b) => {}
            Ok(ct) => bad.push(format!("{name}: defects {:?}", ct.defects())),
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    outcome(bad.is_empty() && checked > 0, format!("{checked} unital instances, failures: {bad:?}"))
}

fn relative_invariance() -> Outcome {
    let a = Algebra::upper_triangular(2, Q);
    let b = SubalgebraSpec::new(&a, false, vec![SparseVec::unit(0), SparseVec::unit(2)]).unwrap();
    let limits = Limits::default();
    let f = comparison_inclusion_range(&a, &dual_bimodule(&a), &b, 3, &limits).unwrap();
    let g = verify(
        &TheoremCase::Cyclic(CyclicCase::Relative { algebra: a.clone(), subalgebra: b.clone(), max_degree: 3 }),
        false,
        &limits,
    )
    .unwrap();
    let f_iso = f.iter().all(|m| m.is_iso());
    outcome(f_iso && passes(&g), format!("F isos: {f_iso}, G verdict {:?} (HC_B = {:?})", g.status, g.lhs_dims))
}

fn direct_sums() -> Outcome {
    let limits = Limits::default();
    let mut notes = Vec::new();
    let mut ok = true;
    for parts in [vec![Algebra::matrix(2, Q), Algebra::scalars(Q)], vec![Algebra::scalars(Q), Algebra::scalars(Q)]] {
        let ds = direct_sum(&parts).unwrap();
        let m = dual_bimodule(&ds.algebra);
        let inverse = (0..=2).all(|n| {
            let maps = direct_sum_maps(&ds, &m, n, &limits).unwrap();
            maps.j_after_g_is_identity() && maps.g_after_j_is_identity()
        });
        let h = verify(&TheoremCase::DirectSum { parts: parts.clone(), module: None, max_degree: 2 }, false, &limits).unwrap();
        let hc = verify(&TheoremCase::Cyclic(CyclicCase::DirectSum { parts, max_degree: 2 }), false, &limits).unwrap();
        ok &= inverse && passes(&h) && passes(&hc);
        notes.push(format!("dim {}: J∘G = G∘J = id {inverse}, H {:?}, HC {:?}", ds.algebra.dim(), h.lhs_dims, hc.lhs_dims));
    }
    outcome(ok, notes.join("; "))
}

fn triangular_dims() -> Outcome {
    let k = Algebra::scalars(Q);
    let y = Bimodule::regular(&k);
    let limits = Limits::default();
    let h = verify(&TheoremCase::Triangular { a1: k.clone(), a2: k.clone(), y: y.clone(), max_degree: 3 }, false, &limits)
        .unwrap();
    let hc =
        verify(&TheoremCase::Cyclic(CyclicCase::Triangular { a1: k.clone(), a2: k, y, max_degree: 3 }), false, &limits)
            .unwrap();
    let ok = h.lhs_dims == [2, 0, 0, 0] && hc.lhs_dims == [2, 0, 2, 0] && passes(&h) && passes(&hc);
    outcome(ok, format!("H = {:?}, HC = {:?}", h.lhs_dims, hc.lhs_dims))
}

fn ideal_vanishing() -> Outcome {
    let m2 = Algebra::matrix(2, Q);
    let ideal = IdealSpec::new(&m2, (0..4).map(SparseVec::unit).collect()).unwrap();
    let v = verify(&TheoremCase::IdealVanishing { algebra: m2, ideal, max_degree: 3 }, false, &Limits::default()).unwrap();
    outcome(passes(&v) && v.lhs_dims == [1, 0, 0, 0], format!("H_I = {:?}, Cen_I I* = {}", v.lhs_dims, v.rhs_dims[0]))
}

fn m2_plus_dual() -> (Algebra, IdealSpec) {
    let ds = direct_sum(&[Algebra::matrix(2, Q), Algebra::dual_numbers(Q)]).unwrap();
    let ideal = IdealSpec::new(&ds.algebra, (0..4).map(SparseVec::unit).collect()).unwrap();
    (ds.algebra, ideal)
}

fn quotient_criterion() -> Outcome {
    let (a, ideal) = m2_plus_dual();
    let limits = Limits::default();
    let d = Algebra::dual_numbers(Q);
    let l = quotient_comparison_range(&a, &ideal, &dual_bimodule(&d), 3, &limits).unwrap();
    let l_iso = l.iter().all(|m| m.is_iso());
    let expected_d = common::dual_hochschild_dims(&d, 3)[1..].to_vec();
    let expected_a = common::dual_hochschild_dims(&a, 2)[1..].to_vec();
    let v = verify(&TheoremCase::QuotientDual { algebra: a, ideal, max_degree: 3 }, false, &limits).unwrap();
    let oracle_ok = v.rhs_dims == expected_d && v.lhs_dims[..2] == expected_a[..];
    let ok = l_iso && passes(&v) && v.degrees == [1, 2, 3] && oracle_ok;
    outcome(
        ok,
        format!(
            "L isos: {l_iso}; H(A,A*) = {:?} vs H(D,D*) = {:?} at {:?}; oracle H(D,D*) = {expected_d:?}, H(A,A*) = {expected_a:?} to degree 2",
            v.lhs_dims, v.rhs_dims, v.degrees
        ),
    )
}

fn quotient_cyclic() -> Outcome {
    let (a, ideal) = m2_plus_dual();
    let v = verify(&TheoremCase::Cyclic(CyclicCase::Quotient { algebra: a, ideal, max_degree: 3 }), false, &Limits::default())
        .unwrap();
    outcome(passes(&v), format!("HC(A/I) = {:?}, HC(A) = {:?}, {:?}", v.lhs_dims, v.rhs_dims, v.status))
}

fn rank(maps: &LinearMap, domain: usize) -> usize {
    Subspace::span(maps.rows(), &(0..domain).map(|j| maps.column(j).clone()).collect::<Vec<_>>()).dim()
}

fn fuzz() -> Outcome {
    let start = Instant::now();
    let count = 120;
    let mut failures = Vec::new();
    for seed in 0..count {
        let a = random_small_algebra(1000 + seed, Q);
        let d = a.dim();
        let x = dual_bimodule(&a);
        let s = SubalgebraSpec::whole(&a);
        for n in 0..=2 {
            let hd = hochschild_delta(&a, &x, n);
            if !hochschild_delta(&a, &x, n + 1).compose(&hd).is_zero() {
                failures.push(format!("#{seed}: δδ ≠ 0 at {n}"));
            }
            if !cyclic_delta(&a, n + 1).compose(&cyclic_delta(&a, n)).is_zero()
                || !bar_delta(&a, n + 1).compose(&bar_delta(&a, n)).is_zero()
            {
                failures.push(format!("#{seed}: cyclic or bar δδ ≠ 0 at {n}"));
            }
            let t = cyclic_t(&a, n);
            let mut p = LinearMap::identity(t.cols());
            for _ in 0..=n {
                p = t.compose(&p);
            }
            if p != LinearMap::identity(t.cols()) {
                failures.push(format!("#{seed}: t^(n+1) ≠ id at {n}"));
            }
            let rel = relative_cochains(&a, &x, &s, n).unwrap();
            let rel_next = relative_cochains(&a, &x, &s, n + 1).unwrap();
            if !rel.basis().iter().all(|v| rel_next.contains(&hd.apply(v))) {
                failures.push(format!("#{seed}: δ leaves C_S at {n}"));
            }
            let cs = cyclic_spaces(&a, Some(&s), n).unwrap();
            if !cs.relative.basis().iter().all(|v| cs.relative.contains(&t.apply(v))) {
                failures.push(format!("#{seed}: t leaves the relative functionals at {n}"));
            }
            let kernel = hd.cols() - rank(&hd, hd.cols());
            let ker_space = relcoh_core::exactlin::kernel_of_images(hd.rows(), hd.columns()).len();
            if kernel != ker_space {
                failures.push(format!("#{seed}: rank–nullity fails at {n} (d = {d})"));
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed < Duration::from_secs(300);
    outcome(ok, format!("{count} algebras in {elapsed:.2?}, failures: {failures:?}"))
}

#[test]
fn acceptance() {
    use std::io::Write;
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("HC of matrix algebras", matrix_pattern),
        ("SBI exactness", sbi_criterion),
        ("Connes-Tsygan exactness", ct_criterion),
        ("relative invariance on UT2", relative_invariance),
        ("direct sums", direct_sums),
        ("triangular algebra", triangular_dims),
        ("ideal vanishing", ideal_vanishing),
        ("quotient by an amenable ideal", quotient_criterion),
        ("cyclic quotient map", quotient_cyclic),
        ("property fuzz", fuzz),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let tag = if o.ok { "PASS" } else { "FAIL" };
        let line = format!("criterion {:>2} {tag}: {name} ({:.2?}) {}\n", i + 1, start.elapsed(), o.detail);
        let _ = std::io::stdout().lock().write_all(line.as_bytes());
        if !o.ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
