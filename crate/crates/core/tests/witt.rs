use std::collections::BTreeSet;
use std::sync::Arc;

use zipcalc::catalog::{build_witt_zip, WittZipConfig};
use zipcalc::equivalence::{refinement_bijection_check, torsor_analysis, zip_classes};
use zipcalc::forest::build_forest;
use zipcalc::{Elem, FiniteGroup, Subgroup, ZipDatum};

fn lower_left_divisible(group: &Arc<FiniteGroup>, d: u64) -> BTreeSet<Elem> {
    group
        .elements()
        .filter(|&m| (group.key(m)[2] as u64).is_multiple_of(d))
        .collect()
}

fn set(s: &Subgroup) -> BTreeSet<Elem> {
    s.members().iter().copied().collect()
}

fn witt(p: u32, n: u32) -> (ZipDatum, Elem) {
    build_witt_zip(&WittZipConfig::new(p, n).unwrap()).unwrap()
}

#[test]
fn group_orders_match_counting_formulas() {
    // |GL₂(ℤ/m)| = m⁴·∏(1 - 1/ℓ)(1 - 1/ℓ²); the lower-left condition has index ℓ + 1
    for (p, n) in [(2u64, 2u32), (2, 3), (3, 2)] {
        let (z, _) = witt(p as u32, n);
        let gl = |m: u64| m.pow(4) * (p - 1) * (p * p - 1) / p.pow(3);
        assert_eq!(z.g().order() as u64, gl(p.pow(n - 1)));
        assert_eq!(z.e().order() as u64, gl(p.pow(n)) / (p + 1));
    }
}

#[test]
fn sigma_is_divided_conjugation_on_integer_lifts() {
    for (p, n) in [(2i64, 3u32), (3, 2)] {
        let (z, _) = witt(p as u32, n);
        let (em, gm) = (p.pow(n), p.pow(n - 1));
        let eg = z.source_group();
        let gg = z.target_group();
        for (i, m) in eg.elements().enumerate().step_by(37) {
            let k: Vec<i64> = eg.key(m).iter().map(|&v| v as i64).collect();
            // any lift of the entries gives the same value
            let shift = (i as i64 % 5) * em;
            let lift = [k[0] + shift, k[1] - shift, k[2] + 3 * shift, k[3] + shift];
            // diag(p, 1)·M·diag(1/p, 1)
            let conj = [lift[0], p * lift[1], lift[2] / p, lift[3]];
            assert_eq!(lift[2] % p, 0);
            let reduced: Vec<u32> = conj.iter().map(|v| v.rem_euclid(gm) as u32).collect();
            assert_eq!(gg.key(z.sigma().apply(m)), reduced.as_slice());
        }
        assert_eq!(z.sigma().apply(eg.identity()), gg.identity());
    }
}

#[test]
fn refinement_shapes_until_saturation() {
    for (p, n) in [(2u32, 3u32), (3, 3), (2, 2)] {
        let (z, _) = witt(p, n);
        let (em, gm) = (p.pow(n) as u64, p.pow(n - 1) as u64);
        let trace = z.refine_to_stationary();
        for i in 0..=trace.stationary_index() {
            let e_div = (p as u64).pow(i as u32 + 1).min(em);
            let g_div = (p as u64).pow(i as u32).min(gm);
            assert_eq!(
                set(trace.e_at(i)),
                lower_left_divisible(z.source_group(), e_div),
                "p={p} n={n} i={i}"
            );
            assert_eq!(
                set(trace.g_at(i)),
                lower_left_divisible(z.target_group(), g_div),
                "p={p} n={n} i={i}"
            );
        }
        assert_eq!(set(trace.e_infinity()), lower_left_divisible(z.source_group(), em));
        assert_eq!(set(trace.g_infinity()), lower_left_divisible(z.target_group(), gm));
    }
}

#[test]
fn twisted_shapes_stabilize_at_once() {
    for (p, n) in [(2u32, 2u32), (2, 3), (3, 3)] {
        let (z, w) = witt(p, n);
        let trace = z.twist(w).unwrap().refine_to_stationary();
        let e_shape = lower_left_divisible(z.source_group(), p as u64);
        let g_shape = lower_left_divisible(z.target_group(), p as u64);
        for i in 1..=trace.stationary_index() + 1 {
            let zi = z.twist(w).unwrap().refine_times(i).unwrap();
            assert_eq!(set(zi.e()), e_shape, "p={p} n={n} i={i}");
            assert_eq!(set(zi.g()), g_shape, "p={p} n={n} i={i}");
        }
    }
}

#[test]
fn two_classes_through_identity_and_antidiagonal() {
    for (p, n) in [(2u32, 2u32), (2, 3), (3, 2)] {
        let (z, w) = witt(p, n);
        let classes = zip_classes(&z).unwrap();
        assert_eq!(classes.len(), 2, "p={p} n={n}");
        let id = z.target_group().identity();
        assert_ne!(classes.class_of(id), classes.class_of(w));
        let f = build_forest(&z).unwrap();
        assert_eq!(f.leaves().len(), 2);
        assert!(f.limit_bijection_check(&classes).unwrap());
    }
}

#[test]
fn one_step_bijection_and_torsor_fibers() {
    let (z, w) = witt(2, 2);
    let id = z.target_group().identity();
    assert!(refinement_bijection_check(&z, id).unwrap());
    assert!(refinement_bijection_check(&z, w).unwrap());
    let report = torsor_analysis(&z, id).unwrap();
    assert!(report.passed);
    let upper = z
        .e()
        .members()
        .iter()
        .filter(|&&m| z.source_group().key(m)[2] == 0)
        .count();
    assert_eq!(report.e_infinity_order, upper);
}
