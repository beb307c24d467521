use std::sync::Arc;

use proptest::prelude::*;
use zipcalc::equivalence::{coarsening_check, fine_orbits, zip_classes, zip_classes_in_order};
use zipcalc::forest::build_forest;
use zipcalc::suite::run_suite;
use zipcalc::{Elem, FiniteGroup, Homomorphism, Subgroup, ZipDatum};

#[derive(Debug, Clone, Copy)]
enum SigmaKind {
    Trivial,
    Conjugation(usize),
    Pairings,
    Sign,
}

fn s4() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::symmetric(4).unwrap())
}

/// Image of `π` under `S₄ → S₃ ⊂ S₄`, the action on the three ways to split
/// `{0, 1, 2, 3}` into pairs; pairing `j` is the one joining `0` and `j`.
fn on_pairings(g: &FiniteGroup, pi: Elem) -> Elem {
    let k = g.key(pi);
    let mut images = vec![0u32];
    for j in 1..4usize {
        let (a, b) = (k[0], k[j]);
        let partner = if a == 0 {
            b
        } else if b == 0 {
            a
        } else {
            (1..4).find(|&t| t != a && t != b).unwrap()
        };
        images.push(partner);
    }
    g.element_from_key(&images).unwrap()
}

fn datum(gens: &[usize], tau_conj: usize, sigma: SigmaKind) -> ZipDatum {
    let g = s4();
    let gens: Vec<Elem> = gens.iter().map(|&i| Elem::from_index(i)).collect();
    let e = Subgroup::closure(&g, &gens).unwrap();
    let full = Subgroup::full(&g);
    let c = Elem::from_index(tau_conj);
    let tau = Homomorphism::from_fn(&e, &full, |x| g.conj(c, x)).unwrap();
    let transposition = g.parse("(1 2)").unwrap();
    let sigma = match sigma {
        SigmaKind::Trivial => Homomorphism::trivial(&e, &full),
        SigmaKind::Conjugation(d) => Homomorphism::from_fn(&e, &full, |x| g.conj(Elem::from_index(d), x)).unwrap(),
        SigmaKind::Pairings => Homomorphism::from_fn(&e, &full, |x| on_pairings(&g, x)).unwrap(),
        SigmaKind::Sign => {
            let a4 = Subgroup::closure(&g, &[g.parse("(1 2 3)").unwrap(), g.parse("(1 2)(3 4)").unwrap()]).unwrap();
            Homomorphism::from_fn(&e, &full, |x| if a4.contains(x) { g.identity() } else { transposition }).unwrap()
        }
    };
    ZipDatum::new(tau, sigma).unwrap()
}

fn sigma_kind() -> impl Strategy<Value = SigmaKind> {
    prop_oneof![
        Just(SigmaKind::Trivial),
        (0..24usize).prop_map(SigmaKind::Conjugation),
        Just(SigmaKind::Pairings),
        Just(SigmaKind::Sign),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_check_holds(gens in prop::collection::vec(0..24usize, 1..3), c in 0..24usize, sigma in sigma_kind()) {
        let z = datum(&gens, c, sigma);
        let report = run_suite(&z);
        for o in &report.outcomes {
            prop_assert!(o.passed, "{}: {}", o.name, o.detail);
        }
    }

    #[test]
    fn classes_coarsen_orbits(gens in prop::collection::vec(0..24usize, 1..3), c in 0..24usize, sigma in sigma_kind()) {
        let z = datum(&gens, c, sigma);
        let fine = fine_orbits(&z).unwrap();
        let coarse = zip_classes(&z).unwrap();
        prop_assert!(coarsening_check(&fine, &coarse).unwrap());
        prop_assert!(coarse.len() <= fine.len());
        let covered: usize = coarse.classes().iter().map(|c| c.len()).sum();
        prop_assert_eq!(covered, z.g().order());
        for class in coarse.classes() {
            prop_assert_eq!(class.witness, class.members[0]);
        }
    }

    #[test]
    fn partition_ignores_seed_order(gens in prop::collection::vec(0..24usize, 1..3), sigma in sigma_kind(), rotate in 0..24usize) {
        let z = datum(&gens, 0, sigma);
        let mut order = z.g().members().to_vec();
        order.rotate_left(rotate);
        let a = zip_classes(&z).unwrap();
        let b = zip_classes_in_order(&z, &order).unwrap();
        prop_assert!(a.same_partition(&b));
    }

    #[test]
    fn forest_paths_are_class_invariants(gens in prop::collection::vec(0..24usize, 1..3), c in 0..24usize, sigma in sigma_kind()) {
        let z = datum(&gens, c, sigma);
        let oracle = zip_classes(&z).unwrap();
        let f = build_forest(&z).unwrap();
        prop_assert_eq!(f.leaves().len(), oracle.len());
        for &x in z.g().members() {
            let path = f.classify(x).unwrap();
            prop_assert_eq!(path.entries.len(), f.stationary_generation() + 1);
            let back = f.reconstruct(&path);
            prop_assert_eq!(oracle.class_of(back), oracle.class_of(x));
        }
    }

    #[test]
    fn stationary_subgroups_survive_refinement(gens in prop::collection::vec(0..24usize, 1..3), c in 0..24usize, sigma in sigma_kind()) {
        let z = datum(&gens, c, sigma);
        let t0 = z.refine_to_stationary();
        let t1 = z.refine().unwrap().refine_to_stationary();
        prop_assert_eq!(t0.e_infinity(), t1.e_infinity());
        prop_assert_eq!(t0.g_infinity(), t1.g_infinity());
        for i in 0..t0.stages().len() {
            prop_assert!(t0.e_infinity().is_subset_of(t0.e_at(i)));
        }
    }
}
