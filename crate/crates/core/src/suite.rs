//! Runs every structural cross-check on one zip datum and collects the
//! outcomes.

use crate::coset::double_cosets;
use crate::equivalence::{
    coarsening_check, fine_orbits, groupoid_equivalence_check, refinement_bijection_check_with, torsor_analysis,
    zip_classes, zip_classes_in_order, ClassReport,
};
use crate::error::Result;
use crate::forest::build_forest;
use crate::group::Elem;
use crate::zip::{
    check_double_coset_twist, check_twist_multiplicative, compare_twist_refine_order,
    e_infinity_characterization_check, ZipDatum,
};

/// Elements drawn per sampled check.
const SAMPLES: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub outcomes: Vec<CheckOutcome>,
    pub fine_orbit_count: Option<usize>,
    pub zip_class_count: Option<usize>,
    pub forest_depth: Option<usize>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn outcome(&self, name: &str) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }
}

/// Names of the checks in the order [`run_suite`] reports them.
pub const CHECK_NAMES: [&str; 15] = [
    "group-axioms",
    "homomorphisms",
    "refinement-monotone",
    "refinement-invariance",
    "e-infinity-characterization",
    "twist-refine-order",
    "twist-multiplicative",
    "double-coset-twist",
    "class-partition",
    "coarsening",
    "refinement-bijection",
    "torsor",
    "groupoid-equivalence",
    "forest-structure",
    "forest-limit",
];

struct Recorder(Vec<CheckOutcome>);

impl Recorder {
    fn record(&mut self, name: &'static str, result: Result<(bool, String)>) {
        let (passed, detail) = match result {
            Ok(pair) => pair,
            Err(e) => (false, e.to_string()),
        };
        self.0.push(CheckOutcome { name, passed, detail });
    }
}

/// Evenly spaced picks, first and last included.
pub fn sample<T: Copy>(items: &[T], count: usize) -> Vec<T> {
    if items.len() <= count {
        return items.to_vec();
    }
    if count == 1 {
        return vec![items[0]];
    }
    (0..count).map(|k| items[k * (items.len() - 1) / (count - 1)]).collect()
}

pub fn run_suite(z: &ZipDatum) -> SuiteReport {
    let mut rec = Recorder(Vec::new());
    let g = z.target_group().clone();

    rec.record(
        "group-axioms",
        z.source_group()
            .check_axioms()
            .and_then(|_| g.check_axioms())
            .map(|_| (true, String::new())),
    );
    rec.record(
        "homomorphisms",
        z.tau()
            .check_homomorphism()
            .and_then(|_| z.sigma().check_homomorphism())
            .map(|_| (true, String::new())),
    );

    let trace = z.refine_to_stationary();
    rec.record(
        "refinement-monotone",
        Ok((
            trace.check_monotone()
                && &trace.e_intersection() == trace.e_infinity()
                && &trace.g_intersection() == trace.g_infinity(),
            format!(
                "N = {}, |E_∞| = {}, |G_∞| = {}",
                trace.stationary_index(),
                trace.e_infinity().order(),
                trace.g_infinity().order()
            ),
        )),
    );
    rec.record(
        "refinement-invariance",
        z.refine().map(|z1| {
            let t1 = z1.refine_to_stationary();
            (
                t1.e_infinity() == trace.e_infinity() && t1.g_infinity() == trace.g_infinity(),
                String::new(),
            )
        }),
    );
    rec.record(
        "e-infinity-characterization",
        e_infinity_characterization_check(z, &trace).map(|ok| (ok, String::new())),
    );

    let roots = match double_cosets(
        z.g(),
        &z.tau().image(z.e()).expect("E is the source"),
        &z.sigma().image(z.e()).expect("E is the source"),
    ) {
        Ok(d) => d.representatives().collect::<Vec<Elem>>(),
        Err(e) => {
            rec.record("twist-refine-order", Err(e));
            return SuiteReport {
                outcomes: rec.0,
                fine_orbit_count: None,
                zip_class_count: None,
                forest_depth: None,
            };
        }
    };

    rec.record(
        "twist-refine-order",
        roots
            .iter()
            .try_fold((true, 0usize), |(ok, differ), &x| {
                let order = compare_twist_refine_order(z, x)?;
                Ok((
                    ok && order.g_components_equal(),
                    differ + usize::from(!order.e_components_equal()),
                ))
            })
            .map(|(ok, differ)| (ok, format!("E-components differ for {differ} of {} roots", roots.len()))),
    );

    let tau_image: Vec<Elem> = z.tau().image(z.e()).expect("E is the source").members().to_vec();
    let xs = sample(&roots, SAMPLES);
    rec.record(
        "twist-multiplicative",
        (|| {
            let mut count = 0;
            for &x in &xs {
                for &y in &sample(&tau_image, SAMPLES) {
                    count += 1;
                    if !check_twist_multiplicative(z, x, y)? {
                        return Ok((false, format!("fails for x = {}, y = {}", g.format(x), g.format(y))));
                    }
                }
            }
            Ok((true, format!("{count} pairs")))
        })(),
    );

    let es = sample(z.e().members(), SAMPLES);
    let mut triples = Vec::new();
    for &x in &xs {
        for &e in &es {
            for &et in es.iter().rev() {
                triples.push((x, e, et));
            }
        }
    }
    rec.record(
        "double-coset-twist",
        (|| {
            let mut count = 0;
            for &(x, e, et) in &triples {
                let y = g.product([z.tau().apply(e), x, z.sigma().apply(et)]);
                count += 1;
                if !check_double_coset_twist(z, x, y, e, et)? {
                    return Ok((false, format!("fails for x = {}, y = {}", g.format(x), g.format(y))));
                }
            }
            Ok((true, format!("{count} triples")))
        })(),
    );

    let classes = zip_classes(z);
    rec.record(
        "class-partition",
        classes.as_ref().map_err(Clone::clone).and_then(|c| {
            let reversed: Vec<Elem> = z.g().members().iter().rev().copied().collect();
            let other = zip_classes_in_order(z, &reversed)?;
            Ok((c.same_partition(&other), format!("{} classes", c.len())))
        }),
    );
    let fine = fine_orbits(z);
    let fine_count = fine.as_ref().ok().map(ClassReport::len);
    let class_count = classes.as_ref().ok().map(ClassReport::len);
    let Ok(classes) = classes else {
        return SuiteReport {
            outcomes: rec.0,
            fine_orbit_count: fine_count,
            zip_class_count: None,
            forest_depth: None,
        };
    };

    rec.record(
        "coarsening",
        fine.and_then(|f| {
            Ok((
                coarsening_check(&f, &classes)?,
                format!("{} fine orbits, {} classes", f.len(), classes.len()),
            ))
        }),
    );
    rec.record(
        "refinement-bijection",
        roots
            .iter()
            .try_fold(
                true,
                |ok, &x| Ok(ok && refinement_bijection_check_with(z, x, &classes)?),
            )
            .map(|ok| (ok, format!("{} roots", roots.len()))),
    );
    rec.record(
        "torsor",
        classes
            .classes()
            .iter()
            .try_fold(true, |ok, c| Ok(ok && torsor_analysis(z, c.witness)?.passed))
            .map(|ok| (ok, format!("{} class witnesses", classes.len()))),
    );
    rec.record(
        "groupoid-equivalence",
        (|| {
            let mut count = 0;
            for &(x, e, et) in &triples {
                let y = g.product([z.tau().apply(e), x, z.sigma().apply(et)]);
                count += 1;
                if !groupoid_equivalence_check(z, x, y, e, et)? {
                    return Ok((false, format!("fails for x = {}, y = {}", g.format(x), g.format(y))));
                }
            }
            Ok((true, format!("{count} triples")))
        })(),
    );

    let forest = build_forest(z);
    let depth = forest.as_ref().ok().map(|f| f.stationary_generation());
    match forest {
        Ok(f) => {
            let note = if f.identity_substituted() {
                ", identity substituted"
            } else {
                ""
            };
            rec.record(
                "forest-structure",
                f.check_structure(&classes).map(|ok| {
                    (
                        ok,
                        format!("{} nodes, N = {}{note}", f.nodes().len(), f.stationary_generation()),
                    )
                }),
            );
            rec.record(
                "forest-limit",
                f.limit_bijection_check(&classes)
                    .map(|ok| (ok, format!("{} maximal paths", f.leaves().len()))),
            );
        }
        Err(e) => {
            rec.record("forest-structure", Err(e.clone()));
            rec.record("forest-limit", Err(e));
        }
    }

    SuiteReport {
        outcomes: rec.0,
        fine_orbit_count: fine_count,
        zip_class_count: class_count,
        forest_depth: depth,
    }
}
