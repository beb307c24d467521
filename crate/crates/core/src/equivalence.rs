//! The two equivalence relations on `G` attached to a zip datum, computed by
//! brute force, and the structural checks that relate them.
//!
//! * fine orbits: orbits of `e.g = τ(e)·g·σ(e)⁻¹`;
//! * the coarse relation `∼_𝒵`: `y ∼ x` iff `y = τ(e)·g·x·σ(e)⁻¹` with
//!   `e ∈ E` and `g ∈ G_∞ˣ`.

use std::collections::BTreeSet;

use crate::coset::{conjugated_double_coset_map, double_coset_of, double_cosets};
use crate::error::{Error, Result};
use crate::group::Elem;
use crate::subgroup::Subgroup;
use crate::zip::ZipDatum;

const UNLABELED: u32 = u32::MAX;

/// `(e, g)` with `y = τ(e)·g·x·σ(e)⁻¹`.
type Witness = (Elem, Elem);

/// Members per class that get the symmetry and witness-conjugation checks.
const CLASS_CHECK_SAMPLES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    FineOrbit,
    ZipCoarse,
}

impl Relation {
    pub fn tag(self) -> &'static str {
        match self {
            Relation::FineOrbit => "fine-orbit",
            Relation::ZipCoarse => "zip-coarse",
        }
    }
}

#[derive(Debug, Clone)]
pub struct EquivalenceClass {
    /// Key-minimal member.
    pub witness: Elem,
    /// Sorted members.
    pub members: Vec<Elem>,
    /// `E_∞ˣ` for the witness `x`.
    pub e_infinity: Subgroup,
    /// `G_∞ˣ` for the witness `x`.
    pub g_infinity: Subgroup,
    /// For each member `y`, a pair `(e, g)` with `y = τ(e)·g·x·σ(e)⁻¹`.
    member_witnesses: Vec<(Elem, Elem)>,
}

impl EquivalenceClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member_witness(&self, y: Elem) -> Option<(Elem, Elem)> {
        self.members.binary_search(&y).ok().map(|i| self.member_witnesses[i])
    }
}

/// A partition of the carrier of `G` under one of the two relations.
#[derive(Debug, Clone)]
pub struct ClassReport {
    datum: ZipDatum,
    relation: Relation,
    classes: Vec<EquivalenceClass>,
    labels: Vec<u32>,
}

impl ClassReport {
    pub fn datum(&self) -> &ZipDatum {
        &self.datum
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn classes(&self) -> &[EquivalenceClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, y: Elem) -> Option<usize> {
        match self.labels.get(y.index()) {
            Some(&l) if l != UNLABELED => Some(l as usize),
            _ => None,
        }
    }

    /// `E_∞^y` obtained from the class witness through `ᵉE_∞ˣ = E_∞^y`.
    pub fn e_infinity_at(&self, y: Elem) -> Option<Subgroup> {
        let class = &self.classes[self.class_of(y)?];
        let (e, _) = class.member_witness(y)?;
        class.e_infinity.conjugate(e).ok()
    }

    /// Whether two reports describe the same partition of `G`.
    pub fn same_partition(&self, other: &ClassReport) -> bool {
        let mine: BTreeSet<&[Elem]> = self.classes.iter().map(|c| c.members.as_slice()).collect();
        let theirs: BTreeSet<&[Elem]> = other.classes.iter().map(|c| c.members.as_slice()).collect();
        mine == theirs
    }
}

/// Orbits of `(e, g) ↦ τ(e)·g·σ(e)⁻¹` on `G`.
pub fn fine_orbits(z: &ZipDatum) -> Result<ClassReport> {
    let g = z.target_group();
    let mut labels = vec![UNLABELED; g.order()];
    let mut classes = Vec::new();
    for &x in z.g().members() {
        if labels[x.index()] != UNLABELED {
            continue;
        }
        let (members, witnesses) = expand(z, x, &[g.identity()], &mut labels, classes.len() as u32)?;
        let trace = z.twist(x)?.refine_to_stationary();
        classes.push(EquivalenceClass {
            witness: x,
            members,
            e_infinity: trace.e_infinity().clone(),
            g_infinity: trace.g_infinity().clone(),
            member_witnesses: witnesses,
        });
    }
    finish(z, Relation::FineOrbit, classes, labels)
}

/// Orbit labels of the action, without per-orbit metadata.
pub(crate) fn orbit_labels(z: &ZipDatum) -> Result<(Vec<u32>, usize)> {
    let g = z.target_group();
    let mut labels = vec![UNLABELED; g.order()];
    let mut count = 0;
    for &x in z.g().members() {
        if labels[x.index()] == UNLABELED {
            expand(z, x, &[g.identity()], &mut labels, count as u32)?;
            count += 1;
        }
    }
    Ok((labels, count))
}

/// The classes of `∼_𝒵`, seeded by the key-minimal unclassified element.
pub fn zip_classes(z: &ZipDatum) -> Result<ClassReport> {
    zip_classes_in_order(z, z.g().members())
}

/// As [`zip_classes`], but seeding classes in the given order. The partition
/// and the reported witnesses do not depend on `order`.
pub fn zip_classes_in_order(z: &ZipDatum, order: &[Elem]) -> Result<ClassReport> {
    let g = z.target_group();
    let mut labels = vec![UNLABELED; g.order()];
    let mut classes: Vec<EquivalenceClass> = Vec::new();
    for &seed in order {
        z.g().require(seed, "G")?;
        if labels[seed.index()] != UNLABELED {
            continue;
        }
        let label = classes.len() as u32;
        let trace = z.twist(seed)?.refine_to_stationary();
        let (members, _) = expand(z, seed, trace.g_infinity().members(), &mut labels, label)?;
        let witness = members[0];
        let class = if witness == seed {
            class_from(z, seed)?
        } else {
            // re-derive from the key-minimal member; the sets must agree
            class_from(z, witness)?
        };
        if class.members != members {
            return Err(Error::InvariantViolation(format!(
                "the class of {} differs from the class of its member {}",
                g.format(seed),
                g.format(witness)
            )));
        }
        check_class(z, &class)?;
        classes.push(class);
    }
    finish(z, Relation::ZipCoarse, classes, labels)
}

/// The class `o_𝒵(x)` as a sorted set, computed on its own.
pub fn zip_class_of(z: &ZipDatum, x: Elem) -> Result<Vec<Elem>> {
    Ok(class_from(z, x)?.members)
}

fn class_from(z: &ZipDatum, x: Elem) -> Result<EquivalenceClass> {
    z.g().require(x, "G")?;
    let trace = z.twist(x)?.refine_to_stationary();
    let mut scratch = vec![UNLABELED; z.target_group().order()];
    let (members, member_witnesses) = expand(z, x, trace.g_infinity().members(), &mut scratch, 0)?;
    Ok(EquivalenceClass {
        witness: x,
        members,
        e_infinity: trace.e_infinity().clone(),
        g_infinity: trace.g_infinity().clone(),
        member_witnesses,
    })
}

/// `E`-orbit of the set `{ g·x : g ∈ left }` under the action, labeling every
/// reached element. Reaching an element that already carries another label
/// means two classes overlap.
fn expand(z: &ZipDatum, x: Elem, left: &[Elem], labels: &mut [u32], label: u32) -> Result<(Vec<Elem>, Vec<Witness>)> {
    let g = z.target_group();
    let e_id = z.source_group().identity();
    let gens: Vec<(Elem, Elem, Elem)> = z
        .e()
        .generators()
        .iter()
        .map(|&s| (s, z.tau().apply(s), g.inv(z.sigma().apply(s))))
        .collect();
    let mut found: Vec<(Elem, (Elem, Elem))> = Vec::new();
    let mut pending: Vec<(Elem, (Elem, Elem))> = left.iter().map(|&h| (g.mul(h, x), (e_id, h))).collect();
    let mut next = 0;
    loop {
        for (y, w) in pending.drain(..) {
            match labels[y.index()] {
                UNLABELED => {
                    labels[y.index()] = label;
                    found.push((y, w));
                }
                l if l == label => {}
                _ => {
                    return Err(Error::InvariantViolation(format!(
                        "classes overlap at {}: the relation is not an equivalence",
                        g.format(y)
                    )))
                }
            }
        }
        let Some(&(y, (e, h))) = found.get(next) else { break };
        next += 1;
        for &(s, ts, sigma_s_inv) in &gens {
            pending.push((g.mul(g.mul(ts, y), sigma_s_inv), (z.source_group().mul(s, e), h)));
        }
    }
    found.sort_by_key(|&(y, _)| y);
    Ok(found.into_iter().unzip())
}

/// Runtime assertions on one class: the witnesses reproduce their members,
/// `ᵉE_∞ˣ = E_∞^y` on sampled members, and sampled members generate the same
/// class (symmetry).
fn check_class(z: &ZipDatum, class: &EquivalenceClass) -> Result<()> {
    let g = z.target_group();
    let x = class.witness;
    for (&y, &(e, h)) in class.members.iter().zip(&class.member_witnesses) {
        let rebuilt = g.mul(g.mul(z.tau().apply(e), g.mul(h, x)), g.inv(z.sigma().apply(e)));
        if rebuilt != y || !class.g_infinity.contains(h) {
            return Err(Error::InvariantViolation(format!(
                "bad class witness for {}",
                g.format(y)
            )));
        }
    }
    for y in sample(&class.members, CLASS_CHECK_SAMPLES) {
        let (e, _) = class.member_witness(y).expect("sampled from the class");
        let other = class_from(z, y)?;
        if other.e_infinity != class.e_infinity.conjugate(e)? {
            return Err(Error::InvariantViolation(format!(
                "ᵉE_∞ˣ ≠ E_∞ʸ for x = {}, y = {}",
                g.format(x),
                g.format(y)
            )));
        }
        if other.members != class.members {
            return Err(Error::InvariantViolation(format!(
                "{} ∼ {} but not conversely",
                g.format(y),
                g.format(x)
            )));
        }
    }
    Ok(())
}

/// Evenly spaced members, always including the last.
fn sample(members: &[Elem], count: usize) -> Vec<Elem> {
    if members.len() <= count {
        return members.to_vec();
    }
    (1..=count).map(|k| members[k * (members.len() - 1) / count]).collect()
}

fn finish(z: &ZipDatum, relation: Relation, classes: Vec<EquivalenceClass>, labels: Vec<u32>) -> Result<ClassReport> {
    let covered: usize = classes.iter().map(EquivalenceClass::len).sum();
    if covered != z.g().order() || z.g().members().iter().any(|m| labels[m.index()] == UNLABELED) {
        return Err(Error::InvariantViolation(format!(
            "{} classes cover {covered} of {} elements",
            relation.tag(),
            z.g().order()
        )));
    }
    Ok(ClassReport {
        datum: z.clone(),
        relation,
        classes,
        labels,
    })
}

/// Every fine orbit lies inside a single coarse class.
pub fn coarsening_check(fine: &ClassReport, coarse: &ClassReport) -> Result<bool> {
    if fine.datum() != coarse.datum() {
        return Err(Error::Mismatch("reports describe different zip data".into()));
    }
    Ok(fine.classes().iter().all(|orbit| {
        let target = coarse.class_of(orbit.witness);
        orbit.members.iter().all(|&y| coarse.class_of(y) == target)
    }))
}

/// One refinement step for `x`: `y ↦ y·x` sends each `𝒵₁ˣ`-class `C` onto
/// `o_𝒵(y·x) ∩ G₁ˣ·x`, and this is a bijection onto the `𝒵`-classes meeting
/// `τ(E)·x·σ(E)`.
pub fn refinement_bijection_check(z: &ZipDatum, x: Elem) -> Result<bool> {
    let oracle = zip_classes(z)?;
    refinement_bijection_check_with(z, x, &oracle)
}

pub fn refinement_bijection_check_with(z: &ZipDatum, x: Elem, oracle: &ClassReport) -> Result<bool> {
    if oracle.datum() != z || oracle.relation() != Relation::ZipCoarse {
        return Err(Error::Mismatch(
            "oracle must be the zip classes of the same datum".into(),
        ));
    }
    let g = z.target_group();
    let x_inv = g.inv(x);
    let refined = z.twist(x)?.refine()?;
    let g1 = refined.g();
    let inner = zip_classes(&refined)?;
    let mut hit = BTreeSet::new();
    for class in inner.classes() {
        let mut image: Vec<Elem> = class.members.iter().map(|&y| g.mul(y, x)).collect();
        image.sort();
        let label = oracle.class_of(image[0]).expect("oracle covers G");
        let expected: Vec<Elem> = oracle.classes()[label]
            .members
            .iter()
            .copied()
            .filter(|&t| g1.contains(g.mul(t, x_inv)))
            .collect();
        if image != expected || !hit.insert(label) {
            return Ok(false);
        }
    }
    let sigma_e = z.sigma().image(z.e())?;
    let meeting: BTreeSet<usize> = double_coset_of(g1, x, &sigma_e)?
        .into_iter()
        .map(|t| oracle.class_of(t).expect("oracle covers G"))
        .collect();
    Ok(hit == meeting)
}

/// Outcome of the torsor check for one `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsorReport {
    pub passed: bool,
    pub class_size: usize,
    pub e_infinity_order: usize,
    pub g_infinity_order: usize,
}

/// `(e, g) ↦ τ(e)·g·x·σ(e)⁻¹` from `E × G_∞ˣ` onto `o_𝒵(x)`, with
/// `ε.(e, g) = (e·ε⁻¹, τ(ε)·g·ˣσ(ε)⁻¹)`, is an `E_∞ˣ`-torsor.
pub fn torsor_check(z: &ZipDatum, x: Elem) -> Result<bool> {
    Ok(torsor_analysis(z, x)?.passed)
}

pub fn torsor_analysis(z: &ZipDatum, x: Elem) -> Result<TorsorReport> {
    let g = z.target_group();
    let eg = z.source_group();
    let twisted = z.twist(x)?;
    let trace = twisted.refine_to_stationary();
    let (e_inf, g_inf) = (trace.e_infinity(), trace.g_infinity());
    let class = zip_class_of(z, x)?;
    let mut in_class = vec![false; g.order()];
    for &y in &class {
        in_class[y.index()] = true;
    }
    let mut report = TorsorReport {
        passed: false,
        class_size: class.len(),
        e_infinity_order: e_inf.order(),
        g_infinity_order: g_inf.order(),
    };

    let image = |e: Elem, h: Elem| g.mul(g.mul(z.tau().apply(e), g.mul(h, x)), g.inv(z.sigma().apply(e)));
    let mut counts = vec![0u32; g.order()];
    let mut base: Vec<Option<(Elem, Elem)>> = vec![None; g.order()];
    for &e in z.e().members() {
        for &h in g_inf.members() {
            let y = image(e, h);
            if !in_class[y.index()] {
                return Ok(report);
            }
            counts[y.index()] += 1;
            base[y.index()].get_or_insert((e, h));
        }
    }
    let fiber = e_inf.order() as u32;
    if class.iter().any(|y| counts[y.index()] != fiber) {
        return Ok(report);
    }
    // the orbit of one point per fiber has |E_∞ˣ| distinct points (first
    // coordinates differ) and stays in the fiber, so it is the whole fiber
    for &y in &class {
        let (e0, h0) = base[y.index()].expect("every class member is hit");
        for &eps in e_inf.members() {
            let e1 = eg.mul(e0, eg.inv(eps));
            let h1 = g.mul(g.mul(z.tau().apply(eps), h0), g.inv(twisted.sigma().apply(eps)));
            if !g_inf.contains(h1) || image(e1, h1) != y {
                return Ok(report);
            }
        }
    }
    report.passed = true;
    Ok(report)
}

/// For `y = τ(e)·x·σ(ẽ)`, the map `Ψ: ε ↦ ẽ⁻¹εẽ`,
/// `g ↦ τ(ẽ)⁻¹·g·x·σ(ẽ)·y⁻¹` from `𝒵₁ˣ` to `𝒵₁ʸ` is equivariant, induces the
/// conjugation bijection on double quotients, a bijection on orbits, and
/// bijections of stabilizers.
pub fn groupoid_equivalence_check(z: &ZipDatum, x: Elem, y: Elem, e: Elem, e_tilde: Elem) -> Result<bool> {
    let g = z.target_group();
    let eg = z.source_group();
    z.g().require(x, "G")?;
    z.e().require(e, "E")?;
    z.e().require(e_tilde, "E")?;
    let (tau, sigma) = (z.tau(), z.sigma());
    if y != g.product([tau.apply(e), x, sigma.apply(e_tilde)]) {
        return Err(Error::Precondition("y must equal τ(e)·x·σ(ẽ)".into()));
    }
    let zx = z.twist(x)?.refine()?;
    let zy = z.twist(y)?.refine()?;

    let et_inv = eg.inv(e_tilde);
    let psi_e = |eps: Elem| eg.mul(eg.mul(et_inv, eps), e_tilde);
    let left = g.inv(tau.apply(e_tilde));
    let right = g.product([x, sigma.apply(e_tilde), g.inv(y)]);
    let psi_g = |h: Elem| g.mul(g.mul(left, h), right);

    let e_image = Subgroup::from_unsorted(eg.clone(), zx.e().members().iter().map(|&eps| psi_e(eps)));
    let g_image = Subgroup::from_unsorted(g.clone(), zx.g().members().iter().map(|&h| psi_g(h)));
    if &e_image != zy.e() || &g_image != zy.g() {
        return Ok(false);
    }

    // double quotients: Ψ on G is h ↦ a·h·b⁻¹ with a = τ(ẽ)⁻¹, b = right⁻¹
    let dq_x = double_cosets(zx.g(), &zx.tau().image(zx.e())?, &zx.sigma().image(zx.e())?)?;
    let map = conjugated_double_coset_map(&dq_x, left, g.inv(right))?;
    if map.target.left() != &zy.tau().image(zy.e())? || map.target.right() != &zy.sigma().image(zy.e())? {
        return Ok(false);
    }

    // equivariance, and stabilizer sizes on both sides
    let mut stab_x = vec![0u32; g.order()];
    for &eps in zx.e().members() {
        let eps_y = psi_e(eps);
        for &h in zx.g().members() {
            let moved = zx.act(eps, h);
            if psi_g(moved) != zy.act(eps_y, psi_g(h)) {
                return Ok(false);
            }
            if moved == h {
                stab_x[h.index()] += 1;
            }
        }
    }
    let mut stab_y = vec![0u32; g.order()];
    for &eps in zy.e().members() {
        for &h in zy.g().members() {
            if zy.act(eps, h) == h {
                stab_y[h.index()] += 1;
            }
        }
    }
    if zx
        .g()
        .members()
        .iter()
        .any(|&h| stab_x[h.index()] != stab_y[psi_g(h).index()])
    {
        return Ok(false);
    }

    // orbits map onto orbits bijectively
    let (labels_x, count_x) = orbit_labels(&zx)?;
    let (labels_y, count_y) = orbit_labels(&zy)?;
    if count_x != count_y {
        return Ok(false);
    }
    let mut forward = vec![UNLABELED; count_x];
    let mut backward = vec![UNLABELED; count_y];
    for &h in zx.g().members() {
        let (lx, ly) = (labels_x[h.index()], labels_y[psi_g(h).index()]);
        if forward[lx as usize] == UNLABELED && backward[ly as usize] == UNLABELED {
            forward[lx as usize] = ly;
            backward[ly as usize] = lx;
        } else if forward[lx as usize] != ly || backward[ly as usize] != lx {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog::zoo_entry;
    use crate::group::FiniteGroup;
    use crate::hom::Homomorphism;

    #[test]
    fn trivial_e_gives_singletons() {
        let z = zoo_entry("trivial-e").unwrap();
        let fine = fine_orbits(&z).unwrap();
        let coarse = zip_classes(&z).unwrap();
        assert_eq!(fine.len(), 6);
        assert_eq!(coarse.len(), 6);
        assert!(coarsening_check(&fine, &coarse).unwrap());
        for c in coarse.classes() {
            assert_eq!(c.e_infinity.order(), 1);
        }
    }

    #[test]
    fn surjective_tau_gives_one_class() {
        let z = zoo_entry("tau-surjective").unwrap();
        let coarse = zip_classes(&z).unwrap();
        assert_eq!(coarse.len(), 1);
        assert!(coarsening_check(&fine_orbits(&z).unwrap(), &coarse).unwrap());
    }

    #[test]
    fn borel_fine_orbits_by_enumeration() {
        // Oracle: merge g with b·g·b⁻¹ for every b ∈ B over all six elements.
        let z = zoo_entry("gl2f2-borel").unwrap();
        let g = z.target_group().clone();
        let mut parent: Vec<usize> = (0..g.order()).collect();
        fn find(p: &mut Vec<usize>, i: usize) -> usize {
            if p[i] != i {
                let r = find(p, p[i]);
                p[i] = r;
            }
            p[i]
        }
        for x in g.elements() {
            for &b in z.e().members() {
                let y = g.conj(b, x);
                let (rx, ry) = (find(&mut parent, x.index()), find(&mut parent, y.index()));
                parent[rx] = ry;
            }
        }
        let roots: BTreeSet<usize> = (0..g.order()).map(|i| find(&mut parent, i)).collect();
        assert_eq!(roots.len(), 4);
        assert_eq!(fine_orbits(&z).unwrap().len(), 4);
    }

    #[test]
    fn identity_fixed_when_tau_equals_sigma() {
        let z = zoo_entry("s3-inclusion").unwrap();
        let fine = fine_orbits(&z).unwrap();
        let id = z.target_group().identity();
        assert_eq!(fine.classes()[fine.class_of(id).unwrap()].members, vec![id]);
    }

    #[test]
    fn order_independence() {
        for name in crate::catalog::ZOO_NAMES {
            let z = zoo_entry(name).unwrap();
            let forward = zip_classes(&z).unwrap();
            let reversed: Vec<Elem> = z.g().members().iter().rev().copied().collect();
            let backward = zip_classes_in_order(&z, &reversed).unwrap();
            assert!(forward.same_partition(&backward), "{name}");
            let w1: Vec<Elem> = forward.classes().iter().map(|c| c.witness).collect();
            let mut w2: Vec<Elem> = backward.classes().iter().map(|c| c.witness).collect();
            w2.sort();
            assert_eq!(w1, w2, "{name}");
        }
    }

    #[test]
    fn zoo_structural_checks() {
        for name in crate::catalog::ZOO_NAMES {
            let z = zoo_entry(name).unwrap();
            let coarse = zip_classes(&z).unwrap();
            let fine = fine_orbits(&z).unwrap();
            assert!(coarsening_check(&fine, &coarse).unwrap(), "{name}");
            let roots = double_cosets(z.g(), &z.tau().image(z.e()).unwrap(), &z.sigma().image(z.e()).unwrap()).unwrap();
            for x in roots.representatives() {
                assert!(refinement_bijection_check_with(&z, x, &coarse).unwrap(), "{name}");
            }
            for class in coarse.classes() {
                let t = torsor_analysis(&z, class.witness).unwrap();
                assert!(t.passed, "{name}: {t:?}");
                assert_eq!(t.class_size * t.e_infinity_order, z.e().order() * t.g_infinity_order);
                for &y in &class.members {
                    let via_identity = coarse.e_infinity_at(y).unwrap();
                    let direct = z.twist(y).unwrap().refine_to_stationary();
                    assert_eq!(&via_identity, direct.e_infinity(), "{name}");
                }
            }
        }
    }

    #[test]
    fn groupoid_equivalence_on_small_data() {
        for name in [
            "s3-sub-trivial",
            "gl2f2-borel-opposite",
            "s4-pairing-endomorphism",
            "trivial-e",
        ] {
            let z = zoo_entry(name).unwrap();
            let g = z.target_group().clone();
            let e_members = z.e().members().to_vec();
            for &x in z.g().members().iter().take(6) {
                for &e in e_members.iter().take(3) {
                    for &et in e_members.iter().rev().take(3) {
                        let y = g.product([z.tau().apply(e), x, z.sigma().apply(et)]);
                        assert!(groupoid_equivalence_check(&z, x, y, e, et).unwrap(), "{name}");
                    }
                }
            }
            let id = z.source_group().identity();
            let x = z.g().members()[0];
            assert!(groupoid_equivalence_check(&z, x, x, id, id).unwrap());
        }
    }

    #[test]
    fn groupoid_precondition() {
        let z = zoo_entry("s3-inclusion").unwrap();
        let g = z.target_group();
        let id = g.identity();
        let bad = groupoid_equivalence_check(&z, id, g.parse("(1 2 3)").unwrap(), id, id);
        assert!(matches!(bad, Err(Error::Precondition(_))));
    }

    #[test]
    fn coarsening_rejects_foreign_reports() {
        let a = zoo_entry("s3-inclusion").unwrap();
        let b = zoo_entry("s3-sub-trivial").unwrap();
        assert!(coarsening_check(&fine_orbits(&a).unwrap(), &zip_classes(&b).unwrap()).is_err());
    }

    #[test]
    fn fine_equals_coarse_for_normal_inclusion() {
        // E = A₃ ⊴ S₃ with τ = σ = inclusion: orbits are A₃-conjugacy classes.
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let g = Subgroup::full(&s3);
        let a3 = Subgroup::closure(&s3, &[s3.parse("(1 2 3)").unwrap()]).unwrap();
        let inc = Homomorphism::inclusion(&a3, &g).unwrap();
        let z = ZipDatum::new(inc.clone(), inc).unwrap();
        let fine = fine_orbits(&z).unwrap();
        let coarse = zip_classes(&z).unwrap();
        assert!(coarsening_check(&fine, &coarse).unwrap());
        assert!(coarse.len() <= fine.len());
    }
}
