use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{Elem, CHECK_SEED, EXHAUSTIVE_CHECK_THRESHOLD, SAMPLED_CHECKS};
use crate::subgroup::Subgroup;

const UNDEFINED: u32 = u32::MAX;

/// A homomorphism between two subgroups, materialized as a table indexed by
/// the source's ambient carrier.
#[derive(Clone)]
pub struct Homomorphism {
    source: Subgroup,
    target: Subgroup,
    table: Arc<[u32]>,
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Homomorphism")
            .field("source_order", &self.source.order())
            .field("target_order", &self.target.order())
            .finish()
    }
}

impl PartialEq for Homomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self
                .source
                .members()
                .iter()
                .all(|&e| self.table[e.index()] == other.table[e.index()])
    }
}

impl Eq for Homomorphism {}

impl Homomorphism {
    /// Materializes `f` on every source element, then verifies the
    /// homomorphism law (exhaustively up to the check threshold).
    pub fn from_fn(source: &Subgroup, target: &Subgroup, f: impl Fn(Elem) -> Elem) -> Result<Self> {
        let hom = Self::materialize(source, target, f)?;
        hom.check_homomorphism()?;
        Ok(hom)
    }

    /// Like [`from_fn`](Self::from_fn) but skips the homomorphism law; used for
    /// maps that are homomorphisms by construction (restrictions, twists).
    pub(crate) fn materialize(source: &Subgroup, target: &Subgroup, f: impl Fn(Elem) -> Elem) -> Result<Self> {
        let mut table = vec![UNDEFINED; source.ambient().order()];
        for &e in source.members() {
            let v = f(e);
            if !target.contains(v) {
                return Err(Error::NotHomomorphism(format!(
                    "{} maps to {}, which is outside the target",
                    source.ambient().format(e),
                    if v.index() < target.ambient().order() {
                        target.ambient().format(v)
                    } else {
                        format!("#{}", v.index())
                    }
                )));
            }
            table[e.index()] = v.index() as u32;
        }
        Ok(Homomorphism {
            source: source.clone(),
            target: target.clone(),
            table: table.into(),
        })
    }

    pub fn identity(s: &Subgroup) -> Self {
        Self::materialize(s, s, |e| e).expect("identity maps into its source")
    }

    pub fn inclusion(sub: &Subgroup, sup: &Subgroup) -> Result<Self> {
        if !sub.is_subset_of(sup) {
            return Err(Error::Mismatch("inclusion needs a subgroup of the target".into()));
        }
        Self::materialize(sub, sup, |e| e)
    }

    pub fn trivial(source: &Subgroup, target: &Subgroup) -> Self {
        let id = target.ambient().identity();
        Self::materialize(source, target, |_| id).expect("identity lies in every subgroup")
    }

    /// Extends generator images to the whole source, failing if the
    /// assignment is inconsistent or the generators do not generate.
    pub fn from_generator_images(source: &Subgroup, target: &Subgroup, images: &[(Elem, Elem)]) -> Result<Self> {
        let sg = source.ambient();
        let tg = target.ambient();
        for &(s, t) in images {
            source.require(s, "the homomorphism source")?;
            target.require(t, "the homomorphism target")?;
        }
        let mut table = vec![UNDEFINED; sg.order()];
        table[sg.identity().index()] = tg.identity().index() as u32;
        let mut queue = VecDeque::from([sg.identity()]);
        while let Some(a) = queue.pop_front() {
            let fa = Elem::from_index(table[a.index()] as usize);
            for &(s, fs) in images {
                let p = sg.mul(a, s);
                let fp = tg.mul(fa, fs);
                match table[p.index()] {
                    UNDEFINED => {
                        table[p.index()] = fp.index() as u32;
                        queue.push_back(p);
                    }
                    existing if existing as usize != fp.index() => {
                        return Err(Error::NotHomomorphism(format!(
                            "generator images are inconsistent at {}",
                            sg.format(p)
                        )));
                    }
                    _ => {}
                }
            }
        }
        if let Some(&missing) = source.members().iter().find(|e| table[e.index()] == UNDEFINED) {
            return Err(Error::NotHomomorphism(format!(
                "generators do not reach {}",
                sg.format(missing)
            )));
        }
        let hom = Self::materialize(source, target, |e| Elem::from_index(table[e.index()] as usize))?;
        hom.check_homomorphism()?;
        Ok(hom)
    }

    /// Explicit element-image table; every source element must appear once.
    pub fn from_pairs(source: &Subgroup, target: &Subgroup, pairs: &[(Elem, Elem)]) -> Result<Self> {
        let sg = source.ambient();
        let mut table = vec![UNDEFINED; sg.order()];
        for &(s, t) in pairs {
            source.require(s, "the homomorphism source")?;
            if std::mem::replace(&mut table[s.index()], t.index() as u32) != UNDEFINED {
                return Err(Error::NotHomomorphism(format!("{} is mapped twice", sg.format(s))));
            }
        }
        if let Some(&missing) = source.members().iter().find(|e| table[e.index()] == UNDEFINED) {
            return Err(Error::NotHomomorphism(format!(
                "no image given for {}",
                sg.format(missing)
            )));
        }
        Self::from_fn(source, target, |e| Elem::from_index(table[e.index()] as usize))
    }

    pub fn source(&self) -> &Subgroup {
        &self.source
    }

    pub fn target(&self) -> &Subgroup {
        &self.target
    }

    pub fn apply(&self, e: Elem) -> Elem {
        self.try_apply(e).expect("element outside the homomorphism's source")
    }

    pub fn try_apply(&self, e: Elem) -> Option<Elem> {
        match self.table.get(e.index()) {
            Some(&v) if v != UNDEFINED => Some(Elem::from_index(v as usize)),
            _ => None,
        }
    }

    pub fn check_homomorphism(&self) -> Result<()> {
        let sg = self.source.ambient();
        let tg = self.target.ambient();
        let members = self.source.members();
        let check = |a: Elem, b: Elem| -> Result<()> {
            if self.apply(sg.mul(a, b)) != tg.mul(self.apply(a), self.apply(b)) {
                return Err(Error::NotHomomorphism(format!(
                    "h({}·{}) ≠ h({})·h({})",
                    sg.format(a),
                    sg.format(b),
                    sg.format(a),
                    sg.format(b)
                )));
            }
            Ok(())
        };
        if self.apply(sg.identity()) != tg.identity() {
            return Err(Error::NotHomomorphism("identity is not preserved".into()));
        }
        if members.len() <= EXHAUSTIVE_CHECK_THRESHOLD {
            for &a in members {
                for &b in members {
                    check(a, b)?;
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(CHECK_SEED);
            for _ in 0..SAMPLED_CHECKS {
                let a = members[rng.gen_range(0..members.len())];
                let b = members[rng.gen_range(0..members.len())];
                check(a, b)?;
            }
        }
        Ok(())
    }

    /// `{ h(x) : x ∈ s }`
    pub fn image(&self, s: &Subgroup) -> Result<Subgroup> {
        if !s.is_subset_of(&self.source) {
            return Err(Error::Mismatch("image of a set outside the source".into()));
        }
        Ok(Subgroup::from_unsorted(
            self.target.ambient().clone(),
            s.members().iter().map(|&e| self.apply(e)),
        ))
    }

    /// `{ x ∈ source : h(x) ∈ t }`
    pub fn preimage(&self, t: &Subgroup) -> Result<Subgroup> {
        if !t.same_ambient(&self.target) {
            return Err(Error::Mismatch("preimage of a subgroup of another group".into()));
        }
        Ok(Subgroup::from_unsorted(
            self.source.ambient().clone(),
            self.source
                .members()
                .iter()
                .copied()
                .filter(|&e| t.contains(self.apply(e))),
        ))
    }

    pub fn is_surjective(&self) -> bool {
        self.image(&self.source).map(|im| im == self.target).unwrap_or(false)
    }

    /// Restriction to smaller source and target; fails if some image leaves
    /// the new target.
    pub fn restrict(&self, source: &Subgroup, target: &Subgroup) -> Result<Self> {
        if !source.is_subset_of(&self.source) || !target.same_ambient(&self.target) {
            return Err(Error::Mismatch("restriction outside the original domain".into()));
        }
        Self::materialize(source, target, |e| self.apply(e))
    }

    /// `e ↦ x·h(e)·x⁻¹` for `x` in the target.
    pub fn conjugated(&self, x: Elem) -> Result<Self> {
        self.target.require(x, "the homomorphism target")?;
        let tg = self.target.ambient();
        Self::materialize(&self.source, &self.target, |e| tg.conj(x, self.apply(e)))
    }
}
