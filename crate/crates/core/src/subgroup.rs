use std::collections::VecDeque;
use std::fmt;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, CHECK_SEED};

/// A subgroup of an ambient [`FiniteGroup`], stored as a sorted member list
/// plus a membership mask. Cloning is cheap.
#[derive(Clone)]
pub struct Subgroup {
    ambient: Arc<FiniteGroup>,
    members: Arc<[Elem]>,
    mask: Arc<FixedBitSet>,
    generators: Arc<OnceLock<Vec<Elem>>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ambient, &other.ambient) && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self.members.iter().take(8).map(|&e| self.ambient.format(e)).collect();
        write!(
            f,
            "Subgroup(order {} of {}: {}{})",
            self.order(),
            self.ambient.order(),
            shown.join(", "),
            if self.order() > 8 { ", .." } else { "" }
        )
    }
}

impl Subgroup {
    pub fn full(ambient: &Arc<FiniteGroup>) -> Self {
        let members: Vec<Elem> = ambient.elements().collect();
        Self::from_sorted(ambient.clone(), members)
    }

    pub fn trivial(ambient: &Arc<FiniteGroup>) -> Self {
        Self::from_sorted(ambient.clone(), vec![ambient.identity()])
    }

    /// Smallest subgroup containing `generators`, by worklist closure under
    /// product and inverse.
    pub fn closure(ambient: &Arc<FiniteGroup>, generators: &[Elem]) -> Result<Self> {
        for &g in generators {
            check_in_ambient(ambient, g)?;
        }
        let mut gens: Vec<Elem> = generators.to_vec();
        gens.extend(generators.iter().map(|&g| ambient.inv(g)));
        gens.sort();
        gens.dedup();
        let mut mask = FixedBitSet::with_capacity(ambient.order());
        let mut queue = VecDeque::from([ambient.identity()]);
        mask.insert(ambient.identity().index());
        while let Some(a) = queue.pop_front() {
            for &g in &gens {
                let p = ambient.mul(a, g);
                if !mask.put(p.index()) {
                    queue.push_back(p);
                }
            }
        }
        Ok(Self::from_mask(ambient.clone(), mask))
    }

    /// Validates that `elements` form a subgroup.
    pub fn from_elements(ambient: &Arc<FiniteGroup>, elements: &[Elem]) -> Result<Self> {
        let closure = Self::closure(ambient, elements)?;
        let mut members = elements.to_vec();
        members.sort();
        members.dedup();
        if closure.order() != members.len() {
            return Err(Error::InvalidGroup(format!(
                "the {} given elements are not closed (they generate {} elements)",
                members.len(),
                closure.order()
            )));
        }
        Ok(closure)
    }

    pub(crate) fn from_sorted(ambient: Arc<FiniteGroup>, members: Vec<Elem>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        let mut mask = FixedBitSet::with_capacity(ambient.order());
        for &m in &members {
            mask.insert(m.index());
        }
        Subgroup {
            ambient,
            members: members.into(),
            mask: Arc::new(mask),
            generators: Arc::new(OnceLock::new()),
        }
    }

    pub(crate) fn from_mask(ambient: Arc<FiniteGroup>, mask: FixedBitSet) -> Self {
        let members: Vec<Elem> = mask.ones().map(Elem::from_index).collect();
        Subgroup {
            ambient,
            members: members.into(),
            mask: Arc::new(mask),
            generators: Arc::new(OnceLock::new()),
        }
    }

    /// Collects a set that is known to be a subgroup (image, preimage,
    /// conjugate, intersection).
    pub(crate) fn from_unsorted(ambient: Arc<FiniteGroup>, elements: impl IntoIterator<Item = Elem>) -> Self {
        let mut mask = FixedBitSet::with_capacity(ambient.order());
        for e in elements {
            mask.insert(e.index());
        }
        Self::from_mask(ambient, mask)
    }

    pub fn ambient(&self) -> &Arc<FiniteGroup> {
        &self.ambient
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn contains(&self, e: Elem) -> bool {
        e.index() < self.ambient.order() && self.mask.contains(e.index())
    }

    pub fn is_full(&self) -> bool {
        self.order() == self.ambient.order()
    }

    pub fn same_ambient(&self, other: &Subgroup) -> bool {
        Arc::ptr_eq(&self.ambient, &other.ambient)
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.same_ambient(other) && self.mask.is_subset(&other.mask)
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        if !self.same_ambient(other) {
            return Err(Error::Mismatch("intersection of subgroups of different groups".into()));
        }
        let mut mask = (*self.mask).clone();
        mask.intersect_with(&other.mask);
        Ok(Self::from_mask(self.ambient.clone(), mask))
    }

    /// `{ x·h·x⁻¹ : h ∈ self }`
    pub fn conjugate(&self, x: Elem) -> Result<Subgroup> {
        check_in_ambient(&self.ambient, x)?;
        let g = &self.ambient;
        Ok(Self::from_unsorted(
            g.clone(),
            self.members.iter().map(|&h| g.conj(x, h)),
        ))
    }

    pub(crate) fn require(&self, e: Elem, context: &str) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::NotMember {
                element: if e.index() < self.ambient.order() {
                    self.ambient.format(e)
                } else {
                    format!("#{}", e.index())
                },
                context: context.into(),
            })
        }
    }

    /// A small generating set, chosen greedily from a seeded shuffle of the
    /// members so that the result is deterministic.
    pub fn generators(&self) -> &[Elem] {
        self.generators.get_or_init(|| {
            let g = &self.ambient;
            let mut order: Vec<Elem> = self.members.iter().copied().filter(|&e| e != g.identity()).collect();
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(CHECK_SEED));
            let mut reached = FixedBitSet::with_capacity(g.order());
            reached.insert(g.identity().index());
            let mut reached_count = 1;
            let mut gens = Vec::new();
            for candidate in order {
                if reached_count == self.order() {
                    break;
                }
                if reached.contains(candidate.index()) {
                    continue;
                }
                gens.push(candidate);
                // the reached set is a subgroup, so extending it by the new
                // generator means right-multiplying everything by all gens
                let mut queue: VecDeque<Elem> = reached.ones().map(Elem::from_index).collect();
                while let Some(a) = queue.pop_front() {
                    for &s in &gens {
                        let p = g.mul(a, s);
                        if !reached.put(p.index()) {
                            reached_count += 1;
                            queue.push_back(p);
                        }
                    }
                }
            }
            gens
        })
    }
}

pub(crate) fn check_in_ambient(ambient: &FiniteGroup, e: Elem) -> Result<()> {
    if ambient.contains(e) {
        Ok(())
    } else {
        Err(Error::NotMember {
            element: format!("#{}", e.index()),
            context: "the ambient group".into(),
        })
    }
}
