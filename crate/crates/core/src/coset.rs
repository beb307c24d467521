//! Double coset decompositions `H\G/K` with canonical representatives.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::group::Elem;
use crate::subgroup::Subgroup;

const UNLABELED: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCoset {
    /// Key-minimal member.
    pub representative: Elem,
    /// Sorted members.
    pub members: Vec<Elem>,
}

/// Partition of a carrier subgroup into `left·g·right` cosets. Each element
/// carries a witness `(h, k)` with `g = h·representative·k`.
#[derive(Debug, Clone)]
pub struct DoubleCosetDecomposition {
    carrier: Subgroup,
    left: Subgroup,
    right: Subgroup,
    cosets: Vec<DoubleCoset>,
    labels: Vec<u32>,
    witnesses: Vec<(Elem, Elem)>,
}

impl DoubleCosetDecomposition {
    pub fn carrier(&self) -> &Subgroup {
        &self.carrier
    }

    pub fn left(&self) -> &Subgroup {
        &self.left
    }

    pub fn right(&self) -> &Subgroup {
        &self.right
    }

    pub fn cosets(&self) -> &[DoubleCoset] {
        &self.cosets
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn representatives(&self) -> impl Iterator<Item = Elem> + '_ {
        self.cosets.iter().map(|c| c.representative)
    }

    /// Index of the coset containing `g`, or `None` outside the carrier.
    pub fn coset_of(&self, g: Elem) -> Option<usize> {
        match self.labels.get(g.index()) {
            Some(&l) if l != UNLABELED => Some(l as usize),
            _ => None,
        }
    }

    /// `(h, k)` with `g = h·r·k`, `r` the representative of `g`'s coset.
    pub fn witness(&self, g: Elem) -> Option<(Elem, Elem)> {
        self.coset_of(g).map(|_| self.witnesses[g.index()])
    }
}

/// Decomposes `carrier` into double cosets `left·g·right`. Cosets are
/// ordered by representative key and every run re-checks the partition.
pub fn double_cosets(carrier: &Subgroup, left: &Subgroup, right: &Subgroup) -> Result<DoubleCosetDecomposition> {
    if !left.is_subset_of(carrier) || !right.is_subset_of(carrier) {
        return Err(Error::Mismatch(
            "double coset sides must be subgroups of the carrier".into(),
        ));
    }
    let g = carrier.ambient();
    let id = g.identity();
    let mut labels = vec![UNLABELED; g.order()];
    let mut witnesses = vec![(id, id); g.order()];
    let mut cosets = Vec::new();
    let left_gens = left.generators();
    let right_gens = right.generators();
    // members are visited in key order, so each new coset starts at its minimum
    for &start in carrier.members() {
        if labels[start.index()] != UNLABELED {
            continue;
        }
        let label = cosets.len() as u32;
        labels[start.index()] = label;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let (h, k) = witnesses[x.index()];
            let moves = left_gens
                .iter()
                .map(|&s| (g.mul(s, x), (g.mul(s, h), k)))
                .chain(right_gens.iter().map(|&t| (g.mul(x, t), (h, g.mul(k, t)))));
            for (y, w) in moves {
                match labels[y.index()] {
                    UNLABELED => {
                        labels[y.index()] = label;
                        witnesses[y.index()] = w;
                        members.push(y);
                        queue.push_back(y);
                    }
                    l if l != label => {
                        return Err(Error::InvariantViolation(format!(
                            "double cosets of {} and {} overlap",
                            g.format(start),
                            g.format(y)
                        )));
                    }
                    _ => {}
                }
            }
        }
        members.sort();
        cosets.push(DoubleCoset {
            representative: start,
            members,
        });
    }
    let covered: usize = cosets.iter().map(|c| c.members.len()).sum();
    if covered != carrier.order() {
        return Err(Error::InvariantViolation(format!(
            "double cosets cover {covered} elements of a carrier of order {}",
            carrier.order()
        )));
    }
    Ok(DoubleCosetDecomposition {
        carrier: carrier.clone(),
        left: left.clone(),
        right: right.clone(),
        cosets,
        labels,
        witnesses,
    })
}

/// The single double coset `left·x·right`, sorted.
pub fn double_coset_of(left: &Subgroup, x: Elem, right: &Subgroup) -> Result<Vec<Elem>> {
    if !left.same_ambient(right) {
        return Err(Error::Mismatch("double coset sides live in different groups".into()));
    }
    let g = left.ambient();
    crate::subgroup::check_in_ambient(g, x)?;
    let mut seen = vec![false; g.order()];
    seen[x.index()] = true;
    let mut members = vec![x];
    let mut queue = VecDeque::from([x]);
    while let Some(y) = queue.pop_front() {
        let next = left
            .generators()
            .iter()
            .map(|&s| g.mul(s, y))
            .chain(right.generators().iter().map(|&t| g.mul(y, t)));
        for z in next {
            if !std::mem::replace(&mut seen[z.index()], true) {
                members.push(z);
                queue.push_back(z);
            }
        }
    }
    members.sort();
    Ok(members)
}

/// The coset-level bijection `H\G/K → ˣH\G/ʸK` induced by `g ↦ x·g·y⁻¹`.
#[derive(Debug, Clone)]
pub struct CosetBijection {
    /// `forward[i]` is the index of the image of coset `i` in `target`.
    pub forward: Vec<usize>,
    pub target: DoubleCosetDecomposition,
}

/// Builds the map induced by `g ↦ x·g·y⁻¹` and certifies it: every coset must
/// land inside one target coset, and `g ↦ x⁻¹·g·y` must invert it.
pub fn conjugated_double_coset_map(d: &DoubleCosetDecomposition, x: Elem, y: Elem) -> Result<CosetBijection> {
    let carrier = d.carrier();
    carrier.require(x, "the double coset carrier")?;
    carrier.require(y, "the double coset carrier")?;
    let g = carrier.ambient();
    let (x_inv, y_inv) = (g.inv(x), g.inv(y));
    let target = double_cosets(carrier, &d.left().conjugate(x)?, &d.right().conjugate(y)?)?;

    let image_label = |coset: &DoubleCoset, dec: &DoubleCosetDecomposition, a: Elem, b: Elem| -> Result<usize> {
        let mut label = None;
        for &m in &coset.members {
            let l = dec
                .coset_of(g.mul(g.mul(a, m), b))
                .ok_or_else(|| Error::InvariantViolation("conjugated coset leaves the carrier".into()))?;
            match label {
                None => label = Some(l),
                Some(prev) if prev != l => {
                    return Err(Error::InvariantViolation(format!(
                        "coset of {} is not mapped to a single coset",
                        g.format(coset.representative)
                    )))
                }
                _ => {}
            }
        }
        Ok(label.expect("cosets are non-empty"))
    };

    let forward = d
        .cosets()
        .iter()
        .map(|c| image_label(c, &target, x, y_inv))
        .collect::<Result<Vec<_>>>()?;
    let backward = target
        .cosets()
        .iter()
        .map(|c| image_label(c, d, x_inv, y))
        .collect::<Result<Vec<_>>>()?;
    for (i, &j) in forward.iter().enumerate() {
        if backward[j] != i {
            return Err(Error::InvariantViolation(
                "conjugation map is not inverted by its reverse".into(),
            ));
        }
        if d.cosets()[i].members.len() != target.cosets()[j].members.len() {
            return Err(Error::InvariantViolation(
                "conjugation map changes a coset's size".into(),
            ));
        }
    }
    if forward.len() != target.len() {
        return Err(Error::InvariantViolation("conjugation map is not surjective".into()));
    }
    Ok(CosetBijection { forward, target })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::FiniteGroup;

    fn gl2_2() -> (Arc<FiniteGroup>, Subgroup, Subgroup) {
        let g = Arc::new(FiniteGroup::general_linear(2, 2).unwrap());
        let borel = Subgroup::closure(&g, &[g.parse("[1 1; 0 1]").unwrap()]).unwrap();
        (g.clone(), Subgroup::full(&g), borel)
    }

    #[test]
    fn full_sides_give_one_coset() {
        let (g, full, _) = gl2_2();
        let d = double_cosets(&full, &full, &full).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.cosets()[0].members.len(), 6);
        // the key-minimal element, not necessarily the identity
        assert_eq!(d.cosets()[0].representative, Elem::from_index(0));
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let s3_full = Subgroup::full(&s3);
        let d = double_cosets(&s3_full, &s3_full, &s3_full).unwrap();
        assert_eq!(d.cosets()[0].representative, s3.identity());
        let _ = g;
    }

    #[test]
    fn borel_double_cosets_in_gl2_f2() {
        let (g, full, borel) = gl2_2();
        let d = double_cosets(&full, &borel, &borel).unwrap();
        let mut sizes: Vec<usize> = d.cosets().iter().map(|c| c.members.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 4]);
        for &e in full.members() {
            let (h, k) = d.witness(e).unwrap();
            let r = d.cosets()[d.coset_of(e).unwrap()].representative;
            assert!(borel.contains(h) && borel.contains(k));
            assert_eq!(g.mul(g.mul(h, r), k), e);
        }
    }

    #[test]
    fn trivial_sides_give_singletons_and_plain_map() {
        let (g, full, _) = gl2_2();
        let triv = Subgroup::trivial(&g);
        let d = double_cosets(&full, &triv, &triv).unwrap();
        assert_eq!(d.len(), 6);
        let x = g.parse("[1 1; 0 1]").unwrap();
        let y = g.parse("[0 1; 1 1]").unwrap();
        let map = conjugated_double_coset_map(&d, x, y).unwrap();
        for (i, c) in d.cosets().iter().enumerate() {
            let image = g.mul(g.mul(x, c.representative), g.inv(y));
            assert_eq!(map.target.cosets()[map.forward[i]].members, vec![image]);
        }
    }

    #[test]
    fn identity_conjugation_is_identity_map() {
        let (g, full, borel) = gl2_2();
        let d = double_cosets(&full, &borel, &borel).unwrap();
        let map = conjugated_double_coset_map(&d, g.identity(), g.identity()).unwrap();
        assert_eq!(map.forward, vec![0, 1]);
    }

    #[test]
    fn antidiagonal_conjugation_gives_opposite_borel() {
        let (g, full, borel) = gl2_2();
        let w = g.parse("[0 1; 1 0]").unwrap();
        let d = double_cosets(&full, &borel, &borel).unwrap();
        let map = conjugated_double_coset_map(&d, w, w).unwrap();
        let opposite = Subgroup::closure(&g, &[g.parse("[1 0; 1 1]").unwrap()]).unwrap();
        assert_eq!(map.target.left(), &opposite);
        assert_eq!(map.target.right(), &opposite);
        let mut sizes: Vec<usize> = map.target.cosets().iter().map(|c| c.members.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 4]);
    }

    #[test]
    fn single_coset_matches_decomposition() {
        let (g, full, borel) = gl2_2();
        let d = double_cosets(&full, &borel, &borel).unwrap();
        for c in d.cosets() {
            assert_eq!(double_coset_of(&borel, c.representative, &borel).unwrap(), c.members);
        }
        let _ = g;
    }
}
