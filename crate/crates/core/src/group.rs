//! Finite groups with an explicitly enumerated carrier.
//!
//! Every element is identified by a canonical key (permutation images,
//! row-major matrix entries, or a Cayley index). The carrier is stored sorted
//! by key, so an [`Elem`] handle is simply the rank of its key and comparing
//! handles compares keys.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Canonical serialized form of a group element.
pub type Key = SmallVec<[u32; 4]>;

/// Carriers up to this size get exhaustive associativity and homomorphism
/// checks; larger ones are sampled.
pub const EXHAUSTIVE_CHECK_THRESHOLD: usize = 4096;

/// Number of random pairs/triples drawn when a check is sampled.
pub const SAMPLED_CHECKS: usize = 100_000;

/// Carriers up to this size keep a dense multiplication table.
const DENSE_TABLE_LIMIT: usize = 1024;

/// Upper bound on the number of candidate matrices `general_linear` will scan.
const MAX_MATRIX_SCAN: u64 = 20_000_000;

pub(crate) const CHECK_SEED: u64 = 0x5a49_5044_4154_4131;

/// Handle to an element of a [`FiniteGroup`]: the rank of its key in the
/// sorted carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u32);

impl Elem {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(index: usize) -> Self {
        Elem(index as u32)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Backend {
    Cayley,
    Permutation { degree: usize },
    Matrix { dim: usize, modulus: u32 },
}

impl Backend {
    pub fn tag(&self) -> &'static str {
        match self {
            Backend::Cayley => "cayley-table",
            Backend::Permutation { .. } => "permutation",
            Backend::Matrix { .. } => "matrix-mod-m",
        }
    }
}

pub struct FiniteGroup {
    backend: Backend,
    keys: Vec<Key>,
    lookup: HashMap<Key, Elem>,
    identity: Elem,
    inverses: Vec<Elem>,
    table: Option<Vec<u32>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("backend", &self.backend)
            .field("order", &self.order())
            .finish()
    }
}

impl FiniteGroup {
    /// Builds a group from a Cayley table; `rows[a][b]` is the index of `a·b`.
    pub fn from_cayley_table(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty Cayley table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&v| v as usize >= n) {
                return Err(Error::InvalidGroup(format!("entry {bad} in row {i} is out of range")));
            }
            table.extend_from_slice(row);
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e * n + a] as usize == a && table[a * n + e] as usize == a))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a * n + b] as usize == identity && table[b * n + a] as usize == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverses.push(Elem::from_index(inv));
        }
        let keys: Vec<Key> = (0..n as u32).map(|i| SmallVec::from_slice(&[i])).collect();
        let lookup = keys
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), Elem::from_index(i)))
            .collect();
        let group = FiniteGroup {
            backend: Backend::Cayley,
            keys,
            lookup,
            identity: Elem::from_index(identity),
            inverses,
            table: Some(table),
        };
        group.check_associativity()?;
        Ok(group)
    }

    /// Permutation group on `degree` points generated by `generators`, each
    /// given as its 0-based image list.
    pub fn from_permutations(degree: usize, generators: &[Vec<u32>]) -> Result<Self> {
        Self::from_permutations_within(degree, generators, usize::MAX)
    }

    /// As [`FiniteGroup::from_permutations`], failing with
    /// [`Error::TooLarge`] once the closure passes `limit` elements.
    pub fn from_permutations_within(degree: usize, generators: &[Vec<u32>], limit: usize) -> Result<Self> {
        for g in generators {
            validate_permutation(degree, g)?;
        }
        let backend = Backend::Permutation { degree };
        let gens: Vec<Key> = generators.iter().map(|g| SmallVec::from_slice(g)).collect();
        let keys = close_keys(&backend, identity_key(&backend), &gens, limit)?;
        Ok(Self::from_keys(backend, keys))
    }

    /// Full symmetric group on `degree` points.
    pub fn symmetric(degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidGroup("symmetric group needs at least one point".into()));
        }
        let mut gens = Vec::new();
        if degree > 1 {
            let mut swap: Vec<u32> = (0..degree as u32).collect();
            swap.swap(0, 1);
            let cycle: Vec<u32> = (0..degree as u32).map(|i| (i + 1) % degree as u32).collect();
            gens.push(swap);
            gens.push(cycle);
        }
        Self::from_permutations(degree, &gens)
    }

    /// Matrix group over ℤ/`modulus` generated by row-major `generators`.
    pub fn from_matrices(dim: usize, modulus: u32, generators: &[Vec<u32>]) -> Result<Self> {
        Self::from_matrices_within(dim, modulus, generators, usize::MAX)
    }

    pub fn from_matrices_within(dim: usize, modulus: u32, generators: &[Vec<u32>], limit: usize) -> Result<Self> {
        validate_matrix_shape(dim, modulus)?;
        let backend = Backend::Matrix { dim, modulus };
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.len() != dim * dim {
                return Err(Error::InvalidGroup(format!(
                    "matrix generator has {} entries, expected {}",
                    g.len(),
                    dim * dim
                )));
            }
            let key: Key = g.iter().map(|&v| v % modulus).collect();
            if !is_unit_mod(determinant_mod(&key, dim, modulus), modulus) {
                return Err(Error::InvalidGroup(format!(
                    "matrix generator {} is not invertible mod {modulus}",
                    format_matrix(&key, dim)
                )));
            }
            gens.push(key);
        }
        let keys = close_keys(&backend, identity_key(&backend), &gens, limit)?;
        Ok(Self::from_keys(backend, keys))
    }

    /// All invertible `dim`×`dim` matrices over ℤ/`modulus`, by enumeration.
    pub fn general_linear(dim: usize, modulus: u32) -> Result<Self> {
        Self::general_linear_within(dim, modulus, usize::MAX)
    }

    pub fn general_linear_within(dim: usize, modulus: u32, limit: usize) -> Result<Self> {
        validate_matrix_shape(dim, modulus)?;
        let cells = dim * dim;
        let candidates = (modulus as u64).checked_pow(cells as u32).unwrap_or(u64::MAX);
        if candidates > MAX_MATRIX_SCAN {
            return Err(Error::InvalidGroup(format!(
                "GL_{dim}(Z/{modulus}) is too large to enumerate"
            )));
        }
        let mut keys = Vec::new();
        let mut entry: Key = SmallVec::from_elem(0, cells);
        for _ in 0..candidates {
            if is_unit_mod(determinant_mod(&entry, dim, modulus), modulus) {
                if keys.len() == limit {
                    return Err(Error::TooLarge { limit });
                }
                keys.push(entry.clone());
            }
            for cell in entry.iter_mut().rev() {
                *cell += 1;
                if *cell < modulus {
                    break;
                }
                *cell = 0;
            }
        }
        Ok(Self::from_keys(Backend::Matrix { dim, modulus }, keys))
    }

    fn from_keys(backend: Backend, mut keys: Vec<Key>) -> Self {
        keys.sort();
        keys.dedup();
        let lookup: HashMap<Key, Elem> = keys
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), Elem::from_index(i)))
            .collect();
        let identity = lookup[&identity_key(&backend)];
        let mut group = FiniteGroup {
            backend,
            keys,
            lookup,
            identity,
            inverses: Vec::new(),
            table: None,
        };
        let n = group.order();
        if n <= DENSE_TABLE_LIMIT {
            let mut table = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    let key = group.key_product(&group.keys[a], &group.keys[b]);
                    table.push(group.lookup[&key].0);
                }
            }
            group.table = Some(table);
        }
        group.inverses = (0..n)
            .map(|i| {
                let a = Elem::from_index(i);
                let mut power = a;
                loop {
                    let next = group.mul(power, a);
                    if next == group.identity {
                        break power;
                    }
                    power = next;
                }
            })
            .collect();
        group
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn order(&self) -> usize {
        self.keys.len()
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order()).map(Elem::from_index)
    }

    pub fn contains(&self, e: Elem) -> bool {
        e.index() < self.order()
    }

    pub fn key(&self, e: Elem) -> &[u32] {
        &self.keys[e.index()]
    }

    pub fn element_from_key(&self, key: &[u32]) -> Option<Elem> {
        self.lookup.get(key).copied()
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if let Some(table) = &self.table {
            return Elem(table[a.index() * self.order() + b.index()]);
        }
        let key = self.key_product(&self.keys[a.index()], &self.keys[b.index()]);
        *self.lookup.get(&key).expect("carrier is closed under multiplication")
    }

    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a.index()]
    }

    /// `x·a·x⁻¹`
    pub fn conj(&self, x: Elem, a: Elem) -> Elem {
        self.mul(self.mul(x, a), self.inv(x))
    }

    pub fn product<I: IntoIterator<Item = Elem>>(&self, factors: I) -> Elem {
        factors.into_iter().fold(self.identity, |acc, f| self.mul(acc, f))
    }

    fn key_product(&self, a: &[u32], b: &[u32]) -> Key {
        match self.backend {
            // (a·b)(i) = a(b(i))
            Backend::Permutation { .. } => b.iter().map(|&i| a[i as usize]).collect(),
            Backend::Matrix { dim, modulus } => matrix_product(a, b, dim, modulus),
            Backend::Cayley => {
                let n = self.order();
                let t = self.table.as_ref().expect("Cayley groups keep their table");
                SmallVec::from_slice(&[t[a[0] as usize * n + b[0] as usize]])
            }
        }
    }

    /// Exhaustive identity and inverse laws plus the associativity check.
    pub fn check_axioms(&self) -> Result<()> {
        for a in self.elements() {
            if self.mul(self.identity, a) != a || self.mul(a, self.identity) != a {
                return Err(Error::InvalidGroup(format!("identity law fails at {}", self.format(a))));
            }
            let b = self.inv(a);
            if self.mul(a, b) != self.identity || self.mul(b, a) != self.identity {
                return Err(Error::InvalidGroup(format!("inverse law fails at {}", self.format(a))));
            }
        }
        self.check_associativity()
    }

    /// Light's test against a generating set when the carrier is at most
    /// [`EXHAUSTIVE_CHECK_THRESHOLD`]; this certifies every triple. Larger
    /// carriers get [`SAMPLED_CHECKS`] random triples.
    pub fn check_associativity(&self) -> Result<()> {
        let n = self.order();
        let fail = |a: Elem, b: Elem, c: Elem| {
            Err(Error::InvalidGroup(format!(
                "associativity fails at ({}, {}, {})",
                self.format(a),
                self.format(b),
                self.format(c)
            )))
        };
        if n <= EXHAUSTIVE_CHECK_THRESHOLD {
            for g in self.magma_generators() {
                for a in self.elements() {
                    let ag = self.mul(a, g);
                    for b in self.elements() {
                        if self.mul(ag, b) != self.mul(a, self.mul(g, b)) {
                            return fail(a, g, b);
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(CHECK_SEED);
            for _ in 0..SAMPLED_CHECKS {
                let a = Elem::from_index(rng.gen_range(0..n));
                let b = Elem::from_index(rng.gen_range(0..n));
                let c = Elem::from_index(rng.gen_range(0..n));
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return fail(a, b, c);
                }
            }
        }
        Ok(())
    }

    /// Greedy generating set under multiplication alone.
    fn magma_generators(&self) -> Vec<Elem> {
        let n = self.order();
        let mut reached = vec![false; n];
        let mut gens = Vec::new();
        for candidate in self.elements() {
            if reached[candidate.index()] {
                continue;
            }
            gens.push(candidate);
            let mut queue: VecDeque<Elem> = gens.iter().copied().collect();
            for &g in &gens {
                reached[g.index()] = true;
            }
            while let Some(a) = queue.pop_front() {
                for &g in &gens {
                    let p = self.mul(a, g);
                    if !reached[p.index()] {
                        reached[p.index()] = true;
                        queue.push_back(p);
                    }
                }
            }
        }
        gens
    }

    /// Backend-canonical text: cycle notation, `[a b; c d]`, or the Cayley index.
    pub fn format(&self, e: Elem) -> String {
        let key = self.key(e);
        match self.backend {
            Backend::Cayley => key[0].to_string(),
            Backend::Permutation { .. } => format_permutation(key),
            Backend::Matrix { dim, .. } => format_matrix(key, dim),
        }
    }

    pub fn parse(&self, text: &str) -> Result<Elem> {
        let key = match self.backend {
            Backend::Cayley => {
                let idx: u32 = text.trim().parse().map_err(|_| Error::Parse {
                    text: text.into(),
                    reason: "expected a Cayley index".into(),
                })?;
                SmallVec::from_slice(&[idx])
            }
            Backend::Permutation { degree } => parse_permutation(text, degree)?,
            Backend::Matrix { dim, modulus } => parse_matrix(text, dim, modulus)?,
        };
        self.element_from_key(&key).ok_or_else(|| Error::NotMember {
            element: text.trim().into(),
            context: "the group".into(),
        })
    }
}

/// 0-based image list of a permutation written in 1-based cycle notation.
pub fn parse_permutation_images(text: &str, degree: usize) -> Result<Vec<u32>> {
    Ok(parse_permutation(text, degree)?.to_vec())
}

/// Row-major entries of a matrix written as `[a b; c d]`, reduced mod `modulus`.
pub fn parse_matrix_entries(text: &str, dim: usize, modulus: u32) -> Result<Vec<u32>> {
    Ok(parse_matrix(text, dim, modulus)?.to_vec())
}

fn identity_key(backend: &Backend) -> Key {
    match *backend {
        Backend::Cayley => unreachable!("Cayley identity comes from the table"),
        Backend::Permutation { degree } => (0..degree as u32).collect(),
        Backend::Matrix { dim, .. } => (0..dim * dim).map(|c| u32::from(c / dim == c % dim)).collect(),
    }
}

fn close_keys(backend: &Backend, identity: Key, gens: &[Key], limit: usize) -> Result<Vec<Key>> {
    let product = |a: &[u32], b: &[u32]| -> Key {
        match *backend {
            Backend::Permutation { .. } => b.iter().map(|&i| a[i as usize]).collect(),
            Backend::Matrix { dim, modulus } => matrix_product(a, b, dim, modulus),
            Backend::Cayley => unreachable!(),
        }
    };
    let mut seen: HashSet<Key> = HashSet::new();
    let mut out = vec![identity.clone()];
    seen.insert(identity);
    let mut cursor = 0;
    while cursor < out.len() {
        let a = out[cursor].clone();
        cursor += 1;
        for g in gens {
            let p = product(&a, g);
            if seen.insert(p.clone()) {
                if out.len() == limit {
                    return Err(Error::TooLarge { limit });
                }
                out.push(p);
            }
        }
    }
    Ok(out)
}

fn matrix_product(a: &[u32], b: &[u32], dim: usize, modulus: u32) -> Key {
    let m = modulus as u64;
    let mut out = SmallVec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let s: u64 = (0..dim)
                .map(|k| a[i * dim + k] as u64 * b[k * dim + j] as u64 % m)
                .sum();
            out.push((s % m) as u32);
        }
    }
    out
}

fn validate_matrix_shape(dim: usize, modulus: u32) -> Result<()> {
    if dim == 0 || dim > 4 {
        return Err(Error::InvalidGroup(format!("unsupported matrix dimension {dim}")));
    }
    if !(2..=(1 << 20)).contains(&modulus) {
        return Err(Error::InvalidGroup(format!("unsupported modulus {modulus}")));
    }
    Ok(())
}

fn validate_permutation(degree: usize, images: &[u32]) -> Result<()> {
    if images.len() != degree {
        return Err(Error::InvalidGroup(format!(
            "permutation has {} images, expected {degree}",
            images.len()
        )));
    }
    let mut seen = vec![false; degree];
    for &i in images {
        if i as usize >= degree || std::mem::replace(&mut seen[i as usize], true) {
            return Err(Error::InvalidGroup(format!("{images:?} is not a permutation")));
        }
    }
    Ok(())
}

/// Determinant of a row-major square matrix, reduced mod `modulus`.
pub(crate) fn determinant_mod(entries: &[u32], dim: usize, modulus: u32) -> u32 {
    let m = modulus as i64;
    fn det(rows: &[Vec<i64>], m: i64) -> i64 {
        let n = rows.len();
        if n == 1 {
            return rows[0][0].rem_euclid(m);
        }
        let mut total = 0i64;
        for col in 0..n {
            let minor: Vec<Vec<i64>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != col)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let term = rows[0][col] * det(&minor, m) % m;
            total = if col % 2 == 0 { total + term } else { total - term }.rem_euclid(m);
        }
        total
    }
    let rows: Vec<Vec<i64>> = entries
        .chunks(dim)
        .map(|r| r.iter().map(|&v| v as i64).collect())
        .collect();
    det(&rows, m) as u32
}

pub(crate) fn is_unit_mod(value: u32, modulus: u32) -> bool {
    let (mut a, mut b) = (value as u64, modulus as u64);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a == 1
}

fn format_permutation(images: &[u32]) -> String {
    let mut seen = vec![false; images.len()];
    let mut out = String::new();
    for start in 0..images.len() {
        if seen[start] || images[start] as usize == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push((i + 1).to_string());
            i = images[i] as usize;
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

fn parse_permutation(text: &str, degree: usize) -> Result<Key> {
    let err = |reason: &str| Error::Parse {
        text: text.into(),
        reason: reason.into(),
    };
    let mut perm: Vec<u32> = (0..degree as u32).collect();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(err("empty permutation literal"));
    }
    while !rest.is_empty() {
        let body_start = rest.strip_prefix('(').ok_or_else(|| err("expected `(`"))?;
        let close = body_start.find(')').ok_or_else(|| err("unclosed cycle"))?;
        let body = &body_start[..close];
        rest = body_start[close + 1..].trim_start();
        let points = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .ok()
                    .filter(|&p| p >= 1 && p <= degree)
                    .map(|p| (p - 1) as u32)
                    .ok_or_else(|| err(&format!("point `{s}` is not in 1..={degree}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        let mut cycle: Vec<u32> = (0..degree as u32).collect();
        for (i, &p) in points.iter().enumerate() {
            let next = points[(i + 1) % points.len()];
            if cycle[p as usize] != p {
                return Err(err("repeated point in cycle"));
            }
            cycle[p as usize] = next;
        }
        // cycles compose right to left: the rightmost acts first
        perm = cycle.iter().map(|&i| perm[i as usize]).collect();
    }
    Ok(SmallVec::from_vec(perm))
}

fn format_matrix(entries: &[u32], dim: usize) -> String {
    let rows: Vec<String> = entries
        .chunks(dim)
        .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join("; "))
}

fn parse_matrix(text: &str, dim: usize, modulus: u32) -> Result<Key> {
    let err = |reason: String| Error::Parse {
        text: text.into(),
        reason,
    };
    let body = text.trim().trim_start_matches('[').trim_end_matches(']');
    let rows: Vec<&str> = body.split(';').collect();
    if rows.len() != dim {
        return Err(err(format!("expected {dim} rows")));
    }
    let mut key = Key::new();
    for row in rows {
        let entries: Vec<&str> = row
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        if entries.len() != dim {
            return Err(err(format!("expected {dim} entries per row")));
        }
        for e in entries {
            let v: i64 = e.parse().map_err(|_| err(format!("`{e}` is not an integer")))?;
            key.push(v.rem_euclid(modulus as i64) as u32);
        }
    }
    Ok(key)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_orders() {
        assert_eq!(FiniteGroup::symmetric(1).unwrap().order(), 1);
        assert_eq!(FiniteGroup::symmetric(3).unwrap().order(), 6);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
    }

    #[test]
    fn identity_is_minimal_permutation() {
        let s4 = FiniteGroup::symmetric(4).unwrap();
        assert_eq!(s4.identity(), Elem::from_index(0));
        assert_eq!(s4.format(s4.identity()), "()");
    }

    #[test]
    fn gl2_mod_2_by_enumeration() {
        let g = FiniteGroup::general_linear(2, 2).unwrap();
        assert_eq!(g.order(), 6);
        g.check_axioms().unwrap();
        assert_eq!(g.format(Elem::from_index(0)), "[0 1; 1 0]");
    }

    #[test]
    fn permutation_text_roundtrip() {
        let s4 = FiniteGroup::symmetric(4).unwrap();
        for e in s4.elements() {
            assert_eq!(s4.parse(&s4.format(e)).unwrap(), e);
        }
        // (1 2)(2 3): apply (2 3) first, so 2 -> 3 -> 3, 3 -> 2 -> 1, 1 -> 1 -> 2
        let p = s4.parse("(1 2)(2 3)").unwrap();
        assert_eq!(s4.format(p), "(1 2 3)");
    }

    #[test]
    fn matrix_text_accepts_variants() {
        let g = FiniteGroup::general_linear(2, 4).unwrap();
        let a = g.parse("[1 1; 0 1]").unwrap();
        assert_eq!(g.parse("1,1;0,1").unwrap(), a);
        assert_eq!(g.parse("[5 -3; 4 1]").unwrap(), a);
        assert!(matches!(g.parse("[2 0; 0 1]"), Err(Error::NotMember { .. })));
        assert!(matches!(g.parse("[1 0 0]"), Err(Error::Parse { .. })));
    }

    #[test]
    fn cayley_table_validation() {
        let c3 = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let g = FiniteGroup::from_cayley_table(c3).unwrap();
        assert_eq!(g.inv(Elem::from_index(1)), Elem::from_index(2));
        g.check_axioms().unwrap();

        // Latin square with identity 0 that is not associative.
        let bad = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_cayley_table(bad),
            Err(Error::InvalidGroup(msg)) if msg.contains("associativity")
        ));
        assert!(FiniteGroup::from_cayley_table(vec![vec![0, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn non_invertible_matrix_generator_rejected() {
        assert!(FiniteGroup::from_matrices(2, 4, &[vec![2, 0, 0, 1]]).is_err());
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(determinant_mod(&[1, 2, 3, 4], 2, 7), 5);
        assert_eq!(determinant_mod(&[2, 0, 0, 0, 3, 0, 0, 0, 5], 3, 100), 30);
    }

    #[test]
    fn bounded_closures_stop_at_the_limit() {
        let gens = vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]];
        assert_eq!(
            FiniteGroup::from_permutations_within(4, &gens, 23).unwrap_err(),
            Error::TooLarge { limit: 23 }
        );
        assert_eq!(FiniteGroup::from_permutations_within(4, &gens, 24).unwrap().order(), 24);
        assert!(matches!(
            FiniteGroup::general_linear_within(2, 3, 47),
            Err(Error::TooLarge { .. })
        ));
        assert_eq!(FiniteGroup::general_linear_within(2, 3, 48).unwrap().order(), 48);
    }
}
