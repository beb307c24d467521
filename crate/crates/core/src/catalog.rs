//! Ready-made zip data: the truncated Witt-vector model of `GL₂` and a small
//! zoo of permutation, matrix and Cayley-table examples.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{is_unit_mod, Backend, Elem, FiniteGroup};
use crate::hom::Homomorphism;
use crate::subgroup::Subgroup;
use crate::zip::ZipDatum;

/// Truncation parameters for the `GL₂(W(𝔽_p))` model: `E` lives over
/// `ℤ/pⁿ`, `G` over `ℤ/pⁿ⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WittZipConfig {
    pub p: u32,
    pub n: u32,
}

impl WittZipConfig {
    pub fn new(p: u32, n: u32) -> Result<Self> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::InvalidConfig(format!("p = {p} is not prime")));
        }
        if n < 2 {
            return Err(Error::InvalidConfig(format!(
                "truncation level n = {n} must be at least 2"
            )));
        }
        match p.checked_pow(n) {
            Some(m) if m <= 1 << 12 => Ok(WittZipConfig { p, n }),
            _ => Err(Error::InvalidConfig(format!("p^n = {p}^{n} is too large"))),
        }
    }

    /// Modulus of the `E` level, `pⁿ`.
    pub fn e_modulus(&self) -> u32 {
        self.p.pow(self.n)
    }

    /// Modulus of the `G` level, `pⁿ⁻¹`.
    pub fn g_modulus(&self) -> u32 {
        self.p.pow(self.n - 1)
    }

    /// `|E| = |GL₂(ℤ/pⁿ)| / (p + 1)`.
    pub fn e_order(&self) -> usize {
        gl2_order(self.p as usize, self.e_modulus() as usize) / (self.p as usize + 1)
    }

    /// `|G| = |GL₂(ℤ/pⁿ⁻¹)|`.
    pub fn g_order(&self) -> usize {
        gl2_order(self.p as usize, self.g_modulus() as usize)
    }
}

fn gl2_order(p: usize, m: usize) -> usize {
    m.pow(4) / p.pow(3) * (p - 1) * (p * p - 1)
}

/// Builds the finite model of the display datum over `W(𝔽_p)`:
///
/// * `E` = invertible 2×2 matrices over `ℤ/pⁿ` with lower-left entry in `pℤ`;
/// * `G` = `GL₂(ℤ/pⁿ⁻¹)`;
/// * `τ` = reduction mod `pⁿ⁻¹`;
/// * `σ(a b; pc d) = (a pb; c d)` mod `pⁿ⁻¹`, i.e. conjugation by
///   `diag(p, 1)` (Frobenius is trivial on `ℤ_p`).
///
/// Returns the datum and the antidiagonal twist element `(0 1; 1 0)` of `G`.
pub fn build_witt_zip(config: &WittZipConfig) -> Result<(ZipDatum, Elem)> {
    let WittZipConfig { p, .. } = *config;
    let (em, gm) = (config.e_modulus(), config.g_modulus());

    let mut gens = vec![vec![1, 1, 0, 1], vec![1, 0, p % em, 1]];
    for u in unit_generators(em) {
        gens.push(vec![u, 0, 0, 1]);
        gens.push(vec![1, 0, 0, u]);
    }
    let e_group = Arc::new(FiniteGroup::from_matrices(2, em, &gens)?);
    let g_group = Arc::new(FiniteGroup::general_linear(2, gm)?);
    let e = Subgroup::full(&e_group);
    let g = Subgroup::full(&g_group);

    let reduce = |entries: [u32; 4]| -> Elem {
        let key: Vec<u32> = entries.iter().map(|v| v % gm).collect();
        g_group
            .element_from_key(&key)
            .expect("reduction of an invertible matrix is invertible")
    };
    let tau = Homomorphism::from_fn(&e, &g, |m| {
        let k = e_group.key(m);
        reduce([k[0], k[1], k[2], k[3]])
    })?;
    for m in e_group.elements() {
        if e_group.key(m)[2] % p != 0 {
            return Err(Error::InvariantViolation(
                "E contains a matrix with lower-left entry outside pℤ".into(),
            ));
        }
    }
    let sigma = Homomorphism::from_fn(&e, &g, |m| {
        let k = e_group.key(m);
        // the lower-left entry pc mod pⁿ determines c mod pⁿ⁻¹
        reduce([k[0], p * k[1], k[2] / p, k[3]])
    })?;
    let twist = g_group.parse("[0 1; 1 0]")?;
    Ok((ZipDatum::new(tau, sigma)?, twist))
}

/// Minimal generating set of `(ℤ/m)ˣ`, chosen greedily.
fn unit_generators(m: u32) -> Vec<u32> {
    let units: Vec<u32> = (1..m).filter(|&u| is_unit_mod(u, m)).collect();
    let mut reached = vec![false; m as usize];
    reached[1 % m as usize] = true;
    let mut gens = Vec::new();
    for &u in &units {
        if reached[u as usize] {
            continue;
        }
        gens.push(u);
        let mut frontier: Vec<u32> = (0..m).filter(|&v| reached[v as usize]).collect();
        while let Some(v) = frontier.pop() {
            for &g in &gens {
                let w = (v as u64 * g as u64 % m as u64) as u32;
                if !reached[w as usize] {
                    reached[w as usize] = true;
                    frontier.push(w);
                }
            }
        }
    }
    gens
}

/// Matrices of a 2×2 matrix group whose lower-left entry is divisible by
/// `divisor`; a divisor at least the modulus selects lower-left `0`.
pub fn lower_left_multiple_of(group: &Arc<FiniteGroup>, divisor: u32) -> Result<Subgroup> {
    let modulus = match group.backend() {
        Backend::Matrix { dim: 2, modulus } => *modulus,
        _ => return Err(Error::Mismatch("lower-left shapes need a 2×2 matrix group".into())),
    };
    let d = divisor.min(modulus);
    let members: Vec<Elem> = group
        .elements()
        .filter(|&m| group.key(m)[2].is_multiple_of(d))
        .collect();
    Subgroup::from_elements(group, &members)
}

/// A named entry of the built-in corpus.
#[derive(Debug, Clone)]
pub struct ZooEntry {
    pub name: &'static str,
    pub datum: ZipDatum,
}

pub const ZOO_NAMES: [&str; 10] = [
    "trivial-e",
    "tau-surjective",
    "s3-inclusion",
    "s3-sub-trivial",
    "s4-dihedral-inclusion",
    "c2cubed-shift",
    "s4-pairing-endomorphism",
    "gl2f2-borel",
    "gl2f2-borel-opposite",
    "c4-squaring",
];

pub fn build_small_zoo() -> Vec<ZooEntry> {
    ZOO_NAMES
        .iter()
        .map(|&name| ZooEntry {
            name,
            datum: zoo_entry(name).expect("built-in zoo entries are valid"),
        })
        .collect()
}

/// Builds one zoo entry by name.
pub fn zoo_entry(name: &str) -> Result<ZipDatum> {
    match name {
        "trivial-e" => {
            let one = Arc::new(FiniteGroup::symmetric(1)?);
            let s3 = Arc::new(FiniteGroup::symmetric(3)?);
            let (e, g) = (Subgroup::full(&one), Subgroup::full(&s3));
            ZipDatum::new(Homomorphism::trivial(&e, &g), Homomorphism::trivial(&e, &g))
        }
        "tau-surjective" => {
            let s3 = Arc::new(FiniteGroup::symmetric(3)?);
            let c2 = Arc::new(FiniteGroup::symmetric(2)?);
            let (e, g) = (Subgroup::full(&s3), Subgroup::full(&c2));
            let swap = c2.parse("(1 2)")?;
            let sign = Homomorphism::from_generator_images(
                &e,
                &g,
                &[(s3.parse("(1 2)")?, swap), (s3.parse("(1 2 3)")?, c2.identity())],
            )?;
            ZipDatum::new(sign, Homomorphism::trivial(&e, &g))
        }
        "s3-inclusion" => subgroup_inclusion(3, &["(1 2)"]),
        "s3-sub-trivial" => {
            let s3 = Arc::new(FiniteGroup::symmetric(3)?);
            let g = Subgroup::full(&s3);
            let e = Subgroup::closure(&s3, &[s3.parse("(1 2)")?])?;
            ZipDatum::new(Homomorphism::inclusion(&e, &g)?, Homomorphism::trivial(&e, &g))
        }
        "s4-dihedral-inclusion" => subgroup_inclusion(4, &["(1 2 3 4)", "(1 3)"]),
        "c2cubed-shift" => {
            let c = Arc::new(FiniteGroup::from_permutations(
                6,
                &[vec![1, 0, 2, 3, 4, 5], vec![0, 1, 3, 2, 4, 5], vec![0, 1, 2, 3, 5, 4]],
            )?);
            let full = Subgroup::full(&c);
            let (a1, a2, a3) = (c.parse("(1 2)")?, c.parse("(3 4)")?, c.parse("(5 6)")?);
            let shift = Homomorphism::from_generator_images(&full, &full, &[(a1, a2), (a2, a3), (a3, c.identity())])?;
            ZipDatum::new(Homomorphism::identity(&full), shift)
        }
        "s4-pairing-endomorphism" => {
            let s4 = Arc::new(FiniteGroup::symmetric(4)?);
            let full = Subgroup::full(&s4);
            let sigma = Homomorphism::from_fn(&full, &full, |g| {
                let image = pairing_action(s4.key(g));
                s4.element_from_key(&image).expect("S₃ fixing 4 lies in S₄")
            })?;
            ZipDatum::new(Homomorphism::identity(&full), sigma)
        }
        "gl2f2-borel" => {
            let gl = Arc::new(FiniteGroup::general_linear(2, 2)?);
            let g = Subgroup::full(&gl);
            let b = Subgroup::closure(&gl, &[gl.parse("[1 1; 0 1]")?])?;
            let inc = Homomorphism::inclusion(&b, &g)?;
            ZipDatum::new(inc.clone(), inc)
        }
        "gl2f2-borel-opposite" => {
            let gl = Arc::new(FiniteGroup::general_linear(2, 2)?);
            let g = Subgroup::full(&gl);
            let b = Subgroup::closure(&gl, &[gl.parse("[1 1; 0 1]")?])?;
            let inc = Homomorphism::inclusion(&b, &g)?;
            let w = gl.parse("[0 1; 1 0]")?;
            ZipDatum::new(inc.clone(), inc.conjugated(w)?)
        }
        "c4-squaring" => {
            let table: Vec<Vec<u32>> = (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect();
            let c4 = Arc::new(FiniteGroup::from_cayley_table(table)?);
            let full = Subgroup::full(&c4);
            let square = Homomorphism::from_fn(&full, &full, |a| c4.mul(a, a))?;
            ZipDatum::new(Homomorphism::identity(&full), square)
        }
        other => Err(Error::InvalidConfig(format!("unknown zoo entry `{other}`"))),
    }
}

fn subgroup_inclusion(degree: usize, generators: &[&str]) -> Result<ZipDatum> {
    let s = Arc::new(FiniteGroup::symmetric(degree)?);
    let g = Subgroup::full(&s);
    let gens = generators.iter().map(|t| s.parse(t)).collect::<Result<Vec<_>>>()?;
    let e = Subgroup::closure(&s, &gens)?;
    let inc = Homomorphism::inclusion(&e, &g)?;
    ZipDatum::new(inc.clone(), inc)
}

/// Action of a permutation of `{0,1,2,3}` on the three pairings
/// `01|23, 02|13, 03|12`, returned as a permutation of four points fixing 3.
fn pairing_action(images: &[u32]) -> Vec<u32> {
    const PAIRINGS: [[u32; 2]; 3] = [[0, 1], [0, 2], [0, 3]];
    let index_of = |a: u32, b: u32| -> u32 {
        // a pairing is determined by the partner of 0
        let partner = if a == 0 {
            b
        } else if b == 0 {
            a
        } else {
            // {a, b} avoids 0, so 0 is paired with the remaining point
            6 - a - b
        };
        partner - 1
    };
    let mut out: Vec<u32> = (0..4).collect();
    for (i, pair) in PAIRINGS.iter().enumerate() {
        out[i] = index_of(images[pair[0] as usize], images[pair[1] as usize]);
    }
    out
}
