//! Zip data `(E, G, τ, σ)`: refinement, twisting and the stationary
//! subgroups `E_∞`, `G_∞`.

use std::sync::Arc;

use crate::coset::double_cosets;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::hom::Homomorphism;
use crate::subgroup::Subgroup;

/// Two homomorphisms `τ, σ: E → G` with a common source and target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZipDatum {
    tau: Homomorphism,
    sigma: Homomorphism,
}

impl ZipDatum {
    pub fn new(tau: Homomorphism, sigma: Homomorphism) -> Result<Self> {
        if tau.source() != sigma.source() || tau.target() != sigma.target() {
            return Err(Error::Mismatch("τ and σ must share source and target".into()));
        }
        Ok(ZipDatum { tau, sigma })
    }

    pub fn e(&self) -> &Subgroup {
        self.tau.source()
    }

    pub fn g(&self) -> &Subgroup {
        self.tau.target()
    }

    pub fn tau(&self) -> &Homomorphism {
        &self.tau
    }

    pub fn sigma(&self) -> &Homomorphism {
        &self.sigma
    }

    /// Ambient group containing `E`.
    pub fn source_group(&self) -> &Arc<FiniteGroup> {
        self.e().ambient()
    }

    /// Ambient group containing `G`.
    pub fn target_group(&self) -> &Arc<FiniteGroup> {
        self.g().ambient()
    }

    /// The action `e.g = τ(e)·g·σ(e)⁻¹`.
    pub fn act(&self, e: Elem, g: Elem) -> Elem {
        let grp = self.target_group();
        grp.mul(grp.mul(self.tau.apply(e), g), grp.inv(self.sigma.apply(e)))
    }

    pub fn tau_surjective(&self) -> bool {
        self.tau.is_surjective()
    }

    /// `𝒵₁ = (σ⁻¹(τ(E)), τ(E), τ, σ)` with both maps re-materialized on the
    /// smaller groups.
    pub fn refine(&self) -> Result<ZipDatum> {
        let g1 = self.tau.image(self.e())?;
        let e1 = self.sigma.preimage(&g1)?;
        let tau = self.tau.restrict(&e1, &g1)?;
        let sigma = self.sigma.restrict(&e1, &g1)?;
        ZipDatum::new(tau, sigma)
    }

    pub fn refine_times(&self, n: usize) -> Result<ZipDatum> {
        let mut z = self.clone();
        for _ in 0..n {
            z = z.refine()?;
        }
        Ok(z)
    }

    /// `𝒵ˣ = (E, G, τ, ˣσ)` with `ˣσ(e) = x·σ(e)·x⁻¹`.
    pub fn twist(&self, x: Elem) -> Result<ZipDatum> {
        self.g().require(x, "G")?;
        ZipDatum::new(self.tau.clone(), self.sigma.conjugated(x)?)
    }

    /// Refines until `E_{N+1} = E_N`. Finite carriers make `E_i` strictly
    /// decrease until then, so this always terminates.
    pub fn refine_to_stationary(&self) -> RefinementTrace {
        let mut stages = vec![self.clone()];
        loop {
            let current = stages.last().expect("trace starts non-empty");
            let next = current.refine().expect("refinement of a valid zip datum is valid");
            if next.e() == current.e() {
                return RefinementTrace {
                    stages,
                    g_infinity: next.g().clone(),
                };
            }
            stages.push(next);
        }
    }
}

/// The data `𝒵_0, …, 𝒵_N` of a refinement run, `N` the first index with
/// `E_{N+1} = E_N`.
#[derive(Debug, Clone)]
pub struct RefinementTrace {
    stages: Vec<ZipDatum>,
    g_infinity: Subgroup,
}

impl RefinementTrace {
    pub fn stationary_index(&self) -> usize {
        self.stages.len() - 1
    }

    pub fn stages(&self) -> &[ZipDatum] {
        &self.stages
    }

    /// `E_i`, extended stationarily past `N`.
    pub fn e_at(&self, i: usize) -> &Subgroup {
        self.stages[i.min(self.stationary_index())].e()
    }

    /// `G_i`, extended stationarily past `N + 1`.
    pub fn g_at(&self, i: usize) -> &Subgroup {
        if i > self.stationary_index() {
            &self.g_infinity
        } else {
            self.stages[i].g()
        }
    }

    pub fn e_infinity(&self) -> &Subgroup {
        self.stages.last().expect("trace is non-empty").e()
    }

    /// `G_∞ = τ(E_∞)`.
    pub fn g_infinity(&self) -> &Subgroup {
        &self.g_infinity
    }

    /// `⋂ E_i` over the recorded stages.
    pub fn e_intersection(&self) -> Subgroup {
        self.stages
            .iter()
            .map(|s| s.e().clone())
            .reduce(|a, b| a.intersection(&b).expect("stages share the ambient"))
            .expect("trace is non-empty")
    }

    /// `⋂ G_i` over the recorded stages and `G_{N+1}`.
    pub fn g_intersection(&self) -> Subgroup {
        self.stages
            .iter()
            .map(|s| s.g().clone())
            .fold(self.g_infinity.clone(), |a, b| {
                a.intersection(&b).expect("stages share the ambient")
            })
    }

    /// `E_{i+1} ⊆ E_i`, `G_{i+1} ⊆ G_i` and `σ(E_∞) ⊆ τ(E_∞)`.
    pub fn check_monotone(&self) -> bool {
        let decreasing = self
            .stages
            .windows(2)
            .all(|w| w[1].e().is_subset_of(w[0].e()) && w[1].g().is_subset_of(w[0].g()));
        let last = self.stages.last().expect("trace is non-empty");
        let sigma_image = last.sigma().image(last.e()).expect("E_∞ lies in the source");
        decreasing && self.g_infinity.is_subset_of(last.g()) && sigma_image.is_subset_of(&self.g_infinity)
    }
}

/// Compares `E_∞` from `trace` with `{ e ∈ E : σ(e) ∈ G_∞·τ(e)·G_∞ }`,
/// computed independently by scanning `E` against the `G_∞\G/G_∞` labels.
pub fn e_infinity_characterization_check(z: &ZipDatum, trace: &RefinementTrace) -> Result<bool> {
    let g_inf = trace.g_infinity();
    let labels = double_cosets(z.g(), g_inf, g_inf)?;
    let scanned = Subgroup::from_unsorted(
        z.source_group().clone(),
        z.e()
            .members()
            .iter()
            .copied()
            .filter(|&e| labels.coset_of(z.sigma().apply(e)) == labels.coset_of(z.tau().apply(e))),
    );
    Ok(&scanned == trace.e_infinity())
}

/// For `y ∈ τ(E)`: `𝒵₁^{yx} = (𝒵₁ˣ)^y`, and the stationary groups agree:
/// `E_∞^{yx}(𝒵) = E_∞^y(𝒵₁ˣ)`, `G_∞^{yx}(𝒵) = G_∞^y(𝒵₁ˣ)`.
pub fn check_twist_multiplicative(z: &ZipDatum, x: Elem, y: Elem) -> Result<bool> {
    z.g().require(x, "G")?;
    let g1 = z.tau().image(z.e())?;
    if !g1.contains(y) {
        return Err(Error::Precondition("y must lie in G₁ = τ(E)".into()));
    }
    let yx = z.target_group().mul(y, x);
    let lhs = z.twist(yx)?;
    let rhs = z.twist(x)?.refine()?.twist(y)?;
    let lhs_refined = lhs.refine()?;
    if lhs_refined != rhs {
        return Ok(false);
    }
    let lhs_trace = lhs.refine_to_stationary();
    let rhs_trace = rhs.refine_to_stationary();
    Ok(lhs_trace.e_infinity() == rhs_trace.e_infinity() && lhs_trace.g_infinity() == rhs_trace.g_infinity())
}

/// For `y = τ(e)·x·σ(ẽ)`: `E₁^y = ẽ⁻¹·E₁ˣ·ẽ`.
pub fn check_double_coset_twist(z: &ZipDatum, x: Elem, y: Elem, e: Elem, e_tilde: Elem) -> Result<bool> {
    z.g().require(x, "G")?;
    z.g().require(y, "G")?;
    z.e().require(e, "E")?;
    z.e().require(e_tilde, "E")?;
    let g = z.target_group();
    if y != g.product([z.tau().apply(e), x, z.sigma().apply(e_tilde)]) {
        return Err(Error::Precondition("y must equal τ(e)·x·σ(ẽ)".into()));
    }
    let e1_x = z.twist(x)?.refine()?.e().clone();
    let e1_y = z.twist(y)?.refine()?.e().clone();
    let e_group = z.source_group();
    Ok(e1_y == e1_x.conjugate(e_group.inv(e_tilde))?)
}

/// Components of `(𝒵ˣ)₁` and of the formal `(𝒵₁)ˣ`. The G-components always
/// agree; the E-components may not.
#[derive(Debug, Clone)]
pub struct TwistRefineOrder {
    pub twist_then_refine: (Subgroup, Subgroup),
    pub refine_then_twist: (Subgroup, Subgroup),
}

impl TwistRefineOrder {
    pub fn g_components_equal(&self) -> bool {
        self.twist_then_refine.1 == self.refine_then_twist.1
    }

    pub fn e_components_equal(&self) -> bool {
        self.twist_then_refine.0 == self.refine_then_twist.0
    }
}

pub fn compare_twist_refine_order(z: &ZipDatum, x: Elem) -> Result<TwistRefineOrder> {
    let twisted = z.twist(x)?.refine()?;
    // (𝒵₁)ˣ keeps the E- and G-components of 𝒵₁; its twisted σ need not map
    // into τ(E), so only the components are recorded
    let refined = z.refine()?;
    Ok(TwistRefineOrder {
        twist_then_refine: (twisted.e().clone(), twisted.g().clone()),
        refine_then_twist: (refined.e().clone(), refined.g().clone()),
    })
}
