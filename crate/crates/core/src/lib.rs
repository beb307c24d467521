//! Abstract zip data over finite groups.
//!
//! A zip datum is a pair of homomorphisms `τ, σ: E → G`. This crate computes
//! refinements and twists of zip data, the stationary subgroups `E_∞` and
//! `G_∞`, the equivalence classes `∼_𝒵` on `G`, and the rooted forest of
//! double-coset representatives that classifies them. Every structural
//! statement about these objects is available as an exhaustive runtime check.

pub mod catalog;
pub mod coset;
pub mod equivalence;
pub mod error;
pub mod forest;
pub mod group;
pub mod hom;
pub mod subgroup;
pub mod suite;
pub mod zip;

pub use coset::{conjugated_double_coset_map, double_cosets, DoubleCoset, DoubleCosetDecomposition};
pub use equivalence::{ClassReport, EquivalenceClass, Relation};
pub use error::{Error, Result};
pub use forest::{build_forest, ClassificationPath, RepForest};
pub use group::{parse_matrix_entries, parse_permutation_images, Backend, Elem, FiniteGroup};
pub use hom::Homomorphism;
pub use subgroup::Subgroup;
pub use suite::{run_suite, CheckOutcome, SuiteReport};
pub use zip::{RefinementTrace, ZipDatum};
