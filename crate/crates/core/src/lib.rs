//! Exact-arithmetic toolkit for generalized permutahedra.
//!
//! A bounded generalized permutahedron is stored as a rational submodular
//! function; translated preposet cones cover the conical case. The crate
//! computes the canonical form of signed sums of these objects onto weighted
//! ordered set partitions, which decides equality of indicator functions
//! exactly. On top of that sit the combinatorial valuations: Tutte-type
//! polynomials, characteristic polynomials and beta invariants, CSM weights,
//! the rank-jump invariant, quasisymmetric characters, order and Poincaré
//! polynomials of posets, and nestohedron face polynomials, together with a
//! subdivision checker that certifies indicator relations.

pub mod building_set;
pub mod error;
pub mod formal;
pub mod gp;
pub mod hopf;
pub mod json;
pub mod label;
pub mod matroid;
pub mod osp;
pub mod poly;
pub mod poset_invariants;
pub mod preposet;
pub mod rational;
pub mod sampling;
pub mod valuation;

pub use error::{Error, Result};
pub use formal::FormalSum;
pub use gp::{
    canonical_form, canonical_form_polytopes, indicator_equal, indicator_expansion, GpElement,
    SubmodularGp, TranslatedPreposetCone,
};
pub use label::{Label, LabelSet};
pub use matroid::{BetaConvention, FlagMatroid, GInvariant, Matroid};
pub use osp::{OrderedSetPartition, WeightedOsp};
pub use poly::{BiPoly, ExponentPoly, FlatPoly, QSym, UniPoly};
pub use preposet::{Poset, Preposet, WeightedPreposet};
pub use rational::Rat;
