//! Skew incidence rings `I(X,R,σ)` over finite posets.
//!
//! Elements are functions on the comparable pairs of a labeled poset with
//! coefficients in a ring `R`; the product is convolution twisted by powers
//! of a unital endomorphism `σ` of `R`. The crate provides the arithmetic,
//! the structural queries (units, the Jacobson radical, idempotents, the
//! center) and the correspondence between ring isomorphisms of these rings
//! and order isomorphisms of the posets.

pub mod algebra;
pub mod error;
pub mod isomorphism;
pub mod poset;
pub mod ring;
pub mod structure;

pub use algebra::{AlgebraContext, SkewElement, DEFAULT_ENUMERATION_BOUND};
pub use error::{Error, Result};
pub use isomorphism::{
    build_psi, fingerprint, recover_poset_map, Fingerprint, PosetMapResult, RingIso, RingIsoWitness,
};
pub use poset::Poset;
pub use ring::{CoeffRing, IntegerRing, RingElement, RingSpec};
