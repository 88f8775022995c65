//! Finite commutative rings, amalgamated algebras `A ⋈^f J`, and exhaustive
//! checks of self-injectivity statements about them.

pub mod amalgam;
pub mod caps;
pub mod census;
pub mod error;
pub mod fixtures;
pub mod hom;
pub mod ideal;
pub mod injective;
pub mod iso;
pub mod module;
pub mod ring;
mod search;
pub mod spec;
pub mod theorems;

pub use amalgam::{amalgamate, duplication, AmalgamRing};
pub use caps::Caps;
pub use error::{Error, Result};
pub use hom::{enumerate_ring_homs, RingHom};
pub use ideal::{all_ideals, annihilator, idempotent_generator, is_regular_element, maximal_ideals, Ideal};
pub use injective::{baer_failure, is_injective_module, is_quasi_frobenius, is_self_injective};
pub use iso::ring_isomorphic;
pub use module::{
    enumerate_module_homs, find_section, hom_object, module_isomorphic, multiplication_map, FModule,
    ModuleHom,
};
pub use ring::{quotient_ring, validate_ring, Elem, FiniteRing};
pub use spec::{parse_spec, HomSpec, RingSpec};
