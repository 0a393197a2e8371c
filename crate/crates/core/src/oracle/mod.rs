//! Brute-force ground truth over GF(p): explicit representations, submodule
//! enumeration, Ext components and admissibility.

pub mod axioms;
pub mod catalog;
pub mod fixture;
pub mod nakayama;
pub mod rep;
pub mod ses;
pub mod subfunctor;
pub mod submodules;

pub use catalog::{Catalogue, Decomposition};
pub use fixture::GenericFixture;
pub use rep::{hom_basis, interval_to_rep, BoundQuiver, QuiverRep, RepMorphism, SesInstance};
pub use ses::{admissible_monic, ses_components, Admissibility, PairMask};
pub use subfunctor::{subfunctor_closure, Subfunctor};
pub use submodules::enumerate_submodules;
