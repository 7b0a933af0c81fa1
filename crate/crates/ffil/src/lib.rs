//! Finite-model verification of lattice-valued filters and topologies.
//!
//! The crate builds and validates finite quasi-monoidal lattices, ground
//! sets and morphisms between them, fuzzy filters and fuzzy topologies, and
//! then runs the structural theorems of that setting as checkable properties
//! on concrete instances, reporting counterexample witnesses whenever a
//! claimed property fails.
//!
//! Module map:
//! - [`lattice`]: lattices, lattice morphisms, Galois adjoints, residua.
//! - [`ground`]: ground sets, fuzzy sets, powerset operators.
//! - [`filter`]: fuzzy filters, continuity, final and initial constructions.
//! - [`ultra`]: the filter order, enumeration, maximality, ultrafilters.
//! - [`topology`]: fuzzy topologies, final topologies, the filter functor.
//! - [`cli`]: instance documents, reports, theorem suites, command dispatch.

pub mod bundled;
pub mod filter;
pub mod topology;
pub mod ground;
pub mod lattice;
pub mod ultra;

pub use ground::{FnSpace, FuzzySet, GroundError, GroundMorphism, GroundSet};
pub use lattice::{
    enumerate_qml_morphisms, LatticeError, MorphismError, QmlLattice, QmlMorphism, Residuum,
    TensorLaws,
};
