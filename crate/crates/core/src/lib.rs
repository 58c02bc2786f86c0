//! Chord indices and polynomial invariants for knot diagrams on closed
//! oriented surfaces, and for virtual knots through their Gauss diagrams.
//!
//! A diagram is one cyclic walk of crossing passages and gate crossings
//! (see [`codec`] for the text format). Picking a homology class `alpha`
//! with `alpha . [D] = 0` assigns every crossing an integer chord index;
//! from the indices the crate derives the writhe polynomial, the group-ring
//! invariant, the small state sum, a regular-isotopy invariant and a
//! two-variable formal sum, all over exact integer arithmetic. A rewrite
//! engine for the three Reidemeister moves backs the property suites that
//! pin the conventions down (`docs/conventions.md`).

pub mod cli;
pub mod codec;
pub mod diagram;
pub mod homology;
pub mod indices;
pub mod invariants;
pub mod moves;

pub use codec::{parse_class, parse_diagram, parse_file, serialize_diagram};
pub use diagram::{
    band_sum, gauss_diagram, CrossingId, Event, GaussDiagram, Layer, Sign, SurfaceDiagram,
};
pub use homology::{
    admissible_subgroup_basis, diagram_class, is_admissible, HomologyClass,
};
pub use indices::{
    chord_index, chord_index_via_coloring, coloring, fiedler_index, gauss_index, group_index,
    index_function, parity, regular_index,
};
pub use invariants::{
    group_ring_invariant, regular_invariant, small_state_sum, transcendental_invariant,
    virtual_writhe_polynomial, writhe_polynomial, zero_class_scan, FormalSum, GroupRingElement,
    LaurentPoly,
};
pub use moves::{apply, find_sites, random_diagram, MoveKind, MoveSite};
