//! Knot diagrams, cowrithe invariants, Reidemeister moves and torus-knot deformations.

pub mod braid;
pub mod diagram;
pub mod error;
pub mod gauss;
pub mod invariants;
pub mod moves;
pub mod render;
pub mod search;
pub mod torus;

pub use braid::{closure, torus_braid, torus_diagram, BraidWord, Letter, TorusParams};
pub use diagram::{CrossingId, Dart, Diagram, DiagramFile, Face, Sign};
pub use error::{Error, ErrorClass, Result};
pub use gauss::{
    canonical_form, gauss_code, is_isomorphic, CanonicalCode, Direction, GaussToken,
    OrientedGaussCode,
};
pub use invariants::{
    chord_diagram, cowrithe, cowrithe_closed_form, interleave_count, move_lower_bounds, writhe,
    writhe_closed_form, BoundsReport, ChordDiagram, TorusSide,
};
pub use moves::{
    apply_move, bigon_incoherent, enumerate_moves, move_delta, Arcs, FaceRef, Move, MoveDelta,
    MoveKind, Side,
};
pub use render::{chord_ascii, chord_svg};
pub use search::{bfs_min_moves, SearchLimits, SearchOutcome, SearchResult};
pub use torus::{
    deform_sequence, move_conforms, predicted_move_count, verify_trace, DeformReport, MoveTrace,
    TraceStep,
};
