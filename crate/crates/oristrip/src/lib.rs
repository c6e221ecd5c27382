//! Kinematics and design of one-degree-of-freedom strips of developable,
//! flat-foldable degree-4 origami vertices.
//!
//! The crate models a strip of degree-4 vertices chained through shared
//! creases. Feeding a fold angle into the first vertex determines the folded
//! state of the whole strip; the cell-to-cell recurrence is a symmetric
//! fractional linear transformation of the fold-angle cosine, which makes the
//! propagation behavior (uniform vs. domino-like) a closed-form property of
//! the crease pattern. Modules:
//!
//! - [`vertex`]: closed-form single-vertex fold-angle relations and a
//!   loop-closure residual for verification.
//! - [`strip`]: the cell recurrence, its composition, orbits, and the
//!   uniform/domino classification.
//! - [`embed`]: 3D reconstruction of folded configurations and triangle
//!   meshes.
//! - [`shape`]: discrete curvature of developed/flat states and inverse
//!   design of strips that deploy along a target planar polyline.
//! - [`thickness`]: offset-hinge link lengths and thickness profiles for
//!   thick-panel realizations.
//! - [`catalog`]: reference strip designs used throughout the tests and
//!   shipped as golden design files.
//!
//! The crate is `no_std` (with `alloc`); all floating-point math goes through
//! `libm`, so results are bit-deterministic across hosts.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod embed;
mod error;
pub mod geom;
pub mod shape;
pub mod strip;
pub mod thickness;
pub mod vertex;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;

pub use embed::{build_mesh, measure_turning, propagate, vertex_poses};
pub use embed::{Mesh, Pose, Seed, StripConfiguration};
pub use shape::{map_polyline, polyline_to_strip, solve_sector_for_ratio, turning_angles};
pub use shape::{CellTemplate, FixedSector, PolylinePlan, TurningAngles};
pub use strip::{classify, compose_cell, iterate, local_map, sigmoid_value, transition_width};
pub use strip::{CellMap, Classification, Orbit, StripDesign, VertexSpec};
pub use thickness::{bennett_offsets, can_insert_rectangular_panels, thickness_profile};
pub use thickness::{BennettOffsets, PanelCheck, ThicknessProfile};
pub use vertex::{ab_coefficients, closure_residual, fold_angles, folding_multiplier, is_singular};
pub use vertex::{AbCoefficients, FoldMode, SectorAngles, VertexState};
