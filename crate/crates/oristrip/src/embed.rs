//! 3D reconstruction of folded strips.
//!
//! Each vertex carries a frame: its center `o`, four unit crease directions
//! `c_i`, and four unit face normals `n_i` (face `i` spans creases `i` and
//! `i+1`). Given the fold angles, the frame follows from the seed
//! `(o, c0, n0)` by alternately rotating the crease direction about the face
//! normal through the sector angle and the face normal about the next crease
//! through its fold angle:
//!
//! ```text
//! c[i+1] = R(theta_i, n_i) c_i        n[i+1] = R(rho_{i+1}, c_{i+1}) n_i
//! ```
//!
//! Chaining vertices: the next vertex sits at the far end of the shared
//! crease, its input crease direction is the reversed output direction, and
//! its face 0 is coplanar with the face preceding the shared crease.
//!
//! All rotations are right-handed about the stated axes. The mirror image of
//! every configuration is an equally valid embedding of the same fold state;
//! this crate pins one of the two by convention (counterclockwise crease
//! labels about the seed normal), and the sign conventions downstream (shared
//! creases, turning measurements) are validated against that choice.

use crate::error::Error;
use crate::geom::{normalize_angle, Vec3};
use crate::strip::StripDesign;
use crate::vertex::{fold_angles, SectorAngles, VertexState};
use crate::Result;

use alloc::format;
use alloc::vec::Vec;

/// Unit-length and orthogonality tolerance for seed frames.
pub const SEED_TOL: f64 = 1e-9;

/// Planarity tolerance for [`measure_turning`], relative to the bounding-box
/// diagonal of the configuration.
pub const PLANAR_TOL: f64 = 1e-8;

/// Seed frame anchoring a strip in space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Seed {
    pub origin: Vec3,
    pub crease0: Vec3,
    pub normal0: Vec3,
}

impl Seed {
    /// The canonical seed: origin, crease 0 along +x, face 0 normal along +z.
    pub fn canonical() -> Self {
        Seed {
            origin: Vec3::ZERO,
            crease0: Vec3::X,
            normal0: Vec3::Z,
        }
    }

    fn validate(&self) -> Result<()> {
        let c_err = libm::fabs(self.crease0.norm() - 1.0);
        let n_err = libm::fabs(self.normal0.norm() - 1.0);
        let ortho = libm::fabs(self.crease0.dot(self.normal0));
        if c_err > SEED_TOL || n_err > SEED_TOL || ortho > SEED_TOL {
            return Err(Error::Domain(format!(
                "seed frame not orthonormal (|c|-1 = {c_err:e}, |n|-1 = {n_err:e}, c.n = {ortho:e})"
            )));
        }
        Ok(())
    }
}

/// Spatial frame of one vertex: center, crease directions, face normals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub origin: Vec3,
    pub creases: [Vec3; 4],
    pub normals: [Vec3; 4],
}

/// Folded strip: one pose per vertex plus the crease lengths, with the cell
/// stride kept for per-cell measurements.
#[derive(Debug, Clone, PartialEq)]
pub struct StripConfiguration {
    pub poses: Vec<Pose>,
    pub lengths: Vec<[f64; 4]>,
    pub cell_stride: usize,
}

/// Triangle mesh of a folded strip.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub points: Vec<Vec3>,
    pub faces: Vec<[usize; 3]>,
}

/// Runs the rotation recursion once around the vertex, returning five crease
/// directions and five normals; index 4 is the closure wrap that must
/// reproduce index 0 for a compatible state.
pub(crate) fn frame_loop(
    angles: &SectorAngles,
    state: &VertexState,
    seed: &Seed,
) -> ([Vec3; 5], [Vec3; 5]) {
    let mut c = [Vec3::ZERO; 5];
    let mut n = [Vec3::ZERO; 5];
    c[0] = seed.crease0;
    n[0] = seed.normal0;
    for i in 0..4 {
        c[i + 1] = c[i].rotated_about(n[i], angles.sector(i));
        n[i + 1] = n[i].rotated_about(c[i + 1], state.rho[(i + 1) % 4]);
    }
    (c, n)
}

/// Frame of a single vertex from its fold state and a seed.
pub fn vertex_poses(angles: &SectorAngles, state: &VertexState, seed: &Seed) -> Result<Pose> {
    seed.validate()?;
    let (c, n) = frame_loop(angles, state, seed);
    Ok(Pose {
        origin: seed.origin,
        creases: [c[0], c[1], c[2], c[3]],
        normals: [n[0], n[1], n[2], n[3]],
    })
}

/// Folds the whole strip for the input fold angle `rho00` of vertex 0.
///
/// Deterministic given the seed; the fold angle of each shared crease is
/// handed to the next vertex unchanged.
pub fn propagate(design: &StripDesign, rho00: f64, seed: &Seed) -> Result<StripConfiguration> {
    seed.validate()?;
    let mut poses = Vec::with_capacity(design.vertex_count());
    let mut frame = *seed;
    let mut rho_in = rho00;
    for n in 0..design.vertex_count() {
        let spec = design.vertex(n);
        let state = fold_angles(&spec.angles, spec.mode, rho_in)?;
        let pose = vertex_poses(&spec.angles, &state, &frame)?;
        let out = spec.i_out as usize;
        frame = Seed {
            origin: pose.origin + pose.creases[out] * design.lengths(n)[out],
            crease0: -pose.creases[out],
            normal0: pose.normals[out - 1],
        };
        rho_in = state.rho[out];
        poses.push(pose);
    }
    Ok(StripConfiguration {
        poses,
        lengths: design.all_lengths().to_vec(),
        cell_stride: design.period(),
    })
}

/// Triangulates the strip: per vertex, per sector, the triangle spanned by
/// the center and the two crease tips. Shared facets between neighboring
/// vertices are tiled by the two vertices' sector triangles.
pub fn build_mesh(config: &StripConfiguration) -> Mesh {
    let mut points = Vec::with_capacity(config.poses.len() * 5);
    let mut faces = Vec::with_capacity(config.poses.len() * 4);
    for (pose, lengths) in config.poses.iter().zip(&config.lengths) {
        let base = points.len();
        points.push(pose.origin);
        for (crease, length) in pose.creases.iter().zip(lengths) {
            points.push(pose.origin + *crease * *length);
        }
        for i in 0..4 {
            faces.push([base, base + 1 + i, base + 1 + (i + 1) % 4]);
        }
    }
    Mesh { points, faces }
}

fn configuration_points(config: &StripConfiguration) -> Vec<Vec3> {
    build_mesh(config).points
}

/// Signed turning angle of the central polyline per cell, for a planar
/// (developed or flat-folded) configuration.
///
/// The polyline passes through the cell-boundary vertex centers; turning is
/// measured counterclockwise about the face-up direction of the flattened
/// pattern and reduced into `(-pi, pi]`. Developed, every face points along
/// the seed normal. Flat-folded, face parities alternate along the strip
/// starting face-down at the seed face, so the face-up direction is the
/// reversed seed normal; the axis is picked by inspecting the face normals.
/// Needs at least three cell boundaries.
pub fn measure_turning(config: &StripConfiguration) -> Result<f64> {
    let stride = config.cell_stride.max(1);
    let boundaries: Vec<Vec3> = config
        .poses
        .iter()
        .step_by(stride)
        .map(|p| p.origin)
        .collect();
    if boundaries.len() < 3 {
        return Err(Error::Domain(format!(
            "need at least 3 cell boundaries to measure turning, have {}",
            boundaries.len()
        )));
    }

    // Planarity gate: every point within PLANAR_TOL of the seed plane,
    // relative to the configuration extent.
    let points = configuration_points(config);
    let origin = config.poses[0].origin;
    let seed_normal = config.poses[0].normals[0];
    let mut lo = points[0];
    let mut hi = points[0];
    let mut deviation: f64 = 0.0;
    for p in &points {
        deviation = deviation.max(libm::fabs((*p - origin).dot(seed_normal)));
        lo = Vec3::new(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z));
        hi = Vec3::new(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z));
    }
    let extent = hi.dist(lo).max(1e-300);
    if deviation > PLANAR_TOL * extent {
        return Err(Error::NotPlanar {
            deviation: deviation / extent,
        });
    }

    // Developed state: all normals agree with the seed. Flat-folded: they
    // alternate and the face-up direction is the reversed seed normal.
    let flat_folded = config
        .poses
        .iter()
        .flat_map(|pose| pose.normals.iter())
        .any(|n| n.dot(seed_normal) < 0.0);
    let normal = if flat_folded {
        -seed_normal
    } else {
        seed_normal
    };

    let mut total = 0.0;
    let mut count = 0;
    for w in boundaries.windows(3) {
        let u = w[1] - w[0];
        let v = w[2] - w[1];
        // A strip that packs onto itself when flat can bring consecutive
        // cell boundaries together; the polyline's turning is undefined
        // there.
        if u.norm() < 1e-12 * extent || v.norm() < 1e-12 * extent {
            return Err(Error::Domain(
                "degenerate central polyline: consecutive cell boundaries coincide".into(),
            ));
        }
        let turn = libm::atan2(u.cross(v).dot(normal), u.dot(v));
        total += turn;
        count += 1;
    }
    Ok(normalize_angle(total / count as f64))
}
