//! Macroscopic shape: discrete curvature of the developed and flat-folded
//! states, sector-angle solves under a fixed coefficient ratio, and the
//! mapping from a target planar polyline to a strip design.
//!
//! The turning angles depend only on connectivity and sector angles.
//! Because opposite-crease vertices do not enter the cell recurrence at all,
//! and adjacent-crease vertices enter only through the ratio `A/B`, sector
//! angles can follow a target curve while the propagation behavior stays
//! fixed: that is the inverse-design route implemented by [`map_polyline`]
//! and [`polyline_to_strip`].

use crate::error::Error;
use crate::geom::{acos_clamped, ccw_angle, normalize_angle, Vec2, PI};
use crate::strip::{StripDesign, VertexSpec};
use crate::vertex::{is_singular, FoldMode, SectorAngles};
use crate::Result;

use alloc::format;
use alloc::vec::Vec;

/// Tolerance window for arccos arguments in the polyline construction.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Relative tolerance for polyline segment uniformity.
pub const UNIFORM_LENGTH_TOL: f64 = 1e-6;

/// Per-cell turning of the strip's central polyline in the two flat states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningAngles {
    pub phi_dev: f64,
    pub phi_flat: f64,
}

/// Evaluates the per-cell turning angles of a periodic design.
///
/// Developed: each vertex turns the polyline by `pi + sum of the sector
/// angles swept from the input to the output crease`. Flat-folded: the same
/// sum with each sector angle signed by the face parity `s(n, i) =
/// (i + sum_{m<n} (i_out(m) - 1)) mod 2`, which records whether face `i` of
/// vertex `n` lands face-up or face-down. Both totals are reduced into
/// `(-pi, pi]`.
pub fn turning_angles(design: &StripDesign) -> Result<TurningAngles> {
    if !design.periodic() {
        return Err(Error::NotPeriodic);
    }
    let mut dev = 0.0;
    let mut flat = 0.0;
    let mut parity_prefix: usize = 0;
    for spec in design.cell() {
        let mut dev_n = PI;
        let mut flat_n = PI;
        for i in 1..=spec.i_out as usize {
            let theta = spec.angles.sector(i - 1);
            dev_n += theta;
            let s = (i + parity_prefix) % 2;
            flat_n += if s == 0 { theta } else { -theta };
        }
        dev += dev_n;
        flat += flat_n;
        parity_prefix += spec.i_out as usize - 1;
    }
    Ok(TurningAngles {
        phi_dev: snap_branch_points(normalize_angle(dev)),
        phi_flat: snap_branch_points(normalize_angle(flat)),
    })
}

/// Collapses summation crumbs at the reduction branch points: angles within
/// 1e-12 of 0 become exactly 0, within 1e-12 of +-pi become exactly +pi
/// (keeping the tie convention).
fn snap_branch_points(x: f64) -> f64 {
    if libm::fabs(x) < 1e-12 {
        0.0
    } else if libm::fabs(libm::fabs(x) - PI) < 1e-12 {
        PI
    } else {
        x
    }
}

/// Which sector angle [`solve_sector_for_ratio`] holds fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedSector {
    Theta0,
    Theta1,
}

/// Solves `cos t0 cos t1 + sigma = ratio * sin t0 sin t1` for the free
/// sector angle, keeping the other fixed.
///
/// The equation is linear in `(cos x, sin x)`, so the two candidate roots
/// come from one arccos. Roots outside `(0, pi)` are discarded; of the
/// survivors the nonsingular one wins, and ties go to the smaller angle.
pub fn solve_sector_for_ratio(
    theta_fixed: f64,
    which: FixedSector,
    mode: FoldMode,
    ratio: f64,
) -> Result<SectorAngles> {
    if !(theta_fixed > 0.0 && theta_fixed < PI) {
        return Err(Error::Domain(format!(
            "fixed sector angle {theta_fixed} is outside (0, pi)"
        )));
    }
    // alpha cos x + beta sin x = gamma.
    let alpha = libm::cos(theta_fixed);
    let beta = -ratio * libm::sin(theta_fixed);
    let gamma = -mode.sigma();
    let r = libm::hypot(alpha, beta);
    if r < 1e-300 {
        return Err(Error::NoSolution);
    }
    let Some(offset) = acos_clamped(gamma / r, 1e-12) else {
        return Err(Error::NoSolution);
    };
    let delta = libm::atan2(beta, alpha);

    let mut candidates: Vec<f64> = Vec::new();
    for root in [delta - offset, delta + offset] {
        let free = normalize_angle(root);
        // Angles coterminal with roots outside (0, pi) cannot be sectors;
        // the double root at offset = 0 is kept once.
        if free > 0.0 && free < PI && !candidates.iter().any(|c| libm::fabs(c - free) < 1e-14) {
            candidates.push(free);
        }
    }
    if candidates.is_empty() {
        return Err(Error::NoSolution);
    }
    candidates.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let build = |free: f64| -> Result<SectorAngles> {
        match which {
            FixedSector::Theta0 => SectorAngles::new(theta_fixed, free),
            FixedSector::Theta1 => SectorAngles::new(free, theta_fixed),
        }
    };
    let mut chosen = None;
    for free in &candidates {
        let angles = build(*free)?;
        if !is_singular(&angles, mode) {
            chosen = Some(angles);
            break;
        }
    }
    let chosen = chosen.ok_or(Error::SingularResult)?;

    let ab = crate::vertex::ab_coefficients(&chosen, mode);
    let achieved = ab.a / ab.b;
    if libm::fabs(achieved - ratio) > 1e-10 * libm::fabs(ratio).max(1.0) {
        return Err(Error::NoSolution);
    }
    Ok(chosen)
}

/// A target polyline mapped to per-cell central-crease geometry.
///
/// Cell `t` owns the four centers `centers[4t .. 4t + 4)`; consecutive
/// centers are `crease_len` apart, and the midpoint of each shared
/// inter-cell crease lands exactly on a polyline point.
#[derive(Debug, Clone, PartialEq)]
pub struct PolylinePlan {
    pub points: Vec<Vec2>,
    pub segment_len: f64,
    pub crease_len: f64,
    pub phi_star: f64,
    pub phi0: f64,
    /// Offset angle per polyline point (one more than the cell count).
    pub phi: Vec<f64>,
    /// Chain opening angle per cell, from the symmetric-choice formula.
    pub psi: Vec<f64>,
    /// Chain closing angle per cell, from the triangle decomposition;
    /// equals `psi` by construction.
    pub psi_bar: Vec<f64>,
    /// Vertex centers, four per cell.
    pub centers: Vec<Vec2>,
    /// True when the chain is reflected to the other side of each chord.
    pub reversed: bool,
}

impl PolylinePlan {
    pub fn cell_count(&self) -> usize {
        self.points.len() - 1
    }

    /// Input-crease direction of cell `t` (from the first center toward the
    /// shared-crease midpoint on the polyline).
    fn inbound_dir(&self, t: usize) -> Vec2 {
        (self.points[t] - self.centers[4 * t]).normalized()
    }

    /// Output-crease direction of the last cell's final vertex.
    fn outbound_dir(&self) -> Vec2 {
        let t = self.cell_count();
        (self.points[t] - self.centers[4 * t - 1]).normalized()
    }
}

/// Options for [`map_polyline_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct PlanOptions {
    /// Reflect the four-center chain to the other side of each chord by
    /// reversing the signs of both rotation angles.
    pub reverse_chain: bool,
}

/// Maps a uniform target polyline to central-crease geometry with the
/// default (unreversed) chain.
pub fn map_polyline(
    points: &[Vec2],
    crease_len: f64,
    phi_star: f64,
    phi0: f64,
) -> Result<PolylinePlan> {
    map_polyline_with(points, crease_len, phi_star, phi0, PlanOptions::default())
}

/// Maps a uniform target polyline to the central creases of a strip.
///
/// Per cell `t`, the first and last centers sit `crease_len / 2` off the
/// polyline endpoints at offset angles `phi_t = phi_star + dphi / 2`
/// (half the local polyline turning); the middle two centers close a
/// three-link chain across the chord with equal opening and closing angles.
pub fn map_polyline_with(
    points: &[Vec2],
    crease_len: f64,
    phi_star: f64,
    phi0: f64,
    options: PlanOptions,
) -> Result<PolylinePlan> {
    if points.len() < 2 {
        return Err(Error::Domain("polyline needs at least two points".into()));
    }
    let cells = points.len() - 1;
    let segment_len = points[1].dist(points[0]);
    if segment_len <= 0.0 || segment_len.is_nan() {
        return Err(Error::NonUniformPolyline { segment: 0 });
    }
    for t in 0..cells {
        let len = points[t + 1].dist(points[t]);
        if libm::fabs(len - segment_len) > UNIFORM_LENGTH_TOL * segment_len {
            return Err(Error::NonUniformPolyline { segment: t });
        }
    }
    if crease_len <= 0.0 || crease_len.is_nan() || crease_len > segment_len / 3.0 + FEASIBILITY_TOL
    {
        return Err(Error::Domain(format!(
            "central crease length {crease_len} must lie in (0, L/3] for segment length {segment_len}"
        )));
    }

    let dirs: Vec<Vec2> = (0..cells)
        .map(|t| (points[t + 1] - points[t]).normalized())
        .collect();
    let mut phi = Vec::with_capacity(cells + 1);
    phi.push(phi0);
    for t in 1..cells {
        let turn = libm::atan2(dirs[t - 1].perp_dot(dirs[t]), dirs[t - 1].dot(dirs[t]));
        phi.push(phi_star + 0.5 * turn);
    }
    // Past the last point the polyline is treated as continuing straight.
    phi.push(phi_star);

    let chain_sign = if options.reverse_chain { -1.0 } else { 1.0 };
    let l = crease_len;
    let mut centers = Vec::with_capacity(4 * cells);
    let mut psi_all = Vec::with_capacity(cells);
    let mut psi_bar_all = Vec::with_capacity(cells);
    for t in 0..cells {
        let first = points[t] + dirs[t].rotated(phi[t]) * (0.5 * l);
        let dir_next = if t + 1 < cells {
            dirs[t + 1]
        } else {
            dirs[cells - 1]
        };
        let last = points[t + 1] - dir_next.rotated(phi[t + 1]) * (0.5 * l);
        let chord = last - first;
        let d = chord.norm();
        if d < 1e-12 {
            return Err(Error::GeometryInfeasible { cell: t });
        }

        // Symmetric opening angle of the three-link chain across the chord.
        let cos_psi =
            (l * l + (0.5 * d) * (0.5 * d) - (0.5 * l) * (0.5 * l)) / (2.0 * l * (0.5 * d));
        let psi =
            acos_clamped(cos_psi, FEASIBILITY_TOL).ok_or(Error::GeometryInfeasible { cell: t })?;

        // Closing angle via the diagonal triangle split; equals psi when the
        // chain closes symmetrically.
        let a = libm::sqrt((l * l + d * d - 2.0 * l * d * libm::cos(psi)).max(0.0));
        if a < 1e-12 {
            return Err(Error::GeometryInfeasible { cell: t });
        }
        let cos_u = a / (2.0 * l);
        let cos_v = (a * a + d * d - l * l) / (2.0 * a * d);
        if libm::fabs(cos_u) > 1.0 + FEASIBILITY_TOL || libm::fabs(cos_v) > 1.0 + FEASIBILITY_TOL {
            return Err(Error::GeometryInfeasible { cell: t });
        }
        let sin_u = libm::sqrt((1.0 - cos_u * cos_u).max(0.0));
        let sin_v = libm::sqrt((1.0 - cos_v * cos_v).max(0.0));
        let psi_bar = acos_clamped(cos_u * cos_v + sin_u * sin_v, FEASIBILITY_TOL)
            .ok_or(Error::GeometryInfeasible { cell: t })?;

        let forward = chord.normalized();
        let backward = forward * -1.0;
        let second = first + forward.rotated(chain_sign * psi) * l;
        let third = last + backward.rotated(chain_sign * psi_bar) * l;

        centers.push(first);
        centers.push(second);
        centers.push(third);
        centers.push(last);
        psi_all.push(psi);
        psi_bar_all.push(psi_bar);

        if libm::fabs(psi - psi_bar) > 1e-9 {
            return Err(Error::GeometryInfeasible { cell: t });
        }
        if libm::fabs(second.dist(third) - l) > 1e-9 * l {
            return Err(Error::GeometryInfeasible { cell: t });
        }
    }

    Ok(PolylinePlan {
        points: points.to_vec(),
        segment_len,
        crease_len,
        phi_star,
        phi0,
        phi,
        psi: psi_all,
        psi_bar: psi_bar_all,
        centers,
        reversed: options.reverse_chain,
    })
}

/// Connectivity and mode pattern of one 4-vertex unit cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellTemplate {
    pub i_out: [u8; 4],
    pub sigma: [FoldMode; 4],
}

impl CellTemplate {
    /// Adjacent-crease vertices inserted into an opposite-crease backbone:
    /// output creases (1, 2, 3, 2) with modes (-1, +1, -1, +1).
    pub fn inserted_miura() -> Self {
        CellTemplate {
            i_out: [1, 2, 3, 2],
            sigma: [
                FoldMode::Minus,
                FoldMode::Plus,
                FoldMode::Minus,
                FoldMode::Plus,
            ],
        }
    }

    /// Mirror image of [`inserted_miura`]: output creases (3, 2, 1, 2).
    /// Reflecting a cell reverses the counterclockwise crease labeling, so
    /// this is the pattern that fits mirror-image strips.
    pub fn inserted_miura_mirrored() -> Self {
        CellTemplate {
            i_out: [3, 2, 1, 2],
            sigma: [
                FoldMode::Minus,
                FoldMode::Plus,
                FoldMode::Minus,
                FoldMode::Plus,
            ],
        }
    }

    /// All-opposite connectivity (2, 2, 2, 2) with mirror-symmetric vertices
    /// everywhere: the cell map degenerates to the identity, so the strip
    /// deploys uniformly. This is the pattern that fits reversed-chain plans,
    /// whose cells turn reflex at the backbone vertices.
    pub fn miura_uniform() -> Self {
        CellTemplate {
            i_out: [2, 2, 2, 2],
            sigma: [FoldMode::Plus; 4],
        }
    }

    /// Coefficient ratio `A/B` of the bundled mirror-sector design, the
    /// default target ratio for [`polyline_to_strip`].
    pub fn reference_ratio() -> f64 {
        let angles = SectorAngles::from_degrees(120.0, 60.0).unwrap();
        let ab = crate::vertex::ab_coefficients(&angles, FoldMode::Minus);
        ab.a / ab.b
    }
}

fn interior_angle(inbound: Vec2, outbound: Vec2) -> f64 {
    ccw_angle(inbound, outbound)
}

/// Builds a strip design over a polyline plan so that every cell composes to
/// the same coefficient ratio (hence the same recurrence).
///
/// The plan pins one sector angle at each adjacent-crease vertex (`theta0`
/// at cell position 0, `theta1` at position 2) through the central-polyline
/// interior angle; the free angle is solved from the ratio. Opposite-crease
/// vertices take the mirror-symmetric split of their interior angle. Central
/// creases get the plan's crease length, lateral creases default to 1.
pub fn polyline_to_strip(
    plan: &PolylinePlan,
    template: &CellTemplate,
    ratio: f64,
) -> Result<StripDesign> {
    const PATTERNS: [[u8; 4]; 3] = [[1, 2, 3, 2], [3, 2, 1, 2], [2, 2, 2, 2]];
    if !PATTERNS.contains(&template.i_out) {
        return Err(Error::Domain(
            "template must chain output creases (1,2,3,2), its mirror (3,2,1,2), or (2,2,2,2)"
                .into(),
        ));
    }
    let cells = plan.cell_count();
    let l = plan.crease_len;
    let mut vertices = Vec::with_capacity(4 * cells);
    let mut lengths = Vec::with_capacity(4 * cells);
    for t in 0..cells {
        let o = &plan.centers[4 * t..4 * t + 4];
        let next_first = if t + 1 < cells {
            plan.centers[4 * t + 4]
        } else {
            // Final output stub: its midpoint is the last polyline point.
            o[3] + (plan.outbound_dir() * (2.0 * (plan.points[cells] - o[3]).norm()))
        };

        let dir_in = [
            plan.inbound_dir(t),
            (o[0] - o[1]).normalized(),
            (o[1] - o[2]).normalized(),
            (o[2] - o[3]).normalized(),
        ];
        let dir_out = [
            (o[1] - o[0]).normalized(),
            (o[2] - o[1]).normalized(),
            (o[3] - o[2]).normalized(),
            (next_first - o[3]).normalized(),
        ];

        for k in 0..4 {
            let omega = interior_angle(dir_in[k], dir_out[k]);
            let mode = template.sigma[k];
            let spec = match template.i_out[k] {
                1 => {
                    // omega spans creases 0 -> 1, so it is theta0 itself.
                    if !(omega > 0.0 && omega < PI) {
                        return Err(Error::GeometryInfeasible { cell: t });
                    }
                    let angles = solve_sector_for_ratio(omega, FixedSector::Theta0, mode, ratio)?;
                    VertexSpec::new(angles, mode, 1)?
                }
                3 => {
                    // omega spans creases 0 -> 3, i.e. pi + theta1. Traversed
                    // input-to-output this vertex is the mirror image of an
                    // i_out = 1 vertex with sectors (pi - theta1, pi - theta0)
                    // and the same coefficients, so the solve runs in the
                    // mirrored labeling to keep the root rule consistent
                    // across the cell.
                    let theta1 = omega - PI;
                    if !(theta1 > 0.0 && theta1 < PI) {
                        return Err(Error::GeometryInfeasible { cell: t });
                    }
                    let mirrored =
                        solve_sector_for_ratio(PI - theta1, FixedSector::Theta0, mode, ratio)?;
                    let angles = SectorAngles::new(PI - mirrored.theta1(), theta1)
                        .map_err(|_| Error::GeometryInfeasible { cell: t })?;
                    VertexSpec::new(angles, mode, 3)?
                }
                _ => {
                    // omega spans creases 0 -> 2 = theta0 + theta1; take the
                    // mirror-symmetric split.
                    let half = 0.5 * omega;
                    if !(half > 0.0 && half < PI) {
                        return Err(Error::GeometryInfeasible { cell: t });
                    }
                    let angles = SectorAngles::new(half, half)
                        .map_err(|_| Error::GeometryInfeasible { cell: t })?;
                    VertexSpec::new(angles, mode, 2)?
                }
            };
            let mut quad = [1.0_f64; 4];
            quad[0] = l;
            quad[spec.i_out as usize] = l;
            vertices.push(spec);
            lengths.push(quad);
        }
    }
    StripDesign::new(vertices, false, 4, Some(lengths))
}
