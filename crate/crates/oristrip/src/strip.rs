//! The strip recurrence: vertex chaining, cell-map composition, orbits, and
//! the uniform/domino classification.
//!
//! Chained through a shared crease, each vertex maps its input fold angle to
//! the fold angle of its output crease. Over one unit cell the composition
//! is again a symmetric fractional linear transformation of the cosine, so a
//! single coefficient pair `(a, b)` plus an odd-branch sign captures the
//! whole cell. The developed state (`rho = 0`) and the flat-folded states
//! (`rho = +-pi`) are the only fixed points whenever the map is not the
//! identity; the effective multiplier `p_eff` (slope at 0) decides between
//! uniform motion (`|p_eff| = 1`) and a domino-like transition front.

use crate::error::Error;
use crate::geom::{sgn, PI};
use crate::vertex::{
    fold_angles, folding_multiplier, is_singular, FoldMode, SectorAngles, VertexState,
};
use crate::Result;

use alloc::format;
use alloc::vec::Vec;

/// Tolerance on `||p_eff| - 1|` below which a map counts as uniform.
pub const UNIFORM_TOL: f64 = 1e-9;

/// Relative tolerance for the shared-crease length compatibility check.
pub const LENGTH_TOL: f64 = 1e-9;

/// Fold angle used to probe the sign branch of a composed cell map.
const BRANCH_PROBE: f64 = 1e-3;

/// One vertex of a strip: sector angles, folding mode, and the index of the
/// crease shared with the next vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexSpec {
    pub angles: SectorAngles,
    pub mode: FoldMode,
    pub i_out: u8,
}

impl VertexSpec {
    /// Output crease 0 would reuse the input crease, so `i_out` must be 1, 2,
    /// or 3; adjacent-crease vertices (`i_out` 1 or 3) must be nonsingular
    /// for the given mode.
    pub fn new(angles: SectorAngles, mode: FoldMode, i_out: u8) -> Result<Self> {
        if !(1..=3).contains(&i_out) {
            return Err(Error::Domain(format!(
                "i_out must be 1, 2, or 3, got {i_out}"
            )));
        }
        if i_out != 2 && is_singular(&angles, mode) {
            return Err(Error::SingularVertex);
        }
        Ok(Self {
            angles,
            mode,
            i_out,
        })
    }

    /// Signed tan-half-angle multiplier of this vertex's input-to-output map:
    /// the folding multiplier for `i_out = 1`, `sigma` for the opposite
    /// crease, and `-sigma p` for `i_out = 3`.
    pub fn local_multiplier(&self) -> Result<f64> {
        match self.i_out {
            2 => Ok(self.mode.sigma()),
            1 => folding_multiplier(&self.angles, self.mode),
            _ => Ok(-self.mode.sigma() * folding_multiplier(&self.angles, self.mode)?),
        }
    }
}

/// A strip of chained vertices.
///
/// `period` is the unit-cell size for periodic strips and the cell stride
/// used for orbit sampling otherwise. Crease lengths default to 1 and must
/// agree across shared creases.
#[derive(Debug, Clone, PartialEq)]
pub struct StripDesign {
    vertices: Vec<VertexSpec>,
    periodic: bool,
    period: usize,
    lengths: Vec<[f64; 4]>,
}

impl StripDesign {
    pub fn new(
        vertices: Vec<VertexSpec>,
        periodic: bool,
        period: usize,
        lengths: Option<Vec<[f64; 4]>>,
    ) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidDesign("empty vertex list".into()));
        }
        if period == 0 {
            return Err(Error::InvalidDesign("period must be positive".into()));
        }
        if periodic {
            if vertices.len() < period {
                return Err(Error::InvalidDesign(format!(
                    "periodic design lists {} vertices, fewer than its period {period}",
                    vertices.len()
                )));
            }
            for (n, spec) in vertices.iter().enumerate().skip(period) {
                if *spec != vertices[n - period] {
                    return Err(Error::InvalidDesign(format!(
                        "vertex {n} differs from vertex {} despite period {period}",
                        n - period
                    )));
                }
            }
        }
        let lengths = match lengths {
            Some(lengths) => {
                if lengths.len() != vertices.len() {
                    return Err(Error::InvalidDesign(format!(
                        "{} length entries for {} vertices",
                        lengths.len(),
                        vertices.len()
                    )));
                }
                for (n, quad) in lengths.iter().enumerate() {
                    if quad.iter().any(|&l| l <= 0.0 || !l.is_finite()) {
                        return Err(Error::InvalidDesign(format!(
                            "vertex {n}: crease lengths must be positive"
                        )));
                    }
                }
                for n in 0..vertices.len() - 1 {
                    let shared = lengths[n][vertices[n].i_out as usize];
                    let input = lengths[n + 1][0];
                    if libm::fabs(shared - input) > LENGTH_TOL * shared.max(input) {
                        return Err(Error::InvalidDesign(format!(
                            "shared crease between vertices {n} and {}: lengths {shared} vs {input}",
                            n + 1
                        )));
                    }
                }
                lengths
            }
            None => alloc::vec![[1.0; 4]; vertices.len()],
        };
        Ok(Self {
            vertices,
            periodic,
            period,
            lengths,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn periodic(&self) -> bool {
        self.periodic
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn vertices(&self) -> &[VertexSpec] {
        &self.vertices
    }

    pub fn vertex(&self, n: usize) -> &VertexSpec {
        &self.vertices[n]
    }

    /// First unit cell.
    pub fn cell(&self) -> &[VertexSpec] {
        &self.vertices[..self.period.min(self.vertices.len())]
    }

    pub fn lengths(&self, n: usize) -> &[f64; 4] {
        &self.lengths[n]
    }

    pub fn all_lengths(&self) -> &[[f64; 4]] {
        &self.lengths
    }

    /// Tiles a periodic design to `copies` repetitions of its unit cell.
    pub fn tiled(&self, copies: usize) -> Result<StripDesign> {
        if !self.periodic {
            return Err(Error::NotPeriodic);
        }
        if copies == 0 {
            return Err(Error::InvalidDesign(
                "tiling needs at least one copy".into(),
            ));
        }
        let mut vertices = Vec::with_capacity(self.period * copies);
        let mut lengths = Vec::with_capacity(self.period * copies);
        for _ in 0..copies {
            vertices.extend_from_slice(&self.vertices[..self.period]);
            lengths.extend_from_slice(&self.lengths[..self.period]);
        }
        StripDesign::new(vertices, true, self.period, Some(lengths))
    }

    /// Number of whole cells the orbit of this design may cover: unbounded
    /// for periodic strips, the listed extent otherwise.
    pub fn max_cells(&self) -> Option<usize> {
        if self.periodic {
            None
        } else {
            Some(self.vertices.len() / self.period)
        }
    }

    fn spec_for(&self, n: usize) -> &VertexSpec {
        if self.periodic {
            &self.vertices[n % self.period]
        } else {
            &self.vertices[n]
        }
    }
}

/// Composite map of one unit cell, in cosine coordinates:
/// `cos(f(rho)) = (a cos rho + b) / (b cos rho + a)`, with
/// `sgn(f(rho)) = branch_sign * sgn(rho)` on `(-pi, pi)`.
///
/// Stored in canonical scale `a = 1`, `|b| < 1`; `p_eff` is the signed slope
/// of `f` at the developed state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellMap {
    pub a: f64,
    pub b: f64,
    pub branch_sign: f64,
    pub p_eff: f64,
}

impl CellMap {
    /// Image of `cos rho` under the cosine-space map.
    pub fn cosine_image(&self, cos_rho: f64) -> f64 {
        (self.a * cos_rho + self.b) / (self.b * cos_rho + self.a)
    }

    /// Applies the cell map to a fold angle via the tan-half-angle form.
    pub fn apply(&self, rho: f64) -> f64 {
        if rho == 0.0 {
            return 0.0;
        }
        if libm::fabs(rho) == PI {
            return sgn(rho) * sgn(self.p_eff) * PI;
        }
        2.0 * libm::atan2(self.p_eff * libm::sin(0.5 * rho), libm::cos(0.5 * rho))
    }
}

/// Fold angle of the output crease for the input fold angle `rho_in`.
pub fn local_map(spec: &VertexSpec, rho_in: f64) -> Result<f64> {
    if libm::fabs(rho_in) > PI || rho_in.is_nan() {
        return Err(Error::Domain(format!(
            "|rho_in| = {} exceeds pi",
            libm::fabs(rho_in)
        )));
    }
    if spec.i_out == 2 {
        // Opposite creases evolve at the same rate; no branch math needed.
        return Ok(spec.mode.sigma() * rho_in);
    }
    Ok(fold_angles(&spec.angles, spec.mode, rho_in)?.rho[spec.i_out as usize])
}

fn sequential_cell_map(cell: &[VertexSpec], rho: f64) -> Result<f64> {
    let mut value = rho;
    for spec in cell {
        value = local_map(spec, value)?;
    }
    Ok(value)
}

/// Composes the per-vertex cosine-space coefficient matrices of one unit
/// cell into a [`CellMap`].
///
/// Opposite-crease vertices contribute the identity; a cell made only of
/// them has no fractional-linear factor at all and is rejected as
/// [`Error::DegenerateMap`]. The odd-branch sign is read off a sequential
/// evaluation at a small probe angle rather than derived symbolically.
pub fn compose_cell(cell: &[VertexSpec]) -> Result<CellMap> {
    if cell.is_empty() {
        return Err(Error::Domain("empty cell".into()));
    }
    let mut a = 1.0_f64;
    let mut b = 0.0_f64;
    let mut factors = 0usize;
    for spec in cell {
        if spec.i_out == 2 {
            continue;
        }
        if is_singular(&spec.angles, spec.mode) {
            return Err(Error::SingularVertex);
        }
        let ab = crate::vertex::ab_coefficients(&spec.angles, spec.mode);
        // Symmetric 2x2 product [[A,B],[B,A]] * [[a,b],[b,a]].
        let (na, nb) = (ab.a * a + ab.b * b, ab.a * b + ab.b * a);
        let scale = libm::fabs(na).max(libm::fabs(nb));
        a = na / scale;
        b = nb / scale;
        factors += 1;
    }
    if factors == 0 {
        return Err(Error::DegenerateMap);
    }
    // |a| > |b| holds for every product of these factors; canonicalize a = 1.
    b /= a;
    a = 1.0;
    let branch_sign = sgn(sequential_cell_map(cell, BRANCH_PROBE)?);
    if branch_sign == 0.0 {
        return Err(Error::Domain(
            "cell map collapsed the probe angle to zero".into(),
        ));
    }
    let p_eff = branch_sign * libm::sqrt((a - b) / (a + b));
    Ok(CellMap {
        a,
        b,
        branch_sign,
        p_eff,
    })
}

/// Orbit of a strip: the input fold angle at each cell boundary and the full
/// per-vertex fold states.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    /// Cell-boundary input angles, `cells + 1` entries starting at `rho_0`.
    pub rho_t: Vec<f64>,
    /// Fold state of every vertex covered by the orbit, in strip order.
    pub full_states: Vec<VertexState>,
}

/// Folds `cells` unit cells of the strip driven by the input angle `rho0`.
pub fn iterate(design: &StripDesign, rho0: f64, cells: usize) -> Result<Orbit> {
    if libm::fabs(rho0) > PI || rho0.is_nan() {
        return Err(Error::Domain(format!(
            "|rho0| = {} exceeds pi",
            libm::fabs(rho0)
        )));
    }
    if let Some(max) = design.max_cells() {
        if cells > max {
            return Err(Error::Domain(format!(
                "non-periodic design covers {max} cells, requested {cells}"
            )));
        }
    }
    let stride = design.period();
    let mut rho_t = Vec::with_capacity(cells + 1);
    let mut full_states = Vec::with_capacity(cells * stride);
    let mut rho = rho0;
    rho_t.push(rho);
    for t in 0..cells {
        for j in 0..stride {
            let spec = design.spec_for(t * stride + j);
            let state = fold_angles(&spec.angles, spec.mode, rho)?;
            rho = state.rho[spec.i_out as usize];
            full_states.push(state);
        }
        rho_t.push(rho);
    }
    Ok(Orbit { rho_t, full_states })
}

/// The sigmoid on which every domino orbit lies:
/// `2 atan(tan(rho0 / 2) p^t)`, magnitude taken from `|p|^t` and sign from
/// `sgn(rho0) sgn(p)^t` so that negative multipliers alternate branches.
pub fn sigmoid_value(rho0: f64, p: f64, t: i32) -> Result<f64> {
    if libm::fabs(rho0) >= PI {
        return Err(Error::Domain(format!(
            "|rho0| = {} must be below pi",
            libm::fabs(rho0)
        )));
    }
    if p == 0.0 || !p.is_finite() {
        return Err(Error::Domain(format!(
            "multiplier p = {p} must be finite and nonzero"
        )));
    }
    if rho0 == 0.0 {
        return Ok(0.0);
    }
    let magnitude =
        2.0 * libm::atan(libm::fabs(libm::tan(0.5 * rho0)) * libm::pow(libm::fabs(p), t as f64));
    let parity = if t % 2 == 0 { 1.0 } else { sgn(p) };
    Ok(sgn(rho0) * parity * magnitude)
}

/// 10-90% transition width of the sigmoid front, in unit cells:
/// `|2 log(tan(pi/20)) / log |p||`.
pub fn transition_width(p: f64) -> Result<f64> {
    if p == 0.0 || !p.is_finite() {
        return Err(Error::Domain(format!(
            "multiplier p = {p} must be finite and nonzero"
        )));
    }
    if libm::fabs(libm::fabs(p) - 1.0) <= UNIFORM_TOL {
        return Err(Error::UniformMap);
    }
    Ok(libm::fabs(
        2.0 * libm::log(libm::tan(PI / 20.0)) / libm::log(libm::fabs(p)),
    ))
}

/// Propagation class of a strip's cell map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Classification {
    /// Every vertex uses the opposite crease: the recurrence is `+-identity`
    /// and carries no front at all.
    Degenerate,
    /// `|p_eff| = 1`: all cells fold in lockstep.
    Uniform { p_eff: f64 },
    /// `|p_eff| != 1`: a transition front connects the developed and
    /// flat-folded states. `flat_invades_from_driven_end` is true when
    /// `|p_eff| < 1`, i.e. driving the input toward `+-pi` makes the
    /// flat-folded state advance cell by cell from the driven end.
    DominoLike {
        p_eff: f64,
        width: f64,
        flat_invades_from_driven_end: bool,
    },
}

/// Classifies the composite map of the design's unit cell.
pub fn classify(design: &StripDesign) -> Result<Classification> {
    match compose_cell(design.cell()) {
        Err(Error::DegenerateMap) => Ok(Classification::Degenerate),
        Err(e) => Err(e),
        Ok(map) => {
            if libm::fabs(libm::fabs(map.p_eff) - 1.0) <= UNIFORM_TOL {
                Ok(Classification::Uniform { p_eff: map.p_eff })
            } else {
                Ok(Classification::DominoLike {
                    p_eff: map.p_eff,
                    width: transition_width(map.p_eff)?,
                    flat_invades_from_driven_end: libm::fabs(map.p_eff) < 1.0,
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn spec(d0: f64, d1: f64, sigma: i8, i_out: u8) -> VertexSpec {
        VertexSpec::new(
            SectorAngles::from_degrees(d0, d1).unwrap(),
            FoldMode::from_sigma(sigma).unwrap(),
            i_out,
        )
        .unwrap()
    }

    #[test]
    fn vertex_spec_rejects_bad_i_out_and_singular_adjacent() {
        let s = SectorAngles::from_degrees(120.0, 60.0).unwrap();
        assert!(VertexSpec::new(s, FoldMode::Minus, 0).is_err());
        assert!(VertexSpec::new(s, FoldMode::Minus, 4).is_err());
        // Singular pair is fine through the opposite crease but not adjacent.
        assert!(VertexSpec::new(s, FoldMode::Plus, 2).is_ok());
        assert_eq!(
            VertexSpec::new(s, FoldMode::Plus, 1),
            Err(Error::SingularVertex)
        );
    }

    #[test]
    fn opposite_crease_local_map_is_exact() {
        let v = spec(77.0, 33.0, 1, 2);
        assert_eq!(local_map(&v, 0.7).unwrap(), 0.7);
        let v = spec(77.0, 33.0, -1, 2);
        assert_eq!(local_map(&v, 0.7).unwrap(), -0.7);
    }

    #[test]
    fn degenerate_cell_map_is_flagged() {
        let design = catalog::opposite_identity_pair();
        assert_eq!(compose_cell(design.cell()), Err(Error::DegenerateMap));
        assert_eq!(classify(&design).unwrap(), Classification::Degenerate);
    }

    #[test]
    fn canceling_pair_is_uniform_not_degenerate() {
        let design = catalog::balanced_adjacent_pair();
        let map = compose_cell(design.cell()).unwrap();
        assert!(
            (libm::fabs(map.p_eff) - 1.0).abs() <= UNIFORM_TOL,
            "p_eff = {}",
            map.p_eff
        );
        assert!(matches!(
            classify(&design).unwrap(),
            Classification::Uniform { .. }
        ));
    }

    #[test]
    fn orbit_fixed_points() {
        let design = catalog::single_vertex_domino();
        let orbit = iterate(&design, 0.0, 8).unwrap();
        assert!(orbit.rho_t.iter().all(|&r| r == 0.0));
        assert!(orbit.full_states.iter().all(|s| s.rho == [0.0; 4]));

        let orbit = iterate(&design, PI, 8).unwrap();
        assert!(orbit.rho_t.iter().all(|&r| libm::fabs(r) == PI));
    }

    #[test]
    fn sigmoid_endpoints() {
        assert_eq!(sigmoid_value(1.3, 0.4, 0).unwrap(), 1.3);
        assert_eq!(sigmoid_value(0.0, 0.4, 7).unwrap(), 0.0);
        assert!(sigmoid_value(PI, 0.4, 1).is_err());
        assert!(sigmoid_value(1.0, 0.0, 1).is_err());
        // Negative multiplier alternates sign with t.
        let v1 = sigmoid_value(1.0, -0.5, 1).unwrap();
        let v2 = sigmoid_value(1.0, -0.5, 2).unwrap();
        assert!(v1 < 0.0 && v2 > 0.0);
    }

    #[test]
    fn transition_width_identity() {
        let t = libm::tan(PI / 20.0);
        let width = transition_width(t * t).unwrap();
        assert!((width - 1.0).abs() < 1e-12);
        assert_eq!(transition_width(1.0), Err(Error::UniformMap));
        assert_eq!(transition_width(-1.0), Err(Error::UniformMap));
    }

    #[test]
    fn tiling_repeats_the_cell() {
        let design = catalog::mirror_sector_insertion();
        let tiled = design.tiled(3).unwrap();
        assert_eq!(tiled.vertex_count(), 12);
        assert_eq!(tiled.vertex(9), design.vertex(1));
        assert!(catalog::s_polyline_points().len() > 2);
    }

    #[test]
    fn non_periodic_orbit_is_bounded() {
        let design = catalog::mirror_sector_insertion();
        let mut vertices = design.vertices().to_vec();
        vertices.extend_from_slice(design.vertices());
        let aperiodic = StripDesign::new(vertices, false, 4, None).unwrap();
        assert_eq!(aperiodic.max_cells(), Some(2));
        assert!(iterate(&aperiodic, 0.5, 2).is_ok());
        assert!(iterate(&aperiodic, 0.5, 3).is_err());
    }

    #[test]
    fn length_compatibility_is_enforced() {
        let v = spec(120.0, 60.0, -1, 1);
        let bad = StripDesign::new(
            alloc::vec![v, v],
            false,
            1,
            Some(alloc::vec![[1.0, 2.0, 1.0, 1.0], [1.0; 4]]),
        );
        assert!(matches!(bad, Err(Error::InvalidDesign(_))));
        let good = StripDesign::new(
            alloc::vec![v, v],
            false,
            1,
            Some(alloc::vec![[1.0, 2.0, 1.0, 1.0], [2.0, 1.0, 1.0, 1.0]]),
        );
        assert!(good.is_ok());
    }
}
