//! Closed-form kinematics of a single developable, flat-foldable degree-4
//! vertex.
//!
//! Creases are labeled 0..3 counterclockwise; the sector angle `theta_i`
//! lies between creases `i` and `i+1`, and the fold angle `rho_i` is the
//! exterior dihedral at crease `i` (positive = valley, negative = mountain).
//! Developability and flat-foldability pin `theta2 = pi - theta0` and
//! `theta3 = pi - theta1`, so two sector angles describe the vertex. A
//! folding mode sign `sigma` selects one of the two kinematic branches
//! through the developed state: `rho2 = sigma * rho0`.
//!
//! The adjacent fold angles obey `tan(rho1/2) = p * tan(rho0/2)` with a
//! constant folding multiplier `p`, equivalently a symmetric fractional
//! linear transformation between the cosines:
//! `cos rho1 = (A cos rho0 + B) / (B cos rho0 + A)` with
//! `A = cos theta0 cos theta1 + sigma`, `B = sin theta0 sin theta1`. The
//! tan-half form is used internally because it stays accurate all the way to
//! the flat-folded state, where the arccos form loses half the significant
//! digits.

use crate::embed;
use crate::error::Error;
use crate::geom::{sgn, PI};
use crate::Result;

use alloc::format;

/// Vertices closer than this to a singular locus are rejected.
pub const SINGULARITY_TOL: f64 = 1e-9;

/// Sector angles of a developable, flat-foldable degree-4 vertex.
///
/// Only `theta0` and `theta1` are stored; `theta2` and `theta3` are the
/// supplements required by developability and flat-foldability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorAngles {
    theta0: f64,
    theta1: f64,
}

impl SectorAngles {
    /// Builds sector angles in radians; both must lie strictly in `(0, pi)`.
    pub fn new(theta0: f64, theta1: f64) -> Result<Self> {
        for (name, value) in [("theta0", theta0), ("theta1", theta1)] {
            if !(value > 0.0 && value < PI) || !value.is_finite() {
                return Err(Error::Domain(format!(
                    "{name} = {value} is outside (0, pi)"
                )));
            }
        }
        Ok(Self { theta0, theta1 })
    }

    pub fn from_degrees(theta0_deg: f64, theta1_deg: f64) -> Result<Self> {
        Self::new(
            crate::geom::deg_to_rad(theta0_deg),
            crate::geom::deg_to_rad(theta1_deg),
        )
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    pub fn theta2(&self) -> f64 {
        PI - self.theta0
    }

    pub fn theta3(&self) -> f64 {
        PI - self.theta1
    }

    /// Sector angle between creases `i` and `i+1` (indices mod 4).
    pub fn sector(&self, i: usize) -> f64 {
        match i % 4 {
            0 => self.theta0(),
            1 => self.theta1(),
            2 => self.theta2(),
            _ => self.theta3(),
        }
    }
}

/// Folding mode: the sign relating the opposite fold angles `rho2` and
/// `rho0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoldMode {
    /// `sigma = +1`: opposite creases fold with the same mountain/valley
    /// assignment.
    Plus,
    /// `sigma = -1`: opposite creases fold with opposite assignments.
    Minus,
}

impl FoldMode {
    pub fn sigma(self) -> f64 {
        match self {
            FoldMode::Plus => 1.0,
            FoldMode::Minus => -1.0,
        }
    }

    pub fn from_sigma(sigma: i8) -> Result<Self> {
        match sigma {
            1 => Ok(FoldMode::Plus),
            -1 => Ok(FoldMode::Minus),
            other => Err(Error::Domain(format!(
                "sigma must be -1 or +1, got {other}"
            ))),
        }
    }
}

/// The four fold angles of one vertex, indexed by crease.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexState {
    pub rho: [f64; 4],
}

/// Coefficients of the symmetric fractional linear transformation between
/// adjacent fold-angle cosines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbCoefficients {
    pub a: f64,
    pub b: f64,
}

/// True when the adjacent-crease relation is undefined: a pair of opposite
/// creases is collinear in the developed state and decouples for this mode.
pub fn is_singular(angles: &SectorAngles, mode: FoldMode) -> bool {
    match mode {
        FoldMode::Minus => libm::fabs(angles.theta0() - angles.theta1()) < SINGULARITY_TOL,
        FoldMode::Plus => libm::fabs(angles.theta0() + angles.theta1() - PI) < SINGULARITY_TOL,
    }
}

/// `A = cos theta0 cos theta1 + sigma`, `B = sin theta0 sin theta1`.
pub fn ab_coefficients(angles: &SectorAngles, mode: FoldMode) -> AbCoefficients {
    let (t0, t1) = (angles.theta0(), angles.theta1());
    AbCoefficients {
        a: libm::cos(t0) * libm::cos(t1) + mode.sigma(),
        b: libm::sin(t0) * libm::sin(t1),
    }
}

/// Signed folding multiplier `p = -sgn(cos theta0 + sigma cos theta1) *
/// sqrt((A - B) / (A + B))`; `|p|` is the slope `|d rho1 / d rho0|` at the
/// developed state.
///
/// Evaluated through half-angle identities: `A - B = cos(t0 + t1) + sigma`
/// and `A + B = cos(t0 - t1) + sigma` collapse to squared half-angle cosines
/// (sigma = +1) or sines (sigma = -1), which keeps near-singular vertices
/// (huge multipliers) at full precision where the raw ratio underflows.
pub fn folding_multiplier(angles: &SectorAngles, mode: FoldMode) -> Result<f64> {
    if is_singular(angles, mode) {
        return Err(Error::SingularVertex);
    }
    let half_sum = 0.5 * (angles.theta0() + angles.theta1());
    let half_diff = 0.5 * (angles.theta0() - angles.theta1());
    Ok(match mode {
        // -sgn(cos t0 + cos t1) * |cos hs / cos hd| with cos hd > 0.
        FoldMode::Plus => -libm::cos(half_sum) / libm::cos(half_diff),
        // sgn(sin hs sin hd) * |sin hs / sin hd| with sin hs > 0.
        FoldMode::Minus => libm::sin(half_sum) / libm::sin(half_diff),
    })
}

/// All four fold angles for the input fold angle `rho0`.
///
/// `rho1 = 2 atan(p tan(rho0 / 2))` (evaluated via `atan2`, exact at the
/// endpoints), `rho2 = sigma rho0`, `rho3 = -sigma rho1`. The developed
/// state maps to the exact zero state, and `|rho0| = pi` locks
/// `|rho1| = pi` with the sign of the continuous limit from `|rho0| < pi`.
pub fn fold_angles(angles: &SectorAngles, mode: FoldMode, rho0: f64) -> Result<VertexState> {
    if libm::fabs(rho0) > PI || rho0.is_nan() {
        return Err(Error::Domain(format!(
            "|rho0| = {} exceeds pi",
            libm::fabs(rho0)
        )));
    }
    let p = folding_multiplier(angles, mode)?;
    let sigma = mode.sigma();

    if rho0 == 0.0 {
        return Ok(VertexState { rho: [0.0; 4] });
    }
    let rho1 = if libm::fabs(rho0) == PI {
        sgn(rho0) * sgn(p) * PI
    } else {
        2.0 * libm::atan2(p * libm::sin(0.5 * rho0), libm::cos(0.5 * rho0))
    };
    Ok(VertexState {
        rho: [rho0, rho1, sigma * rho0, -sigma * rho1],
    })
}

/// Loop-closure residual of a candidate fold state: propagates a frame
/// around all four creases from the canonical seed and returns
/// `|c4 - c0| + |n4 - n0|`. Zero (up to floating error) iff the four fold
/// angles are kinematically compatible with the sector angles.
pub fn closure_residual(angles: &SectorAngles, state: &VertexState) -> f64 {
    let seed = embed::Seed::canonical();
    let (creases, normals) = embed::frame_loop(angles, state, &seed);
    creases[4].dist(creases[0]) + normals[4].dist(normals[0])
}
