use alloc::string::String;
use core::fmt;

/// Errors raised by the kinematic and design routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The vertex lies on a singular locus (collinear opposite creases for
    /// the requested folding mode); its adjacent-crease relation is undefined.
    SingularVertex,
    /// An input violated a documented precondition.
    Domain(String),
    /// The cell contains no adjacent-crease vertex, so the cell map is the
    /// identity on fold-angle cosines and carries no propagation data.
    DegenerateMap,
    /// The map has unit multiplier; the 10-90% transition width is undefined.
    UniformMap,
    /// The operation needs a periodic design.
    NotPeriodic,
    /// The configuration is not flat to the stated tolerance.
    NotPlanar { deviation: f64 },
    /// No sector angle in (0, pi) satisfies the requested coefficient ratio.
    NoSolution,
    /// The only sector angles satisfying the ratio are singular.
    SingularResult,
    /// Polyline segment lengths are not uniform; `segment` is the first
    /// offender.
    NonUniformPolyline { segment: usize },
    /// The four-center chain of `cell` cannot be realized for the given
    /// crease length.
    GeometryInfeasible { cell: usize },
    /// The vertex at `vertex` does not use the opposite output crease
    /// required by the rectangular-panel check.
    WrongConnectivity { vertex: usize },
    /// A strip design violated a structural invariant.
    InvalidDesign(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SingularVertex => write!(
                f,
                "singular vertex: adjacent fold-angle relation is undefined"
            ),
            Error::Domain(reason) => write!(f, "domain error: {reason}"),
            Error::DegenerateMap => write!(
                f,
                "degenerate cell map: every vertex uses the opposite output crease"
            ),
            Error::UniformMap => write!(f, "unit multiplier: transition width is undefined"),
            Error::NotPeriodic => write!(f, "operation requires a periodic design"),
            Error::NotPlanar { deviation } => {
                write!(f, "configuration is not planar (deviation {deviation:e})")
            }
            Error::NoSolution => write!(f, "no sector angle in (0, pi) satisfies the ratio"),
            Error::SingularResult => {
                write!(f, "every sector angle satisfying the ratio is singular")
            }
            Error::NonUniformPolyline { segment } => {
                write!(f, "polyline segment {segment} has a different length")
            }
            Error::GeometryInfeasible { cell } => write!(
                f,
                "cell {cell}: four-center chain is geometrically infeasible"
            ),
            Error::WrongConnectivity { vertex } => write!(
                f,
                "vertex {vertex}: expected opposite output crease (i_out = 2)"
            ),
            Error::InvalidDesign(reason) => write!(f, "invalid design: {reason}"),
        }
    }
}

impl core::error::Error for Error {}
