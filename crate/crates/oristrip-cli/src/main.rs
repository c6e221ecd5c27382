//! `oristrip`: analyze, fold, sweep, design, and thicken degree-4 origami
//! strips from the command line.
//!
//! Exit codes: 0 success, 2 invalid input, 3 kinematic error (singular
//! vertex, non-planar state), 4 design infeasibility.

mod commands;
mod design_file;
mod fmt;
mod obj;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "oristrip", version, about = "Degree-4 origami strip toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    /// Sweep toward the flat-folded state at +180 degrees.
    Pos,
    /// Sweep toward the flat-folded state at -180 degrees.
    Neg,
}

#[derive(Subcommand)]
enum Command {
    /// Report the cell map, classification, transition width, and turning
    /// angles of a design.
    Analyze {
        /// Design file (JSON).
        design: PathBuf,
        /// Emit a machine-readable JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Fold the strip and print the cell-boundary orbit as CSV.
    Fold {
        design: PathBuf,
        /// Input fold angle at the driven end, degrees, in [-180, 180].
        #[arg(long)]
        rho0: f64,
        /// Number of unit cells to fold.
        #[arg(long, default_value_t = 10)]
        cells: usize,
        /// Add per-vertex fold-angle columns.
        #[arg(long)]
        full: bool,
    },
    /// Export a fold sweep as OBJ frames plus an index CSV.
    Sweep {
        design: PathBuf,
        /// Number of frames, from developed to just short of flat-folded.
        #[arg(long)]
        frames: usize,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        /// Cells to instantiate for periodic designs.
        #[arg(long, default_value_t = 4)]
        cells: usize,
        /// Folding direction of the sweep.
        #[arg(long, value_enum, default_value_t = Direction::Pos)]
        direction: Direction,
    },
    /// Map a target polyline to a strip design that deploys along it.
    Design {
        /// Polyline CSV with one `x,y` row per point (uniform segments).
        polyline: PathBuf,
        /// Output design file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Central crease length; defaults to a third of the segment length.
        #[arg(long)]
        crease_len: Option<f64>,
        /// Target offset angle in degrees.
        #[arg(long, default_value_t = 60.0)]
        phi_star: f64,
        /// Offset angle at the first point, degrees; defaults to phi-star.
        #[arg(long)]
        phi0: Option<f64>,
        /// Coefficient ratio shared by every adjacent-crease vertex;
        /// defaults to the template's reference ratio.
        #[arg(long)]
        ratio: Option<f64>,
        /// Template JSON overriding the built-in connectivity/mode pattern.
        #[arg(long)]
        template: Option<PathBuf>,
        /// Reflect the four-center chain to the other side of each chord
        /// (pairs with the all-opposite uniform template).
        #[arg(long)]
        reverse_chain: bool,
        /// Rebuild the developed state and report the maximum deviation from
        /// the plan (stderr).
        #[arg(long)]
        verify: bool,
    },
    /// Offset-hinge link lengths and the thickness profile along the strip.
    Thickness {
        design: PathBuf,
        /// Offset of the first vertex's input crease.
        #[arg(long)]
        d0: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { design, json } => commands::analyze(&design, json),
        Command::Fold {
            design,
            rho0,
            cells,
            full,
        } => commands::fold(&design, rho0, cells, full),
        Command::Sweep {
            design,
            frames,
            out,
            cells,
            direction,
        } => commands::sweep(&design, frames, &out, cells, direction == Direction::Neg),
        Command::Design {
            polyline,
            out,
            crease_len,
            phi_star,
            phi0,
            ratio,
            template,
            reverse_chain,
            verify,
        } => commands::design(
            &polyline,
            out.as_deref(),
            crease_len,
            phi_star,
            phi0,
            ratio,
            template.as_deref(),
            reverse_chain,
            verify,
        ),
        Command::Thickness { design, d0 } => commands::thickness(&design, d0),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {:#}", err.source);
            ExitCode::from(err.code)
        }
    }
}
