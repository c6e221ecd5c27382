//! The JSON design-file format.
//!
//! Angles are stored in degrees and converted to radians at the boundary.
//! `lengths` is optional per vertex and defaults to unit creases.

use anyhow::{anyhow, bail, Context};
use oristrip::geom::{deg_to_rad, rad_to_deg};
use oristrip::{FoldMode, SectorAngles, StripDesign, VertexSpec};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DesignFile {
    pub version: u32,
    pub periodic: bool,
    pub period: usize,
    pub vertices: Vec<VertexEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexEntry {
    pub theta0_deg: f64,
    pub theta1_deg: f64,
    pub sigma: i8,
    pub i_out: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lengths: Option<[f64; 4]>,
}

impl DesignFile {
    pub fn parse(text: &str) -> anyhow::Result<DesignFile> {
        let file: DesignFile =
            serde_json::from_str(text).context("design file is not valid JSON")?;
        if file.version != FORMAT_VERSION {
            bail!(
                "unsupported design file version {} (expected {FORMAT_VERSION})",
                file.version
            );
        }
        Ok(file)
    }

    pub fn to_design(&self) -> anyhow::Result<StripDesign> {
        let mut vertices = Vec::with_capacity(self.vertices.len());
        let mut lengths = Vec::with_capacity(self.vertices.len());
        let mut any_lengths = false;
        for (n, entry) in self.vertices.iter().enumerate() {
            for (field, value) in [
                ("theta0_deg", entry.theta0_deg),
                ("theta1_deg", entry.theta1_deg),
            ] {
                if !(value > 0.0 && value < 180.0) {
                    bail!("vertex {n}: {field} = {value} must lie in (0, 180)");
                }
            }
            let angles = SectorAngles::from_degrees(entry.theta0_deg, entry.theta1_deg)
                .map_err(|e| anyhow!("vertex {n}: {e}"))?;
            let mode = FoldMode::from_sigma(entry.sigma).map_err(|e| anyhow!("vertex {n}: {e}"))?;
            let spec = VertexSpec::new(angles, mode, entry.i_out)
                .map_err(|e| anyhow!("vertex {n}: {e}"))?;
            vertices.push(spec);
            if let Some(quad) = entry.lengths {
                any_lengths = true;
                lengths.push(quad);
            } else {
                lengths.push([1.0; 4]);
            }
        }
        let lengths = any_lengths.then_some(lengths);
        StripDesign::new(vertices, self.periodic, self.period, lengths).map_err(|e| anyhow!("{e}"))
    }

    pub fn from_design(design: &StripDesign) -> DesignFile {
        let vertices = design
            .vertices()
            .iter()
            .enumerate()
            .map(|(n, spec)| VertexEntry {
                theta0_deg: rad_to_deg(spec.angles.theta0()),
                theta1_deg: rad_to_deg(spec.angles.theta1()),
                sigma: if spec.mode.sigma() > 0.0 { 1 } else { -1 },
                i_out: spec.i_out,
                lengths: Some(*design.lengths(n)),
            })
            .collect();
        DesignFile {
            version: FORMAT_VERSION,
            periodic: design.periodic(),
            period: design.period(),
            vertices,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("design file serializes");
        text.push('\n');
        text
    }
}

/// Reads a `x,y` polyline CSV; blank lines and `#` comments are skipped.
pub fn parse_polyline_csv(text: &str) -> anyhow::Result<Vec<oristrip::geom::Vec2>> {
    let mut points = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (x, y) = line
            .split_once(',')
            .ok_or_else(|| anyhow!("line {}: expected `x,y`", idx + 1))?;
        let x: f64 = x
            .trim()
            .parse()
            .with_context(|| format!("line {}: bad x", idx + 1))?;
        let y: f64 = y
            .trim()
            .parse()
            .with_context(|| format!("line {}: bad y", idx + 1))?;
        points.push(oristrip::geom::Vec2::new(x, y));
    }
    if points.len() < 2 {
        bail!("polyline needs at least two points, found {}", points.len());
    }
    Ok(points)
}

/// Angle conversion helper shared by the commands.
pub fn deg(input: f64) -> f64 {
    deg_to_rad(input)
}
