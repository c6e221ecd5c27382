//! Command implementations.

use crate::design_file::{deg, parse_polyline_csv, DesignFile};
use crate::fmt::fmt_sig;
use crate::obj::mesh_to_obj;

use anyhow::{anyhow, Context};
use oristrip::geom::{rad_to_deg, PI};
use oristrip::shape::{map_polyline_with, PlanOptions};
use oristrip::{
    bennett_offsets, build_mesh, can_insert_rectangular_panels, classify, compose_cell, iterate,
    polyline_to_strip, propagate, thickness_profile, turning_angles, CellTemplate, Classification,
    Error, FoldMode, Seed, StripDesign,
};
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;

/// An error plus the process exit code it maps to.
pub struct CliError {
    pub code: u8,
    pub source: anyhow::Error,
}

pub type CliResult = Result<(), CliError>;

fn input_error(source: anyhow::Error) -> CliError {
    CliError { code: 2, source }
}

/// Exit-code contract: input problems are 2, kinematic/singularity problems
/// are 3, design infeasibility is 4.
fn core_error(err: Error) -> CliError {
    let code = match err {
        Error::SingularVertex | Error::NotPlanar { .. } => 3,
        Error::GeometryInfeasible { .. } | Error::NoSolution | Error::SingularResult => 4,
        _ => 2,
    };
    CliError {
        code,
        source: anyhow!("{err}"),
    }
}

fn load_design(path: &Path) -> Result<StripDesign, CliError> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(input_error)?;
    let file = DesignFile::parse(&text).map_err(input_error)?;
    file.to_design().map_err(|err| {
        // Singular vertices in an otherwise well-formed file are kinematic
        // errors, not parse errors.
        if err.to_string().contains("singular vertex") {
            CliError {
                code: 3,
                source: err,
            }
        } else {
            input_error(err)
        }
    })
}

#[derive(Serialize)]
struct VertexReport {
    theta0_deg: f64,
    theta1_deg: f64,
    sigma: i8,
    i_out: u8,
    local_multiplier: f64,
}

#[derive(Serialize)]
struct CellMapReport {
    a: f64,
    b: f64,
    branch_sign: f64,
    p_eff: f64,
}

#[derive(Serialize)]
struct AnalyzeReport {
    periodic: bool,
    period: usize,
    vertex_count: usize,
    vertices: Vec<VertexReport>,
    cell_map: Option<CellMapReport>,
    classification: &'static str,
    transition_width_cells: Option<f64>,
    flat_invades_from_driven_end: Option<bool>,
    phi_dev_deg: Option<f64>,
    phi_flat_deg: Option<f64>,
}

pub fn analyze(path: &Path, json: bool) -> CliResult {
    let design = load_design(path)?;

    let vertices = design
        .cell()
        .iter()
        .map(|spec| {
            Ok(VertexReport {
                theta0_deg: rad_to_deg(spec.angles.theta0()),
                theta1_deg: rad_to_deg(spec.angles.theta1()),
                sigma: if spec.mode == FoldMode::Plus { 1 } else { -1 },
                i_out: spec.i_out,
                local_multiplier: spec.local_multiplier().map_err(core_error)?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let cell_map = match compose_cell(design.cell()) {
        Ok(map) => Some(map),
        Err(Error::DegenerateMap) => None,
        Err(err) => return Err(core_error(err)),
    };
    let classification = classify(&design).map_err(core_error)?;
    let (class_name, width, front) = match classification {
        Classification::Degenerate => ("degenerate", None, None),
        Classification::Uniform { .. } => ("uniform", None, None),
        Classification::DominoLike {
            width,
            flat_invades_from_driven_end,
            ..
        } => (
            "domino_like",
            Some(width),
            Some(flat_invades_from_driven_end),
        ),
    };
    let turning = design
        .periodic()
        .then(|| turning_angles(&design))
        .transpose()
        .map_err(core_error)?;

    let report = AnalyzeReport {
        periodic: design.periodic(),
        period: design.period(),
        vertex_count: design.vertex_count(),
        vertices,
        cell_map: cell_map.as_ref().map(|m| CellMapReport {
            a: m.a,
            b: m.b,
            branch_sign: m.branch_sign,
            p_eff: m.p_eff,
        }),
        classification: class_name,
        transition_width_cells: width,
        flat_invades_from_driven_end: front,
        phi_dev_deg: turning.map(|t| rad_to_deg(t.phi_dev)),
        phi_flat_deg: turning.map(|t| rad_to_deg(t.phi_flat)),
    };

    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
        return Ok(());
    }

    println!("period: {}", report.period);
    println!(
        "vertices: {} ({})",
        report.vertex_count,
        if report.periodic {
            "periodic"
        } else {
            "non-periodic"
        }
    );
    let multipliers: Vec<String> = report
        .vertices
        .iter()
        .map(|v| fmt_sig(v.local_multiplier))
        .collect();
    println!("local multipliers: {}", multipliers.join(" "));
    match &report.cell_map {
        Some(m) => {
            println!(
                "cell map: a = {}, b = {}, branch = {}",
                fmt_sig(m.a),
                fmt_sig(m.b),
                fmt_sig(m.branch_sign)
            );
            println!("p_eff: {}", fmt_sig(m.p_eff));
        }
        None => println!("cell map: identity (no adjacent-crease vertex)"),
    }
    println!("classification: {}", report.classification);
    match report.transition_width_cells {
        Some(w) => println!("transition width (10-90%): {} cells", fmt_sig(w)),
        None => println!("transition width (10-90%): -"),
    }
    if let Some(front) = report.flat_invades_from_driven_end {
        println!(
            "front direction: flat state {} the driven end",
            if front {
                "invades from"
            } else {
                "recedes toward"
            }
        );
    }
    match report.phi_dev_deg.zip(report.phi_flat_deg) {
        Some((dev, flat)) => {
            println!("phi_dev: {} deg", fmt_sig(dev));
            println!("phi_flat: {} deg", fmt_sig(flat));
        }
        None => println!("phi_dev/phi_flat: - (non-periodic)"),
    }
    Ok(())
}

pub fn fold(path: &Path, rho0_deg: f64, cells: usize, full: bool) -> CliResult {
    let design = load_design(path)?;
    if rho0_deg.abs() > 180.0 || rho0_deg.is_nan() {
        return Err(input_error(anyhow!(
            "|rho0| = {} exceeds 180 degrees",
            rho0_deg.abs()
        )));
    }
    let orbit = iterate(&design, deg(rho0_deg), cells).map_err(core_error)?;

    let stride = design.period();
    let mut out = String::new();
    out.push_str("t,rho_deg");
    if full {
        for j in 0..stride {
            for i in 0..4 {
                out.push_str(&format!(",v{j}_rho{i}_deg"));
            }
        }
    }
    out.push('\n');
    for (t, rho) in orbit.rho_t.iter().enumerate() {
        out.push_str(&t.to_string());
        out.push(',');
        out.push_str(&fmt_sig(rad_to_deg(*rho)));
        if full {
            if t < cells {
                for j in 0..stride {
                    for i in 0..4 {
                        out.push(',');
                        out.push_str(&fmt_sig(rad_to_deg(
                            orbit.full_states[t * stride + j].rho[i],
                        )));
                    }
                }
            } else {
                // The final boundary row has no cell of its own.
                for _ in 0..4 * stride {
                    out.push(',');
                }
            }
        }
        out.push('\n');
    }
    print!("{out}");
    Ok(())
}

pub fn sweep(
    path: &Path,
    frames: usize,
    out_dir: &Path,
    cells: usize,
    negative: bool,
) -> CliResult {
    let design = load_design(path)?;
    if frames < 2 {
        return Err(input_error(anyhow!("need at least 2 frames, got {frames}")));
    }
    let strip = if design.periodic() {
        design.tiled(cells.max(1)).map_err(core_error)?
    } else {
        design
    };
    fs::create_dir_all(out_dir)
        .with_context(|| format!("cannot create {}", out_dir.display()))
        .map_err(input_error)?;

    let limit = PI * (1.0 - 1e-6) * if negative { -1.0 } else { 1.0 };
    let mut index = String::from("frame,rho0_deg,file\n");
    for k in 0..frames {
        let rho0 = limit * k as f64 / (frames - 1) as f64;
        let config = propagate(&strip, rho0, &Seed::canonical()).map_err(core_error)?;
        let mesh = build_mesh(&config);
        let name = format!("frame_{k:04}.obj");
        fs::write(out_dir.join(&name), mesh_to_obj(&mesh))
            .with_context(|| format!("cannot write {name}"))
            .map_err(input_error)?;
        index.push_str(&format!("{k},{},{name}\n", fmt_sig(rad_to_deg(rho0))));
    }
    fs::write(out_dir.join("index.csv"), index)
        .context("cannot write index.csv")
        .map_err(input_error)?;
    println!("wrote {frames} frames to {}", out_dir.display());
    Ok(())
}

#[derive(Debug, Deserialize)]
struct TemplateFile {
    i_out: [u8; 4],
    sigma: [i8; 4],
    #[serde(default)]
    ratio: Option<f64>,
}

#[allow(clippy::too_many_arguments)]
pub fn design(
    polyline_path: &Path,
    out: Option<&Path>,
    crease_len: Option<f64>,
    phi_star_deg: f64,
    phi0_deg: Option<f64>,
    ratio: Option<f64>,
    template_path: Option<&Path>,
    reverse_chain: bool,
    verify: bool,
) -> CliResult {
    let text = fs::read_to_string(polyline_path)
        .with_context(|| format!("cannot read {}", polyline_path.display()))
        .map_err(input_error)?;
    let points = parse_polyline_csv(&text).map_err(input_error)?;

    let (template, template_ratio) = match template_path {
        None => {
            if reverse_chain {
                (CellTemplate::miura_uniform(), None)
            } else {
                (CellTemplate::inserted_miura(), None)
            }
        }
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))
                .map_err(input_error)?;
            let file: TemplateFile = serde_json::from_str(&text)
                .context("template file is not valid JSON")
                .map_err(input_error)?;
            let mut sigma = [FoldMode::Plus; 4];
            for (slot, s) in sigma.iter_mut().zip(file.sigma) {
                *slot = FoldMode::from_sigma(s).map_err(core_error)?;
            }
            (
                CellTemplate {
                    i_out: file.i_out,
                    sigma,
                },
                file.ratio,
            )
        }
    };
    let ratio = ratio
        .or(template_ratio)
        .unwrap_or_else(CellTemplate::reference_ratio);

    let segment_len = points[1].dist(points[0]);
    let crease_len = crease_len.unwrap_or(segment_len / 3.0);
    let phi_star = deg(phi_star_deg);
    let phi0 = deg(phi0_deg.unwrap_or(phi_star_deg));

    let plan = map_polyline_with(
        &points,
        crease_len,
        phi_star,
        phi0,
        PlanOptions { reverse_chain },
    )
    .map_err(core_error)?;
    let design = polyline_to_strip(&plan, &template, ratio).map_err(core_error)?;

    if verify {
        let config = propagate(&design, 0.0, &Seed::canonical()).map_err(core_error)?;
        let planned: Vec<(f64, f64)> = plan.centers.iter().map(|c| (c.x, c.y)).collect();
        let rebuilt: Vec<(f64, f64)> = config
            .poses
            .iter()
            .map(|p| (p.origin.x, p.origin.y))
            .collect();
        let worst = aligned_max_deviation(&planned, &rebuilt);
        eprintln!("roundtrip max deviation: {}", fmt_sig(worst));
    }

    let file = DesignFile::from_design(&design);
    let json = file.to_json();
    match out {
        Some(path) => fs::write(path, json)
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(input_error)?,
        None => print!("{json}"),
    }
    Ok(())
}

/// First-point, first-direction rigid alignment; mirrors the test helper so
/// `--verify` reports the same number the tests check.
fn aligned_max_deviation(fixed: &[(f64, f64)], moved: &[(f64, f64)]) -> f64 {
    let dir = |pts: &[(f64, f64)]| (pts[1].0 - pts[0].0, pts[1].1 - pts[0].1);
    let (fx, fy) = dir(fixed);
    let (mx, my) = dir(moved);
    let rot = fy.atan2(fx) - my.atan2(mx);
    let (s, c) = rot.sin_cos();
    let mut max_dev = 0.0f64;
    for (f, m) in fixed.iter().zip(moved) {
        let dx = m.0 - moved[0].0;
        let dy = m.1 - moved[0].1;
        let tx = fixed[0].0 + c * dx - s * dy;
        let ty = fixed[0].1 + s * dx + c * dy;
        max_dev = max_dev.max(((tx - f.0).powi(2) + (ty - f.1).powi(2)).sqrt());
    }
    max_dev
}

pub fn thickness(path: &Path, d0: f64) -> CliResult {
    let design = load_design(path)?;
    if d0 <= 0.0 || d0.is_nan() {
        return Err(input_error(anyhow!("d0 = {d0} must be positive")));
    }
    let profile = thickness_profile(&design, d0).map_err(core_error)?;

    let mut out = String::from("n,d0,d1,d2,d3\n");
    for (n, seed) in profile.d0.iter().enumerate() {
        let offsets = bennett_offsets(&design.vertex(n).angles, *seed).map_err(core_error)?;
        out.push_str(&format!(
            "{n},{},{},{},{}\n",
            fmt_sig(offsets.d[0]),
            fmt_sig(offsets.d[1]),
            fmt_sig(offsets.d[2]),
            fmt_sig(offsets.d[3])
        ));
    }
    let ratios: Vec<String> = profile.cell_ratios.iter().map(|r| fmt_sig(*r)).collect();
    out.push_str(&format!("# cell_ratio: {}\n", ratios.join(" ")));
    out.push_str(&format!(
        "# profile: {}\n",
        if profile.exponential {
            "exponential"
        } else {
            "uniform"
        }
    ));
    match can_insert_rectangular_panels(&design) {
        Ok(check) if check.feasible => out.push_str("# rectangular_panels: yes\n"),
        Ok(check) => {
            let ids: Vec<String> = check.offending.iter().map(|n| n.to_string()).collect();
            out.push_str(&format!(
                "# rectangular_panels: no (vertices {})\n",
                ids.join(" ")
            ));
        }
        Err(Error::WrongConnectivity { vertex }) => {
            out.push_str(&format!(
                "# rectangular_panels: not applicable (vertex {vertex} does not use the opposite crease)\n"
            ));
        }
        Err(err) => return Err(core_error(err)),
    }
    print!("{out}");
    Ok(())
}
