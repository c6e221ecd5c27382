//! End-to-end command behavior: exit codes, output formats, and the file
//! round trip.

use oristrip::geom::rad_to_deg;
use oristrip::{compose_cell, sigmoid_value};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn designs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../designs")
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_oristrip"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn oristrip")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn analyze_json_reports_the_cell_map() {
    let path = designs_dir().join("uniform_sector_insertion.json");
    let out = run(&["analyze", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["period"], 4);
    assert_eq!(report["classification"], "domino_like");
    assert!((report["cell_map"]["p_eff"].as_f64().unwrap() - 4.0).abs() < 1e-9);
    assert_eq!(report["phi_dev_deg"].as_f64().unwrap(), 0.0);
}

#[test]
fn analyze_degenerate_design_is_not_an_error() {
    let path = designs_dir().join("opposite_identity_pair.json");
    let out = run(&["analyze", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["classification"], "degenerate");
    assert!(report["cell_map"].is_null());
    assert!(report["transition_width_cells"].is_null());
}

#[test]
fn exit_codes_follow_the_contract() {
    // 2: unreadable or invalid input.
    let out = run(&["analyze", "/does/not/exist.json"]);
    assert_eq!(out.status.code(), Some(2));

    let bad = std::env::temp_dir().join("oristrip_bad.json");
    std::fs::write(
        &bad,
        "{\"version\":1,\"periodic\":true,\"period\":0,\"vertices\":[]}",
    )
    .unwrap();
    let out = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // 2: fold angle beyond the flat-folded range.
    let design = designs_dir().join("single_vertex_domino.json");
    let out = run(&[
        "fold",
        design.to_str().unwrap(),
        "--rho0",
        "200",
        "--cells",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // 3: singular vertex in an otherwise well-formed file.
    let singular = std::env::temp_dir().join("oristrip_singular.json");
    std::fs::write(
        &singular,
        r#"{"version":1,"periodic":true,"period":1,
            "vertices":[{"theta0_deg":85.0,"theta1_deg":85.0,"sigma":-1,"i_out":1}]}"#,
    )
    .unwrap();
    let out = run(&["analyze", singular.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    // 4: geometrically infeasible design request.
    let polyline = designs_dir().join("straight_polyline.csv");
    let out = run(&["design", polyline.to_str().unwrap(), "--crease-len", "0.2"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cell 0"));
}

#[test]
fn fold_matches_the_sigmoid_to_csv_precision() {
    // The single-vertex strip folded from 160.4 degrees follows the sigmoid.
    let design = oristrip::catalog::single_vertex_domino();
    let p = compose_cell(design.cell()).unwrap().p_eff;
    let path = designs_dir().join("single_vertex_domino.json");
    let out = run(&[
        "fold",
        path.to_str().unwrap(),
        "--rho0",
        "160.4",
        "--cells",
        "10",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,rho_deg"));
    let rho0 = 160.4f64.to_radians();
    for (t, line) in lines.enumerate() {
        let (t_str, rho_str) = line.split_once(',').unwrap();
        assert_eq!(t_str.parse::<usize>().unwrap(), t);
        let rho_deg: f64 = rho_str.parse().unwrap();
        let expect = rad_to_deg(sigmoid_value(rho0, p, t as i32).unwrap());
        assert!(
            (rho_deg - expect).abs() < 1e-7,
            "t = {t}: {rho_deg} vs {expect}"
        );
    }
}

#[test]
fn fold_full_columns_carry_the_vertex_states() {
    // sigma = -1 at the lone vertex, so rho2 = -rho0 column for column.
    let path = designs_dir().join("uniform_sector_insertion.json");
    let out = run(&[
        "fold",
        path.to_str().unwrap(),
        "--rho0",
        "70",
        "--cells",
        "2",
        "--full",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header.len(), 2 + 4 * 4);
    assert_eq!(header[2], "v0_rho0_deg");
    assert_eq!(header[17], "v3_rho3_deg");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let rho0: f64 = row[1].parse().unwrap();
    let v0_rho0: f64 = row[2].parse().unwrap();
    let v0_rho2: f64 = row[4].parse().unwrap();
    assert_eq!(v0_rho0, rho0);
    assert_eq!(v0_rho2, -rho0);
    // Final boundary row leaves the vertex columns empty.
    let last = text.lines().last().unwrap();
    assert!(last.ends_with(&",".repeat(16)), "{last}");
}

#[test]
fn fold_from_zero_is_identically_zero() {
    let path = designs_dir().join("mirror_sector_insertion.json");
    let out = run(&[
        "fold",
        path.to_str().unwrap(),
        "--rho0",
        "0",
        "--cells",
        "5",
    ]);
    let text = stdout(&out);
    for line in text.lines().skip(1) {
        assert!(line.ends_with(",0"), "{line}");
    }
}

#[test]
fn fold_from_flat_locks_at_180() {
    let path = designs_dir().join("single_vertex_domino.json");
    let out = run(&[
        "fold",
        path.to_str().unwrap(),
        "--rho0",
        "180",
        "--cells",
        "6",
    ]);
    let text = stdout(&out);
    for line in text.lines().skip(1) {
        let rho: f64 = line.split_once(',').unwrap().1.parse().unwrap();
        assert_eq!(rho.abs(), 180.0, "{line}");
    }
}

#[test]
fn sweep_writes_obj_frames_with_index() {
    let dir = std::env::temp_dir().join("oristrip_cli_sweep");
    let _ = std::fs::remove_dir_all(&dir);
    let path = designs_dir().join("single_vertex_domino.json");
    let out = run(&[
        "sweep",
        path.to_str().unwrap(),
        "--frames",
        "2",
        "--cells",
        "1",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let index = std::fs::read_to_string(dir.join("index.csv")).unwrap();
    let lines: Vec<&str> = index.lines().collect();
    assert_eq!(lines[0], "frame,rho0_deg,file");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("0,0,frame_0000.obj"));

    // Frame 0 is the developed (planar) state; frame 1 is nearly flat.
    let frame0 = std::fs::read_to_string(dir.join("frame_0000.obj")).unwrap();
    let mut v_count = 0;
    let mut f_count = 0;
    for line in frame0.lines() {
        if let Some(rest) = line.strip_prefix("v ") {
            let coords: Vec<f64> = rest.split(' ').map(|x| x.parse().unwrap()).collect();
            assert_eq!(coords.len(), 3);
            assert_eq!(coords[2], 0.0, "developed frame must be planar");
            v_count += 1;
        } else if let Some(rest) = line.strip_prefix("f ") {
            let idx: Vec<usize> = rest.split(' ').map(|x| x.parse().unwrap()).collect();
            assert!(idx.iter().all(|&i| i >= 1 && i <= v_count));
            f_count += 1;
        }
    }
    // One vertex: 5 points, 4 sector triangles.
    assert_eq!(v_count, 5);
    assert_eq!(f_count, 4);

    let frame1 = std::fs::read_to_string(dir.join("frame_0001.obj")).unwrap();
    let max_abs_z = frame1
        .lines()
        .filter_map(|l| l.strip_prefix("v "))
        .map(|rest| {
            rest.split(' ')
                .nth(2)
                .unwrap()
                .parse::<f64>()
                .unwrap()
                .abs()
        })
        .fold(0.0f64, f64::max);
    assert!(
        max_abs_z < 1e-3,
        "near-flat frame should be almost planar, max |z| = {max_abs_z}"
    );
}

#[test]
fn design_files_round_trip_byte_for_byte() {
    // Mirror of the design-file schema, in declaration order.
    #[derive(serde::Serialize, serde::Deserialize)]
    struct FileMirror {
        version: u32,
        periodic: bool,
        period: usize,
        vertices: Vec<EntryMirror>,
    }
    #[derive(serde::Serialize, serde::Deserialize)]
    struct EntryMirror {
        theta0_deg: f64,
        theta1_deg: f64,
        sigma: i8,
        i_out: u8,
        lengths: [f64; 4],
    }

    let polyline = designs_dir().join("s_polyline.csv");
    let out = run(&["design", polyline.to_str().unwrap()]);
    assert!(out.status.success());
    let first = stdout(&out);

    // write -> parse -> write is byte-stable.
    let parsed: FileMirror = serde_json::from_str(&first).unwrap();
    let reserialized = serde_json::to_string_pretty(&parsed).unwrap() + "\n";
    assert_eq!(first, reserialized);

    // And the written file is accepted by every other command.
    let tmp = std::env::temp_dir().join("oristrip_roundtrip.json");
    std::fs::write(&tmp, &first).unwrap();
    let report = run(&["analyze", tmp.to_str().unwrap(), "--json"]);
    assert!(report.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&report)).unwrap();
    assert_eq!(value["classification"], "domino_like");
}

#[test]
fn verify_flag_reports_the_round_trip() {
    let polyline = designs_dir().join("s_polyline.csv");
    let out = run(&["design", polyline.to_str().unwrap(), "--verify"]);
    assert!(out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    let line = stderr
        .lines()
        .find(|l| l.starts_with("roundtrip max deviation:"))
        .expect("deviation report");
    let value: f64 = line.rsplit(' ').next().unwrap().parse().unwrap();
    assert!(value < 1e-6, "{line}");
}

#[test]
fn thickness_of_a_halving_strip() {
    let halving = std::env::temp_dir().join("oristrip_halving.json");
    std::fs::write(
        &halving,
        r#"{"version":1,"periodic":true,"period":1,
            "vertices":[{"theta0_deg":90.0,"theta1_deg":30.0,"sigma":-1,"i_out":1},
                        {"theta0_deg":90.0,"theta1_deg":30.0,"sigma":-1,"i_out":1},
                        {"theta0_deg":90.0,"theta1_deg":30.0,"sigma":-1,"i_out":1}]}"#,
    )
    .unwrap();
    let out = run(&["thickness", halving.to_str().unwrap(), "--d0", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("0,2,1,2,1\n"), "{text}");
    assert!(text.contains("1,1,0.5,1,0.5\n"), "{text}");
    assert!(text.contains("# cell_ratio: 0.5 0.5 0.5"), "{text}");
    assert!(text.contains("# profile: exponential"), "{text}");
    assert!(
        text.contains("# rectangular_panels: not applicable"),
        "{text}"
    );

    let out = run(&["thickness", halving.to_str().unwrap(), "--d0", "-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thickness_verdict_reports_offenders() {
    let path = designs_dir().join("mirror_sector_insertion.json");
    let out = run(&["thickness", path.to_str().unwrap(), "--d0", "1"]);
    assert!(stdout(&out).contains("# rectangular_panels: yes"));

    let broken = std::env::temp_dir().join("oristrip_broken_mirror.json");
    std::fs::write(
        &broken,
        r#"{"version":1,"periodic":true,"period":4,
            "vertices":[{"theta0_deg":120.0,"theta1_deg":60.0,"sigma":-1,"i_out":1},
                        {"theta0_deg":60.0,"theta1_deg":61.0,"sigma":1,"i_out":2},
                        {"theta0_deg":120.0,"theta1_deg":60.0,"sigma":-1,"i_out":3},
                        {"theta0_deg":120.0,"theta1_deg":120.0,"sigma":1,"i_out":2}]}"#,
    )
    .unwrap();
    let out = run(&["thickness", broken.to_str().unwrap(), "--d0", "1"]);
    assert!(stdout(&out).contains("# rectangular_panels: no (vertices 1)"));
}

#[test]
fn template_file_overrides_the_pattern() {
    let polyline = designs_dir().join("straight_polyline.csv");
    let template = designs_dir().join("template_inserted_miura.json");
    let out = run(&[
        "design",
        polyline.to_str().unwrap(),
        "--template",
        template.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let thetas: Vec<f64> = value["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .take(4)
        .map(|v| v["theta0_deg"].as_f64().unwrap())
        .collect();
    assert!((thetas[0] - 120.0).abs() < 1e-6);
    assert!((thetas[3] - 120.0).abs() < 1e-6);
}
