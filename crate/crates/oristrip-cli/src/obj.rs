//! Wavefront OBJ export: `v x y z` and 1-based `f i j k` lines.

use crate::fmt::fmt_sig;
use oristrip::Mesh;

pub fn mesh_to_obj(mesh: &Mesh) -> String {
    let mut out = String::with_capacity(mesh.points.len() * 32 + mesh.faces.len() * 16);
    for p in &mesh.points {
        out.push_str("v ");
        out.push_str(&fmt_sig(p.x));
        out.push(' ');
        out.push_str(&fmt_sig(p.y));
        out.push(' ');
        out.push_str(&fmt_sig(p.z));
        out.push('\n');
    }
    for f in &mesh.faces {
        out.push_str(&format!("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1));
    }
    out
}
