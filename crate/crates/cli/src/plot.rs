//! CSV plot data: vertices and edges of `P_2`, `P_3`, and sampled `φ` images.

use std::fs;
use std::path::Path;

use peterson_toric::par::Exec;
use peterson_toric::verify::{phi_images, polytope_plot_data};

use crate::{CliError, CliResult};

/// Cap on samples per stratum written to the φ files.
pub const MAX_PLOT_SAMPLES: usize = 25;

fn io(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn writer(path: &Path) -> CliResult<csv::Writer<fs::File>> {
    csv::Writer::from_path(path).map_err(|e| io(path, e))
}

fn coord_header(prefix: &str, dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("{prefix}{i}")).collect()
}

/// `polytope_n{n}_vertices.csv` and `polytope_n{n}_edges.csv`.
pub fn write_polytope(dir: &Path, n: usize) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    let (verts, edges) = polytope_plot_data(n)?;
    let path = dir.join(format!("polytope_n{n}_vertices.csv"));
    let mut w = writer(&path)?;
    let mut header = vec!["J".to_string()];
    header.extend(coord_header("x", n - 1));
    w.write_record(&header).map_err(|e| io(&path, e))?;
    for (j, v) in &verts {
        let mut row = vec![j.to_string()];
        row.extend(v.iter().map(i64::to_string));
        w.write_record(&row).map_err(|e| io(&path, e))?;
    }
    w.flush().map_err(|e| io(&path, e))?;

    let path = dir.join(format!("polytope_n{n}_edges.csv"));
    let mut w = writer(&path)?;
    let mut header = vec!["from".to_string(), "to".to_string()];
    header.extend(coord_header("from_x", n - 1));
    header.extend(coord_header("to_x", n - 1));
    w.write_record(&header).map_err(|e| io(&path, e))?;
    let coords = |j| verts.iter().find(|(l, _)| *l == j).map(|(_, v)| v.clone()).expect("edge endpoints are vertices");
    for (a, b) in edges {
        let mut row = vec![a.to_string(), b.to_string()];
        row.extend(coords(a).iter().map(i64::to_string));
        row.extend(coords(b).iter().map(i64::to_string));
        w.write_record(&row).map_err(|e| io(&path, e))?;
    }
    w.flush().map_err(|e| io(&path, e))
}

/// `phi_n{n}.csv`: one row per sampled stratum point.
pub fn write_phi(dir: &Path, n: usize, samples: usize, seed: u64, exec: Exec) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    let path = dir.join(format!("phi_n{n}.csv"));
    let mut w = writer(&path)?;
    let mut header = vec!["K".to_string(), "J".to_string(), "sample".to_string()];
    header.extend(coord_header("phi", n - 1));
    w.write_record(&header).map_err(|e| io(&path, e))?;
    for (label, s, x) in phi_images(n, samples, seed, exec)? {
        let mut row = vec![label.k.to_string(), label.j.to_string(), s.to_string()];
        row.extend(x.iter().map(f64::to_string));
        w.write_record(&row).map_err(|e| io(&path, e))?;
    }
    w.flush().map_err(|e| io(&path, e))
}

/// Polytope data for `P_2`, `P_3` and φ images for n = 3, 4.
pub fn write_all(dir: &Path, samples: usize, seed: u64, exec: Exec) -> CliResult<()> {
    for n in [3, 4] {
        write_polytope(dir, n)?;
        write_phi(dir, n, samples, seed, exec)?;
    }
    Ok(())
}
