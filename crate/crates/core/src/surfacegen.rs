//! Vertically invariant surfaces `Φ(t, s) = φ_s(γ(t))` as triangle meshes, and
//! text export of meshes and trajectories.
//!
//! Mesh files use `v x y z` lines (9 significant digits) followed by `f i j k`
//! lines with 1-based indices; `#` lines are comments. Trajectory files are CSV
//! with header `t,x,y,theta,kappa` and 12 significant digits.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;

use crate::cmc_ode::{Method, Sample, Trajectory};
use crate::error::{Error, Result};
use crate::liegroup::{vertical_flow, Ambient, GroupPoint};
use crate::numfmt::format_g;

pub const MESH_DIGITS: usize = 9;
pub const CSV_DIGITS: usize = 12;
pub const CSV_HEADER: &str = "t,x,y,theta,kappa";

/// Where a mesh came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub ambient: Ambient,
    pub method: Method,
    pub t_range: (f64, f64),
    pub s_range: (f64, f64),
    /// Every `decimation`-th trajectory node is used.
    pub decimation: usize,
}

/// Grid of `n_t × n_s` vertices, row-major in `t` then `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMesh {
    pub n_t: usize,
    pub n_s: usize,
    pub vertices: Vec<GroupPoint>,
    /// 0-based vertex indices.
    pub faces: Vec<[usize; 3]>,
    pub provenance: Provenance,
}

impl SurfaceMesh {
    pub fn vertex(&self, i: usize, j: usize) -> GroupPoint {
        self.vertices[i * self.n_s + j]
    }
}

pub fn generate_mesh(ambient: &Ambient, traj: &Trajectory, s_range: (f64, f64), n_s: usize) -> Result<SurfaceMesh> {
    generate_mesh_decimated(ambient, traj, s_range, n_s, 1)
}

/// Like [`generate_mesh`], using trajectory nodes `0, k, 2k, …` plus the last node.
pub fn generate_mesh_decimated(
    ambient: &Ambient,
    traj: &Trajectory,
    s_range: (f64, f64),
    n_s: usize,
    decimation: usize,
) -> Result<SurfaceMesh> {
    if traj.is_empty() {
        return Err(Error::Usage("cannot build a mesh from an empty trajectory".into()));
    }
    if n_s < 2 || decimation == 0 {
        return Err(Error::Usage(format!(
            "mesh needs n_s >= 2 and decimation >= 1, got n_s = {n_s}, decimation = {decimation}"
        )));
    }
    let (s0, s1) = s_range;
    if !(s0.is_finite() && s1.is_finite()) {
        return Err(Error::InvalidParameter(format!("s range must be finite, got ({s0}, {s1})")));
    }
    let all = traj.samples();
    let mut rows: Vec<&Sample> = all.iter().step_by(decimation).collect();
    let last = all.last().expect("nonempty");
    if (all.len() - 1) % decimation != 0 {
        rows.push(last);
    }
    let n_t = rows.len();
    if n_t < 2 {
        return Err(Error::Usage("mesh needs at least 2 trajectory nodes".into()));
    }

    let ss: Vec<f64> = (0..n_s)
        .map(|j| if j + 1 == n_s { s1 } else { s0 + (s1 - s0) * j as f64 / (n_s - 1) as f64 })
        .collect();
    let vertices: Vec<GroupPoint> = rows
        .par_iter()
        .flat_map_iter(|p| {
            let base = GroupPoint::new(p.x, p.y, 0.0);
            ss.iter().map(move |&s| vertical_flow(ambient, s, &base))
        })
        .collect();

    let mut faces = Vec::with_capacity(2 * (n_t - 1) * (n_s - 1));
    for i in 0..n_t - 1 {
        for j in 0..n_s - 1 {
            let v00 = i * n_s + j;
            let v10 = (i + 1) * n_s + j;
            faces.push([v00, v10, v10 + 1]);
            faces.push([v00, v10 + 1, v00 + 1]);
        }
    }
    Ok(SurfaceMesh {
        n_t,
        n_s,
        vertices,
        faces,
        provenance: Provenance {
            ambient: *ambient,
            method: traj.method(),
            t_range: (rows[0].t, rows[n_t - 1].t),
            s_range,
            decimation,
        },
    })
}

fn comment_lines<W: Write + ?Sized>(w: &mut W, header: &str) -> std::io::Result<()> {
    for line in header.lines() {
        writeln!(w, "# {line}")?;
    }
    Ok(())
}

/// Writes the mesh, preceded by `header` and the provenance as `#` comments.
pub fn write_mesh<W: Write + ?Sized>(mesh: &SurfaceMesh, w: &mut W, header: &str) -> std::io::Result<()> {
    comment_lines(w, header)?;
    let p = &mesh.provenance;
    writeln!(
        w,
        "# ambient {} source {:?} t [{}, {}] s [{}, {}] grid {}x{} decimation {}",
        p.ambient,
        p.method,
        format_g(p.t_range.0, MESH_DIGITS),
        format_g(p.t_range.1, MESH_DIGITS),
        format_g(p.s_range.0, MESH_DIGITS),
        format_g(p.s_range.1, MESH_DIGITS),
        mesh.n_t,
        mesh.n_s,
        p.decimation
    )?;
    for v in &mesh.vertices {
        writeln!(
            w,
            "v {} {} {}",
            format_g(v.x, MESH_DIGITS),
            format_g(v.y, MESH_DIGITS),
            format_g(v.z, MESH_DIGITS)
        )?;
    }
    for f in &mesh.faces {
        writeln!(w, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
    }
    Ok(())
}

pub fn export_mesh(mesh: &SurfaceMesh, path: impl AsRef<Path>) -> Result<()> {
    export_mesh_with_header(mesh, path, "")
}

pub fn export_mesh_with_header(mesh: &SurfaceMesh, path: impl AsRef<Path>, header: &str) -> Result<()> {
    let path = path.as_ref();
    let io = |e| Error::io(path, e);
    let mut w = BufWriter::new(File::create(path).map_err(io)?);
    write_mesh(mesh, &mut w, header).map_err(io)?;
    w.flush().map_err(io)
}

/// Vertices and 0-based faces of a mesh file.
pub fn read_mesh(path: impl AsRef<Path>) -> Result<(Vec<GroupPoint>, Vec<[usize; 3]>)> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let bad = || Error::Parse(format!("{}:{}: malformed line {line:?}", path.display(), n + 1));
        let mut it = line.split_whitespace();
        match it.next() {
            None => {}
            Some(w) if w.starts_with('#') => {}
            Some("v") => {
                let c: Vec<f64> = it.map(|s| s.parse().map_err(|_| bad())).collect::<Result<_>>()?;
                let [x, y, z] = c[..] else { return Err(bad()) };
                vertices.push(GroupPoint::new(x, y, z));
            }
            Some("f") => {
                let c: Vec<usize> = it.map(|s| s.parse().map_err(|_| bad())).collect::<Result<_>>()?;
                let [i, j, k] = c[..] else { return Err(bad()) };
                if [i, j, k].iter().any(|&v| v == 0) {
                    return Err(bad());
                }
                faces.push([i - 1, j - 1, k - 1]);
            }
            Some(_) => return Err(bad()),
        }
    }
    if let Some(f) = faces.iter().find(|f| f.iter().any(|&v| v >= vertices.len())) {
        return Err(Error::Parse(format!(
            "{}: face {:?} references a missing vertex",
            path.display(),
            f.map(|v| v + 1)
        )));
    }
    Ok((vertices, faces))
}

/// Writes `header` as `#` comments, then the CSV header and one row per sample.
pub fn write_trajectory_csv<W: Write + ?Sized>(traj: &Trajectory, w: &mut W, header: &str) -> std::io::Result<()> {
    comment_lines(w, header)?;
    writeln!(w, "{CSV_HEADER}")?;
    for s in traj.samples() {
        writeln!(
            w,
            "{},{},{},{},{}",
            format_g(s.t, CSV_DIGITS),
            format_g(s.x, CSV_DIGITS),
            format_g(s.y, CSV_DIGITS),
            format_g(s.theta, CSV_DIGITS),
            format_g(s.theta_prime, CSV_DIGITS)
        )?;
    }
    Ok(())
}

pub fn export_trajectory_csv(traj: &Trajectory, path: impl AsRef<Path>) -> Result<()> {
    export_trajectory_csv_with_header(traj, path, "")
}

pub fn export_trajectory_csv_with_header(traj: &Trajectory, path: impl AsRef<Path>, header: &str) -> Result<()> {
    let path = path.as_ref();
    let io = |e| Error::io(path, e);
    let mut w = BufWriter::new(File::create(path).map_err(io)?);
    write_trajectory_csv(traj, &mut w, header).map_err(io)?;
    w.flush().map_err(io)
}

/// Samples of a trajectory CSV; `#` lines are skipped.
pub fn read_trajectory_csv(path: impl AsRef<Path>) -> Result<Vec<Sample>> {
    let path = path.as_ref();
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let headers = rdr
        .headers()
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
        .clone();
    if headers.iter().collect::<Vec<_>>().join(",") != CSV_HEADER {
        return Err(Error::Parse(format!(
            "{}: expected header {CSV_HEADER:?}, got {:?}",
            path.display(),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    rdr.records()
        .map(|rec| {
            let rec = rec.map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let v: Vec<f64> = rec
                .iter()
                .map(|f| f.parse::<f64>().map_err(|e| Error::Parse(format!("{}: {f:?}: {e}", path.display()))))
                .collect::<Result<_>>()?;
            Ok(Sample {
                t: v[0],
                x: v[1],
                y: v[2],
                theta: v[3],
                theta_prime: v[4],
            })
        })
        .collect()
}

type P3 = [f64; 3];

fn p3(p: &GroupPoint) -> P3 {
    [p.x, p.y, p.z]
}

fn sub(a: &P3, b: &P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: &P3, b: &P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &P3, b: &P3) -> P3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn norm(a: &P3) -> f64 {
    dot(a, a).sqrt()
}

/// Discrete Gaussian curvature at an interior grid vertex: angle defect over a
/// third of the incident triangle area. Assumes the chart metric is Euclidean
/// (`euclid`, `e2:1`). `None` on the boundary.
pub fn angle_defect_curvature(mesh: &SurfaceMesh, i: usize, j: usize) -> Option<f64> {
    if i == 0 || j == 0 || i + 1 >= mesh.n_t || j + 1 >= mesh.n_s {
        return None;
    }
    let v = i * mesh.n_s + j;
    let c = p3(&mesh.vertices[v]);
    let (mut angle, mut area) = (0.0, 0.0);
    // Interior grid vertices touch exactly six triangles of the fixed-diagonal split.
    let rows = [i - 1, i];
    for f in rows
        .iter()
        .flat_map(|&r| (j - 1..=j).flat_map(move |q| [2 * (r * (mesh.n_s - 1) + q), 2 * (r * (mesh.n_s - 1) + q) + 1]))
        .map(|k| mesh.faces[k])
        .filter(|f| f.contains(&v))
    {
        let others: Vec<P3> = f.iter().filter(|&&w| w != v).map(|&w| p3(&mesh.vertices[w])).collect();
        let (a, b) = (sub(&others[0], &c), sub(&others[1], &c));
        angle += (dot(&a, &b) / (norm(&a) * norm(&b))).clamp(-1.0, 1.0).acos();
        area += 0.5 * norm(&cross(&a, &b));
    }
    Some((std::f64::consts::TAU - angle) / (area / 3.0))
}

/// Gaussian curvature at grid vertex `(i, j)` from central differences of the
/// parametrization (uniform `ht`, `hs` spacing assumed). Euclidean chart only.
pub fn grid_gaussian_curvature(mesh: &SurfaceMesh, i: usize, j: usize, ht: f64, hs: f64) -> Option<f64> {
    if i == 0 || j == 0 || i + 1 >= mesh.n_t || j + 1 >= mesh.n_s {
        return None;
    }
    let at = |a: usize, b: usize| p3(&mesh.vertex(a, b));
    let c = at(i, j);
    let comb = |p: P3, q: P3, r: P3, k: f64| [(p[0] + k * q[0] + r[0]), (p[1] + k * q[1] + r[1]), (p[2] + k * q[2] + r[2])];
    let scale = |p: P3, s: f64| [p[0] * s, p[1] * s, p[2] * s];
    let ft = scale(sub(&at(i + 1, j), &at(i - 1, j)), 0.5 / ht);
    let fs = scale(sub(&at(i, j + 1), &at(i, j - 1)), 0.5 / hs);
    let ftt = scale(comb(at(i + 1, j), c, at(i - 1, j), -2.0), 1.0 / (ht * ht));
    let fss = scale(comb(at(i, j + 1), c, at(i, j - 1), -2.0), 1.0 / (hs * hs));
    let fts = scale(
        sub(&sub(&at(i + 1, j + 1), &at(i + 1, j - 1)), &sub(&at(i - 1, j + 1), &at(i - 1, j - 1))),
        0.25 / (ht * hs),
    );
    let n = cross(&ft, &fs);
    let nn = norm(&n);
    let n = scale(n, 1.0 / nn);
    let (e, f, g) = (dot(&ft, &ft), dot(&ft, &fs), dot(&fs, &fs));
    let (l, m, nc) = (dot(&ftt, &n), dot(&fts, &n), dot(&fss, &n));
    Some((l * nc - m * m) / (e * g - f * f))
}
