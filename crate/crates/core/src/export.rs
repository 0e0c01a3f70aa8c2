//! OFF meshes of the desingularized components. The combinatorics are exact
//! (one mesh vertex per sheet, one triangle per face, oriented as in `X(G)`);
//! the coordinates come from a seeded spectral layout and are only meant
//! for looking at.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};

const LAYOUT_ITERATIONS: usize = 300;

#[derive(Clone, Debug, PartialEq)]
pub struct OffMesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
    pub edges: usize,
}

impl OffMesh {
    pub fn to_off(&self) -> String {
        let mut out = String::new();
        writeln!(out, "OFF").unwrap();
        writeln!(out, "{} {} {}", self.vertices.len(), self.faces.len(), self.edges).unwrap();
        for [x, y, z] in &self.vertices {
            writeln!(out, "{x:.6} {y:.6} {z:.6}").unwrap();
        }
        for [a, b, c] in &self.faces {
            writeln!(out, "3 {a} {b} {c}").unwrap();
        }
        out
    }
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|a| *a /= norm);
    }
}

fn remove_component(v: &mut [f64], along: &[f64]) {
    let dot: f64 = v.iter().zip(along).map(|(a, b)| a * b).sum();
    v.iter_mut().zip(along).for_each(|(a, b)| *a -= dot * b);
}

/// Three leading nontrivial eigenvectors of the lazy normalized adjacency
/// operator, by orthogonal iteration from a seeded start.
fn spectral_layout(adjacency: &[Vec<usize>], seed: u64) -> Vec<[f64; 3]> {
    let n = adjacency.len();
    let sqrt_deg: Vec<f64> = adjacency.iter().map(|a| (a.len() as f64).sqrt()).collect();
    let mut trivial = sqrt_deg.clone();
    normalize(&mut trivial);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basis: Vec<Vec<f64>> = (0..3).map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
    for _ in 0..LAYOUT_ITERATIONS {
        for k in 0..3 {
            let v = &basis[k];
            let mut next: Vec<f64> = (0..n)
                .map(|i| {
                    let spread: f64 = adjacency[i].iter().map(|&j| v[j] / sqrt_deg[j]).sum();
                    0.5 * (v[i] + spread / sqrt_deg[i])
                })
                .collect();
            remove_component(&mut next, &trivial);
            for prev in &basis[..k] {
                remove_component(&mut next, prev);
            }
            normalize(&mut next);
            basis[k] = next;
        }
    }
    let mut coords: Vec<[f64; 3]> = (0..n)
        .map(|i| [0, 1, 2].map(|k| basis[k][i] / sqrt_deg[i]))
        .collect();
    let scale = coords
        .iter()
        .flat_map(|c| c.iter().map(|a| a.abs()))
        .fold(0.0f64, f64::max);
    if scale > 0.0 {
        coords.iter_mut().for_each(|c| c.iter_mut().for_each(|a| *a /= scale));
    }
    // Avoid printing "-0.000000" for values that round to zero.
    coords
        .iter_mut()
        .for_each(|c| c.iter_mut().for_each(|a| *a = if a.abs() < 5e-7 { 0.0 } else { *a }));
    coords
}

/// Triangulated surface of component `i`.
pub fn component_mesh(dec: &Decomposition<'_>, i: usize) -> OffMesh {
    let g = dec.group();
    let sheet_ids = dec.sheet_ids_of(i);
    let local = |sheet: usize| {
        sheet_ids
            .binary_search(&(sheet as u32))
            .expect("corner sheet belongs to the component")
    };
    let faces: Vec<[usize; 3]> = dec
        .faces_of(i)
        .map(|f| [0, 1, 2].map(|c| local(dec.corner_sheet(f, c))))
        .collect();
    let mut edge_set = BTreeSet::new();
    for t in &faces {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            edge_set.insert((a.min(b), a.max(b)));
        }
    }
    let mut adjacency = vec![Vec::new(); sheet_ids.len()];
    for &(a, b) in &edge_set {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    let id = dec.component(i).id;
    OffMesh {
        vertices: spectral_layout(&adjacency, id.slot(g.order()) as u64),
        faces,
        edges: edge_set.len(),
    }
}

pub fn off_file_name(dec: &Decomposition<'_>, i: usize) -> String {
    let id = dec.component(i).id;
    format!("component_{}_{}.off", id.x, id.y)
}

/// Writes one OFF file per listed component into `dir`, creating it.
pub fn write_off_files(dec: &Decomposition<'_>, dir: &Path, components: &[usize]) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    components
        .iter()
        .map(|&i| {
            let path = dir.join(off_file_name(dec, i));
            std::fs::write(&path, component_mesh(dec, i).to_off()).map_err(|e| Error::io(&path, e))?;
            Ok(path)
        })
        .collect()
}
