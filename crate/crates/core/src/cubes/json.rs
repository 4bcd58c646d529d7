//! JSON forms: `{"n", "ring_vars", "vertices": {"0120": expr}, "edges":
//! {"dir,level,vertex": rows}}`, plus `"lengths"` for non-cube grids.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::chain::ChainElement;
use super::grid::Grid;
use super::CubeError;
use crate::exactalg::{Mat, Ring};
use crate::objects::{Normalized, ObjectExpr};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridJson {
    pub n: usize,
    pub ring_vars: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lengths: Option<Vec<usize>>,
    pub vertices: BTreeMap<String, ObjectExpr>,
    #[serde(default)]
    pub edges: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainTermJson {
    pub coeff: i64,
    pub cube: GridJson,
}

pub fn vertex_label(m: &[usize]) -> String {
    m.iter().map(|c| c.to_string()).collect()
}

fn parse_label(s: &str) -> Result<Vec<usize>, CubeError> {
    s.chars()
        .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| CubeError::Json(format!("bad vertex label {s:?}"))))
        .collect()
}

impl<R: Ring> Grid<R> {
    pub fn to_json(&self) -> GridJson {
        let mut vertices = BTreeMap::new();
        let mut edges = BTreeMap::new();
        for v in 0..self.vertex_count() {
            let m = self.coords(v);
            vertices.insert(vertex_label(&m), self.vertex_at(v).to_expr());
            for d in 0..self.dims() {
                if let Some(e) = self.edge_at(d, v) {
                    if e.rows() > 0 && e.cols() > 0 {
                        edges.insert(format!("{},{},{}", d + 1, m[d], vertex_label(&m)), e.to_strings());
                    }
                }
            }
        }
        GridJson {
            n: self.dims(),
            ring_vars: self.var_count(),
            lengths: (!self.is_cube()).then(|| self.lengths().to_vec()),
            vertices,
            edges,
        }
    }

    /// Vertex expressions are normalized; edges are transported along the
    /// canonical isos.
    pub fn from_json(j: &GridJson) -> Result<Grid<R>, CubeError> {
        let lengths = j.lengths.clone().unwrap_or_else(|| vec![2; j.n]);
        if lengths.len() != j.n {
            return Err(CubeError::Json("lengths disagree with n".into()));
        }
        let mut norm: BTreeMap<Vec<usize>, Normalized> = BTreeMap::new();
        for (label, e) in &j.vertices {
            let m = parse_label(label)?;
            if m.len() != j.n || m.iter().zip(&lengths).any(|(a, l)| a > l) {
                return Err(CubeError::Json(format!("vertex {label:?} outside the grid")));
            }
            norm.insert(m, e.normalize()?);
        }
        let mut raw: BTreeMap<(usize, Vec<usize>), Mat<R>> = BTreeMap::new();
        for (key, rows) in &j.edges {
            let parts: Vec<&str> = key.split(',').collect();
            let [dir, _, label] = parts[..] else {
                return Err(CubeError::Json(format!("bad edge key {key:?}")));
            };
            let d: usize = dir.parse().map_err(|_| CubeError::Json(format!("bad edge key {key:?}")))?;
            if d == 0 || d > j.n {
                return Err(CubeError::Json(format!("edge direction out of range in {key:?}")));
            }
            let m = parse_label(label)?;
            let ncols = rows.first().map_or(0, Vec::len);
            raw.insert((d - 1, m), Mat::from_strings(rows.len(), ncols, rows)?);
        }
        let rank_of = |m: &[usize]| norm.get(m).map_or(0, |n| n.images.len());
        let mut err = None;
        let g = Grid::from_fn(
            &lengths,
            |m| norm.get(m).map(|n| n.object.clone()).unwrap_or_default(),
            |d, m, src, tgt| {
                let mut w = m.to_vec();
                w[d] += 1;
                let Some(e) = raw.get(&(d, m.to_vec())) else {
                    return Mat::zeros(tgt.rank(), src.rank());
                };
                if e.dims() != (rank_of(&w), rank_of(m)) {
                    err.get_or_insert(CubeError::Json(format!("edge {} at {} has shape {:?}", d + 1, vertex_label(m), e.dims())));
                    return Mat::zeros(tgt.rank(), src.rank());
                }
                let p_src: Mat<R> = norm[m].iso();
                let p_tgt: Mat<R> = norm[&w].iso();
                p_tgt.dot(e).dot(&p_src.transpose())
            },
        );
        match err {
            Some(e) => Err(e),
            None => Ok(g),
        }
    }
}

impl<R: Ring> ChainElement<Grid<R>> {
    pub fn to_json(&self) -> Vec<ChainTermJson> {
        self.terms().map(|(coeff, g)| ChainTermJson { coeff, cube: g.to_json() }).collect()
    }

    pub fn from_json(terms: &[ChainTermJson]) -> Result<ChainElement<Grid<R>>, CubeError> {
        let mut x = ChainElement::zero();
        for t in terms {
            x.add_term(t.coeff, Grid::from_json(&t.cube)?);
        }
        Ok(x)
    }
}
