//! Iterated cochain complexes of finite length, stored densely: one object
//! per multidegree and one matrix per (direction, multidegree) edge.
//! Directions are 1-based in the public API.

use std::fmt;
use std::sync::{Arc, OnceLock};

use sha2::{Digest, Sha256};

use super::CubeError;
use crate::exactalg::{exactness_profile, ExactRing, Mat, Ring};
use crate::objects::Obj;

#[derive(Clone)]
pub struct Grid<R: Ring> {
    lengths: Vec<usize>,
    strides: Vec<usize>,
    vertices: Vec<Obj>,
    /// `edges[d][v]` maps vertex `v` to `v + e_d`; `None` on the last level.
    edges: Vec<Vec<Option<Mat<R>>>>,
    key: Arc<OnceLock<String>>,
}

fn strides_of(lengths: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; lengths.len()];
    for d in (0..lengths.len().saturating_sub(1)).rev() {
        strides[d] = strides[d + 1] * (lengths[d + 1] + 1);
    }
    strides
}

impl<R: Ring> Grid<R> {
    /// Builds from closures over 0-based multidegrees and 0-based directions.
    pub fn from_fn(
        lengths: &[usize],
        mut vertex: impl FnMut(&[usize]) -> Obj,
        mut edge: impl FnMut(usize, &[usize], &Obj, &Obj) -> Mat<R>,
    ) -> Self {
        let strides = strides_of(lengths);
        let count: usize = lengths.iter().map(|l| l + 1).product();
        let coords: Vec<Vec<usize>> = (0..count).map(|v| decode(lengths, &strides, v)).collect();
        let vertices: Vec<Obj> = coords.iter().map(|m| vertex(m)).collect();
        let edges = (0..lengths.len())
            .map(|d| {
                (0..count)
                    .map(|v| {
                        (coords[v][d] < lengths[d]).then(|| {
                            let w = v + strides[d];
                            let m = edge(d, &coords[v], &vertices[v], &vertices[w]);
                            assert_eq!(m.dims(), (vertices[w].rank(), vertices[v].rank()), "edge shape");
                            m
                        })
                    })
                    .collect()
            })
            .collect();
        Grid { lengths: lengths.to_vec(), strides, vertices, edges, key: Arc::default() }
    }

    /// All objects zero.
    pub fn zero(lengths: &[usize]) -> Self {
        Grid::from_fn(lengths, |_| Obj::zero(), |_, _, _, _| Mat::zeros(0, 0))
    }

    /// A single object as a 0-direction grid.
    pub fn point(obj: Obj) -> Self {
        Grid::from_fn(&[], |_| obj.clone(), |_, _, _, _| unreachable!())
    }

    pub fn dims(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn is_cube(&self) -> bool {
        self.lengths.iter().all(|&l| l == 2)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn coords(&self, v: usize) -> Vec<usize> {
        decode(&self.lengths, &self.strides, v)
    }

    pub fn index(&self, m: &[usize]) -> usize {
        m.iter().zip(&self.strides).map(|(a, s)| a * s).sum()
    }

    pub fn vertex(&self, m: &[usize]) -> &Obj {
        &self.vertices[self.index(m)]
    }

    pub fn vertex_at(&self, v: usize) -> &Obj {
        &self.vertices[v]
    }

    pub fn vertices(&self) -> &[Obj] {
        &self.vertices
    }

    /// Edge out of `m` in 0-based direction `d`.
    pub fn edge(&self, d: usize, m: &[usize]) -> Option<&Mat<R>> {
        self.edges[d][self.index(m)].as_ref()
    }

    pub fn edge_at(&self, d: usize, v: usize) -> Option<&Mat<R>> {
        self.edges[d][v].as_ref()
    }

    pub fn stride(&self, d: usize) -> usize {
        self.strides[d]
    }

    pub fn is_zero(&self) -> bool {
        self.vertices.iter().all(Obj::is_zero)
    }

    pub fn var_count(&self) -> usize {
        self.edges.iter().flatten().flatten().map(Mat::var_count).max().unwrap_or(0)
    }

    /// Structural hash of shape, normalized vertices and edge matrices.
    pub fn key(&self) -> &str {
        self.key.get_or_init(|| {
            let mut h = HashWriter(Sha256::new());
            h.0.update(format!("{:?}|", self.lengths).as_bytes());
            for v in &self.vertices {
                h.0.update(v.key().as_bytes());
                h.0.update(b";");
            }
            for dir in &self.edges {
                for e in dir.iter().flatten() {
                    e.write_key(&mut h).expect("hashing never fails");
                    h.0.update(b";");
                }
            }
            h.0.finalize().iter().map(|b| format!("{b:02x}")).collect()
        })
    }

    /// `j`-th face in direction `i` (1-based). Zero past the length.
    pub fn face(&self, i: usize, j: usize) -> Grid<R> {
        assert!(i >= 1 && i <= self.dims(), "face direction {i} out of range");
        let d = i - 1;
        let mut lengths = self.lengths.clone();
        lengths.remove(d);
        if j > self.lengths[d] {
            return Grid::zero(&lengths);
        }
        let lift = |m: &[usize]| {
            let mut full = m.to_vec();
            full.insert(d, j);
            full
        };
        Grid::from_fn(
            &lengths,
            |m| self.vertex(&lift(m)).clone(),
            |e, m, _, _| {
                let e_full = if e >= d { e + 1 } else { e };
                self.edge(e_full, &lift(m)).expect("interior edge").clone()
            },
        )
    }

    /// Inserts a new direction at position `i` (1-based) of length 2 with
    /// the grid on levels `j, j+1` joined by the identity, zero elsewhere.
    pub fn degeneracy(&self, i: usize, j: usize) -> Grid<R> {
        assert!(i >= 1 && i <= self.dims() + 1 && j <= 1, "degeneracy s_{i}^{j} out of range");
        let d = i - 1;
        let mut lengths = self.lengths.clone();
        lengths.insert(d, 2);
        let drop = |m: &[usize]| {
            let mut small = m.to_vec();
            small.remove(d);
            small
        };
        let live = |m: &[usize]| m[d] == j || m[d] == j + 1;
        Grid::from_fn(
            &lengths,
            |m| if live(m) { self.vertex(&drop(m)).clone() } else { Obj::zero() },
            |e, m, src, tgt| {
                if e == d {
                    if m[d] == j {
                        Mat::identity(src.rank())
                    } else {
                        Mat::zeros(tgt.rank(), src.rank())
                    }
                } else if live(m) {
                    let e_small = if e > d { e - 1 } else { e };
                    self.edge(e_small, &drop(m)).expect("interior edge").clone()
                } else {
                    Mat::zeros(tgt.rank(), src.rank())
                }
            },
        )
    }

    /// Stacks grids of equal shape along a new direction at position `i`
    /// (1-based); `maps[s][v]` goes from `layers[s]` to `layers[s + 1]` at vertex `v`.
    pub fn stack(layers: &[Grid<R>], maps: &[Vec<Mat<R>>], i: usize) -> Result<Grid<R>, CubeError> {
        let first = layers.first().ok_or_else(|| CubeError::Shape("no layers".into()))?;
        if layers.iter().any(|g| g.lengths != first.lengths) || maps.len() + 1 != layers.len() {
            return Err(CubeError::Shape("layers of different shapes".into()));
        }
        let d = i - 1;
        let mut lengths = first.lengths.clone();
        lengths.insert(d, layers.len() - 1);
        let split = |m: &[usize]| {
            let mut small = m.to_vec();
            let level = small.remove(d);
            (level, small)
        };
        for (s, family) in maps.iter().enumerate() {
            for (v, f) in family.iter().enumerate() {
                if f.dims() != (layers[s + 1].vertices[v].rank(), layers[s].vertices[v].rank()) {
                    return Err(CubeError::Shape(format!("map {s} at vertex {v} has shape {:?}", f.dims())));
                }
            }
        }
        Ok(Grid::from_fn(
            &lengths,
            |m| {
                let (level, small) = split(m);
                layers[level].vertex(&small).clone()
            },
            |e, m, _, _| {
                let (level, small) = split(m);
                if e == d {
                    maps[level][layers[level].index(&small)].clone()
                } else {
                    let e_small = if e > d { e - 1 } else { e };
                    layers[level].edge(e_small, &small).expect("interior edge").clone()
                }
            },
        ))
    }

    /// Vertex-wise transformation of objects and edges; `f` gets 0-based coordinates.
    pub fn map_edges(&self, mut f: impl FnMut(usize, &[usize], &Mat<R>) -> Mat<R>) -> Grid<R> {
        Grid::from_fn(&self.lengths, |m| self.vertex(m).clone(), |d, m, _, _| f(d, m, self.edge(d, m).expect("edge")))
    }

    /// Every edge scaled by -1 in direction `d` (0-based).
    pub fn negate_direction(&self, d: usize) -> Grid<R> {
        self.map_edges(|e, _, m| if e == d { m.neg() } else { m.clone() })
    }

    /// Moves direction `from` to position `to` (both 0-based).
    pub fn move_direction(&self, from: usize, to: usize) -> Grid<R> {
        let mut order: Vec<usize> = (0..self.dims()).collect();
        let x = order.remove(from);
        order.insert(to, x);
        let lengths: Vec<usize> = order.iter().map(|&o| self.lengths[o]).collect();
        let old = |m: &[usize]| {
            let mut full = vec![0; m.len()];
            for (p, &o) in order.iter().enumerate() {
                full[o] = m[p];
            }
            full
        };
        Grid::from_fn(&lengths, |m| self.vertex(&old(m)).clone(), |e, m, _, _| self.edge(order[e], &old(m)).expect("edge").clone())
    }

    /// Squares commute and each direction squares to zero.
    pub fn check_complex(&self) -> Result<(), CubeError> {
        let n = self.dims();
        for v in 0..self.vertex_count() {
            let m = self.coords(v);
            for a in 0..n {
                let Some(ea) = self.edge_at(a, v) else { continue };
                if let Some(next) = self.edge_at(a, v + self.strides[a]) {
                    if !next.dot(ea).is_zero() {
                        return Err(CubeError::NotAComplex { direction: a + 1, vertex: m });
                    }
                }
                for b in a + 1..n {
                    let Some(eb) = self.edge_at(b, v) else { continue };
                    let ba = self.edge_at(b, v + self.strides[a]).expect("interior").dot(ea);
                    let ab = self.edge_at(a, v + self.strides[b]).expect("interior").dot(eb);
                    if ba != ab {
                        return Err(CubeError::NotCommuting { directions: (a + 1, b + 1), vertex: m });
                    }
                }
            }
        }
        Ok(())
    }

    /// Strand through vertex `v` (which has coordinate 0) in direction `d`.
    pub fn strand(&self, d: usize, v: usize) -> (Vec<usize>, Vec<&Mat<R>>) {
        let len = self.lengths[d];
        let dims = (0..=len).map(|s| self.vertices[v + s * self.strides[d]].rank()).collect();
        let maps = (0..len).map(|s| self.edge_at(d, v + s * self.strides[d]).expect("interior")).collect();
        (dims, maps)
    }
}

impl<R: ExactRing> Grid<R> {
    /// Every one-dimensional strand is exact (checked on fibers for polynomial entries).
    pub fn check_exact(&self) -> Result<(), CubeError> {
        for d in 0..self.dims() {
            for v in 0..self.vertex_count() {
                if self.coords(v)[d] != 0 {
                    continue;
                }
                let (dims, maps) = self.strand(d, v);
                for fiber in R::fibers(&maps) {
                    let exact = exactness_profile(&dims, &fiber).map(|p| p.is_exact).unwrap_or(false);
                    if !exact {
                        return Err(CubeError::NotExact { direction: d + 1, vertex: self.coords(v) });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CubeError> {
        self.check_complex()?;
        self.check_exact()
    }
}

impl<R: Ring> PartialEq for Grid<R> {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}
impl<R: Ring> Eq for Grid<R> {}

impl<R: Ring> fmt::Debug for Grid<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Grid{:?}[", self.lengths)?;
        for (v, o) in self.vertices.iter().enumerate() {
            if !o.is_zero() {
                write!(f, " {}:{}", self.coords(v).iter().map(|c| c.to_string()).collect::<String>(), o)?;
            }
        }
        write!(f, " ]")
    }
}

fn decode(lengths: &[usize], strides: &[usize], mut v: usize) -> Vec<usize> {
    let mut m = vec![0; lengths.len()];
    for d in 0..lengths.len() {
        m[d] = v / strides[d];
        v %= strides[d];
    }
    m
}

struct HashWriter(Sha256);

impl std::fmt::Write for HashWriter {
    fn write_str(&mut self, s: &str) -> std::fmt::Result {
        self.0.update(s.as_bytes());
        Ok(())
    }
}
