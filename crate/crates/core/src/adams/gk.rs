//! The intermediate complex `ℤG^k`: long exact sequences of cubes and
//! 2-iterated bicomplexes, with `Ψ^k` of a split cube landing in it.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::ctilde::{cube_edge_image, ctilde_summands, ctilde_with, koszul_edge, SlotMaps};
use super::slots::{build_grid, Slot, StructVertex};
use crate::cubes::{simple_complex, ChainElement, ChainTermJson, CubeChain, CubeError, Generator, Grid};
use crate::exactalg::{ExactRing, Ring};
use crate::multiindex::grid;
use crate::splitcubes::{SplitChain, SplitCube};

/// Generator of `ℤG^k`: a bicomplex `B_i` of lengths `(k-i, i)` or a long
/// exact sequence `A` of length `k`.
#[derive(Clone)]
pub struct GkGen<R: Ring> {
    pub part: GkPart,
    pub grid: Grid<R>,
    key: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GkPart {
    Bicomplex(usize),
    Long,
}

impl<R: Ring> GkGen<R> {
    pub fn new(part: GkPart, grid: Grid<R>) -> Self {
        let key = match part {
            GkPart::Bicomplex(i) => format!("B{i}:{}", grid.key()),
            GkPart::Long => format!("A:{}", grid.key()),
        };
        GkGen { part, grid, key }
    }
}

impl<R: Ring> Generator for GkGen<R> {
    fn key(&self) -> &str {
        &self.key
    }
}

impl<R: Ring> fmt::Debug for GkGen<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.part, self.grid)
    }
}

pub type GkChain<R> = ChainElement<GkGen<R>>;

fn sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Adds a generator unless its grid is zero.
fn push<R: Ring>(x: &mut GkChain<R>, c: i64, part: GkPart, g: Grid<R>) {
    if !g.is_zero() {
        x.add_term(c, GkGen::new(part, g));
    }
}

/// `∂_l^2 C̃_i(E)` (with `i_l = m - 1`) as a bicomplex of lengths
/// `(k - m, m)`: slots with `u_l = 0` in the first direction, `u_l = 2` in
/// the second, the remaining cube directions after.
pub fn ctilde_bicomplex<R: ExactRing>(split: &SplitCube<R>, i: &[usize], l: usize, k: usize) -> Grid<R> {
    bicomplex_with(&SlotMaps::new(split), i, l, k)
}

fn bicomplex_with<R: ExactRing>(maps: &SlotMaps<'_, R>, i: &[usize], l: usize, k: usize) -> Grid<R> {
    let m = i[l] + 1;
    assert!(m < k, "bicomplex needs i_l < k - 1");
    let n = i.len();
    let mut lengths = vec![k - m, m];
    lengths.extend(std::iter::repeat(2).take(n - 1));
    let full = |c: &[usize]| {
        let mut j = c[2..].to_vec();
        j.insert(l, 2);
        j
    };
    let object = |s: &Slot| maps.object(s);
    let low = |w: &super::slots::SlotWeight, s: usize| w.0[s].0[l] == 0;
    build_grid(
        &lengths,
        |c| {
            StructVertex::new(
                ctilde_summands(k, i, &full(c)),
                c[0] + c[1],
                |w, dist| dist.iter().enumerate().filter(|&(s, _)| low(w, s)).map(|(_, p)| p).sum::<usize>() == c[0],
                &object,
            )
            .expect("vertex objects are atomic")
        },
        |d, c, src, tgt, s, e| {
            let w = &src.summands[s];
            match d {
                0 => koszul_edge(s, e, |t| low(w, t)),
                1 => koszul_edge::<R>(s, e, |t| !low(w, t)).into_iter().map(|(t, x, v)| (t, x, v.scale_int(sign(c[0])))).collect(),
                _ => {
                    let dir = if d - 2 < l { d - 2 } else { d - 1 };
                    cube_edge_image(k, i, &full(c), dir, maps, src, tgt, s, e)
                }
            }
        },
    )
}

/// `Φ^i(B)`: the simple complex with `d¹ + (-1)^{j_1} d²`.
pub fn big_phi<R: Ring>(b: &Grid<R>) -> Grid<R> {
    simple_complex(b)
}

/// `Ψ^k(E) = (Ψ_2^{1,k}, ..., Ψ_2^{k-1,k}, Ψ_1^k)` with
/// `Ψ_1^k = Σ_i C̃_i(E)` and `Ψ_2^{m,k} = Σ_l (-1)^{m+l+1} Σ_{i_l = m-1} ∂_l^2 C̃_i(E)`.
pub fn psi_split<R: ExactRing>(split: &SplitCube<R>, k: usize) -> GkChain<R> {
    assert!(k >= 1, "Adams operations need k >= 1");
    let n = split.dims();
    let maps = SlotMaps::new(split);
    let mut out = GkChain::zero();
    for i in grid(n, k) {
        let i = i.entries();
        push(&mut out, 1, GkPart::Long, ctilde_with(&maps, i, k));
        for l in 0..n {
            let m = i[l] + 1;
            if m < k {
                push(&mut out, sign(m + l), GkPart::Bicomplex(m), bicomplex_with(&maps, i, l, k));
            }
        }
    }
    out
}

/// `Ψ^k` extended linearly to chains of split cubes.
pub fn psi_split_chain<R: ExactRing>(x: &SplitChain<R>, k: usize) -> GkChain<R> {
    x.map_linear(|s| psi_split(s, k))
}

/// Cube differential `Σ_r Σ_j (-1)^{r+j} ∂_r^j` acting on the cube
/// directions that follow the first `skip` grid directions.
fn cube_part_differential<R: Ring>(g: &Grid<R>, skip: usize) -> CubeChain<R> {
    let mut out = CubeChain::zero();
    for r in 1..=g.dims() - skip {
        for j in 0..=2 {
            let f = g.face(r + skip, j);
            if !f.is_zero() {
                out.add_term(sign(r + j), f);
            }
        }
    }
    out
}

/// `d_s(B_1, ..., B_{k-1}, A) = (-dB_1, ..., -dB_{k-1}, Σ (-1)^i Φ^i(B_i) + dA)`.
pub fn gk_differential<R: Ring>(x: &GkChain<R>) -> GkChain<R> {
    x.map_linear(|g| {
        let mut out = GkChain::zero();
        match g.part {
            GkPart::Bicomplex(i) => {
                for (c, f) in cube_part_differential(&g.grid, 2).terms() {
                    push(&mut out, -c, g.part, f.clone());
                }
                push(&mut out, sign(i), GkPart::Long, big_phi(&g.grid));
            }
            GkPart::Long => {
                for (c, f) in cube_part_differential(&g.grid, 1).terms() {
                    push(&mut out, c, GkPart::Long, f.clone());
                }
            }
        }
        out
    })
}

/// `{"B": [chain of B_1, ..., chain of B_{k-1}], "A": chain}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GkJson {
    #[serde(rename = "B")]
    pub bicomplexes: Vec<Vec<ChainTermJson>>,
    #[serde(rename = "A")]
    pub long: Vec<ChainTermJson>,
}

pub fn gk_to_json<R: Ring>(x: &GkChain<R>, k: usize) -> GkJson {
    let part = |p: GkPart| -> CubeChain<R> {
        x.terms().filter(|(_, g)| g.part == p).map(|(c, g)| (c, g.grid.clone())).collect()
    };
    GkJson {
        bicomplexes: (1..k).map(|i| part(GkPart::Bicomplex(i)).to_json()).collect(),
        long: part(GkPart::Long).to_json(),
    }
}

pub fn gk_from_json<R: Ring>(j: &GkJson) -> Result<GkChain<R>, CubeError> {
    let mut out = GkChain::zero();
    for (idx, terms) in j.bicomplexes.iter().enumerate() {
        for (c, g) in CubeChain::<R>::from_json(terms)?.terms() {
            out.add_term(c, GkGen::new(GkPart::Bicomplex(idx + 1), g.clone()));
        }
    }
    for (c, g) in CubeChain::<R>::from_json(&j.long)?.terms() {
        out.add_term(c, GkGen::new(GkPart::Long, g.clone()));
    }
    Ok(out)
}

/// Replaces every bicomplex `B ∈ G_2^{m,k}` with `2m > k` by `-Bᵀ ∈ G_2^{k-m,k}`.
/// `d_sΨ^k(S)` and `Ψ^k(dS)` can differ by sums `c(B + Bᵀ)` for `k ≥ 3`;
/// after folding such differences cancel.
pub fn fold_transposes<R: Ring>(x: &GkChain<R>, k: usize) -> GkChain<R> {
    x.map_linear(|g| match g.part {
        GkPart::Bicomplex(m) if 2 * m > k => {
            GkChain::single(-1, GkGen::new(GkPart::Bicomplex(k - m), g.grid.move_direction(1, 0)))
        }
        _ => GkChain::single(1, g.clone()),
    })
}
