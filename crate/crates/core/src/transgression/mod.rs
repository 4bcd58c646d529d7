//! The affine transgression: cubes over `ℚ[t_1, ..., t_m]` as a cocubical
//! object, the canonical-kernel functor `λ`, iterated transgressions
//! `tr_m^i`, the split cubes `T^i` and the morphism `T` into the double
//! complex of split cubes on `□^m`, and the composite Adams operation.

pub mod cocubical;
pub mod full;
pub mod generate;
pub mod lambda;
pub mod subobject;
pub mod tcomp;
pub mod tr;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::adams::AdamsError;
use crate::cubes::{grid_differential, ChainElement, CubeError, Generator, Grid, GridJson};
use crate::exactalg::{AlgError, Poly};
use crate::objects::ObjError;
use crate::splitcubes::{split_differential, SplitCube, SplitError};

pub use cocubical::{box_degenerate, grid_degeneracy, grid_face, split_degeneracy, split_face};
pub use full::{full_adams, nc_box_reduce};
pub use generate::canonical_kernel_cube;
pub use lambda::{lambda, lambda_grid};
pub use subobject::{has_canonical_kernels, subobject};
pub use tcomp::{t_component, t_morphism, t_sign, transgression_morphism};
pub use tr::{tr1, tr_m_i, Tr1, Transgressions};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransError {
    #[error("face level {0} is not 0 or 1")]
    Level(usize),
    #[error("transform changed the rank of {0}")]
    Rank(String),
    #[error("no section of the surjection in direction {0}")]
    NoSection(usize),
    #[error("edge in direction {0} does not preserve the transgressed submodules")]
    NotFunctorial(usize),
    #[error("cube does not have canonical kernels")]
    NotCanonical,
    #[error("bad multi-index: {0}")]
    Index(String),
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error(transparent)]
    Obj(#[from] ObjError),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Adams(#[from] AdamsError),
}

/// Payloads of box elements: cubes over `ℚ[t_1, ..., t_m]` with the
/// cocubical maps and a cube differential.
pub trait BoxPayload: Generator {
    fn grid(&self) -> &Grid<Poly>;
    fn box_face(&self, r: usize, j: usize) -> Result<Self, TransError>;
    fn box_degeneracy(&self, r: usize) -> Result<Self, TransError>;
    fn cube_differential(&self) -> ChainElement<Self>;
    fn splitting(&self) -> Option<&[crate::exactalg::Mat<Poly>]> {
        None
    }
}

impl BoxPayload for Grid<Poly> {
    fn grid(&self) -> &Grid<Poly> {
        self
    }
    fn box_face(&self, r: usize, j: usize) -> Result<Self, TransError> {
        grid_face(self, r, j)
    }
    fn box_degeneracy(&self, r: usize) -> Result<Self, TransError> {
        grid_degeneracy(self, r)
    }
    fn cube_differential(&self) -> ChainElement<Self> {
        grid_differential(self)
    }
}

impl BoxPayload for SplitCube<Poly> {
    fn grid(&self) -> &Grid<Poly> {
        &self.cube
    }
    fn box_face(&self, r: usize, j: usize) -> Result<Self, TransError> {
        split_face(self, r, j)
    }
    fn box_degeneracy(&self, r: usize) -> Result<Self, TransError> {
        split_degeneracy(self, r)
    }
    fn cube_differential(&self) -> ChainElement<Self> {
        split_differential(&ChainElement::single(1, self.clone()))
    }
    fn splitting(&self) -> Option<&[crate::exactalg::Mat<Poly>]> {
        Some(&self.splitting)
    }
}

/// A payload placed on `□^m`.
#[derive(Clone)]
pub struct BoxElement<P> {
    pub box_degree: usize,
    pub payload: P,
    key: String,
}

impl<P: BoxPayload> BoxElement<P> {
    pub fn new(box_degree: usize, payload: P) -> Self {
        let key = format!("□{box_degree}:{}", payload.key());
        BoxElement { box_degree, payload, key }
    }

    pub fn cube_degree(&self) -> usize {
        self.payload.grid().dims()
    }

    pub fn face(&self, r: usize, j: usize) -> Result<Self, TransError> {
        if r == 0 || r > self.box_degree {
            return Err(TransError::Index(format!("face {r} on □{}", self.box_degree)));
        }
        Ok(BoxElement::new(self.box_degree - 1, self.payload.box_face(r, j)?))
    }

    pub fn degeneracy(&self, r: usize) -> Result<Self, TransError> {
        if r == 0 || r > self.box_degree + 1 {
            return Err(TransError::Index(format!("degeneracy {r} on □{}", self.box_degree)));
        }
        Ok(BoxElement::new(self.box_degree + 1, self.payload.box_degeneracy(r)?))
    }

    /// Some `r` with the payload in the image of `σ_r`.
    pub fn box_degenerate(&self) -> Option<usize> {
        box_degenerate(self.payload.grid(), self.payload.splitting(), self.box_degree)
    }
}

impl<P: BoxPayload> Generator for BoxElement<P> {
    fn key(&self) -> &str {
        &self.key
    }
}

impl<P: fmt::Debug> fmt::Debug for BoxElement<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "□{}{:?}", self.box_degree, self.payload)
    }
}

pub type BoxChain<P> = ChainElement<BoxElement<P>>;

fn sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `δ = Σ_{i ≤ m} Σ_{j = 0,1} (-1)^{i+j} δ_i^j` on one element.
pub fn box_boundary<P: BoxPayload>(x: &BoxElement<P>) -> Result<BoxChain<P>, TransError> {
    let mut out = BoxChain::zero();
    for i in 1..=x.box_degree {
        for j in 0..=1 {
            let f = x.face(i, j)?;
            if !f.payload.grid().is_zero() {
                out.add_term(sign(i + j), f);
            }
        }
    }
    Ok(out)
}

/// `d_s = d + (-1)^r δ` on cube degree `r`. Zero cubes are dropped.
pub fn box_differential<P: BoxPayload>(x: &BoxChain<P>) -> Result<BoxChain<P>, TransError> {
    let mut out = BoxChain::zero();
    for (c, g) in x.terms() {
        for (c2, p) in g.payload.cube_differential().terms() {
            if !p.grid().is_zero() {
                out.add_term(c * c2, BoxElement::new(g.box_degree, p.clone()));
            }
        }
        out.add_scaled(c * sign(g.cube_degree()), &box_boundary(g)?);
    }
    Ok(out)
}

/// Cube JSON with the box degree alongside.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoxTermJson {
    pub coeff: i64,
    pub box_degree: usize,
    pub cube: GridJson,
}

pub fn box_chain_to_json<P: BoxPayload>(x: &BoxChain<P>) -> Vec<BoxTermJson> {
    x.terms()
        .map(|(coeff, g)| BoxTermJson {
            coeff,
            box_degree: g.box_degree,
            cube: g.payload.grid().to_json(),
        })
        .collect()
}

#[cfg(test)]
mod tests;
