//! Adams operations on split cubes: Koszul complexes, the cubes `C̃_i(E)`,
//! the intermediate complex `ℤG^k` and the maps `φ` and `μ`.

pub mod ctilde;
pub mod example;
pub mod gk;
pub mod phi;
pub mod slots;

use thiserror::Error;

use crate::cubes::CubeError;
use crate::objects::ObjError;

pub use ctilde::{c_corner_list, c_cube, ctilde_cube, ctilde_summands, koszul, koszul_additivity, SlotMaps};
pub use example::{worked_example, WorkedExample};
pub use gk::{
    big_phi, ctilde_bicomplex, fold_transposes, gk_differential, gk_from_json, gk_to_json, psi_split, psi_split_chain, GkChain, GkGen, GkJson, GkPart,
};
pub use phi::{adams_split, adams_split_chain, mu, mu_grid, varphi, varphi1, varphi2};
pub use slots::{SlotWeight, StructVertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdamsError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error(transparent)]
    Obj(#[from] ObjError),
}

#[cfg(test)]
mod tests;
