//! The Adams operation on the normalized complex through `□`: transgress,
//! apply `ψ^k` to every split cube level by level, and reduce.

use super::tcomp::transgression_morphism;
use super::{BoxChain, BoxElement, TransError};
use crate::adams::adams_split;
use crate::cubes::{is_degenerate, CubeChain, Grid};
use crate::exactalg::{Poly, Q};

/// Drops zero payloads, cube-degenerate payloads and those in the image of
/// some `σ_r`.
pub fn nc_box_reduce(x: &BoxChain<Grid<Poly>>) -> BoxChain<Grid<Poly>> {
    x.filter(|g| is_degenerate(&g.payload).is_none() && g.box_degenerate().is_none())
}

/// `ψ^k` on each split cube of `T(λ(x))`, keeping its box degree, reduced.
pub fn full_adams(x: &CubeChain<Q>, k: usize) -> Result<BoxChain<Grid<Poly>>, TransError> {
    let t = transgression_morphism(x)?;
    let mut out = BoxChain::zero();
    for (c, g) in t.terms() {
        for (c2, h) in adams_split(&g.payload, k)?.terms() {
            out.add_term(c * c2, BoxElement::new(g.box_degree, h.clone()));
        }
    }
    Ok(nc_box_reduce(&out))
}
