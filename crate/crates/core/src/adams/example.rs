//! The `k = 2`, `n = 1` example: `φ(Ψ²(E, f))` for a split 1-cube with
//! rank-one corners, compared term by term with the six-term display, and
//! the differential of `ψ²(E, f)`.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::gk::psi_split;
use super::phi::{adams_split, varphi};
use super::AdamsError;
use crate::cubes::{differential, reduce, untagged_key, CubeChain, Grid};
use crate::exactalg::Q;
use crate::objects::{Atom, Obj};
use crate::splitcubes::{split_cube_over, SplitCube};

/// Untagged vertex keys with trailing zero vertices dropped, so that a
/// length-one sequence `A -> B` and the cube `A -> B -> 0` read alike.
pub fn signature(g: &Grid<Q>) -> Vec<String> {
    let mut keys: Vec<String> = g
        .vertices()
        .iter()
        .map(|o| if o.is_zero() { "0".to_string() } else { untagged_key(o) })
        .collect();
    while keys.last().is_some_and(|k| k == "0") {
        keys.pop();
    }
    keys
}

/// Coefficients of a chain grouped by [`signature`].
pub fn by_signature(x: &CubeChain<Q>) -> BTreeMap<Vec<String>, i64> {
    let mut out = BTreeMap::new();
    for (c, g) in x.terms() {
        *out.entry(signature(g)).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

pub struct WorkedExample {
    pub split: SplitCube<Q>,
    /// `φ(Ψ²)` grouped by signature.
    pub computed: BTreeMap<Vec<String>, i64>,
    /// The six displayed terms with their printed coefficients.
    pub displayed: Vec<(Vec<String>, i64)>,
    /// `d ψ²(E, f)` against `-2(-Λ²E⁰ + Λ²E¹ - Λ²E²) + (-E⁰⊗E⁰ + E¹⊗E¹ - E²⊗E²)`.
    pub differential_matches: bool,
}

impl WorkedExample {
    /// Displayed terms whose printed coefficient differs from the computed one,
    /// as `(term, printed, computed)`.
    pub fn mismatches(&self) -> Vec<(Vec<String>, i64, i64)> {
        self.displayed
            .iter()
            .filter_map(|(t, c)| {
                let got = self.computed.get(t).copied().unwrap_or(0);
                (got != *c).then(|| (t.clone(), *c, got))
            })
            .collect()
    }

    /// Computed terms that the display does not mention.
    pub fn extra_terms(&self) -> Vec<Vec<String>> {
        self.computed.keys().filter(|t| !self.displayed.iter().any(|(d, _)| d == *t)).cloned().collect()
    }
}

pub fn worked_example(seed: u64) -> Result<WorkedExample, AdamsError> {
    let atoms: Vec<Atom> = vec![Atom::named("E0", 1), Atom::named("E2", 1)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let split = split_cube_over::<Q>(&mut rng, 1, "E", |c| Obj::atom(&atoms[c[0] / 2]));
    let phi = varphi(&psi_split(&split, 2));
    let computed = by_signature(&phi);

    let key = |label: &str, rank: usize| format!("{label}#{rank}");
    let (e0, e1, e2) = (key("E0", 1), key("E1", 2), key("E2", 1));
    let t = |a: &str, b: &str| format!("{a}⊗{b}");
    let sum = |parts: &[String]| {
        let mut p = parts.to_vec();
        p.sort();
        p.join(" ⊕ ")
    };
    // Λ² of a rank-one atom is zero.
    let e02 = t(&e0, &e2);
    let ext2_e1 = format!("L2({e1})");
    let displayed = vec![
        (vec![e02.clone(), e02.clone()], -3),
        (vec![e02.clone(), sum(&[e02.clone(), e02.clone()]), e02.clone()], 1),
        (vec!["0".into(), e02.clone(), e02.clone()], -2),
        (vec![e02.clone(), ext2_e1], -2),
        (
            vec![
                t(&e0, &e0),
                sum(&[t(&e0, &e0), e02.clone(), e02.clone()]),
                sum(&[e02.clone(), e02.clone()]),
            ],
            1,
        ),
        (vec![sum(&[t(&e0, &e0), e02.clone(), e02.clone()]), t(&e1, &e1), t(&e2, &e2)], 1),
    ];

    let psi = adams_split(&split, 2)?;
    let lhs = reduce(&differential(&psi)).filter(|g| !g.is_zero());
    let mut expected = CubeChain::zero();
    for (j, sign) in [(0, -1), (1, 1), (2, -1)] {
        let e = split.cube.vertex(&[j]);
        let ext2 = e.ext_power(2)?.0;
        let square = Obj::tensor(&[e.sym_power(1)?.0, e.ext_power(1)?.0]).0;
        for (c, o) in [(-2 * sign, ext2), (sign, square)] {
            if !o.is_zero() {
                expected.add_term(c, Grid::point(o));
            }
        }
    }
    Ok(WorkedExample { split, computed, displayed, differential_matches: lhs == expected })
}
