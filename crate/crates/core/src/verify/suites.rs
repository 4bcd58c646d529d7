use num_traits::One;
use rand::Rng as _;
use rand_chacha::ChaCha8Rng;

use super::{Failure, Outcome, Params, Suite};
use crate::adams::{
    adams_split, adams_split_chain, big_phi, ctilde_bicomplex, ctilde_cube, fold_transposes, gk_differential, koszul,
    koszul_additivity, mu, psi_split, psi_split_chain, varphi, worked_example, GkGen,
};
use crate::cubes::{
    canonically_equal, compare_chains, compare_sums, differential, face_chain, is_degenerate, normalized_project, reduce,
    ChainElement, CubeChain, Generator, Grid, Tier,
};
use crate::exactalg::{
    exactness_profile, membership_solve, poly_kernel, q, random_points, rank, Mat, Membership, Poly, Ring, Q,
};
use crate::multiindex::{self, j_set, MultiIndex};
use crate::objects::{Atom, Obj};
use crate::splitcubes::{forget_splitting, random_split_cube, split_differential, SplitChain, SplitCube};
use crate::transgression::tr::to_poly_grid;
use crate::transgression::{
    box_degenerate, box_differential, full_adams, grid_degeneracy, grid_face, has_canonical_kernels, lambda, nc_box_reduce,
    t_component, t_morphism, tr1, BoxChain, Transgressions,
};

pub(super) static REGISTRY: &[Suite] = &[
    Suite { name: "multiindex", about: "face, degeneracy and substitution identities on multi-indices", count: by_cases, run: multiindex_case },
    Suite { name: "cubes-d2", about: "d² = 0 on cubes, split cubes, Gᵏ and the □ complex", count: by_cases, run: d2_case },
    Suite { name: "identities3", about: "cubical and cocubical identities, exhaustive for n ≤ 3", count: by_cases, run: identities_case },
    Suite { name: "normalized", about: "normalized projection: kernel conditions, degenerate difference, idempotent, chain map", count: by_cases, run: normalized_case },
    Suite { name: "splitcubes", about: "split cube validation, faces and the split differential", count: by_cases, run: split_case },
    Suite { name: "koszul", about: "exactness of Koszul complexes, rank ≤ 3, k ≤ 4", count: |_| KOSZUL.len(), run: koszul_case },
    Suite { name: "additivity", about: "Koszul additivity isomorphism commutes with differentials", count: |_| ADDITIVITY.len(), run: additivity_case },
    Suite { name: "face-lemmas", about: "faces of C̃ᵢ and the bicomplex factorization", count: by_cases, run: face_lemma_case },
    Suite { name: "phi-mu-chain", about: "φ and μ commute with differentials", count: by_cases, run: phi_mu_case },
    Suite { name: "psi-chain", about: "Ψᵏ and adams_split commute with differentials", count: by_cases, run: psi_case },
    Suite { name: "adams-example", about: "the k = 2, n = 1 worked example", count: |_| 1, run: example_case },
    Suite { name: "rank-identity", about: "rank of full_adams on a point equals its rank", count: rank_count, run: rank_case },
    Suite { name: "lambda", about: "λ has canonical-kernel outputs and commutes with d", count: by_cases, run: lambda_case },
    Suite { name: "trans-faces", about: "tr₁ faces as submodules and constant fiber rank", count: by_cases, run: trans_faces_case },
    Suite { name: "trans2-chain", about: "d_s T = T d on canonical-kernel cubes", count: by_cases, run: trans_chain_case },
    Suite { name: "full-adams", about: "full_adams commutes with differentials for n = 1", count: by_cases, run: full_adams_case },
];

fn by_cases(p: &Params) -> usize {
    p.cases
}

fn pick_n(p: &Params, rng: &mut ChaCha8Rng, cap: usize) -> usize {
    rng.gen_range(1..=p.max_n.clamp(1, cap))
}

fn pick_k(p: &Params, rng: &mut ChaCha8Rng) -> usize {
    p.k_list[rng.gen_range(0..p.k_list.len())]
}

/// Corner ranks for `Gᵏ` computations; `n = 3` and `n = 2, k ≥ 3` are
/// capped at 1.
fn adams_rank(p: &Params, n: usize, k: usize) -> usize {
    if n >= 3 || (n >= 2 && k >= 3) {
        1
    } else {
        p.max_rank.clamp(1, 2)
    }
}

fn keys<G: Generator>(x: &ChainElement<G>) -> Vec<String> {
    x.terms().map(|(c, g)| format!("{c:+} {}", g.key())).collect()
}

fn chain_failure<G: Generator>(message: &str, lhs: &ChainElement<G>, rhs: &ChainElement<G>) -> Failure {
    Failure { message: message.into(), lhs: keys(lhs), rhs: keys(rhs), diff: keys(&lhs.minus(rhs)) }
}

fn message(m: impl Into<String>) -> Failure {
    Failure { message: m.into(), ..Failure::default() }
}

/// Runs checks in order; the first failure wins, otherwise the weakest tier.
struct Checks {
    label: String,
    tier: Result<Tier, Failure>,
}

impl Checks {
    fn new(label: impl Into<String>) -> Self {
        Checks { label: label.into(), tier: Ok(Tier::Strict) }
    }

    fn tier(&mut self, t: Result<Tier, Failure>) {
        if let Ok(current) = self.tier {
            self.tier = t.map(|t| t.max(current));
        }
    }

    fn ensure(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.tier(Err(message(what())));
        }
    }

    fn equal_chains<G: Generator>(&mut self, what: &str, lhs: &ChainElement<G>, rhs: &ChainElement<G>) {
        if self.tier.is_ok() && !lhs.minus(rhs).is_zero() {
            self.tier(Err(chain_failure(what, lhs, rhs)));
        }
    }

    fn grids(&mut self, what: &str, a: &Grid<Q>, b: &Grid<Q>) {
        if self.tier.is_err() {
            return;
        }
        self.tier(if a == b {
            Ok(Tier::Strict)
        } else if canonically_equal(a, b) {
            Ok(Tier::Canonical)
        } else {
            Err(Failure { message: what.into(), lhs: vec![a.key().into()], rhs: vec![b.key().into()], diff: vec![] })
        });
    }

    fn done(self) -> Outcome {
        Outcome { label: self.label, tier: self.tier }
    }
}

fn nonzero(x: &CubeChain<Q>) -> CubeChain<Q> {
    x.filter(|g| !g.is_zero())
}

fn sample_split(rng: &mut ChaCha8Rng, n: usize, max_rank: usize) -> SplitCube<Q> {
    random_split_cube::<Q>(rng, n, max_rank, "E")
}

fn multiindex_case(_: &Params, _: usize, rng: &mut ChaCha8Rng) -> Outcome {
    let n = rng.gen_range(1..=4);
    let entries: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
    let i = MultiIndex::new(entries.clone());
    let mut c = Checks::new(format!("i={i}"));
    for l in 1..=n {
        for v in 0..=2 {
            let face = i.face(l).expect("position in range");
            c.ensure(face.degeneracy(l, v).expect("position in range").face(l).ok() == Some(face.clone()), || {
                format!("σ then ∂ at {l}")
            });
            c.ensure(i.substitution(l, v).ok() == face.degeneracy(l, v).ok(), || format!("substitution at {l}"));
        }
    }
    let chi = i.characteristic();
    c.ensure(chi.entries().iter().all(|&e| e <= 1), || "characteristic".into());
    let co = chi.complement().expect("0/1 entries");
    c.ensure(chi.join(&co).ok() == Some(MultiIndex::constant(n, 1)), || "χ ∨ χᶜ".into());
    c.ensure(chi.meet(&co).ok() == Some(MultiIndex::zeros(n)), || "χ ∧ χᶜ".into());
    c.ensure(i.norm(None).ok() == Some(entries.iter().sum()), || "norm".into());
    for m in 0..=n {
        let count = j_set(n, m).map(|s| s.len()).unwrap_or(0);
        c.ensure(count == binom(n as i64, m as i64) as usize, || format!("|J({n},{m})|"));
    }
    c.done()
}

fn binom(n: i64, m: i64) -> i64 {
    if m < 0 || m > n {
        return 0;
    }
    (0..m).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

fn d2_case(p: &Params, _: usize, rng: &mut ChaCha8Rng) -> Outcome {
    let n = pick_n(p, rng, 3);
    let k = pick_k(p, rng);
    let mut c = Checks::new(format!("n={n} k={k}"));
    let s = sample_split(rng, n, p.max_rank.clamp(1, 2));
    let x = CubeChain::single(1, s.cube.clone());
    c.equal_chains("ZC", &differential(&differential(&x)), &CubeChain::zero());
    let xs = SplitChain::single(1, s.clone());
    c.equal_chains("ZSp", &split_differential(&split_differential(&xs)), &SplitChain::zero());
    let g = psi_split(&sample_split(rng, n, adams_rank(p, n, k)), k);
    c.equal_chains("Gk", &gk_differential(&gk_differential(&g)), &ChainElement::zero());
    if n <= 2 {
        let e = crate::transgression::canonical_kernel_cube(rng, n, p.max_rank.clamp(1, 2), "E");
        match t_morphism(&CubeChain::single(1, e.cube)).and_then(|t| box_differential(&box_differential(&t)?)) {
            Ok(dd) => c.equal_chains("□", &dd, &BoxChain::zero()),
            Err(e) => c.tier(Err(message(e.to_string()))),
        }
    }
    c.done()
}

fn identities_case(p: &Params, _: usize, rng: &mut ChaCha8Rng) -> Outcome {
    let n = rng.gen_range(1..=3);
    let mut c = Checks::new(format!("n={n}"));
    let e = sample_split(rng, n, p.max_rank.clamp(1, 2)).cube;
    for i in 1..n {
        for j in 1..=n {
            for (l, k) in (0..=2).flat_map(|l| (0..=2).map(move |k| (l, k))) {
                let lhs = e.face(j, k).face(i, l);
                let rhs = if j <= i { e.face(i + 1, l).face(j, k) } else { e.face(i, l).face(j - 1, k) };
                c.ensure(lhs == rhs, || format!("∂∂ i={i} j={j}"));
            }
        }
    }
    let lower = e.face(1, 0);
    for i in 1..=n {
        let f = &lower;
        for (u, j) in [(0, 0), (0, 1), (1, 1), (1, 2)] {
            c.ensure(f.degeneracy(i, u).face(i, j) == *f, || format!("∂σ i={i} u={u} j={j}"));
        }
        c.ensure(f.degeneracy(i, 0).face(i, 2).is_zero() && f.degeneracy(i, 1).face(i, 0).is_zero(), || {
            format!("∂σ vanishing i={i}")
        });
    }
    for i in 1..=n {
        for j in 1..=n {
            for (l, u) in (0..=2).flat_map(|l| (0..=1).map(move |u| (l, u))) {
                if j < i {
                    c.ensure(e.degeneracy(j, u).face(i, l) == e.face(i - 1, l).degeneracy(j, u), || format!("∂σ i={i} j={j}"));
                } else if j > i {
                    c.ensure(e.degeneracy(j, u).face(i, l) == e.face(i, l).degeneracy(j - 1, u), || format!("∂σ i={i} j={j}"));
                }
            }
        }
        for j in i..=n {
            for (u, v) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                c.ensure(e.degeneracy(j, v).degeneracy(i, u) == e.degeneracy(i, u).degeneracy(j + 1, v), || {
                    format!("σσ i={i} j={j}")
                });
            }
        }
    }
    let canonical = crate::transgression::canonical_kernel_cube(rng, n, p.max_rank.clamp(1, 2), "E");
    let t = Transgressions::new(&canonical.cube);
    match t.tr_cube(&[]) {
        Ok(g) => cocubical(&mut c, &g, n),
        Err(e) => c.tier(Err(message(e.to_string()))),
    }
    c.done()
}

/// `δ_r^j` and `σ_r` identities on a payload with `vars` box variables.
fn cocubical(c: &mut Checks, g: &Grid<Poly>, vars: usize) {
    let face = |g: &Grid<Poly>, r, j| grid_face(g, r, j).ok();
    let degen = |g: &Grid<Poly>, r| grid_degeneracy(g, r).ok();
    for s in 1..=vars {
        for r in 1..s {
            for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let lhs = face(g, s, i).and_then(|h| face(&h, r, j));
                let rhs = face(g, r, j).and_then(|h| face(&h, s - 1, i));
                c.ensure(lhs.is_some() && lhs == rhs, || format!("δδ r={r} s={s}"));
            }
        }
    }
    for s in 1..=vars + 1 {
        let Some(lifted) = degen(g, s) else {
            c.ensure(false, || format!("σ_{s}"));
            return;
        };
        c.ensure(box_degenerate(&lifted, None, vars + 1).is_some_and(|r| r <= s), || format!("σ_{s} image detected"));
        for j in 0..=1 {
            c.ensure(face(&lifted, s, j).as_ref() == Some(g), || format!("δσ r=s={s}"));
            for r in (1..=vars + 1).filter(|&r| r != s) {
                let expected = if r < s {
                    face(g, r, j).and_then(|h| degen(&h, s - 1))
                } else {
                    face(g, r - 1, j).and_then(|h| degen(&h, s))
                };
                c.ensure(expected.is_some() && face(&lifted, r, j) == expected, || format!("δσ r={r} s={s}"));
            }
        }
        for r in 1..=s {
            let lhs = degen(&lifted, r);
            let rhs = degen(g, r).and_then(|h| degen(&h, s + 1));
            c.ensure(lhs.is_some() && lhs == rhs, || format!("σσ r={r} s={s}"));
        }
    }
}

fn normalized_case(p: &Params, _: usize, rng: &mut ChaCha8Rng) -> Outcome {
    let n = pick_n(p, rng, 3);
    let mut c = Checks::new(format!("n={n}"));
    let e = sample_split(rng, n, p.max_rank.clamp(1, 2)).cube;
    let mut x = ChainElement::single(2, e.clone());
    x.add_term(-1, e.face(1, 0).degeneracy(rng.gen_range(1..=n), rng.gen_range(0..=1)));
    let proj = normalized_project(&x);
    for i in 1..=n {
        for j in [0, 2] {
            c.ensure(face_chain(&proj, i, j).filter(|g| !g.is_zero()).is_zero(), || format!("∂_{i}^{j} of the projection"));
        }
    }
    c.ensure(x.minus(&proj).terms().all(|(_, g)| is_degenerate(g).is_some()), || "difference is degenerate".into());
    c.equal_chains("idempotent", &normalized_project(&proj), &proj);
    c.equal_chains("chain map", &normalized_project(&differential(&x)), &nonzero(&differential(&proj)));
    c.done()
}

fn split_case(p: &Params, _: usize, rng: &mut ChaCha8Rng) -> Outcome {
    let n = pick_n(p, rng, 3);
    let mut c = Checks::new(format!("n={n}"));
    let s = sample_split(rng, n, p.max_rank.clamp(1, 2));
    c.ensure(s.validate().is_ok() && s.cube.validate().is_ok(), || "validate".into());
    for l in 1..=n {
        for j in 0..=2 {
            c.ensure(s.face(l, j).validate().is_ok(), || format!("face ∂_{l}^{j}"));
        }
    }
    let xs = SplitChain::single(1, s.clone());
    let ds = split_differential(&xs);
    c.equal_chains("d²", &split_differential(&ds), &SplitChain::zero());
    c.equal_chains(
        "forget commutes with d",
        &nonzero(&forget_splitting(&ds)),
        &nonzero(&differential(&forget_splitting(&xs))),
    );
    c.done()
}

const KOSZUL: [(usize, usize); 16] = {
    let mut out = [(0, 0); 16];
    let mut i = 0;
    while i < 16 {
        out[i] = (i / 4, i % 4 + 1);
        i += 1;
    }
    out
};

fn atom(label: &str, rank: usize) -> Obj {
    if rank == 0 {
        Obj::zero()
    } else {
        Obj::atom(&Atom::named(label, rank))
    }
}

fn strand_exact(g: &Grid<Q>) -> bool {
    let (dims, maps) = g.strand(0, 0);
    let maps: Vec<Mat<Q>> = maps.into_iter().cloned().collect();
    exactness_profile(&dims, &maps).is_ok_and(|e| e.is_exact)
}

fn koszul_case(_: &Params, index: usize, _: &mut ChaCha8Rng) -> Outcome {
    let (r, k) = KOSZUL[index];
    let mut c = Checks::new(format!("rank={r} k={k}"));
    let g = koszul::<Q>(&atom("E", r), k);
    c.ensure(g.check_complex().is_ok(), || "d² = 0".into());
    c.ensure(strand_exact(&g), || "exact".into());
    c.done()
}

const ADDITIVITY: [(usize, usize, usize); 12] =
    [(1, 1, 1), (1, 1, 2), (1, 1, 3), (1, 2, 1), (1, 2, 2), (1, 2, 3), (2, 1, 1), (2, 1, 2), (2, 1, 3), (2, 2, 1), (2, 2, 2), (2, 2, 3)];

fn additivity_case(_: &Params, index: usize, _: &mut ChaCha8Rng) -> Outcome {
    let (a, b, k) = ADDITIVITY[index];
    let mut c = Checks::new(format!("dims=({a},{b}) k={k}"));
    let (split, whole, isos) = koszul_additivity::<Q>(&atom("E", a), &atom("F", b), k);
    c.ensure(strand_exact(&split) && strand_exact(&whole), || "exact".into());
    for p in 0..k {
        let (Some(d_split), Some(d_whole)) = (split.edge(0, &[p]), whole.edge(0, &[p])) else {
            continue;
        };
        c.ensure(d_whole.dot(&isos[p]) == isos[p + 1].dot(d_split), || format!("iso commutes with d at {p}"));
    }
    c.done()
}

fn face_lemma_case(p: &Params, _: usize, rng: &mut ChaCha8Rng) -> Outcome {
    let n = pick_n(p, rng, 2);
    let k = pick_k(p, rng).min(3);
    let mut c = Checks::new(format!("n={n} k={k}"));
    let s = sample_split(rng, n, adams_rank(p, n, k));
    for i in multiindex::grid(n, k) {
        let i = i.entries();
        let cube = ctilde_cube(&s, i, k);
        for l in 0..n {
            let mut face_i = i.to_vec();
            face_i.remove(l);
            if i[l] == 0 {
                c.grids("partial0 (i = 0)", &cube.face(l + 2, 0), &ctilde_cube(&s.face(l + 1, 0), &face_i, k));
            } else {
                let mut lower = i.to_vec();
                lower[l] -= 1;
                c.grids("partial0 (i > 0)", &cube.face(l + 2, 0), &ctilde_cube(&s, &lower, k).face(l + 2, 1));
            }
            if i[l] + 1 == k {
                c.grids("partial11 ∂¹", &cube.face(l + 2, 1), &ctilde_cube(&s.face(l + 1, 1), &face_i, k));
                c.grids("partial11 ∂²", &cube.face(l + 2, 2), &ctilde_cube(&s.face(l + 1, 2), &face_i, k));
            } else {
                let b = ctilde_bicomplex(&s, i, l, k);
                c.ensure(b.lengths()[..2] == [k - i[l] - 1, i[l] + 1], || "tens lengths".into());
                c.ensure(b.validate().is_ok(), || "tens bicomplex".into());
                c.grids("tens", &big_phi(&b), &cube.face(l + 2, 2));
            }
        }
    }
    let (a, b) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
    let (split, whole, isos) = koszul_additivity::<Q>(&atom("E", a), &atom("F", b), k);
    c.ensure(isos.iter().all(Mat::is_identity), || "sum isomorphism".into());
    c.grids("sum", &split, &whole);
    c.done()
}

fn phi_mu_case(p: &Params, _: usize, rng: &mut ChaCha8Rng) -> Outcome {
    let n = rng.gen_range(0..=p.max_n.min(2));
    let k = pick_k(p, rng);
    let mut c = Checks::new(format!("n={n} k={k}"));
    let s = sample_split(rng, n, adams_rank(p, n, k));
    let psi = psi_split(&s, k);
    let phi = varphi(&psi);
    c.equal_chains("dφ = φd_s", &nonzero(&differential(&phi)), &varphi(&gk_differential(&psi)));
    match (mu(&phi), mu(&nonzero(&differential(&phi)))) {
        (Ok(m), Ok(md)) => c.equal_chains("dμ = μd", &reduce(&differential(&m)), &reduce(&md)),
        (Err(e), _) | (_, Err(e)) => c.tier(Err(message(e.to_string()))),
    }
    c.done()
}

fn gk_view(g: &GkGen<Q>) -> (String, &Grid<Q>) {
    (format!("{:?}", g.part), &g.grid)
}

fn psi_case(p: &Params, _: usize, rng: &mut ChaCha8Rng) -> Outcome {
    let n = rng.gen_range(0..=p.max_n.min(2));
    let k = pick_k(p, rng);
    let mut c = Checks::new(format!("n={n} k={k}"));
    let s = sample_split(rng, n, adams_rank(p, n, k));
    let ds = split_differential(&SplitChain::single(1, s.clone()));
    let lhs = gk_differential(&psi_split(&s, k));
    let rhs = psi_split_chain(&ds, k);
    match compare_sums(&lhs, &rhs, gk_view) {
        Some(t) => c.tier(Ok(t)),
        None => {
            let mut f = chain_failure("d_s Ψ = Ψ d", &lhs, &rhs);
            if compare_sums(&fold_transposes(&lhs, k), &fold_transposes(&rhs, k), gk_view).is_some() {
                f.message.push_str(" (agrees after folding transposed pairs)");
            }
            c.tier(Err(f));
        }
    }
    match (adams_split(&s, k), adams_split_chain(&ds, k)) {
        (Ok(a), Ok(b)) => {
            let lhs = nonzero(&reduce(&differential(&a)));
            let rhs = nonzero(&b);
            match compare_chains(&lhs, &rhs) {
                Some(t) => c.tier(Ok(t)),
                None => c.tier(Err(chain_failure("d adams_split = adams_split d", &lhs, &rhs))),
            }
        }
        (Err(e), _) | (_, Err(e)) => c.tier(Err(message(e.to_string()))),
    }
    c.done()
}

fn example_case(p: &Params, _: usize, _: &mut ChaCha8Rng) -> Outcome {
    let mut c = Checks::new("k=2 n=1");
    match worked_example(p.seed) {
        Ok(ex) => {
            c.ensure(ex.differential_matches, || "differential of μ".into());
            c.ensure(ex.extra_terms().is_empty(), || format!("terms not in the display: {:?}", ex.extra_terms()));
            let mismatches = ex.mismatches();
            if !mismatches.is_empty() {
                let lines = mismatches
                    .iter()
                    .map(|(t, printed, got)| format!("{} printed {printed:+} computed {got:+}", t.join(" → ")))
                    .collect::<Vec<_>>();
                c.tier(Err(Failure { message: "displayed coefficients".into(), diff: lines, ..Failure::default() }));
            }
        }
        Err(e) => c.tier(Err(message(e.to_string()))),
    }
    c.done()
}

/// `Σ_p (-1)^{k-p+1} (k-p) C(r+p-1, p) C(r, k-p)`, from binomials alone.
pub fn secondary_euler_rank(r: i64, k: i64) -> i64 {
    (0..=k).map(|p| if (k - p + 1) % 2 == 0 { 1 } else { -1 } * (k - p) * binom(r + p - 1, p) * binom(r, k - p)).sum()
}

fn rank_count(p: &Params) -> usize {
    p.max_rank.max(1) * p.k_list.len()
}

fn rank_case(p: &Params, index: usize, _: &mut ChaCha8Rng) -> Outcome {
    let r = index % p.max_rank.max(1) + 1;
    let k = p.k_list[index / p.max_rank.max(1)];
    let mut c = Checks::new(format!("r={r} k={k}"));
    c.ensure(secondary_euler_rank(r as i64, k as i64) == r as i64, || "binomial oracle".into());
    let x = CubeChain::single(1, Grid::point(atom("A", r)));
    match full_adams(&x, k) {
        Ok(y) => {
            let total: i64 = y.terms().map(|(c, g)| c * g.payload.vertex(&[]).rank() as i64).sum();
            c.ensure(total == r as i64, || format!("rank {total}"));
        }
        Err(e) => c.tier(Err(message(e.to_string()))),
    }
    c.done()
}

fn lambda_case(p: &Params, _: usize, rng: &mut ChaCha8Rng) -> Outcome {
    let n = pick_n(p, rng, 2);
    let mut c = Checks::new(format!("n={n}"));
    let s = sample_split(rng, n, p.max_rank.clamp(1, 2));
    let x = CubeChain::single(1, s.cube.clone());
    let l = lambda(&x);
    for (_, g) in l.terms() {
        c.ensure(g.validate().is_ok(), || "λ output is a cube".into());
        c.ensure(has_canonical_kernels(g), || "λ output has canonical kernels".into());
    }
    c.equal_chains("dλ = λd", &nonzero(&differential(&l)), &nonzero(&lambda(&differential(&x))));
    c.done()
}

/// `tr₁` against the kernel of `(a, b) ↦ t f¹a + (1 - t) b`.
fn trans_faces_case(p: &Params, _: usize, rng: &mut ChaCha8Rng) -> Outcome {
    let s = sample_split(rng, 1, p.max_rank.clamp(1, 3));
    let ranks: Vec<usize> = s.cube.vertices().iter().map(Obj::rank).collect();
    let mut c = Checks::new(format!("ranks={ranks:?}"));
    let seq = to_poly_grid(&s.cube);
    let (f0, f1) = (seq.edge(0, &[0]).expect("edge").clone(), seq.edge(0, &[1]).expect("edge").clone());
    let tr = match tr1(&seq) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(c.label, message(e.to_string())),
    };
    let t = Poly::var(1);
    let map = Mat::hstack(&[f1.insert_vars(1, 1).scale(&t), Mat::<Poly>::identity(f1.rows()).scale(&Poly::one().minus(&t))])
        .expect("same rows");
    c.ensure(map.dot(&tr.basis).is_zero(), || "basis lies in the kernel".into());
    match poly_kernel(&map, 2, 5, rng) {
        Ok(oracle) => {
            for (a, b, what) in [(&tr.basis, &oracle, "kernel ⊆ tr₁"), (&oracle, &tr.basis, "tr₁ ⊆ kernel")] {
                c.ensure(matches!(membership_solve(a, b, 3), Membership::Solution(_)), || what.into());
            }
        }
        Err(e) => c.tier(Err(message(e.to_string()))),
    }
    let (e1, e2) = (f1.cols(), f1.rows());
    let fiber = |v: i64| tr.basis.evaluate(1, &q(v)).expect("variable 1").eval_point(&[]);
    let same_span = |a: &Mat<Q>, b: &Mat<Q>| {
        let both = Mat::hstack(&[a.clone(), b.clone()]).expect("same rows");
        rank(a) == rank(b) && rank(&both) == rank(a)
    };
    let e1_only = Mat::vstack(&[Mat::identity(e1), Mat::zeros(e2, e1)]).expect("same cols");
    c.ensure(same_span(&fiber(0), &e1_only), || "δ⁰ tr₁ = E¹".into());
    let image = Mat::block_diag(&[f0.eval_point(&[]), Mat::identity(e2)]);
    c.ensure(same_span(&fiber(1), &image), || "δ¹ tr₁ = im f⁰ ⊕ E²".into());
    for point in random_points(rng, 1, 5) {
        c.ensure(rank(&tr.basis.eval_point(&point)) == e1, || format!("fiber rank at {point:?}"));
    }
    c.done()
}

fn trans_chain_case(p: &Params, _: usize, rng: &mut ChaCha8Rng) -> Outcome {
    let n = pick_n(p, rng, 2);
    let mut c = Checks::new(format!("n={n}"));
    let s = crate::transgression::canonical_kernel_cube(rng, n, p.max_rank.clamp(1, 2), "E");
    let t = Transgressions::new(&s.cube);
    for m in 0..=n {
        for i in j_set(n, m).expect("m ≤ n") {
            match t_component(&t, i.entries()) {
                Ok(split) => c.ensure(split.validate().is_ok(), || format!("T^{i} is split")),
                Err(e) => c.tier(Err(message(e.to_string()))),
            }
        }
    }
    c.ensure(!t.used_fallback(), || "natural sections".into());
    let x = CubeChain::single(1, s.cube.clone());
    match (t_morphism(&x).and_then(|y| box_differential(&y)), t_morphism(&differential(&x))) {
        (Ok(lhs), Ok(rhs)) => c.equal_chains("d_s T = T d", &lhs, &rhs),
        (Err(e), _) | (_, Err(e)) => c.tier(Err(message(e.to_string()))),
    }
    c.done()
}

fn full_adams_case(p: &Params, _: usize, rng: &mut ChaCha8Rng) -> Outcome {
    let k = pick_k(p, rng);
    let mut c = Checks::new(format!("n=1 k={k}"));
    let s = sample_split(rng, 1, p.max_rank.clamp(1, 2));
    let x = normalized_project(&CubeChain::single(1, s.cube.clone()));
    let lhs = full_adams(&x, k).and_then(|y| box_differential(&y)).map(|y| nc_box_reduce(&y));
    match (lhs, full_adams(&differential(&x), k)) {
        (Ok(lhs), Ok(rhs)) => c.equal_chains("d full_adams = full_adams d", &lhs, &rhs),
        (Err(e), _) | (_, Err(e)) => c.tier(Err(message(e.to_string()))),
    }
    c.done()
}
