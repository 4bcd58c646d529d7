use adams_core::cubes::{
    cube_from_sequence, differential, face_chain, is_degenerate, normalized_project, reduce, simple_complex,
    tensor_complex, ChainElement, CubeChain, CubeError, Grid,
};
use adams_core::exactalg::{exactness_profile, Mat, Q};
use adams_core::objects::{Atom, Obj};
use adams_core::splitcubes::random_split_cube;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn atom(l: &str, r: usize) -> Obj {
    Obj::atom(&Atom::named(l, r))
}

fn random_cube(seed: u64, n: usize) -> Grid<Q> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_split_cube::<Q>(&mut rng, n, 2, "E").cube
}

fn one_cube(a: &Obj) -> Grid<Q> {
    Grid::point(a.clone()).degeneracy(1, 0)
}

#[test]
fn degeneracies_of_a_point() {
    let a = atom("A", 2);
    let s0 = Grid::<Q>::point(a.clone()).degeneracy(1, 0);
    assert_eq!(s0.vertex(&[0]), &a);
    assert_eq!(s0.vertex(&[1]), &a);
    assert!(s0.vertex(&[2]).is_zero());
    assert!(s0.edge(0, &[0]).unwrap().is_identity());
    let s1 = Grid::<Q>::point(a.clone()).degeneracy(1, 1);
    assert!(s1.vertex(&[0]).is_zero());
    assert!(s1.edge(0, &[1]).unwrap().is_identity());
    assert_eq!(is_degenerate(&s1), Some((1, 1)));
    assert_eq!(is_degenerate(&Grid::<Q>::zero(&[2, 2])), Some((1, 0)));
}

#[test]
fn faces_of_a_one_cube() {
    let e = random_cube(3, 1);
    assert_eq!(e.face(1, 1), Grid::point(e.vertex(&[1]).clone()));
    assert!(e.face(1, 3).is_zero());
    let d = differential(&ChainElement::single(1, e.clone()));
    let mut expected = CubeChain::zero();
    for (j, c) in [(0, -1), (1, 1), (2, -1)] {
        expected.add_term(c, e.face(1, j));
    }
    assert_eq!(d, expected);
}

#[test]
fn cubical_identities_hold() {
    for seed in 0..12 {
        for n in 1..=3 {
            let e = random_cube(seed, n);
            // faces commute
            for i in 1..n {
                for j in 1..=n {
                    for l in 0..=2 {
                        for k in 0..=2 {
                            let lhs = e.face(j, k).face(i, l);
                            let rhs = if j <= i { e.face(i + 1, l).face(j, k) } else { e.face(i, l).face(j - 1, k) };
                            assert_eq!(lhs, rhs, "faces n={n} i={i} j={j}");
                        }
                    }
                }
            }
            let lower = e.face(1, 0);
            for i in 1..=n {
                let f = lower.clone();
                assert_eq!(f.degeneracy(i, 0).face(i, 0), f);
                assert_eq!(f.degeneracy(i, 0).face(i, 1), f);
                assert_eq!(f.degeneracy(i, 1).face(i, 1), f);
                assert_eq!(f.degeneracy(i, 1).face(i, 2), f);
                assert!(f.degeneracy(i, 0).face(i, 2).is_zero());
                assert!(f.degeneracy(i, 1).face(i, 0).is_zero());
            }
            for i in 1..=n {
                for j in 1..=n {
                    for l in 0..=2 {
                        for u in 0..=1 {
                            if j < i {
                                assert_eq!(e.degeneracy(j, u).face(i, l), e.face(i - 1, l).degeneracy(j, u));
                            } else if j > i {
                                assert_eq!(e.degeneracy(j, u).face(i, l), e.face(i, l).degeneracy(j - 1, u));
                            }
                        }
                    }
                }
            }
            for i in 1..=n {
                for j in i..=n {
                    for u in 0..=1 {
                        for v in 0..=1 {
                            assert_eq!(e.degeneracy(j, v).degeneracy(i, u), e.degeneracy(i, u).degeneracy(j + 1, v));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn differential_squares_to_zero() {
    for seed in 0..20 {
        for n in 1..=3 {
            let x = ChainElement::single(1, random_cube(100 + seed, n));
            assert!(differential(&differential(&x)).is_zero());
        }
    }
}

#[test]
fn degenerate_cubes_vanish_in_the_quotient() {
    let a = atom("A", 1);
    let x = ChainElement::single(1, one_cube(&a));
    assert!(reduce(&x).is_zero());
    assert!(reduce(&differential(&x)).is_zero());
}

#[test]
fn normalized_projection_properties() {
    for seed in 0..10 {
        for n in 1..=3 {
            let e = random_cube(200 + seed, n);
            let mut x = ChainElement::single(2, e.clone());
            x.add_term(-1, e.face(1, 0).degeneracy(2.min(n), 1));
            let p = normalized_project(&x);
            for i in 1..=n {
                assert!(face_chain(&p, i, 0).filter(|g| !g.is_zero()).is_zero());
                assert!(face_chain(&p, i, 2).filter(|g| !g.is_zero()).is_zero());
            }
            assert!(x.minus(&p).terms().all(|(_, g)| is_degenerate(g).is_some()));
            assert_eq!(normalized_project(&p), p);
            assert_eq!(normalized_project(&differential(&x)), differential(&p).filter(|g| !g.is_zero()));
        }
    }
    let a = atom("A", 1);
    assert!(normalized_project(&ChainElement::single(1, one_cube(&a))).is_zero());
}

#[test]
fn simple_complex_examples() {
    let e = random_cube(5, 2);
    let s = simple_complex(&e);
    assert_eq!(s.lengths(), &[4]);
    assert_eq!(s.vertex(&[2]).rank(), e.vertex(&[0, 2]).rank() + e.vertex(&[1, 1]).rank() + e.vertex(&[2, 0]).rank());
    s.check_complex().unwrap();
    let (dims, maps) = s.strand(0, 0);
    let maps: Vec<Mat<Q>> = maps.into_iter().cloned().collect();
    assert!(exactness_profile(&dims, &maps).unwrap().is_exact);
}

#[test]
fn tensor_square_of_one_cubes() {
    let a = random_cube(8, 1);
    let b = random_cube(9, 1);
    let t = tensor_complex(&a, &b);
    assert_eq!(t.vertex(&[0, 2]).rank(), a.vertex(&[0]).rank() * b.vertex(&[2]).rank());
    t.validate().unwrap();
    let z = tensor_complex(&a, &Grid::zero(&[2]));
    assert!(z.is_zero());
    simple_complex(&t).check_complex().unwrap();
}

#[test]
fn cubes_from_sequences() {
    let a = atom("A", 1);
    let p = |o: &Obj| Grid::<Q>::point(o.clone());
    let layers = [p(&a), p(&a), Grid::point(Obj::zero())];
    let maps = [vec![Mat::identity(1)], vec![Mat::zeros(0, 1)]];
    assert_eq!(cube_from_sequence(&layers, &maps, 1).unwrap(), p(&a).degeneracy(1, 0));
    let bad = [vec![Mat::from_i64_rows(&[&[2]])], vec![Mat::zeros(0, 1)]];
    let layers2 = [p(&a), p(&a), p(&a)];
    let bad_maps = [bad[0].clone(), vec![Mat::zeros(1, 1)]];
    assert!(matches!(cube_from_sequence(&layers2, &bad_maps, 1), Err(CubeError::NotExact { .. })));
    // twice along different directions
    let e = random_cube(21, 1);
    let f = random_cube(22, 1);
    let s = Grid::stack(&[e.clone(), e.clone(), Grid::zero(&[2])], &[identity_maps(&e), zero_maps(&e)], 2).unwrap();
    s.validate().unwrap();
    let _ = f;
}

fn identity_maps(e: &Grid<Q>) -> Vec<Mat<Q>> {
    e.vertices().iter().map(|o| Mat::identity(o.rank())).collect()
}

fn zero_maps(e: &Grid<Q>) -> Vec<Mat<Q>> {
    e.vertices().iter().map(|o| Mat::zeros(0, o.rank())).collect()
}

#[test]
fn json_round_trip() {
    let e = random_cube(30, 2);
    let j = serde_json::to_string(&e.to_json()).unwrap();
    let back = Grid::<Q>::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
    assert_eq!(back, e);
    let x: CubeChain<Q> = [(2, e.clone()), (-1, e.face(1, 1).degeneracy(1, 0))].into_iter().collect();
    let back = CubeChain::<Q>::from_json(&x.to_json()).unwrap();
    assert_eq!(back, x);
}
