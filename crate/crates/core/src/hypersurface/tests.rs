use std::collections::HashSet;

use proptest::prelude::*;

use super::*;
use super::Strategy;

fn field(p: u64, k: u32) -> Field {
    Field::new(p, k).unwrap()
}

fn monomial(exps: &[u32], coeff: FieldElement) -> Term {
    Term { exps: exps.to_vec(), coeff }
}

/// sum a_i x_i^d + c x_0 .. x_n, written out term by term.
fn diagonal_plus_product(fd: &Field, a: &[u32], c: u32) -> HomogeneousPoly {
    let n = a.len() - 1;
    let d = n as u32 + 1;
    let mut terms: Vec<Term> = a
        .iter()
        .enumerate()
        .map(|(i, &ai)| {
            let mut exps = vec![0; n + 1];
            exps[i] = d;
            monomial(&exps, fd.from_index(ai).unwrap())
        })
        .collect();
    terms.push(monomial(&vec![1; n + 1], fd.from_index(c).unwrap()));
    HomogeneousPoly::new(n, d, terms, fd).unwrap()
}

#[test]
fn enumeration_examples() {
    let f7 = field(7, 1);
    assert_eq!(enumerate_projective(2, &f7, u64::MAX).unwrap().count(), 57);
    let f2 = field(2, 1);
    let pts: Vec<Vec<u32>> =
        enumerate_projective(1, &f2, u64::MAX).unwrap().map(|x| x.coords(&f2).iter().map(|c| c.index()).collect()).collect();
    assert_eq!(pts, vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
    assert_eq!(enumerate_projective(3, &field(5, 1), u64::MAX).unwrap().count(), 156);
    assert!(matches!(enumerate_projective(3, &f7, 100), Err(Error::CapExceeded { points: 400, cap: 100 })));
}

#[test]
fn enumeration_is_exhaustive_and_distinct() {
    for &(p, k) in &[(2u64, 1u32), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2), (13, 1), (5, 2)] {
        let fd = field(p, k);
        for n in 1..=3 {
            let pts: Vec<ProjPoint> = enumerate_projective(n, &fd, u64::MAX).unwrap().collect();
            assert_eq!(pts.len() as u128, projective_size(n, fd.q() as u64));
            let distinct: HashSet<_> = pts.iter().collect();
            assert_eq!(distinct.len(), pts.len());
            for x in &pts {
                let c = x.coords(&fd);
                assert_eq!(ProjPoint::new(&c, &fd).unwrap(), *x);
            }
            assert!(pts.windows(2).all(|w| {
                let lead = |x: &ProjPoint| x.raw().iter().position(|&c| c != 0).unwrap();
                (lead(&w[0]), w[0].raw()) < (lead(&w[1]), w[1].raw())
            }));
        }
    }
}

#[test]
fn point_normalization() {
    let f7 = field(7, 1);
    let x = ProjPoint::new(&[f7.zero(), f7.from_int(3), f7.from_int(6)], &f7).unwrap();
    assert_eq!(x.raw(), &[0, 1, 2]);
    assert_eq!(ProjPoint::new(&[f7.zero(), f7.zero()], &f7).unwrap_err(), Error::ZeroPoint);
}

#[test]
fn eval_examples() {
    let f7 = field(7, 1);
    let x0 = HomogeneousPoly::new(2, 1, vec![monomial(&[1, 0, 0], f7.one())], &f7).unwrap();
    let pt = ProjPoint::new(&[f7.zero(), f7.one(), f7.zero()], &f7).unwrap();
    assert_eq!(eval(&x0, &pt, &f7).unwrap(), f7.zero());
    let fermat = diagonal_plus_product(&f7, &[1, 1, 1], 0);
    let pt = ProjPoint::new(&[f7.one(), f7.from_int(-1), f7.zero()], &f7).unwrap();
    assert_eq!(eval(&fermat, &pt, &f7).unwrap(), f7.zero());
    let line = ProjPoint::new(&[f7.one(), f7.one()], &f7).unwrap();
    assert!(matches!(eval(&fermat, &line, &f7), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn eval_is_homogeneous_on_the_cone() {
    use rand::{Rng, SeedableRng};
    let fd = field(5, 2);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let f = diagonal_plus_product(&fd, &[1, 7, 3, 19], 4);
    for _ in 0..100 {
        let x: Vec<u32> = (0..4).map(|_| rng.gen_range(0..25)).collect();
        let s = rng.gen_range(1..25);
        let sx: Vec<u32> = x.iter().map(|&c| fd.raw_mul(c, s)).collect();
        let expected = fd.raw_mul(fd.raw_pow(s, 4), eval_raw(&f, &x, &fd));
        assert_eq!(eval_raw(&f, &sx, &fd), expected);
    }
}

#[test]
fn count_examples() {
    for &(p, k) in &[(2u64, 1u32), (5, 1), (7, 1), (3, 2)] {
        let fd = field(p, k);
        let x0 = HomogeneousPoly::new(2, 1, vec![monomial(&[1, 0, 0], fd.one())], &fd).unwrap();
        assert_eq!(count_points(&x0, &fd, &CountConfig::default()).unwrap(), fd.q() as u64 + 1);
    }
    // x^3 = x over F_2, so the Fermat cubic is the line x + y + z = 0
    let f2 = field(2, 1);
    let fermat = diagonal_plus_product(&f2, &[1, 1, 1], 0);
    assert_eq!(count_points(&fermat, &f2, &CountConfig::default()).unwrap(), 3);
    let cfg = CountConfig { enumeration_cap: 5, ..Default::default() };
    assert!(matches!(count_points(&fermat, &f2, &cfg), Err(Error::CapExceeded { .. })));
}

#[test]
fn tallies_cover_projective_space() {
    let fd = field(7, 1);
    let f = diagonal_plus_product(&fd, &[1, 2, 3], 5);
    let tally = tally_points(&f, &fd, &CountConfig::default()).unwrap();
    assert_eq!(tally.zero + tally.nonzero, 57);
    assert_eq!(tally.zero, count_points(&f, &fd, &CountConfig::default()).unwrap());
}

fn all_strategies(f: &HomogeneousPoly, fd: &Field) -> Vec<u64> {
    let mut out = Vec::new();
    for strategy in [Strategy::Enumerate, Strategy::Fibered, Strategy::Auto] {
        for sequential in [false, true] {
            for fold_symmetry in [false, true] {
                for chunk_size in [1u64 << 16, 7] {
                    let cfg = CountConfig { strategy, sequential, fold_symmetry, chunk_size, ..Default::default() };
                    out.push(count_points(f, fd, &cfg).unwrap());
                }
            }
        }
    }
    out
}

#[test]
fn strategies_agree_with_generic_evaluation() {
    for &(p, k, n) in &[(7u64, 1u32, 2usize), (13, 1, 2), (5, 1, 3), (5, 2, 3), (11, 1, 4), (2, 2, 2)] {
        let fd = field(p, k);
        let q = fd.q();
        for seed in 0..4u32 {
            let a: Vec<u32> = (0..=n as u32).map(|i| 1 + (seed * 7 + i * 3) % (q - 1)).collect();
            let c = (seed * 5) % q;
            let f = diagonal_plus_product(&fd, &a, c);
            // generic dense evaluation as the reference
            let reference = enumerate_projective(n, &fd, u64::MAX)
                .unwrap()
                .filter(|x| eval(&f, x, &fd).unwrap().is_zero())
                .count() as u64;
            for got in all_strategies(&f, &fd) {
                assert_eq!(got, reference, "F_{p}^{k} n={n} a={a:?} c={c}");
            }
            let collected = collect_points(&f, &fd, &CountConfig::default()).unwrap();
            assert_eq!(collected.len() as u64, reference);
            assert!(collected.iter().all(|x| eval(&f, x, &fd).unwrap().is_zero()));
        }
    }
}

#[test]
fn fibered_requires_the_shape() {
    let fd = field(7, 1);
    let f = HomogeneousPoly::new(2, 2, vec![monomial(&[1, 1, 0], fd.one())], &fd).unwrap();
    let cfg = CountConfig { strategy: Strategy::Fibered, ..Default::default() };
    assert!(matches!(count_points(&f, &fd, &cfg), Err(Error::InvalidPolynomial(_))));
    assert_eq!(count_points(&f, &fd, &CountConfig::default()).unwrap(), 15);
}

#[test]
fn frobenius_map_examples() {
    let f7 = field(7, 1);
    for x in enumerate_projective(2, &f7, u64::MAX).unwrap() {
        for s in 0..3 {
            assert_eq!(frobenius_map(&x, s, &f7), x);
        }
    }
    // over F_343, the F_7-Frobenius preserves a curve defined over F_7 and orbits have length dividing 3
    let big = field(7, 3);
    let emb = Embedding::new(&f7, &big).unwrap();
    let f = diagonal_plus_product(&f7, &[1, 1, 1], 3).base_change(&emb).unwrap();
    let pts = collect_points(&f, &big, &CountConfig::default()).unwrap();
    for x in &pts {
        let fx = frobenius_map(x, 1, &big);
        assert!(eval(&f, &fx, &big).unwrap().is_zero());
        let orbit = std::iter::successors(Some(fx.clone()), |y| Some(frobenius_map(y, 1, &big)))
            .position(|y| y == *x)
            .unwrap()
            + 1;
        assert_eq!(3 % orbit, 0);
    }
    let fixed = pts.iter().filter(|x| frobenius_map(x, 1, &big) == **x).count() as u64;
    let base = diagonal_plus_product(&f7, &[1, 1, 1], 3);
    assert_eq!(fixed, count_points(&base, &f7, &CountConfig::default()).unwrap());
}

#[test]
fn derivative_and_permutation() {
    let f7 = field(7, 1);
    let f = diagonal_plus_product(&f7, &[1, 2, 3], 4);
    let df = f.derivative(1, &f7).unwrap();
    // d/dx1 (2 x1^3 + 4 x0 x1 x2) = 6 x1^2 + 4 x0 x2
    let expected = HomogeneousPoly::new(
        2,
        2,
        vec![monomial(&[0, 2, 0], f7.from_int(6)), monomial(&[1, 0, 1], f7.from_int(4))],
        &f7,
    )
    .unwrap();
    assert_eq!(df, expected);
    let g = f.permute_variables(&[2, 0, 1], &f7).unwrap();
    assert_eq!(g, diagonal_plus_product(&f7, &[2, 3, 1], 4));
}

#[test]
fn new_rejects_bad_terms() {
    let f7 = field(7, 1);
    assert!(matches!(
        HomogeneousPoly::new(2, 3, vec![monomial(&[1, 1], f7.one())], &f7),
        Err(Error::DimensionMismatch { .. })
    ));
    assert!(matches!(
        HomogeneousPoly::new(2, 3, vec![monomial(&[1, 1, 0], f7.one())], &f7),
        Err(Error::InvalidPolynomial(_))
    ));
    let cancelled = HomogeneousPoly::new(
        1,
        2,
        vec![monomial(&[2, 0], f7.from_int(3)), monomial(&[2, 0], f7.from_int(4))],
        &f7,
    )
    .unwrap();
    assert!(cancelled.terms().is_empty());
}

fn random_cubic() -> impl proptest::strategy::Strategy<Value = Vec<(Vec<u32>, u32)>> {
    let monomials: Vec<Vec<u32>> = (0..=3u32)
        .flat_map(|a| (0..=3 - a).map(move |b| vec![a, b, 3 - a - b]))
        .collect();
    proptest::collection::vec((proptest::sample::select(monomials), 1u32..7), 1..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn count_is_invariant_under_variable_permutations(terms in random_cubic(), perm_index in 0usize..6) {
        let f7 = field(7, 1);
        let terms = terms.into_iter().map(|(e, c)| monomial(&e, f7.from_int(c as i64))).collect();
        let f = HomogeneousPoly::new(2, 3, terms, &f7).unwrap();
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let g = f.permute_variables(&perms[perm_index], &f7).unwrap();
        let cfg = CountConfig::default();
        prop_assert_eq!(count_points(&f, &f7, &cfg).unwrap(), count_points(&g, &f7, &cfg).unwrap());
    }
}
