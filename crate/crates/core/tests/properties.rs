use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symsemi::census::{counting_check, DetSign, Outcome, Zero, ZeroCensus};
use symsemi::cliffordlab::{clifford, eta_scaling, samples, CliffordKind};
use symsemi::complexes::{betti, cone, harmonic_dimensions, OmegaMap};
use symsemi::models::{
    builtin, ce_complex, random_nilpotent, random_nilpotent_model, SymplecticModel, BUILTIN_NAMES,
};
use symsemi::qlinalg::{int, kernel_basis, rank, skew_kernel_parity, Rational, SparseMat, Z2};

fn int_matrix(rows: usize, cols: usize, seed: u64, density: f64) -> SparseMat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = SparseMat::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(density) {
                m.set(i, j, int(rng.gen_range(-3..=3)));
            }
        }
    }
    m
}

/// Rank by plain Gaussian elimination on dense rationals.
fn dense_rank(m: &SparseMat) -> usize {
    let mut a = m.to_dense();
    let (rows, cols) = m.shape();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| a[i][c] != int(0)) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && a[i][c] != int(0) {
                let f = &a[i][c] / &a[r][c];
                for j in c..cols {
                    let v = &a[r][j] * &f;
                    a[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

fn cone_of(sm: &SymplecticModel, p: usize) -> symsemi::complexes::GradedComplex {
    cone(&sm.complex(), &sm.omega_map().unwrap(), p).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_is_transpose_invariant(r in 1usize..=20, c in 1usize..=20, seed: u64, density in 0.05f64..0.9) {
        let m = int_matrix(r, c, seed, density);
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
        prop_assert_eq!(rank(&m), dense_rank(&m));
    }

    #[test]
    fn kernel_basis_is_a_basis(r in 1usize..=12, c in 1usize..=12, seed: u64, density in 0.05f64..0.9) {
        let m = int_matrix(r, c, seed, density);
        let k = kernel_basis(&m);
        prop_assert_eq!(k.ncols(), c - rank(&m));
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(rank(&k), k.ncols());
    }

    #[test]
    fn skew_kernel_parity_matches_dimension(n in 1usize..=15, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = samples::random_skew(&mut rng, n, 0.4);
        let p = skew_kernel_parity(&m).unwrap();
        prop_assert_eq!(p.ker_dim, n - dense_rank(&m));
        prop_assert_eq!(p.parity, Z2::from_count(n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_nilpotent_models_are_valid(n in 2usize..=6, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_nilpotent(&mut rng, n);
        prop_assert!(ce_complex(&c).is_ok());
    }

    #[test]
    fn cone_has_zero_euler_characteristic(n in 2usize..=6, p in 0usize..=2, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sm = random_nilpotent_model(&mut rng, n);
        let cc = cone_of(&sm, p);
        for k in 0..cc.top_degree() {
            prop_assert!(cc.differential(k + 1).mul(cc.differential(k)).is_zero());
        }
        prop_assert_eq!(betti(&cc).euler_characteristic(), 0);
    }

    #[test]
    fn harmonic_dimensions_equal_cone_betti(n in 2usize..=6, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sm = random_nilpotent_model(&mut rng, n);
        let c = sm.complex();
        let w = sm.omega_map().unwrap();
        let h = harmonic_dimensions(&c, &w).unwrap();
        prop_assert_eq!(h, betti(&cone(&c, &w, 0).unwrap()).0);
    }

    #[test]
    fn zero_multiplication_splits_the_cone(n in 1usize..=6, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_nilpotent_model(&mut rng, n.max(2)).complex();
        let w = OmegaMap::zero(&c);
        let b = betti(&c).0;
        let bc = betti(&cone(&c, &w, 0).unwrap()).0;
        for (k, v) in bc.iter().enumerate() {
            let prev = if k >= 1 { b.get(k - 1).copied().unwrap_or(0) } else { 0 };
            prop_assert_eq!(*v, b.get(k).copied().unwrap_or(0) + prev);
        }
    }

    #[test]
    fn leibniz_and_graded_commutativity(which in 0usize..5, seed: u64) {
        let sm = builtin(BUILTIN_NAMES[which]).unwrap();
        let m = &sm.model;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..25 {
            let pick = |rng: &mut ChaCha8Rng| {
                let deg = rng.gen_range(0..=m.top_degree());
                let basis = m.basis(deg);
                if basis.is_empty() {
                    return m.unit();
                }
                let coords: Vec<Rational> = (0..basis.len()).map(|_| int(rng.gen_range(-2..=2))).collect();
                m.from_coordinates(deg as u32, &coords)
            };
            let a = pick(&mut rng);
            let b = pick(&mut rng);
            let c = pick(&mut rng);
            let sign = if a.degree() % 2 == 0 { int(1) } else { int(-1) };
            let lhs = m.d(&m.mul(&a, &b));
            let rhs = m.mul(&m.d(&a), &b).add(&m.mul(&a, &m.d(&b)).scale(&sign));
            prop_assert!(lhs.sub(&rhs).is_zero());
            let swap = if a.degree() * b.degree() % 2 == 0 { int(1) } else { int(-1) };
            prop_assert!(m.mul(&a, &b).sub(&m.mul(&b, &a).scale(&swap)).is_zero());
            let assoc = m.mul(&m.mul(&a, &b), &c).sub(&m.mul(&a, &m.mul(&b, &c)));
            prop_assert!(assoc.is_zero());
        }
    }

    #[test]
    fn clifford_squares_to_norm(m in 1usize..=6, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v: Vec<Rational> = (0..m).map(|_| int(rng.gen_range(-3..=3))).collect();
        let norm: Rational = v.iter().map(|x| x * x).sum();
        let c = clifford(m, &v, CliffordKind::C).unwrap();
        let h = clifford(m, &v, CliffordKind::Chat).unwrap();
        let id = symsemi::cliffordlab::ExtOp::<Rational>::identity(m);
        prop_assert_eq!(c.compose(&c).matrix, id.scale(&-norm.clone()).matrix);
        prop_assert_eq!(h.compose(&h).matrix, id.scale(&norm).matrix);
        prop_assert!(c.compose(&h).add(&h.compose(&c)).matrix.is_zero());
    }

    #[test]
    fn counting_verdict_ignores_labels_and_order(signs in "[+\\-]{0,8}", seed: u64, which in 0usize..5) {
        let sm = builtin(BUILTIN_NAMES[which]).unwrap();
        let k = sm.cone_betti(0).unwrap().semi_characteristic();
        let dim = sm.model.manifold_dim();
        let a = ZeroCensus::from_signs("a", &signs);
        let mut b = a.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (i, z) in b.zeros.iter_mut().enumerate() {
            z.label = format!("q{}", rng.gen::<u32>() ^ i as u32);
        }
        b.zeros.reverse();
        b.source = "b".into();
        let va = counting_check(k, &a, dim).unwrap();
        let vb = counting_check(k, &b, dim).unwrap();
        prop_assert_eq!(va.outcome, vb.outcome);
        prop_assert_eq!(va.count_mod_2, vb.count_mod_2);
    }
}

#[test]
fn nonvanishing_passes_exactly_when_k_is_zero() {
    for name in BUILTIN_NAMES {
        let sm = builtin(name).unwrap();
        let k = sm.cone_betti(0).unwrap().semi_characteristic();
        let dim = sm.model.manifold_dim();
        let v = counting_check(k, &ZeroCensus::nonvanishing("x"), dim).unwrap();
        if dim % 4 == 0 {
            assert_eq!(v.outcome == Outcome::Pass, k == Z2::ZERO, "{name}");
        } else {
            assert_eq!(v.outcome, Outcome::NotApplicable, "{name}");
        }
    }
    let mut bad = ZeroCensus::nonvanishing("x");
    bad.zeros.push(Zero {
        label: "p".into(),
        det_sign: DetSign::Plus,
    });
    assert!(counting_check(Z2::ZERO, &bad, 4).is_err());
}

#[test]
fn delta_is_orthogonal_to_its_skew_image() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let a = samples::random_diagonal(&mut rng, 4);
        let r = eta_scaling::<Rational>(&a, &[int(1), int(4), int(16)]).unwrap();
        assert!(r.orthogonal && r.passed);
    }
    for _ in 0..10 {
        let a = samples::random_upper_triangular(&mut rng, 4);
        let r = eta_scaling::<f64>(&a, &[int(1), int(4), int(16)]).unwrap();
        assert!(r.orthogonal && r.passed);
    }
}
