//! Random test matrices with known structure.

use rand::Rng;

use crate::qlinalg::{int, inverse, Rational, SparseMat};

fn small<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Rational {
    int(rng.gen_range(lo..=hi))
}

/// Rational orthogonal matrix with determinant 1 (Cayley transform of a random skew matrix).
pub fn random_orthogonal<R: Rng>(rng: &mut R, m: usize) -> SparseMat {
    let mut k = SparseMat::zeros(m, m);
    for i in 0..m {
        for j in i + 1..m {
            let v = Rational::new(rng.gen_range(-1..=1).into(), rng.gen_range(1..=2).into());
            k.set(i, j, v.clone());
            k.set(j, i, -v);
        }
    }
    let id = SparseMat::identity(m);
    let inv = inverse(&id.add(&k))
        .expect("square")
        .expect("I + K is invertible for skew K");
    id.sub(&k).mul(&inv)
}

/// Symmetric positive definite integer matrix `BᵗB + I`.
pub fn random_spd<R: Rng>(rng: &mut R, m: usize) -> SparseMat {
    let b = SparseMat::from_triplets(
        m,
        m,
        (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, small(rng, -1, 1))),
    );
    b.transpose().mul(&b).add(&SparseMat::identity(m))
}

/// `A = R · O · S` with `O` rational orthogonal, `S` rational SPD, and `R`
/// the reflection `diag(-1, 1, …)` when `negative` is set. `AᵗA = S²`, so the
/// square root is rational.
pub fn random_exact_matrix<R: Rng>(rng: &mut R, m: usize, negative: bool) -> SparseMat {
    let o = random_orthogonal(rng, m);
    let s = random_spd(rng, m);
    let a = o.mul(&s);
    if negative {
        let mut r = SparseMat::identity(m);
        r.set(0, 0, int(-1));
        r.mul(&a)
    } else {
        a
    }
}

/// Diagonal matrix with nonzero rational entries of either sign.
pub fn random_diagonal<R: Rng>(rng: &mut R, m: usize) -> SparseMat {
    SparseMat::from_triplets(
        m,
        m,
        (0..m).map(|i| {
            let mut n = rng.gen_range(1..=5);
            if rng.gen_bool(0.5) {
                n = -n;
            }
            (i, i, Rational::new(n.into(), rng.gen_range(1..=3).into()))
        }),
    )
}

/// Upper-triangular integer matrix with positive diagonal.
pub fn random_upper_triangular<R: Rng>(rng: &mut R, m: usize) -> SparseMat {
    SparseMat::from_triplets(
        m,
        m,
        (0..m)
            .flat_map(|i| (i..m).map(move |j| (i, j)))
            .map(|(i, j)| {
                let v = if i == j {
                    small(rng, 1, 4)
                } else {
                    small(rng, -3, 3)
                };
                (i, j, v)
            }),
    )
}

/// Random skew-symmetric integer matrix.
pub fn random_skew<R: Rng>(rng: &mut R, n: usize, density: f64) -> SparseMat {
    let mut m = SparseMat::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                let v = small(rng, -4, 4);
                m.set(i, j, v.clone());
                m.set(j, i, -v);
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::determinant;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn orthogonal_and_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let o = random_orthogonal(&mut rng, 4);
        assert_eq!(o.transpose().mul(&o), SparseMat::identity(4));
        assert_eq!(determinant(&o).unwrap(), int(1));
        let a = random_exact_matrix(&mut rng, 4, true);
        assert!(determinant(&a).unwrap() < int(0));
        let b = random_skew(&mut rng, 5, 0.5);
        assert_eq!(b.transpose(), b.neg());
    }
}
