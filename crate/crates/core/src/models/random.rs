use rand::Rng;

use crate::complexes::GradedComplex;
use crate::qlinalg::{int, kernel_basis, Rational};

use super::builders::{ce_complex, StructureConstants, SymplecticModel};
use super::cdga::{CdgaModel, Element};

fn closed_two_form<R: Rng>(rng: &mut R, m: &CdgaModel, c: &GradedComplex) -> Element {
    if c.top_degree() < 2 {
        return Element::zero(2);
    }
    let ker = kernel_basis(c.differential(2));
    let mut coords = vec![int(0); ker.nrows()];
    for j in 0..ker.ncols() {
        if rng.gen_bool(0.6) {
            let a: Rational = int(rng.gen_range(-2..=2));
            for (i, v) in coords.iter_mut().enumerate() {
                *v = v.clone() + a.clone() * ker.get(i, j);
            }
        }
    }
    m.from_coordinates(2, &coords)
}

/// Random nilpotent Lie algebra of dimension `n`: each `d e^k` is a random
/// closed 2-form in `e^1..e^{k-1}`, so the structure constants are strictly
/// upper-triangular in the output index and Jacobi holds by construction.
pub fn random_nilpotent<R: Rng>(rng: &mut R, n: usize) -> StructureConstants {
    let mut sc = StructureConstants::zero(n);
    for k in 1..n {
        let mut sub = StructureConstants::zero(k);
        for kk in 0..k {
            for i in 0..k {
                for j in i + 1..k {
                    sub.set(kk, i, j, sc.get(kk, i, j).clone());
                }
            }
        }
        let m = ce_complex(&sub).expect("earlier steps satisfy Jacobi");
        let c = m.to_complex();
        let w = closed_two_form(rng, &m, &c);
        for (mono, coef) in w.terms() {
            let idx = mono.indices();
            sc.set(k, idx[0], idx[1], -coef.clone());
        }
    }
    sc
}

/// Random nilpotent CE model with a random closed (possibly degenerate) 2-form.
pub fn random_nilpotent_model<R: Rng>(rng: &mut R, n: usize) -> SymplecticModel {
    let sc = random_nilpotent(rng, n);
    let m = ce_complex(&sc).expect("nilpotent by construction");
    let c = m.to_complex();
    let w = closed_two_form(rng, &m, &c);
    SymplecticModel::new(format!("nilpotent{n}"), m, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_models_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=6 {
            let sm = random_nilpotent_model(&mut rng, n);
            assert!(sm.model.d(&sm.omega).is_zero());
            let sc = random_nilpotent(&mut rng, n);
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if !num_traits::Zero::is_zero(sc.get(k, i, j)) {
                            assert!(i < k && j < k);
                        }
                    }
                }
            }
        }
    }
}
