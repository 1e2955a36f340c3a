//! The model operator for a few constant matrices: kernel parity, the
//! spectrum scaling in T and the first-order constant.
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symsemi::cliffordlab::{
    eta_scaling, kernel_and_parity, model_l, samples, spectrum_scaling, verify_square,
};
use symsemi::qlinalg::{int, Rational, SparseMat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ts = [int(1), int(4), int(16)];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let flip = SparseMat::from_triplets(
        4,
        4,
        [
            (0, 0, int(-1)),
            (1, 1, int(1)),
            (2, 2, int(1)),
            (3, 3, int(1)),
        ],
    );
    let cases = [
        ("identity", SparseMat::identity(4)),
        ("diag(-1,1,1,1)", flip),
        (
            "random, det < 0",
            samples::random_exact_matrix(&mut rng, 4, true),
        ),
    ];
    for (label, a) in cases {
        let op = model_l::<Rational>(&a, &int(1))?;
        let sq = verify_square(&op, 1)?;
        let (kp, _) = kernel_and_parity(&op, 1)?;
        println!(
            "{label}: D^2 = L {}, kernel dim {}, parity {:?}",
            sq.passed, kp.ker_dim, kp.parity
        );
        let s = spectrum_scaling::<Rational>(&a, &ts, 2)?;
        let head: Vec<String> = s.spectrum_over_t[0]
            .iter()
            .take(6)
            .map(|x| format!("{x:.3}"))
            .collect();
        println!(
            "  spectrum/T starts [{}], T-independent: {}",
            head.join(", "),
            s.blocks_equal
        );
        let e = eta_scaling::<Rational>(&a, &ts)?;
        println!("  C1^2 = {}, C1 = {:.6}", e.c1_squared, e.c1);
    }
    Ok(())
}
