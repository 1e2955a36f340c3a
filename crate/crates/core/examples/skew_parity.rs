//! Kernel dimension of skew-symmetric matrices always has the parity of the size.
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symsemi::cliffordlab::samples::random_skew;
use symsemi::qlinalg::skew_kernel_parity;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=10 {
        let m = random_skew(&mut rng, n, 0.3);
        let p = skew_kernel_parity(&m)?;
        println!(
            "n = {n:>2}  nnz = {:>2}  ker dim = {}  parity = {}",
            m.nnz(),
            p.ker_dim,
            p.parity
        );
    }
    Ok(())
}
