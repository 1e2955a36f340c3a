//! Exact and floating point checks of the Clifford identities on forms.
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symsemi::cliffordlab::{run_checks, CheckKind};
use symsemi::qlinalg::Rational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 1..=2 {
        for c in run_checks::<Rational, _>(n, CheckKind::All, 5, &mut rng)? {
            println!(
                "exact m={:<2} {:<28} {}",
                4 * n,
                c.name,
                if c.passed { "ok" } else { "FAILED" }
            );
        }
    }
    for c in run_checks::<f64, _>(3, CheckKind::Car, 0, &mut rng)? {
        println!("float m=12 {:<28} residual {:.1e}", c.name, c.residual);
    }
    Ok(())
}
