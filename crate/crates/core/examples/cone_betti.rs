//! Cone Betti numbers and the semi-characteristic for the builtin models.
use symsemi::models::{builtin, BUILTIN_NAMES};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in BUILTIN_NAMES {
        let m = builtin(name)?;
        let n = m.model.manifold_dim() / 2;
        for p in 0..n {
            let b = m.cone_betti(p)?;
            println!(
                "{name:<18} p={p}  b = {:?}  chi = {}  k = {}",
                b.values(),
                b.euler_characteristic(),
                b.semi_characteristic()
            );
        }
    }
    Ok(())
}
