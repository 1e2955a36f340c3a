//! Comparing the semi-characteristic with zero censuses of vector fields.
use symsemi::census::{counting_check, euler_cross_check, ZeroCensus};
use symsemi::complexes::betti;
use symsemi::models::builtin;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        (
            "s2xs2",
            ZeroCensus::from_signs("product of height functions", "++++"),
        ),
        (
            "cp2",
            ZeroCensus::from_signs("torus action, one fixed point per chart", "+++"),
        ),
        (
            "kodaira_thurston",
            ZeroCensus::nonvanishing("invariant field"),
        ),
        ("t2", ZeroCensus::from_signs("height function", "+--+")),
    ];
    for (name, census) in cases {
        let m = builtin(name)?;
        let k = m.cone_betti(0)?.semi_characteristic();
        let dim = m.model.manifold_dim();
        let v = counting_check(k, &census, dim)?;
        let e = euler_cross_check(&census, betti(&m.complex()).euler_characteristic())?;
        println!("{name:<18} {:?}: {}", v.outcome, v.note);
        println!(
            "{:<18} euler: {:?} (signed {:?}, chi {})",
            "", e.outcome, e.signed_count, e.chi
        );
    }
    Ok(())
}
