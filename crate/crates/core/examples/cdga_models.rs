//! Building models by hand: a Chevalley-Eilenberg complex, a product, and a
//! symplecticity check.
use symsemi::models::{builtin, ce_complex, check_symplectic, StructureConstants, SymplecticModel};
use symsemi::qlinalg::int;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Heisenberg algebra times a line: d e3 = -e1 e2 (0-indexed constants).
    let c = StructureConstants::zero(4).with(2, 0, 1, int(1));
    let model = ce_complex(&c)?;
    for bad in [vec!["e1", "e4"], vec!["e2", "e3"]] {
        let w = model.element(&[(int(1), bad.clone())])?;
        let v = check_symplectic(&model, &w);
        println!(
            "omega = {}: d omega = {}, omega^2 = {}",
            model.display(&w),
            v.d_omega,
            v.top_power
        );
    }
    let w = model.element(&[(int(1), vec!["e1", "e3"]), (int(1), vec!["e2", "e4"])])?;
    let sm = SymplecticModel::new("heisenberg x R", model, w);
    let v = sm.check();
    println!(
        "{}: closed {}, nondegenerate {}, omega^2 = {}",
        sm.name, v.closed, v.nondegenerate, v.top_power
    );
    println!("  cone betti {:?}", sm.cone_betti(0)?.values());

    let t4 = builtin("t2")?.product(&builtin("t2")?);
    println!("T2 x T2 cone betti {:?}", t4.cone_betti(0)?.values());
    Ok(())
}
