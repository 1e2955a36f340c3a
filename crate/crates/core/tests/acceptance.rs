//! Acceptance criteria with independent oracles. Prints one line per criterion.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use num::{BigInt, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::function::gamma::gamma;

use symsemi::census::{counting_check, euler_cross_check, Outcome, ZeroCensus};
use symsemi::cliffordlab::{
    clifford_basis, eta_scaling, form_degree, kernel_and_parity, model_l, moment_1d,
    random_unit_vector, samples, spectrum_scaling, verify_car, verify_complex_structure,
    verify_lemma_omega, verify_lemma_star, verify_star, CliffordKind, Mode, Parity,
};
use symsemi::complexes::{betti, cone, harmonic_dimensions};
use symsemi::models::{builtin, random_nilpotent_model, t4_alternative_form, SymplecticModel};
use symsemi::qlinalg::{int, rat, skew_kernel_parity, Rational, SparseMat, Z2};
use symsemi::suite::run_all;

type Outcome_ = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Fraction-free Gaussian elimination over the integers (Bareiss): rank and
/// the sign of the determinant.
fn bareiss(rows: &[Vec<Rational>]) -> (usize, i32) {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::from(1), |acc, v| {
                num::integer::lcm(acc, v.denom().clone())
            });
            r.iter().map(|v| v.numer() * (&l / v.denom())).collect()
        })
        .collect();
    let n = a.len();
    let m = if n == 0 { 0 } else { a[0].len() };
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    let mut sign = 1;
    for col in 0..m {
        if rank == n {
            break;
        }
        let Some(p) = (rank..n).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            sign = -sign;
        }
        for i in rank + 1..n {
            for j in col + 1..m {
                let v = (&a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    let det_sign = if rank < n || n != m {
        0
    } else {
        sign * if prev.is_negative() { -1 } else { 1 }
    };
    (rank, det_sign)
}

fn dense(m: &SparseMat) -> Vec<Vec<Rational>> {
    m.to_dense()
}

fn k_of(b: &[usize]) -> usize {
    b.iter().step_by(2).sum::<usize>() % 2
}

/// Hand-assembled CP² cone: `C^k = H^k ⊕ H^{k-1}`, `d = 0`, `L = 1` on `H^0 → H^2 → H^4`.
fn criterion_1() -> Outcome_ {
    let b = builtin("cp2")
        .map_err(|e| e.to_string())?
        .cone_betti(0)
        .map_err(|e| e.to_string())?
        .0;
    let h = [1usize, 0, 1, 0, 1];
    let hd = |k: i64| {
        if (0..5).contains(&k) {
            h[k as usize]
        } else {
            0
        }
    };
    let dims: Vec<usize> = (0..6).map(|k| hd(k) + hd(k - 1)).collect();
    // (α, β) ↦ (ωβ, 0): entry from the β-slot of C^k to the α-slot of C^{k+1}
    let ranks: Vec<usize> = (0..6)
        .map(|k| {
            if k == 5 {
                return 0;
            }
            let rows = dims[k + 1];
            let cols = dims[k];
            let mut m = vec![vec![int(0); cols]; rows];
            if hd(k as i64 - 1) == 1 && hd(k as i64 + 1) == 1 {
                let c = hd(k as i64);
                m[0][c] = int(1);
            }
            bareiss(&m).0
        })
        .collect();
    let oracle: Vec<usize> = (0..6)
        .map(|k| dims[k] - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
        .collect();
    ensure(
        b == oracle,
        format!("engine {b:?} vs hand oracle {oracle:?}"),
    )?;
    ensure(
        b[0] == 1 && b[2] == 0 && b[4] == 0 && k_of(&b) == 1,
        format!("{b:?}"),
    )?;
    Ok(format!("b^ω = {b:?}, k = 1"))
}

fn criterion_2() -> Outcome_ {
    let b = builtin("t2")
        .map_err(|e| e.to_string())?
        .cone_betti(0)
        .map_err(|e| e.to_string())?;
    ensure(
        b.0[0] == 1 && b.0[2] == 2 && b.semi_characteristic() == Z2::ONE,
        format!("{:?}", b.0),
    )?;
    ensure(b.0 == [1, 2, 2, 1], format!("{:?}", b.0))?;
    Ok(format!("b^ω = {:?}, k = 1", b.0))
}

fn criterion_3() -> Outcome_ {
    let m = builtin("s2xs2").map_err(|e| e.to_string())?;
    let b = m.cone_betti(0).map_err(|e| e.to_string())?;
    ensure(b.semi_characteristic() == Z2::ZERO, "k ≠ 0")?;
    let census = ZeroCensus::from_signs("height function", "++++");
    let v = counting_check(b.semi_characteristic(), &census, 4).map_err(|e| e.to_string())?;
    ensure(v.outcome == Outcome::Pass, "counting check")?;
    let e = euler_cross_check(&census, 4).map_err(|e| e.to_string())?;
    ensure(e.outcome == Outcome::Pass, "euler check")?;
    ensure(
        betti(&m.complex()).euler_characteristic() == 4,
        "χ(S²×S²) ≠ 4",
    )?;
    Ok(format!(
        "b^ω = {:?}, k = 0, counting pass, signed count 4",
        b.0
    ))
}

fn criterion_4() -> Outcome_ {
    let b = builtin("kodaira_thurston")
        .and_then(|m| m.cone_betti(0))
        .map_err(|e| e.to_string())?;
    ensure(
        b.semi_characteristic() == Z2::ZERO && b.euler_characteristic() == 0,
        format!("{:?}", b.0),
    )?;
    let v = counting_check(
        b.semi_characteristic(),
        &ZeroCensus::nonvanishing("∂/∂x1"),
        4,
    )
    .map_err(|e| e.to_string())?;
    ensure(v.outcome == Outcome::Pass, "nonvanishing census")?;
    Ok(format!("b^ω = {:?}, k = 0, χ = 0", b.0))
}

fn criterion_5() -> Outcome_ {
    let k = builtin("t2")
        .and_then(|m| m.cone_betti(0))
        .map_err(|e| e.to_string())?
        .semi_characteristic();
    let v = counting_check(k, &ZeroCensus::from_signs("height function", "+--+"), 2)
        .map_err(|e| e.to_string())?;
    ensure(
        v.outcome == Outcome::NotApplicable,
        "expected not_applicable",
    )?;
    ensure(
        v.k == Z2::ONE && v.count_mod_2 == Z2::ZERO && v.note.contains("mismatch"),
        v.note.clone(),
    )?;
    Ok(v.note)
}

/// Exterior algebra on sorted index lists, independent of the bitmask code.
fn oracle_chat(m: usize, i: usize) -> SparseMat {
    let subsets: Vec<Vec<usize>> = (0..1usize << m)
        .map(|b| (0..m).filter(|j| b & (1 << j) != 0).collect())
        .collect();
    let index: BTreeMap<Vec<usize>, usize> = subsets
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, s)| (s, k))
        .collect();
    let mut out = SparseMat::zeros(1 << m, 1 << m);
    for (col, s) in subsets.iter().enumerate() {
        let pos = s.iter().filter(|&&j| j < i).count();
        let sign = if pos % 2 == 0 { int(1) } else { int(-1) };
        let mut t = s.clone();
        if let Some(p) = s.iter().position(|&j| j == i) {
            t.remove(p);
        } else {
            t.insert(pos, i);
        }
        out.add_at(index[&t], col, sign);
    }
    out
}

fn criterion_6() -> Outcome_ {
    for i in 0..4 {
        let lib = clifford_basis::<Rational>(4, i, CliffordKind::Chat);
        ensure(
            lib.matrix == oracle_chat(4, i),
            format!("ĉ(e{}) differs from oracle", i + 1),
        )?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(60);
    for m in [4, 8] {
        let mut checks = vec![
            verify_car::<Rational>(m),
            verify_lemma_star::<Rational>(m).map_err(|e| e.to_string())?,
        ];
        checks.extend(verify_star::<Rational>(m).map_err(|e| e.to_string())?);
        checks.extend(verify_lemma_omega::<Rational>(m).map_err(|e| e.to_string())?);
        for c in &checks {
            ensure(
                c.passed && c.residual == 0.0,
                format!("{} failed at m = {m}", c.name),
            )?;
        }
    }
    for _ in 0..10 {
        let v = random_unit_vector(&mut rng, 4);
        let c = verify_complex_structure(4, &v).map_err(|e| e.to_string())?;
        ensure(c.passed && c.residual == 0.0, "J² ≠ −1")?;
    }
    Ok("lemmas, CAR, star and J² = −1 exact at m = 4, 8".into())
}

fn criterion_7() -> Outcome_ {
    let mut rng = ChaCha8Rng::seed_from_u64(70);
    let (mut pos, mut neg) = (0, 0);
    for i in 0..50 {
        let a = samples::random_exact_matrix(&mut rng, 4, i % 2 == 0);
        let (_, det_sign) = bareiss(&dense(&a));
        let op = model_l::<Rational>(&a, &int(1)).map_err(|e| e.to_string())?;
        let (kp, _) = kernel_and_parity(&op, 1).map_err(|e| e.to_string())?;
        let expect = if det_sign > 0 {
            Parity::Even
        } else {
            Parity::Odd
        };
        ensure(
            kp.ker_dim == 1 && kp.parity == expect,
            format!("matrix {i}: {kp:?}, det sign {det_sign}"),
        )?;
        if det_sign > 0 {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    ensure(
        pos == 25 && neg == 25,
        format!("{pos} positive, {neg} negative"),
    )?;
    let ts = [int(1), int(10), int(100)];
    let r =
        spectrum_scaling::<Rational>(&SparseMat::identity(4), &ts, 2).map_err(|e| e.to_string())?;
    ensure(
        r.passed && r.blocks_equal && r.max_relative_deviation == 0.0,
        "A = I spectrum",
    )?;
    // ladder oracle: spectrum/T = 2(|α| + form degree) over |α| ≤ 2
    let mut ladder = Vec::new();
    for k in 0..=2usize {
        let polys = (k + 1) * (k + 2) * (k + 3) / 6;
        for b in 0..16usize {
            ladder.extend(std::iter::repeat(2.0 * (k + form_degree(b)) as f64).take(polys));
        }
    }
    ladder.sort_by(|x, y| x.total_cmp(y));
    for row in &r.spectrum_over_t {
        ensure(row.len() == ladder.len(), "spectrum size")?;
        ensure(
            row.iter().zip(&ladder).all(|(x, y)| (x - y).abs() < 1e-9),
            "ladder mismatch",
        )?;
    }
    let d = SparseMat::from_triplets(
        4,
        4,
        [
            (0, 0, int(1)),
            (1, 1, int(1)),
            (2, 2, int(2)),
            (3, 3, int(2)),
        ],
    );
    ensure(
        spectrum_scaling::<Rational>(&d, &ts, 2)
            .map_err(|e| e.to_string())?
            .passed,
        "diag(1,1,2,2)",
    )?;
    let f = spectrum_scaling::<f64>(&samples::random_upper_triangular(&mut rng, 4), &ts, 2)
        .map_err(|e| e.to_string())?;
    ensure(
        f.passed && f.max_relative_deviation <= 1e-9,
        format!("float dev {:e}", f.max_relative_deviation),
    )?;
    Ok(format!(
        "50/50 kernels one-dimensional with parity = sign det; spectrum/T exact; float dev {:.1e}",
        f.max_relative_deviation
    ))
}

fn criterion_8() -> Outcome_ {
    // ∫x²e^{-Tx²} / ∫e^{-Tx²} = Γ(3/2) T^{-3/2} / (Γ(1/2) T^{-1/2})
    for t in [1u32, 4, 16] {
        let tf = t as f64;
        let ratio = gamma(1.5) * tf.powf(-1.5) / (gamma(0.5) * tf.powf(-0.5));
        let lib = moment_1d(2, &int(t as i64));
        ensure((ratio - 1.0 / (2.0 * tf)).abs() < 1e-14, "gamma ratio")?;
        ensure(lib == rat(1, 2 * t as i64), "moment recursion")?;
    }
    // A = I: η = −¼ ι_x ω₀ has coefficients of norm ¼ on each x_j; with E[x_j²] = 1/(2T)
    // and ‖ρ‖ = ‖δ‖, C₁² = T · 4 · (1/16) · Γ-ratio(T).
    let oracle = 4.0 * (1.0 / 16.0) * (gamma(1.5) / gamma(0.5));
    let r = eta_scaling::<Rational>(&SparseMat::identity(4), &[int(1), int(4), int(16)])
        .map_err(|e| e.to_string())?;
    ensure(r.c1_squared == "1/8" && r.passed, format!("{r:?}"))?;
    ensure(
        (r.c1 - oracle.sqrt()).abs() < 1e-12 && (r.c1 - 2f64.sqrt() / 4.0).abs() < 1e-15,
        "C1 value",
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(80);
    for _ in 0..10 {
        let a = samples::random_diagonal(&mut rng, 4);
        let e =
            eta_scaling::<Rational>(&a, &[int(1), int(4), int(16)]).map_err(|e| e.to_string())?;
        ensure(
            e.passed && e.points.iter().all(|p| p.c1_squared == e.c1_squared),
            format!("{e:?}"),
        )?;
    }
    Ok(format!(
        "C1 = {:.12} = √2/4 exactly (C1² = 1/8); T^(-1/2) law exact for 10 diagonal A",
        r.c1
    ))
}

fn criterion_9() -> Outcome_ {
    let mut rng = ChaCha8Rng::seed_from_u64(90);
    for i in 0..100 {
        let sm = random_nilpotent_model(&mut rng, 2 + i % 5);
        let c = sm.complex();
        let w = sm.omega_map().map_err(|e| e.to_string())?;
        let cc = cone(&c, &w, 0).map_err(|e| e.to_string())?;
        for k in 0..cc.top_degree() {
            let dd = cc.differential(k + 1).mul(cc.differential(k));
            ensure(dd.is_zero(), format!("model {i}: ∂² ≠ 0"))?;
        }
        let b = betti(&cc);
        ensure(b.euler_characteristic() == 0, format!("model {i}: χ ≠ 0"))?;
        let h = harmonic_dimensions(&c, &w).map_err(|e| e.to_string())?;
        ensure(h == b.0, format!("model {i}: harmonic {h:?} vs {:?}", b.0))?;
    }
    for i in 0..100 {
        let n = 1 + i % 15;
        let m = samples::random_skew(&mut rng, n, 0.3);
        let p = skew_kernel_parity(&m).map_err(|e| e.to_string())?;
        let (r, _) = bareiss(&dense(&m));
        ensure(
            p.ker_dim == n - r && p.parity == Z2::from_count(n),
            format!("skew {n}"),
        )?;
    }
    Ok("100 nilpotent models, 100 skew matrices: no failures".into())
}

fn criterion_10() -> Outcome_ {
    let t4 = builtin("t4").map_err(|e| e.to_string())?;
    let alt = SymplecticModel::new("t4", t4.model.clone(), t4_alternative_form(&t4.model));
    ensure(
        alt.check().passed() && alt.omega != t4.omega,
        "second form invalid",
    )?;
    let a = t4
        .cone_betti(0)
        .map_err(|e| e.to_string())?
        .semi_characteristic();
    let b = alt
        .cone_betti(0)
        .map_err(|e| e.to_string())?
        .semi_characteristic();
    ensure(a == b, format!("{a} vs {b}"))?;
    Ok(format!("k = {a} for e1e2 + e3e4 and e1e3 + e4e2"))
}

fn main() -> ExitCode {
    let criteria: [(u8, fn() -> Outcome_); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (id, f) in criteria {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("PASS criterion {id:>2} ({secs:.2}s): {msg}"),
            Err(msg) => {
                failures += 1;
                println!("FAIL criterion {id:>2} ({secs:.2}s): {msg}");
            }
        }
    }
    let t = Instant::now();
    let lib = run_all(Mode::Exact);
    let lib_fail: Vec<u8> = lib.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    if lib_fail.is_empty() {
        println!(
            "PASS library suite ({:.2}s): {} criteria",
            t.elapsed().as_secs_f64(),
            lib.len()
        );
    } else {
        failures += 1;
        println!("FAIL library suite: criteria {lib_fail:?}");
    }
    println!(
        "acceptance: {failures} failure(s) in {:.2}s",
        start.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
