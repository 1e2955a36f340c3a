use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::census::{CountingVerdict, EulerVerdict};
use crate::cliffordlab::{EtaReport, IdentityCheck, KernelParity, Mode, SpectrumReport};
use crate::complexes::BettiVector;
use crate::files::TermSpec;
use crate::models::SymplecticVerdict;
use crate::qlinalg::Z2;
use crate::suite::CriterionResult;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelInfo {
    pub name: String,
    pub manifold_dim: usize,
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<TermSpec>>,
    pub symplectic: SymplecticVerdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OscillatorSection {
    pub matrix: Vec<Vec<String>>,
    pub det_sign: i8,
    pub kernel: KernelParity,
    pub square_identity: IdentityCheck,
    pub spectrum: SpectrumReport,
    pub eta: EtaReport,
}

/// Everything a command produced. Timing is kept out of the JSON form so that
/// identical inputs give identical bytes.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone_betti: Option<BettiVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Z2>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counting: Option<CountingVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler: Option<EulerVerdict>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub clifford: Vec<IdentityCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oscillator: Option<OscillatorSection>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub suite: Vec<CriterionResult>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub passed: bool,
    #[serde(skip)]
    pub elapsed_ms: Option<f64>,
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

impl Report {
    pub fn new(command: &str, mode: Mode) -> Self {
        Report {
            command: command.to_string(),
            mode,
            ..Default::default()
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(w, "{} ({} mode)", self.command, self.mode);
        if let Some(m) = &self.model {
            let _ = writeln!(
                w,
                "model      {} (dim {}, cochain dims {:?})",
                m.name, m.manifold_dim, m.dims
            );
            if let Some(t) = &m.omega {
                let terms: Vec<String> = t
                    .iter()
                    .map(|(c, n)| format!("{c}*{}", n.join("")))
                    .collect();
                let _ = writeln!(w, "omega      {}", terms.join(" + "));
            }
            let _ = writeln!(
                w,
                "symplectic closed: {}, nondegenerate: {} (top power {})",
                m.symplectic.closed, m.symplectic.nondegenerate, m.symplectic.top_power
            );
        }
        if let Some(b) = &self.cone_betti {
            let p = self.p.unwrap_or(0);
            let _ = writeln!(w, "cone of ω^{}:", p + 1);
            for (i, v) in b.values().iter().enumerate() {
                let _ = writeln!(w, "  b_{i}^ω = {v}");
            }
        }
        if let Some(chi) = self.chi {
            let _ = writeln!(w, "χ          {chi}");
        }
        if let Some(k) = self.k {
            let _ = writeln!(w, "k(M,ω)     {k}");
        }
        for f in &self.flags {
            let _ = writeln!(w, "note       {f}");
        }
        if let Some(c) = &self.counting {
            let _ = writeln!(
                w,
                "counting   {:?}: {} (zeros {}, nondegeneracy {})",
                c.outcome, c.note, c.zero_count, c.nondegeneracy
            );
        }
        if let Some(e) = &self.euler {
            let _ = writeln!(
                w,
                "euler      {:?}: signed count {} vs χ = {}",
                e.outcome, e.signed_count, e.chi
            );
        }
        for c in &self.clifford {
            let _ = writeln!(
                w,
                "{:<24} {}  residual {:.3e}",
                c.name,
                mark(c.passed),
                c.residual
            );
        }
        if let Some(o) = &self.oscillator {
            let _ = writeln!(w, "det sign   {}", o.det_sign);
            let _ = writeln!(
                w,
                "kernel     dim {}, parity {:?} [{}]",
                o.kernel.ker_dim,
                o.kernel.parity,
                mark(o.kernel.passed)
            );
            let _ = writeln!(
                w,
                "D² = L     {} (residual {:.3e})",
                mark(o.square_identity.passed),
                o.square_identity.residual
            );
            let s = &o.spectrum;
            let _ = writeln!(
                w,
                "spectrum/T {} (cap {}, filtration {}, blocks equal {}, max dev {:.2e}, gap {:.6})",
                mark(s.passed),
                s.cap,
                s.filtration_ok,
                s.blocks_equal,
                s.max_relative_deviation,
                s.gap
            );
            for (t, row) in s.ts.iter().zip(&s.spectrum_over_t) {
                let mut distinct: Vec<f64> = Vec::new();
                for v in row {
                    if distinct.last().is_none_or(|l| (v - l).abs() > 1e-9) {
                        distinct.push(*v);
                    }
                }
                let shown: Vec<String> =
                    distinct.iter().take(8).map(|v| format!("{v:.6}")).collect();
                let _ = writeln!(w, "  T = {t:<6} {} …", shown.join(" "));
            }
            let e = &o.eta;
            let _ = writeln!(
                w,
                "C1         {:.6} (C1² = {}) [{}]",
                e.c1,
                e.c1_squared,
                mark(e.passed)
            );
            for p in &e.points {
                let _ = writeln!(w, "  T = {:<6} C1 = {:.9}", p.t, p.c1);
            }
            if e.eta_zero {
                let _ = writeln!(w, "  η vanished; C1 set to 0");
            }
        }
        for c in &self.suite {
            let _ = writeln!(
                w,
                "{} [{:>2}] {}: {}",
                mark(c.passed),
                c.id,
                c.title,
                c.detail
            );
        }
        for warning in &self.warnings {
            let _ = writeln!(w, "warning    {warning}");
        }
        let _ = writeln!(
            w,
            "result     {}",
            if self.passed { "PASS" } else { "FAIL" }
        );
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(w, "elapsed    {ms:.1} ms");
        }
        out
    }
}
