//! Compatibility conditions for pure shear stretch to produce pure shear stress,
//! evaluated on the family of stretches `(λ, 1/λ, 1)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constitutive::{
    betas_at, energy, fd_gradient, stretch_gradient, ConstitutiveModel, FdKind, FdOptions,
    Provenance,
};
use crate::error::{Error, Result};
use crate::tensor3::Invariants;

pub const DEFAULT_LAMBDA_GRID: [f64; 6] = [0.5, 0.75, 1.0, 1.5, 2.0, 3.0];

/// Verdict tolerance for residuals built from analytic derivatives.
pub const ANALYTIC_TOL: f64 = 1e-7;
/// Verdict tolerance for residuals built from finite differences.
pub const FD_TOL: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionKind {
    /// `β₁ + β₋₁ = 0`, `β₀ = 0`.
    Beta,
    /// `W₁ − W₂ = 0`, `I₂W₂ + W₃ = 0` on `I₁ = I₂`, `I₃ = 1`.
    Invariant,
    /// `λ W,₁ + λ⁻¹ W,₂ = 0`, `W,₃ = 0` at `(λ, 1/λ, 1)`.
    Stretch,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualRow {
    pub lambda: f64,
    pub first: f64,
    pub second: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionTable {
    pub condition: ConditionKind,
    pub provenance: Provenance,
    pub tolerance: f64,
    pub rows: Vec<ResidualRow>,
    pub max_residual: f64,
    pub pass: bool,
}

impl ConditionTable {
    fn new(condition: ConditionKind, provenance: Provenance, rows: Vec<ResidualRow>) -> Self {
        let tolerance = if provenance.is_analytic() {
            ANALYTIC_TOL
        } else {
            FD_TOL
        };
        let max_residual = rows
            .iter()
            .map(|r| r.first.abs().max(r.second.abs()))
            .fold(0.0, f64::max);
        Self {
            condition,
            provenance,
            tolerance,
            rows,
            max_residual,
            pass: max_residual <= tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkippedCheck {
    pub condition: ConditionKind,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompatibilityReport {
    pub model: String,
    pub grid: Vec<f64>,
    pub beta: Option<ConditionTable>,
    pub invariant: Option<ConditionTable>,
    pub stretch: Option<ConditionTable>,
    pub skipped: Vec<SkippedCheck>,
    /// `None` when no condition could be evaluated.
    pub passed: Option<bool>,
}

impl CompatibilityReport {
    pub fn tables(&self) -> impl Iterator<Item = &ConditionTable> {
        [&self.beta, &self.invariant, &self.stretch]
            .into_iter()
            .flatten()
    }
}

fn worst_provenance(a: Provenance, b: Provenance) -> Provenance {
    if !a.is_analytic() {
        a
    } else {
        b
    }
}

fn shear_invariants(lambda: f64) -> Invariants {
    Invariants::from_stretches([lambda, 1.0 / lambda, 1.0])
}

/// Gradient for the condition checks; falls back to Richardson-extrapolated differences.
fn stretch_gradient_for_check(
    model: &dyn ConstitutiveModel,
    l: [f64; 3],
) -> Result<([f64; 3], Provenance)> {
    let (g, prov) = stretch_gradient(model, l)?;
    if prov.is_analytic() {
        return Ok((g, prov));
    }
    let g = fd_gradient(
        |x| energy(model, x).unwrap_or(f64::NAN),
        l,
        FdKind::Stretch,
        FdOptions { richardson: true },
    )?;
    Ok((g, Provenance::FiniteDifference))
}

/// Evaluates every condition the model's parameterization allows.
pub fn check_compatibility(
    model: &dyn ConstitutiveModel,
    lambda_grid: &[f64],
) -> Result<CompatibilityReport> {
    if let Some(&bad) = lambda_grid.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
        return Err(Error::InvalidStretch([bad, 1.0 / bad, 1.0]));
    }
    let caps = model.capabilities();
    let mut skipped = Vec::new();

    let (beta, invariant) = if caps.invariant_energy {
        let mut beta_rows = Vec::new();
        let mut inv_rows = Vec::new();
        let mut prov = Provenance::Analytic;
        for &lambda in lambda_grid {
            let inv = shear_invariants(lambda);
            let (b, p) = betas_at(model, &inv)?;
            let ([w1, w2, w3], _) = crate::constitutive::invariant_gradient(model, &inv)?;
            prov = worst_provenance(p, prov);
            beta_rows.push(ResidualRow {
                lambda,
                first: b.beta1 + b.beta_m1,
                second: b.beta0,
            });
            inv_rows.push(ResidualRow {
                lambda,
                first: w1 - w2,
                second: inv.i2 * w2 + w3,
            });
        }
        (
            Some(ConditionTable::new(ConditionKind::Beta, prov, beta_rows)),
            Some(ConditionTable::new(ConditionKind::Invariant, prov, inv_rows)),
        )
    } else {
        for condition in [ConditionKind::Beta, ConditionKind::Invariant] {
            skipped.push(SkippedCheck {
                condition,
                reason: "model has no invariant energy".to_string(),
            });
        }
        (None, None)
    };

    let stretch = if caps.has_energy() {
        let mut rows = Vec::new();
        let mut prov = Provenance::Analytic;
        for &lambda in lambda_grid {
            let (g, p) = stretch_gradient_for_check(model, [lambda, 1.0 / lambda, 1.0])?;
            prov = worst_provenance(p, prov);
            rows.push(ResidualRow {
                lambda,
                first: lambda * g[0] + g[1] / lambda,
                second: g[2],
            });
        }
        Some(ConditionTable::new(ConditionKind::Stretch, prov, rows))
    } else {
        skipped.push(SkippedCheck {
            condition: ConditionKind::Stretch,
            reason: "model has no energy".to_string(),
        });
        None
    };

    let mut report = CompatibilityReport {
        model: model.name().to_string(),
        grid: lambda_grid.to_vec(),
        beta,
        invariant,
        stretch,
        skipped,
        passed: None,
    };
    let verdicts: Vec<bool> = report.tables().map(|t| t.pass).collect();
    report.passed = (!verdicts.is_empty()).then(|| verdicts.iter().all(|&v| v));
    Ok(report)
}

/// `|W(λ) − W(1/λ)| / max(1, |W(λ)|)`.
pub fn tc_symmetry_residual(model: &dyn ConstitutiveModel, lambdas: [f64; 3]) -> Result<f64> {
    let w = energy(model, lambdas)?;
    let w_inv = energy(model, lambdas.map(|l| 1.0 / l))?;
    Ok((w - w_inv).abs() / w.abs().max(1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TcSymmetryResult {
    pub samples: usize,
    pub seed: u64,
    pub max_relative: f64,
    pub worst: [f64; 3],
}

/// Largest relative tension-compression asymmetry over the identity plus `samples`
/// random stretch triples in `[0.3, 3]³`.
pub fn tc_symmetry_test(
    model: &dyn ConstitutiveModel,
    samples: usize,
    seed: u64,
) -> Result<TcSymmetryResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = TcSymmetryResult {
        samples,
        seed,
        max_relative: tc_symmetry_residual(model, [1.0; 3])?,
        worst: [1.0; 3],
    };
    for _ in 0..samples {
        let l = [0; 3].map(|_| rng.gen_range(0.3..=3.0));
        let r = tc_symmetry_residual(model, l)?;
        if r > best.max_relative {
            best.max_relative = r;
            best.worst = l;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constitutive::{Bazant, Becker, BlatzKo, ExpHencky, Hencky, MooneyRivlinTc, NeoLog};

    #[test]
    fn hencky_passes_stretch_conditions() {
        let r = check_compatibility(&Hencky::new(1.0, 1.0).unwrap(), &DEFAULT_LAMBDA_GRID).unwrap();
        let t = r.stretch.as_ref().unwrap();
        assert!(t.pass && t.max_residual <= 1e-9);
        assert_eq!(r.passed, Some(true));
        assert_eq!(r.skipped.len(), 2);
    }

    #[test]
    fn blatz_ko_fails() {
        let r = check_compatibility(&BlatzKo::new(1.0).unwrap(), &DEFAULT_LAMBDA_GRID).unwrap();
        let row = r.stretch.as_ref().unwrap().rows.iter().find(|r| r.lambda == 2.0).unwrap();
        // τ₁ + τ₂ = μ(λ² + λ⁻² − 2) at stretch λ
        assert!((row.first - 2.25).abs() < 1e-12);
        assert_eq!(r.passed, Some(false));
        assert!(!r.beta.as_ref().unwrap().pass);
    }

    #[test]
    fn reference_point_has_zero_residuals() {
        for m in crate::constitutive::default_models() {
            let r = check_compatibility(m.as_ref(), &[1.0]).unwrap();
            if let Some(t) = r.stretch {
                assert!(t.max_residual < 1e-12, "{}", m.name());
            }
        }
    }

    #[test]
    fn invariant_models_with_symmetric_iso_part_pass() {
        for m in [
            Box::new(MooneyRivlinTc::new(1.0, 2.0).unwrap()) as Box<dyn ConstitutiveModel>,
            Box::new(Bazant::new(1.0).unwrap()),
            Box::new(ExpHencky::new(1.0, 1.0, 0.25, 0.25).unwrap()),
        ] {
            let r = check_compatibility(m.as_ref(), &DEFAULT_LAMBDA_GRID).unwrap();
            assert_eq!(r.passed, Some(true), "{}: {:?}", m.name(), r);
        }
        let r = check_compatibility(&NeoLog::new(1.0).unwrap(), &DEFAULT_LAMBDA_GRID).unwrap();
        assert_eq!(r.passed, Some(false));
    }

    #[test]
    fn becker_has_nothing_to_check() {
        let r = check_compatibility(&Becker::new(1.0, 0.0).unwrap(), &DEFAULT_LAMBDA_GRID).unwrap();
        assert_eq!(r.passed, None);
        assert_eq!(r.skipped.len(), 3);
    }

    #[test]
    fn tc_symmetry_examples() {
        for m in [
            Box::new(Hencky::new(1.0, 1.0).unwrap()) as Box<dyn ConstitutiveModel>,
            Box::new(ExpHencky::new(1.0, 1.0, 0.25, 0.25).unwrap()),
            Box::new(Bazant::new(1.0).unwrap()),
        ] {
            assert!(tc_symmetry_test(m.as_ref(), 500, 7).unwrap().max_relative <= 1e-12);
        }
        let bk = BlatzKo::new(1.0).unwrap();
        assert!(tc_symmetry_residual(&bk, [2.0, 1.0, 1.0]).unwrap() > 1e-2);
        assert_eq!(tc_symmetry_test(&bk, 0, 1).unwrap().max_relative, 0.0);
        let a = tc_symmetry_test(&bk, 50, 3).unwrap();
        let b = tc_symmetry_test(&bk, 50, 3).unwrap();
        assert_eq!(a, b);
    }
}
