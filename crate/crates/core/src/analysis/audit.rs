use serde::{Deserialize, Serialize};

use super::{
    biot_pure_shear_check, check_compatibility, default_gamma_grid, hill_monotonicity_probe,
    is_pure_shear_stress, shear_monotonicity, tc_symmetry_test, BiotReport, CompatibilityReport,
    HillOptions, HillProbe, MonotonicityReport, TcSymmetryResult, DEFAULT_LAMBDA_GRID,
};
use crate::constitutive::{cauchy_stress, Capabilities, ConstitutiveModel, GrowthClass};
use crate::error::Result;
use crate::kinematics::{left_finite_shear, pure_shear_stretch};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditOptions {
    pub lambda_grid: Vec<f64>,
    pub alpha_grid: Vec<f64>,
    pub gamma_grid: Vec<f64>,
    pub tc_samples: usize,
    pub hill: HillOptions,
}

impl Default for AuditOptions {
    fn default() -> Self {
        Self {
            lambda_grid: DEFAULT_LAMBDA_GRID.to_vec(),
            alpha_grid: (0..=20).map(|i| -1.0 + 0.1 * i as f64).collect(),
            gamma_grid: default_gamma_grid(),
            tc_samples: 1000,
            hill: HillOptions {
                pairs: 200,
                ..Default::default()
            },
        }
    }
}

impl AuditOptions {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.hill.seed = seed;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ForwardRow {
    pub alpha: f64,
    pub s: f64,
    pub residual: f64,
    pub pure: bool,
    /// `‖FFᵀ − V_α²‖` for the left finite simple shear `F`.
    pub b_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ForwardCheck {
    pub rows: Vec<ForwardRow>,
    pub all_pure: bool,
}

/// Cauchy stress of left finite simple shear over `alpha_grid`, tested for purity.
pub fn forward_pure_shear_check(
    model: &dyn ConstitutiveModel,
    alpha_grid: &[f64],
) -> Result<ForwardCheck> {
    let mut rows = Vec::with_capacity(alpha_grid.len());
    for &alpha in alpha_grid {
        let f = left_finite_shear(alpha);
        let sigma = cauchy_stress(model, &f)?;
        let check = is_pure_shear_stress(&sigma, 1e-8);
        let v = pure_shear_stretch(alpha);
        let b_error = (*f.left_cauchy_green().as_sym() - v.dot(&v).sym()).norm();
        rows.push(ForwardRow {
            alpha,
            s: check.s,
            residual: check.residual,
            pure: check.is_pure_shear,
            b_error,
        });
    }
    Ok(ForwardCheck {
        all_pure: rows.iter().all(|r| r.pure),
        rows,
    })
}

/// Combined shear report for one model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub model: String,
    pub parameters: Vec<(String, f64)>,
    pub capabilities: Capabilities,
    pub growth_class: GrowthClass,
    /// Always false: growth is declared by the model, not tested.
    pub growth_class_verified: bool,
    pub iso_vol_split: bool,
    pub compatibility: CompatibilityReport,
    pub tc_symmetry: Option<TcSymmetryResult>,
    pub forward: ForwardCheck,
    pub monotonicity: Option<MonotonicityReport>,
    pub hill: Option<HillProbe>,
    pub biot: BiotReport,
    /// Compatibility verdict, or the Biot verdict for models without an energy.
    pub pass: bool,
}

pub fn audit(model: &dyn ConstitutiveModel, opts: &AuditOptions) -> Result<AuditReport> {
    let caps = model.capabilities();
    let compatibility = check_compatibility(model, &opts.lambda_grid)?;
    let has_energy = caps.has_energy();
    let tc_symmetry = if has_energy {
        Some(tc_symmetry_test(model, opts.tc_samples, opts.hill.seed)?)
    } else {
        None
    };
    let monotonicity = if has_energy {
        Some(shear_monotonicity(model, &opts.gamma_grid)?)
    } else {
        None
    };
    let hill = Some(hill_monotonicity_probe(model, &opts.hill)?);
    let forward = forward_pure_shear_check(model, &opts.alpha_grid)?;
    let biot = biot_pure_shear_check(model, &opts.alpha_grid)?;
    let pass = compatibility.passed.unwrap_or(biot.all_pure);
    Ok(AuditReport {
        model: model.name().to_string(),
        parameters: model.parameters(),
        capabilities: caps,
        growth_class: model.growth_class(),
        growth_class_verified: false,
        iso_vol_split: model.iso_vol_split(),
        compatibility,
        tc_symmetry,
        forward,
        monotonicity,
        hill,
        biot,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constitutive::{Becker, BlatzKo, Hencky};

    #[test]
    fn hencky_audit_passes() {
        let r = audit(&Hencky::new(1.0, 1.0).unwrap(), &AuditOptions::default()).unwrap();
        assert!(r.pass && r.forward.all_pure);
        assert!(r.tc_symmetry.unwrap().max_relative < 1e-12);
        assert!(!r.hill.unwrap().violated);
        assert!(!r.growth_class_verified);
    }

    #[test]
    fn blatz_ko_audit_fails() {
        let r = audit(&BlatzKo::new(1.0).unwrap(), &AuditOptions::default()).unwrap();
        assert!(!r.pass && !r.forward.all_pure);
    }

    #[test]
    fn becker_audit_uses_biot_verdict() {
        let r = audit(&Becker::new(1.0, 3.0).unwrap(), &AuditOptions::default()).unwrap();
        assert!(r.pass && r.biot.all_pure);
        assert!(r.tc_symmetry.is_none() && r.monotonicity.is_none());
    }
}
