//! Shear analysis on top of the constitutive layer.

mod audit;
mod biot;
mod compat;
mod hill;
mod inverse;
mod shear;

use serde::{Deserialize, Serialize};

pub use audit::{audit, forward_pure_shear_check, AuditOptions, AuditReport, ForwardCheck, ForwardRow};
pub use biot::{biot_pure_shear_check, BiotReport, BiotRow};
pub use compat::{
    check_compatibility, tc_symmetry_residual, tc_symmetry_test, CompatibilityReport,
    ConditionKind, ConditionTable, ResidualRow, SkippedCheck, TcSymmetryResult, DEFAULT_LAMBDA_GRID,
};
pub use hill::{hill_monotonicity_probe, hill_probe_map, linear_kirchhoff, HillOptions, HillProbe};
pub use inverse::{
    default_starts, invert_pure_shear, invert_pure_shear_multistart, richter_check,
    InverseOptions, InverseSolveResult, IterationRecord, RichterReport, RichterRow,
};
pub use shear::{
    default_gamma_grid, shear_modulus_slope, shear_monotonicity, shear_family_stretch,
    simple_shear_cauchy, MonotonicityReport, MonotonicityRow,
};

use crate::kinematics::pure_shear_pattern_residual;
use crate::tensor3::SymTensor3;

/// Default tolerance for effect flags.
pub const DEFAULT_EFFECT_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PurityCheck {
    pub is_pure_shear: bool,
    pub s: f64,
    pub residual: f64,
}

/// Compares `T` with `T₁₂(e₁⊗e₂ + e₂⊗e₁)`; the residual collects every other entry.
pub fn is_pure_shear_stress(t: &SymTensor3, tol: f64) -> PurityCheck {
    let residual = pure_shear_pattern_residual(t);
    PurityCheck {
        is_pure_shear: residual <= tol,
        s: t.get(0, 1),
        residual,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Poynting {
    Positive,
    Negative,
    None,
}

impl Poynting {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Positive => "positive",
            Self::Negative => "negative",
            Self::None => "none",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EffectClassification {
    pub poynting: Poynting,
    pub kelvin: bool,
    pub planar: bool,
    pub b11: f64,
    pub det_b: f64,
    pub b33: f64,
}

/// Poynting sign from `B₁₁ − 1`, Kelvin effect from `det B ≠ 1`, planarity from `B₃₃ = 1`.
pub fn classify_effects(b: &SymTensor3, tol: f64) -> EffectClassification {
    let b11 = b.get(0, 0);
    let b33 = b.get(2, 2);
    let det_b = b.det();
    let poynting = if b11 > 1.0 + tol {
        Poynting::Positive
    } else if b11 < 1.0 - tol {
        Poynting::Negative
    } else {
        Poynting::None
    };
    EffectClassification {
        poynting,
        kelvin: (det_b - 1.0).abs() > tol,
        planar: (b33 - 1.0).abs() <= tol,
        b11,
        det_b,
        b33,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constitutive::{cauchy_stress, NeoLog};
    use crate::kinematics::{pure_shear_stress_tensor, pure_shear_stretch, simple_shear};

    #[test]
    fn purity_examples() {
        let c = is_pure_shear_stress(&pure_shear_stress_tensor(3.0), 1e-12);
        assert!(c.is_pure_shear && c.s == 3.0 && c.residual == 0.0);
        let c = is_pure_shear_stress(&SymTensor3::zero(), 1e-12);
        assert!(c.is_pure_shear && c.s == 0.0);
        let sigma = cauchy_stress(&NeoLog::new(1.0).unwrap(), &simple_shear(1.0)).unwrap();
        assert!((sigma - SymTensor3::new(1.0, 1.0, 0.0, 0.0, 0.0, 0.0)).max_abs() < 1e-14);
        let c = is_pure_shear_stress(&sigma, 1e-8);
        assert!(!c.is_pure_shear);
        assert!((c.residual - 1.0).abs() < 1e-14);
    }

    #[test]
    fn classification_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let c = classify_effects(&SymTensor3::new(1.0, h, 0.0, 1.0, 0.0, 1.0), 1e-10);
        assert_eq!(c.poynting, Poynting::None);
        assert!(c.kelvin && c.planar);
        assert!((c.det_b - 0.5).abs() < 1e-15);

        let c = classify_effects(&SymTensor3::identity(), 1e-10);
        assert_eq!(c.poynting, Poynting::None);
        assert!(!c.kelvin && c.planar);

        let v = pure_shear_stretch(0.5);
        let c = classify_effects(&v.dot(&v).sym(), 1e-10);
        assert_eq!(c.poynting, Poynting::Positive);
        assert!((c.b11 - 1f64.cosh()).abs() < 1e-14);
        assert!(!c.kelvin && c.planar);

        let c = classify_effects(&SymTensor3::diag([0.9, 1.0, 1.2]), 1e-10);
        assert_eq!(c.poynting, Poynting::Negative);
        assert!(c.kelvin && !c.planar);
    }
}
