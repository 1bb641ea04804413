use serde::{Deserialize, Serialize};

use super::is_pure_shear_stress;
use crate::constitutive::{biot_principal, ConstitutiveModel};
use crate::error::Result;
use crate::kinematics::pure_shear_frame;
use crate::tensor3::assemble_spectral;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BiotRow {
    pub alpha: f64,
    pub s: f64,
    pub residual: f64,
    pub pure: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BiotReport {
    pub model: String,
    pub rows: Vec<BiotRow>,
    pub all_pure: bool,
}

/// Biot stress at the pure shear stretch `U_α`, assembled from `Tᵢ` at `(e^α, e^{−α}, 1)`
/// in the fixed pure shear frame, and tested for purity.
pub fn biot_pure_shear_check(model: &dyn ConstitutiveModel, alpha_grid: &[f64]) -> Result<BiotReport> {
    let frame = pure_shear_frame();
    let mut rows = Vec::with_capacity(alpha_grid.len());
    for &alpha in alpha_grid {
        let t = biot_principal(model, [alpha.exp(), (-alpha).exp(), 1.0])?.0;
        let biot = assemble_spectral(frame.as_tensor(), t);
        let check = is_pure_shear_stress(&biot, 1e-10 * (1.0 + biot.norm()));
        rows.push(BiotRow {
            alpha,
            s: check.s,
            residual: check.residual,
            pure: check.is_pure_shear,
        });
    }
    Ok(BiotReport {
        model: model.name().to_string(),
        all_pure: rows.iter().all(|r| r.pure),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constitutive::{Becker, BlatzKo, Hencky, ValanisLandel};

    #[test]
    fn becker_gives_pure_biot_shear() {
        let r = biot_pure_shear_check(&Becker::new(1.0, 3.0).unwrap(), &[0.0, 0.25]).unwrap();
        assert!(r.all_pure);
        assert!(r.rows[0].s.abs() < 1e-15);
        assert!((r.rows[1].s - 0.5).abs() < 1e-14);
    }

    #[test]
    fn valanis_landel_becker_energy() {
        let grid: Vec<f64> = (-10..=10).map(|i| 0.1 * i as f64).collect();
        let r = biot_pure_shear_check(&ValanisLandel::becker_energy(1.0).unwrap(), &grid).unwrap();
        assert!(r.all_pure);
    }

    #[test]
    fn hencky_biot_is_not_pure() {
        // w′(t) = 2μ log t / t violates w′(1/t) = −w′(t)
        let r = biot_pure_shear_check(&Hencky::new(1.0, 0.0).unwrap(), &[0.5]).unwrap();
        assert!(!r.all_pure);
    }

    #[test]
    fn blatz_ko_biot_is_pure() {
        // Tᵢ = μ(λᵢ − 1/(Jλᵢ)) gives μ(λ − 1/λ) and its negative at J = 1
        let r = biot_pure_shear_check(&BlatzKo::new(1.0).unwrap(), &[-0.7, 0.5]).unwrap();
        assert!(r.all_pure);
        assert!((r.rows[1].s - 2.0 * 0.5f64.sinh()).abs() < 1e-14);
    }
}
