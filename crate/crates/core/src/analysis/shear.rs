//! Simple shear response and shear monotonicity.
//!
//! On simple shear `I₁ = I₂ = 3 + γ²`, `I₃ = 1`, and the shear stress is
//! `σ₁₂(γ) = g′(γ)` with `g(γ) = W(3+γ², 3+γ², 1)`.

use serde::{Deserialize, Serialize};

use crate::constitutive::{
    betas_at, cauchy_stress, energy, fd_derivative, fd_second_derivative, invariant_energy,
    ConstitutiveModel,
};
use crate::error::{Error, Result};
use crate::kinematics::simple_shear;
use crate::tensor3::{Invariants, SymTensor3};

/// Step for the finite differences in `γ`.
const GAMMA_STEP: f64 = 1e-4;
/// Agreement required between `dσ₁₂/dγ` and `g″(γ)`.
pub const IDENTITY_TOL: f64 = 1e-5;

/// Principal stretches `(λ, 1/λ, 1)` of simple shear, `λ = (γ + √(γ² + 4))/2`.
pub fn shear_family_stretch(gamma: f64) -> [f64; 3] {
    let l = 0.5 * (gamma + (gamma * gamma + 4.0).sqrt());
    [l, 1.0 / l, 1.0]
}

/// Cauchy stress of simple shear; closed beta form for invariant models.
pub fn simple_shear_cauchy(model: &dyn ConstitutiveModel, gamma: f64) -> Result<SymTensor3> {
    if model.capabilities().invariant_energy {
        let i = 3.0 + gamma * gamma;
        let (b, _) = betas_at(model, &Invariants { i1: i, i2: i, i3: 1.0 })?;
        let iso = b.beta0 + b.beta1 + b.beta_m1;
        let g2 = gamma * gamma;
        Ok(SymTensor3::new(
            iso + b.beta1 * g2,
            (b.beta1 - b.beta_m1) * gamma,
            0.0,
            iso + b.beta_m1 * g2,
            0.0,
            iso,
        ))
    } else {
        cauchy_stress(model, &simple_shear(gamma))
    }
}

/// `g(γ) = W` along simple shear.
fn shear_energy(model: &dyn ConstitutiveModel, gamma: f64) -> Result<f64> {
    if model.capabilities().invariant_energy {
        let i = 3.0 + gamma * gamma;
        invariant_energy(model, &Invariants { i1: i, i2: i, i3: 1.0 })
    } else {
        energy(model, shear_family_stretch(gamma))
    }
}

pub fn default_gamma_grid() -> Vec<f64> {
    (0..41).map(|i| 2.0 * i as f64 / 40.0).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityRow {
    pub gamma: f64,
    pub sigma12: f64,
    pub dsigma12: f64,
    pub g_second: f64,
    pub identity_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub model: String,
    pub rows: Vec<MonotonicityRow>,
    /// `dσ₁₂/dγ > 0` on every grid point.
    pub monotone: bool,
    pub identity_max_error: f64,
    pub identity_pass: bool,
}

/// Tabulates `σ₁₂`, its derivative and `g″` on `gamma_grid`.
pub fn shear_monotonicity(
    model: &dyn ConstitutiveModel,
    gamma_grid: &[f64],
) -> Result<MonotonicityReport> {
    if !model.capabilities().has_energy() {
        return Err(Error::UnsupportedParameterization {
            model: model.name().to_string(),
            needed: "an energy",
        });
    }
    let mut rows = Vec::with_capacity(gamma_grid.len());
    for &gamma in gamma_grid {
        let sigma12 = simple_shear_cauchy(model, gamma)?.get(0, 1);
        let s12 = |g: f64| simple_shear_cauchy(model, g).map_or(f64::NAN, |s| s.get(0, 1));
        let dsigma12 = fd_derivative(s12, gamma, GAMMA_STEP);
        let g = |x: f64| shear_energy(model, x).unwrap_or(f64::NAN);
        let g_second = fd_second_derivative(g, gamma, GAMMA_STEP);
        if !(dsigma12.is_finite() && g_second.is_finite()) {
            return Err(Error::NonFinite("shear monotonicity"));
        }
        rows.push(MonotonicityRow {
            gamma,
            sigma12,
            dsigma12,
            g_second,
            identity_error: (dsigma12 - g_second).abs() / g_second.abs().max(1.0),
        });
    }
    let identity_max_error = rows.iter().map(|r| r.identity_error).fold(0.0, f64::max);
    Ok(MonotonicityReport {
        model: model.name().to_string(),
        monotone: rows.iter().all(|r| r.dsigma12 > 0.0),
        identity_max_error,
        identity_pass: identity_max_error <= IDENTITY_TOL,
        rows,
    })
}

/// Least-squares slope through the origin of `σ₁₂(γ)` for small `γ`.
pub fn shear_modulus_slope(model: &dyn ConstitutiveModel) -> Result<f64> {
    let gammas: Vec<f64> = (1..=10).map(|i| 1e-3 * i as f64).collect();
    let mut num = 0.0;
    let mut den = 0.0;
    for &g in &gammas {
        let s = simple_shear_cauchy(model, g)?.get(0, 1);
        num += g * s;
        den += g * g;
    }
    Ok(num / den)
}
