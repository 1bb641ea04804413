//! Isotropic constitutive models and stress maps.
//!
//! A model exposes its energy in principal stretches, in the principal invariants of
//! `B`, or both, optionally with analytic gradients. Becker's law is the odd one out:
//! it prescribes the Biot stress directly and has no energy.
//!
//! Stress routes:
//! * invariant models: `σ = β₀ id + β₁ B + β₋₁ B⁻¹`,
//! * everything else: principal values `σᵢ = λᵢ Tᵢ / J` placed in the eigenframe of `B`,
//!   where `Tᵢ = ∂W/∂λᵢ` is the principal Biot stress.

mod fd;
mod models;
mod params;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use fd::{fd_derivative, fd_gradient, fd_second_derivative, fd_step, FdKind, FdOptions};
pub use models::{
    Becker, Bazant, BlatzKo, ExpHencky, Hencky, MooneyRivlinTc, NeoLog, ScalarFunction,
    ValanisLandel,
};
pub use params::{build_model, catalogue, default_models, CatalogueEntry, ModelSpec, ParamInfo};

use crate::error::{Error, Result};
use crate::tensor3::{
    assemble_spectral, invariants, spd_log, sym_eig, DeformationGradient, Invariants,
    SpdTensor3, SymTensor3,
};

/// What a model provides natively.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Capabilities {
    pub stretch_energy: bool,
    pub invariant_energy: bool,
    pub analytic_stretch_gradient: bool,
    pub analytic_invariant_gradient: bool,
    pub direct_biot_law: bool,
}

impl Capabilities {
    pub fn has_energy(&self) -> bool {
        self.stretch_energy || self.invariant_energy
    }
}

/// Declared growth behaviour for large `‖F‖`. Recorded, never verified.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "class")]
pub enum GrowthClass {
    /// `W(F) ≥ d + c‖F‖ᵖ`.
    Coercive { p: f64 },
    /// `log ‖F‖ ∈ o(W)`.
    StrongerThanLogarithmic,
    Unspecified,
}

/// Where a derivative came from; selects verdict tolerances downstream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Analytic,
    ChainRule,
    FiniteDifference,
    DirectLaw,
}

impl Provenance {
    pub fn is_analytic(&self) -> bool {
        !matches!(self, Provenance::FiniteDifference)
    }
}

/// Isotropic elastic law.
///
/// Every optional method returns `None` when the model does not provide it; the free
/// functions of this module then fall back to conversions or finite differences.
pub trait ConstitutiveModel: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;
    fn parameters(&self) -> Vec<(String, f64)>;
    fn capabilities(&self) -> Capabilities;

    fn stretch_energy(&self, _lambdas: [f64; 3]) -> Option<f64> {
        None
    }
    /// `∂W/∂λᵢ`.
    fn stretch_gradient(&self, _lambdas: [f64; 3]) -> Option<[f64; 3]> {
        None
    }
    fn invariant_energy(&self, _inv: &Invariants) -> Option<f64> {
        None
    }
    /// `(∂W/∂I₁, ∂W/∂I₂, ∂W/∂I₃)`.
    fn invariant_gradient(&self, _inv: &Invariants) -> Option<[f64; 3]> {
        None
    }
    /// Principal Biot stresses for laws given directly in terms of `U`.
    fn direct_biot(&self, _lambdas: [f64; 3]) -> Option<[f64; 3]> {
        None
    }
    /// True if the energy splits additively into isochoric and volumetric parts.
    fn iso_vol_split(&self) -> bool {
        false
    }
    /// Infinitesimal shear modulus of the linearized law.
    fn shear_modulus(&self) -> f64;
    fn growth_class(&self) -> GrowthClass {
        GrowthClass::Unspecified
    }
}

/// Principal values (stretches or stresses).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PrincipalTriple(pub [f64; 3]);

impl PrincipalTriple {
    /// Validated stretch triple.
    pub fn stretches(l: [f64; 3]) -> Result<Self> {
        check_stretches(l)?;
        Ok(Self(l))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetaCoefficients {
    pub beta0: f64,
    pub beta1: f64,
    pub beta_m1: f64,
}

impl BetaCoefficients {
    /// `β₀ id + β₁ B + β₋₁ B⁻¹`.
    pub fn assemble(&self, b: &SpdTensor3) -> SymTensor3 {
        let b_inv = b.inverse();
        SymTensor3::identity() * self.beta0 + *b.as_sym() * self.beta1 + *b_inv.as_sym() * self.beta_m1
    }
}

fn check_stretches(l: [f64; 3]) -> Result<()> {
    if l.iter().all(|v| v.is_finite() && *v > 0.0) {
        Ok(())
    } else {
        Err(Error::InvalidStretch(l))
    }
}

fn unsupported(model: &dyn ConstitutiveModel, needed: &'static str) -> Error {
    Error::UnsupportedParameterization {
        model: model.name().to_string(),
        needed,
    }
}

/// `W(λ₁, λ₂, λ₃)`, via the invariants for invariant-only models.
pub fn energy(model: &dyn ConstitutiveModel, lambdas: [f64; 3]) -> Result<f64> {
    check_stretches(lambdas)?;
    let w = if let Some(w) = model.stretch_energy(lambdas) {
        w
    } else if let Some(w) = model.invariant_energy(&Invariants::from_stretches(lambdas)) {
        w
    } else {
        return Err(unsupported(model, "an energy"));
    };
    if w.is_finite() {
        Ok(w)
    } else {
        Err(Error::NonFinite("energy"))
    }
}

/// `W(I₁, I₂, I₃)` for invariant-capable models.
pub fn invariant_energy(model: &dyn ConstitutiveModel, inv: &Invariants) -> Result<f64> {
    model
        .invariant_energy(inv)
        .ok_or_else(|| unsupported(model, "an invariant energy"))
}

/// `(∂W/∂I₁, ∂W/∂I₂, ∂W/∂I₃)`, analytic when available, otherwise by central differences.
pub fn invariant_gradient(
    model: &dyn ConstitutiveModel,
    inv: &Invariants,
) -> Result<([f64; 3], Provenance)> {
    if let Some(g) = model.invariant_gradient(inv) {
        return Ok((g, Provenance::Analytic));
    }
    if !model.capabilities().invariant_energy {
        return Err(unsupported(model, "an invariant energy"));
    }
    let g = fd_gradient(
        |x| {
            model
                .invariant_energy(&Invariants {
                    i1: x[0],
                    i2: x[1],
                    i3: x[2],
                })
                .unwrap_or(f64::NAN)
        },
        inv.as_array(),
        FdKind::Invariant,
        FdOptions::default(),
    )?;
    Ok((g, Provenance::FiniteDifference))
}

/// Chain rule from invariant derivatives to stretch derivatives.
pub fn invariant_to_stretch_gradient(lambdas: [f64; 3], dw: [f64; 3]) -> [f64; 3] {
    let sq = lambdas.map(|l| l * l);
    let i3 = sq[0] * sq[1] * sq[2];
    let mut g = [0.0; 3];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let l = lambdas[i];
        g[i] = dw[0] * 2.0 * l + dw[1] * 2.0 * l * (sq[j] + sq[k]) + dw[2] * 2.0 * i3 / l;
    }
    g
}

/// `∂W/∂λᵢ`: analytic, then chain rule through the invariants, then finite differences.
pub fn stretch_gradient(
    model: &dyn ConstitutiveModel,
    lambdas: [f64; 3],
) -> Result<([f64; 3], Provenance)> {
    check_stretches(lambdas)?;
    if let Some(g) = model.stretch_gradient(lambdas) {
        return Ok((g, Provenance::Analytic));
    }
    if let Some(dw) = model.invariant_gradient(&Invariants::from_stretches(lambdas)) {
        return Ok((invariant_to_stretch_gradient(lambdas, dw), Provenance::ChainRule));
    }
    if !model.capabilities().has_energy() {
        return Err(unsupported(model, "an energy"));
    }
    let g = fd_gradient(
        |l| energy(model, l).unwrap_or(f64::NAN),
        lambdas,
        FdKind::Stretch,
        FdOptions::default(),
    )?;
    Ok((g, Provenance::FiniteDifference))
}

/// Principal Biot stresses `Tᵢ` (`∂W/∂λᵢ` for hyperelastic models).
pub fn biot_principal(model: &dyn ConstitutiveModel, lambdas: [f64; 3]) -> Result<PrincipalTriple> {
    check_stretches(lambdas)?;
    if let Some(t) = model.direct_biot(lambdas) {
        return Ok(PrincipalTriple(t));
    }
    stretch_gradient(model, lambdas).map(|(g, _)| PrincipalTriple(g))
}

/// Principal Kirchhoff stresses `τᵢ = λᵢ Tᵢ`.
pub fn kirchhoff_principal(
    model: &dyn ConstitutiveModel,
    lambdas: [f64; 3],
) -> Result<PrincipalTriple> {
    let t = biot_principal(model, lambdas)?.0;
    Ok(PrincipalTriple([
        lambdas[0] * t[0],
        lambdas[1] * t[1],
        lambdas[2] * t[2],
    ]))
}

/// Principal Cauchy stresses `σᵢ = τᵢ / J`.
pub fn principal_cauchy(model: &dyn ConstitutiveModel, lambdas: [f64; 3]) -> Result<PrincipalTriple> {
    let tau = kirchhoff_principal(model, lambdas)?.0;
    let j = lambdas[0] * lambdas[1] * lambdas[2];
    Ok(PrincipalTriple(tau.map(|t| t / j)))
}

/// `β₀, β₁, β₋₁` of the invariant representation.
pub fn betas(model: &dyn ConstitutiveModel, b: &SpdTensor3) -> Result<BetaCoefficients> {
    if !model.capabilities().invariant_energy {
        return Err(unsupported(model, "an invariant energy"));
    }
    let inv = invariants(b.as_sym());
    Ok(betas_at(model, &inv)?.0)
}

/// Betas from invariants alone, with the provenance of the derivatives.
pub fn betas_at(
    model: &dyn ConstitutiveModel,
    inv: &Invariants,
) -> Result<(BetaCoefficients, Provenance)> {
    let ([w1, w2, w3], prov) = invariant_gradient(model, inv)?;
    let s = inv.i3.sqrt();
    Ok((
        BetaCoefficients {
            beta0: 2.0 / s * (inv.i2 * w2 + inv.i3 * w3),
            beta1: 2.0 / s * w1,
            beta_m1: -2.0 * s * w2,
        },
        prov,
    ))
}

/// Cauchy stress through the beta representation.
pub fn cauchy_stress_beta(model: &dyn ConstitutiveModel, b: &SpdTensor3) -> Result<SymTensor3> {
    Ok(betas(model, b)?.assemble(b))
}

/// Cauchy stress assembled from principal values in the eigenframe of `B`.
pub fn cauchy_stress_spectral(model: &dyn ConstitutiveModel, b: &SpdTensor3) -> Result<SymTensor3> {
    let eig = sym_eig(b.as_sym());
    let lambdas = eig.eigenvalues.map(f64::sqrt);
    let sigma = principal_cauchy(model, lambdas)?.0;
    Ok(assemble_spectral(eig.eigenvectors.as_tensor(), sigma))
}

/// `σ̂(B)`: beta route for invariant models, spectral route otherwise.
pub fn cauchy_stress_b(model: &dyn ConstitutiveModel, b: &SpdTensor3) -> Result<SymTensor3> {
    let sigma = if model.capabilities().invariant_energy {
        cauchy_stress_beta(model, b)?
    } else {
        cauchy_stress_spectral(model, b)?
    };
    if sigma.is_finite() {
        Ok(sigma)
    } else {
        Err(Error::NonFinite("Cauchy stress"))
    }
}

/// `σ(F) = σ̂(FFᵀ)`.
pub fn cauchy_stress(model: &dyn ConstitutiveModel, f: &DeformationGradient) -> Result<SymTensor3> {
    cauchy_stress_b(model, &f.left_cauchy_green())
}

/// Kirchhoff stress `τ(V) = det V · σ̂(V²)`.
pub fn kirchhoff_stress(model: &dyn ConstitutiveModel, v: &SpdTensor3) -> Result<SymTensor3> {
    let eig = sym_eig(v.as_sym());
    let tau = kirchhoff_principal(model, eig.eigenvalues)?.0;
    Ok(assemble_spectral(eig.eigenvectors.as_tensor(), tau))
}

/// Biot stress `T(U)` assembled in the eigenframe of `U`.
pub fn biot_stress(model: &dyn ConstitutiveModel, u: &SpdTensor3) -> Result<SymTensor3> {
    let eig = sym_eig(u.as_sym());
    let t = biot_principal(model, eig.eigenvalues)?.0;
    Ok(assemble_spectral(eig.eigenvectors.as_tensor(), t))
}

/// Becker's law `T(U) = 2μ log U + λ tr(log U) id`.
pub fn becker_biot_stress(u: &SpdTensor3, mu: f64, lambda: f64) -> Result<SymTensor3> {
    let l = spd_log(u)?;
    Ok(l * (2.0 * mu) + SymTensor3::identity() * (lambda * l.trace()))
}

/// Linear Cauchy stress `2μ dev ε + κ tr(ε) id`.
pub fn linear_cauchy(eps: &SymTensor3, mu: f64, kappa: f64) -> SymTensor3 {
    eps.dev() * (2.0 * mu) + SymTensor3::identity() * (kappa * eps.trace())
}
