use std::fmt;
use std::sync::Arc;

use super::{Capabilities, ConstitutiveModel, GrowthClass};
use crate::error::{Error, Result};
use crate::tensor3::Invariants;

fn require_positive(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name: name.to_string(),
            value,
            reason: "must be positive",
        })
    }
}

fn require_non_negative(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name: name.to_string(),
            value,
            reason: "must be non-negative",
        })
    }
}

fn require_finite(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name: name.to_string(),
            value,
            reason: "must be finite",
        })
    }
}

/// Checks `κ = Λ + 2μ/3 > 0`.
fn require_bulk(mu: f64, lambda: f64) -> Result<()> {
    let kappa = lambda + 2.0 * mu / 3.0;
    if kappa > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "lambda".to_string(),
            value: lambda,
            reason: "bulk modulus lambda + 2 mu / 3 must be positive",
        })
    }
}

fn log_stretches(l: [f64; 3]) -> [f64; 3] {
    l.map(f64::ln)
}

/// User-supplied scalar function with its derivative.
#[derive(Clone)]
pub struct ScalarFunction {
    label: String,
    value: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    derivative: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl ScalarFunction {
    pub fn new(
        label: impl Into<String>,
        value: impl Fn(f64) -> f64 + Send + Sync + 'static,
        derivative: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            label: label.into(),
            value: Arc::new(value),
            derivative: Arc::new(derivative),
        }
    }

    pub fn zero() -> Self {
        Self::new("0", |_| 0.0, |_| 0.0)
    }

    pub fn value(&self, t: f64) -> f64 {
        (self.value)(t)
    }

    pub fn derivative(&self, t: f64) -> f64 {
        (self.derivative)(t)
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarFunction({})", self.label)
    }
}

/// Quadratic-logarithmic energy `μ‖log U‖² + (Λ/2)(tr log U)²`.
#[derive(Clone, Debug, PartialEq)]
pub struct Hencky {
    mu: f64,
    lambda: f64,
}

impl Hencky {
    pub fn new(mu: f64, lambda: f64) -> Result<Self> {
        let mu = require_positive("mu", mu)?;
        let lambda = require_finite("lambda", lambda)?;
        require_bulk(mu, lambda)?;
        Ok(Self { mu, lambda })
    }

    /// Same energy written as `μ‖dev log U‖² + (κ/2)(tr log U)²`.
    pub fn with_kappa(mu: f64, kappa: f64) -> Result<Self> {
        let mu = require_positive("mu", mu)?;
        let kappa = require_positive("kappa", kappa)?;
        Self::new(mu, kappa - 2.0 * mu / 3.0)
    }
}

impl ConstitutiveModel for Hencky {
    fn name(&self) -> &str {
        "hencky"
    }
    fn parameters(&self) -> Vec<(String, f64)> {
        vec![("mu".into(), self.mu), ("lambda".into(), self.lambda)]
    }
    fn capabilities(&self) -> Capabilities {
        Capabilities {
            stretch_energy: true,
            analytic_stretch_gradient: true,
            ..Default::default()
        }
    }
    fn stretch_energy(&self, l: [f64; 3]) -> Option<f64> {
        let e = log_stretches(l);
        let tr: f64 = e.iter().sum();
        Some(self.mu * e.iter().map(|v| v * v).sum::<f64>() + 0.5 * self.lambda * tr * tr)
    }
    fn stretch_gradient(&self, l: [f64; 3]) -> Option<[f64; 3]> {
        let e = log_stretches(l);
        let tr: f64 = e.iter().sum();
        Some([0, 1, 2].map(|i| (2.0 * self.mu * e[i] + self.lambda * tr) / l[i]))
    }
    fn iso_vol_split(&self) -> bool {
        true
    }
    fn shear_modulus(&self) -> f64 {
        self.mu
    }
    fn growth_class(&self) -> GrowthClass {
        GrowthClass::StrongerThanLogarithmic
    }
}

/// `(μ/k) e^{k‖dev log V‖²} + (κ/(2k̂)) e^{k̂ (tr log V)²}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpHencky {
    mu: f64,
    kappa: f64,
    k: f64,
    k_hat: f64,
}

impl ExpHencky {
    pub const DEFAULT_K: f64 = 0.25;
    pub const DEFAULT_K_HAT: f64 = 0.25;

    pub fn new(mu: f64, kappa: f64, k: f64, k_hat: f64) -> Result<Self> {
        Ok(Self {
            mu: require_positive("mu", mu)?,
            kappa: require_positive("kappa", kappa)?,
            k: require_positive("k", k)?,
            k_hat: require_positive("k_hat", k_hat)?,
        })
    }

    fn split(l: [f64; 3]) -> ([f64; 3], f64) {
        let e = log_stretches(l);
        let tr: f64 = e.iter().sum();
        (e.map(|v| v - tr / 3.0), tr)
    }
}

impl ConstitutiveModel for ExpHencky {
    fn name(&self) -> &str {
        "exp-hencky"
    }
    fn parameters(&self) -> Vec<(String, f64)> {
        vec![
            ("mu".into(), self.mu),
            ("kappa".into(), self.kappa),
            ("k".into(), self.k),
            ("k_hat".into(), self.k_hat),
        ]
    }
    fn capabilities(&self) -> Capabilities {
        Capabilities {
            stretch_energy: true,
            analytic_stretch_gradient: true,
            ..Default::default()
        }
    }
    fn stretch_energy(&self, l: [f64; 3]) -> Option<f64> {
        let (d, tr) = Self::split(l);
        let dd: f64 = d.iter().map(|v| v * v).sum();
        Some(
            self.mu / self.k * (self.k * dd).exp()
                + self.kappa / (2.0 * self.k_hat) * (self.k_hat * tr * tr).exp(),
        )
    }
    fn stretch_gradient(&self, l: [f64; 3]) -> Option<[f64; 3]> {
        let (d, tr) = Self::split(l);
        let dd: f64 = d.iter().map(|v| v * v).sum();
        let iso = 2.0 * self.mu * (self.k * dd).exp();
        let vol = self.kappa * tr * (self.k_hat * tr * tr).exp();
        Some([0, 1, 2].map(|i| (iso * d[i] + vol) / l[i]))
    }
    fn iso_vol_split(&self) -> bool {
        true
    }
    fn shear_modulus(&self) -> f64 {
        self.mu
    }
    fn growth_class(&self) -> GrowthClass {
        GrowthClass::StrongerThanLogarithmic
    }
}

/// `(μ/4)‖B − B⁻¹‖² = (μ/4) Σ (λᵢ² − λᵢ⁻²)²`.
///
/// The small-strain shear modulus of this scaling is `4μ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bazant {
    mu: f64,
}

impl Bazant {
    pub fn new(mu: f64) -> Result<Self> {
        Ok(Self {
            mu: require_positive("mu", mu)?,
        })
    }
}

impl ConstitutiveModel for Bazant {
    fn name(&self) -> &str {
        "bazant"
    }
    fn parameters(&self) -> Vec<(String, f64)> {
        vec![("mu".into(), self.mu)]
    }
    fn capabilities(&self) -> Capabilities {
        Capabilities {
            stretch_energy: true,
            invariant_energy: true,
            analytic_stretch_gradient: true,
            analytic_invariant_gradient: true,
            direct_biot_law: false,
        }
    }
    fn stretch_energy(&self, l: [f64; 3]) -> Option<f64> {
        Some(0.25 * self.mu * l.iter().map(|v| (v * v - 1.0 / (v * v)).powi(2)).sum::<f64>())
    }
    fn stretch_gradient(&self, l: [f64; 3]) -> Option<[f64; 3]> {
        Some(l.map(|v| self.mu * (v * v - 1.0 / (v * v)) * (v + 1.0 / (v * v * v))))
    }
    // tr B² = I₁² − 2I₂, tr B⁻² = (I₂² − 2I₁I₃)/I₃²
    fn invariant_energy(&self, inv: &Invariants) -> Option<f64> {
        let Invariants { i1, i2, i3 } = *inv;
        Some(0.25 * self.mu * (i1 * i1 - 2.0 * i2 + (i2 * i2 - 2.0 * i1 * i3) / (i3 * i3) - 6.0))
    }
    fn invariant_gradient(&self, inv: &Invariants) -> Option<[f64; 3]> {
        let Invariants { i1, i2, i3 } = *inv;
        let k = 0.5 * self.mu;
        Some([
            k * (i1 - 1.0 / i3),
            k * (i2 / (i3 * i3) - 1.0),
            k * (i1 / (i3 * i3) - i2 * i2 / (i3 * i3 * i3)),
        ])
    }
    fn shear_modulus(&self) -> f64 {
        4.0 * self.mu
    }
    fn growth_class(&self) -> GrowthClass {
        GrowthClass::Coercive { p: 4.0 }
    }
}

/// `(μ/2)(I₁ + 2/√I₃ − 5)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlatzKo {
    mu: f64,
}

impl BlatzKo {
    pub fn new(mu: f64) -> Result<Self> {
        Ok(Self {
            mu: require_positive("mu", mu)?,
        })
    }
}

impl ConstitutiveModel for BlatzKo {
    fn name(&self) -> &str {
        "blatz-ko"
    }
    fn parameters(&self) -> Vec<(String, f64)> {
        vec![("mu".into(), self.mu)]
    }
    fn capabilities(&self) -> Capabilities {
        Capabilities {
            invariant_energy: true,
            analytic_invariant_gradient: true,
            ..Default::default()
        }
    }
    fn invariant_energy(&self, inv: &Invariants) -> Option<f64> {
        Some(0.5 * self.mu * (inv.i1 + 2.0 / inv.i3.sqrt() - 5.0))
    }
    fn invariant_gradient(&self, inv: &Invariants) -> Option<[f64; 3]> {
        Some([0.5 * self.mu, 0.0, -0.5 * self.mu * inv.i3.powf(-1.5)])
    }
    fn shear_modulus(&self) -> f64 {
        self.mu
    }
    fn growth_class(&self) -> GrowthClass {
        GrowthClass::Coercive { p: 2.0 }
    }
}

/// `(μ/2)(I₁ − log I₃)`, with Cauchy stress `μ(B − id)/√I₃`.
#[derive(Clone, Debug, PartialEq)]
pub struct NeoLog {
    mu: f64,
}

impl NeoLog {
    pub fn new(mu: f64) -> Result<Self> {
        Ok(Self {
            mu: require_positive("mu", mu)?,
        })
    }
}

impl ConstitutiveModel for NeoLog {
    fn name(&self) -> &str {
        "neo-log"
    }
    fn parameters(&self) -> Vec<(String, f64)> {
        vec![("mu".into(), self.mu)]
    }
    fn capabilities(&self) -> Capabilities {
        Capabilities {
            invariant_energy: true,
            analytic_invariant_gradient: true,
            ..Default::default()
        }
    }
    fn invariant_energy(&self, inv: &Invariants) -> Option<f64> {
        Some(0.5 * self.mu * (inv.i1 - inv.i3.ln()))
    }
    fn invariant_gradient(&self, inv: &Invariants) -> Option<[f64; 3]> {
        Some([0.5 * self.mu, 0.0, -0.5 * self.mu / inv.i3])
    }
    fn shear_modulus(&self) -> f64 {
        self.mu
    }
    fn growth_class(&self) -> GrowthClass {
        GrowthClass::Coercive { p: 2.0 }
    }
}

/// Slightly compressible Mooney-Rivlin energy with a tension-compression symmetric
/// isochoric part, `(μ/4)((I₁I₃^{-1/3} − 3) + (I₂I₃^{-2/3} − 3)) + f(I₃)`.
#[derive(Clone, Debug)]
pub struct MooneyRivlinTc {
    mu: f64,
    kappa: Option<f64>,
    volumetric: ScalarFunction,
}

impl MooneyRivlinTc {
    /// Volumetric term `f(I₃) = (κ/2)(√I₃ − 1)²`; `κ = 0` gives `f ≡ 0`.
    pub fn new(mu: f64, kappa: f64) -> Result<Self> {
        let mu = require_positive("mu", mu)?;
        let kappa = require_non_negative("kappa", kappa)?;
        let volumetric = ScalarFunction::new(
            format!("({kappa}/2)(sqrt(I3) - 1)^2"),
            move |i3: f64| 0.5 * kappa * (i3.sqrt() - 1.0).powi(2),
            move |i3: f64| 0.5 * kappa * (i3.sqrt() - 1.0) / i3.sqrt(),
        );
        Ok(Self {
            mu,
            kappa: Some(kappa),
            volumetric,
        })
    }

    /// Custom volumetric term. `f′(1) = 0` is required for a stress-free reference.
    pub fn with_volumetric(mu: f64, f: ScalarFunction) -> Result<Self> {
        let mu = require_positive("mu", mu)?;
        let slope = f.derivative(1.0);
        if slope.abs() > 1e-12 {
            return Err(Error::InvalidParameter {
                name: "f'(1)".to_string(),
                value: slope,
                reason: "volumetric term must be stationary at I3 = 1",
            });
        }
        Ok(Self {
            mu,
            kappa: None,
            volumetric: f,
        })
    }
}

impl ConstitutiveModel for MooneyRivlinTc {
    fn name(&self) -> &str {
        "mooney-rivlin-tc"
    }
    fn parameters(&self) -> Vec<(String, f64)> {
        let mut p = vec![("mu".into(), self.mu)];
        if let Some(k) = self.kappa {
            p.push(("kappa".into(), k));
        }
        p
    }
    fn capabilities(&self) -> Capabilities {
        Capabilities {
            invariant_energy: true,
            analytic_invariant_gradient: true,
            ..Default::default()
        }
    }
    fn invariant_energy(&self, inv: &Invariants) -> Option<f64> {
        let Invariants { i1, i2, i3 } = *inv;
        let iso = 0.25 * self.mu * ((i1 * i3.powf(-1.0 / 3.0) - 3.0) + (i2 * i3.powf(-2.0 / 3.0) - 3.0));
        Some(iso + self.volumetric.value(i3))
    }
    fn invariant_gradient(&self, inv: &Invariants) -> Option<[f64; 3]> {
        let Invariants { i1, i2, i3 } = *inv;
        let k = 0.25 * self.mu;
        Some([
            k * i3.powf(-1.0 / 3.0),
            k * i3.powf(-2.0 / 3.0),
            k * (-i1 / 3.0 * i3.powf(-4.0 / 3.0) - 2.0 * i2 / 3.0 * i3.powf(-5.0 / 3.0))
                + self.volumetric.derivative(i3),
        ])
    }
    fn iso_vol_split(&self) -> bool {
        true
    }
    fn shear_modulus(&self) -> f64 {
        self.mu
    }
}

/// `Σ w(λᵢ) + f(λ₁λ₂λ₃)` with user-supplied `w`, `f` and their derivatives.
#[derive(Clone, Debug)]
pub struct ValanisLandel {
    name: String,
    params: Vec<(String, f64)>,
    w: ScalarFunction,
    f: ScalarFunction,
    shear_modulus: f64,
}

impl ValanisLandel {
    pub fn new(
        name: impl Into<String>,
        params: Vec<(String, f64)>,
        w: ScalarFunction,
        f: ScalarFunction,
        shear_modulus: f64,
    ) -> Result<Self> {
        Ok(Self {
            name: name.into(),
            params,
            w,
            f,
            shear_modulus: require_positive("shear_modulus", shear_modulus)?,
        })
    }

    /// `w(t) = 2μ(t(log t − 1) + 1)`, `f ≡ 0`; its Biot stress is Becker's law with zero `λ`.
    pub fn becker_energy(mu: f64) -> Result<Self> {
        let mu = require_positive("mu", mu)?;
        Self::new(
            "valanis-landel-becker",
            vec![("mu".into(), mu)],
            ScalarFunction::new(
                format!("2*{mu}*(t(log t - 1) + 1)"),
                move |t: f64| 2.0 * mu * (t * (t.ln() - 1.0) + 1.0),
                move |t: f64| 2.0 * mu * t.ln(),
            ),
            ScalarFunction::zero(),
            mu,
        )
    }

    /// Hencky energy in separated form: `w = μ log²t`, `f(d) = (Λ/2) log²d`.
    pub fn hencky_form(mu: f64, lambda: f64) -> Result<Self> {
        let mu = require_positive("mu", mu)?;
        let lambda = require_finite("lambda", lambda)?;
        require_bulk(mu, lambda)?;
        Self::new(
            "valanis-landel-hencky",
            vec![("mu".into(), mu), ("lambda".into(), lambda)],
            ScalarFunction::new(
                format!("{mu}*log(t)^2"),
                move |t: f64| mu * t.ln().powi(2),
                move |t: f64| 2.0 * mu * t.ln() / t,
            ),
            ScalarFunction::new(
                format!("{lambda}/2*log(d)^2"),
                move |d: f64| 0.5 * lambda * d.ln().powi(2),
                move |d: f64| lambda * d.ln() / d,
            ),
            mu,
        )
    }

    pub fn w(&self) -> &ScalarFunction {
        &self.w
    }

    pub fn f(&self) -> &ScalarFunction {
        &self.f
    }
}

impl ConstitutiveModel for ValanisLandel {
    fn name(&self) -> &str {
        &self.name
    }
    fn parameters(&self) -> Vec<(String, f64)> {
        self.params.clone()
    }
    fn capabilities(&self) -> Capabilities {
        Capabilities {
            stretch_energy: true,
            analytic_stretch_gradient: true,
            ..Default::default()
        }
    }
    fn stretch_energy(&self, l: [f64; 3]) -> Option<f64> {
        let j = l[0] * l[1] * l[2];
        Some(l.iter().map(|&t| self.w.value(t)).sum::<f64>() + self.f.value(j))
    }
    fn stretch_gradient(&self, l: [f64; 3]) -> Option<[f64; 3]> {
        let j = l[0] * l[1] * l[2];
        let fp = self.f.derivative(j);
        Some(l.map(|t| self.w.derivative(t) + fp * j / t))
    }
    fn shear_modulus(&self) -> f64 {
        self.shear_modulus
    }
    fn growth_class(&self) -> GrowthClass {
        GrowthClass::Unspecified
    }
}

/// Becker's law `T(U) = 2μ log U + λ tr(log U) id`; hyperelastic only for `λ = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Becker {
    mu: f64,
    lambda: f64,
}

impl Becker {
    pub fn new(mu: f64, lambda: f64) -> Result<Self> {
        let mu = require_positive("mu", mu)?;
        let lambda = require_finite("lambda", lambda)?;
        require_bulk(mu, lambda)?;
        Ok(Self { mu, lambda })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

impl ConstitutiveModel for Becker {
    fn name(&self) -> &str {
        "becker"
    }
    fn parameters(&self) -> Vec<(String, f64)> {
        vec![("mu".into(), self.mu), ("lambda".into(), self.lambda)]
    }
    fn capabilities(&self) -> Capabilities {
        Capabilities {
            direct_biot_law: true,
            ..Default::default()
        }
    }
    fn direct_biot(&self, l: [f64; 3]) -> Option<[f64; 3]> {
        let e = log_stretches(l);
        let tr: f64 = e.iter().sum();
        Some(e.map(|v| 2.0 * self.mu * v + self.lambda * tr))
    }
    fn shear_modulus(&self) -> f64 {
        self.mu
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constitutive::{fd_gradient, FdKind, FdOptions};

    #[test]
    fn parameter_validation() {
        assert!(Hencky::new(0.0, 1.0).is_err());
        assert!(Hencky::new(1.0, -1.0).is_err());
        assert!(Hencky::new(1.0, -0.5).is_ok());
        assert!(Hencky::with_kappa(1.0, 0.0).is_err());
        assert!(ExpHencky::new(1.0, 1.0, 0.0, 0.25).is_err());
        assert!(BlatzKo::new(-1.0).is_err());
        assert!(MooneyRivlinTc::new(1.0, -1.0).is_err());
        assert!(MooneyRivlinTc::new(1.0, 0.0).is_ok());
        assert!(Becker::new(1.0, f64::NAN).is_err());
        let bad = ScalarFunction::new("I3", |x| x, |_| 1.0);
        assert!(MooneyRivlinTc::with_volumetric(1.0, bad).is_err());
    }

    #[test]
    fn hencky_kappa_form_matches_lame_form() {
        let a = Hencky::with_kappa(1.5, 4.0).unwrap();
        let b = Hencky::new(1.5, 3.0).unwrap();
        let l = [1.3, 0.6, 2.1];
        assert!((a.stretch_energy(l).unwrap() - b.stretch_energy(l).unwrap()).abs() < 1e-13);
    }

    #[test]
    fn valanis_landel_hencky_matches_hencky() {
        let a = ValanisLandel::hencky_form(1.0, 2.0).unwrap();
        let b = Hencky::new(1.0, 2.0).unwrap();
        let l = [0.7, 1.8, 1.1];
        assert!((a.stretch_energy(l).unwrap() - b.stretch_energy(l).unwrap()).abs() < 1e-14);
        let ga = a.stretch_gradient(l).unwrap();
        let gb = b.stretch_gradient(l).unwrap();
        for i in 0..3 {
            assert!((ga[i] - gb[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn bazant_invariant_and_stretch_forms_agree() {
        let m = Bazant::new(0.7).unwrap();
        let l = [1.4, 0.5, 0.9];
        let inv = Invariants::from_stretches(l);
        let a = m.stretch_energy(l).unwrap();
        let b = m.invariant_energy(&inv).unwrap();
        assert!((a - b).abs() < 1e-12 * a.abs().max(1.0));
        let g = m.invariant_gradient(&inv).unwrap();
        let fd = fd_gradient(
            |x| m.invariant_energy(&Invariants { i1: x[0], i2: x[1], i3: x[2] }).unwrap(),
            inv.as_array(),
            FdKind::Invariant,
            FdOptions::default(),
        )
        .unwrap();
        for i in 0..3 {
            assert!((g[i] - fd[i]).abs() < 1e-6 * g[i].abs().max(1.0));
        }
    }

    #[test]
    fn becker_energy_derivative() {
        let m = ValanisLandel::becker_energy(1.0).unwrap();
        assert_eq!(m.stretch_energy([1.0; 3]).unwrap(), 0.0);
        let w = m.w();
        for t in [0.5, 1.0, 2.0] {
            assert!((w.derivative(1.0 / t) + w.derivative(t)).abs() < 1e-15);
        }
    }
}
