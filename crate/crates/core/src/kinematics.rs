//! Shear kinematics.
//!
//! Conventions: simple shear has its nonzero off-diagonal entry at position (1,2),
//! `F_γ = id + γ e₁⊗e₂`, so that `F_γ F_γᵀ = [[1+γ², γ, 0], [γ, 1, 0], [0, 0, 1]]`.
//! The transpose convention (entry at (2,1)) is obtained with [`Tensor3::transpose`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor3::{DeformationGradient, Rotation3, SpdTensor3, SymTensor3, Tensor3};

/// Default relative tolerance for the pattern checks in this module.
pub const PATTERN_TOL: f64 = 1e-10;

/// Absolute tolerance `PATTERN_TOL·(1 + ‖x‖)`.
pub fn default_pattern_tol(norm: f64) -> f64 {
    PATTERN_TOL * (1.0 + norm)
}

/// `F_γ = id + γ e₁⊗e₂`.
pub fn simple_shear(gamma: f64) -> DeformationGradient {
    DeformationGradient::new_unchecked(Tensor3::from_rows([
        [1.0, gamma, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
    ]))
}

/// Left finite simple shear `V_α·R`, upper triangular with `e₁`, `e₃` as eigenvectors.
pub fn left_finite_shear(alpha: f64) -> DeformationGradient {
    let (c2, s2) = ((2.0 * alpha).cosh(), (2.0 * alpha).sinh());
    let k = 1.0 / c2.sqrt();
    DeformationGradient::new_unchecked(Tensor3::from_rows([
        [k, k * s2, 0.0],
        [0.0, k * c2, 0.0],
        [0.0, 0.0, 1.0],
    ]))
}

/// Right finite simple shear `R·V_α`.
pub fn right_finite_shear(alpha: f64) -> DeformationGradient {
    let (c2, s2) = ((2.0 * alpha).cosh(), (2.0 * alpha).sinh());
    let k = 1.0 / c2.sqrt();
    DeformationGradient::new_unchecked(Tensor3::from_rows([
        [k * c2, k * s2, 0.0],
        [0.0, k, 0.0],
        [0.0, 0.0, 1.0],
    ]))
}

/// Finite pure shear stretch `V_α = exp(α(e₁⊗e₂ + e₂⊗e₁))`.
pub fn pure_shear_stretch(alpha: f64) -> SpdTensor3 {
    let (c, s) = (alpha.cosh(), alpha.sinh());
    SpdTensor3::new_unchecked(SymTensor3::new(c, s, 0.0, c, 0.0, 1.0))
}

/// Rotation factor shared by both finite simple shears.
pub fn shear_rotation(alpha: f64) -> Rotation3 {
    let (c, s) = (alpha.cosh(), alpha.sinh());
    let k = 1.0 / (2.0 * alpha).cosh().sqrt();
    Rotation3::new_unchecked(Tensor3::from_rows([
        [k * c, k * s, 0.0],
        [-k * s, k * c, 0.0],
        [0.0, 0.0, 1.0],
    ]))
}

/// Shear angle of the pure shear stretch, `arctan(tanh α)`.
pub fn pure_shear_stretch_angle(alpha: f64) -> f64 {
    alpha.tanh().atan()
}

/// Pure shear stress `s (e₁⊗e₂ + e₂⊗e₁)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PureShearStress {
    pub s: f64,
}

impl PureShearStress {
    pub fn new(s: f64) -> Self {
        Self { s }
    }

    pub fn tensor(&self) -> SymTensor3 {
        pure_shear_stress_tensor(self.s)
    }

    pub fn eigenvalues(&self) -> [f64; 3] {
        [self.s.abs(), 0.0, -self.s.abs()]
    }
}

pub fn pure_shear_stress_tensor(s: f64) -> SymTensor3 {
    SymTensor3::new(0.0, s, 0.0, 0.0, 0.0, 0.0)
}

/// Fixed eigenframe of every pure shear stress; columns `(1,1,0)/√2`, `(−1,1,0)/√2`, `e₃`.
pub fn pure_shear_frame() -> Rotation3 {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Rotation3::new_unchecked(Tensor3::from_rows([
        [h, -h, 0.0],
        [h, h, 0.0],
        [0.0, 0.0, 1.0],
    ]))
}

/// Distance of `t` from the pure shear pattern: every entry except (1,2) must vanish.
pub fn pure_shear_pattern_residual(t: &SymTensor3) -> f64 {
    let [a11, _, a13, a22, a23, a33] = t.components();
    (a11 * a11 + a22 * a22 + a33 * a33 + a13 * a13 + a23 * a23).sqrt()
}

/// Returns the fixed frame `Q` and amount `s` with `Q·diag(s, −s, 0)·Qᵀ = T`.
pub fn diagonalize_pure_shear(t: &SymTensor3, tol: Option<f64>) -> Result<(Rotation3, f64)> {
    let tol = tol.unwrap_or_else(|| default_pattern_tol(t.norm()));
    let residual = pure_shear_pattern_residual(t);
    if residual > tol || !residual.is_finite() {
        return Err(Error::NotPureShear { residual });
    }
    Ok((pure_shear_frame(), t.get(0, 1)))
}

/// Stretch tensor of the form `[[p, q, 0], [q, p, 0], [0, 0, r]]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommutingForm {
    pub p: f64,
    pub q: f64,
    pub r: f64,
}

impl CommutingForm {
    pub fn new(p: f64, q: f64, r: f64) -> Self {
        Self { p, q, r }
    }

    /// From eigenvalues `μ₁, μ₂` in the pure shear frame and `μ₃` along `e₃`.
    pub fn from_eigenvalues(mu: [f64; 3]) -> Self {
        Self::new(0.5 * (mu[0] + mu[1]), 0.5 * (mu[0] - mu[1]), mu[2])
    }

    pub fn tensor(&self) -> SymTensor3 {
        SymTensor3::new(self.p, self.q, 0.0, self.p, 0.0, self.r)
    }

    /// Eigenvalues `(p + q, p − q, r)` belonging to the columns of [`pure_shear_frame`].
    pub fn eigenvalues(&self) -> [f64; 3] {
        [self.p + self.q, self.p - self.q, self.r]
    }

    pub fn is_spd(&self) -> bool {
        self.p > self.q.abs() && self.r > 0.0
    }

    pub fn to_spd(&self) -> Result<SpdTensor3> {
        self.check_spd()?;
        Ok(SpdTensor3::new_unchecked(self.tensor()))
    }

    pub fn det(&self) -> f64 {
        (self.p * self.p - self.q * self.q) * self.r
    }

    fn check_spd(&self) -> Result<()> {
        if self.is_spd() {
            Ok(())
        } else {
            Err(Error::DegenerateForm {
                p: self.p,
                q: self.q,
                r: self.r,
            })
        }
    }

    /// Principal square root, again a commuting form.
    pub fn sqrt(&self) -> Result<CommutingForm> {
        self.check_spd()?;
        let [m1, m2, m3] = self.eigenvalues();
        Ok(Self::from_eigenvalues([m1.sqrt(), m2.sqrt(), m3.sqrt()]))
    }

    pub fn square(&self) -> CommutingForm {
        Self::new(
            self.p * self.p + self.q * self.q,
            2.0 * self.p * self.q,
            self.r * self.r,
        )
    }
}

/// Reads `(p, q, r)` off `P` if it matches the commuting pattern within `tol`.
pub fn commuting_form_of(p: &SymTensor3, tol: Option<f64>) -> Result<CommutingForm> {
    let tol = tol.unwrap_or_else(|| default_pattern_tol(p.norm()));
    let [a11, a12, a13, a22, a23, a33] = p.components();
    let residual = ((a11 - a22).powi(2) + a13 * a13 + a23 * a23).sqrt();
    if residual > tol || !residual.is_finite() {
        return Err(Error::NotCommuting { residual });
    }
    Ok(CommutingForm::new(0.5 * (a11 + a22), a12, a33))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GlideSide {
    /// `F = F_γ·diag(a, b, c)`, reproduces `B = FFᵀ`.
    Left,
    /// `F = diag(a, b, c)·F_γ`, reproduces `C = FᵀF`.
    Right,
}

/// Split of a deformation into a simple glide and a triaxial stretch.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriaxialGlide {
    pub gamma: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub side: GlideSide,
}

impl TriaxialGlide {
    pub fn deformation(&self) -> DeformationGradient {
        let glide = *simple_shear(self.gamma).as_tensor();
        let stretch = Tensor3::diag([self.a, self.b, self.c]);
        let f = match self.side {
            GlideSide::Left => glide * stretch,
            GlideSide::Right => stretch * glide,
        };
        DeformationGradient::new_unchecked(f)
    }

    /// Shear angle `arctan γ`.
    pub fn shear_angle(&self) -> f64 {
        self.gamma.atan()
    }

    /// `FFᵀ` for the left split, `FᵀF` for the right split.
    pub fn reconstruct(&self) -> SymTensor3 {
        let f = self.deformation();
        match self.side {
            GlideSide::Left => *f.left_cauchy_green(),
            GlideSide::Right => *f.right_cauchy_green(),
        }
    }
}

/// `B = F_γ·diag(a, b, c)²·F_γᵀ` with `γ = q/p`, `a = √((p²−q²)/p)`, `b = √p`, `c = √r`.
pub fn triaxial_glide_decomposition(b: &CommutingForm) -> Result<TriaxialGlide> {
    b.check_spd()?;
    let CommutingForm { p, q, r } = *b;
    Ok(TriaxialGlide {
        gamma: q / p,
        a: ((p - q) * (p + q) / p).sqrt(),
        b: p.sqrt(),
        c: r.sqrt(),
        side: GlideSide::Left,
    })
}

/// `C = F_γᵀ·diag(a, b, c)²·F_γ` with `a = √p`, `b = √((p²−q²)/p)`.
pub fn biot_triaxial_decomposition(c: &CommutingForm) -> Result<TriaxialGlide> {
    c.check_spd()?;
    let CommutingForm { p, q, r } = *c;
    Ok(TriaxialGlide {
        gamma: q / p,
        a: p.sqrt(),
        b: ((p - q) * (p + q) / p).sqrt(),
        c: r.sqrt(),
        side: GlideSide::Right,
    })
}

/// Infinitesimal pure shear strain and rotation of simple shear.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InfinitesimalShearPair {
    pub gamma: f64,
    pub strain: SymTensor3,
    pub rotation: Tensor3,
}

pub fn infinitesimal_shear(gamma: f64) -> InfinitesimalShearPair {
    let h = 0.5 * gamma;
    InfinitesimalShearPair {
        gamma,
        strain: SymTensor3::new(0.0, h, 0.0, 0.0, 0.0, 0.0),
        rotation: Tensor3::from_rows([[0.0, h, 0.0], [-h, 0.0, 0.0], [0.0, 0.0, 0.0]]),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinearizedFamily {
    Left,
    Right,
    Stretch,
    Rotation,
}

impl LinearizedFamily {
    pub const ALL: [LinearizedFamily; 4] = [Self::Left, Self::Right, Self::Stretch, Self::Rotation];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Left => "left-finite-shear",
            Self::Right => "right-finite-shear",
            Self::Stretch => "pure-shear-stretch",
            Self::Rotation => "shear-rotation",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| {
            f.name() == s
                || matches!(
                    (f, s),
                    (Self::Left, "left") | (Self::Right, "right") | (Self::Stretch, "stretch") | (Self::Rotation, "rotation")
                )
        })
    }

    pub fn evaluate(&self, alpha: f64) -> Tensor3 {
        match self {
            Self::Left => *left_finite_shear(alpha).as_tensor(),
            Self::Right => *right_finite_shear(alpha).as_tensor(),
            Self::Stretch => pure_shear_stretch(alpha).to_tensor(),
            Self::Rotation => *shear_rotation(alpha).as_tensor(),
        }
    }

    /// First-order term in `α`, written through `γ = 2α`.
    pub fn first_order(&self, alpha: f64) -> Tensor3 {
        let gamma = 2.0 * alpha;
        let pair = infinitesimal_shear(gamma);
        match self {
            // F_γ = id + ε_γ + ω_γ
            Self::Left | Self::Right => pair.strain.to_tensor() + pair.rotation,
            Self::Stretch => pair.strain.to_tensor(),
            Self::Rotation => pair.rotation,
        }
    }
}

/// `‖family(α) − id − first-order term‖`, which is `O(α²)`.
pub fn linearization_residual(alpha: f64, family: LinearizedFamily) -> f64 {
    (family.evaluate(alpha) - Tensor3::identity() - family.first_order(alpha)).norm()
}

/// Least-squares slope of `log residual` against `log α`; close to 2.
///
/// Needs at least two distinct positive `α` with nonzero residuals.
pub fn linearization_order(family: LinearizedFamily, alphas: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = alphas
        .iter()
        .map(|&a| (a, linearization_residual(a, family)))
        .filter(|&(a, r)| a > 0.0 && r > 0.0 && a.is_finite() && r.is_finite())
        .map(|(a, r)| (a.ln(), r.ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (pts.len() >= 2 && sxx > 0.0).then(|| sxy / sxx)
}
