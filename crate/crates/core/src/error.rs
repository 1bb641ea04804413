use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("tensor is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotSpd { min_eigenvalue: f64 },

    #[error("deformation gradient is singular or orientation reversing (det = {det:e})")]
    Singular { det: f64 },

    #[error("tensor is not a pure shear stress (pattern residual {residual:e})")]
    NotPureShear { residual: f64 },

    #[error("tensor does not commute with pure shear stress (pattern residual {residual:e})")]
    NotCommuting { residual: f64 },

    #[error("degenerate commuting form: p = {p}, q = {q}, r = {r} (need p > |q| and r > 0)")]
    DegenerateForm { p: f64, q: f64, r: f64 },

    #[error("principal stretches must be positive, got {0:?}")]
    InvalidStretch([f64; 3]),

    #[error("model `{model}` does not provide {needed}")]
    UnsupportedParameterization { model: String, needed: &'static str },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: String,
        value: f64,
        reason: &'static str,
    },

    #[error("unknown model `{0}`")]
    UnknownModel(String),

    #[error("model `{model}` does not accept parameter `{name}`")]
    UnknownParameter { model: String, name: String },

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("inverse solve did not converge after {} iterations (residual {:e})", best.iterations, best.residual)]
    NonConvergence {
        best: Box<crate::analysis::InverseSolveResult>,
    },

    #[error("invalid model file: {0}")]
    ModelFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
