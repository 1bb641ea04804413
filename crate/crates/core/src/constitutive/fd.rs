use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Domain of the differentiated function, used to keep stencils admissible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FdKind {
    /// Principal stretches; every coordinate must stay positive.
    Stretch,
    /// Principal invariants `(I₁, I₂, I₃)`; `I₃` must stay positive.
    Invariant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct FdOptions {
    pub richardson: bool,
}

/// Step used for coordinate `x`.
pub fn fd_step(x: f64) -> f64 {
    1e-6_f64.max(1e-6 * x.abs())
}

/// Central-difference gradient of `f` at `x`.
pub fn fd_gradient(
    f: impl Fn([f64; 3]) -> f64,
    x: [f64; 3],
    kind: FdKind,
    opts: FdOptions,
) -> Result<[f64; 3]> {
    let mut g = [0.0; 3];
    for i in 0..3 {
        let h = fd_step(x[i]);
        let positive = match kind {
            FdKind::Stretch => true,
            FdKind::Invariant => i == 2,
        };
        if positive && x[i] - h <= 0.0 {
            return Err(match kind {
                FdKind::Stretch => Error::InvalidStretch(x),
                FdKind::Invariant => Error::NonFinite("finite difference stencil"),
            });
        }
        let central = |h: f64| {
            let mut xp = x;
            let mut xm = x;
            xp[i] += h;
            xm[i] -= h;
            (f(xp) - f(xm)) / (2.0 * h)
        };
        let d = if opts.richardson {
            (4.0 * central(0.5 * h) - central(h)) / 3.0
        } else {
            central(h)
        };
        if !d.is_finite() {
            return Err(Error::NonFinite("finite difference gradient"));
        }
        g[i] = d;
    }
    Ok(g)
}

/// Central second derivative of a scalar function of one variable.
pub fn fd_second_derivative(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}

/// Central first derivative of a scalar function of one variable.
pub fn fd_derivative(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}
