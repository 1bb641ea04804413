//! Newton solver for the stretch producing a prescribed pure shear stress.
//!
//! Any `B` whose Cauchy stress is a pure shear stress must commute with it, so the
//! search runs over commuting forms `(p, q, r)` only. The three equations are
//! `σ₁₂ = s`, `σ₁₁ = 0`, `σ₃₃ = 0`; `σ₂₂` is checked afterwards.

use serde::{Deserialize, Serialize};

use super::{classify_effects, EffectClassification, DEFAULT_EFFECT_TOL};
use crate::constitutive::{cauchy_stress_b, ConstitutiveModel};
use crate::error::{Error, Result};
use crate::kinematics::{triaxial_glide_decomposition, CommutingForm, TriaxialGlide};
use crate::tensor3::{SymTensor3, Tensor3};

const MAX_HALVINGS: usize = 40;
const FEASIBILITY_MARGIN: f64 = 1e-12;
const POLISH_STEPS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InverseOptions {
    pub max_iterations: usize,
    pub tol: f64,
    pub initial: CommutingForm,
}

impl Default for InverseOptions {
    fn default() -> Self {
        Self {
            max_iterations: 100,
            tol: 1e-10,
            initial: CommutingForm::new(1.0, 0.0, 1.0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub residual: f64,
    pub step_scale: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InverseSolveResult {
    pub b: CommutingForm,
    pub s_target: f64,
    pub s_achieved: f64,
    pub iterations: usize,
    /// Euclidean norm of `(σ₁₂ − s, σ₁₁, σ₃₃)`.
    pub residual: f64,
    /// `|σ₂₂|`, not part of the Newton system.
    pub sigma22: f64,
    pub converged: bool,
    pub stress: SymTensor3,
    pub decomposition: Option<TriaxialGlide>,
    pub classification: Option<EffectClassification>,
    pub trace: Vec<IterationRecord>,
}

struct Evaluation {
    residual: [f64; 3],
    norm: f64,
    stress: SymTensor3,
}

fn feasible(x: &CommutingForm) -> bool {
    x.p > x.q.abs() + FEASIBILITY_MARGIN && x.r > FEASIBILITY_MARGIN && x.p.is_finite() && x.q.is_finite() && x.r.is_finite()
}

fn evaluate(model: &dyn ConstitutiveModel, x: &CommutingForm, s: f64) -> Result<Evaluation> {
    let sigma = cauchy_stress_b(model, &x.to_spd()?)?;
    let residual = [sigma.get(0, 1) - s, sigma.get(0, 0), sigma.get(2, 2)];
    let norm = residual.iter().map(|v| v * v).sum::<f64>().sqrt();
    if !norm.is_finite() {
        return Err(Error::NonFinite("inverse solve residual"));
    }
    Ok(Evaluation {
        residual,
        norm,
        stress: sigma,
    })
}

fn coords(x: &CommutingForm) -> [f64; 3] {
    [x.p, x.q, x.r]
}

fn from_coords(c: [f64; 3]) -> CommutingForm {
    CommutingForm::new(c[0], c[1], c[2])
}

/// Jacobian of the residual in `(p, q, r)`; central differences, one-sided near the boundary.
fn jacobian(model: &dyn ConstitutiveModel, x: &CommutingForm, s: f64, r0: &[f64; 3]) -> Result<Tensor3> {
    let mut jac = [[0.0; 3]; 3];
    let base = coords(x);
    for k in 0..3 {
        let h = 1e-6 * base[k].abs().max(1.0);
        let shifted = |d: f64| {
            let mut c = base;
            c[k] += d;
            from_coords(c)
        };
        let (plus, minus) = (shifted(h), shifted(-h));
        let column = match (feasible(&plus), feasible(&minus)) {
            (true, true) => {
                let a = evaluate(model, &plus, s)?.residual;
                let b = evaluate(model, &minus, s)?.residual;
                [0, 1, 2].map(|i| (a[i] - b[i]) / (2.0 * h))
            }
            (true, false) => {
                let a = evaluate(model, &plus, s)?.residual;
                [0, 1, 2].map(|i| (a[i] - r0[i]) / h)
            }
            (false, true) => {
                let b = evaluate(model, &minus, s)?.residual;
                [0, 1, 2].map(|i| (r0[i] - b[i]) / h)
            }
            (false, false) => return Err(Error::DegenerateForm { p: x.p, q: x.q, r: x.r }),
        };
        for i in 0..3 {
            jac[i][k] = column[i];
        }
    }
    Ok(Tensor3::from_rows(jac))
}

fn finish(
    x: CommutingForm,
    s: f64,
    eval: &Evaluation,
    iterations: usize,
    converged: bool,
    trace: Vec<IterationRecord>,
) -> InverseSolveResult {
    let (decomposition, classification) = if converged {
        (
            triaxial_glide_decomposition(&x).ok(),
            Some(classify_effects(&x.tensor(), DEFAULT_EFFECT_TOL)),
        )
    } else {
        (None, None)
    };
    InverseSolveResult {
        b: x,
        s_target: s,
        s_achieved: eval.stress.get(0, 1),
        iterations,
        residual: eval.norm,
        sigma22: eval.stress.get(1, 1).abs(),
        converged,
        stress: eval.stress,
        decomposition,
        classification,
        trace,
    }
}

/// Damped Newton iteration for `σ̂(B) = s (e₁⊗e₂ + e₂⊗e₁)` over commuting forms `B`.
pub fn invert_pure_shear(
    model: &dyn ConstitutiveModel,
    s_target: f64,
    opts: &InverseOptions,
) -> Result<InverseSolveResult> {
    if !s_target.is_finite() {
        return Err(Error::NonFinite("target shear stress"));
    }
    let mut x = opts.initial;
    if !feasible(&x) {
        return Err(Error::DegenerateForm { p: x.p, q: x.q, r: x.r });
    }
    let tol = opts.tol * s_target.abs().max(1.0);
    let mut eval = evaluate(model, &x, s_target)?;
    let mut trace = vec![IterationRecord {
        iteration: 0,
        p: x.p,
        q: x.q,
        r: x.r,
        residual: eval.norm,
        step_scale: 0.0,
    }];
    let mut converged_at: Option<usize> = None;

    for it in 1..=opts.max_iterations {
        if eval.norm <= tol && converged_at.is_none() {
            converged_at = Some(it - 1);
        }
        if let Some(c) = converged_at {
            if eval.norm == 0.0 || it > c + POLISH_STEPS {
                break;
            }
        }
        let stalled = |x: CommutingForm, eval: &Evaluation, trace: Vec<IterationRecord>| {
            let done = converged_at.is_some();
            let result = finish(x, s_target, eval, it - 1, done, trace);
            if done {
                Ok(result)
            } else {
                Err(Error::NonConvergence {
                    best: Box::new(result),
                })
            }
        };

        let jac = jacobian(model, &x, s_target, &eval.residual)?;
        let Some(inv) = jac.inverse().filter(|m| m.is_finite()) else {
            return stalled(x, &eval, trace);
        };
        let step = inv.mul_vec(eval.residual.map(|v| -v));
        let base = coords(&x);
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..=MAX_HALVINGS {
            let cand = from_coords([0, 1, 2].map(|i| base[i] + t * step[i]));
            if feasible(&cand) {
                if let Ok(e) = evaluate(model, &cand, s_target) {
                    if e.norm < eval.norm {
                        accepted = Some((cand, e));
                        break;
                    }
                }
            }
            t *= 0.5;
        }
        let Some((cand, e)) = accepted else {
            return stalled(x, &eval, trace);
        };
        x = cand;
        eval = e;
        trace.push(IterationRecord {
            iteration: it,
            p: x.p,
            q: x.q,
            r: x.r,
            residual: eval.norm,
            step_scale: t,
        });
    }

    if eval.norm <= tol && converged_at.is_none() {
        converged_at = Some(trace.len() - 1);
    }
    let iterations = trace.len() - 1;
    let result = finish(x, s_target, &eval, iterations, converged_at.is_some(), trace);
    if result.converged {
        Ok(result)
    } else {
        Err(Error::NonConvergence {
            best: Box::new(result),
        })
    }
}

/// A spread of SPD starting forms around the identity.
pub fn default_starts() -> Vec<CommutingForm> {
    let mut starts = vec![CommutingForm::new(1.0, 0.0, 1.0)];
    for p in [0.5, 2.0] {
        for q in [-0.4, 0.4] {
            for r in [0.5, 2.0] {
                starts.push(CommutingForm::new(p, q * p, r));
            }
        }
    }
    starts
}

/// Runs the solver from several starts and returns every converged result.
///
/// Without Hill's inequality the inverse need not be unique; no root is preferred.
pub fn invert_pure_shear_multistart(
    model: &dyn ConstitutiveModel,
    s_target: f64,
    starts: &[CommutingForm],
    opts: &InverseOptions,
) -> Vec<InverseSolveResult> {
    starts
        .iter()
        .filter_map(|start| {
            let o = InverseOptions {
                initial: *start,
                ..*opts
            };
            invert_pure_shear(model, s_target, &o).ok()
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RichterRow {
    pub s: f64,
    pub det_b: f64,
    pub deviation: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RichterReport {
    pub model: String,
    pub tolerance: f64,
    pub rows: Vec<RichterRow>,
    pub pass: bool,
}

/// For models with an isochoric-volumetric split, a trace-free Cauchy stress forces
/// `det B = 1`; checks this on solver output.
pub fn richter_check(
    model: &dyn ConstitutiveModel,
    s_values: &[f64],
    opts: &InverseOptions,
) -> Result<RichterReport> {
    if !model.iso_vol_split() {
        return Err(Error::UnsupportedParameterization {
            model: model.name().to_string(),
            needed: "an isochoric-volumetric split",
        });
    }
    let tolerance = 1e-8;
    let mut rows = Vec::with_capacity(s_values.len());
    for &s in s_values {
        let res = invert_pure_shear(model, s, opts)?;
        let det_b = res.b.det();
        let deviation = (det_b - 1.0).abs();
        rows.push(RichterRow {
            s,
            det_b,
            deviation,
            pass: deviation <= tolerance,
        });
    }
    Ok(RichterReport {
        model: model.name().to_string(),
        tolerance,
        pass: rows.iter().all(|r| r.pass),
        rows,
    })
}
