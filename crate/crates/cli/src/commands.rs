use std::path::Path;

use serde::Serialize;

use shearlab::analysis::{
    audit, default_starts, invert_pure_shear, invert_pure_shear_multistart, shear_monotonicity,
    AuditOptions, InverseOptions, InverseSolveResult,
};
use shearlab::constitutive::catalogue;
use shearlab::kinematics::{linearization_order, linearization_residual, LinearizedFamily};
use shearlab::report::{fmt_f64, CsvTable};
use shearlab::Error;

use crate::model::{resolve, to_json, write_output};
use crate::sweep::grid;
use crate::{AuditArgs, CliError, Format, InvertArgs, MonotonicityArgs, Outcome};

/// Accepted distance of the remainder order from 2.
const ORDER_TOL: f64 = 0.05;

pub fn cmd_audit(args: &AuditArgs) -> Outcome {
    let (_, model) = resolve(&args.model)?;
    let report = audit(model.as_ref(), &AuditOptions::default().with_seed(args.seed))?;
    write_output(&to_json(&report)?, args.out.as_deref())?;
    Ok(report.pass)
}

#[derive(Serialize)]
struct MultistartReport {
    model: String,
    s: f64,
    starts: usize,
    roots: Vec<InverseSolveResult>,
}

pub fn cmd_invert(args: &InvertArgs) -> Outcome {
    if !args.s.is_finite() {
        return Err(CliError::Usage(format!("--s must be finite, got {}", args.s)));
    }
    if !(args.tol.is_finite() && args.tol > 0.0) || args.max_iterations == 0 {
        return Err(CliError::Usage("--tol must be positive and --max-iterations nonzero".into()));
    }
    let (_, model) = resolve(&args.model)?;
    let opts = InverseOptions {
        max_iterations: args.max_iterations,
        tol: args.tol,
        ..Default::default()
    };
    if args.multistart {
        let starts = default_starts();
        let roots = invert_pure_shear_multistart(model.as_ref(), args.s, &starts, &opts);
        let found = !roots.is_empty();
        let report = MultistartReport {
            model: model.name().to_string(),
            s: args.s,
            starts: starts.len(),
            roots,
        };
        write_output(&to_json(&report)?, args.out.as_deref())?;
        return Ok(found);
    }
    match invert_pure_shear(model.as_ref(), args.s, &opts) {
        Ok(res) => {
            write_output(&to_json(&res)?, args.out.as_deref())?;
            Ok(true)
        }
        Err(Error::NonConvergence { best }) => {
            write_output(&to_json(&best)?, args.out.as_deref())?;
            eprintln!("shearlab: inverse solve did not converge (residual {:e})", best.residual);
            Ok(false)
        }
        Err(e) => Err(e.into()),
    }
}

pub fn cmd_monotonicity(args: &MonotonicityArgs) -> Outcome {
    let gammas = grid(&args.range, (0.0, 2.0, 41))?;
    let (_, model) = resolve(&args.model)?;
    let report = shear_monotonicity(model.as_ref(), &gammas)?;
    write_output(&to_json(&report)?, args.out.as_deref())?;
    Ok(report.monotone && report.identity_pass)
}

#[derive(Serialize)]
struct LinearizeRow {
    alpha: f64,
    residual: f64,
}

#[derive(Serialize)]
struct LinearizeFamilyReport {
    family: &'static str,
    rows: Vec<LinearizeRow>,
    slope: f64,
    pass: bool,
}

#[derive(Serialize)]
struct LinearizeReport {
    expected_slope: f64,
    tolerance: f64,
    families: Vec<LinearizeFamilyReport>,
    pass: bool,
}

pub fn cmd_linearize(families: &[LinearizedFamily], alphas: &[f64], out: Option<&Path>) -> Outcome {
    if alphas.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
        return Err(CliError::Usage("--alphas must be positive numbers".into()));
    }
    let mut reports = Vec::with_capacity(families.len());
    for &family in families {
        let slope = linearization_order(family, alphas)
            .ok_or_else(|| CliError::Usage("--alphas needs at least two distinct values".into()))?;
        reports.push(LinearizeFamilyReport {
            family: family.name(),
            rows: alphas
                .iter()
                .map(|&alpha| LinearizeRow {
                    alpha,
                    residual: linearization_residual(alpha, family),
                })
                .collect(),
            slope,
            pass: (slope - 2.0).abs() <= ORDER_TOL,
        });
    }
    let pass = reports.iter().all(|r| r.pass);
    let report = LinearizeReport {
        expected_slope: 2.0,
        tolerance: ORDER_TOL,
        families: reports,
        pass,
    };
    write_output(&to_json(&report)?, out)?;
    Ok(pass)
}

pub fn cmd_models(format: Format, out: Option<&Path>) -> Outcome {
    let entries = catalogue();
    let text = match format {
        Format::Json => to_json(&entries)?,
        Format::Csv => {
            let mut t = CsvTable::new(["model", "param", "default", "description"]);
            for e in &entries {
                for p in &e.params {
                    t.push(vec![
                        e.name.to_string(),
                        p.name.to_string(),
                        p.default.map(fmt_f64).unwrap_or_default(),
                        format!("\"{}\"", p.description.replace('"', "\"\"")),
                    ]);
                }
            }
            t.render()
        }
    };
    write_output(&text, out)?;
    Ok(true)
}
