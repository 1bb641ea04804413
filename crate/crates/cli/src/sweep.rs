use rayon::prelude::*;
use serde::Serialize;

use shearlab::analysis::{classify_effects, is_pure_shear_stress};
use shearlab::constitutive::{cauchy_stress, ConstitutiveModel};
use shearlab::kinematics::{left_finite_shear, pure_shear_stretch, right_finite_shear, simple_shear};
use shearlab::report::{fmt_f64, CsvTable};
use shearlab::DeformationGradient;

use crate::model::{resolve, to_json, write_output};
use crate::{CliError, Family, Format, Outcome, RangeArgs, SweepArgs};

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::SimpleShear => "simple-shear",
            Family::LeftFiniteShear => "left-finite-shear",
            Family::RightFiniteShear => "right-finite-shear",
            Family::PureShearStretch => "pure-shear-stretch",
        }
    }

    /// `γ` for simple shear, `α` otherwise.
    pub fn deformation(&self, x: f64) -> Result<DeformationGradient, CliError> {
        Ok(match self {
            Family::SimpleShear => simple_shear(x),
            Family::LeftFiniteShear => left_finite_shear(x),
            Family::RightFiniteShear => right_finite_shear(x),
            Family::PureShearStretch => DeformationGradient::try_new(pure_shear_stretch(x).to_tensor())?,
        })
    }
}

/// Grid of `steps` points from `min` to `max` inclusive.
pub fn grid(range: &RangeArgs, defaults: (f64, f64, usize)) -> Result<Vec<f64>, CliError> {
    let min = range.min.unwrap_or(defaults.0);
    let max = range.max.unwrap_or(defaults.1);
    let steps = range.steps.unwrap_or(defaults.2);
    if steps < 2 {
        return Err(CliError::Usage(format!("--steps must be at least 2, got {steps}")));
    }
    if !(min.is_finite() && max.is_finite()) || min >= max {
        return Err(CliError::Usage(format!("need finite --min < --max, got {min} and {max}")));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| if i + 1 == steps { max } else { min + (max - min) * i as f64 / last })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub param: f64,
    pub f: [f64; 9],
    /// `σ₁₁, σ₁₂, σ₁₃, σ₂₂, σ₂₃, σ₃₃`.
    pub sigma: [f64; 6],
    pub pure: bool,
    pub s: f64,
    pub residual: f64,
    pub b11: f64,
    pub det_b: f64,
    pub b33: f64,
    pub poynting: &'static str,
    pub kelvin: bool,
    pub planar: bool,
}

#[derive(Serialize)]
struct SweepReport<'a> {
    model: &'a str,
    parameters: Vec<(String, f64)>,
    family: &'static str,
    tol: f64,
    rows: &'a [SweepRow],
}

const HEADER: [&str; 25] = [
    "param", "F11", "F12", "F13", "F21", "F22", "F23", "F31", "F32", "F33", "sigma11", "sigma12",
    "sigma13", "sigma22", "sigma23", "sigma33", "pure", "s", "residual", "B11", "detB", "B33",
    "poynting", "kelvin", "planar",
];

pub fn sweep_row(
    model: &dyn ConstitutiveModel,
    family: Family,
    x: f64,
    tol: f64,
) -> Result<SweepRow, CliError> {
    let f = family.deformation(x)?;
    let sigma = cauchy_stress(model, &f)?;
    let purity = is_pure_shear_stress(&sigma, tol);
    let effects = classify_effects(f.left_cauchy_green().as_sym(), tol);
    let rows = f.rows();
    Ok(SweepRow {
        param: x,
        f: [
            rows[0][0], rows[0][1], rows[0][2], rows[1][0], rows[1][1], rows[1][2], rows[2][0], rows[2][1], rows[2][2],
        ],
        sigma: sigma.components(),
        pure: purity.is_pure_shear,
        s: purity.s,
        residual: purity.residual,
        b11: effects.b11,
        det_b: effects.det_b,
        b33: effects.b33,
        poynting: effects.poynting.as_str(),
        kelvin: effects.kelvin,
        planar: effects.planar,
    })
}

pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut table = CsvTable::new(HEADER);
    for r in rows {
        let mut cells = vec![fmt_f64(r.param)];
        cells.extend(r.f.iter().map(|&v| fmt_f64(v)));
        cells.extend(r.sigma.iter().map(|&v| fmt_f64(v)));
        cells.push(r.pure.to_string());
        cells.extend([r.s, r.residual, r.b11, r.det_b, r.b33].map(fmt_f64));
        cells.push(r.poynting.to_string());
        cells.push(r.kelvin.to_string());
        cells.push(r.planar.to_string());
        table.push(cells);
    }
    table.render()
}

pub fn cmd_sweep(args: &SweepArgs) -> Outcome {
    let params = grid(&args.range, (-1.0, 1.0, 21))?;
    if !(args.tol.is_finite() && args.tol >= 0.0) {
        return Err(CliError::Usage(format!("--tol must be a non-negative number, got {}", args.tol)));
    }
    let (_, model) = resolve(&args.model)?;
    // collect keeps parameter order regardless of scheduling
    let rows: Vec<SweepRow> = params
        .par_iter()
        .map(|&x| sweep_row(model.as_ref(), args.family, x, args.tol))
        .collect::<Result<_, _>>()?;
    let text = match args.format {
        Format::Csv => render_csv(&rows),
        Format::Json => to_json(&SweepReport {
            model: model.name(),
            parameters: model.parameters(),
            family: args.family.name(),
            tol: args.tol,
            rows: &rows,
        })?,
    };
    write_output(&text, args.out.as_deref())?;
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use shearlab::constitutive::Hencky;

    fn range(min: f64, max: f64, steps: usize) -> RangeArgs {
        RangeArgs {
            min: Some(min),
            max: Some(max),
            steps: Some(steps),
        }
    }

    #[test]
    fn grid_validation() {
        assert_eq!(grid(&range(-1.0, 1.0, 3), (0.0, 1.0, 2)).unwrap(), vec![-1.0, 0.0, 1.0]);
        assert!(grid(&range(0.0, 1.0, 1), (0.0, 1.0, 2)).is_err());
        assert!(grid(&range(1.0, 1.0, 5), (0.0, 1.0, 2)).is_err());
        assert!(grid(&range(f64::NAN, 1.0, 5), (0.0, 1.0, 2)).is_err());
    }

    #[test]
    fn hencky_pure_shear_row() {
        let m = Hencky::new(1.0, 1.0).unwrap();
        let r = sweep_row(&m, Family::PureShearStretch, 0.3, 1e-8).unwrap();
        assert!(r.pure && (r.s - 0.6).abs() < 1e-12);
        assert_eq!(r.f[0], 0.3f64.cosh());
        let csv = render_csv(&[r]);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("# shearlab-csv v1"));
        assert_eq!(lines.next().unwrap().split(',').count(), 25);
        assert_eq!(lines.next().unwrap().split(',').count(), 25);
    }
}
