use std::path::Path;

use shearlab::constitutive::{ConstitutiveModel, ModelSpec};

use crate::{CliError, ModelArgs};

fn parse_param(text: &str) -> Result<(String, f64), CliError> {
    let (k, v) = text
        .split_once('=')
        .ok_or_else(|| CliError::Usage(format!("--param expects name=value, got `{text}`")))?;
    let value: f64 = v
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("--param `{k}`: `{v}` is not a number")))?;
    Ok((k.trim().to_string(), value))
}

/// Reads a model file when the argument names an existing file, otherwise treats it as a
/// catalogue name. `--param` values override the file's.
pub fn resolve(args: &ModelArgs) -> Result<(ModelSpec, Box<dyn ConstitutiveModel>), CliError> {
    let source = match (&args.model_pos, &args.model_flag) {
        (Some(_), Some(_)) => return Err(CliError::Usage("give the model once".into())),
        (Some(m), None) | (None, Some(m)) => m,
        (None, None) => return Err(CliError::Usage("a model file or name is required".into())),
    };
    let path = Path::new(source);
    let mut spec = if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Model(shearlab::Error::ModelFile(format!("{source}: {e}"))))?;
        ModelSpec::from_json(&text)?
    } else if source.ends_with(".json") {
        return Err(CliError::Model(shearlab::Error::ModelFile(format!("{source}: no such file"))));
    } else {
        ModelSpec::new(source.as_str())
    };
    for p in &args.params {
        let (k, v) = parse_param(p)?;
        spec.params.insert(k, v);
    }
    let model = spec.build()?;
    Ok((spec, model))
}

pub fn write_output(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

pub fn to_json<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}
