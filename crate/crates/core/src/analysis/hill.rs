//! Sampled check of Hill's strict inequality
//! `⟨τ(V₁) − τ(V₂), log V₁ − log V₂⟩ > 0`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constitutive::{kirchhoff_stress, linear_cauchy, ConstitutiveModel};
use crate::error::Result;
use crate::tensor3::{sym_exp, SymTensor3};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HillOptions {
    pub pairs: usize,
    pub seed: u64,
    /// Entries of `log V` are drawn from `[−scale, scale]`.
    pub scale: f64,
}

impl Default for HillOptions {
    fn default() -> Self {
        Self {
            pairs: 1000,
            seed: 0,
            scale: 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HillProbe {
    pub pairs: usize,
    pub seed: u64,
    pub min: f64,
    /// Minimum of the inner product divided by `‖log V₁ − log V₂‖²`.
    pub min_normalized: f64,
    /// Log strains of the minimizing pair.
    pub worst_pair: Option<(SymTensor3, SymTensor3)>,
    pub violated: bool,
}

fn random_log_strain(rng: &mut ChaCha8Rng, scale: f64) -> SymTensor3 {
    let mut e = [0.0; 6];
    for v in e.iter_mut() {
        *v = rng.gen_range(-scale..=scale);
    }
    SymTensor3::new(e[0], e[1], e[2], e[3], e[4], e[5])
}

/// Probes a Kirchhoff map given as a function of the log strain `X = log V`.
pub fn hill_probe_map(
    tau: impl Fn(&SymTensor3) -> Result<SymTensor3>,
    opts: &HillOptions,
) -> Result<HillProbe> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut min = f64::INFINITY;
    let mut min_normalized = f64::INFINITY;
    let mut worst_pair = None;
    let mut drawn = 0;
    while drawn < opts.pairs {
        let x1 = random_log_strain(&mut rng, opts.scale);
        let x2 = random_log_strain(&mut rng, opts.scale);
        let dx = x1 - x2;
        let dist2 = dx.inner(&dx);
        if dist2 == 0.0 {
            continue;
        }
        drawn += 1;
        let value = (tau(&x1)? - tau(&x2)?).inner(&dx);
        if value < min {
            min = value;
            worst_pair = Some((x1, x2));
        }
        min_normalized = min_normalized.min(value / dist2);
    }
    Ok(HillProbe {
        pairs: opts.pairs,
        seed: opts.seed,
        min,
        min_normalized,
        violated: min <= 0.0,
        worst_pair,
    })
}

/// Probes the Kirchhoff stress of `model` on `V = exp X`.
pub fn hill_monotonicity_probe(model: &dyn ConstitutiveModel, opts: &HillOptions) -> Result<HillProbe> {
    hill_probe_map(|x| kirchhoff_stress(model, &sym_exp(x)), opts)
}

/// Linear surrogate `τ(X) = 2μ dev X + κ tr(X) id`.
pub fn linear_kirchhoff(mu: f64, kappa: f64) -> impl Fn(&SymTensor3) -> Result<SymTensor3> {
    move |x| Ok(linear_cauchy(x, mu, kappa))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constitutive::{Hencky, ValanisLandel};

    #[test]
    fn hencky_is_strictly_monotone() {
        let p = hill_monotonicity_probe(&Hencky::new(1.0, 1.0).unwrap(), &HillOptions::default()).unwrap();
        assert!(!p.violated && p.min > 0.0);
        // τ = 2μX + Λ tr(X) id, so the normalized value is at least 2μ
        assert!(p.min_normalized >= 2.0 - 1e-9);
    }

    #[test]
    fn linear_surrogate_small_strain() {
        let opts = HillOptions {
            scale: 1e-3,
            ..Default::default()
        };
        let p = hill_probe_map(linear_kirchhoff(1.0, 2.0), &opts).unwrap();
        assert!(!p.violated && p.min > 0.0);
    }

    #[test]
    fn deterministic_under_seed() {
        let m = ValanisLandel::becker_energy(1.0).unwrap();
        let opts = HillOptions {
            pairs: 50,
            seed: 9,
            scale: 0.5,
        };
        assert_eq!(
            hill_monotonicity_probe(&m, &opts).unwrap(),
            hill_monotonicity_probe(&m, &opts).unwrap()
        );
    }
}
