//! Experiment configuration: a TOML file with one section per subcommand and
//! a handful of shared keys.
//!
//! The seed is mandatory (either in the file or via `--seed`); there is no
//! wall-clock fallback, so every run is reproducible by construction. All
//! primes are validated up front, and `ell` values feeding the even-exponent
//! bound must be even.

use std::path::{Path, PathBuf};

use congsum_core::congruence::SetFamily;
use congsum_core::field::is_prime;
use congsum_core::{FieldCtx, MSet, O1Convention};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize, Default, Clone)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub seed: Option<u64>,
    pub o1_constant: Option<f64>,
    pub o1_exponent: Option<f64>,
    pub jobs: Option<usize>,
    pub out: Option<PathBuf>,
    pub jcount: Option<JcountConfig>,
    pub jsweep: Option<JsweepConfig>,
    pub lattice: Option<LatticeConfig>,
    pub weil: Option<WeilConfig>,
    pub kloosterman: Option<KloostermanConfig>,
    pub bilinear: Option<BilinearConfig>,
    pub trilinear: Option<TrilinearConfig>,
    pub verify: Option<VerifyConfig>,
}

/// A set description: either explicit elements or one of the generated
/// families.
#[derive(Debug, Deserialize, Clone)]
#[serde(deny_unknown_fields)]
pub struct SetSpec {
    /// `explicit`, `interval`, `random`, `quadratic_residues` or `geometric`.
    pub family: String,
    pub elements: Option<Vec<u64>>,
    pub start: Option<u64>,
    pub len: Option<u64>,
    pub size: Option<u64>,
    pub step: Option<u64>,
}

impl SetSpec {
    fn missing(&self, key: &str) -> CliError {
        CliError::Config(format!(
            "set family '{}' needs the '{key}' key",
            self.family
        ))
    }

    /// The generated-family form; explicit sets are rejected here.
    pub fn to_family(&self) -> Result<SetFamily, CliError> {
        match self.family.as_str() {
            "interval" => Ok(SetFamily::Interval {
                start: self.start.ok_or_else(|| self.missing("start"))?,
                len: self.len.ok_or_else(|| self.missing("len"))?,
            }),
            "random" => Ok(SetFamily::Random {
                size: self.size.ok_or_else(|| self.missing("size"))?,
            }),
            "quadratic_residues" => Ok(SetFamily::QuadraticResidues),
            "geometric" => Ok(SetFamily::Geometric {
                step: self.step.unwrap_or(1),
                size: self.size.ok_or_else(|| self.missing("size"))?,
            }),
            "explicit" => Err(CliError::Config(
                "explicit sets are only supported by the jcount subcommand".into(),
            )),
            other => Err(CliError::Config(format!("unknown set family '{other}'"))),
        }
    }

    pub fn build(&self, ctx: &FieldCtx, seed: u64) -> Result<MSet, CliError> {
        if self.family == "explicit" {
            let elements = self
                .elements
                .clone()
                .ok_or_else(|| self.missing("elements"))?;
            return MSet::new(ctx.prime(), elements)
                .map_err(|e| CliError::Config(e.to_string()));
        }
        let family = self.to_family()?;
        congsum_core::congruence::make_set(ctx, &family, seed)
            .map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn label(&self) -> String {
        match self.family.as_str() {
            "explicit" => format!(
                "explicit(n={})",
                self.elements.as_ref().map_or(0, Vec::len)
            ),
            _ => self
                .to_family()
                .map(|f| f.label())
                .unwrap_or_else(|_| self.family.clone()),
        }
    }
}

#[derive(Debug, Deserialize, Clone)]
#[serde(deny_unknown_fields)]
pub struct JcountConfig {
    pub p: u64,
    pub h: u64,
    pub shift: Option<u64>,
    pub set: SetSpec,
}

#[derive(Debug, Deserialize, Clone)]
#[serde(deny_unknown_fields)]
pub struct JsweepConfig {
    pub primes: Vec<u64>,
    pub h_values: Vec<u64>,
    pub sets: Vec<SetSpec>,
    pub ell: Option<u32>,
}

#[derive(Debug, Deserialize, Clone)]
#[serde(deny_unknown_fields)]
pub struct LatticeConfig {
    pub primes: Vec<u64>,
    pub basis_samples: usize,
    pub htok_h: Vec<u64>,
    pub htok_k: Vec<u64>,
    pub htok_set_size: u64,
}

#[derive(Debug, Deserialize, Clone)]
#[serde(deny_unknown_fields)]
pub struct WeilConfig {
    pub primes: Vec<u64>,
    pub samples_per_prime: usize,
    pub max_total_degree: usize,
}

#[derive(Debug, Deserialize, Clone)]
#[serde(deny_unknown_fields)]
pub struct KloostermanConfig {
    pub primes: Vec<u64>,
    pub r_values: Vec<u32>,
    /// `direct` (default) or `fft`.
    pub method: Option<String>,
}

#[derive(Debug, Deserialize, Clone)]
#[serde(deny_unknown_fields)]
pub struct BilinearConfig {
    pub primes: Vec<u64>,
    pub r: u32,
    pub set_sizes: Vec<u64>,
    pub n_lengths: Vec<u64>,
    pub n_starts: Vec<u64>,
    pub ells: Vec<u32>,
    /// `unit` or `random`.
    pub alpha: Option<String>,
    /// `none`, `unit` or `random`.
    pub beta: Option<String>,
}

#[derive(Debug, Deserialize, Clone)]
#[serde(deny_unknown_fields)]
pub struct TrilinearConfig {
    pub primes: Vec<u64>,
    pub h_values: Vec<u64>,
    pub k_sizes: Vec<u64>,
    pub m_sizes: Vec<u64>,
    pub ell: u32,
    pub eps: Option<f64>,
    /// `quadratic` (default) or a character index.
    pub chi: Option<toml::Value>,
}

#[derive(Debug, Deserialize, Clone, Default)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Config(format!("cannot read {}: {e}", path.display()))
        })?;
        let file: ConfigFile = toml::from_str(&text).map_err(|e| {
            CliError::Config(format!("{}: {e}", path.display()))
        })?;
        file.validate()?;
        Ok(file)
    }

    fn validate(&self) -> Result<(), CliError> {
        let mut primes: Vec<u64> = Vec::new();
        if let Some(c) = &self.jcount {
            primes.push(c.p);
        }
        for list in [
            self.jsweep.as_ref().map(|c| &c.primes),
            self.lattice.as_ref().map(|c| &c.primes),
            self.weil.as_ref().map(|c| &c.primes),
            self.kloosterman.as_ref().map(|c| &c.primes),
            self.bilinear.as_ref().map(|c| &c.primes),
            self.trilinear.as_ref().map(|c| &c.primes),
        ]
        .into_iter()
        .flatten()
        {
            primes.extend(list);
        }
        for &p in &primes {
            if p < 3 {
                return Err(CliError::Config(format!("modulus {p} is below 3")));
            }
            if !is_prime(p) {
                return Err(CliError::Config(format!("{p} is not prime")));
            }
        }
        if let Some(b) = &self.bilinear {
            for &ell in &b.ells {
                if ell == 0 || ell % 2 != 0 {
                    return Err(CliError::Config(format!(
                        "bilinear ells must be positive even integers, got {ell}"
                    )));
                }
            }
            for mode in [b.alpha.as_deref(), b.beta.as_deref()].into_iter().flatten() {
                if !["unit", "random", "none"].contains(&mode) {
                    return Err(CliError::Config(format!("unknown weight mode '{mode}'")));
                }
            }
        }
        Ok(())
    }
}

/// Fully resolved run parameters after merging CLI flags, the config file
/// and the environment.
pub struct Resolved {
    pub seed: u64,
    pub o1: O1Convention,
    pub jobs: usize,
    pub out: Option<PathBuf>,
    pub cache: Option<PathBuf>,
    pub file: ConfigFile,
}

pub fn resolve(file: ConfigFile, args: &crate::RunArgs) -> Result<Resolved, CliError> {
    let seed = args.seed.or(file.seed).ok_or_else(|| {
        CliError::Config("a seed is mandatory: set `seed` in the config or pass --seed".into())
    })?;
    let env_jobs = std::env::var("CONGSUM_JOBS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok());
    let jobs = args
        .jobs
        .or(file.jobs)
        .or(env_jobs)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
        .max(1);
    let o1 = O1Convention::new(
        file.o1_constant.unwrap_or(1.0),
        file.o1_exponent.unwrap_or(1.0),
    );
    Ok(Resolved {
        seed,
        o1,
        jobs,
        out: args.out.clone().or_else(|| file.out.clone()),
        cache: args.cache.clone(),
        file,
    })
}
