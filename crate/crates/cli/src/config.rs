//! Run configuration: defaults, then the flat JSON file, then flags.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use fiberspec::{Basis, QuadOrderPolicy, SolverConfig64};
use serde::Deserialize;

use crate::{CliError, CliResult, GlobalArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl Format {
    pub fn parse(s: &str) -> CliResult<Self> {
        match s.trim() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            other => Err(CliError::Usage(format!("unknown format {other:?} (expected csv, json or svg)"))),
        }
    }
}

pub fn parse_basis(s: &str) -> CliResult<Basis> {
    match s {
        "angular" => Ok(Basis::AngularPolynomial),
        "legendre" => Ok(Basis::AssociatedLegendre),
        other => Err(CliError::Usage(format!("unknown basis {other:?} (expected angular or legendre)"))),
    }
}

/// Keys accepted in the configuration file. Anything else is rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub n_initial: Option<usize>,
    pub n_max: Option<usize>,
    pub rel_tol: Option<f64>,
    pub residual_tol: Option<f64>,
    pub basis: Option<String>,
    pub quad_factor: Option<usize>,
    pub quad_extra: Option<usize>,
    pub output_dir: Option<PathBuf>,
    pub formats: Option<Vec<String>>,
}

impl FileConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub solver: SolverConfig64,
    pub output_dir: PathBuf,
    pub formats: BTreeSet<Format>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            solver: SolverConfig64::default(),
            output_dir: PathBuf::from("out"),
            formats: [Format::Csv, Format::Json].into_iter().collect(),
        }
    }
}

impl RunConfig {
    pub fn resolve(args: &GlobalArgs) -> CliResult<Self> {
        let file = match &args.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        Self::merge(file, args)
    }

    pub fn merge(file: FileConfig, args: &GlobalArgs) -> CliResult<Self> {
        let mut cfg = RunConfig::default();
        let s = &mut cfg.solver;
        s.n_initial = args.n_initial.or(file.n_initial).unwrap_or(s.n_initial);
        s.n_max = args.n_max.or(file.n_max).unwrap_or(s.n_max);
        s.rel_tol = args.rel_tol.or(file.rel_tol).unwrap_or(s.rel_tol);
        s.residual_tol = args.residual_tol.or(file.residual_tol).unwrap_or(s.residual_tol);
        if let Some(b) = args.basis.as_ref().or(file.basis.as_ref()) {
            s.basis = parse_basis(b)?;
        }
        s.quad = QuadOrderPolicy {
            factor: file.quad_factor.unwrap_or(s.quad.factor),
            extra: file.quad_extra.unwrap_or(s.quad.extra),
        };
        s.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        if let Some(dir) = args.out.clone().or(file.output_dir) {
            cfg.output_dir = dir;
        }
        if let Some(list) = args.formats.as_ref().or(file.formats.as_ref()) {
            cfg.formats = list.iter().map(|f| Format::parse(f)).collect::<CliResult<_>>()?;
        }
        Ok(cfg)
    }

    pub fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }

    /// Create the output directory and return the path of `name` inside it.
    pub fn output_path(&self, name: &str) -> CliResult<PathBuf> {
        fs::create_dir_all(&self.output_dir).map_err(|e| {
            CliError::Usage(format!("cannot create output directory {}: {e}", self.output_dir.display()))
        })?;
        Ok(self.output_dir.join(name))
    }
}
