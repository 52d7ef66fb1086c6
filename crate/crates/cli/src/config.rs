//! Run configuration: a TOML file with a `[potential]` section, overridable
//! from the command line.
//!
//! ```toml
//! ell = [0, 1, 2]
//! methods = ["all"]
//! format = "csv"
//! digits = 6
//!
//! [potential]
//! kind = "stis"
//! R = 1.0
//! alpha = 5.0
//!
//! [tolerances]
//! rel_tol = 1e-10
//! ```

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use gcrit::limits::Method;
use gcrit::report::{Format, DEFAULT_DIGITS};
use gcrit::{Error, Potential, PotentialKind, QuadratureConfig};
use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub ell: Option<EllSpec>,
    pub methods: Option<Vec<String>>,
    pub format: Option<String>,
    pub digits: Option<usize>,
    pub potential: Option<PotentialSection>,
    pub tolerances: Option<Tolerances>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum EllSpec {
    One(u32),
    Many(Vec<u32>),
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialSection {
    pub kind: Option<String>,
    #[serde(rename = "R")]
    pub scale: Option<f64>,
    pub alpha: Option<f64>,
    pub width: Option<f64>,
    /// Two-column CSV of `(r, v)`; relative paths resolve against the config file.
    pub grid: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub max_subdivisions: Option<usize>,
    pub max_radius: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = fs::read_to_string(path)
            .map_err(|e| config_error("config", format!("cannot read {}: {e}", path.display())))?;
        let mut cfg: FileConfig = toml::from_str(&text).map_err(|e| config_error("config", e.message().to_string()))?;
        if let Some(grid) = cfg.potential.as_mut().and_then(|p| p.grid.as_mut()) {
            if grid.is_relative() {
                if let Some(dir) = path.parent() {
                    *grid = dir.join(&*grid);
                }
            }
        }
        Ok(cfg)
    }
}

pub fn config_error(field: &str, message: impl Into<String>) -> Error {
    Error::Config { field: field.to_string(), message: message.into() }
}

impl PotentialSection {
    /// Fields set in `other` replace those set here.
    pub fn overlay(mut self, other: PotentialSection) -> Self {
        self.kind = other.kind.or(self.kind);
        self.scale = other.scale.or(self.scale);
        self.alpha = other.alpha.or(self.alpha);
        self.width = other.width.or(self.width);
        self.grid = other.grid.or(self.grid);
        self
    }

    pub fn build(&self) -> Result<Potential, Error> {
        let kind = PotentialKind::from_str(self.kind.as_deref().ok_or_else(|| config_error("kind", "missing"))?)?;
        let scale = self.scale.unwrap_or(1.0);
        let reject = |field: &str, present: bool| {
            if present {
                Err(config_error(field, format!("not a parameter of the {kind} potential")))
            } else {
                Ok(())
            }
        };
        if kind != PotentialKind::Stis {
            reject("alpha", self.alpha.is_some())?;
        }
        if kind != PotentialKind::Shell {
            reject("width", self.width.is_some())?;
        }
        if kind != PotentialKind::Tabulated {
            reject("grid", self.grid.is_some())?;
        }
        match kind {
            PotentialKind::SquareWell => Potential::square_well(scale),
            PotentialKind::Exponential => Potential::exponential(scale),
            PotentialKind::Yukawa => Potential::yukawa(scale),
            PotentialKind::Stis => {
                Potential::stis(scale, self.alpha.ok_or_else(|| config_error("alpha", "required for stis"))?)
            }
            PotentialKind::Shell => {
                Potential::shell(scale, self.width.ok_or_else(|| config_error("width", "required for shell"))?)
            }
            PotentialKind::Tabulated => {
                reject("R", self.scale.is_some())?;
                let path = self.grid.as_ref().ok_or_else(|| config_error("grid", "required for tabulated"))?;
                let file = fs::File::open(path)
                    .map_err(|e| config_error("grid", format!("cannot open {}: {e}", path.display())))?;
                Potential::tabulated_from_csv(file)
            }
        }
    }
}

impl Tolerances {
    pub fn apply(&self, mut q: QuadratureConfig) -> Result<QuadratureConfig, Error> {
        if let Some(x) = self.rel_tol {
            q.rel_tol = x;
        }
        if let Some(x) = self.abs_tol {
            q.abs_tol = x;
        }
        if let Some(x) = self.max_subdivisions {
            q.max_subdivisions = x;
        }
        if let Some(x) = self.max_radius {
            q.max_radius = x;
        }
        q.validate()?;
        Ok(q)
    }
}

/// `"3"`, `"0,2,5"` or the inclusive range `"0..5"`.
pub fn parse_ell_list(s: &str) -> Result<Vec<u32>, Error> {
    let bad = || config_error("ell", format!("expected a list like 0,1,2 or a range like 0..5, got `{s}`"));
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: u32 = a.trim().parse().map_err(|_| bad())?;
            let b: u32 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

/// What a `compute` run can report per `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Bound(Method),
    Shooting,
    Nystrom,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Bound(m) => m.name(),
            Quantity::Shooting => "shooting",
            Quantity::Nystrom => "nystrom",
        }
    }
}

pub fn parse_methods<S: AsRef<str>>(names: &[S], pot: &Potential) -> Result<Vec<Quantity>, Error> {
    let mut out = Vec::new();
    for name in names {
        let name = name.as_ref().trim();
        match name.to_ascii_lowercase().as_str() {
            "all" => out.extend(Method::ALL.into_iter().filter(|m| m.applies_to(pot)).map(Quantity::Bound)),
            "shooting" => out.push(Quantity::Shooting),
            "nystrom" => out.push(Quantity::Nystrom),
            _ => {
                let m = Method::from_str(name)?;
                if !m.applies_to(pot) {
                    return Err(config_error("methods", format!("{m} does not apply to the {} potential", pot.kind())));
                }
                out.push(Quantity::Bound(m));
            }
        }
    }
    if out.is_empty() {
        return Err(config_error("methods", "at least one method is required"));
    }
    let mut seen = Vec::new();
    out.retain(|q| {
        let fresh = !seen.contains(q);
        seen.push(*q);
        fresh
    });
    Ok(out)
}

/// Fully resolved settings for one run.
#[derive(Debug)]
pub struct RunConfig {
    pub potential: Potential,
    pub ells: Vec<u32>,
    pub quantities: Vec<Quantity>,
    pub format: Format,
    pub digits: usize,
    pub quadrature: QuadratureConfig,
}

pub struct Overrides {
    pub potential: PotentialSection,
    pub ell: Option<String>,
    pub methods: Option<String>,
    pub format: Option<String>,
    pub digits: Option<usize>,
}

impl RunConfig {
    pub fn resolve(file: FileConfig, cli: Overrides, base: QuadratureConfig) -> Result<Self, Error> {
        let section = file.potential.unwrap_or_default().overlay(cli.potential);
        let potential = section.build()?;
        let ells = match (cli.ell, file.ell) {
            (Some(s), _) => parse_ell_list(&s)?,
            (None, Some(EllSpec::One(l))) => vec![l],
            (None, Some(EllSpec::Many(v))) if !v.is_empty() => v,
            (None, Some(EllSpec::Many(_))) => return Err(config_error("ell", "at least one l is required")),
            (None, None) => vec![0],
        };
        let method_names: Vec<String> = match (cli.methods, file.methods) {
            (Some(s), _) => s.split(',').map(str::to_string).collect(),
            (None, Some(v)) => v,
            (None, None) => vec!["all".into()],
        };
        let quantities = parse_methods(&method_names, &potential)?;
        let format = match cli.format.or(file.format) {
            Some(f) => f.parse()?,
            None => Format::Csv,
        };
        let digits = cli.digits.or(file.digits).unwrap_or(DEFAULT_DIGITS);
        if !(1..=17).contains(&digits) {
            return Err(config_error("digits", format!("must be between 1 and 17, got {digits}")));
        }
        let quadrature = match &file.tolerances {
            Some(t) => t.apply(base)?,
            None => base,
        };
        Ok(RunConfig { potential, ells, quantities, format, digits, quadrature })
    }
}
