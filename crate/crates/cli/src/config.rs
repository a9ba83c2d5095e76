//! Run configuration: command-line flags merged over an optional
//! `key = value` file with one `[section]` per command.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use qhm_core::invariance::catalog_entry;
use qhm_core::{Complex64, FamilyParams};
use serde::Serialize;

/// Overrides the directory relative output paths are resolved against.
pub const OUTPUT_DIR_ENV: &str = "QHM_OUTPUT_DIR";

pub const MIN_TOLERANCE: f64 = 1e-14;
pub const MAX_TOLERANCE: f64 = 1e-2;
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Trajectory,
    Verify,
    Transition,
    Contour,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Trajectory => "trajectory",
            Command::Verify => "verify",
            Command::Transition => "transition",
            Command::Contour => "contour",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => bail!("unknown format '{other}' (expected csv or json)"),
        }
    }
}

/// A catalog name or explicit `(a, b, c)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Member {
    pub name: String,
    pub params: FamilyParams,
}

impl fmt::Display for Member {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub member: Member,
    pub n: usize,
    pub initial_conditions: Vec<Complex64>,
    pub t_start: f64,
    /// `None` for verify means "one detected base period".
    pub t_end: Option<f64>,
    pub tolerance: f64,
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
    /// Points per sweep in `verify`.
    pub sweep_points: usize,
}

/// Settings as given by one source; unset fields fall through.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub member: Option<String>,
    pub a: Option<Complex64>,
    pub b: Option<Complex64>,
    pub c: Option<Complex64>,
    pub n: Option<usize>,
    pub x0: Vec<Complex64>,
    pub t_start: Option<f64>,
    pub t_end: Option<f64>,
    pub tolerance: Option<f64>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub sweep_points: Option<usize>,
}

impl Overrides {
    /// `self` wins wherever it is set.
    pub fn over(self, base: Overrides) -> Overrides {
        let explicit = self.a.is_some() || self.b.is_some() || self.c.is_some();
        let (member, a, b, c) = if self.member.is_some() {
            (self.member, None, None, None)
        } else if explicit {
            (None, self.a.or(base.a), self.b.or(base.b), self.c.or(base.c))
        } else {
            (base.member, base.a, base.b, base.c)
        };
        Overrides {
            member,
            a,
            b,
            c,
            n: self.n.or(base.n),
            x0: if self.x0.is_empty() { base.x0 } else { self.x0 },
            t_start: self.t_start.or(base.t_start),
            t_end: self.t_end.or(base.t_end),
            tolerance: self.tolerance.or(base.tolerance),
            output: self.output.or(base.output),
            format: self.format.or(base.format),
            seed: self.seed.or(base.seed),
            sweep_points: self.sweep_points.or(base.sweep_points),
        }
    }

    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.replace('-', "_").to_ascii_lowercase();
        match key.as_str() {
            "member" => self.member = Some(value.to_string()),
            "a" => self.a = Some(parse_complex(value)?),
            "b" => self.b = Some(parse_complex(value)?),
            "c" => self.c = Some(parse_complex(value)?),
            "n" => self.n = Some(value.parse().with_context(|| format!("bad n '{value}'"))?),
            "x0" => self.x0.push(parse_complex(value)?),
            "t_start" => self.t_start = Some(parse_real(value)?),
            "t_end" => self.t_end = Some(parse_real(value)?),
            "tolerance" => self.tolerance = Some(parse_real(value)?),
            "output" => self.output = Some(PathBuf::from(value)),
            "format" => self.format = Some(value.parse()?),
            "seed" => self.seed = Some(value.parse().with_context(|| format!("bad seed '{value}'"))?),
            "sweep_points" => self.sweep_points = Some(value.parse().with_context(|| format!("bad sweep_points '{value}'"))?),
            other => bail!("unknown configuration key '{other}'"),
        }
        Ok(())
    }
}

/// Reads the keys that apply to `command`: those before any section header
/// plus those in `[command]`.
pub fn parse_config_file(text: &str, command: Command) -> Result<Overrides> {
    let mut out = Overrides::default();
    let mut section: Option<String> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            section = Some(name.trim().to_ascii_lowercase());
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("line {}: expected 'key = value'", lineno + 1))?;
        if section.as_deref().is_none_or(|s| s == command.name()) {
            out.set(key.trim(), value.trim()).with_context(|| format!("line {}", lineno + 1))?;
        }
    }
    Ok(out)
}

pub fn load_config_file(path: &Path, command: Command) -> Result<Overrides> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_config_file(&text, command)
}

/// `"re,im"` or a bare real number.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let z = match parts.as_slice() {
        [re] => Complex64::new(parse_real(re)?, 0.0),
        [re, im] => Complex64::new(parse_real(re)?, parse_real(im)?),
        _ => bail!("expected 're,im', got '{s}'"),
    };
    Ok(z)
}

fn parse_real(s: &str) -> Result<f64> {
    let v: f64 = s.trim().parse().with_context(|| format!("not a number: '{s}'"))?;
    if !v.is_finite() {
        bail!("value must be finite: '{s}'");
    }
    Ok(v)
}

impl RunConfig {
    pub fn resolve(command: Command, o: Overrides) -> Result<Self> {
        let member = resolve_member(&o)?;
        let n = o.n.unwrap_or(0);
        let tolerance = o.tolerance.unwrap_or(DEFAULT_TOLERANCE);
        if !(MIN_TOLERANCE..=MAX_TOLERANCE).contains(&tolerance) {
            bail!("tolerance {tolerance:e} outside [{MIN_TOLERANCE:e}, {MAX_TOLERANCE:e}]");
        }
        let initial_conditions = if o.x0.is_empty() {
            vec![default_start(command, n)]
        } else {
            o.x0
        };
        let (t_start, t_end) = match command {
            Command::Transition => (o.t_start.unwrap_or(-PI), Some(o.t_end.unwrap_or(1.0 + PI))),
            Command::Verify => (0.0, o.t_end),
            Command::Trajectory | Command::Contour => (0.0, Some(o.t_end.unwrap_or(10.0))),
        };
        if let Some(t_end) = t_end {
            if t_end <= t_start {
                bail!("t_end ({t_end}) must exceed t_start ({t_start})");
            }
        }
        let format = o.format.unwrap_or_else(|| match &o.output {
            Some(p) if p.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) => Format::Json,
            _ if matches!(command, Command::Verify) => Format::Json,
            _ => Format::Csv,
        });
        Ok(RunConfig {
            command,
            member,
            n,
            initial_conditions,
            t_start,
            t_end,
            tolerance,
            output_path: o.output.map(resolve_output_path),
            format,
            seed: o.seed.unwrap_or(0),
            sweep_points: o.sweep_points.unwrap_or(200),
        })
    }
}

fn default_start(command: Command, n: usize) -> Complex64 {
    match (command, n) {
        (Command::Transition, _) | (_, 0) => Complex64::new(1.0, 0.0),
        _ => Complex64::new(3.0, 0.0),
    }
}

fn resolve_member(o: &Overrides) -> Result<Member> {
    if let Some(name) = &o.member {
        let entry = catalog_entry(name).ok_or_else(|| anyhow!("unknown catalog member '{name}' (expected H1..H6)"))?;
        return Ok(Member { name: entry.name, params: entry.params });
    }
    if o.a.is_none() && o.b.is_none() && o.c.is_none() {
        let entry = catalog_entry("H1").expect("catalog has H1");
        return Ok(Member { name: entry.name, params: entry.params });
    }
    let zero = Complex64::new(0.0, 0.0);
    let params = FamilyParams::new(o.a.unwrap_or(Complex64::new(1.0, 0.0)), o.b.unwrap_or(zero), o.c.unwrap_or(zero))
        .map_err(|e| anyhow!("{e}"))?;
    Ok(Member { name: "custom".into(), params })
}

pub fn resolve_output_path(path: PathBuf) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path,
    }
}

/// The echo written into JSON outputs.
pub fn echo(config: &RunConfig) -> BTreeMap<&'static str, serde_json::Value> {
    let mut m = BTreeMap::new();
    m.insert("command", serde_json::json!(config.command));
    m.insert("member", serde_json::json!(config.member.name));
    m.insert("a", serde_json::json!(config.member.params.a));
    m.insert("b", serde_json::json!(config.member.params.b));
    m.insert("c", serde_json::json!(config.member.params.c));
    m.insert("n", serde_json::json!(config.n));
    m.insert("initial_conditions", serde_json::json!(config.initial_conditions));
    m.insert("t_start", serde_json::json!(config.t_start));
    m.insert("t_end", serde_json::json!(config.t_end));
    m.insert("tolerance", serde_json::json!(config.tolerance));
    m.insert("format", serde_json::json!(config.format));
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_syntax() {
        assert_eq!(parse_complex("1,0").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(parse_complex(" -0.5 , 2e-1 ").unwrap(), Complex64::new(-0.5, 0.2));
        assert_eq!(parse_complex("3").unwrap(), Complex64::new(3.0, 0.0));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("nan,0").is_err());
    }

    #[test]
    fn file_sections_and_precedence() {
        let text = "\
# shared
tolerance = 1e-9
[trajectory]
member = H6
n = 1
x0 = 0.1,0
x0 = 0.2,0
[transition]
t-start = -1
";
        let file = parse_config_file(text, Command::Trajectory).unwrap();
        assert_eq!(file.member.as_deref(), Some("H6"));
        assert_eq!(file.x0.len(), 2);
        assert_eq!(file.t_start, None);
        assert_eq!(file.tolerance, Some(1e-9));

        let flags = Overrides { n: Some(2), x0: vec![Complex64::new(5.0, 0.0)], ..Default::default() };
        let merged = flags.over(file);
        assert_eq!(merged.n, Some(2));
        assert_eq!(merged.x0, vec![Complex64::new(5.0, 0.0)]);
        assert_eq!(merged.member.as_deref(), Some("H6"));

        let t = parse_config_file(text, Command::Transition).unwrap();
        assert_eq!(t.t_start, Some(-1.0));
    }

    #[test]
    fn explicit_params_replace_file_member() {
        let file = Overrides { member: Some("H2".into()), ..Default::default() };
        let flags = Overrides { a: Some(Complex64::new(2.0, 0.0)), ..Default::default() };
        let cfg = RunConfig::resolve(Command::Trajectory, flags.over(file)).unwrap();
        assert_eq!(cfg.member.name, "custom");
        assert_eq!(cfg.member.params.a, Complex64::new(2.0, 0.0));
    }

    #[test]
    fn validation() {
        let bad_tol = Overrides { tolerance: Some(1.0), ..Default::default() };
        assert!(RunConfig::resolve(Command::Trajectory, bad_tol).is_err());
        let zero_a = Overrides { a: Some(Complex64::new(0.0, 0.0)), ..Default::default() };
        assert!(RunConfig::resolve(Command::Trajectory, zero_a).is_err());
        let unknown = Overrides { member: Some("H9".into()), ..Default::default() };
        assert!(RunConfig::resolve(Command::Trajectory, unknown).is_err());
        assert!(parse_config_file("bogus = 1", Command::Verify).is_err());
        assert!(parse_config_file("no equals sign", Command::Verify).is_err());
    }

    #[test]
    fn defaults() {
        let cfg = RunConfig::resolve(Command::Transition, Overrides::default()).unwrap();
        assert_eq!((cfg.t_start, cfg.t_end), (-PI, Some(1.0 + PI)));
        assert_eq!(cfg.format, Format::Csv);
        let cfg = RunConfig::resolve(Command::Verify, Overrides { n: Some(1), ..Default::default() }).unwrap();
        assert_eq!(cfg.format, Format::Json);
        assert_eq!(cfg.initial_conditions, vec![Complex64::new(3.0, 0.0)]);
        assert_eq!(cfg.t_end, None);
    }
}
