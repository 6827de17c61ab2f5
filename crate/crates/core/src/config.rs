//! Flat `key = value` run configuration with command-line overrides.

use std::path::{Path, PathBuf};

use num_rational::Rational64;

use crate::classical::{CatMap, RatPoint};
use crate::error::{Error, Result};
use crate::quantum::Window;
use crate::semiclassical::DEFAULT_ALPHA;

/// Quasi-energy choice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PhiSpec {
    Value(f64),
    /// `theta = 0`.
    Bohr,
    /// `theta = pi`.
    AntiBohr,
}

/// Which grid points are written.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scope {
    Full,
    /// Square of the given half-width around the point.
    Window(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Pgm,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub map: CatMap,
    pub n: usize,
    pub point: RatPoint,
    pub phi: PhiSpec,
    /// `None` picks the Ehrenfest default.
    pub big_t: Option<u32>,
    pub window: Window,
    pub alpha: f64,
    pub scope: Scope,
    pub images: u32,
    pub output: PathBuf,
    pub emit: Vec<Format>,
    /// Spectral damping time; `None` means `T/2`.
    pub tau: Option<f64>,
    pub tmax: Option<u32>,
    /// Largest period listed by `classical`.
    pub period: u32,
    /// Largest period searched when locating the orbit through the point.
    pub max_period: u32,
    pub radius: f64,
    pub region_half_width: f64,
    pub section_half_width: f64,
    pub grid_a: Option<PathBuf>,
    pub grid_b: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            map: CatMap::reference(),
            n: 223,
            point: RatPoint::from_ints(1, 2, 1, 2),
            phi: PhiSpec::AntiBohr,
            big_t: None,
            window: Window::Cosine,
            alpha: DEFAULT_ALPHA,
            scope: Scope::Full,
            images: 1,
            output: PathBuf::from("out"),
            emit: vec![Format::Csv],
            tau: None,
            tmax: None,
            period: 2,
            max_period: 8,
            radius: 0.15,
            region_half_width: 0.15,
            section_half_width: 0.06,
            grid_a: None,
            grid_b: None,
        }
    }
}

fn cfg_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| cfg_err(format!("{key}: cannot parse {v:?}")))
}

/// Exact rational from `a/b`, an integer, or a plain decimal like `0.25`.
pub fn parse_rational(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let bad = || cfg_err(format!("not a rational or decimal number: {s:?}"));
    if s.contains('/') {
        let r: Rational64 = s.parse().map_err(|_| bad())?;
        return Ok(r);
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().all(|c| c.is_ascii_digit())
        || !frac.chars().all(|c| c.is_ascii_digit())
        || frac.len() > 15
    {
        return Err(bad());
    }
    let den = 10i64.pow(frac.len() as u32);
    let num: i64 = format!("{int}{frac}").trim_start_matches('0').parse().unwrap_or(0);
    let r = Rational64::new(num, den);
    Ok(if neg { -r } else { r })
}

impl RunConfig {
    /// Reads a config file, then applies `KEY=VALUE` overrides in order.
    pub fn load(path: Option<&Path>, overrides: &[String]) -> Result<Self> {
        let mut cfg = RunConfig::default();
        if let Some(p) = path {
            let text = std::fs::read_to_string(p)
                .map_err(|e| cfg_err(format!("cannot read {}: {e}", p.display())))?;
            cfg.apply_text(&text)?;
        }
        for o in overrides {
            let (k, v) = o
                .split_once('=')
                .ok_or_else(|| cfg_err(format!("override must be KEY=VALUE, got {o:?}")))?;
            cfg.set(k.trim(), v.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        cfg.apply_text(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| cfg_err(format!("line {}: expected key = value", i + 1)))?;
            self.set(k.trim(), v.trim())?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, v: &str) -> Result<()> {
        match key {
            "map" => self.map = v.parse()?,
            "N" | "n" => self.n = parse_num(key, v)?,
            "point" | "X" => {
                let parts: Vec<&str> = v.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(cfg_err(format!("point: expected two numbers, got {v:?}")));
                }
                self.point = RatPoint::new(parse_rational(parts[0])?, parse_rational(parts[1])?);
            }
            "phi" => {
                self.phi = match v {
                    "bohr" => PhiSpec::Bohr,
                    "antibohr" => PhiSpec::AntiBohr,
                    _ => PhiSpec::Value(parse_num(key, v)?),
                }
            }
            "T" => {
                self.big_t = match v {
                    "auto" => None,
                    _ => Some(parse_num(key, v)?),
                }
            }
            "window" => {
                let mut it = v.split_whitespace();
                self.window = match (it.next(), it.next()) {
                    (Some("cosine"), None) => Window::Cosine,
                    (Some("exponential"), Some(eps)) => Window::Exponential { eps: parse_num(key, eps)? },
                    _ => return Err(cfg_err(format!("window: expected `cosine` or `exponential EPS`, got {v:?}"))),
                };
            }
            "alpha" => self.alpha = parse_num(key, v)?,
            "scope" => {
                let mut it = v.split_whitespace();
                self.scope = match (it.next(), it.next()) {
                    (Some("full"), None) => Scope::Full,
                    (Some("window"), Some(r)) => Scope::Window(parse_num(key, r)?),
                    _ => return Err(cfg_err(format!("scope: expected `full` or `window R`, got {v:?}"))),
                };
            }
            "images" | "J" => self.images = parse_num(key, v)?,
            "output" => self.output = PathBuf::from(v),
            "emit" => {
                self.emit = v
                    .split(',')
                    .map(|f| match f.trim() {
                        "csv" => Ok(Format::Csv),
                        "pgm" => Ok(Format::Pgm),
                        other => Err(cfg_err(format!("emit: unknown format {other:?}"))),
                    })
                    .collect::<Result<_>>()?;
            }
            "tau" => self.tau = Some(parse_num(key, v)?),
            "tmax" => self.tmax = Some(parse_num(key, v)?),
            "period" | "l" => self.period = parse_num(key, v)?,
            "max_period" => self.max_period = parse_num(key, v)?,
            "radius" => self.radius = parse_num(key, v)?,
            "region" => self.region_half_width = parse_num(key, v)?,
            "section_half_width" => self.section_half_width = parse_num(key, v)?,
            "grid_a" => self.grid_a = Some(PathBuf::from(v)),
            "grid_b" => self.grid_b = Some(PathBuf::from(v)),
            _ => return Err(cfg_err(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.n % 2 == 0 || self.n == 0 {
            return Err(cfg_err(format!("N must be odd and positive, got {}", self.n)));
        }
        if let Some(t) = self.big_t {
            if t < 2 || t % 2 != 0 {
                return Err(cfg_err(format!("T must be an even integer >= 2, got {t}")));
            }
        }
        if let Window::Exponential { eps } = self.window {
            if !(eps > 0.0 && eps.is_finite()) {
                return Err(cfg_err(format!("window eps must be positive, got {eps}")));
            }
        }
        if let Scope::Window(r) = self.scope {
            if !(r > 0.0 && r < 0.5) {
                return Err(cfg_err(format!("scope window half-width must lie in (0, 1/2), got {r}")));
            }
        }
        if !(self.radius > 0.0 && self.radius < 0.25) {
            return Err(cfg_err(format!("radius must lie in (0, 1/4), got {}", self.radius)));
        }
        if !(self.region_half_width > 0.0 && self.region_half_width < 0.5) {
            return Err(cfg_err(format!("region must lie in (0, 1/2), got {}", self.region_half_width)));
        }
        if let Some(tau) = self.tau {
            if !(tau > 0.0 && tau.is_finite()) {
                return Err(cfg_err(format!("tau must be positive, got {tau}")));
            }
        }
        if self.period == 0 || self.max_period == 0 {
            return Err(cfg_err("period and max_period must be positive"));
        }
        if !self.alpha.is_finite() {
            return Err(cfg_err("alpha must be finite"));
        }
        Ok(())
    }

    pub fn point_f64(&self) -> [f64; 2] {
        self.point.to_f64()
    }

    /// Parameter lines for file headers, in a fixed order.
    pub fn header_params(&self) -> Vec<(String, String)> {
        let mut out = vec![
            ("point".to_string(), format!("{} {}", self.point.p, self.point.q)),
            ("alpha".to_string(), format!("{:.16e}", self.alpha)),
            ("images".to_string(), self.images.to_string()),
        ];
        let w = match self.window {
            Window::Cosine => "cosine".to_string(),
            Window::Exponential { eps } => format!("exponential {eps:.16e}"),
        };
        out.push(("window".to_string(), w));
        out
    }
}
