//! Scale-free comparison of two grids: correlation, least-squares scale,
//! 1-D sections through the periodic point, and localization ratios.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::wigner::{localization_metric, WignerGrid};

/// Comparison region.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Region {
    Full,
    /// Square of the given half-width around a point, measured on the torus.
    Square { center: [f64; 2], half_width: f64 },
}

impl Region {
    pub fn contains(&self, x: [f64; 2]) -> bool {
        match *self {
            Region::Full => true,
            Region::Square { center, half_width } => {
                let d = |u: f64, v: f64| {
                    let r = (u - v).rem_euclid(1.0);
                    r.min(1.0 - r)
                };
                d(x[0], center[0]).max(d(x[1], center[1])) <= half_width + 1e-12
            }
        }
    }

    /// Grid indices `(a, b)` inside the region, in row-major order.
    pub fn indices(&self, n: usize) -> Vec<(usize, usize)> {
        let s = 2 * n;
        let sf = s as f64;
        let mut out = Vec::new();
        for a in 0..s {
            for b in 0..s {
                if self.contains([a as f64 / sf, b as f64 / sf]) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn describe(&self) -> String {
        match *self {
            Region::Full => "full".to_string(),
            Region::Square { center, half_width } => {
                format!("square center=({}, {}) half_width={}", center[0], center[1], half_width)
            }
        }
    }
}

fn centered(v: &[f64]) -> Vec<f64> {
    let mean = v.iter().sum::<f64>() / v.len().max(1) as f64;
    v.iter().map(|x| x - mean).collect()
}

/// Pearson correlation of mean-removed samples. Two constant samples
/// correlate to 1 when equal and 0 otherwise.
pub fn pearson(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "pearson: length mismatch");
    let (ca, cb) = (centered(a), centered(b));
    let sab: f64 = ca.iter().zip(&cb).map(|(x, y)| x * y).sum();
    let saa: f64 = ca.iter().map(|x| x * x).sum();
    let sbb: f64 = cb.iter().map(|x| x * x).sum();
    if saa == 0.0 || sbb == 0.0 {
        return if a == b { 1.0 } else { 0.0 };
    }
    sab / (saa * sbb).sqrt()
}

/// Least-squares fit `a ~ s b` on mean-removed samples.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaleFit {
    pub scale: f64,
    /// RMS of `a - s b` after mean removal.
    pub rms_error: f64,
}

pub fn scale_fit(a: &[f64], b: &[f64]) -> ScaleFit {
    assert_eq!(a.len(), b.len(), "scale_fit: length mismatch");
    let (ca, cb) = (centered(a), centered(b));
    let sab: f64 = ca.iter().zip(&cb).map(|(x, y)| x * y).sum();
    let sbb: f64 = cb.iter().map(|x| x * x).sum();
    let scale = if sbb == 0.0 { 0.0 } else { sab / sbb };
    let ss: f64 = ca.iter().zip(&cb).map(|(x, y)| (x - scale * y).powi(2)).sum();
    ScaleFit {
        scale,
        rms_error: (ss / ca.len().max(1) as f64).sqrt(),
    }
}

/// Direction of a 1-D section through a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    /// Fixed `q`, varying `p`.
    Horizontal,
    /// Fixed `p`, varying `q`.
    Vertical,
}

impl Axis {
    pub fn name(&self) -> &'static str {
        match self {
            Axis::Horizontal => "horizontal",
            Axis::Vertical => "vertical",
        }
    }
}

/// Grid values along a line through a point, within a half-width.
#[derive(Clone, Debug, PartialEq)]
pub struct Section {
    pub axis: Axis,
    /// Varying coordinate, unwrapped around the point.
    pub coords: Vec<f64>,
    pub values: Vec<f64>,
}

impl Section {
    pub fn through(grid: &WignerGrid, x: [f64; 2], axis: Axis, half_width: f64) -> Section {
        let s = grid.side();
        let sf = s as f64;
        let (fixed, moving) = match axis {
            Axis::Horizontal => (x[1], x[0]),
            Axis::Vertical => (x[0], x[1]),
        };
        let fi = grid.index_of(fixed);
        let mut pts: Vec<(f64, f64)> = (0..s)
            .filter_map(|i| {
                let c = i as f64 / sf;
                let d = (c - moving + 0.5).rem_euclid(1.0) - 0.5;
                if d.abs() > half_width + 1e-12 {
                    return None;
                }
                let v = match axis {
                    Axis::Horizontal => grid.get(i, fi),
                    Axis::Vertical => grid.get(fi, i),
                };
                Some((moving + d, v))
            })
            .collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        Section {
            axis,
            coords: pts.iter().map(|p| p.0).collect(),
            values: pts.iter().map(|p| p.1).collect(),
        }
    }

    /// Sign changes of the mean-removed section.
    pub fn sign_changes(&self) -> usize {
        let c = centered(&self.values);
        c.windows(2).filter(|w| (w[0] > 0.0) != (w[1] > 0.0)).count()
    }

    /// `max - min` of the section.
    pub fn contrast(&self) -> f64 {
        let max = self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = self.values.iter().copied().fold(f64::INFINITY, f64::min);
        max - min
    }
}

/// Summary of a section for the report.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SectionStats {
    pub sign_changes: usize,
    pub contrast: f64,
}

impl From<&Section> for SectionStats {
    fn from(s: &Section) -> Self {
        SectionStats {
            sign_changes: s.sign_changes(),
            contrast: s.contrast(),
        }
    }
}

/// Localization of one grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Localization {
    pub inside_rms: f64,
    pub outside_rms: f64,
}

impl Localization {
    pub fn of(grid: &WignerGrid, x: [f64; 2], r: f64) -> Result<Self> {
        let (inside_rms, outside_rms) = localization_metric(grid, x, r)?;
        Ok(Localization { inside_rms, outside_rms })
    }

    /// `outside / inside`; small for well-localized grids.
    pub fn outside_over_inside(&self) -> f64 {
        self.outside_rms / self.inside_rms
    }
}

/// Settings shared by every comparison.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompareSettings {
    pub point: [f64; 2],
    pub region: Region,
    pub loc_radius: f64,
    pub section_half_width: f64,
}

impl CompareSettings {
    pub fn around(point: [f64; 2]) -> Self {
        CompareSettings {
            point,
            region: Region::Square {
                center: point,
                half_width: 0.15,
            },
            loc_radius: 0.15,
            section_half_width: 0.06,
        }
    }
}

/// Exact-versus-approximate comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonReport {
    pub region: String,
    pub points: usize,
    pub pearson: f64,
    pub scale_fit: f64,
    pub rms_error_after_fit: f64,
    pub loc_a: Localization,
    pub loc_b: Localization,
    pub sections_a: [SectionStats; 2],
    pub sections_b: [SectionStats; 2],
    pub runtime_seconds: Option<f64>,
}

/// Compares grid `a` (reference) with grid `b` (model); the fit is `a ~ s b`.
pub fn compare_grids(a: &WignerGrid, b: &WignerGrid, settings: &CompareSettings) -> Result<ComparisonReport> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(format!("grids have N = {} and N = {}", a.n(), b.n())));
    }
    let idx = settings.region.indices(a.n());
    let va: Vec<f64> = idx.iter().map(|&(i, j)| a.get(i, j)).collect();
    let vb: Vec<f64> = idx.iter().map(|&(i, j)| b.get(i, j)).collect();
    if va.iter().chain(&vb).any(|v| !v.is_finite()) {
        return Err(Error::DimensionMismatch("grids do not cover the comparison region".into()));
    }
    let fit = scale_fit(&va, &vb);
    let sec = |g: &WignerGrid| {
        [Axis::Horizontal, Axis::Vertical]
            .map(|ax| SectionStats::from(&Section::through(g, settings.point, ax, settings.section_half_width)))
    };
    let full_a = a.values().iter().all(|v| v.is_finite());
    let full_b = b.values().iter().all(|v| v.is_finite());
    let loc = |g: &WignerGrid, full: bool| -> Result<Localization> {
        if full {
            Localization::of(g, settings.point, settings.loc_radius)
        } else {
            Ok(Localization {
                inside_rms: f64::NAN,
                outside_rms: f64::NAN,
            })
        }
    };
    Ok(ComparisonReport {
        region: settings.region.describe(),
        points: idx.len(),
        pearson: pearson(&va, &vb),
        scale_fit: fit.scale,
        rms_error_after_fit: fit.rms_error,
        loc_a: loc(a, full_a)?,
        loc_b: loc(b, full_b)?,
        sections_a: sec(a),
        sections_b: sec(b),
        runtime_seconds: None,
    })
}

impl ComparisonReport {
    /// `key: value` lines in a fixed order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k}: {v}");
        };
        kv("region", self.region.clone());
        kv("points", self.points.to_string());
        kv("pearson", format!("{:.16e}", self.pearson));
        kv("scale_fit", format!("{:.16e}", self.scale_fit));
        kv("rms_error_after_fit", format!("{:.16e}", self.rms_error_after_fit));
        for (tag, loc) in [("a", &self.loc_a), ("b", &self.loc_b)] {
            kv(&format!("inside_rms_{tag}"), format!("{:.16e}", loc.inside_rms));
            kv(&format!("outside_rms_{tag}"), format!("{:.16e}", loc.outside_rms));
            kv(&format!("outside_over_inside_{tag}"), format!("{:.16e}", loc.outside_over_inside()));
        }
        for (tag, secs) in [("a", &self.sections_a), ("b", &self.sections_b)] {
            for (ax, st) in [Axis::Horizontal, Axis::Vertical].iter().zip(secs) {
                kv(&format!("{}_sign_changes_{tag}", ax.name()), st.sign_changes.to_string());
                kv(&format!("{}_contrast_{tag}", ax.name()), format!("{:.16e}", st.contrast));
            }
        }
        if let Some(t) = self.runtime_seconds {
            kv("runtime_seconds", format!("{t:.3}"));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wigner::Provenance;

    fn grid(n: usize, f: impl Fn(f64, f64) -> f64) -> WignerGrid {
        let s = 2 * n;
        let mut g = WignerGrid::zeros(n, Provenance::Exact);
        for a in 0..s {
            for b in 0..s {
                g.set(a, b, f(a as f64 / s as f64, b as f64 / s as f64));
            }
        }
        g
    }

    #[test]
    fn identical_grids() {
        let g = grid(11, |p, q| (7.0 * p).sin() * (3.0 * q).cos());
        let r = compare_grids(&g, &g, &CompareSettings::around([0.5, 0.5])).unwrap();
        assert!((r.pearson - 1.0).abs() < 1e-14);
        assert!(r.rms_error_after_fit < 1e-14);
        assert!((r.scale_fit - 1.0).abs() < 1e-14);
    }

    #[test]
    fn scale_and_offset_are_ignored() {
        let a = [1.0, 2.0, 4.0, -1.0];
        let b: Vec<f64> = a.iter().map(|x| 0.5 * x + 3.0).collect();
        assert!((pearson(&a, &b) - 1.0).abs() < 1e-14);
        let fit = scale_fit(&a, &b);
        assert!((fit.scale - 2.0).abs() < 1e-14 && fit.rms_error < 1e-14);
        let neg: Vec<f64> = a.iter().map(|x| -x).collect();
        assert!((pearson(&a, &neg) + 1.0).abs() < 1e-14);
    }

    #[test]
    fn mismatched_grids_rejected() {
        let a = grid(5, |_, _| 0.0);
        let b = grid(7, |_, _| 0.0);
        assert!(compare_grids(&a, &b, &CompareSettings::around([0.5, 0.5])).is_err());
    }

    #[test]
    fn section_sign_changes() {
        // cos(2 pi p / 0.02) has a half period of 0.01
        let g = grid(223, |p, _| (2.0 * std::f64::consts::PI * (p - 0.5) / 0.02).cos());
        let s = Section::through(&g, [0.5, 0.5], Axis::Horizontal, 0.06);
        assert!(s.coords.windows(2).all(|w| w[1] > w[0]));
        assert!((s.coords[0] - 0.44).abs() < 2e-3 && (s.coords.last().unwrap() - 0.56).abs() < 2e-3);
        assert!(s.sign_changes() >= 11);
        let flat = Section::through(&g, [0.5, 0.5], Axis::Vertical, 0.06);
        assert!(flat.contrast() < 1e-12);
    }

    #[test]
    fn square_region_wraps() {
        let r = Region::Square {
            center: [0.0, 0.0],
            half_width: 0.1,
        };
        assert!(r.contains([0.95, 0.05]));
        assert!(!r.contains([0.85, 0.0]));
        assert_eq!(Region::Full.indices(3).len(), 36);
    }
}
