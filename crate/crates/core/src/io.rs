//! Grid and section files: CSV with a comment header, PGM P2 images, and
//! plain `key: value` reports. All output uses `\n` line endings and
//! 17 significant digits.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::wigner::{Provenance, WignerGrid};

/// Metadata carried in the header of a grid CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct GridHeader {
    pub n: usize,
    pub map: String,
    pub provenance: Provenance,
    pub params: Vec<(String, String)>,
}

/// Renders a grid as CSV. `keep` selects the rows written.
pub fn grid_csv(grid: &WignerGrid, header: &GridHeader, keep: impl Fn([f64; 2]) -> bool) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# N: {}", header.n);
    let _ = writeln!(s, "# map: {}", header.map);
    let _ = writeln!(s, "# provenance: {}", header.provenance);
    for (k, v) in &header.params {
        let _ = writeln!(s, "# {k}: {v}");
    }
    s.push_str("a,b,p,q,value\n");
    for a in 0..grid.side() {
        for b in 0..grid.side() {
            let x = grid.point(a, b);
            if keep(x) {
                let _ = writeln!(s, "{a},{b},{:.16e},{:.16e},{:.16e}", x[0], x[1], grid.get(a, b));
            }
        }
    }
    s
}

pub fn write_grid_csv(path: &Path, grid: &WignerGrid, header: &GridHeader, keep: impl Fn([f64; 2]) -> bool) -> Result<()> {
    fs::write(path, grid_csv(grid, header, keep))?;
    Ok(())
}

/// Parses a grid CSV. Rows missing from a windowed file read back as NaN.
pub fn parse_grid_csv(text: &str) -> Result<(GridHeader, WignerGrid)> {
    let perr = |m: String| Error::Parse(m);
    let mut n = None;
    let mut map = None;
    let mut provenance = None;
    let mut params = Vec::new();
    let mut lines = text.lines();
    for line in lines.by_ref() {
        if let Some(c) = line.strip_prefix("# ") {
            let (k, v) = c.split_once(": ").ok_or_else(|| perr(format!("bad header line {line:?}")))?;
            match k {
                "N" => n = Some(v.parse::<usize>().map_err(|_| perr(format!("bad N {v:?}")))?),
                "map" => map = Some(v.to_string()),
                "provenance" => provenance = Some(v.parse::<Provenance>()?),
                _ => params.push((k.to_string(), v.to_string())),
            }
        } else if line == "a,b,p,q,value" {
            break;
        } else {
            return Err(perr(format!("unexpected line before column header: {line:?}")));
        }
    }
    let n = n.ok_or_else(|| perr("missing N".into()))?;
    let header = GridHeader {
        n,
        map: map.ok_or_else(|| perr("missing map".into()))?,
        provenance: provenance.ok_or_else(|| perr("missing provenance".into()))?,
        params,
    };
    if n % 2 == 0 {
        return Err(Error::EvenDimension(n));
    }
    let mut grid = WignerGrid::zeros(n, header.provenance);
    let s = grid.side();
    for a in 0..s {
        for b in 0..s {
            grid.set(a, b, f64::NAN);
        }
    }
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 5 {
            return Err(perr(format!("expected 5 columns: {line:?}")));
        }
        let a: usize = f[0].parse().map_err(|_| perr(format!("bad index in {line:?}")))?;
        let b: usize = f[1].parse().map_err(|_| perr(format!("bad index in {line:?}")))?;
        let v: f64 = f[4].parse().map_err(|_| perr(format!("bad value in {line:?}")))?;
        if a >= s || b >= s {
            return Err(perr(format!("index out of range in {line:?}")));
        }
        grid.set(a, b, v);
    }
    Ok((header, grid))
}

pub fn read_grid_csv(path: &Path) -> Result<(GridHeader, WignerGrid)> {
    parse_grid_csv(&fs::read_to_string(path)?)
}

/// Section CSV with columns `coordinate, exact_value, sc_value`.
pub fn section_csv(coords: &[f64], exact: &[f64], sc: &[f64]) -> String {
    let mut s = String::from("coordinate,exact_value,sc_value\n");
    for ((c, e), v) in coords.iter().zip(exact).zip(sc) {
        let _ = writeln!(s, "{c:.16e},{e:.16e},{v:.16e}");
    }
    s
}

/// PGM P2 with `q` along columns and `p` increasing upward. Values map
/// affinely from `[min, max]` to `[0, 65535]`; NaN maps to 0.
pub fn grid_pgm(grid: &WignerGrid) -> String {
    let finite = grid.values().iter().copied().filter(|v| v.is_finite());
    let (min, max) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    let span = if max > min { max - min } else { 1.0 };
    let s = grid.side();
    let mut out = String::new();
    let _ = writeln!(out, "P2");
    let _ = writeln!(out, "# min: {min:.16e} max: {max:.16e} gray = 65535 (value - min) / (max - min)");
    let _ = writeln!(out, "# rows: p from {} down to 0, columns: q from 0", (s - 1) as f64 / s as f64);
    let _ = writeln!(out, "{s} {s}");
    let _ = writeln!(out, "65535");
    for a in (0..s).rev() {
        let row: Vec<String> = (0..s)
            .map(|b| {
                let v = grid.get(a, b);
                if v.is_finite() {
                    (((v - min) / span) * 65535.0).round().clamp(0.0, 65535.0).to_string()
                } else {
                    "0".to_string()
                }
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// `key: value` report.
pub fn report_text(entries: &[(String, String)]) -> String {
    let mut s = String::new();
    for (k, v) in entries {
        let _ = writeln!(s, "{k}: {v}");
    }
    s
}
