use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path as FsPath;

use crate::config::Quantity;
use crate::sweep::{CellRecord, PhaseDiagram};
use crate::CliError;

pub const MISSING: &str = "NA";
pub const STATUS_OK: &str = "ok";

/// Nine significant digits in scientific notation.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.8e}")
    } else if x.is_nan() {
        MISSING.to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

fn cell_field(cell: &CellRecord, q: Quantity) -> String {
    let int = |v: Option<i64>| v.map_or(MISSING.to_string(), |v| v.to_string());
    let real = |v: Option<f64>| v.map_or(MISSING.to_string(), format_float);
    match q {
        Quantity::NuA => int(cell.nu_a),
        Quantity::NuB => int(cell.nu_b),
        Quantity::NuTotal => int(cell.nu_total),
        Quantity::NuS => cell.nu_s.map_or(MISSING.to_string(), |s| s.to_string()),
        other => real(cell.value(other)),
    }
}

pub fn csv_header(pd: &PhaseDiagram) -> Vec<String> {
    let c = &pd.config;
    let mut h = vec!["i".to_string(), "j".to_string(), c.axis1.param.clone(), c.axis2.param.clone()];
    h.extend(c.outputs.iter().map(|q| q.name().to_string()));
    h.extend(["reliable", "status", "warnings"].map(String::from));
    h
}

pub fn write_csv<W: Write>(pd: &PhaseDiagram, mut out: W) -> io::Result<()> {
    writeln!(out, "{}", csv_header(pd).join(","))?;
    for cell in &pd.cells {
        let mut row = vec![cell.i.to_string(), cell.j.to_string(), format_float(cell.x1), format_float(cell.x2)];
        row.extend(pd.config.outputs.iter().map(|&q| cell_field(cell, q)));
        row.push(cell.reliable.to_string());
        row.push(cell.failure.unwrap_or(STATUS_OK).to_string());
        row.push(cell.warnings.join(";"));
        writeln!(out, "{}", row.join(","))?;
    }
    out.flush()
}

pub fn export_csv(pd: &PhaseDiagram, path: &FsPath) -> Result<(), CliError> {
    let io_err = |source| CliError::Io { path: path.into(), source };
    let file = File::create(path).map_err(io_err)?;
    write_csv(pd, BufWriter::new(file)).map_err(io_err)
}

pub type Rgb = [u8; 3];

pub const FAILURE_COLOR: Rgb = [0, 0, 0];

const NEGATIVE: Rgb = [33, 102, 172];
const CENTER: Rgb = [247, 247, 247];
const POSITIVE: Rgb = [178, 24, 43];
const SEQUENTIAL: [Rgb; 3] = [[68, 1, 84], [33, 145, 140], [253, 231, 37]];

fn lerp(a: Rgb, b: Rgb, t: f64) -> Rgb {
    let t = t.clamp(0.0, 1.0);
    std::array::from_fn(|c| (a[c] as f64 + (b[c] as f64 - a[c] as f64) * t).round() as u8)
}

/// Blue below zero, white at zero, red above; saturates at `±scale`.
pub fn diverging_color(v: f64, scale: f64) -> Rgb {
    if v < 0.0 {
        lerp(CENTER, NEGATIVE, -v / scale)
    } else {
        lerp(CENTER, POSITIVE, v / scale)
    }
}

/// Dark purple at 0 through teal to yellow at 1.
pub fn sequential_color(t: f64) -> Rgb {
    let t = t.clamp(0.0, 1.0);
    if t < 0.5 {
        lerp(SEQUENTIAL[0], SEQUENTIAL[1], 2.0 * t)
    } else {
        lerp(SEQUENTIAL[1], SEQUENTIAL[2], 2.0 * t - 1.0)
    }
}

/// Pixel colors, row-major with the largest `axis2` value in the top row.
pub fn heatmap_pixels(pd: &PhaseDiagram, q: Quantity) -> Result<(usize, usize, Vec<Rgb>), CliError> {
    if !pd.config.outputs.contains(&q) {
        let names: Vec<_> = pd.config.outputs.iter().map(Quantity::name).collect();
        return Err(CliError::Config(format!(
            "quantity '{q}' is not in this diagram (available: {})",
            names.join(", ")
        )));
    }
    let (w, h) = pd.config.shape();
    let values: Vec<Option<f64>> = pd.cells.iter().map(|c| c.value(q)).collect();
    let present = values.iter().flatten();
    let color: Box<dyn Fn(f64) -> Rgb> = if q.is_invariant() {
        let scale = present.fold(2.0f64, |m, v| m.max(v.abs()));
        Box::new(move |v| diverging_color(v, scale))
    } else {
        let (lo, hi) = present.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        let span = hi - lo;
        Box::new(move |v| sequential_color(if span > 0.0 { (v - lo) / span } else { 0.0 }))
    };
    let mut pixels = Vec::with_capacity(w * h);
    for row in 0..h {
        let j = h - 1 - row;
        for i in 0..w {
            pixels.push(values[j * w + i].map_or(FAILURE_COLOR, &color));
        }
    }
    Ok((w, h, pixels))
}

pub fn write_ppm<W: Write>(width: usize, height: usize, pixels: &[Rgb], mut out: W) -> io::Result<()> {
    write!(out, "P6\n{width} {height}\n255\n")?;
    out.write_all(&pixels.concat())?;
    out.flush()
}

pub fn export_heatmap(pd: &PhaseDiagram, q: Quantity, path: &FsPath) -> Result<(), CliError> {
    let (w, h, pixels) = heatmap_pixels(pd, q)?;
    let io_err = |source| CliError::Io { path: path.into(), source };
    let file = File::create(path).map_err(io_err)?;
    write_ppm(w, h, &pixels, BufWriter::new(file)).map_err(io_err)
}
