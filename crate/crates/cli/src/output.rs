//! Deterministic writers: fixed 17-significant-digit floats in CSV, config
//! echoed into every artifact, no timestamps.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};

/// Serialize a float with 17 significant digits, enough to round-trip f64
/// bit-exactly and keep byte-identical outputs across runs.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// A CSV document with a commented reproducibility header.
pub struct CsvDoc {
    lines: Vec<String>,
}

impl CsvDoc {
    pub fn new(config: &[(&str, String)], columns: &[&str]) -> Self {
        let mut lines = vec!["# schema_version=1".to_string()];
        for (k, v) in config {
            lines.push(format!("# {k}={v}"));
        }
        lines.push(columns.join(","));
        Self { lines }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.lines.push(fields.join(","));
    }

    pub fn comment(&mut self, text: &str) {
        self.lines.push(format!("# {text}"));
    }

    pub fn finish(self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

/// Writes to the path, or stdout when no path is given.
pub fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, content)
                .with_context(|| format!("writing {}", path.display()))?;
        }
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

/// Minimal line plot on log-log axes, for convergence curves.
pub fn svg_loglog(
    title: &str,
    xs: &[f64],
    ys: &[f64],
    x_label: &str,
    y_label: &str,
) -> String {
    assert_eq!(xs.len(), ys.len());
    let (w, h, ml, mb, mt, mr) = (640.0, 420.0, 70.0, 50.0, 40.0, 20.0);
    let lx: Vec<f64> = xs.iter().map(|v| v.log10()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.max(1e-300).log10()).collect();
    let (x0, x1) = bounds(&lx);
    let (y0, y1) = bounds(&ly);
    let px = |v: f64| ml + (v - x0) / (x1 - x0).max(1e-12) * (w - ml - mr);
    let py = |v: f64| h - mb - (v - y0) / (y1 - y0).max(1e-12) * (h - mb - mt);

    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    ));
    s.push_str(&format!(
        "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{title}</text>\n",
        w / 2.0
    ));
    s.push_str(&format!(
        "<line x1=\"{ml}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        h - mb,
        w - mr,
        h - mb
    ));
    s.push_str(&format!(
        "<line x1=\"{ml}\" y1=\"{mt}\" x2=\"{ml}\" y2=\"{}\" stroke=\"black\"/>\n",
        h - mb
    ));
    s.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"12\">{x_label} (log10)</text>\n",
        (ml + w - mr) / 2.0,
        h - 12.0
    ));
    s.push_str(&format!(
        "<text x=\"16\" y=\"{}\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 {})\">{y_label} (log10)</text>\n",
        (mt + h - mb) / 2.0,
        (mt + h - mb) / 2.0
    ));
    let pts: Vec<String> = lx
        .iter()
        .zip(ly.iter())
        .map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y)))
        .collect();
    s.push_str(&format!(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\"/>\n",
        pts.join(" ")
    ));
    for (x, y) in lx.iter().zip(ly.iter()) {
        s.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"#1f6fb2\"/>\n",
            px(*x),
            py(*y)
        ));
    }
    s.push_str(&format!(
        "<text x=\"{ml}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{x0:.1}</text>\n",
        h - mb + 16.0
    ));
    s.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{x1:.1}</text>\n",
        w - mr,
        h - mb + 16.0
    ));
    s.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"end\">{y0:.1}</text>\n",
        ml - 6.0,
        h - mb
    ));
    s.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"end\">{y1:.1}</text>\n",
        ml - 6.0,
        mt + 4.0
    ));
    s.push_str("</svg>\n");
    s
}

fn bounds(v: &[f64]) -> (f64, f64) {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if (hi - lo).abs() < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}
