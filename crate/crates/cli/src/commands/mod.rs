pub mod converge;
pub mod evolve;
pub mod particle;
pub mod report;
pub mod spectrum;
pub mod su2;

use anyhow::{bail, Result};

/// Parses a spin given as "10", "0.5", or "1/2" into its doubled integer.
pub fn parse_two_s(text: &str) -> Result<u32> {
    let value = if let Some((num, den)) = text.split_once('/') {
        let n: f64 = num.trim().parse()?;
        let d: f64 = den.trim().parse()?;
        if d == 0.0 {
            bail!("zero denominator in spin '{text}'");
        }
        n / d
    } else {
        text.trim().parse()?
    };
    let doubled = 2.0 * value;
    if doubled < 0.0 || doubled.fract() != 0.0 || doubled > 1e6 {
        bail!("spin '{text}' is not a nonnegative (half-)integer");
    }
    Ok(doubled as u32)
}

/// Parses site counts: comma-separated entries, each either a number or a
/// doubling range "a..b".
pub fn parse_site_counts(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for piece in text.split(',') {
        let piece = piece.trim();
        if piece.is_empty() || piece == "..." {
            continue; // tolerate a literal ellipsis between list entries
        }
        if let Some((a, b)) = piece.split_once("..") {
            let mut n: usize = a.trim().parse()?;
            let end: usize = b.trim().parse()?;
            if n < 2 || end < n {
                bail!("bad range '{piece}'");
            }
            while n <= end {
                out.push(n);
                n *= 2;
            }
        } else {
            out.push(piece.parse()?);
        }
    }
    out.sort_unstable();
    out.dedup();
    if out.len() < 2 {
        bail!("need at least two site counts, got '{text}'");
    }
    Ok(out)
}
