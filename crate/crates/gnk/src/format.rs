//! Text format for sampled trajectories.
//!
//! ```text
//! gnk-trajectory 1
//! n 3
//! scale 1
//! samples 8193
//! 0.0000000000000000 -0.49999999999999978 0.86602540378443871 ...
//! ```
//!
//! Each record is `t x_1 y_1 ... x_n y_n` in fixed decimal notation with
//! at least 17 significant digits, enough to reproduce every `f64` exactly.
//! Lines starting with `#` are ignored.

use std::fmt::Write as _;

use gnk_core::geometry::Point;
use gnk_core::trajectory::Trajectory;
use gnk_core::{DomainError, StrandCount};
use thiserror::Error;

pub const MAGIC: &str = "gnk-trajectory";
pub const VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Fixed-point rendering with 17 significant digits.
pub fn fixed(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.1}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (16 - magnitude).clamp(1, 400) as usize;
    format!("{x:.decimals$}")
}

pub fn write_trajectory(t: &Trajectory) -> String {
    let n = t.strands().get();
    let mut out = String::with_capacity(t.sample_count() * (n + 1) * 44);
    let _ = writeln!(out, "{MAGIC} {VERSION}");
    let _ = writeln!(out, "n {n}");
    let _ = writeln!(out, "scale {}", fixed(t.scale()));
    let _ = writeln!(out, "samples {}", t.sample_count());
    for (s, &time) in t.times().iter().enumerate() {
        out.push_str(&fixed(time));
        for p in t.sample(s) {
            out.push(' ');
            out.push_str(&fixed(p.x));
            out.push(' ');
            out.push_str(&fixed(p.y));
        }
        out.push('\n');
    }
    out
}

pub fn read_trajectory(text: &str) -> Result<Trajectory, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let mut header = |key: &str| -> Result<(usize, String), FormatError> {
        let (no, line) = lines
            .next()
            .ok_or_else(|| syntax(0, format!("missing `{key}` header")))?;
        match line.split_once(' ') {
            Some((k, v)) if k == key => Ok((no, v.trim().to_string())),
            _ => Err(syntax(no, format!("expected `{key} <value>`"))),
        }
    };

    let (no, version) = header(MAGIC)?;
    let version: u32 = version
        .parse()
        .map_err(|_| syntax(no, "bad format version"))?;
    if version != VERSION {
        return Err(FormatError::Version(version));
    }
    let (no, n) = header("n")?;
    let n: usize = n.parse().map_err(|_| syntax(no, "bad strand count"))?;
    let n = StrandCount::new(n)?;
    let (no, scale) = header("scale")?;
    let scale: f64 = scale.parse().map_err(|_| syntax(no, "bad scale"))?;
    let (no, samples) = header("samples")?;
    let samples: usize = samples
        .parse()
        .map_err(|_| syntax(no, "bad sample count"))?;

    let width = 1 + 2 * n.get();
    let mut times = Vec::with_capacity(samples);
    let mut positions = Vec::with_capacity(samples * n.get());
    for (no, line) in lines {
        let values = line
            .split_ascii_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| syntax(no, format!("bad number `{tok}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if values.len() != width {
            return Err(syntax(
                no,
                format!("expected {width} values, found {}", values.len()),
            ));
        }
        times.push(values[0]);
        positions.extend(values[1..].chunks(2).map(|c| Point::new(c[0], c[1])));
    }
    if times.len() != samples {
        return Err(syntax(
            0,
            format!("header announces {samples} samples, found {}", times.len()),
        ));
    }
    Ok(Trajectory::new(n, scale, times, positions)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_keeps_enough_digits() {
        for x in [0.1, -0.3333333333333333, 1e-7, 123.456, 1.0 / 3.0 * 1e-12] {
            let s = fixed(x);
            assert!(!s.contains('e'));
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
            let digits = s.trim_start_matches('-').replace('.', "");
            assert!(digits.trim_start_matches('0').len() >= 15);
        }
        assert_eq!(fixed(0.0), "0.0");
    }

    #[test]
    fn header_errors_are_located() {
        let err = read_trajectory("gnk-trajectory 1\nn 3\nscale x\nsamples 2\n").unwrap_err();
        assert_eq!(err.to_string(), "line 3: bad scale");
        let err = read_trajectory("gnk-trajectory 2\n").unwrap_err();
        assert!(matches!(err, FormatError::Version(2)));
    }
}
