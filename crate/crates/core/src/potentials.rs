//! Piecewise-constant potential profiles supported on `[0, dx]`.
//!
//! Values are energies in eV with wells negative. The potential is zero
//! outside the support. Smooth profiles enter through
//! [`discretize_profile`], which builds a midpoint staircase.
//!
//! The file format is a JSON object:
//!
//! ```json
//! { "dx_nm": 5.0, "segments": [ { "width_nm": 5.0, "value_eV": -0.3 } ] }
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative tolerance between `dx_nm` and the sum of segment widths.
pub const WIDTH_SUM_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PotentialError {
    #[error("potential needs at least one segment")]
    Empty,
    #[error("segments[{index}].width_nm must be positive and finite, got {width}")]
    BadWidth { index: usize, width: f64 },
    #[error("segments[{index}].value_eV must be finite, got {value}")]
    BadValue { index: usize, value: f64 },
    #[error("dx_nm = {dx} does not match the segment widths, which sum to {sum}")]
    WidthMismatch { dx: f64, sum: f64 },
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("profile samples are not strictly increasing at index {0}")]
    Unsorted(usize),
    #[error("profile sample {index} is not finite")]
    NonFiniteSample { index: usize },
    #[error("profile must start at x = 0 and cover a positive width (first x = {first}, last x = {last})")]
    OutOfRange { first: f64, last: f64 },
    #[error("need at least {0} segment(s)")]
    TooFewSegments(usize),
    #[error("invalid potential file: {0}")]
    Syntax(String),
}

/// One constant piece of the profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Segment {
    #[serde(rename = "width_nm")]
    pub width: f64,
    #[serde(rename = "value_eV")]
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PotentialFile {
    dx_nm: f64,
    segments: Vec<Segment>,
}

/// Immutable staircase potential, zero outside `[0, dx]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    segments: Vec<Segment>,
    dx: f64,
}

impl Potential {
    /// Builds a potential whose width is the sum of the segment widths.
    pub fn new(segments: Vec<Segment>) -> Result<Self, PotentialError> {
        validate_segments(&segments)?;
        let dx = segments.iter().map(|s| s.width).sum();
        Ok(Self { segments, dx })
    }

    /// Builds a potential with an explicitly stated total width.
    pub fn with_width(dx: f64, segments: Vec<Segment>) -> Result<Self, PotentialError> {
        validate_segments(&segments)?;
        if !(dx.is_finite() && dx > 0.0) {
            return Err(PotentialError::NonPositive {
                name: "dx_nm",
                value: dx,
            });
        }
        let sum: f64 = segments.iter().map(|s| s.width).sum();
        if (sum - dx).abs() > WIDTH_SUM_TOL * dx {
            return Err(PotentialError::WidthMismatch { dx, sum });
        }
        Ok(Self { segments, dx })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Left edges of every segment followed by `dx`.
    pub fn boundaries(&self) -> Vec<f64> {
        let mut edges = Vec::with_capacity(self.segments.len() + 1);
        let mut x = 0.0;
        edges.push(x);
        for s in &self.segments[..self.segments.len() - 1] {
            x += s.width;
            edges.push(x);
        }
        edges.push(self.dx);
        edges
    }

    /// Value at `x`; segments are half-open `[left, right)`.
    pub fn value_at(&self, x: f64) -> f64 {
        if !(0.0..self.dx).contains(&x) {
            return 0.0;
        }
        let mut right = 0.0;
        for s in &self.segments {
            right += s.width;
            if x < right {
                return s.value;
            }
        }
        self.segments[self.segments.len() - 1].value
    }

    pub fn min_value(&self) -> f64 {
        self.segments
            .iter()
            .map(|s| s.value)
            .fold(f64::INFINITY, f64::min)
    }

    /// Deepest binding value `max(−value, 0)` in eV.
    pub fn max_depth(&self) -> f64 {
        (-self.min_value()).max(0.0)
    }

    /// Integrated well strength `∫ −U dx` over attractive segments, eV·nm.
    pub fn attractive_area(&self) -> f64 {
        self.segments
            .iter()
            .filter(|s| s.value < 0.0)
            .map(|s| -s.value * s.width)
            .sum()
    }

    /// True when the segment list reads the same in both directions.
    pub fn is_symmetric(&self) -> bool {
        let n = self.segments.len();
        (0..n / 2).all(|i| {
            let (a, b) = (self.segments[i], self.segments[n - 1 - i]);
            a.value == b.value && (a.width - b.width).abs() <= 1e-12 * self.dx
        })
    }

    pub fn to_json(&self) -> String {
        let file = PotentialFile {
            dx_nm: self.dx,
            segments: self.segments.clone(),
        };
        serde_json::to_string_pretty(&file).expect("potential serializes")
    }
}

fn validate_segments(segments: &[Segment]) -> Result<(), PotentialError> {
    if segments.is_empty() {
        return Err(PotentialError::Empty);
    }
    for (index, s) in segments.iter().enumerate() {
        if !(s.width.is_finite() && s.width > 0.0) {
            return Err(PotentialError::BadWidth {
                index,
                width: s.width,
            });
        }
        if !s.value.is_finite() {
            return Err(PotentialError::BadValue {
                index,
                value: s.value,
            });
        }
    }
    Ok(())
}

/// Single-segment well of value `−depth` over `[0, dx]`.
pub fn square_well(depth: f64, dx: f64) -> Result<Potential, PotentialError> {
    if !(depth.is_finite() && depth > 0.0) {
        return Err(PotentialError::NonPositive {
            name: "depth",
            value: depth,
        });
    }
    if !(dx.is_finite() && dx > 0.0) {
        return Err(PotentialError::NonPositive {
            name: "dx",
            value: dx,
        });
    }
    Potential::new(vec![Segment {
        width: dx,
        value: -depth,
    }])
}

/// Square well of fixed strength `alpha = depth·dx` (eV·nm). Narrowing it at
/// fixed `alpha` approaches an attractive delta potential.
pub fn fixed_area_well(alpha: f64, dx: f64) -> Result<Potential, PotentialError> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(PotentialError::NonPositive {
            name: "alpha",
            value: alpha,
        });
    }
    square_well(alpha / dx, dx)
}

/// Midpoint staircase of a sampled profile `(x, f(x))` on `[0, dx]`, with
/// `dx` the last sample position. Values between samples are linearly
/// interpolated.
pub fn discretize_profile(
    samples: &[(f64, f64)],
    n_segments: usize,
) -> Result<Potential, PotentialError> {
    if n_segments == 0 {
        return Err(PotentialError::TooFewSegments(1));
    }
    if samples.len() < 2 {
        return Err(PotentialError::OutOfRange {
            first: samples.first().map_or(f64::NAN, |s| s.0),
            last: samples.last().map_or(f64::NAN, |s| s.0),
        });
    }
    for (index, &(x, f)) in samples.iter().enumerate() {
        if !(x.is_finite() && f.is_finite()) {
            return Err(PotentialError::NonFiniteSample { index });
        }
    }
    if let Some(i) = samples.windows(2).position(|w| w[1].0 <= w[0].0) {
        return Err(PotentialError::Unsorted(i + 1));
    }
    let (first, last) = (samples[0].0, samples[samples.len() - 1].0);
    if first.abs() > 1e-12 * last.abs().max(1e-300) || last <= 0.0 {
        return Err(PotentialError::OutOfRange { first, last });
    }
    let dx = last;
    let width = dx / n_segments as f64;
    let mut cursor = 0;
    let segments = (0..n_segments)
        .map(|j| {
            let mid = (j as f64 + 0.5) * width;
            while cursor + 2 < samples.len() && samples[cursor + 1].0 <= mid {
                cursor += 1;
            }
            let (x0, f0) = samples[cursor];
            let (x1, f1) = samples[cursor + 1];
            let t = (mid - x0) / (x1 - x0);
            Segment {
                width,
                value: f0 + t * (f1 - f0),
            }
        })
        .collect();
    Potential::with_width(dx, segments)
}

/// Parses and validates a potential file.
pub fn parse_potential(content: &str) -> Result<Potential, PotentialError> {
    let file: PotentialFile =
        serde_json::from_str(content).map_err(|e| PotentialError::Syntax(e.to_string()))?;
    Potential::with_width(file.dx_nm, file.segments)
}
