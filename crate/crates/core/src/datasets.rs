//! The four synthetic point sets on the real line.

use std::fmt;
use std::str::FromStr;

use crate::affinity::PointSet;

/// Default number of points per sequence.
pub const DEFAULT_POINTS: usize = 20;

/// Generating sequence for a 1-D example.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    /// `log2(i)`
    Log2,
    /// `sqrt(i - 1)`
    SqrtShift,
    /// `20 (1 - 1/i)`
    HarmonicCap,
    /// `20 (1 - (5/6)^(i-1))`
    GeometricCap,
}

impl SequenceKind {
    pub const ALL: [SequenceKind; 4] = [
        SequenceKind::Log2,
        SequenceKind::SqrtShift,
        SequenceKind::HarmonicCap,
        SequenceKind::GeometricCap,
    ];

    /// Value of the generating function at index `i >= 1`.
    pub fn value(self, i: usize) -> f64 {
        let x = i as f64;
        match self {
            SequenceKind::Log2 => x.log2(),
            SequenceKind::SqrtShift => (x - 1.0).sqrt(),
            // Written as 20 - 20/i: the product form rounds the last gap so its
            // reciprocal lands just above 19.
            SequenceKind::HarmonicCap => 20.0 - 20.0 / x,
            SequenceKind::GeometricCap => 20.0 * (1.0 - (5.0f64 / 6.0).powi(i as i32 - 1)),
        }
    }

    /// Short name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            SequenceKind::Log2 => "log2",
            SequenceKind::SqrtShift => "sqrt",
            SequenceKind::HarmonicCap => "harmonic",
            SequenceKind::GeometricCap => "geometric",
        }
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SequenceKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SequenceKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown sequence kind `{s}` (log2|sqrt|harmonic|geometric)"))
    }
}

/// `f(1), .., f(m)` as a 1-D point set, increasing.
///
/// # Panics
/// If `m < 2`.
pub fn generate_sequence(kind: SequenceKind, m: usize) -> PointSet {
    assert!(m >= 2, "a sequence needs at least two points");
    let values: Vec<f64> = (1..=m).map(|i| kind.value(i)).collect();
    PointSet::from_reals(&values).expect("nonempty")
}
