//! The connectivity curve `kappa(lambda)`: the number of connected components of
//! the thresholded space as a function of the threshold.
//!
//! Thresholding at `lambda` turns every entry above `lambda` into infinity, and the
//! components of the thresholded space are the path components of its infinity
//! graph. So `kappa(lambda)` counts the components of the graph with an edge
//! `{i, j}` whenever `A_ij > lambda`. Lowering `lambda` only adds edges, which is
//! what lets a single union-find sweep from the top produce the whole curve.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::affinity::AffinityMatrix;
use crate::dsu::DisjointSetForest;
use crate::error::CurveError;
use crate::topology::Partition;

/// Right-continuous nondecreasing step function `kappa(lambda)`.
///
/// `values[0]` holds on `(0, breakpoints[0])`, `values[k]` on
/// `[breakpoints[k-1], breakpoints[k])`, and the last value on
/// `[breakpoints[last], inf)`. Breakpoints are the thresholds where `kappa`
/// actually jumps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConnectivityCurve {
    n: usize,
    breakpoints: Vec<f64>,
    values: Vec<usize>,
}

impl ConnectivityCurve {
    /// Checks the step-function invariants: matching lengths, strictly increasing
    /// finite positive breakpoints, nondecreasing values within `[1, n]`.
    pub fn new(n: usize, breakpoints: Vec<f64>, values: Vec<usize>) -> Result<Self, CurveError> {
        let bad = |msg: &str| Err(CurveError::Malformed(msg.to_string()));
        if n == 0 {
            return bad("n must be positive");
        }
        if values.len() != breakpoints.len() + 1 {
            return bad("values must have one more entry than breakpoints");
        }
        if breakpoints.iter().any(|b| !(b.is_finite() && *b > 0.0)) {
            return bad("breakpoints must be finite and strictly positive");
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return bad("breakpoints must be strictly increasing");
        }
        if values.iter().any(|&v| v < 1 || v > n) {
            return bad("values must lie in [1, n]");
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return bad("values must be nondecreasing");
        }
        Ok(ConnectivityCurve { n, breakpoints, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// The stabilized value `kappa_A`, reached for every `lambda` at or above the
    /// last breakpoint.
    pub fn kappa_inf(&self) -> usize {
        *self.values.last().expect("curve has at least one value")
    }

    /// `kappa(lambda)`; at a breakpoint the post-jump value is returned.
    pub fn evaluate(&self, lambda: f64) -> Result<usize, CurveError> {
        if !(lambda > 0.0) {
            return Err(CurveError::NonPositiveThreshold(lambda));
        }
        Ok(self.values[self.interval(lambda)])
    }

    /// Index into `values` of the interval containing `lambda`.
    fn interval(&self, lambda: f64) -> usize {
        self.breakpoints.partition_point(|&b| b <= lambda)
    }

    /// Intervals as `(low, high, kappa)` with `high = inf` on the last one.
    pub fn intervals(&self) -> impl Iterator<Item = (f64, f64, usize)> + '_ {
        let lows = std::iter::once(0.0).chain(self.breakpoints.iter().copied());
        let highs = self.breakpoints.iter().copied().chain(std::iter::once(f64::INFINITY));
        lows.zip(highs).zip(self.values.iter().copied()).map(|((l, h), k)| (l, h, k))
    }
}

/// Options for [`connectivity_sweep_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CurveOptions {
    /// Round finite affinities to this many significant digits before the sweep,
    /// so values that differ only by noise share a breakpoint. Off by default.
    pub quantize: Option<u32>,
}

/// Rounds `value` to `digits` significant decimal digits.
pub fn quantize(value: f64, digits: u32) -> f64 {
    let digits = digits.max(1) as usize;
    format!("{:.*e}", digits - 1, value)
        .parse()
        .expect("formatted float parses")
}

/// Result of the union-find sweep: the curve and the component partition on each
/// of its intervals (`partitions[k]` goes with `values[k]`).
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub curve: ConnectivityCurve,
    pub partitions: Vec<Partition>,
}

impl Sweep {
    /// The component partition of the space thresholded at `lambda`.
    pub fn partition_at(&self, lambda: f64) -> Result<&Partition, CurveError> {
        if !(lambda > 0.0) {
            return Err(CurveError::NonPositiveThreshold(lambda));
        }
        Ok(&self.partitions[self.curve.interval(lambda)])
    }
}

/// Exact connectivity curve of `a`.
pub fn connectivity_curve(a: &AffinityMatrix) -> ConnectivityCurve {
    run_sweep(a, CurveOptions::default(), false).curve
}

/// Connectivity curve with options (quantization).
pub fn connectivity_curve_with(a: &AffinityMatrix, options: CurveOptions) -> ConnectivityCurve {
    run_sweep(a, options, false).curve
}

/// Curve plus the partition on each interval.
pub fn connectivity_sweep(a: &AffinityMatrix) -> Sweep {
    run_sweep(a, CurveOptions::default(), true)
}

pub fn connectivity_sweep_with(a: &AffinityMatrix, options: CurveOptions) -> Sweep {
    run_sweep(a, options, true)
}

fn run_sweep(a: &AffinityMatrix, options: CurveOptions, keep_partitions: bool) -> Sweep {
    let n = a.n();
    let mut forest = DisjointSetForest::new(n);
    let mut edges: Vec<(f64, usize, usize)> = Vec::new();
    for (i, j, v) in a.pairs() {
        match v.finite() {
            None => {
                forest.union(i, j);
            }
            Some(x) => {
                let x = options.quantize.map_or(x, |d| quantize(x, d));
                edges.push((x, i, j));
            }
        }
    }
    // Decreasing affinity: the order in which edges appear as lambda drops.
    edges.sort_by(|p, q| q.0.total_cmp(&p.0));

    let snapshot = |forest: &mut DisjointSetForest| Partition::from_labels(&forest.roots());

    // Built from the top down and reversed at the end.
    let mut jumps: Vec<f64> = Vec::new();
    let mut counts: Vec<usize> = vec![forest.component_count()];
    let mut partitions: Vec<Partition> = Vec::new();
    if keep_partitions {
        partitions.push(snapshot(&mut forest));
    }

    let mut start = 0;
    while start < edges.len() {
        let value = edges[start].0;
        let mut end = start;
        let before = forest.component_count();
        // Ties merge together: no lambda separates equal affinities.
        while end < edges.len() && edges[end].0 == value {
            let (_, i, j) = edges[end];
            forest.union(i, j);
            end += 1;
        }
        if forest.component_count() < before {
            jumps.push(value);
            counts.push(forest.component_count());
            if keep_partitions {
                partitions.push(snapshot(&mut forest));
            }
        }
        start = end;
    }

    jumps.reverse();
    counts.reverse();
    partitions.reverse();
    Sweep {
        curve: ConnectivityCurve { n, breakpoints: jumps, values: counts },
        partitions,
    }
}

/// `kappa(lambda)` by breadth-first search on the graph `{i, j : A_ij > lambda}`,
/// without reference to the sweep.
pub fn kappa_at(a: &AffinityMatrix, lambda: f64) -> Result<usize, CurveError> {
    if !(lambda > 0.0) {
        return Err(CurveError::NonPositiveThreshold(lambda));
    }
    let n = a.n();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    let mut components = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for (v, w) in a.row(u).iter().enumerate() {
                if !seen[v] && w.get() > lambda {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    Ok(components)
}

/// A curve mapped onto the unit square: `lambda` in `[v_1, v_m]` goes to
/// `[0, 1]`, `kappa` in `[kappa(v_1), n]` goes to `[0, 1]`.
struct UnitSteps {
    /// Left ends of the steps, starting at 0.
    starts: Vec<f64>,
    heights: Vec<f64>,
}

impl UnitSteps {
    fn new(curve: &ConnectivityCurve) -> Result<Self, CurveError> {
        let b = curve.breakpoints();
        if b.len() < 2 {
            return Err(CurveError::DegenerateCurve("fewer than two breakpoints"));
        }
        let (lo, hi) = (b[0], b[b.len() - 1]);
        let floor = curve.values()[1];
        if curve.n() <= floor {
            return Err(CurveError::DegenerateCurve("constant kappa"));
        }
        let span = (curve.n() - floor) as f64;
        let m = b.len();
        let starts = b[..m - 1].iter().map(|&v| (v - lo) / (hi - lo)).collect();
        let heights = curve.values()[1..m]
            .iter()
            .map(|&k| (k - floor) as f64 / span)
            .collect();
        Ok(UnitSteps { starts, heights })
    }

    fn at(&self, t: f64) -> f64 {
        let k = self.starts.partition_point(|&s| s <= t);
        self.heights[k.saturating_sub(1)]
    }

    /// Steps as `(left, right, height)` covering `[0, 1]`.
    fn pieces(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let ends = self.starts[1..].iter().copied().chain(std::iter::once(1.0));
        self.starts
            .iter()
            .copied()
            .zip(ends)
            .zip(self.heights.iter().copied())
            .map(|((a, b), h)| (a, b, h))
    }
}

/// L1 distance between two curves after each is rescaled onto the unit square.
///
/// Not a quantity from the underlying theory: a shape diagnostic for comparing
/// curves of different spaces.
pub fn compare(c1: &ConnectivityCurve, c2: &ConnectivityCurve) -> Result<f64, CurveError> {
    let (f, g) = (UnitSteps::new(c1)?, UnitSteps::new(c2)?);
    let mut cuts: Vec<f64> = f.starts.iter().chain(&g.starts).copied().chain([1.0]).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    Ok(cuts
        .windows(2)
        .map(|w| {
            let mid = 0.5 * (w[0] + w[1]);
            (f.at(mid) - g.at(mid)).abs() * (w[1] - w[0])
        })
        .sum())
}

/// Twice the signed area between the rescaled curve and the diagonal of the unit
/// square, in `[-1, 1]`. Positive when the curve sits above the diagonal
/// (concave-looking), negative below it.
pub fn concavity_score(curve: &ConnectivityCurve) -> Result<f64, CurveError> {
    if curve.breakpoints().len() < 3 {
        return Err(CurveError::DegenerateCurve("fewer than three breakpoints"));
    }
    let steps = UnitSteps::new(curve)?;
    let area: f64 = steps
        .pieces()
        .map(|(a, b, h)| h * (b - a) - 0.5 * (b * b - a * a))
        .sum();
    Ok(2.0 * area)
}
