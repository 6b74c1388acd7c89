//! Affinity spaces: validated symmetric matrices with an infinite diagonal,
//! thresholding, and the constructors used for point data and map data.

use std::cmp::Ordering;
use std::fmt;

use crate::error::AffinityError;

/// Floor substituted for zero affinities by builders that accept "no connection".
pub const DEFAULT_EPSILON: f64 = 1e-12;

/// A strictly positive extended real: finite and `> 0`, or `+inf`.
///
/// Infinity is the IEEE positive infinity, so comparisons against it are exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffinityValue(f64);

impl AffinityValue {
    pub const INFINITY: AffinityValue = AffinityValue(f64::INFINITY);

    /// Wraps `value`, rejecting NaN, zero and negatives.
    pub fn new(value: f64) -> Option<Self> {
        if value > 0.0 {
            Some(AffinityValue(value))
        } else {
            None
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0 == f64::INFINITY
    }

    pub fn is_finite(self) -> bool {
        !self.is_infinite()
    }

    /// The finite value, or `None` for infinity.
    pub fn finite(self) -> Option<f64> {
        self.is_finite().then_some(self.0)
    }
}

impl Eq for AffinityValue {}

impl PartialOrd for AffinityValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AffinityValue {
    fn cmp(&self, other: &Self) -> Ordering {
        // NaN is unrepresentable, so total_cmp agrees with the numeric order.
        self.0.total_cmp(&other.0)
    }
}

impl fmt::Display for AffinityValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// A finite affinity space `(X, A)` with `X = {0, .., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinityMatrix {
    n: usize,
    entries: Vec<AffinityValue>,
}

impl AffinityMatrix {
    /// Checks squareness, infinite diagonal, positivity and symmetry, in that order
    /// for each row-major cell. Reports the first failure.
    pub fn validate<R: AsRef<[f64]>>(raw: &[R]) -> Result<Self, AffinityError> {
        let n = check_square(raw)?;
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in raw.iter().enumerate() {
            for (j, &v) in row.as_ref().iter().enumerate() {
                if v.is_nan() {
                    return Err(AffinityError::NotANumber(i, j));
                }
                if i == j {
                    if v != f64::INFINITY {
                        return Err(AffinityError::FiniteDiagonal(i));
                    }
                } else {
                    if v <= 0.0 {
                        return Err(AffinityError::NonPositiveEntry(i, j));
                    }
                    // Compare against the transpose once, from the upper triangle.
                    if i < j && v != raw[j].as_ref()[i] {
                        return Err(AffinityError::AsymmetricEntry(i, j));
                    }
                }
                entries.push(AffinityValue(v));
            }
        }
        Ok(AffinityMatrix { n, entries })
    }

    /// The affinity `A1 = +inf` on `n` points (trivial topology).
    pub fn all_infinite(n: usize) -> Self {
        assert!(n > 0, "affinity space needs at least one point");
        AffinityMatrix {
            n,
            entries: vec![AffinityValue::INFINITY; n * n],
        }
    }

    /// Every off-diagonal entry equal to `value` (with `value = 1` this is the
    /// discrete-topology example).
    pub fn constant(n: usize, value: f64) -> Result<Self, AffinityError> {
        assert!(n > 0, "affinity space needs at least one point");
        let v = AffinityValue::new(value).ok_or(AffinityError::NonPositiveEntry(0, 1))?;
        Ok(Self::from_fn(n, |_, _| v))
    }

    /// Builds a matrix from the upper triangle supplied by `f(i, j)` with `i < j`.
    pub(crate) fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> AffinityValue) -> Self {
        let mut entries = vec![AffinityValue::INFINITY; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = f(i, j);
                entries[i * n + j] = v;
                entries[j * n + i] = v;
            }
        }
        AffinityMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> AffinityValue {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[AffinityValue] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Entries as plain `f64` rows, infinity included.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|v| v.get()).collect())
            .collect()
    }

    /// Upper-triangle pairs `(i, j, A_ij)` with `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, AffinityValue)> + '_ {
        (0..self.n).flat_map(move |i| ((i + 1)..self.n).map(move |j| (i, j, self.get(i, j))))
    }

    /// Sorted distinct finite off-diagonal values.
    pub fn finite_values(&self) -> Vec<f64> {
        let mut values: Vec<f64> = self.pairs().filter_map(|(_, _, v)| v.finite()).collect();
        values.sort_by(f64::total_cmp);
        values.dedup();
        values
    }

    /// Largest finite off-diagonal entry, `M` in the stabilization argument.
    pub fn max_finite(&self) -> Option<f64> {
        self.finite_values().last().copied()
    }

    /// `A^lambda`: entries strictly above `lambda` become infinite, the rest are kept.
    pub fn threshold(&self, lambda: f64) -> Result<Self, AffinityError> {
        if !(lambda > 0.0) {
            return Err(AffinityError::NonPositiveThreshold(lambda));
        }
        let entries = self
            .entries
            .iter()
            .map(|&v| if v.get() > lambda { AffinityValue::INFINITY } else { v })
            .collect();
        Ok(AffinityMatrix { n: self.n, entries })
    }

    /// Divides every finite entry by the largest finite entry.
    pub fn normalize(&self) -> Result<Self, AffinityError> {
        let max = self.max_finite().ok_or(AffinityError::AllInfinite)?;
        Ok(self.map_finite(|v| v / max))
    }

    /// `c * A` with infinity fixed.
    pub fn scale(&self, factor: f64) -> Result<Self, AffinityError> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(AffinityError::InvalidScale(factor));
        }
        Ok(self.map_finite(|v| v * factor))
    }

    /// Applies `f` to every finite entry. `f` must keep values strictly positive.
    pub(crate) fn map_finite(&self, f: impl Fn(f64) -> f64) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|&v| match v.finite() {
                Some(x) => {
                    let y = f(x);
                    debug_assert!(y > 0.0);
                    AffinityValue(y)
                }
                None => v,
            })
            .collect();
        AffinityMatrix { n: self.n, entries }
    }
}

fn check_square<R: AsRef<[f64]>>(raw: &[R]) -> Result<usize, AffinityError> {
    let n = raw.len();
    if n == 0 {
        return Err(AffinityError::Empty);
    }
    for (row, r) in raw.iter().enumerate() {
        let len = r.as_ref().len();
        if len != n {
            return Err(AffinityError::NotSquare { row, len, expected: n });
        }
    }
    Ok(n)
}

/// A nonempty list of points in 1-D or 2-D Euclidean space.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    pub fn new(dim: usize, points: &[Vec<f64>]) -> Result<Self, AffinityError> {
        if dim != 1 && dim != 2 {
            return Err(AffinityError::UnsupportedDimension(dim));
        }
        if points.is_empty() {
            return Err(AffinityError::EmptyPointSet);
        }
        let mut coords = Vec::with_capacity(points.len() * dim);
        for (index, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(AffinityError::DimensionMismatch { index, len: p.len(), dim });
            }
            coords.extend_from_slice(p);
        }
        Ok(PointSet { dim, coords })
    }

    pub fn from_reals(values: &[f64]) -> Result<Self, AffinityError> {
        if values.is_empty() {
            return Err(AffinityError::EmptyPointSet);
        }
        Ok(PointSet { dim: 1, coords: values.to_vec() })
    }

    pub fn from_planar(points: &[(f64, f64)]) -> Result<Self, AffinityError> {
        if points.is_empty() {
            return Err(AffinityError::EmptyPointSet);
        }
        let coords = points.iter().flat_map(|&(x, y)| [x, y]).collect();
        Ok(PointSet { dim: 2, coords })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let (p, q) = (self.point(i), self.point(j));
        match self.dim {
            1 => (p[0] - q[0]).abs(),
            _ => (p[0] - q[0]).hypot(p[1] - q[1]),
        }
    }
}

/// `A(x, y) = 1 / |x - y|`; coincident points get infinite affinity.
pub fn metric_affinity(points: &PointSet) -> AffinityMatrix {
    AffinityMatrix::from_fn(points.len(), |i, j| {
        let d = points.distance(i, j);
        if d == 0.0 {
            AffinityValue::INFINITY
        } else {
            // 1/d can only overflow to +inf for subnormal d, which is the right limit.
            AffinityValue(1.0 / d)
        }
    })
}

/// Inverse Euclidean distance between region centers. Same conventions as
/// [`metric_affinity`].
pub fn inverse_distance_affinity(centers: &PointSet) -> AffinityMatrix {
    metric_affinity(centers)
}

/// Shared boundary lengths as affinities. Pairs with no shared boundary get
/// `epsilon`; the input diagonal is ignored.
pub fn boundary_affinity<R: AsRef<[f64]>>(
    shared_lengths: &[R],
    epsilon: f64,
) -> Result<AffinityMatrix, AffinityError> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(AffinityError::InvalidEpsilon(epsilon));
    }
    let n = check_square(shared_lengths)?;
    let cell = |i: usize, j: usize| shared_lengths[i].as_ref()[j];
    for i in 0..n {
        for j in 0..n {
            let v = cell(i, j);
            if v.is_nan() {
                return Err(AffinityError::NotANumber(i, j));
            }
            if i != j {
                if v < 0.0 {
                    return Err(AffinityError::NegativeLength(i, j));
                }
                if i < j && v != cell(j, i) {
                    return Err(AffinityError::AsymmetricEntry(i, j));
                }
            }
        }
    }
    Ok(AffinityMatrix::from_fn(n, |i, j| {
        let l = cell(i, j);
        AffinityValue(if l > 0.0 { l } else { epsilon })
    }))
}

/// How to treat raw directed data whose transpose differs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Symmetrize {
    /// Reject asymmetric input.
    #[default]
    Require,
    /// `A_ij = raw_ij + raw_ji`.
    Sum,
}

/// How to treat zero off-diagonal entries in raw data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroPolicy {
    /// Replace zeros by the given positive floor.
    Epsilon(f64),
    /// Leave zeros in place, so validation rejects them.
    Reject,
}

impl Default for ZeroPolicy {
    fn default() -> Self {
        ZeroPolicy::Epsilon(DEFAULT_EPSILON)
    }
}

/// Options applied to raw matrices before validation.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IngestOptions {
    pub symmetrize: Symmetrize,
    pub zero_policy: ZeroPolicy,
}

/// Symmetrizes raw data, applies the zero policy, then validates.
pub fn ingest(raw: &[Vec<f64>], options: IngestOptions) -> Result<AffinityMatrix, AffinityError> {
    let n = check_square(raw)?;
    let mut work = raw.to_vec();
    match options.symmetrize {
        Symmetrize::Require => {
            for i in 0..n {
                for j in (i + 1)..n {
                    let (a, b) = (raw[i][j], raw[j][i]);
                    // NaN is reported by validation.
                    if a != b && !(a.is_nan() || b.is_nan()) {
                        return Err(AffinityError::SymmetrizationRejected(i, j));
                    }
                }
            }
        }
        Symmetrize::Sum => {
            for i in 0..n {
                for j in (i + 1)..n {
                    let s = raw[i][j] + raw[j][i];
                    work[i][j] = s;
                    work[j][i] = s;
                }
            }
        }
    }
    if let ZeroPolicy::Epsilon(eps) = options.zero_policy {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(AffinityError::InvalidEpsilon(eps));
        }
        for (i, row) in work.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                if i != j && *v == 0.0 {
                    *v = eps;
                }
            }
        }
    }
    AffinityMatrix::validate(&work)
}

#[cfg(test)]
mod tests {
    use super::*;

    const INF: f64 = f64::INFINITY;

    #[test]
    fn validate_accepts_minimal_instance() {
        let a = AffinityMatrix::validate(&[[INF, 2.0], [2.0, INF]]).unwrap();
        assert_eq!(a.n(), 2);
        assert_eq!(a.get(0, 1).get(), 2.0);
        assert!(a.get(1, 1).is_infinite());
    }

    #[test]
    fn validate_reports_each_violation() {
        assert_eq!(
            AffinityMatrix::validate(&[[INF, 2.0], [3.0, INF]]),
            Err(AffinityError::AsymmetricEntry(0, 1))
        );
        assert_eq!(
            AffinityMatrix::validate(&[[INF, 0.0], [0.0, INF]]),
            Err(AffinityError::NonPositiveEntry(0, 1))
        );
        assert_eq!(
            AffinityMatrix::validate(&[[INF, -1.0], [-1.0, INF]]),
            Err(AffinityError::NonPositiveEntry(0, 1))
        );
        assert_eq!(
            AffinityMatrix::validate(&[[INF, 1.0], [1.0, 5.0]]),
            Err(AffinityError::FiniteDiagonal(1))
        );
        assert_eq!(
            AffinityMatrix::validate(&[vec![INF, 1.0], vec![1.0]]),
            Err(AffinityError::NotSquare { row: 1, len: 1, expected: 2 })
        );
        assert_eq!(AffinityMatrix::validate::<Vec<f64>>(&[]), Err(AffinityError::Empty));
        assert_eq!(
            AffinityMatrix::validate(&[[INF, f64::NAN], [f64::NAN, INF]]),
            Err(AffinityError::NotANumber(0, 1))
        );
    }

    #[test]
    fn off_diagonal_infinity_is_allowed() {
        let a = AffinityMatrix::validate(&[[INF, INF], [INF, INF]]).unwrap();
        assert!(a.finite_values().is_empty());
        assert_eq!(a, AffinityMatrix::all_infinite(2));
    }

    #[test]
    fn infinity_orders_above_finite() {
        let big = AffinityValue::new(f64::MAX).unwrap();
        assert!(AffinityValue::INFINITY > big);
        assert_eq!(AffinityValue::INFINITY, AffinityValue::INFINITY);
        assert!(AffinityValue::new(0.0).is_none());
        assert!(AffinityValue::new(f64::NAN).is_none());
    }

    #[test]
    fn threshold_strict_case_split() {
        let a = AffinityMatrix::validate(&[[INF, 3.0], [3.0, INF]]).unwrap();
        assert_eq!(a.threshold(2.0).unwrap(), AffinityMatrix::all_infinite(2));
        assert_eq!(a.threshold(3.0).unwrap(), a);
        assert_eq!(a.threshold(0.0), Err(AffinityError::NonPositiveThreshold(0.0)));
        assert!(a.threshold(-1.0).is_err());
        assert!(a.threshold(f64::NAN).is_err());
    }

    #[test]
    fn threshold_above_max_is_identity() {
        let a = AffinityMatrix::validate(&[
            [INF, 1.0, 4.0],
            [1.0, INF, INF],
            [4.0, INF, INF],
        ])
        .unwrap();
        assert_eq!(a.max_finite(), Some(4.0));
        assert_eq!(a.threshold(4.0 + 1e-9).unwrap(), a);
        assert_ne!(a.threshold(3.9).unwrap(), a);
    }

    #[test]
    fn metric_affinity_examples() {
        let a = metric_affinity(&PointSet::from_reals(&[0.0, 2.0]).unwrap());
        assert_eq!(a.get(0, 1).get(), 0.5);

        let a = metric_affinity(&PointSet::from_reals(&[0.0, 0.0]).unwrap());
        assert!(a.get(0, 1).is_infinite());

        let pts = [0.0, 1.0, 3.0];
        let a = metric_affinity(&PointSet::from_reals(&pts).unwrap());
        // Independent route: pairwise distances straight from the slice.
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(a.get(i, j).get(), 1.0 / (pts[i] - pts[j]).abs());
                }
            }
        }
        assert_eq!(a.get(0, 1).get(), 1.0);
        assert_eq!(a.get(1, 2).get(), 0.5);
        assert_eq!(a.get(0, 2).get(), 1.0 / 3.0);
    }

    #[test]
    fn inverse_distance_examples() {
        let a = inverse_distance_affinity(&PointSet::from_planar(&[(0.0, 0.0), (3.0, 4.0)]).unwrap());
        assert_eq!(a.get(0, 1).get(), 0.2);

        let a = inverse_distance_affinity(&PointSet::from_planar(&[(1.0, 1.0)]).unwrap());
        assert_eq!(a, AffinityMatrix::all_infinite(1));

        let line = PointSet::from_planar(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]).unwrap();
        let a = inverse_distance_affinity(&line);
        assert_eq!(a.get(0, 2).get(), 0.5);
        let b = metric_affinity(&PointSet::from_reals(&[0.0, 1.0, 2.0]).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn point_set_rejects_bad_shapes() {
        assert_eq!(PointSet::new(1, &[]), Err(AffinityError::EmptyPointSet));
        assert_eq!(
            PointSet::new(2, &[vec![0.0, 1.0], vec![2.0]]),
            Err(AffinityError::DimensionMismatch { index: 1, len: 1, dim: 2 })
        );
        assert_eq!(PointSet::new(3, &[vec![0.0; 3]]), Err(AffinityError::UnsupportedDimension(3)));
    }

    #[test]
    fn boundary_affinity_examples() {
        let a = boundary_affinity(&[[0.0, 4.2], [4.2, 0.0]], DEFAULT_EPSILON).unwrap();
        assert_eq!(a.get(0, 1).get(), 4.2);

        let a = boundary_affinity(&[[0.0, 0.0], [0.0, 0.0]], DEFAULT_EPSILON).unwrap();
        assert_eq!(a.get(0, 1).get(), DEFAULT_EPSILON);

        let a = boundary_affinity(&[[0.0]], DEFAULT_EPSILON).unwrap();
        assert_eq!(a, AffinityMatrix::all_infinite(1));

        assert_eq!(
            boundary_affinity(&[[0.0, -1.0], [-1.0, 0.0]], DEFAULT_EPSILON),
            Err(AffinityError::NegativeLength(0, 1))
        );
        assert_eq!(
            boundary_affinity(&[[0.0, 1.0], [2.0, 0.0]], DEFAULT_EPSILON),
            Err(AffinityError::AsymmetricEntry(0, 1))
        );
        assert!(boundary_affinity(&[[0.0, 1.0]], DEFAULT_EPSILON).is_err());
        assert_eq!(
            boundary_affinity(&[[0.0]], 0.0),
            Err(AffinityError::InvalidEpsilon(0.0))
        );
    }

    #[test]
    fn normalize_examples() {
        let a = AffinityMatrix::validate(&[
            [INF, 2.0, 4.0],
            [2.0, INF, 8.0],
            [4.0, 8.0, INF],
        ])
        .unwrap();
        let b = a.normalize().unwrap();
        assert_eq!(b.get(0, 1).get(), 0.25);
        assert_eq!(b.get(0, 2).get(), 0.5);
        assert_eq!(b.get(1, 2).get(), 1.0);
        assert_eq!(b.normalize().unwrap(), b);
        assert_eq!(
            AffinityMatrix::all_infinite(3).normalize(),
            Err(AffinityError::AllInfinite)
        );
    }

    #[test]
    fn ingest_symmetrize_and_zero_policy() {
        let raw = vec![vec![INF, 3.0], vec![5.0, INF]];
        let sum = IngestOptions { symmetrize: Symmetrize::Sum, ..Default::default() };
        assert_eq!(ingest(&raw, sum).unwrap().get(0, 1).get(), 8.0);
        assert_eq!(
            ingest(&raw, IngestOptions::default()),
            Err(AffinityError::SymmetrizationRejected(0, 1))
        );

        let zeros = vec![vec![INF, 0.0], vec![0.0, INF]];
        assert_eq!(
            ingest(&zeros, IngestOptions::default()).unwrap().get(0, 1).get(),
            DEFAULT_EPSILON
        );
        let reject = IngestOptions { zero_policy: ZeroPolicy::Reject, ..Default::default() };
        assert_eq!(ingest(&zeros, reject), Err(AffinityError::NonPositiveEntry(0, 1)));

        let one_way = vec![vec![INF, 0.0], vec![2.0, INF]];
        assert_eq!(ingest(&one_way, sum).unwrap().get(1, 0).get(), 2.0);
    }
}
