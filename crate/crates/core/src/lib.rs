//! Connectivity curves of thresholded affinity spaces.
//!
//! An affinity on a finite set is a symmetric, strictly positive function that is
//! infinite on the diagonal; it induces a neighborhood topology on the set.
//! Thresholding at `lambda` promotes every affinity above `lambda` to infinity,
//! and `kappa(lambda)` is the number of connected components of the resulting
//! topology. This crate computes the whole step function `kappa` exactly with one
//! union-find sweep, and ships brute-force topological oracles that check the
//! sweep against the definitions.
//!
//! * [`affinity`]: validated matrices, thresholding, builders from points and maps.
//! * [`topology`]: open sets, connectedness and components, by exhaustion.
//! * [`curve`]: the sweep, point evaluation, and shape diagnostics.
//! * [`datasets`]: the four synthetic sequences on the real line.
//! * [`io`]: CSV and JSON formats for matrices, curves and points.
//! * [`check`]: seeded random cross-checks of all component routes.
//! * [`cli`]: the command-line front end.
//!
//! ```
//! use affinity_kappa::{connectivity_curve, AffinityMatrix};
//!
//! let inf = f64::INFINITY;
//! let a = AffinityMatrix::validate(&[[inf, 2.0], [2.0, inf]]).unwrap();
//! let curve = connectivity_curve(&a);
//! assert_eq!(curve.breakpoints(), &[2.0]);
//! assert_eq!(curve.evaluate(1.9).unwrap(), 1);
//! assert_eq!(curve.evaluate(2.0).unwrap(), 2);
//! ```

pub mod affinity;
pub mod check;
pub mod cli;
pub mod curve;
pub mod datasets;
pub mod dsu;
pub mod error;
pub mod io;
pub mod topology;

pub use affinity::{
    boundary_affinity, ingest, inverse_distance_affinity, metric_affinity, AffinityMatrix,
    AffinityValue, IngestOptions, PointSet, Symmetrize, ZeroPolicy, DEFAULT_EPSILON,
};
pub use curve::{
    compare, concavity_score, connectivity_curve, connectivity_curve_with, connectivity_sweep,
    kappa_at, ConnectivityCurve, CurveOptions, Sweep,
};
pub use datasets::{generate_sequence, SequenceKind};
pub use dsu::DisjointSetForest;
pub use error::{AffinityError, CurveError, IoError, OracleError};
pub use io::Format;
pub use topology::{
    components_graph, components_topological, is_open, minimal_neighborhood, InfinityGraph,
    Partition,
};
