//! Randomized cross-check of the three component routes: the topological
//! definition, graph paths, and the union-find sweep.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::affinity::AffinityMatrix;
use crate::curve::{connectivity_sweep, kappa_at};
use crate::topology::{components_graph, components_topological, ORACLE_LIMIT};

/// Entry pool for random matrices: few values, so ties are common, plus infinity.
pub const VALUE_POOL: [f64; 5] = [0.5, 1.0, 2.0, 3.0, f64::INFINITY];

/// Symmetric matrix of `n` points with off-diagonal entries drawn from `pool`.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, pool: &[f64]) -> AffinityMatrix {
    let mut rows = vec![vec![f64::INFINITY; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = *pool.choose(rng).expect("nonempty pool");
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    AffinityMatrix::validate(&rows).expect("pool values are positive")
}

/// Thresholds worth probing: just below the smallest finite value, every finite
/// value, the midpoints between them, and well above the largest.
pub fn probe_thresholds(a: &AffinityMatrix) -> Vec<f64> {
    let values = a.finite_values();
    let Some((&lo, &hi)) = values.first().zip(values.last()) else {
        return vec![1.0];
    };
    let mut out = vec![lo / 2.0, lo * (1.0 - 1e-9)];
    for (k, &v) in values.iter().enumerate() {
        out.push(v);
        if let Some(&next) = values.get(k + 1) {
            out.push(0.5 * (v + next));
        }
    }
    out.push(hi * 2.0);
    out
}

/// Runs every route at every probe threshold; describes the first disagreement.
pub fn check_matrix(a: &AffinityMatrix) -> Result<(), String> {
    let sweep = connectivity_sweep(a);
    let curve = &sweep.curve;
    if curve.values().windows(2).any(|w| w[0] > w[1]) {
        return Err(format!("curve not monotone: {:?}", curve.values()));
    }
    let infinity_count = components_graph(a).block_count();
    if curve.kappa_inf() != infinity_count {
        return Err(format!(
            "stabilized value {} != infinity-graph components {infinity_count}",
            curve.kappa_inf()
        ));
    }
    for lambda in probe_thresholds(a) {
        let thresholded = a.threshold(lambda).map_err(|e| e.to_string())?;
        let topo = components_topological(&thresholded).map_err(|e| e.to_string())?;
        let graph = components_graph(&thresholded);
        let swept = sweep.partition_at(lambda).map_err(|e| e.to_string())?;
        let direct = kappa_at(a, lambda).map_err(|e| e.to_string())?;
        let evaluated = curve.evaluate(lambda).map_err(|e| e.to_string())?;
        if topo != graph || &graph != swept {
            return Err(format!(
                "lambda={lambda}: topological {:?}, graph {:?}, sweep {:?}",
                topo.labels(),
                graph.labels(),
                swept.labels()
            ));
        }
        if direct != graph.block_count() || evaluated != direct {
            return Err(format!(
                "lambda={lambda}: kappa_at {direct}, evaluate {evaluated}, blocks {}",
                graph.block_count()
            ));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCheckConfig {
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for OracleCheckConfig {
    fn default() -> Self {
        OracleCheckConfig { n_max: 10, trials: 200, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialOutcome {
    pub trial: usize,
    pub n: usize,
    pub failure: Option<String>,
}

impl TrialOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Seeded random-matrix equivalence run with `n` uniform in `[2, n_max]`.
///
/// # Panics
/// If `n_max` is outside `[2, ORACLE_LIMIT]`.
pub fn oracle_check(config: OracleCheckConfig) -> Vec<TrialOutcome> {
    assert!(
        (2..=ORACLE_LIMIT).contains(&config.n_max),
        "n_max must lie in [2, {ORACLE_LIMIT}]"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    (0..config.trials)
        .map(|trial| {
            let n = rng.random_range(2..=config.n_max);
            let a = random_matrix(&mut rng, n, &VALUE_POOL);
            TrialOutcome { trial, n, failure: check_matrix(&a).err() }
        })
        .collect()
}
