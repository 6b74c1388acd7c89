//! Brute-force oracles for the neighborhood topology of an affinity space.
//!
//! Everything here works from the definitions: open sets are the sets containing
//! a superlevel set `E(x, a) = {y : A(x, y) > a}` around each of their points, a
//! set is connected when no two disjoint open sets split it, and the component of
//! `x` is the union of all connected sets containing `x`. Subsets are `u32`
//! bitmasks, so the exhaustive routines are capped at [`ORACLE_LIMIT`] points.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::affinity::AffinityMatrix;
use crate::error::OracleError;

/// Default size cap for the exhaustive component search.
pub const ORACLE_LIMIT: usize = 12;

/// Hard cap on any limit passed to [`components_topological_with_limit`].
pub const MAX_ORACLE_LIMIT: usize = 20;

/// A set of point indices, bit `i` standing for point `i`.
pub type Mask = u32;

/// Block labels for `{0, .., n-1}`, numbered by first appearance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    labels: Vec<usize>,
    blocks: usize,
}

impl Partition {
    /// Relabels arbitrary block ids into canonical first-appearance order.
    pub fn from_labels<T: Hash + Eq + Copy>(raw: &[T]) -> Self {
        let mut seen: HashMap<T, usize> = HashMap::new();
        let labels = raw
            .iter()
            .map(|r| {
                let next = seen.len();
                *seen.entry(*r).or_insert(next)
            })
            .collect();
        Partition { labels, blocks: seen.len() }
    }

    /// One block per point.
    pub fn discrete(n: usize) -> Self {
        Partition { labels: (0..n).collect(), blocks: n }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Number of blocks, i.e. the component count `kappa`.
    pub fn block_count(&self) -> usize {
        self.blocks
    }

    /// Blocks as sorted index lists, in label order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (i, &b) in self.labels.iter().enumerate() {
            out[b].push(i);
        }
        out
    }
}

/// The graph of pairs with infinite affinity; the diagonal is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfinityGraph {
    n: usize,
    adjacency: Vec<bool>,
}

impl InfinityGraph {
    pub fn new(a: &AffinityMatrix) -> Self {
        let n = a.n();
        let adjacency = (0..n * n).map(|k| a.get(k / n, k % n).is_infinite()).collect();
        InfinityGraph { n, adjacency }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i * self.n + j]
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| j != i && self.is_edge(i, j))
    }

    /// Path components by breadth-first search.
    pub fn components(&self) -> Partition {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        queue.push_back(v);
                    }
                }
            }
            next += 1;
        }
        // BFS from increasing start indices already yields first-appearance order.
        Partition { labels: label, blocks: next }
    }
}

fn check_index(a: &AffinityMatrix, x: usize) -> Result<(), OracleError> {
    if x < a.n() {
        Ok(())
    } else {
        Err(OracleError::IndexOutOfRange { index: x, n: a.n() })
    }
}

/// `{y : A(x, y) = inf}`, the intersection of every `E(x, a)`.
pub fn minimal_neighborhood(a: &AffinityMatrix, x: usize) -> Result<Vec<usize>, OracleError> {
    check_index(a, x)?;
    Ok((0..a.n()).filter(|&y| a.get(x, y).is_infinite()).collect())
}

/// Openness via the minimal-neighborhood reduction: `U` is open iff it contains
/// the minimal neighborhood of each of its points.
pub fn is_open(a: &AffinityMatrix, u: &[usize]) -> Result<bool, OracleError> {
    let mut member = vec![false; a.n()];
    for &x in u {
        check_index(a, x)?;
        member[x] = true;
    }
    for &x in u {
        if (0..a.n()).any(|y| a.get(x, y).is_infinite() && !member[y]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Openness straight from the existential definition: for each `x` in `U`, look
/// for some `a > 0` with `E(x, a)` inside `U`. Only the finitely many distinct
/// superlevel sets need trying, one per candidate `a` below the smallest finite
/// value from `x` and at each finite value.
pub fn is_open_literal(a: &AffinityMatrix, u: &[usize]) -> Result<bool, OracleError> {
    let n = a.n();
    let mut member = vec![false; n];
    for &x in u {
        check_index(a, x)?;
        member[x] = true;
    }
    'points: for &x in u {
        let mut alphas: Vec<f64> = a.row(x).iter().filter_map(|v| v.finite()).collect();
        alphas.sort_by(f64::total_cmp);
        let below = alphas.first().map_or(1.0, |m| m / 2.0);
        for alpha in std::iter::once(below).chain(alphas) {
            let inside = (0..n).all(|y| !(a.get(x, y).get() > alpha) || member[y]);
            if inside {
                continue 'points;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// Minimal neighborhoods as bitmasks.
fn neighborhood_masks(a: &AffinityMatrix) -> Vec<Mask> {
    (0..a.n())
        .map(|x| {
            (0..a.n())
                .filter(|&y| a.get(x, y).is_infinite())
                .fold(0, |m, y| m | (1 << y))
        })
        .collect()
}

fn mask_is_open(nbhd: &[Mask], u: Mask) -> bool {
    nbhd.iter()
        .enumerate()
        .all(|(x, &nx)| u & (1 << x) == 0 || nx & !u == 0)
}

fn full_mask(n: usize) -> Mask {
    if n == 32 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

fn check_limit(n: usize, limit: usize) -> Result<(), OracleError> {
    let limit = limit.min(MAX_ORACLE_LIMIT);
    if n > limit {
        Err(OracleError::TooLargeForOracle { n, limit })
    } else {
        Ok(())
    }
}

/// Every open set of the neighborhood topology, as bitmasks in increasing order.
pub fn open_sets(a: &AffinityMatrix) -> Result<Vec<Mask>, OracleError> {
    check_limit(a.n(), ORACLE_LIMIT)?;
    let nbhd = neighborhood_masks(a);
    Ok((0..=full_mask(a.n())).filter(|&u| mask_is_open(&nbhd, u)).collect())
}

/// The whole topology, precomputed once per matrix.
struct Topology {
    full: Mask,
    /// Pairs `(U, V*)` for each open `U`, where `V*` is the largest open set
    /// disjoint from `U`.
    splits: Vec<(Mask, Mask)>,
}

impl Topology {
    fn new(a: &AffinityMatrix) -> Self {
        let nbhd = neighborhood_masks(a);
        let full = full_mask(a.n());
        let splits = (0..=full)
            .filter(|&u| mask_is_open(&nbhd, u))
            .map(|u| {
                let interior = nbhd
                    .iter()
                    .enumerate()
                    .filter(|&(_, &ny)| ny & u == 0)
                    .fold(0, |m, (y, _)| m | (1 << y));
                (u, interior)
            })
            .collect();
        Topology { full, splits }
    }

    /// No open `U` and disjoint open `V` with `S` inside `U ∪ V` and meeting both.
    /// Any disjoint `V` sits inside `V*`, so testing `V*` covers every pair.
    fn is_connected(&self, s: Mask) -> bool {
        !self.splits.iter().any(|&(u, v)| {
            s & u != 0 && s & v != 0 && s & !(u | v) == 0
        })
    }
}

/// Connectedness of a subset, from the definition.
pub fn is_connected_subset(a: &AffinityMatrix, s: &[usize]) -> Result<bool, OracleError> {
    check_limit(a.n(), ORACLE_LIMIT)?;
    let mut mask = 0;
    for &x in s {
        check_index(a, x)?;
        mask |= 1 << x;
    }
    Ok(Topology::new(a).is_connected(mask))
}

/// Literal disconnection test over all ordered pairs of disjoint open sets.
/// Quadratic in the number of open sets; meant for small cross-checks.
pub fn is_connected_subset_literal(a: &AffinityMatrix, s: &[usize]) -> Result<bool, OracleError> {
    let opens = open_sets(a)?;
    let mut mask = 0;
    for &x in s {
        check_index(a, x)?;
        mask |= 1 << x;
    }
    for &u in &opens {
        for &v in &opens {
            if u & v == 0 && mask & !(u | v) == 0 && mask & u != 0 && mask & v != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Connected components from the topological definition, capped at
/// [`ORACLE_LIMIT`] points.
pub fn components_topological(a: &AffinityMatrix) -> Result<Partition, OracleError> {
    components_topological_with_limit(a, ORACLE_LIMIT)
}

/// As [`components_topological`] with an explicit size cap (at most
/// [`MAX_ORACLE_LIMIT`]).
pub fn components_topological_with_limit(
    a: &AffinityMatrix,
    limit: usize,
) -> Result<Partition, OracleError> {
    let n = a.n();
    check_limit(n, limit)?;
    let topology = Topology::new(a);
    // component[x] = union of every connected subset containing x.
    let mut component: Vec<Mask> = (0..n).map(|x| 1 << x).collect();
    for s in 1..=topology.full {
        if s.count_ones() < 2 || !topology.is_connected(s) {
            continue;
        }
        for (x, c) in component.iter_mut().enumerate() {
            if s & (1 << x) != 0 {
                *c |= s;
            }
        }
    }
    let labels: Vec<Mask> = component;
    Ok(Partition::from_labels(&labels))
}

/// Path components of the infinity graph.
pub fn components_graph(a: &AffinityMatrix) -> Partition {
    InfinityGraph::new(a).components()
}
