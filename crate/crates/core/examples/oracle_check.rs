//! Seeded random check that the topological definition, graph paths and the
//! union-find sweep agree on every component partition.
//!
//!     cargo run --release --example oracle_check -- 7

use affinity_kappa::check::{oracle_check, OracleCheckConfig};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let config = OracleCheckConfig { n_max: 8, trials: 50, seed };
    let outcomes = oracle_check(config);
    for t in outcomes.iter().filter(|t| !t.passed()) {
        println!("trial {} (n={}) failed: {}", t.trial, t.n, t.failure.as_deref().unwrap_or(""));
    }
    let passed = outcomes.iter().filter(|t| t.passed()).count();
    println!("seed {seed}: {passed}/{} PASS", outcomes.len());
}
