//! Affinities from map data: shared boundary length between regions, and the
//! inverse distance between region centers. Uses the hand-made fixtures.
//!
//!     cargo run --example geographic_affinities

use std::path::Path;

use affinity_kappa::io::{load_points, load_raw_csv};
use affinity_kappa::{
    boundary_affinity, concavity_score, connectivity_curve, inverse_distance_affinity,
    ConnectivityCurve, DEFAULT_EPSILON,
};

fn describe(label: &str, curve: &ConnectivityCurve) {
    let score = concavity_score(curve).map_or("n/a".to_string(), |s| format!("{s:+.4}"));
    println!("{label}: breakpoints {:?}", curve.breakpoints());
    println!("{:width$}  values      {:?}  concavity {score}", "", curve.values(), width = label.len());
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");

    // Regions that do not touch get the epsilon floor, so they only connect
    // below every threshold of interest.
    let lengths = load_raw_csv(fixtures.join("boundaries.csv"))?;
    let by_boundary = boundary_affinity(&lengths, DEFAULT_EPSILON)?;
    describe("shared boundary", &connectivity_curve(&by_boundary));

    let centers = load_points(fixtures.join("centers.csv"))?;
    let by_distance = inverse_distance_affinity(&centers);
    describe("inverse distance", &connectivity_curve(&by_distance));
    Ok(())
}
