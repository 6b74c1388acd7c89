//! Connectivity curves of the four synthetic point sets on the real line,
//! with the metric affinity `1/|x - y|`.
//!
//! Prints one summary line per sequence and writes `<kind>_points.csv` and
//! `<kind>_curve.csv` into the directory given as the first argument (default:
//! the system temp dir). Plot `lambda_low` against `kappa` as a step plot to
//! get the usual picture.
//!
//!     cargo run --example synthetic_sequences -- out/

use std::path::PathBuf;

use affinity_kappa::io::{save_curve, save_points, Format};
use affinity_kappa::{
    concavity_score, connectivity_curve, generate_sequence, metric_affinity, SequenceKind,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&dir)?;

    for kind in SequenceKind::ALL {
        let points = generate_sequence(kind, 20);
        let curve = connectivity_curve(&metric_affinity(&points));
        let b = curve.breakpoints();
        let mid = 0.5 * (b[0] + b[b.len() - 1]);
        println!(
            "{kind:>9}: breakpoints={} lambda in [{:.4}, {:.4}] kappa(mid={mid:.3})={} concavity={:+.4}",
            b.len(),
            b[0],
            b[b.len() - 1],
            curve.evaluate(mid)?,
            concavity_score(&curve)?,
        );
        save_points(&points, dir.join(format!("{kind}_points.csv")))?;
        save_curve(&curve, dir.join(format!("{kind}_curve.csv")), Format::Csv)?;
    }
    println!("wrote point and curve files to {}", dir.display());
    Ok(())
}
