//! Validating an affinity matrix, thresholding it, and reading off kappa.
//!
//!     cargo run --example threshold_basics

use affinity_kappa::{connectivity_curve, kappa_at, AffinityMatrix, AffinityError};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inf = f64::INFINITY;

    // Validation reports the first broken axiom.
    let asym = AffinityMatrix::validate(&[[inf, 2.0], [3.0, inf]]);
    assert_eq!(asym, Err(AffinityError::AsymmetricEntry(0, 1)));
    println!("asymmetric input: {}", asym.unwrap_err());

    let a = AffinityMatrix::validate(&[
        [inf, 5.0, 1.0, 0.5],
        [5.0, inf, 2.0, 0.5],
        [1.0, 2.0, inf, 3.0],
        [0.5, 0.5, 3.0, inf],
    ])?;

    // Entries strictly above lambda become infinite; the rest stay.
    for lambda in [0.5, 2.0, 4.0] {
        let t = a.threshold(lambda)?;
        println!("A^{lambda}:");
        for row in t.to_rows() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>5}")).collect();
            println!("  [{}]", cells.join(" "));
        }
        println!("  kappa({lambda}) = {}", kappa_at(&a, lambda)?);
    }

    let curve = connectivity_curve(&a);
    println!("\nconnectivity curve:");
    for (lo, hi, k) in curve.intervals() {
        println!("  [{lo}, {hi}) -> {k}");
    }

    // The two extreme affinities: everything infinite (one component at every
    // threshold) and every pair at 1 (all points split once lambda reaches 1).
    let trivial = connectivity_curve(&AffinityMatrix::all_infinite(5));
    let discrete = connectivity_curve(&AffinityMatrix::constant(5, 1.0)?);
    println!("\nall-infinite: breakpoints {:?} values {:?}", trivial.breakpoints(), trivial.values());
    println!("all-ones:     breakpoints {:?} values {:?}", discrete.breakpoints(), discrete.values());
    Ok(())
}
