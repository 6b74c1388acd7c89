//! Normalizing, rescaling and comparing curves of different spaces.
//!
//! `compare` maps each curve onto the unit square before taking the L1 distance,
//! so curves of matrices that differ only by a positive factor compare as equal.
//!
//!     cargo run --example compare_curves

use affinity_kappa::{
    compare, connectivity_curve, generate_sequence, metric_affinity, SequenceKind,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let curves: Vec<_> = SequenceKind::ALL
        .iter()
        .map(|&k| (k, connectivity_curve(&metric_affinity(&generate_sequence(k, 20)))))
        .collect();

    print!("{:>10}", "");
    for (k, _) in &curves {
        print!("{:>10}", k.to_string());
    }
    println!();
    for (k1, c1) in &curves {
        print!("{:>10}", k1.to_string());
        for (_, c2) in &curves {
            print!("{:>10.4}", compare(c1, c2)?);
        }
        println!();
    }

    let x3 = metric_affinity(&generate_sequence(SequenceKind::HarmonicCap, 20));
    let base = connectivity_curve(&x3);
    for factor in [0.1, 3.0, 10.0] {
        let scaled = connectivity_curve(&x3.scale(factor)?);
        assert_eq!(scaled.values(), base.values());
        println!("x{factor:<4} scaled vs original: {:.2e}", compare(&base, &scaled)?);
    }
    let normalized = connectivity_curve(&x3.normalize()?);
    println!("normalized breakpoints end at {}", normalized.breakpoints().last().unwrap());
    Ok(())
}
