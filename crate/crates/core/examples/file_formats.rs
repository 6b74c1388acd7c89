//! Reading directed flow data, symmetrizing it, and writing matrices and curves
//! in both CSV and JSON.
//!
//!     cargo run --example file_formats -- out/

use std::path::{Path, PathBuf};

use affinity_kappa::io::{load_curve, load_matrix, save_curve, save_matrix, Format};
use affinity_kappa::{connectivity_curve, IngestOptions, Symmetrize, ZeroPolicy, DEFAULT_EPSILON};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&out)?;
    let flows = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/flows.csv");

    // Trip counts differ by direction; the default mode refuses them.
    match load_matrix(&flows, Format::Csv, IngestOptions::default()) {
        Err(e) => println!("require-symmetric: {e}"),
        Ok(_) => unreachable!("fixture is asymmetric"),
    }

    let options = IngestOptions {
        symmetrize: Symmetrize::Sum,
        zero_policy: ZeroPolicy::Epsilon(DEFAULT_EPSILON),
    };
    let a = load_matrix(&flows, Format::Csv, options)?.normalize()?;
    let curve = connectivity_curve(&a);
    println!("summed and normalized: {} breakpoints, values {:?}", curve.breakpoints().len(), curve.values());

    for format in [Format::Csv, Format::Json] {
        let ext = if format == Format::Csv { "csv" } else { "json" };
        let m = out.join(format!("flows_normalized.{ext}"));
        let c = out.join(format!("flows_curve.{ext}"));
        save_matrix(&a, &m, format)?;
        save_curve(&curve, &c, format)?;
        assert_eq!(load_matrix(&m, format, IngestOptions::default())?, a);
        assert_eq!(load_curve(&c, format)?.values(), curve.values());
        println!("{}:\n{}", c.display(), std::fs::read_to_string(&c)?);
    }
    Ok(())
}
