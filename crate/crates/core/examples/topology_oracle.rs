//! The neighborhood topology of a small affinity space, enumerated by brute force,
//! and its connected components computed three ways.
//!
//!     cargo run --example topology_oracle

use affinity_kappa::topology::{is_open_literal, open_sets};
use affinity_kappa::{
    components_graph, components_topological, connectivity_sweep, is_open, minimal_neighborhood,
    AffinityMatrix,
};

fn show(mask: u32, n: usize) -> String {
    let items: Vec<String> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inf = f64::INFINITY;
    let a = AffinityMatrix::validate(&[
        [inf, inf, 1.0, 2.0, 0.5],
        [inf, inf, 1.0, 1.0, 0.5],
        [1.0, 1.0, inf, inf, 0.5],
        [2.0, 1.0, inf, inf, 0.5],
        [0.5, 0.5, 0.5, 0.5, inf],
    ])?;
    let n = a.n();

    for x in 0..n {
        println!("minimal neighborhood of {x}: {:?}", minimal_neighborhood(&a, x)?);
    }

    let opens = open_sets(&a)?;
    let listed: Vec<String> = opens.iter().map(|&u| show(u, n)).collect();
    println!("\n{} open sets: {}", opens.len(), listed.join(" "));

    // The minimal-neighborhood test and the literal "some E(x, a) fits" test agree.
    let subset = [0, 1, 4];
    println!(
        "is {{0,1,4}} open? reduction={} literal={}",
        is_open(&a, &subset)?,
        is_open_literal(&a, &subset)?
    );

    let sweep = connectivity_sweep(&a);
    for lambda in [0.25, 0.75, 1.5, 3.0] {
        let t = a.threshold(lambda)?;
        let topo = components_topological(&t)?;
        let graph = components_graph(&t);
        let swept = sweep.partition_at(lambda)?;
        assert!(topo == graph && &graph == swept);
        println!("lambda={lambda}: components {:?}", topo.blocks());
    }
    Ok(())
}
