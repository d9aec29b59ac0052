//! Block entanglement entropy from the Majorana correlation matrix.
//!
//! Gapped phases saturate (area law; exactly ln 2 on the symmetry-broken cat
//! states), while the critical half-chain entropy grows as (1/6) ln L for a
//! ring bipartition.

use quising::bdg::{diagonalize, ols_slope};
use quising::dynamics::{majorana_correlation, NambuGreen};
use quising::observables::entanglement_entropy;
use quising::{BoundaryCondition, ChainSpec, ParitySector};

fn half_chain_entropy(l: usize, h: f64) -> f64 {
    let spec = ChainSpec::uniform(l, 1.0, 1.0, h, BoundaryCondition::PeriodicSpin).unwrap();
    let green = NambuGreen::from_basis(&diagonalize(&spec.assemble(ParitySector::Even)).unwrap());
    let corr = majorana_correlation(&green).unwrap();
    entanglement_entropy(&corr, 0..l / 2).unwrap().entropy
}

fn main() {
    println!("# block-size profile at L = 64");
    println!("# l S(h=0) S(h=1) S(h=2)");
    let l = 64;
    for lb in [1, 2, 4, 8, 16, 32] {
        let row: Vec<f64> = [0.0, 1.0, 2.0]
            .iter()
            .map(|&h| {
                let spec =
                    ChainSpec::uniform(l, 1.0, 1.0, h, BoundaryCondition::PeriodicSpin).unwrap();
                let green =
                    NambuGreen::from_basis(&diagonalize(&spec.assemble(ParitySector::Even)).unwrap());
                let corr = majorana_correlation(&green).unwrap();
                entanglement_entropy(&corr, 0..lb).unwrap().entropy
            })
            .collect();
        println!("{lb:2} {:.8} {:.8} {:.8}", row[0], row[1], row[2]);
    }
    println!("# ln 2 = {:.8} (cat-state saturation at h = 0)", std::f64::consts::LN_2);

    println!("# critical half-chain scaling");
    let mut log_l = Vec::new();
    let mut entropies = Vec::new();
    for l in [32, 64, 128, 256] {
        let s = half_chain_entropy(l, 1.0);
        println!("L = {l:3}: S(L/2) = {s:.8}");
        log_l.push((l as f64).ln());
        entropies.push(s);
    }
    println!(
        "# fitted coefficient of ln L: {:.4} (1/6 = {:.4})",
        ols_slope(&log_l, &entropies),
        1.0 / 6.0
    );
}
