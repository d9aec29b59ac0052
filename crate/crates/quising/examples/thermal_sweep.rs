//! Parity-projected thermal averages against brute-force diagonalization.
//!
//! At L = 10 the spin chain is small enough to trace exactly; the projected
//! free-fermion sums reproduce energy density and log Z to solver precision.
//! The same machinery runs unchanged at L = 512 where no dense trace exists.

use quising::ed_oracle::DenseSpinSystem;
use quising::thermal::ThermalContext;
use quising::{BoundaryCondition, ChainSpec};

fn main() {
    let spec = ChainSpec::uniform(10, 1.0, 1.0, 0.5, BoundaryCondition::PeriodicSpin).unwrap();
    let sys = DenseSpinSystem::build(&spec).unwrap();
    println!("# L = 10 uniform chain, h = 0.5J");
    println!("# beta e_density(free) e_density(dense) delta");
    for i in 0..=12 {
        let beta = 0.1 * 40f64.powf(i as f64 / 12.0);
        let ctx = ThermalContext::new(&spec, beta).unwrap();
        let free = ctx.energy_density();
        let dense = sys.thermal_energy(beta).unwrap() / 10.0;
        println!("{beta:8.4} {free:+.10} {dense:+.10} {:.2e}", (free - dense).abs());
    }

    let big = ChainSpec::uniform(512, 1.0, 1.0, 0.5, BoundaryCondition::PeriodicSpin).unwrap();
    let ctx = ThermalContext::new(&big, 5.0).unwrap();
    println!(
        "# L = 512 at beta = 5: energy density {:+.8}, log Z = {:.4}",
        ctx.energy_density(),
        ctx.log_partition_function()
    );
}
