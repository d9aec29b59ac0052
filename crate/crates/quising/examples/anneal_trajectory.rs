//! One annealing trajectory, recorded along the ramp.
//!
//! The field sweeps linearly from 2J to 0; energy and defect density are
//! tracked with the per-momentum evolution. Slower ramps leave fewer
//! defects — the trajectory endpoint feeds the τ^{-1/2} scaling analysis.

use quising::dynamics::{Drive, KModeEvolution, Schedule};

fn main() {
    let (l, tau) = (256, 64.0);
    let schedule = Schedule::new(tau, Drive::Linear { from: 2.0, to: 0.0 }, None).unwrap();
    let mut modes = KModeEvolution::ground_state(l, 1.0, 1.0, 2.0).unwrap();
    println!("# linear ramp h: 2 -> 0 over tau = {tau} at L = {l}");
    println!("# t h rho_def energy_per_site");
    for i in 0..=16 {
        let t = tau * i as f64 / 16.0;
        modes.evolve_to(&schedule, 1.0, t, 0.01);
        let h = schedule.h_factor(t);
        println!(
            "{t:6.2} {h:.4} {:.6e} {:+.6}",
            modes.defect_density(),
            modes.energy(h, 1.0) / l as f64
        );
    }
}
