//! Splitting between the even- and odd-sector ground states.
//!
//! Exponentially small inside the ferromagnet (the symmetry-broken doublet),
//! closing as π/(2L) at criticality, and saturating at 2(h - J) beyond it.

use quising::uniform::{sector_gap, sector_ground_energy};
use quising::ParitySector;
use std::f64::consts::PI;

fn main() {
    let l = 256;
    println!("# h gap");
    for i in 0..=40 {
        let h = 2.0 * i as f64 / 40.0;
        let gap = sector_gap(l, 1.0, h, 1.0).unwrap();
        println!("{h:.3} {gap:.12e}");
    }

    let e_even = sector_ground_energy(l, 1.0, 0.5, 1.0, ParitySector::Even).unwrap();
    println!("# ferromagnetic ground energy per site at h = 0.5: {:.8}", e_even / l as f64);

    let scaled = sector_gap(512, 1.0, 1.0, 1.0).unwrap() * 512.0;
    println!("# critical point: L·ΔE0 = {scaled:.6}, π/2 = {:.6}", PI / 2.0);
}
