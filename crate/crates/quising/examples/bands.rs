//! Quasiparticle dispersion of the uniform chain across the transition.
//!
//! Prints ε_k on a momentum grid for three fields: inside the ferromagnet,
//! at the critical point (gapless, linear near k = 0), and in the paramagnet.

use quising::uniform::Dispersion;
use std::f64::consts::PI;

fn main() {
    let fields = [0.5, 1.0, 1.5];
    println!("# k eps(h=0.5) eps(h=1.0) eps(h=1.5)");
    for i in 0..=64 {
        let k = -PI + 2.0 * PI * i as f64 / 64.0;
        let eps: Vec<f64> = fields
            .iter()
            .map(|&h| Dispersion::new(1.0, h, 1.0).unwrap().epsilon(k))
            .collect();
        println!("{k:+.4} {:.6} {:.6} {:.6}", eps[0], eps[1], eps[2]);
    }
    for h in fields {
        let d = Dispersion::new(1.0, h, 1.0).unwrap();
        println!("# h = {h}: gap at k=0 is {:.6} (= 2|J-h|)", d.epsilon(0.0));
    }
}
