//! Bound states split off the continuum by a single field impurity.
//!
//! One site with a strengthened transverse field detaches two levels from
//! the quasiparticle band [2|J-h|, 2|J+h|], one below and one above, with
//! second-order shifts |J±h| (h_imp)²/(hJ).

use quising::cli::impurity_bound_states;

fn main() {
    let (j, h) = (1.0, 0.5);
    println!("# continuum is [{}, {}]", 2.0 * (j - h), 2.0 * (j + h));
    for h_imp in [0.01, 0.02, 0.05, 0.1] {
        let res = impurity_bound_states(512, j, h, h_imp).unwrap();
        println!("h_imp = {h_imp}:");
        println!(
            "  below band: 2eps = {:.8} (formula shift {:.3e}, deviation {:.2}%)",
            res.below.0,
            res.below.1,
            100.0 * res.below.2
        );
        println!(
            "  above band: 2eps = {:.8} (formula shift {:.3e}, deviation {:.2}%)",
            res.above.0,
            res.above.1,
            100.0 * res.above.2
        );
    }
    println!("# no impurity, no bound state:");
    println!("  {}", impurity_bound_states(512, j, h, 0.0).unwrap_err());
}
