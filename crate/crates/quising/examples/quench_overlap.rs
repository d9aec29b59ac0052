//! Overlaps between ground states of different Hamiltonians.
//!
//! The squared overlap of two Bogoliubov vacua is a single determinant,
//! |det(U₀ᵀU₁ + V₀ᵀV₁)|; it decays exponentially with L for distinct fields
//! (the orthogonality catastrophe behind quench physics). Matrix elements of
//! quasiparticle strings between two vacua reduce to Pfaffians of sub-blocks
//! of the relative pairing matrix.

use quising::bdg::diagonalize;
use quising::gaussian::{
    onishi_overlap_sq, relative_pairing, vacuum_matrix_element, vacuum_overlap_magnitude,
};
use quising::{BoundaryCondition, ChainSpec, ParitySector};

fn ground(l: usize, h: f64) -> quising::bdg::BogoliubovBasis {
    let spec = ChainSpec::uniform(l, 1.0, 1.0, h, BoundaryCondition::PeriodicSpin).unwrap();
    diagonalize(&spec.assemble(ParitySector::Even)).unwrap()
}

fn main() {
    let post = ground(64, 0.5);
    println!("# |<gs(h_pre)|gs(0.5)>|^2 at L = 64");
    for h_pre in [0.5, 0.6, 0.8, 1.0, 1.5, 2.0] {
        let pre = ground(64, h_pre);
        println!("h_pre = {h_pre}: overlap_sq = {:.6e}", onishi_overlap_sq(&pre, &post).unwrap());
    }

    println!("# decay with system size for a fixed quench 2.0 -> 0.5");
    for l in [16, 32, 64, 128] {
        let overlap = onishi_overlap_sq(&ground(l, 2.0), &ground(l, 0.5)).unwrap();
        println!("L = {l:3}: {overlap:.6e}");
    }

    // two-quasiparticle matrix element via the relative pairing matrix
    let (b0, b1) = (ground(8, 0.4), ground(8, 1.6));
    let z = relative_pairing(&b0, &b1).unwrap();
    println!("# e.g. |<vac0|gamma_1 gamma_0|vac1>| at L = 8:");
    println!(
        "  {:.6e} (vacuum overlap magnitude {:.6e})",
        vacuum_matrix_element(&z, &[0, 1]).unwrap().norm(),
        vacuum_overlap_magnitude(&z).unwrap()
    );
}
