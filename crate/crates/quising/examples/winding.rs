//! Topological index of the band structure.
//!
//! The pseudo-spin field (y_k, z_k) traces an ellipse as k sweeps the zone;
//! whether it encircles the origin distinguishes the two gapped phases. The
//! index is computed by accumulating angle increments, not by comparing h to
//! J, and is undefined exactly at the transition.

use quising::uniform::winding_index;

fn main() {
    for h in [0.0, 0.25, 0.5, 0.9, 0.99, 1.01, 1.5, 2.0, 5.0] {
        match winding_index(1.0, h, 1.0) {
            Ok(n) => println!("h = {h:5}: winding index {n}"),
            Err(e) => println!("h = {h:5}: {e}"),
        }
    }
    println!("h = {:5}: {}", 1.0, winding_index(1.0, 1.0, 1.0).unwrap_err());
}
