//! Momentum-space treatment of the translation-invariant chain.
//!
//! Each parity sector selects its own momentum grid: periodic fermions
//! (odd sector) use k = 2nπ/L including the unpaired k = 0 and k = π modes,
//! antiperiodic fermions (even sector) use k = ±(2n-1)π/L. The single 2×2
//! pseudo-spin problem per ±k pair gives the dispersion, the Bogoliubov
//! amplitudes, the sector ground energies and the topological index of the
//! band structure.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::{Error, ParitySector, Result};

/// Sector-resolved momentum grid, sorted ascending within (-π, π].
#[derive(Debug, Clone)]
pub struct KGrid {
    pub sector: ParitySector,
    pub ks: Vec<f64>,
}

/// Build the momentum grid for an even-length chain.
pub fn k_grid(l: usize, sector: ParitySector) -> Result<KGrid> {
    if l < 2 || !l.is_multiple_of(2) {
        return Err(Error::UnsupportedSize(l));
    }
    let half = (l / 2) as i64;
    let mut ks: Vec<f64> = match sector {
        // k = 2nπ/L, n = -L/2+1 .. L/2 (contains both 0 and π)
        ParitySector::Odd => (1 - half..=half).map(|n| 2.0 * n as f64 * PI / l as f64).collect(),
        // k = ±(2n-1)π/L, n = 1 .. L/2
        ParitySector::Even => (1..=half)
            .flat_map(|n| {
                let k = (2 * n - 1) as f64 * PI / l as f64;
                [-k, k]
            })
            .collect(),
    };
    ks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(KGrid { sector, ks })
}

impl KGrid {
    /// Strictly positive momenta below π (the paired ones).
    pub fn positive_paired(&self) -> impl Iterator<Item = f64> + '_ {
        self.ks
            .iter()
            .copied()
            .filter(|&k| k > 0.0 && k < PI - 1e-12)
    }
}

/// Single-particle data of the uniform chain at couplings (J, h, κ).
#[derive(Debug, Clone, Copy)]
pub struct Dispersion {
    pub j: f64,
    pub h: f64,
    pub kappa: f64,
}

impl Dispersion {
    pub fn new(j: f64, h: f64, kappa: f64) -> Result<Self> {
        if j <= 0.0 {
            return Err(Error::InvalidRange {
                lo: j,
                hi: j,
                why: "dispersion requires J > 0",
            });
        }
        Ok(Dispersion { j, h, kappa })
    }

    /// Pseudo-spin field component z_k = 2(h - J cos k).
    pub fn z(&self, k: f64) -> f64 {
        2.0 * (self.h - self.j * k.cos())
    }

    /// Pseudo-spin field component y_k = 2 κ J sin k.
    pub fn y(&self, k: f64) -> f64 {
        2.0 * self.kappa * self.j * k.sin()
    }

    /// Quasiparticle energy ε_k = 2J sqrt((cos k - h/J)² + κ² sin²k) ≥ 0.
    pub fn epsilon(&self, k: f64) -> f64 {
        let (y, z) = (self.y(k), self.z(k));
        (y * y + z * z).sqrt()
    }

    /// Positive-energy Bogoliubov amplitudes (u_k, v_k) with u real and
    /// v imaginary; normalized, with u_{-k} = u_k and v_{-k} = -v_k.
    ///
    /// The two algebraically equivalent branches below avoid the 0/0 that
    /// the textbook form (ε+z)/sqrt(2ε(ε+z)) hits when z < 0 and y → 0.
    pub fn amplitudes(&self, k: f64) -> Result<(Complex64, Complex64)> {
        let (y, z) = (self.y(k), self.z(k));
        let eps = (y * y + z * z).sqrt();
        if eps <= 1e-14 * 2.0 * self.j {
            return Err(Error::DegeneratePoint { k });
        }
        let (u, v_im) = if z >= 0.0 {
            let u = ((eps + z) / (2.0 * eps)).sqrt();
            (u, y / (2.0 * eps * (eps + z)).sqrt())
        } else {
            let sgn = if y < 0.0 { -1.0 } else { 1.0 };
            let u = y.abs() / (2.0 * eps * (eps - z)).sqrt();
            (u, sgn * ((eps - z) / (2.0 * eps)).sqrt())
        };
        Ok((Complex64::new(u, 0.0), Complex64::new(0.0, v_im)))
    }
}

/// Ground energy of one parity sector of the spin-PBC uniform chain.
///
/// Even sector (antiperiodic fermions): `-Σ_{k>0} εk`. Odd sector (periodic
/// fermions): the unpaired k = 0, π modes contribute a fixed `-2J` on top of
/// `-Σ_{0<k<π} εk`.
pub fn sector_ground_energy(
    l: usize,
    j: f64,
    h: f64,
    kappa: f64,
    sector: ParitySector,
) -> Result<f64> {
    let disp = Dispersion::new(j, h, kappa)?;
    let grid = k_grid(l, sector)?;
    let paired: f64 = grid.positive_paired().map(|k| disp.epsilon(k)).sum();
    Ok(match sector {
        ParitySector::Even => -paired,
        ParitySector::Odd => -2.0 * j - paired,
    })
}

/// Splitting ΔE₀ = E₀(odd) - E₀(even) between the two sector ground states.
pub fn sector_gap(l: usize, j: f64, h: f64, kappa: f64) -> Result<f64> {
    Ok(sector_ground_energy(l, j, h, kappa, ParitySector::Odd)?
        - sector_ground_energy(l, j, h, kappa, ParitySector::Even)?)
}

/// Number of k-samples used for the winding accumulation.
const WINDING_SAMPLES: usize = 4096;

/// Topological index of the band structure: the number of revolutions the
/// pseudo-spin field (y_k, z_k) makes around the origin as k sweeps the
/// Brillouin zone.
///
/// Computed by accumulating angle increments over a discretized zone, not by
/// thresholding h against J. Returns 1 inside the ferromagnetic phase
/// (|h| < J) and 0 outside it.
pub fn winding_index(j: f64, h: f64, kappa: f64) -> Result<u32> {
    if kappa == 0.0 {
        return Err(Error::DegenerateEllipse);
    }
    let disp = Dispersion::new(j, h, kappa)?;
    let n = WINDING_SAMPLES;
    let mut total = 0.0;
    let mut min_r = f64::INFINITY;
    let mut prev = f64::NAN;
    for i in 0..=n {
        let k = -PI + 2.0 * PI * i as f64 / n as f64;
        let (y, z) = (disp.y(k), disp.z(k));
        min_r = min_r.min((y * y + z * z).sqrt());
        let theta = f64::atan2(z, y);
        if i > 0 {
            let mut d = theta - prev;
            if d > PI {
                d -= 2.0 * PI;
            } else if d < -PI {
                d += 2.0 * PI;
            }
            total += d;
        }
        prev = theta;
    }
    if min_r < 1e-8 * 2.0 * j {
        return Err(Error::UndefinedIndex { min_r });
    }
    Ok((total / (2.0 * PI)).round().abs() as u32)
}
