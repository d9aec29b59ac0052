//! Parity-projected thermal averages.
//!
//! A spin-periodic chain has two fermionic Hamiltonians, one per parity
//! sector, each acting on the full 2^L Fock space — but only half of each
//! spectrum is physical. Traces over the spin chain therefore carry projector
//! insertions:
//!
//! ```text
//! Tr(O e^{-βH}) = ½ Σ_p [ Tr(O e^{-βℍ_p}) + η_p Tr(O e^{-βℍ_p + iπ Σ γ†γ}) ]
//! ```
//!
//! with `η_p = (-1)^p ⟨∅_p| e^{iπN} |∅_p⟩` computed from the vacuum-parity
//! determinant rather than assumed: depending on couplings and boundary
//! conditions the Bogoliubov vacuum of sector p need not have parity (-1)^p.
//!
//! All products of `1 ± e^{-2βε}` are assembled in log space with sign
//! tracking; raw products underflow long before L = 512 at large β.

use ndarray::Array2;
use num_complex::Complex64;

use crate::bdg::{diagonalize, BogoliubovBasis};
use crate::dynamics::NambuGreen;
use crate::model::{BdgMatrix, ChainSpec};
use crate::observables::vacuum_parity;
use crate::{ParitySector, Result};

/// Diagonalized sector data plus the parity weight η_p, ready for projected
/// traces at a fixed inverse temperature.
#[derive(Debug, Clone)]
pub struct ThermalContext {
    pub beta: f64,
    pub spec: ChainSpec,
    pub bases: [BogoliubovBasis; 2],
    pub matrices: [BdgMatrix; 2],
    pub eta: [f64; 2],
}

/// log-sum-exp over signed terms: Σ_i s_i e^{t_i} = sign · e^{result}.
fn signed_lse(terms: &[(f64, f64)]) -> (f64, f64) {
    let m = terms
        .iter()
        .filter(|(t, _)| t.is_finite())
        .fold(f64::NEG_INFINITY, |a, &(t, _)| a.max(t));
    if m == f64::NEG_INFINITY {
        return (f64::NEG_INFINITY, 1.0);
    }
    let s: f64 = terms
        .iter()
        .map(|&(t, sign)| if t.is_finite() { sign * (t - m).exp() } else { 0.0 })
        .sum();
    if s == 0.0 {
        (f64::NEG_INFINITY, 1.0)
    } else {
        (m + s.abs().ln(), s.signum())
    }
}

impl ThermalContext {
    pub fn new(spec: &ChainSpec, beta: f64) -> Result<Self> {
        let m_even = spec.assemble(ParitySector::Even);
        let m_odd = spec.assemble(ParitySector::Odd);
        let b_even = diagonalize(&m_even)?;
        let b_odd = diagonalize(&m_odd)?;
        let eta_even = f64::from(vacuum_parity(&b_even)?);
        let eta_odd = -f64::from(vacuum_parity(&b_odd)?);
        Ok(ThermalContext {
            beta,
            spec: spec.clone(),
            bases: [b_even, b_odd],
            matrices: [m_even, m_odd],
            eta: [eta_even, eta_odd],
        })
    }

    fn sector(&self, p: usize) -> &BogoliubovBasis {
        &self.bases[p]
    }

    /// `ln(1 + e^{-2βε})` summed over all modes but the excluded one.
    fn log_plus_without(&self, p: usize, skip: Option<usize>) -> f64 {
        self.sector(p)
            .eps
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != skip)
            .map(|(_, &e)| (-2.0 * self.beta * e).exp().ln_1p())
            .sum()
    }

    /// `ln(1 - e^{-2βε})` summed over all modes but the excluded one;
    /// -∞ when a zero mode is present, which correctly kills the term.
    fn log_minus_without(&self, p: usize, skip: Option<usize>) -> f64 {
        self.sector(p)
            .eps
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != skip)
            .map(|(_, &e)| (-(-2.0 * self.beta * e).exp()).ln_1p())
            .sum()
    }

    /// Sector contribution to the partition function as (log |Z_p|, sign);
    /// `Z_p = ½ e^{βΣε} [Π(1+e^{-2βε}) + η_p Π(1-e^{-2βε})]`.
    fn log_sector_partition(&self, p: usize) -> (f64, f64) {
        let base = self.beta * self.sector(p).eps.sum() - std::f64::consts::LN_2;
        signed_lse(&[
            (base + self.log_plus_without(p, None), 1.0),
            (base + self.log_minus_without(p, None), self.eta[p]),
        ])
    }

    /// `log Z` of the spin chain.
    pub fn log_partition_function(&self) -> f64 {
        let (l0, s0) = self.log_sector_partition(0);
        let (l1, s1) = self.log_sector_partition(1);
        let (lz, sz) = signed_lse(&[(l0, s0), (l1, s1)]);
        debug_assert!(sz > 0.0, "partition function must be positive");
        lz
    }

    /// Unnormalized projected traces `(Tr(γ†_μ γ_μ P̂_p e^{-βℍ_p}),
    /// Tr(γ_μ γ†_μ P̂_p e^{-βℍ_p}))` for one quasiparticle mode.
    ///
    /// Linear-scale values; they overflow for very large βΣε — the Green
    /// function path below works with Z-normalized ratios instead.
    pub fn gamma_occupation(&self, sector: ParitySector, mu: usize) -> (f64, f64) {
        let p = sector.index();
        let eps_mu = self.sector(p).eps[mu];
        let base = self.beta * self.sector(p).eps.sum() - std::f64::consts::LN_2;
        let lp = self.log_plus_without(p, Some(mu));
        let lm = self.log_minus_without(p, Some(mu));
        let (l_occ, s_occ) = signed_lse(&[
            (base - 2.0 * self.beta * eps_mu + lp, 1.0),
            (base - 2.0 * self.beta * eps_mu + lm, -self.eta[p]),
        ]);
        let (l_emp, s_emp) = signed_lse(&[(base + lp, 1.0), (base + lm, self.eta[p])]);
        (s_occ * l_occ.exp(), s_emp * l_emp.exp())
    }

    /// Z-normalized mode weights `(⟨γ†γ P̂⟩, ⟨γγ† P̂⟩)` computed fully in log
    /// space.
    fn normalized_occupation(&self, p: usize, mu: usize, log_z: f64) -> (f64, f64) {
        let eps_mu = self.sector(p).eps[mu];
        let base = self.beta * self.sector(p).eps.sum() - std::f64::consts::LN_2;
        let lp = self.log_plus_without(p, Some(mu));
        let lm = self.log_minus_without(p, Some(mu));
        let (l_occ, s_occ) = signed_lse(&[
            (base - 2.0 * self.beta * eps_mu + lp, 1.0),
            (base - 2.0 * self.beta * eps_mu + lm, -self.eta[p]),
        ]);
        let (l_emp, s_emp) = signed_lse(&[(base + lp, 1.0), (base + lm, self.eta[p])]);
        (
            s_occ * (l_occ - log_z).exp(),
            s_emp * (l_emp - log_z).exp(),
        )
    }

    /// Thermal Nambu Green functions,
    /// `𝔾 = Σ_p 𝕌_p ⟨Φ Φ† P̂_p⟩ 𝕌_p† / Z`: real, G symmetric, F antisymmetric.
    pub fn thermal_green(&self) -> NambuGreen {
        let l = self.spec.l;
        let log_z = self.log_partition_function();
        let mut g = Array2::<f64>::zeros((l, l));
        let mut f = Array2::<f64>::zeros((l, l));
        for p in 0..2 {
            let basis = self.sector(p);
            let mut a = Array2::<f64>::zeros((l, l)); // diag ⟨γγ†P̂⟩
            let mut b = Array2::<f64>::zeros((l, l)); // diag ⟨γ†γP̂⟩
            for mu in 0..l {
                let (occ, emp) = self.normalized_occupation(p, mu, log_z);
                a[[mu, mu]] = emp;
                b[[mu, mu]] = occ;
            }
            g = g + basis.u.dot(&a).dot(&basis.u.t()) + basis.v.dot(&b).dot(&basis.v.t());
            f = f + basis.u.dot(&a).dot(&basis.v.t()) + basis.v.dot(&b).dot(&basis.u.t());
        }
        NambuGreen {
            g: g.mapv(|x| Complex64::new(x, 0.0)),
            f: f.mapv(|x| Complex64::new(x, 0.0)),
            time: 0.0,
        }
    }

    /// Thermal energy `⟨H⟩ = -Σ_p Σ_μ ε_{pμ} (⟨γγ†P̂⟩ - ⟨γ†γP̂⟩)/Z`.
    pub fn energy(&self) -> f64 {
        let log_z = self.log_partition_function();
        let mut acc = 0.0;
        for p in 0..2 {
            for mu in 0..self.spec.l {
                let (occ, emp) = self.normalized_occupation(p, mu, log_z);
                acc -= self.sector(p).eps[mu] * (emp - occ);
            }
        }
        acc
    }

    /// Energy per site.
    pub fn energy_density(&self) -> f64 {
        self.energy() / self.spec.l as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ed_oracle::DenseSpinSystem;
    use crate::uniform;
    use crate::BoundaryCondition;
    use approx::assert_abs_diff_eq;

    fn random_spec(bc: BoundaryCondition, seed: u64) -> ChainSpec {
        ChainSpec::disordered(8, [0.5, 1.0], [0.2, 1.0], 1.0, bc, seed).unwrap()
    }

    #[test]
    fn infinite_temperature_counts_states() {
        for bc in [BoundaryCondition::Open, BoundaryCondition::PeriodicSpin] {
            let spec = random_spec(bc, 3);
            let ctx = ThermalContext::new(&spec, 1e-14).unwrap();
            assert_abs_diff_eq!(
                ctx.log_partition_function(),
                8.0 * std::f64::consts::LN_2,
                epsilon = 1e-8
            );
        }
    }

    #[test]
    fn zero_temperature_is_ground_state_dominated() {
        // paramagnetic phase: unique ground state, so log Z → -β E0 cleanly
        let spec = ChainSpec::uniform(10, 1.0, 1.0, 1.5, BoundaryCondition::PeriodicSpin).unwrap();
        let ctx = ThermalContext::new(&spec, 50.0).unwrap();
        let e0 = uniform::sector_ground_energy(10, 1.0, 1.5, 1.0, ParitySector::Even).unwrap();
        assert_abs_diff_eq!(ctx.log_partition_function(), -50.0 * e0, epsilon = 1e-9);
        assert_abs_diff_eq!(ctx.energy(), e0, epsilon = 1e-9);

        // ferromagnetic phase: the two sector vacua are quasi-degenerate and
        // the partition function resolves the pair
        let spec = ChainSpec::uniform(10, 1.0, 1.0, 0.5, BoundaryCondition::PeriodicSpin).unwrap();
        let ctx = ThermalContext::new(&spec, 50.0).unwrap();
        let e0 = uniform::sector_ground_energy(10, 1.0, 0.5, 1.0, ParitySector::Even).unwrap();
        let gap = uniform::sector_gap(10, 1.0, 0.5, 1.0).unwrap();
        let want = -50.0 * e0 + (-50.0 * gap).exp().ln_1p();
        assert_abs_diff_eq!(ctx.log_partition_function(), want, epsilon = 1e-9);
    }

    #[test]
    fn log_partition_matches_ed() {
        for (bc, seed) in [
            (BoundaryCondition::Open, 7),
            (BoundaryCondition::PeriodicSpin, 7),
            (BoundaryCondition::PeriodicSpin, 19),
        ] {
            let spec = random_spec(bc, seed);
            let sys = DenseSpinSystem::build(&spec).unwrap();
            for beta in [0.2, 1.0, 5.0] {
                let ctx = ThermalContext::new(&spec, beta).unwrap();
                assert_abs_diff_eq!(
                    ctx.log_partition_function(),
                    sys.log_partition(beta).unwrap(),
                    epsilon = 1e-9
                );
            }
        }
    }

    #[test]
    fn thermal_energy_matches_ed() {
        for bc in [BoundaryCondition::Open, BoundaryCondition::PeriodicSpin] {
            let spec = random_spec(bc, 11);
            let sys = DenseSpinSystem::build(&spec).unwrap();
            for beta in [0.2, 1.0, 5.0] {
                let ctx = ThermalContext::new(&spec, beta).unwrap();
                assert_abs_diff_eq!(
                    ctx.energy(),
                    sys.thermal_energy(beta).unwrap(),
                    epsilon = 1e-9
                );
            }
        }
    }

    #[test]
    fn thermal_occupation_matches_ed() {
        // ⟨c†_j c_j⟩ = 1 - G_jj against the spin-side ⟨(1-σᶻ_j)/2⟩
        let spec = random_spec(BoundaryCondition::PeriodicSpin, 23);
        let sys = DenseSpinSystem::build(&spec).unwrap();
        for beta in [0.5, 2.0] {
            let ctx = ThermalContext::new(&spec, beta).unwrap();
            let green = ctx.thermal_green();
            for j in 0..8 {
                let n_free = 1.0 - green.g[[j, j]].re;
                let n_ed = 0.5 * (1.0 - sys.thermal_sigma_z(beta, j).unwrap());
                assert_abs_diff_eq!(n_free, n_ed, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn infinite_temperature_green_is_maximally_mixed() {
        let spec = random_spec(BoundaryCondition::PeriodicSpin, 5);
        let ctx = ThermalContext::new(&spec, 1e-14).unwrap();
        let green = ctx.thermal_green();
        for i in 0..8 {
            for j in 0..8 {
                let want = if i == j { 0.5 } else { 0.0 };
                assert_abs_diff_eq!(green.g[[i, j]].re, want, epsilon = 1e-10);
                assert_abs_diff_eq!(green.f[[i, j]].re, 0.0, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn zero_temperature_green_equals_winning_vacuum() {
        // paramagnetic so the even-sector vacuum wins alone
        let spec = ChainSpec::uniform(8, 1.0, 1.0, 1.6, BoundaryCondition::PeriodicSpin).unwrap();
        let ctx = ThermalContext::new(&spec, 60.0).unwrap();
        let green_t = ctx.thermal_green();
        let green_0 = NambuGreen::from_basis(&ctx.bases[0]);
        for i in 0..8 {
            for j in 0..8 {
                assert_abs_diff_eq!(
                    green_t.g[[i, j]].re,
                    green_0.g[[i, j]].re,
                    epsilon = 1e-9
                );
                assert_abs_diff_eq!(
                    green_t.f[[i, j]].re,
                    green_0.f[[i, j]].re,
                    epsilon = 1e-9
                );
            }
        }
    }

    #[test]
    fn green_structure_is_preserved() {
        let spec = random_spec(BoundaryCondition::PeriodicSpin, 31);
        let ctx = ThermalContext::new(&spec, 1.3).unwrap();
        let green = ctx.thermal_green();
        assert!(green.structure_defect() < 1e-12);
        assert!(green.imaginary_residue() == 0.0);
    }

    #[test]
    fn projected_occupation_sum_rule() {
        // ⟨γ†γP̂⟩ + ⟨γγ†P̂⟩ = Tr(P̂ e^{-βℍ}) for every mode: the projected
        // trace of the remaining modes is mode-independent
        let spec = random_spec(BoundaryCondition::PeriodicSpin, 37);
        let ctx = ThermalContext::new(&spec, 0.9).unwrap();
        for sector in ParitySector::BOTH {
            let p = sector.index();
            let (lzp, szp) = ctx.log_sector_partition(p);
            let z_p = szp * lzp.exp();
            for mu in 0..8 {
                let (occ, emp) = ctx.gamma_occupation(sector, mu);
                assert_abs_diff_eq!(occ + emp, z_p, epsilon = 1e-10 * z_p.abs());
            }
        }
    }

    #[test]
    fn traceless_hamiltonian_has_zero_energy_at_beta_zero() {
        let spec = random_spec(BoundaryCondition::PeriodicSpin, 41);
        let ctx = ThermalContext::new(&spec, 1e-14).unwrap();
        assert_abs_diff_eq!(ctx.energy(), 0.0, epsilon = 1e-8);
    }

    #[test]
    fn large_chain_large_beta_does_not_overflow() {
        let spec = ChainSpec::uniform(512, 1.0, 1.0, 0.5, BoundaryCondition::PeriodicSpin).unwrap();
        let ctx = ThermalContext::new(&spec, 50.0).unwrap();
        let log_z = ctx.log_partition_function();
        assert!(log_z.is_finite());
        let e = ctx.energy_density();
        assert!(e.is_finite() && e < 0.0);
    }
}
