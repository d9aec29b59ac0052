//! Brute-force exact diagonalization of the spin chain at small size.
//!
//! Basis states are σᶻ product states indexed by bit patterns, bit j = 1
//! meaning spin down at site j — the same convention as fermion occupation
//! n_j = 1 under the Jordan-Wigner mapping, so the spin matrix and the
//! fermionic Fock-space matrices below can be compared entry by entry.
//!
//! Everything here is deliberately dumb and dense: it is the ground truth the
//! free-fermion machinery is tested against, so it must not share any code
//! path with it.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, UPLO};

use crate::bdg::BogoliubovBasis;
use crate::{BdgMatrix, ChainSpec, Error, Result};

/// Hard cap on the dense spin Hilbert space.
pub const MAX_SITES: usize = 12;

/// Dense spin Hamiltonian with its basis bookkeeping.
#[derive(Debug, Clone)]
pub struct DenseSpinSystem {
    pub l: usize,
    pub h: Array2<f64>,
}

impl DenseSpinSystem {
    /// Assemble the 2^L × 2^L spin Hamiltonian with the same couplings and
    /// boundary conventions as the fermionic side.
    pub fn build(spec: &ChainSpec) -> Result<Self> {
        let l = spec.l;
        if l > MAX_SITES {
            return Err(Error::SizeLimit {
                got: l,
                max: MAX_SITES,
            });
        }
        let dim = 1usize << l;
        let mut h = Array2::zeros((dim, dim));
        let bonds: Vec<usize> = match spec.bc {
            crate::BoundaryCondition::Open => (0..l - 1).collect(),
            crate::BoundaryCondition::PeriodicSpin => (0..l).collect(),
        };
        for b in 0..dim {
            // -Σ h_j σᶻ_j with σᶻ = +1 on bit 0 (spin up)
            let mut diag = 0.0;
            for j in 0..l {
                let sz = if b >> j & 1 == 0 { 1.0 } else { -1.0 };
                diag -= spec.h[j] * sz;
            }
            h[[b, b]] += diag;
            // bond terms flip neighbouring bits
            for &jb in &bonds {
                let j2 = (jb + 1) % l;
                let flipped = b ^ (1 << jb) ^ (1 << j2);
                let equal_bits = (b >> jb & 1) == (b >> j2 & 1);
                let jx = 0.5 * spec.j[jb] * (1.0 + spec.kappa);
                let jy = 0.5 * spec.j[jb] * (1.0 - spec.kappa);
                // σˣσˣ contributes -Jx, σʸσʸ contributes -Jy·(-1 if bits equal)
                let amp = if equal_bits { -(jx - jy) } else { -(jx + jy) };
                h[[flipped, b]] += amp;
            }
        }
        Ok(DenseSpinSystem { l, h })
    }

    /// `Π_j σᶻ_j` eigenvalue of a basis state.
    pub fn parity_of(b: usize, l: usize) -> f64 {
        if (b & ((1 << l) - 1)).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// Full sorted spectrum.
    pub fn spectrum(&self) -> Result<Array1<f64>> {
        let (w, _) = self.h.eigh(UPLO::Lower)?;
        Ok(w)
    }

    /// Ground energy and state vector.
    pub fn ground(&self) -> Result<(f64, Array1<f64>)> {
        let (w, q) = self.h.eigh(UPLO::Lower)?;
        Ok((w[0], q.column(0).to_owned()))
    }

    /// Energy gap between the two lowest eigenvalues.
    pub fn ground_splitting(&self) -> Result<f64> {
        let (w, _) = self.h.eigh(UPLO::Lower)?;
        Ok(w[1] - w[0])
    }

    /// `log Tr e^{-βH}`, computed from the full spectrum.
    pub fn log_partition(&self, beta: f64) -> Result<f64> {
        let w = self.spectrum()?;
        let e0 = w[0];
        let s: f64 = w.iter().map(|&e| (-beta * (e - e0)).exp()).sum();
        Ok(-beta * e0 + s.ln())
    }

    /// Thermal expectation `⟨H⟩ = Tr(H e^{-βH}) / Z`.
    pub fn thermal_energy(&self, beta: f64) -> Result<f64> {
        let w = self.spectrum()?;
        let e0 = w[0];
        let (mut num, mut den) = (0.0, 0.0);
        for &e in w.iter() {
            let b = (-beta * (e - e0)).exp();
            num += e * b;
            den += b;
        }
        Ok(num / den)
    }

    /// Thermal expectation of σᶻ_j.
    pub fn thermal_sigma_z(&self, beta: f64, j: usize) -> Result<f64> {
        let (w, q) = self.h.eigh(UPLO::Lower)?;
        let e0 = w[0];
        let (mut num, mut den) = (0.0, 0.0);
        for (i, &e) in w.iter().enumerate() {
            let boltz = (-beta * (e - e0)).exp();
            let col = q.column(i);
            let mut sz = 0.0;
            for b in 0..col.len() {
                let s = if b >> j & 1 == 0 { 1.0 } else { -1.0 };
                sz += s * col[b] * col[b];
            }
            num += sz * boltz;
            den += boltz;
        }
        Ok(num / den)
    }
}

/// ⟨σᶻ_j⟩ on a state vector.
pub fn sigma_z(state: &Array1<f64>, j: usize) -> f64 {
    state
        .iter()
        .enumerate()
        .map(|(b, &a)| {
            let s = if b >> j & 1 == 0 { 1.0 } else { -1.0 };
            s * a * a
        })
        .sum()
}

/// ⟨σᶻ_{j1} σᶻ_{j2}⟩ on a state vector.
pub fn zz_correlator(state: &Array1<f64>, j1: usize, j2: usize) -> f64 {
    state
        .iter()
        .enumerate()
        .map(|(b, &a)| {
            let s1 = if b >> j1 & 1 == 0 { 1.0 } else { -1.0 };
            let s2 = if b >> j2 & 1 == 0 { 1.0 } else { -1.0 };
            s1 * s2 * a * a
        })
        .sum()
}

/// ⟨σˣ_{j1} σˣ_{j2}⟩ on a state vector (flips both bits).
pub fn xx_correlator(state: &Array1<f64>, j1: usize, j2: usize) -> f64 {
    state
        .iter()
        .enumerate()
        .map(|(b, &a)| {
            let flipped = b ^ (1 << j1) ^ (1 << j2);
            a * state[flipped]
        })
        .sum()
}

/// ⟨Π_j σᶻ_j⟩ on a state vector.
pub fn parity_expectation(state: &Array1<f64>, l: usize) -> f64 {
    state
        .iter()
        .enumerate()
        .map(|(b, &a)| DenseSpinSystem::parity_of(b, l) * a * a)
        .sum()
}

/// Von Neumann entropy of the reduced density matrix of contiguous sites
/// `block` (in nats).
pub fn reduced_entropy(state: &Array1<f64>, l: usize, block: std::ops::Range<usize>) -> Result<f64> {
    let lb = block.len();
    if lb == 0 {
        return Err(Error::EmptyBlock);
    }
    let dim_b = 1usize << lb;
    let dim_r = 1usize << (l - lb);
    let mut rho = Array2::zeros((dim_b, dim_b));
    // split bits of the basis index into block bits and the rest
    let split = |b: usize| -> (usize, usize) {
        let mut inb = 0usize;
        let mut inr = 0usize;
        let (mut nb, mut nr) = (0, 0);
        for j in 0..l {
            if block.contains(&j) {
                inb |= (b >> j & 1) << nb;
                nb += 1;
            } else {
                inr |= (b >> j & 1) << nr;
                nr += 1;
            }
        }
        (inb, inr)
    };
    let mut amps = Array2::zeros((dim_b, dim_r));
    for (b, &a) in state.iter().enumerate() {
        let (ib, ir) = split(b);
        amps[[ib, ir]] = a;
    }
    for i in 0..dim_b {
        for j in 0..dim_b {
            let mut acc = 0.0;
            for r in 0..dim_r {
                acc += amps[[i, r]] * amps[[j, r]];
            }
            rho[[i, j]] = acc;
        }
    }
    let (w, _) = rho.eigh(UPLO::Lower)?;
    Ok(w.iter()
        .filter(|&&p| p > 1e-14)
        .map(|&p| -p * p.ln())
        .sum())
}

// ---------------------------------------------------------------------------
// Fermionic Fock space at small size: dense operator matrices built directly
// from the anticommutation algebra, for validating the Gaussian-state
// machinery against literal many-body linear algebra.
// ---------------------------------------------------------------------------

/// Dense matrix of the annihilator c_j on the 2^L Fock space,
/// `c_j |b⟩ = b_j (-1)^{Σ_{i<j} b_i} |b - e_j⟩`.
pub fn annihilator(l: usize, j: usize) -> Array2<f64> {
    let dim = 1usize << l;
    let mut c = Array2::zeros((dim, dim));
    for b in 0..dim {
        if b >> j & 1 == 1 {
            let sign = if (b & ((1 << j) - 1)).count_ones().is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            c[[b ^ (1 << j), b]] = sign;
        }
    }
    c
}

/// Dense many-body matrix of the quadratic form `Ψ† ℍ Ψ` with
/// `ℍ = [[A, B], [-B, -A]]`:
/// `Σ A_{jj'} (c†_j c_{j'} - c_{j'} c†_j) + Σ B_{jj'} (c†_j c†_{j'} - c_j c_{j'})`.
pub fn quadratic_hamiltonian(m: &BdgMatrix) -> Array2<f64> {
    let l = m.len();
    let dim = 1usize << l;
    let cs: Vec<Array2<f64>> = (0..l).map(|j| annihilator(l, j)).collect();
    let mut h = Array2::zeros((dim, dim));
    for j in 0..l {
        for jp in 0..l {
            let a = m.a[[j, jp]];
            let b = m.b[[j, jp]];
            if a != 0.0 {
                let cd_c = cs[j].t().dot(&cs[jp]);
                let c_cd = cs[jp].dot(&cs[j].t());
                h = h + a * (&cd_c - &c_cd);
            }
            if b != 0.0 {
                let cd_cd = cs[j].t().dot(&cs[jp].t());
                let c_c = cs[j].dot(&cs[jp]);
                h = h + b * (&cd_cd - &c_c);
            }
        }
    }
    h
}

/// Dense matrix of the quasiparticle creator
/// `γ†_μ = Σ_j (V_{jμ} c_j + U_{jμ} c†_j)`.
pub fn gamma_dagger(basis: &BogoliubovBasis, mu: usize) -> Array2<f64> {
    let l = basis.len();
    let dim = 1usize << l;
    let mut g = Array2::zeros((dim, dim));
    for j in 0..l {
        let c = annihilator(l, j);
        g = g + basis.v[[j, mu]] * &c + basis.u[[j, mu]] * &c.t();
    }
    g
}

/// The Bogoliubov vacuum of a quadratic Hamiltonian as a many-body vector:
/// the ground state of [`quadratic_hamiltonian`]. Requires a unique ground
/// state (all ε_μ bounded away from zero).
pub fn vacuum_state(m: &BdgMatrix) -> Result<Array1<f64>> {
    let h = quadratic_hamiltonian(m);
    let (w, q) = h.eigh(UPLO::Lower)?;
    if w[1] - w[0] < 1e-8 {
        return Err(Error::StructureFailure(format!(
            "many-body vacuum nearly degenerate: gap {:.3e}",
            w[1] - w[0]
        )));
    }
    Ok(q.column(0).to_owned())
}

/// Apply `Π_{μ ∈ occ} γ†_μ` (descending μ) to a state vector.
pub fn excite(basis: &BogoliubovBasis, occ: &[usize], state: &Array1<f64>) -> Array1<f64> {
    let mut out = state.clone();
    let mut sorted: Vec<usize> = occ.to_vec();
    sorted.sort_unstable();
    for &mu in sorted.iter().rev() {
        out = gamma_dagger(basis, mu).dot(&out);
    }
    out
}

/// Union of parity-filtered free-fermion Fock energies over both sectors.
///
/// In sector p a Fock state `Π γ†_μ |∅_p⟩` is physical only if its total
/// parity — the vacuum parity flipped once per occupied mode — equals
/// `(-1)^p`. Each sector then contributes exactly half of its 2^L Fock
/// states, and the union reproduces the full spin spectrum.
pub fn parity_filtered_free_spectrum(spec: &ChainSpec) -> Result<Vec<f64>> {
    if spec.l > 20 {
        return Err(Error::SizeLimit {
            got: spec.l,
            max: 20,
        });
    }
    let mut energies = Vec::with_capacity(1 << spec.l);
    for sector in crate::ParitySector::BOTH {
        let basis = crate::bdg::diagonalize(&spec.assemble(sector))?;
        let vac_parity = i32::from(crate::observables::vacuum_parity(&basis)?);
        let e0 = basis.vacuum_energy();
        let want = if sector.index() == 0 { 1 } else { -1 };
        for mask in 0..(1usize << spec.l) {
            let n_exc = mask.count_ones();
            let parity = vac_parity * if n_exc % 2 == 0 { 1 } else { -1 };
            if parity != want {
                continue;
            }
            let mut e = e0;
            for mu in 0..spec.l {
                if mask >> mu & 1 == 1 {
                    e += 2.0 * basis.eps[mu];
                }
            }
            energies.push(e);
        }
    }
    energies.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(energies)
}

/// Free-fermion ground state of the spin chain: the lowest parity-admissible
/// Fock state over both sectors. Returns its energy, the winning sector, and
/// the occupied quasiparticle modes (empty when the winning vacuum itself is
/// admissible).
pub fn free_fermion_ground(
    spec: &ChainSpec,
) -> Result<(f64, crate::ParitySector, crate::bdg::BogoliubovBasis, Vec<usize>)> {
    let mut best: Option<(f64, crate::ParitySector, crate::bdg::BogoliubovBasis, Vec<usize>)> =
        None;
    for sector in crate::ParitySector::BOTH {
        let basis = crate::bdg::diagonalize(&spec.assemble(sector))?;
        let vac_parity = i32::from(crate::observables::vacuum_parity(&basis)?);
        let want = if sector.index() == 0 { 1 } else { -1 };
        let (energy, occ) = if vac_parity == want {
            (basis.vacuum_energy(), vec![])
        } else {
            // cheapest admissible state carries one quasiparticle
            (basis.vacuum_energy() + 2.0 * basis.eps[0], vec![0])
        };
        if best.as_ref().is_none_or(|(e, ..)| energy < *e) {
            best = Some((energy, sector, basis, occ));
        }
    }
    Ok(best.unwrap())
}
