//! Chain specifications and assembly of the Nambu one-body matrix.
//!
//! For spin-periodic chains the fermion parity `(-1)^N` is conserved, and each
//! parity sector carries its own quadratic Hamiltonian: the sectors differ only
//! in the sign of the boundary bond, `c_{L+1} = (-1)^{p+1} c_1`. Open chains
//! drop the boundary bond entirely, so both sectors produce the same matrix.

use ndarray::Array2;
use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Boundary condition of the *spin* chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryCondition {
    #[serde(rename = "OBC")]
    Open,
    /// Periodic spins; the fermions see a parity-dependent boundary bond.
    #[serde(rename = "PBC-spin")]
    PeriodicSpin,
}

/// Fermion-parity sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParitySector {
    /// p = 0, even fermion number; antiperiodic (ABC) fermions for spin-PBC.
    Even,
    /// p = 1, odd fermion number; periodic (PBC) fermions for spin-PBC.
    Odd,
}

impl ParitySector {
    /// Sector label p ∈ {0, 1}.
    pub fn index(self) -> usize {
        match self {
            ParitySector::Even => 0,
            ParitySector::Odd => 1,
        }
    }

    /// `(-1)^p`.
    pub fn parity_sign(self) -> f64 {
        match self {
            ParitySector::Even => 1.0,
            ParitySector::Odd => -1.0,
        }
    }

    /// Sign carried by the boundary bond, `(-1)^{p+1}`.
    pub fn boundary_sign(self) -> f64 {
        -self.parity_sign()
    }

    pub const BOTH: [ParitySector; 2] = [ParitySector::Even, ParitySector::Odd];
}

/// Couplings, fields and geometry of one chain realization.
///
/// `J[L-1]` is the boundary bond; it is ignored (treated as zero) for open
/// chains. Serializes to JSON with explicit arrays so a stored spec never
/// depends on the generating distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainSpec {
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "J")]
    pub j: Vec<f64>,
    pub kappa: f64,
    pub h: Vec<f64>,
    pub bc: BoundaryCondition,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ChainSpec {
    /// Uniform chain: all bonds equal to `j`, all fields equal to `h`.
    pub fn uniform(l: usize, j: f64, kappa: f64, h: f64, bc: BoundaryCondition) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidSize { got: l, min: 2 });
        }
        Ok(ChainSpec {
            l,
            j: vec![j; l],
            kappa,
            h: vec![h; l],
            bc,
            seed: None,
        })
    }

    /// Disordered chain with `J_j ~ U[j_range]` and `h_j ~ U[h_range]`,
    /// drawn i.i.d. from a ChaCha12 stream seeded with `seed` (bonds first,
    /// then fields). Fixed seed ⇒ bit-identical spec.
    pub fn disordered(
        l: usize,
        j_range: [f64; 2],
        h_range: [f64; 2],
        kappa: f64,
        bc: BoundaryCondition,
        seed: u64,
    ) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidSize { got: l, min: 2 });
        }
        let [j_lo, j_hi] = j_range;
        if !(j_lo > 0.0 && j_lo <= j_hi) {
            return Err(Error::InvalidRange {
                lo: j_lo,
                hi: j_hi,
                why: "bond couplings need 0 < J_min <= J_max",
            });
        }
        let [h_lo, h_hi] = h_range;
        if !(h_lo >= 0.0 && h_lo <= h_hi) {
            return Err(Error::InvalidRange {
                lo: h_lo,
                hi: h_hi,
                why: "fields need 0 <= h_min <= h_max",
            });
        }
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let ju = Uniform::new_inclusive(j_lo, j_hi);
        let hu = Uniform::new_inclusive(h_lo, h_hi);
        let j: Vec<f64> = (0..l).map(|_| ju.sample(&mut rng)).collect();
        let h: Vec<f64> = (0..l).map(|_| hu.sample(&mut rng)).collect();
        Ok(ChainSpec {
            l,
            j,
            kappa,
            h,
            bc,
            seed: Some(seed),
        })
    }

    /// Boundary bond actually used in assembly: zero for open chains.
    pub fn effective_boundary_bond(&self) -> f64 {
        match self.bc {
            BoundaryCondition::Open => 0.0,
            BoundaryCondition::PeriodicSpin => self.j[self.l - 1],
        }
    }

    /// Assemble the one-body matrix for the given parity sector.
    pub fn assemble(&self, sector: ParitySector) -> BdgMatrix {
        BdgMatrix::assemble(self, sector)
    }
}

/// The 2L×2L Hermitian one-body matrix in L×L blocks,
/// `ℍ = [[A, B], [-B, -A]]` with A symmetric and B antisymmetric (real case).
#[derive(Debug, Clone)]
pub struct BdgMatrix {
    pub a: Array2<f64>,
    pub b: Array2<f64>,
    pub sector: ParitySector,
}

impl BdgMatrix {
    /// Build A and B from a chain spec:
    /// `A_{j,j} = h_j`, `A_{j,j+1} = -J_j/2`, `B_{j,j+1} = -κ J_j/2`,
    /// and for spin-PBC the sector-signed corner elements
    /// `A_{L,1} = (-1)^p J_L/2`, `B_{L,1} = (-1)^p κ J_L/2`.
    pub fn assemble(spec: &ChainSpec, sector: ParitySector) -> Self {
        let l = spec.l;
        let mut a = Array2::zeros((l, l));
        let mut b = Array2::zeros((l, l));
        for j in 0..l {
            a[[j, j]] = spec.h[j];
        }
        for j in 0..l - 1 {
            let half = 0.5 * spec.j[j];
            a[[j, j + 1]] = -half;
            a[[j + 1, j]] = -half;
            b[[j, j + 1]] = -spec.kappa * half;
            b[[j + 1, j]] = spec.kappa * half;
        }
        let jl = spec.effective_boundary_bond();
        if jl != 0.0 {
            let signed = sector.parity_sign() * 0.5 * jl;
            a[[l - 1, 0]] = signed;
            a[[0, l - 1]] = signed;
            b[[l - 1, 0]] = spec.kappa * signed;
            b[[0, l - 1]] = -spec.kappa * signed;
        }
        BdgMatrix { a, b, sector }
    }

    pub fn len(&self) -> usize {
        self.a.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The full 2L×2L matrix `[[A, B], [-B, -A]]`.
    pub fn full(&self) -> Array2<f64> {
        let l = self.len();
        let mut h = Array2::zeros((2 * l, 2 * l));
        for i in 0..l {
            for j in 0..l {
                h[[i, j]] = self.a[[i, j]];
                h[[i, j + l]] = self.b[[i, j]];
                h[[i + l, j]] = -self.b[[i, j]];
                h[[i + l, j + l]] = -self.a[[i, j]];
            }
        }
        h
    }

    /// Largest absolute entry, used as the scale for tolerances.
    pub fn scale(&self) -> f64 {
        self.a
            .iter()
            .chain(self.b.iter())
            .fold(0.0_f64, |m, &x| m.max(x.abs()))
    }
}

/// The 2L×2L swap matrix `S = [[0, 1], [1, 0]]` in L×L blocks.
///
/// S implements the particle-hole structure: every assembled ℍ obeys
/// `ℍS = -Sℍ`, and `S² = 1`.
pub fn swap_matrix(l: usize) -> Array2<f64> {
    let mut s = Array2::zeros((2 * l, 2 * l));
    for j in 0..l {
        s[[j, j + l]] = 1.0;
        s[[j + l, j]] = 1.0;
    }
    s
}

/// Apply the swap to a 2L-vector without materializing S.
pub(crate) fn swap_halves(v: &ndarray::ArrayView1<f64>) -> ndarray::Array1<f64> {
    let n = v.len();
    let l = n / 2;
    let mut out = ndarray::Array1::zeros(n);
    for j in 0..l {
        out[j] = v[j + l];
        out[j + l] = v[j];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn frob(m: &Array2<f64>) -> f64 {
        m.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    #[test]
    fn uniform_fills_constant_arrays() {
        let spec = ChainSpec::uniform(4, 1.0, 1.0, 0.5, BoundaryCondition::PeriodicSpin).unwrap();
        assert_eq!(spec.j, vec![1.0; 4]);
        assert_eq!(spec.h, vec![0.5; 4]);
    }

    #[test]
    fn obc_boundary_bond_is_zero_in_assembly() {
        let spec = ChainSpec::uniform(4, 1.0, 1.0, 0.5, BoundaryCondition::Open).unwrap();
        assert_eq!(spec.effective_boundary_bond(), 0.0);
        let m = spec.assemble(ParitySector::Even);
        assert_eq!(m.a[[3, 0]], 0.0);
        assert_eq!(m.b[[3, 0]], 0.0);
    }

    #[test]
    fn single_site_is_rejected() {
        assert!(matches!(
            ChainSpec::uniform(1, 1.0, 1.0, 0.0, BoundaryCondition::Open),
            Err(Error::InvalidSize { .. })
        ));
    }

    #[test]
    fn disordered_is_deterministic_for_fixed_seed() {
        let a = ChainSpec::disordered(8, [0.5, 1.0], [0.0, 1.0], 1.0, BoundaryCondition::Open, 7)
            .unwrap();
        let b = ChainSpec::disordered(8, [0.5, 1.0], [0.0, 1.0], 1.0, BoundaryCondition::Open, 7)
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_width_ranges_reduce_to_uniform() {
        let d = ChainSpec::disordered(8, [1.0, 1.0], [0.5, 0.5], 1.0, BoundaryCondition::Open, 3)
            .unwrap();
        let u = ChainSpec::uniform(8, 1.0, 1.0, 0.5, BoundaryCondition::Open).unwrap();
        assert_eq!(d.j, u.j);
        assert_eq!(d.h, u.h);
    }

    #[test]
    fn nonpositive_jmin_is_rejected() {
        assert!(matches!(
            ChainSpec::disordered(8, [0.0, 1.0], [0.0, 1.0], 1.0, BoundaryCondition::Open, 1),
            Err(Error::InvalidRange { .. })
        ));
    }

    #[test]
    fn two_site_obc_blocks_match_hand_values() {
        let spec = ChainSpec {
            l: 2,
            j: vec![1.0, 0.0],
            kappa: 1.0,
            h: vec![0.5, 0.5],
            bc: BoundaryCondition::Open,
            seed: None,
        };
        let m = spec.assemble(ParitySector::Even);
        assert_abs_diff_eq!(m.a[[0, 0]], 0.5);
        assert_abs_diff_eq!(m.a[[0, 1]], -0.5);
        assert_abs_diff_eq!(m.a[[1, 0]], -0.5);
        assert_abs_diff_eq!(m.a[[1, 1]], 0.5);
        assert_abs_diff_eq!(m.b[[0, 1]], -0.5);
        assert_abs_diff_eq!(m.b[[1, 0]], 0.5);
        assert_abs_diff_eq!(m.b[[0, 0]], 0.0);
    }

    #[test]
    fn zero_couplings_give_zero_blocks() {
        let spec = ChainSpec::uniform(6, 0.0, 1.0, 0.0, BoundaryCondition::PeriodicSpin).unwrap();
        let m = spec.assemble(ParitySector::Odd);
        assert_eq!(frob(&m.a), 0.0);
        assert_eq!(frob(&m.b), 0.0);
    }

    #[test]
    fn sectors_differ_only_in_signed_corners() {
        let spec = ChainSpec::uniform(4, 1.0, 1.0, 0.5, BoundaryCondition::PeriodicSpin).unwrap();
        let even = spec.assemble(ParitySector::Even);
        let odd = spec.assemble(ParitySector::Odd);
        for i in 0..4 {
            for j in 0..4 {
                let corner = (i == 0 && j == 3) || (i == 3 && j == 0);
                if corner {
                    assert_abs_diff_eq!(even.a[[i, j]], -odd.a[[i, j]]);
                    assert_abs_diff_eq!(even.b[[i, j]], -odd.b[[i, j]]);
                    assert!(even.a[[i, j]] != 0.0);
                } else {
                    assert_eq!(even.a[[i, j]], odd.a[[i, j]]);
                    assert_eq!(even.b[[i, j]], odd.b[[i, j]]);
                }
            }
        }
    }

    #[test]
    fn obc_sectors_are_identical() {
        let spec = ChainSpec::disordered(
            6,
            [0.5, 1.5],
            [0.0, 2.0],
            0.7,
            BoundaryCondition::Open,
            11,
        )
        .unwrap();
        let even = spec.assemble(ParitySector::Even);
        let odd = spec.assemble(ParitySector::Odd);
        assert_eq!(even.a, odd.a);
        assert_eq!(even.b, odd.b);
    }

    #[test]
    fn blocks_have_exact_symmetry() {
        let spec = ChainSpec::disordered(
            8,
            [0.5, 1.0],
            [0.0, 2.0],
            0.3,
            BoundaryCondition::PeriodicSpin,
            5,
        )
        .unwrap();
        for sector in ParitySector::BOTH {
            let m = spec.assemble(sector);
            assert_eq!(m.a, m.a.t().to_owned());
            assert_eq!(m.b, -&m.b.t().to_owned());
        }
    }

    #[test]
    fn full_matrix_anticommutes_with_swap() {
        let spec = ChainSpec::disordered(
            8,
            [0.5, 1.0],
            [0.0, 2.0],
            1.0,
            BoundaryCondition::PeriodicSpin,
            9,
        )
        .unwrap();
        let h = spec.assemble(ParitySector::Even).full();
        let s = swap_matrix(8);
        let anti = h.dot(&s) + s.dot(&h);
        assert!(frob(&anti) <= 1e-14 * frob(&h));
    }

    #[test]
    fn swap_matrix_squares_to_identity() {
        for l in [1, 3, 8] {
            let s = swap_matrix(l);
            let s2 = s.dot(&s);
            assert_eq!(s2, Array2::<f64>::eye(2 * l));
        }
    }

    #[test]
    fn spec_round_trips_through_json() {
        let spec = ChainSpec::disordered(
            5,
            [0.5, 1.0],
            [0.0, 1.0],
            0.8,
            BoundaryCondition::PeriodicSpin,
            42,
        )
        .unwrap();
        let text = serde_json::to_string(&spec).unwrap();
        assert!(text.contains("\"L\":5"));
        assert!(text.contains("\"PBC-spin\""));
        let back: ChainSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(spec, back);
    }
}
