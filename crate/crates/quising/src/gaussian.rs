//! Gaussian-state algebra: pairing matrices, Pfaffians and overlaps.
//!
//! A Bogoliubov vacuum is the Gaussian state `N exp(½ Σ Z_{jj'} c†_j c†_{j'})|0⟩`
//! with the antisymmetric pairing matrix `Z = -(U†)⁻¹ V†`. Overlaps between two
//! such vacua reduce to a determinant (Onishi), matrix elements of quasiparticle
//! strings to Pfaffians of sub-blocks of the relative pairing matrix, and
//! overlaps with excited Fock states to determinants with particle-hole
//! swapped columns.

use ndarray::{Array2, ArrayView2};
use ndarray_linalg::{Determinant, Solve, SVD};
use num_complex::Complex64;
use std::collections::BTreeSet;

use crate::bdg::BogoliubovBasis;
use crate::{Error, Result};

/// Antisymmetric pairing matrix of a Gaussian state, expressed either in the
/// site basis or in the quasiparticle basis of a reference vacuum.
#[derive(Debug, Clone)]
pub struct PairingMatrix {
    pub z: Array2<Complex64>,
}

impl PairingMatrix {
    pub fn antisymmetry_defect(&self) -> f64 {
        let n = self.z.nrows();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.z[[i, j]] + self.z[[j, i]]).norm());
            }
        }
        worst
    }
}

/// Set of occupied quasiparticle modes labelling an excited Fock state.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OccupationPattern {
    pub occupied: BTreeSet<usize>,
}

impl OccupationPattern {
    pub fn new<I: IntoIterator<Item = usize>>(modes: I) -> Self {
        OccupationPattern {
            occupied: modes.into_iter().collect(),
        }
    }

    /// Pattern from the bits of `mask` (bit μ set ⇔ mode μ occupied).
    pub fn from_bits(mask: usize) -> Self {
        OccupationPattern {
            occupied: (0..usize::BITS as usize)
                .filter(|&m| mask >> m & 1 == 1)
                .collect(),
        }
    }
}

fn solve_transposed(u: &Array2<f64>, rhs: &Array2<f64>) -> Result<Array2<f64>> {
    // solve Uᵀ X = rhs column by column
    let ut = u.t().to_owned();
    let n = rhs.ncols();
    let mut x = Array2::zeros((u.nrows(), n));
    for c in 0..n {
        let col = rhs.column(c).to_owned();
        let sol = ut.solve(&col)?;
        x.column_mut(c).assign(&sol);
    }
    Ok(x)
}

fn condition_number(u: &Array2<f64>) -> Result<f64> {
    let (_, s, _) = u.svd(false, false)?;
    let smax = s.iter().fold(0.0_f64, |a, &x| a.max(x));
    let smin = s.iter().fold(f64::INFINITY, |a, &x| a.min(x));
    Ok(smax / smin.max(1e-300))
}

/// Pairing matrix of a vacuum relative to the bare fermion vacuum,
/// `Z = -(Uᵀ)⁻¹ Vᵀ` (real basis).
pub fn thouless(basis: &BogoliubovBasis) -> Result<PairingMatrix> {
    pairing_from_uv(&basis.u, &basis.v)
}

/// Pairing matrix of vacuum 1 relative to vacuum 0, expressed over the
/// quasiparticles of basis 0: built from the relative Bogoliubov rotation
/// `U = U₀ᵀU₁ + V₀ᵀV₁`, `V = V₀ᵀU₁ + U₀ᵀV₁`.
pub fn relative_pairing(b0: &BogoliubovBasis, b1: &BogoliubovBasis) -> Result<PairingMatrix> {
    let u = b0.u.t().dot(&b1.u) + b0.v.t().dot(&b1.v);
    let v = b0.v.t().dot(&b1.u) + b0.u.t().dot(&b1.v);
    pairing_from_uv(&u, &v)
}

fn pairing_from_uv(u: &Array2<f64>, v: &Array2<f64>) -> Result<PairingMatrix> {
    let cond = condition_number(u)?;
    if cond > 1e12 {
        return Err(Error::OrthogonalVacuum(format!(
            "U block has condition number {cond:.3e}"
        )));
    }
    let z_real = -solve_transposed(u, &v.t().to_owned())?;
    let z = z_real.mapv(|x| Complex64::new(x, 0.0));
    let pm = PairingMatrix { z };
    let defect = pm.antisymmetry_defect();
    if defect > 1e-9 * (1.0 + pm.z.iter().fold(0.0_f64, |a, x| a.max(x.norm()))) {
        return Err(Error::StructureFailure(format!(
            "pairing matrix antisymmetry defect {defect:.3e}"
        )));
    }
    Ok(pm)
}

/// Squared overlap of two Bogoliubov vacua, `|⟨∅₀|∅₁⟩|² = |det(U₀ᵀU₁ + V₀ᵀV₁)|`.
///
/// Orthogonal vacua give 0 through a vanishing determinant; no error path.
pub fn onishi_overlap_sq(b0: &BogoliubovBasis, b1: &BogoliubovBasis) -> Result<f64> {
    let u = b0.u.t().dot(&b1.u) + b0.v.t().dot(&b1.v);
    Ok(u.det()?.abs())
}

/// Squared overlap of vacuum 0 with the excited Fock state
/// `Π_{μ ∈ occ} γ†_{1μ} |∅₁⟩`: the Onishi determinant with the occupied
/// columns of (U₁, V₁) particle-hole swapped.
pub fn excited_overlap_sq(
    b0: &BogoliubovBasis,
    b1: &BogoliubovBasis,
    occ: &OccupationPattern,
) -> Result<f64> {
    let l = b1.len();
    let mut u1 = b1.u.clone();
    let mut v1 = b1.v.clone();
    for &mu in &occ.occupied {
        if mu >= l {
            return Err(Error::InvalidInput(format!(
                "occupied mode {mu} out of range for L = {l}"
            )));
        }
        for j in 0..l {
            u1[[j, mu]] = b1.v[[j, mu]];
            v1[[j, mu]] = b1.u[[j, mu]];
        }
    }
    let u = b0.u.t().dot(&u1) + b0.v.t().dot(&v1);
    Ok(u.det()?.abs())
}

/// Pfaffian of an even-dimensional antisymmetric complex matrix.
///
/// Skew-symmetric elimination in the Parlett-Reid style: pivot the largest
/// column entry into the subdiagonal, eliminate the rest of the column pair,
/// and accumulate the product of subdiagonal entries with the permutation
/// sign. O(n³), stable under partial pivoting, and sign-correct — unlike
/// ±sqrt(det).
pub fn pfaffian(m: &ArrayView2<Complex64>) -> Result<Complex64> {
    let n = m.nrows();
    if n != m.ncols() || !n.is_multiple_of(2) {
        return Err(Error::InvalidDimension(n));
    }
    let scale = m.iter().fold(0.0_f64, |a, x| a.max(x.norm()));
    for i in 0..n {
        for j in 0..n {
            if (m[[i, j]] + m[[j, i]]).norm() > 1e-12 * scale.max(1.0) {
                return Err(Error::InvalidInput(
                    "pfaffian input is not antisymmetric".into(),
                ));
            }
        }
    }
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut a = m.to_owned();
    let mut pf = Complex64::new(1.0, 0.0);
    for k in (0..n - 1).step_by(2) {
        // pivot: largest entry in column k below the diagonal
        let mut kp = k + 1;
        let mut best = a[[k + 1, k]].norm();
        for i in k + 2..n {
            if a[[i, k]].norm() > best {
                best = a[[i, k]].norm();
                kp = i;
            }
        }
        if kp != k + 1 {
            for j in 0..n {
                a.swap([k + 1, j], [kp, j]);
            }
            for i in 0..n {
                a.swap([i, k + 1], [i, kp]);
            }
            pf = -pf;
        }
        let pivot = a[[k + 1, k]];
        if pivot.norm() == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        pf *= a[[k, k + 1]];
        if k + 2 < n {
            let tau: Vec<Complex64> = (k + 2..n).map(|j| a[[k, j]] / a[[k, k + 1]]).collect();
            for (bi, i) in (k + 2..n).enumerate() {
                for (bj, j) in (k + 2..n).enumerate() {
                    let update = tau[bi] * a[[j, k + 1]] - a[[i, k + 1]] * tau[bj];
                    a[[i, j]] += update;
                }
            }
        }
    }
    Ok(pf)
}

/// Pfaffian of a real antisymmetric matrix.
pub fn pfaffian_real(m: &ArrayView2<f64>) -> Result<f64> {
    let c = m.mapv(|x| Complex64::new(x, 0.0));
    Ok(pfaffian(&c.view())?.re)
}

/// Matrix element `⟨∅₀| γ_{μ_{2n}} ⋯ γ_{μ_1} |∅₁⟩` of a quasiparticle string
/// between two vacua, given the relative pairing matrix of
/// [`relative_pairing`]: the Pfaffian of the indexed sub-block of Z times the
/// vacuum overlap.
///
/// The overlap factor is taken real positive, `|⟨∅₀|∅₁⟩| = det(1 + ZZ†)^{-1/4}`;
/// only magnitudes are contractual, internal phases follow this convention.
/// An odd number of modes gives exactly zero.
pub fn vacuum_matrix_element(z: &PairingMatrix, modes: &[usize]) -> Result<Complex64> {
    if !modes.len().is_multiple_of(2) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let n = modes.len();
    let mut sub = Array2::zeros((n, n));
    for (a, &ma) in modes.iter().enumerate() {
        for (b, &mb) in modes.iter().enumerate() {
            sub[[a, b]] = z.z[[ma, mb]];
        }
    }
    let pf = pfaffian(&sub.view())?;
    Ok(pf * vacuum_overlap_magnitude(z)?)
}

/// `|⟨∅₀|∅₁⟩| = det(1 + ZZ†)^{-1/4}` from the relative pairing matrix alone.
pub fn vacuum_overlap_magnitude(z: &PairingMatrix) -> Result<f64> {
    let n = z.z.nrows();
    let zdag = z.z.t().mapv(|x| x.conj());
    let mut m = z.z.dot(&zdag);
    for i in 0..n {
        m[[i, i]] += Complex64::new(1.0, 0.0);
    }
    let det = m.det()?;
    Ok(det.re.abs().powf(-0.25))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bdg::diagonalize;
    use crate::{BoundaryCondition, ChainSpec, ParitySector};
    use approx::assert_abs_diff_eq;
    use ndarray::array;
    use num_complex::Complex64 as C64;
    use proptest::prelude::*;
    use rand::{Rng as _, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn random_antisymmetric(n: usize, seed: u64) -> Array2<C64> {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut m = Array2::zeros((n, n));
        for i in 0..n {
            for j in i + 1..n {
                let x = C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
                m[[i, j]] = x;
                m[[j, i]] = -x;
            }
        }
        m
    }

    fn random_basis(l: usize, seed: u64) -> BogoliubovBasis {
        let spec = ChainSpec::disordered(
            l,
            [0.5, 1.5],
            [0.2, 1.5],
            0.9,
            BoundaryCondition::PeriodicSpin,
            seed,
        )
        .unwrap();
        diagonalize(&spec.assemble(ParitySector::Even)).unwrap()
    }

    #[test]
    fn pfaffian_2x2_is_the_off_diagonal() {
        let a = C64::new(0.7, -0.3);
        let m = array![[C64::new(0.0, 0.0), a], [-a, C64::new(0.0, 0.0)]];
        assert_abs_diff_eq!(
            (pfaffian(&m.view()).unwrap() - a).norm(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn pfaffian_of_canonical_blocks_is_product() {
        let (l1, l2) = (0.6, -1.3);
        let mut m = Array2::<C64>::zeros((4, 4));
        m[[0, 1]] = C64::new(l1, 0.0);
        m[[1, 0]] = C64::new(-l1, 0.0);
        m[[2, 3]] = C64::new(l2, 0.0);
        m[[3, 2]] = C64::new(-l2, 0.0);
        let pf = pfaffian(&m.view()).unwrap();
        assert_abs_diff_eq!(pf.re, l1 * l2, epsilon = 1e-14);
        assert_abs_diff_eq!(pf.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn pfaffian_squared_equals_determinant() {
        for n in [2, 4, 6, 8, 10, 12] {
            let m = random_antisymmetric(n, 100 + n as u64);
            let pf = pfaffian(&m.view()).unwrap();
            let det = m.det().unwrap();
            let rel = (pf * pf - det).norm() / det.norm().max(1e-300);
            assert!(rel < 1e-10, "n = {n}: |Pf² - det|/|det| = {rel:.3e}");
        }
    }

    #[test]
    fn pfaffian_rejects_odd_and_asymmetric() {
        let m = Array2::<C64>::zeros((3, 3));
        assert!(matches!(
            pfaffian(&m.view()),
            Err(Error::InvalidDimension(3))
        ));
        let mut m = Array2::<C64>::zeros((2, 2));
        m[[0, 1]] = C64::new(1.0, 0.0);
        m[[1, 0]] = C64::new(1.0, 0.0);
        assert!(matches!(pfaffian(&m.view()), Err(Error::InvalidInput(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn pfaffian_square_identity_random(seed in 0u64..1000, half in 1usize..6) {
            let m = random_antisymmetric(2 * half, seed);
            let pf = pfaffian(&m.view()).unwrap();
            let det = m.det().unwrap();
            prop_assert!((pf * pf - det).norm() <= 1e-10 * det.norm().max(1e-12));
        }
    }

    #[test]
    fn thouless_of_bare_vacuum_is_zero() {
        let basis = BogoliubovBasis::bare_vacuum(4, ParitySector::Even);
        let z = thouless(&basis).unwrap();
        assert_eq!(z.z.iter().fold(0.0_f64, |a, x| a.max(x.norm())), 0.0);
    }

    #[test]
    fn thouless_vanishes_in_polarized_limit() {
        let spec = ChainSpec::uniform(6, 1.0, 1.0, 1e5, BoundaryCondition::PeriodicSpin).unwrap();
        let basis = diagonalize(&spec.assemble(ParitySector::Even)).unwrap();
        let z = thouless(&basis).unwrap();
        let zmax = z.z.iter().fold(0.0_f64, |a, x| a.max(x.norm()));
        assert!(zmax < 1e-4, "‖Z‖ = {zmax} should vanish as h → ∞");
    }

    #[test]
    fn thouless_normalization_matches_det_u() {
        // |N|² = det(1 + ZZ†)^{-1/2} must reproduce |det U|
        let spec = ChainSpec::uniform(8, 1.0, 1.0, 0.5, BoundaryCondition::PeriodicSpin).unwrap();
        let basis = diagonalize(&spec.assemble(ParitySector::Even)).unwrap();
        let z = thouless(&basis).unwrap();
        let n = vacuum_overlap_magnitude(&z).unwrap();
        let det_u = basis.u.det().unwrap().abs();
        assert_abs_diff_eq!(n * n, det_u, epsilon = 1e-10);
        assert!(z.antisymmetry_defect() < 1e-12);
    }

    #[test]
    fn thouless_k_space_pair_amplitudes() {
        // in the uniform ABC sector the pairing couples (k, -k) with
        // coefficient v*/u*; transform Z back to momentum space and check
        let l = 8;
        let spec =
            ChainSpec::uniform(l, 1.0, 1.0, 0.5, BoundaryCondition::PeriodicSpin).unwrap();
        let basis = diagonalize(&spec.assemble(ParitySector::Even)).unwrap();
        let z = thouless(&basis).unwrap();
        let disp = crate::uniform::Dispersion::new(1.0, 0.5, 1.0).unwrap();
        let grid = crate::uniform::k_grid(l, ParitySector::Even).unwrap();
        // Z_kq = (1/L) Σ_{j j'} e^{-ikj} Z_{jj'} e^{-iqj'} should be
        // diagonal in (k, -k) with value v_k* / u_k* (φ = 0 convention)
        for &k in grid.ks.iter().filter(|&&k| k > 0.0) {
            let mut zk = C64::new(0.0, 0.0);
            for j in 0..l {
                for jp in 0..l {
                    let phase =
                        C64::new(0.0, -k * (j as f64 + 1.0) + k * (jp as f64 + 1.0)).exp();
                    zk += z.z[[j, jp]] * phase / l as f64;
                }
            }
            let (u, v) = disp.amplitudes(k).unwrap();
            let want = (v / u).conj();
            assert!(
                (zk - want).norm() < 1e-10 || (zk + want).norm() < 1e-10,
                "k = {k}: Z_k = {zk}, v*/u* = {want}"
            );
        }
    }

    #[test]
    fn onishi_identity_and_symmetry() {
        let b0 = random_basis(6, 5);
        let b1 = random_basis(6, 6);
        assert_abs_diff_eq!(onishi_overlap_sq(&b0, &b0).unwrap(), 1.0, epsilon = 1e-12);
        let ab = onishi_overlap_sq(&b0, &b1).unwrap();
        let ba = onishi_overlap_sq(&b1, &b0).unwrap();
        assert_abs_diff_eq!(ab, ba, epsilon = 1e-12);
        assert!((0.0..=1.0 + 1e-12).contains(&ab));
    }

    #[test]
    fn onishi_against_bare_vacuum_is_det_u() {
        let b0 = random_basis(6, 9);
        let bare = BogoliubovBasis::bare_vacuum(6, ParitySector::Even);
        let overlap = onishi_overlap_sq(&b0, &bare).unwrap();
        assert_abs_diff_eq!(overlap, b0.u.det().unwrap().abs(), epsilon = 1e-12);
    }

    #[test]
    fn empty_pattern_reduces_to_onishi() {
        let b0 = random_basis(6, 13);
        let b1 = random_basis(6, 14);
        let occ = OccupationPattern::default();
        assert_abs_diff_eq!(
            excited_overlap_sq(&b0, &b1, &occ).unwrap(),
            onishi_overlap_sq(&b0, &b1).unwrap(),
            epsilon = 1e-13
        );
    }

    #[test]
    fn fock_completeness_sums_to_one() {
        // Σ over all 2^L occupation patterns of |⟨∅₀|pattern₁⟩|² = 1
        let b0 = random_basis(6, 31);
        let b1 = random_basis(6, 32);
        let mut total = 0.0;
        for mask in 0..(1usize << 6) {
            let occ = OccupationPattern::from_bits(mask);
            total += excited_overlap_sq(&b0, &b1, &occ).unwrap();
        }
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn vacuum_matrix_element_odd_string_vanishes() {
        let b0 = random_basis(4, 41);
        let b1 = random_basis(4, 42);
        let z = relative_pairing(&b0, &b1).unwrap();
        let el = vacuum_matrix_element(&z, &[0, 1, 2]).unwrap();
        assert_eq!(el, C64::new(0.0, 0.0));
    }

    #[test]
    fn vacuum_matrix_element_two_modes_is_z_entry() {
        let b0 = random_basis(4, 43);
        let b1 = random_basis(4, 44);
        let z = relative_pairing(&b0, &b1).unwrap();
        let overlap = vacuum_overlap_magnitude(&z).unwrap();
        let el = vacuum_matrix_element(&z, &[1, 3]).unwrap();
        assert_abs_diff_eq!((el - z.z[[1, 3]] * overlap).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn vacuum_matrix_element_matches_three_pairing_wick_sum() {
        let b0 = random_basis(5, 45);
        let b1 = random_basis(5, 46);
        let z = relative_pairing(&b0, &b1).unwrap();
        let overlap = vacuum_overlap_magnitude(&z).unwrap();
        let modes = [0, 1, 3, 4];
        let el = vacuum_matrix_element(&z, &modes).unwrap();
        let zz = &z.z;
        let wick = zz[[0, 1]] * zz[[3, 4]] - zz[[0, 3]] * zz[[1, 4]] + zz[[0, 4]] * zz[[1, 3]];
        assert_abs_diff_eq!((el - wick * overlap).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn relative_overlap_magnitude_matches_onishi() {
        let b0 = random_basis(6, 47);
        let b1 = random_basis(6, 48);
        let z = relative_pairing(&b0, &b1).unwrap();
        let from_z = vacuum_overlap_magnitude(&z).unwrap().powi(2);
        let from_det = onishi_overlap_sq(&b0, &b1).unwrap();
        assert_abs_diff_eq!(from_z, from_det, epsilon = 1e-10);
    }
}
