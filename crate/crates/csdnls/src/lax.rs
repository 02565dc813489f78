//! Dense assembly of the Lax pair and its spectral theory at truncation.
//!
//! For a state u the focusing pair is
//!
//! ```text
//! L_u = D − T_u T_ū,    B_u = T_u T_{∂ₓū} − T_{∂ₓu} T_ū + i(T_u T_ū)²,
//! ```
//!
//! and the defocusing pair flips the sign of T_u T_ū in L and of the first
//! two terms of B.  All operators are compressions to modes 0..=N.  The
//! compression of T_u T_ū equals the product of the compressions (T_ū never
//! raises frequencies), so `assemble_l` is the exact compression of L_u and
//! exactly Hermitian; `assemble_b` composes compressed factors and is
//! exactly skew-Hermitian by construction.
//!
//! Identities such as [S*, L_u] = S* − ⟨·|u⟩S*u hold for the infinite
//! operators; their compressions acquire defects confined to the top edge
//! of the matrix (the shift couples mode N to N−1, and quartic Toeplitz
//! products lose tail contributions there).  Residuals are therefore
//! measured on an interior block that excludes the top rows and columns.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hardy::HardyState;

/// Nonlinearity sign of the equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EquationSign {
    Focusing,
    Defocusing,
}

impl EquationSign {
    /// +1 for focusing, −1 for defocusing: the coefficient σ in
    /// L = D − σ·T_uT_ū and B = σ·(T_uT_{∂ₓū} − T_{∂ₓu}T_ū) + i(T_uT_ū)².
    pub fn factor(self) -> f64 {
        match self {
            EquationSign::Focusing => 1.0,
            EquationSign::Defocusing => -1.0,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            EquationSign::Focusing => EquationSign::Defocusing,
            EquationSign::Defocusing => EquationSign::Focusing,
        }
    }
}

impl std::fmt::Display for EquationSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EquationSign::Focusing => write!(f, "focusing"),
            EquationSign::Defocusing => write!(f, "defocusing"),
        }
    }
}

/// Compression of the Toeplitz operator T_u: entries û(j−k) for j ≥ k.
pub fn toeplitz_matrix(u: &HardyState) -> DMatrix<Complex64> {
    let n = u.trunc() + 1;
    DMatrix::from_fn(n, n, |j, k| {
        if j >= k {
            u.coeff(j - k)
        } else {
            Complex64::ZERO
        }
    })
}

/// D = −i∂ₓ as the diagonal matrix diag(0, 1, …, N).
pub fn derivative_matrix(trunc: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(trunc + 1, trunc + 1, |j, k| {
        if j == k {
            Complex64::new(j as f64, 0.0)
        } else {
            Complex64::ZERO
        }
    })
}

/// S* as the superdiagonal 0/1 matrix: S*e_{k+1} = e_k, S*e_0 = 0.
pub fn shift_adjoint_matrix(trunc: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(trunc + 1, trunc + 1, |j, k| {
        if k == j + 1 {
            Complex64::ONE
        } else {
            Complex64::ZERO
        }
    })
}

/// The Lax operator L_u = D ∓ T_uT_ū by its entry formula
/// L[j][k] = j·δ_{jk} ∓ Σ_{m≤min(j,k)} û(j−m)·conj(û(k−m)).
pub fn assemble_l(u: &HardyState, sign: EquationSign) -> DMatrix<Complex64> {
    let n = u.trunc();
    let sigma = sign.factor();
    DMatrix::from_fn(n + 1, n + 1, |j, k| {
        let mut acc = Complex64::ZERO;
        for m in 0..=j.min(k) {
            acc += u.coeff(j - m) * u.coeff(k - m).conj();
        }
        let diag = if j == k { j as f64 } else { 0.0 };
        Complex64::new(diag, 0.0) - sigma * acc
    })
}

/// The companion operator B_u, composed from compressed Toeplitz factors.
pub fn assemble_b(u: &HardyState, sign: EquationSign) -> DMatrix<Complex64> {
    let tu = toeplitz_matrix(u);
    let tu_bar = tu.adjoint();
    let tdx = toeplitz_matrix(&u.d_dx());
    let tdx_bar = tdx.adjoint();
    let k = &tu * &tu_bar;
    let first = &tu * &tdx_bar - &tdx * &tu_bar;
    let sigma = Complex64::new(sign.factor(), 0.0);
    first * sigma + (&k * &k) * Complex64::i()
}

/// The assembled pair with its provenance.
#[derive(Debug, Clone)]
pub struct LaxMatrices {
    pub l: DMatrix<Complex64>,
    pub b: DMatrix<Complex64>,
    pub sign: EquationSign,
    /// ‖u‖_{L²} of the generating state.
    pub source_norm: f64,
}

impl LaxMatrices {
    pub fn assemble(u: &HardyState, sign: EquationSign) -> Self {
        Self {
            l: assemble_l(u, sign),
            b: assemble_b(u, sign),
            sign,
            source_norm: u.l2_norm(),
        }
    }

    pub fn trunc(&self) -> usize {
        self.l.nrows() - 1
    }

    /// max |L[j][k] − conj(L[k][j])|.
    pub fn hermiticity_defect(&self) -> f64 {
        hermiticity_defect(&self.l)
    }

    /// max |B[j][k] + conj(B[k][j])|.
    pub fn skewness_defect(&self) -> f64 {
        let n = self.b.nrows();
        let mut worst = 0.0f64;
        for j in 0..n {
            for k in 0..n {
                worst = worst.max((self.b[(j, k)] + self.b[(k, j)].conj()).norm());
            }
        }
        worst
    }

    /// Entrywise tolerance 1e−12·(1 + ‖L‖_max) used by the invariants.
    pub fn entry_tolerance(&self) -> f64 {
        1e-12 * (1.0 + max_abs(&self.l))
    }
}

pub(crate) fn hermiticity_defect(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for j in 0..n {
        for k in 0..n {
            worst = worst.max((m[(j, k)] - m[(k, j)].conj()).norm());
        }
    }
    worst
}

pub(crate) fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Eigendecomposition of a Hermitian operator with ascending eigenvalues
/// and a deterministic eigenvector phase: the largest-modulus entry of each
/// column is made real and positive, ties broken by the lowest index.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<Complex64>,
}

impl Spectrum {
    /// Decompose `l`, rejecting matrices whose Hermitian defect exceeds
    /// 1e−12·(1 + ‖L‖_max).
    pub fn compute(l: &DMatrix<Complex64>) -> Result<Self> {
        let tolerance = 1e-12 * (1.0 + max_abs(l));
        let asymmetry = hermiticity_defect(l);
        if asymmetry > tolerance {
            return Err(Error::NotHermitian { asymmetry, tolerance });
        }
        // fold round-off asymmetry away before the solve
        let herm = (l + l.adjoint()).scale(0.5);
        let eig = herm.symmetric_eigen();

        let n = eig.eigenvalues.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

        let mut eigenvalues = Vec::with_capacity(n);
        let mut eigenvectors = DMatrix::<Complex64>::zeros(n, n);
        for (col, &src) in order.iter().enumerate() {
            eigenvalues.push(eig.eigenvalues[src]);
            let mut column = eig.eigenvectors.column(src).clone_owned();
            fix_phase(&mut column);
            eigenvectors.set_column(col, &column);
        }
        Ok(Self { eigenvalues, eigenvectors })
    }

    pub fn of(u: &HardyState, sign: EquationSign) -> Result<Self> {
        Self::compute(&assemble_l(u, sign))
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvalue(&self, n: usize) -> f64 {
        self.eigenvalues[n]
    }

    pub fn eigenvectors(&self) -> &DMatrix<Complex64> {
        &self.eigenvectors
    }

    /// Column n as a Hardy state (the eigenfunction f_n).
    pub fn eigenfunction(&self, n: usize) -> HardyState {
        HardyState::new(self.eigenvectors.column(n).iter().copied().collect())
    }

    /// max |V†V − Id|.
    pub fn orthonormality_defect(&self) -> f64 {
        let gram = self.eigenvectors.adjoint() * &self.eigenvectors;
        let n = gram.nrows();
        let mut worst = 0.0f64;
        for j in 0..n {
            for k in 0..n {
                let target = if j == k { Complex64::ONE } else { Complex64::ZERO };
                worst = worst.max((gram[(j, k)] - target).norm());
            }
        }
        worst
    }

    /// Worst per-column residual ‖L·fₙ − λₙ·fₙ‖ / (1 + |λₙ|).
    pub fn eigen_residual(&self, l: &DMatrix<Complex64>) -> f64 {
        let mut worst = 0.0f64;
        for (n, &lambda) in self.eigenvalues.iter().enumerate() {
            let v = self.eigenvectors.column(n);
            let r = (l * v) - v.scale(lambda);
            worst = worst.max(r.norm() / (1.0 + lambda.abs()));
        }
        worst
    }

    /// f(L) = V·diag(f(λₙ))·V†.
    pub fn function_matrix(&self, f: impl Fn(f64) -> Complex64) -> DMatrix<Complex64> {
        let n = self.len();
        let mut scaled = self.eigenvectors.clone();
        for (col, &lambda) in self.eigenvalues.iter().enumerate() {
            let phase = f(lambda);
            for j in 0..n {
                scaled[(j, col)] *= phase;
            }
        }
        scaled * self.eigenvectors.adjoint()
    }

    /// Coordinates of u in the eigenbasis, ⟨u|fₙ⟩ for each n.
    pub fn eigenbasis_coordinates(&self, u: &HardyState) -> Vec<Complex64> {
        (0..self.len())
            .map(|n| {
                self.eigenvectors
                    .column(n)
                    .iter()
                    .zip(u.coeffs())
                    .map(|(f, c)| c * f.conj())
                    .sum()
            })
            .collect()
    }

    /// Orthogonal projector onto the span of the listed eigenvectors.
    /// Eigenvalue clusters below the degeneracy gap must be compared this
    /// way rather than column by column.
    pub fn spectral_projector(&self, indices: &[usize]) -> DMatrix<Complex64> {
        let n = self.len();
        let mut p = DMatrix::<Complex64>::zeros(n, n);
        for &idx in indices {
            let v = self.eigenvectors.column(idx);
            for j in 0..n {
                for k in 0..n {
                    p[(j, k)] += v[j] * v[k].conj();
                }
            }
        }
        p
    }
}

fn fix_phase(column: &mut DVector<Complex64>) {
    let mut best = 0usize;
    let mut best_mod = 0.0f64;
    for (i, c) in column.iter().enumerate() {
        let m = c.norm();
        if m > best_mod {
            best_mod = m;
            best = i;
        }
    }
    if best_mod > 0.0 {
        let phase = column[best].conj() / best_mod;
        for c in column.iter_mut() {
            *c *= phase;
        }
    }
}

/// The focusing quadratic form Q_u(f,g) = ⟨D^{1/2}f|D^{1/2}g⟩ − ⟨T_ū f|T_ū g⟩.
pub fn quadratic_form(u: &HardyState, f: &HardyState, g: &HardyState) -> Result<Complex64> {
    if u.trunc() != f.trunc() {
        return Err(Error::TruncationMismatch { left: u.trunc(), right: f.trunc() });
    }
    let dfg: Complex64 = f
        .coeffs()
        .iter()
        .zip(g.coeffs())
        .enumerate()
        .map(|(n, (a, b))| a * b.conj() * n as f64)
        .sum();
    let tf = u.toeplitz_conj(f)?;
    let tg = u.toeplitz_conj(g)?;
    Ok(dfg - tf.inner(&tg)?)
}

/// Residuals of the shift commutator identities, measured on the interior
/// block that drops the top `margin` rows and columns:
///
/// ```text
/// [S*, L_u] = S* − ⟨·|u⟩S*u
/// [S*, B_u] = i(S*L_u² − (L_u+Id)²S*)
/// ```
#[derive(Debug, Clone, Serialize)]
pub struct CommutatorReport {
    pub trunc: usize,
    pub margin: usize,
    pub l_residual: f64,
    pub b_residual: f64,
}

impl CommutatorReport {
    pub fn max_residual(&self) -> f64 {
        self.l_residual.max(self.b_residual)
    }
}

/// Check both commutator identities for the focusing pair of `u`, excluding
/// the top two rows and columns where compression defects live.
pub fn commutator_checks(u: &HardyState) -> CommutatorReport {
    commutator_checks_with_margin(u, 2)
}

pub fn commutator_checks_with_margin(u: &HardyState, margin: usize) -> CommutatorReport {
    let lax = LaxMatrices::assemble(u, EquationSign::Focusing);
    commutator_residuals(u, &lax, margin)
}

/// Same residuals against externally supplied matrices (lets a harness feed
/// in a deliberately corrupted pair as a negative control).
pub fn commutator_residuals(
    u: &HardyState,
    lax: &LaxMatrices,
    margin: usize,
) -> CommutatorReport {
    let n = u.trunc();
    let ss = shift_adjoint_matrix(n);
    let id = DMatrix::<Complex64>::identity(n + 1, n + 1);

    // rank-one term h ↦ ⟨h|u⟩·S*u
    let su = u.shift_adjoint();
    let rank_one = DMatrix::from_fn(n + 1, n + 1, |j, k| su.coeff(j) * u.coeff(k).conj());

    let lhs_l = &ss * &lax.l - &lax.l * &ss;
    let rhs_l = &ss - rank_one;
    let l_residual = interior_max(&(lhs_l - rhs_l), margin);

    let l2 = &lax.l * &lax.l;
    let lp1 = &lax.l + &id;
    let lhs_b = &ss * &lax.b - &lax.b * &ss;
    let rhs_b = (&ss * l2 - (&lp1 * &lp1) * &ss) * Complex64::i();
    let b_residual = interior_max(&(lhs_b - rhs_b), margin);

    CommutatorReport { trunc: n, margin, l_residual, b_residual }
}

fn interior_max(m: &DMatrix<Complex64>, margin: usize) -> f64 {
    let n = m.nrows().saturating_sub(margin);
    let mut worst = 0.0f64;
    for j in 0..n {
        for k in 0..n {
            worst = worst.max(m[(j, k)].norm());
        }
    }
    worst
}

/// Discrete Lax-equation residual along a uniformly sampled trajectory:
/// max over interior entries and interior times of
/// ‖(L(t+dt) − L(t−dt))/(2dt) − [B(t), L(t)]‖_max.  Second order in dt,
/// plus truncation fold-back confined near the top edge.
pub fn lax_residual(states: &[HardyState], dt: f64, sign: EquationSign) -> Result<f64> {
    lax_residual_with_margin(states, dt, sign, 2)
}

pub fn lax_residual_with_margin(
    states: &[HardyState],
    dt: f64,
    sign: EquationSign,
    margin: usize,
) -> Result<f64> {
    if states.len() < 3 {
        return Err(Error::TooFewSamples { needed: 3, got: states.len() });
    }
    let two_dt = Complex64::new(2.0 * dt, 0.0);
    let mut worst = 0.0f64;
    let mut matrices: Vec<DMatrix<Complex64>> =
        states.iter().take(2).map(|s| assemble_l(s, sign)).collect();
    for mid in 1..states.len() - 1 {
        let next = assemble_l(&states[mid + 1], sign);
        let fd = (&next - &matrices[0]) / two_dt;
        let b = assemble_b(&states[mid], sign);
        let comm = &b * &matrices[1] - &matrices[1] * &b;
        worst = worst.max(interior_max(&(fd - comm), margin));
        matrices[0] = std::mem::replace(&mut matrices[1], next);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Columnwise oracle: the operator built by applying the hardy-core
    /// composition D ∓ T_u∘T_ū to each basis vector.
    fn l_by_application(u: &HardyState, sign: EquationSign) -> DMatrix<Complex64> {
        let n = u.trunc();
        let mut m = DMatrix::<Complex64>::zeros(n + 1, n + 1);
        for k in 0..=n {
            let e = HardyState::basis(n, k);
            let col = e
                .derivative()
                .add_scaled(
                    c(-sign.factor(), 0.0),
                    &u.toeplitz(&u.toeplitz_conj(&e).unwrap()).unwrap(),
                )
                .unwrap();
            for j in 0..=n {
                m[(j, k)] = col.coeff(j);
            }
        }
        m
    }

    #[test]
    fn l_for_zero_state_is_the_derivative() {
        let u = HardyState::zeros(6);
        for sign in [EquationSign::Focusing, EquationSign::Defocusing] {
            assert_eq!(assemble_l(&u, sign), derivative_matrix(6));
        }
    }

    #[test]
    fn l_for_constant_state_is_shifted_derivative() {
        let amp = c(0.6, -0.3);
        let u = HardyState::constant(8, amp);
        let l = assemble_l(&u, EquationSign::Focusing);
        let expected = derivative_matrix(8)
            - DMatrix::<Complex64>::identity(9, 9) * c(amp.norm_sqr(), 0.0);
        assert!(max_abs(&(&l - &expected)) < 1e-15);
        // matches the columnwise operator application
        let oracle = l_by_application(&u, EquationSign::Focusing);
        assert!(max_abs(&(&l - &oracle)) < 1e-14);
    }

    #[test]
    fn l_matches_columnwise_application_for_generic_state() {
        let u = HardyState::rational_profile(c(0.4, 0.25), c(0.7, 0.2), 12).unwrap();
        for sign in [EquationSign::Focusing, EquationSign::Defocusing] {
            let l = assemble_l(&u, sign);
            let oracle = l_by_application(&u, sign);
            assert!(max_abs(&(&l - &oracle)) < 1e-13);
        }
    }

    #[test]
    fn l_applied_to_one_matches_footnote_identity() {
        // L_u 1 = −⟨1|u⟩u in the focusing case
        let u = HardyState::rational_profile(c(0.3, 0.1), c(0.5, -0.4), 9).unwrap();
        let l = assemble_l(&u, EquationSign::Focusing);
        let one = DVector::from_fn(10, |j, _| if j == 0 { Complex64::ONE } else { Complex64::ZERO });
        let got = &l * one;
        let factor = -u.coeff(0).conj(); // ⟨1|u⟩ = conj(û(0))
        for j in 0..=9 {
            assert!((got[j] - factor * u.coeff(j)).norm() < 1e-15);
        }
    }

    #[test]
    fn b_for_zero_and_constant_states() {
        let z = HardyState::zeros(5);
        assert!(max_abs(&assemble_b(&z, EquationSign::Focusing)) == 0.0);

        let amp = c(0.5, 0.5);
        let u = HardyState::constant(5, amp);
        for sign in [EquationSign::Focusing, EquationSign::Defocusing] {
            let b = assemble_b(&u, sign);
            let expected =
                DMatrix::<Complex64>::identity(6, 6) * c(0.0, amp.norm_sqr() * amp.norm_sqr());
            assert!(max_abs(&(&b - &expected)) < 1e-15);
        }
    }

    #[test]
    fn assembled_pair_is_hermitian_and_skew() {
        let u = HardyState::rational_profile(c(-0.45, 0.3), c(0.9, 0.1), 16).unwrap();
        for sign in [EquationSign::Focusing, EquationSign::Defocusing] {
            let lax = LaxMatrices::assemble(&u, sign);
            let tol = lax.entry_tolerance();
            assert!(lax.hermiticity_defect() <= tol);
            assert!(lax.skewness_defect() <= tol);
        }
    }

    #[test]
    fn spectrum_of_diagonal_matrix() {
        let l = derivative_matrix(2);
        let s = Spectrum::compute(&l).unwrap();
        assert_eq!(s.eigenvalues(), &[0.0, 1.0, 2.0]);
        for n in 0..3 {
            let f = s.eigenfunction(n);
            assert_eq!(f, HardyState::basis(2, n));
        }
    }

    #[test]
    fn spectrum_of_constant_state_focusing() {
        let amp = c(0.8, 0.0);
        let u = HardyState::constant(10, amp);
        let s = Spectrum::of(&u, EquationSign::Focusing).unwrap();
        for (n, &lambda) in s.eigenvalues().iter().enumerate() {
            assert_relative_eq!(lambda, n as f64 - amp.norm_sqr(), epsilon = 1e-12);
        }
        assert!(s.orthonormality_defect() <= 1e-12);
        assert!(s.eigen_residual(&assemble_l(&u, EquationSign::Focusing)) <= 1e-10);
    }

    #[test]
    fn spectrum_rejects_non_hermitian_input() {
        let mut l = derivative_matrix(3);
        l[(0, 2)] = c(0.5, 0.0);
        assert!(matches!(Spectrum::compute(&l), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn phase_convention_pins_largest_entry_real_positive() {
        let u = HardyState::rational_profile(c(0.5, 0.1), c(0.6, 0.3), 12).unwrap();
        let s = Spectrum::of(&u, EquationSign::Focusing).unwrap();
        for n in 0..s.len() {
            let f = s.eigenfunction(n);
            let (mut best, mut best_mod) = (0usize, 0.0f64);
            for (i, v) in f.coeffs().iter().enumerate() {
                if v.norm() > best_mod {
                    best_mod = v.norm();
                    best = i;
                }
            }
            let pinned = f.coeff(best);
            assert!(pinned.im.abs() <= 1e-12 * (1.0 + pinned.re.abs()));
            assert!(pinned.re > 0.0);
        }
    }

    #[test]
    fn weyl_bound_focusing_single_mode() {
        let u = HardyState::single_mode(32, 1, c(0.2, 0.0));
        let s = Spectrum::of(&u, EquationSign::Focusing).unwrap();
        for (n, &lambda) in s.eigenvalues().iter().enumerate() {
            assert!(lambda <= n as f64 + 1e-10);
        }
    }

    #[test]
    fn quadratic_form_reduces_to_d_form_at_zero() {
        let n = 10;
        let z = HardyState::zeros(n);
        let f = HardyState::rational_profile(c(0.3, -0.5), c(1.0, 0.0), n).unwrap();
        let q = quadratic_form(&z, &f, &f).unwrap();
        assert_relative_eq!(q.re, f.d_quadratic(), epsilon = 1e-12);
        assert!(q.im.abs() < 1e-14);
    }

    #[test]
    fn quadratic_form_on_constants() {
        // Q_u(1,1) = −|û(0)|²
        let u = HardyState::rational_profile(c(0.4, 0.2), c(0.7, -0.3), 8).unwrap();
        let one = HardyState::basis(8, 0);
        let q = quadratic_form(&u, &one, &one).unwrap();
        assert_relative_eq!(q.re, -u.coeff(0).norm_sqr(), epsilon = 1e-14);
        assert!(q.im.abs() < 1e-14);
    }

    #[test]
    fn quadratic_form_matches_assembled_matrix() {
        let n = 12;
        let u = HardyState::rational_profile(c(0.35, 0.35), c(0.5, 0.5), n).unwrap();
        let l = assemble_l(&u, EquationSign::Focusing);
        // interior-supported test vectors
        let mut f = HardyState::zeros(n);
        let mut g = HardyState::zeros(n);
        for k in 0..n {
            f.coeffs_mut()[k] = c(0.1 * k as f64, -0.2);
            g.coeffs_mut()[k] = c(0.3, 0.05 * k as f64);
        }
        let fv = DVector::from_column_slice(f.coeffs());
        let gv = DVector::from_column_slice(g.coeffs());
        let lf = &l * fv;
        let via_matrix: Complex64 = lf.iter().zip(gv.iter()).map(|(a, b)| a * b.conj()).sum();
        let q = quadratic_form(&u, &f, &g).unwrap();
        assert!((q - via_matrix).norm() <= 1e-10);
    }

    #[test]
    fn commutator_identity_for_zero_state_is_exact() {
        // u = 0: [S*, D] = S* on the interior block
        let report = commutator_checks(&HardyState::zeros(16));
        assert_eq!(report.l_residual, 0.0);
        assert_eq!(report.b_residual, 0.0);
    }

    #[test]
    fn lax_residual_of_static_trajectories() {
        let z = HardyState::zeros(10);
        let traj = vec![z.clone(), z.clone(), z];
        assert_eq!(lax_residual(&traj, 1e-3, EquationSign::Focusing).unwrap(), 0.0);

        // constant data is a stationary solution with [B, L] = 0
        let u = HardyState::constant(10, c(0.7, -0.2));
        let traj = vec![u.clone(), u.clone(), u];
        assert!(lax_residual(&traj, 1e-3, EquationSign::Focusing).unwrap() <= 1e-12);

        let short = vec![HardyState::zeros(4)];
        assert!(matches!(
            lax_residual(&short, 1e-3, EquationSign::Focusing),
            Err(Error::TooFewSamples { .. })
        ));
    }
}
