//! Finite-dimensional model of the Hardy space L²₊(T).
//!
//! A state holds the Fourier coefficients û(0), …, û(N) of a function with
//! nonnegative frequencies only; every operator in this crate is the
//! compression of its infinite-dimensional counterpart to that band.  The
//! inner product is the normalized one, ⟨u|v⟩ = ∫ u v̄ dx/2π, so coefficient
//! sums are Parseval-exact.
//!
//! Products come in two flavours: a direct O(N²) convolution used as the
//! oracle, and a transform-based path that zero-pads the grid far enough
//! that every retained mode of a quadratic product is alias-free.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Truncated element of L²₊(T): coefficients û(n) for n = 0..=trunc.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyState {
    coeffs: Vec<Complex64>,
}

impl HardyState {
    /// Wrap a coefficient vector û(0..=N). Must be nonempty.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "state needs at least the 0-mode");
        Self { coeffs }
    }

    pub fn zeros(trunc: usize) -> Self {
        Self { coeffs: vec![Complex64::ZERO; trunc + 1] }
    }

    /// The constant function c·1.
    pub fn constant(trunc: usize, c: Complex64) -> Self {
        let mut s = Self::zeros(trunc);
        s.coeffs[0] = c;
        s
    }

    /// a·e^{inx}.
    pub fn single_mode(trunc: usize, n: usize, a: Complex64) -> Self {
        assert!(n <= trunc, "mode {n} beyond truncation {trunc}");
        let mut s = Self::zeros(trunc);
        s.coeffs[n] = a;
        s
    }

    /// Basis vector e_n = e^{inx}.
    pub fn basis(trunc: usize, n: usize) -> Self {
        Self::single_mode(trunc, n, Complex64::ONE)
    }

    /// Geometric-coefficient profile c/(1 − q e^{ix}), û(n) = c·qⁿ.
    ///
    /// With c = √(1−|q|²) the untruncated profile has unit L² norm; the
    /// truncated norm² is 1 − |q|^{2(N+1)}.
    pub fn rational_profile(q: Complex64, c: Complex64, trunc: usize) -> Result<Self> {
        if q.norm() >= 1.0 {
            return Err(Error::PoleInsideTorus(q.norm()));
        }
        let mut coeffs = Vec::with_capacity(trunc + 1);
        let mut p = Complex64::ONE;
        for _ in 0..=trunc {
            coeffs.push(c * p);
            p *= q;
        }
        Ok(Self { coeffs })
    }

    /// Highest retained frequency N.
    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs[n]
    }

    fn require_same_trunc(&self, other: &Self) -> Result<()> {
        if self.trunc() != other.trunc() {
            return Err(Error::TruncationMismatch { left: self.trunc(), right: other.trunc() });
        }
        Ok(())
    }

    /// ⟨u|v⟩ = Σₙ û(n) conj(v̂(n)).
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.require_same_trunc(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b.conj())
            .sum())
    }

    /// ⟨u|1⟩, the mean of u.
    pub fn mean(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn l2_norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn l2_norm(&self) -> f64 {
        self.l2_norm_sq().sqrt()
    }

    /// ‖u‖_{H^s} = (Σₙ (1+n²)^s |û(n)|²)^{1/2}, s ≥ 0.
    pub fn sobolev_norm(&self, s: f64) -> Result<f64> {
        if s < 0.0 {
            return Err(Error::NegativeSobolevOrder(s));
        }
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| (1.0 + (n * n) as f64).powf(s) * c.norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Homogeneous variant ‖u‖_{Ḣ^s} = (Σ_{n≥1} n^{2s} |û(n)|²)^{1/2}.
    pub fn dot_sobolev_norm(&self, s: f64) -> Result<f64> {
        if s < 0.0 {
            return Err(Error::NegativeSobolevOrder(s));
        }
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| ((n * n) as f64).powf(s) * c.norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// D u with D = −i∂ₓ: coefficients n·û(n).
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * n as f64)
            .collect();
        Self { coeffs }
    }

    /// ∂ₓu: coefficients i·n·û(n).
    pub fn d_dx(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| Complex64::new(0.0, n as f64) * c)
            .collect();
        Self { coeffs }
    }

    /// ⟨Du|u⟩ = Σₙ n|û(n)|² (real by inspection).
    pub fn d_quadratic(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| n as f64 * c.norm_sqr())
            .sum()
    }

    /// S u = e^{ix}u at fixed truncation.  The top coefficient û(N) falls
    /// off the band; its magnitude is returned as the truncation loss.
    pub fn shift(&self) -> (Self, f64) {
        let n = self.trunc();
        let mut coeffs = vec![Complex64::ZERO; n + 1];
        coeffs[1..].copy_from_slice(&self.coeffs[..n]);
        (Self { coeffs }, self.coeffs[n].norm())
    }

    /// S* u: frequencies lowered by one, S*1 = 0.
    pub fn shift_adjoint(&self) -> Self {
        let n = self.trunc();
        let mut coeffs = vec![Complex64::ZERO; n + 1];
        coeffs[..n].copy_from_slice(&self.coeffs[1..]);
        Self { coeffs }
    }

    /// T_u g = Π(u·g) as a lower-triangular Toeplitz convolution:
    /// (T_u g)(j) = Σ_{m≤j} û(j−m)·ĝ(m).
    pub fn toeplitz(&self, g: &Self) -> Result<Self> {
        self.require_same_trunc(g)?;
        let n = self.trunc();
        let mut coeffs = vec![Complex64::ZERO; n + 1];
        for (j, out) in coeffs.iter_mut().enumerate() {
            let mut acc = Complex64::ZERO;
            for m in 0..=j {
                acc += self.coeffs[j - m] * g.coeffs[m];
            }
            *out = acc;
        }
        Ok(Self { coeffs })
    }

    /// T_ū h = Π(ū·h): (T_ū h)(n) = Σ_{p≤N−n} ĥ(n+p)·conj(û(p)).
    pub fn toeplitz_conj(&self, h: &Self) -> Result<Self> {
        self.require_same_trunc(h)?;
        let n = self.trunc();
        let mut coeffs = vec![Complex64::ZERO; n + 1];
        for (k, out) in coeffs.iter_mut().enumerate() {
            let mut acc = Complex64::ZERO;
            for p in 0..=(n - k) {
                acc += h.coeffs[k + p] * self.coeffs[p].conj();
            }
            *out = acc;
        }
        Ok(Self { coeffs })
    }

    /// Σ_{n>3N/4} |û(n)|², the spectral-blocking monitor.
    pub fn top_quarter_mass(&self) -> f64 {
        let n = self.trunc();
        let from = 3 * n / 4 + 1;
        self.coeffs[from.min(n + 1)..].iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// self + c·other (equal truncation required).
    pub fn add_scaled(&self, c: Complex64, other: &Self) -> Result<Self> {
        self.require_same_trunc(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + c * b)
            .collect();
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(-Complex64::ONE, other)
    }

    /// Largest |û(n)| (used by blow-up and NaN monitors).
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

/// General trigonometric polynomial with frequencies −M..=M, e.g. |u|².
#[derive(Debug, Clone, PartialEq)]
pub struct FullSymbol {
    max_freq: usize,
    /// coeffs[m + max_freq] is the coefficient of e^{imx}.
    coeffs: Vec<Complex64>,
}

impl FullSymbol {
    pub fn new(max_freq: usize, coeffs: Vec<Complex64>) -> Self {
        assert_eq!(coeffs.len(), 2 * max_freq + 1, "need 2M+1 coefficients");
        Self { max_freq, coeffs }
    }

    pub fn zeros(max_freq: usize) -> Self {
        Self { max_freq, coeffs: vec![Complex64::ZERO; 2 * max_freq + 1] }
    }

    pub fn max_freq(&self) -> usize {
        self.max_freq
    }

    /// Coefficient of e^{imx}; zero outside the stored range.
    pub fn coeff(&self, m: i64) -> Complex64 {
        let idx = m + self.max_freq as i64;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Complex64::ZERO
        } else {
            self.coeffs[idx as usize]
        }
    }

    pub fn set_coeff(&mut self, m: i64, value: Complex64) {
        let idx = (m + self.max_freq as i64) as usize;
        self.coeffs[idx] = value;
    }

    /// |u|² = u·ū by exact convolution: c(m) = Σ_p û(p+m)·conj(û(p)),
    /// c(−m) = conj(c(m)).
    pub fn modulus_squared(u: &HardyState) -> Self {
        let n = u.trunc();
        let mut sym = Self::zeros(n);
        for m in 0..=n {
            let mut acc = Complex64::ZERO;
            for p in 0..=(n - m) {
                acc += u.coeffs[p + m] * u.coeffs[p].conj();
            }
            sym.set_coeff(m as i64, acc);
            if m > 0 {
                sym.set_coeff(-(m as i64), acc.conj());
            }
        }
        sym
    }

    /// A symbol is real-valued iff c(−m) = conj(c(m)) for all m.
    pub fn hermitian_symmetry_defect(&self) -> f64 {
        (0..=self.max_freq as i64)
            .map(|m| (self.coeff(-m) - self.coeff(m).conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_real_valued(&self, tol: f64) -> bool {
        self.hermitian_symmetry_defect() <= tol
    }

    /// Szegő projection compressed to modes 0..=trunc: negative frequencies
    /// are discarded, frequencies beyond the requested band read as zero.
    pub fn szego_project(&self, trunc: usize) -> HardyState {
        let coeffs = (0..=trunc as i64).map(|m| self.coeff(m)).collect();
        HardyState::new(coeffs)
    }
}

/// Π(f·g) on modes 0..=N for two band-limited Hardy states.
///
/// With `dealias` the grid is zero-padded past 2N so the quadratic product
/// is evaluated alias-free and the result matches the direct convolution to
/// round-off; without it the product is formed on the natural N+1-point grid
/// and the modes beyond the band fold back in.
pub fn pointwise_product(f: &HardyState, g: &HardyState, dealias: bool) -> Result<HardyState> {
    if f.trunc() != g.trunc() {
        return Err(Error::TruncationMismatch { left: f.trunc(), right: g.trunc() });
    }
    let n = f.trunc();
    let grid = if dealias { padded_grid(n) } else { n + 1 };

    let mut planner = FftPlanner::new();
    let synth = planner.plan_fft_inverse(grid);
    let analyze = planner.plan_fft_forward(grid);

    let mut fv = pad(f, grid);
    let mut gv = pad(g, grid);
    synth.process(&mut fv);
    synth.process(&mut gv);
    for (a, b) in fv.iter_mut().zip(&gv) {
        *a *= b;
    }
    analyze.process(&mut fv);
    let scale = 1.0 / grid as f64;
    Ok(HardyState::new(fv[..=n].iter().map(|c| c * scale).collect()))
}

/// Smallest power of two at least 2N+2: every mode of a quadratic product of
/// two degree-N states is then exact on the grid.
pub(crate) fn padded_grid(trunc: usize) -> usize {
    (2 * trunc + 2).next_power_of_two()
}

pub(crate) fn pad(u: &HardyState, grid: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::ZERO; grid];
    v[..=u.trunc()].copy_from_slice(u.coeffs());
    v
}
