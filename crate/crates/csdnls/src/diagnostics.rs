//! Conserved quantities, Birkhoff-type coordinates, inequality gaps, and
//! drift statistics over trajectories.
//!
//! The flow conserves the spectrum of the Lax operator and with it the
//! whole family H_s(u) = ⟨(L_u+λ)^s u|u⟩, λ ≫ 0; the coordinates
//! βₙ(t) = ⟨u(t)|fₙᵗ⟩ against the evolved eigenbasis have constant moduli
//! and phases rotating at e^{−itλₙ²}.  Everything here measures how well a
//! sampled trajectory honours those statements.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hardy::HardyState;
use crate::lax::{assemble_l, commutator_checks, EquationSign, Spectrum};
use crate::propagator::{ExplicitPropagator, TrajectoryRecord};

/// H_s(u) = Σₙ (λₙ + λ)^s |⟨u|fₙ⟩|² through the spectrum of L_u.
///
/// Real powers are defined spectrally; every shifted eigenvalue must be
/// strictly positive.
pub fn conserved_hs(
    u: &HardyState,
    s: f64,
    lambda_shift: f64,
    sign: EquationSign,
) -> Result<f64> {
    if s < 0.0 {
        return Err(Error::NegativeSobolevOrder(s));
    }
    let spectrum = Spectrum::of(u, sign)?;
    let lowest = spectrum.eigenvalue(0) + lambda_shift;
    if lowest <= 0.0 {
        return Err(Error::NonPositiveShiftedEigenvalue { value: lowest, shift: lambda_shift });
    }
    let coords = spectrum.eigenbasis_coordinates(u);
    Ok(spectrum
        .eigenvalues()
        .iter()
        .zip(&coords)
        .map(|(&l, c)| (l + lambda_shift).powf(s) * c.norm_sqr())
        .sum())
}

/// ⟨(L_u+λ)^k u | u⟩ by repeated matrix application; the independent route
/// for integer exponents.
pub fn conserved_hs_integer(
    u: &HardyState,
    k: u32,
    lambda_shift: f64,
    sign: EquationSign,
) -> Result<Complex64> {
    let n = u.trunc();
    let mut shifted = assemble_l(u, sign);
    for j in 0..=n {
        shifted[(j, j)] += Complex64::new(lambda_shift, 0.0);
    }
    let mut w = nalgebra::DVector::from_column_slice(u.coeffs());
    for _ in 0..k {
        w = &shifted * w;
    }
    Ok(w
        .iter()
        .zip(u.coeffs())
        .map(|(a, b)| a * b.conj())
        .sum())
}

/// Default spectral shift 2 + ‖u₀‖²: keeps λₙ + λ ≥ 1 for both signs at any
/// truncation while ‖u₀‖ < 1, and for all defocusing data.
pub fn default_lambda_shift(u0: &HardyState) -> f64 {
    2.0 + u0.l2_norm_sq()
}

/// max_{i,j} |⟨fᵢ|fⱼ⟩ − δᵢⱼ| over a family of states.
pub fn gram_residual(family: &[HardyState]) -> Result<f64> {
    let mut worst = 0.0f64;
    for (i, fi) in family.iter().enumerate() {
        for (j, fj) in family.iter().enumerate() {
            let target = if i == j { Complex64::ONE } else { Complex64::ZERO };
            worst = worst.max((fi.inner(fj)? - target).norm());
        }
    }
    Ok(worst)
}

pub const BIRKHOFF_GRAM_TOLERANCE: f64 = 1e-6;

/// βₙ(t) = ⟨u(t)|fₙᵗ⟩ for an orthonormal evolved family.
pub fn birkhoff_coordinates(u_t: &HardyState, f_t: &[HardyState]) -> Result<Vec<Complex64>> {
    let residual = gram_residual(f_t)?;
    if residual > BIRKHOFF_GRAM_TOLERANCE {
        return Err(Error::NotOrthonormal { residual, tolerance: BIRKHOFF_GRAM_TOLERANCE });
    }
    f_t.iter().map(|f| u_t.inner(f)).collect()
}

/// max_n |βₙ(t) − βₙ(0)·e^{−itλₙ²}|, the Birkhoff phase-law residual.
pub fn birkhoff_phase_residual(
    beta_t: &[Complex64],
    beta_0: &[Complex64],
    eigenvalues: &[f64],
    t: f64,
) -> f64 {
    beta_t
        .iter()
        .zip(beta_0)
        .zip(eigenvalues)
        .map(|((bt, b0), &l)| (bt - b0 * Complex64::from_polar(1.0, -t * l * l)).norm())
        .fold(0.0, f64::max)
}

/// (⟨Dh|h⟩ + ‖h‖²)·‖u‖² − ‖T_ū h‖², the slack in the sharp Toeplitz
/// inequality; nonnegative up to round-off at any truncation.  States of
/// different truncation are zero-extended to a common band.
pub fn sharp_gap(u: &HardyState, h: &HardyState) -> f64 {
    let trunc = u.trunc().max(h.trunc());
    let ue = zero_extend(u, trunc);
    let he = zero_extend(h, trunc);
    let rhs = (he.d_quadratic() + he.l2_norm_sq()) * ue.l2_norm_sq();
    let t = ue.toeplitz_conj(&he).expect("aligned truncations");
    rhs - t.l2_norm_sq()
}

fn zero_extend(u: &HardyState, trunc: usize) -> HardyState {
    if u.trunc() == trunc {
        return u.clone();
    }
    let mut coeffs = u.coeffs().to_vec();
    coeffs.resize(trunc + 1, Complex64::ZERO);
    HardyState::new(coeffs)
}

/// Per-sample max_{n < n_track} |λₙ(u(t)) − λₙ(u₀)| from fresh assembly and
/// eigensolves along the trajectory.
pub fn eigenvalue_drift(
    traj: &TrajectoryRecord,
    sign: EquationSign,
    n_track: usize,
) -> Result<Vec<f64>> {
    let reference = Spectrum::of(&traj.states[0], sign)?;
    let tracked = n_track.min(reference.len());
    let mut out = Vec::with_capacity(traj.states.len());
    for state in &traj.states {
        let s = Spectrum::of(state, sign)?;
        let drift = (0..tracked)
            .map(|n| (s.eigenvalue(n) - reference.eigenvalue(n)).abs())
            .fold(0.0, f64::max);
        out.push(drift);
    }
    Ok(out)
}

/// One row of the eigenvalue-continuity probe.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LipschitzRow {
    pub direction: usize,
    pub delta: f64,
    /// |λₙ(u+δw) − λₙ(u)|/δ for n = 0..n_track.
    pub quotients: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LipschitzProbe {
    pub deltas: Vec<f64>,
    pub n_track: usize,
    pub rows: Vec<LipschitzRow>,
    /// Difference quotients stay bounded as δ decreases.
    pub bounded: bool,
}

impl LipschitzProbe {
    pub fn max_quotient(&self) -> f64 {
        self.rows
            .iter()
            .flat_map(|r| r.quotients.iter().copied())
            .fold(0.0, f64::max)
    }
}

/// Probe the Lipschitz continuity of u ↦ λₙ(u) along random unit
/// directions: reports |λₙ(u+δw) − λₙ(u)|/δ per (direction, δ, n) and flags
/// unbounded growth (quotients blowing up, or not finite, as δ shrinks).
pub fn lipschitz_probe(
    u: &HardyState,
    directions: usize,
    deltas: &[f64],
    n_track: usize,
    sign: EquationSign,
    rng: &mut impl Rng,
) -> Result<LipschitzProbe> {
    if deltas.is_empty() || deltas.iter().any(|&d| d <= 0.0) {
        return Err(Error::InvalidConfig("deltas must be positive".into()));
    }
    if deltas.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::InvalidConfig("deltas must be strictly decreasing".into()));
    }
    let base = Spectrum::of(u, sign)?;
    let tracked = n_track.min(base.len());
    let mut rows = Vec::with_capacity(directions * deltas.len());
    let mut bounded = true;
    for direction in 0..directions {
        let w = random_unit_direction(u.trunc(), rng);
        let mut first_max = 0.0f64;
        let mut last_max = 0.0f64;
        for (di, &delta) in deltas.iter().enumerate() {
            let perturbed = u.add_scaled(Complex64::new(delta, 0.0), &w)?;
            let s = Spectrum::of(&perturbed, sign)?;
            let quotients: Vec<f64> = (0..tracked)
                .map(|n| (s.eigenvalue(n) - base.eigenvalue(n)).abs() / delta)
                .collect();
            let row_max = quotients.iter().copied().fold(0.0, f64::max);
            if !row_max.is_finite() {
                bounded = false;
            }
            if di == 0 {
                first_max = row_max;
            }
            if di == deltas.len() - 1 {
                last_max = row_max;
            }
            rows.push(LipschitzRow { direction, delta, quotients });
        }
        // shrinking δ must not inflate the quotient past any fixed multiple
        if last_max > 10.0 * first_max.max(1.0) {
            bounded = false;
        }
    }
    Ok(LipschitzProbe { deltas: deltas.to_vec(), n_track: tracked, rows, bounded })
}

fn random_unit_direction(trunc: usize, rng: &mut impl Rng) -> HardyState {
    let mut w = HardyState::zeros(trunc);
    loop {
        for c in w.coeffs_mut() {
            *c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        }
        let norm = w.l2_norm();
        if norm > 1e-6 {
            return w.scale(Complex64::new(1.0 / norm, 0.0));
        }
    }
}

/// What `run_diagnostics` should compute.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagnosticsOptions {
    /// Sobolev-type exponents for the conserved H_s family.
    pub h_s: Vec<f64>,
    pub lambda_shift: f64,
    /// How many low eigenvalues and Birkhoff modes to track.
    pub n_track: usize,
    pub birkhoff: bool,
    pub identity_checks: bool,
}

/// Per-trajectory conservation and identity report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagnosticsReport {
    pub times: Vec<f64>,
    pub l2_norm: Vec<f64>,
    pub mean: Vec<Complex64>,
    /// Exponent (as decimal string) → H_s values along the trajectory.
    pub h_s: BTreeMap<String, Vec<f64>>,
    /// max_{n<n_track} |λₙ(u(t)) − λₙ(u₀)| per sample.
    pub eigenvalue_drift: Vec<f64>,
    /// Row n: |⟨u(t)|fₙᵗ⟩| along the trajectory.
    pub birkhoff_moduli: Vec<Vec<f64>>,
    /// Phase-law residual per sample.
    pub birkhoff_phase_residual: Vec<f64>,
    pub identity_residuals: BTreeMap<String, f64>,
}

impl DiagnosticsReport {
    pub fn l2_drift(&self) -> f64 {
        spread(&self.l2_norm)
    }

    pub fn mean_drift(&self) -> f64 {
        self.mean
            .iter()
            .map(|m| (m - self.mean[0]).norm())
            .fold(0.0, f64::max)
    }

    pub fn relative_hs_drift(&self, key: &str) -> Option<f64> {
        let series = self.h_s.get(key)?;
        let base = series.first()?.abs().max(f64::MIN_POSITIVE);
        Some(spread(series) / base)
    }

    pub fn max_eigenvalue_drift(&self) -> f64 {
        self.eigenvalue_drift.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_birkhoff_modulus_drift(&self) -> f64 {
        self.birkhoff_moduli
            .iter()
            .flat_map(|row| row.iter().map(|m| (m - row[0]).abs()))
            .fold(0.0, f64::max)
    }

    pub fn max_birkhoff_phase_residual(&self) -> f64 {
        self.birkhoff_phase_residual.iter().copied().fold(0.0, f64::max)
    }
}

fn spread(series: &[f64]) -> f64 {
    series
        .iter()
        .map(|v| (v - series[0]).abs())
        .fold(0.0, f64::max)
}

/// Evaluate the conservation suite over a sampled trajectory.
///
/// Birkhoff rows use the evolved eigenbasis of L at the *initial* state, so
/// the phase law is measured in the basis the flow actually transports; the
/// H_s and eigenvalue columns re-assemble and re-diagonalize L at every
/// sample.
pub fn run_diagnostics(
    traj: &TrajectoryRecord,
    sign: EquationSign,
    opts: &DiagnosticsOptions,
) -> Result<DiagnosticsReport> {
    if traj.is_empty() {
        return Err(Error::InvalidConfig("empty trajectory".into()));
    }
    let u0 = &traj.states[0];

    let l2_norm: Vec<f64> = traj.states.iter().map(|s| s.l2_norm()).collect();
    let mean: Vec<Complex64> = traj.states.iter().map(|s| s.mean()).collect();

    let mut h_s = BTreeMap::new();
    for &s in &opts.h_s {
        let series = traj
            .states
            .iter()
            .map(|state| conserved_hs(state, s, opts.lambda_shift, sign))
            .collect::<Result<Vec<f64>>>()?;
        h_s.insert(format_exponent(s), series);
    }

    let drift = eigenvalue_drift(traj, sign, opts.n_track)?;

    let mut birkhoff_moduli = Vec::new();
    let mut birkhoff_phase_residual = Vec::new();
    if opts.birkhoff {
        let prop = ExplicitPropagator::new(u0, sign)?;
        let indices: Vec<usize> = (0..opts.n_track.min(u0.trunc() + 1)).collect();
        let tracked_eigs: Vec<f64> =
            indices.iter().map(|&n| prop.spectrum().eigenvalue(n)).collect();
        let f0 = prop.eigenfunctions_at(0.0, &indices)?;
        let beta0 = birkhoff_coordinates(u0, &f0)?;
        birkhoff_moduli = vec![Vec::with_capacity(traj.len()); indices.len()];
        for (ti, (&t, state)) in traj.times.iter().zip(&traj.states).enumerate() {
            let ft = prop.eigenfunctions_at(t, &indices)?;
            let beta = birkhoff_coordinates(state, &ft)?;
            for (row, b) in birkhoff_moduli.iter_mut().zip(&beta) {
                row.push(b.norm());
            }
            let residual = birkhoff_phase_residual_at(ti, &beta, &beta0, &tracked_eigs, t);
            birkhoff_phase_residual.push(residual);
        }
    }

    let mut identity_residuals = BTreeMap::new();
    if opts.identity_checks {
        let report = commutator_checks(u0);
        identity_residuals.insert("commutator_l".into(), report.l_residual);
        identity_residuals.insert("commutator_b".into(), report.b_residual);
    }

    Ok(DiagnosticsReport {
        times: traj.times.clone(),
        l2_norm,
        mean,
        h_s,
        eigenvalue_drift: drift,
        birkhoff_moduli,
        birkhoff_phase_residual,
        identity_residuals,
    })
}

fn birkhoff_phase_residual_at(
    ti: usize,
    beta: &[Complex64],
    beta0: &[Complex64],
    eigenvalues: &[f64],
    t: f64,
) -> f64 {
    if ti == 0 {
        // definitionally zero; avoids reporting pure round-off as drift
        0.0
    } else {
        birkhoff_phase_residual(beta, beta0, eigenvalues, t)
    }
}

fn format_exponent(s: f64) -> String {
    format!("{s}")
}
