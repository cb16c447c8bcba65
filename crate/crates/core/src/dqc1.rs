//! Density-matrix simulation of the one-clean-qubit trace circuit.
//!
//! Qubit layout (most significant first): control, subspace flag, then the
//! `n - 1` remaining register qubits. The control starts in `(1 + εZ)/2`,
//! the flag is purified and rotated so that its populations are
//! `(φ, 1)/(1 + φ)`, and the rest of the register is maximally mixed. After a
//! Hadamard on the control and the controlled braid matrix,
//! `⟨σx⟩ + i⟨σy⟩ = ε·Tr(U·ρ_reg) = ε·M`.

use std::io::Write;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Normal, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::fibrep::{braid_unitary, crossing_unitary, DenseUnitary, FibBasis};
use crate::jones::PHI;

const STATE_TOL: f64 = 1e-12;
const POSITIVITY_TOL: f64 = 1e-10;
/// Accuracy of the coherent-noise fidelity calibration.
pub const FIDELITY_CALIBRATION_TOL: f64 = 1e-4;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Rotation taking `|0⟩` to `(√φ|0⟩ + |1⟩)/√(1+φ)`.
pub fn weight_rotation() -> DenseUnitary {
    weight_rotation_with_phase(0.0)
}

/// The weight rotation whose free second column is multiplied by `e^{iθ}`.
///
/// Every unitary completion of the fixed first column has this form.
pub fn weight_rotation_with_phase(theta: f64) -> DenseUnitary {
    let norm = (1.0 + PHI).sqrt();
    let a = PHI.sqrt() / norm;
    let b = 1.0 / norm;
    let ph = Complex64::from_polar(1.0, theta);
    let m = DMatrix::from_row_slice(2, 2, &[c(a), -ph * b, c(b), ph * a]);
    DenseUnitary::from_matrix_unchecked(m)
}

/// A full (not deviation) density matrix on `qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    qubits: usize,
    rho: DMatrix<Complex64>,
}

impl DensityState {
    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.rho
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.rho.trace()
    }

    pub fn hermitian_defect(&self) -> f64 {
        crate::fibrep::max_abs_diff(&self.rho, &self.rho.adjoint())
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let h = (&self.rho + self.rho.adjoint()) * c(0.5);
        h.symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// Checks Hermiticity, unit trace and positivity.
    pub fn check(&self) -> Result<()> {
        let herm = self.hermitian_defect();
        let tr = (self.trace() - c(1.0)).norm();
        let min = self.min_eigenvalue();
        if herm > STATE_TOL || tr > STATE_TOL || min < -POSITIVITY_TOL {
            return Err(Error::Domain(format!(
                "invalid density state: hermitian defect {herm:e}, trace defect {tr:e}, min eigenvalue {min:e}"
            )));
        }
        Ok(())
    }

    fn conjugate(&mut self, g: &DMatrix<Complex64>) {
        self.rho = g * &self.rho * g.adjoint();
    }

    fn depolarize(&mut self, retention: f64) {
        let d = self.dim();
        self.rho *= c(retention);
        let mix = (1.0 - retention) / d as f64;
        for i in 0..d {
            self.rho[(i, i)] += mix;
        }
    }
}

/// `(I + εZ)/2 ⊗ R|0⟩⟨0|R† ⊗ I/2^{n-1}` with `R` the weight rotation.
pub fn initial_state(register_qubits: usize, epsilon: f64) -> Result<DensityState> {
    initial_state_with_rotation(register_qubits, epsilon, &weight_rotation())
}

pub fn initial_state_with_rotation(
    register_qubits: usize,
    epsilon: f64,
    rotation: &DenseUnitary,
) -> Result<DensityState> {
    check_epsilon(epsilon)?;
    if register_qubits == 0 {
        return Err(Error::Domain("register needs at least one qubit".into()));
    }
    if rotation.dim() != 2 {
        return Err(Error::Shape {
            expected: 2,
            found: rotation.dim(),
        });
    }
    let control = DMatrix::from_row_slice(
        2,
        2,
        &[
            c((1.0 + epsilon) / 2.0),
            c(0.0),
            c(0.0),
            c((1.0 - epsilon) / 2.0),
        ],
    );
    let col = rotation.matrix().column(0);
    let flag = col * col.adjoint();
    let rest_dim = 1usize << (register_qubits - 1);
    let rest = DMatrix::<Complex64>::identity(rest_dim, rest_dim) * c(1.0 / rest_dim as f64);
    let rho = control.kronecker(&flag.kronecker(&rest));
    Ok(DensityState {
        qubits: register_qubits + 1,
        rho,
    })
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::Domain(format!(
            "epsilon must lie in (0, 1], got {epsilon}"
        )));
    }
    Ok(())
}

fn hadamard_on_control(register_dim: usize) -> DMatrix<Complex64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let h = DMatrix::from_row_slice(2, 2, &[c(s), c(s), c(s), c(-s)]);
    h.kronecker(&DMatrix::identity(register_dim, register_dim))
}

/// `|0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ U`.
pub fn controlled(u: &DenseUnitary) -> DMatrix<Complex64> {
    let d = u.dim();
    let mut g = DMatrix::<Complex64>::identity(2 * d, 2 * d);
    g.view_mut((d, d), (d, d)).copy_from(u.matrix());
    g
}

fn check_register(rho: &DensityState, u: &DenseUnitary) -> Result<()> {
    if rho.dim() != 2 * u.dim() {
        return Err(Error::Shape {
            expected: rho.dim() / 2,
            found: u.dim(),
        });
    }
    Ok(())
}

/// Hadamard on the control followed by the controlled `U`.
pub fn apply_controlled(rho: &DensityState, u: &DenseUnitary) -> Result<DensityState> {
    check_register(rho, u)?;
    let mut out = rho.clone();
    out.conjugate(&hadamard_on_control(u.dim()));
    out.conjugate(&controlled(u));
    Ok(out)
}

/// Expectation values on the control and the normalised estimate of `M`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasurementRecord {
    pub sx: f64,
    pub sy: f64,
    pub m_estimate: Complex64,
}

/// `Tr(ρ(σx⊗I)) + i·Tr(ρ(σy⊗I))`, i.e. twice the trace of the lower-left block.
fn control_coherence(rho: &DensityState) -> Complex64 {
    let half = rho.dim() / 2;
    let s: Complex64 = (0..half).map(|z| rho.rho[(z + half, z)]).sum();
    s * 2.0
}

/// Reads `⟨σx⟩`, `⟨σy⟩` on the control, scaled by `attenuation`, and divides
/// by `ε·attenuation` the way a reference spectrum would.
pub fn measure_xy(rho: &DensityState, epsilon: f64, attenuation: f64) -> Result<MeasurementRecord> {
    check_epsilon(epsilon)?;
    check_attenuation(attenuation)?;
    let xy = control_coherence(rho) * attenuation;
    Ok(MeasurementRecord {
        sx: xy.re,
        sy: xy.im,
        m_estimate: xy / (epsilon * attenuation),
    })
}

fn check_attenuation(attenuation: f64) -> Result<()> {
    if !(attenuation > 0.0 && attenuation <= 1.0) {
        return Err(Error::Domain(format!(
            "attenuation must lie in (0, 1], got {attenuation}"
        )));
    }
    Ok(())
}

fn check_pair(b: &BraidWord, basis: &FibBasis) -> Result<()> {
    if b.strands() != basis.strands() {
        return Err(Error::Shape {
            expected: basis.strands(),
            found: b.strands(),
        });
    }
    Ok(())
}

/// Noiseless circuit run with unit attenuation.
pub fn run_exact(b: &BraidWord, basis: &FibBasis, epsilon: f64) -> Result<MeasurementRecord> {
    run_exact_with_rotation(b, basis, epsilon, &weight_rotation())
}

pub fn run_exact_with_rotation(
    b: &BraidWord,
    basis: &FibBasis,
    epsilon: f64,
    rotation: &DenseUnitary,
) -> Result<MeasurementRecord> {
    check_pair(b, basis)?;
    let rho = initial_state_with_rotation(basis.register_qubits(), epsilon, rotation)?;
    let u = braid_unitary(b, basis)?;
    let rho = apply_controlled(&rho, &u)?;
    measure_xy(&rho, epsilon, 1.0)
}

/// Imperfections applied by [`run_noisy`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    /// Process fidelity `|Tr(U†Ũ)|²/d²` of each controlled-crossing gate.
    pub gate_fidelity: f64,
    /// Random coherent over-rotation when true, global depolarizing otherwise.
    pub coherent: bool,
    /// End-to-end signal scale.
    pub attenuation: f64,
    /// Standard deviation of additive Gaussian noise on each expectation value.
    pub readout_noise_std: f64,
    pub seed: u64,
}

pub const DEFAULT_SEED: u64 = 20_100_205;

impl Default for NoiseModel {
    fn default() -> Self {
        Self {
            gate_fidelity: 0.99,
            coherent: true,
            attenuation: 1.0,
            readout_noise_std: 0.01,
            seed: DEFAULT_SEED,
        }
    }
}

impl NoiseModel {
    /// No gate error, no readout noise.
    pub fn noiseless(seed: u64) -> Self {
        Self {
            gate_fidelity: 1.0,
            coherent: true,
            attenuation: 1.0,
            readout_noise_std: 0.0,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gate_fidelity > 0.0 && self.gate_fidelity <= 1.0) {
            return Err(Error::Domain(format!(
                "gate fidelity must lie in (0, 1], got {}",
                self.gate_fidelity
            )));
        }
        check_attenuation(self.attenuation)?;
        if !(self.readout_noise_std >= 0.0 && self.readout_noise_std.is_finite()) {
            return Err(Error::Domain(format!(
                "readout noise std must be finite and >= 0, got {}",
                self.readout_noise_std
            )));
        }
        Ok(())
    }
}

/// Gates of the noisy circuit: one controlled crossing per letter, or a single
/// identity pulse for the empty word.
fn gate_sequence(b: &BraidWord, basis: &FibBasis) -> Result<Vec<DMatrix<Complex64>>> {
    if b.is_empty() {
        return Ok(vec![DMatrix::identity(2 * basis.dim(), 2 * basis.dim())]);
    }
    b.word()
        .iter()
        .map(|&g| {
            crossing_unitary(g.unsigned_abs() as usize, g.signum(), basis).map(|u| controlled(&u))
        })
        .collect()
}

/// Random Hermitian generator `(X + X†)/2` with standard complex Gaussian `X`.
fn random_hermitian<R: Rng>(dim: usize, rng: &mut R) -> DMatrix<Complex64> {
    let x = DMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    (&x + x.adjoint()) * c(0.5)
}

/// `|Σ e^{iδλ}|² / d²`, the process fidelity of `exp(iδH)` against the identity.
fn exp_fidelity(eigenvalues: &[f64], delta: f64) -> f64 {
    let d = eigenvalues.len() as f64;
    let s: Complex64 = eigenvalues
        .iter()
        .map(|&l| Complex64::from_polar(1.0, delta * l))
        .sum();
    s.norm_sqr() / (d * d)
}

/// A unitary `exp(iδH)` with random Hermitian `H` whose process fidelity
/// against the identity equals `fidelity`.
pub fn coherent_error<R: Rng>(dim: usize, fidelity: f64, rng: &mut R) -> DMatrix<Complex64> {
    if fidelity >= 1.0 {
        return DMatrix::identity(dim, dim);
    }
    let h = random_hermitian(dim, rng);
    let eig = h.symmetric_eigen();
    let lambdas: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let spread = lambdas
        .iter()
        .fold(0.0f64, |a, &l| a.max(l.abs()))
        .max(1e-12);

    // bracket the first crossing below the target, then bisect
    let mut lo = 0.0;
    let mut hi = 1e-3 / spread;
    while exp_fidelity(&lambdas, hi) > fidelity {
        lo = hi;
        hi *= 1.5;
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if exp_fidelity(&lambdas, mid) > fidelity {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let delta = 0.5 * (lo + hi);
    debug_assert!((exp_fidelity(&lambdas, delta) - fidelity).abs() < FIDELITY_CALIBRATION_TOL);

    let phases = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        dim,
        lambdas
            .iter()
            .map(|&l| Complex64::from_polar(1.0, delta * l)),
    ));
    &eig.eigenvectors * phases * eig.eigenvectors.adjoint()
}

/// Process fidelity `|Tr(U†V)|²/d²`.
pub fn process_fidelity(u: &DMatrix<Complex64>, v: &DMatrix<Complex64>) -> f64 {
    let d = u.nrows() as f64;
    (u.adjoint() * v).trace().norm_sqr() / (d * d)
}

/// Independent RNG stream for repeat `repeat` of a run seeded with `seed`.
pub fn repeat_rng(seed: u64, repeat: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(repeat);
    rng
}

/// One noisy circuit execution.
fn noisy_once(
    gates: &[DMatrix<Complex64>],
    basis: &FibBasis,
    epsilon: f64,
    noise: &NoiseModel,
    rng: &mut ChaCha20Rng,
) -> Result<DensityState> {
    let mut rho = initial_state(basis.register_qubits(), epsilon)?;
    rho.conjugate(&hadamard_on_control(basis.dim()));
    for g in gates {
        if noise.gate_fidelity >= 1.0 {
            rho.conjugate(g);
        } else if noise.coherent {
            let err = coherent_error(g.nrows(), noise.gate_fidelity, rng);
            rho.conjugate(&(g * err));
        } else {
            rho.conjugate(g);
            rho.depolarize(noise.gate_fidelity);
        }
    }
    Ok(rho)
}

/// Repeated noisy executions; deterministic given `noise.seed`.
pub fn run_noisy(
    b: &BraidWord,
    basis: &FibBasis,
    epsilon: f64,
    noise: &NoiseModel,
    repeats: usize,
) -> Result<Vec<MeasurementRecord>> {
    check_pair(b, basis)?;
    check_epsilon(epsilon)?;
    noise.validate()?;
    if repeats == 0 {
        return Err(Error::Domain("repeats must be at least 1".into()));
    }
    let gates = gate_sequence(b, basis)?;
    let readout = Normal::new(0.0, noise.readout_noise_std)
        .map_err(|e| Error::Domain(format!("readout noise: {e}")))?;

    (0..repeats)
        .into_par_iter()
        .map(|r| {
            let mut rng = repeat_rng(noise.seed, r as u64);
            let rho = noisy_once(&gates, basis, epsilon, noise, &mut rng)?;
            let xy = control_coherence(&rho) * noise.attenuation;
            let (sx, sy) = if noise.readout_noise_std > 0.0 {
                (
                    xy.re + readout.sample(&mut rng),
                    xy.im + readout.sample(&mut rng),
                )
            } else {
                (xy.re, xy.im)
            };
            Ok(MeasurementRecord {
                sx,
                sy,
                m_estimate: Complex64::new(sx, sy) / (epsilon * noise.attenuation),
            })
        })
        .collect()
}

/// CSV with columns `repeat, sx, sy, re_m, im_m`.
pub fn write_records_csv<W: Write>(records: &[MeasurementRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Domain(format!("csv output: {e}"));
    w.write_record(["repeat", "sx", "sy", "re_m", "im_m"])
        .map_err(io)?;
    for (i, r) in records.iter().enumerate() {
        w.write_record([
            i.to_string(),
            r.sx.to_string(),
            r.sy.to_string(),
            r.m_estimate.re.to_string(),
            r.m_estimate.im.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::Domain(format!("csv output: {e}")))?;
    Ok(())
}
