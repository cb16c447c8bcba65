//! Jones polynomial values at `t = e^{2πi/5}` from the normalised weighted
//! trace `M`.
//!
//! With `N = 2^{n-1}(1+φ)` the weighted dimension of the whole register,
//!
//! ```text
//! V = (-t^4)^{3w} · φ^{-1} · (N·M - κ),   κ = (2^{n-1} - f_m)·φ + (2^{n-1} - f_{m-1})
//! ```
//!
//! where `κ` removes the padding states (fixed by every crossing matrix) and
//! `w` is the writhe.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::braid::BraidWord;
use crate::dqc1::{self, NoiseModel};
use crate::error::{Error, Result};
use crate::fibrep::{braid_unitary, fib, weighted_trace, FibBasis};

/// The golden ratio `(1 + √5) / 2`.
pub const PHI: f64 = 1.618_033_988_749_895;

/// `φ` together with the evaluation point `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldenConstants {
    pub phi: f64,
    pub t: Complex64,
}

impl Default for GoldenConstants {
    fn default() -> Self {
        Self {
            phi: PHI,
            t: fifth_root_power(1),
        }
    }
}

/// `e^{2πik/5}`.
pub fn fifth_root_power(k: i64) -> Complex64 {
    let k = k.rem_euclid(5);
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 5.0)
}

/// Kauffman bracket variable `A` shared by the crossing matrices and the
/// oracle. `A = e^{2πi/5}` gives `A^{-4} = t` and loop value `φ`.
pub fn bracket_variable() -> Complex64 {
    fifth_root_power(1)
}

/// `(-t^4)^{3w}` with integer exponents only: `(-1)^w · t^{12w mod 5}`.
pub fn writhe_phase(writhe: i64) -> Complex64 {
    let sign = if writhe.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    fifth_root_power(12 * writhe) * sign
}

/// `2^{n-1}(1+φ)`: the weighted trace of the register identity.
pub fn weighted_dimension(register_qubits: usize) -> f64 {
    (1u64 << (register_qubits - 1)) as f64 * (1.0 + PHI)
}

/// Padding correction `κ = (2^{n-1} - f_m)φ + (2^{n-1} - f_{m-1})`.
pub fn kappa(register_qubits: usize, strands: usize) -> Result<f64> {
    if register_qubits == 0 || strands < 2 {
        return Err(Error::Domain(format!(
            "kappa needs n >= 1 and m >= 2, got n = {register_qubits}, m = {strands}"
        )));
    }
    let half = 1u64 << (register_qubits - 1);
    let (fm, fm1) = (fib(strands)?, fib(strands - 1)?);
    if half < fm.max(fm1) {
        return Err(Error::Domain(format!(
            "register of {register_qubits} qubits cannot hold {fm} + {fm1} basis states"
        )));
    }
    Ok((half - fm) as f64 * PHI + (half - fm1) as f64)
}

/// A Jones value with the intermediate quantities used to obtain it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JonesResult {
    pub value: Complex64,
    pub m_used: Complex64,
    /// `2^{n-1}(1+φ)·M`: weighted trace including padding.
    pub wtr_full: Complex64,
    pub kappa: f64,
    pub writhe: i64,
    pub strands: usize,
    pub register_qubits: usize,
}

impl JonesResult {
    pub fn abs(&self) -> f64 {
        self.value.norm()
    }

    pub fn arg(&self) -> f64 {
        self.value.arg()
    }

    /// Weighted trace over the encoded subspaces only.
    pub fn knot_trace(&self) -> Complex64 {
        self.wtr_full - self.kappa
    }
}

/// Applies the `V(e^{2πi/5})` formula to a measured or exact `M`.
pub fn jones_from_m(
    m_est: Complex64,
    writhe: i64,
    register_qubits: usize,
    strands: usize,
) -> Result<JonesResult> {
    let kappa = kappa(register_qubits, strands)?;
    let wtr_full = m_est * weighted_dimension(register_qubits);
    let value = writhe_phase(writhe) * (wtr_full - kappa) / PHI;
    Ok(JonesResult {
        value,
        m_used: m_est,
        wtr_full,
        kappa,
        writhe,
        strands,
        register_qubits,
    })
}

/// Exact value from the weighted trace of the braid matrix, no state simulation.
pub fn eval_exact(b: &BraidWord) -> Result<JonesResult> {
    let basis = FibBasis::new(b.strands())?;
    eval_exact_with(b, &basis)
}

pub fn eval_exact_with(b: &BraidWord, basis: &FibBasis) -> Result<JonesResult> {
    let u = braid_unitary(b, basis)?;
    let wtr = weighted_trace(&u, basis)?;
    let n = basis.register_qubits();
    let m = (wtr + kappa(n, b.strands())?) / weighted_dimension(n);
    jones_from_m(m, b.writhe(), n, b.strands())
}

/// Values obtained through the simulated one-clean-qubit circuit.
///
/// Without a noise model the circuit is run exactly and `repeats` must be 1.
pub fn eval_dqc1(
    b: &BraidWord,
    epsilon: f64,
    noise: Option<&NoiseModel>,
    repeats: usize,
) -> Result<Vec<JonesResult>> {
    let basis = FibBasis::new(b.strands())?;
    let n = basis.register_qubits();
    let records = match noise {
        None => {
            if repeats != 1 {
                return Err(Error::Domain(format!(
                    "exact evaluation takes exactly one repeat, got {repeats}"
                )));
            }
            vec![dqc1::run_exact(b, &basis, epsilon)?]
        }
        Some(model) => dqc1::run_noisy(b, &basis, epsilon, model, repeats)?,
    };
    records
        .iter()
        .map(|r| jones_from_m(r.m_estimate, b.writhe(), n, b.strands()))
        .collect()
}

/// Flat record used for JSON and CSV output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JonesRecord {
    pub braid: String,
    pub strands: usize,
    pub writhe: i64,
    pub n: usize,
    pub kappa: f64,
    pub m_re: f64,
    pub m_im: f64,
    pub v_re: f64,
    pub v_im: f64,
    pub v_abs: f64,
    pub v_arg: f64,
}

impl JonesRecord {
    pub fn new(b: &BraidWord, r: &JonesResult) -> Self {
        Self {
            braid: b.render(),
            strands: r.strands,
            writhe: r.writhe,
            n: r.register_qubits,
            kappa: r.kappa,
            m_re: r.m_used.re,
            m_im: r.m_used.im,
            v_re: r.value.re,
            v_im: r.value.im,
            v_abs: r.abs(),
            v_arg: r.arg(),
        }
    }
}
