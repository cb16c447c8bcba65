//! The Fibonacci representation of `B_m` restricted to the two `*`-prefixed
//! subspaces, packed into an `n`-qubit register.
//!
//! Basis states are strings of `m + 1` symbols from `{p, *}` that start with
//! `*` and never contain `**`. Strings ending in `p` form subspace P
//! (dimension `f_m`, trace weight φ); strings ending in `*` form subspace S
//! (dimension `f_{m-1}`, trace weight 1). The most significant register bit
//! is the subspace flag, and every register index outside the image of the
//! encoding is a padding state on which all crossing matrices act as the
//! identity.
//!
//! Crossing `i` acts on symbol `i` (0-based, interior) of the string,
//! conditioned on its two neighbours. With `A = e^{2πi/5}` and loop value
//! `d = -A^2 - A^{-2} = φ`, the positive crossing is `A·1 + A^{-1}·E_i`
//! where `E_i` is the Temperley-Lieb generator in the path basis:
//!
//! * neighbours `* _ *`: the middle symbol is `p` and `E_i = φ`;
//! * neighbours `p _ p`: `E_i` mixes `p?p` over `? ∈ {*, p}` with the
//!   rank-one matrix `[[φ^-1, φ^-1/2], [φ^-1/2, 1]]`;
//! * mixed neighbours: `E_i = 0`.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::jones::{bracket_variable, PHI};

/// Tolerance used for the algebraic identities of constructed matrices.
pub const ALGEBRA_TOL: f64 = 1e-10;

/// `f_1 = f_2 = 1`, `f_k = f_{k-1} + f_{k-2}`.
pub fn fib(k: usize) -> Result<u64> {
    if k == 0 {
        return Err(Error::Domain("fib is indexed from 1".into()));
    }
    let (mut a, mut b) = (1u64, 1u64);
    for _ in 2..k {
        let next = a
            .checked_add(b)
            .ok_or_else(|| Error::Domain(format!("fib({k}) overflows u64")))?;
        a = b;
        b = next;
    }
    Ok(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    P,
    Star,
}

impl Symbol {
    fn as_char(self) -> char {
        match self {
            Symbol::P => 'p',
            Symbol::Star => '*',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Subspace {
    /// Strings `*…p`, weight φ.
    P,
    /// Strings `*…*`, weight 1.
    S,
}

impl Subspace {
    pub fn weight(self) -> f64 {
        match self {
            Subspace::P => PHI,
            Subspace::S => 1.0,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Subspace::P => "P",
            Subspace::S => "S",
        }
    }
}

/// A string of `p` and `*` symbols.
///
/// Construction only checks the alphabet; [`FibString::validate`] checks the
/// basis-state invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FibString(Vec<Symbol>);

impl FibString {
    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks: at least 3 symbols, leading `*`, no two adjacent `*`.
    pub fn validate(&self) -> Result<()> {
        let bad = || Error::InvalidBasisState(self.to_string());
        if self.0.len() < 3 || self.0[0] != Symbol::Star {
            return Err(bad());
        }
        if self
            .0
            .windows(2)
            .any(|w| w[0] == Symbol::Star && w[1] == Symbol::Star)
        {
            return Err(bad());
        }
        Ok(())
    }

    pub fn subspace(&self) -> Subspace {
        match self.0.last() {
            Some(Symbol::Star) => Subspace::S,
            _ => Subspace::P,
        }
    }
}

impl fmt::Display for FibString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{}", s.as_char()))
    }
}

impl FromStr for FibString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'p' => Ok(Symbol::P),
                '*' => Ok(Symbol::Star),
                _ => Err(Error::InvalidBasisState(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(FibString)
    }
}

/// Ordered basis of the two encoded subspaces for `m` strands.
///
/// Members list subspace P first, then S, each in lexicographic order with
/// `p < *`. The encoding is `flag·2^{n-1} + rank within subspace`.
#[derive(Debug, Clone)]
pub struct FibBasis {
    strands: usize,
    register_qubits: usize,
    members: Vec<FibString>,
    p_count: usize,
    s_count: usize,
    index: HashMap<FibString, usize>,
}

impl FibBasis {
    pub fn new(strands: usize) -> Result<Self> {
        enumerate_fib_basis(strands)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn register_qubits(&self) -> usize {
        self.register_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.register_qubits
    }

    /// `2^{n-1}`: offset of the S block and size of each block.
    pub fn half(&self) -> usize {
        1 << (self.register_qubits - 1)
    }

    pub fn members(&self) -> &[FibString] {
        &self.members
    }

    /// `(f_m, f_{m-1})`.
    pub fn counts(&self) -> (usize, usize) {
        (self.p_count, self.s_count)
    }

    pub fn encode(&self, s: &FibString) -> Result<usize> {
        s.validate()?;
        self.index
            .get(s)
            .copied()
            .ok_or_else(|| Error::InvalidBasisState(s.to_string()))
    }

    pub fn decode(&self, z: usize) -> Option<&FibString> {
        let half = self.half();
        let (offset, count, base) = if z < half {
            (z, self.p_count, 0)
        } else {
            (z - half, self.s_count, self.p_count)
        };
        (offset < count).then(|| &self.members[base + offset])
    }

    /// Encoded register indices paired with their subspace.
    pub fn encoded(&self) -> impl Iterator<Item = (usize, Subspace)> + '_ {
        let half = self.half();
        (0..self.p_count)
            .map(|i| (i, Subspace::P))
            .chain((0..self.s_count).map(move |i| (half + i, Subspace::S)))
    }

    /// Register indices outside the image of the encoding.
    pub fn padding(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(|&z| self.decode(z).is_none())
    }

    /// One line per basis string: `string<TAB>encoded<TAB>subspace`.
    pub fn listing(&self) -> String {
        let mut out = String::new();
        for s in &self.members {
            let z = self.index[s];
            out.push_str(&format!("{s}\t{z}\t{}\n", s.subspace().tag()));
        }
        out
    }
}

/// Enumerates the encoded basis for `strands` strands.
pub fn enumerate_fib_basis(strands: usize) -> Result<FibBasis> {
    if strands < 2 {
        return Err(Error::InvalidStrands(strands));
    }
    let len = strands + 1;
    let mut all = Vec::new();
    let mut current = vec![Symbol::Star];
    extend_strings(&mut current, len, &mut all);

    let (p_members, s_members): (Vec<_>, Vec<_>) = all
        .into_iter()
        .map(FibString)
        .partition(|s| s.subspace() == Subspace::P);
    let p_count = p_members.len();
    let s_count = s_members.len();

    let mut register_qubits = 1;
    while (1usize << (register_qubits - 1)) < p_count.max(s_count) {
        register_qubits += 1;
    }
    let half = 1usize << (register_qubits - 1);

    let mut index = HashMap::new();
    for (i, s) in p_members.iter().enumerate() {
        index.insert(s.clone(), i);
    }
    for (i, s) in s_members.iter().enumerate() {
        index.insert(s.clone(), half + i);
    }
    let mut members = p_members;
    members.extend(s_members);

    Ok(FibBasis {
        strands,
        register_qubits,
        members,
        p_count,
        s_count,
        index,
    })
}

// Depth-first in the order p then *, which yields lexicographic order.
fn extend_strings(current: &mut Vec<Symbol>, len: usize, out: &mut Vec<Vec<Symbol>>) {
    if current.len() == len {
        out.push(current.clone());
        return;
    }
    for sym in [Symbol::P, Symbol::Star] {
        if sym == Symbol::Star && current.last() == Some(&Symbol::Star) {
            continue;
        }
        current.push(sym);
        extend_strings(current, len, out);
        current.pop();
    }
}

/// A square complex matrix used as a unitary operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseUnitary(DMatrix<Complex64>);

impl DenseUnitary {
    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    /// Wraps `m` after checking it is square and unitary to [`ALGEBRA_TOL`].
    pub fn from_matrix(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::Shape {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        let u = Self(m);
        let dev = u.unitarity_defect();
        if dev > ALGEBRA_TOL {
            return Err(Error::Domain(format!(
                "matrix is not unitary (max |U†U - I| = {dev:e})"
            )));
        }
        Ok(u)
    }

    pub(crate) fn from_matrix_unchecked(m: DMatrix<Complex64>) -> Self {
        Self(m)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// Operator product `self · rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &DenseUnitary) -> Self {
        Self(&self.0 * &rhs.0)
    }

    /// `max |U†U - I|` over entries.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.dim();
        max_abs_diff(&(self.0.adjoint() * &self.0), &DMatrix::identity(n, n))
    }

    pub fn max_abs_diff(&self, other: &DenseUnitary) -> f64 {
        max_abs_diff(&self.0, &other.0)
    }

    /// Largest entry magnitude connecting indices below `half` with indices
    /// at or above it.
    pub fn off_block_magnitude(&self, half: usize) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for r in 0..n {
            for c in 0..n {
                if (r < half) != (c < half) {
                    worst = worst.max(self.0[(r, c)].norm());
                }
            }
        }
        worst
    }

    /// Largest deviation from the identity on the rows and columns of `indices`.
    pub fn identity_defect_on(&self, indices: impl IntoIterator<Item = usize>) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for z in indices {
            for k in 0..n {
                let expect = if k == z {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                worst = worst
                    .max((self.0[(z, k)] - expect).norm())
                    .max((self.0[(k, z)] - expect).norm());
            }
        }
        worst
    }

    /// Row-major entries as `[re, im]` pairs.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.dim())
            .map(|r| {
                (0..self.dim())
                    .map(|c| {
                        let z = self.0[(r, c)];
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        serde_json::json!({ "dim": self.dim(), "entries": rows })
    }
}

pub(crate) fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Matrix of `s_i^{sign}` on the encoded register.
pub fn crossing_unitary(i: usize, sign: i32, basis: &FibBasis) -> Result<DenseUnitary> {
    let m = basis.strands();
    if i == 0 || i >= m {
        return Err(Error::Domain(format!(
            "crossing index {i} out of range [1, {}]",
            m - 1
        )));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::Domain(format!(
            "crossing sign must be ±1, got {sign}"
        )));
    }

    let a = bracket_variable();
    let a_inv = a.inv();
    let dim = basis.dim();
    let mut u = DMatrix::<Complex64>::identity(dim, dim);

    for s in basis.members() {
        let z = basis.index[s];
        let sym = s.symbols();
        let (left, mid, right) = (sym[i - 1], sym[i], sym[i + 1]);
        match (left, right) {
            (Symbol::Star, Symbol::Star) => {
                // E = φ on the single admissible middle symbol p
                u[(z, z)] = a + a_inv * PHI;
            }
            (Symbol::P, Symbol::P) => {
                let mut flipped = sym.to_vec();
                flipped[i] = match mid {
                    Symbol::P => Symbol::Star,
                    Symbol::Star => Symbol::P,
                };
                let partner = basis.index[&FibString(flipped)];
                let diag = match mid {
                    Symbol::Star => 1.0 / PHI,
                    Symbol::P => 1.0,
                };
                u[(z, z)] = a + a_inv * diag;
                u[(partner, z)] = a_inv * PHI.powf(-0.5);
            }
            _ => {
                u[(z, z)] = a;
            }
        }
    }

    let u = DenseUnitary(u);
    Ok(if sign < 0 { u.adjoint() } else { u })
}

/// Product of crossing matrices, first letter applied first:
/// `U = ρ(g_k) ⋯ ρ(g_1)`.
pub fn braid_unitary(b: &BraidWord, basis: &FibBasis) -> Result<DenseUnitary> {
    if b.strands() != basis.strands() {
        return Err(Error::Shape {
            expected: basis.strands(),
            found: b.strands(),
        });
    }
    let mut cache: HashMap<i32, DenseUnitary> = HashMap::new();
    let mut u = DenseUnitary::identity(basis.dim());
    for &g in b.word() {
        let c = match cache.entry(g) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(crossing_unitary(
                g.unsigned_abs() as usize,
                g.signum(),
                basis,
            )?),
        };
        u = c.compose(&u);
    }
    Ok(u)
}

/// `φ·Σ_{z∈P} U[z,z] + Σ_{z∈S} U[z,z]`; padding indices are excluded.
pub fn weighted_trace(u: &DenseUnitary, basis: &FibBasis) -> Result<Complex64> {
    if u.dim() != basis.dim() {
        return Err(Error::Shape {
            expected: basis.dim(),
            found: u.dim(),
        });
    }
    Ok(basis
        .encoded()
        .map(|(z, sub)| u.matrix()[(z, z)] * sub.weight())
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;

    fn fs(s: &str) -> FibString {
        s.parse().unwrap()
    }

    fn fib_recursive(k: usize) -> u64 {
        if k <= 2 {
            1
        } else {
            fib_recursive(k - 1) + fib_recursive(k - 2)
        }
    }

    #[test]
    fn fib_values() {
        assert_eq!(fib(1).unwrap(), 1);
        assert_eq!(fib(2).unwrap(), 1);
        assert_eq!(fib(3).unwrap(), 2);
        assert_eq!(fib(4).unwrap(), 3);
        assert_eq!(fib(10).unwrap(), 55);
        assert!(matches!(fib(0), Err(Error::Domain(_))));
        assert!(fib(200).is_err());
    }

    #[test]
    fn four_strand_basis() {
        let b = enumerate_fib_basis(4).unwrap();
        let listed: Vec<String> = b.members().iter().map(|s| s.to_string()).collect();
        assert_eq!(listed, ["*pppp", "*pp*p", "*p*pp", "*ppp*", "*p*p*"]);
        assert_eq!(b.counts(), (3, 2));
        assert_eq!(b.register_qubits(), 3);
        assert_eq!(b.encode(&fs("*pppp")).unwrap(), 0);
        assert_eq!(b.encode(&fs("*p*pp")).unwrap(), 2);
        assert_eq!(b.encode(&fs("*ppp*")).unwrap(), 4);
        assert_eq!(b.encode(&fs("*p*p*")).unwrap(), 5);
        assert_eq!(b.padding().collect::<Vec<_>>(), vec![3, 6, 7]);
    }

    #[test]
    fn two_strand_basis() {
        let b = enumerate_fib_basis(2).unwrap();
        let listed: Vec<String> = b.members().iter().map(|s| s.to_string()).collect();
        assert_eq!(listed, ["*pp", "*p*"]);
        assert_eq!(b.register_qubits(), 1);
        assert_eq!(b.padding().count(), 0);
        assert!(enumerate_fib_basis(1).is_err());
    }

    #[test]
    fn basis_sizes_match_fibonacci() {
        for m in 2..=8 {
            let b = enumerate_fib_basis(m).unwrap();
            assert_eq!(b.counts().0 as u64, fib_recursive(m), "m={m}");
            assert_eq!(b.counts().1 as u64, fib_recursive(m - 1), "m={m}");
            assert!(b.half() >= b.counts().0);
            assert!(b.register_qubits() == 1 || (b.half() / 2) < b.counts().0);
            for (z, s) in b.members().iter().enumerate() {
                let code = b.encode(s).unwrap();
                assert_eq!(b.decode(code), Some(s));
                let in_low = code < b.half();
                assert_eq!(in_low, s.subspace() == Subspace::P, "m={m} z={z}");
            }
        }
    }

    #[test]
    fn encode_rejects_invalid_strings() {
        let b = enumerate_fib_basis(4).unwrap();
        for bad in ["**ppp", "ppppp", "*pp**", "*pp"] {
            assert!(
                matches!(b.encode(&fs(bad)), Err(Error::InvalidBasisState(_))),
                "{bad}"
            );
        }
        assert!("*pxp".parse::<FibString>().is_err());
    }

    #[test]
    fn crossing_inverse_pair_and_structure() {
        for m in 2..=6 {
            let b = enumerate_fib_basis(m).unwrap();
            let pad: Vec<usize> = b.padding().collect();
            for i in 1..m {
                let plus = crossing_unitary(i, 1, &b).unwrap();
                let minus = crossing_unitary(i, -1, &b).unwrap();
                let prod = plus.compose(&minus);
                assert!(prod.max_abs_diff(&DenseUnitary::identity(b.dim())) < ALGEBRA_TOL);
                assert!(plus.unitarity_defect() < ALGEBRA_TOL);
                assert!(plus.off_block_magnitude(b.half()) == 0.0);
                assert!(plus.identity_defect_on(pad.iter().copied()) == 0.0);
            }
        }
        let b = enumerate_fib_basis(4).unwrap();
        assert!(crossing_unitary(0, 1, &b).is_err());
        assert!(crossing_unitary(4, 1, &b).is_err());
    }

    #[test]
    fn braid_unitary_examples() {
        let b = enumerate_fib_basis(4).unwrap();
        let id = DenseUnitary::identity(b.dim());
        let u = braid_unitary(&parse_braid("", 4).unwrap(), &b).unwrap();
        assert_eq!(u, id);
        let u = braid_unitary(&parse_braid("1 -1", 4).unwrap(), &b).unwrap();
        assert!(u.max_abs_diff(&id) < ALGEBRA_TOL);
        let x = braid_unitary(&parse_braid("1 2 1", 4).unwrap(), &b).unwrap();
        let y = braid_unitary(&parse_braid("2 1 2", 4).unwrap(), &b).unwrap();
        assert!(x.max_abs_diff(&y) < ALGEBRA_TOL);
        assert!(braid_unitary(&parse_braid("1", 3).unwrap(), &b).is_err());
    }

    #[test]
    fn weighted_trace_examples() {
        let b = enumerate_fib_basis(4).unwrap();
        let w = weighted_trace(&DenseUnitary::identity(b.dim()), &b).unwrap();
        assert!((w.re - (3.0 * PHI + 2.0)).abs() < 1e-12);
        assert!((w.re - 6.854102).abs() < 1e-6);
        assert_eq!(w.im, 0.0);

        let zero = DenseUnitary::from_matrix_unchecked(DMatrix::zeros(8, 8));
        assert_eq!(weighted_trace(&zero, &b).unwrap(), Complex64::new(0.0, 0.0));

        let wrong = DenseUnitary::identity(4);
        assert!(matches!(
            weighted_trace(&wrong, &b),
            Err(Error::Shape { .. })
        ));
    }

    #[test]
    fn listing_format() {
        let b = enumerate_fib_basis(4).unwrap();
        let text = b.listing();
        assert_eq!(text.lines().count(), 5);
        assert_eq!(text.lines().next().unwrap(), "*pppp\t0\tP");
        assert_eq!(text.lines().nth(3).unwrap(), "*ppp*\t4\tS");
    }

    #[test]
    fn from_matrix_checks_unitarity() {
        let m = DMatrix::from_element(2, 2, Complex64::new(1.0, 0.0));
        assert!(DenseUnitary::from_matrix(m).is_err());
        assert!(DenseUnitary::from_matrix(DMatrix::identity(3, 3)).is_ok());
    }

    #[test]
    fn json_export_shape() {
        let b = enumerate_fib_basis(2).unwrap();
        let u = crossing_unitary(1, 1, &b).unwrap();
        let v = u.to_json();
        assert_eq!(v["dim"], 2);
        assert_eq!(v["entries"].as_array().unwrap().len(), 2);
        assert_eq!(v["entries"][0][0].as_array().unwrap().len(), 2);
    }
}
