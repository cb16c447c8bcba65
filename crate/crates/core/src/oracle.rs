//! Brute-force Kauffman bracket of braid trace closures.
//!
//! The closure of a word with `c` letters on `m` strands is cut into `c`
//! layers. Layer `j` joins boundary `j` to boundary `j + 1` (boundary `c` is
//! glued back to boundary `0`). A state picks a smoothing per crossing:
//!
//! * vertical: the two strands pass straight through the layer;
//! * horizontal: a cap joins the two top endpoints and a cup the two bottom ones.
//!
//! For a positive crossing the A-smoothing is vertical, for a negative one it
//! is horizontal, so `s_i ↦ A·1 + A^{-1}·E_i`. The bracket is
//! `Σ_states A^{#A - #B} d^{loops - 1}` with `d = -A² - A^{-2}`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::jones::bracket_variable;

/// Largest crossing count accepted by the state sum.
pub const MAX_CROSSINGS: usize = 24;

const CHUNK: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub a: Complex64,
    pub d: Complex64,
}

impl OracleConfig {
    pub fn new(a: Complex64) -> Self {
        Self {
            a,
            d: -a * a - a.powi(-2),
        }
    }

    /// The Jones variable `t = A^{-4}`.
    pub fn t(&self) -> Complex64 {
        self.a.powi(-4)
    }
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self::new(bracket_variable())
    }
}

/// Smoothing choice of one state; bit `j` set means crossing `j` is smoothed
/// horizontally.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlanarState {
    pub horizontal_mask: u64,
    pub loop_count: usize,
}

impl PlanarState {
    pub fn evaluate(b: &BraidWord, horizontal_mask: u64) -> Self {
        let mut uf = UnionFind::new(b.len().max(1) * b.strands());
        Self {
            horizontal_mask,
            loop_count: count_loops(b, horizontal_mask, &mut uf),
        }
    }

    /// `#A-smoothings − #B-smoothings` for this state.
    pub fn a_minus_b(&self, b: &BraidWord) -> i64 {
        signed_a_count(b, self.horizontal_mask)
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    sets: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
            sets: n,
        }
    }

    fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i;
        }
        self.rank.fill(0);
        self.sets = self.parent.len();
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        self.sets -= 1;
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Loops of the smoothed closure by union-find over boundary endpoints.
///
/// Endpoint `(j, k)` is strand position `k` on boundary `j`, for `j < c`;
/// boundary `c` is identified with boundary `0`.
fn count_loops(b: &BraidWord, horizontal_mask: u64, uf: &mut UnionFind) -> usize {
    let m = b.strands();
    let c = b.len();
    if c == 0 {
        return m;
    }
    uf.reset();
    let node = |j: usize, k: usize| (j % c) * m + k;
    for (j, &g) in b.word().iter().enumerate() {
        let a = g.unsigned_abs() as usize - 1;
        let horizontal = horizontal_mask >> j & 1 == 1;
        for k in 0..m {
            if k == a || k == a + 1 {
                continue;
            }
            uf.union(node(j, k), node(j + 1, k));
        }
        if horizontal {
            uf.union(node(j, a), node(j, a + 1));
            uf.union(node(j + 1, a), node(j + 1, a + 1));
        } else {
            uf.union(node(j, a), node(j + 1, a));
            uf.union(node(j, a + 1), node(j + 1, a + 1));
        }
    }
    uf.sets
}

fn signed_a_count(b: &BraidWord, horizontal_mask: u64) -> i64 {
    b.word()
        .iter()
        .enumerate()
        .map(|(j, &g)| {
            let horizontal = horizontal_mask >> j & 1 == 1;
            // A-smoothing: vertical for s_i, horizontal for s_i^{-1}
            if (g > 0) != horizontal {
                1
            } else {
                -1
            }
        })
        .sum()
}

/// Loops of the smoothed closure by walking the diagram arc by arc.
///
/// Independent of the union-find path; used for cross-validation.
pub fn count_loops_by_walking(b: &BraidWord, horizontal_mask: u64) -> usize {
    let m = b.strands();
    let c = b.len();
    if c == 0 {
        return m;
    }
    let horizontal = |j: usize| horizontal_mask >> j & 1 == 1;
    let site = |j: usize| b.word()[j].unsigned_abs() as usize - 1;
    let mut visited = vec![false; c * m];
    let mut loops = 0;
    for start in 0..c * m {
        if visited[start] {
            continue;
        }
        loops += 1;
        let (mut j, mut k, mut down) = (start / m, start % m, true);
        loop {
            visited[j * m + k] = true;
            // moving down enters layer j, moving up enters the layer above
            let layer = if down { j } else { (j + c - 1) % c };
            let a = site(layer);
            if (k == a || k == a + 1) && horizontal(layer) {
                // cap or cup on the current boundary: turn around
                k = if k == a { a + 1 } else { a };
                down = !down;
            } else if down {
                j = (j + 1) % c;
            } else {
                j = layer;
            }
            if j * m + k == start {
                break;
            }
        }
    }
    loops
}

fn check_size(b: &BraidWord) -> Result<()> {
    if b.len() > MAX_CROSSINGS {
        return Err(Error::ResourceLimit {
            crossings: b.len(),
            limit: MAX_CROSSINGS,
        });
    }
    Ok(())
}

/// `⟨closure(b)⟩` by summing over all `2^c` smoothings.
pub fn kauffman_bracket(b: &BraidWord, cfg: &OracleConfig) -> Result<Complex64> {
    check_size(b)?;
    let c = b.len();
    let m = b.strands();
    let a_pow: Vec<Complex64> = (0..=2 * c)
        .map(|k| cfg.a.powi(k as i32 - c as i32))
        .collect();
    let d_pow: Vec<Complex64> = (0..c + m).map(|k| cfg.d.powi(k as i32)).collect();

    let total = 1u64 << c;
    let chunks = total.div_ceil(CHUNK);
    // fixed-size chunks summed in index order keep the result independent of
    // the thread count
    let partials: Vec<Complex64> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut uf = UnionFind::new(c.max(1) * m);
            let lo = chunk * CHUNK;
            let hi = (lo + CHUNK).min(total);
            let mut acc = Complex64::new(0.0, 0.0);
            for mask in lo..hi {
                let loops = count_loops(b, mask, &mut uf);
                let ab = signed_a_count(b, mask);
                acc += a_pow[(ab + c as i64) as usize] * d_pow[loops - 1];
            }
            acc
        })
        .collect();
    Ok(partials.into_iter().sum())
}

/// `(-A)^{-3w}·⟨closure(b)⟩`.
pub fn jones_oracle(b: &BraidWord, cfg: &OracleConfig) -> Result<Complex64> {
    let bracket = kauffman_bracket(b, cfg)?;
    Ok(writhe_factor(b.writhe(), cfg) * bracket)
}

fn writhe_factor(writhe: i64, cfg: &OracleConfig) -> Complex64 {
    (-cfg.a).powi(-3 * writhe as i32)
}

/// Components of the trace closure.
pub fn component_count(b: &BraidWord) -> usize {
    b.permutation().cycle_count()
}

/// JSON record emitted by the `oracle` command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleRecord {
    pub braid: String,
    pub strands: usize,
    pub components: usize,
    pub bracket_re: f64,
    pub bracket_im: f64,
    pub jones_re: f64,
    pub jones_im: f64,
}

impl OracleRecord {
    pub fn compute(b: &BraidWord, cfg: &OracleConfig) -> Result<Self> {
        let bracket = kauffman_bracket(b, cfg)?;
        let jones = writhe_factor(b.writhe(), cfg) * bracket;
        Ok(Self {
            braid: b.render(),
            strands: b.strands(),
            components: component_count(b),
            bracket_re: bracket.re,
            bracket_im: bracket.im,
            jones_re: jones.re,
            jones_im: jones.im,
        })
    }
}
