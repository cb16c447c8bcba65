//! Braid words in the Artin braid group `B_m`.
//!
//! A [`BraidWord`] is a strand count plus a sequence of signed, 1-based
//! generator indices: `+g` stands for `s_g` (strand `g` over strand `g+1`)
//! and `-g` for its inverse. Words are immutable once built.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A braid on `strands` strands given as a signed generator sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBraid", into = "RawBraid")]
pub struct BraidWord {
    strands: usize,
    word: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct RawBraid {
    strands: usize,
    word: Vec<i32>,
}

impl TryFrom<RawBraid> for BraidWord {
    type Error = Error;

    fn try_from(raw: RawBraid) -> Result<Self> {
        BraidWord::new(raw.strands, raw.word)
    }
}

impl From<BraidWord> for RawBraid {
    fn from(b: BraidWord) -> Self {
        RawBraid {
            strands: b.strands,
            word: b.word,
        }
    }
}

impl BraidWord {
    pub fn new(strands: usize, word: Vec<i32>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::InvalidStrands(strands));
        }
        for (position, &g) in word.iter().enumerate() {
            check_generator(g, strands, &g.to_string(), position)?;
        }
        Ok(Self { strands, word })
    }

    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn word(&self) -> &[i32] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Positive crossings minus negative crossings.
    pub fn writhe(&self) -> i64 {
        self.word.iter().map(|&g| i64::from(g.signum())).sum()
    }

    pub fn permutation(&self) -> StrandPermutation {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &g in &self.word {
            let a = g.unsigned_abs() as usize - 1;
            at.swap(a, a + 1);
        }
        StrandPermutation { mapping: at }
    }

    /// Canonical text: space-separated signed integers.
    pub fn render(&self) -> String {
        self.word
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotated(&self, k: usize) -> Self {
        let mut word = self.word.clone();
        if !word.is_empty() {
            let k = k % word.len();
            word.rotate_left(k);
        }
        Self {
            strands: self.strands,
            word,
        }
    }

    /// The mirror image: every crossing sign flipped.
    pub fn mirrored(&self) -> Self {
        Self {
            strands: self.strands,
            word: self.word.iter().map(|g| -g).collect(),
        }
    }

    /// Inserts `s_g s_g^{-1}` before position `at`.
    pub fn with_inverse_pair(&self, at: usize, g: i32) -> Result<Self> {
        let mut word = self.word.clone();
        let at = at.min(word.len());
        word.splice(at..at, [g, -g]);
        Self::new(self.strands, word)
    }

    pub fn concat(&self, other: &BraidWord) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::Domain(format!(
                "cannot concatenate braids on {} and {} strands",
                self.strands, other.strands
            )));
        }
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Ok(Self {
            strands: self.strands,
            word,
        })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn check_generator(g: i32, strands: usize, token: &str, position: usize) -> Result<()> {
    let max = strands - 1;
    let idx = g.unsigned_abs() as usize;
    if idx == 0 || idx > max {
        return Err(Error::GeneratorOutOfRange {
            token: token.to_string(),
            position,
            strands,
            max,
        });
    }
    Ok(())
}

/// Parses whitespace-separated braid tokens.
///
/// Accepted forms are `s<k>`, `s<k>^-1`, `k`, `+k` and `-k`. Positions in
/// errors are 0-based token indices.
pub fn parse_braid(text: &str, strands: usize) -> Result<BraidWord> {
    if strands < 2 {
        return Err(Error::InvalidStrands(strands));
    }
    let mut word = Vec::new();
    for (position, token) in text.split_whitespace().enumerate() {
        let g = parse_token(token).ok_or_else(|| Error::Syntax {
            token: token.to_string(),
            position,
        })?;
        check_generator(g, strands, token, position)?;
        word.push(g);
    }
    Ok(BraidWord { strands, word })
}

fn parse_token(token: &str) -> Option<i32> {
    if let Some(rest) = token.strip_prefix('s') {
        let (digits, sign) = match rest.strip_suffix("^-1") {
            Some(d) => (d, -1),
            None => (rest, 1),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        return digits.parse::<i32>().ok().map(|k| sign * k);
    }
    let (digits, sign) = match token.as_bytes().first()? {
        b'-' => (&token[1..], -1),
        b'+' => (&token[1..], 1),
        _ => (token, 1),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse::<i32>().ok().map(|k| sign * k)
}

/// Permutation of strands induced by a braid once crossing signs are forgotten.
///
/// `mapping[p]` is the (0-based) top strand that arrives at bottom position `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrandPermutation {
    mapping: Vec<usize>,
}

impl StrandPermutation {
    pub fn identity(strands: usize) -> Self {
        Self {
            mapping: (0..strands).collect(),
        }
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    /// 1-based image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.mapping[i - 1] + 1
    }

    /// Cycles in 1-based notation, each starting at its smallest element,
    /// ordered by that element. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.mapping.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.mapping[i];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Number of cycles; equals the number of components of the trace closure.
    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }
}

/// All `(2(m-1))^length` words, lexicographic over the alphabet `+1, -1, +2, -2, ...`.
pub fn enumerate_words(strands: usize, length: usize) -> Result<Vec<BraidWord>> {
    if strands < 2 {
        return Err(Error::InvalidStrands(strands));
    }
    let alphabet: Vec<i32> = (1..strands as i32).flat_map(|g| [g, -g]).collect();
    let k = alphabet.len();
    let total = k
        .checked_pow(length as u32)
        .ok_or_else(|| Error::Domain(format!("{k}^{length} words do not fit in memory")))?;
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0usize; length];
    for _ in 0..total {
        out.push(BraidWord {
            strands,
            word: digits.iter().map(|&d| alphabet[d]).collect(),
        });
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < k {
                break;
            }
            *d = 0;
        }
    }
    Ok(out)
}

/// Single-step rewrites by far commutation and the Yang-Baxter relation.
///
/// Far commutation swaps adjacent letters whose indices differ by more than
/// one (any signs). Yang-Baxter turns `s_i s_j s_i` into `s_j s_i s_j` for
/// `|i - j| = 1` when all three letters share a sign. Results are
/// de-duplicated and listed in order of the rewrite position.
pub fn relation_rewrites(b: &BraidWord) -> Vec<BraidWord> {
    let w = &b.word;
    let mut out: Vec<BraidWord> = Vec::new();
    let mut push = |word: Vec<i32>| {
        let candidate = BraidWord {
            strands: b.strands,
            word,
        };
        if !out.contains(&candidate) {
            out.push(candidate);
        }
    };
    for i in 0..w.len().saturating_sub(1) {
        if (w[i].abs() - w[i + 1].abs()).abs() > 1 {
            let mut word = w.clone();
            word.swap(i, i + 1);
            push(word);
        }
    }
    for i in 0..w.len().saturating_sub(2) {
        let (x, y, z) = (w[i], w[i + 1], w[i + 2]);
        let same_sign = x.signum() == y.signum() && y.signum() == z.signum();
        if x == z && (x.abs() - y.abs()).abs() == 1 && same_sign {
            let mut word = w.clone();
            word[i] = y;
            word[i + 1] = x;
            word[i + 2] = y;
            push(word);
        }
    }
    out
}
