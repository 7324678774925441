//! Length sets, length vectors, exact Kraft arithmetic and canonical
//! codeword assignment.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::distributions::Pmf;
use crate::error::{Error, Result};

/// Longest codeword a [`Codebook`] can hold.
pub const MAX_CODEWORD_BITS: u32 = 64;

/// Sorted, deduplicated set of allowed codeword lengths.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LengthSet(Vec<u32>);

impl LengthSet {
    pub fn new(lengths: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut v: Vec<u32> = lengths.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Err(Error::InvalidLengthSet("empty".into()));
        }
        if v[0] == 0 {
            return Err(Error::InvalidLengthSet("lengths must be at least 1".into()));
        }
        Ok(LengthSet(v))
    }

    pub fn lengths(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn longest(&self) -> u32 {
        *self.0.last().expect("nonempty")
    }

    pub fn contains(&self, l: u32) -> bool {
        self.0.binary_search(&l).is_ok()
    }
}

impl fmt::Display for LengthSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// Codeword lengths in sorted-symbol order (nondecreasing).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LengthVector(Vec<u32>);

impl LengthVector {
    pub fn new(lengths: Vec<u32>) -> Result<Self> {
        if lengths.first() == Some(&0) || lengths.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::NotMonotone);
        }
        Ok(LengthVector(lengths))
    }

    pub fn lengths(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn longest(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// Number of different lengths in use.
    pub fn distinct(&self) -> usize {
        let mut d = self.0.clone();
        d.dedup();
        d.len()
    }
}

/// Exact dyadic rational `numerator / 2^exponent`, kept in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    numerator: BigUint,
    exponent: u32,
}

impl Dyadic {
    pub fn new(numerator: BigUint, exponent: u32) -> Self {
        let Some(tz) = numerator.trailing_zeros() else {
            return Dyadic {
                numerator,
                exponent: 0,
            };
        };
        let shift = tz.min(exponent as u64) as u32;
        Dyadic {
            numerator: numerator >> shift,
            exponent: exponent - shift,
        }
    }

    pub fn zero() -> Self {
        Dyadic::new(BigUint::ZERO, 0)
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_at_most_one(&self) -> bool {
        self.numerator <= (BigUint::from(1u8) << self.exponent)
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0 && self.numerator == BigUint::from(1u8)
    }

    /// `1 - k * 2^-e` as an exact value, for comparing with partial sums.
    pub fn one_minus(k: u64, e: u32) -> Option<Self> {
        let one = BigUint::from(1u8) << e;
        let k = BigUint::from(k);
        (k <= one).then(|| Dyadic::new(one - k, e))
    }

    pub fn to_f64(&self) -> f64 {
        // Scale down large operands so the division stays in range.
        let bits = self.numerator.bits();
        let drop = bits.saturating_sub(60);
        let num = (&self.numerator >> drop)
            .to_u64_digits()
            .first()
            .copied()
            .unwrap_or(0) as f64;
        num * 2f64.powi(drop as i32 - self.exponent as i32)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.numerator, self.exponent)
    }
}

/// `sum 2^-l_i`, computed exactly.
fn kraft_prefix(lengths: &[u32]) -> Dyadic {
    let Some(&max) = lengths.iter().max() else {
        return Dyadic::zero();
    };
    let mut num = BigUint::ZERO;
    let mut i = 0;
    while i < lengths.len() {
        let l = lengths[i];
        let run = lengths[i..].iter().take_while(|&&x| x == l).count();
        num += BigUint::from(run) << (max - l);
        i += run;
    }
    Dyadic::new(num, max)
}

pub fn kraft_sum(lv: &LengthVector) -> Dyadic {
    kraft_prefix(&lv.0)
}

/// Kraft sum of the `x` shortest codewords.
pub fn partial_kraft(lv: &LengthVector, x: usize) -> Result<Dyadic> {
    if x > lv.len() {
        return Err(Error::IndexOutOfRange {
            index: x,
            len: lv.len() + 1,
        });
    }
    Ok(kraft_prefix(&lv.0[..x]))
}

pub fn expected_length(pmf: &Pmf, lv: &LengthVector) -> Result<f64> {
    if pmf.len() != lv.len() {
        return Err(Error::SizeMismatch {
            expected: pmf.len(),
            actual: lv.len(),
        });
    }
    Ok(pmf
        .probs()
        .iter()
        .zip(&lv.0)
        .map(|(p, &l)| p * l as f64)
        .sum())
}

/// A prefix code over `n` symbols exists within `ls` iff `2^max(ls) >= n`.
pub fn is_feasible(ls: &LengthSet, n: usize) -> bool {
    let max = ls.longest();
    max >= usize::BITS || (1usize << max) >= n
}

/// Drops allowed lengths that no optimal code over `n` symbols can use.
///
/// Every length of an optimal code is either at most `n - 2` or equal to the
/// smallest allowed length above `n - 2`, so everything beyond that one
/// element is removed.
pub fn truncate_length_set(ls: &LengthSet, n: usize) -> Result<LengthSet> {
    if !is_feasible(ls, n) {
        return Err(Error::Infeasible {
            n,
            max_length: ls.longest(),
        });
    }
    let bound = n.saturating_sub(2) as u64;
    let mut kept: Vec<u32> =
        ls.0.iter()
            .copied()
            .filter(|&l| l as u64 <= bound)
            .collect();
    if let Some(&beyond) = ls.0.iter().find(|&&l| l as u64 > bound) {
        kept.push(beyond);
    }
    Ok(LengthSet(kept))
}

/// Codewords sharing one length: consecutive integers starting at
/// `first_code`, assigned to sorted symbols `first_index..first_index+count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthGroup {
    pub length: u32,
    pub first_code: u64,
    pub first_index: usize,
    pub count: usize,
}

/// Canonical prefix code in sorted-symbol order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    lengths: Vec<u32>,
    codewords: Vec<u64>,
    groups: Vec<LengthGroup>,
}

#[derive(Serialize, Deserialize)]
struct CodebookJson {
    lengths: Vec<u32>,
    codewords: Vec<String>,
}

impl Codebook {
    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    /// Codeword values; the low `length` bits hold the code, first bit most
    /// significant.
    pub fn codewords(&self) -> &[u64] {
        &self.codewords
    }

    pub fn codeword(&self, i: usize) -> (u64, u32) {
        (self.codewords[i], self.lengths[i])
    }

    /// Per-length groups in ascending length order.
    pub fn groups(&self) -> &[LengthGroup] {
        &self.groups
    }

    pub fn bitstring(&self, i: usize) -> String {
        let (code, len) = self.codeword(i);
        (0..len)
            .rev()
            .map(|b| if (code >> b) & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(CodebookJson {
            lengths: self.lengths.clone(),
            codewords: (0..self.len()).map(|i| self.bitstring(i)).collect(),
        })
        .expect("plain data serializes")
    }

    /// Reads the JSON form back, insisting the codewords are the canonical
    /// ones for the stored lengths.
    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: CodebookJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let cb = assign_canonical(&LengthVector::new(parsed.lengths)?)?;
        if parsed.codewords.len() != cb.len() {
            return Err(Error::SizeMismatch {
                expected: cb.len(),
                actual: parsed.codewords.len(),
            });
        }
        for (i, word) in parsed.codewords.iter().enumerate() {
            if *word != cb.bitstring(i) {
                return Err(Error::Parse(format!(
                    "codeword #{i} {word:?} is not canonical (expected {:?})",
                    cb.bitstring(i)
                )));
            }
        }
        Ok(cb)
    }
}

/// Assigns canonical codewords to nondecreasing lengths: the first symbol
/// gets all zeros and each next codeword is `(prev + 1) << (l_next - l_prev)`.
pub fn assign_canonical(lv: &LengthVector) -> Result<Codebook> {
    let kraft = kraft_sum(lv);
    if !kraft.is_at_most_one() {
        return Err(Error::KraftViolation(kraft.to_string()));
    }
    if let Some(max) = lv.longest().filter(|&m| m > MAX_CODEWORD_BITS) {
        return Err(Error::CodewordTooLong(max));
    }
    let mut codewords = Vec::with_capacity(lv.len());
    let mut groups: Vec<LengthGroup> = Vec::new();
    let mut next: u128 = 0;
    let mut prev_len = lv.0.first().copied().unwrap_or(0);
    for (i, &l) in lv.0.iter().enumerate() {
        next <<= l - prev_len;
        prev_len = l;
        codewords.push(next as u64);
        match groups.last_mut() {
            Some(g) if g.length == l => g.count += 1,
            _ => groups.push(LengthGroup {
                length: l,
                first_code: next as u64,
                first_index: i,
                count: 1,
            }),
        }
        next += 1;
    }
    Ok(Codebook {
        lengths: lv.0.clone(),
        codewords,
        groups,
    })
}
