//! Probability mass functions: construction, validation, file ingestion and
//! the two named distributions used throughout (Zipf and Benford).
//!
//! A [`Pmf`] is always stored sorted by nonincreasing probability, which is
//! the order every solver in this crate works in. The permutation back to
//! the caller's symbol order is kept alongside so results can be reported
//! per original symbol.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};

/// Tolerance on `|sum - 1|` for weights accepted without normalization.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    probs: Vec<f64>,
    perm: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl Pmf {
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Probabilities in sorted (nonincreasing) order.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// `perm()[i]` is the caller's index of the `i`-th most probable symbol.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Labels in the caller's original order, when the source had any.
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of sorted symbol `i`, falling back to its 1-based user index.
    pub fn label_of_sorted(&self, i: usize) -> String {
        let user = self.perm[i];
        match &self.labels {
            Some(labels) => labels[user].clone(),
            None => (user + 1).to_string(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.probs.len() {
            return Err(Error::SizeMismatch {
                expected: self.probs.len(),
                actual: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Reorders a per-sorted-symbol vector into the caller's symbol order.
    pub fn to_user_order<T: Clone>(&self, sorted: &[T]) -> Vec<T> {
        let mut out: Vec<Option<T>> = vec![None; sorted.len()];
        for (i, v) in sorted.iter().enumerate() {
            out[self.perm[i]] = Some(v.clone());
        }
        out.into_iter()
            .map(|v| v.expect("perm is a bijection"))
            .collect()
    }
}

/// Cumulative sums `F[0] = 0`, `F[i] = F[i-1] + p_i` over the sorted pmf.
#[derive(Debug, Clone, PartialEq)]
pub struct CumulativeTable {
    values: Vec<f64>,
}

impl CumulativeTable {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `F[i]`, the total probability of the `i` most probable symbols.
    pub fn at(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// Probability mass of symbols beyond the first `i`, as `1 - F[i]`.
    pub fn tail(&self, i: usize) -> f64 {
        1.0 - self.values[i]
    }
}

/// Builds a sorted pmf from positive weights.
///
/// With `normalize` the weights are divided by their sum; without it they
/// must already sum to 1 within [`NORMALIZATION_TOLERANCE`]. Sorting is
/// stable, so equal weights keep their input order.
pub fn make_pmf(weights: &[f64], normalize: bool) -> Result<Pmf> {
    if weights.len() < 2 {
        return Err(Error::EmptyOrSingleton(weights.len()));
    }
    for (index, &value) in weights.iter().enumerate() {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::NonPositiveWeight { index, value });
        }
    }
    let sum: f64 = weights.iter().sum();
    let scale = if normalize {
        sum
    } else if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::NotNormalized { sum });
    } else {
        1.0
    };

    let mut perm: Vec<usize> = (0..weights.len()).collect();
    perm.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]));
    let probs = perm.iter().map(|&i| weights[i] / scale).collect();
    Ok(Pmf {
        probs,
        perm,
        labels: None,
    })
}

/// Zipf law over `n` symbols: `p_i = (1/i) / H_n`.
pub fn zipf_pmf(n: usize) -> Result<Pmf> {
    if n < 2 {
        return Err(Error::EmptyOrSingleton(n));
    }
    let harmonic: f64 = (1..=n).map(|j| 1.0 / j as f64).sum();
    let probs = (1..=n).map(|i| 1.0 / (i as f64 * harmonic)).collect();
    Ok(Pmf {
        probs,
        perm: (0..n).collect(),
        labels: None,
    })
}

/// Benford's law for leading decimal digits 1..=9.
pub fn benford_pmf() -> Pmf {
    let probs = (1..=9)
        .map(|d| (d as f64 + 1.0).log10() - (d as f64).log10())
        .collect();
    Pmf {
        probs,
        perm: (0..9).collect(),
        labels: Some((1..=9).map(|d| d.to_string()).collect()),
    }
}

pub fn cdf(pmf: &Pmf) -> CumulativeTable {
    let mut values = Vec::with_capacity(pmf.len() + 1);
    let mut acc = 0.0;
    values.push(acc);
    for &p in &pmf.probs {
        acc += p;
        values.push(acc);
    }
    CumulativeTable { values }
}

/// Input formats accepted by [`pmf_from_file`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PmfFormat {
    /// `label,weight` per line.
    Csv,
    /// `{"weights": [...], "labels": [...]}`; labels optional.
    Json,
    /// Byte-value histogram of an arbitrary file; labels are the byte values.
    ByteHistogram,
}

impl PmfFormat {
    /// Picks CSV or JSON by file extension.
    pub fn from_path(path: &Path) -> Result<Self> {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => Ok(PmfFormat::Csv),
            Some(ext) if ext.eq_ignore_ascii_case("json") => Ok(PmfFormat::Json),
            _ => Err(Error::Parse(format!(
                "{}: expected a .csv or .json pmf file",
                path.display()
            ))),
        }
    }
}

#[derive(Deserialize)]
struct JsonPmf {
    weights: Vec<f64>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

pub fn pmf_from_file(path: impl AsRef<Path>, format: PmfFormat) -> Result<Pmf> {
    let path = path.as_ref();
    match format {
        PmfFormat::Csv => parse_csv(&fs::read_to_string(path)?),
        PmfFormat::Json => parse_json(&fs::read_to_string(path)?),
        PmfFormat::ByteHistogram => byte_histogram(&fs::read(path)?),
    }
}

pub fn parse_csv(text: &str) -> Result<Pmf> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut labels = Vec::new();
    let mut weights = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        if record.len() != 2 {
            return Err(Error::Parse(format!(
                "line {}: expected `label,weight`, got {} fields",
                line + 1,
                record.len()
            )));
        }
        let weight: f64 = record[1]
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad weight {:?}", line + 1, &record[1])))?;
        if weight < 0.0 {
            return Err(Error::NonPositiveWeight {
                index: line,
                value: weight,
            });
        }
        labels.push(record[0].to_string());
        weights.push(weight);
    }
    make_pmf(&weights, true)?.with_labels(labels)
}

pub fn parse_json(text: &str) -> Result<Pmf> {
    let parsed: JsonPmf = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let pmf = make_pmf(&parsed.weights, true)?;
    match parsed.labels {
        Some(labels) => pmf.with_labels(labels),
        None => Ok(pmf),
    }
}

/// Pmf over the byte values that occur in `data`.
pub fn byte_histogram(data: &[u8]) -> Result<Pmf> {
    let mut counts = [0u64; 256];
    for &b in data {
        counts[b as usize] += 1;
    }
    let (labels, weights): (Vec<String>, Vec<f64>) = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(b, &c)| (b.to_string(), c as f64))
        .unzip();
    make_pmf(&weights, true)?.with_labels(labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_pair() {
        let pmf = make_pmf(&[0.5, 0.5], false).unwrap();
        assert_eq!(pmf.probs(), &[0.5, 0.5]);
        assert_eq!(pmf.perm(), &[0, 1]);
    }

    #[test]
    fn normalizes_and_sorts() {
        let pmf = make_pmf(&[1.0, 1.0, 2.0], true).unwrap();
        assert_eq!(pmf.probs(), &[0.5, 0.25, 0.25]);
        // most probable sorted symbol is user symbol #3; ties keep input order
        assert_eq!(pmf.perm(), &[2, 0, 1]);
        assert_eq!(pmf.to_user_order(&[10, 20, 30]), vec![20, 30, 10]);
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(matches!(
            make_pmf(&[0.3, 0.3, 0.3], false),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            make_pmf(&[1.0], true),
            Err(Error::EmptyOrSingleton(1))
        ));
        assert!(matches!(
            make_pmf(&[], true),
            Err(Error::EmptyOrSingleton(0))
        ));
        assert!(matches!(
            make_pmf(&[1.0, 0.0], true),
            Err(Error::NonPositiveWeight { index: 1, .. })
        ));
        assert!(matches!(
            make_pmf(&[1.0, f64::NAN], true),
            Err(Error::NonPositiveWeight { .. })
        ));
    }

    #[test]
    fn zipf_small_cases() {
        let z2 = zipf_pmf(2).unwrap();
        assert!((z2.probs()[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((z2.probs()[1] - 1.0 / 3.0).abs() < 1e-15);
        let z3 = zipf_pmf(3).unwrap();
        for (p, q) in z3.probs().iter().zip([6.0 / 11.0, 3.0 / 11.0, 2.0 / 11.0]) {
            assert!((p - q).abs() < 1e-15);
        }
        assert!(zipf_pmf(1).is_err());
    }

    #[test]
    fn zipf_ratios_are_exact() {
        let z = zipf_pmf(4096).unwrap();
        let p1 = z.probs()[0];
        for (i, p) in z.probs().iter().enumerate() {
            let rank = (i + 1) as f64;
            assert!((p1 / p - rank).abs() <= 1e-12 * rank, "rank {rank}");
        }
        assert!((z.probs().iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn benford_matches_printed_values() {
        let printed = [
            0.301, 0.176, 0.125, 0.097, 0.079, 0.067, 0.058, 0.051, 0.046,
        ];
        let b = benford_pmf();
        for (p, q) in b.probs().iter().zip(printed) {
            assert!((p - q).abs() <= 0.0005 + 1e-12, "{p} vs {q}");
        }
        assert!(b.probs().windows(2).all(|w| w[0] >= w[1]));
        assert!((b.probs().iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cumulative_table() {
        let u = make_pmf(&[1.0; 4], true).unwrap();
        assert_eq!(cdf(&u).values(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
        let f = cdf(&benford_pmf());
        assert!((f.at(2) - 0.477).abs() < 0.001);
        assert!((f.at(9) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn csv_input() {
        let pmf = parse_csv("a,1\nb,1").unwrap();
        assert_eq!(pmf.probs(), &[0.5, 0.5]);
        assert_eq!(pmf.labels().unwrap(), &["a".to_string(), "b".to_string()]);
        assert!(matches!(
            parse_csv("a,1\nb,0\n"),
            Err(Error::NonPositiveWeight { index: 1, .. })
        ));
        assert!(matches!(parse_csv("a,x"), Err(Error::Parse(_))));
        assert!(matches!(parse_csv("a,1,2"), Err(Error::Parse(_))));
        assert!(matches!(parse_csv("a,1"), Err(Error::EmptyOrSingleton(1))));
    }

    #[test]
    fn json_input() {
        let pmf = parse_json(r#"{"weights":[1,3],"labels":["x","y"]}"#).unwrap();
        assert_eq!(pmf.probs(), &[0.75, 0.25]);
        assert_eq!(pmf.label_of_sorted(0), "y");
        let unlabeled = parse_json(r#"{"weights":[2,2,4]}"#).unwrap();
        assert_eq!(unlabeled.label_of_sorted(0), "3");
        assert!(parse_json(r#"{"weights":[1,1],"labels":["x"]}"#).is_err());
        assert!(parse_json("[1,2]").is_err());
    }

    #[test]
    fn histogram_matches_independent_count() {
        let data: Vec<u8> = (0..5000u32).map(|i| ((i * i + 7 * i) % 97) as u8).collect();
        let pmf = byte_histogram(&data).unwrap();
        let labels = pmf.labels().unwrap();
        for (i, &p) in pmf.probs().iter().enumerate() {
            let byte: u8 = labels[pmf.perm()[i]].parse().unwrap();
            let count = data.iter().filter(|&&b| b == byte).count();
            assert!((p - count as f64 / data.len() as f64).abs() < 1e-15);
        }
        let distinct = {
            let mut d = data.clone();
            d.sort_unstable();
            d.dedup();
            d.len()
        };
        assert_eq!(pmf.len(), distinct);
    }
}
