//! Reference solvers used to validate the dynamic program: exhaustive
//! enumeration of length vectors and plain Huffman coding.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::code_core::{is_feasible, LengthSet, LengthVector};
use crate::distributions::Pmf;
use crate::error::{Error, Result};
use crate::reserved_dp::CostFunction;

/// Largest alphabet [`brute_force`] accepts.
pub const MAX_ORACLE_SYMBOLS: usize = 16;

/// Two costs closer than this are treated as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub best_cost: f64,
    /// Every cost-optimal nondecreasing length vector, in lexicographic order.
    pub optimal_vectors: Vec<LengthVector>,
    /// Number of complete Kraft-feasible vectors evaluated.
    pub count_enumerated: u64,
}

impl OracleResult {
    /// Smallest maximum codeword length among the optimal vectors.
    pub fn min_max_length(&self) -> u32 {
        self.optimal_vectors
            .iter()
            .filter_map(|v| v.longest())
            .min()
            .expect("at least one optimum")
    }
}

struct Search<'a> {
    probs: &'a [f64],
    lambdas: &'a [u32],
    phis: Vec<f64>,
    cost: &'a CostFunction,
    /// Kraft sums are integers over 2^top.
    top: u32,
    current: Vec<u32>,
    best: f64,
    optima: Vec<(f64, Vec<u32>)>,
    count: u64,
}

impl Search<'_> {
    fn run(&mut self, start: usize, kraft: u128, acc: f64) {
        let i = self.current.len();
        let n = self.probs.len();
        if i == n {
            self.count += 1;
            let c = self.cost.phi_inverse(acc);
            if c < self.best - TIE_TOLERANCE {
                self.best = c;
                self.optima.retain(|(v, _)| *v <= c + TIE_TOLERANCE);
            } else if c < self.best {
                self.best = c;
            }
            if c <= self.best + TIE_TOLERANCE {
                self.optima.push((c, self.current.clone()));
            }
            return;
        }
        let full = 1u128 << self.top;
        let remaining = (n - i) as u128;
        for k in start..self.lambdas.len() {
            let l = self.lambdas[k];
            let unit = 1u128 << (self.top - l);
            // every later codeword needs at least the smallest unit, 2^-top
            if kraft + unit + (remaining - 1) > full {
                continue;
            }
            self.current.push(l);
            self.run(k, kraft + unit, acc + self.probs[i] * self.phis[k]);
            self.current.pop();
        }
    }
}

/// Enumerates every nondecreasing vector over `ls` with Kraft sum at most 1
/// and returns all minimizers of `phi^-1(sum p_i phi(l_i))`.
pub fn brute_force(pmf: &Pmf, ls: &LengthSet, cost: &CostFunction) -> Result<OracleResult> {
    let n = pmf.len();
    if n > MAX_ORACLE_SYMBOLS {
        return Err(Error::TooLarge(format!(
            "{n} symbols (limit {MAX_ORACLE_SYMBOLS})"
        )));
    }
    if !is_feasible(ls, n) {
        return Err(Error::Infeasible {
            n,
            max_length: ls.longest(),
        });
    }
    if ls.longest() > 120 {
        return Err(Error::TooLarge(format!(
            "length {} (limit 120)",
            ls.longest()
        )));
    }
    let mut search = Search {
        probs: pmf.probs(),
        lambdas: ls.lengths(),
        phis: ls.lengths().iter().map(|&l| cost.phi(l)).collect(),
        cost,
        top: ls.longest(),
        current: Vec::with_capacity(n),
        best: f64::INFINITY,
        optima: Vec::new(),
        count: 0,
    };
    search.run(0, 0, 0.0);
    let best = search.best;
    let mut optimal: Vec<LengthVector> = search
        .optima
        .into_iter()
        .filter(|(c, _)| *c <= best + TIE_TOLERANCE)
        .map(|(_, v)| LengthVector::new(v))
        .collect::<Result<_>>()?;
    optimal.sort();
    Ok(OracleResult {
        best_cost: best,
        optimal_vectors: optimal,
        count_enumerated: search.count,
    })
}

#[derive(PartialEq)]
struct Node {
    weight: f64,
    id: usize,
}

impl Eq for Node {}

impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .total_cmp(&other.weight)
            .then(self.id.cmp(&other.id))
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Huffman code lengths, nondecreasing to match the sorted pmf.
///
/// Equal weights merge lowest node id first; leaves take ids `0..n` and
/// merged nodes follow in creation order.
pub fn huffman(pmf: &Pmf) -> Result<LengthVector> {
    let n = pmf.len();
    if n < 2 {
        return Err(Error::EmptyOrSingleton(n));
    }
    let mut parent = vec![usize::MAX; 2 * n - 1];
    let mut heap: BinaryHeap<Reverse<Node>> = pmf
        .probs()
        .iter()
        .enumerate()
        .map(|(id, &weight)| Reverse(Node { weight, id }))
        .collect();
    let mut next = n;
    while heap.len() > 1 {
        let Reverse(a) = heap.pop().unwrap();
        let Reverse(b) = heap.pop().unwrap();
        parent[a.id] = next;
        parent[b.id] = next;
        heap.push(Reverse(Node {
            weight: a.weight + b.weight,
            id: next,
        }));
        next += 1;
    }
    // parents always have larger ids, so one reverse pass fills all depths
    let mut depth = vec![0u32; 2 * n - 1];
    for id in (0..2 * n - 2).rev() {
        depth[id] = depth[parent[id]] + 1;
    }
    let mut lengths = depth[..n].to_vec();
    lengths.sort_unstable();
    LengthVector::new(lengths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code_core::{expected_length, kraft_sum};
    use crate::distributions::{benford_pmf, make_pmf};

    fn set(v: &[u32]) -> LengthSet {
        LengthSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn three_symbols_one_or_three() {
        let u = make_pmf(&[1.0; 3], true).unwrap();
        let r = brute_force(&u, &set(&[1, 3]), &CostFunction::Identity).unwrap();
        assert_eq!(r.optimal_vectors.len(), 1);
        assert_eq!(r.optimal_vectors[0].lengths(), &[1, 3, 3]);
        assert!((r.best_cost - 7.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn five_uniform_one_or_four() {
        let u = make_pmf(&[1.0; 5], true).unwrap();
        let r = brute_force(&u, &set(&[1, 4]), &CostFunction::Identity).unwrap();
        assert_eq!(r.optimal_vectors[0].lengths(), &[1, 4, 4, 4, 4]);
        assert!((r.best_cost - 3.4).abs() < 1e-12);
        // (1,4,4,4,4) and (4,4,4,4,4)
        assert_eq!(r.count_enumerated, 2);
    }

    #[test]
    fn four_symbols_up_to_three() {
        let p = make_pmf(&[0.5, 0.2, 0.15, 0.15], false).unwrap();
        let r = brute_force(&p, &set(&[1, 2, 3]), &CostFunction::Identity).unwrap();
        assert_eq!(r.optimal_vectors.len(), 1);
        assert_eq!(r.optimal_vectors[0].lengths(), &[1, 2, 3, 3]);
        assert!((r.best_cost - 1.8).abs() < 1e-12);
        // (1,2,3,3), (1,3,3,3), (2,2,2,2), (2,2,2,3), (2,2,3,3), (2,3,3,3), (3,3,3,3)
        assert_eq!(r.count_enumerated, 7);
    }

    #[test]
    fn keeps_every_tie() {
        // p1 = p3 + p4, so (1,2,3,3) and (2,2,2,2) cost the same
        let p = make_pmf(&[0.375, 0.25, 0.1875, 0.1875], false).unwrap();
        let r = brute_force(&p, &set(&[1, 2, 3]), &CostFunction::Identity).unwrap();
        let found: Vec<&[u32]> = r.optimal_vectors.iter().map(|v| v.lengths()).collect();
        assert_eq!(found, vec![&[1, 2, 3, 3][..], &[2, 2, 2, 2][..]]);
        assert_eq!(r.best_cost, 2.0);
        assert_eq!(r.min_max_length(), 2);
    }

    #[test]
    fn guards() {
        let big = make_pmf(&[1.0; 17], true).unwrap();
        assert!(matches!(
            brute_force(&big, &set(&[5]), &CostFunction::Identity),
            Err(Error::TooLarge(_))
        ));
        let b = benford_pmf();
        assert!(matches!(
            brute_force(&b, &set(&[1, 2]), &CostFunction::Identity),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn huffman_examples() {
        let u = make_pmf(&[1.0; 4], true).unwrap();
        assert_eq!(huffman(&u).unwrap().lengths(), &[2, 2, 2, 2]);
        let b = benford_pmf();
        let h = huffman(&b).unwrap();
        assert!(kraft_sum(&h).is_one());
        let e = expected_length(&b, &h).unwrap();
        assert!((e - 2.92).abs() < 0.01, "{e}");
        let single = make_pmf(&[1.0, 1.0], true).unwrap();
        assert_eq!(huffman(&single).unwrap().lengths(), &[1, 1]);
    }
}
