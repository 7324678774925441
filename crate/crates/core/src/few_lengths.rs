//! Best codes using at most `g` distinct codeword lengths, where the lengths
//! themselves are free.
//!
//! Each candidate set of allowed lengths is solved with the reserved-length
//! dynamic program. Let `c = ceil(log2 n)`. A single length must be `c`. With
//! two lengths the shorter one is at most `c - 1` and the longer at most
//! `2c - 1`. For more than two lengths the same gap argument is applied
//! between consecutive lengths: the shortest is at most `c - 1` and no two
//! neighbours are more than `c` apart.

use serde_json::json;

use crate::code_core::{is_feasible, LengthSet};
use crate::distributions::Pmf;
use crate::error::{Error, Result};
use crate::reserved_dp::{solve_reserved, CostFunction, Solution};

/// Winner for one bound `g'` on the number of distinct lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct GChoice {
    pub g: usize,
    pub set: LengthSet,
    pub solution: Solution,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GSearchReport {
    pub g: usize,
    /// Entry `k` holds the best code with at most `k + 1` distinct lengths.
    pub best_per_g: Vec<GChoice>,
    pub candidates_tried: usize,
}

impl GSearchReport {
    pub fn to_json_value(&self) -> serde_json::Value {
        self.best_per_g
            .iter()
            .map(|c| {
                json!({
                    "g": c.g,
                    "set": c.set.lengths(),
                    "lengths": c.solution.lengths.lengths(),
                    "cost": c.solution.cost,
                    "kraft": c.solution.kraft.to_string(),
                })
            })
            .collect()
    }
}

/// `ceil(log2 n)` for `n >= 1`.
pub fn ceil_log2(n: usize) -> u32 {
    usize::BITS - (n.max(1) - 1).leading_zeros()
}

/// Candidate length sets with exactly `g` elements, in lexicographic order.
pub fn candidate_sets(n: usize, g: usize) -> Result<Vec<LengthSet>> {
    if g < 1 {
        return Err(Error::BadParameter("g must be at least 1".into()));
    }
    if n < 2 {
        return Err(Error::EmptyOrSingleton(n));
    }
    let c = ceil_log2(n);
    let mut out = Vec::new();
    match g {
        1 => out.push(LengthSet::new([c])?),
        2 => {
            for shortest in 1..c {
                for longest in shortest + 1..=2 * c - 1 {
                    out.push(LengthSet::new([shortest, longest])?);
                }
            }
        }
        _ => {
            let mut current = Vec::with_capacity(g);
            for shortest in 1..c {
                current.push(shortest);
                extend_with_gaps(&mut current, g, c, &mut out)?;
                current.pop();
            }
        }
    }
    out.retain(|ls| is_feasible(ls, n));
    Ok(out)
}

fn extend_with_gaps(
    current: &mut Vec<u32>,
    g: usize,
    max_gap: u32,
    out: &mut Vec<LengthSet>,
) -> Result<()> {
    if current.len() == g {
        out.push(LengthSet::new(current.iter().copied())?);
        return Ok(());
    }
    let last = *current.last().expect("seeded");
    for gap in 1..=max_gap {
        current.push(last + gap);
        extend_with_gaps(current, g, max_gap, out)?;
        current.pop();
    }
    Ok(())
}

/// Solves every candidate set for each `g' <= g` and keeps the cheapest code
/// per bound. Ties go to the lexicographically smallest length set; a bound
/// with no cheaper candidate inherits the previous winner.
pub fn solve_g_lengths(pmf: &Pmf, g: usize) -> Result<GSearchReport> {
    if g < 1 {
        return Err(Error::BadParameter("g must be at least 1".into()));
    }
    let mut best_per_g: Vec<GChoice> = Vec::with_capacity(g);
    let mut tried = 0;
    for k in 1..=g {
        let mut winner: Option<GChoice> = best_per_g.last().cloned();
        for set in candidate_sets(pmf.len(), k)? {
            tried += 1;
            let solution = solve_reserved(pmf, &set, &CostFunction::Identity)?;
            let better = match &winner {
                None => true,
                Some(w) => {
                    solution.cost < w.solution.cost
                        || (solution.cost == w.solution.cost && set < w.set)
                }
            };
            if better {
                winner = Some(GChoice {
                    g: k,
                    set,
                    solution,
                });
            }
        }
        let mut winner = winner.expect("single-length candidate always exists");
        winner.g = k;
        best_per_g.push(winner);
    }
    Ok(GSearchReport {
        g,
        best_per_g,
        candidates_tried: tried,
    })
}
