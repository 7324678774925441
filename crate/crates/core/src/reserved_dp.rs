//! Optimal prefix codes with codeword lengths restricted to a set of allowed
//! lengths.
//!
//! The code tree is grown one allowed level at a time. A partial tree at
//! level `lambda_m` is summarized by `(upsilon, eta)`: `upsilon` symbols
//! already have codewords no longer than `lambda_m`, and `eta` nodes at
//! depth `lambda_m` are still internal (so the partial Kraft sum is
//! `1 - eta * 2^-lambda_m`). Descending to the next allowed level multiplies
//! the open nodes by `2^(lambda_{m+1} - lambda_m)`; some of them become
//! leaves, the rest stay open. Each state keeps its cheapest cost
//!
//! ```text
//! L[m, upsilon, eta] = sum_{i <= upsilon} p_i l_i + lambda_m * sum_{i > upsilon} p_i
//! ```
//!
//! and the `upsilon` it came from, which is enough to rebuild the lengths.
//! A tree is finished as soon as the open nodes at a level can hold every
//! remaining symbol; the cheapest finished tree over all levels wins.
//!
//! Only states with `upsilon <= n - 2` and `2 eta <= n - upsilon` can lie on
//! an optimal tree, so the grid for each level is a triangle of about `n^2/4`
//! cells, and one solve costs `O(|lambda| n^3)` time.
//!
//! Replacing the per-level depth increment `lambda_m - lambda_{m-1}` by
//! `phi(lambda_m) - phi(lambda_{m-1})` minimizes the quasiarithmetic cost
//! `phi^-1(sum p_i phi(l_i))` for any strictly increasing `phi`.

use std::io::{self, Write};

use serde_json::json;

use crate::code_core::{
    assign_canonical, kraft_sum, truncate_length_set, Codebook, Dyadic, LengthSet, LengthVector,
};
use crate::distributions::{cdf, Pmf};
use crate::error::{Error, Result};

/// Strictly increasing cost applied to codeword lengths.
#[derive(Debug, Clone, Default, PartialEq)]
pub enum CostFunction {
    /// `phi(l) = l`: plain expected length.
    #[default]
    Identity,
    /// `phi(l) = 2^(t l)` with `t > 0`.
    Exponential { t: f64 },
    /// `phi(l) = values[l - 1]` for `l >= 1`, and `phi(0) = 0`.
    Table { values: Vec<f64> },
}

/// Builds a cost function from a kind name and its parameters:
/// `identity` (no parameters), `exp` (one parameter `t > 0`) or `table`
/// (one value per length starting at 1).
pub fn make_cost_function(kind: &str, params: &[f64]) -> Result<CostFunction> {
    match (kind, params) {
        ("identity", []) => Ok(CostFunction::Identity),
        ("exp" | "exponential", &[t]) => CostFunction::exponential(t),
        ("table", values) => CostFunction::table(values.to_vec()),
        _ => Err(Error::BadParameter(format!(
            "unknown cost function {kind:?} with {} parameter(s)",
            params.len()
        ))),
    }
}

impl CostFunction {
    pub fn exponential(t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::BadParameter(format!(
                "exponential rate must be > 0, got {t}"
            )));
        }
        Ok(CostFunction::Exponential { t })
    }

    pub fn table(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::BadParameter("empty cost table".into()));
        }
        let mut prev = 0.0;
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v <= prev {
                return Err(Error::NotIncreasing(i + 1));
            }
            prev = v;
        }
        Ok(CostFunction::Table { values })
    }

    pub fn phi(&self, l: u32) -> f64 {
        match self {
            CostFunction::Identity => l as f64,
            CostFunction::Exponential { t } => (t * l as f64).exp2(),
            CostFunction::Table { values } => match l {
                0 => 0.0,
                l => values.get(l as usize - 1).copied().unwrap_or(f64::NAN),
            },
        }
    }

    pub fn phi_inverse(&self, x: f64) -> f64 {
        match self {
            CostFunction::Identity => x,
            CostFunction::Exponential { t } => x.log2() / t,
            CostFunction::Table { values } => {
                // piecewise linear through (0, 0), (1, v1), (2, v2), ...
                let mut lo = (0.0, 0.0);
                for (i, &v) in values.iter().enumerate() {
                    let hi = ((i + 1) as f64, v);
                    if x <= v || i + 1 == values.len() {
                        if x == v {
                            return hi.0;
                        }
                        return lo.0 + (x - lo.1) * (hi.0 - lo.0) / (hi.1 - lo.1);
                    }
                    lo = hi;
                }
                unreachable!("table is nonempty")
            }
        }
    }

    /// `phi^-1(sum p_i phi(l_i))`.
    pub fn evaluate(&self, probs: &[f64], lengths: &[u32]) -> f64 {
        let sum: f64 = probs
            .iter()
            .zip(lengths)
            .map(|(p, &l)| p * self.phi(l))
            .sum();
        self.phi_inverse(sum)
    }

    pub fn name(&self) -> String {
        match self {
            CostFunction::Identity => "identity".into(),
            CostFunction::Exponential { t } => format!("exp:{t}"),
            CostFunction::Table { values } => format!("table[{}]", values.len()),
        }
    }

    /// Checks that `phi` is finite, strictly increasing and invertible on
    /// the lengths of `ls`.
    pub fn validate_for(&self, ls: &LengthSet) -> Result<()> {
        let mut prev = self.phi(0);
        for &l in ls.lengths() {
            let v = self.phi(l);
            if !v.is_finite() {
                return Err(Error::BadParameter(format!(
                    "{} is not finite at length {l}",
                    self.name()
                )));
            }
            if v <= prev {
                return Err(Error::NotIncreasing(l as usize));
            }
            if (self.phi_inverse(v) - l as f64).abs() > 1e-9 {
                return Err(Error::BadParameter(format!(
                    "{} does not invert at length {l}",
                    self.name()
                )));
            }
            prev = v;
        }
        Ok(())
    }
}

const NO_PRED: u32 = u32::MAX;

/// Cell layout for one level: row `upsilon` holds `eta` in
/// `0..=(n - upsilon) / 2`.
#[derive(Debug, Clone)]
struct Triangle {
    n: usize,
    offsets: Vec<usize>,
}

impl Triangle {
    fn new(n: usize) -> Self {
        let mut offsets = Vec::with_capacity(n);
        let mut acc = 0;
        for up in 0..=n - 2 {
            offsets.push(acc);
            acc += (n - up) / 2 + 1;
        }
        offsets.push(acc);
        Triangle { n, offsets }
    }

    fn cells(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    fn row_width(&self, up: usize) -> usize {
        self.offsets[up + 1] - self.offsets[up]
    }

    fn index(&self, up: usize, eta: u64) -> Option<usize> {
        if up > self.n - 2 || eta >= self.row_width(up) as u64 {
            return None;
        }
        Some(self.offsets[up] + eta as usize)
    }
}

/// Cheapest finished tree seen by the sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FinishedTree {
    /// Accumulated `sum p_i (phi(l_i) - phi(0))`.
    pub cost: f64,
    /// Level index (1-based) of the longest codewords.
    pub level: usize,
    /// Nodes left unused on that level (saturates for very deep levels).
    pub leftover: u64,
    /// `upsilon` of the partial tree this one was finished from.
    pub pred_upsilon: usize,
    /// `eta` of the partial tree this one was finished from.
    pub pred_eta: u64,
}

/// Cost and predecessor tables from one sweep.
///
/// Level `m` (1-based) corresponds to `lambdas()[m - 1]`; level 0 is the
/// bare root. Partial states exist for levels `0..lambdas().len()`; the last
/// level only finishes trees.
#[derive(Debug, Clone)]
pub struct CostGrid {
    n: usize,
    lambdas: Vec<u32>,
    shape: Triangle,
    costs: Vec<Vec<f64>>,
    preds: Vec<Vec<u32>>,
    best: Option<FinishedTree>,
}

impl CostGrid {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The (truncated) allowed lengths the sweep ran over.
    pub fn lambdas(&self) -> &[u32] {
        &self.lambdas
    }

    pub fn levels(&self) -> usize {
        self.lambdas.len()
    }

    fn lambda(&self, m: usize) -> u32 {
        if m == 0 {
            0
        } else {
            self.lambdas[m - 1]
        }
    }

    pub fn best(&self) -> Option<&FinishedTree> {
        self.best.as_ref()
    }

    pub fn has_costs(&self) -> bool {
        !self.costs.is_empty()
    }

    /// `L[m, upsilon, eta]`, infinite when unreachable. Requires a grid built
    /// by [`dp_grids`].
    pub fn cost(&self, m: usize, upsilon: usize, eta: u64) -> f64 {
        assert!(self.has_costs(), "cost tables were not retained");
        match (self.costs.get(m), self.shape.index(upsilon, eta)) {
            (Some(level), Some(i)) => level[i],
            _ => f64::INFINITY,
        }
    }

    /// `upsilon` at the previous level for a reachable partial state.
    pub fn predecessor(&self, m: usize, upsilon: usize, eta: u64) -> Option<usize> {
        let i = self.shape.index(upsilon, eta)?;
        match self.preds.get(m)?.get(i) {
            Some(&p) if p != NO_PRED => Some(p as usize),
            _ => None,
        }
    }

    /// Finite cells of level `m` as `(upsilon, eta, cost, pred_upsilon)`,
    /// ordered by `upsilon` then `eta`.
    pub fn finite_states(&self, m: usize) -> Vec<(usize, u64, f64, Option<usize>)> {
        let mut out = Vec::new();
        if m >= self.levels() {
            return out;
        }
        for up in 0..=self.n - 2 {
            for eta in 0..self.shape.row_width(up) as u64 {
                let c = self.cost(m, up, eta);
                if c.is_finite() {
                    out.push((up, eta, c, self.predecessor(m, up, eta)));
                }
            }
        }
        out
    }

    /// Writes finite cells as CSV rows `m,upsilon,eta,L,pred_upsilon`.
    pub fn write_csv(&self, mut w: impl Write) -> io::Result<()> {
        writeln!(w, "m,upsilon,eta,L,pred_upsilon")?;
        for m in 0..self.levels() {
            for (up, eta, c, pred) in self.finite_states(m) {
                let pred = pred.map(|p| p.to_string()).unwrap_or_default();
                writeln!(w, "{m},{up},{eta},{c},{pred}")?;
            }
        }
        Ok(())
    }
}

fn shl_saturating(x: u64, s: u32) -> u64 {
    if x == 0 {
        0
    } else if s > x.leading_zeros() {
        u64::MAX
    } else {
        x << s
    }
}

fn sweep(pmf: &Pmf, ls: &LengthSet, cost: &CostFunction, keep_costs: bool) -> Result<CostGrid> {
    let n = pmf.len();
    if n < 2 {
        return Err(Error::EmptyOrSingleton(n));
    }
    let ls = truncate_length_set(ls, n)?;
    cost.validate_for(&ls)?;
    let lambdas = ls.lengths().to_vec();
    let levels = lambdas.len();
    let shape = Triangle::new(n);
    let cumulative = cdf(pmf);
    let tails: Vec<f64> = (0..=n - 2).map(|up| cumulative.tail(up)).collect();
    let nn = n as u64;
    let max_up = n - 2;

    let mut phis = Vec::with_capacity(levels + 1);
    phis.push(cost.phi(0));
    phis.extend(lambdas.iter().map(|&l| cost.phi(l)));

    let mut prev = vec![f64::INFINITY; shape.cells()];
    prev[shape.index(0, 1).expect("root state")] = 0.0;
    let mut costs = Vec::new();
    let mut preds = vec![Vec::new()];
    let mut best: Option<FinishedTree> = None;

    for m in 1..=levels {
        let delta = lambdas[m - 1] - if m == 1 { 0 } else { lambdas[m - 2] };
        let step = phis[m] - phis[m - 1];
        let partial = m < levels;
        let (mut cur, mut pred) = if partial {
            (
                vec![f64::INFINITY; shape.cells()],
                vec![NO_PRED; shape.cells()],
            )
        } else {
            (Vec::new(), Vec::new())
        };

        for (up, &tail) in tails.iter().enumerate().take(max_up + 1) {
            let row = shape.offsets[up];
            for eta in 0..shape.row_width(up) {
                let base = prev[row + eta];
                if base == f64::INFINITY {
                    continue;
                }
                let open = shl_saturating(eta as u64, delta);
                let next = base + step * tail;
                let reach = (up as u64).saturating_add(open);

                if partial {
                    let lo = (up as u64).max(reach.saturating_mul(2).saturating_sub(nn));
                    let hi = reach.min(max_up as u64);
                    for up2 in lo..=hi {
                        let up2 = up2 as usize;
                        let eta2 = open - (up2 - up) as u64;
                        let i = shape
                            .index(up2, eta2)
                            .expect("transition stays inside the triangle");
                        if cur[i] > next {
                            cur[i] = next;
                            pred[i] = up as u32;
                        }
                    }
                }

                if reach >= nn && best.is_none_or(|b| next < b.cost) {
                    best = Some(FinishedTree {
                        cost: next,
                        level: m,
                        leftover: reach - nn,
                        pred_upsilon: up,
                        pred_eta: eta as u64,
                    });
                }
            }
        }

        if keep_costs {
            costs.push(std::mem::replace(&mut prev, cur));
        } else {
            prev = cur;
        }
        if partial {
            preds.push(pred);
        }
    }

    if best.is_none() {
        return Err(Error::Infeasible {
            n,
            max_length: ls.longest(),
        });
    }
    Ok(CostGrid {
        n,
        lambdas,
        shape,
        costs,
        preds,
        best,
    })
}

/// Runs the level sweep and keeps every cost table.
///
/// `ls` is first cut down with [`truncate_length_set`], so any feasible set
/// may be passed.
pub fn dp_grids(pmf: &Pmf, ls: &LengthSet, cost: &CostFunction) -> Result<CostGrid> {
    sweep(pmf, ls, cost, true)
}

/// Appends the codeword lengths of partial state `(m, up, eta)` (deepest
/// first) by following the predecessor table back to the root.
fn walk_back(
    grid: &CostGrid,
    mut m: usize,
    mut up: usize,
    mut eta: u64,
    on_optimal_tree: bool,
    out: &mut Vec<u32>,
) -> Result<()> {
    let corrupt = |what: String| Error::CorruptGrid(what);
    while m > 0 {
        let pred = grid
            .predecessor(m, up, eta)
            .ok_or_else(|| corrupt(format!("no predecessor for ({m}, {up}, {eta})")))?;
        if pred > up {
            return Err(corrupt(format!(
                "predecessor {pred} above {up} at level {m}"
            )));
        }
        let leaves = (up - pred) as u64;
        out.extend(std::iter::repeat_n(grid.lambda(m), leaves as usize));
        let delta = grid.lambda(m) - grid.lambda(m - 1);
        let open = eta + leaves;
        let prev_eta = if delta >= 64 { 0 } else { open >> delta };
        if shl_saturating(prev_eta, delta) != open {
            return Err(corrupt(format!(
                "{open} open nodes at level {m} not a multiple of 2^{delta}"
            )));
        }
        debug_assert!(
            !on_optimal_tree
                || !tightly_suboptimal(
                    grid.n,
                    up,
                    eta,
                    grid.lambdas.get(m).map(|&l| l - grid.lambda(m))
                ),
            "state ({m}, {up}, {eta}) on the chosen tree breaks the expansion bound"
        );
        m -= 1;
        up = pred;
        eta = prev_eta;
    }
    if (up, eta) != (0, 1) {
        return Err(corrupt(format!(
            "walk ended at ({up}, {eta}), not the root"
        )));
    }
    Ok(())
}

/// True when an optimal tree could not contain partial state `(up, eta)`
/// followed by a level `delta` deeper: `eta 2^delta - (2^delta - 2) > n - up`.
fn tightly_suboptimal(n: usize, up: usize, eta: u64, delta: Option<u32>) -> bool {
    let Some(delta) = delta else { return false };
    if eta <= 1 {
        return false;
    }
    let room = (n - up) as u128;
    match (eta as u128 - 1).checked_mul(1u128.checked_shl(delta).unwrap_or(u128::MAX)) {
        Some(v) => v.saturating_add(2) > room,
        None => true,
    }
}

/// Codeword lengths (nondecreasing) of the cheapest finished tree.
pub fn backtrack(grid: &CostGrid) -> Result<LengthVector> {
    let best = grid
        .best
        .ok_or_else(|| Error::CorruptGrid("no finished tree recorded".into()))?;
    let n = grid.n;
    let mut lengths = Vec::with_capacity(n);
    lengths.extend(std::iter::repeat_n(
        grid.lambda(best.level),
        n - best.pred_upsilon,
    ));
    walk_back(
        grid,
        best.level - 1,
        best.pred_upsilon,
        best.pred_eta,
        true,
        &mut lengths,
    )?;
    lengths.reverse();
    LengthVector::new(lengths)
}

/// Codeword lengths assigned so far by the partial state `(m, upsilon, eta)`.
pub fn partial_lengths(grid: &CostGrid, m: usize, upsilon: usize, eta: u64) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    walk_back(grid, m, upsilon, eta, false, &mut out)?;
    out.reverse();
    Ok(out)
}

/// An optimal reserved-length code.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub lengths: LengthVector,
    pub codebook: Codebook,
    /// `phi^-1(sum p_i phi(l_i))`; the expected length for the identity.
    pub cost: f64,
    pub lambda_used: LengthSet,
    pub kraft: Dyadic,
}

impl Solution {
    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "lambda_used": self.lambda_used.lengths(),
            "lengths": self.lengths.lengths(),
            "cost": self.cost,
            "kraft": self.kraft.to_string(),
            "codebook": self.codebook.to_json_value(),
        })
    }
}

/// Finds lengths drawn from `ls` minimizing `phi^-1(sum p_i phi(l_i))`.
///
/// Among equally cheap codes the one with the shortest longest codeword is
/// returned: cheaper trees replace the incumbent only on strict improvement,
/// and finished trees are met in order of increasing depth.
pub fn solve_reserved(pmf: &Pmf, ls: &LengthSet, cost: &CostFunction) -> Result<Solution> {
    let grid = sweep(pmf, ls, cost, false)?;
    let lengths = backtrack(&grid)?;
    let codebook = assign_canonical(&lengths)?;
    let value = cost.evaluate(pmf.probs(), lengths.lengths());
    debug_assert!({
        let dp = cost.phi_inverse(grid.best.unwrap().cost + cost.phi(0));
        (dp - value).abs() <= 1e-9 * value.abs().max(1.0)
    });
    Ok(Solution {
        kraft: kraft_sum(&lengths),
        lengths,
        codebook,
        cost: value,
        lambda_used: LengthSet::new(grid.lambdas.iter().copied())?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{benford_pmf, make_pmf};

    fn set(v: &[u32]) -> LengthSet {
        LengthSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn triangle_layout() {
        let t = Triangle::new(9);
        // rows upsilon = 0..=7 with widths 5,5,4,4,3,3,2,2
        assert_eq!(t.cells(), 28);
        assert_eq!(t.index(0, 4), Some(4));
        assert_eq!(t.index(0, 5), None);
        assert_eq!(t.index(7, 0), Some(26));
        assert_eq!(t.index(7, 1), Some(27));
        assert_eq!(t.index(7, 2), None);
        assert_eq!(t.index(8, 0), None);
        let t2 = Triangle::new(2);
        assert_eq!(t2.cells(), 2);
        assert_eq!(t2.index(0, 1), Some(1));
    }

    #[test]
    fn saturating_shift() {
        assert_eq!(shl_saturating(0, 200), 0);
        assert_eq!(shl_saturating(3, 2), 12);
        assert_eq!(shl_saturating(1, 63), 1 << 63);
        assert_eq!(shl_saturating(1, 64), u64::MAX);
        assert_eq!(shl_saturating(2, 63), u64::MAX);
    }

    #[test]
    fn benford_first_two_levels() {
        let grid = dp_grids(&benford_pmf(), &set(&[1, 2, 4, 8]), &CostFunction::Identity).unwrap();
        let level1 = grid.finite_states(1);
        assert_eq!(level1.len(), 3);
        for (up, eta, c, pred) in level1 {
            assert_eq!(up as u64 + eta, 2);
            assert!((c - 1.0).abs() < 1e-12);
            assert_eq!(pred, Some(0));
        }
        assert!((grid.cost(2, 2, 0) - 1.523).abs() < 5e-4);
        assert_eq!(grid.cost(2, 2, 2), 2.0);
        assert_eq!(grid.cost(2, 4, 0), 2.0);

        let best = grid.best().unwrap();
        assert_eq!(best.level, 3);
        assert_eq!((best.pred_upsilon, best.pred_eta), (2, 2));
        assert_eq!(best.leftover, 1);
        assert!((best.cost - 3.046).abs() < 5e-4);
        assert_eq!(
            backtrack(&grid).unwrap().lengths(),
            &[2, 2, 4, 4, 4, 4, 4, 4, 4]
        );
    }

    #[test]
    fn degenerate_three_symbols() {
        let u = make_pmf(&[1.0; 3], true).unwrap();
        let sol = solve_reserved(&u, &set(&[1, 3]), &CostFunction::Identity).unwrap();
        assert_eq!(sol.lengths.lengths(), &[1, 3, 3]);
        assert_eq!(sol.kraft.to_string(), "3/2^2");
    }

    #[test]
    fn single_allowed_length() {
        let u = make_pmf(&[1.0; 4], true).unwrap();
        let sol = solve_reserved(&u, &set(&[2]), &CostFunction::Identity).unwrap();
        assert_eq!(sol.lengths.lengths(), &[2, 2, 2, 2]);
        assert_eq!(sol.cost, 2.0);
        assert!(sol.kraft.is_one());
    }

    #[test]
    fn two_symbols() {
        let p = make_pmf(&[0.9, 0.1], false).unwrap();
        let sol = solve_reserved(&p, &set(&[1, 2, 3]), &CostFunction::Identity).unwrap();
        assert_eq!(sol.lengths.lengths(), &[1, 1]);
        assert_eq!(sol.lambda_used.lengths(), &[1]);
        let sol = solve_reserved(&p, &set(&[5, 9]), &CostFunction::Identity).unwrap();
        assert_eq!(sol.lengths.lengths(), &[5, 5]);
    }

    #[test]
    fn deep_allowed_length_is_handled() {
        // lambda_inf = 1000: the DP must not overflow when expanding to it
        let u = make_pmf(&[1.0; 3], true).unwrap();
        let grid = dp_grids(&u, &set(&[1, 1000, 2000]), &CostFunction::Identity).unwrap();
        assert_eq!(grid.lambdas(), &[1, 1000]);
        assert_eq!(backtrack(&grid).unwrap().lengths(), &[1, 1000, 1000]);
        assert!(matches!(
            solve_reserved(&u, &set(&[1, 1000]), &CostFunction::Identity),
            Err(Error::CodewordTooLong(1000))
        ));
    }

    #[test]
    fn infeasible_and_degenerate_inputs() {
        let b = benford_pmf();
        assert!(matches!(
            solve_reserved(&b, &set(&[1, 2]), &CostFunction::Identity),
            Err(Error::Infeasible { n: 9, .. })
        ));
    }

    #[test]
    fn partial_state_lengths() {
        let grid = dp_grids(&benford_pmf(), &set(&[1, 2, 4, 8]), &CostFunction::Identity).unwrap();
        assert_eq!(partial_lengths(&grid, 2, 2, 2).unwrap(), vec![2, 2]);
        assert_eq!(partial_lengths(&grid, 2, 3, 0).unwrap(), vec![1, 2, 2]);
        assert_eq!(partial_lengths(&grid, 0, 0, 1).unwrap(), Vec::<u32>::new());
        assert!(matches!(
            partial_lengths(&grid, 2, 7, 0),
            Err(Error::CorruptGrid(_))
        ));
    }

    #[test]
    fn grid_csv_dump() {
        let grid = dp_grids(&benford_pmf(), &set(&[1, 2, 4, 8]), &CostFunction::Identity).unwrap();
        let mut buf = Vec::new();
        grid.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("m,upsilon,eta,L,pred_upsilon"));
        assert_eq!(lines.next(), Some("0,0,1,0,"));
        assert_eq!(lines.next(), Some("1,0,2,1,0"));
        assert_eq!(text.lines().filter(|l| l.starts_with("2,")).count(), 9);
    }

    #[test]
    fn cost_function_construction() {
        assert_eq!(
            make_cost_function("identity", &[]).unwrap(),
            CostFunction::Identity
        );
        let e = make_cost_function("exp", &[1.0]).unwrap();
        assert_eq!(e.phi(4), 16.0);
        assert_eq!(e.phi(0), 1.0);
        assert!((e.phi_inverse(e.phi(7)) - 7.0).abs() < 1e-12);
        assert!(make_cost_function("exp", &[0.0]).is_err());
        assert!(make_cost_function("exp", &[]).is_err());
        assert!(make_cost_function("cubic", &[]).is_err());

        let t = make_cost_function("table", &[1.0, 2.0, 5.0, 6.0]).unwrap();
        assert_eq!(t.phi(3), 5.0);
        for l in 0..=4 {
            assert_eq!(t.phi_inverse(t.phi(l)), l as f64);
        }
        assert!((t.phi_inverse(3.5) - 2.5).abs() < 1e-12);
        assert!(matches!(
            make_cost_function("table", &[1.0, 2.0, 2.0, 6.0]),
            Err(Error::NotIncreasing(3))
        ));
        assert!(matches!(
            make_cost_function("table", &[0.0, 1.0]),
            Err(Error::NotIncreasing(1))
        ));
        assert!(t.validate_for(&set(&[1, 4])).is_ok());
        assert!(t.validate_for(&set(&[1, 5])).is_err());
        assert!(CostFunction::exponential(2.0)
            .unwrap()
            .validate_for(&set(&[600]))
            .is_err());
    }

    #[test]
    fn identity_matches_default_and_expected_length() {
        let b = benford_pmf();
        let ls = set(&[1, 2, 4, 8]);
        let a = solve_reserved(&b, &ls, &CostFunction::default()).unwrap();
        let i = solve_reserved(&b, &ls, &make_cost_function("identity", &[]).unwrap()).unwrap();
        assert_eq!(a, i);
        let e = crate::code_core::expected_length(&b, &a.lengths).unwrap();
        assert_eq!(a.cost, e);
    }

    #[test]
    fn table_cost_equal_to_identity_gives_same_code() {
        let b = benford_pmf();
        let ls = set(&[1, 2, 4, 8]);
        let table = CostFunction::table((1..=8).map(f64::from).collect()).unwrap();
        let a = solve_reserved(&b, &ls, &CostFunction::Identity).unwrap();
        let t = solve_reserved(&b, &ls, &table).unwrap();
        assert_eq!(a.lengths, t.lengths);
        assert!((a.cost - t.cost).abs() < 1e-12);
    }

    #[test]
    fn exponential_cost_prefers_flatter_codes() {
        // steep exponential costs punish long codewords, pushing toward
        // the balanced length-4 code
        let b = benford_pmf();
        let ls = set(&[1, 2, 4, 8]);
        let steep = solve_reserved(&b, &ls, &CostFunction::exponential(8.0).unwrap()).unwrap();
        assert!(steep.lengths.longest().unwrap() <= 4);
        let plain = solve_reserved(&b, &ls, &CostFunction::Identity).unwrap();
        assert!(steep.cost >= plain.cost);
    }

    #[test]
    fn solution_json_shape() {
        let u = make_pmf(&[1.0; 3], true).unwrap();
        let sol = solve_reserved(&u, &set(&[1, 3]), &CostFunction::Identity).unwrap();
        let v = sol.to_json_value();
        assert_eq!(v["lambda_used"], json!([1, 3]));
        assert_eq!(v["lengths"], json!([1, 3, 3]));
        assert_eq!(v["kraft"], json!("3/2^2"));
        assert_eq!(v["codebook"]["codewords"], json!(["0", "100", "101"]));
    }
}
