//! Penalizing long codewords: exponential costs `log2(sum p 2^(t l)) / t` pull
//! the optimal code toward shorter maximum lengths as `t` grows.

use rlpc::{expected_length, solve_reserved, zipf_pmf, CostFunction, LengthSet};

fn main() -> rlpc::Result<()> {
    let pmf = zipf_pmf(64)?;
    let ls = LengthSet::new([2, 4, 6, 8, 10, 12])?;

    println!("t      cost     mean length  longest");
    for t in [0.1, 0.5, 1.0, 2.0, 4.0] {
        let sol = solve_reserved(&pmf, &ls, &CostFunction::exponential(t)?)?;
        println!(
            "{t:<6} {:<8.4} {:<12.4} {}",
            sol.cost,
            expected_length(&pmf, &sol.lengths)?,
            sol.lengths.longest().unwrap()
        );
    }

    // A tabulated cost: lengths past 8 are twice as expensive per bit.
    let table: Vec<f64> = (1..=12)
        .map(|l| {
            if l <= 8 {
                l as f64
            } else {
                8.0 + 2.0 * (l - 8) as f64
            }
        })
        .collect();
    let sol = solve_reserved(&pmf, &ls, &CostFunction::table(table)?)?;
    println!("table  {:.4}, lengths used {}", sol.cost, sol.lambda_used);
    Ok(())
}
