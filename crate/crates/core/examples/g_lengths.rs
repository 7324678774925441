//! Searches for the best code that uses at most g distinct lengths, letting
//! the search pick the lengths.

use rlpc::{solve_g_lengths, zipf_pmf};

fn main() -> rlpc::Result<()> {
    let pmf = zipf_pmf(256)?;
    let report = solve_g_lengths(&pmf, 3)?;
    for choice in &report.best_per_g {
        println!(
            "at most {} lengths: {:<10} {:.4} bits/symbol",
            choice.g,
            choice.set.to_string(),
            choice.solution.cost
        );
    }
    println!("{} candidate sets solved", report.candidates_tried);
    Ok(())
}
