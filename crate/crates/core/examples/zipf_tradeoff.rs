//! Zipf source over 4096 symbols: how much compression is lost by using three
//! reserved lengths instead of the thirteen a Huffman code needs.
//!
//!     cargo run --release --example zipf_tradeoff

use std::time::Instant;

use rlpc::{expected_length, huffman, solve_reserved, zipf_pmf, CostFunction, LengthSet};

fn main() -> rlpc::Result<()> {
    let pmf = zipf_pmf(4096)?;
    let h = huffman(&pmf)?;
    let h_cost = expected_length(&pmf, &h)?;
    println!(
        "Huffman: {h_cost:.4} bits/symbol, {} distinct lengths",
        h.distinct()
    );

    for lengths in [vec![5u32, 9, 14], vec![4, 8, 12, 16], vec![6, 12]] {
        let ls = LengthSet::new(lengths)?;
        let start = Instant::now();
        let sol = solve_reserved(&pmf, &ls, &CostFunction::Identity)?;
        println!(
            "{:<12} {:.4} bits/symbol (+{:.2}%), solved in {:.2?}",
            ls.to_string(),
            sol.cost,
            100.0 * (sol.cost / h_cost - 1.0),
            start.elapsed()
        );
    }
    Ok(())
}
