//! Optimal code for the leading digit of Benford-distributed numbers when
//! only lengths 1, 2, 4 and 8 are allowed.
//!
//!     cargo run --example benford_reserved

use rlpc::{benford_pmf, expected_length, huffman, solve_reserved, CostFunction, LengthSet};

fn main() -> rlpc::Result<()> {
    let pmf = benford_pmf();
    let allowed = LengthSet::new([1, 2, 4, 8])?;
    let sol = solve_reserved(&pmf, &allowed, &CostFunction::Identity)?;

    println!("digit  prob     codeword");
    for i in 0..pmf.len() {
        println!(
            "{:>5}  {:.5}  {}",
            pmf.label_of_sorted(i),
            pmf.probs()[i],
            sol.codebook.bitstring(i)
        );
    }
    println!(
        "expected length {:.5} bits, Kraft sum {}",
        sol.cost, sol.kraft
    );

    let h = huffman(&pmf)?;
    println!(
        "Huffman for comparison: {:.5} bits with lengths {:?}",
        expected_length(&pmf, &h)?,
        h.lengths()
    );
    Ok(())
}
