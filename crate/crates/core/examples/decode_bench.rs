//! Decoding speed of a 13-length Huffman code against a 3-length reserved
//! code on the same Zipf stream.
//!
//!     cargo run --release --example decode_bench

use rlpc::codec::tradeoff_table;
use rlpc::{huffman, solve_reserved, zipf_pmf, CostFunction, LengthSet};

fn main() -> rlpc::Result<()> {
    let pmf = zipf_pmf(4096)?;
    let codes = vec![
        ("huffman".to_string(), huffman(&pmf)?),
        (
            "reserved {5,9,14}".to_string(),
            solve_reserved(&pmf, &LengthSet::new([5, 9, 14])?, &CostFunction::Identity)?.lengths,
        ),
    ];
    let rows = tradeoff_table(&pmf, &codes, 1_000_000, 5, 1)?;
    println!(
        "{:<20} {:>7} {:>12} {:>14}",
        "code", "lengths", "bits/symbol", "Msymbols/s"
    );
    for row in rows {
        assert!(row.round_trip_ok);
        println!(
            "{:<20} {:>7} {:>12.4} {:>14.1}",
            row.name,
            row.distinct_lengths,
            row.expected_length,
            row.symbols_per_sec / 1e6
        );
    }
    Ok(())
}
