//! Encodes a sampled stream with a reserved-length code, stores it in an
//! RLPC container file and reads it back.

use rlpc::codec::sample_symbols;
use rlpc::{benford_pmf, solve_reserved, Container, CostFunction, LengthSet};

fn main() -> rlpc::Result<()> {
    let pmf = benford_pmf();
    let sol = solve_reserved(
        &pmf,
        &LengthSet::new([1, 2, 4, 8])?,
        &CostFunction::Identity,
    )?;
    let symbols = sample_symbols(&pmf, 100_000, 7);

    let path = std::env::temp_dir().join("benford_example.rlpc");
    Container::encode(sol.lengths.clone(), &symbols)?.write_file(&path)?;
    let bytes = std::fs::metadata(&path)?.len();

    let back = Container::read_file(&path)?.decode()?;
    assert_eq!(back, symbols);
    println!(
        "{} symbols -> {bytes} bytes ({:.4} bits/symbol, expected {:.4}); decoded identically",
        symbols.len(),
        8.0 * bytes as f64 / symbols.len() as f64,
        sol.cost
    );
    std::fs::remove_file(path)?;
    Ok(())
}
