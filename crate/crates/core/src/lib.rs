//! Optimal binary prefix codes whose codeword lengths are restricted to a
//! user-chosen set of allowed lengths.
//!
//! The solver is a level-by-level dynamic program over partial code trees
//! ([`reserved_dp`]). It also handles quasiarithmetic objectives
//! `phi^-1(sum p_i phi(l_i))` and the search for the best code using at most
//! `g` distinct lengths ([`few_lengths`]). Canonical codebooks, an MSB-first
//! encoder/decoder and a decode benchmark live in [`code_core`] and
//! [`codec`]; [`oracle`] holds exhaustive and Huffman references used for
//! validation.

pub mod cli;
pub mod code_core;
pub mod codec;
pub mod distributions;
pub mod error;
pub mod few_lengths;
pub mod oracle;
pub mod reserved_dp;

pub use code_core::{
    assign_canonical, expected_length, is_feasible, kraft_sum, partial_kraft, truncate_length_set,
    Codebook, Dyadic, LengthGroup, LengthSet, LengthVector,
};
pub use codec::{bench_decode, decode, encode, BitStream, Container, DecodeTable};
pub use distributions::{
    benford_pmf, cdf, make_pmf, pmf_from_file, zipf_pmf, CumulativeTable, Pmf, PmfFormat,
};
pub use error::{Error, Result};
pub use few_lengths::{candidate_sets, solve_g_lengths, GSearchReport};
pub use oracle::{brute_force, huffman, OracleResult};
pub use reserved_dp::{backtrack, dp_grids, solve_reserved, CostFunction, CostGrid, Solution};
