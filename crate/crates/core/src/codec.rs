//! MSB-first bit streams, canonical encode/decode and the `RLPC` container.
//!
//! The decoder finds each codeword's length by a linear scan over the
//! distinct lengths of the code, so its speed depends directly on how many
//! distinct lengths the code uses.

use std::fs;
use std::hint::black_box;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::code_core::{assign_canonical, Codebook, LengthGroup, LengthVector};
use crate::distributions::Pmf;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BitStream {
    pub bytes: Vec<u8>,
    pub bit_count: u64,
}

#[derive(Debug, Default)]
pub struct BitWriter {
    bytes: Vec<u8>,
    cur: u8,
    used: u32,
    bit_count: u64,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends the low `len` bits of `value`, most significant first.
    pub fn write_bits(&mut self, value: u64, len: u32) {
        debug_assert!(len <= 64);
        self.bit_count += len as u64;
        let mut remaining = len;
        while remaining > 0 {
            let free = 8 - self.used;
            let take = free.min(remaining);
            remaining -= take;
            let chunk = ((value >> remaining) & ((1u64 << take) - 1)) as u8;
            self.cur |= chunk << (free - take);
            self.used += take;
            if self.used == 8 {
                self.bytes.push(self.cur);
                self.cur = 0;
                self.used = 0;
            }
        }
    }

    pub fn finish(mut self) -> BitStream {
        if self.used > 0 {
            self.bytes.push(self.cur);
        }
        BitStream {
            bytes: self.bytes,
            bit_count: self.bit_count,
        }
    }
}

pub struct BitReader<'a> {
    bytes: &'a [u8],
    pos: u64,
    end: u64,
}

impl<'a> BitReader<'a> {
    pub fn new(stream: &'a BitStream) -> Self {
        BitReader {
            bytes: &stream.bytes,
            pos: 0,
            end: stream.bit_count.min(8 * stream.bytes.len() as u64),
        }
    }

    pub fn remaining(&self) -> u64 {
        self.end - self.pos
    }

    /// Next `len` bits as an integer, or `None` if fewer remain.
    pub fn read_bits(&mut self, len: u32) -> Option<u64> {
        if (len as u64) > self.remaining() {
            return None;
        }
        let mut value = 0u64;
        let mut remaining = len;
        while remaining > 0 {
            let byte = self.bytes[(self.pos / 8) as usize];
            let offset = (self.pos % 8) as u32;
            let take = (8 - offset).min(remaining);
            let chunk = (byte >> (8 - offset - take)) & ((1u16 << take) - 1) as u8;
            value = (value << take) | chunk as u64;
            remaining -= take;
            self.pos += take as u64;
        }
        Some(value)
    }
}

/// Per-length decode table derived from a canonical codebook.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeTable {
    groups: Vec<LengthGroup>,
}

impl DecodeTable {
    pub fn new(cb: &Codebook) -> Self {
        DecodeTable {
            groups: cb.groups().to_vec(),
        }
    }

    pub fn groups(&self) -> &[LengthGroup] {
        &self.groups
    }

    pub fn distinct_lengths(&self) -> usize {
        self.groups.len()
    }

    fn decode_one(&self, reader: &mut BitReader<'_>, k: usize) -> Result<usize> {
        let mut value = 0u64;
        let mut have = 0u32;
        for g in &self.groups {
            let need = g.length - have;
            let bits = reader.read_bits(need).ok_or(Error::Truncated(k))?;
            value = if need >= 64 {
                bits
            } else {
                (value << need) | bits
            };
            have = g.length;
            if value >= g.first_code && value - g.first_code < g.count as u64 {
                return Ok(g.first_index + (value - g.first_code) as usize);
            }
        }
        Err(Error::InvalidCode(k))
    }
}

/// Concatenates the codewords of `symbols` (sorted-domain, 0-based).
pub fn encode(cb: &Codebook, symbols: &[usize]) -> Result<BitStream> {
    let mut w = BitWriter::new();
    for &s in symbols {
        if s >= cb.len() {
            return Err(Error::IndexOutOfRange {
                index: s,
                len: cb.len(),
            });
        }
        let (code, len) = cb.codeword(s);
        w.write_bits(code, len);
    }
    Ok(w.finish())
}

/// Decodes exactly `count` symbols from the front of `bs`.
pub fn decode(dt: &DecodeTable, bs: &BitStream, count: usize) -> Result<Vec<usize>> {
    let mut reader = BitReader::new(bs);
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        out.push(dt.decode_one(&mut reader, k)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThroughputReport {
    pub symbols_decoded: usize,
    pub times: Vec<Duration>,
    pub median_symbols_per_sec: f64,
    /// Position-weighted sum of the decoded indices; identical across runs.
    pub checksum: u64,
}

fn checksum(symbols: &[usize]) -> u64 {
    symbols.iter().fold(0u64, |acc, &s| {
        acc.wrapping_mul(31).wrapping_add(s as u64 + 1)
    })
}

/// Decodes the stream `repeats` times and reports the median throughput.
pub fn bench_decode(
    dt: &DecodeTable,
    bs: &BitStream,
    count: usize,
    repeats: usize,
) -> Result<ThroughputReport> {
    if repeats == 0 {
        return Err(Error::BadParameter("repeats must be at least 1".into()));
    }
    let mut times = Vec::with_capacity(repeats);
    let mut sum = None;
    for _ in 0..repeats {
        let start = Instant::now();
        let out = decode(black_box(dt), black_box(bs), count)?;
        let c = checksum(black_box(&out));
        times.push(start.elapsed());
        debug_assert!(sum.is_none_or(|s| s == c));
        sum = Some(c);
    }
    let mut sorted = times.clone();
    sorted.sort();
    let median = sorted[sorted.len() / 2].as_secs_f64().max(1e-9);
    Ok(ThroughputReport {
        symbols_decoded: count,
        times,
        median_symbols_per_sec: count as f64 / median,
        checksum: sum.unwrap(),
    })
}

/// Draws `count` sorted-domain symbols from `pmf` with a seeded generator.
pub fn sample_symbols(pmf: &Pmf, count: usize, seed: u64) -> Vec<usize> {
    let dist = WeightedIndex::new(pmf.probs()).expect("pmf weights are positive");
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count).map(|_| dist.sample(&mut rng)).collect()
}

/// One row of the compression-versus-decode-speed table.
#[derive(Debug, Clone, PartialEq)]
pub struct TradeoffRow {
    pub name: String,
    pub distinct_lengths: usize,
    pub expected_length: f64,
    pub symbols_per_sec: f64,
    pub round_trip_ok: bool,
}

/// Encodes one sampled stream under each code, checks the round trip and
/// benchmarks decoding.
pub fn tradeoff_table(
    pmf: &Pmf,
    codes: &[(String, LengthVector)],
    count: usize,
    repeats: usize,
    seed: u64,
) -> Result<Vec<TradeoffRow>> {
    let symbols = sample_symbols(pmf, count, seed);
    codes
        .iter()
        .map(|(name, lv)| {
            let cb = assign_canonical(lv)?;
            let dt = DecodeTable::new(&cb);
            let bs = encode(&cb, &symbols)?;
            let round_trip_ok = decode(&dt, &bs, count)? == symbols;
            let report = bench_decode(&dt, &bs, count, repeats)?;
            Ok(TradeoffRow {
                name: name.clone(),
                distinct_lengths: dt.distinct_lengths(),
                expected_length: crate::code_core::expected_length(pmf, lv)?,
                symbols_per_sec: report.median_symbols_per_sec,
                round_trip_ok,
            })
        })
        .collect()
}

pub const MAGIC: &[u8; 4] = b"RLPC";
pub const VERSION: u8 = 1;

/// `RLPC` file: magic, version, `u32` BE symbol-alphabet size, one length
/// octet per sorted symbol, `u64` BE symbol count, then the payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Container {
    pub lengths: LengthVector,
    pub symbol_count: u64,
    pub payload: BitStream,
}

impl Container {
    /// Encodes `symbols` under the canonical code for `lengths`.
    pub fn encode(lengths: LengthVector, symbols: &[usize]) -> Result<Self> {
        if let Some(max) = lengths.longest().filter(|&m| m > u8::MAX as u32) {
            return Err(Error::CodewordTooLong(max));
        }
        let cb = assign_canonical(&lengths)?;
        let payload = encode(&cb, symbols)?;
        Ok(Container {
            lengths,
            symbol_count: symbols.len() as u64,
            payload,
        })
    }

    pub fn decode(&self) -> Result<Vec<usize>> {
        let cb = assign_canonical(&self.lengths)?;
        decode(
            &DecodeTable::new(&cb),
            &self.payload,
            self.symbol_count as usize,
        )
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let n = self.lengths.len();
        let mut out = Vec::with_capacity(4 + 1 + 4 + n + 8 + self.payload.bytes.len());
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&(n as u32).to_be_bytes());
        out.extend(self.lengths.lengths().iter().map(|&l| l as u8));
        out.extend_from_slice(&self.symbol_count.to_be_bytes());
        out.extend_from_slice(&self.payload.bytes);
        out
    }

    /// Parses a container. The payload bit count is taken as every
    /// remaining bit; decoding stops after `symbol_count` symbols.
    pub fn from_bytes(data: &[u8]) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("RLPC container: {what}"));
        if data.len() < 9 || &data[..4] != MAGIC {
            return Err(bad("missing magic"));
        }
        if data[4] != VERSION {
            return Err(bad(&format!("unsupported version {}", data[4])));
        }
        let n = u32::from_be_bytes(data[5..9].try_into().unwrap()) as usize;
        let header = 9 + n + 8;
        if data.len() < header {
            return Err(bad("truncated header"));
        }
        let lengths = LengthVector::new(data[9..9 + n].iter().map(|&b| b as u32).collect())?;
        let symbol_count = u64::from_be_bytes(data[9 + n..header].try_into().unwrap());
        let bytes = data[header..].to_vec();
        Ok(Container {
            lengths,
            symbol_count,
            payload: BitStream {
                bit_count: 8 * bytes.len() as u64,
                bytes,
            },
        })
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<()> {
        Ok(fs::write(path, self.to_bytes())?)
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_bytes(&fs::read(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::benford_pmf;
    use proptest::prelude::*;

    fn codebook(v: &[u32]) -> Codebook {
        assign_canonical(&LengthVector::new(v.to_vec()).unwrap()).unwrap()
    }

    const BENFORD_RESERVED: [u32; 9] = [2, 2, 4, 4, 4, 4, 4, 4, 4];

    #[test]
    fn encode_small_example() {
        let cb = codebook(&[1, 2, 2]);
        let bs = encode(&cb, &[0, 1, 2]).unwrap();
        assert_eq!(bs.bytes, vec![0b0101_1000]);
        assert_eq!(bs.bit_count, 5);
        assert_eq!(
            decode(&DecodeTable::new(&cb), &bs, 3).unwrap(),
            vec![0, 1, 2]
        );
        assert_eq!(encode(&cb, &[]).unwrap(), BitStream::default());
        assert!(matches!(
            encode(&cb, &[3]),
            Err(Error::IndexOutOfRange { index: 3, .. })
        ));
    }

    #[test]
    fn unused_pattern_is_rejected() {
        let cb = codebook(&BENFORD_RESERVED);
        let mut w = BitWriter::new();
        w.write_bits(0b1111, 4);
        let bs = w.finish();
        assert!(matches!(
            decode(&DecodeTable::new(&cb), &bs, 1),
            Err(Error::InvalidCode(0))
        ));
    }

    #[test]
    fn truncation_is_detected() {
        let cb = codebook(&BENFORD_RESERVED);
        let dt = DecodeTable::new(&cb);
        let bs = encode(&cb, &[0, 5]).unwrap();
        assert_eq!(bs.bit_count, 6);
        // padding bits are never read as data
        assert!(matches!(decode(&dt, &bs, 3), Err(Error::Truncated(2))));
        let short = BitStream {
            bytes: bs.bytes.clone(),
            bit_count: 4,
        };
        assert!(matches!(decode(&dt, &short, 2), Err(Error::Truncated(1))));
    }

    #[test]
    fn wide_codewords() {
        let mut lengths: Vec<u32> = (1..=64).collect();
        lengths.push(64);
        let cb = codebook(&lengths);
        let syms = vec![64, 0, 63, 10, 64];
        let bs = encode(&cb, &syms).unwrap();
        assert_eq!(
            decode(&DecodeTable::new(&cb), &bs, syms.len()).unwrap(),
            syms
        );
    }

    #[test]
    fn bench_shape_and_determinism() {
        let pmf = benford_pmf();
        let cb = codebook(&BENFORD_RESERVED);
        let dt = DecodeTable::new(&cb);
        let syms = sample_symbols(&pmf, 10_000, 7);
        let bs = encode(&cb, &syms).unwrap();
        let a = bench_decode(&dt, &bs, syms.len(), 3).unwrap();
        let b = bench_decode(&dt, &bs, syms.len(), 1).unwrap();
        assert_eq!(a.symbols_decoded, 10_000);
        assert_eq!(a.times.len(), 3);
        assert!(a.median_symbols_per_sec > 0.0);
        assert_eq!(a.checksum, b.checksum);
        assert!(bench_decode(&dt, &bs, syms.len(), 0).is_err());
    }

    #[test]
    fn container_layout() {
        let lv = LengthVector::new(vec![1, 2, 2]).unwrap();
        let c = Container::encode(lv, &[0, 1, 2]).unwrap();
        let bytes = c.to_bytes();
        assert_eq!(
            bytes,
            [
                b'R',
                b'L',
                b'P',
                b'C',
                1,
                0,
                0,
                0,
                3,
                1,
                2,
                2,
                0,
                0,
                0,
                0,
                0,
                0,
                0,
                3,
                0b0101_1000
            ]
        );
        let back = Container::from_bytes(&bytes).unwrap();
        assert_eq!(back.decode().unwrap(), vec![0, 1, 2]);
        assert_eq!(back.to_bytes(), bytes);
        assert!(Container::from_bytes(b"RLPX\x01\0\0\0\0").is_err());
        assert!(Container::from_bytes(b"RLPC\x02\0\0\0\0").is_err());
        assert!(Container::from_bytes(&bytes[..12]).is_err());
    }

    fn code_and_stream() -> impl Strategy<Value = (Vec<u32>, Vec<usize>)> {
        prop::collection::vec(1u32..=20, 2..50)
            .prop_filter_map("Kraft sum above 1", |mut v| {
                v.sort_unstable();
                let lv = LengthVector::new(v.clone()).unwrap();
                crate::code_core::kraft_sum(&lv)
                    .is_at_most_one()
                    .then_some(v)
            })
            .prop_flat_map(|v| {
                let n = v.len();
                (Just(v), prop::collection::vec(0..n, 0..200))
            })
    }

    proptest! {
        #[test]
        fn round_trip((lengths, symbols) in code_and_stream()) {
            let cb = codebook(&lengths);
            let bs = encode(&cb, &symbols).unwrap();
            prop_assert!(bs.bit_count <= 8 * bs.bytes.len() as u64);
            prop_assert!(8 * (bs.bytes.len() as u64) < bs.bit_count + 8);
            let dt = DecodeTable::new(&cb);
            prop_assert_eq!(&dt, &DecodeTable::new(&cb));
            prop_assert_eq!(decode(&dt, &bs, symbols.len()).unwrap(), symbols);
        }

        #[test]
        fn bit_io_round_trip(chunks in prop::collection::vec((any::<u64>(), 0u32..=64), 0..40)) {
            let mut w = BitWriter::new();
            for &(v, len) in &chunks {
                w.write_bits(v, len);
            }
            let bs = w.finish();
            let mut r = BitReader::new(&bs);
            for &(v, len) in &chunks {
                let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
                prop_assert_eq!(r.read_bits(len), Some(v & mask));
            }
            prop_assert_eq!(r.remaining(), 0);
        }
    }
}
