//! The 2x2 coding matrix `M_n` of consecutive g-values and a block codec
//! over `Z_m` with a determinant checksum for error detection.

use num_integer::Integer as IntegerOps;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact::{int, Integer};
use crate::sequences::{gfl_table, GFLParams};

/// Symmetric matrix `[[g_{n+1}, g_n], [g_n, g_{n-1}]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CodingMatrix {
    entries: [[Integer; 2]; 2],
}

impl CodingMatrix {
    pub fn entries(&self) -> &[[Integer; 2]; 2] {
        &self.entries
    }

    pub fn det(&self) -> Integer {
        &self.entries[0][0] * &self.entries[1][1] - &self.entries[0][1] * &self.entries[1][0]
    }
}

/// `M_n` from the g-values; `n >= 2`.
pub fn build_mn(params: &GFLParams, n: u64) -> Result<CodingMatrix> {
    if n < 2 {
        return Err(Error::Precondition(format!("matrix index needs n >= 2, got {}", n)));
    }
    let g = gfl_table(params, n + 1);
    Ok(CodingMatrix {
        entries: [
            [g[n as usize + 1].clone(), g[n as usize].clone()],
            [g[n as usize].clone(), g[n as usize - 1].clone()],
        ],
    })
}

/// Codec parameters; construction enforces `gcd(det M_n, m) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CodecConfig {
    params: GFLParams,
    n: u64,
    m: Integer,
    matrix: CodingMatrix,
}

impl CodecConfig {
    pub fn new(params: GFLParams, n: u64, m: Integer) -> Result<Self> {
        if m < int(2) {
            return Err(Error::Codec(format!("modulus must be >= 2, got {}", m)));
        }
        let matrix = build_mn(&params, n)?;
        if matrix.det().gcd(&m) != Integer::one() {
            return Err(Error::Codec(format!(
                "det M_n = {} is not invertible mod {}",
                matrix.det(),
                m
            )));
        }
        Ok(CodecConfig { params, n, m, matrix })
    }

    pub fn from_i64(p: i64, q: i64, n: u64, m: i64) -> Result<Self> {
        CodecConfig::new(GFLParams::from_i64(p, q), n, int(m))
    }

    pub fn params(&self) -> &GFLParams {
        &self.params
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn modulus(&self) -> &Integer {
        &self.m
    }

    pub fn matrix(&self) -> &CodingMatrix {
        &self.matrix
    }
}

pub type Block = [[Integer; 2]; 2];

fn reduce(v: &Integer, m: &Integer) -> Integer {
    v.mod_floor(m)
}

fn mat_mul_mod(x: &Block, y: &[[Integer; 2]; 2], m: &Integer) -> Block {
    let mut out: Block = Default::default();
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = reduce(&(&x[i][0] * &y[0][j] + &x[i][1] * &y[1][j]), m);
        }
    }
    out
}

fn det_mod(x: &Block, m: &Integer) -> Integer {
    reduce(&(&x[0][0] * &x[1][1] - &x[0][1] * &x[1][0]), m)
}

fn mod_inverse(v: &Integer, m: &Integer) -> Option<Integer> {
    let e = v.extended_gcd(m);
    if e.gcd != Integer::one() {
        return None;
    }
    Some(reduce(&e.x, m))
}

fn check_block_range(block: &Block, m: &Integer) -> Result<()> {
    for row in block {
        for v in row {
            if v.is_negative() || v >= m {
                return Err(Error::Precondition(format!(
                    "block entry {} outside [0, {})",
                    v, m
                )));
            }
        }
    }
    Ok(())
}

/// `cipher = block * M_n mod m`, plus the checksum `det(block) mod m`.
pub fn encode_block(block: &Block, cfg: &CodecConfig) -> Result<(Block, Integer)> {
    check_block_range(block, &cfg.m)?;
    let cipher = mat_mul_mod(block, &cfg.matrix.entries, &cfg.m);
    Ok((cipher, det_mod(block, &cfg.m)))
}

/// Decoded block plus the corruption verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodedBlock {
    pub block: Block,
    pub corrupted: bool,
}

/// `block = cipher * M_n^{-1} mod m`; corruption is flagged when the
/// decoded determinant disagrees with the checksum.
pub fn decode_block(cipher: &Block, check: &Integer, cfg: &CodecConfig) -> Result<DecodedBlock> {
    check_block_range(cipher, &cfg.m)?;
    let e = &cfg.matrix.entries;
    let det_inv = mod_inverse(&cfg.matrix.det(), &cfg.m).ok_or_else(|| {
        Error::Codec("matrix determinant not invertible".into())
    })?;
    // adjugate over det
    let adj = [
        [&e[1][1] * &det_inv, -(&e[0][1]) * &det_inv],
        [-(&e[1][0]) * &det_inv, &e[0][0] * &det_inv],
    ];
    let adj = [
        [reduce(&adj[0][0], &cfg.m), reduce(&adj[0][1], &cfg.m)],
        [reduce(&adj[1][0], &cfg.m), reduce(&adj[1][1], &cfg.m)],
    ];
    let block = mat_mul_mod(cipher, &adj, &cfg.m);
    let corrupted = det_mod(&block, &cfg.m) != reduce(check, &cfg.m);
    Ok(DecodedBlock { block, corrupted })
}

const MAGIC: &[u8; 4] = b"GFLC";
const VERSION: u8 = 1;
const HEADER_LEN: usize = 4 + 1 + 4 * 8 + 8;
const BLOCK_LEN: usize = 5 * 4;

/// Two-byte digits (with escape splitting) are safe once `m - 1` can absorb
/// the worst-case escape remainder `65535 - (m - 1)`.
const TWO_BYTE_MIN_M: i64 = 32769;

fn digit_width(m: &Integer) -> usize {
    if m >= &int(TWO_BYTE_MIN_M) {
        2
    } else {
        1
    }
}

fn stream_config_check(cfg: &CodecConfig) -> Result<(i64, usize)> {
    let m = i64::try_from(&cfg.m)
        .map_err(|_| Error::Codec("stream modulus must fit 64 bits".into()))?;
    if m < 257 {
        return Err(Error::Codec(format!(
            "byte-level packing needs m >= 257, got {}",
            m
        )));
    }
    if m > u32::MAX as i64 {
        return Err(Error::Codec("frame residues are 32-bit; m is too large".into()));
    }
    Ok((m, digit_width(&cfg.m)))
}

/// Base-m digits of the payload. In two-byte mode a value `v >= m - 1` is
/// escape-split into the pair `(m - 1, v - (m - 1))`.
fn payload_to_digits(payload: &[u8], m: i64, width: usize) -> Vec<i64> {
    let mut digits = Vec::with_capacity(payload.len() / width + 2);
    if width == 1 {
        digits.extend(payload.iter().map(|&b| b as i64));
        return digits;
    }
    let escape = m - 1;
    for chunk in payload.chunks(2) {
        let v = if chunk.len() == 2 {
            ((chunk[0] as i64) << 8) | chunk[1] as i64
        } else {
            chunk[0] as i64
        };
        if v < escape {
            digits.push(v);
        } else {
            digits.push(escape);
            digits.push(v - escape);
        }
    }
    digits
}

fn push_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

/// Frames and encodes a payload: magic, version, config echo, payload
/// length, then one 20-byte record per block (4 cipher residues + check).
pub fn encode_stream(payload: &[u8], cfg: &CodecConfig) -> Result<Vec<u8>> {
    let (m, width) = stream_config_check(cfg)?;
    let p = i64::try_from(&cfg.params.p)
        .map_err(|_| Error::Codec("p must fit 64 bits for framing".into()))?;
    let q = i64::try_from(&cfg.params.q)
        .map_err(|_| Error::Codec("q must fit 64 bits for framing".into()))?;

    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    for v in [p, q, cfg.n as i64, m] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out.extend_from_slice(&(payload.len() as u64).to_le_bytes());

    let mut digits = payload_to_digits(payload, m, width);
    while digits.len() % 4 != 0 {
        digits.push(0);
    }
    for group in digits.chunks(4) {
        let block: Block = [
            [int(group[0]), int(group[1])],
            [int(group[2]), int(group[3])],
        ];
        let (cipher, check) = encode_block(&block, cfg)?;
        for row in &cipher {
            for v in row {
                push_u32(&mut out, u32::try_from(v).expect("residue < m <= u32::MAX"));
            }
        }
        push_u32(&mut out, u32::try_from(&check).expect("residue < m"));
    }
    Ok(out)
}

/// Stream decode result: the payload plus the indices of corrupt blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodedStream {
    pub payload: Vec<u8>,
    pub corrupt_blocks: Vec<usize>,
}

fn frame_err(offset: usize, msg: impl Into<String>) -> Error {
    Error::Frame {
        offset,
        msg: msg.into(),
    }
}

/// Inverse of [`encode_stream`]. The header must echo the supplied config.
pub fn decode_stream(frame: &[u8], cfg: &CodecConfig) -> Result<DecodedStream> {
    let (m, width) = stream_config_check(cfg)?;
    if frame.len() < HEADER_LEN {
        return Err(frame_err(frame.len(), "truncated header"));
    }
    if &frame[0..4] != MAGIC {
        return Err(frame_err(0, "bad magic"));
    }
    if frame[4] != VERSION {
        return Err(frame_err(4, format!("unsupported version {}", frame[4])));
    }
    let mut fields = [0i64; 4];
    for (k, f) in fields.iter_mut().enumerate() {
        let at = 5 + 8 * k;
        *f = i64::from_le_bytes(frame[at..at + 8].try_into().unwrap());
    }
    let header_matches = int(fields[0]) == cfg.params.p
        && int(fields[1]) == cfg.params.q
        && fields[2] == cfg.n as i64
        && fields[3] == m;
    if !header_matches {
        return Err(frame_err(5, "frame parameters do not match the codec config"));
    }
    let payload_len = u64::from_le_bytes(frame[37..45].try_into().unwrap()) as usize;

    let body = &frame[HEADER_LEN..];
    if body.len() % BLOCK_LEN != 0 {
        return Err(frame_err(HEADER_LEN + body.len(), "partial block record"));
    }
    let mut digits: Vec<i64> = Vec::new();
    let mut corrupt_blocks = Vec::new();
    for (idx, rec) in body.chunks(BLOCK_LEN).enumerate() {
        let mut vals = [0u32; 5];
        for (k, v) in vals.iter_mut().enumerate() {
            *v = u32::from_le_bytes(rec[4 * k..4 * k + 4].try_into().unwrap());
        }
        if vals.iter().any(|&v| (v as i64) >= m) {
            return Err(frame_err(
                HEADER_LEN + idx * BLOCK_LEN,
                format!("residue out of range mod {}", m),
            ));
        }
        let cipher: Block = [
            [int(vals[0] as i64), int(vals[1] as i64)],
            [int(vals[2] as i64), int(vals[3] as i64)],
        ];
        let decoded = decode_block(&cipher, &int(vals[4] as i64), cfg)?;
        if decoded.corrupted {
            corrupt_blocks.push(idx);
        }
        for row in &decoded.block {
            for v in row {
                digits.push(i64::try_from(v).expect("residue fits i64"));
            }
        }
    }

    // rebuild bytes from the digit stream
    let mut payload = Vec::with_capacity(payload_len);
    let escape = m - 1;
    let mut it = digits.iter();
    while payload.len() < payload_len {
        let Some(&d) = it.next() else {
            return Err(frame_err(frame.len(), "digit stream exhausted before payload length"));
        };
        if width == 1 {
            payload.push((d & 0xff) as u8);
            continue;
        }
        let v = if d == escape {
            let Some(&rest) = it.next() else {
                return Err(frame_err(frame.len(), "dangling escape digit"));
            };
            d + rest
        } else {
            d
        };
        if payload_len - payload.len() >= 2 {
            payload.push(((v >> 8) & 0xff) as u8);
            payload.push((v & 0xff) as u8);
        } else {
            payload.push((v & 0xff) as u8);
        }
    }
    Ok(DecodedStream {
        payload,
        corrupt_blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn block(v: [[i64; 2]; 2]) -> Block {
        [
            [int(v[0][0]), int(v[0][1])],
            [int(v[1][0]), int(v[1][1])],
        ]
    }

    #[test]
    fn build_mn_examples() {
        let m = build_mn(&GFLParams::from_i64(1, 0), 2).unwrap();
        assert_eq!(m.entries(), &block([[1, 1], [1, 0]]));
        let m = build_mn(&GFLParams::from_i64(1, 1), 2).unwrap();
        assert_eq!(m.entries(), &block([[5, 4], [4, 1]]));
        assert_eq!(m.det(), int(-11));
        let z = build_mn(&GFLParams::from_i64(0, 0), 3).unwrap();
        assert_eq!(z.det(), int(0));
        assert!(build_mn(&GFLParams::from_i64(1, 1), 1).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(CodecConfig::from_i64(1, 0, 2, 251).is_ok());
        // det 0 shares every factor with m
        assert!(matches!(
            CodecConfig::from_i64(0, 0, 2, 251),
            Err(Error::Codec(_))
        ));
        // det M_2^{1,1} = -11, gcd(11, 22) != 1
        assert!(CodecConfig::from_i64(1, 1, 2, 22).is_err());
        assert!(CodecConfig::from_i64(1, 0, 2, 1).is_err());
    }

    #[test]
    fn encode_block_example() {
        let cfg = CodecConfig::from_i64(1, 0, 2, 251).unwrap();
        let (cipher, check) = encode_block(&block([[1, 2], [3, 4]]), &cfg).unwrap();
        assert_eq!(cipher, block([[3, 1], [7, 3]]));
        assert_eq!(check, int(249));
        let (zc, zchk) = encode_block(&block([[0, 0], [0, 0]]), &cfg).unwrap();
        assert_eq!(zc, block([[0, 0], [0, 0]]));
        assert_eq!(zchk, int(0));
        let (ic, _) = encode_block(&block([[1, 0], [0, 1]]), &cfg).unwrap();
        assert_eq!(&ic, cfg.matrix().entries());
    }

    #[test]
    fn decode_block_roundtrip() {
        let cfg = CodecConfig::from_i64(1, 0, 2, 251).unwrap();
        let original = block([[1, 2], [3, 4]]);
        let (cipher, check) = encode_block(&original, &cfg).unwrap();
        let d = decode_block(&cipher, &check, &cfg).unwrap();
        assert_eq!(d.block, original);
        assert!(!d.corrupted);
        // flip one cipher residue
        let mut bad = cipher.clone();
        bad[0][0] = reduce(&(&bad[0][0] + int(1)), cfg.modulus());
        let d = decode_block(&bad, &check, &cfg).unwrap();
        assert!(d.corrupted);
        // zero cipher with zero check is clean
        let d = decode_block(&block([[0, 0], [0, 0]]), &int(0), &cfg).unwrap();
        assert_eq!(d.block, block([[0, 0], [0, 0]]));
        assert!(!d.corrupted);
    }

    #[test]
    fn block_range_enforced() {
        let cfg = CodecConfig::from_i64(1, 0, 2, 251).unwrap();
        assert!(encode_block(&block([[251, 0], [0, 0]]), &cfg).is_err());
        assert!(encode_block(&block([[-1, 0], [0, 0]]), &cfg).is_err());
    }

    #[test]
    fn stream_empty_payload() {
        let cfg = CodecConfig::from_i64(1, 0, 2, 65521).unwrap();
        let frame = encode_stream(&[], &cfg).unwrap();
        assert_eq!(frame.len(), HEADER_LEN);
        let d = decode_stream(&frame, &cfg).unwrap();
        assert!(d.payload.is_empty());
        assert!(d.corrupt_blocks.is_empty());
    }

    #[test]
    fn stream_small_modulus_rejected() {
        let cfg = CodecConfig::from_i64(1, 0, 2, 251).unwrap();
        assert!(matches!(encode_stream(&[1, 2, 3], &cfg), Err(Error::Codec(_))));
    }

    #[test]
    fn stream_roundtrip_including_escapes() {
        let cfg = CodecConfig::from_i64(1, 0, 2, 65521).unwrap();
        // 0xfff0_f0ff contains the escape value 65520 = m - 1 exactly
        let payloads: [&[u8]; 5] = [
            b"hello, world",
            &[0xff, 0xf0, 0xf0, 0xff, 0xff, 0xff],
            &[0u8; 9],
            &[0xff; 33],
            &[7],
        ];
        for payload in payloads {
            let frame = encode_stream(payload, &cfg).unwrap();
            let d = decode_stream(&frame, &cfg).unwrap();
            assert_eq!(d.payload, payload);
            assert!(d.corrupt_blocks.is_empty());
        }
    }

    #[test]
    fn stream_roundtrip_one_byte_mode() {
        let cfg = CodecConfig::from_i64(1, 0, 2, 257).unwrap();
        let payload: Vec<u8> = (0..=255).collect();
        let frame = encode_stream(&payload, &cfg).unwrap();
        let d = decode_stream(&frame, &cfg).unwrap();
        assert_eq!(d.payload, payload);
    }

    #[test]
    fn stream_truncation_detected() {
        let cfg = CodecConfig::from_i64(1, 0, 2, 65521).unwrap();
        let frame = encode_stream(b"0123456789", &cfg).unwrap();
        assert!(matches!(
            decode_stream(&frame[..frame.len() - 3], &cfg),
            Err(Error::Frame { .. })
        ));
        assert!(matches!(
            decode_stream(&frame[..10], &cfg),
            Err(Error::Frame { .. })
        ));
        let mut bad = frame.clone();
        bad[0] = b'X';
        assert!(matches!(decode_stream(&bad, &cfg), Err(Error::Frame { .. })));
    }

    #[test]
    fn stream_corruption_reported() {
        let cfg = CodecConfig::from_i64(1, 0, 2, 65521).unwrap();
        let frame = encode_stream(&[1, 2, 3, 4, 5, 6, 7, 8], &cfg).unwrap();
        let mut bad = frame.clone();
        // flip a cipher residue in the first block
        bad[HEADER_LEN] ^= 1;
        let d = decode_stream(&bad, &cfg).unwrap();
        assert_eq!(d.corrupt_blocks, vec![0]);
    }

    proptest! {
        #[test]
        fn mn_recurrence_and_det(p in -10i64..=10, q in -10i64..=10, n in 4u64..60) {
            let params = GFLParams::from_i64(p, q);
            let mn = build_mn(&params, n).unwrap();
            let m1 = build_mn(&params, n - 1).unwrap();
            let m2 = build_mn(&params, n - 2).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    prop_assert_eq!(
                        &mn.entries()[i][j],
                        &(&m1.entries()[i][j] + &m2.entries()[i][j])
                    );
                }
            }
            let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(mn.det(), int(sign) * int(p * p + 5 * q * q + 5 * p * q));
        }

        #[test]
        fn stream_roundtrip_random(seed in 0u64..50) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let len = rng.gen_range(0..512);
            let payload: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
            let cfg = CodecConfig::from_i64(1, 0, 2, 65521).unwrap();
            let frame = encode_stream(&payload, &cfg).unwrap();
            let d = decode_stream(&frame, &cfg).unwrap();
            prop_assert_eq!(d.payload, payload);
            prop_assert!(d.corrupt_blocks.is_empty());
        }
    }
}
