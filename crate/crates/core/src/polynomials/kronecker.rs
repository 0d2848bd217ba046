//! Polynomial squaring by Kronecker substitution: pack the coefficients
//! into one integer at a bit stride wide enough that the product terms
//! cannot overlap, square that integer, and unpack.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

/// Squares the polynomial with coefficients `a` (lowest degree first).
pub(crate) fn square(a: &[BigInt]) -> Vec<BigInt> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    let max_bits = a.iter().map(BigInt::bits).max().unwrap_or(0) as usize;
    // |c_k| ≤ n · 2^(2·max_bits) < 2^(stride − 1)
    let stride = 2 * max_bits + (usize::BITS - n.leading_zeros()) as usize + 2;
    let words = (n * stride).div_ceil(64) + 2;
    let mut pos = vec![0u64; words];
    let mut neg = vec![0u64; words];
    for (i, c) in a.iter().enumerate() {
        let buf = match c.sign() {
            Sign::Plus => &mut pos,
            Sign::Minus => &mut neg,
            Sign::NoSign => continue,
        };
        place(buf, i * stride, &c.magnitude().to_u64_digits());
    }
    let packed = from_words(&pos).into_signed() - from_words(&neg).into_signed();
    let sq = packed.magnitude() * packed.magnitude();
    unpack(&sq.to_u64_digits(), stride, 2 * n - 1)
}

trait IntoSigned {
    fn into_signed(self) -> BigInt;
}

impl IntoSigned for BigUint {
    fn into_signed(self) -> BigInt {
        BigInt::from_biguint(Sign::Plus, self)
    }
}

/// ORs `digits` into `buf` starting at bit `offset`.
fn place(buf: &mut [u64], offset: usize, digits: &[u64]) {
    let (w, sh) = (offset / 64, offset % 64);
    for (j, &d) in digits.iter().enumerate() {
        buf[w + j] |= d << sh;
        if sh > 0 {
            buf[w + j + 1] |= d >> (64 - sh);
        }
    }
}

fn from_words(words: &[u64]) -> BigUint {
    let halves: Vec<u32> = words
        .iter()
        .flat_map(|&w| [w as u32, (w >> 32) as u32])
        .collect();
    BigUint::new(halves)
}

/// Bits `[start, start + len)` of the integer with little-endian `words`.
fn extract(words: &[u64], start: usize, len: usize) -> BigUint {
    let (w, sh) = (start / 64, start % 64);
    let count = (len + 63) / 64;
    let word = |i: usize| words.get(i).copied().unwrap_or(0);
    let mut out: Vec<u64> = (0..count)
        .map(|j| {
            let lo = word(w + j) >> sh;
            if sh == 0 {
                lo
            } else {
                lo | (word(w + j + 1) << (64 - sh))
            }
        })
        .collect();
    let top = len % 64;
    if top > 0 {
        if let Some(last) = out.last_mut() {
            *last &= (1u64 << top) - 1;
        }
    }
    from_words(&out)
}

/// Reads `count` balanced digits `c_k ∈ [−2^(stride−1), 2^(stride−1))`.
fn unpack(words: &[u64], stride: usize, count: usize) -> Vec<BigInt> {
    let half = BigUint::one() << (stride - 1);
    let base = BigInt::one() << stride;
    let mut carry = false;
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let mut r = extract(words, k * stride, stride);
        if carry {
            r += 1u32;
        }
        if r >= half {
            out.push(r.into_signed() - &base);
            carry = true;
        } else {
            out.push(r.into_signed());
            carry = false;
        }
    }
    debug_assert!(!carry || out.iter().all(Zero::is_zero));
    out
}
