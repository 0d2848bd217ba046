//! Monomials `x^u` on `m` variables and their evaluation map.
//!
//! A monomial and a synthetic channel share the same label: the bit vector
//! `u = (u_0, …, u_{m-1})` with `u_0` the least significant bit. Variable
//! `x_i` divides `x^u` iff `u_i = 1`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported number of variables.
pub const MAX_M: usize = 16;

/// A monomial on `m` variables, stored as a bitmask of its support.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    // Field order makes the derived `Ord` sort by `m`, then by integer value.
    m: u8,
    bits: u32,
}

impl Monomial {
    /// Builds the monomial whose support is the set bits of `u`.
    pub fn from_int(u: u64, m: usize) -> Result<Self> {
        if m == 0 || m > MAX_M {
            return Err(Error::UnsupportedM(m));
        }
        if u >> m != 0 {
            return Err(Error::IndexOutOfRange { u, m });
        }
        Ok(Monomial {
            m: m as u8,
            bits: u as u32,
        })
    }

    /// Builds `x_{i_1} … x_{i_s}` from a list of variable indices.
    pub fn from_support(indices: &[usize], m: usize) -> Result<Self> {
        let mut bits = 0u64;
        for &i in indices {
            if i >= m {
                return Err(Error::InvalidArgument(format!(
                    "variable x_{i} out of range for m = {m}"
                )));
            }
            bits |= 1 << i;
        }
        Monomial::from_int(bits, m)
    }

    /// The constant monomial `1`.
    pub fn one(m: usize) -> Result<Self> {
        Monomial::from_int(0, m)
    }

    /// The single variable `x_i`.
    pub fn var(i: usize, m: usize) -> Result<Self> {
        Monomial::from_support(&[i], m)
    }

    /// All `2^m` monomials in increasing integer order.
    pub fn all(m: usize) -> Result<impl Iterator<Item = Monomial> + Clone> {
        if m == 0 || m > MAX_M {
            return Err(Error::UnsupportedM(m));
        }
        Ok((0..1u32 << m).map(move |bits| Monomial { m: m as u8, bits }))
    }

    pub fn m(&self) -> usize {
        self.m as usize
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// The integer `u = Σ u_i 2^i`.
    pub fn to_int(&self) -> u64 {
        self.bits as u64
    }

    pub fn index(&self) -> usize {
        self.bits as usize
    }

    pub fn degree(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn bit(&self, i: usize) -> bool {
        (self.bits >> i) & 1 == 1
    }

    /// Sorted variable indices `l_1 < … < l_s`.
    pub fn support(&self) -> Vec<usize> {
        (0..self.m()).filter(|&i| self.bit(i)).collect()
    }

    /// Bitwise complement in all `m` positions; `u + ū = 2^m − 1`.
    pub fn complement(&self) -> Monomial {
        Monomial {
            m: self.m,
            bits: !self.bits & self.mask(),
        }
    }

    fn mask(&self) -> u32 {
        ((1u64 << self.m) - 1) as u32
    }

    fn check_same_m(&self, other: &Monomial) -> Result<()> {
        if self.m != other.m {
            return Err(Error::MismatchedM(self.m(), other.m()));
        }
        Ok(())
    }

    /// `self | other`: every variable of `self` appears in `other`.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check_same_m(other)?;
        Ok(self.bits & other.bits == self.bits)
    }

    /// Returns `(gcd(f, g), f / gcd, g / gcd)`.
    pub fn gcd_quot(&self, other: &Monomial) -> Result<(Monomial, Monomial, Monomial)> {
        self.check_same_m(other)?;
        let gcd = self.bits & other.bits;
        let with = |bits| Monomial { m: self.m, bits };
        Ok((with(gcd), with(self.bits & !gcd), with(other.bits & !gcd)))
    }

    /// Product in `R_m` (where `x_i^2 = x_i`), i.e. the union of supports.
    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_same_m(other)?;
        Ok(Monomial {
            m: self.m,
            bits: self.bits | other.bits,
        })
    }

    /// The divisor of `self` on its `s` largest variables.
    ///
    /// `s` is clamped to the degree.
    pub fn top_divisor(&self, s: usize) -> Monomial {
        let mut bits = 0u32;
        let mut taken = 0;
        for i in (0..self.m()).rev() {
            if taken == s {
                break;
            }
            if self.bit(i) {
                bits |= 1 << i;
                taken += 1;
            }
        }
        Monomial { m: self.m, bits }
    }

    /// Evaluation vector `ev(g)` over `F_2^m`.
    ///
    /// Points are listed in decreasing integer order, `u = 2^m − 1` first,
    /// and entry `u` is `Π_{i ∈ ind(g)} u_i`.
    pub fn evaluate(&self) -> Vec<bool> {
        let n = 1u32 << self.m;
        (0..n).rev().map(|u| u & self.bits == self.bits).collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits == 0 {
            return write!(f, "1");
        }
        for i in self.support() {
            write!(f, "x_{i}")?;
        }
        Ok(())
    }
}

/// Monomials of degree at most `r`: the monomial basis of `RM(r, m)`.
pub fn rm_set(r: usize, m: usize) -> Result<BTreeSet<Monomial>> {
    if r > m {
        return Err(Error::InvalidArgument(format!(
            "Reed-Muller order r = {r} exceeds m = {m}"
        )));
    }
    Ok(Monomial::all(m)?.filter(|f| f.degree() <= r).collect())
}

/// Rank over GF(2) of a list of equal-length bit vectors.
pub fn gf2_rank(rows: &[Vec<bool>]) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let words = width.div_ceil(64);
    let mut packed: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| {
            let mut w = vec![0u64; words];
            for (j, &b) in row.iter().enumerate() {
                if b {
                    w[j / 64] |= 1 << (j % 64);
                }
            }
            w
        })
        .collect();

    let mut rank = 0;
    for col in 0..width {
        let (word, bit) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..packed.len()).find(|&r| packed[r][word] & bit != 0) else {
            continue;
        };
        packed.swap(rank, pivot);
        let pivot_row = packed[rank].clone();
        for (r, row) in packed.iter_mut().enumerate() {
            if r != rank && row[word] & bit != 0 {
                row.iter_mut().zip(&pivot_row).for_each(|(a, b)| *a ^= b);
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of the monomial code spanned by `ev(f)` for `f` in `set`.
pub fn code_dimension<'a>(set: impl IntoIterator<Item = &'a Monomial>) -> usize {
    let rows: Vec<Vec<bool>> = set.into_iter().map(Monomial::evaluate).collect();
    gf2_rank(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(u: u64, m: usize) -> Monomial {
        Monomial::from_int(u, m).unwrap()
    }

    #[test]
    fn from_int_examples() {
        let f = mono(3, 5);
        assert_eq!(f.support(), vec![0, 1]);
        assert_eq!(f.degree(), 2);
        let g = mono(16, 5);
        assert_eq!(g.support(), vec![4]);
        assert_eq!(g.degree(), 1);
        let one = mono(0, 4);
        assert_eq!(one.degree(), 0);
        assert_eq!(one.to_string(), "1");
    }

    #[test]
    fn from_int_rejects_bad_input() {
        assert_eq!(
            Monomial::from_int(32, 5),
            Err(Error::IndexOutOfRange { u: 32, m: 5 })
        );
        assert_eq!(Monomial::from_int(0, 0), Err(Error::UnsupportedM(0)));
        assert_eq!(Monomial::from_int(0, 17), Err(Error::UnsupportedM(17)));
        assert!(Monomial::from_int(u16::MAX as u64, 16).is_ok());
    }

    #[test]
    fn round_trip_exhaustive() {
        for m in 1..=8 {
            for u in 0..1u64 << m {
                assert_eq!(mono(u, m).to_int(), u);
            }
        }
    }

    #[test]
    fn support_examples() {
        assert_eq!(
            Monomial::from_support(&[0, 3], 4).unwrap().support(),
            vec![0, 3]
        );
        assert!(mono(0, 4).support().is_empty());
        let f = Monomial::from_support(&[1, 2], 4).unwrap();
        assert_eq!(f.support(), vec![1, 2]);
        assert_eq!(f.to_string(), "x_1x_2");
    }

    #[test]
    fn complement_examples() {
        assert_eq!(mono(3, 5).complement().to_int(), 28);
        assert_eq!(mono(0, 4).complement().to_int(), 15);
        assert_eq!(mono(16, 5).complement().to_int(), 15);
        for u in 0..64 {
            let f = mono(u, 6);
            assert_eq!(f.complement().complement(), f);
            assert_eq!(f.to_int() + f.complement().to_int(), 63);
        }
    }

    #[test]
    fn divides_examples() {
        let x0 = Monomial::var(0, 3).unwrap();
        let x1 = Monomial::var(1, 3).unwrap();
        let x0x2 = Monomial::from_support(&[0, 2], 3).unwrap();
        let x1x2 = Monomial::from_support(&[1, 2], 3).unwrap();
        assert!(x0.divides(&x0x2).unwrap());
        assert!(!x1.divides(&x0x2).unwrap());
        assert!(!x0x2.divides(&x1x2).unwrap());
        assert_eq!(x0.divides(&mono(1, 4)), Err(Error::MismatchedM(3, 4)));
    }

    #[test]
    fn gcd_quot_examples() {
        let s = |v: &[usize]| Monomial::from_support(v, 4).unwrap();
        assert_eq!(
            s(&[0, 3]).gcd_quot(&s(&[1, 2])).unwrap(),
            (s(&[]), s(&[0, 3]), s(&[1, 2]))
        );
        assert_eq!(
            s(&[0, 1]).gcd_quot(&s(&[1, 2])).unwrap(),
            (s(&[1]), s(&[0]), s(&[2]))
        );
        let f = s(&[0, 2, 3]);
        assert_eq!(f.gcd_quot(&f).unwrap(), (f, s(&[]), s(&[])));
    }

    #[test]
    fn product_degree_bound() {
        for f in Monomial::all(5).unwrap() {
            for g in Monomial::all(5).unwrap() {
                let h = f.mul(&g).unwrap();
                let (gcd, _, _) = f.gcd_quot(&g).unwrap();
                assert!(h.degree() <= f.degree() + g.degree());
                assert_eq!(h.degree() == f.degree() + g.degree(), gcd.degree() == 0);
            }
        }
    }

    #[test]
    fn rm_set_examples() {
        let rm15: Vec<u64> = rm_set(1, 5).unwrap().iter().map(Monomial::to_int).collect();
        assert_eq!(rm15, vec![0, 1, 2, 4, 8, 16]);
        assert_eq!(rm_set(0, 3).unwrap().len(), 1);
        assert_eq!(rm_set(2, 5).unwrap().len(), 16);
        assert!(rm_set(4, 3).is_err());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(mono(0, 2).evaluate(), vec![true; 4]);
        let ev = mono(3, 2).evaluate();
        assert_eq!(ev, vec![true, false, false, false]);
        for m in 1..=6 {
            for f in Monomial::all(m).unwrap() {
                let weight = f.evaluate().iter().filter(|&&b| b).count();
                assert_eq!(weight, 1 << (m - f.degree()));
            }
        }
    }

    #[test]
    fn evaluation_matrix_is_invertible() {
        for m in 1..=6 {
            let all: Vec<Monomial> = Monomial::all(m).unwrap().collect();
            assert_eq!(code_dimension(&all), 1 << m);
        }
    }

    #[test]
    fn code_dimension_equals_set_size() {
        let m = 5;
        let all: Vec<Monomial> = Monomial::all(m).unwrap().collect();
        // every 7th contiguous window, plus a few sparse picks
        for start in (0..all.len()).step_by(7) {
            let set: Vec<Monomial> = all[start..].iter().step_by(3).copied().collect();
            assert_eq!(code_dimension(&set), set.len());
        }
        assert_eq!(code_dimension(&rm_set(2, 5).unwrap()), 16);
    }

    #[test]
    fn top_divisor_picks_largest_variables() {
        let g = Monomial::from_support(&[0, 2, 3, 5], 6).unwrap();
        assert_eq!(g.top_divisor(2).support(), vec![3, 5]);
        assert_eq!(g.top_divisor(0).degree(), 0);
        assert_eq!(g.top_divisor(9), g);
    }
}
