//! Exact univariate polynomials with big-integer coefficients.
//!
//! Channel polynomials only ever need integer coefficients: the two
//! polarization transforms `z ↦ z²` and `z ↦ 2z − z²` preserve `Z[p]`.
//! Rationals appear when a polynomial is evaluated or integrated.

mod bernstein;
mod kronecker;
mod sign;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use bernstein::{binomial, from_path_counts, to_path_counts, PathCounts};
pub use sign::{
    count_roots_01, isolate_roots_01, nonneg_on_01, nonneg_on_01_sturm, odd_multiplicity_part,
    sign_changes_on_grid, square_free_factors, square_free_part, sturm_sequence, SignVerdict,
};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Rational = num_rational::BigRational;

/// Dense polynomial `Σ coeffs[i] p^i`, normalized with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// The identity polynomial `p`.
    pub fn p() -> Self {
        IntPoly::from_i64s(&[0, 1])
    }

    /// `p^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `p^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// `a²`; large inputs go through Kronecker substitution.
    pub fn square(&self) -> IntPoly {
        if self.coeffs.len() >= KRONECKER_MIN_LEN {
            IntPoly::new(kronecker::square(&self.coeffs))
        } else {
            self.square_schoolbook()
        }
    }

    /// `a²` from the symmetric half of the product terms.
    pub fn square_schoolbook(&self) -> IntPoly {
        let n = self.coeffs.len();
        if n == 0 {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); 2 * n - 1];
        for i in 0..n {
            let ci = &self.coeffs[i];
            if ci.is_zero() {
                continue;
            }
            for j in i + 1..n {
                out[i + j] += ci * &self.coeffs[j];
            }
        }
        for c in out.iter_mut() {
            *c <<= 1;
        }
        for (i, ci) in self.coeffs.iter().enumerate() {
            out[2 * i] += ci * ci;
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        if k.is_zero() {
            return IntPoly::zero();
        }
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Exact Horner evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        // Horner on numerators over the common denominator den^deg.
        let Some(deg) = self.degree() else {
            return Rational::zero();
        };
        let (num, den) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        Rational::new(acc, num_traits::pow(den.clone(), deg))
    }

    /// Sign of the value at a rational point, without building the rational.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        let (num, den) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        // den > 0, so the sign of the numerator is the sign of the value.
        sign_of(&acc)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Sum of coefficients, i.e. the value at `p = 1`.
    pub fn value_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `∫₀¹ a(p) dp = Σ coeff[i] / (i + 1)`.
    pub fn integrate01(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        // Sum over the common denominator lcm(1, …, deg + 1).
        let lcm = lcm_upto(self.coeffs.len());
        let num: BigInt = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * (&lcm / BigInt::from(i + 1)))
            .sum();
        Rational::new(num, lcm)
    }

    /// `a(1 − p)`.
    pub fn reflect(&self) -> IntPoly {
        // Horner in the variable (1 − p).
        let one_minus_p = IntPoly::from_i64s(&[1, -1]);
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &one_minus_p) + &IntPoly::constant(c.clone());
        }
        acc
    }

    /// Divides by `p` as often as `p = 0` is a root; returns the multiplicity.
    pub fn strip_root_at_zero(&self) -> (IntPoly, usize) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if self.is_zero() {
            return (IntPoly::zero(), 0);
        }
        (IntPoly::new(self.coeffs[k..].to_vec()), k)
    }

    /// Divides by `p − 1` as often as `p = 1` is a root.
    pub fn strip_root_at_one(&self) -> (IntPoly, usize) {
        let mut cur = self.clone();
        let mut k = 0;
        while !cur.is_zero() && cur.value_at_one().is_zero() {
            cur = cur.div_by_linear_at_one();
            k += 1;
        }
        (cur, k)
    }

    // Synthetic division by (p − 1); caller guarantees exactness.
    fn div_by_linear_at_one(&self) -> IntPoly {
        let n = self.coeffs.len();
        let mut q = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        for i in (1..n).rev() {
            carry += &self.coeffs[i];
            q[i - 1] = carry.clone();
        }
        IntPoly::new(q)
    }

    /// Gcd of the coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content, keeping signs.
    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Exact quotient `self / divisor` in `Z[p]`.
    ///
    /// Fails if the division leaves a remainder or a non-integer quotient.
    pub fn exact_div(&self, divisor: &IntPoly) -> Result<IntPoly> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::InvalidArgument("division by zero polynomial".into()));
        };
        let Some(nd) = self.degree() else {
            return Ok(IntPoly::zero());
        };
        if nd < dd {
            return Err(Error::InvalidArgument("inexact polynomial division".into()));
        }
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let (q, r) = rem[k + dd].div_rem(lead);
            if !r.is_zero() {
                return Err(Error::InvalidArgument("inexact polynomial division".into()));
            }
            if q.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * dc;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InvalidArgument("inexact polynomial division".into()));
        }
        Ok(IntPoly::new(quot))
    }

    /// Pseudo-remainder `lc(b)^(deg a − deg b + 1) · a mod b`, with the
    /// multiplier's sign folded out so the result has the sign of `a mod b`.
    pub fn signed_pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        let Some(db) = b.degree() else {
            panic!("pseudo-remainder by zero polynomial");
        };
        let Some(da) = self.degree() else {
            return IntPoly::zero();
        };
        if da < db {
            return self.clone();
        }
        let lead = &b.coeffs[db];
        let mut rem = self.coeffs.clone();
        let steps = da - db + 1;
        for k in (0..steps).rev() {
            let top = rem[k + db].clone();
            for c in rem.iter_mut() {
                *c *= lead;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                rem[k + j] -= &top * bc;
            }
        }
        rem.truncate(db);
        let r = IntPoly::new(rem);
        if lead.is_negative() && steps % 2 == 1 {
            -r
        } else {
            r
        }
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.signed_pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        if a.leading().is_some_and(Signed::is_negative) {
            a = -a;
        }
        a
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "p")?,
                (1, false) => write!(f, "{mag}p")?,
                (_, true) => write!(f, "p^{i}")?,
                (_, false) => write!(f, "{mag}p^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (o, c) in out.iter_mut().zip(&short.coeffs) {
            *o += c;
        }
        IntPoly::new(out)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = self.coeffs.clone();
        out.resize(n, BigInt::zero());
        for (o, c) in out.iter_mut().zip(&rhs.coeffs) {
            *o -= c;
        }
        IntPoly::new(out)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    /// Schoolbook product, `O(deg a · deg b)` big-integer multiplications.
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;

            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

/// Polarization step `T₀(z) = z²` (series composition).
pub fn square_step(z: &IntPoly) -> IntPoly {
    z.square()
}

/// Polarization step `T₁(z) = 1 − (1 − z)² = 2z − z²` (parallel composition).
pub fn parallel_step(z: &IntPoly) -> IntPoly {
    &z.scale(&BigInt::from(2)) - &z.square()
}

pub(crate) fn sign_of(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Renders `r` with exactly `places` digits after the point, rounding half
/// away from zero.
pub fn format_decimal(r: &Rational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = r * Rational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let neg = rounded.is_negative();
    let (int_part, frac_part) = rounded.abs().div_rem(&scale);
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&int_part.to_string());
    if places > 0 {
        s.push('.');
        s.push_str(&format!(
            "{:0>width$}",
            frac_part.to_string(),
            width = places
        ));
    }
    s
}

/// Renders `r` as `num/den` (always with a denominator).
pub fn format_fraction(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"a/b"`, an integer, or a finite decimal such as `"1.22"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_str, frac_str) = body.split_once('.').unwrap_or((body, ""));
    if int_str.is_empty() && frac_str.is_empty()
        || !int_str
            .chars()
            .chain(frac_str.chars())
            .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_str}{frac_str}");
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let den = num_traits::pow(BigInt::from(10), frac_str.len());
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

/// Below this many coefficients schoolbook squaring is faster.
const KRONECKER_MIN_LEN: usize = 32;

/// `lcm(1, …, n)` as the product of the largest prime powers `≤ n`.
pub fn lcm_upto(n: usize) -> BigInt {
    let mut composite = vec![false; n + 1];
    let mut acc = BigInt::one();
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        for q in (p * p..=n).step_by(p) {
            composite[q] = true;
        }
        let mut pk = p;
        while pk <= n / p {
            pk *= p;
        }
        acc *= BigInt::from(pk);
    }
    acc
}

/// Convenience constructor for small rationals.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn ring_operations() {
        assert_eq!(&IntPoly::p() * &IntPoly::p(), poly(&[0, 0, 1]));
        let a = poly(&[0, 2, -1]);
        assert_eq!(&a * &a, poly(&[0, 0, 4, -4, 1]));
        assert_eq!(a.square(), &a * &a);
        assert!((&a - &a).is_zero());
        assert_eq!((&a * &a).degree(), Some(4));
        assert_eq!(&a + &IntPoly::zero(), a);
    }

    #[test]
    fn normalization_drops_trailing_zeros() {
        let a = poly(&[1, 2, 0, 0]);
        assert_eq!(a.coeffs().len(), 2);
        assert!(poly(&[0, 0]).is_zero());
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn polarization_steps() {
        let p = IntPoly::p();
        assert_eq!(square_step(&p), poly(&[0, 0, 1]));
        assert_eq!(square_step(&poly(&[0, 2, -1])), poly(&[0, 0, 4, -4, 1]));
        assert_eq!(square_step(&IntPoly::one()), IntPoly::one());
        assert_eq!(parallel_step(&p), poly(&[0, 2, -1]));
        assert_eq!(parallel_step(&IntPoly::zero()), IntPoly::zero());
        assert_eq!(parallel_step(&IntPoly::one()), IntPoly::one());
    }

    #[test]
    fn evaluation() {
        assert_eq!(IntPoly::monomial(4).eval(&ratio(1, 2)), ratio(1, 16));
        assert_eq!(poly(&[0, 2, -1]).eval(&ratio(1, 1)), ratio(1, 1));
        // T₀ after T₁: 2p² − p⁴
        let z = parallel_step(&square_step(&IntPoly::p()));
        assert_eq!(z, poly(&[0, 0, 2, 0, -1]));
        assert_eq!(z.eval(&ratio(1, 2)), ratio(7, 16));
        assert_eq!(z.sign_at(&ratio(1, 2)), 1);
        assert_eq!(poly(&[1, -2]).sign_at(&ratio(1, 2)), 0);
    }

    #[test]
    fn integration() {
        assert_eq!(IntPoly::monomial(4).integrate01(), ratio(1, 5));
        assert_eq!(poly(&[0, 0, 2, 0, -1]).integrate01(), ratio(7, 15));
        assert_eq!(IntPoly::zero().integrate01(), ratio(0, 1));
    }

    #[test]
    fn reflect_is_involution() {
        let a = poly(&[3, -1, 4, 1, -5, 9]);
        assert_eq!(a.reflect().reflect(), a);
        assert_eq!(IntPoly::p().reflect(), poly(&[1, -1]));
    }

    #[test]
    fn endpoint_stripping() {
        // p^2 (p − 1)^3 (2p + 1)
        let base = poly(&[1, 2]);
        let pm1 = poly(&[-1, 1]);
        let d = &(&(&IntPoly::monomial(2) * &pm1) * &(&pm1 * &pm1)) * &base;
        let (d0, k0) = d.strip_root_at_zero();
        assert_eq!(k0, 2);
        let (d1, k1) = d0.strip_root_at_one();
        assert_eq!(k1, 3);
        assert_eq!(d1, base);
    }

    #[test]
    fn exact_division_and_gcd() {
        let a = poly(&[-1, 0, 1]); // (p−1)(p+1)
        let b = poly(&[1, 1]);
        assert_eq!(a.exact_div(&b).unwrap(), poly(&[-1, 1]));
        assert!(a.exact_div(&poly(&[1, 2])).is_err());
        let g = (&a * &poly(&[3, 7])).gcd(&(&b * &poly(&[0, 0, 5])));
        assert_eq!(g, b);
        assert_eq!(poly(&[6, 4]).primitive_part(), poly(&[3, 2]));
        assert_eq!(poly(&[-6, -4]).content(), BigInt::from(2));
    }

    #[test]
    fn pseudo_remainder_sign() {
        // a = p^2 + 1, b = -2p + 1: a mod b over Q is 5/4 > 0.
        let r = poly(&[1, 0, 1]).signed_pseudo_rem(&poly(&[1, -2]));
        assert_eq!(r.degree(), Some(0));
        assert!(r.coeff(0).is_positive());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(format_decimal(&ratio(7, 15), 2), "0.47");
        assert_eq!(format_decimal(&ratio(1, 8), 2), "0.13");
        assert_eq!(format_decimal(&ratio(-1, 8), 2), "-0.13");
        assert_eq!(format_decimal(&ratio(4, 5), 6), "0.800000");
        assert_eq!(format_decimal(&ratio(3, 1), 0), "3");
        assert_eq!(format_fraction(&ratio(6, 4)), "3/2");
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("1/2").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("1.22").unwrap(), ratio(61, 50));
        assert_eq!(parse_rational("-0.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("3").unwrap(), ratio(3, 1));
        assert_eq!(parse_rational(".25").unwrap(), ratio(1, 4));
        for bad in ["", "1/0", "abc", "1.2.3", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[0, 2, -1]).to_string(), "-p^2 + 2p");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(poly(&[-3]).to_string(), "-3");
    }

    #[test]
    fn lcm_of_ranges() {
        assert_eq!(lcm_upto(0), BigInt::one());
        assert_eq!(lcm_upto(1), BigInt::one());
        assert_eq!(lcm_upto(10), BigInt::from(2520));
        let slow = (1..=200u32)
            .map(BigInt::from)
            .fold(BigInt::one(), |acc, k| acc.lcm(&k));
        assert_eq!(lcm_upto(200), slow);
    }

    #[test]
    fn kronecker_square_matches_schoolbook() {
        let mut z = IntPoly::p();
        for step in 0..7 {
            z = if step % 2 == 0 {
                parallel_step(&z)
            } else {
                square_step(&z)
            };
            let shifted = &z - &IntPoly::monomial(3);
            assert_eq!(shifted.square(), shifted.square_schoolbook(), "step {step}");
        }
    }
}
