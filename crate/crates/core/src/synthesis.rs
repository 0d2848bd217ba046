//! Bhattacharyya polynomials `Z(W^u)` of the BEC synthetic channels.
//!
//! Over `BEC(p)` the two channel transforms act on the erasure probability
//! `z` as `T₀(z) = z²` and `T₁(z) = 2z − z²`. Starting from `z = p`, the
//! bits are applied from `u_{m−1}` (innermost) down to `u_0` (outermost),
//! so that for example `Z(W^{x_0x_3}) = 1 − (1 − (1 − (1 − p)²)⁴)²` at
//! `m = 4`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::monomials::{Monomial, MAX_M};
use crate::polynomials::{parallel_step, ratio, square_step, IntPoly, Rational};

/// Default largest `m` accepted by [`synth_all`].
pub const DEFAULT_CAP: usize = 10;

/// Default bisection tolerance for [`threshold_estimate`]: `2^-30`.
pub fn default_tolerance() -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << 30)
}

/// `Z(W^u)` for a single channel.
pub fn synth_poly(u: Monomial) -> IntPoly {
    (0..u.m())
        .rev()
        .fold(IntPoly::p(), |z, i| apply_bit(&z, u.bit(i)))
}

fn apply_bit(z: &IntPoly, bit: bool) -> IntPoly {
    if bit {
        parallel_step(z)
    } else {
        square_step(z)
    }
}

/// `Z(W^u)(p)` at a rational point, following the recursion on values
/// rather than expanding the polynomial.
pub fn eval_channel(u: Monomial, p: &Rational) -> Rational {
    let two = ratio(2, 1);
    (0..u.m()).rev().fold(
        p.clone(),
        |z, i| {
            if u.bit(i) {
                &z * (&two - &z)
            } else {
                &z * &z
            }
        },
    )
}

/// `Z(W^u)` for every `u ∈ {0,1}^m`, indexed by the integer value of `u`.
#[derive(Debug)]
pub struct ChannelTable {
    m: usize,
    polys: Vec<IntPoly>,
    averages: OnceLock<Vec<Rational>>,
}

impl Clone for ChannelTable {
    fn clone(&self) -> Self {
        ChannelTable {
            m: self.m,
            polys: self.polys.clone(),
            averages: self.averages.clone(),
        }
    }
}

impl ChannelTable {
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of channels, `2^m`.
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn get(&self, u: Monomial) -> &IntPoly {
        assert_eq!(u.m(), self.m, "monomial from a different m");
        &self.polys[u.index()]
    }

    pub fn by_index(&self, u: usize) -> &IntPoly {
        &self.polys[u]
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.polys
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        Monomial::all(self.m).expect("table m is valid")
    }

    /// `Avr(u) = ∫₀¹ Z(W^u)`, computed once and cached.
    pub fn averages(&self) -> &[Rational] {
        self.averages
            .get_or_init(|| self.polys.par_iter().map(IntPoly::integrate01).collect())
    }

    pub fn average(&self, u: Monomial) -> &Rational {
        &self.averages()[u.index()]
    }

    /// Checks `Σ_u Z_u(p) = 2^m · p` exactly.
    pub fn conservation_holds(&self) -> bool {
        let sum = self.polys.iter().fold(IntPoly::zero(), |acc, z| &acc + z);
        sum == IntPoly::p().scale(&BigInt::from(self.len()))
    }

    /// Returns every `u` for which `Z_ū ≠ 1 − Z_u(1 − p)`.
    pub fn duality_violations(&self) -> Vec<usize> {
        let top = self.len() - 1;
        (0..self.len())
            .into_par_iter()
            .filter(|&u| dual_poly(&self.polys[u]) != self.polys[top - u])
            .collect()
    }
}

/// Builds the table for `m ≤` [`DEFAULT_CAP`].
pub fn synth_all(m: usize) -> Result<ChannelTable> {
    synth_all_capped(m, DEFAULT_CAP)
}

/// Builds the table for `m ≤ cap`.
///
/// Polynomials are produced level by level on a binary tree keyed by the
/// bits applied so far, so each shared suffix `(u_i, …, u_{m−1})` is
/// computed once: `2^{m+1} − 2` transform applications in total.
pub fn synth_all_capped(m: usize, cap: usize) -> Result<ChannelTable> {
    if m == 0 || m > MAX_M {
        return Err(Error::UnsupportedM(m));
    }
    if m > cap {
        return Err(Error::OverCap { m, cap });
    }
    // Key after j levels: u_{m−1} … u_{m−j} read as a binary number with
    // u_{m−j} least significant; appending the next bit shifts left.
    let mut level = vec![IntPoly::p()];
    for _ in 0..m {
        level = level
            .par_iter()
            .flat_map_iter(|z| [square_step(z), parallel_step(z)])
            .collect();
    }
    Ok(ChannelTable {
        m,
        polys: level,
        averages: OnceLock::new(),
    })
}

/// `1 − a(1 − p)`.
pub fn dual_poly(a: &IntPoly) -> IntPoly {
    &IntPoly::one() - &a.reflect()
}

/// Approximates the point where `a(p) = 1/2` by exact bisection.
///
/// Returns the midpoint of a final bracket of width at most `2·tol`, so the
/// true crossing is within `tol`. `a` must satisfy `a(0) < 1/2 ≤ a(1)`.
pub fn threshold_estimate(a: &IntPoly, tol: &Rational) -> Result<Rational> {
    bisect_half(|x| a.eval(x), tol)
}

/// [`threshold_estimate`] for `Z(W^u)`, evaluated through the recursion.
pub fn threshold_estimate_channel(u: Monomial, tol: &Rational) -> Result<Rational> {
    bisect_half(|x| eval_channel(u, x), tol)
}

/// [`threshold_estimate_channel`] for several channels in parallel.
pub fn threshold_estimates(us: &[Monomial], tol: &Rational) -> Result<Vec<Rational>> {
    us.par_iter()
        .map(|&u| threshold_estimate_channel(u, tol))
        .collect()
}

fn bisect_half(f: impl Fn(&Rational) -> Rational, tol: &Rational) -> Result<Rational> {
    if *tol <= Rational::zero() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let half = ratio(1, 2);
    let (mut lo, mut hi) = (Rational::zero(), Rational::one());
    if f(&lo) >= half || f(&hi) < half {
        return Err(Error::Bracket(
            "expected a(0) < 1/2 <= a(1); input is not a channel polynomial".into(),
        ));
    }
    let two = ratio(2, 1);
    while &hi - &lo > &two * tol {
        let mid = (&lo + &hi) / &two;
        if f(&mid) < half {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / two)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn mono(u: u64, m: usize) -> Monomial {
        Monomial::from_int(u, m).unwrap()
    }

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    // Direct expansion of a nested closed form, independent of the
    // bit-order loop in `synth_poly`.
    fn one_minus(a: &IntPoly) -> IntPoly {
        &IntPoly::one() - a
    }

    fn pow(a: &IntPoly, k: u32) -> IntPoly {
        (0..k).fold(IntPoly::one(), |acc, _| &acc * a)
    }

    #[test]
    fn x0x3_matches_nested_form() {
        // 1 − (1 − (1 − (1 − p)²)⁴)²
        let p = IntPoly::p();
        let inner = one_minus(&pow(&one_minus(&p), 2));
        let expected = one_minus(&pow(&one_minus(&pow(&inner, 4)), 2));
        assert_eq!(synth_poly(mono(0b1001, 4)), expected);
    }

    #[test]
    fn x1x2_matches_nested_form() {
        // (1 − (1 − p²)⁴)²
        let p = IntPoly::p();
        let expected = pow(&one_minus(&pow(&one_minus(&pow(&p, 2)), 4)), 2);
        assert_eq!(synth_poly(mono(0b0110, 4)), expected);
    }

    #[test]
    fn all_zero_channel() {
        assert_eq!(synth_poly(mono(0, 2)), IntPoly::monomial(4));
        assert_eq!(synth_poly(mono(0, 5)).degree(), Some(32));
    }

    #[test]
    fn table_m1_and_m2() {
        let t = synth_all(1).unwrap();
        assert_eq!(t.by_index(0), &poly(&[0, 0, 1]));
        assert_eq!(t.by_index(1), &poly(&[0, 2, -1]));
        let t = synth_all(2).unwrap();
        let avr: Vec<Rational> = t.averages().to_vec();
        assert_eq!(
            avr,
            vec![ratio(1, 5), ratio(7, 15), ratio(8, 15), ratio(4, 5)]
        );
    }

    #[test]
    fn table_matches_single_synthesis() {
        for m in 1..=6 {
            let t = synth_all(m).unwrap();
            assert_eq!(t.len(), 1 << m);
            for u in t.monomials() {
                assert_eq!(t.get(u), &synth_poly(u), "m={m} u={u}");
            }
        }
    }

    #[test]
    fn endpoint_values_and_degree() {
        let t = synth_all(5).unwrap();
        for z in t.polys() {
            assert!(z.coeff(0).is_zero());
            assert!(z.value_at_one().is_one());
            assert_eq!(z.degree(), Some(32));
        }
    }

    #[test]
    fn identities_small_m() {
        for m in 1..=6 {
            let t = synth_all(m).unwrap();
            assert!(t.conservation_holds(), "m={m}");
            assert!(t.duality_violations().is_empty(), "m={m}");
        }
    }

    #[test]
    fn cap_enforced() {
        assert_eq!(
            synth_all(11).unwrap_err(),
            Error::OverCap { m: 11, cap: 10 }
        );
        assert!(synth_all_capped(0, 10).is_err());
        assert!(synth_all_capped(3, 3).is_ok());
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_poly(&poly(&[0, 0, 1])), poly(&[0, 2, -1]));
        let z3 = synth_poly(mono(3, 5));
        assert_eq!(dual_poly(&z3), synth_poly(mono(28, 5)));
        assert_eq!(dual_poly(&dual_poly(&z3)), z3);
    }

    #[test]
    fn recursion_evaluation_matches_polynomial() {
        let x = ratio(3, 7);
        for u in Monomial::all(4).unwrap() {
            assert_eq!(eval_channel(u, &x), synth_poly(u).eval(&x));
        }
    }

    #[test]
    fn thresholds_of_single_steps() {
        let tol = default_tolerance();
        // 2p − p² = 1/2 at 1 − √2/2; p² = 1/2 at √2/2.
        let lo_root = 1.0 - std::f64::consts::SQRT_2 / 2.0;
        let hi_root = std::f64::consts::SQRT_2 / 2.0;
        let t1 = threshold_estimate(&poly(&[0, 2, -1]), &tol).unwrap();
        let t0 = threshold_estimate(&poly(&[0, 0, 1]), &tol).unwrap();
        let to_f64 = |r: &Rational| num_traits::ToPrimitive::to_f64(r).unwrap();
        let tol_f = 2f64.powi(-30);
        assert!((to_f64(&t1) - lo_root).abs() <= tol_f);
        assert!((to_f64(&t0) - hi_root).abs() <= tol_f);
    }

    #[test]
    fn thresholds_of_dual_pairs_sum_to_one() {
        let tol = ratio(1, 1 << 20);
        for u in Monomial::all(4).unwrap() {
            let a = synth_poly(u);
            let s = threshold_estimate(&a, &tol).unwrap()
                + threshold_estimate(&dual_poly(&a), &tol).unwrap();
            let err = (s - ratio(1, 1)).abs();
            assert!(err <= &tol * ratio(2, 1), "u={u}");
            assert_eq!(
                threshold_estimate_channel(u, &tol).unwrap(),
                threshold_estimate(&a, &tol).unwrap()
            );
        }
    }

    #[test]
    fn threshold_rejects_non_channel() {
        assert!(matches!(
            threshold_estimate(&poly(&[1, -1]), &default_tolerance()),
            Err(Error::Bracket(_))
        ));
        assert!(threshold_estimate(&IntPoly::p(), &ratio(0, 1)).is_err());
    }
}
