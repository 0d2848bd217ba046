//! Exact sign analysis of integer polynomials on `[0, 1]`.
//!
//! `nonneg_on_01` decides whether `d(p) ≥ 0` for every `p ∈ [0, 1]`:
//!
//! 1. `d = 0` is reported separately.
//! 2. Fast path: if every path count of `d` (at `n = deg d`) is `≥ 0`, the
//!    polynomial is a non-negative combination of non-negative basis
//!    functions.
//! 3. Roots at `p = 0` and `p = 1` are divided out (endpoint roots are
//!    allowed).
//! 4. The odd-multiplicity part is extracted by square-free decomposition.
//!    Any of its roots in `(0, 1)` is a sign change, counted with a Sturm
//!    sequence.
//! 5. Otherwise the remaining roots in `(0, 1)` are isolated by bisection
//!    and `d` is evaluated at a rational point of every root-free gap.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ratio, sign_of, to_path_counts, IntPoly, Rational};

/// Outcome of [`nonneg_on_01`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignVerdict {
    Nonnegative,
    CrossesZero,
    IdenticallyZero,
}

/// Decides the sign of `d` on the closed interval `[0, 1]`.
pub fn nonneg_on_01(d: &IntPoly) -> SignVerdict {
    if d.is_zero() {
        return SignVerdict::IdenticallyZero;
    }
    let n = d.degree().unwrap_or(0);
    let pc = to_path_counts(d, n).expect("degree equals n");
    if pc.all_nonnegative() {
        return SignVerdict::Nonnegative;
    }
    if pc.all_nonpositive() {
        // Non-positive and not identically zero on an interval.
        return SignVerdict::CrossesZero;
    }
    nonneg_on_01_sturm(d)
}

/// [`nonneg_on_01`] without the path-count fast path.
pub fn nonneg_on_01_sturm(d: &IntPoly) -> SignVerdict {
    if d.is_zero() {
        return SignVerdict::IdenticallyZero;
    }
    let (inner, _) = d.strip_root_at_zero();
    let (inner, k) = inner.strip_root_at_one();
    // (p − 1)^k has sign (−1)^k on (0, 1).
    let inner = if k % 2 == 1 { -inner } else { inner };
    if inner.degree() == Some(0) {
        return constant_verdict(&inner);
    }
    let odd = odd_multiplicity_part(&inner);
    if odd.degree().unwrap_or(0) > 0 && count_roots_01(&odd) > 0 {
        return SignVerdict::CrossesZero;
    }
    // Only even-multiplicity roots remain inside (0, 1); the sign is
    // constant on every gap between them.
    let samples = gap_samples(&inner);
    if samples.iter().any(|x| inner.sign_at(x) < 0) {
        SignVerdict::CrossesZero
    } else {
        SignVerdict::Nonnegative
    }
}

fn constant_verdict(c: &IntPoly) -> SignVerdict {
    if sign_of(&c.coeff(0)) < 0 {
        SignVerdict::CrossesZero
    } else {
        SignVerdict::Nonnegative
    }
}

/// Square-free factors `a_1, a_2, …` with `a = c · Π a_i^i` (Yun).
///
/// Every factor is primitive with a positive leading coefficient; an empty
/// list is returned for constants.
pub fn square_free_factors(a: &IntPoly) -> Vec<IntPoly> {
    let mut factors = Vec::new();
    if a.degree().unwrap_or(0) == 0 {
        return factors;
    }
    let a = a.primitive_part();
    let da = a.derivative();
    let b = a.gcd(&da);
    let mut c = a.exact_div(&b).expect("gcd divides a");
    let mut d = &da.exact_div(&b).expect("gcd divides a'") - &c.derivative();
    loop {
        let ai = c.gcd(&d);
        c = c.exact_div(&ai).expect("factor divides c");
        factors.push(ai.clone());
        if c.degree().unwrap_or(0) == 0 {
            break;
        }
        d = &d.exact_div(&ai).expect("factor divides d") - &c.derivative();
    }
    factors
}

/// Product of the square-free factors of odd multiplicity.
pub fn odd_multiplicity_part(a: &IntPoly) -> IntPoly {
    square_free_factors(a)
        .iter()
        .enumerate()
        .filter(|(i, _)| i % 2 == 0)
        .fold(IntPoly::one(), |acc, (_, f)| &acc * f)
}

/// `a / gcd(a, a')`: one copy of every distinct root.
pub fn square_free_part(a: &IntPoly) -> IntPoly {
    if a.degree().unwrap_or(0) == 0 {
        return a.primitive_part();
    }
    let a = a.primitive_part();
    a.exact_div(&a.gcd(&a.derivative())).expect("gcd divides a")
}

/// Sturm sequence `s_0 = q, s_1 = q', s_{k+1} = −rem(s_{k−1}, s_k)`.
///
/// Remainders are pseudo-remainders with their positive content stripped,
/// which leaves every sign unchanged.
pub fn sturm_sequence(q: &IntPoly) -> Vec<IntPoly> {
    let mut seq = vec![q.primitive_part()];
    let d = q.derivative().primitive_part();
    if d.is_zero() {
        return seq;
    }
    seq.push(d);
    loop {
        let len = seq.len();
        let r = seq[len - 2].signed_pseudo_rem(&seq[len - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-r.primitive_part());
    }
    seq
}

fn sign_variations(seq: &[IntPoly], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in seq {
        let sg = s.sign_at(x);
        if sg == 0 {
            continue;
        }
        if last != 0 && sg != last {
            count += 1;
        }
        last = sg;
    }
    count
}

/// Number of distinct roots in `(lo, hi]`; `lo` must not be a root.
fn count_in(seq: &[IntPoly], lo: &Rational, hi: &Rational) -> usize {
    sign_variations(seq, lo).saturating_sub(sign_variations(seq, hi))
}

/// Number of distinct real roots of `q` in the open interval `(0, 1)`.
pub fn count_roots_01(q: &IntPoly) -> usize {
    if q.is_zero() {
        panic!("the zero polynomial has infinitely many roots");
    }
    let (q, _) = q.strip_root_at_zero();
    let (q, _) = q.strip_root_at_one();
    if q.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = sturm_sequence(&q);
    count_in(&seq, &Rational::zero(), &Rational::one())
}

/// Isolating intervals `(lo, hi]` for the distinct roots of `q` in `(0, 1)`.
///
/// Every interval contains exactly one root, its endpoints are not roots,
/// and `0 < lo < hi < 1`. Intervals are returned in increasing order.
pub fn isolate_roots_01(q: &IntPoly) -> Vec<(Rational, Rational)> {
    if q.is_zero() {
        panic!("the zero polynomial has infinitely many roots");
    }
    let (q, _) = q.strip_root_at_zero();
    let (q, _) = q.strip_root_at_one();
    if q.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let q = square_free_part(&q);
    let seq = sturm_sequence(&q);

    let mut out = Vec::new();
    let mut stack = vec![(Rational::zero(), Rational::one())];
    while let Some((lo, hi)) = stack.pop() {
        let count = count_in(&seq, &lo, &hi);
        if count == 0 {
            continue;
        }
        if count == 1 && !lo.is_zero() && !hi.is_one() {
            out.push((lo, hi));
            continue;
        }
        let mid = split_point(&q, &lo, &hi);
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out.sort();
    out
}

// A non-root point strictly inside (lo, hi), close to the midpoint.
fn split_point(q: &IntPoly, lo: &Rational, hi: &Rational) -> Rational {
    let width = hi - lo;
    for den in 2i64.. {
        for num in [den / 2, den / 2 + 1, 1, den - 1] {
            if num <= 0 || num >= den {
                continue;
            }
            let x = lo + &width * ratio(num, den);
            if q.sign_at(&x) != 0 {
                return x;
            }
        }
    }
    unreachable!("a nonzero polynomial has finitely many roots")
}

/// One rational point in every root-free gap of `q` inside `(0, 1)`.
fn gap_samples(q: &IntPoly) -> Vec<Rational> {
    let intervals = isolate_roots_01(q);
    if intervals.is_empty() {
        return vec![split_point(q, &Rational::zero(), &Rational::one())];
    }
    // Interval endpoints are non-roots; the first lo and every hi sit in
    // distinct gaps, covering the gaps before, between and after roots.
    let mut samples = vec![intervals[0].0.clone()];
    samples.extend(intervals.into_iter().map(|(_, hi)| hi));
    samples
}

/// Distinct real roots of `q` in `(0, 1)` by brute-force bisection on a
/// dyadic grid; used by tests as an independent check of the Sturm count.
pub fn sign_changes_on_grid(q: &IntPoly, steps: u32) -> usize {
    let den = BigInt::from(steps);
    let mut last = 0i8;
    let mut changes = 0;
    for k in 1..steps {
        let x = Rational::new(BigInt::from(k), den.clone());
        let s = q.sign_at(&x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}
