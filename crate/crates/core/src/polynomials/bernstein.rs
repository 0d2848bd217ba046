//! Path counts: coefficients in the basis `p^i (1 − p)^(n − i)`.
//!
//! For a two-terminal network of `n` devices, `N_i` is the number of
//! `i`-device subsets that connect the terminals, and its reliability is
//! `Σ N_i p^i (1 − p)^(n − i)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{IntPoly, Rational};
use crate::error::{Error, Result};

/// `N_0 … N_n` for a network of size `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathCounts {
    n: usize,
    counts: Vec<BigInt>,
}

impl PathCounts {
    /// Wraps `counts`, which must have exactly `n + 1` entries.
    pub fn new(n: usize, counts: Vec<BigInt>) -> Result<Self> {
        if counts.len() != n + 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} path counts for n = {n}, got {}",
                n + 1,
                counts.len()
            )));
        }
        Ok(PathCounts { n, counts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    pub fn get(&self, i: usize) -> &BigInt {
        &self.counts[i]
    }

    /// True if every coefficient is non-negative; then the polynomial is
    /// non-negative on `[0, 1]`.
    pub fn all_nonnegative(&self) -> bool {
        self.counts.iter().all(|c| !c.is_negative())
    }

    pub fn all_nonpositive(&self) -> bool {
        self.counts.iter().all(|c| !c.is_positive())
    }

    /// Smallest `i` with `N_i ≠ 0`: the minimal path length of a network.
    pub fn min_path_length(&self) -> Option<usize> {
        self.counts.iter().position(|c| !c.is_zero())
    }

    /// `∫₀¹ Σ N_i p^i (1 − p)^(n − i) dp = (1 / (n + 1)) Σ N_i / C(n, i)`.
    pub fn average(&self) -> Rational {
        let n = self.n;
        let sum: Rational = self
            .counts
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| Rational::new(c.clone(), binomial(n, i)))
            .sum();
        sum / Rational::from_integer(BigInt::from(n + 1))
    }

    /// The polynomial `Σ N_i p^i (1 − p)^(n − i)` in the power basis.
    pub fn to_poly(&self) -> IntPoly {
        from_path_counts(self)
    }
}

/// Binomial coefficient `C(n, k)`, zero for `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc *= BigInt::from(n - t);
        acc /= BigInt::from(t + 1);
    }
    acc
}

/// Converts `a(p)` to path counts for size `n`:
/// `N_i = Σ_{k ≤ i} a_k C(n − k, i − k)`.
pub fn to_path_counts(a: &IntPoly, n: usize) -> Result<PathCounts> {
    if let Some(deg) = a.degree() {
        if deg > n {
            return Err(Error::DegreeTooLarge { degree: deg, n });
        }
    }
    let mut counts = vec![BigInt::zero(); n + 1];
    for (k, ak) in a.coeffs().iter().enumerate() {
        if ak.is_zero() {
            continue;
        }
        // p^k = Σ_j C(n − k, j) p^(k + j) (1 − p)^(n − k − j)
        let r = n - k;
        let mut c = BigInt::one();
        for j in 0..=r {
            counts[k + j] += ak * &c;
            c = c * BigInt::from(r - j) / BigInt::from(j + 1);
        }
    }
    Ok(PathCounts { n, counts })
}

/// Expands `Σ N_i p^i (1 − p)^(n − i)` into the power basis.
pub fn from_path_counts(pc: &PathCounts) -> IntPoly {
    let n = pc.n;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for (i, ni) in pc.counts.iter().enumerate() {
        if ni.is_zero() {
            continue;
        }
        // p^i (1 − p)^r = Σ_t (−1)^t C(r, t) p^(i + t)
        let r = n - i;
        let mut c = BigInt::one();
        for t in 0..=r {
            if t % 2 == 0 {
                coeffs[i + t] += ni * &c;
            } else {
                coeffs[i + t] -= ni * &c;
            }
            c = c * BigInt::from(r - t) / BigInt::from(t + 1);
        }
    }
    IntPoly::new(coeffs)
}
