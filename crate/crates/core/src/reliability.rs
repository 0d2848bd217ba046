//! Two-terminal series-parallel compositions and their path counts.
//!
//! `C^u` is built from a single device by replacing every device with two
//! devices in series (`u_i = 0`) or in parallel (`u_i = 1`), for
//! `i = 0, …, m − 1`. Its reliability polynomial equals `Z(W^u)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::monomials::Monomial;
use crate::polynomials::{binomial, PathCounts, Rational};

/// Size, width and length of `C^u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CompositionParams {
    pub m: usize,
    pub u: Monomial,
    /// `2^m` devices.
    pub n: usize,
    /// Minimal cut, `2^{|u|}`.
    pub w: usize,
    /// Minimal path, `2^{m − |u|}`.
    pub l: usize,
}

impl CompositionParams {
    pub fn of(u: Monomial) -> Self {
        let m = u.m();
        CompositionParams {
            m,
            u,
            n: 1 << m,
            w: 1 << u.degree(),
            l: 1 << (m - u.degree()),
        }
    }
}

/// A two-terminal multigraph; edges are devices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionGraph {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
    pub source: usize,
    pub sink: usize,
}

/// Largest `m` accepted by [`build_graph`].
pub const GRAPH_MAX_M: usize = 12;
/// Largest device count accepted by [`oracle_path_counts`].
pub const ORACLE_MAX_EDGES: usize = 16;

/// Builds `C^u` by edge replacement, `u_0` outermost.
pub fn build_graph(u: Monomial) -> Result<CompositionGraph> {
    if u.m() > GRAPH_MAX_M {
        return Err(Error::OverCap {
            m: u.m(),
            cap: GRAPH_MAX_M,
        });
    }
    let mut nodes = 2;
    let mut edges = vec![(0usize, 1usize)];
    for i in 0..u.m() {
        let mut next = Vec::with_capacity(edges.len() * 2);
        for &(a, b) in &edges {
            if u.bit(i) {
                next.push((a, b));
                next.push((a, b));
            } else {
                let mid = nodes;
                nodes += 1;
                next.push((a, mid));
                next.push((mid, b));
            }
        }
        edges = next;
    }
    Ok(CompositionGraph {
        nodes,
        edges,
        source: 0,
        sink: 1,
    })
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Counts, for every `i`, the `i`-edge subsets that connect source to sink.
///
/// Enumerates all `2^{edges}` subsets with a union-find per subset.
pub fn oracle_path_counts(g: &CompositionGraph) -> Result<PathCounts> {
    let e = g.edges.len();
    if e > ORACLE_MAX_EDGES {
        return Err(Error::OverCap {
            m: e,
            cap: ORACLE_MAX_EDGES,
        });
    }
    let mut edges = g.edges.clone();
    edges.sort_unstable();
    let subsets: u32 = 1 << e;
    let chunk = 1u32 << e.saturating_sub(4).min(12);
    let counts = (0..subsets.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut local = vec![0u64; e + 1];
            let start = c * chunk;
            for mask in start..(start + chunk).min(subsets) {
                let mut uf = UnionFind::new(g.nodes);
                for (k, &(a, b)) in edges.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        uf.union(a, b);
                    }
                }
                if uf.find(g.source) == uf.find(g.sink) {
                    local[mask.count_ones() as usize] += 1;
                }
            }
            local
        })
        .reduce(
            || vec![0u64; e + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    PathCounts::new(e, counts.into_iter().map(BigInt::from).collect())
}

/// Path counts of `C^(1^k 0^(m−k))` (`k = i_ones`) by inclusion–exclusion
/// over the `w` parallel branches of length `l`:
/// `N_i = Σ_{j=1}^{⌊i/l⌋} (−1)^{j+1} C(w, j) C(n − jl, n − i)` for `i ≥ l`.
pub fn ni_inclusion_exclusion(m: usize, i_ones: usize) -> Result<PathCounts> {
    if i_ones > m {
        return Err(Error::InvalidArgument(format!(
            "ones count {i_ones} exceeds m = {m}"
        )));
    }
    let n = 1usize << m;
    let w = 1usize << i_ones;
    let l = 1usize << (m - i_ones);
    let mut counts = vec![BigInt::zero(); n + 1];
    for (i, slot) in counts.iter_mut().enumerate().skip(l) {
        let mut acc = BigInt::zero();
        for j in 1..=(i / l).min(w) {
            let term = binomial(w, j) * binomial(n - j * l, n - i);
            if j % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        *slot = acc;
    }
    PathCounts::new(n, counts)
}

/// `(1^k 0^(m−k))` as a monomial: `x_0 ⋯ x_{k−1}`.
pub fn leading_ones(m: usize, i_ones: usize) -> Result<Monomial> {
    if i_ones > m {
        return Err(Error::InvalidArgument(format!(
            "ones count {i_ones} exceeds m = {m}"
        )));
    }
    Monomial::from_int((1u64 << i_ones) - 1, m)
}

/// Generalized binomial `x (x − 1) ⋯ (x − k + 1) / k!`.
pub fn gen_binomial(x: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for t in 0..k {
        acc *= x - Rational::from_integer(BigInt::from(t));
        acc /= Rational::from_integer(BigInt::from(t + 1));
    }
    acc
}

fn closed_form_binomial(m: usize, i_ones: usize) -> Rational {
    // C(2^i + 2^{i−m}, 2^i), the upper argument being (n + 1) / l.
    let w = 1usize << i_ones;
    let upper = Rational::new(
        BigInt::from((1u64 << m) + 1),
        BigInt::from(1u64 << (m - i_ones)),
    );
    gen_binomial(&upper, w)
}

/// Closed form `Avr(W^(1^k 0^(m−k))) = 1 − 1 / C(2^k + 2^{k−m}, 2^k)`.
pub fn avr_closed_form(m: usize, i_ones: usize) -> Result<Rational> {
    leading_ones(m, i_ones)?;
    Ok(Rational::one() - closed_form_binomial(m, i_ones).recip())
}

/// Complementary form `Avr(W^(0^k 1^(m−k))) = 1 / C(2^k + 2^{k−m}, 2^k)`.
pub fn avr_closed_form_complement(m: usize, i_ones: usize) -> Result<Rational> {
    leading_ones(m, i_ones)?;
    Ok(closed_form_binomial(m, i_ones).recip())
}

/// The three binomial families whose limits locate the thresholds of
/// `W^(1^k 0^(m−k))` as `n = 2^m → ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdFamily {
    /// `k = n / (log n · log log n)`, tends to 1.
    TendsToOne,
    /// `k = n / log log n`, unbounded.
    Unbounded,
    /// `k = n / log n`, tends to 2.
    TendsToTwo,
}

impl ThresholdFamily {
    fn divisor(&self, log_n: f64) -> f64 {
        match self {
            ThresholdFamily::TendsToOne => log_n * log_n.log2(),
            ThresholdFamily::Unbounded => log_n.log2(),
            ThresholdFamily::TendsToTwo => log_n,
        }
    }
}

/// `C(k + 1/L, k)` with `k = n / L`, evaluated through the gamma function
/// for real `k` (`n = 2^m`, logs base 2).
pub fn threshold_binomial(m: u32, family: ThresholdFamily) -> f64 {
    let log_n = m as f64;
    let div = family.divisor(log_n);
    let k = 2f64.powi(m as i32) / div;
    let eps = 1.0 / div;
    // ln C(k + ε, k) = ln Γ(k + 1 + ε) − ln Γ(k + 1) − ln Γ(1 + ε)
    (ln_gamma_shift(k + 1.0, eps) - ln_gamma_shift(1.0, eps)).exp()
}

/// Smallest `m` in `6..=max_m` at which [`threshold_binomial`] exceeds `bound`,
/// requiring the values to increase up to that point.
pub fn first_exceeding(family: ThresholdFamily, bound: f64, max_m: u32) -> Option<u32> {
    let mut prev = f64::NEG_INFINITY;
    for m in 6..=max_m {
        let v = threshold_binomial(m, family);
        if v <= prev {
            return None;
        }
        if v > bound {
            return Some(m);
        }
        prev = v;
    }
    None
}

/// `ln Γ(x + ε) − ln Γ(x)` for `x ≥ 1`, `0 ≤ ε ≤ 1`, without cancellation.
fn ln_gamma_shift(x: f64, eps: f64) -> f64 {
    // Shift x up with Γ(y + 1) = y Γ(y), then use Stirling's series.
    const LARGE: f64 = 32.0;
    let mut x = x;
    let mut acc = 0.0;
    while x < LARGE {
        acc -= (eps / x).ln_1p();
        x += 1.0;
    }
    let stirling = |y: f64| 1.0 / (12.0 * y) - 1.0 / (360.0 * y.powi(3));
    acc + eps * x.ln() + (x + eps - 0.5) * (eps / x).ln_1p() - eps + stirling(x + eps) - stirling(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomials::{ratio, to_path_counts};
    use crate::synthesis::synth_poly;

    fn mono(u: u64, m: usize) -> Monomial {
        Monomial::from_int(u, m).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn params() {
        let p = CompositionParams::of(mono(0b0110, 4));
        assert_eq!((p.n, p.w, p.l), (16, 4, 4));
        for u in Monomial::all(5).unwrap() {
            let p = CompositionParams::of(u);
            assert_eq!(p.n, p.w * p.l);
        }
    }

    #[test]
    fn graphs_m1() {
        let g = build_graph(mono(0, 1)).unwrap();
        assert_eq!(g.edges, vec![(0, 2), (2, 1)]);
        let g = build_graph(mono(1, 1)).unwrap();
        assert_eq!(g.edges, vec![(0, 1), (0, 1)]);
        assert_eq!(build_graph(mono(0, 6)).unwrap().edges.len(), 64);
        assert!(build_graph(mono(0, 13)).is_err());
    }

    #[test]
    fn oracle_small_cases() {
        let single = CompositionGraph {
            nodes: 2,
            edges: vec![(0, 1)],
            source: 0,
            sink: 1,
        };
        assert_eq!(
            oracle_path_counts(&single).unwrap().counts(),
            big(&[0, 1]).as_slice()
        );
        // u = (1, 0): two parallel 2-paths.
        let g = build_graph(mono(0b01, 2)).unwrap();
        let pc = oracle_path_counts(&g).unwrap();
        assert_eq!(pc.counts(), big(&[0, 0, 2, 4, 1]).as_slice());
        assert_eq!(pc.to_poly(), synth_poly(mono(0b01, 2)));
    }

    #[test]
    fn oracle_rejects_large_graphs() {
        let g = build_graph(mono(0, 5)).unwrap();
        assert!(oracle_path_counts(&g).is_err());
    }

    #[test]
    fn inclusion_exclusion_examples() {
        let pc = ni_inclusion_exclusion(2, 1).unwrap();
        assert_eq!(pc.counts(), big(&[0, 0, 2, 4, 1]).as_slice());
        let pc = ni_inclusion_exclusion(3, 0).unwrap();
        assert_eq!(pc.counts(), big(&[0, 0, 0, 0, 0, 0, 0, 0, 1]).as_slice());
        assert!(ni_inclusion_exclusion(3, 4).is_err());
        for m in 1..=5 {
            for i in 0..=m {
                let u = leading_ones(m, i).unwrap();
                let expected = to_path_counts(&synth_poly(u), 1 << m).unwrap();
                assert_eq!(
                    ni_inclusion_exclusion(m, i).unwrap(),
                    expected,
                    "m={m} i={i}"
                );
            }
        }
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(gen_binomial(&ratio(5, 2), 2), ratio(15, 8));
        assert_eq!(gen_binomial(&ratio(5, 1), 4), ratio(5, 1));
        assert_eq!(gen_binomial(&ratio(7, 3), 0), ratio(1, 1));
        assert_eq!(gen_binomial(&ratio(3, 1), 5), ratio(0, 1));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(avr_closed_form(2, 1).unwrap(), ratio(7, 15));
        assert_eq!(avr_closed_form(3, 1).unwrap(), ratio(13, 45));
        assert_eq!(avr_closed_form(2, 2).unwrap(), ratio(4, 5));
        assert_eq!(avr_closed_form(2, 0).unwrap(), ratio(1, 5));
        for m in 1..=6 {
            for i in 0..=m {
                let s = avr_closed_form(m, i).unwrap() + avr_closed_form_complement(m, i).unwrap();
                assert_eq!(s, ratio(1, 1));
            }
        }
        assert!(avr_closed_form(3, 4).is_err());
    }

    #[test]
    fn complement_form_matches_integration() {
        // (0^k 1^(m−k)) is the complement of (1^k 0^(m−k)).
        for m in 1..=5 {
            for i in 0..=m {
                let u = leading_ones(m, i).unwrap().complement();
                assert_eq!(
                    synth_poly(u).integrate01(),
                    avr_closed_form_complement(m, i).unwrap()
                );
            }
        }
    }

    #[test]
    fn gamma_shift_matches_direct_product() {
        // C(k + ε, k) = Π_{t=1}^k (1 + ε/t) for integer k.
        for &(k, eps) in &[(1usize, 0.5f64), (7, 0.25), (100, 0.1), (5000, 0.9)] {
            let direct: f64 = (1..=k).map(|t| (eps / t as f64).ln_1p()).sum();
            let via_gamma = ln_gamma_shift(k as f64 + 1.0, eps) - ln_gamma_shift(1.0, eps);
            assert!(
                (direct - via_gamma).abs() < 1e-9,
                "k={k}: {direct} vs {via_gamma}"
            );
        }
    }

    #[test]
    fn threshold_binomial_trends() {
        let series = |f| {
            (6..=12)
                .map(|m| threshold_binomial(m, f))
                .collect::<Vec<_>>()
        };
        let one = series(ThresholdFamily::TendsToOne);
        assert!(one.windows(2).all(|w| w[1] < w[0] && w[1] > 1.0), "{one:?}");
        let unbounded = series(ThresholdFamily::Unbounded);
        assert!(unbounded.windows(2).all(|w| w[1] > w[0]), "{unbounded:?}");
        assert_eq!(
            first_exceeding(ThresholdFamily::Unbounded, 1e3, 64),
            Some(62)
        );
        // Reference values from 60-digit arithmetic.
        let v = threshold_binomial(61, ThresholdFamily::Unbounded);
        assert!((v / 997.058028483717 - 1.0).abs() < 1e-9, "{v}");
        let two = series(ThresholdFamily::TendsToTwo);
        assert!(
            two.windows(2)
                .all(|w| (w[1] - 2.0).abs() < (w[0] - 2.0).abs()),
            "{two:?}"
        );
    }
}
