//! Channel rankings and information sets.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::monomials::Monomial;
use crate::orders::{leq_pointwise, Comparison};
use crate::polynomials::{format_decimal, format_fraction, parse_rational, Rational};
use crate::synthesis::{eval_channel, ChannelTable};

/// What a ranking sorts by; smaller scores are better channels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Criterion {
    /// `Z(W^u)` at a fixed erasure probability.
    Pointwise(Rational),
    /// `Avr(W^u)`.
    Average,
    /// `β(u) = Σ u_i β^i`.
    Beta(Rational),
}

impl Criterion {
    pub fn pointwise(p: Rational) -> Result<Self> {
        if !p.is_positive() || p >= Rational::one() {
            return Err(Error::InvalidArgument(format!(
                "p = {} is not in (0, 1)",
                format_fraction(&p)
            )));
        }
        Ok(Criterion::Pointwise(p))
    }

    pub fn beta(beta: Rational) -> Result<Self> {
        check_beta(&beta)?;
        Ok(Criterion::Beta(beta))
    }

    fn validate(&self) -> Result<()> {
        match self {
            Criterion::Pointwise(p) => Criterion::pointwise(p.clone()).map(|_| ()),
            Criterion::Average => Ok(()),
            Criterion::Beta(b) => check_beta(b),
        }
    }
}

/// Parses `avr`, `p=<rational>` or `beta=<decimal>`.
impl FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "avr" {
            return Ok(Criterion::Average);
        }
        match s.split_once('=') {
            Some(("p", v)) => Criterion::pointwise(parse_rational(v)?),
            Some(("beta", v)) => Criterion::beta(parse_rational(v)?),
            _ => Err(Error::Parse(format!(
                "unknown criterion {s:?}; expected avr, p=<rational> or beta=<decimal>"
            ))),
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Criterion::Pointwise(p) => write!(f, "p={}", format_fraction(p)),
            Criterion::Average => f.write_str("avr"),
            Criterion::Beta(b) => write!(f, "beta={}", format_fraction(b)),
        }
    }
}

/// All channels of `M_m` sorted by ascending score, ties by ascending `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedChannels {
    pub m: usize,
    pub criterion: Criterion,
    /// Best channel first.
    pub order: Vec<Monomial>,
    /// Indexed by `u`.
    pub scores: Vec<Rational>,
}

impl RankedChannels {
    /// The `k` best channels.
    pub fn take(&self, k: usize) -> Result<BTreeSet<Monomial>> {
        if k > self.order.len() {
            return Err(Error::InvalidArgument(format!(
                "k = {k} exceeds 2^{} channels",
                self.m
            )));
        }
        Ok(self.order[..k].iter().copied().collect())
    }

    pub fn score(&self, u: Monomial) -> &Rational {
        &self.scores[u.index()]
    }

    pub fn indices(&self) -> Vec<u64> {
        self.order.iter().map(Monomial::to_int).collect()
    }
}

fn check_beta(beta: &Rational) -> Result<()> {
    if *beta <= Rational::one() {
        return Err(Error::InvalidArgument(format!(
            "beta = {} must exceed 1",
            format_fraction(beta)
        )));
    }
    Ok(())
}

/// `β(u) = Σ u_i β^i`, exact.
pub fn beta_value(u: Monomial, beta: &Rational) -> Result<Rational> {
    check_beta(beta)?;
    let mut acc = Rational::zero();
    let mut power = Rational::one();
    for i in 0..u.m() {
        if u.bit(i) {
            acc += &power;
        }
        power *= beta;
    }
    Ok(acc)
}

/// Ranks every channel of `table` by `criterion`.
pub fn rank(table: &ChannelTable, criterion: &Criterion) -> Result<RankedChannels> {
    criterion.validate()?;
    let m = table.m();
    let monomials: Vec<Monomial> = table.monomials().collect();
    let scores: Vec<Rational> = match criterion {
        Criterion::Average => table.averages().to_vec(),
        Criterion::Pointwise(p) => monomials.par_iter().map(|&u| eval_channel(u, p)).collect(),
        Criterion::Beta(b) => monomials
            .iter()
            .map(|&u| beta_value(u, b))
            .collect::<Result<_>>()?,
    };
    let mut order = monomials;
    order.sort_by(|a, b| scores[a.index()].cmp(&scores[b.index()]).then(a.cmp(b)));
    Ok(RankedChannels {
        m,
        criterion: criterion.clone(),
        order,
        scores,
    })
}

/// The `k` best channels under `criterion`.
pub fn construct(
    table: &ChannelTable,
    criterion: &Criterion,
    k: usize,
) -> Result<BTreeSet<Monomial>> {
    rank(table, criterion)?.take(k)
}

/// Largest `m` accepted by [`incomparable_pairs`].
pub const INCOMPARABLE_MAX_M: usize = 6;

/// All pairs `u < v` whose polynomials cross inside `(0, 1)`.
pub fn incomparable_pairs(table: &ChannelTable) -> Result<Vec<(Monomial, Monomial)>> {
    let m = table.m();
    if m > INCOMPARABLE_MAX_M {
        return Err(Error::OverCap {
            m,
            cap: INCOMPARABLE_MAX_M,
        });
    }
    let all: Vec<Monomial> = table.monomials().collect();
    let pairs: Vec<(Monomial, Monomial)> = all
        .iter()
        .enumerate()
        .flat_map(|(i, &u)| all[i + 1..].iter().map(move |&v| (u, v)))
        .collect();
    let verdicts = pairs
        .par_iter()
        .map(|&(u, v)| leq_pointwise(u, v, table).map(|r| r.result == Comparison::Incomparable))
        .collect::<Result<Vec<bool>>>()?;
    Ok(pairs
        .into_iter()
        .zip(verdicts)
        .filter_map(|(pair, incomparable)| incomparable.then_some(pair))
        .collect())
}

/// Averages of both members of each pair, rounded to `places` decimals.
pub fn avr_of_pairs(
    pairs: &[(Monomial, Monomial)],
    table: &ChannelTable,
    places: usize,
) -> Vec<(String, String)> {
    pairs
        .iter()
        .map(|&(u, v)| {
            (
                format_decimal(table.average(u), places),
                format_decimal(table.average(v), places),
            )
        })
        .collect()
}

/// Counts channels with `Avr` in each of `(i/10, (i+1)/10]`, `i = 0..9`.
pub fn avr_distribution(table: &ChannelTable) -> Result<[usize; 10]> {
    let mut buckets = [0usize; 10];
    let ten = BigInt::from(10);
    for (u, a) in table.averages().iter().enumerate() {
        if !a.is_positive() || *a > Rational::one() {
            return Err(Error::Precondition(format!(
                "Avr of channel {u} is {} outside (0, 1]",
                format_fraction(a)
            )));
        }
        // i = ⌈10a⌉ − 1
        let ceil = (a.numer() * &ten).div_ceil(a.denom());
        let i: usize = (ceil - 1u32).try_into().expect("bucket index fits");
        buckets[i] += 1;
    }
    Ok(buckets)
}

fn dense_ranks(values: &[Rational]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].cmp(&values[b]));
    let mut ranks = vec![0; values.len()];
    for w in 1..idx.len() {
        let step = usize::from(values[idx[w]] != values[idx[w - 1]]);
        ranks[idx[w]] = ranks[idx[w - 1]] + step;
    }
    ranks
}

/// Number of pairs with `Avr(u) < Avr(v)` but `β(u) > β(v)`.
pub fn beta_incompatible_count(table: &ChannelTable, beta: &Rational) -> Result<usize> {
    Ok(beta_incompatible_pairs(table, beta)?.len())
}

/// The pairs counted by [`beta_incompatible_count`], as `(u, v)` with
/// `Avr(u) < Avr(v)`.
pub fn beta_incompatible_pairs(
    table: &ChannelTable,
    beta: &Rational,
) -> Result<Vec<(Monomial, Monomial)>> {
    let betas = table
        .monomials()
        .map(|u| beta_value(u, beta))
        .collect::<Result<Vec<_>>>()?;
    let avr = dense_ranks(table.averages());
    let bet = dense_ranks(&betas);
    let m = table.m();
    let n = table.len();
    let mono = |u: usize| Monomial::from_int(u as u64, m).expect("index in range");
    Ok((0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| avr[u] < avr[v] && bet[u] > bet[v])
        .map(|(u, v)| (mono(u), mono(v)))
        .collect())
}

/// Pairs `u < v` with `Avr(u) = Avr(v)`.
pub fn duplicate_averages(table: &ChannelTable) -> Vec<(Monomial, Monomial)> {
    let averages = table.averages();
    let mut idx: Vec<usize> = (0..averages.len()).collect();
    idx.sort_by(|&a, &b| averages[a].cmp(&averages[b]).then(a.cmp(&b)));
    let m = table.m();
    let mono = |u: usize| Monomial::from_int(u as u64, m).expect("index in range");
    let mut out = Vec::new();
    for (i, &a) in idx.iter().enumerate() {
        for &b in &idx[i + 1..] {
            if averages[a].cmp(&averages[b]) != Ordering::Equal {
                break;
            }
            out.push((mono(a.min(b)), mono(a.max(b))));
        }
    }
    out.sort();
    out
}
