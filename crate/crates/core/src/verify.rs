//! Named consistency checks grouped into suites, run at a chosen `m`.
//!
//! Each check records which library operations it exercised so callers can
//! assert coverage.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::construction::{
    avr_distribution, avr_of_pairs, beta_incompatible_count, duplicate_averages,
    incomparable_pairs, rank, Criterion,
};
use crate::error::{Error, Result};
use crate::monomials::MAX_M;
use crate::monomials::{rm_set, Monomial};
use crate::orders::{
    closure, hasse_edges, interval, is_decreasing, leq, leq_dominance, leq_existential,
    leq_pointwise, leq_std, leq_weak, mult_compatible, Comparison, PosetRelation, HASSE_MAX_M,
};
use crate::polynomials::{
    format_decimal, from_path_counts, parse_rational, ratio, to_path_counts, PathCounts, Rational,
};
use crate::reference;
use crate::reliability::{
    avr_closed_form, avr_closed_form_complement, build_graph, first_exceeding, gen_binomial,
    leading_ones, ni_inclusion_exclusion, oracle_path_counts, threshold_binomial, ThresholdFamily,
};
use crate::synthesis::{
    default_tolerance, dual_poly, synth_all_capped, synth_poly, threshold_estimate, ChannelTable,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Orders,
    Reliability,
    Identities,
    Tables,
    All,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Orders => "orders",
            Suite::Reliability => "reliability",
            Suite::Identities => "identities",
            Suite::Tables => "tables",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "orders" => Ok(Suite::Orders),
            "reliability" => Ok(Suite::Reliability),
            "identities" => Ok(Suite::Identities),
            "tables" => Ok(Suite::Tables),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!("unknown suite {s:?}"))),
        }
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: &'static str,
    pub passed: bool,
    /// Summary on success, counterexample on failure.
    pub detail: String,
    pub ops: BTreeSet<&'static str>,
}

/// Pass summary or counterexample.
type Outcome = std::result::Result<String, String>;

struct Runner {
    suite: Suite,
    results: Vec<CheckResult>,
}

impl Runner {
    fn new(suite: Suite) -> Self {
        Runner {
            suite,
            results: Vec::new(),
        }
    }

    fn check(
        &mut self,
        name: &'static str,
        ops: &[&'static str],
        f: impl FnOnce() -> Result<Outcome>,
    ) -> Result<()> {
        let (passed, detail) = match f()? {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.results.push(CheckResult {
            suite: self.suite,
            name,
            passed,
            detail,
            ops: ops.iter().copied().collect(),
        });
        Ok(())
    }
}

/// Caches channel tables across checks.
struct Tables(BTreeMap<usize, ChannelTable>);

impl Tables {
    fn get(&mut self, m: usize) -> Result<&ChannelTable> {
        if !self.0.contains_key(&m) {
            self.0.insert(m, synth_all_capped(m, MAX_M)?);
        }
        Ok(&self.0[&m])
    }
}

/// Runs `suite` at `m`. Checks whose cost grows too fast run at a smaller
/// `m`, reported in their detail.
pub fn run_suite(suite: Suite, m: usize) -> Result<Vec<CheckResult>> {
    if m == 0 || m > MAX_M {
        return Err(Error::UnsupportedM(m));
    }
    let mut tables = Tables(BTreeMap::new());
    let suites: &[Suite] = match suite {
        Suite::All => &[
            Suite::Identities,
            Suite::Orders,
            Suite::Reliability,
            Suite::Tables,
        ],
        _ => std::slice::from_ref(&suite),
    };
    let mut out = Vec::new();
    for &s in suites {
        let mut r = Runner::new(s);
        match s {
            Suite::Identities => identities(&mut r, &mut tables, m)?,
            Suite::Orders => orders(&mut r, &mut tables, m)?,
            Suite::Reliability => reliability(&mut r, &mut tables, m)?,
            Suite::Tables => published(&mut r, &mut tables, m)?,
            Suite::All => unreachable!(),
        }
        out.extend(r.results);
    }
    Ok(out)
}

fn all(m: usize) -> Vec<Monomial> {
    Monomial::all(m).expect("valid m").collect()
}

fn pass_or(failures: Vec<String>, ok: String) -> Outcome {
    const SHOWN: usize = 5;
    if failures.is_empty() {
        return Ok(ok);
    }
    let mut msg = format!(
        "{} failure(s): {}",
        failures.len(),
        failures[..failures.len().min(SHOWN)].join("; ")
    );
    if failures.len() > SHOWN {
        msg.push_str("; …");
    }
    Err(msg)
}

/// Spread-out sample of at most `k` channels, including both extremes.
fn sample(m: usize, k: usize) -> Vec<Monomial> {
    let n = 1u64 << m;
    let k = (k as u64).min(n).max(2);
    let mut v: Vec<u64> = (0..k).map(|i| i * (n - 1) / (k - 1)).collect();
    v.dedup();
    v.into_iter()
        .map(|u| Monomial::from_int(u, m).expect("in range"))
        .collect()
}

fn identities(r: &mut Runner, tables: &mut Tables, m: usize) -> Result<()> {
    let t = tables.get(m)?;
    r.check("conservation", &["synth_all"], || {
        Ok(if t.conservation_holds() {
            Ok(format!("sum of all Z_u equals {}p at m = {m}", t.len()))
        } else {
            Err(format!("sum of all Z_u differs from {}p", t.len()))
        })
    })?;
    r.check("duality", &["synth_all", "dual_poly"], || {
        let bad = t.duality_violations();
        Ok(pass_or(
            bad.iter().map(|u| format!("u = {u}")).collect(),
            format!(
                "Z of the complement equals the dual for all {} channels",
                t.len()
            ),
        ))
    })?;
    r.check("average_complement", &["synth_all"], || {
        let top = t.len() - 1;
        let bad: Vec<String> = (0..t.len())
            .filter(|&u| &t.averages()[u] + &t.averages()[top - u] != Rational::one())
            .map(|u| format!("u = {u}"))
            .collect();
        Ok(pass_or(bad, "Avr(u) + Avr(complement) = 1".into()))
    })?;
    r.check(
        "memoized_matches_direct",
        &["synth_all", "synth_poly"],
        || {
            let us = sample(m, 64);
            let bad: Vec<String> = us
                .par_iter()
                .filter(|&&u| synth_poly(u) != *t.get(u))
                .map(|u| format!("u = {}", u.to_int()))
                .collect();
            Ok(pass_or(bad, format!("{} channels agree", us.len())))
        },
    )?;
    r.check("path_count_round_trip", &["to_path_counts"], || {
        let n = 1usize << m;
        let us = sample(m, 16);
        let bad: Vec<String> = us
            .par_iter()
            .filter(|&&u| {
                let pc = to_path_counts(t.get(u), n).expect("degree n");
                from_path_counts(&pc) != *t.get(u) || pc.average() != *t.average(u)
            })
            .map(|u| format!("u = {}", u.to_int()))
            .collect();
        Ok(pass_or(bad, format!("{} channels round-trip", us.len())))
    })?;
    r.check(
        "threshold_symmetry",
        &["threshold_estimate", "dual_poly"],
        || {
            let tol = default_tolerance();
            let two_tol = &tol * ratio(2, 1);
            let us = sample(m, 8);
            let results = us
                .par_iter()
                .map(|&u| {
                    let a = t.get(u);
                    let s = threshold_estimate(a, &tol)? + threshold_estimate(&dual_poly(a), &tol)?;
                    let err = (s - Rational::one()).abs();
                    Ok((err > two_tol).then(|| format!("u = {}", u.to_int())))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(pass_or(
                results.into_iter().flatten().collect(),
                format!(
                    "{} channels: threshold(a) + threshold(dual a) = 1 within 2 tol",
                    us.len()
                ),
            ))
        },
    )?;
    Ok(())
}

fn orders(r: &mut Runner, tables: &mut Tables, m: usize) -> Result<()> {
    let ma = m.min(6);
    r.check(
        "poset_axioms",
        &["leq_weak", "leq_std", "leq_dominance"],
        || {
            let nodes = all(ma);
            let mut bad = Vec::new();
            for rel in PosetRelation::ALL {
                let le: Vec<Vec<bool>> = nodes
                    .par_iter()
                    .map(|&a| {
                        nodes
                            .iter()
                            .map(|&b| leq(a, b, rel).expect("same m"))
                            .collect()
                    })
                    .collect();
                let n = nodes.len();
                for a in 0..n {
                    if !le[a][a] {
                        bad.push(format!("{rel}: not reflexive at {a}"));
                    }
                    for b in 0..n {
                        if a != b && le[a][b] && le[b][a] {
                            bad.push(format!("{rel}: {a} and {b} not antisymmetric"));
                        }
                        if le[a][b] && (0..n).any(|c| le[b][c] && !le[a][c]) {
                            bad.push(format!("{rel}: transitivity fails from {a} via {b}"));
                        }
                    }
                }
            }
            Ok(pass_or(bad, format!("three partial orders at m = {ma}")))
        },
    )?;
    let mc = m.min(8);
    r.check(
        "relation_chain",
        &["leq_weak", "leq_std", "leq_dominance"],
        || {
            let nodes = all(mc);
            let bad: Vec<String> = nodes
                .par_iter()
                .flat_map_iter(|&f| {
                    nodes.iter().filter_map(move |&g| {
                        let w = leq_weak(f, g).expect("same m");
                        let s = leq_std(f, g).expect("same m");
                        let d = leq_dominance(f, g).expect("same m");
                        ((w && !s) || (s && !d))
                            .then(|| format!("({}, {})", f.to_int(), g.to_int()))
                    })
                })
                .collect();
            Ok(pass_or(
                bad,
                format!("weak => standard => dominance on all pairs at m = {mc}"),
            ))
        },
    )?;
    let me = m.min(5);
    r.check(
        "existential_agreement",
        &["leq_std", "leq_dominance"],
        || {
            let nodes = all(me);
            let mut bad = Vec::new();
            for rel in [PosetRelation::Standard, PosetRelation::Dominance] {
                for &f in &nodes {
                    for &g in &nodes {
                        if leq(f, g, rel)? != leq_existential(f, g, rel)? {
                            bad.push(format!("{rel}: ({}, {})", f.to_int(), g.to_int()));
                        }
                    }
                }
            }
            Ok(pass_or(bad, format!("divisor search agrees at m = {me}")))
        },
    )?;
    let mp = m.min(6);
    let t = tables.get(mp)?;
    r.check(
        "dominance_implies_pointwise",
        &["leq_dominance", "leq_pointwise", "synth_all"],
        || {
            let nodes = all(mp);
            let pairs: Vec<(Monomial, Monomial)> = nodes
                .iter()
                .flat_map(|&f| nodes.iter().map(move |&g| (f, g)))
                .filter(|&(f, g)| f != g && leq_dominance(f, g).expect("same m"))
                .collect();
            let bad = pairs
                .par_iter()
                .map(|&(f, g)| {
                    let v = leq_pointwise(f, g, t)?;
                    Ok((v.result != Comparison::LessOrEqual)
                        .then(|| format!("({}, {}) gives {:?}", f.to_int(), g.to_int(), v.result)))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(pass_or(
                bad.into_iter().flatten().collect(),
                format!(
                    "{} dominance pairs are pointwise ordered at m = {mp}",
                    pairs.len()
                ),
            ))
        },
    )?;
    r.check("multiplicative_compatibility", &["mult_compatible"], || {
        let nodes = all(mp);
        let mut bad = Vec::new();
        let mut count = 0usize;
        for &f in &nodes {
            for &g in &nodes {
                if f.degree() != g.degree() {
                    continue;
                }
                for h in 0..mp {
                    let x = Monomial::var(h, mp)?;
                    if f.bit(h) || g.bit(h) {
                        continue;
                    }
                    count += 1;
                    if !mult_compatible(f, g, x)? {
                        bad.push(format!("f = {f}, g = {g}, x = {x}"));
                    }
                }
            }
        }
        Ok(pass_or(bad, format!("{count} instances at m = {mp}")))
    })?;
    r.check(
        "closures_decreasing",
        &["closure", "interval", "is_decreasing"],
        || {
            let nodes = all(me);
            let mut bad = Vec::new();
            for rel in PosetRelation::ALL {
                for &g in &nodes {
                    let down = closure(g, rel);
                    if !is_decreasing(&down, rel) || !down.contains(&g) {
                        bad.push(format!("{rel}: closure of {g}"));
                    }
                    for &f in &down {
                        let iv = interval(f, g, rel)?;
                        if !iv.contains(&f) || !iv.contains(&g) || !iv.is_subset(&down) {
                            bad.push(format!("{rel}: interval [{f}, {g}]"));
                        }
                    }
                }
            }
            for r_ in 0..=me {
                if !is_decreasing(&rm_set(r_, me)?, PosetRelation::Dominance) {
                    bad.push(format!("RM({r_}, {me}) is not decreasing"));
                }
            }
            Ok(pass_or(
                bad,
                format!("closures, intervals and RM sets at m = {me}"),
            ))
        },
    )?;
    let mh = m.min(HASSE_MAX_M).min(5);
    r.check("hasse_reduction", &["hasse_edges"], || {
        let nodes = all(mh);
        let n = nodes.len();
        let mut bad = Vec::new();
        for rel in PosetRelation::ALL {
            let edges = hasse_edges(mh, rel)?;
            let mut reach = vec![vec![false; n]; n];
            for (i, row) in reach.iter_mut().enumerate() {
                row[i] = true;
            }
            for &(a, b) in &edges {
                reach[a.index()][b.index()] = true;
            }
            for k in 0..n {
                for i in 0..n {
                    if reach[i][k] {
                        for j in 0..n {
                            if reach[k][j] {
                                reach[i][j] = true;
                            }
                        }
                    }
                }
            }
            for &a in &nodes {
                for &b in &nodes {
                    if reach[a.index()][b.index()] != leq(a, b, rel)? {
                        bad.push(format!("{rel}: reachability of ({a}, {b})"));
                    }
                }
            }
        }
        Ok(pass_or(
            bad,
            format!("edge closures reproduce all three orders at m = {mh}"),
        ))
    })?;
    Ok(())
}

fn reliability(r: &mut Runner, tables: &mut Tables, m: usize) -> Result<()> {
    let mo = m.min(4);
    let t = tables.get(mo)?;
    r.check(
        "oracle_equivalence",
        &[
            "build_graph",
            "oracle_path_counts",
            "synth_all",
            "to_path_counts",
        ],
        || {
            let nodes = all(mo);
            let mut bad = Vec::new();
            for &u in &nodes {
                let oracle = oracle_path_counts(&build_graph(u)?)?;
                if oracle != to_path_counts(t.get(u), 1 << mo)? {
                    bad.push(format!("u = {}: {:?}", u.to_int(), counts(&oracle)));
                }
            }
            Ok(pass_or(
                bad,
                format!("{} channels at m = {mo}", nodes.len()),
            ))
        },
    )?;
    let mi = m.min(8);
    r.check(
        "inclusion_exclusion_counts",
        &["ni_inclusion_exclusion", "synth_poly", "to_path_counts"],
        || {
            let mut bad = Vec::new();
            for mm in 1..=mi {
                for i in 0..=mm {
                    let u = leading_ones(mm, i)?;
                    if ni_inclusion_exclusion(mm, i)? != to_path_counts(&synth_poly(u), 1 << mm)? {
                        bad.push(format!("m = {mm}, ones = {i}"));
                    }
                }
            }
            Ok(pass_or(bad, format!("all (m, ones) with m <= {mi}")))
        },
    )?;
    r.check(
        "closed_form_average",
        &["avr_closed_form", "gen_binomial", "synth_poly"],
        || {
            let cases: Vec<(usize, usize)> = (1..=mi)
                .flat_map(|mm| (0..=mm).map(move |i| (mm, i)))
                .collect();
            let bad = cases
                .par_iter()
                .map(|&(mm, i)| {
                    let u = leading_ones(mm, i)?;
                    let exact = synth_poly(u).integrate01();
                    let ok = avr_closed_form(mm, i)? == exact
                        && avr_closed_form_complement(mm, i)?
                            == synth_poly(u.complement()).integrate01();
                    Ok((!ok).then(|| format!("m = {mm}, ones = {i}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(pass_or(
                bad.into_iter().flatten().collect(),
                format!("{} exact equalities with m <= {mi}", cases.len()),
            ))
        },
    )?;
    r.check("generalized_binomial", &["gen_binomial"], || {
        let cases = [
            (ratio(5, 2), 2, ratio(15, 8)),
            (ratio(5, 1), 4, ratio(5, 1)),
            (ratio(7, 3), 0, ratio(1, 1)),
            (ratio(-1, 2), 3, ratio(-5, 16)),
        ];
        let bad: Vec<String> = cases
            .iter()
            .filter(|(x, k, want)| gen_binomial(x, *k) != *want)
            .map(|(x, k, _)| format!("C({x}, {k})"))
            .collect();
        Ok(pass_or(bad, "falling-factorial values".into()))
    })?;
    r.check("threshold_binomial_trends", &[], || {
        let series = |f| {
            (6..=12)
                .map(|mm| threshold_binomial(mm, f))
                .collect::<Vec<f64>>()
        };
        let one = series(ThresholdFamily::TendsToOne);
        let unbounded = series(ThresholdFamily::Unbounded);
        let two = series(ThresholdFamily::TendsToTwo);
        let mut bad = Vec::new();
        if !one.windows(2).all(|w| w[1] < w[0] && w[1] > 1.0) {
            bad.push(format!("not decreasing to 1: {one:?}"));
        }
        if !unbounded.windows(2).all(|w| w[1] > w[0]) {
            bad.push(format!("not increasing: {unbounded:?}"));
        }
        let past = first_exceeding(ThresholdFamily::Unbounded, 1e3, 64);
        if past.is_none() {
            bad.push("does not increase past 1e3 by m = 64".into());
        }
        if !two
            .windows(2)
            .all(|w| (w[1] - 2.0).abs() < (w[0] - 2.0).abs())
        {
            bad.push(format!("not approaching 2: {two:?}"));
        }
        Ok(pass_or(
            bad,
            format!(
                "m = 12: {:.4}, {:.3}, {:.4}; second family exceeds 1e3 from m = {}",
                one[6],
                unbounded[6],
                two[6],
                past.unwrap_or(0)
            ),
        ))
    })?;
    Ok(())
}

fn counts(pc: &PathCounts) -> Vec<String> {
    pc.counts().iter().map(BigInt::to_string).collect()
}

fn indices(v: &[Monomial]) -> Vec<u64> {
    v.iter().map(Monomial::to_int).collect()
}

fn published(r: &mut Runner, tables: &mut Tables, m: usize) -> Result<()> {
    if m >= 2 {
        let rows: Vec<_> = reference::AVERAGES
            .iter()
            .filter(|row| row.0 <= m)
            .collect();
        let mut computed = Vec::new();
        for &&(mm, _, _) in &rows {
            let t = tables.get(mm)?;
            let ranked = rank(t, &Criterion::Average)?;
            let values: Vec<String> = ranked
                .order
                .iter()
                .map(|&u| format_decimal(t.average(u), 2))
                .collect();
            computed.push((indices(&ranked.order), values));
        }
        r.check("reference_averages", &["synth_all"], || {
            let mut bad = Vec::new();
            for (&&(mm, order, values), (got_order, got_values)) in rows.iter().zip(&computed) {
                if got_order != order {
                    bad.push(format!("m = {mm}: order {got_order:?}"));
                }
                for ((u, want), got) in order.iter().zip(values.iter()).zip(got_values) {
                    if got != want {
                        bad.push(format!("m = {mm}, u = {u}: {got} (published {want})"));
                    }
                }
            }
            Ok(pass_or(bad, format!("{} rows", rows.len())))
        })?;
    }
    if m >= 4 {
        r.check(
            "reference_path_counts",
            &["synth_poly", "to_path_counts"],
            || {
                let mut bad = Vec::new();
                for (u, want) in reference::PATH_COUNTS {
                    let pc = to_path_counts(&synth_poly(Monomial::from_int(u, 4)?), 16)?;
                    let want: Vec<BigInt> = want.iter().map(|&x| BigInt::from(x)).collect();
                    if pc.counts() != want.as_slice() {
                        bad.push(format!("u = {u}: {:?}", counts(&pc)));
                    }
                }
                Ok(pass_or(bad, "both 17-entry vectors".into()))
            },
        )?;
    }
    if m >= 4 {
        let mut found = vec![(4, indices_pairs(&incomparable_pairs(tables.get(4)?)?))];
        if m >= 5 {
            found.push((5, indices_pairs(&incomparable_pairs(tables.get(5)?)?)));
        }
        r.check("reference_incomparable_pairs", &["leq_pointwise"], || {
            let mut bad = Vec::new();
            for (mm, got) in &found {
                let want: BTreeSet<(u64, u64)> = if *mm == 5 {
                    reference::INCOMPARABLE_M5.into_iter().collect()
                } else {
                    BTreeSet::new()
                };
                if *got != want {
                    bad.push(format!("m = {mm}: {got:?}"));
                }
            }
            Ok(pass_or(
                bad,
                "none at m = 4, the seven listed pairs at m = 5".into(),
            ))
        })?;
    }
    if m >= 5 {
        let t = tables.get(5)?;
        r.check("reference_pair_values", &[], || {
            let pairs: Vec<(Monomial, Monomial)> = reference::INCOMPARABLE_M5
                .iter()
                .map(|&(u, v)| Ok((Monomial::from_int(u, 5)?, Monomial::from_int(v, 5)?)))
                .collect::<Result<_>>()?;
            let mut bad = Vec::new();
            for (want_u, want_v) in reference::PAIR_VALUES_M5 {
                let places = want_u.len() - 2;
                let rendered = avr_of_pairs(&pairs, t, places);
                let hit = rendered
                    .iter()
                    .position(|(a, b)| a == want_u && b == want_v);
                if hit.is_none() {
                    let near: Vec<String> = rendered
                        .iter()
                        .zip(&pairs)
                        .filter(|((a, _), _)| a == want_u)
                        .map(|((a, b), (u, v))| {
                            format!("({}, {}) -> ({a}, {b})", u.to_int(), v.to_int())
                        })
                        .collect();
                    bad.push(format!(
                        "({want_u}, {want_v}) matches no pair; nearest {near:?}"
                    ));
                }
            }
            Ok(pass_or(
                bad,
                "every quoted pair matches a listed pair".into(),
            ))
        })?;
        let mut orders_found = vec![(5, indices(&rank(t, &Criterion::Average)?.order))];
        if m >= 6 {
            orders_found.push((
                6,
                indices(&rank(tables.get(6)?, &Criterion::Average)?.order),
            ));
        }
        r.check("reference_orderings", &["synth_all"], || {
            let mut bad = Vec::new();
            for (mm, got) in &orders_found {
                let want: &[u64] = if *mm == 5 {
                    &reference::ORDER_PREFIX_M5
                } else {
                    &reference::ORDER_PREFIX_M6
                };
                if got[..want.len()] != *want {
                    bad.push(format!("m = {mm}: {:?}", &got[..want.len()]));
                }
            }
            Ok(pass_or(
                bad,
                format!("{} listed prefixes", orders_found.len()),
            ))
        })?;
        let mut dists = Vec::new();
        for &(mm, want) in reference::DISTRIBUTION.iter().filter(|row| row.0 <= m) {
            dists.push((mm, want, avr_distribution(tables.get(mm)?)?));
        }
        r.check("reference_distribution", &["synth_all"], || {
            let mut bad = Vec::new();
            for (mm, want, got) in &dists {
                let mirrored = (0..5).all(|i| got[i] == got[9 - i]);
                if got[..5] != want[..] || !mirrored || got.iter().sum::<usize>() != 1 << mm {
                    bad.push(format!("m = {mm}: {got:?}"));
                }
            }
            Ok(pass_or(bad, format!("{} rows", dists.len())))
        })?;
        let mut beta_rows = Vec::new();
        for &(mm, betas) in reference::BETA_CLEAN.iter().filter(|row| row.0 <= m) {
            for b in betas {
                let count = beta_incompatible_count(tables.get(mm)?, &parse_rational(b)?)?;
                beta_rows.push((mm, b.to_string(), 0, count));
            }
        }
        let beta = parse_rational("1.22")?;
        for &(mm, want) in reference::BETA_COUNTS.iter().filter(|row| row.0 <= m) {
            let count = beta_incompatible_count(tables.get(mm)?, &beta)?;
            beta_rows.push((mm, "1.22".into(), want, count));
        }
        r.check("reference_beta_counts", &[], || {
            let bad: Vec<String> = beta_rows
                .iter()
                .filter(|(_, _, want, got)| want != got)
                .map(|(mm, b, want, got)| format!("m = {mm}, beta = {b}: {got} (expected {want})"))
                .collect();
            Ok(pass_or(bad, format!("{} (m, beta) rows", beta_rows.len())))
        })?;
    }
    let md = m.min(8);
    let dups = duplicate_averages(tables.get(md)?);
    r.check("distinct_averages", &["synth_all"], || {
        Ok(pass_or(
            dups.iter()
                .map(|(u, v)| format!("({}, {})", u.to_int(), v.to_int()))
                .collect(),
            format!("all {} averages distinct at m = {md}", 1usize << md),
        ))
    })?;
    Ok(())
}

fn indices_pairs(pairs: &[(Monomial, Monomial)]) -> BTreeSet<(u64, u64)> {
    pairs
        .iter()
        .map(|(u, v)| (u.to_int(), v.to_int()))
        .collect()
}
