//! Order relations on `M_m`.
//!
//! - weak `≼_w`: divisibility;
//! - standard `≼`: index-wise comparison of sorted supports, extended to
//!   lower degrees through divisors;
//! - dominance `≼_d`: partial sums of the largest indices, extended the
//!   same way;
//! - pointwise `≤`: `Z_f(p) ≤ Z_g(p)` for every `p ∈ [0, 1]`.
//!
//! For `deg f < deg g` the divisor `g*` in "`f ≼ g* ≼_w g`" can always be
//! taken as the divisor of `g` on its `deg f` largest variables, because
//! both comparisons are monotone in every index.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::monomials::Monomial;
use crate::polynomials::{nonneg_on_01, SignVerdict};
use crate::synthesis::ChannelTable;

/// Every relation that can be decided between two channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Weak,
    Standard,
    Dominance,
    Pointwise,
}

/// The combinatorial orders, decidable from the monomials alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PosetRelation {
    Weak,
    Standard,
    Dominance,
}

impl PosetRelation {
    pub const ALL: [PosetRelation; 3] = [
        PosetRelation::Weak,
        PosetRelation::Standard,
        PosetRelation::Dominance,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PosetRelation::Weak => "weak",
            PosetRelation::Standard => "standard",
            PosetRelation::Dominance => "dominance",
        }
    }
}

impl From<PosetRelation> for Relation {
    fn from(r: PosetRelation) -> Self {
        match r {
            PosetRelation::Weak => Relation::Weak,
            PosetRelation::Standard => Relation::Standard,
            PosetRelation::Dominance => Relation::Dominance,
        }
    }
}

impl fmt::Display for PosetRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    LessOrEqual,
    GreaterOrEqual,
    Equal,
    Incomparable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrderVerdict {
    pub relation: Relation,
    pub result: Comparison,
}

fn same_m(f: &Monomial, g: &Monomial) -> Result<()> {
    if f.m() != g.m() {
        return Err(Error::MismatchedM(f.m(), g.m()));
    }
    Ok(())
}

/// `f ≼_w g` iff `f | g`.
pub fn leq_weak(f: Monomial, g: Monomial) -> Result<bool> {
    f.divides(&g)
}

/// The standard order `≼`.
pub fn leq_std(f: Monomial, g: Monomial) -> Result<bool> {
    same_m(&f, &g)?;
    Ok(reduce_degree(f, g).is_some_and(|g| std_equal_degree(f, g)))
}

/// The dominance order `≼_d`.
pub fn leq_dominance(f: Monomial, g: Monomial) -> Result<bool> {
    same_m(&f, &g)?;
    Ok(reduce_degree(f, g).is_some_and(|g| dominance_equal_degree(f, g)))
}

/// Dispatches on a combinatorial relation.
pub fn leq(f: Monomial, g: Monomial, relation: PosetRelation) -> Result<bool> {
    match relation {
        PosetRelation::Weak => leq_weak(f, g),
        PosetRelation::Standard => leq_std(f, g),
        PosetRelation::Dominance => leq_dominance(f, g),
    }
}

/// Both directions of a combinatorial relation.
pub fn compare(f: Monomial, g: Monomial, relation: PosetRelation) -> Result<OrderVerdict> {
    let result = if f == g {
        same_m(&f, &g)?;
        Comparison::Equal
    } else {
        match (leq(f, g, relation)?, leq(g, f, relation)?) {
            (true, _) => Comparison::LessOrEqual,
            (false, true) => Comparison::GreaterOrEqual,
            (false, false) => Comparison::Incomparable,
        }
    };
    Ok(OrderVerdict {
        relation: relation.into(),
        result,
    })
}

/// Replaces `g` by `g*`, its divisor on the `deg f` largest variables;
/// `None` if `deg f > deg g`.
fn reduce_degree(f: Monomial, g: Monomial) -> Option<Monomial> {
    match f.degree().cmp(&g.degree()) {
        std::cmp::Ordering::Greater => None,
        std::cmp::Ordering::Equal => Some(g),
        std::cmp::Ordering::Less => Some(g.top_divisor(f.degree())),
    }
}

fn std_equal_degree(f: Monomial, g: Monomial) -> bool {
    f.support()
        .iter()
        .zip(g.support().iter())
        .all(|(i, j)| i <= j)
}

fn dominance_equal_degree(f: Monomial, g: Monomial) -> bool {
    // Sums of the ℓ largest indices, ℓ = 1..=s.
    let (fs, gs) = (f.support(), g.support());
    let (mut sf, mut sg) = (0usize, 0usize);
    for (i, j) in fs.iter().rev().zip(gs.iter().rev()) {
        sf += i;
        sg += j;
        if sf > sg {
            return false;
        }
    }
    true
}

/// `f ≼ g` from the existential definition, searching every divisor of `g`
/// of degree `deg f`. Exponential in `deg g`; used to cross-check the
/// top-variables shortcut.
pub fn leq_existential(f: Monomial, g: Monomial, relation: PosetRelation) -> Result<bool> {
    same_m(&f, &g)?;
    if relation == PosetRelation::Weak {
        return f.divides(&g);
    }
    let equal = match relation {
        PosetRelation::Standard => std_equal_degree,
        _ => dominance_equal_degree,
    };
    if f.degree() > g.degree() {
        return Ok(false);
    }
    // Enumerate submasks of g.
    let gb = g.bits();
    let mut sub = gb;
    loop {
        if sub.count_ones() as usize == f.degree() {
            let gstar = Monomial::from_int(sub as u64, g.m())?;
            if equal(f, gstar) {
                return Ok(true);
            }
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & gb;
    }
    Ok(false)
}

/// Decides the pointwise order from the exact sign of `Z_g − Z_f` on `[0, 1]`.
pub fn leq_pointwise(f: Monomial, g: Monomial, table: &ChannelTable) -> Result<OrderVerdict> {
    same_m(&f, &g)?;
    if f.m() != table.m() {
        return Err(Error::MismatchedM(f.m(), table.m()));
    }
    let (zf, zg) = (table.get(f), table.get(g));
    let result = match nonneg_on_01(&(zg - zf)) {
        SignVerdict::IdenticallyZero => Comparison::Equal,
        SignVerdict::Nonnegative => Comparison::LessOrEqual,
        SignVerdict::CrossesZero => match nonneg_on_01(&(zf - zg)) {
            SignVerdict::Nonnegative => Comparison::GreaterOrEqual,
            _ => Comparison::Incomparable,
        },
    };
    Ok(OrderVerdict {
        relation: Relation::Pointwise,
        result,
    })
}

/// Checks one instance of multiplicative compatibility of `≼_d`:
/// `f ≼_d g ⇔ x_h f ≼_d x_h g` for equal-degree `f, g` and a variable
/// `x_h` dividing neither.
pub fn mult_compatible(f: Monomial, g: Monomial, h: Monomial) -> Result<bool> {
    same_m(&f, &g)?;
    same_m(&f, &h)?;
    if f.degree() != g.degree() {
        return Err(Error::Precondition(format!(
            "deg {f} = {} differs from deg {g} = {}",
            f.degree(),
            g.degree()
        )));
    }
    if h.degree() != 1 {
        return Err(Error::Precondition(format!("{h} is not a single variable")));
    }
    if h.divides(&f)? || h.divides(&g)? {
        return Err(Error::Precondition(format!("{h} divides {f} or {g}")));
    }
    Ok(leq_dominance(f, g)? == leq_dominance(h.mul(&f)?, h.mul(&g)?)?)
}

/// True iff `set` is downward closed under `relation`.
pub fn is_decreasing(set: &BTreeSet<Monomial>, relation: PosetRelation) -> bool {
    let Some(m) = set.iter().next().map(Monomial::m) else {
        return true;
    };
    if set.iter().any(|f| f.m() != m) {
        return false;
    }
    let all: Vec<Monomial> = Monomial::all(m).expect("valid m").collect();
    set.iter().all(|&f| {
        all.iter()
            .all(|&g| set.contains(&g) || !leq(g, f, relation).expect("same m"))
    })
}

/// `{g ∈ M_m : g ≼ f}`.
pub fn closure(f: Monomial, relation: PosetRelation) -> BTreeSet<Monomial> {
    Monomial::all(f.m())
        .expect("valid m")
        .filter(|&g| leq(g, f, relation).expect("same m"))
        .collect()
}

/// The closed interval `[f, g] = {h : f ≼ h ≼ g}`.
pub fn interval(f: Monomial, g: Monomial, relation: PosetRelation) -> Result<BTreeSet<Monomial>> {
    if !leq(f, g, relation)? {
        return Err(Error::Precondition(format!(
            "{f} is not below {g} in the {relation} order"
        )));
    }
    Ok(Monomial::all(f.m())?
        .filter(|&h| leq(f, h, relation).expect("same m") && leq(h, g, relation).expect("same m"))
        .collect())
}

/// Largest `m` accepted by [`hasse_edges`].
pub const HASSE_MAX_M: usize = 7;

/// Covering pairs `(a, b)`, `a ≺ b`, of the poset `(M_m, relation)`.
pub fn hasse_edges(m: usize, relation: PosetRelation) -> Result<Vec<(Monomial, Monomial)>> {
    if m > HASSE_MAX_M {
        return Err(Error::OverCap {
            m,
            cap: HASSE_MAX_M,
        });
    }
    let nodes: Vec<Monomial> = Monomial::all(m)?.collect();
    let n = nodes.len();
    // less[a][b]: strict order a ≺ b.
    let less: Vec<Vec<bool>> = nodes
        .par_iter()
        .map(|&a| {
            nodes
                .iter()
                .map(|&b| a != b && leq(a, b, relation).expect("same m"))
                .collect()
        })
        .collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if less[a][b] && !(0..n).any(|c| less[a][c] && less[c][b]) {
                edges.push((nodes[a], nodes[b]));
            }
        }
    }
    Ok(edges)
}

/// Renders covering pairs as a DOT digraph, one node per monomial.
pub fn hasse_dot(m: usize, relation: PosetRelation, edges: &[(Monomial, Monomial)]) -> String {
    let mut out = format!("digraph \"{relation}_m{m}\" {{\n  rankdir=BT;\n");
    for f in Monomial::all(m).expect("valid m") {
        out.push_str(&format!(
            "  n{} [label=\"{} ({})\"];\n",
            f.to_int(),
            f,
            f.to_int()
        ));
    }
    for (a, b) in edges {
        out.push_str(&format!("  n{} -> n{};\n", a.to_int(), b.to_int()));
    }
    out.push_str("}\n");
    out
}
