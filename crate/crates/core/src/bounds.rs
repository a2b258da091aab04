//! Thresholds and extremal coefficients as exact rationals, and the pair
//! census certificate bounding the restricted 4-uniform extremal family.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_rational::Ratio;
use serde::{Deserialize, Serialize, Serializer};

use crate::coloring::{pair_count, VertexSet};
use crate::error::{Error, Result};
use crate::hypergraph::MultiHypergraph;
use crate::verify::check_defh_properties;
use crate::witness::{Verdict, ViolationKind, ViolationWitness};

pub type Rational = Ratio<i64>;

/// Renders as `a/b`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `a/b` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::range(format!("expected a rational `a/b`, got `{s}`"));
    let (num, den) = match s.trim().split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), "1"),
    };
    let num: i64 = num.parse().map_err(|_| bad())?;
    let den: i64 = den.parse().map_err(|_| bad())?;
    if den == 0 {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

fn ser_opt_rational<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format_rational(r)),
        None => s.serialize_none(),
    }
}

fn ratio(a: usize, b: usize) -> Rational {
    Rational::new(a as i64, b as i64)
}

/// `C(p,2) - p + 3`, the least `q` for which `f(n,p,q)` is linear in `n`.
pub fn q_lin(p: usize) -> usize {
    pair_count(p) + 3 - p
}

/// `C(p,2) - floor(p/2) + 2`, the least `q` for which `f(n,p,q)` is quadratic in `n`.
pub fn q_quad(p: usize) -> usize {
    pair_count(p) + 2 - p / 2
}

/// `(3p - 7)/(4p - 10)`, the linear-threshold lower-bound coefficient of `n`.
pub fn lin_lower_coeff(p: usize) -> Rational {
    ratio(3 * p - 7, 4 * p - 10)
}

/// `(2p - 7)/(5p - 18)`, the quadratic-threshold lower-bound coefficient of
/// `n^2`; defined for even `p >= 6`.
pub fn quad_lower_coeff(p: usize) -> Option<Rational> {
    (p >= 6 && p.is_multiple_of(2)).then(|| ratio(2 * p - 7, 5 * p - 18))
}

/// `(ell - 2)/(10 ell - 18)`, the upper-bound coefficient of `n^2` for the
/// restricted 4-uniform family.
pub fn h4_upper_coeff(ell: usize) -> Option<Rational> {
    (ell >= 3).then(|| ratio(ell - 2, 10 * ell - 18))
}

pub const QUAD_UPPER_COEFF: Rational = Ratio::new_raw(5, 12);
pub const LIN_UPPER_COEFF: Rational = Ratio::new_raw(1, 1);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdTable {
    pub p: usize,
    pub q_lin: usize,
    pub q_quad: usize,
    #[serde(serialize_with = "ser_rational")]
    pub lin_lower_coeff: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub lin_upper_coeff: Rational,
    /// Present for even `p >= 6`.
    #[serde(serialize_with = "ser_opt_rational")]
    pub quad_lower_coeff: Option<Rational>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub quad_upper_coeff: Option<Rational>,
    /// At `ell = p/2`, present for even `p >= 6`.
    #[serde(serialize_with = "ser_opt_rational")]
    pub h4_upper_coeff: Option<Rational>,
}

pub fn thresholds(p: usize) -> Result<ThresholdTable> {
    if p < 3 {
        return Err(Error::range(format!("need p >= 3, got {p}")));
    }
    let quad = quad_lower_coeff(p);
    Ok(ThresholdTable {
        p,
        q_lin: q_lin(p),
        q_quad: q_quad(p),
        lin_lower_coeff: lin_lower_coeff(p),
        lin_upper_coeff: LIN_UPPER_COEFF,
        quad_lower_coeff: quad,
        quad_upper_coeff: quad.map(|_| QUAD_UPPER_COEFF),
        h4_upper_coeff: quad.and_then(|_| h4_upper_coeff(p / 2)),
    })
}

/// The quadratic-threshold limit `1/2 - x` given `x = lim F4(n; p, p/2 - 1)/n^2`.
pub fn quad_limit_from_f(lim_f_over_n2: Rational) -> Result<Rational> {
    let half = Rational::new(1, 2);
    if lim_f_over_n2 < Rational::from_integer(0) || lim_f_over_n2 > half {
        return Err(Error::range(format!(
            "need 0 <= x <= 1/2, got {}",
            format_rational(&lim_f_over_n2)
        )));
    }
    Ok(half - lim_f_over_n2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownConstant {
    pub quantity: String,
    /// Exact rational as `a/b`.
    pub constant: String,
    /// What the constant multiplies: `n`, `n^2` or `C(n,2)`.
    pub scale: String,
    pub provenance: String,
}

impl KnownConstant {
    pub fn value(&self) -> Rational {
        parse_rational(&self.constant).expect("reference data holds valid rationals")
    }
}

/// Reference asymptotic constants.
pub fn known_constants() -> &'static [KnownConstant] {
    static DATA: OnceLock<Vec<KnownConstant>> = OnceLock::new();
    DATA.get_or_init(|| {
        serde_json::from_str(include_str!("../data/known_constants.json")).expect("reference data parses")
    })
}

pub fn known_constant(quantity: &str) -> Option<&'static KnownConstant> {
    known_constants().iter().find(|k| k.quantity == quantity)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H4Certificate {
    /// Component order `b` to the number of components `C_b` of that order.
    pub census: BTreeMap<usize, usize>,
    pub edges: usize,
    /// `sum over b of (5b + 1) C_b`.
    pub census_pairs: u64,
    pub total_pairs: u64,
}

/// Pair-counting certificate for a hypergraph in the restricted 4-uniform
/// family with parameter `ell`.
///
/// Edges sharing at least two vertices are joined; each component of order
/// `b` must satisfy `b <= ell - 2` and cover at least `5b + 1` vertex pairs,
/// and no pair may lie in two components. Summing gives
/// `sum (5b + 1) C_b <= C(n,2)` and hence `(5 + 1/(ell-2)) |E| <= C(n,2)`.
/// The verdict names the first component (in order of least edge) that
/// fails, or the whole vertex set if a global inequality fails.
pub fn certify_h4_pair_count(h: &MultiHypergraph, ell: usize) -> Result<(Verdict, H4Certificate)> {
    if let Verdict::Violation(w) = check_defh_properties(h, ell)? {
        return Err(Error::Precondition(Box::new(w)));
    }
    Ok(pair_census(h, ell))
}

fn pair_census(h: &MultiHypergraph, ell: usize) -> (Verdict, H4Certificate) {
    let n = h.n();
    let edges: Vec<&VertexSet> = h.edges().map(|(e, _)| e).collect();
    let m = edges.len();

    let mut component = vec![usize::MAX; m];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for seed in 0..m {
        if component[seed] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![seed];
        component[seed] = id;
        let mut i = 0;
        while i < members.len() {
            let e = members[i];
            for f in 0..m {
                if component[f] == usize::MAX && edges[e].intersection_len(edges[f]) >= 2 {
                    component[f] = id;
                    members.push(f);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        components.push(members);
    }

    let mut owner: Vec<Option<usize>> = vec![None; pair_count(n)];
    let mut census: BTreeMap<usize, usize> = BTreeMap::new();
    let mut failure: Option<ViolationWitness> = None;
    let fail = |members: &[usize], reason: String| {
        let span = members.iter().fold(VertexSet::new([]), |acc, &j| acc.union(edges[j]));
        ViolationWitness::new(ViolationKind::H4Component { reason }, span)
    };
    for (id, members) in components.iter().enumerate() {
        let b = members.len();
        *census.entry(b).or_default() += 1;
        if failure.is_some() {
            continue;
        }
        if b + 2 > ell {
            failure = Some(fail(members, format!("component of order {b} exceeds ell - 2 = {}", ell - 2)));
            continue;
        }
        let mut covered = 0;
        for &j in members {
            for pair in edges[j].pairs() {
                let slot = &mut owner[pair.index(n)];
                match *slot {
                    None => {
                        *slot = Some(id);
                        covered += 1;
                    }
                    Some(other) if other != id => {
                        failure = Some(fail(members, format!("pair {pair} is shared with another component")));
                    }
                    Some(_) => {}
                }
            }
        }
        if failure.is_none() && covered < 5 * b + 1 {
            failure = Some(fail(
                members,
                format!("component of order {b} covers {covered} pairs, fewer than {}", 5 * b + 1),
            ));
        }
    }

    let census_pairs: u64 = census.iter().map(|(&b, &c)| (5 * b as u64 + 1) * c as u64).sum();
    let total_pairs = pair_count(n) as u64;
    let edge_total: usize = census.iter().map(|(&b, &c)| b * c).sum();
    debug_assert_eq!(edge_total, m);
    if failure.is_none() && census_pairs > total_pairs {
        failure = Some(ViolationWitness::new(
            ViolationKind::H4Component {
                reason: format!("census needs {census_pairs} pairs but only {total_pairs} exist"),
            },
            VertexSet::full(n),
        ));
    }
    if failure.is_none() && ell >= 3 && m > 0 {
        let lhs = (Rational::from_integer(5) + Rational::new(1, ell as i64 - 2)) * Rational::from_integer(m as i64);
        if lhs > Rational::from_integer(total_pairs as i64) {
            failure = Some(ViolationWitness::new(
                ViolationKind::H4Component {
                    reason: format!("(5 + 1/(ell-2)) |E| = {} exceeds C(n,2)", format_rational(&lhs)),
                },
                VertexSet::full(n),
            ));
        }
    }
    let certificate = H4Certificate {
        census,
        edges: edge_total,
        census_pairs,
        total_pairs,
    };
    (failure.into(), certificate)
}
