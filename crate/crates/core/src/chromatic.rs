//! Chromatic polynomials by deletion–contraction and their expansion in the
//! falling-factorial basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::poly::{evaluate, IntPolynomial};

pub const DEFAULT_VERTEX_LIMIT: usize = 12;

/// Counts of stable partitions by number of blocks, `k -> #St_k(G)`.
///
/// Zero counts are not stored. The key `0` only occurs for the graph on no
/// vertices, whose single stable partition is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct StVector {
    counts: BTreeMap<usize, BigUint>,
}

impl StVector {
    pub fn new(counts: BTreeMap<usize, BigUint>) -> Self {
        StVector {
            counts: counts.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn from_u64s(pairs: &[(usize, u64)]) -> Self {
        Self::new(pairs.iter().map(|&(k, c)| (k, BigUint::from(c))).collect())
    }

    pub fn get(&self, k: usize) -> BigUint {
        self.counts.get(&k).cloned().unwrap_or_default()
    }

    pub fn counts(&self) -> &BTreeMap<usize, BigUint> {
        &self.counts
    }

    pub fn max_blocks(&self) -> Option<usize> {
        self.counts.keys().next_back().copied()
    }

    /// `Σ_k counts[k] · t(t-1)...(t-k+1)`.
    pub fn to_polynomial(&self) -> IntPolynomial {
        self.counts.iter().fold(IntPolynomial::zero(), |acc, (&k, c)| {
            let scaled = &IntPolynomial::falling_factorial(k)
                * &IntPolynomial::constant(BigInt::from_biguint(Sign::Plus, c.clone()));
            &acc + &scaled
        })
    }

    /// The smallest `k` at which the two vectors disagree.
    pub fn first_difference(&self, other: &StVector) -> Option<usize> {
        self.counts
            .keys()
            .chain(other.counts.keys())
            .copied()
            .filter(|&k| self.get(k) != other.get(k))
            .min()
    }
}

impl fmt::Display for StVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, c)) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}: {c}")?;
        }
        f.write_str("}")
    }
}

#[derive(Serialize, Deserialize)]
struct StRepr {
    st: BTreeMap<String, String>,
}

impl Serialize for StVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StRepr {
            st: self
                .counts
                .iter()
                .map(|(k, c)| (k.to_string(), c.to_string()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = StRepr::deserialize(d)?;
        let mut counts = BTreeMap::new();
        for (k, c) in repr.st {
            let k = k.parse::<usize>().map_err(D::Error::custom)?;
            let c = c.parse::<BigUint>().map_err(D::Error::custom)?;
            counts.insert(k, c);
        }
        Ok(StVector::new(counts))
    }
}

/// Chromatic polynomial with the default vertex limit.
pub fn chromatic_polynomial(g: &FiniteGraph) -> Result<IntPolynomial> {
    chromatic_polynomial_with_limit(g, DEFAULT_VERTEX_LIMIT)
}

pub fn chromatic_polynomial_with_limit(g: &FiniteGraph, vertex_limit: usize) -> Result<IntPolynomial> {
    if g.vertex_count() > vertex_limit {
        return Err(Error::Resource(format!(
            "{} vertices exceed the chromatic polynomial limit of {vertex_limit}",
            g.vertex_count()
        )));
    }
    let mut memo = HashMap::new();
    Ok(deletion_contraction(g, &mut memo))
}

// Memo keys are labelled graph6 strings of the minors; no canonical labelling.
fn deletion_contraction(g: &FiniteGraph, memo: &mut HashMap<String, IntPolynomial>) -> IntPolynomial {
    if g.is_edgeless() {
        return IntPolynomial::monomial(g.vertex_count());
    }
    if g.is_complete() {
        return IntPolynomial::falling_factorial(g.vertex_count());
    }
    let key = g.to_graph6();
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let (u, v) = g
        .edges()
        .into_iter()
        .max_by_key(|&(u, v)| (g.degree(u) + g.degree(v), std::cmp::Reverse((u, v))))
        .expect("graph has an edge");
    let deleted = deletion_contraction(&g.without_edge(u, v), memo);
    let contracted = deletion_contraction(&g.contract(u, v), memo);
    let p = &deleted - &contracted;
    memo.insert(key, p.clone());
    p
}

/// Least `n >= 1` with a proper `n`-coloring.
pub fn chromatic_number(g: &FiniteGraph) -> Result<usize> {
    chromatic_number_with_limit(g, DEFAULT_VERTEX_LIMIT)
}

pub fn chromatic_number_with_limit(g: &FiniteGraph, vertex_limit: usize) -> Result<usize> {
    if g.vertex_count() == 0 {
        return Err(Error::Domain("the graph on no vertices has no chromatic number".into()));
    }
    let p = chromatic_polynomial_with_limit(g, vertex_limit)?;
    Ok((1..=g.vertex_count())
        .find(|&n| !evaluate(&p, n as i64).is_zero())
        .expect("n colors always suffice for n vertices"))
}

/// Coefficients of `p` in the basis `t(t-1)...(t-k+1)`.
///
/// Divides by `t`, then `t - 1`, `t - 2`, ...; the successive remainders are
/// the coefficients. A negative coefficient means `p` is not a chromatic
/// polynomial.
pub fn to_falling_factorial(p: &IntPolynomial) -> Result<StVector> {
    let mut counts = BTreeMap::new();
    let mut rest = p.clone();
    let mut k = 0usize;
    while !rest.is_zero() {
        let (quotient, remainder) = rest.div_linear(k as i64);
        match remainder.sign() {
            Sign::Minus => {
                return Err(Error::Domain(format!(
                    "not a chromatic polynomial: coefficient {remainder} at falling factorial degree {k}"
                )))
            }
            Sign::NoSign => {}
            Sign::Plus => {
                counts.insert(k, remainder.magnitude().clone());
            }
        }
        rest = quotient;
        k += 1;
    }
    Ok(StVector::new(counts))
}

pub fn from_falling_factorial(st: &StVector) -> IntPolynomial {
    st.to_polynomial()
}

pub fn decide_equivalent_finite(g1: &FiniteGraph, g2: &FiniteGraph) -> Result<bool> {
    Ok(chromatic_polynomial(g1)? == chromatic_polynomial(g2)?)
}

/// Checks the shape constraints every chromatic polynomial of an `n`-vertex
/// graph satisfies: degree `n`, monic, zero constant term for `n >= 1`.
pub fn has_chromatic_shape(p: &IntPolynomial, vertex_count: usize) -> bool {
    p.degree() == Some(vertex_count)
        && p.leading_coefficient().is_one()
        && (vertex_count == 0 || p.coeff(0).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_graph;

    fn t_minus_1_pow(k: usize) -> IntPolynomial {
        (0..k).fold(IntPolynomial::one(), |acc, _| acc.mul_linear(1))
    }

    #[test]
    fn textbook_polynomials() {
        let p4 = chromatic_polynomial(&FiniteGraph::path(4)).unwrap();
        assert_eq!(p4, t_minus_1_pow(3).mul_linear(0));
        let k4 = chromatic_polynomial(&complete_graph(4)).unwrap();
        assert_eq!(k4, IntPolynomial::falling_factorial(4));
        let e3 = chromatic_polynomial(&FiniteGraph::edgeless(3)).unwrap();
        assert_eq!(e3, IntPolynomial::monomial(3));
        // C_4: (t-1)^4 + (t-1)
        let c4 = chromatic_polynomial(&FiniteGraph::cycle(4).unwrap()).unwrap();
        assert_eq!(c4, &t_minus_1_pow(4) + &t_minus_1_pow(1));
        assert!(has_chromatic_shape(&c4, 4));
    }

    #[test]
    fn vertex_limit() {
        let big = FiniteGraph::path(13);
        assert!(matches!(chromatic_polynomial(&big), Err(Error::Resource(_))));
        assert!(chromatic_polynomial_with_limit(&big, 13).is_ok());
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number(&complete_graph(4)).unwrap(), 4);
        assert_eq!(chromatic_number(&FiniteGraph::star(3)).unwrap(), 2);
        assert_eq!(chromatic_number(&FiniteGraph::cycle(5).unwrap()).unwrap(), 3);
        assert_eq!(chromatic_number(&FiniteGraph::edgeless(2)).unwrap(), 1);
        assert!(matches!(chromatic_number(&FiniteGraph::edgeless(0)), Err(Error::Domain(_))));
    }

    #[test]
    fn falling_factorial_expansion() {
        let st = to_falling_factorial(&IntPolynomial::falling_factorial(3)).unwrap();
        assert_eq!(st, StVector::from_u64s(&[(3, 1)]));
        let st = to_falling_factorial(&IntPolynomial::monomial(3)).unwrap();
        assert_eq!(st, StVector::from_u64s(&[(1, 1), (2, 3), (3, 1)]));
        let p3 = t_minus_1_pow(2).mul_linear(0);
        assert_eq!(
            to_falling_factorial(&p3).unwrap(),
            StVector::from_u64s(&[(2, 1), (3, 1)])
        );
        // t - 2 = (t) - 2: negative coefficient.
        let bad = IntPolynomial::from_i64s(&[-2, 1]);
        assert!(matches!(to_falling_factorial(&bad), Err(Error::Domain(_))));
        // The empty graph: a single partition with no blocks.
        assert_eq!(
            to_falling_factorial(&IntPolynomial::one()).unwrap(),
            StVector::from_u64s(&[(0, 1)])
        );
    }

    #[test]
    fn equivalence() {
        assert!(decide_equivalent_finite(&FiniteGraph::path(5), &FiniteGraph::star(4)).unwrap());
        assert!(!decide_equivalent_finite(&FiniteGraph::path(4), &FiniteGraph::cycle(4).unwrap()).unwrap());
        let g = FiniteGraph::cycle(5).unwrap();
        assert!(decide_equivalent_finite(&g, &g).unwrap());
    }

    #[test]
    fn st_vector_json() {
        let st = StVector::from_u64s(&[(2, 1), (3, 1)]);
        let json = serde_json::to_string(&st).unwrap();
        assert_eq!(json, r#"{"st":{"2":"1","3":"1"}}"#);
        assert_eq!(serde_json::from_str::<StVector>(&json).unwrap(), st);
    }
}
