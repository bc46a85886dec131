//! Product factors `D_{k,l}` of `K_{st}`.
//!
//! Vertices are pairs `(i, j)` with `i < s`, `j < t`. `D_{k,l}` joins
//! `(i, j)` and `(i', j')` when the two differ, `i + i' ≡ k (mod s)` and
//! `j + j' ≡ l (mod t)`. Pairs flatten to `i·t + j` when a product factor is
//! handed to the generic pairing code.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factors::{Edge, Factor, Factorization};
use crate::numtheory::{gcd_u64, half_mod, Residue};
use crate::pairing::{classify_pair, perfect_pairs, PairClassification};

pub const POSITIONAL_ENCODING: &str = "positional";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PairVertex {
    pub i: usize,
    pub j: usize,
}

impl PairVertex {
    pub fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }

    /// Positional flattening `i·t + j`.
    pub fn flatten(self, t: usize) -> usize {
        self.i * t + self.j
    }

    pub fn unflatten(v: usize, t: usize) -> Self {
        Self { i: v / t, j: v % t }
    }
}

impl fmt::Display for PairVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ProductFactorRepr", try_from = "ProductFactorRepr")]
pub struct ProductFactor {
    s: usize,
    t: usize,
    k: usize,
    l: usize,
    isolated: PairVertex,
    /// Sorted; each pair has its smaller vertex first.
    edges: Vec<(PairVertex, PairVertex)>,
}

impl ProductFactor {
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn indices(&self) -> (usize, usize) {
        (self.k, self.l)
    }

    pub fn isolated(&self) -> PairVertex {
        self.isolated
    }

    pub fn edges(&self) -> &[(PairVertex, PairVertex)] {
        &self.edges
    }

    /// The same factor on `K_{st}` with positionally flattened vertices.
    pub fn to_factor(&self) -> Factor {
        let t = self.t;
        let edges = self.edges.iter().map(|&(a, b)| {
            Edge::new(a.flatten(t), b.flatten(t)).expect("product edge joins distinct vertices")
        });
        Factor::from_parts(self.s * t, None, Some(self.isolated.flatten(t)), edges)
    }
}

/// JSON form: the `Factor` schema on flattened vertices plus the product
/// parameters.
#[derive(Serialize, Deserialize)]
struct ProductFactorRepr {
    n: usize,
    index: Option<usize>,
    isolated: usize,
    edges: Vec<Edge>,
    s: usize,
    t: usize,
    k: usize,
    l: usize,
    vertex_encoding: String,
}

impl From<ProductFactor> for ProductFactorRepr {
    fn from(p: ProductFactor) -> Self {
        let f = p.to_factor();
        Self {
            n: f.order(),
            index: None,
            isolated: p.isolated.flatten(p.t),
            edges: f.edges().to_vec(),
            s: p.s,
            t: p.t,
            k: p.k,
            l: p.l,
            vertex_encoding: POSITIONAL_ENCODING.to_string(),
        }
    }
}

impl TryFrom<ProductFactorRepr> for ProductFactor {
    type Error = Error;

    fn try_from(r: ProductFactorRepr) -> Result<Self> {
        if r.vertex_encoding != POSITIONAL_ENCODING {
            return Err(Error::InvalidFactorization(format!(
                "unsupported vertex encoding {:?}",
                r.vertex_encoding
            )));
        }
        let n = r.s * r.t;
        if r.n != n {
            return Err(Error::OrderMismatch(r.n, n));
        }
        if r.t == 0 {
            return Err(Error::OrderTooSmall(0));
        }
        for v in r
            .edges
            .iter()
            .flat_map(|e| [e.u(), e.v()])
            .chain([r.isolated])
        {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, order: n });
            }
        }
        let t = r.t;
        let mut edges: Vec<_> = r
            .edges
            .iter()
            .map(|e| (PairVertex::unflatten(e.u(), t), PairVertex::unflatten(e.v(), t)))
            .collect();
        edges.sort_unstable();
        Ok(Self {
            s: r.s,
            t,
            k: r.k,
            l: r.l,
            isolated: PairVertex::unflatten(r.isolated, t),
            edges,
        })
    }
}

fn check_odd(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::OrderTooSmall(n));
    }
    if n % 2 == 0 {
        return Err(Error::EvenOrder(n));
    }
    Ok(())
}

fn half(k: usize, n: usize) -> Result<usize> {
    Ok(half_mod(Residue::new(k as i64, n as u64)?)?.value() as usize)
}

/// Builds `D_{k,l}` for odd `s`, `t`. Coprimality is not required.
pub fn build_product_factor(s: usize, t: usize, k: usize, l: usize) -> Result<ProductFactor> {
    check_odd(s)?;
    check_odd(t)?;
    if k >= s {
        return Err(Error::IndexOutOfRange { index: k, order: s });
    }
    if l >= t {
        return Err(Error::IndexOutOfRange { index: l, order: t });
    }
    let mut edges = Vec::with_capacity((s * t - 1) / 2);
    for i in 0..s {
        let ip = (k + s - i) % s;
        for j in 0..t {
            let jp = (l + t - j) % t;
            let (a, b) = (PairVertex::new(i, j), PairVertex::new(ip, jp));
            if a < b {
                edges.push((a, b));
            }
        }
    }
    Ok(ProductFactor {
        s,
        t,
        k,
        l,
        isolated: PairVertex::new(half(k, s)?, half(l, t)?),
        edges,
    })
}

/// Two-gcd criterion: `gcd(k − k', s) = 1` and `gcd(l − l', t) = 1`.
pub fn is_perfect_product_pair(
    s: usize,
    t: usize,
    (k, l): (usize, usize),
    (k2, l2): (usize, usize),
) -> Result<bool> {
    check_odd(s)?;
    check_odd(t)?;
    for (x, m) in [(k, s), (k2, s), (l, t), (l2, t)] {
        if x >= m {
            return Err(Error::IndexOutOfRange { index: x, order: m });
        }
    }
    if (k, l) == (k2, l2) {
        return Err(Error::SameFactor);
    }
    let dk = ((k + s - k2) % s) as u64;
    let dl = ((l + t - l2) % t) as u64;
    Ok(gcd_u64(dk, s as u64) == 1 && gcd_u64(dl, t as u64) == 1)
}

/// `2 · c_s · c_t`.
pub fn product_bound(c_s: u64, c_t: u64) -> u64 {
    2 * c_s * c_t
}

/// All `D_{k,l}` in `(k, l)` order, flattened onto `K_{st}`.
///
/// The family is a near-one-factorization for any odd `s`, `t`: the edge
/// `{(i,j),(i',j')}` lies only in `D_{i+i', j+j'}`.
pub fn product_family(s: usize, t: usize) -> Result<Factorization> {
    let mut factors = Vec::with_capacity(s * t);
    for k in 0..s {
        for l in 0..t {
            factors.push(build_product_factor(s, t, k, l)?.to_factor());
        }
    }
    Factorization::new(s * t, factors)
}

pub fn classify_product_pair(a: &ProductFactor, b: &ProductFactor) -> Result<PairClassification> {
    classify_pair(&a.to_factor(), &b.to_factor())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductPairCount {
    pub s: usize,
    pub t: usize,
    /// Perfect pairs found by walking each union on `K_{st}`.
    pub traversal: usize,
    /// Pairs satisfying the two-gcd criterion.
    pub predicted: usize,
    /// Pairs where the two disagree.
    pub mismatches: usize,
}

/// Counts perfect pairs over the whole family `{D_{k,l}}`.
pub fn count_perfect_product_pairs(s: usize, t: usize) -> Result<ProductPairCount> {
    let family = product_family(s, t)?;
    let mut found = vec![false; s * t * s * t];
    for (a, b) in perfect_pairs(&family) {
        found[a * s * t + b] = true;
    }
    let (mut traversal, mut predicted, mut mismatches) = (0, 0, 0);
    let idx = |p: usize| (p / t, p % t);
    for a in 0..s * t {
        for b in a + 1..s * t {
            let walked = found[a * s * t + b];
            let gcd = is_perfect_product_pair(s, t, idx(a), idx(b))?;
            traversal += walked as usize;
            predicted += gcd as usize;
            mismatches += (walked != gcd) as usize;
        }
    }
    Ok(ProductPairCount {
        s,
        t,
        traversal,
        predicted,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factors::validate_factor;

    fn pv(i: usize, j: usize) -> PairVertex {
        PairVertex::new(i, j)
    }

    #[test]
    fn build_examples() {
        let d = build_product_factor(3, 5, 0, 0).unwrap();
        assert_eq!(d.isolated(), pv(0, 0));
        assert_eq!(d.edges().len(), 7);
        assert!(d.edges().contains(&(pv(1, 1), pv(2, 4))));
        assert!(d.edges().contains(&(pv(0, 1), pv(0, 4))));

        let d = build_product_factor(3, 3, 0, 0).unwrap();
        assert_eq!(d.isolated(), pv(0, 0));
        assert_eq!(d.edges().len(), 4);

        let d = build_product_factor(3, 5, 1, 2).unwrap();
        assert_eq!(d.isolated(), pv(2, 1));
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(build_product_factor(4, 5, 0, 0).unwrap_err(), Error::EvenOrder(4));
        assert_eq!(build_product_factor(3, 6, 0, 0).unwrap_err(), Error::EvenOrder(6));
        assert!(matches!(
            build_product_factor(3, 5, 3, 0),
            Err(Error::IndexOutOfRange { index: 3, order: 3 })
        ));
    }

    #[test]
    fn product_edges_match_brute_force() {
        for (s, t) in [(3, 3), (3, 5), (5, 3), (5, 7)] {
            for k in 0..s {
                for l in 0..t {
                    let d = build_product_factor(s, t, k, l).unwrap();
                    let mut expected = Vec::new();
                    for a in 0..s * t {
                        for b in a + 1..s * t {
                            let (x, y) = (PairVertex::unflatten(a, t), PairVertex::unflatten(b, t));
                            if (x.i + y.i) % s == k && (x.j + y.j) % t == l {
                                expected.push((x, y));
                            }
                        }
                    }
                    assert_eq!(d.edges(), expected.as_slice());
                }
            }
        }
    }

    #[test]
    fn flattened_factors_are_valid() {
        for s in (3..=9).step_by(2) {
            for t in (3..=9).step_by(2) {
                for k in 0..s {
                    for l in 0..t {
                        let d = build_product_factor(s, t, k, l).unwrap();
                        assert_eq!(validate_factor(&d.to_factor()), Ok(()));
                    }
                }
            }
        }
    }

    #[test]
    fn criterion_examples() {
        assert!(is_perfect_product_pair(3, 5, (0, 0), (1, 1)).unwrap());
        assert!(!is_perfect_product_pair(3, 5, (0, 0), (0, 1)).unwrap());
        assert!(!is_perfect_product_pair(3, 5, (0, 0), (1, 0)).unwrap());
        assert_eq!(
            is_perfect_product_pair(3, 5, (1, 2), (1, 2)),
            Err(Error::SameFactor)
        );
    }

    #[test]
    fn bound_examples() {
        assert_eq!(product_bound(3, 10), 60);
        assert_eq!(product_bound(0, 17), 0);
        assert_eq!(product_bound(10, 21), 420);
    }

    #[test]
    fn coprime_counts() {
        for (s, t, expected) in [(3, 5, 60), (3, 7, 126)] {
            let c = count_perfect_product_pairs(s, t).unwrap();
            assert_eq!(c.traversal, expected);
            assert_eq!(c.predicted, expected);
            assert_eq!(c.mismatches, 0);
        }
    }

    #[test]
    fn non_coprime_orders_break_the_criterion() {
        // The two-gcd rule predicts 9·(2·2)/2 = 18 perfect pairs on K_9, but
        // every walk closes up after lcm(3, 3) = 3 steps per coordinate.
        let c = count_perfect_product_pairs(3, 3).unwrap();
        assert_eq!(c.predicted, 18);
        assert_eq!(c.traversal, 0);
        assert_eq!(c.mismatches, 18);
    }

    #[test]
    fn json_schema() {
        let d = build_product_factor(3, 5, 0, 0).unwrap();
        let v = serde_json::to_value(&d).unwrap();
        assert_eq!(v["n"], 15);
        assert_eq!(v["isolated"], 0);
        assert_eq!(v["vertex_encoding"], "positional");
        assert_eq!(v["edges"].as_array().unwrap().len(), 7);
        assert_eq!((v["s"].clone(), v["t"].clone()), (3.into(), 5.into()));
        let back: ProductFactor = serde_json::from_value(v).unwrap();
        assert_eq!(back, d);
    }
}
