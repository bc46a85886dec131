//! Factors of complete graphs and the modular family `F_k`.
//!
//! Vertices of `K_n` are the residues `0..n`. The modular factor `F_k` pairs
//! `i` with `j` whenever `i + j ≡ k (mod n)`. For odd `n` the one vertex that
//! would pair with itself, `k/2 mod n`, is left isolated.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{half_mod, Residue};

/// An undirected edge of `K_n`, stored with the smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::LoopEdge(a));
        }
        Ok(Self {
            u: a.min(b),
            v: a.max(b),
        })
    }

    pub fn u(self) -> usize {
        self.u
    }

    pub fn v(self) -> usize {
        self.v
    }

    pub fn contains(self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite `x`, if `x` is an endpoint.
    pub fn other(self, x: usize) -> Option<usize> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }
}

impl TryFrom<[usize; 2]> for Edge {
    type Error = Error;

    fn try_from([a, b]: [usize; 2]) -> Result<Self> {
        Edge::new(a, b)
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.u, e.v]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.v)
    }
}

/// A one-factor (even `n`) or near-one-factor (odd `n`) of `K_n`.
///
/// A `Factor` may come from outside (a JSON file, say), so construction only
/// canonicalizes edge order; [`validate_factor`] checks the matching property.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "FactorRepr")]
pub struct Factor {
    n: usize,
    index: Option<usize>,
    isolated: Option<usize>,
    edges: Vec<Edge>,
}

#[derive(Deserialize)]
struct FactorRepr {
    n: usize,
    #[serde(default)]
    index: Option<usize>,
    #[serde(default)]
    isolated: Option<usize>,
    edges: Vec<Edge>,
}

impl From<FactorRepr> for Factor {
    fn from(r: FactorRepr) -> Self {
        Factor::from_parts(r.n, r.index, r.isolated, r.edges)
    }
}

impl Factor {
    pub fn from_parts(
        n: usize,
        index: Option<usize>,
        isolated: Option<usize>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_unstable();
        Self {
            n,
            index,
            isolated,
            edges,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn index(&self) -> Option<usize> {
        self.index
    }

    pub fn isolated(&self) -> Option<usize> {
        self.isolated
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn with_index(mut self, index: Option<usize>) -> Self {
        self.index = index;
        self
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Matching partner of every vertex; `None` for uncovered vertices.
    ///
    /// Only meaningful for factors that pass [`validate_factor`].
    pub fn partners(&self) -> Vec<Option<usize>> {
        let mut p = vec![None; self.n];
        for e in &self.edges {
            if e.v < self.n {
                p[e.u] = Some(e.v);
                p[e.v] = Some(e.u);
            }
        }
        p
    }
}

/// First violated factor invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorViolation {
    OrderTooSmall(usize),
    IndexOutOfRange(usize),
    VertexOutOfRange(usize),
    CoveredTwice(usize),
    IsolatedOnEvenOrder(usize),
    MissingIsolated,
    IsolatedCovered(usize),
    Uncovered(Vec<usize>),
}

impl fmt::Display for FactorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::OrderTooSmall(n) => write!(f, "order {n} is below 3"),
            Self::IndexOutOfRange(k) => write!(f, "index {k} out of range"),
            Self::VertexOutOfRange(v) => write!(f, "vertex {v} out of range"),
            Self::CoveredTwice(v) => write!(f, "vertex {v} covered twice"),
            Self::IsolatedOnEvenOrder(v) => {
                write!(f, "even-order factor declares isolated vertex {v}")
            }
            Self::MissingIsolated => write!(f, "odd-order factor has no isolated vertex"),
            Self::IsolatedCovered(v) => write!(f, "isolated vertex {v} is covered by an edge"),
            Self::Uncovered(vs) => {
                let list = vs
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                if vs.len() == 1 {
                    write!(f, "vertex {{{list}}} uncovered")
                } else {
                    write!(f, "vertices {{{list}}} uncovered")
                }
            }
        }
    }
}

impl std::error::Error for FactorViolation {}

/// Checks that `f` is a (near-)one-factor of `K_n`.
pub fn validate_factor(f: &Factor) -> Result<(), FactorViolation> {
    let n = f.n;
    if n < 3 {
        return Err(FactorViolation::OrderTooSmall(n));
    }
    if let Some(k) = f.index {
        if k >= n {
            return Err(FactorViolation::IndexOutOfRange(k));
        }
    }
    let mut covered = vec![false; n];
    for e in &f.edges {
        for x in [e.u, e.v] {
            if x >= n {
                return Err(FactorViolation::VertexOutOfRange(x));
            }
            if covered[x] {
                return Err(FactorViolation::CoveredTwice(x));
            }
            covered[x] = true;
        }
    }
    match (n % 2 == 1, f.isolated) {
        (false, Some(v)) => return Err(FactorViolation::IsolatedOnEvenOrder(v)),
        (true, None) => return Err(FactorViolation::MissingIsolated),
        (true, Some(v)) if v >= n => return Err(FactorViolation::VertexOutOfRange(v)),
        (true, Some(v)) if covered[v] => return Err(FactorViolation::IsolatedCovered(v)),
        _ => {}
    }
    let missing: Vec<usize> = (0..n)
        .filter(|&x| !covered[x] && Some(x) != f.isolated)
        .collect();
    if !missing.is_empty() {
        return Err(FactorViolation::Uncovered(missing));
    }
    Ok(())
}

fn check_order(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::OrderTooSmall(n));
    }
    Ok(())
}

fn check_index(n: usize, k: usize) -> Result<()> {
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, order: n });
    }
    Ok(())
}

/// The near-one-factor `F_k` of `K_n`, `n` odd: edges `{i, j}` with
/// `i + j ≡ k (mod n)`, isolated vertex `k/2 mod n`.
pub fn build_modular_factor(n: usize, k: usize) -> Result<Factor> {
    check_order(n)?;
    if n % 2 == 0 {
        return Err(Error::EvenOrder(n));
    }
    check_index(n, k)?;
    let edges = (0..n).filter_map(|i| {
        let j = (k + n - i) % n;
        (i < j).then(|| Edge { u: i, v: j })
    });
    let isolated = half_mod(Residue::new(k as i64, n as u64)?)?.value() as usize;
    Ok(Factor::from_parts(n, Some(k), Some(isolated), edges))
}

/// The one-factor `F_k` of `K_n`, `n` even.
///
/// Odd `k` uses the plain sum rule. Even `k` joins the two self-paired
/// vertices `k/2` and `(n+k)/2` to each other and applies the sum rule to the
/// rest.
pub fn build_modular_factor_even(n: usize, k: usize) -> Result<Factor> {
    check_order(n)?;
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    check_index(n, k)?;
    let mut edges = Vec::with_capacity(n / 2);
    if k % 2 == 0 {
        edges.push(Edge {
            u: k / 2,
            v: (n + k) / 2,
        });
    }
    // For even k the sum rule pairs k/2 and (n+k)/2 with themselves, so
    // i < j already excludes them.
    edges.extend((0..n).filter_map(|i| {
        let j = (k + n - i) % n;
        (i < j).then(|| Edge { u: i, v: j })
    }));
    Ok(Factor::from_parts(n, Some(k), None, edges))
}

/// The modular family `F_0, …, F_{n-1}` of `K_n`, `n` odd.
pub fn build_modular_factorization(n: usize) -> Result<Factorization> {
    check_order(n)?;
    if n % 2 == 0 {
        return Err(Error::EvenOrder(n));
    }
    let factors = (0..n)
        .map(|k| build_modular_factor(n, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(Factorization { n, factors })
}

/// Index of the modular factor of `K_n` (odd `n`) containing `{u, v}`.
pub fn factor_index_of_edge(n: usize, u: usize, v: usize) -> Result<usize> {
    check_order(n)?;
    if n % 2 == 0 {
        return Err(Error::EvenOrder(n));
    }
    let e = Edge::new(u, v)?;
    if e.v >= n {
        return Err(Error::VertexOutOfRange {
            vertex: e.v,
            order: n,
        });
    }
    Ok((e.u + e.v) % n)
}

/// A family of factors partitioning `E(K_n)`.
///
/// Odd `n`: `n` near-one-factors, each vertex isolated exactly once.
/// Even `n`: `n - 1` one-factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FactorizationRepr")]
pub struct Factorization {
    n: usize,
    factors: Vec<Factor>,
}

#[derive(Deserialize)]
struct FactorizationRepr {
    n: usize,
    factors: Vec<Factor>,
}

impl TryFrom<FactorizationRepr> for Factorization {
    type Error = Error;

    fn try_from(r: FactorizationRepr) -> Result<Self> {
        Factorization::new(r.n, r.factors)
    }
}

impl Factorization {
    /// Validates `factors` as a (near-)one-factorization of `K_n`.
    pub fn new(n: usize, factors: Vec<Factor>) -> Result<Self> {
        check_order(n)?;
        let expected = if n % 2 == 1 { n } else { n - 1 };
        if factors.len() != expected {
            return Err(Error::InvalidFactorization(format!(
                "expected {expected} factors for order {n}, found {}",
                factors.len()
            )));
        }
        let mut owner = vec![None::<usize>; n * n];
        let mut isolated_seen = vec![false; n];
        for (pos, f) in factors.iter().enumerate() {
            if f.n != n {
                return Err(Error::InvalidFactorization(format!(
                    "factor {pos} has order {}, expected {n}",
                    f.n
                )));
            }
            validate_factor(f).map_err(|v| {
                Error::InvalidFactorization(format!("factor {pos}: {v}"))
            })?;
            if let Some(v) = f.isolated {
                if isolated_seen[v] {
                    return Err(Error::InvalidFactorization(format!(
                        "vertex {v} is isolated in more than one factor"
                    )));
                }
                isolated_seen[v] = true;
            }
            for e in &f.edges {
                let slot = &mut owner[e.u * n + e.v];
                if let Some(prev) = slot {
                    return Err(Error::InvalidFactorization(format!(
                        "edge {e} appears in factors {prev} and {pos}"
                    )));
                }
                *slot = Some(pos);
            }
        }
        // Each factor is a (near-)perfect matching and no edge repeats, so
        // the counts above force the union to be all of E(K_n).
        Ok(Self { n, factors })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Label-free form: indices dropped, factors sorted by edge list.
    pub fn canonical(&self) -> Self {
        let mut factors: Vec<Factor> = self
            .factors
            .iter()
            .map(|f| f.clone().with_index(None))
            .collect();
        factors.sort_unstable_by(|a, b| a.edges.cmp(&b.edges));
        Self { n: self.n, factors }
    }

    pub(crate) fn from_trusted(n: usize, factors: Vec<Factor>) -> Self {
        Self { n, factors }
    }
}

/// Every edge of `K_n` in lexicographic order.
pub fn complete_graph_edges(n: usize) -> Vec<Edge> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| Edge { u, v }))
        .collect()
}

/// Set of edges of `f`, for comparisons that ignore order.
pub fn edge_set(f: &Factor) -> BTreeSet<Edge> {
    f.edges.iter().copied().collect()
}
