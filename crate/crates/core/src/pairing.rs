//! Perfect pairs: traversal of the union of two factors, the closed form for
//! the i-th edge of that traversal, and the gcd criterion for modular pairs.
//!
//! The traversal is the authority. For odd `n` it starts at the isolated
//! vertex of the first factor and alternates edges of the second factor and
//! the first; the pair is perfect when it reaches the other isolated vertex
//! after visiting all `n` vertices. For even `n` it starts at vertex 0 and the
//! pair is perfect when the alternating cycle through 0 has length `n`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factors::{build_modular_factor, validate_factor, Factor, Factorization};
use crate::numtheory::{gcd_u64, mod_inverse, reduce};

pub(crate) const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WalkEnd {
    /// Odd order: the walk visited every vertex and ended at the isolated
    /// vertex of the other factor.
    ReachedOtherIsolated,
    /// Returned to the start vertex.
    ClosedCycle,
    /// Ran out of edges, or would have revisited a vertex, before spanning.
    StoppedEarly,
}

/// Alternating walk through the union of two factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnionWalk {
    pub start: usize,
    /// Visited vertices in order. A closed cycle repeats the start at the end.
    pub vertices: Vec<usize>,
    /// Edges as `(from, to)` in walk direction. Edge 0 belongs to the second
    /// factor, edge 1 to the first, and so on.
    pub steps: Vec<(usize, usize)>,
    pub end: WalkEnd,
}

impl UnionWalk {
    /// Number of distinct vertices visited.
    pub fn distinct_vertices(&self) -> usize {
        match self.end {
            WalkEnd::ClosedCycle => self.vertices.len() - 1,
            _ => self.vertices.len(),
        }
    }

    /// The `i`-th edge, 1-based, as an ordered pair.
    pub fn edge(&self, i: usize) -> Option<(usize, usize)> {
        i.checked_sub(1).and_then(|i| self.steps.get(i).copied())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CriterionCheck {
    pub gcd_perfect: bool,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairClassification {
    pub perfect: bool,
    pub witness: UnionWalk,
    /// Present when both factors are odd-order modular factors.
    pub criterion: Option<CriterionCheck>,
}

pub(crate) fn partner_array(f: &Factor) -> Vec<usize> {
    f.partners()
        .into_iter()
        .map(|p| p.unwrap_or(NONE))
        .collect()
}

fn record_walk(first: &[usize], second: &[usize], start: usize, closes: bool) -> UnionWalk {
    let n = first.len();
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut vertices = vec![start];
    let mut steps = Vec::new();
    let mut cur = start;
    let mut use_second = true;
    let end = loop {
        let next = if use_second { second[cur] } else { first[cur] };
        if next == NONE {
            break if !closes && vertices.len() == n {
                WalkEnd::ReachedOtherIsolated
            } else {
                WalkEnd::StoppedEarly
            };
        }
        if seen[next] {
            if next == start {
                vertices.push(next);
                steps.push((cur, next));
                break WalkEnd::ClosedCycle;
            }
            break WalkEnd::StoppedEarly;
        }
        seen[next] = true;
        vertices.push(next);
        steps.push((cur, next));
        cur = next;
        use_second = !use_second;
    };
    UnionWalk {
        start,
        vertices,
        steps,
        end,
    }
}

/// Lean traversal for odd order: vertices on the alternating path from
/// `start`. Valid near-one-factors cannot close a cycle from a vertex of
/// union-degree one; the bound only guards malformed input.
pub(crate) fn path_vertex_count(first: &[usize], second: &[usize], start: usize) -> usize {
    let n = first.len();
    let mut cur = start;
    let mut count = 1;
    let mut use_second = true;
    while count <= n {
        let next = if use_second { second[cur] } else { first[cur] };
        if next == NONE {
            break;
        }
        cur = next;
        count += 1;
        use_second = !use_second;
    }
    count
}

/// Lean traversal for even order: length of the alternating cycle through 0.
pub(crate) fn cycle_length(first: &[usize], second: &[usize]) -> usize {
    let n = first.len();
    let mut cur = 0;
    let mut len = 0;
    let mut use_second = true;
    loop {
        let next = if use_second { second[cur] } else { first[cur] };
        if next == NONE {
            return 0;
        }
        cur = next;
        len += 1;
        use_second = !use_second;
        if cur == 0 || len > n {
            return len;
        }
    }
}

fn check_pair(f: &Factor, g: &Factor) -> Result<()> {
    if f.order() != g.order() {
        return Err(Error::OrderMismatch(f.order(), g.order()));
    }
    validate_factor(f).map_err(Error::InvalidFactor)?;
    validate_factor(g).map_err(Error::InvalidFactor)?;
    let same_index = matches!((f.index(), g.index()), (Some(a), Some(b)) if a == b);
    if same_index || f.edges() == g.edges() {
        return Err(Error::SameFactor);
    }
    Ok(())
}

/// Walk through `f ∪ g`.
///
/// Odd order: starts at `f`'s isolated vertex and takes a `g`-edge first.
/// Even order: starts at vertex 0 and follows the alternating cycle.
pub fn union_walk(f: &Factor, g: &Factor) -> Result<UnionWalk> {
    check_pair(f, g)?;
    let (pf, pg) = (partner_array(f), partner_array(g));
    Ok(match f.isolated() {
        Some(start) => record_walk(&pf, &pg, start, false),
        None => record_walk(&pf, &pg, 0, true),
    })
}

fn check_modular_args(k: usize, l: usize, n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::OrderTooSmall(n));
    }
    if n % 2 == 0 {
        return Err(Error::EvenOrder(n));
    }
    for x in [k, l] {
        if x >= n {
            return Err(Error::IndexOutOfRange { index: x, order: n });
        }
    }
    if k == l {
        return Err(Error::SameFactor);
    }
    Ok(())
}

/// Closed form for the `i`-th edge (1-based) of the walk from `F_k`'s
/// isolated vertex through `F_k ∪ F_l` on `K_n`, `n` odd.
///
/// Odd `i`:  `(ik/2 − (i−1)l/2, (i+1)l/2 − ik/2)`;
/// even `i`: `(il/2 − (i−1)k/2, (i+1)k/2 − il/2)`, all mod `n`.
pub fn nth_union_edge(k: usize, l: usize, n: usize, i: usize) -> Result<(usize, usize)> {
    check_modular_args(k, l, n)?;
    if i < 1 || i > n - 1 {
        return Err(Error::PositionOutOfRange {
            position: i,
            max: n - 1,
        });
    }
    let inv2 = mod_inverse(2, n as u64)?.value() as i128;
    let (a, b) = if i % 2 == 1 { (k, l) } else { (l, k) };
    let (a, b, i) = (a as i128, b as i128, i as i128);
    let m = n as u64;
    let from = reduce((i * a - (i - 1) * b) * inv2, m);
    let to = reduce(((i + 1) * b - i * a) * inv2, m);
    Ok((from as usize, to as usize))
}

/// `F_k, F_l` on `K_n` (odd `n`) are perfect iff `gcd(k − l, n) = 1`.
pub fn is_perfect_by_gcd(k: usize, l: usize, n: usize) -> Result<bool> {
    check_modular_args(k, l, n)?;
    let diff = (k + n - l) % n;
    Ok(gcd_u64(diff as u64, n as u64) == 1)
}

fn modular_index(f: &Factor) -> Option<usize> {
    let k = f.index()?;
    let n = f.order();
    if n % 2 == 0 {
        return None;
    }
    let m = build_modular_factor(n, k).ok()?;
    (m.edges() == f.edges() && m.isolated() == f.isolated()).then_some(k)
}

/// Decides whether `f` and `g` form a perfect pair, by traversal.
pub fn classify_pair(f: &Factor, g: &Factor) -> Result<PairClassification> {
    let witness = union_walk(f, g)?;
    let n = f.order();
    let perfect = witness.distinct_vertices() == n
        && match f.isolated() {
            Some(_) => witness.end == WalkEnd::ReachedOtherIsolated,
            None => witness.end == WalkEnd::ClosedCycle,
        };
    let criterion = match (modular_index(f), modular_index(g)) {
        (Some(k), Some(l)) => {
            let gcd_perfect = is_perfect_by_gcd(k, l, n)?;
            Some(CriterionCheck {
                gcd_perfect,
                agrees: gcd_perfect == perfect,
            })
        }
        _ => None,
    };
    Ok(PairClassification {
        perfect,
        witness,
        criterion,
    })
}

/// Partner arrays for every factor, in factorization order.
pub(crate) fn partner_tables(fz: &Factorization) -> Vec<Vec<usize>> {
    fz.factors().iter().map(partner_array).collect()
}

pub(crate) fn tables_pair_is_perfect(
    first: &[usize],
    second: &[usize],
    first_isolated: Option<usize>,
) -> bool {
    let n = first.len();
    match first_isolated {
        Some(start) => path_vertex_count(first, second, start) == n,
        None => cycle_length(first, second) == n,
    }
}

/// Perfect pairs of `fz` as position pairs `(a, b)`, `a < b`.
pub fn perfect_pairs(fz: &Factorization) -> Vec<(usize, usize)> {
    let tables = partner_tables(fz);
    let factors = fz.factors();
    let mut out = Vec::new();
    for a in 0..tables.len() {
        for b in a + 1..tables.len() {
            if tables_pair_is_perfect(&tables[a], &tables[b], factors[a].isolated()) {
                out.push((a, b));
            }
        }
    }
    out
}

/// `c(F)`: number of unordered perfect pairs of the factorization.
pub fn count_perfect_pairs(fz: &Factorization) -> usize {
    perfect_pairs(fz).len()
}
