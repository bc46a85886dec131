//! Exhaustive ground truth for tiny odd orders.
//!
//! Every near-one-factorization of `K_n` is enumerated by assigning the edges,
//! in lexicographic order, to factors. Each vertex is isolated in exactly one
//! factor, so labelling factor `p` as the one that isolates vertex `p` is a
//! pure relabelling: it removes the `n!` orderings of the factors without
//! losing any factorization.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factors::{Edge, Factor, Factorization};
use crate::numtheory::totient;
use crate::pairing::{path_vertex_count, NONE};

/// Largest order the search accepts. `K_9` has over a billion
/// near-one-factorizations and needs an explicit opt-in.
pub const MAX_ORDER: usize = 9;
pub const EXPENSIVE_ORDER: usize = 9;

fn check_range(n: usize) -> Result<()> {
    if !(3..=MAX_ORDER).contains(&n) || n % 2 == 0 {
        return Err(Error::OracleRange(n));
    }
    Ok(())
}

/// Backtracking state: a partial edge → factor assignment.
///
/// Invariant: the edges assigned to each factor form a matching that avoids
/// the factor's own isolated vertex.
#[derive(Debug, Clone)]
pub struct SearchState {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// Factor of each edge, `NONE` when unassigned.
    assignment: Vec<usize>,
    /// Per factor, a bitmask of vertices already matched (or isolated).
    used: Vec<u32>,
    /// `partners[p * n + v]` is `v`'s partner in factor `p`.
    partners: Vec<usize>,
    started: bool,
    exhausted: bool,
}

impl SearchState {
    fn new(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect::<Vec<_>>();
        Self {
            n,
            assignment: vec![NONE; edges.len()],
            edges,
            used: (0..n).map(|p| 1u32 << p).collect(),
            partners: vec![NONE; n * n],
            started: false,
            exhausted: false,
        }
    }

    fn find_slot(&self, pos: usize, from: usize) -> Option<usize> {
        let (u, v) = self.edges[pos];
        let mask = (1u32 << u) | (1u32 << v);
        (from..self.n).find(|&p| self.used[p] & mask == 0)
    }

    fn assign(&mut self, pos: usize, p: usize) {
        let (u, v) = self.edges[pos];
        self.assignment[pos] = p;
        self.used[p] |= (1 << u) | (1 << v);
        self.partners[p * self.n + u] = v;
        self.partners[p * self.n + v] = u;
    }

    fn unassign(&mut self, pos: usize) -> usize {
        let (u, v) = self.edges[pos];
        let p = self.assignment[pos];
        self.assignment[pos] = NONE;
        self.used[p] &= !((1 << u) | (1 << v));
        self.partners[p * self.n + u] = NONE;
        self.partners[p * self.n + v] = NONE;
        p
    }

    /// Moves to the next complete assignment; `false` once the tree is spent.
    fn advance(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        let m = self.edges.len();
        let (mut pos, mut from) = if self.started {
            let last = m - 1;
            (last, self.unassign(last) + 1)
        } else {
            self.started = true;
            (0, 0)
        };
        loop {
            match self.find_slot(pos, from) {
                Some(p) => {
                    self.assign(pos, p);
                    pos += 1;
                    if pos == m {
                        return true;
                    }
                    from = 0;
                }
                None => {
                    if pos == 0 {
                        self.exhausted = true;
                        return false;
                    }
                    pos -= 1;
                    from = self.unassign(pos) + 1;
                }
            }
        }
    }

    fn partner_table(&self, p: usize) -> &[usize] {
        &self.partners[p * self.n..(p + 1) * self.n]
    }

    /// Perfect pairs of the current complete assignment. Factor `p`
    /// isolates vertex `p`, which is where its walk starts.
    fn perfect_pairs(&self) -> usize {
        let n = self.n;
        let mut count = 0;
        for p in 0..n {
            for q in p + 1..n {
                if path_vertex_count(self.partner_table(p), self.partner_table(q), p) == n {
                    count += 1;
                }
            }
        }
        count
    }

    fn to_factorization(&self) -> Factorization {
        let mut buckets: Vec<Vec<Edge>> = vec![Vec::new(); self.n];
        for (&(u, v), &p) in self.edges.iter().zip(&self.assignment) {
            buckets[p].push(Edge::new(u, v).expect("edges of K_n are not loops"));
        }
        let factors = buckets
            .into_iter()
            .enumerate()
            .map(|(p, edges)| Factor::from_parts(self.n, None, Some(p), edges))
            .collect();
        Factorization::from_trusted(self.n, factors).canonical()
    }
}

/// Lazily yields every near-one-factorization of `K_n` once, in canonical
/// form (factors unlabelled and sorted by edge list).
pub struct FactorizationIter {
    state: SearchState,
}

impl Iterator for FactorizationIter {
    type Item = Factorization;

    fn next(&mut self) -> Option<Factorization> {
        self.state
            .advance()
            .then(|| self.state.to_factorization())
    }
}

pub fn enumerate_factorizations(n: usize) -> Result<FactorizationIter> {
    check_range(n)?;
    Ok(FactorizationIter {
        state: SearchState::new(n),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub n: usize,
    pub exact_c: u64,
    pub lower_bound: u64,
    pub factorizations_seen: u64,
}

/// `c(K_n)`: the maximum number of perfect pairs over all
/// near-one-factorizations, by exhaustive search with a running maximum.
///
/// Order 9 is refused with [`Error::CostGuard`] unless `allow_expensive`.
pub fn exact_c(n: usize, allow_expensive: bool) -> Result<OracleReport> {
    check_range(n)?;
    if n >= EXPENSIVE_ORDER && !allow_expensive {
        return Err(Error::CostGuard(n));
    }
    let mut state = SearchState::new(n);
    let (mut best, mut seen) = (0u64, 0u64);
    while state.advance() {
        seen += 1;
        best = best.max(state.perfect_pairs() as u64);
    }
    Ok(OracleReport {
        n,
        exact_c: best,
        lower_bound: n as u64 * totient(n as u64)? / 2,
        factorizations_seen: seen,
    })
}

/// Hamiltonicity of `f ∪ g` decided from the union graph itself: a degree
/// census followed by a connectivity scan. Odd order asks for a spanning
/// path, even order for a spanning cycle.
pub fn independent_hamiltonicity_check(f: &Factor, g: &Factor) -> bool {
    let n = f.order();
    if g.order() != n || n < 3 {
        return false;
    }
    let union: BTreeSet<Edge> = f.edges().iter().chain(g.edges()).copied().collect();
    let mut adjacency = vec![Vec::new(); n];
    for e in &union {
        if e.v() >= n {
            return false;
        }
        adjacency[e.u()].push(e.v());
        adjacency[e.v()].push(e.u());
    }

    let ends = adjacency.iter().filter(|a| a.len() == 1).count();
    let middles = adjacency.iter().filter(|a| a.len() == 2).count();
    let census_ok = if n % 2 == 1 {
        ends == 2 && middles == n - 2
    } else {
        middles == n
    };
    if !census_ok {
        return false;
    }

    let mut reached = vec![false; n];
    let mut stack = vec![0];
    reached[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &y in &adjacency[x] {
            if !reached[y] {
                reached[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == n
}
