//! The modular family `{F_p}` of `K_{st}` and the product family `{D_{k,l}}`
//! are the same near-one-factorization once vertices are identified by the
//! Chinese remainder map `v ↦ (v mod s, v mod t)`.
//!
//! Under that map `u + v ≡ p (mod st)` holds exactly when both
//! `u + v ≡ p (mod s)` and `u + v ≡ p (mod t)`, so `F_p` lands on
//! `D_{p mod s, p mod t}`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factors::build_modular_factor;
use crate::numtheory::{gcd_u64, totient};
use crate::product::{build_product_factor, product_bound, PairVertex};

fn check_coprime(s: usize, t: usize) -> Result<()> {
    let g = gcd_u64(s as u64, t as u64);
    if g != 1 {
        return Err(Error::NotCoprime {
            s: s as u64,
            t: t as u64,
            gcd: g,
        });
    }
    Ok(())
}

fn check_odd_coprime(s: usize, t: usize) -> Result<()> {
    for m in [s, t] {
        if m < 3 {
            return Err(Error::OrderTooSmall(m));
        }
        if m % 2 == 0 {
            return Err(Error::EvenOrder(m));
        }
    }
    check_coprime(s, t)
}

pub fn crt_vertex_map(v: usize, s: usize, t: usize) -> Result<PairVertex> {
    check_coprime(s, t)?;
    if v >= s * t {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            order: s * t,
        });
    }
    Ok(PairVertex::new(v % s, v % t))
}

/// `F_p` corresponds to `D_{p mod s, p mod t}`.
pub fn map_factor_index(p: usize, s: usize, t: usize) -> Result<(usize, usize)> {
    check_coprime(s, t)?;
    if p >= s * t {
        return Err(Error::IndexOutOfRange {
            index: p,
            order: s * t,
        });
    }
    Ok((p % s, p % t))
}

/// Whether `F_p` on `K_{st}` and `D_{p mod s, p mod t}` coincide under the
/// CRT vertex map, isolated vertices included.
pub fn verify_factor_equality(p: usize, s: usize, t: usize) -> Result<bool> {
    check_odd_coprime(s, t)?;
    let (k, l) = map_factor_index(p, s, t)?;
    let modular = build_modular_factor(s * t, p)?;
    let product = build_product_factor(s, t, k, l)?;

    let mut mapped = BTreeSet::new();
    for e in modular.edges() {
        let a = crt_vertex_map(e.u(), s, t)?;
        let b = crt_vertex_map(e.v(), s, t)?;
        mapped.insert((a.min(b), a.max(b)));
    }
    let target: BTreeSet<_> = product.edges().iter().copied().collect();

    let isolated = match modular.isolated() {
        Some(v) => crt_vertex_map(v, s, t)? == product.isolated(),
        None => false,
    };
    Ok(isolated && mapped == target)
}

/// `(n·φ(n)/2, 2·(s·φ(s)/2)·(t·φ(t)/2))` for `n = s·t`.
pub fn lower_bounds(s: usize, t: usize) -> Result<(u64, u64)> {
    let (s, t) = (s as u64, t as u64);
    let n = s * t;
    let direct = n * totient(n)? / 2;
    let c_s = s * totient(s)? / 2;
    let c_t = t * totient(t)? / 2;
    Ok((direct, product_bound(c_s, c_t)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub s: usize,
    pub t: usize,
    pub n: usize,
    /// `(p, k, l)` for every `p` in `0..n`.
    pub index_map: Vec<(usize, usize, usize)>,
    pub all_edge_sets_equal: bool,
    pub direct_bound: u64,
    pub product_bound: u64,
    pub bounds_equal: bool,
    /// Every `p` whose factors did not coincide.
    pub failures: Vec<usize>,
}

impl EquivalenceReport {
    /// Each `(k, l)` appears exactly once.
    pub fn index_map_is_bijection(&self) -> bool {
        let mut hit = vec![false; self.s * self.t];
        if self.index_map.len() != self.n {
            return false;
        }
        for &(_, k, l) in &self.index_map {
            if k >= self.s || l >= self.t || std::mem::replace(&mut hit[k * self.t + l], true) {
                return false;
            }
        }
        true
    }

    pub fn holds(&self) -> bool {
        self.all_edge_sets_equal && self.bounds_equal && self.index_map_is_bijection()
    }
}

/// Runs every per-index comparison and both bounds. Failures are recorded in
/// the report rather than returned as errors.
pub fn build_equivalence_report(s: usize, t: usize) -> Result<EquivalenceReport> {
    check_odd_coprime(s, t)?;
    let n = s * t;
    let mut index_map = Vec::with_capacity(n);
    let mut failures = Vec::new();
    for p in 0..n {
        let (k, l) = map_factor_index(p, s, t)?;
        index_map.push((p, k, l));
        if !verify_factor_equality(p, s, t)? {
            failures.push(p);
        }
    }
    let (direct_bound, product_bound) = lower_bounds(s, t)?;
    Ok(EquivalenceReport {
        s,
        t,
        n,
        index_map,
        all_edge_sets_equal: failures.is_empty(),
        direct_bound,
        product_bound,
        bounds_equal: direct_bound == product_bound,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_map_examples() {
        assert_eq!(crt_vertex_map(7, 3, 5).unwrap(), PairVertex::new(1, 2));
        assert_eq!(crt_vertex_map(0, 3, 5).unwrap(), PairVertex::new(0, 0));
        assert_eq!(crt_vertex_map(14, 3, 5).unwrap(), PairVertex::new(2, 4));
        assert!(matches!(
            crt_vertex_map(1, 3, 9),
            Err(Error::NotCoprime { gcd: 3, .. })
        ));
        assert!(matches!(
            crt_vertex_map(15, 3, 5),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn index_map_examples() {
        assert_eq!(map_factor_index(7, 3, 5).unwrap(), (1, 2));
        assert_eq!(map_factor_index(0, 3, 5).unwrap(), (0, 0));
        assert_eq!(map_factor_index(11, 3, 7).unwrap(), (2, 4));
    }

    #[test]
    fn factor_equality_examples() {
        assert!(verify_factor_equality(0, 3, 5).unwrap());
        assert!(verify_factor_equality(7, 3, 5).unwrap());
        assert!((0..15).all(|p| verify_factor_equality(p, 3, 5).unwrap()));
        assert_eq!(verify_factor_equality(0, 4, 5), Err(Error::EvenOrder(4)));
    }

    #[test]
    fn positional_flattening_is_not_the_identification() {
        // With v ↦ (v / t, v % t) instead of the CRT map, F_1 on K_15 does
        // not land on D_{1,1}.
        let modular = build_modular_factor(15, 1).unwrap();
        let product = build_product_factor(3, 5, 1, 1).unwrap().to_factor();
        assert_ne!(modular.edges(), product.edges());
    }

    #[test]
    fn report_examples() {
        for (s, t, bound) in [(3, 5, 60), (3, 7, 126), (5, 7, 420)] {
            let r = build_equivalence_report(s, t).unwrap();
            assert!(r.all_edge_sets_equal);
            assert!(r.failures.is_empty());
            assert_eq!(r.direct_bound, bound);
            assert_eq!(r.product_bound, bound);
            assert!(r.holds());
        }
        assert!(matches!(
            build_equivalence_report(3, 9),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn report_json_round_trips() {
        let r = build_equivalence_report(3, 5).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.starts_with(r#"{"s":3,"t":5,"n":15,"index_map":[[0,0,0],[1,1,1],"#));
        assert!(s.ends_with(r#""bounds_equal":true,"failures":[]}"#));
        assert_eq!(serde_json::from_str::<EquivalenceReport>(&s).unwrap(), r);
    }
}
