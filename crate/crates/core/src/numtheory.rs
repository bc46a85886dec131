//! Exact modular arithmetic on native integers.
//!
//! Every residue is kept normalized to `[0, modulus)`. Expressions such as
//! `(l - k/2) mod n` are evaluated in `i128` and reduced once, so negative
//! intermediates never leak out.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer reduced modulo `modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    /// Reduces `value` into `[0, modulus)`. Negative values wrap around.
    pub fn new(value: i64, modulus: u64) -> Result<Self> {
        Self::from_wide(value as i128, modulus)
    }

    pub(crate) fn from_wide(value: i128, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidModulus(modulus));
        }
        Ok(Self {
            value: reduce(value, modulus),
            modulus,
        })
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn same_modulus(self, other: Self) -> u64 {
        assert_eq!(
            self.modulus, other.modulus,
            "residue arithmetic across different moduli"
        );
        self.modulus
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Add for Residue {
    type Output = Residue;

    fn add(self, rhs: Self) -> Self {
        let m = self.same_modulus(rhs);
        Self {
            value: reduce(self.value as i128 + rhs.value as i128, m),
            modulus: m,
        }
    }
}

impl Sub for Residue {
    type Output = Residue;

    fn sub(self, rhs: Self) -> Self {
        let m = self.same_modulus(rhs);
        Self {
            value: reduce(self.value as i128 - rhs.value as i128, m),
            modulus: m,
        }
    }
}

impl Mul for Residue {
    type Output = Residue;

    fn mul(self, rhs: Self) -> Self {
        let m = self.same_modulus(rhs);
        Self {
            value: reduce(self.value as i128 * rhs.value as i128, m),
            modulus: m,
        }
    }
}

impl Neg for Residue {
    type Output = Residue;

    fn neg(self) -> Self {
        Self {
            value: reduce(-(self.value as i128), self.modulus),
            modulus: self.modulus,
        }
    }
}

/// Least non-negative representative of `x` modulo `m` (`m > 0`).
pub(crate) fn reduce(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

/// Greatest common divisor of `|a|` and `|b|`, with `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> u64 {
    gcd_u64(a.unsigned_abs(), b.unsigned_abs())
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Euler's totient, computed from the trial-division factorization of `n`.
pub fn totient(n: u64) -> Result<u64> {
    if n < 1 {
        return Err(Error::InvalidModulus(n));
    }
    let mut rest = n;
    let mut phi = n;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if rest > 1 {
        phi -= phi / rest;
    }
    Ok(phi)
}

/// Returns `x` with `r * x ≡ 1 (mod n)`.
pub fn mod_inverse(r: i64, n: u64) -> Result<Residue> {
    if n < 2 {
        return Err(Error::InvalidModulus(n));
    }
    // Extended Euclid on (r mod n, n); coefficients stay bounded by n.
    let (mut old_r, mut cur_r) = (reduce(r as i128, n) as i128, n as i128);
    let (mut old_s, mut cur_s) = (1i128, 0i128);
    while cur_r != 0 {
        let q = old_r / cur_r;
        (old_r, cur_r) = (cur_r, old_r - q * cur_r);
        (old_s, cur_s) = (cur_s, old_s - q * cur_s);
    }
    if old_r != 1 {
        return Err(Error::NoInverse {
            value: r,
            modulus: n,
            gcd: old_r as u64,
        });
    }
    Residue::from_wide(old_s, n)
}

/// `k / 2 mod n` for odd `n`: the unique `v` with `2v ≡ k (mod n)`.
pub fn half_mod(k: Residue) -> Result<Residue> {
    let n = k.modulus();
    if n % 2 == 0 {
        return Err(Error::EvenOrder(n as usize));
    }
    // 2^{-1} = (n + 1) / 2 for odd n.
    let v = k.value();
    let half = if v % 2 == 0 { v / 2 } else { (v + n) / 2 };
    Ok(Residue { value: half, modulus: n })
}

/// The unique `p` in `[0, s*t)` with `p ≡ k (mod s)` and `p ≡ l (mod t)`.
pub fn crt_combine(k: Residue, l: Residue) -> Result<Residue> {
    let (s, t) = (k.modulus(), l.modulus());
    let g = gcd_u64(s, t);
    if g != 1 {
        return Err(Error::NotCoprime { s, t, gcd: g });
    }
    let n = s.checked_mul(t).ok_or(Error::InvalidModulus(s))?;
    if t == 1 {
        return Residue::from_wide(k.value() as i128, n);
    }
    if s == 1 {
        return Residue::from_wide(l.value() as i128, n);
    }
    // p = k + s * ((l - k) * s^{-1} mod t)
    let s_inv = mod_inverse(reduce(s as i128, t) as i64, t)?.value() as i128;
    let lift = reduce((l.value() as i128 - k.value() as i128) * s_inv, t) as i128;
    Residue::from_wide(k.value() as i128 + s as i128 * lift, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64, m: u64) -> Residue {
        Residue::new(v, m).unwrap()
    }

    fn totient_by_count(n: u64) -> u64 {
        (1..=n).filter(|&a| gcd_u64(a, n) == 1).count() as u64
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(3, 9), 3);
        assert_eq!(gcd(0, 7), 7);
        assert_eq!(gcd(4, 15), 1);
        assert_eq!(gcd(0, 0), 0);
        assert_eq!(gcd(-12, 18), 6);
    }

    #[test]
    fn totient_examples() {
        assert_eq!(totient(1).unwrap(), 1);
        assert_eq!(totient(5).unwrap(), 4);
        assert_eq!(totient(15).unwrap(), 8);
        assert_eq!(totient(0), Err(Error::InvalidModulus(0)));
    }

    #[test]
    fn totient_matches_counting() {
        for n in 1..=500 {
            assert_eq!(totient(n).unwrap(), totient_by_count(n), "n = {n}");
        }
    }

    #[test]
    fn totient_is_multiplicative() {
        for s in 1..=100u64 {
            for t in 1..=100u64 {
                if gcd_u64(s, t) == 1 {
                    assert_eq!(
                        totient(s * t).unwrap(),
                        totient(s).unwrap() * totient(t).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(2, 9).unwrap().value(), 5);
        assert_eq!(mod_inverse(1, 7).unwrap().value(), 1);
        assert!(matches!(
            mod_inverse(2, 6),
            Err(Error::NoInverse { gcd: 2, .. })
        ));
        assert_eq!(mod_inverse(-1, 7).unwrap().value(), 6);
        assert_eq!(mod_inverse(1, 1), Err(Error::InvalidModulus(1)));
    }

    #[test]
    fn half_examples() {
        assert_eq!(half_mod(r(0, 5)).unwrap().value(), 0);
        assert_eq!(half_mod(r(3, 9)).unwrap().value(), 6);
        assert_eq!(half_mod(r(1, 5)).unwrap().value(), 3);
        assert_eq!(half_mod(r(1, 6)), Err(Error::EvenOrder(6)));
    }

    #[test]
    fn half_agrees_with_inverse_of_two() {
        for n in (3..200u64).step_by(2) {
            let inv2 = mod_inverse(2, n).unwrap();
            for k in 0..n {
                let k = r(k as i64, n);
                assert_eq!(half_mod(k).unwrap(), k * inv2);
            }
        }
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt_combine(r(1, 3), r(2, 5)).unwrap(), r(7, 15));
        assert_eq!(crt_combine(r(0, 3), r(0, 5)).unwrap(), r(0, 15));
        assert!(matches!(
            crt_combine(r(2, 3), r(2, 6)),
            Err(Error::NotCoprime { gcd: 3, .. })
        ));
    }

    #[test]
    fn crt_is_a_bijection() {
        for s in 1..=25u64 {
            for t in 1..=25u64 {
                if gcd_u64(s, t) != 1 {
                    continue;
                }
                let mut seen = vec![false; (s * t) as usize];
                for k in 0..s {
                    for l in 0..t {
                        let p = crt_combine(r(k as i64, s), r(l as i64, t)).unwrap();
                        assert_eq!(p.modulus(), s * t);
                        assert_eq!(p.value() % s, k);
                        assert_eq!(p.value() % t, l);
                        assert!(!seen[p.value() as usize]);
                        seen[p.value() as usize] = true;
                    }
                }
                assert!(seen.iter().all(|&b| b));
            }
        }
    }

    #[test]
    fn residue_arithmetic_renormalizes() {
        assert_eq!(r(-1, 5).value(), 4);
        assert_eq!((r(1, 5) - r(3, 5)).value(), 3);
        assert_eq!((-r(2, 7)).value(), 5);
        assert_eq!((r(4, 7) * r(5, 7)).value(), 6);
        assert_eq!((r(4, 7) + r(5, 7)).value(), 2);
        assert_eq!(Residue::new(3, 0), Err(Error::InvalidModulus(0)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn doubling_the_half_recovers_k(half_n in 1u64..5_000, k in any::<i64>()) {
                let n = 2 * half_n + 1;
                let k = Residue::new(k, n).unwrap();
                let h = half_mod(k).unwrap();
                prop_assert_eq!((2 * h.value()) % n, k.value());
            }

            #[test]
            fn inverse_multiplies_to_one(n in 2u64..100_000, r in any::<i64>()) {
                match mod_inverse(r, n) {
                    Ok(x) => prop_assert_eq!(reduce(r as i128 * x.value() as i128, n), 1),
                    Err(_) => prop_assert!(gcd(r, n as i64) != 1),
                }
            }
        }
    }
}
