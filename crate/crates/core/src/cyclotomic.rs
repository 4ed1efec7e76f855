//! Exact arithmetic in `Z[zeta_n]`.
//!
//! Elements are kept in the group ring `Z[x]/(x^n - 1)` (one integer per
//! power of `zeta_n`), which makes sums of roots of unity trivial to build.
//! Equality in the cyclotomic field is decided by reducing modulo the
//! cyclotomic polynomial `Phi_n`.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// `Z[x]/(x^n - 1)`, projected to `Z[zeta_n]` when testing for zero.
#[derive(Debug, Clone)]
pub struct CyclotomicRing {
    order: usize,
    /// `Phi_n`, lowest degree first, monic.
    phi: Vec<i128>,
}

/// An element of the group ring, indexed by exponent of `zeta_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElt(Vec<i64>);

impl GroupRingElt {
    /// `c * zeta^e`, accumulated in place.
    pub fn add_root(&mut self, e: i64, c: i64) {
        let n = self.0.len() as i64;
        self.0[e.rem_euclid(n) as usize] += c;
    }

    pub fn sub_assign(&mut self, other: &GroupRingElt) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a -= b;
        }
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }
}

impl CyclotomicRing {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1);
        let mut memo = HashMap::new();
        let phi = cyclotomic_poly(order, &mut memo);
        CyclotomicRing { order, phi }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `[Q(zeta_n) : Q] = phi(n)`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn zero(&self) -> GroupRingElt {
        GroupRingElt(vec![0; self.order])
    }

    pub fn root(&self, e: i64, c: i64) -> GroupRingElt {
        let mut z = self.zero();
        z.add_root(e, c);
        z
    }

    /// Remainder of `x` modulo `Phi_n`, `degree()` coefficients.
    pub fn reduce(&self, x: &GroupRingElt) -> Result<Vec<i128>> {
        let d = self.degree();
        let mut rem: Vec<i128> = x.0.iter().map(|&c| i128::from(c)).collect();
        for top in (d..rem.len()).rev() {
            let c = rem[top];
            if c == 0 {
                continue;
            }
            let shift = top - d;
            for (k, &f) in self.phi.iter().enumerate() {
                let prod = c.checked_mul(f).ok_or_else(overflow)?;
                rem[shift + k] = rem[shift + k].checked_sub(prod).ok_or_else(overflow)?;
            }
        }
        rem.truncate(d);
        Ok(rem)
    }

    pub fn is_zero(&self, x: &GroupRingElt) -> Result<bool> {
        Ok(self.reduce(x)?.iter().all(|&c| c == 0))
    }

    pub fn equal(&self, a: &GroupRingElt, b: &GroupRingElt) -> Result<bool> {
        let mut diff = a.clone();
        diff.sub_assign(b);
        self.is_zero(&diff)
    }
}

fn overflow() -> Error {
    Error::Precondition("coefficient overflow in cyclotomic reduction".into())
}

/// `Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d`.
fn cyclotomic_poly(n: usize, memo: &mut HashMap<usize, Vec<i128>>) -> Vec<i128> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut num = vec![0i128; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_poly(d, memo);
            num = exact_div_monic(&num, &phi_d);
        }
    }
    memo.insert(n, num.clone());
    num
}

fn exact_div_monic(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quo = vec![0i128; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quo[k] = c;
        for (i, &f) in den.iter().enumerate() {
            rem[k + i] -= c * f;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quo
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(CyclotomicRing::new(1).phi, vec![-1, 1]);
        assert_eq!(CyclotomicRing::new(4).phi, vec![1, 0, 1]);
        assert_eq!(CyclotomicRing::new(6).phi, vec![1, -1, 1]);
        assert_eq!(CyclotomicRing::new(12).phi, vec![1, 0, -1, 0, 1]);
        assert_eq!(CyclotomicRing::new(24).degree(), 8);
        assert_eq!(CyclotomicRing::new(120).degree(), 32);
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        let ring = CyclotomicRing::new(24);
        let mut s = ring.zero();
        for e in 0..24 {
            s.add_root(e, 1);
        }
        assert!(ring.is_zero(&s).unwrap());
        // but a proper partial sum does not
        let mut t = ring.zero();
        for e in 0..5 {
            t.add_root(e, 1);
        }
        assert!(!ring.is_zero(&t).unwrap());
    }

    #[test]
    fn primitive_cube_roots_sum_to_minus_one() {
        let ring = CyclotomicRing::new(48);
        let mut s = ring.root(16, 1);
        s.add_root(32, 1);
        assert!(ring.equal(&s, &ring.root(0, -1)).unwrap());
        // zeta^{n/2} = -1
        assert!(ring.equal(&ring.root(24, 1), &ring.root(0, -1)).unwrap());
    }
}
