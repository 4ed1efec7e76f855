//! Brauer-character oracle for reductions mod p.
//!
//! Fix a generator `g` of `F_{p^2}^x` and let `zeta` be its Teichmüller lift,
//! a primitive `(p^2 - 1)`-th root of unity. Every p-regular element of
//! `GL2(F_p)` has eigenvalues `g^x, g^y`; the ordinary character of a
//! characteristic-zero representation and the Brauer character of each
//! `sigma_{m,n}` are then sums of powers of `zeta`. Two semisimple mod-p
//! representations agree iff their Brauer characters agree on all p-regular
//! classes, so comparing the ordinary character of `rep` with the sum of the
//! claimed Brauer characters decides the Jordan-Hölder multiset exactly.
//!
//! This module uses the character table of `GL2(F_p)` only; it never calls
//! [`crate::gl2reps::reduce`].

use std::fmt;

use serde::Serialize;

use crate::arith::Prime;
use crate::cyclotomic::{CyclotomicRing, GroupRingElt};
use crate::error::{Error, Result};
use crate::gl2reps::{CharZeroRep, JhMultiset, SerreWeight};

/// A p-regular conjugacy class, in exponents of the generator `g` of `F_{p^2}^x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PRegularClass {
    /// `a I` with `a = g^((p+1)s)`.
    Central { s: u32 },
    /// `diag(a, b)` with `a = g^((p+1)s)`, `b = g^((p+1)u)`, `s < u`.
    Split { s: u32, u: u32 },
    /// Eigenvalues `{g^t, g^(pt)}` outside `F_p`; `t` is the smaller of the two.
    Elliptic { t: u32 },
}

impl PRegularClass {
    /// Exponents of the two eigenvalues.
    fn eigen_exponents(self, p: Prime) -> (i64, i64) {
        let q = i64::from(p.get()) + 1;
        match self {
            PRegularClass::Central { s } => (q * i64::from(s), q * i64::from(s)),
            PRegularClass::Split { s, u } => (q * i64::from(s), q * i64::from(u)),
            PRegularClass::Elliptic { t } => (i64::from(t), i64::from(p.get()) * i64::from(t)),
        }
    }
}

impl fmt::Display for PRegularClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PRegularClass::Central { s } => write!(f, "central(s={s})"),
            PRegularClass::Split { s, u } => write!(f, "split(s={s},u={u})"),
            PRegularClass::Elliptic { t } => write!(f, "elliptic(t={t})"),
        }
    }
}

/// All p-regular classes: `(p-1)` central, `(p-1)(p-2)/2` split, `(p^2-p)/2` elliptic.
pub fn p_regular_classes(p: Prime) -> Vec<PRegularClass> {
    let mut out: Vec<PRegularClass> = (0..p.n1()).map(|s| PRegularClass::Central { s }).collect();
    for s in 0..p.n1() {
        for u in (s + 1)..p.n1() {
            out.push(PRegularClass::Split { s, u });
        }
    }
    let n2 = u64::from(p.n2());
    for t in 0..p.n2() {
        let conj = (u64::from(t) * u64::from(p.get()) % n2) as u32;
        if t % (p.get() + 1) != 0 && t < conj {
            out.push(PRegularClass::Elliptic { t });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum VerificationReport {
    Verified { classes: usize },
    FailedAtClass { class: PRegularClass },
}

impl VerificationReport {
    pub fn is_verified(&self) -> bool {
        matches!(self, VerificationReport::Verified { .. })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// Largest `phi(p^2 - 1)` the oracle will attempt.
    pub max_degree: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        // p = 31 gives phi(960) = 256
        OracleConfig { max_degree: 512 }
    }
}

/// Reusable oracle for one prime.
pub struct BrauerOracle {
    p: Prime,
    ring: CyclotomicRing,
    classes: Vec<PRegularClass>,
}

impl BrauerOracle {
    pub fn new(p: Prime, config: OracleConfig) -> Result<Self> {
        let ring = CyclotomicRing::new(p.n2() as usize);
        if ring.degree() > config.max_degree {
            return Err(Error::UnsupportedPrime {
                p: p.get(),
                degree: ring.degree(),
                bound: config.max_degree,
            });
        }
        Ok(BrauerOracle {
            p,
            ring,
            classes: p_regular_classes(p),
        })
    }

    pub fn classes(&self) -> &[PRegularClass] {
        &self.classes
    }

    /// Ordinary character of `rep` at `class`.
    pub fn ordinary_character(&self, rep: &CharZeroRep, class: PRegularClass) -> GroupRingElt {
        let p = i64::from(self.p.get());
        let q = p + 1;
        let mut v = self.ring.zero();
        match (*rep, class) {
            (CharZeroRep::DetChar(m), _) => {
                let (x, y) = class.eigen_exponents(self.p);
                v.add_root((x + y) * m.as_i64(), 1);
            }
            (CharZeroRep::SpecialTwist(m), c) => {
                let (x, y) = c.eigen_exponents(self.p);
                let coeff = match c {
                    PRegularClass::Central { .. } => p,
                    PRegularClass::Split { .. } => 1,
                    PRegularClass::Elliptic { .. } => -1,
                };
                v.add_root((x + y) * m.as_i64(), coeff);
            }
            (CharZeroRep::PrincipalSeries(pair), c) => {
                let (m1, m2) = (pair.first().as_i64(), pair.second().as_i64());
                match c {
                    PRegularClass::Central { s } => {
                        v.add_root(q * i64::from(s) * (m1 + m2), q);
                    }
                    PRegularClass::Split { s, u } => {
                        let (s, u) = (i64::from(s), i64::from(u));
                        v.add_root(q * (s * m1 + u * m2), 1);
                        v.add_root(q * (u * m1 + s * m2), 1);
                    }
                    PRegularClass::Elliptic { .. } => {}
                }
            }
            (CharZeroRep::Cuspidal(k), c) => {
                let k = k.rep().as_i64();
                match c {
                    PRegularClass::Central { s } => v.add_root(q * i64::from(s) * k, p - 1),
                    PRegularClass::Split { .. } => {}
                    PRegularClass::Elliptic { t } => {
                        let t = i64::from(t);
                        v.add_root(t * k, -1);
                        v.add_root(p * t * k, -1);
                    }
                }
            }
        }
        v
    }

    /// Brauer character of `det^m Sym^n` at `class`: `(xy)^m sum_i x^(n-i) y^i`
    /// on Teichmüller-lifted eigenvalues.
    pub fn brauer_character(&self, w: SerreWeight, class: PRegularClass) -> GroupRingElt {
        let (x, y) = class.eigen_exponents(self.p);
        let m = i64::from(w.m());
        let n = i64::from(w.n());
        let mut v = self.ring.zero();
        for i in 0..=n {
            v.add_root((x + y) * m + (n - i) * x + i * y, 1);
        }
        v
    }

    pub fn verify(&self, rep: &CharZeroRep, claimed: &JhMultiset) -> Result<VerificationReport> {
        for &class in &self.classes {
            let lhs = self.ordinary_character(rep, class);
            let mut rhs = self.ring.zero();
            for (w, mult) in claimed.iter() {
                let chi = self.brauer_character(w, class);
                for (e, &c) in chi.coefficients().iter().enumerate() {
                    rhs.add_root(e as i64, c * i64::from(mult));
                }
            }
            if !self.ring.equal(&lhs, &rhs)? {
                return Ok(VerificationReport::FailedAtClass { class });
            }
        }
        Ok(VerificationReport::Verified {
            classes: self.classes.len(),
        })
    }
}

/// One-shot form of [`BrauerOracle::verify`].
pub fn brauer_verify(
    p: Prime,
    rep: &CharZeroRep,
    claimed: &JhMultiset,
    config: OracleConfig,
) -> Result<VerificationReport> {
    BrauerOracle::new(p, config)?.verify(rep, claimed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl2reps::reduce;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn class_counts() {
        for q in [3u64, 5, 7, 11] {
            let q = p(q);
            let pp = q.get() as usize;
            let classes = p_regular_classes(q);
            // all classes minus the p - 1 non-semisimple ones
            assert_eq!(classes.len(), pp * pp - 1 - (pp - 1));
        }
    }

    #[test]
    fn spec_examples() {
        let p5 = p(5);
        let cfg = OracleConfig::default();
        let ps = CharZeroRep::principal_series(p5, 1, 0).unwrap();
        assert!(brauer_verify(p5, &ps, &reduce(p5, &ps), cfg).unwrap().is_verified());

        let triv = CharZeroRep::det_char(p5, 0);
        let claimed: JhMultiset = [SerreWeight::new(p5, 0, 0).unwrap()].into_iter().collect();
        assert!(brauer_verify(p5, &triv, &claimed, cfg).unwrap().is_verified());

        let wrong: JhMultiset = [SerreWeight::new(p5, 0, 0).unwrap(); 2].into_iter().collect();
        match brauer_verify(p5, &ps, &wrong, cfg).unwrap() {
            // already the identity element detects the dimension mismatch
            VerificationReport::FailedAtClass { class } => {
                assert_eq!(class, PRegularClass::Central { s: 0 })
            }
            other => panic!("wrong multiset accepted: {other:?}"),
        }
    }

    #[test]
    fn rejects_plausible_but_wrong_multisets() {
        // right dimension and central character, wrong factors
        let p7 = p(7);
        let oracle = BrauerOracle::new(p7, OracleConfig::default()).unwrap();
        let rep = CharZeroRep::cuspidal(p7, 2).unwrap();
        let fake: JhMultiset = [SerreWeight::new(p7, 1, 0).unwrap(), SerreWeight::new(p7, 5, 4).unwrap()]
            .into_iter()
            .collect();
        assert_eq!(fake.dim(), rep.dim(p7));
        for w in fake.weights() {
            assert_eq!(w.central_exponent(p7), rep.central_exponent(p7));
        }
        assert!(!oracle.verify(&rep, &fake).unwrap().is_verified());
    }

    #[test]
    fn degree_bound() {
        let cfg = OracleConfig { max_degree: 16 };
        assert!(matches!(
            BrauerOracle::new(p(11), cfg),
            Err(Error::UnsupportedPrime { degree: 32, .. })
        ));
    }

    #[test]
    fn oracle_agrees_with_reduction_p5_p7() {
        for q in [5u64, 7] {
            let q = p(q);
            let oracle = BrauerOracle::new(q, OracleConfig::default()).unwrap();
            for rep in CharZeroRep::enumerate(q) {
                let report = oracle.verify(&rep, &reduce(q, &rep)).unwrap();
                assert!(report.is_verified(), "{rep}: {report:?}");
            }
        }
    }
}
