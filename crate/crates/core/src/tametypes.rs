//! Tame inertial types for `GL2(Q_p)` and the inertial Langlands assignment
//! `tau -> sigma(tau)`.

use std::fmt;

use crate::arith::{FrobeniusOrbit, Niv1Exp, Prime, UnorderedPair};
use crate::error::{Error, Result};
use crate::gl2reps::{reduce, CharZeroRep, JhMultiset};

/// A tame inertial type.
///
/// Variants are ordered scalar < principal series < cuspidal, which is the
/// canonical listing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TameType {
    /// `teich(omega)^m (+) teich(omega)^m`.
    Scalar(Niv1Exp),
    /// `teich(omega)^m1 (+) teich(omega)^m2` with `m1 != m2`, unordered.
    Principal(UnorderedPair),
    /// `chi (+) chi^p` for `chi = teich(omega_2)^k`, `k` up to `k ~ pk`.
    Cuspidal(FrobeniusOrbit),
}

impl TameType {
    pub fn scalar(p: Prime, m: i64) -> Self {
        TameType::Scalar(p.niv1(m))
    }

    pub fn principal(p: Prime, m1: i64, m2: i64) -> Result<Self> {
        let (a, b) = (p.niv1(m1), p.niv1(m2));
        if a == b {
            return Err(Error::EqualCharacters(a.value()));
        }
        Ok(TameType::Principal(UnorderedPair::new(a, b)))
    }

    /// `teich^m1 (+) teich^m2`, falling back to the scalar type when `m1 = m2`.
    pub fn pair(p: Prime, m1: i64, m2: i64) -> Self {
        TameType::principal(p, m1, m2).unwrap_or_else(|_| TameType::scalar(p, m1))
    }

    pub fn cuspidal(p: Prime, k: i64) -> Result<Self> {
        Ok(TameType::Cuspidal(FrobeniusOrbit::new(p, k)?))
    }

    /// Exponent of `det tau` restricted to inertia, as a power of `omega`.
    pub fn det_exponent(&self, p: Prime) -> Niv1Exp {
        match self {
            TameType::Scalar(m) => p.niv1(2 * m.as_i64()),
            TameType::Principal(pair) => p.niv1(pair.first().as_i64() + pair.second().as_i64()),
            // chi^(1+p) = omega_2^((p+1)k) = omega^k
            TameType::Cuspidal(k) => p.niv1(k.rep().as_i64()),
        }
    }
}

impl fmt::Display for TameType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TameType::Scalar(m) => write!(f, "Scalar({m})"),
            TameType::Principal(pair) => write!(f, "PS({},{})", pair.first(), pair.second()),
            TameType::Cuspidal(k) => write!(f, "Cusp({})", k.rep()),
        }
    }
}

/// `sigma(tau)`: `I(chi1, chi2)`, `chi o det`, or `Theta(chi)`.
pub fn sigma_of_type(tau: &TameType) -> CharZeroRep {
    match *tau {
        TameType::Scalar(m) => CharZeroRep::DetChar(m),
        TameType::Principal(pair) => CharZeroRep::PrincipalSeries(pair),
        TameType::Cuspidal(k) => CharZeroRep::Cuspidal(k),
    }
}

/// Jordan-Hölder factors of `sigma(tau) (x) F_p-bar`.
pub fn jh_of_type(p: Prime, tau: &TameType) -> JhMultiset {
    reduce(p, &sigma_of_type(tau))
}

/// Every tame type once, in canonical order.
pub fn enumerate_types(p: Prime) -> Vec<TameType> {
    let n1 = i64::from(p.n1());
    let mut out: Vec<TameType> = (0..n1).map(|m| TameType::scalar(p, m)).collect();
    for a in 0..n1 {
        for b in (a + 1)..n1 {
            out.push(TameType::principal(p, a, b).expect("distinct"));
        }
    }
    out.extend(crate::gl2reps::cuspidal_exponents(p).map(TameType::Cuspidal));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl2reps::SerreWeight;
    use std::collections::{BTreeMap, BTreeSet};

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn ws(p: Prime, list: &[(i64, i64)]) -> JhMultiset {
        list.iter().map(|&(m, n)| SerreWeight::new(p, m, n).unwrap()).collect()
    }

    #[test]
    fn sigma_examples() {
        let p7 = p(7);
        let p5 = p(5);
        assert_eq!(
            sigma_of_type(&TameType::principal(p7, 3, 1).unwrap()),
            CharZeroRep::principal_series(p7, 3, 1).unwrap()
        );
        assert_eq!(sigma_of_type(&TameType::scalar(p5, 2)), CharZeroRep::det_char(p5, 2));
        assert_eq!(
            sigma_of_type(&TameType::cuspidal(p7, 9).unwrap()),
            CharZeroRep::cuspidal(p7, 9).unwrap()
        );
    }

    #[test]
    fn jh_examples() {
        let p5 = p(5);
        let p7 = p(7);
        assert_eq!(
            jh_of_type(p5, &TameType::principal(p5, 1, 0).unwrap()),
            ws(p5, &[(0, 1), (1, 3)])
        );
        assert_eq!(jh_of_type(p7, &TameType::cuspidal(p7, 9).unwrap()), ws(p7, &[(2, 5)]));
        assert_eq!(jh_of_type(p7, &TameType::scalar(p7, 4)), ws(p7, &[(4, 0)]));
    }

    #[test]
    fn enumeration_counts() {
        for (q, total) in [(3u64, 6usize), (5, 20), (7, 42), (11, 110)] {
            let q = p(q);
            let types = enumerate_types(q);
            assert_eq!(types.len(), total);
            let distinct: BTreeSet<_> = types.iter().collect();
            assert_eq!(distinct.len(), total);
            let mut sorted = types.clone();
            sorted.sort();
            assert_eq!(sorted, types);
        }
    }

    #[test]
    fn det_matches_central_character() {
        for q in [5u64, 7, 11] {
            let q = p(q);
            for tau in enumerate_types(q) {
                assert_eq!(tau.det_exponent(q), sigma_of_type(&tau).central_exponent(q));
            }
        }
    }

    /// How often each weight occurs among the principal-series and the
    /// cuspidal types (frozen from an exhaustive run).
    #[test]
    fn weight_occurrence_census() {
        for q in [5u64, 7] {
            let q = p(q);
            let mut ps: BTreeMap<SerreWeight, u32> = BTreeMap::new();
            let mut cusp: BTreeMap<SerreWeight, u32> = BTreeMap::new();
            for tau in enumerate_types(q) {
                let target = match tau {
                    TameType::Principal(_) => &mut ps,
                    TameType::Cuspidal(_) => &mut cusp,
                    TameType::Scalar(_) => continue,
                };
                for w in jh_of_type(q, &tau).weights() {
                    *target.entry(w).or_default() += 1;
                }
            }
            for w in SerreWeight::all(q) {
                let in_ps = (1..q.n1()).contains(&w.n());
                assert_eq!(ps.get(&w).copied().unwrap_or(0), u32::from(in_ps), "{w}");
                let in_cusp = w.n() < q.n1();
                assert_eq!(cusp.get(&w).copied().unwrap_or(0), u32::from(in_cusp), "{w}");
            }
        }
    }
}
