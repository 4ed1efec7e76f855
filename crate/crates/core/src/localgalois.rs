//! Local mod p data of `rhobar|G_{Q_p}` and the predicted weight set `W`.
//!
//! A local representation is recorded through its restriction to inertia
//! (a pair of `omega`-exponents, or a niveau-2 pair `omega_2^k (+) omega_2^{pk}`)
//! together with the flags that the lifting criteria consume: whether the
//! extension splits, whether it splits on inertia, the peu/très ramifiée
//! dichotomy for extensions of `1` by `omega`, and whether all endomorphisms
//! are scalar.

use std::collections::BTreeSet;
use std::fmt;

use crate::arith::{FrobeniusOrbit, Niv1Exp, Prime};
use crate::error::{Error, Result};
use crate::gl2reps::SerreWeight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ramification {
    Peu,
    Tres,
    NotApplicable,
}

/// A reducible `rhobar = (omega^sub * ; 0 omega^quo)` on inertia.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducibleRep {
    pub sub: Niv1Exp,
    pub quo: Niv1Exp,
    pub inertia_split: bool,
    pub ram: Ramification,
    pub split: bool,
    pub scalar_endos: bool,
    /// Unramified twist labels `(alpha, beta)` of a split `rhobar`.
    pub frob_scalars: Option<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LocalModPRep {
    /// `rhobar|I_p = omega_2^k (+) omega_2^{pk}`.
    Irreducible(FrobeniusOrbit),
    Reducible(ReducibleRep),
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidLocalRep(msg.into())
}

impl LocalModPRep {
    pub fn irreducible(p: Prime, k: i64) -> Result<Self> {
        p.require_at_least(5)?;
        Ok(LocalModPRep::Irreducible(FrobeniusOrbit::new(p, k)?))
    }

    /// `omega^a (+) omega^b`.
    pub fn split(p: Prime, a: i64, b: i64) -> Result<Self> {
        LocalModPRep::reducible(
            p,
            ReducibleRep {
                sub: p.niv1(a),
                quo: p.niv1(b),
                inertia_split: true,
                ram: Ramification::NotApplicable,
                split: true,
                scalar_endos: false,
                frob_scalars: None,
            },
        )
    }

    /// A non-split extension that stays non-split on inertia. `ram` must be
    /// `Peu` or `Tres` exactly when `sub - quo = 1 mod (p - 1)`.
    pub fn nonsplit(p: Prime, sub: i64, quo: i64, ram: Ramification) -> Result<Self> {
        let (sub, quo) = (p.niv1(sub), p.niv1(quo));
        LocalModPRep::reducible(
            p,
            ReducibleRep {
                sub,
                quo,
                inertia_split: false,
                ram,
                split: false,
                scalar_endos: sub != quo,
                frob_scalars: None,
            },
        )
    }

    /// A non-split unramified extension of `omega^m` by itself.
    pub fn unramified_extension(p: Prime, m: i64) -> Result<Self> {
        LocalModPRep::reducible(
            p,
            ReducibleRep {
                sub: p.niv1(m),
                quo: p.niv1(m),
                inertia_split: true,
                ram: Ramification::NotApplicable,
                split: false,
                scalar_endos: false,
                frob_scalars: None,
            },
        )
    }

    pub fn reducible(p: Prime, rep: ReducibleRep) -> Result<Self> {
        p.require_at_least(5)?;
        if rep.split && !rep.inertia_split {
            return Err(invalid("a split representation is split on inertia"));
        }
        if rep.inertia_split && !rep.split && rep.sub != rep.quo {
            return Err(invalid(
                "a non-split extension of distinct inertial characters stays non-split on inertia",
            ));
        }
        let ratio_is_omega = p.niv1(rep.sub.as_i64() - rep.quo.as_i64()).value() == 1;
        let needs_class = !rep.inertia_split && ratio_is_omega;
        match (needs_class, rep.ram) {
            (true, Ramification::NotApplicable) => {
                return Err(invalid("an inertially non-split extension of 1 by omega must be peu or très ramifiée"))
            }
            (false, Ramification::Peu | Ramification::Tres) => {
                return Err(invalid("peu/très ramifiée only applies to non-split extensions of 1 by omega"))
            }
            _ => {}
        }
        if rep.split && rep.scalar_endos {
            return Err(invalid("a split representation has non-scalar endomorphisms"));
        }
        if rep.frob_scalars.is_some() && !rep.split {
            return Err(invalid("Frobenius scalars are only recorded for split representations"));
        }
        Ok(LocalModPRep::Reducible(rep))
    }

    pub fn with_frob_scalars(self, alpha: &str, beta: &str) -> Result<Self> {
        match self {
            LocalModPRep::Reducible(mut r) if r.split => {
                r.frob_scalars = Some((alpha.to_owned(), beta.to_owned()));
                Ok(LocalModPRep::Reducible(r))
            }
            _ => Err(invalid("Frobenius scalars are only recorded for split representations")),
        }
    }

    pub fn with_scalar_endos(self, p: Prime, scalar_endos: bool) -> Result<Self> {
        match self {
            LocalModPRep::Reducible(mut r) => {
                r.scalar_endos = scalar_endos;
                LocalModPRep::reducible(p, r)
            }
            irred => Ok(irred),
        }
    }

    pub fn is_irreducible(&self) -> bool {
        matches!(self, LocalModPRep::Irreducible(_))
    }

    pub fn is_split(&self) -> bool {
        matches!(self, LocalModPRep::Reducible(r) if r.split)
    }

    /// Irreducible representations always have scalar endomorphisms.
    pub fn has_scalar_endos(&self) -> bool {
        match self {
            LocalModPRep::Irreducible(_) => true,
            LocalModPRep::Reducible(r) => r.scalar_endos,
        }
    }

    pub fn is_tres_ramifiee(&self) -> bool {
        matches!(self, LocalModPRep::Reducible(r) if r.ram == Ramification::Tres)
    }

    pub fn frob_scalars(&self) -> Option<&(String, String)> {
        match self {
            LocalModPRep::Reducible(r) => r.frob_scalars.as_ref(),
            LocalModPRep::Irreducible(_) => None,
        }
    }

    /// `rhobar (x) omega^t`.
    pub fn twist(&self, p: Prime, t: i64) -> LocalModPRep {
        match self {
            LocalModPRep::Irreducible(k) => LocalModPRep::Irreducible(
                FrobeniusOrbit::new(p, k.rep().as_i64() + i64::from(p.get() + 1) * t)
                    .expect("twisting keeps k off (p+1)Z"),
            ),
            LocalModPRep::Reducible(r) => LocalModPRep::Reducible(ReducibleRep {
                sub: p.niv1(r.sub.as_i64() + t),
                quo: p.niv1(r.quo.as_i64() + t),
                ..r.clone()
            }),
        }
    }
}

impl fmt::Display for LocalModPRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalModPRep::Irreducible(k) => write!(f, "Irred(k={})", k.rep()),
            LocalModPRep::Reducible(r) => {
                write!(f, "Red(sub={}, quo={}", r.sub, r.quo)?;
                if r.split {
                    f.write_str(", split")?;
                } else if r.inertia_split {
                    f.write_str(", unramified extension")?;
                } else {
                    f.write_str(", nonsplit")?;
                }
                match r.ram {
                    Ramification::Peu => f.write_str(", peu")?,
                    Ramification::Tres => f.write_str(", très")?,
                    Ramification::NotApplicable => {}
                }
                if let Some((a, b)) = &r.frob_scalars {
                    write!(f, ", frob=({a},{b})")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// A shape for `rhobar|I_p` appearing in the lifting criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InertiaShape {
    /// `(omega^a * ; 0 omega^b)`, possibly demanding peu ramifiée.
    Reducible {
        a: Niv1Exp,
        b: Niv1Exp,
        requires_peu: bool,
    },
    /// `omega_2^k (+) omega_2^{pk}`.
    Irreducible(FrobeniusOrbit),
}

impl InertiaShape {
    pub fn reducible(p: Prime, a: i64, b: i64, requires_peu: bool) -> Self {
        InertiaShape::Reducible {
            a: p.niv1(a),
            b: p.niv1(b),
            requires_peu,
        }
    }

    pub fn irreducible(p: Prime, k: i64) -> Result<Self> {
        Ok(InertiaShape::Irreducible(FrobeniusOrbit::new(p, k)?))
    }
}

impl fmt::Display for InertiaShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InertiaShape::Reducible { a, b, requires_peu } => {
                write!(f, "(ω^{a} *; 0 ω^{b})")?;
                if *requires_peu {
                    f.write_str("[peu]")?;
                }
                Ok(())
            }
            InertiaShape::Irreducible(k) => write!(f, "ω₂^{} ⊕ ω₂^p·{}", k.rep(), k.rep()),
        }
    }
}

/// Whether `rhobar|I_p` has the given shape. Inertially split
/// representations match either ordering; a peu requirement rejects très
/// ramifiée representations.
pub fn matches(rep: &LocalModPRep, shape: &InertiaShape) -> bool {
    match (rep, shape) {
        (LocalModPRep::Irreducible(k), InertiaShape::Irreducible(k2)) => k == k2,
        (LocalModPRep::Reducible(r), InertiaShape::Reducible { a, b, requires_peu }) => {
            let ordered = r.sub == *a && r.quo == *b;
            let swapped = r.inertia_split && r.sub == *b && r.quo == *a;
            (ordered || swapped) && !(*requires_peu && r.ram == Ramification::Tres)
        }
        _ => false,
    }
}

/// The shape that puts `sigma_{m,n}` in `W(rhobar)`, for either kind of `rhobar`.
pub fn weight_shape(p: Prime, irreducible: bool, w: SerreWeight) -> InertiaShape {
    let (m, n) = (i64::from(w.m()), i64::from(w.n()));
    if irreducible {
        InertiaShape::irreducible(p, (n + 1) + i64::from(p.get() + 1) * m)
            .expect("1 <= n + 1 <= p is never divisible by p + 1")
    } else {
        InertiaShape::reducible(p, n + 1 + m, m, false)
    }
}

/// Whether `sigma_{m,n}` belongs to `W(rhobar)`.
pub fn in_weight_set(p: Prime, rep: &LocalModPRep, w: SerreWeight) -> bool {
    if !matches(rep, &weight_shape(p, rep.is_irreducible(), w)) {
        return false;
    }
    !(w.n() == 0 && rep.is_tres_ramifiee())
}

/// `W(rhobar)`, sorted by `(m, n)`.
pub fn weight_set(p: Prime, rep: &LocalModPRep) -> BTreeSet<SerreWeight> {
    SerreWeight::all(p)
        .into_iter()
        .filter(|&w| in_weight_set(p, rep, w))
        .collect()
}

/// Weights `(x)_v sigma_v` for a global `rhobar`, one local factor per place above p,
/// in lexicographic order.
pub fn global_weight_set(p: Prime, reps: &[LocalModPRep]) -> Result<Vec<Vec<SerreWeight>>> {
    if reps.is_empty() {
        return Err(Error::EmptyPlaceList);
    }
    let mut out: Vec<Vec<SerreWeight>> = vec![Vec::new()];
    for rep in reps {
        let local = weight_set(p, rep);
        out = out
            .into_iter()
            .flat_map(|prefix| {
                local.iter().map(move |&w| {
                    let mut next = prefix.clone();
                    next.push(w);
                    next
                })
            })
            .collect();
    }
    Ok(out)
}

/// Every local shape the exhaustive drivers range over: all irreducible `k`
/// (one per Frobenius orbit), and for every `(sub, quo)` the split
/// representation, the inertially non-split extension (in both ramification
/// classes when the ratio is `omega`), and the unramified extension when
/// `sub = quo`.
pub fn enumerate_local_reps(p: Prime) -> Result<Vec<LocalModPRep>> {
    p.require_at_least(5)?;
    let mut out = Vec::new();
    for orbit in crate::gl2reps::cuspidal_exponents(p) {
        out.push(LocalModPRep::Irreducible(orbit));
    }
    let n1 = i64::from(p.n1());
    for sub in 0..n1 {
        for quo in 0..n1 {
            out.push(LocalModPRep::split(p, sub, quo)?);
            if p.niv1(sub - quo).value() == 1 {
                out.push(LocalModPRep::nonsplit(p, sub, quo, Ramification::Peu)?);
                out.push(LocalModPRep::nonsplit(p, sub, quo, Ramification::Tres)?);
            } else {
                out.push(LocalModPRep::nonsplit(p, sub, quo, Ramification::NotApplicable)?);
            }
            if sub == quo {
                out.push(LocalModPRep::unramified_extension(p, sub)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn ws(p: Prime, list: &[(i64, i64)]) -> BTreeSet<SerreWeight> {
        list.iter().map(|&(m, n)| SerreWeight::new(p, m, n).unwrap()).collect()
    }

    #[test]
    fn matching_examples() {
        let p5 = p(5);
        let irred = LocalModPRep::irreducible(p5, 2).unwrap();
        assert!(matches(&irred, &InertiaShape::irreducible(p5, 10).unwrap()));

        let tres = LocalModPRep::nonsplit(p5, 1, 0, Ramification::Tres).unwrap();
        assert!(!matches(&tres, &InertiaShape::reducible(p5, 1, 0, true)));
        assert!(matches(&tres, &InertiaShape::reducible(p5, 1, 0, false)));

        let split = LocalModPRep::split(p5, 2, 0).unwrap();
        assert!(matches(&split, &InertiaShape::reducible(p5, 0, 2, false)));

        let nonsplit = LocalModPRep::nonsplit(p5, 2, 0, Ramification::NotApplicable).unwrap();
        assert!(!matches(&nonsplit, &InertiaShape::reducible(p5, 0, 2, false)));
        // no cross-niveau matches
        assert!(!matches(&irred, &InertiaShape::reducible(p5, 1, 0, false)));
        assert!(!matches(&split, &InertiaShape::irreducible(p5, 2).unwrap()));
    }

    #[test]
    fn weight_set_examples() {
        let p5 = p(5);
        let rep = |r: Result<LocalModPRep>| r.unwrap();
        assert_eq!(
            weight_set(p5, &rep(LocalModPRep::irreducible(p5, 2))),
            ws(p5, &[(0, 1), (1, 3)])
        );
        assert_eq!(
            weight_set(p5, &rep(LocalModPRep::nonsplit(p5, 1, 0, Ramification::Tres))),
            ws(p5, &[(0, 4)])
        );
        assert_eq!(
            weight_set(p5, &rep(LocalModPRep::split(p5, 1, 0))),
            ws(p5, &[(0, 0), (0, 4), (1, 2)])
        );
        assert_eq!(
            weight_set(
                p5,
                &rep(LocalModPRep::nonsplit(p5, 2, 0, Ramification::NotApplicable))
            ),
            ws(p5, &[(0, 1)])
        );
        assert_eq!(
            weight_set(p5, &rep(LocalModPRep::nonsplit(p5, 1, 0, Ramification::Peu))),
            ws(p5, &[(0, 0), (0, 4)])
        );
    }

    #[test]
    fn global_products() {
        let p5 = p(5);
        let a = LocalModPRep::irreducible(p5, 2).unwrap();
        let b = LocalModPRep::split(p5, 1, 0).unwrap();
        assert_eq!(global_weight_set(p5, std::slice::from_ref(&a)).unwrap().len(), 2);
        let both = global_weight_set(p5, &[a, b]).unwrap();
        assert_eq!(both.len(), 6);
        assert!(both.iter().all(|w| w.len() == 2));
        assert_eq!(global_weight_set(p5, &[]), Err(Error::EmptyPlaceList));
    }

    #[test]
    fn constructor_invariants() {
        let p5 = p(5);
        assert!(LocalModPRep::irreducible(p5, 12).is_err());
        assert!(LocalModPRep::irreducible(p(3), 1).is_err());
        assert!(LocalModPRep::nonsplit(p5, 1, 0, Ramification::NotApplicable).is_err());
        assert!(LocalModPRep::nonsplit(p5, 2, 0, Ramification::Peu).is_err());
        assert!(LocalModPRep::split(p5, 1, 0)
            .unwrap()
            .with_scalar_endos(p5, true)
            .is_err());
        assert!(LocalModPRep::nonsplit(p5, 2, 0, Ramification::NotApplicable)
            .unwrap()
            .with_frob_scalars("a", "b")
            .is_err());
        let mut r = ReducibleRep {
            sub: p5.niv1(2),
            quo: p5.niv1(0),
            inertia_split: false,
            ram: Ramification::NotApplicable,
            split: true,
            scalar_endos: false,
            frob_scalars: None,
        };
        assert!(LocalModPRep::reducible(p5, r.clone()).is_err());
        r.split = false;
        r.inertia_split = true;
        assert!(LocalModPRep::reducible(p5, r).is_err());
    }

    /// Independent transcription of the definition of `W` on inertial data:
    /// irreducible `rhobar` needs `omega_2^{(n+1)+(p+1)m}` among its two
    /// exponents; reducible `rhobar` needs its inertial characters to be
    /// `omega^{n+1+m}` (sub) and `omega^m` (quotient), unordered if the
    /// inertia action is semisimple, and `n = 0` is dropped for très ramifiée.
    fn definition_oracle(p: Prime, rep: &LocalModPRep, w: SerreWeight) -> bool {
        let (m, n) = (i64::from(w.m()), i64::from(w.n()));
        match rep {
            LocalModPRep::Irreducible(k) => {
                let n2 = i64::from(p.n2());
                let target = ((n + 1) + i64::from(p.get() + 1) * m).rem_euclid(n2);
                let k = k.rep().as_i64();
                target == k || target == (k * i64::from(p.get())).rem_euclid(n2)
            }
            LocalModPRep::Reducible(r) => {
                let n1 = i64::from(p.n1());
                let top = (n + 1 + m).rem_euclid(n1);
                let bottom = m.rem_euclid(n1);
                let (sub, quo) = (r.sub.as_i64(), r.quo.as_i64());
                let shape_ok = if r.inertia_split {
                    let mut x = [sub, quo];
                    let mut y = [top, bottom];
                    x.sort();
                    y.sort();
                    x == y
                } else {
                    sub == top && quo == bottom
                };
                shape_ok && !(n == 0 && r.ram == Ramification::Tres)
            }
        }
    }

    #[test]
    fn weight_set_agrees_with_transcription() {
        for q in [5u64, 7, 11] {
            let q = p(q);
            for rep in enumerate_local_reps(q).unwrap() {
                for w in SerreWeight::all(q) {
                    assert_eq!(
                        in_weight_set(q, &rep, w),
                        definition_oracle(q, &rep, w),
                        "{rep} {w}"
                    );
                }
            }
        }
    }

    #[test]
    fn cardinalities() {
        for q in [5u64, 7] {
            let q = p(q);
            for rep in enumerate_local_reps(q).unwrap() {
                let size = weight_set(q, &rep).len();
                if rep.is_irreducible() {
                    assert_eq!(size, 2, "{rep}");
                }
                if rep.is_tres_ramifiee() {
                    assert_eq!(size, 1, "{rep}");
                }
            }
        }
    }

    #[test]
    fn twist_equivariance() {
        for q in [5u64, 7] {
            let q = p(q);
            for rep in enumerate_local_reps(q).unwrap() {
                let base = weight_set(q, &rep);
                for t in 0..i64::from(q.n1()) {
                    let expected: BTreeSet<_> = base.iter().map(|w| w.twist(q, t)).collect();
                    assert_eq!(weight_set(q, &rep.twist(q, t)), expected);
                }
            }
        }
    }

    #[test]
    fn enumeration_size() {
        // p = 5: 10 irreducible; 16 split; 12 + 2*4 inertially non-split; 4 unramified
        assert_eq!(enumerate_local_reps(p(5)).unwrap().len(), 50);
        assert!(enumerate_local_reps(p(3)).is_err());
    }
}
