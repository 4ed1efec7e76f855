//! Irreducible representations of `GL2(F_p)` in characteristic zero, Serre
//! weights, and reduction mod p.
//!
//! The four families are `chi o det`, the twisted Steinberg `sp_chi`, the
//! principal series `I(chi1, chi2)` and the cuspidal `Theta(chi)`. Reduction
//! mod p is computed at the level of Jordan-Hölder multisets; these do not
//! depend on the choice of stable lattice (Brauer-Nesbitt), so no lattice is
//! carried around. [`crate::brauer`] checks every formula here against
//! Brauer characters.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{bracket, niveau2_decompose, FrobeniusOrbit, Niv1Exp, Prime, UnorderedPair};
use crate::error::{Error, Result};

/// The Serre weight `sigma_{m,n} = det^m (x) Sym^n` over `F_p-bar`, with
/// `0 <= m < p - 1` and `0 <= n <= p - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(u32, u32)", into = "(u32, u32)")]
pub struct SerreWeight {
    m: u32,
    n: u32,
}

impl From<(u32, u32)> for SerreWeight {
    fn from((m, n): (u32, u32)) -> Self {
        SerreWeight { m, n }
    }
}

impl From<SerreWeight> for (u32, u32) {
    fn from(w: SerreWeight) -> Self {
        (w.m, w.n)
    }
}

impl SerreWeight {
    /// `m` is reduced mod `p - 1`; `n` must lie in `[0, p - 1]`.
    pub fn new(p: Prime, m: i64, n: i64) -> Result<Self> {
        if !(0..=i64::from(p.n1())).contains(&n) {
            return Err(Error::DegreeOutOfRange { n, max: p.n1() });
        }
        Ok(SerreWeight {
            m: p.niv1(m).value(),
            n: n as u32,
        })
    }

    #[inline]
    pub fn m(self) -> u32 {
        self.m
    }

    #[inline]
    pub fn n(self) -> u32 {
        self.n
    }

    pub fn m_exp(self, p: Prime) -> Niv1Exp {
        p.niv1(i64::from(self.m))
    }

    pub fn dim(self) -> u32 {
        self.n + 1
    }

    /// Exponent of the central character `a -> a^(2m + n)`, mod `p - 1`.
    pub fn central_exponent(self, p: Prime) -> Niv1Exp {
        p.niv1(2 * i64::from(self.m) + i64::from(self.n))
    }

    /// `sigma_{m,n} (x) det^t = sigma_{m+t,n}`.
    pub fn twist(self, p: Prime, t: i64) -> SerreWeight {
        SerreWeight {
            m: p.niv1(i64::from(self.m) + t).value(),
            n: self.n,
        }
    }

    /// Checks the stored values against `p` (used after deserialisation).
    pub fn validate(self, p: Prime) -> Result<Self> {
        if self.m >= p.n1() || self.n > p.n1() {
            return Err(Error::InvalidRecord(format!(
                "sigma_({},{}) is not a weight for p = {}",
                self.m, self.n, p
            )));
        }
        Ok(self)
    }

    /// All `(p - 1) p` weights, sorted by `(m, n)`.
    pub fn all(p: Prime) -> Vec<SerreWeight> {
        (0..p.n1())
            .flat_map(|m| (0..=p.n1()).map(move |n| SerreWeight { m, n }))
            .collect()
    }
}

impl fmt::Display for SerreWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "σ_{{{},{}}}", self.m, self.n)
    }
}

/// An irreducible `Q_p-bar`-representation of `GL2(F_p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CharZeroRep {
    /// `chi o det` with `chi(a) = teich(a)^m`.
    DetChar(Niv1Exp),
    /// `sp (x) (chi o det)`.
    SpecialTwist(Niv1Exp),
    /// `I(chi1, chi2)`, `chi1 != chi2`; identified with `I(chi2, chi1)`.
    PrincipalSeries(UnorderedPair),
    /// `Theta(chi)` for `chi(c) = teich(c)^k` on `F_{p^2}^x`, `chi != chi^p`.
    Cuspidal(FrobeniusOrbit),
}

impl CharZeroRep {
    pub fn det_char(p: Prime, m: i64) -> Self {
        CharZeroRep::DetChar(p.niv1(m))
    }

    pub fn special_twist(p: Prime, m: i64) -> Self {
        CharZeroRep::SpecialTwist(p.niv1(m))
    }

    pub fn principal_series(p: Prime, m1: i64, m2: i64) -> Result<Self> {
        let (a, b) = (p.niv1(m1), p.niv1(m2));
        if a == b {
            return Err(Error::EqualCharacters(a.value()));
        }
        Ok(CharZeroRep::PrincipalSeries(UnorderedPair::new(a, b)))
    }

    pub fn cuspidal(p: Prime, k: i64) -> Result<Self> {
        Ok(CharZeroRep::Cuspidal(FrobeniusOrbit::new(p, k)?))
    }

    pub fn dim(&self, p: Prime) -> u32 {
        match self {
            CharZeroRep::DetChar(_) => 1,
            CharZeroRep::SpecialTwist(_) => p.get(),
            CharZeroRep::PrincipalSeries(_) => p.get() + 1,
            CharZeroRep::Cuspidal(_) => p.get() - 1,
        }
    }

    /// Exponent `e` of the central character `a -> teich(a)^e`.
    pub fn central_exponent(&self, p: Prime) -> Niv1Exp {
        match self {
            CharZeroRep::DetChar(m) | CharZeroRep::SpecialTwist(m) => p.niv1(2 * m.as_i64()),
            CharZeroRep::PrincipalSeries(pair) => {
                p.niv1(pair.first().as_i64() + pair.second().as_i64())
            }
            // a in F_p^x sits in F_{p^2}^x as an element whose exponent is a multiple of p+1
            CharZeroRep::Cuspidal(k) => p.niv1(k.rep().as_i64()),
        }
    }

    /// `rep (x) (teich^t o det)`.
    pub fn twist(&self, p: Prime, t: i64) -> CharZeroRep {
        match *self {
            CharZeroRep::DetChar(m) => CharZeroRep::DetChar(p.niv1(m.as_i64() + t)),
            CharZeroRep::SpecialTwist(m) => CharZeroRep::SpecialTwist(p.niv1(m.as_i64() + t)),
            CharZeroRep::PrincipalSeries(pair) => CharZeroRep::PrincipalSeries(UnorderedPair::new(
                p.niv1(pair.first().as_i64() + t),
                p.niv1(pair.second().as_i64() + t),
            )),
            CharZeroRep::Cuspidal(k) => CharZeroRep::Cuspidal(
                FrobeniusOrbit::new(p, k.rep().as_i64() + i64::from(p.get() + 1) * t)
                    .expect("twisting by a niveau-1 character keeps k off (p+1)Z"),
            ),
        }
    }

    /// All `p^2 - 1` isomorphism classes, in a fixed order.
    pub fn enumerate(p: Prime) -> Vec<CharZeroRep> {
        let n1 = i64::from(p.n1());
        let mut out = Vec::new();
        out.extend((0..n1).map(|m| CharZeroRep::det_char(p, m)));
        out.extend((0..n1).map(|m| CharZeroRep::special_twist(p, m)));
        for a in 0..n1 {
            for b in (a + 1)..n1 {
                out.push(CharZeroRep::principal_series(p, a, b).expect("distinct"));
            }
        }
        out.extend(cuspidal_exponents(p).map(CharZeroRep::Cuspidal));
        out
    }
}

/// Canonical representatives of the cuspidal exponents, one per Frobenius orbit.
pub(crate) fn cuspidal_exponents(p: Prime) -> impl Iterator<Item = FrobeniusOrbit> {
    (0..i64::from(p.n2())).filter_map(move |k| {
        let orbit = FrobeniusOrbit::new(p, k).ok()?;
        (orbit.canonical().as_i64() == k).then_some(orbit)
    })
}

impl fmt::Display for CharZeroRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharZeroRep::DetChar(m) => write!(f, "det^{m}"),
            CharZeroRep::SpecialTwist(m) => write!(f, "sp(x)det^{m}"),
            CharZeroRep::PrincipalSeries(pair) => {
                write!(f, "I({},{})", pair.first(), pair.second())
            }
            CharZeroRep::Cuspidal(k) => write!(f, "Theta({})", k.rep()),
        }
    }
}

/// A multiset of Serre weights.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct JhMultiset(BTreeMap<SerreWeight, u32>);

impl JhMultiset {
    pub fn new() -> Self {
        JhMultiset::default()
    }

    pub fn insert(&mut self, w: SerreWeight) {
        *self.0.entry(w).or_insert(0) += 1;
    }

    pub fn multiplicity(&self, w: SerreWeight) -> u32 {
        self.0.get(&w).copied().unwrap_or(0)
    }

    pub fn contains(&self, w: SerreWeight) -> bool {
        self.0.contains_key(&w)
    }

    /// Distinct weights in `(m, n)` order.
    pub fn weights(&self) -> impl Iterator<Item = SerreWeight> + '_ {
        self.0.keys().copied()
    }

    /// `(weight, multiplicity)` in `(m, n)` order.
    pub fn iter(&self) -> impl Iterator<Item = (SerreWeight, u32)> + '_ {
        self.0.iter().map(|(w, c)| (*w, *c))
    }

    pub fn len(&self) -> usize {
        self.0.values().map(|&c| c as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> u32 {
        self.iter().map(|(w, c)| w.dim() * c).sum()
    }

    pub fn twist(&self, p: Prime, t: i64) -> JhMultiset {
        self.iter()
            .flat_map(|(w, c)| std::iter::repeat_n(w.twist(p, t), c as usize))
            .collect()
    }
}

impl FromIterator<SerreWeight> for JhMultiset {
    fn from_iter<I: IntoIterator<Item = SerreWeight>>(iter: I) -> Self {
        let mut out = JhMultiset::new();
        for w in iter {
            out.insert(w);
        }
        out
    }
}

impl fmt::Display for JhMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for (w, c) in self.iter() {
            for _ in 0..c {
                if !first {
                    f.write_str(", ")?;
                }
                first = false;
                write!(f, "{w}")?;
            }
        }
        f.write_str("}")
    }
}

impl Serialize for JhMultiset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let flat: Vec<SerreWeight> = self
            .iter()
            .flat_map(|(w, c)| std::iter::repeat_n(w, c as usize))
            .collect();
        flat.serialize(s)
    }
}

impl<'de> Deserialize<'de> for JhMultiset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Vec::<SerreWeight>::deserialize(d)?.into_iter().collect())
    }
}

/// Jordan-Hölder factors of the reduction mod p of `rep`.
pub fn reduce(p: Prime, rep: &CharZeroRep) -> JhMultiset {
    let w = |m: i64, n: u32| SerreWeight::new(p, m, i64::from(n)).expect("n in range");
    match *rep {
        CharZeroRep::DetChar(m) => [w(m.as_i64(), 0)].into_iter().collect(),
        CharZeroRep::SpecialTwist(m) => [w(m.as_i64(), p.n1())].into_iter().collect(),
        CharZeroRep::PrincipalSeries(pair) => {
            principal_series_factors(p, pair.first(), pair.second()).into_iter().collect()
        }
        CharZeroRep::Cuspidal(k) => {
            let (i, j) = niveau2_decompose(p, k.rep()).expect("cuspidal exponent is not scalar");
            let j = j.as_i64();
            if i == 1 || i == p.get() {
                // both boundary cases reduce irreducibly
                [w(1 + j, p.get() - 2)].into_iter().collect()
            } else {
                [w(1 + j, i - 2), w(i64::from(i) + j, p.get() - 1 - i)]
                    .into_iter()
                    .collect()
            }
        }
    }
}

/// `{sigma_{m2,{m1-m2}}, sigma_{m1,{m2-m1}}}`, in the order given.
pub(crate) fn principal_series_factors(p: Prime, m1: Niv1Exp, m2: Niv1Exp) -> [SerreWeight; 2] {
    let (a, b) = (m1.as_i64(), m2.as_i64());
    let n12 = bracket(p, a - b).expect("principal series characters are distinct");
    let n21 = bracket(p, b - a).expect("principal series characters are distinct");
    [
        SerreWeight::new(p, b, i64::from(n12)).expect("n in range"),
        SerreWeight::new(p, a, i64::from(n21)).expect("n in range"),
    ]
}
