//! Exponent bookkeeping for tame characters.
//!
//! Characters of `F_p^x` and `F_{p^2}^x` (and the fundamental characters
//! `omega`, `omega_2` of tame inertia) are stored only through their
//! exponents: residues modulo `p - 1` (niveau 1) and `p^2 - 1` (niveau 2).
//! Characteristic-zero characters are understood as `a -> teich(a)^m`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// An odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p > u64::from(u16::MAX) || p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// `p - 1`, the order of `F_p^x`.
    #[inline]
    pub fn n1(self) -> u32 {
        self.0 - 1
    }

    /// `p^2 - 1`, the order of `F_{p^2}^x`.
    #[inline]
    pub fn n2(self) -> u32 {
        self.0 * self.0 - 1
    }

    pub fn require_at_least(self, min: u32) -> Result<()> {
        if self.0 < min {
            Err(Error::PrimeTooSmall { p: self.0, min })
        } else {
            Ok(())
        }
    }

    /// Niveau-1 exponent `m mod (p - 1)`.
    #[inline]
    pub fn niv1(self, m: i64) -> Niv1Exp {
        Niv1Exp(m.rem_euclid(i64::from(self.n1())) as u32)
    }

    /// Niveau-2 exponent `m mod (p^2 - 1)`.
    #[inline]
    pub fn niv2(self, m: i64) -> Niv2Exp {
        Niv2Exp(m.rem_euclid(i64::from(self.n2())) as u32)
    }

    /// Reduce `x` into `[0, p)`.
    #[inline]
    pub fn fp(self, x: i64) -> u32 {
        x.rem_euclid(i64::from(self.0)) as u32
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Residue modulo `p - 1`, stored as its representative in `[0, p - 2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Niv1Exp(u32);

impl Niv1Exp {
    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_i64(self) -> i64 {
        i64::from(self.0)
    }
}

impl fmt::Display for Niv1Exp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Residue modulo `p^2 - 1`, stored as its representative in `[0, p^2 - 2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Niv2Exp(u32);

impl Niv2Exp {
    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_i64(self) -> i64 {
        i64::from(self.0)
    }

    /// `p * m`, the Frobenius conjugate exponent.
    pub fn frobenius(self, p: Prime) -> Niv2Exp {
        p.niv2(i64::from(p.get()) * self.as_i64())
    }

    pub fn divisible_by_p_plus_one(self, p: Prime) -> bool {
        self.0.is_multiple_of(p.get() + 1)
    }
}

impl fmt::Display for Niv2Exp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `{m}`: the representative of `m mod (p - 1)` strictly between `0` and `p - 1`.
pub fn bracket(p: Prime, m: i64) -> Result<u32> {
    match p.niv1(m).value() {
        0 => Err(Error::DegenerateBracket { m, modulus: p.n1() }),
        r => Ok(r),
    }
}

/// Total version of [`bracket`]: representative in `[1, p - 1]`, so `{0} = p - 1`.
pub fn bracket_ext(p: Prime, m: i64) -> u32 {
    match p.niv1(m).value() {
        0 => p.n1(),
        r => r,
    }
}

/// Writes `m = i + (p + 1) j` with `1 <= i <= p` and `j mod (p - 1)`.
pub fn niveau2_decompose(p: Prime, m: Niv2Exp) -> Result<(u32, Niv1Exp)> {
    let q = p.get() + 1;
    let i = m.value() % q;
    if i == 0 {
        return Err(Error::ScalarNiveau2 { m: m.value() });
    }
    let j = (m.value() - i) / q;
    Ok((i, p.niv1(i64::from(j))))
}

/// A niveau-2 exponent `k` up to the Frobenius identification `k ~ pk`,
/// with `(p + 1)` not dividing `k` (so `k` and `pk` really differ).
///
/// Keeps the representative it was built from for display; equality,
/// ordering and hashing go through the smaller of `k` and `pk`.
#[derive(Debug, Clone, Copy)]
pub struct FrobeniusOrbit {
    rep: Niv2Exp,
    canon: Niv2Exp,
}

impl FrobeniusOrbit {
    pub fn new(p: Prime, k: i64) -> Result<Self> {
        let rep = p.niv2(k);
        if rep.divisible_by_p_plus_one(p) {
            return Err(Error::ScalarNiveau2 { m: rep.value() });
        }
        let conj = rep.frobenius(p);
        Ok(FrobeniusOrbit {
            rep,
            canon: rep.min(conj),
        })
    }

    /// The exponent this orbit was constructed from.
    #[inline]
    pub fn rep(self) -> Niv2Exp {
        self.rep
    }

    #[inline]
    pub fn canonical(self) -> Niv2Exp {
        self.canon
    }

    /// Both members `{k, pk}`, canonical first.
    pub fn members(self, p: Prime) -> [Niv2Exp; 2] {
        [self.canon, self.canon.frobenius(p)]
    }

    pub fn contains(self, p: Prime, k: Niv2Exp) -> bool {
        self.members(p).contains(&k)
    }
}

impl PartialEq for FrobeniusOrbit {
    fn eq(&self, other: &Self) -> bool {
        self.canon == other.canon
    }
}
impl Eq for FrobeniusOrbit {}

impl Hash for FrobeniusOrbit {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canon.hash(state)
    }
}

impl PartialOrd for FrobeniusOrbit {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for FrobeniusOrbit {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canon.cmp(&other.canon)
    }
}

/// An unordered pair of niveau-1 exponents that remembers its input order.
#[derive(Debug, Clone, Copy)]
pub struct UnorderedPair {
    first: Niv1Exp,
    second: Niv1Exp,
}

impl UnorderedPair {
    pub fn new(first: Niv1Exp, second: Niv1Exp) -> Self {
        UnorderedPair { first, second }
    }

    #[inline]
    pub fn first(self) -> Niv1Exp {
        self.first
    }

    #[inline]
    pub fn second(self) -> Niv1Exp {
        self.second
    }

    fn key(self) -> (Niv1Exp, Niv1Exp) {
        if self.first <= self.second {
            (self.first, self.second)
        } else {
            (self.second, self.first)
        }
    }
}

impl PartialEq for UnorderedPair {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}
impl Eq for UnorderedPair {}

impl Hash for UnorderedPair {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl PartialOrd for UnorderedPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for UnorderedPair {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

pub(crate) fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % modulus;
        }
        b = b * b % modulus;
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero element of `F_p`.
pub(crate) fn inv_mod(a: u32, p: Prime) -> u32 {
    debug_assert!(!a.is_multiple_of(p.get()));
    pow_mod(u64::from(a), u64::from(p.get() - 2), u64::from(p.get())) as u32
}
