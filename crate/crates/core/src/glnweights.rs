//! Weights for `GL_n` and a small search for reducible crystalline lifts.
//!
//! A weight `(a_1, .., a_n)` is predicted for `rhobar` when `rhobar|G_{Q_p}`
//! has a crystalline lift with Hodge-Tate weights `a_i + (n - i)`. The search
//! here only assembles direct sums of blocks from a fixed catalog: powers of
//! the cyclotomic character `eps^a`, and twists of two 2-dimensional
//! crystalline representations
//!
//! * `V`: Hodge-Tate weights `{0, p+3}`, reduction `omega (+) omega^3`,
//! * `W`: Hodge-Tate weights `{0, 2p-4}`, reduction `omega^{-3} (+) omega`.
//!
//! Failing to find a witness therefore says nothing about the weight.

use std::cmp::Reverse;
use std::fmt;

use serde::Serialize;

use crate::arith::{inv_mod, pow_mod, Prime};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GlnWeight(Vec<i64>);

impl GlnWeight {
    /// `a_1 >= .. >= a_n` with every step `a_i - a_{i+1}` in `[0, p-1]`.
    pub fn new(p: Prime, a: Vec<i64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Precondition("a weight needs at least one entry".into()));
        }
        for w in a.windows(2) {
            let step = w[0] - w[1];
            if !(0..=i64::from(p.n1())).contains(&step) {
                return Err(Error::Precondition(format!(
                    "{a:?} is not a weight for p = {p}: step {step} outside [0, {}]",
                    p.n1()
                )));
            }
        }
        Ok(GlnWeight(a))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Weights differing by a multiple of `(p-1, .., p-1)` give the same module.
    pub fn equivalent(&self, other: &GlnWeight, p: Prime) -> bool {
        if self.n() != other.n() {
            return false;
        }
        let d = other.0[0] - self.0[0];
        d % i64::from(p.n1()) == 0 && self.0.iter().zip(&other.0).all(|(a, b)| b - a == d)
    }
}

impl fmt::Display for GlnWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// `{a_i + (n - i)}`, largest first.
pub fn ht_targets(w: &GlnWeight) -> Vec<i64> {
    let n = w.n() as i64;
    let mut out: Vec<i64> = w.0.iter().enumerate().map(|(i, a)| a + n - 1 - i as i64).collect();
    out.sort_by_key(|&h| Reverse(h));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TwoDim {
    V,
    W,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "block", rename_all = "snake_case")]
pub enum CrystBlock {
    /// `eps^a`
    Char { a: i64 },
    /// `eps^twist (x) V` or `eps^twist (x) W`
    TwoDim { name: TwoDim, twist: i64 },
}

impl CrystBlock {
    pub fn dim(&self) -> usize {
        match self {
            CrystBlock::Char { .. } => 1,
            CrystBlock::TwoDim { .. } => 2,
        }
    }

    /// Hodge-Tate weights, smallest first.
    pub fn hodge_tate(&self, p: Prime) -> Vec<i64> {
        let p = i64::from(p.get());
        match *self {
            CrystBlock::Char { a } => vec![a],
            CrystBlock::TwoDim { name: TwoDim::V, twist } => vec![twist, twist + p + 3],
            CrystBlock::TwoDim { name: TwoDim::W, twist } => vec![twist, twist + 2 * p - 4],
        }
    }

    /// Exponents of `omega` in the semisimplified reduction, sorted.
    pub fn reduction(&self, p: Prime) -> Vec<u32> {
        let mut out: Vec<u32> = match *self {
            CrystBlock::Char { a } => vec![p.niv1(a).value()],
            CrystBlock::TwoDim { name: TwoDim::V, twist } => {
                vec![p.niv1(twist + 1).value(), p.niv1(twist + 3).value()]
            }
            CrystBlock::TwoDim { name: TwoDim::W, twist } => {
                vec![p.niv1(twist - 3).value(), p.niv1(twist + 1).value()]
            }
        };
        out.sort();
        out
    }

    pub fn twist(&self, t: i64) -> CrystBlock {
        match *self {
            CrystBlock::Char { a } => CrystBlock::Char { a: a + t },
            CrystBlock::TwoDim { name, twist } => CrystBlock::TwoDim { name, twist: twist + t },
        }
    }
}

fn eps_power(f: &mut fmt::Formatter<'_>, a: i64) -> fmt::Result {
    match a {
        0 => Ok(()),
        1 => f.write_str("ε"),
        _ => write!(f, "ε^{a}"),
    }
}

impl fmt::Display for CrystBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CrystBlock::Char { a: 0 } => f.write_str("1"),
            CrystBlock::Char { a } => eps_power(f, a),
            CrystBlock::TwoDim { name, twist } => {
                eps_power(f, twist)?;
                write!(f, "{name:?}")
            }
        }
    }
}

/// A direct sum of catalog blocks, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LiftWitness {
    blocks: Vec<CrystBlock>,
}

impl LiftWitness {
    pub fn new(mut blocks: Vec<CrystBlock>) -> Self {
        blocks.sort();
        LiftWitness { blocks }
    }

    pub fn blocks(&self) -> &[CrystBlock] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(CrystBlock::dim).sum()
    }

    /// Hodge-Tate weights, largest first.
    pub fn hodge_tate(&self, p: Prime) -> Vec<i64> {
        let mut out: Vec<i64> = self.blocks.iter().flat_map(|b| b.hodge_tate(p)).collect();
        out.sort_by_key(|&h| Reverse(h));
        out
    }

    pub fn reduction(&self, p: Prime) -> Vec<u32> {
        let mut out: Vec<u32> = self.blocks.iter().flat_map(|b| b.reduction(p)).collect();
        out.sort();
        out
    }

    pub fn twist(&self, t: i64) -> LiftWitness {
        LiftWitness::new(self.blocks.iter().map(|b| b.twist(t)).collect())
    }

    /// Per-block Hodge-Tate and reduction data, which is all the search can see.
    pub fn signature(&self, p: Prime) -> Vec<(Vec<i64>, Vec<u32>)> {
        let mut sig: Vec<_> = self.blocks.iter().map(|b| (b.hodge_tate(p), b.reduction(p))).collect();
        sig.sort();
        sig
    }

    fn preference(&self) -> (usize, usize, &[CrystBlock]) {
        let two = self.blocks.iter().filter(|b| b.dim() == 2).count();
        let w = self
            .blocks
            .iter()
            .filter(|b| matches!(b, CrystBlock::TwoDim { name: TwoDim::W, .. }))
            .count();
        (two, w, &self.blocks)
    }
}

impl fmt::Display for LiftWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // two-dimensional blocks first, then characters by decreasing exponent
        let mut shown = self.blocks.clone();
        shown.sort_by_key(|b| match *b {
            CrystBlock::TwoDim { twist, .. } => (0, Reverse(twist)),
            CrystBlock::Char { a } => (1, Reverse(a)),
        });
        for (i, b) in shown.iter().enumerate() {
            if i > 0 {
                f.write_str(" ⊕ ")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

fn remove_all(pool: &mut Vec<u32>, items: &[u32]) -> bool {
    let backup = pool.clone();
    for x in items {
        match pool.iter().position(|y| y == x) {
            Some(i) => {
                pool.swap_remove(i);
            }
            None => {
                *pool = backup;
                return false;
            }
        }
    }
    true
}

fn search(p: Prime, targets: &[i64], reductions: &[u32], chosen: &mut Vec<CrystBlock>, out: &mut Vec<LiftWitness>) {
    let Some(&h) = targets.first() else {
        if reductions.is_empty() {
            out.push(LiftWitness::new(chosen.clone()));
        }
        return;
    };
    let rest = &targets[1..];
    let pp = i64::from(p.get());
    // `h` is the largest remaining weight, hence the top weight of its block
    let mut candidates = vec![(CrystBlock::Char { a: h }, None)];
    for (name, gap) in [(TwoDim::V, pp + 3), (TwoDim::W, 2 * pp - 4)] {
        if let Some(i) = rest.iter().position(|&x| x == h - gap) {
            candidates.push((CrystBlock::TwoDim { name, twist: h - gap }, Some(i)));
        }
    }
    for (block, partner) in candidates {
        let mut pool = reductions.to_vec();
        if !remove_all(&mut pool, &block.reduction(p)) {
            continue;
        }
        let mut next: Vec<i64> = rest.to_vec();
        if let Some(i) = partner {
            next.remove(i);
        }
        chosen.push(block);
        search(p, &next, &pool, chosen, out);
        chosen.pop();
    }
}

fn check_search_input(p: Prime, targets: &[i64], reductions: &[i64]) -> Result<()> {
    p.require_at_least(5)?;
    if targets.len() != reductions.len() {
        return Err(Error::Precondition("need one reduction exponent per Hodge-Tate weight".into()));
    }
    if targets.is_empty() || targets.len() > 6 {
        return Err(Error::Precondition(format!("n = {} outside [1, 6]", targets.len())));
    }
    Ok(())
}

/// Every catalog witness with the given Hodge-Tate weights and reduction
/// exponents, most preferred first.
pub fn find_lifts(p: Prime, targets: &[i64], reductions: &[i64]) -> Result<Vec<LiftWitness>> {
    check_search_input(p, targets, reductions)?;
    let mut ts = targets.to_vec();
    ts.sort_by_key(|&h| Reverse(h));
    let rs: Vec<u32> = reductions.iter().map(|&r| p.niv1(r).value()).collect();
    let mut out = Vec::new();
    search(p, &ts, &rs, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.preference().cmp(&b.preference()));
    out.dedup();
    let mut expected_red = rs.clone();
    expected_red.sort();
    for w in &out {
        debug_assert_eq!(w.hodge_tate(p), ts);
        debug_assert_eq!(w.reduction(p), expected_red);
    }
    Ok(out)
}

/// The preferred witness: fewest 2-dimensional blocks, `V` before `W`.
pub fn find_lift(p: Prime, targets: &[i64], reductions: &[i64]) -> Result<Option<LiftWitness>> {
    Ok(find_lifts(p, targets, reductions)?.into_iter().next())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub weight: Vec<i64>,
    /// Whether the entries form a weight for this `p`.
    pub weight_valid: bool,
    pub targets: Vec<i64>,
    pub expected: LiftWitness,
    pub found: Option<LiftWitness>,
    /// The expected witness occurs among all catalog witnesses.
    pub expected_found: bool,
    /// `found` equals `expected` up to order of summands.
    pub exact: bool,
    /// `found` has the same per-block data as `expected` (differs from `exact`
    /// only when `V` and `W` coincide, at `p = 7`).
    pub same_signature: bool,
}

impl TableRow {
    pub fn passed(&self) -> bool {
        self.weight_valid && self.expected_found && self.same_signature
    }
}

/// Reductions of `1 (+) omega^2 (+) omega^4`.
pub const GL3_REDUCTIONS: [i64; 3] = [0, 2, 4];

/// The nine weights for `1 (+) omega^2 (+) omega^4` and their reducible lifts.
pub fn gl3_catalog(p: Prime) -> Vec<(Vec<i64>, LiftWitness)> {
    let p = i64::from(p.get());
    let ch = |a: i64| CrystBlock::Char { a };
    let v = |t: i64| CrystBlock::TwoDim { name: TwoDim::V, twist: t };
    let w = |t: i64| CrystBlock::TwoDim { name: TwoDim::W, twist: t };
    vec![
        (vec![2, 1, 0], vec![ch(4), ch(2), ch(0)]),
        (vec![p - 1, p - 2, 4], vec![ch(p + 1), ch(p - 1), ch(4)]),
        (vec![p - 3, 3, 2], vec![ch(p - 1), ch(4), ch(2)]),
        (vec![p - 1, 3, 0], vec![ch(p + 1), ch(4), ch(0)]),
        (vec![p + 1, p - 2, 2], vec![ch(p + 3), ch(p - 1), ch(2)]),
        (vec![2 * p - 4, p, 4], vec![ch(2 * p - 2), ch(p + 1), ch(4)]),
        (vec![p + 2, p - 2, 1], vec![v(1), ch(p - 1)]),
        (vec![2 * p - 3, p, 3], vec![w(3), ch(p + 1)]),
        (vec![2 * p - 1, p + 2, p - 2], vec![v(p - 2), ch(p + 3)]),
    ]
    .into_iter()
    .map(|(a, blocks)| (a, LiftWitness::new(blocks)))
    .collect()
}

/// Runs the search on each of the nine weights.
pub fn table_gl3(p: Prime) -> Result<Vec<TableRow>> {
    p.require_at_least(5)?;
    let mut rows = Vec::new();
    for (a, expected) in gl3_catalog(p) {
        let weight_valid = GlnWeight::new(p, a.clone()).is_ok();
        let n = a.len() as i64;
        let mut targets: Vec<i64> = a.iter().enumerate().map(|(i, x)| x + n - 1 - i as i64).collect();
        targets.sort_by_key(|&h| Reverse(h));
        let all = find_lifts(p, &targets, &GL3_REDUCTIONS)?;
        let found = all.first().cloned();
        let same_signature = found
            .as_ref()
            .is_some_and(|f| f.signature(p) == expected.signature(p));
        rows.push(TableRow {
            weight: a,
            weight_valid,
            targets,
            exact: found.as_ref() == Some(&expected),
            expected_found: all.contains(&expected),
            same_signature,
            expected,
            found,
        });
    }
    Ok(rows)
}

fn fp(p: Prime, x: i64) -> u32 {
    p.fp(x)
}

/// Coefficients of `sum_i (-1)^i l^{i(i-1)/2} a(l,i) X^i` over `F_p`,
/// from the eigenvalues `a(l,0..=n)`.
pub fn attached_poly(p: Prime, l: i64, a: &[i64]) -> Result<Vec<u32>> {
    if a.first().map(|&x| fp(p, x)) != Some(1) {
        return Err(Error::Precondition("a(l,0) must be 1".into()));
    }
    if fp(p, l) == 0 {
        return Err(Error::Precondition(format!("l = {l} is divisible by p = {p}")));
    }
    let q = u64::from(p.get());
    let lp = u64::from(fp(p, l));
    Ok(a.iter()
        .enumerate()
        .map(|(i, &ai)| {
            let i = i as u64;
            let mut c = pow_mod(lp, i * i.saturating_sub(1) / 2, q) * u64::from(fp(p, ai)) % q;
            if i % 2 == 1 {
                c = (q - c) % q;
            }
            c as u32
        })
        .collect())
}

#[allow(clippy::needless_range_loop)]
fn det_mod(p: Prime, mut m: Vec<Vec<u32>>) -> u32 {
    let n = m.len();
    let q = u64::from(p.get());
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            m.swap(piv, col);
            det = (q - det) % q;
        }
        det = det * u64::from(m[col][col]) % q;
        let inv = u64::from(inv_mod(m[col][col], p));
        for r in (col + 1)..n {
            let f = u64::from(m[r][col]) * inv % q;
            for k in col..n {
                let t = f * u64::from(m[col][k]) % q;
                m[r][k] = ((u64::from(m[r][k]) + q - t) % q) as u32;
            }
        }
    }
    det as u32
}

/// Coefficients of `det(1 - M X)` over `F_p`: `(-1)^i` times the sum of the
/// `i x i` principal minors.
pub fn det_one_minus_mx(p: Prime, m: &[Vec<i64>]) -> Result<Vec<u32>> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::Precondition("Frobenius matrix must be square".into()));
    }
    let q = u64::from(p.get());
    let mut out = vec![0u32; n + 1];
    for mask in 0u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<u32>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| fp(p, m[i][j])).collect())
            .collect();
        let k = idx.len();
        let minor = u64::from(det_mod(p, sub));
        let signed = if k % 2 == 1 { (q - minor) % q } else { minor };
        out[k] = ((u64::from(out[k]) + signed) % q) as u32;
    }
    Ok(out)
}

/// Whether the eigenvalues `a(l, i)` give `det(1 - rhobar(Frob_l) X)` for the supplied matrix.
pub fn attached_poly_matches(p: Prime, l: i64, a: &[i64], frob: &[Vec<i64>]) -> Result<bool> {
    if a.len() != frob.len() + 1 {
        return Err(Error::Precondition("need a(l,0..=n) for an n x n matrix".into()));
    }
    Ok(attached_poly(p, l, a)? == det_one_minus_mx(p, frob)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn inv(q: Prime, x: i64) -> i64 {
        i64::from(inv_mod(q.fp(x), q))
    }

    #[test]
    fn targets() {
        let q = p(7);
        assert_eq!(ht_targets(&GlnWeight::new(q, vec![2, 1, 0]).unwrap()), vec![4, 2, 0]);
        assert_eq!(ht_targets(&GlnWeight::new(q, vec![9, 5, 1]).unwrap()), vec![11, 6, 1]);
        assert_eq!(ht_targets(&GlnWeight::new(q, vec![0, 0, 0]).unwrap()), vec![2, 1, 0]);
        assert!(GlnWeight::new(q, vec![0, 1]).is_err());
        assert!(GlnWeight::new(q, vec![7, 0]).is_err());
        let a = GlnWeight::new(q, vec![3, 1, 0]).unwrap();
        assert!(a.equivalent(&GlnWeight::new(q, vec![9, 7, 6]).unwrap(), q));
        assert!(!a.equivalent(&GlnWeight::new(q, vec![4, 2, 1]).unwrap(), q));
    }

    #[test]
    fn search_examples() {
        let q = p(7);
        assert_eq!(
            find_lift(q, &[4, 2, 0], &[0, 2, 4]).unwrap().unwrap().to_string(),
            "ε^4 ⊕ ε^2 ⊕ 1"
        );
        let w = find_lift(q, &[11, 6, 1], &[0, 2, 4]).unwrap().unwrap();
        assert_eq!(w.to_string(), "εV ⊕ ε^6");
        assert_eq!(find_lift(q, &[1, 1, 0], &[0, 0, 0]).unwrap(), None);
        assert!(find_lift(p(3), &[0], &[0]).is_err());
        assert!(find_lift(q, &[0; 7], &[0; 7]).is_err());
        assert!(find_lift(q, &[1, 0], &[0]).is_err());
    }

    #[test]
    fn v_and_w_coincide_at_seven() {
        let q = p(7);
        let v = CrystBlock::TwoDim { name: TwoDim::V, twist: 3 };
        let w = CrystBlock::TwoDim { name: TwoDim::W, twist: 3 };
        assert_eq!(v.hodge_tate(q), w.hodge_tate(q));
        assert_eq!(v.reduction(q), w.reduction(q));
        assert_ne!(v.hodge_tate(p(11)), w.hodge_tate(p(11)));
    }

    #[test]
    fn table_rows() {
        for q in [7u64, 11, 13] {
            let q = p(q);
            let rows = table_gl3(q).unwrap();
            assert_eq!(rows.len(), 9);
            for row in &rows {
                assert!(row.passed(), "p={q} {row:?}");
                if q.get() != 7 {
                    assert!(row.exact, "p={q} {row:?}");
                }
            }
        }
        let rows = table_gl3(p(5)).unwrap();
        assert!(!rows[2].weight_valid);
    }

    #[test]
    fn attached_poly_examples() {
        let q = p(7);
        let l = 3;
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let a = [1, 3, 3 * inv(q, l), inv(q, l * l * l)];
        assert!(attached_poly_matches(q, l, &a, &id).unwrap());
        // (1 - X)^3
        assert_eq!(attached_poly(q, l, &a).unwrap(), vec![1, 4, 3, 6]);

        let (alpha, beta) = (2, 5);
        let diag = vec![vec![alpha, 0], vec![0, beta]];
        let a = [1, alpha + beta, alpha * beta * inv(q, l)];
        assert!(attached_poly_matches(q, l, &a, &diag).unwrap());
        let wrong = [1, alpha + beta, alpha * beta];
        assert!(!attached_poly_matches(q, l, &wrong, &diag).unwrap());

        assert!(attached_poly(q, l, &[2, 0]).is_err());
        assert!(attached_poly(q, 14, &[1, 0]).is_err());
    }

    #[test]
    fn char_poly_of_full_matrix() {
        // det(1 - MX) for M = [[1,2],[3,4]] is 1 - 5X - 2X^2
        let q = p(11);
        assert_eq!(det_one_minus_mx(q, &[vec![1, 2], vec![3, 4]]).unwrap(), vec![1, 6, 9]);
    }

    proptest! {
        #[test]
        fn twisting_commutes_with_search(
            idx in 0usize..3,
            hts in proptest::collection::vec(-5i64..40, 1..5),
            reds in proptest::collection::vec(0i64..20, 5),
            t in -30i64..30,
        ) {
            let q = p([5u64, 7, 11][idx]);
            let reds = &reds[..hts.len()];
            let base = find_lift(q, &hts, reds).unwrap();
            let shifted_h: Vec<i64> = hts.iter().map(|h| h + t).collect();
            let shifted_r: Vec<i64> = reds.iter().map(|r| r + t).collect();
            let moved = find_lift(q, &shifted_h, &shifted_r).unwrap();
            prop_assert_eq!(moved, base.map(|w| w.twist(t)));
        }

        #[test]
        fn witnesses_reproduce_their_targets(
            blocks in proptest::collection::vec((0u8..3, -10i64..30), 1..4),
        ) {
            let q = p(11);
            let blocks: Vec<CrystBlock> = blocks
                .into_iter()
                .map(|(k, t)| match k {
                    0 => CrystBlock::Char { a: t },
                    1 => CrystBlock::TwoDim { name: TwoDim::V, twist: t },
                    _ => CrystBlock::TwoDim { name: TwoDim::W, twist: t },
                })
                .collect();
            let w = LiftWitness::new(blocks);
            prop_assume!(w.dim() <= 6);
            let reds: Vec<i64> = w.reduction(q).iter().map(|&x| i64::from(x)).collect();
            let all = find_lifts(q, &w.hodge_tate(q), &reds).unwrap();
            prop_assert!(all.contains(&w));
            for found in &all {
                prop_assert_eq!(found.hodge_tate(q), w.hodge_tate(q));
                prop_assert_eq!(found.reduction(q), w.reduction(q));
            }
        }
    }
}
