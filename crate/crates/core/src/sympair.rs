//! `Sym^r` of the standard representation over `F_p`, the duality pairing,
//! and the induced module `Ind_B^G (1 (x) delta^{-r})` with its quotient map
//! onto `det^{p-1-r} Sym^r`.
//!
//! `(a b; c d)` acts by `F(X, Y) -> F(aX + cY, bX + dY)`. Matrices are
//! reduced mod p first, so singular matrices such as `(0 i; 0 1)` act too.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{inv_mod, pow_mod, Prime};
use crate::error::{Error, Result};
use crate::gl2reps::SerreWeight;

#[inline]
fn add(p: Prime, x: u32, y: u32) -> u32 {
    ((u64::from(x) + u64::from(y)) % u64::from(p.get())) as u32
}

#[inline]
fn mul(p: Prime, x: u32, y: u32) -> u32 {
    (u64::from(x) * u64::from(y) % u64::from(p.get())) as u32
}

#[inline]
fn neg(p: Prime, x: u32) -> u32 {
    (p.get() - x % p.get()) % p.get()
}

fn fpow(p: Prime, x: u32, e: u64) -> u32 {
    pow_mod(u64::from(x), e, u64::from(p.get())) as u32
}

/// A 2x2 matrix over `F_p`, possibly singular.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Mat2 {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl Mat2 {
    pub fn new(p: Prime, a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 {
            a: p.fp(a),
            b: p.fp(b),
            c: p.fp(c),
            d: p.fp(d),
        }
    }

    pub fn identity() -> Self {
        Mat2 { a: 1, b: 0, c: 0, d: 1 }
    }

    pub fn det(&self, p: Prime) -> u32 {
        add(p, mul(p, self.a, self.d), neg(p, mul(p, self.b, self.c)))
    }

    pub fn mul(&self, p: Prime, o: &Mat2) -> Mat2 {
        Mat2 {
            a: add(p, mul(p, self.a, o.a), mul(p, self.b, o.c)),
            b: add(p, mul(p, self.a, o.b), mul(p, self.b, o.d)),
            c: add(p, mul(p, self.c, o.a), mul(p, self.d, o.c)),
            d: add(p, mul(p, self.c, o.b), mul(p, self.d, o.d)),
        }
    }

    pub fn inverse(&self, p: Prime) -> Option<Mat2> {
        let det = self.det(p);
        if det == 0 {
            return None;
        }
        let di = inv_mod(det, p);
        Some(Mat2 {
            a: mul(p, self.d, di),
            b: mul(p, neg(p, self.b), di),
            c: mul(p, neg(p, self.c), di),
            d: mul(p, self.a, di),
        })
    }
}

/// Every element of `GL2(F_p)`, in lexicographic order of entries.
pub fn gl2(p: Prime) -> Vec<Mat2> {
    let q = p.get();
    let mut out = Vec::with_capacity(((q * q - 1) * (q * q - q)) as usize);
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let g = Mat2 { a, b, c, d };
                    if g.det(p) != 0 {
                        out.push(g);
                    }
                }
            }
        }
    }
    out
}

/// Smallest generator of `F_p^x`.
pub fn primitive_root(p: Prime) -> u32 {
    let n = p.n1();
    let factors: Vec<u32> = (2..=n).filter(|&f| n.is_multiple_of(f) && (2..f).all(|d| f % d != 0)).collect();
    (2..p.get())
        .find(|&g| factors.iter().all(|&f| fpow(p, g, u64::from(n / f)) != 1))
        .unwrap_or(1)
}

/// `diag(g, 1)`, `(1 1; 0 1)` and `(0 1; 1 0)`, which generate `GL2(F_p)`.
pub fn generators(p: Prime) -> Vec<Mat2> {
    let g = i64::from(primitive_root(p));
    vec![Mat2::new(p, g, 0, 0, 1), Mat2::new(p, 1, 1, 0, 1), Mat2::new(p, 0, 1, 1, 0)]
}

/// `F(X, Y) = sum_j a_j X^{r-j} Y^j` over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SymPoly {
    coeffs: Vec<u32>,
}

impl SymPoly {
    pub fn new(p: Prime, coeffs: &[i64]) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Precondition("a polynomial of degree r has r + 1 coefficients".into()));
        }
        Ok(SymPoly {
            coeffs: coeffs.iter().map(|&c| p.fp(c)).collect(),
        })
    }

    pub fn zero(r: usize) -> Self {
        SymPoly { coeffs: vec![0; r + 1] }
    }

    /// `X^{r-j} Y^j`.
    pub fn monomial(r: usize, j: usize) -> Self {
        let mut f = SymPoly::zero(r);
        f.coeffs[j] = 1;
        f
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, p: Prime, o: &SymPoly) -> Result<SymPoly> {
        if self.degree() != o.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: o.degree(),
            });
        }
        Ok(SymPoly {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(&x, &y)| add(p, x, y)).collect(),
        })
    }

    pub fn scale(&self, p: Prime, s: u32) -> SymPoly {
        SymPoly {
            coeffs: self.coeffs.iter().map(|&x| mul(p, x, s)).collect(),
        }
    }
}

/// Product of polynomials in one variable (the `Y`-degree), coefficients in `F_p`.
fn poly_mul(p: Prime, x: &[u32], y: &[u32]) -> Vec<u32> {
    let mut out = vec![0; x.len() + y.len() - 1];
    for (i, &a) in x.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in y.iter().enumerate() {
            out[i + j] = add(p, out[i + j], mul(p, a, b));
        }
    }
    out
}

/// `F(aX + cY, bX + dY)`.
pub fn act(p: Prime, g: &Mat2, f: &SymPoly) -> SymPoly {
    let r = f.degree();
    let first = [g.a, g.c];
    let second = [g.b, g.d];
    let mut out = vec![0u32; r + 1];
    for (j, &coef) in f.coeffs.iter().enumerate() {
        if coef == 0 {
            continue;
        }
        let mut term = vec![1u32];
        for _ in 0..(r - j) {
            term = poly_mul(p, &term, &first);
        }
        for _ in 0..j {
            term = poly_mul(p, &term, &second);
        }
        for (k, &v) in term.iter().enumerate() {
            out[k] = add(p, out[k], mul(p, coef, v));
        }
    }
    SymPoly { coeffs: out }
}

/// `binom(r, j) mod p` for `j = 0..=r`.
fn binomials(p: Prime, r: usize) -> Vec<u32> {
    let mut row = vec![1u32];
    for _ in 0..r {
        let mut next = vec![1u32; row.len() + 1];
        for k in 1..row.len() {
            next[k] = add(p, row[k - 1], row[k]);
        }
        row = next;
    }
    row
}

/// `<F, G> = sum_j binom(r, j)^{-1} (-1)^j a_j b_{r-j}`.
#[allow(clippy::needless_range_loop)]
pub fn pair(p: Prime, f: &SymPoly, g: &SymPoly) -> Result<u32> {
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            left: f.degree(),
            right: g.degree(),
        });
    }
    let r = f.degree();
    if r >= p.get() as usize {
        return Err(Error::Precondition(format!("pairing needs r < p, got r = {r}")));
    }
    let binom = binomials(p, r);
    let mut acc = 0;
    for j in 0..=r {
        let t = mul(p, mul(p, inv_mod(binom[j], p), f.coeffs[j]), g.coeffs[r - j]);
        acc = if j % 2 == 0 { add(p, acc, t) } else { add(p, acc, neg(p, t)) };
    }
    Ok(acc)
}

fn check_range(p: Prime, r: usize) -> Result<()> {
    if r == 0 || r + 2 > p.get() as usize {
        return Err(Error::Precondition(format!("need 1 <= r <= p - 2, got r = {r} for p = {p}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checks: usize,
    pub failure: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// For every monomial `F` and `i` in `F_p`:
/// `<(0 i; 0 1) F, X^r> = <F, X^r>` and `<(1 0; 0 0) F, X^r> = 0`.
pub fn check_bracket_identities(p: Prime, r: usize) -> Result<CheckReport> {
    check_range(p, r)?;
    let xr = SymPoly::monomial(r, 0);
    let mut checks = 0;
    let mut failure = None;
    'outer: for j in 0..=r {
        let f = SymPoly::monomial(r, j);
        let base = pair(p, &f, &xr)?;
        for i in 0..p.get() {
            checks += 1;
            let g = Mat2::new(p, 0, i64::from(i), 0, 1);
            if pair(p, &act(p, &g, &f), &xr)? != base {
                failure = Some(format!("<(0 {i}; 0 1) X^{}Y^{j}, X^{r}> differs", r - j));
                break 'outer;
            }
        }
    }
    if failure.is_none() {
        let g = Mat2::new(p, 1, 0, 0, 0);
        for j in 0..=r {
            checks += 1;
            if pair(p, &act(p, &g, &SymPoly::monomial(r, j)), &xr)? != 0 {
                failure = Some(format!("<(1 0; 0 0) X^{}Y^{j}, X^{r}> is nonzero", r - j));
                break;
            }
        }
    }
    Ok(CheckReport { checks, failure })
}

/// `<gF, gG> = det(g)^r <F, G>` for all `g` in `GL2(F_p)` and all monomials.
pub fn check_pairing_equivariance(p: Prime, r: usize) -> Result<CheckReport> {
    check_range(p, r)?;
    let monos: Vec<SymPoly> = (0..=r).map(|j| SymPoly::monomial(r, j)).collect();
    let mut checks = 0;
    for g in gl2(p) {
        let dr = fpow(p, g.det(p), r as u64);
        let moved: Vec<SymPoly> = monos.iter().map(|f| act(p, &g, f)).collect();
        for (i, f) in monos.iter().enumerate() {
            for (j, h) in monos.iter().enumerate() {
                checks += 1;
                if pair(p, &moved[i], &moved[j])? != mul(p, dr, pair(p, f, h)?) {
                    return Ok(CheckReport {
                        checks,
                        failure: Some(format!("{g:?} on monomials {i}, {j}")),
                    });
                }
            }
        }
    }
    Ok(CheckReport { checks, failure: None })
}

/// Rank of the Gram matrix of the pairing on monomials.
pub fn pairing_rank(p: Prime, r: usize) -> Result<usize> {
    let monos: Vec<SymPoly> = (0..=r).map(|j| SymPoly::monomial(r, j)).collect();
    let mut gram = Vec::new();
    for f in &monos {
        gram.push(monos.iter().map(|g| pair(p, f, g)).collect::<Result<Vec<_>>>()?);
    }
    Ok(rank(p, gram))
}

/// Row echelon form in place; returns the pivot columns.
#[allow(clippy::needless_range_loop)]
fn echelon(p: Prime, m: &mut [Vec<u32>]) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(piv) = (row..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(row, piv);
        let inv = inv_mod(m[row][col], p);
        for x in m[row].iter_mut() {
            *x = mul(p, *x, inv);
        }
        for i in 0..m.len() {
            if i != row && m[i][col] != 0 {
                let f = m[i][col];
                for k in 0..cols {
                    let t = mul(p, f, m[row][k]);
                    m[i][k] = add(p, m[i][k], neg(p, t));
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

fn rank(p: Prime, mut m: Vec<Vec<u32>>) -> usize {
    echelon(p, &mut m).len()
}

/// Basis of `{v : M v = 0}` for an `rows x cols` matrix.
fn kernel(p: Prime, mut m: Vec<Vec<u32>>, cols: usize) -> Vec<Vec<u32>> {
    if m.is_empty() {
        return (0..cols)
            .map(|i| (0..cols).map(|k| u32::from(k == i)).collect())
            .collect();
    }
    let pivots = echelon(p, &mut m);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = neg(p, m[row][free]);
        }
        out.push(v);
    }
    out
}

/// `Ind_B^G (1 (x) delta^{-r})`: functions with `phi(b g) = d^{-r} phi(g)` for
/// `b = (a x; 0 d)`, stored by their values on the coset representatives
/// `(1 0; i 1)`, `i in F_p`, followed by `w = (0 1; 1 0)`. `G` acts by right translation.
#[derive(Debug, Clone)]
pub struct InducedModule {
    p: Prime,
    r: usize,
    reps: Vec<Mat2>,
}

impl InducedModule {
    pub fn new(p: Prime, r: usize) -> Result<Self> {
        check_range(p, r)?;
        let mut reps: Vec<Mat2> = (0..p.get())
            .map(|i| Mat2::new(p, 1, 0, i64::from(i), 1))
            .collect();
        reps.push(Mat2::new(p, 0, 1, 1, 0));
        Ok(InducedModule { p, r, reps })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// `h = b * rep`; returns the index of `rep` and `b`.
    fn coset(&self, h: &Mat2) -> (usize, Mat2) {
        let p = self.p;
        let k = if h.d != 0 {
            mul(p, h.c, inv_mod(h.d, p)) as usize
        } else {
            p.get() as usize
        };
        let b = h.mul(p, &self.reps[k].inverse(p).expect("representatives are invertible"));
        debug_assert_eq!(b.c, 0);
        (k, b)
    }

    fn chi(&self, b: &Mat2) -> u32 {
        // d^{-r} = d^{(p-1) - r} on F_p^x
        let e = (self.p.n1() as usize - self.r) as u64;
        fpow(self.p, b.d, e)
    }

    /// `(g phi)(x) = phi(x g)`.
    pub fn act(&self, g: &Mat2, phi: &[u32]) -> Vec<u32> {
        self.reps
            .iter()
            .map(|rep| {
                let (k, b) = self.coset(&rep.mul(self.p, g));
                mul(self.p, self.chi(&b), phi[k])
            })
            .collect()
    }

    /// The function supported on `B` with value 1 at the identity.
    pub fn x_v(&self) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[0] = 1;
        v
    }

    /// `phi -> sum_i phi((1 0; i 1)) (X - iY)^r + (-1)^r phi(w) Y^r`.
    ///
    /// The sign on the last term is what makes the map equivariant; it
    /// amounts to evaluating at `(0 1; -1 0)` instead of `w`.
    pub fn quotient(&self, phi: &[u32]) -> SymPoly {
        self.quotient_with_w_sign(phi, self.r % 2 == 1)
    }

    fn quotient_with_w_sign(&self, phi: &[u32], negate_w: bool) -> SymPoly {
        let p = self.p;
        let r = self.r;
        let binom = binomials(p, r);
        let mut out = vec![0u32; r + 1];
        for i in 0..p.get() {
            let v = phi[i as usize];
            if v == 0 {
                continue;
            }
            let minus_i = neg(p, i);
            for j in 0..=r {
                let c = mul(p, binom[j], fpow(p, minus_i, j as u64));
                out[j] = add(p, out[j], mul(p, v, c));
            }
        }
        let w = phi[p.get() as usize];
        out[r] = add(p, out[r], if negate_w { neg(p, w) } else { w });
        SymPoly { coeffs: out }
    }

    /// `g` acting on the target `det^{p-1-r} Sym^r`.
    pub fn target_act(&self, g: &Mat2, f: &SymPoly) -> SymPoly {
        let twist = fpow(self.p, g.det(self.p), (self.p.n1() as usize - self.r) as u64);
        act(self.p, g, f).scale(self.p, twist)
    }

    fn basis(&self) -> Vec<Vec<u32>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|k| u32::from(k == i)).collect())
            .collect()
    }

    /// `quotient(g phi) = g quotient(phi)` on a basis of the induced module.
    pub fn equivariant_at(&self, g: &Mat2) -> bool {
        self.basis()
            .iter()
            .all(|phi| self.quotient(&self.act(g, phi)) == self.target_act(g, &self.quotient(phi)))
    }

    /// Matrix of the quotient map, one row per coefficient of `Sym^r`.
    fn quotient_matrix(&self) -> Vec<Vec<u32>> {
        let cols: Vec<SymPoly> = self.basis().iter().map(|phi| self.quotient(phi)).collect();
        (0..=self.r)
            .map(|j| cols.iter().map(|f| f.coeffs[j]).collect())
            .collect()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        kernel(self.p, self.quotient_matrix(), self.dim())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SesReport {
    pub p: u32,
    pub r: usize,
    pub ind_dim: usize,
    pub image_dim: usize,
    pub kernel_dim: usize,
    pub equivariant_on_generators: bool,
    pub surjective: bool,
    pub x_v_maps_to_x_r: bool,
    pub kernel_invariant: bool,
    /// The weight read off from the unipotent-fixed line of the kernel.
    pub kernel_weight: Option<SerreWeight>,
    pub expected_kernel_weight: SerreWeight,
}

impl SesReport {
    pub fn passed(&self) -> bool {
        self.equivariant_on_generators
            && self.surjective
            && self.kernel_dim + self.r == self.p as usize
            && self.x_v_maps_to_x_r
            && self.kernel_invariant
            && self.kernel_weight == Some(self.expected_kernel_weight)
    }
}

/// `0 -> sigma_{0,p-1-r} -> Ind(1 (x) delta^{-r}) -> sigma_{p-1-r,r} -> 0`.
pub fn ses_check(p: Prime, r: usize) -> Result<SesReport> {
    let ind = InducedModule::new(p, r)?;
    let gens = generators(p);
    let equivariant = gens.iter().all(|g| ind.equivariant_at(g));
    let image_dim = rank(p, ind.quotient_matrix());
    let ker = ind.kernel_basis();
    let kernel_invariant = gens
        .iter()
        .all(|g| ker.iter().all(|v| ind.quotient(&ind.act(g, v)).is_zero()));
    Ok(SesReport {
        p: p.get(),
        r,
        ind_dim: ind.dim(),
        image_dim,
        kernel_dim: ker.len(),
        equivariant_on_generators: equivariant,
        surjective: image_dim == r + 1,
        x_v_maps_to_x_r: ind.quotient(&ind.x_v()) == SymPoly::monomial(r, 0),
        kernel_invariant,
        kernel_weight: highest_weight(&ind, &ker),
        expected_kernel_weight: SerreWeight::new(p, 0, i64::from(p.n1()) - r as i64)?,
    })
}

/// For `det^m Sym^n`, the line fixed by `(1 1; 0 1)` is spanned by `X^n`, on
/// which `diag(t, 1)` acts by `t^{m+n}` and `diag(1, t)` by `t^m`.
fn highest_weight(ind: &InducedModule, sub: &[Vec<u32>]) -> Option<SerreWeight> {
    let p = ind.p;
    let dim = ind.dim();
    let u = Mat2::new(p, 1, 1, 0, 1);
    // (u - 1) applied to the basis of `sub`, as a dim x |sub| matrix
    let moved: Vec<Vec<u32>> = sub
        .iter()
        .map(|v| {
            let uv = ind.act(&u, v);
            uv.iter().zip(v).map(|(&a, &b)| add(p, a, neg(p, b))).collect()
        })
        .collect();
    let m: Vec<Vec<u32>> = (0..dim).map(|k| moved.iter().map(|col| col[k]).collect()).collect();
    let fixed = kernel(p, m, sub.len());
    if fixed.len() != 1 {
        return None;
    }
    let mut v = vec![0u32; dim];
    for (c, basis) in fixed[0].iter().zip(sub) {
        for k in 0..dim {
            v[k] = add(p, v[k], mul(p, *c, basis[k]));
        }
    }
    let t = primitive_root(p);
    let eigen = |g: Mat2| -> Option<u32> {
        let gv = ind.act(&g, &v);
        let k = v.iter().position(|&x| x != 0)?;
        let lambda = mul(p, gv[k], inv_mod(v[k], p));
        let scaled: Vec<u32> = v.iter().map(|&x| mul(p, x, lambda)).collect();
        (scaled == gv).then_some(lambda)
    };
    let l1 = eigen(Mat2::new(p, i64::from(t), 0, 0, 1))?;
    let l2 = eigen(Mat2::new(p, 1, 0, 0, i64::from(t)))?;
    let m = (0..p.n1()).find(|&e| fpow(p, t, u64::from(e)) == l2)?;
    let n = sub.len() as u32 - 1;
    (fpow(p, t, u64::from(m + n)) == l1)
        .then(|| SerreWeight::new(p, i64::from(m), i64::from(n)).ok())
        .flatten()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeckeReport {
    pub trials: usize,
    pub failure: Option<String>,
    /// `F -> (g -> <gF, X^r>)` is injective on `Sym^r`.
    pub injective: bool,
}

impl HeckeReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.injective
    }
}

/// For random tuples `(F_0, .., F_{p-1}, F')`:
/// `<sum_i (0 i; 0 1) F_i + (1 0; 0 0) F', X^r> = sum_i <F_i, X^r>`.
/// The all-zero tuple is always tried first.
pub fn hecke_compat_check(p: Prime, r: usize, seed: u64, trials: usize) -> Result<HeckeReport> {
    check_range(p, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xr = SymPoly::monomial(r, 0);
    let q = p.get();
    let random_poly = |rng: &mut ChaCha8Rng| SymPoly {
        coeffs: (0..=r).map(|_| rng.gen_range(0..q)).collect(),
    };
    let mut failure = None;
    for t in 0..=trials {
        let (fs, f_prime): (Vec<SymPoly>, SymPoly) = if t == 0 {
            ((0..q).map(|_| SymPoly::zero(r)).collect(), SymPoly::zero(r))
        } else {
            ((0..q).map(|_| random_poly(&mut rng)).collect(), random_poly(&mut rng))
        };
        let mut lhs_poly = act(p, &Mat2::new(p, 1, 0, 0, 0), &f_prime);
        let mut rhs = 0;
        for (i, f) in fs.iter().enumerate() {
            lhs_poly = lhs_poly.add(p, &act(p, &Mat2::new(p, 0, i as i64, 0, 1), f))?;
            rhs = add(p, rhs, pair(p, f, &xr)?);
        }
        if pair(p, &lhs_poly, &xr)? != rhs {
            failure = Some(format!("trial {t}"));
            break;
        }
    }
    let rows: Vec<Vec<u32>> = gl2(p)
        .iter()
        .map(|g| {
            (0..=r)
                .map(|j| pair(p, &act(p, g, &SymPoly::monomial(r, j)), &xr))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(HeckeReport {
        trials: trials + 1,
        failure,
        injective: rank(p, rows) == r + 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn poly(q: Prime, c: &[i64]) -> SymPoly {
        SymPoly::new(q, c).unwrap()
    }

    #[test]
    fn action_examples() {
        let p5 = p(5);
        let f = poly(p5, &[1, 2, 3]);
        assert_eq!(act(p5, &Mat2::identity(), &f), f);
        assert!(act(p5, &Mat2::new(p5, 0, 3, 0, 1), &SymPoly::monomial(2, 0)).is_zero());
        for r in 0..5 {
            assert_eq!(
                act(p5, &Mat2::new(p5, 0, 1, 1, 0), &SymPoly::monomial(r, 0)),
                SymPoly::monomial(r, r)
            );
        }
        // (1 1; 0 1): X -> X, Y -> X + Y
        assert_eq!(act(p5, &Mat2::new(p5, 1, 1, 0, 1), &SymPoly::monomial(2, 2)), poly(p5, &[1, 2, 1]));
    }

    #[test]
    fn action_is_a_group_action() {
        // (gF)(v) = F(vg) for the row vector v = (X, Y)
        let q = p(5);
        let group = gl2(q);
        let f = poly(q, &[1, 4, 0, 2]);
        for g in group.iter().step_by(7) {
            for h in group.iter().step_by(11) {
                assert_eq!(act(q, &g.mul(q, h), &f), act(q, g, &act(q, h, &f)));
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let p5 = p(5);
        assert_eq!(pair(p5, &SymPoly::monomial(2, 0), &SymPoly::monomial(2, 2)).unwrap(), 1);
        assert_eq!(pair(p5, &SymPoly::monomial(2, 1), &SymPoly::monomial(2, 1)).unwrap(), 2);
        for r in 1..4 {
            assert_eq!(pair(p5, &SymPoly::monomial(r, 0), &SymPoly::monomial(r, 0)).unwrap(), 0);
        }
        assert_eq!(
            pair(p5, &SymPoly::monomial(2, 0), &SymPoly::monomial(3, 0)),
            Err(Error::DegreeMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn bracket_identities() {
        let report = check_bracket_identities(p(5), 2).unwrap();
        assert!(report.passed());
        assert_eq!(report.checks, 15 + 3);
        assert!(check_bracket_identities(p(7), 5).unwrap().passed());
        assert!(check_bracket_identities(p(5), 0).is_err());
        assert!(check_bracket_identities(p(5), 4).is_err());
    }

    #[test]
    fn pairing_equivariance_and_nondegeneracy() {
        for q in [5u64, 7] {
            let q = p(q);
            for r in 1..=(q.get() as usize - 2) {
                assert!(check_pairing_equivariance(q, r).unwrap().passed(), "p={q} r={r}");
                assert_eq!(pairing_rank(q, r).unwrap(), r + 1);
            }
        }
    }

    #[test]
    fn ses_examples() {
        let s = ses_check(p(5), 2).unwrap();
        assert_eq!((s.ind_dim, s.image_dim, s.kernel_dim), (6, 3, 3));
        assert!(s.passed(), "{s:?}");
        assert_eq!(ses_check(p(5), 1).unwrap().kernel_dim, 4);
    }

    #[test]
    fn ses_equivariant_on_whole_group() {
        for q in [5u64, 7] {
            let q = p(q);
            let group = gl2(q);
            for r in 1..=(q.get() as usize - 2) {
                let ind = InducedModule::new(q, r).unwrap();
                assert!(group.iter().all(|g| ind.equivariant_at(g)), "p={q} r={r}");
                assert!(ses_check(q, r).unwrap().passed());
            }
        }
    }

    #[test]
    fn unsigned_quotient_fails_for_odd_r() {
        let q = p(7);
        for r in 1..=5usize {
            let ind = InducedModule::new(q, r).unwrap();
            let literal_ok = gl2(q).iter().all(|g| {
                ind.basis().iter().all(|phi| {
                    ind.quotient_with_w_sign(&ind.act(g, phi), false)
                        == ind.target_act(g, &ind.quotient_with_w_sign(phi, false))
                })
            });
            assert_eq!(literal_ok, r % 2 == 0, "r={r}");
        }
    }

    #[test]
    fn induced_action_is_a_group_action() {
        let q = p(5);
        let ind = InducedModule::new(q, 2).unwrap();
        let group = gl2(q);
        let phi: Vec<u32> = vec![1, 0, 3, 2, 0, 4];
        for g in group.iter().step_by(13) {
            for h in group.iter().step_by(17) {
                // right translation: (g (h phi))(x) = phi(x g h)
                assert_eq!(ind.act(g, &ind.act(h, &phi)), ind.act(&g.mul(q, h), &phi));
            }
        }
    }

    #[test]
    fn hecke_compat() {
        let r = hecke_compat_check(p(5), 2, 7, 200).unwrap();
        assert!(r.passed());
        assert_eq!(r.trials, 201);
        assert!(hecke_compat_check(p(7), 3, 1, 50).unwrap().passed());
        assert_eq!(
            hecke_compat_check(p(5), 2, 3, 20).unwrap(),
            hecke_compat_check(p(5), 2, 3, 20).unwrap()
        );
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(p(5)), 2);
        assert_eq!(primitive_root(p(7)), 3);
        assert_eq!(primitive_root(p(23)), 5);
        assert_eq!(gl2(p(5)).len(), 480);
    }
}
