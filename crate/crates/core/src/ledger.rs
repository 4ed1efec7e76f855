//! Dimension bookkeeping for the deformation rings used in modularity lifting.
//!
//! Pure integer formulas; lower bounds that come out negative are returned
//! as they are.

use serde::Serialize;

use crate::error::{Error, Result};

/// `[F:Q]`, the set `Sigma` of places, and the local degrees `[F_v:Q_p]` of the places above p.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlobalSetup {
    degree: u32,
    sigma_size: u32,
    places_over_p: Vec<u32>,
}

impl GlobalSetup {
    /// The places above p are counted in `Sigma`.
    pub fn new(degree: u32, sigma_size: u32, places_over_p: Vec<u32>) -> Result<Self> {
        if degree == 0 || sigma_size == 0 {
            return Err(Error::Precondition("degree and |Sigma| must be positive".into()));
        }
        if places_over_p.is_empty() || places_over_p.contains(&0) {
            return Err(Error::Precondition("local degrees above p must be positive".into()));
        }
        if places_over_p.iter().sum::<u32>() != degree {
            return Err(Error::Precondition(format!(
                "local degrees {places_over_p:?} do not sum to [F:Q] = {degree}"
            )));
        }
        if places_over_p.len() > sigma_size as usize {
            return Err(Error::Precondition("more places above p than places in Sigma".into()));
        }
        Ok(GlobalSetup {
            degree,
            sigma_size,
            places_over_p,
        })
    }

    /// `degree` places of local degree 1 if they fit in `Sigma`, otherwise one
    /// place of full degree.
    pub fn simple(degree: u32, sigma_size: u32) -> Result<Self> {
        let places = if degree <= sigma_size {
            vec![1; degree as usize]
        } else {
            vec![degree]
        };
        GlobalSetup::new(degree, sigma_size, places)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn sigma_size(&self) -> u32 {
        self.sigma_size
    }

    pub fn places_over_p(&self) -> &[u32] {
        &self.places_over_p
    }
}

/// Dimension of the framed local lifting ring for `GL2`: `4 + [F_v:Q_p]` above p, else 4.
pub fn dim_local_framed(v_divides_p: bool, local_degree: u32) -> Result<i64> {
    if v_divides_p {
        if local_degree == 0 {
            return Err(Error::Precondition("[F_v:Q_p] must be positive".into()));
        }
        Ok(4 + i64::from(local_degree))
    } else {
        Ok(4)
    }
}

/// Framed local lifting ring for `GL_d` at `v` not above p: `d^2`.
pub fn dim_local_framed_gl(d: u32) -> i64 {
    i64::from(d) * i64::from(d)
}

/// `3|Sigma| + [F:Q] + 1`.
pub fn dim_sigma(setup: &GlobalSetup) -> i64 {
    3 * i64::from(setup.sigma_size) + i64::from(setup.degree) + 1
}

/// The same quantity assembled from local pieces: the framed local
/// dimensions, minus `|Sigma| - 1` for the redundant frames.
pub fn dim_sigma_from_parts(setup: &GlobalSetup) -> i64 {
    let above: i64 = setup
        .places_over_p
        .iter()
        .map(|&d| dim_local_framed(true, d).expect("positive local degree"))
        .sum();
    let away = setup.sigma_size as usize - setup.places_over_p.len();
    let away: i64 = (0..away).map(|_| dim_local_framed(false, 0).expect("away from p")).sum();
    above + away - (i64::from(setup.sigma_size) - 1)
}

/// Lower bounds `(framed, unframed) = (4|Sigma|, 1)` for the global rings.
pub fn global_bounds(setup: &GlobalSetup) -> (i64, i64) {
    (4 * i64::from(setup.sigma_size), 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UnitaryBound {
    pub value: i64,
    /// `mu = n mod 2`, where the bound is exactly 1.
    pub is_one: bool,
}

/// `1 - (n/2) [F+:Q] (1 + (-1)^{1+n+mu})`.
pub fn unitary_bound(n: u32, mu: u32, degree_fplus: u32) -> Result<UnitaryBound> {
    if n == 0 || mu > 1 || degree_fplus == 0 {
        return Err(Error::Precondition("need n >= 1, mu in {0, 1}, [F+:Q] >= 1".into()));
    }
    let sign = if (1 + n + mu).is_multiple_of(2) { 1 } else { -1 };
    // n (1 + sign) is even, so the halving is exact
    let value = 1 - i64::from(n) * i64::from(degree_fplus) * (1 + sign) / 2;
    Ok(UnitaryBound {
        value,
        is_one: n % 2 == mu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_values() {
        assert_eq!(dim_local_framed(false, 0).unwrap(), 4);
        assert_eq!(dim_local_framed(true, 2).unwrap(), 6);
        assert!(dim_local_framed(true, 0).is_err());
        assert_eq!(dim_local_framed_gl(3), 9);
        assert_eq!(dim_local_framed_gl(2), dim_local_framed(false, 0).unwrap());
    }

    #[test]
    fn global_values() {
        let s = GlobalSetup::simple(2, 3).unwrap();
        assert_eq!(dim_sigma(&s), 12);
        assert_eq!(global_bounds(&s), (12, 1));
        assert_eq!(dim_sigma(&GlobalSetup::simple(1, 1).unwrap()), 5);
        assert_eq!(dim_sigma(&GlobalSetup::simple(3, 2).unwrap()), 10);
        assert_eq!(global_bounds(&GlobalSetup::simple(1, 1).unwrap()), (4, 1));
        assert_eq!(global_bounds(&GlobalSetup::simple(1, 5).unwrap()).0, 20);
    }

    #[test]
    fn setup_validation() {
        assert!(GlobalSetup::new(3, 2, vec![1, 1]).is_err());
        assert!(GlobalSetup::new(2, 1, vec![1, 1]).is_err());
        assert!(GlobalSetup::new(0, 1, vec![]).is_err());
        assert!(GlobalSetup::new(2, 2, vec![2, 0]).is_err());
    }

    #[test]
    fn closed_form_matches_parts() {
        for degree in 1..=6u32 {
            for sigma in 1..=6u32 {
                // every composition of `degree` into at most `sigma` parts
                let mut stack = vec![(Vec::<u32>::new(), degree)];
                while let Some((parts, left)) = stack.pop() {
                    if left == 0 {
                        let s = GlobalSetup::new(degree, sigma, parts).unwrap();
                        assert_eq!(dim_sigma_from_parts(&s), dim_sigma(&s), "{s:?}");
                        continue;
                    }
                    if parts.len() as u32 == sigma {
                        continue;
                    }
                    for d in 1..=left {
                        let mut next = parts.clone();
                        next.push(d);
                        stack.push((next, left - d));
                    }
                }
            }
        }
    }

    #[test]
    fn unitary_values() {
        for d in 1..5 {
            assert_eq!(unitary_bound(3, 1, d).unwrap().value, 1);
        }
        assert_eq!(unitary_bound(2, 1, 2).unwrap().value, -3);
        assert_eq!(unitary_bound(2, 0, 2).unwrap().value, 1);
        assert!(unitary_bound(0, 0, 1).is_err());
        assert!(unitary_bound(2, 2, 1).is_err());
        for n in 1..=10 {
            for mu in 0..=1 {
                let b = unitary_bound(n, mu, 3).unwrap();
                assert_eq!(b.is_one, b.value == 1, "n={n} mu={mu}");
            }
        }
    }
}
