//! Potentially Barsotti-Tate lifts of a given tame type.
//!
//! [`allowed_shapes`] lists the inertial shapes a `rhobar` must have to admit
//! such a lift; [`has_pbt_lift`] upgrades a match to a definite answer only
//! when `rhobar` is decomposable or has scalar endomorphisms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{bracket_ext, niveau2_decompose, Prime};
use crate::localgalois::{matches, InertiaShape, LocalModPRep};
use crate::tametypes::TameType;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PbtVerdict {
    No,
    NecessaryOnly,
    Yes,
}

impl fmt::Display for PbtVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PbtVerdict::No => "No",
            PbtVerdict::NecessaryOnly => "NecessaryOnly",
            PbtVerdict::Yes => "Yes",
        })
    }
}

/// Shapes of `rhobar|I_p` compatible with a lift of type `tau`.
///
/// Scalar types list their reducible shape once. Cuspidal niveau-2 entries
/// whose exponent is divisible by `p + 1` are dropped, since no irreducible
/// `rhobar` can have them; the two cuspidal reducible entries are kept even
/// when they coincide.
pub fn allowed_shapes(p: Prime, tau: &TameType) -> Vec<InertiaShape> {
    let q = i64::from(p.get()) + 1;
    match *tau {
        TameType::Scalar(m) => {
            let i = m.as_i64();
            vec![
                InertiaShape::reducible(p, 1 + i, i, true),
                irred(p, 1 + i64::from(bracket_ext(p, 0)) + q * i),
            ]
        }
        TameType::Principal(pair) => {
            let (i, j) = (pair.first().as_i64(), pair.second().as_i64());
            vec![
                InertiaShape::reducible(p, 1 + i, j, false),
                InertiaShape::reducible(p, 1 + j, i, false),
                irred(p, 1 + i64::from(bracket_ext(p, j - i)) + q * i),
            ]
        }
        TameType::Cuspidal(orbit) => {
            let m = orbit.rep();
            let (i, j) = niveau2_decompose(p, m).expect("cuspidal exponent");
            let (i, j) = (i64::from(i), j.as_i64());
            let m = m.as_i64();
            let mut out = Vec::with_capacity(4);
            for k in [1 + m, i64::from(p.get()) + m] {
                if k.rem_euclid(q) != 0 {
                    out.push(irred(p, k));
                }
            }
            out.push(InertiaShape::reducible(p, i + j, 1 + j, i == 2));
            out.push(InertiaShape::reducible(p, 1 + j, i + j, i == i64::from(p.get()) - 1));
            out
        }
    }
}

fn irred(p: Prime, k: i64) -> InertiaShape {
    InertiaShape::irreducible(p, k).expect("exponent checked off (p+1)Z")
}

/// Whether the converse direction applies to `rhobar` for lifts of `tau`.
pub fn converse_applies(rep: &LocalModPRep, tau: &TameType) -> bool {
    match tau {
        TameType::Cuspidal(_) => rep.has_scalar_endos(),
        _ => rep.is_split() || rep.has_scalar_endos(),
    }
}

pub fn has_pbt_lift(p: Prime, rep: &LocalModPRep, tau: &TameType) -> PbtVerdict {
    if !allowed_shapes(p, tau).iter().any(|s| matches(rep, s)) {
        PbtVerdict::No
    } else if converse_applies(rep, tau) {
        PbtVerdict::Yes
    } else {
        PbtVerdict::NecessaryOnly
    }
}
