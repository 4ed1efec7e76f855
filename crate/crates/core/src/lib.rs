//! Combinatorics of the weight part of Serre-type conjectures for
//! two-dimensional mod p representations of `G_{Q_p}`.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: exponents of tame characters, `{m}` brackets, niveau-2 decompositions.
//! * [`gl2reps`]: irreducible `GL2(F_p)`-representations, Serre weights and
//!   reduction mod p, checked by the Brauer-character oracle in [`brauer`].
//! * [`tametypes`]: tame inertial types and the representation `sigma(tau)`.
//! * [`localgalois`]: local mod p data and the predicted weight set `W`.
//! * [`pbt`]: the potentially Barsotti-Tate lift-of-type predicate.
//! * [`consistency`]: elimination and certification with replayable traces.
//! * [`sympair`]: explicit `Sym^r` modules, the duality pairing and the
//!   induced-module exact sequences.
//! * [`glnweights`]: crystalline-lift witnesses for `GL_n` weights.
//! * [`ledger`]: dimension formulas for deformation rings.

pub mod arith;
pub mod brauer;
pub mod consistency;
pub mod cyclotomic;
pub mod error;
pub mod gl2reps;
pub mod glnweights;
pub mod ledger;
pub mod localgalois;
pub mod pbt;
pub mod record;
pub mod sympair;
pub mod tametypes;

pub use arith::Prime;
pub use error::{Error, Result};
pub use gl2reps::{CharZeroRep, JhMultiset, SerreWeight};
pub use localgalois::{InertiaShape, LocalModPRep, Ramification};
pub use tametypes::TameType;
