//! JSON records for the domain values.
//!
//! Domain values do not carry `p`, so a record is turned back into a value
//! with `from_record(p, ..)`, which re-runs the constructor checks and
//! rejects exponents outside their canonical range for that `p`. Documents
//! that stand alone (proof traces) carry `"p"` at the top level.
//!
//! ```json
//! {"niveau": 2, "k": 2}
//! {"niveau": 1, "sub": 1, "quo": 0, "flags": ["split", "inertia_split"], "frob_scalars": ["a", "b"]}
//! {"type": "ps", "exponents": [1, 0]}     {"type": "scalar", "m": 0}     {"type": "cusp", "k": 21}
//! {"shape": "red", "a": 1, "b": 0, "requires_peu": true}     {"shape": "irred", "k": 10}
//! ```
//!
//! Serre weights are `[m, n]`; Jordan-Hölder multisets are flat lists of weights.

use serde::{Deserialize, Serialize};

use crate::arith::Prime;
use crate::consistency::{BridgeRule, Conclusion, ProofTrace, Step, TraceKind, TypeRule};
use crate::error::{Error, Result};
use crate::gl2reps::{JhMultiset, SerreWeight};
use crate::localgalois::{InertiaShape, LocalModPRep, Ramification, ReducibleRep};
use crate::tametypes::TameType;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidRecord(msg.into())
}

fn niv1_in_range(p: Prime, what: &str, v: i64) -> Result<i64> {
    if (0..i64::from(p.n1())).contains(&v) {
        Ok(v)
    } else {
        Err(bad(format!("{what} = {v} is outside [0, {}) for p = {p}", p.n1())))
    }
}

fn niv2_in_range(p: Prime, what: &str, v: i64) -> Result<i64> {
    if (0..i64::from(p.n2())).contains(&v) {
        Ok(v)
    } else {
        Err(bad(format!("{what} = {v} is outside [0, {}) for p = {p}", p.n2())))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalRepRecord {
    pub niveau: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quo: Option<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frob_scalars: Option<(String, String)>,
}

const FLAGS: [&str; 5] = ["split", "inertia_split", "peu", "tres", "scalar_endos"];

impl LocalModPRep {
    pub fn to_record(&self) -> LocalRepRecord {
        match self {
            LocalModPRep::Irreducible(k) => LocalRepRecord {
                niveau: 2,
                k: Some(k.rep().as_i64()),
                sub: None,
                quo: None,
                flags: Vec::new(),
                frob_scalars: None,
            },
            LocalModPRep::Reducible(r) => {
                let on = [
                    r.split,
                    r.inertia_split,
                    r.ram == Ramification::Peu,
                    r.ram == Ramification::Tres,
                    r.scalar_endos,
                ];
                LocalRepRecord {
                    niveau: 1,
                    k: None,
                    sub: Some(r.sub.as_i64()),
                    quo: Some(r.quo.as_i64()),
                    flags: FLAGS
                        .iter()
                        .zip(on)
                        .filter(|(_, b)| *b)
                        .map(|(f, _)| f.to_string())
                        .collect(),
                    frob_scalars: r.frob_scalars.clone(),
                }
            }
        }
    }

    /// `"split"` implies `"inertia_split"`.
    pub fn from_record(p: Prime, rec: &LocalRepRecord) -> Result<Self> {
        for f in &rec.flags {
            if !FLAGS.contains(&f.as_str()) {
                return Err(bad(format!("unknown flag {f:?}")));
            }
        }
        let has = |f: &str| rec.flags.iter().any(|g| g == f);
        match rec.niveau {
            2 => {
                if rec.sub.is_some() || rec.quo.is_some() || !rec.flags.is_empty() || rec.frob_scalars.is_some() {
                    return Err(bad("niveau-2 records carry only k"));
                }
                let k = rec.k.ok_or_else(|| bad("niveau-2 record without k"))?;
                LocalModPRep::irreducible(p, niv2_in_range(p, "k", k)?)
            }
            1 => {
                if rec.k.is_some() {
                    return Err(bad("niveau-1 records carry sub and quo, not k"));
                }
                let sub = rec.sub.ok_or_else(|| bad("niveau-1 record without sub"))?;
                let quo = rec.quo.ok_or_else(|| bad("niveau-1 record without quo"))?;
                let ram = match (has("peu"), has("tres")) {
                    (true, true) => return Err(bad("both peu and tres")),
                    (true, false) => Ramification::Peu,
                    (false, true) => Ramification::Tres,
                    (false, false) => Ramification::NotApplicable,
                };
                LocalModPRep::reducible(
                    p,
                    ReducibleRep {
                        sub: p.niv1(niv1_in_range(p, "sub", sub)?),
                        quo: p.niv1(niv1_in_range(p, "quo", quo)?),
                        inertia_split: has("inertia_split") || has("split"),
                        ram,
                        split: has("split"),
                        scalar_endos: has("scalar_endos"),
                        frob_scalars: rec.frob_scalars.clone(),
                    },
                )
            }
            other => Err(bad(format!("niveau must be 1 or 2, got {other}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum TameTypeRecord {
    Scalar { m: i64 },
    Ps { exponents: [i64; 2] },
    Cusp { k: i64 },
}

impl TameType {
    pub fn to_record(&self) -> TameTypeRecord {
        match self {
            TameType::Scalar(m) => TameTypeRecord::Scalar { m: m.as_i64() },
            TameType::Principal(pair) => TameTypeRecord::Ps {
                exponents: [pair.first().as_i64(), pair.second().as_i64()],
            },
            TameType::Cuspidal(k) => TameTypeRecord::Cusp { k: k.rep().as_i64() },
        }
    }

    pub fn from_record(p: Prime, rec: &TameTypeRecord) -> Result<Self> {
        match *rec {
            TameTypeRecord::Scalar { m } => Ok(TameType::scalar(p, niv1_in_range(p, "m", m)?)),
            TameTypeRecord::Ps { exponents: [a, b] } => {
                TameType::principal(p, niv1_in_range(p, "m1", a)?, niv1_in_range(p, "m2", b)?)
            }
            TameTypeRecord::Cusp { k } => TameType::cuspidal(p, niv2_in_range(p, "k", k)?),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
pub enum ShapeRecord {
    Red { a: i64, b: i64, requires_peu: bool },
    Irred { k: i64 },
}

impl InertiaShape {
    pub fn to_record(&self) -> ShapeRecord {
        match *self {
            InertiaShape::Reducible { a, b, requires_peu } => ShapeRecord::Red {
                a: a.as_i64(),
                b: b.as_i64(),
                requires_peu,
            },
            InertiaShape::Irreducible(k) => ShapeRecord::Irred { k: k.rep().as_i64() },
        }
    }

    pub fn from_record(p: Prime, rec: &ShapeRecord) -> Result<Self> {
        match *rec {
            ShapeRecord::Red { a, b, requires_peu } => Ok(InertiaShape::reducible(
                p,
                niv1_in_range(p, "a", a)?,
                niv1_in_range(p, "b", b)?,
                requires_peu,
            )),
            ShapeRecord::Irred { k } => InertiaShape::irreducible(p, niv2_in_range(p, "k", k)?),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case", deny_unknown_fields)]
pub enum StepRecord {
    BridgeRule { name: BridgeRule },
    TypeChoice { tau: TameTypeRecord, rule: TypeRule },
    ShapeConstraint { shapes: Vec<ShapeRecord> },
    Match { shape: ShapeRecord },
    NoMatch { shape: ShapeRecord },
    JhStep { tau: TameTypeRecord, jh: Vec<SerreWeight> },
    WMembership { weight: SerreWeight, member: bool },
    SingletonWeightSet { weights: Vec<SerreWeight> },
    Closure { from: SerreWeight, to: SerreWeight },
    HeckeEigenvalue { label: String },
    Conclusion { conclusion: Conclusion },
}

impl Step {
    pub fn to_record(&self) -> StepRecord {
        match self {
            Step::BridgeRule(name) => StepRecord::BridgeRule { name: *name },
            Step::TypeChoice { tau, rule } => StepRecord::TypeChoice {
                tau: tau.to_record(),
                rule: *rule,
            },
            Step::ShapeConstraint(shapes) => StepRecord::ShapeConstraint {
                shapes: shapes.iter().map(InertiaShape::to_record).collect(),
            },
            Step::Match(s) => StepRecord::Match { shape: s.to_record() },
            Step::NoMatch(s) => StepRecord::NoMatch { shape: s.to_record() },
            Step::JhStep { tau, jh } => StepRecord::JhStep {
                tau: tau.to_record(),
                jh: jh.iter().flat_map(|(w, c)| std::iter::repeat_n(w, c as usize)).collect(),
            },
            Step::WMembership { weight, member } => StepRecord::WMembership {
                weight: *weight,
                member: *member,
            },
            Step::SingletonWeightSet(ws) => StepRecord::SingletonWeightSet { weights: ws.clone() },
            Step::Closure { from, to } => StepRecord::Closure { from: *from, to: *to },
            Step::HeckeEigenvalue(label) => StepRecord::HeckeEigenvalue { label: label.clone() },
            Step::Conclusion(c) => StepRecord::Conclusion { conclusion: *c },
        }
    }

    pub fn from_record(p: Prime, rec: &StepRecord) -> Result<Self> {
        let weight = |w: &SerreWeight| w.validate(p);
        Ok(match rec {
            StepRecord::BridgeRule { name } => Step::BridgeRule(*name),
            StepRecord::TypeChoice { tau, rule } => Step::TypeChoice {
                tau: TameType::from_record(p, tau)?,
                rule: *rule,
            },
            StepRecord::ShapeConstraint { shapes } => Step::ShapeConstraint(
                shapes
                    .iter()
                    .map(|s| InertiaShape::from_record(p, s))
                    .collect::<Result<_>>()?,
            ),
            StepRecord::Match { shape } => Step::Match(InertiaShape::from_record(p, shape)?),
            StepRecord::NoMatch { shape } => Step::NoMatch(InertiaShape::from_record(p, shape)?),
            StepRecord::JhStep { tau, jh } => Step::JhStep {
                tau: TameType::from_record(p, tau)?,
                jh: jh.iter().map(weight).collect::<Result<JhMultiset>>()?,
            },
            StepRecord::WMembership { weight: w, member } => Step::WMembership {
                weight: weight(w)?,
                member: *member,
            },
            StepRecord::SingletonWeightSet { weights } => {
                Step::SingletonWeightSet(weights.iter().map(weight).collect::<Result<_>>()?)
            }
            StepRecord::Closure { from, to } => Step::Closure {
                from: weight(from)?,
                to: weight(to)?,
            },
            StepRecord::HeckeEigenvalue { label } => Step::HeckeEigenvalue(label.clone()),
            StepRecord::Conclusion { conclusion } => Step::Conclusion(*conclusion),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceRecord {
    pub p: u64,
    pub kind: TraceKind,
    pub rep: LocalRepRecord,
    pub target: SerreWeight,
    pub steps: Vec<StepRecord>,
}

impl ProofTrace {
    pub fn to_record(&self) -> TraceRecord {
        TraceRecord {
            p: u64::from(self.p.get()),
            kind: self.kind,
            rep: self.rep.to_record(),
            target: self.target,
            steps: self.steps.iter().map(Step::to_record).collect(),
        }
    }

    /// Validates the record structurally; use [`ProofTrace::replay`] to check the content.
    pub fn from_record(rec: &TraceRecord) -> Result<Self> {
        let p = Prime::new(rec.p)?;
        Ok(ProofTrace {
            p,
            kind: rec.kind,
            rep: LocalModPRep::from_record(p, &rec.rep)?,
            target: rec.target.validate(p)?,
            steps: rec
                .steps
                .iter()
                .map(|s| Step::from_record(p, s))
                .collect::<Result<_>>()?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("records always serialise")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let rec: TraceRecord = serde_json::from_str(s).map_err(|e| bad(e.to_string()))?;
        ProofTrace::from_record(&rec)
    }
}

impl Serialize for ProofTrace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_record().serialize(s)
    }
}

impl Serialize for LocalModPRep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_record().serialize(s)
    }
}

impl Serialize for TameType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_record().serialize(s)
    }
}

impl Serialize for InertiaShape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_record().serialize(s)
    }
}
