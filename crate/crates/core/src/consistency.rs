//! Elimination and certification of Serre weights, recorded as replayable
//! proof traces.
//!
//! The global inputs (modularity lifting, the link between lifts of a given
//! type and weights occurring in `sigma(tau)`) appear only as named
//! [`BridgeRule`] steps. Everything after a bridge rule is finite
//! combinatorics that [`ProofTrace::replay`] re-checks step by step against
//! the other modules.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::Prime;
use crate::error::{Error, Result};
use crate::gl2reps::{JhMultiset, SerreWeight};
use crate::localgalois::{enumerate_local_reps, in_weight_set, matches, weight_set, InertiaShape, LocalModPRep};
use crate::pbt::allowed_shapes;
use crate::tametypes::{jh_of_type, TameType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BridgeRule {
    /// A lift of type `tau` exists iff some JH factor of `sigma(tau)` is a weight.
    #[serde(rename = "types-vs-weights")]
    TypesVsWeights,
    /// For `n = p - 1`: either a lift of scalar type `omega^m (+) omega^m`,
    /// or an ordinary potentially semistable lift.
    #[serde(rename = "ordinary-fallback-n=p-1")]
    OrdinaryFallback,
}

impl BridgeRule {
    pub fn name(self) -> &'static str {
        match self {
            BridgeRule::TypesVsWeights => "types-vs-weights",
            BridgeRule::OrdinaryFallback => "ordinary-fallback-n=p-1",
        }
    }
}

/// How a type is derived from the weight `sigma_{m,n}` under consideration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TypeRule {
    /// `omega^{m+n} (+) omega^m`
    Tau1PrincipalSeries,
    /// `omega^m (+) omega^m`
    Tau1Scalar,
    /// `chi (+) chi^p` with `chi = omega_2^{(m-1)(p+1)+n+2}`
    Tau2Cuspidal,
    CertifyCuspidal,
    CertifyPrincipalSeries,
    CertifyScalar,
}

impl TypeRule {
    pub fn name(self) -> &'static str {
        match self {
            TypeRule::Tau1PrincipalSeries => "tau1-principal-series",
            TypeRule::Tau1Scalar => "tau1-scalar",
            TypeRule::Tau2Cuspidal => "tau2-cuspidal",
            TypeRule::CertifyCuspidal => "certify-cuspidal",
            TypeRule::CertifyPrincipalSeries => "certify-principal-series",
            TypeRule::CertifyScalar => "certify-scalar",
        }
    }

    fn for_certify(self) -> bool {
        matches!(
            self,
            TypeRule::CertifyCuspidal | TypeRule::CertifyPrincipalSeries | TypeRule::CertifyScalar
        )
    }

    /// The type this rule assigns to `w`.
    pub fn type_for(self, p: Prime, w: SerreWeight) -> Result<TameType> {
        let (m, n) = (i64::from(w.m()), i64::from(w.n()));
        match self {
            TypeRule::Tau1PrincipalSeries | TypeRule::CertifyPrincipalSeries => {
                TameType::principal(p, m + n, m)
            }
            TypeRule::Tau1Scalar | TypeRule::CertifyScalar => Ok(TameType::scalar(p, m)),
            TypeRule::Tau2Cuspidal | TypeRule::CertifyCuspidal => {
                TameType::cuspidal(p, (m - 1) * (i64::from(p.get()) + 1) + n + 2)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Conclusion {
    Consistent,
    Contradiction,
    CertifiedUnique,
    CertifiedWithClosure,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::Consistent => "Consistent",
            Conclusion::Contradiction => "Contradiction",
            Conclusion::CertifiedUnique => "CertifiedUnique",
            Conclusion::CertifiedWithClosure => "CertifiedWithClosure",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceKind {
    Eliminate,
    Certify,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    BridgeRule(BridgeRule),
    TypeChoice { tau: TameType, rule: TypeRule },
    /// Shapes `rhobar|I_p` must take; followed by one `Match`/`NoMatch` per shape.
    ShapeConstraint(Vec<InertiaShape>),
    Match(InertiaShape),
    NoMatch(InertiaShape),
    JhStep { tau: TameType, jh: JhMultiset },
    WMembership { weight: SerreWeight, member: bool },
    /// `W(rhobar)` is a single weight, so any modular weight is that one.
    SingletonWeightSet(Vec<SerreWeight>),
    /// `sigma_{m,0}` modular implies `sigma_{m,p-1}` modular.
    Closure { from: SerreWeight, to: SerreWeight },
    HeckeEigenvalue(String),
    Conclusion(Conclusion),
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::BridgeRule(b) => write!(f, "bridge rule {}", b.name()),
            Step::TypeChoice { tau, rule } => write!(f, "type {tau} ({})", rule.name()),
            Step::ShapeConstraint(shapes) => {
                f.write_str("shapes [")?;
                for (i, s) in shapes.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{s}")?;
                }
                f.write_str("]")
            }
            Step::Match(s) => write!(f, "match {s}"),
            Step::NoMatch(s) => write!(f, "no match {s}"),
            Step::JhStep { tau, jh } => write!(f, "JH({tau}) = {jh}"),
            Step::WMembership { weight, member } => {
                write!(f, "{weight} {} W", if *member { "∈" } else { "∉" })
            }
            Step::SingletonWeightSet(ws) => {
                f.write_str("W = {")?;
                for (i, w) in ws.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{w}")?;
                }
                f.write_str("}")
            }
            Step::Closure { from, to } => write!(f, "closure {from} => {to}"),
            Step::HeckeEigenvalue(l) => write!(f, "Hecke eigenvalue {l}"),
            Step::Conclusion(c) => write!(f, "conclusion {c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofTrace {
    pub p: Prime,
    pub kind: TraceKind,
    pub rep: LocalModPRep,
    pub target: SerreWeight,
    pub steps: Vec<Step>,
}

impl ProofTrace {
    pub fn conclusion(&self) -> Option<Conclusion> {
        match self.steps.last() {
            Some(Step::Conclusion(c)) => Some(*c),
            _ => None,
        }
    }

    /// The JH factors of the certificate type other than the certified weight.
    pub fn companions(&self) -> Vec<SerreWeight> {
        let certified = self
            .steps
            .iter()
            .find_map(|s| match s {
                Step::Closure { from, .. } => Some(*from),
                _ => None,
            })
            .unwrap_or(self.target);
        self.steps
            .iter()
            .filter_map(|s| match s {
                Step::JhStep { jh, .. } => Some(jh.weights().filter(|&w| w != certified).collect::<Vec<_>>()),
                _ => None,
            })
            .flatten()
            .collect()
    }

    /// Re-executes every step against the engines and re-derives the conclusion.
    pub fn replay(&self) -> Result<()> {
        Replayer::new(self).run()
    }
}

impl fmt::Display for ProofTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verb = match self.kind {
            TraceKind::Eliminate => "eliminate",
            TraceKind::Certify => "certify",
        };
        writeln!(f, "{verb} {} for {} (p = {})", self.target, self.rep, self.p)?;
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "  {:>2}. {s}", i + 1)?;
        }
        Ok(())
    }
}

/// The ordinary shape used by the `n = p - 1` fallback.
fn ordinary_shape(p: Prime, w: SerreWeight) -> InertiaShape {
    let m = i64::from(w.m());
    InertiaShape::reducible(p, m + 1, m, false)
}

/// The second reducible shape of `omega^{m+n} (+) omega^m`, which needs a second type.
fn bad_shape(p: Prime, w: SerreWeight) -> InertiaShape {
    let (m, n) = (i64::from(w.m()), i64::from(w.n()));
    InertiaShape::reducible(p, m + 1, m + n, false)
}

struct Builder<'a> {
    p: Prime,
    rep: &'a LocalModPRep,
    steps: Vec<Step>,
}

impl Builder<'_> {
    /// Type choice, its shape constraint and the match results; returns the matched shapes.
    fn block(&mut self, rule: TypeRule, w: SerreWeight, extra: Option<InertiaShape>) -> Result<(TameType, Vec<InertiaShape>)> {
        let tau = rule.type_for(self.p, w)?;
        self.steps.push(Step::TypeChoice { tau, rule });
        let mut shapes = allowed_shapes(self.p, &tau);
        shapes.extend(extra);
        self.steps.push(Step::ShapeConstraint(shapes.clone()));
        let mut hits = Vec::new();
        for s in shapes {
            if matches(self.rep, &s) {
                hits.push(s);
                self.steps.push(Step::Match(s));
            } else {
                self.steps.push(Step::NoMatch(s));
            }
        }
        Ok((tau, hits))
    }

    fn finish(mut self, kind: TraceKind, target: SerreWeight, c: Conclusion) -> ProofTrace {
        self.steps.push(Step::Conclusion(c));
        ProofTrace {
            p: self.p,
            kind,
            rep: self.rep.clone(),
            target,
            steps: self.steps,
        }
    }
}

/// Tries to rule out `w` as a weight of `rhobar`.
pub fn eliminate(p: Prime, rep: &LocalModPRep, w: SerreWeight) -> ProofTrace {
    let mut b = Builder {
        p,
        rep,
        steps: Vec::new(),
    };
    let n = w.n();
    let conclusion = if n == p.n1() {
        b.steps.push(Step::BridgeRule(BridgeRule::OrdinaryFallback));
        let (_, hits) = b
            .block(TypeRule::Tau1Scalar, w, Some(ordinary_shape(p, w)))
            .expect("scalar types always exist");
        if hits.is_empty() {
            Conclusion::Contradiction
        } else {
            Conclusion::Consistent
        }
    } else {
        b.steps.push(Step::BridgeRule(BridgeRule::TypesVsWeights));
        let rule = if n == 0 {
            TypeRule::Tau1Scalar
        } else {
            TypeRule::Tau1PrincipalSeries
        };
        let (_, hits) = b.block(rule, w, None).expect("0 < n < p - 1 gives distinct characters");
        let bad = bad_shape(p, w);
        if hits.is_empty() {
            Conclusion::Contradiction
        } else if rule == TypeRule::Tau1PrincipalSeries && hits.iter().all(|s| *s == bad) {
            let (_, hits2) = b
                .block(TypeRule::Tau2Cuspidal, w, None)
                .expect("n + 2 is not divisible by p + 1");
            if hits2.is_empty() {
                Conclusion::Contradiction
            } else {
                Conclusion::Consistent
            }
        } else {
            Conclusion::Consistent
        }
    };
    b.finish(TraceKind::Eliminate, w, conclusion)
}

/// Certifies that `w` is a weight of `rhobar`, given `w` in `W(rhobar)`.
pub fn certify(p: Prime, rep: &LocalModPRep, w: SerreWeight) -> Result<ProofTrace> {
    if !in_weight_set(p, rep, w) {
        return Err(Error::NotInWeightSet { m: w.m(), n: w.n() });
    }
    let mut b = Builder {
        p,
        rep,
        steps: vec![Step::BridgeRule(BridgeRule::TypesVsWeights)],
    };
    let top = p.n1();
    let conclusion = if rep.is_tres_ramifiee() {
        let ws: Vec<_> = weight_set(p, rep).into_iter().collect();
        if ws != [w] {
            return Err(Error::Precondition(format!("W({rep}) is not the singleton {{{w}}}")));
        }
        b.steps.push(Step::SingletonWeightSet(ws));
        Conclusion::CertifiedUnique
    } else if w.n() == top {
        let from = SerreWeight::new(p, i64::from(w.m()), 0)?;
        if !in_weight_set(p, rep, from) {
            return Err(Error::Precondition(format!("{from} is not in W({rep})")));
        }
        certify_with(&mut b, TypeRule::CertifyScalar, from)?;
        b.steps.push(Step::Closure { from, to: w });
        Conclusion::CertifiedWithClosure
    } else {
        let rule = if rep.is_irreducible() {
            TypeRule::CertifyCuspidal
        } else if w.n() == 0 {
            TypeRule::CertifyScalar
        } else {
            TypeRule::CertifyPrincipalSeries
        };
        certify_with(&mut b, rule, w)?;
        Conclusion::CertifiedUnique
    };
    if let Some((alpha, _)) = rep.frob_scalars() {
        b.steps.push(Step::HeckeEigenvalue(alpha.clone()));
    }
    Ok(b.finish(TraceKind::Certify, w, conclusion))
}

fn certify_with(b: &mut Builder<'_>, rule: TypeRule, w: SerreWeight) -> Result<()> {
    let (tau, hits) = b.block(rule, w, None)?;
    if hits.is_empty() {
        return Err(Error::Precondition(format!("{} has no lift of type {tau}", b.rep)));
    }
    let jh = jh_of_type(b.p, &tau);
    b.steps.push(Step::JhStep { tau, jh: jh.clone() });
    let mut members = BTreeSet::new();
    for x in jh.weights() {
        let member = in_weight_set(b.p, b.rep, x);
        if member {
            members.insert(x);
        }
        b.steps.push(Step::WMembership { weight: x, member });
    }
    if members.into_iter().collect::<Vec<_>>() != [w] {
        return Err(Error::Precondition(format!(
            "JH({tau}) meets W({}) in more than {w}",
            b.rep
        )));
    }
    Ok(())
}

struct Block {
    rule: TypeRule,
    results: Vec<(InertiaShape, bool)>,
}

impl Block {
    fn hits(&self) -> Vec<InertiaShape> {
        self.results.iter().filter(|r| r.1).map(|r| r.0).collect()
    }
}

struct Replayer<'a> {
    t: &'a ProofTrace,
    bridge: Option<BridgeRule>,
    tau: Option<TameType>,
    pending: VecDeque<InertiaShape>,
    blocks: Vec<Block>,
    jh: Option<JhMultiset>,
    members: Vec<(SerreWeight, bool)>,
    singleton: bool,
    closure: Option<SerreWeight>,
    conclusion: Option<Conclusion>,
}

impl<'a> Replayer<'a> {
    fn new(t: &'a ProofTrace) -> Self {
        Replayer {
            t,
            bridge: None,
            tau: None,
            pending: VecDeque::new(),
            blocks: Vec::new(),
            jh: None,
            members: Vec::new(),
            singleton: false,
            closure: None,
            conclusion: None,
        }
    }

    fn run(mut self) -> Result<()> {
        for (i, step) in self.t.steps.iter().enumerate() {
            self.step(i, step).map_err(|reason| Error::ReplayMismatch { step: i, reason })?;
        }
        let end = self.t.steps.len();
        if !self.pending.is_empty() {
            return Err(Error::ReplayMismatch {
                step: end,
                reason: "shape constraint not fully matched".into(),
            });
        }
        if self.conclusion.is_none() {
            return Err(Error::ReplayMismatch {
                step: end,
                reason: "trace has no conclusion".into(),
            });
        }
        Ok(())
    }

    fn step(&mut self, i: usize, step: &Step) -> std::result::Result<(), String> {
        let t = self.t;
        let p = t.p;
        if self.conclusion.is_some() {
            return Err("step after the conclusion".into());
        }
        if !self.pending.is_empty() && !matches!(step, Step::Match(_) | Step::NoMatch(_)) {
            return Err("expected a match result".into());
        }
        match step {
            Step::BridgeRule(b) => {
                let expected = if t.kind == TraceKind::Eliminate && t.target.n() == p.n1() {
                    BridgeRule::OrdinaryFallback
                } else {
                    BridgeRule::TypesVsWeights
                };
                if i != 0 || *b != expected {
                    return Err(format!("unexpected bridge rule {}", b.name()));
                }
                self.bridge = Some(*b);
            }
            Step::TypeChoice { tau, rule } => {
                if self.bridge.is_none() {
                    return Err("type chosen before a bridge rule".into());
                }
                if rule.for_certify() != (t.kind == TraceKind::Certify) {
                    return Err(format!("rule {} does not belong to this trace", rule.name()));
                }
                let expected = rule.type_for(p, t.target).map_err(|e| e.to_string())?;
                if *tau != expected {
                    return Err(format!("rule {} gives {expected}, not {tau}", rule.name()));
                }
                self.tau = Some(*tau);
                self.blocks.push(Block {
                    rule: *rule,
                    results: Vec::new(),
                });
            }
            Step::ShapeConstraint(shapes) => {
                let tau = self.tau.ok_or("shape constraint without a type")?;
                let block = self.blocks.last().ok_or("shape constraint without a type")?;
                if !block.results.is_empty() {
                    return Err("second shape constraint for one type".into());
                }
                let mut expected = allowed_shapes(p, &tau);
                if self.bridge == Some(BridgeRule::OrdinaryFallback) {
                    expected.push(ordinary_shape(p, t.target));
                }
                if *shapes != expected {
                    return Err(format!("shapes differ from the allowed shapes of {tau}"));
                }
                self.pending = shapes.iter().copied().collect();
            }
            Step::Match(s) | Step::NoMatch(s) => {
                let claimed = matches!(step, Step::Match(_));
                if self.pending.pop_front() != Some(*s) {
                    return Err(format!("{s} is not the next constrained shape"));
                }
                if matches(&t.rep, s) != claimed {
                    return Err(format!("match result for {s} is wrong"));
                }
                self.blocks
                    .last_mut()
                    .expect("pending shapes imply a block")
                    .results
                    .push((*s, claimed));
            }
            Step::JhStep { tau, jh } => {
                if self.tau != Some(*tau) {
                    return Err(format!("JH step for {tau}, which is not the chosen type"));
                }
                if *jh != jh_of_type(p, tau) {
                    return Err(format!("JH({tau}) is not {jh}"));
                }
                self.jh = Some(jh.clone());
            }
            Step::WMembership { weight, member } => {
                let jh = self.jh.as_ref().ok_or("membership before a JH step")?;
                if !jh.contains(*weight) {
                    return Err(format!("{weight} is not a JH factor"));
                }
                if in_weight_set(p, &t.rep, *weight) != *member {
                    return Err(format!("membership of {weight} is wrong"));
                }
                self.members.push((*weight, *member));
            }
            Step::SingletonWeightSet(ws) => {
                let actual: Vec<_> = weight_set(p, &t.rep).into_iter().collect();
                if *ws != actual || actual != [t.target] {
                    return Err("weight set is not the singleton target".into());
                }
                self.singleton = true;
            }
            Step::Closure { from, to } => {
                if *to != t.target || to.n() != p.n1() || from.m() != to.m() || from.n() != 0 {
                    return Err(format!("closure {from} => {to} does not apply"));
                }
                self.closure = Some(*from);
            }
            Step::HeckeEigenvalue(label) => match t.rep.frob_scalars() {
                Some((alpha, _)) if alpha == label => {}
                _ => return Err(format!("eigenvalue label {label} is not recorded on the representation")),
            },
            Step::Conclusion(c) => {
                let derived = self.derive()?;
                if *c != derived {
                    return Err(format!("conclusion {c} does not follow; the steps give {derived}"));
                }
                self.conclusion = Some(*c);
            }
        }
        Ok(())
    }

    fn derive(&self) -> std::result::Result<Conclusion, String> {
        let t = self.t;
        match t.kind {
            TraceKind::Eliminate => {
                let first = self.blocks.first().ok_or("no type was tried")?;
                let hits = first.hits();
                let (conclusion, blocks) = if hits.is_empty() {
                    (Conclusion::Contradiction, 1)
                } else if first.rule == TypeRule::Tau1PrincipalSeries
                    && hits.iter().all(|s| *s == bad_shape(t.p, t.target))
                {
                    let second = self.blocks.get(1).ok_or("second type missing")?;
                    if second.rule != TypeRule::Tau2Cuspidal {
                        return Err("second type must be cuspidal".into());
                    }
                    if second.hits().is_empty() {
                        (Conclusion::Contradiction, 2)
                    } else {
                        (Conclusion::Consistent, 2)
                    }
                } else {
                    (Conclusion::Consistent, 1)
                };
                if self.blocks.len() != blocks {
                    return Err("wrong number of types tried".into());
                }
                Ok(conclusion)
            }
            TraceKind::Certify => {
                if self.singleton {
                    if !self.blocks.is_empty() {
                        return Err("singleton branch chooses no type".into());
                    }
                    return Ok(Conclusion::CertifiedUnique);
                }
                if self.blocks.len() != 1 || self.blocks[0].hits().is_empty() {
                    return Err("certificate needs one type with a matching shape".into());
                }
                let jh = self.jh.as_ref().ok_or("certificate without JH factors")?;
                let seen: BTreeSet<_> = self.members.iter().map(|m| m.0).collect();
                if seen != jh.weights().collect::<BTreeSet<_>>() {
                    return Err("membership not checked for every JH factor".into());
                }
                let certified = self.closure.unwrap_or(t.target);
                let inside: Vec<_> = self.members.iter().filter(|m| m.1).map(|m| m.0).collect();
                if inside != [certified] {
                    return Err(format!("JH factors in W are not exactly {certified}"));
                }
                Ok(if self.closure.is_some() {
                    Conclusion::CertifiedWithClosure
                } else {
                    Conclusion::CertifiedUnique
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub p: u32,
    pub reps: usize,
    pub weights: usize,
    pub cases: usize,
    pub in_weight_set: usize,
    pub certified_unique: usize,
    pub certified_with_closure: usize,
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs elimination over every enumerated `rhobar` and weight, and
/// certification on every member of `W`, replaying all traces.
pub fn sweep(p: Prime) -> Result<SweepReport> {
    let reps = enumerate_local_reps(p)?;
    let weights = SerreWeight::all(p);
    let mut report = SweepReport {
        p: p.get(),
        reps: reps.len(),
        weights: weights.len(),
        cases: 0,
        in_weight_set: 0,
        certified_unique: 0,
        certified_with_closure: 0,
        failures: Vec::new(),
    };
    for rep in &reps {
        for &w in &weights {
            report.cases += 1;
            let member = in_weight_set(p, rep, w);
            let trace = eliminate(p, rep, w);
            if let Err(e) = trace.replay() {
                report.failures.push(format!("eliminate {rep} {w}: {e}"));
            }
            let consistent = trace.conclusion() == Some(Conclusion::Consistent);
            if consistent != member {
                report.failures.push(format!(
                    "eliminate {rep} {w}: concluded {:?}, membership {member}",
                    trace.conclusion()
                ));
            }
            if !member {
                continue;
            }
            report.in_weight_set += 1;
            match certify(p, rep, w) {
                Ok(cert) => {
                    if let Err(e) = cert.replay() {
                        report.failures.push(format!("certify {rep} {w}: {e}"));
                    }
                    for c in cert.companions() {
                        if in_weight_set(p, rep, c) {
                            report.failures.push(format!("certify {rep} {w}: companion {c} in W"));
                        }
                    }
                    match cert.conclusion() {
                        Some(Conclusion::CertifiedUnique) => report.certified_unique += 1,
                        Some(Conclusion::CertifiedWithClosure) => report.certified_with_closure += 1,
                        other => report.failures.push(format!("certify {rep} {w}: ended in {other:?}")),
                    }
                }
                Err(e) => report.failures.push(format!("certify {rep} {w}: {e}")),
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localgalois::Ramification;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn w(p: Prime, m: i64, n: i64) -> SerreWeight {
        SerreWeight::new(p, m, n).unwrap()
    }

    fn types_tried(t: &ProofTrace) -> Vec<TameType> {
        t.steps
            .iter()
            .filter_map(|s| match s {
                Step::TypeChoice { tau, .. } => Some(*tau),
                _ => None,
            })
            .collect()
    }

    #[test]
    fn eliminate_examples() {
        let p5 = p(5);
        let t = eliminate(p5, &LocalModPRep::split(p5, 2, 0).unwrap(), w(p5, 0, 2));
        assert_eq!(t.conclusion(), Some(Conclusion::Contradiction));
        assert_eq!(types_tried(&t), vec![TameType::principal(p5, 2, 0).unwrap()]);
        t.replay().unwrap();

        let p7 = p(7);
        let t = eliminate(p7, &LocalModPRep::split(p7, 1, 2).unwrap(), w(p7, 0, 2));
        assert_eq!(t.conclusion(), Some(Conclusion::Contradiction));
        assert_eq!(
            types_tried(&t),
            vec![
                TameType::principal(p7, 2, 0).unwrap(),
                TameType::cuspidal(p7, 44).unwrap()
            ]
        );
        assert!(t.steps.contains(&Step::Match(InertiaShape::reducible(p7, 1, 2, false))));
        assert!(t.steps.contains(&Step::NoMatch(InertiaShape::reducible(p7, 3, 0, false))));
        assert!(t.steps.contains(&Step::NoMatch(InertiaShape::reducible(p7, 0, 3, false))));
        t.replay().unwrap();

        let t = eliminate(p5, &LocalModPRep::irreducible(p5, 2).unwrap(), w(p5, 0, 1));
        assert_eq!(t.conclusion(), Some(Conclusion::Consistent));
        assert!(t.steps.contains(&Step::Match(InertiaShape::irreducible(p5, 2).unwrap())));
    }

    #[test]
    fn certify_examples() {
        let p5 = p(5);
        let irred = LocalModPRep::irreducible(p5, 2).unwrap();
        let t = certify(p5, &irred, w(p5, 0, 1)).unwrap();
        assert_eq!(types_tried(&t), vec![TameType::cuspidal(p5, 21).unwrap()]);
        assert_eq!(t.companions(), vec![w(p5, 2, 1)]);
        assert!(t.steps.contains(&Step::WMembership {
            weight: w(p5, 2, 1),
            member: false
        }));
        assert_eq!(t.conclusion(), Some(Conclusion::CertifiedUnique));
        t.replay().unwrap();

        let tres = LocalModPRep::nonsplit(p5, 1, 0, Ramification::Tres).unwrap();
        let t = certify(p5, &tres, w(p5, 0, 4)).unwrap();
        assert_eq!(t.conclusion(), Some(Conclusion::CertifiedUnique));
        assert!(t.steps.contains(&Step::SingletonWeightSet(vec![w(p5, 0, 4)])));

        let split = LocalModPRep::split(p5, 1, 0)
            .unwrap()
            .with_frob_scalars("alpha", "beta")
            .unwrap();
        let t = certify(p5, &split, w(p5, 0, 4)).unwrap();
        assert_eq!(types_tried(&t), vec![TameType::scalar(p5, 0)]);
        assert!(t.steps.contains(&Step::Closure {
            from: w(p5, 0, 0),
            to: w(p5, 0, 4)
        }));
        assert!(t.steps.contains(&Step::HeckeEigenvalue("alpha".into())));
        assert_eq!(t.conclusion(), Some(Conclusion::CertifiedWithClosure));
        t.replay().unwrap();

        assert_eq!(
            certify(p5, &irred, w(p5, 2, 1)).unwrap_err(),
            Error::NotInWeightSet { m: 2, n: 1 }
        );
    }

    #[test]
    fn tampered_traces_fail_replay() {
        let p5 = p(5);
        let rep = LocalModPRep::split(p5, 2, 0).unwrap();
        let good = eliminate(p5, &rep, w(p5, 0, 2));

        let mut t = good.clone();
        *t.steps.last_mut().unwrap() = Step::Conclusion(Conclusion::Consistent);
        assert!(matches!(t.replay(), Err(Error::ReplayMismatch { .. })));

        let mut t = good.clone();
        let i = t.steps.iter().position(|s| matches!(s, Step::NoMatch(_))).unwrap();
        if let Step::NoMatch(s) = t.steps[i] {
            t.steps[i] = Step::Match(s);
        }
        assert!(t.replay().is_err());

        let mut t = good.clone();
        t.steps[1] = Step::TypeChoice {
            tau: TameType::principal(p5, 3, 0).unwrap(),
            rule: TypeRule::Tau1PrincipalSeries,
        };
        assert!(t.replay().is_err());

        let mut t = good.clone();
        t.steps.pop();
        assert!(t.replay().is_err());

        let mut t = certify(p5, &LocalModPRep::irreducible(p5, 2).unwrap(), w(p5, 0, 1)).unwrap();
        let i = t.steps.iter().position(|s| matches!(s, Step::WMembership { .. })).unwrap();
        t.steps.remove(i);
        assert!(t.replay().is_err());
    }

    #[test]
    fn sweeps_pass() {
        for q in [5u64, 7] {
            let report = sweep(p(q)).unwrap();
            assert!(report.all_pass(), "{:#?}", &report.failures[..report.failures.len().min(10)]);
            assert_eq!(report.cases, report.reps * report.weights);
            assert_eq!(
                report.in_weight_set,
                report.certified_unique + report.certified_with_closure
            );
        }
    }
}
