use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use serre_core::brauer::{BrauerOracle, OracleConfig};
use serre_core::consistency::{certify, eliminate, sweep};
use serre_core::gl2reps::reduce;
use serre_core::glnweights::table_gl3;
use serre_core::ledger::{self, GlobalSetup};
use serre_core::localgalois::weight_set;
use serre_core::pbt::{allowed_shapes, has_pbt_lift};
use serre_core::record::{LocalRepRecord, TameTypeRecord};
use serre_core::sympair::{check_bracket_identities, check_pairing_equivariance, hecke_compat_check, ses_check};
use serre_core::tametypes::{enumerate_types, jh_of_type, sigma_of_type};
use serre_core::{CharZeroRep, Error, LocalModPRep, Prime, Ramification, SerreWeight, TameType};

#[derive(Parser)]
#[command(name = "serre", version, about = "Serre weight combinatorics for mod p representations")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for the randomized checks.
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Predicted weight set of a local representation.
    Weights {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        rep: RepArgs,
    },
    /// Tame types with sigma(tau) and its Jordan-Hölder factors.
    Types {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        ty: TypeArgs,
    },
    /// Reduction mod p of characteristic-zero representations of GL2(F_p).
    Reduce {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        rep: CharZeroArgs,
        /// Confirm each reduction with the Brauer-character oracle.
        #[arg(long)]
        verify: bool,
    },
    /// Potentially Barsotti-Tate lift of a given tame type.
    Pbt {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        rep: RepArgs,
        #[command(flatten)]
        ty: TypeArgs,
    },
    /// Elimination trace for one weight.
    Eliminate {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        rep: RepArgs,
        #[command(flatten)]
        weight: WeightArgs,
    },
    /// Certification trace for one weight.
    Certify {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        rep: RepArgs,
        #[command(flatten)]
        weight: WeightArgs,
    },
    /// Exhaustive elimination and certification over every rep and weight.
    Sweep {
        #[arg(long)]
        p: u64,
    },
    /// Pairing identities, exact sequences and Hecke compatibility on Sym^r.
    SympairCheck {
        #[arg(long)]
        p: u64,
        /// Only this r; default is every r in [1, p-2].
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Crystalline-lift witnesses for the nine GL3 weights of 1 + ω² + ω⁴.
    Gl3Table {
        #[arg(long)]
        p: u64,
    },
    /// Deformation-ring dimension formulas.
    Ledger {
        #[command(subcommand)]
        which: LedgerCmd,
    },
}

#[derive(Subcommand)]
enum LedgerCmd {
    /// dim R_Sigma and the global lower bounds.
    Sigma {
        #[arg(long)]
        sigma: u32,
        #[arg(long)]
        degree: u32,
        /// Local degrees of the places above p (default: split completely when possible).
        #[arg(long, value_delimiter = ',')]
        places: Option<Vec<u32>>,
    },
    /// Framed local lifting ring.
    Local {
        /// The place lies above p.
        #[arg(long)]
        above_p: bool,
        #[arg(long, default_value_t = 1)]
        local_degree: u32,
    },
    /// The unitary-group lower bound.
    Unitary {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        mu: u32,
        #[arg(long)]
        degree: u32,
    },
}

#[derive(Args)]
struct RepArgs {
    /// Irreducible of niveau 2 (needs --k).
    #[arg(long)]
    niveau2: bool,
    #[arg(long, allow_negative_numbers = true)]
    k: Option<i64>,
    /// Exponent of the sub character.
    #[arg(long, allow_negative_numbers = true)]
    sub: Option<i64>,
    /// Exponent of the quotient character.
    #[arg(long, allow_negative_numbers = true)]
    quo: Option<i64>,
    #[arg(long)]
    split: bool,
    #[arg(long, conflicts_with = "tres")]
    peu: bool,
    #[arg(long)]
    tres: bool,
    /// Frobenius scalars of a split representation, as two names.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    frob: Option<Vec<String>>,
    /// A full JSON record instead of the flags above.
    #[arg(long, conflicts_with_all = ["niveau2", "k", "sub", "quo", "split", "peu", "tres", "frob"])]
    rep: Option<String>,
}

#[derive(Args)]
struct TypeArgs {
    #[arg(long, allow_negative_numbers = true, group = "tame")]
    scalar: Option<i64>,
    /// Principal series exponents `m1,m2`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, group = "tame")]
    ps: Option<Vec<i64>>,
    /// Cuspidal exponent.
    #[arg(long, allow_negative_numbers = true, group = "tame")]
    cusp: Option<i64>,
    /// A JSON type record.
    #[arg(long = "type", group = "tame")]
    ty: Option<String>,
}

#[derive(Args)]
struct CharZeroArgs {
    /// Every representation, in canonical order.
    #[arg(long, group = "czr")]
    all: bool,
    #[arg(long, allow_negative_numbers = true, group = "czr")]
    det: Option<i64>,
    #[arg(long, allow_negative_numbers = true, group = "czr")]
    special: Option<i64>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, group = "czr")]
    ps: Option<Vec<i64>>,
    #[arg(long, allow_negative_numbers = true, group = "czr")]
    cusp: Option<i64>,
}

#[derive(Args)]
struct WeightArgs {
    #[arg(long, allow_negative_numbers = true)]
    m: i64,
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
}

enum Failure {
    Usage(String),
    Verification(Report),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Report {
    text: String,
    json: String,
}

fn js<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

type Outcome = Result<Report, Failure>;

fn prime(p: u64) -> Result<Prime, Failure> {
    Ok(Prime::new(p)?)
}

fn pair(v: &[i64], what: &str) -> Result<(i64, i64), Failure> {
    match v {
        [a, b] => Ok((*a, *b)),
        _ => Err(Failure::Usage(format!("{what} takes exactly two values"))),
    }
}

impl RepArgs {
    fn build(&self, p: Prime) -> Result<LocalModPRep, Failure> {
        if let Some(s) = &self.rep {
            let rec: LocalRepRecord =
                serde_json::from_str(s).map_err(|e| Failure::Usage(format!("bad --rep record: {e}")))?;
            return Ok(LocalModPRep::from_record(p, &rec)?);
        }
        if self.niveau2 {
            if self.sub.is_some() || self.quo.is_some() || self.split || self.peu || self.tres || self.frob.is_some() {
                return Err(Failure::Usage("--niveau2 only takes --k".into()));
            }
            let k = self.k.ok_or_else(|| Failure::Usage("--niveau2 needs --k".into()))?;
            return Ok(LocalModPRep::irreducible(p, k)?);
        }
        if self.k.is_some() {
            return Err(Failure::Usage("--k needs --niveau2".into()));
        }
        let (Some(sub), Some(quo)) = (self.sub, self.quo) else {
            return Err(Failure::Usage("give --niveau2 --k K, or --sub A --quo B, or --rep JSON".into()));
        };
        let ram = match (self.peu, self.tres) {
            (true, _) => Ramification::Peu,
            (_, true) => Ramification::Tres,
            _ => Ramification::NotApplicable,
        };
        let rep = if self.split {
            if ram != Ramification::NotApplicable {
                return Err(Failure::Usage("--peu/--tres describe non-split extensions".into()));
            }
            LocalModPRep::split(p, sub, quo)?
        } else if p.niv1(sub) == p.niv1(quo) && ram == Ramification::NotApplicable {
            LocalModPRep::unramified_extension(p, sub)?
        } else {
            LocalModPRep::nonsplit(p, sub, quo, ram)?
        };
        match &self.frob {
            Some(names) => match names.as_slice() {
                [a, b] => Ok(rep.with_frob_scalars(a, b)?),
                _ => Err(Failure::Usage("--frob takes two names".into())),
            },
            None => Ok(rep),
        }
    }
}

impl TypeArgs {
    fn build(&self, p: Prime) -> Result<Option<TameType>, Failure> {
        if let Some(m) = self.scalar {
            return Ok(Some(TameType::scalar(p, m)));
        }
        if let Some(v) = &self.ps {
            let (a, b) = pair(v, "--ps")?;
            return Ok(Some(TameType::principal(p, a, b)?));
        }
        if let Some(k) = self.cusp {
            return Ok(Some(TameType::cuspidal(p, k)?));
        }
        if let Some(s) = &self.ty {
            let rec: TameTypeRecord =
                serde_json::from_str(s).map_err(|e| Failure::Usage(format!("bad --type record: {e}")))?;
            return Ok(Some(TameType::from_record(p, &rec)?));
        }
        Ok(None)
    }
}

impl CharZeroArgs {
    fn build(&self, p: Prime) -> Result<Vec<CharZeroRep>, Failure> {
        if let Some(m) = self.det {
            return Ok(vec![CharZeroRep::det_char(p, m)]);
        }
        if let Some(m) = self.special {
            return Ok(vec![CharZeroRep::special_twist(p, m)]);
        }
        if let Some(v) = &self.ps {
            let (a, b) = pair(v, "--ps")?;
            return Ok(vec![CharZeroRep::principal_series(p, a, b)?]);
        }
        if let Some(k) = self.cusp {
            return Ok(vec![CharZeroRep::cuspidal(p, k)?]);
        }
        if self.all {
            return Ok(CharZeroRep::enumerate(p));
        }
        Err(Failure::Usage("give one of --all, --det, --special, --ps, --cusp".into()))
    }
}

fn list(ws: impl IntoIterator<Item = SerreWeight>) -> String {
    let parts: Vec<String> = ws.into_iter().map(|w| w.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn cmd_weights(p: u64, rep: &RepArgs) -> Outcome {
    let p = prime(p)?;
    let rep = rep.build(p)?;
    let ws = weight_set(p, &rep);
    Ok(Report {
        text: format!("W({rep}) = {}\n", list(ws.iter().copied())),
        json: js(&json!({ "weights": ws })),
    })
}

fn type_entry(p: Prime, tau: &TameType) -> (String, Value) {
    let sigma = sigma_of_type(tau);
    let jh = jh_of_type(p, tau);
    (
        format!("{tau}: sigma = {sigma}, JH = {jh}\n"),
        json!({ "type": tau, "sigma": sigma.to_string(), "jh": jh }),
    )
}

fn cmd_types(p: u64, ty: &TypeArgs) -> Outcome {
    let p = prime(p)?;
    let types = match ty.build(p)? {
        Some(tau) => vec![tau],
        None => enumerate_types(p),
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    for tau in &types {
        let (t, j) = type_entry(p, tau);
        text.push_str(&t);
        rows.push(j);
    }
    Ok(Report {
        text,
        json: js(&json!({ "p": p.get(), "types": rows })),
    })
}

fn cmd_reduce(p: u64, rep: &CharZeroArgs, verify: bool) -> Outcome {
    let p = prime(p)?;
    let reps = rep.build(p)?;
    let oracle = if verify {
        Some(BrauerOracle::new(p, OracleConfig::default())?)
    } else {
        None
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failed = 0;
    for r in &reps {
        let jh = reduce(p, r);
        let mut row = json!({ "rep": r.to_string(), "dim": r.dim(p), "jh": jh });
        let _ = write!(text, "{r} (dim {}): {jh}", r.dim(p));
        if let Some(o) = &oracle {
            let report = o.verify(r, &jh)?;
            if !report.is_verified() {
                failed += 1;
            }
            row["verification"] = serde_json::to_value(&report).expect("serializable");
            text.push_str(if report.is_verified() { "  [verified]" } else { "  [FAILED]" });
        }
        text.push('\n');
        rows.push(row);
    }
    let report = Report {
        text,
        json: js(&json!({ "p": p.get(), "reductions": rows })),
    };
    if failed > 0 {
        Err(Failure::Verification(report))
    } else {
        Ok(report)
    }
}

fn cmd_pbt(p: u64, rep: &RepArgs, ty: &TypeArgs) -> Outcome {
    let p = prime(p)?;
    let rep = rep.build(p)?;
    let tau = ty
        .build(p)?
        .ok_or_else(|| Failure::Usage("give a type: --scalar, --ps, --cusp or --type".into()))?;
    let verdict = has_pbt_lift(p, &rep, &tau);
    let shapes = allowed_shapes(p, &tau);
    let shown: Vec<String> = shapes.iter().map(|s| s.to_string()).collect();
    Ok(Report {
        text: format!("{rep} with type {tau}: {verdict}\nallowed shapes: {}\n", shown.join(", ")),
        json: js(&json!({ "rep": rep, "type": tau, "verdict": verdict, "allowed_shapes": shapes })),
    })
}

fn trace_report(trace: &serre_core::consistency::ProofTrace) -> Outcome {
    let report = Report {
        text: trace.to_string(),
        json: trace.to_json(),
    };
    match trace.replay() {
        Ok(()) => Ok(report),
        Err(e) => Err(Failure::Verification(Report {
            text: format!("{}replay failed: {e}\n", report.text),
            json: js(&json!({ "trace": trace, "replay_error": e.to_string() })),
        })),
    }
}

fn cmd_eliminate(p: u64, rep: &RepArgs, w: &WeightArgs) -> Outcome {
    let p = prime(p)?;
    let rep = rep.build(p)?;
    let w = SerreWeight::new(p, w.m, w.n)?;
    trace_report(&eliminate(p, &rep, w))
}

fn cmd_certify(p: u64, rep: &RepArgs, w: &WeightArgs) -> Outcome {
    let p = prime(p)?;
    let rep = rep.build(p)?;
    let w = SerreWeight::new(p, w.m, w.n)?;
    match certify(p, &rep, w) {
        Ok(trace) => trace_report(&trace),
        Err(e @ Error::NotInWeightSet { .. }) => Err(Failure::Verification(Report {
            text: format!("cannot certify: {e}\n"),
            json: js(&json!({ "error": e.to_string() })),
        })),
        Err(e) => Err(e.into()),
    }
}

fn cmd_sweep(p: u64) -> Outcome {
    let p = prime(p)?;
    let report = sweep(p)?;
    let mut text = String::new();
    if report.all_pass() {
        let _ = writeln!(text, "AllPass: {} cases", report.cases);
    } else {
        let _ = writeln!(text, "Fail: {} of {} cases", report.failures.len(), report.cases);
        for f in &report.failures {
            let _ = writeln!(text, "  {f}");
        }
    }
    let _ = writeln!(
        text,
        "reps {}, weights {}, in W {}, certified unique {}, certified with closure {}",
        report.reps, report.weights, report.in_weight_set, report.certified_unique, report.certified_with_closure
    );
    let out = Report {
        text,
        json: js(&report),
    };
    if report.all_pass() {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn cmd_sympair(p: u64, r: Option<usize>, trials: usize, seed: u64) -> Outcome {
    let p = prime(p)?;
    let rs: Vec<usize> = match r {
        Some(r) => vec![r],
        None => (1..=p.get() as usize - 2).collect(),
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for r in rs {
        let bracket = check_bracket_identities(p, r)?;
        let equiv = check_pairing_equivariance(p, r)?;
        let ses = ses_check(p, r)?;
        let hecke = hecke_compat_check(p, r, seed, trials)?;
        let passed = bracket.passed() && equiv.passed() && ses.passed() && hecke.passed();
        ok &= passed;
        let mark = |b: bool| if b { "ok" } else { "FAIL" };
        let _ = writeln!(
            text,
            "r = {r}: brackets {}, det^r-equivariance {}, exact sequence {}, hecke {} ({} trials)",
            mark(bracket.passed()),
            mark(equiv.passed()),
            mark(ses.passed()),
            mark(hecke.passed()),
            hecke.trials
        );
        rows.push(json!({
            "r": r,
            "passed": passed,
            "brackets": bracket,
            "equivariance": equiv,
            "ses": ses,
            "hecke": hecke,
        }));
    }
    let report = Report {
        text,
        json: js(&json!({ "p": p.get(), "seed": seed, "results": rows })),
    };
    if ok {
        Ok(report)
    } else {
        Err(Failure::Verification(report))
    }
}

fn cmd_gl3(p: u64) -> Outcome {
    let p = prime(p)?;
    let rows = table_gl3(p)?;
    let mut text = String::new();
    let _ = writeln!(text, "{:<18} {:<16} lift", "weight", "HT");
    let mut ok = true;
    for row in &rows {
        let w = format!("({})", row.weight.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(","));
        let ht = format!("{:?}", row.targets);
        let lift = match &row.found {
            Some(l) => l.to_string(),
            None => "none found".to_string(),
        };
        let note = if !row.weight_valid {
            "  (not a weight for this p)"
        } else if !row.passed() {
            ok = false;
            "  MISMATCH"
        } else if !row.exact {
            "  (V and W coincide here)"
        } else {
            ""
        };
        let _ = writeln!(text, "{w:<18} {ht:<16} {lift}{note}");
    }
    let report = Report {
        text,
        json: js(&json!({ "p": p.get(), "rows": rows })),
    };
    if ok {
        Ok(report)
    } else {
        Err(Failure::Verification(report))
    }
}

fn cmd_ledger(which: &LedgerCmd) -> Outcome {
    match which {
        LedgerCmd::Sigma { sigma, degree, places } => {
            let setup = match places {
                Some(pl) => GlobalSetup::new(*degree, *sigma, pl.clone())?,
                None => GlobalSetup::simple(*degree, *sigma)?,
            };
            let dim = ledger::dim_sigma(&setup);
            let (framed, unframed) = ledger::global_bounds(&setup);
            Ok(Report {
                text: format!(
                    "dim R_Sigma = {dim}\nframed global lower bound = {framed}\nunframed global lower bound = {unframed}\n"
                ),
                json: js(&json!({
                    "setup": setup,
                    "dim_sigma": dim,
                    "from_parts": ledger::dim_sigma_from_parts(&setup),
                    "framed_bound": framed,
                    "unframed_bound": unframed,
                })),
            })
        }
        LedgerCmd::Local { above_p, local_degree } => {
            let d = ledger::dim_local_framed(*above_p, *local_degree)?;
            Ok(Report {
                text: format!("dim framed local ring = {d}\n"),
                json: js(&json!({ "dim": d })),
            })
        }
        LedgerCmd::Unitary { n, mu, degree } => {
            let b = ledger::unitary_bound(*n, *mu, *degree)?;
            Ok(Report {
                text: format!("unitary bound = {}{}\n", b.value, if b.is_one { " (mu = n mod 2)" } else { "" }),
                json: js(&b),
            })
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.cmd {
        Cmd::Weights { p, rep } => cmd_weights(*p, rep),
        Cmd::Types { p, ty } => cmd_types(*p, ty),
        Cmd::Reduce { p, rep, verify } => cmd_reduce(*p, rep, *verify),
        Cmd::Pbt { p, rep, ty } => cmd_pbt(*p, rep, ty),
        Cmd::Eliminate { p, rep, weight } => cmd_eliminate(*p, rep, weight),
        Cmd::Certify { p, rep, weight } => cmd_certify(*p, rep, weight),
        Cmd::Sweep { p } => cmd_sweep(*p),
        Cmd::SympairCheck { p, r, trials } => cmd_sympair(*p, *r, *trials, cli.seed),
        Cmd::Gl3Table { p } => cmd_gl3(*p),
        Cmd::Ledger { which } => cmd_ledger(which),
    }
}

fn emit(format: Format, report: &Report) {
    match format {
        Format::Text => print!("{}", report.text),
        Format::Json => println!("{}", report.json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            emit(cli.format, &report);
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(report)) => {
            emit(cli.format, &report);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
