//! Argument parsing and dispatch. Every command prints one JSON document on
//! standard output, or nothing and a message on standard error.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use genreg::abcat::{find_retraction, is_mono, FpObject, Morphism, DEFAULT_BUDGET};
use genreg::coalg::{self, FiniteCoalgebra};
use genreg::graded::{self, GradedAlgebra};
use genreg::matops::{hnf, snf};
use genreg::regular::{
    end_ring_with_budget, generalized_inverse, regular_object_report, regular_pair_report, sample_regular_pair,
    FiniteRing,
};
use genreg::{Error, ExactMatrix, Ring};
use serde_json::{json, Value as Json};

use crate::suites;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "genreg", version, about = "Generalized inverses and relative regularity in concrete categories")]
pub struct Cli {
    /// Enumeration budget (largest hom-set or ring walked exhaustively)
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// regular-pair: check this many seeded random morphisms instead of all
    #[arg(long, global = true)]
    pub sample: Option<u64>,
    /// Seed for sampled checks and the verify suites
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Add "elapsed_ms" to the output (makes it time dependent)
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generalized inverse of a morphism
    Geninv { morphism: PathBuf },
    /// Step-by-step construction of a generalized inverse
    Explain { morphism: PathBuf },
    /// Is M U-regular?
    RegularPair { u: PathBuf, m: PathBuf },
    /// Is M regular over its base ring?
    RegularObject { m: PathBuf },
    /// Is the image of a monomorphism a direct summand?
    Summand { morphism: PathBuf },
    /// Smith normal form of an integer matrix
    Snf { matrix: PathBuf },
    /// Hermite normal form of an integer matrix
    Hnf { matrix: PathBuf },
    /// Endomorphism ring of a finite object
    Endring { object: PathBuf },
    /// Is a finite ring von Neumann regular?
    Vnregular { ring: PathBuf },
    /// Is a finite ring semiprime?
    Semiprime { ring: PathBuf },
    /// Jacobson radical of a finite ring
    Radical { ring: PathBuf },
    /// Is a graded algebra gr-regular?
    Grreg { algebra: PathBuf },
    /// Smash product of a graded algebra with its grading group
    Smash { algebra: PathBuf },
    /// Is R(σ) R-regular among graded modules? (all σ unless given)
    SuspensionRegular {
        algebra: PathBuf,
        #[arg(long)]
        sigma: Option<usize>,
    },
    /// Is a coalgebra (given by its dual algebra) cosemisimple?
    Cosemisimple { coalgebra: PathBuf },
    /// Run a theorem-verification suite
    Verify {
        /// basic-transfer, char-equivalence, direct-sum, central-lemma,
        /// regular-objects, end-rings, graded, coalgebra or all
        suite: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Geninv { .. } => "geninv",
            Command::Explain { .. } => "explain",
            Command::RegularPair { .. } => "regular-pair",
            Command::RegularObject { .. } => "regular-object",
            Command::Summand { .. } => "summand",
            Command::Snf { .. } => "snf",
            Command::Hnf { .. } => "hnf",
            Command::Endring { .. } => "endring",
            Command::Vnregular { .. } => "vnregular",
            Command::Semiprime { .. } => "semiprime",
            Command::Radical { .. } => "radical",
            Command::Grreg { .. } => "grreg",
            Command::Smash { .. } => "smash",
            Command::SuspensionRegular { .. } => "suspension-regular",
            Command::Cosemisimple { .. } => "cosemisimple",
            Command::Verify { .. } => "verify",
        }
    }
}

/// What a command produced: the JSON document and the exit code.
pub struct Outcome {
    pub code: i32,
    pub stdout: Option<String>,
    pub stderr: Option<String>,
}

/// Failure while running a command.
enum Failure {
    Input(String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn read_json(path: &Path) -> Res<Json> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: invalid JSON: {e}", path.display())))
}

fn ring_summary(ring: &FiniteRing) -> Res<Json> {
    let table = if ring.order() <= genreg::regular::TABLE_LIMIT { Some(ring.to_table()?.to_json()?) } else { None };
    Ok(json!({
        "order": ring.order(),
        "vn_regular": ring.is_vn_regular()?,
        "semiprime": ring.is_semiprime(),
        "ring": table,
    }))
}

fn bigint_json(v: &num_bigint::BigInt) -> Json {
    Ring::Integer.from_bigint(v).to_json()
}

/// Runs a parsed command; `(result fields, exit code)`.
fn execute(cli: &Cli) -> Res<(Json, i32)> {
    let budget = cli.budget;
    let verdict = |v: Json| Ok((v, EXIT_OK));
    match &cli.command {
        Command::Geninv { morphism } => {
            let f = Morphism::from_json(&read_json(morphism)?)?;
            if !f.is_additive() {
                let h = genreg::abcat::geninv_function(&f)?;
                return verdict(json!({"result": h.to_json()}));
            }
            let r = generalized_inverse(&f)?;
            verdict(json!({
                "result": r.h.as_ref().map_or(Json::Null, Morphism::to_json),
                "obstruction": r.obstruction.map(|o| o.as_str()),
            }))
        }
        Command::Explain { morphism } => {
            let f = Morphism::from_json(&read_json(morphism)?)?;
            if !f.is_additive() {
                return Err(Error::NotAdditive.into());
            }
            verdict(generalized_inverse(&f)?.trace()?)
        }
        Command::RegularPair { u, m } => {
            let u = FpObject::from_json(&read_json(u)?)?;
            let m = FpObject::from_json(&read_json(m)?)?;
            let r = match cli.sample {
                Some(n) => sample_regular_pair(&u, &m, n, cli.seed)?,
                None => regular_pair_report(&u, &m, budget)?,
            };
            verdict(r.to_json())
        }
        Command::RegularObject { m } => {
            let m = FpObject::from_json(&read_json(m)?)?;
            verdict(regular_object_report(&m, budget)?.to_json())
        }
        Command::Summand { morphism } => {
            let i = Morphism::from_json(&read_json(morphism)?)?;
            if !is_mono(&i)? {
                return verdict(json!({"result": false, "obstruction": "not-mono"}));
            }
            let r = find_retraction(&i)?;
            verdict(json!({
                "result": r.is_some(),
                "retraction": r.as_ref().map_or(Json::Null, Morphism::to_json),
            }))
        }
        Command::Snf { matrix } => {
            let a = ExactMatrix::from_json(&read_json(matrix)?)?;
            let s = snf(&a)?;
            verdict(json!({"result": {
                "invariant_factors": s.invariant_factors.iter().map(bigint_json).collect::<Vec<_>>(),
                "d": s.d.to_json(),
                "p": s.p.to_json(),
                "q": s.q.to_json(),
            }}))
        }
        Command::Hnf { matrix } => {
            let a = ExactMatrix::from_json(&read_json(matrix)?)?;
            let (h, u) = hnf(&a)?;
            verdict(json!({"result": {"h": h.to_json(), "u": u.to_json()}}))
        }
        Command::Endring { object } => {
            let m = FpObject::from_json(&read_json(object)?)?;
            verdict(json!({"result": ring_summary(&end_ring_with_budget(&m, budget)?)?}))
        }
        Command::Vnregular { ring } => {
            let r = FiniteRing::from_json(&read_json(ring)?)?;
            let bad = r.vn_regular_counterexample()?;
            verdict(json!({"result": bad.is_none(), "counterexample": bad}))
        }
        Command::Semiprime { ring } => {
            let r = FiniteRing::from_json(&read_json(ring)?)?;
            let bad = r.semiprime_counterexample();
            verdict(json!({"result": bad.is_none(), "counterexample": bad}))
        }
        Command::Radical { ring } => {
            let r = FiniteRing::from_json(&read_json(ring)?)?;
            verdict(json!({"result": r.jacobson_radical()?}))
        }
        Command::Grreg { algebra } => {
            let a = GradedAlgebra::from_json(&read_json(algebra)?)?;
            let bad = graded::gr_regular_counterexample(&a, budget)?;
            verdict(json!({
                "result": bad.is_none(),
                "counterexample": bad.map(|(deg, x)| json!({"degree": deg, "element": x})),
            }))
        }
        Command::Smash { algebra } => {
            let a = GradedAlgebra::from_json(&read_json(algebra)?)?;
            verdict(json!({"result": ring_summary(&graded::smash_product(&a)?)?}))
        }
        Command::SuspensionRegular { algebra, sigma } => {
            let a = GradedAlgebra::from_json(&read_json(algebra)?)?;
            let order = a.group().order();
            match sigma {
                Some(s) if *s >= order => Err(Failure::Input(format!("sigma {s} is not an element of a group of order {order}"))),
                Some(s) => verdict(json!({"result": graded::is_suspension_regular(&a, *s)?})),
                None => {
                    let each = (0..order).map(|s| graded::is_suspension_regular(&a, s)).collect::<genreg::Result<Vec<_>>>()?;
                    verdict(json!({"result": each.iter().all(|&x| x), "per_sigma": each}))
                }
            }
        }
        Command::Cosemisimple { coalgebra } => {
            let c = FiniteCoalgebra::from_json(&read_json(coalgebra)?)?;
            let cosemisimple = coalg::is_cosemisimple(&c)?;
            let regular = coalg::is_regular_comodule_self(&c)?;
            verdict(json!({"result": cosemisimple, "regular_comodule": regular, "agree": cosemisimple == regular}))
        }
        Command::Verify { suite } => {
            if suite != "all" && !suites::SUITES.contains(&suite.as_str()) {
                return Err(Failure::Input(format!("unknown suite `{suite}`")));
            }
            let opts = suites::Options { seed: cli.seed, budget };
            let reports = suites::run(suite, opts)?;
            let doc = suites::report_json(suite, opts, &reports);
            let code = if reports.iter().all(suites::Report::passed) { EXIT_OK } else { EXIT_FAILED };
            Ok((json!({"result": doc}), code))
        }
    }
}

/// Parses `argv` and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: None, stderr: Some(text) }
            } else {
                Outcome { code, stdout: Some(text), stderr: None }
            };
        }
    };
    let start = Instant::now();
    match execute(&cli) {
        Ok((fields, code)) => {
            let mut doc = json!({"command": cli.command.name()});
            if let Json::Object(map) = fields {
                for (k, v) in map {
                    doc[k] = v;
                }
            }
            if cli.timing {
                doc["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
            }
            let text = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
            Outcome { code, stdout: Some(text), stderr: None }
        }
        Err(Failure::Input(msg)) => Outcome { code: EXIT_INPUT, stdout: None, stderr: Some(format!("error: {msg}")) },
        Err(Failure::Library(e)) => {
            let code = if matches!(e, Error::TooLarge { .. }) { EXIT_BUDGET } else { EXIT_INPUT };
            Outcome { code, stdout: None, stderr: Some(format!("error: {e}")) }
        }
    }
}
