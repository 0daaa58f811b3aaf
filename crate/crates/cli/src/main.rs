//! `minvar`: build the ideals, construct candidate sets, verify them and
//! print the bounds table.
//!
//! Exit codes: 0 success or proved, 1 refuted, 2 usage error, 3 resources
//! exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use minvar::constructions::EquationSet;
use minvar::error::{FieldSpecError, IdealError, SpecError, VerifyError};
use minvar::ideal::{intersect, Ideal};
use minvar::minvar::{
    bounds_oracle, build_ideal_is, build_ideal_j, build_ideal_lst, prime_components, BarredMatrix, BarredMatrixSpec,
    BoundsReport, Identification,
};
use minvar::poly::{CoefficientField, Field, PrimeField, Rationals, TermOrder, DEFAULT_PRIME};
use minvar::verify::{build_set, verify_defining_set, Method, SetSource, Verdict, VerifyOptions};

const EXIT_REFUTED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCES: u8 = 3;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Field(#[from] FieldSpecError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("{0}")]
    Ideal(#[from] IdealError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Ideal(IdealError::Groebner(minvar::error::GroebnerError::ResourceLimit { .. })) => EXIT_RESOURCES,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "minvar",
    version,
    about = "Exact verification of defining equations for barred-matrix varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long)]
    s: usize,
    #[arg(long)]
    t: usize,
    /// distinct, bar, or custom:x2s=y0,zI=yJ,...
    #[arg(long, default_value = "distinct")]
    ident: Identification,
    /// q or fp:P
    #[arg(long, default_value_t = CoefficientField::Prime(DEFAULT_PRIME))]
    field: CoefficientField,
    /// degrevlex or lex
    #[arg(long, default_value = "degrevlex")]
    order: TermOrder,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Reduction budget per Gröbner computation.
    #[arg(long, default_value_t = minvar::groebner::DEFAULT_BUDGET)]
    budget: u64,
    /// Also write the result as JSON to this file.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum IdealKind {
    J,
    Is,
    Lst,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the generators of J_{s,t}, I_s or L_{s,t}.
    Genideal {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "j")]
        kind: IdealKind,
    },
    /// Print a candidate defining set, one polynomial per line.
    Construct {
        #[command(flatten)]
        common: Common,
        /// s2, s2-homog, thm7 or explicit
        #[arg(long)]
        method: Method,
    },
    /// Verify that a candidate set defines V(J_{s,t}).
    Verify {
        #[command(flatten)]
        common: Common,
        /// s2, s2-homog, thm7 or explicit
        #[arg(long, conflicts_with = "eqs", required_unless_present = "eqs")]
        method: Option<Method>,
        /// File with one polynomial per line; `#` starts a comment.
        #[arg(long)]
        eqs: Option<PathBuf>,
    },
    /// Print height, arithmetical-rank bounds and cohomological dimension.
    Bounds {
        /// Omit both --s and --t for the table 2 <= s <= 6, 1 <= t <= 6.
        #[arg(long, requires = "t")]
        s: Option<usize>,
        #[arg(long, requires = "s")]
        t: Option<usize>,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the prime components and check their intersection against J.
    Decompose {
        #[command(flatten)]
        common: Common,
    },
    /// Run a few fast end-to-end checks.
    Selftest,
}

macro_rules! on_field {
    ($field:expr, $f:ident => $body:expr) => {
        match $field {
            CoefficientField::Rational => {
                let $f = Rationals;
                $body
            }
            CoefficientField::Prime(p) => {
                let $f = PrimeField::new(p)?;
                $body
            }
        }
    };
}

fn write_json(path: &Option<PathBuf>, value: &serde_json::Value) -> Result<(), CliError> {
    if let Some(path) = path {
        let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
        fs::write(path, text + "\n").map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }
    Ok(())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

impl Common {
    fn spec(&self) -> Result<BarredMatrixSpec, CliError> {
        Ok(BarredMatrixSpec::new(self.s, self.t, self.ident.clone())?)
    }

    fn matrix<F: Field>(&self, field: F) -> Result<BarredMatrix<F>, CliError> {
        Ok(BarredMatrix::new(&self.spec()?, field, self.order.clone()))
    }

    fn spec_json(&self) -> serde_json::Value {
        json!({
            "s": self.s,
            "t": self.t,
            "ident": self.ident.to_string(),
            "field": self.field.to_string(),
            "order": self.order.name(),
        })
    }
}

fn genideal<F: Field>(common: &Common, field: F, kind: IdealKind) -> Result<u8, CliError> {
    let m = common.matrix(field)?;
    let (name, ideal) = match kind {
        IdealKind::J => ("J", build_ideal_j(&m)),
        IdealKind::Is => ("I", build_ideal_is(&m)),
        IdealKind::Lst => ("L", build_ideal_lst(&m)?),
    };
    let gens: Vec<String> = ideal.generators().iter().map(|g| g.to_string()).collect();
    println!(
        "# {name}_{{{},{}}} in {}",
        m.s(),
        m.t(),
        m.ring().vars().names().join(",")
    );
    for g in &gens {
        println!("{g}");
    }
    write_json(
        &common.json,
        &json!({ "spec": common.spec_json(), "ideal": name, "generators": gens }),
    )?;
    Ok(0)
}

fn print_set<F: Field>(set: &EquationSet<F>) {
    println!("# {}", set.label);
    for p in &set.polys {
        println!("{p}");
    }
}

fn construct<F: Field>(common: &Common, field: F, method: Method) -> Result<u8, CliError> {
    let m = common.matrix(field)?;
    let set = build_set(&m, &SetSource::Method(method))?;
    print_set(&set);
    write_json(
        &common.json,
        &json!({
            "spec": common.spec_json(),
            "set": set.label,
            "polys": set.to_strings(),
            "metadata": set.metadata,
        }),
    )?;
    Ok(0)
}

fn verify<F: Field>(common: &Common, field: F, source: &SetSource) -> Result<u8, CliError> {
    let m = common.matrix(field)?;
    let set = build_set(&m, source)?;
    let opts = VerifyOptions {
        budget: common.budget,
        jobs: common.jobs,
    };
    let cert = verify_defining_set(&m, &set, &opts)?;
    println!("set: {} ({} polynomials)", cert.set, cert.polys.len());
    println!(
        "containment: {}/{} in J",
        cert.containment.iter().filter(|c| c.member).count(),
        cert.containment.len()
    );
    if !cert.steps.is_empty() {
        let ok = cert
            .steps
            .iter()
            .filter(|s| s.outcome == minvar::verify::StepOutcome::Proved)
            .count();
        println!("hints: {ok}/{} checked", cert.steps.len());
    }
    println!(
        "radical: {}/{} generators of J in the radical",
        cert.radical.iter().filter(|r| r.in_radical).count(),
        cert.radical.len()
    );
    if let Some(w) = &cert.witness {
        println!("witness: {w}");
    }
    println!("verdict: {} ({} ms)", cert.verdict, cert.ms);
    if let Some(path) = &common.json {
        fs::write(path, cert.to_json() + "\n").map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }
    Ok(match cert.verdict {
        Verdict::Proved => 0,
        Verdict::Refuted => EXIT_REFUTED,
        Verdict::ResourcesExceeded => EXIT_RESOURCES,
    })
}

fn bounds_row(r: &BoundsReport) -> String {
    let exact = r.ara_exact.map_or("-".to_string(), |e| e.to_string());
    format!(
        "{:>2} {:>2} {:>6} {:>6} {:>9} {:>9} {:>9} {:>3}",
        r.s, r.t, r.characteristic, r.height, r.ara_lower, r.ara_upper, exact, r.cd
    )
}

fn bounds(
    s: Option<usize>,
    t: Option<usize>,
    characteristic: u64,
    json_path: &Option<PathBuf>,
) -> Result<u8, CliError> {
    let pairs: Vec<(usize, usize)> = match (s, t) {
        (Some(s), Some(t)) => vec![(s, t)],
        _ => (2..=6).flat_map(|s| (1..=6).map(move |t| (s, t))).collect(),
    };
    let reports = pairs
        .into_iter()
        .map(|(s, t)| bounds_oracle(s, t, characteristic))
        .collect::<Result<Vec<_>, _>>()?;
    println!(" s  t   char height ara_lower ara_upper ara_exact  cd");
    for r in &reports {
        println!("{}", bounds_row(r));
    }
    write_json(json_path, &json!(reports))?;
    Ok(0)
}

fn decompose<F: Field>(common: &Common, field: F) -> Result<u8, CliError> {
    let m = common.matrix(field)?;
    let budget = minvar::groebner::GroebnerOptions::with_budget(common.budget);
    let comps: Vec<Ideal<F>> = prime_components(&m)?
        .into_iter()
        .map(|c| c.with_options(budget))
        .collect();
    let mut rows = Vec::new();
    for (i, c) in comps.iter().enumerate() {
        let gens: Vec<String> = c.generators().iter().map(|g| g.to_string()).collect();
        println!("J_{i} = ({})", gens.join(", "));
        rows.push(gens);
    }
    let mut acc = comps[0].clone();
    for c in &comps[1..] {
        acc = intersect(&acc, c)?;
    }
    let equal = acc.same_ideal(&build_ideal_j(&m).with_options(budget))?;
    println!("intersection equals J: {equal}");
    write_json(
        &common.json,
        &json!({ "spec": common.spec_json(), "components": rows, "intersection_equals_j": equal }),
    )?;
    Ok(if equal { 0 } else { EXIT_REFUTED })
}

fn selftest() -> Result<u8, CliError> {
    let start = Instant::now();
    let mut failures = 0;
    let mut report = |name: &str, ok: bool| {
        println!("{} {name}", if ok { "ok  " } else { "FAIL" });
        if !ok {
            failures += 1;
        }
    };
    let opts = VerifyOptions::default();
    for (s, t, method) in [
        (2, 1, Method::S2),
        (2, 2, Method::S2Homog),
        (3, 1, Method::Explicit),
        (3, 1, Method::Thm7),
    ] {
        let m = BarredMatrix::new(
            &BarredMatrixSpec::distinct(s, t)?,
            PrimeField::default(),
            TermOrder::DegRevLex,
        );
        let set = build_set(&m, &SetSource::Method(method))?;
        let cert = verify_defining_set(&m, &set, &opts)?;
        report(&format!("verify {method} s={s} t={t}"), cert.verdict == Verdict::Proved);
    }
    let m = BarredMatrix::new(
        &BarredMatrixSpec::distinct(2, 1)?,
        PrimeField::default(),
        TermOrder::DegRevLex,
    );
    let set = build_set(&m, &SetSource::Text("x1*z1".into()))?;
    let cert = verify_defining_set(&m, &set, &opts)?;
    report("refute (x1*z1) s=2 t=1", cert.verdict == Verdict::Refuted);
    let r = bounds_oracle(2, 5, 0)?;
    report("bounds s=2 t=5 char 0", r.ara_exact == Some(6) && r.cd == 6);
    let comps = prime_components(&m)?;
    let meet = intersect(&comps[0], &comps[1])?;
    report("decompose s=2 t=1", meet.same_ideal(&build_ideal_j(&m))?);
    println!("{} failures in {} ms", failures, start.elapsed().as_millis());
    Ok(if failures == 0 { 0 } else { EXIT_REFUTED })
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Genideal { common, kind } => on_field!(common.field, f => genideal(&common, f, kind)),
        Command::Construct { common, method } => on_field!(common.field, f => construct(&common, f, method)),
        Command::Verify { common, method, eqs } => {
            let source = match (method, eqs) {
                (Some(m), None) => SetSource::Method(m),
                (None, Some(path)) => SetSource::Text(read(&path)?),
                _ => return Err(CliError::Usage("give exactly one of --method and --eqs".into())),
            };
            on_field!(common.field, f => verify(&common, f, &source))
        }
        Command::Bounds {
            s,
            t,
            characteristic,
            json,
        } => bounds(s, t, characteristic, &json),
        Command::Decompose { common } => on_field!(common.field, f => decompose(&common, f)),
        Command::Selftest => selftest(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
