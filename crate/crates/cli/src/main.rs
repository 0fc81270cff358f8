//! `relmod`: compute with finitely generated modules over `Z` and `Z/n`.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use relmod_core::adic;
use relmod_core::cohomology;
use relmod_core::functors;
use relmod_core::verify::{all_claim_ids, run_suite};
use relmod_core::{
    parse_ideal, parse_module, Error, GridSpec, Ideal, Presentation, RingSpec, GRAMMAR,
};

const EXIT_OTHER: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NON_STABILIZING: u8 = 3;
const EXIT_UNEXPECTED: u8 = 4;

#[derive(Parser)]
#[command(
    name = "relmod",
    version,
    about = "Exact module computations over Z and Z/n"
)]
struct Cli {
    /// Base ring: `Z` or `Z/<n>`.
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Ideal generators, comma separated, e.g. `2` or `4,6`.
    #[arg(long, global = true)]
    ideal: Option<String>,
    /// Largest adic exponent tried before giving up on stabilization.
    #[arg(long, global = true, default_value_t = adic::DEFAULT_KMAX)]
    kmax: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    JsonLines,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical form `Z^r + Z/d1 + ...` of a module expression.
    Canon { expr: String },
    /// Hom(M, N).
    Hom { m: String, n: String },
    /// M ⊗ N.
    Tensor { m: String, n: String },
    /// Matlis dual.
    Dual { n: String },
    /// Ext^i(M, N).
    Ext { i: usize, m: String, n: String },
    /// Tor_i(M, N).
    Tor { i: usize, m: String, n: String },
    /// a-torsion Γ_a(N).
    Gamma { n: String },
    /// a-adic completion Λ_a(N).
    Lambda { n: String },
    /// Γ_a(M, N) = Γ_a(Hom(M, N)).
    Gammagen { m: String, n: String },
    /// Λ_a(M, N) = Λ_a(M ⊗ N).
    Lambdagen { m: String, n: String },
    /// Reducedness predicates.
    Check {
        #[command(subcommand)]
        predicate: Predicate,
    },
    /// Generalized local cohomology H^i_a(M, N).
    Glc { i: usize, m: String, n: String },
    /// Generalized local homology H^a_i(M, N).
    Glh { i: usize, m: String, n: String },
    /// Check claims exhaustively on bounded grids.
    Verify {
        /// Claim ids, comma separated; all claims when omitted.
        #[arg(long, value_delimiter = ',')]
        claims: Option<Vec<String>>,
        /// JSON grid document: one grid object or an array of them.
        #[arg(long)]
        grid: Option<std::path::PathBuf>,
    },
}

#[derive(Subcommand)]
enum Predicate {
    /// a²x = 0 implies ax = 0 in N.
    Reduced { n: String },
    /// aN = a²N.
    Coreduced { n: String },
    /// Hom(M, N) is a-reduced.
    ReducedWrt { m: String, n: String },
    /// M ⊗ N is a-coreduced.
    CoreducedWrt { m: String, n: String },
}

enum Failure {
    Usage(String),
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::EmptyGeneratorList
            | Error::InvalidModulus(_)
            | Error::UnknownClaim(_) => Failure::Usage(e.to_string()),
            e => Failure::Lib(e),
        }
    }
}

struct Env {
    ring: RingSpec,
    ideal: Option<String>,
    kmax: usize,
}

impl Env {
    fn module(&self, src: &str) -> Result<Presentation, Failure> {
        Ok(parse_module(self.ring, src)?)
    }

    fn ideal(&self) -> Result<Ideal, Failure> {
        let src = self
            .ideal
            .as_deref()
            .ok_or_else(|| Failure::Usage("this command needs --ideal".into()))?;
        Ok(parse_ideal(self.ring, src)?)
    }
}

enum Output {
    Module(Presentation),
    Bool(bool),
    Suite { text: String, all_expected: bool },
}

fn parse_ring(src: Option<&str>) -> Result<RingSpec, Failure> {
    Ok(src.unwrap_or("Z").parse::<RingSpec>()?)
}

fn load_grids(path: &std::path::Path) -> Result<Vec<GridSpec>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("grid file: {e}")))?;
    let grids = if value.is_array() {
        serde_json::from_value(value)
    } else {
        serde_json::from_value(value).map(|g| vec![g])
    };
    grids.map_err(|e| Failure::Usage(format!("grid file: {e}")))
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let env = Env {
        ring: parse_ring(cli.ring.as_deref())?,
        ideal: cli.ideal.clone(),
        kmax: cli.kmax,
    };
    let module = |m: Result<Presentation, Error>| m.map(Output::Module).map_err(Failure::from);
    match &cli.command {
        Command::Canon { expr } => Ok(Output::Module(env.module(expr)?)),
        Command::Hom { m, n } => module(functors::hom_module(&env.module(m)?, &env.module(n)?)),
        Command::Tensor { m, n } => {
            module(functors::tensor_module(&env.module(m)?, &env.module(n)?))
        }
        Command::Dual { n } => module(functors::matlis_dual(&env.module(n)?)),
        Command::Ext { i, m, n } => module(functors::ext(*i, &env.module(m)?, &env.module(n)?)),
        Command::Tor { i, m, n } => module(functors::tor(*i, &env.module(m)?, &env.module(n)?)),
        Command::Gamma { n } => {
            module(adic::gamma(&env.module(n)?, &env.ideal()?).map(|r| r.value))
        }
        Command::Lambda { n } => {
            module(adic::lambda(&env.module(n)?, &env.ideal()?, env.kmax).map(|r| r.value))
        }
        Command::Gammagen { m, n } => module(adic::gamma_gen(
            &env.module(m)?,
            &env.module(n)?,
            &env.ideal()?,
        )),
        Command::Lambdagen { m, n } => module(adic::lambda_gen(
            &env.module(m)?,
            &env.module(n)?,
            &env.ideal()?,
            env.kmax,
        )),
        Command::Check { predicate } => {
            let a = env.ideal()?;
            let b = match predicate {
                Predicate::Reduced { n } => adic::is_reduced(&env.module(n)?, &a)?,
                Predicate::Coreduced { n } => adic::is_coreduced(&env.module(n)?, &a)?,
                Predicate::ReducedWrt { m, n } => {
                    adic::is_reduced_wrt(&env.module(m)?, &env.module(n)?, &a)?
                }
                Predicate::CoreducedWrt { m, n } => {
                    adic::is_coreduced_wrt(&env.module(m)?, &env.module(n)?, &a)?
                }
            };
            Ok(Output::Bool(b))
        }
        Command::Glc { i, m, n } => module(cohomology::glc(
            *i,
            &env.module(m)?,
            &env.module(n)?,
            &env.ideal()?,
            env.kmax,
        )),
        Command::Glh { i, m, n } => module(cohomology::glh(
            *i,
            &env.module(m)?,
            &env.module(n)?,
            &env.ideal()?,
            env.kmax,
        )),
        Command::Verify { claims, grid } => {
            let grids = match grid {
                Some(path) => load_grids(path)?,
                None => match cli.ring.as_deref() {
                    Some(_) if env.ring.is_integers() => vec![GridSpec::default_integers()],
                    Some(_) => {
                        let n = env.ring.modulus().expect("modular ring").to_string();
                        vec![GridSpec::default_modular(n.parse().map_err(|_| {
                            Failure::Usage(format!("no default grid for {}", env.ring))
                        })?)?]
                    }
                    None => GridSpec::defaults(),
                },
            };
            let ids: Vec<&str> = match claims {
                Some(list) => list.iter().map(String::as_str).collect(),
                None => all_claim_ids(),
            };
            let suite = run_suite(&grids, &ids)?;
            let text = match cli.format {
                Format::Text => suite.to_text(),
                Format::JsonLines => suite.to_json_lines(),
            };
            Ok(Output::Suite {
                text,
                all_expected: suite.all_expected(),
            })
        }
    }
}

fn print_value(format: Format, value: &str) {
    match format {
        Format::Text => println!("{value}"),
        Format::JsonLines => println!("{}", serde_json::json!({ "result": value })),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            if !usage {
                return ExitCode::SUCCESS;
            }
            eprintln!("\n{GRAMMAR}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(Output::Module(p)) => {
            print_value(format, &p.canonical().to_string());
            ExitCode::SUCCESS
        }
        Ok(Output::Bool(b)) => {
            print_value(format, &b.to_string());
            ExitCode::SUCCESS
        }
        Ok(Output::Suite { text, all_expected }) => {
            print!("{text}");
            if all_expected {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_UNEXPECTED)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\n{GRAMMAR}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e @ Error::NonStabilizing { .. })) => {
            eprintln!("error: NonStabilizing: {e}");
            ExitCode::from(EXIT_NON_STABILIZING)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_OTHER)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_OTHER)
        }
    }
}
