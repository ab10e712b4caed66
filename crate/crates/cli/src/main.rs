use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mbig_cli::corpus::{cmd_corpus, parse_range, CorpusArgs};
use mbig_cli::{cmd_audit, cmd_check, cmd_torus, Caps, CheckArgs, CliError, Outcome, TorusArgs};
use mbig_core::cohomology::DEFAULT_COCYCLE_BUDGET;
use mbig_core::matgroup::DEFAULT_ELEMENT_CAP;
use mbig_core::modrep::{DEFAULT_CHOP_BUDGET, DEFAULT_SUBMODULE_CAP};
use mbig_core::rootdata::DEFAULT_SEARCH_CAP;

/// Decide m-bigness of finite matrix groups and search split tori for
/// highly regular elements.
#[derive(Parser)]
#[command(name = "mbig", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify a group given as JSON; exit 0 BIG, 1 NOT_BIG, 2 INDETERMINATE.
    Check {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        m: u64,
        #[command(flatten)]
        common: Common,
        /// Also write the submodule bases with the certificate.
        #[arg(long)]
        witnesses: Option<PathBuf>,
    },
    /// Find the first highly m-regular point of a split torus.
    Torus(TorusCli),
    /// Exact counts behind the torus existence argument.
    Audit(TorusCli),
    /// Verdict table for Sym^k of SL2(F_l).
    Corpus {
        #[arg(long, default_value = "5..31")]
        l_range: String,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        sym_powers: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        m_list: Vec<u64>,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, env = "MBIG_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
    cap_elements: usize,
    #[arg(long, default_value_t = DEFAULT_SUBMODULE_CAP)]
    cap_submodules: usize,
    #[arg(long, default_value_t = DEFAULT_COCYCLE_BUDGET)]
    cap_cocycle: usize,
    #[arg(long, default_value_t = DEFAULT_CHOP_BUDGET)]
    meataxe_budget: usize,
    /// Nonzero exit when any verdict is INDETERMINATE.
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn caps(&self) -> Caps {
        Caps {
            elements: self.cap_elements,
            submodules: self.cap_submodules,
            cocycle: self.cap_cocycle,
            meataxe: self.meataxe_budget,
        }
    }
}

#[derive(Args)]
struct TorusCli {
    /// Root datum: A1, A2, B2 or a product such as A1xA1.
    #[arg(long = "type")]
    datum: String,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    m: u64,
    /// Weights of norm strictly below this bound.
    #[arg(long)]
    norm: u64,
    #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
    cap_search: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl TorusCli {
    fn args(&self) -> TorusArgs {
        TorusArgs {
            cap: self.cap_search,
            out: self.out.clone(),
            ..TorusArgs::new(&self.datum, self.q, self.m, self.norm)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Check {
            group,
            m,
            common,
            witnesses,
        } => cmd_check(&CheckArgs {
            group,
            m,
            seed: common.seed,
            caps: common.caps(),
            out: common.out.clone(),
            witnesses,
        }),
        Command::Torus(t) => cmd_torus(&t.args()),
        Command::Audit(t) => cmd_audit(&t.args()),
        Command::Corpus {
            l_range,
            sym_powers,
            m_list,
            common,
            workers,
        } => cmd_corpus(&CorpusArgs {
            l_range: parse_range(&l_range)?,
            sym_powers,
            m_list,
            seed: common.seed,
            caps: common.caps(),
            workers,
            strict: common.strict,
            out: common.out.clone(),
        }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(mbig_cli::EXIT_USAGE as u8);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("mbig: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
