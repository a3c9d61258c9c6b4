use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use jacquet_cli::config::{truncation_from_env, JobConfig};
use jacquet_cli::corpus::{run_corpus, RunOptions, DEFAULT_DIR};
use jacquet_cli::{execute, JobError, EXIT_CORPUS_MISMATCH, EXIT_CORPUS_SETUP, EXIT_OK};

/// Derived Jacquet modules of Orlik-Strauch representations of SL2(Qp).
#[derive(Parser, Debug)]
#[command(name = "jacquet", version, args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Sub>,
    /// With no subcommand, compute a Jacquet report.
    #[command(flatten)]
    job: JobArgs,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Jacquet report of F(M, psi) for M = M(-k), M(-k)^vee or L(-k).
    Jacquet(JobArgs),
    /// n- or nbar-cohomology of the n-finite dual of M.
    Cohomology(JobArgs),
    /// Check the BGG embedding M(k+2) -> M(-k).
    BggCheck(JobArgs),
    /// Check n-cohomology of L(-k) against Kostant's theorem.
    Kostant(JobArgs),
    /// Bound Ext^1(Ind chi_k psi, I(chi_ell phi)).
    ExtBound(JobArgs),
    /// Check Euler characteristics across the BGG short exact sequence.
    LesCheck(JobArgs),
    /// Golden-file regression corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusAction {
    Run {
        #[arg(long, default_value = DEFAULT_DIR)]
        dir: PathBuf,
        #[arg(long)]
        sequential: bool,
        /// Overwrite golden files with current output.
        #[arg(long)]
        bless: bool,
    },
}

#[derive(Args, Debug, Default)]
struct JobArgs {
    /// key = value file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// verma, dualverma or simple.
    #[arg(long)]
    family: Option<String>,
    /// Even integer k; the module is M(-k), its dual or L(-k).
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    /// Weight of the target principal series for ext-bound.
    #[arg(long, allow_hyphen_values = true)]
    ell: Option<i64>,
    /// n or nbar.
    #[arg(long)]
    direction: Option<String>,
    /// `trivial` or `label=..,val=..,unit=a/b,tzp=..[,selfdual]`.
    #[arg(long)]
    psi: Option<String>,
    /// Target character for ext-bound, same syntax as --psi.
    #[arg(long)]
    phi: Option<String>,
    /// psi-eq-phi, psi-ne-phi, psidelta-eq-phiw, phidelta-ne-phiw, ...
    #[arg(long = "relation")]
    relations: Vec<String>,
    /// Truncation length of infinite modules.
    #[arg(long)]
    trunc: Option<usize>,
    /// Emit the JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Prime used to print numeric eigenvalues.
    #[arg(long)]
    p: Option<u64>,
    /// Answer from the truncation window even if it is not certified.
    #[arg(long)]
    window_only: bool,
}

fn build_config(command: Option<&str>, args: JobArgs) -> Result<JobConfig, JobError> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| JobError::Config(format!("cannot read {}: {e}", path.display())))?;
        pairs = JobConfig::parse_text(&text)?;
    }
    let mut set = |k: &str, v: String| pairs.push((k.to_string(), v));
    if let Some(c) = command {
        set("command", c.to_string());
    }
    if let Some(v) = args.family {
        set("family", v);
    }
    if let Some(v) = args.k {
        set("k", v.to_string());
    }
    if let Some(v) = args.ell {
        set("ell", v.to_string());
    }
    if let Some(v) = args.direction {
        set("direction", v);
    }
    if let Some(v) = args.psi {
        set("psi", v);
    }
    if let Some(v) = args.phi {
        set("phi", v);
    }
    for r in args.relations {
        set("relation", r);
    }
    if let Some(v) = args.trunc {
        set("trunc", v.to_string());
    }
    if args.json {
        set("format", "json".into());
    }
    if let Some(v) = args.p {
        set("p", v.to_string());
    }
    if args.window_only {
        set("policy", "window-only".into());
    }
    if !pairs.iter().any(|(k, _)| k == "command") {
        pairs.insert(0, ("command".into(), "jacquet".into()));
    }
    if !pairs.iter().any(|(k, _)| k == "trunc" || k == "truncation") {
        if let Some(t) = truncation_from_env()? {
            pairs.push(("trunc".into(), t.to_string()));
        }
    }
    JobConfig::from_pairs(pairs.iter().map(|(k, v)| (k.as_str(), v.as_str())))
}

fn run_job_command(command: Option<&str>, args: JobArgs) -> i32 {
    let json = args.json;
    let cfg = match build_config(command, args) {
        Ok(cfg) => cfg,
        Err(e) => {
            if json {
                print!("{}", e.document().to_json());
            }
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let out = execute(&cfg);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.exit_code
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        None => run_job_command(None, cli.job),
        Some(Sub::Jacquet(a)) => run_job_command(Some("jacquet"), a),
        Some(Sub::Cohomology(a)) => run_job_command(Some("cohomology"), a),
        Some(Sub::BggCheck(a)) => run_job_command(Some("bgg-check"), a),
        Some(Sub::Kostant(a)) => run_job_command(Some("kostant"), a),
        Some(Sub::ExtBound(a)) => run_job_command(Some("ext-bound"), a),
        Some(Sub::LesCheck(a)) => run_job_command(Some("les-check"), a),
        Some(Sub::Corpus {
            action:
                CorpusAction::Run {
                    dir,
                    sequential,
                    bless,
                },
        }) => match run_corpus(&dir, RunOptions { sequential, bless }) {
            Ok(summary) => {
                print!("{}", summary.render());
                if summary.passed() {
                    EXIT_OK
                } else {
                    EXIT_CORPUS_MISMATCH
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_CORPUS_SETUP
            }
        },
    };
    ExitCode::from(code as u8)
}
