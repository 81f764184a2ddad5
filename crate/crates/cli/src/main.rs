//! `qaffine`: every computation and verification of the library as a
//! subcommand, with deterministic JSON, plain or CSV output.
//!
//! Exit status is 0 when the requested check passes, 1 when it fails and 2
//! on a usage error.

mod commands;
mod output;
mod suite;

use std::io;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qaffine_core::Fault;

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "qaffine", version, about = "Exact checks for Macdonald, Hecke and quantum affine sl2 identities")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Inject a known defect; the affected check must then fail.
    #[arg(long, global = true, value_parser = parse_fault)]
    pub inject: Option<Fault>,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_fault(s: &str) -> Result<Fault, String> {
    s.parse::<Fault>().map_err(|_| {
        let names: Vec<&str> = Fault::ALL.iter().map(|f| f.name()).collect();
        format!("unknown fault `{s}`; expected one of {}", names.join(", "))
    })
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Macdonald polynomial P_lambda in the monomial or power-sum basis.
    Macdonald(MacdonaldArgs),
    /// Hecke relations, Y-operator normal forms and the operator identity.
    Hecke {
        #[command(subcommand)]
        action: HeckeAction,
    },
    /// Drinfeld polynomial of omega_{lambda,N} and its string decomposition.
    Drinfeld(DrinfeldArgs),
    /// Chevalley relations of the level-0 action on random vectors.
    Relations {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// RS identity and Yang-Baxter equations for the two R-matrices.
    Ybe {
        #[arg(long, value_enum, default_value_t = YbeWhich::Both)]
        matrix: YbeWhich,
    },
    /// Characters of V(Lambda_i): identity checks, coefficient lists, labels.
    Char {
        #[command(subcommand)]
        action: CharAction,
    },
    /// Highest weight vectors in the Fock space.
    Hwv(HwvArgs),
    /// Runs every check at desk-scale parameters.
    VerifyAll {
        #[arg(long, default_value_t = 30)]
        order: usize,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        /// Include wall-clock timings (makes the output nondeterministic).
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Args, Debug)]
pub struct MacdonaldArgs {
    /// Comma-separated parts, e.g. `2,1`.
    #[arg(long, required_unless_present = "verify")]
    pub lambda: Option<String>,
    /// Number of variables; defaults to the length of lambda.
    #[arg(long)]
    pub n: Option<usize>,
    /// Power-sum form instead of the monomial expansion.
    #[arg(long, conflicts_with = "verify")]
    pub powersum: bool,
    /// Eigenvalue and duality checks at `--n` instead of one polynomial.
    #[arg(long, conflicts_with = "lambda")]
    pub verify: bool,
    #[arg(long, default_value_t = 4)]
    pub max_weight: u32,
}

#[derive(Subcommand, Debug)]
pub enum HeckeAction {
    /// Hecke (and affine Hecke) relations.
    Check {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Generators::G)]
        generators: Generators,
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Symmetrized normal form of L_m and its comparison with D_N^m.
    Normalform {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// prod(1 + y_j u) m_mu = D((-q)^{1-N} u; p, q^2) m_mu for |mu| <= max-weight.
    Identity {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        max_weight: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Generators {
    #[value(name = "S")]
    S,
    #[value(name = "G")]
    G,
    #[value(name = "g")]
    SmallG,
    #[value(name = "affine")]
    Affine,
}

#[derive(Args, Debug)]
pub struct DrinfeldArgs {
    #[arg(long)]
    pub lambda: String,
    #[arg(long)]
    pub n: usize,
    /// String decomposition and factors.
    #[arg(long)]
    pub strings: bool,
    /// Triangular L-shadow and recovery of the polynomial from A(x).
    #[arg(long)]
    pub shadow: bool,
    /// Irreducibility predicate and brute-force cyclic dimension.
    #[arg(long)]
    pub irreducibility: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum YbeWhich {
    Rtilde,
    Rbar,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum CharAction {
    /// fermionic = bosonic = refined through q^order.
    Verify {
        #[arg(long)]
        sector: u8,
        #[arg(long, default_value_t = 30)]
        order: usize,
        #[arg(long)]
        refine_z: bool,
    },
    /// Coefficients of one character.
    List {
        #[arg(long)]
        sector: u8,
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[arg(long, value_enum, default_value_t = CharKind::Fermionic)]
        kind: CharKind,
        #[arg(long)]
        refine_z: bool,
    },
    /// Labels (lambda, N) of the highest weight vectors by degree.
    Labels {
        #[arg(long)]
        sector: u8,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CharKind {
    Fermionic,
    Bosonic,
    Refined,
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
pub struct HwvArgs {
    #[command(subcommand)]
    pub action: Option<HwvAction>,
    #[arg(long)]
    pub lambda: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 6)]
    pub cutoff: i64,
}

#[derive(Subcommand, Debug)]
pub enum HwvAction {
    /// Extracted omega_{lambda,N} against the closed form.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        max_weight: u32,
        #[arg(long, default_value_t = 6)]
        cutoff: i64,
    },
    /// All omega_{lambda,N} extracted from Omega(z).
    Omega {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        cutoff: i64,
    },
    /// F_{++}(z1, q^-2 z1) = 0 at N = 2.
    Fusion {
        #[arg(long, default_value_t = 4)]
        cutoff: i64,
    },
    /// Closed-form vectors are independent and span each graded piece.
    Independence {
        #[arg(long)]
        sector: u8,
        #[arg(long, default_value_t = 3)]
        cutoff: i64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = if cli.json { Format::Json } else { cli.format };
    match commands::run(&cli) {
        Ok(outcome) => {
            if let Err(e) = outcome.write(format, &mut io::stdout().lock()) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(1);
            }
            if outcome.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(usage) => {
            eprintln!("error: {usage}");
            ExitCode::from(2)
        }
    }
}
