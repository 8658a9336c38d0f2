//! `kmotive` command-line front end. [`run`] parses arguments, dispatches to
//! the engines and writes JSON (default) or aligned text.

mod commands;
mod error;
mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

pub use error::{CliError, EngineError};

/// Hard cap on degree bounds.
pub const MAX_DEGREE: u16 = 64;
/// Hard cap on Weyl group enumeration.
pub const MAX_WEYL_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "kmotive",
    version,
    about = "Exact formal group laws, root data, Witt classes and motivic splitting criteria"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Formal group laws.
    #[command(subcommand)]
    Fgl(FglCmd),
    /// Root systems and Weyl groups.
    #[command(subcommand)]
    Rootsys(RootsysCmd),
    /// Tits algebras as formal Brauer classes.
    #[command(subcommand)]
    Tits(TitsCmd),
    /// Witt ring of the model field.
    #[command(subcommand)]
    Witt(WittCmd),
    /// Rost motives, Milnor numbers, Euler characteristics.
    #[command(subcommand)]
    Motive(MotiveCmd),
    /// Borel varieties of simple groups.
    #[command(subcommand)]
    Group(GroupCmd),
}

fn degree_arg() -> clap::builder::RangedI64ValueParser<u16> {
    clap::value_parser!(u16).range(1..=i64::from(MAX_DEGREE))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LawKind {
    Additive,
    Multiplicative,
    Bp,
    Morava,
}

#[derive(Debug, Subcommand)]
pub enum FglCmd {
    /// Brown-Peterson logarithm.
    BpLog {
        #[arg(long)]
        p: u64,
        /// Degree bound (default 2p).
        #[arg(long, value_parser = degree_arg())]
        degree: Option<u16>,
    },
    /// Brown-Peterson formal group law.
    Bp {
        #[arg(long)]
        p: u64,
        /// Degree bound (default 2p).
        #[arg(long, value_parser = degree_arg())]
        degree: Option<u16>,
    },
    /// Morava law of height n.
    Morava {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        /// Degree bound (default 2p^n).
        #[arg(long, value_parser = degree_arg())]
        degree: Option<u16>,
        /// Reduce modulo (p, x^{p^n}, y^{p^n}).
        #[arg(long)]
        mod_j: bool,
    },
    /// Closed form of the Morava law modulo (p, x^{p^n}, y^{p^n}).
    ModJ {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
    },
    /// [p]-series of the Morava law and its leading term mod p.
    PSeries {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        /// Degree bound (default 2p^n).
        #[arg(long, value_parser = degree_arg())]
        degree: Option<u16>,
    },
    /// Unit, commutativity, associativity and grading of a law.
    Check {
        #[arg(long, value_enum)]
        law: LawKind,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, value_parser = degree_arg())]
        degree: Option<u16>,
    },
}

#[derive(Debug, Args)]
pub struct CapArg {
    /// Enumeration cap on |W|.
    #[arg(long, default_value_t = MAX_WEYL_CAP, value_parser = clap::value_parser!(u64).range(1..=MAX_WEYL_CAP))]
    pub cap: u64,
}

#[derive(Debug, Subcommand)]
pub enum RootsysCmd {
    /// Cartan matrix, simple roots, fundamental weights, positive roots.
    Build {
        /// Dynkin type such as E6 or B_4.
        #[arg(value_name = "TYPE")]
        dynkin: String,
    },
    /// Enumerate the Weyl group.
    Weyl {
        #[arg(value_name = "TYPE")]
        dynkin: String,
        #[command(flatten)]
        cap: CapArg,
        /// List every element with its reduced word.
        #[arg(long)]
        words: bool,
    },
    /// Steinberg weights ρ_w, for one word or the whole group.
    Rho {
        #[arg(value_name = "TYPE")]
        dynkin: String,
        /// Comma-separated 1-based reflection indices; empty for the identity.
        #[arg(long)]
        word: Option<String>,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Λ/Λ_r with representatives.
    FundamentalGroup {
        #[arg(value_name = "TYPE")]
        dynkin: String,
    },
}

#[derive(Debug, Args)]
pub struct BetaArgs {
    /// Orders of the cyclic factors of the Brauer target, e.g. "4".
    /// Default: the fundamental group itself.
    #[arg(long)]
    pub target: Option<String>,
    /// Images of the fundamental-group generators, separated by ';',
    /// each a comma list, e.g. "1" or "1,0;0,1".
    #[arg(long)]
    pub images: Option<String>,
    /// Declared index of a class, CLASS=INDEX (repeatable), e.g. "2=2".
    #[arg(long = "index")]
    pub index: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum TitsCmd {
    /// ω_i ↦ β(ω_i) for every fundamental weight.
    Table {
        #[arg(value_name = "TYPE")]
        dynkin: String,
        #[command(flatten)]
        beta: BetaArgs,
    },
    /// Index of β(ρ_w).
    Index {
        #[arg(value_name = "TYPE")]
        dynkin: String,
        #[arg(long)]
        word: String,
        #[command(flatten)]
        beta: BetaArgs,
    },
}

#[derive(Debug, Args)]
pub struct WittOpts {
    /// Number of square-class generators a_1..a_k.
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u8).range(1..=24))]
    pub k: u8,
    /// Read the form from a file instead of the command line.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum WittCmd {
    /// Sum of two classes.
    Add {
        a: String,
        b: String,
        #[command(flatten)]
        opts: WittOpts,
    },
    /// Product of two classes.
    Mul {
        a: String,
        b: String,
        #[command(flatten)]
        opts: WittOpts,
    },
    /// Class of the Pfister form on the given entries.
    Pfister {
        #[arg(required = true)]
        entries: Vec<String>,
        #[command(flatten)]
        opts: WittOpts,
    },
    /// Invariant e_n.
    E {
        form: Option<String>,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        opts: WittOpts,
    },
    /// I-level and the split Morava heights of the projective quadric.
    Level {
        form: Option<String>,
        /// Largest height reported (default k).
        #[arg(long)]
        height: Option<u32>,
        #[command(flatten)]
        opts: WittOpts,
    },
    /// Reconstruct a class from Pfister representatives of e_1, e_2, ….
    Strip {
        form: Option<String>,
        #[command(flatten)]
        opts: WittOpts,
    },
    /// Norm form ⟨⟨a_1..a_{m-1}⟩⟩ ⊥ ⟨-a_m⟩ and its quadric.
    NormForm {
        #[arg(required = true)]
        entries: Vec<String>,
        #[command(flatten)]
        opts: WittOpts,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoryArg {
    Morava,
    K0,
}

#[derive(Debug, Subcommand)]
pub enum MotiveCmd {
    /// K(n)-motive of the Rost motive of a degree-m symbol.
    RostSplit {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// The symbol vanishes.
        #[arg(long)]
        zero: bool,
    },
    /// The ideal (p, v_1..v_m) and its specialization.
    Ideal {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
        /// Specialize to K(n) coefficients.
        #[arg(long, conflicts_with = "chow")]
        n: Option<u32>,
        /// Specialize to p-local Chow coefficients.
        #[arg(long)]
        chow: bool,
    },
    /// Milnor number of a smooth projective quadric.
    Milnor {
        #[arg(long)]
        dim: u64,
    },
    /// ν_n-variety test for a variety of dimension p^n - 1.
    NuCheck {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        dim: u64,
        /// Milnor number (default: that of the quadric of this dimension).
        #[arg(long, allow_negative_numbers = true)]
        milnor: Option<i128>,
    },
    /// Euler characteristic in K⁰ or K(n).
    Euler {
        #[arg(long, value_enum)]
        theory: TheoryArg,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        dim: u64,
        #[arg(long)]
        cellular: bool,
        #[arg(long, allow_negative_numbers = true)]
        milnor: Option<i128>,
        /// Σ (-1)^i dim H^i(X, O_X).
        #[arg(long, allow_negative_numbers = true)]
        chi: Option<i64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GroupCmd {
    /// Decide whether the motive of the variety of Borel subgroups splits.
    Split {
        /// JSON group descriptor.
        #[arg(long)]
        file: PathBuf,
        /// Morava height n.
        #[arg(long)]
        height: Option<u32>,
        /// `k0` asks about K⁰ with integral coefficients.
        #[arg(long, value_enum)]
        theory: Option<TheoryArg>,
        #[arg(long, default_value_t = 2)]
        p: u64,
    },
}

fn render(v: &serde_json::Value, format: Format) -> String {
    match format {
        Format::Json => format!("{v}\n"),
        Format::Text => render::text(v),
    }
}

/// Runs one invocation. Returns the process exit code: 0 on success, 1 on
/// engine errors, 2 on usage errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match commands::execute(&cli.command) {
        Ok(v) => {
            let _ = out.write_all(render(&v, cli.format).as_bytes());
            0
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Engine(e)) => {
            let _ = writeln!(err, "{}", json!({"error": e.name, "detail": e.detail}));
            1
        }
        Err(e @ CliError::Io { .. }) => {
            let _ = writeln!(err, "{}", json!({"error": "Io", "detail": e.to_string()}));
            1
        }
    }
}
