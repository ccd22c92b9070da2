//! `novikov`: torsion, Novikov homology and fiberedness checks from the
//! command line.

mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "novikov", version, about = "Torsion, Novikov homology and fiberedness obstructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Alexander polynomial of a knot or link group.
    Alexander(GroupArgs),
    /// Torsion of the presentation complex, with its degree and monicness.
    Torsion(GroupArgs),
    /// Torsion, monicness and Novikov vanishing in one verdict.
    FiberCheck(GroupArgs),
    /// Novikov homology vanishing, with the truncated inverse of B'.
    Novikov(GroupArgs),
    /// Degree of the Alexander polynomial of a knot, deg tau + 1.
    Delta0(GroupArgs),
    /// Linear conditions on classes near phi that keep Novikov homology zero.
    Cone(GroupArgs),
    /// Ascending test and kernel witness for an HNN extension (JSON input).
    HnnWitness(HnnArgs),
    /// Weight reduction on a cut graph (JSON input).
    WeightReduce(WeightArgs),
    /// Collection, degrees and invertibility in the Heisenberg group ring.
    HeisenbergDemo(CommonArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DirectionArg {
    #[value(name = "+")]
    Plus,
    #[value(name = "-")]
    Minus,
    #[value(name = "both")]
    Both,
}

#[derive(Args, Debug, Clone)]
struct CommonArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Levels of inverse series written out.
    #[arg(long, env = "NOVIKOV_HORIZON", default_value_t = 32)]
    horizon: i64,
    #[arg(long, value_enum, default_value = "both")]
    direction: DirectionArg,
    /// Recheck verdicts with the level-by-level solver; disagreement exits 2.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args, Debug, Clone)]
struct GroupArgs {
    /// Presentation file (text `gens:`/`rel:` format, or JSON).
    input: Option<String>,
    /// Braid word whose closure is a knot, e.g. `1,1,1`.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["input", "inline"])]
    braid: Option<String>,
    /// Presentation given inline; `;` separates lines.
    #[arg(long, conflicts_with = "input")]
    inline: Option<String>,
    /// Class as values on the generators, e.g. `1,1` or `1/2,0`.
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug, Clone)]
struct HnnArgs {
    /// HNN data: `{"base": {"gens", "rels"}, "assoc": [...], "images": [...]}`.
    input: String,
    /// Word length bound for coset enumeration.
    #[arg(long, default_value_t = 4)]
    depth: usize,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug, Clone)]
struct WeightArgs {
    /// Cut graph: `{"regions": n, "edges": [{"from", "to", "chi", "class"}]}`.
    input: String,
    /// Starting weight, default all ones.
    #[arg(long)]
    weight: Option<String>,
    /// Resolve unequal chi_- by lowering chi_- instead of failing.
    #[arg(long)]
    relax: bool,
    /// Also run the connectedness obstruction.
    #[arg(long)]
    obstruction: bool,
    /// The class is not primitive (obstruction only).
    #[arg(long)]
    non_primitive: bool,
    /// The torsion vanishes (obstruction only).
    #[arg(long)]
    tau_zero: bool,
    #[command(flatten)]
    common: CommonArgs,
}

/// A finished report, or a failure with its exit code.
pub struct Outcome {
    pub body: String,
    pub code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Alexander(a) => commands::alexander(a),
        Command::Torsion(a) => commands::torsion(a),
        Command::FiberCheck(a) => commands::fiber_check(a),
        Command::Novikov(a) => commands::novikov(a),
        Command::Delta0(a) => commands::delta0(a),
        Command::Cone(a) => commands::cone(a),
        Command::HnnWitness(a) => commands::hnn_witness(a),
        Command::WeightReduce(a) => commands::weight_reduce(a),
        Command::HeisenbergDemo(a) => commands::heisenberg_demo(a),
    };
    match result {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout(), "{}", out.body);
            ExitCode::from(out.code)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
