//! `kopt`: generators, compiler, local-search engines and verifiers.

mod args;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use args::{CapArgs, LabelArgs, PivotArgs, Source};

#[derive(Parser, Debug)]
#[command(name = "kopt", version, about = "Max-Cut/Flip to TSP/k-Opt reduction toolkit")]
struct Cli {
    /// Directory for artifacts.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Worker threads for sampling.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Generate an instance and its starting cut.
    Gen {
        #[command(subcommand)]
        what: GenCmd,
    },
    /// Run Flip local search.
    Flip {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        pivot: PivotArgs,
    },
    /// Compile an instance to the TSP graph.
    Compile {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        label: LabelArgs,
        /// Also write the completed graph.
        #[arg(long)]
        completion: Option<Completion>,
    },
    /// Run k-Opt local search.
    Kopt(KoptArgs),
    /// Run a verifier; exits 1 on failure.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    Export {
        #[command(subcommand)]
        what: ExportCmd,
    },
}

#[derive(Subcommand, Debug)]
enum GenCmd {
    Maxcut {
        #[command(flatten)]
        src: Source,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Completion {
    Huge,
    Priority,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OracleArg {
    Sparse,
    Xchange,
    #[value(name = "3swap")]
    ThreeSwap,
}

#[derive(clap::Args, Debug)]
struct KoptArgs {
    #[command(flatten)]
    src: Source,
    #[command(flatten)]
    label: LabelArgs,
    #[command(flatten)]
    pivot: PivotArgs,
    #[command(flatten)]
    caps: CapArgs,
    /// Compiled TSP file; overrides the instance source.
    #[arg(long)]
    tsp: Option<PathBuf>,
    /// Starting tour file; defaults to the tour of the starting cut.
    #[arg(long)]
    tour: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OracleArg::Xchange)]
    oracle: OracleArg,
    /// Completion used by the 3swap oracle.
    #[arg(long, value_enum, default_value_t = Completion::Huge)]
    completion: Completion,
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Certify a library gadget or an XOR gadget.
    Gadget {
        /// flexible, simple42, double222 or xor.
        #[arg(long)]
        name: String,
        #[arg(long)]
        rx: Option<i64>,
        #[arg(long)]
        ry: Option<i64>,
        #[arg(long)]
        rt: Option<i64>,
        /// XOR order.
        #[arg(long, default_value_t = 2)]
        p: usize,
    },
    /// Enumerate all tours of the compiled graph.
    Strictness {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        label: LabelArgs,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Run Flip and k-Opt in lockstep.
    Correspondence {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        label: LabelArgs,
        #[command(flatten)]
        pivot: PivotArgs,
        #[command(flatten)]
        caps: CapArgs,
        #[arg(long, value_enum, default_value_t = OracleArg::Sparse)]
        oracle: OracleArg,
    },
    /// Sample tours with non-edges and look for improving 3-swaps.
    PlsNonedge {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 17)]
        k: i64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Audit the priority assignment of a priority-mode completion.
    Priorities {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 17)]
        k: i64,
    },
}

#[derive(Subcommand, Debug)]
enum ExportCmd {
    /// Write graph.dot for a compiled TSP file or a gadget.
    Dot {
        #[arg(long, conflicts_with = "gadget", required_unless_present = "gadget")]
        tsp: Option<PathBuf>,
        /// Tour whose edges are drawn bold.
        #[arg(long, requires = "tsp")]
        tour: Option<PathBuf>,
        #[arg(long)]
        gadget: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run::run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
