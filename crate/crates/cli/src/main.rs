//! `tbl` — a workbench for torus braid groups, pure-subgroup rewriting,
//! torus lattice arithmetic, and the difference complex.
//!
//! Output goes to stdout (`--format json` wraps it in the `tbl/1`
//! envelope), diagnostics to stderr. Exit codes: 0 ok, 1 input error,
//! 2 audit finding. All output is byte-identical across runs.

mod commands;
mod output;

use clap::{Parser, Subcommand, ValueEnum};
use tbl_core::complex::GraphKind;
use tbl_core::lattice::LatticeClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Group {
    Torus,
    Artin,
}

impl std::fmt::Display for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Group::Torus => write!(f, "torus"),
            Group::Artin => write!(f, "artin"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Lattice {
    Generic,
    Square,
    Hexagonal,
}

impl From<Lattice> for LatticeClass {
    fn from(l: Lattice) -> LatticeClass {
        match l {
            Lattice::Generic => LatticeClass::Generic,
            Lattice::Square => LatticeClass::Square,
            Lattice::Hexagonal => LatticeClass::Hexagonal,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Transversal {
    Bfs,
    Dfs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Graph {
    Oracle,
    Rule,
}

impl From<Graph> for GraphKind {
    fn from(g: Graph) -> GraphKind {
        match g {
            Graph::Oracle => GraphKind::Oracle,
            Graph::Rule => GraphKind::Rule,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "tbl",
    version,
    about = "Torus braid groups, pure-subgroup rewriting, lattice arithmetic, and the difference complex",
    propagate_version = true
)]
struct Cli {
    /// Output format (text or the versioned JSON envelope).
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Seed for randomized helpers; every core path is deterministic
    /// and ignores it.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a braid group presentation.
    Present {
        #[arg(long, value_enum)]
        group: Group,
        /// Strand count (n >= 2).
        #[arg(short)]
        n: usize,
    },
    /// Abelian invariants of a presentation.
    Abelianize {
        #[arg(long, value_enum)]
        group: Option<Group>,
        #[arg(short)]
        n: Option<usize>,
        /// Read a presentation as JSON from a file, or `-` for stdin;
        /// accepts `present --format json` output directly.
        #[arg(long = "in", value_name = "PATH")]
        input: Option<String>,
    },
    /// Verify that the symmetric-group epimorphism is well defined.
    MuCheck {
        #[arg(short)]
        n: usize,
    },
    /// The normal series of the pure torus braid group, as data.
    NormalSeries {
        #[arg(short)]
        n: usize,
    },
    /// Rewrite a presentation of the kernel of the symmetric-group
    /// epimorphism (the pure braid subgroup).
    PureSubgroup {
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value = "torus")]
        group: Group,
        #[arg(long, value_enum, default_value = "bfs")]
        transversal: Transversal,
        /// Apply length-1 relator substitutions after rewriting.
        #[arg(long)]
        simplify: bool,
        /// Also report the abelian invariants of the subgroup.
        #[arg(long)]
        abelianize: bool,
        /// Upper bound on the coset-table degree.
        #[arg(long, default_value_t = 3_628_800)]
        degree_bound: usize,
    },
    /// Endomorphism ring queries.
    Lattice {
        #[command(subcommand)]
        command: LatticeCommand,
    },
    /// Configuration queries.
    Config {
        #[command(subcommand)]
        command: ConfigCommand,
    },
    /// Search for a torus automorphism carrying one configuration to
    /// another (as unordered sets).
    OrbitEqual {
        #[arg(long, value_enum)]
        lattice: Lattice,
        /// Comma-separated points, each `num/den:num/den`.
        #[arg(long)]
        q: String,
        #[arg(long)]
        qprime: String,
    },
    /// Vertices, simplices, orbits, and audits of the difference
    /// complex.
    Complex {
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum)]
        lattice: Lattice,
        /// Enumerate simplices of this dimension.
        #[arg(long)]
        dim: Option<usize>,
        /// Classify symmetric-group orbits.
        #[arg(long)]
        orbits: bool,
        /// Run the lemma audits (exit 2 on findings).
        #[arg(long)]
        audit: bool,
        /// Edge relation to enumerate with.
        #[arg(long, value_enum, default_value = "oracle")]
        graph: Graph,
    },
    /// Carry a pure-marker simplex to its Δ/∇ normal form.
    NormalizeSimplex {
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum)]
        lattice: Lattice,
        /// Semicolon-separated vertices `marker:i,j` (1-based).
        #[arg(long)]
        simplex: String,
    },
    /// Recover the (permutation, marker, form) descriptor from the
    /// image of the probe simplex.
    TameDescriptor {
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum)]
        lattice: Lattice,
        /// Images of e_{1;1,2} … e_{1;1,n}, in order.
        #[arg(long)]
        image: String,
    },
    /// Run all difference-complex audits (exit 2 on findings).
    Audit {
        #[arg(short)]
        n: usize,
        /// Restrict to one lattice class (default: all three).
        #[arg(long, value_enum)]
        lattice: Option<Lattice>,
        /// Largest n the exhaustive audit will accept.
        #[arg(long, default_value_t = 6)]
        bound: usize,
    },
}

fn dispatch(command: Command) -> Result<output::CommandOutput, String> {
    match command {
        Command::Present { group, n } => commands::present(group, n),
        Command::Abelianize { group, n, input } => commands::abelianize(group, n, input),
        Command::MuCheck { n } => commands::mu_check(n),
        Command::NormalSeries { n } => commands::normal_series(n),
        Command::PureSubgroup {
            n,
            group,
            transversal,
            simplify,
            abelianize,
            degree_bound,
        } => commands::pure_subgroup(n, group, transversal, simplify, abelianize, degree_bound),
        Command::Lattice { command } => match command {
            LatticeCommand::Markers { lattice } => commands::lattice_markers(lattice.into()),
            LatticeCommand::Kernel { lattice, alpha } => {
                commands::lattice_kernel(lattice.into(), &alpha)
            }
        },
        Command::Config { command } => match command {
            ConfigCommand::Exceptional { lattice, points } => {
                commands::config_exceptional(lattice.into(), &points)
            }
        },
        Command::OrbitEqual { lattice, q, qprime } => {
            commands::orbit_equal(lattice.into(), &q, &qprime)
        }
        Command::Complex { n, lattice, dim, orbits, audit, graph } => {
            commands::complex_cmd(n, lattice.into(), dim, orbits, audit, graph.into())
        }
        Command::NormalizeSimplex { n, lattice, simplex } => {
            commands::normalize_simplex_cmd(n, lattice.into(), &simplex)
        }
        Command::TameDescriptor { n, lattice, image } => {
            commands::tame_descriptor_cmd(n, lattice.into(), &image)
        }
        Command::Audit { n, lattice, bound } => {
            commands::audit_cmd(n, lattice.map(Into::into), bound)
        }
    }
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// The unit group and its canonical half.
    Markers {
        #[arg(long, value_enum)]
        lattice: Lattice,
    },
    /// Kernel of a nonzero endomorphism.
    Kernel {
        #[arg(long, value_enum)]
        lattice: Lattice,
        /// Ring element `a`, `a+b*t`, or `a-b*t`.
        #[arg(long)]
        alpha: String,
    },
}

#[derive(Subcommand)]
enum ConfigCommand {
    /// Exceptionality tests: the order-based necessary condition and
    /// the exact kernel-inclusion search.
    Exceptional {
        #[arg(long, value_enum)]
        lattice: Lattice,
        /// Comma-separated points, each `num/den:num/den`.
        #[arg(long)]
        points: String,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{err}");
                    std::process::exit(0);
                }
                _ => {
                    eprint!("{err}");
                    std::process::exit(1);
                }
            }
        }
    };
    let result = dispatch(cli.command)
        .unwrap_or_else(output::CommandOutput::input_error);
    match cli.format {
        Format::Json => println!("{}", result.envelope()),
        Format::Text => {
            for line in &result.text {
                println!("{line}");
            }
        }
    }
    for diagnostic in &result.diagnostics {
        eprintln!("{diagnostic}");
    }
    std::process::exit(result.status.exit_code());
}
