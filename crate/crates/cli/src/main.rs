use std::io::Write;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use evc_cli::commands::{self, DefendMode, EvcMode, GadgetKind, OutputFormat};
use evc_cli::input::{limits_from_env, load_graph, CliError, EXIT_FAILURE};
use evc_core::characterize::MembershipMode;
use evc_core::graph::InputFormat;

/// Eternal vertex cover workbench.
///
/// Graphs are read from a file, `-` for stdin, or `builtin:<name>` with
/// name one of fig4, diamond, K<n>, C<n>, P<n>. Solver caps can be raised
/// with EVC_LIMITS, e.g. `EVC_LIMITS=exact=30,enum=18`.
#[derive(Parser)]
#[command(name = "evc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum InFormat {
    EdgeList,
    Json,
}

#[derive(Args)]
struct GraphInput {
    /// Input graph
    input: String,
    /// Input format; detected from content when omitted
    #[arg(long = "input-format", value_enum)]
    input_format: Option<InFormat>,
}

impl GraphInput {
    fn load(&self) -> Result<(evc_core::Graph, Option<evc_core::graph::PlanarEmbedding>), CliError> {
        load_graph(
            &self.input,
            self.input_format.map(|f| match f {
                InFormat::EdgeList => InputFormat::EdgeList,
                InFormat::Json => InputFormat::Json,
            }),
        )
    }
}

#[derive(Args)]
#[group(multiple = false)]
struct ClassFFlags {
    /// Trust that every minimum cover containing the cut vertices is connected
    #[arg(long)]
    assume_class_f: bool,
    /// Decide class membership by enumerating minimum covers
    #[arg(long)]
    exhaustive_class_check: bool,
}

impl ClassFFlags {
    fn mode(&self) -> MembershipMode {
        if self.assume_class_f {
            MembershipMode::Assume
        } else if self.exhaustive_class_check {
            MembershipMode::Exhaustive
        } else {
            MembershipMode::Sufficient
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Minimum vertex cover, optionally containing a forced set
    Mvc {
        #[command(flatten)]
        graph: GraphInput,
        /// Use the perfect-elimination-order algorithm (chordal input only)
        #[arg(long)]
        chordal: bool,
        /// Vertices the cover must contain (comma separated)
        #[arg(long, value_delimiter = ',')]
        forced: Vec<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Eternal vertex cover number
    Evc {
        #[command(flatten)]
        graph: GraphInput,
        /// Solve the guarding game exactly
        #[arg(long, conflicts_with = "char", required_unless_present = "char")]
        exact: bool,
        /// Decide via the structural characterization
        #[arg(long)]
        char: bool,
        #[command(flatten)]
        class_f: ClassFFlags,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Play the defender against scripted, random or interactive attacks
    Defend {
        #[command(flatten)]
        graph: GraphInput,
        /// Read `attack u v` lines from stdin
        #[arg(long, conflicts_with_all = ["random_rounds", "script"])]
        interactive: bool,
        /// Number of uniformly random attacks
        #[arg(long, conflicts_with = "script")]
        random_rounds: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// File of `start v...` / `attack u v` lines
        #[arg(long)]
        script: Option<PathBuf>,
        #[command(flatten)]
        class_f: ClassFFlags,
    },
    /// Build a gadget or generated instance, printed as graph JSON
    Gadget {
        #[command(subcommand)]
        kind: GadgetCommand,
    },
    /// Serve the session API (and optionally static UI assets)
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        /// Directory of built web UI assets
        #[arg(long)]
        static_dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GadgetCommand {
    /// Add a vertex adjacent to all others (mvc grows by one)
    Universal(GraphInput),
    /// Triangulate every listed internal face (mvc grows by three per face)
    Triangulate(GraphInput),
    /// Two copies joined around an outer edge (mvc becomes 2k+3)
    Double {
        #[command(flatten)]
        graph: GraphInput,
        /// Outer-face edge `u,v`
        #[arg(long, value_name = "U,V")]
        edge: String,
    },
    /// Builtin biconnected counterexample with evc > mvc
    Fig4,
    /// Random chordal graph
    RandomChordal {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        biconnected: bool,
    },
    /// Random connected graph
    RandomConnected {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn format(f: Format) -> OutputFormat {
    match f {
        Format::Json => OutputFormat::Json,
        Format::Table => OutputFormat::Table,
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let limits = limits_from_env()?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Mvc {
            graph,
            chordal,
            forced,
            format: f,
        } => commands::mvc(&graph.load()?.0, chordal, &forced, &limits, format(f), &mut out),
        Command::Evc {
            graph,
            exact,
            class_f,
            format: f,
            ..
        } => {
            let mode = if exact {
                EvcMode::Exact
            } else {
                EvcMode::Characterize(class_f.mode())
            };
            commands::evc(&graph.load()?.0, mode, &limits, format(f), &mut out)
        }
        Command::Defend {
            graph,
            interactive,
            random_rounds,
            seed,
            script,
            class_f,
        } => {
            let g = graph.load()?.0;
            let text;
            let stdin = std::io::stdin();
            let mut lock;
            let mode = if let Some(path) = script {
                text = std::fs::read_to_string(&path)
                    .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
                DefendMode::Script(&text)
            } else if let Some(rounds) = random_rounds {
                DefendMode::Random { rounds, seed }
            } else if interactive {
                lock = stdin.lock();
                DefendMode::Interactive(&mut lock)
            } else {
                return Err(CliError::input(
                    "choose one of --interactive, --random-rounds or --script",
                ));
            };
            commands::defend(&g, class_f.mode(), mode, &limits, &mut out)
        }
        Command::Gadget { kind } => {
            let (kind, input) = match kind {
                GadgetCommand::Universal(g) => (GadgetKind::Universal, Some(g.load()?)),
                GadgetCommand::Triangulate(g) => (GadgetKind::Triangulate, Some(g.load()?)),
                GadgetCommand::Double { graph, edge } => {
                    let (u, v) = edge
                        .split_once(',')
                        .ok_or_else(|| CliError::input("--edge expects `u,v`"))?;
                    let edge = (u.trim().to_string(), v.trim().to_string());
                    (GadgetKind::Double { edge }, Some(graph.load()?))
                }
                GadgetCommand::Fig4 => (GadgetKind::Fig4, None),
                GadgetCommand::RandomChordal {
                    n,
                    density,
                    seed,
                    biconnected,
                } => (
                    GadgetKind::RandomChordal {
                        n,
                        density,
                        seed,
                        biconnected,
                    },
                    None,
                ),
                GadgetCommand::RandomConnected { n, p, seed } => {
                    (GadgetKind::RandomConnected { n, p, seed }, None)
                }
            };
            commands::gadget(&kind, input, &mut out)
        }
        Command::Serve {
            port,
            host,
            static_dir,
        } => {
            drop(out);
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(evc_cli::serve::run(
                SocketAddr::new(host, port),
                static_dir,
                limits,
            ))
            .map_err(|e| CliError::new(EXIT_FAILURE, e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    let result = run(cli);
    let _ = std::io::stdout().flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            log::error!("{e}");
            ExitCode::from(e.code)
        }
    }
}
