use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dartjac::covers::{
    cayley_multigraph, derived_graph, monodromy_fibre_action, quotient_graph, validate_covering,
    CoveringMap,
};
use dartjac::dartgraph::{
    edge_connectivity, is_connected, spanning_tree_count, spanning_tree_enumerate, DartGraph,
    DEFAULT_ENUMERATION_EDGE_CAP,
};
use dartjac::io;
use dartjac::jacobian::jacobian;
use dartjac::random::{self, Family, Instance, RandomSpec};
use dartjac::symmetry::{
    automorphisms, extend_vertex_map, vertex_action, FiniteGroup, PermGroup, Permutation,
    DEFAULT_AUT_VERTEX_CAP, DEFAULT_GROUP_ORDER_CAP,
};
use dartjac::verify::{run_suite, Outcome, Suite};
use dartjac::{Error, Result};

#[derive(Parser)]
#[command(name = "dartjac", version, about = "Graph Jacobians, regular covers and automorphism actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Override the vertex cap for automorphism search or the edge cap for tree enumeration.
    #[arg(long, global = true)]
    scale_cap: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Jacobian invariant factors, order and J-flow of a graph.
    Jac(GraphArg),
    /// Run a verification suite.
    Verify {
        /// p1, pfold, main, cayley-rank, example72, semiedge-null, local-group or covering
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        count: Option<usize>,
        /// Also write the JSON report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Derived graph of a voltage assignment, or checks on an explicit covering.
    Cover {
        #[arg(long, conflicts_with = "covering", required_unless_present = "covering")]
        voltage: Option<PathBuf>,
        #[arg(long)]
        covering: Option<PathBuf>,
        /// Base vertex whose fibre carries the monodromy action.
        #[arg(long, default_value_t = 0)]
        vertex: usize,
        /// Write the covering JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quotient by the group generated by the given permutations.
    Quotient {
        #[command(flatten)]
        graph: GraphArg,
        /// Vertex permutation in cycle notation, extended to darts.
        #[arg(long)]
        perm: Vec<String>,
        /// Dart permutation, as cycles or a JSON image array.
        #[arg(long)]
        dart_perm: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cayley multigraph of a group.
    Cayley {
        /// Group JSON file, or one of Z<n>, D<n>, S<n>, Q8.
        #[arg(long)]
        group: String,
        /// Comma-separated element indices, or `involutions` (alias `transpositions`).
        #[arg(long)]
        conn: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Automorphism group of a graph.
    Aut(GraphArg),
    /// Number of spanning trees.
    Trees {
        #[command(flatten)]
        graph: GraphArg,
        /// List every spanning tree (small graphs only).
        #[arg(long)]
        enumerate: bool,
    },
    /// Write a seeded random instance.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct GraphArg {
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    GnpSimple,
    RandomMultigraph,
    RandomVoltage,
    RandomCayley,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(value_enum)]
    family: FamilyName,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    extra_edges: usize,
    #[arg(long, default_value_t = 0)]
    loops: usize,
    #[arg(long, default_value_t = 0)]
    semiedges: usize,
    /// Base graph for random-voltage.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Group file or name for random-voltage and random-cayley.
    #[arg(long)]
    group: Option<String>,
    /// Minimum connection size for random-cayley.
    #[arg(long, default_value_t = 2)]
    size: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A command result: JSON value, table text, and whether a verification failed.
struct Output {
    json: Value,
    table: String,
    failed: bool,
}

impl Output {
    fn ok(json: Value, table: String) -> Self {
        Output {
            json,
            table,
            failed: false,
        }
    }
}

fn load_graph(path: &Path) -> Result<DartGraph> {
    io::parse_graph(&io::read_file(path)?)
}

fn load_group(spec: &str) -> Result<FiniteGroup> {
    let path = Path::new(spec);
    if path.exists() {
        return io::parse_group(&io::read_file(path)?);
    }
    io::named_group(spec).ok_or_else(|| {
        Error::InvalidArgument(format!("{spec:?} is neither a group file nor a known group name"))
    })
}

fn write_json(path: &Path, v: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v).expect("JSON values serialize");
    text.push('\n');
    io::write_atomic(path, text.as_bytes())
}

fn cmd_jac(g: &DartGraph) -> Result<Output> {
    let j = jacobian(g)?;
    let report = io::jacobian_report(&j);
    let factors: Vec<String> = j.group.factors().iter().map(|d| d.to_string()).collect();
    let mut table = format!(
        "factors: [{}], order: {}\nrank: {}\n",
        factors.join(","),
        j.group.order(),
        j.group.rank()
    );
    if j.group.rank() > 0 {
        table.push_str("dart  xi\n");
        for &x in &j.positive_darts {
            let c: Vec<String> = j.flow.xi[x].coords.iter().map(|v| v.to_string()).collect();
            table.push_str(&format!("{x:>4}  ({})\n", c.join(",")));
        }
    }
    Ok(Output::ok(report, table))
}

fn cmd_verify(suite: &str, seed: u64, count: Option<usize>, out: Option<&Path>) -> Result<Output> {
    let suite: Suite = suite.parse()?;
    let rep = run_suite(suite, seed, count);
    let json = serde_json::to_value(&rep).expect("plain data");
    if let Some(p) = out {
        write_json(p, &json)?;
    }
    let mut table = String::new();
    for c in &rep.cases {
        table.push_str(&format!("{:<28} {}\n", c.id, c.outcome));
    }
    table.push_str(&format!(
        "{suite}: {}/{} pass, {} fail, {} hypothesis-unmet, {} scale-exceeded\n",
        rep.count(Outcome::Pass),
        rep.cases.len(),
        rep.count(Outcome::Fail),
        rep.count(Outcome::HypothesisUnmet),
        rep.count(Outcome::ScaleExceeded),
    ));
    Ok(Output {
        failed: !rep.all_passed(),
        json,
        table,
    })
}

fn covering_output(c: &CoveringMap, vertex: usize) -> Result<Output> {
    let rep = validate_covering(c);
    let mut json = json!({ "report": rep });
    let mut table = format!(
        "covering: {}\nfold: {}\nregular: {}\ncovering transformations: {}\n",
        rep.is_covering, rep.fold, rep.is_regular, rep.ct_order
    );
    for p in &rep.problems {
        table.push_str(&format!("problem: {p}\n"));
    }
    if rep.is_covering {
        let mon = monodromy_fibre_action(c, vertex)?;
        json["monodromy"] = json!({
            "vertex": vertex,
            "order": mon.order(),
            "generators": mon.generators().iter().map(|p| p.image().to_vec()).collect::<Vec<_>>(),
        });
        table.push_str(&format!("monodromy order at vertex {vertex}: {}\n", mon.order()));
    }
    Ok(Output {
        failed: false,
        json,
        table,
    })
}

fn cmd_cover(
    voltage: Option<&Path>,
    covering: Option<&Path>,
    vertex: usize,
    out: Option<&Path>,
) -> Result<Output> {
    let c = match (voltage, covering) {
        (Some(p), _) => {
            let v = io::parse_voltage(&io::read_file(p)?)?;
            derived_graph(&v)?.1
        }
        (None, Some(p)) => io::parse_covering(&io::read_file(p)?)?,
        (None, None) => return Err(Error::InvalidArgument("give --voltage or --covering".into())),
    };
    if let Some(p) = out {
        write_json(p, &io::covering_to_json(&c))?;
    }
    let mut o = covering_output(&c, vertex)?;
    o.json["total"] = io::graph_to_json(c.total());
    Ok(o)
}

fn graph_summary(g: &DartGraph) -> String {
    let cls = g.classify_edges();
    let valencies: Vec<String> = (0..g.vertex_count()).map(|v| g.valency(v).to_string()).collect();
    format!(
        "vertices: {}\ndarts: {}\nordinary edges: {}\nloops: {}\nsemiedges: {}\nvalencies: {}\n",
        g.vertex_count(),
        g.dart_count(),
        cls.ordinary.len(),
        cls.loops.len(),
        cls.semiedges.len(),
        valencies.join(" ")
    )
}

fn cmd_quotient(g: &DartGraph, perms: &[String], dart_perms: &[String], out: Option<&Path>) -> Result<Output> {
    let mut gens = Vec::new();
    for text in perms {
        let s = Permutation::parse_cycles(g.vertex_count(), text)?;
        let f = extend_vertex_map(g, &s)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::NotAnAutomorphism(format!("vertex map {text} does not preserve edges")))?;
        gens.push(f);
    }
    for text in dart_perms {
        gens.push(io::parse_permutation(text, g.dart_count())?);
    }
    let grp = PermGroup::generate(g.dart_count(), gens, DEFAULT_GROUP_ORDER_CAP)?;
    let (q, c) = quotient_graph(g, &grp)?;
    if let Some(p) = out {
        write_json(p, &io::covering_to_json(&c))?;
    }
    let json = json!({
        "group_order": grp.order(),
        "quotient": io::graph_to_json(&q),
        "projection": c.projection(),
    });
    let table = format!("group order: {}\n{}", grp.order(), graph_summary(&q));
    Ok(Output::ok(json, table))
}

fn cmd_cayley(group: &str, conn: &str, out: Option<&Path>) -> Result<Output> {
    let grp = load_group(group)?;
    let conn: Vec<usize> = match conn.trim() {
        "involutions" | "transpositions" => grp.involutions(),
        list => list
            .split(',')
            .map(|s| {
                s.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("connection entry {s:?} is not an element index")))
            })
            .collect::<Result<_>>()?,
    };
    let g = cayley_multigraph(&grp, &conn)?;
    let json = io::graph_to_json(&g);
    if let Some(p) = out {
        write_json(p, &json)?;
    }
    let mut table = graph_summary(&g);
    table.push_str(&format!("connected: {}\nsimple: {}\n", is_connected(&g), g.is_simple()));
    if let Ok(k) = edge_connectivity(&g) {
        table.push_str(&format!("edge connectivity: {k}\n"));
    }
    Ok(Output::ok(json, table))
}

fn cmd_aut(g: &DartGraph, cap: usize) -> Result<Output> {
    let grp = automorphisms(g, cap)?;
    let gens: Vec<Value> = grp.generators().iter().map(|f| json!(f.image())).collect();
    let vgens: Vec<String> = grp
        .generators()
        .iter()
        .map(|f| vertex_action(g, f).to_string())
        .collect();
    let json = json!({ "order": grp.order(), "generators": gens, "vertex_generators": vgens });
    let mut table = format!("order: {}\n", grp.order());
    for v in &vgens {
        table.push_str(&format!("generator on vertices: {v}\n"));
    }
    Ok(Output::ok(json, table))
}

fn cmd_trees(g: &DartGraph, enumerate: bool, cap: usize) -> Result<Output> {
    let tau = spanning_tree_count(g)?;
    let mut json = json!({ "count": tau.to_string() });
    let mut table = format!("{tau}\n");
    if enumerate {
        let trees = spanning_tree_enumerate(g, cap)?;
        let lists: Vec<Vec<usize>> = trees.iter().map(|t| t.edges().iter().copied().collect()).collect();
        for l in &lists {
            let s: Vec<String> = l.iter().map(|e| e.to_string()).collect();
            table.push_str(&format!("edges {}\n", s.join(" ")));
        }
        json["trees"] = json!(lists);
    }
    Ok(Output::ok(json, table))
}

fn cmd_generate(a: &GenerateArgs) -> Result<Output> {
    let family = match a.family {
        FamilyName::GnpSimple => Family::GnpSimple { n: a.n, p: a.p },
        FamilyName::RandomMultigraph => Family::RandomMultigraph {
            n: a.n,
            extra_edges: a.extra_edges,
            loops: a.loops,
            semiedges: a.semiedges,
        },
        FamilyName::RandomVoltage => Family::RandomVoltage {
            base: load_graph(a.graph.as_deref().ok_or_else(|| {
                Error::InvalidArgument("random-voltage needs --graph".into())
            })?)?,
            group: load_group(a.group.as_deref().unwrap_or("Z2"))?,
        },
        FamilyName::RandomCayley => Family::RandomCayley {
            group: load_group(a.group.as_deref().ok_or_else(|| {
                Error::InvalidArgument("random-cayley needs --group".into())
            })?)?,
            size: a.size,
        },
    };
    let inst = random::generate(&RandomSpec { seed: a.seed, family })?;
    let (json, table) = match &inst {
        Instance::Graph(g) => (io::graph_to_json(g), graph_summary(g)),
        Instance::Voltage(v) => (
            io::voltage_to_json(v),
            format!("voltages: {:?}\ntree-reduced: {}\n", v.xi(), v.is_t_reduced()),
        ),
        Instance::Cayley { group, connection } => (
            json!({ "group": io::group_to_json(group), "connection": connection }),
            format!("connection: {connection:?}\n"),
        ),
    };
    if let Some(p) = &a.out {
        write_json(p, &json)?;
    }
    Ok(Output::ok(json, table))
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Jac(a) => cmd_jac(&load_graph(&a.graph)?),
        Command::Verify {
            suite,
            seed,
            count,
            out,
        } => cmd_verify(suite, *seed, *count, out.as_deref()),
        Command::Cover {
            voltage,
            covering,
            vertex,
            out,
        } => cmd_cover(voltage.as_deref(), covering.as_deref(), *vertex, out.as_deref()),
        Command::Quotient {
            graph,
            perm,
            dart_perm,
            out,
        } => cmd_quotient(&load_graph(&graph.graph)?, perm, dart_perm, out.as_deref()),
        Command::Cayley { group, conn, out } => cmd_cayley(group, conn, out.as_deref()),
        Command::Aut(a) => cmd_aut(
            &load_graph(&a.graph)?,
            cli.scale_cap.unwrap_or(DEFAULT_AUT_VERTEX_CAP),
        ),
        Command::Trees { graph, enumerate } => cmd_trees(
            &load_graph(&graph.graph)?,
            *enumerate,
            cli.scale_cap.unwrap_or(DEFAULT_ENUMERATION_EDGE_CAP),
        ),
        Command::Generate(a) => cmd_generate(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = match cli.format {
                Format::Json => {
                    serde_json::to_string_pretty(&out.json).expect("JSON values serialize") + "\n"
                }
                Format::Table => out.table,
            };
            // a reader that closes the pipe early is not an error
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(if out.failed { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
