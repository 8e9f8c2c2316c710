//! `polar`: build polar graphs and two-graphs, and run verification suites.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polar_core::constructions::{
    build_gamma_o, build_no_even, build_no_odd, build_no_odd_w, build_sigma, standard_form,
    standard_parameter,
};
use polar_core::graph::LabeledGraph;
use polar_core::report::{schema, Budget, Report};
use polar_core::two_graph::{
    build_full_symplectic_two_graph, build_symplectic_two_graph, MAX_ORDER,
};
use polar_core::verify::{
    verify_appendix, verify_families, verify_orbits, verify_theorem, VerifyConfig,
};
use polar_core::{graph6, BilinearSpace, BinaryField, Error, QuadraticForm, Sign};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "polar",
    version,
    about = "Strongly regular polar graphs over GF(2^h), their two-graphs and switching certificates"
)]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build one graph and write it as graph6 or an edge list.
    Build(BuildArgs),
    /// Run a verification suite and print its report.
    Verify(VerifyArgs),
    /// Print the JSON schema of verification reports.
    Schema,
    /// Export the triples of a symplectic two-graph.
    TwoGraph(TwoGraphArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BuildFamily {
    /// NO^±(2m,2) on {Θ = 1}.
    NoEven,
    /// NO^∓(2m+1,q) on {Tr Θ = 1}, Θ of type ±.
    NoOdd,
    /// NO^±(2m+1,q) on the W-model {Tr ϑ_0 = 0 or 1}.
    NoOddW,
    /// Γ(O^±(2m,2)) on the nonzero zeros of Θ.
    GammaO,
    /// Σ_2m on all of F_2^{2m}.
    Sigma,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    EdgeList,
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(value_enum)]
    family: BuildFamily,
    #[arg(long)]
    m: u32,
    #[arg(long, default_value_t = 2)]
    q: u32,
    /// Sign of the graph (`+` or `-`).
    #[arg(long, value_parser = parse_sign, default_value = "+", allow_hyphen_values = true)]
    sign: Sign,
    /// Output file; a `.labels` sidecar is written next to it. Standard
    /// output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Graph6)]
    format: Format,
    /// Print the build summary as JSON.
    #[arg(long)]
    json: bool,
    /// Refuse graphs with more vertices than this.
    #[arg(long, default_value_t = 4096)]
    max_vertices: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Scope {
    Families,
    Orbits,
    Appendix,
    Theorem,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    scope: Scope,
    /// Values of m: `a..b` (inclusive), `a,b,c` or a single value.
    #[arg(long, value_parser = parse_list)]
    m: Option<NumberList>,
    /// Field orders, e.g. `2,4`.
    #[arg(long, value_parser = parse_list)]
    q: Option<NumberList>,
    #[arg(long)]
    json: bool,
    /// Largest group enumerated.
    #[arg(long, default_value_t = polar_core::group::DEFAULT_GROUP_CAP)]
    cap: usize,
    /// Largest two-graph materialized (at most 300).
    #[arg(long, default_value_t = MAX_ORDER)]
    max_two_graph: usize,
    /// Largest graph built.
    #[arg(long, default_value_t = 4096)]
    max_vertices: usize,
    /// Random samples for identities on large spaces.
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Stop with exit code 3 once this many milliseconds have passed.
    #[arg(long)]
    time_budget_ms: Option<u64>,
    /// Record wall time in the report (makes output non-reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TwoGraphKind {
    /// 𝒳^±_2m on {Θ = 1}.
    Symplectic,
    /// 𝒯_2m on all of F_2^{2m}.
    Full,
}

#[derive(Args, Debug)]
struct TwoGraphArgs {
    #[arg(value_enum)]
    kind: TwoGraphKind,
    #[arg(long)]
    m: u32,
    #[arg(long, value_parser = parse_sign, default_value = "+", allow_hyphen_values = true)]
    sign: Sign,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Debug)]
struct NumberList(Vec<u32>);

fn parse_list(s: &str) -> Result<NumberList, String> {
    let bad = |_| format!("cannot read {s:?} as a number list");
    if let Some((a, b)) = s.split_once("..") {
        let (a, b): (u32, u32) = (
            a.trim().parse().map_err(bad)?,
            b.trim().parse().map_err(bad)?,
        );
        if a > b || b - a > 64 {
            return Err(format!("bad range {s:?}"));
        }
        return Ok(NumberList((a..=b).collect()));
    }
    s.split(',')
        .map(|x| x.trim().parse().map_err(bad))
        .collect::<Result<_, _>>()
        .map(NumberList)
}

/// Errors carry their exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Usage(_) => EXIT_USAGE,
            Error::Resource { .. } => EXIT_RESOURCE,
            _ => EXIT_FAIL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_FAIL,
            message: format!("i/o error: {e}"),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: format!("usage error: {}", msg.into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("usage error: --threads must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool is configured once");
    }
    let result = match cli.command {
        Command::Build(args) => run_build(args),
        Command::Verify(args) => run_verify(args),
        Command::Schema => {
            println!(
                "{}",
                serde_json::to_string_pretty(&schema()).expect("schema serializes")
            );
            Ok(0)
        }
        Command::TwoGraph(args) => run_two_graph(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn open_output(out: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn estimated_vertices(family: BuildFamily, m: u32, q: u32) -> u64 {
    let size = (q as u64).saturating_pow(2 * m);
    match family {
        BuildFamily::Sigma => size,
        _ => size / 2 + (q as u64).saturating_pow(m),
    }
}

fn run_build(args: BuildArgs) -> Result<u8, Failure> {
    let BuildArgs {
        family, m, q, sign, ..
    } = args;
    if q != 2 && q != 4 {
        return Err(usage(format!("build supports q ∈ {{2, 4}}, got {q}")));
    }
    if q != 2
        && matches!(
            family,
            BuildFamily::NoEven | BuildFamily::GammaO | BuildFamily::Sigma
        )
    {
        return Err(usage("this family is defined over GF(2) only"));
    }
    if m == 0 {
        return Err(usage("m must be at least 1"));
    }
    if estimated_vertices(family, m, q) > args.max_vertices as u64 {
        return Err(Error::Resource {
            what: format!(
                "graph with about {} vertices",
                estimated_vertices(family, m, q)
            ),
            cap: args.max_vertices as u64,
        }
        .into());
    }
    let field = BinaryField::with_order(q)?;
    let space = BilinearSpace::standard(field, m as usize)?;
    let (graph, summary) = match family {
        BuildFamily::Sigma => (build_sigma(m as usize)?, None),
        BuildFamily::NoOddW => {
            let b = build_no_odd_w(&space, sign)?;
            let s = b.summary();
            (b.graph, Some(s))
        }
        other => {
            // Graph sign = form type, except for NO-odd where it is opposite.
            let form_type = if other == BuildFamily::NoOdd {
                -sign
            } else {
                sign
            };
            let theta = standard_form(field, m as usize, form_type)?;
            let b = match other {
                BuildFamily::NoEven => build_no_even(&theta)?,
                BuildFamily::NoOdd => build_no_odd(&theta)?,
                _ => build_gamma_o(&theta)?,
            };
            let s = b.summary();
            (b.graph, Some(s))
        }
    };
    write_graph(&graph, &space, args.format, args.out.as_deref())?;
    let info = match &summary {
        Some(s) => serde_json::to_value(s).expect("summary serializes"),
        None => serde_json::json!({
            "instance": format!("Σ_{}", 2 * m),
            "vertices": graph.n(),
            "edges": graph.edge_count(),
        }),
    };
    let text = if args.json {
        serde_json::to_string_pretty(&info).expect("summary serializes")
    } else {
        match &summary {
            Some(s) => format!(
                "{}: {} (expected {}), form {}",
                s.instance,
                s.verdict,
                s.expected,
                describe_form(family, &space, sign)
            ),
            None => format!(
                "Σ_{}: {} vertices, {} edges",
                2 * m,
                graph.n(),
                graph.edge_count()
            ),
        }
    };
    if args.out.is_some() {
        println!("{text}");
    } else {
        eprintln!("{text}");
    }
    Ok(0)
}

fn describe_form(family: BuildFamily, space: &BilinearSpace, sign: Sign) -> String {
    let form_type = match family {
        BuildFamily::NoOdd => -sign,
        BuildFamily::NoOddW => return "ϑ_a(a+b) = 0 model".into(),
        _ => sign,
    };
    match standard_parameter(space, form_type) {
        Ok(a) => format!("ϑ_a with a = {}", space.render(a)),
        Err(_) => "n/a".into(),
    }
}

fn write_graph(
    g: &LabeledGraph,
    space: &BilinearSpace,
    format: Format,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let mut w = open_output(out)?;
    match format {
        Format::Graph6 => writeln!(w, "{}", graph6::encode(g))?,
        Format::EdgeList => {
            writeln!(w, "{} {}", g.n(), g.edge_count())?;
            for (i, j) in g.edges() {
                writeln!(w, "{i} {j}")?;
            }
        }
    }
    w.flush()?;
    if let Some(path) = out {
        let mut sidecar = path.as_os_str().to_owned();
        sidecar.push(".labels");
        let mut s = BufWriter::new(File::create(PathBuf::from(sidecar))?);
        for &l in g.labels() {
            writeln!(s, "{}", space.render(l))?;
        }
        s.flush()?;
    }
    Ok(())
}

fn run_verify(args: VerifyArgs) -> Result<u8, Failure> {
    if args.max_two_graph > MAX_ORDER {
        return Err(usage(format!("--max-two-graph is at most {MAX_ORDER}")));
    }
    let (default_m, default_q) = match args.scope {
        Scope::Families => (vec![2, 3], vec![2, 4]),
        Scope::Orbits => (vec![1, 2], vec![2]),
        Scope::Appendix => (vec![1, 2], vec![2, 4]),
        Scope::Theorem => (vec![1, 2], vec![4]),
    };
    let m = args.m.map_or(default_m, |l| l.0);
    let q = args.q.map_or(default_q, |l| l.0);
    if m.is_empty() || m.contains(&0) {
        return Err(usage("m values must be positive"));
    }
    if let Some(&bad) = q
        .iter()
        .find(|&&q| !(2..=16).contains(&q) || !q.is_power_of_two())
    {
        return Err(usage(format!("q = {bad} is not one of 2, 4, 8, 16")));
    }
    if args.scope == Scope::Theorem && q != [4] {
        return Err(usage(
            "the switching theorem pairs GF(2) with GF(4); pass --q 4 or omit it",
        ));
    }
    let cfg = VerifyConfig {
        m,
        q,
        group_cap: args.cap,
        max_two_graph: args.max_two_graph,
        max_vertices: args.max_vertices,
        samples: args.samples,
        seed: args.seed,
        budget: Budget::new(args.time_budget_ms),
    };
    let mut report: Report = match args.scope {
        Scope::Families => verify_families(&cfg),
        Scope::Orbits => verify_orbits(&cfg),
        Scope::Appendix => verify_appendix(&cfg),
        Scope::Theorem => verify_theorem(&cfg),
    };
    if args.timing {
        report.wall_time_ms = Some(cfg.budget.elapsed_ms());
    }
    if args.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    Ok(report.status.exit_code() as u8)
}

fn run_two_graph(args: TwoGraphArgs) -> Result<u8, Failure> {
    if args.m == 0 || args.m > 4 {
        return Err(usage("two-graph export supports 1 ≤ m ≤ 4"));
    }
    let t = match args.kind {
        TwoGraphKind::Symplectic => {
            let theta: QuadraticForm =
                standard_form(BinaryField::gf2(), args.m as usize, args.sign)?;
            build_symplectic_two_graph(&theta)?
        }
        TwoGraphKind::Full => build_full_symplectic_two_graph(args.m as usize)?,
    };
    let mut w = open_output(args.out.as_deref())?;
    t.write_triples(&mut w)?;
    w.flush()?;
    Ok(0)
}
