use std::collections::{HashMap, VecDeque};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use semireg::graphs::{cayley_graph, gamma, Graph, Partition};
use semireg::numth::{primitive_prime_divisor, PpdException};
use semireg::permaut::Permutation;
use semireg::verify::{LemmaId, Status, Verifier};
use semireg::Error;

/// Largest group the `cayley` command will enumerate.
const MAX_CAYLEY_ELEMENTS: usize = 1_000_000;

#[derive(Parser)]
#[command(name = "semireg", version, about = "Build and verify cubic graphs with bounded semiregular automorphisms")]
struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the edge list of Γ_m (and, with --out, a JSON label map).
    Build {
        #[arg(short)]
        m: u32,
        /// Edge-list path; labels go to `<out>.labels.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run property checks on Γ_m and emit a certificate.
    Verify {
        #[arg(short)]
        m: u32,
        /// Checks to run: all, 1, 2, 4, semireg, qirr, figure1, stab.
        #[arg(long = "lemma", value_delimiter = ',')]
        lemmas: Vec<String>,
        /// Same as `--lemma all`.
        #[arg(long)]
        all: bool,
        /// Write the certificate JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the certificate JSON instead of a summary.
        #[arg(long)]
        json: bool,
    },
    /// Least primitive prime divisor of x^f − 1.
    Ppd {
        x: u64,
        f: u32,
        #[arg(long)]
        json: bool,
    },
    /// Quotient of a graph by a vertex partition.
    Quotient {
        /// Use Γ_m as the input graph.
        #[arg(short, conflicts_with = "input")]
        m: Option<u32>,
        /// Edge-list file to read instead.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Built-in partition.
        #[arg(long, value_enum, conflicts_with = "partition")]
        by: Option<Blocks>,
        /// Partition file, one block of vertices per line.
        #[arg(long)]
        partition: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cayley graph of a group given by permutation generators or a table.
    Cayley {
        /// Either permutation generators, one image list per line, or
        /// `table n` followed by n rows of the multiplication table.
        #[arg(long)]
        group: PathBuf,
        /// Comma-separated indices of connection elements in the listing order.
        #[arg(long, value_delimiter = ',')]
        conn: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the element listing to stderr.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Blocks {
    /// Orbits of the extraspecial normal subgroup (needs -m).
    #[value(name = "V")]
    V,
    Singletons,
    Whole,
}

enum Failure {
    Verification(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn check_m(m: u32) -> Result<u32, Error> {
    if (1..=3).contains(&m) {
        Ok(m)
    } else {
        Err(Error::Parameter(format!("capacity: Γ_m is built for m in 1..=3, got {m}")))
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn cmd_build(m: u32, out: Option<&Path>) -> Result<(), Failure> {
    let cg = gamma(check_m(m)?)?;
    emit(out, &cg.graph().to_edge_list())?;
    if let Some(p) = out {
        let mut labels = p.as_os_str().to_owned();
        labels.push(".labels.json");
        let mut json = cg.labels_json();
        json.push('\n');
        emit(Some(Path::new(&labels)), &json)?;
    }
    Ok(())
}

fn cmd_verify(m: u32, lemmas: &[String], all: bool, out: Option<&Path>, json: bool) -> Result<(), Failure> {
    let m = check_m(m)?;
    let ids: Vec<LemmaId> = if all || lemmas.is_empty() || lemmas.iter().any(|l| l == "all") {
        LemmaId::ALL.to_vec()
    } else {
        let mut ids = lemmas.iter().map(|l| l.parse()).collect::<Result<Vec<LemmaId>, _>>()?;
        ids.sort();
        ids.dedup();
        ids
    };
    let cert = Verifier::new(m)?.certificate(&ids);
    let text = cert.to_json();
    if let Some(p) = out {
        emit(Some(p), &text)?;
    }
    if json {
        print!("{text}");
    } else {
        println!("m = {}: {} vertices, {} edges", cert.m, cert.vertex_count, cert.edge_count);
        for (key, result) in &cert.lemma_results {
            let status = match result.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            };
            match &result.reason {
                Some(r) => println!("lemma {key}: {status} ({r})"),
                None => println!("lemma {key}: {status}"),
            }
            if result.status == Status::Fail {
                for d in &result.diagnostics {
                    println!("    {d}");
                }
            }
        }
        if let Some(o) = cert.aut_order {
            println!("aut_order: {o}");
        }
        if let Some(s) = &cert.semiregular_spectrum {
            println!("semiregular orders: {s:?}");
        }
    }
    if cert.all_passed() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("failed lemma(s): {}", cert.failed().join(", "))))
    }
}

fn cmd_ppd(x: u64, f: u32, json: bool) -> Result<(), Failure> {
    let r = primitive_prime_divisor(x, f)?;
    if json {
        let doc = serde_json::json!({ "x": x, "f": f, "exists": r.exists, "prime": r.prime.map(|p| p.to_string()), "exception": r.exception });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap_or_default());
        return Ok(());
    }
    match (r.prime, r.exception) {
        (Some(p), _) => println!("{p}"),
        (None, Some(PpdException::Degenerate)) => println!("none (degenerate: {})", PpdException::Degenerate.describe(x, f)),
        (None, Some(e)) => println!("none (exception: {})", e.describe(x, f)),
        (None, None) => println!("none"),
    }
    Ok(())
}

fn cmd_quotient(
    m: Option<u32>,
    input: Option<&Path>,
    by: Option<Blocks>,
    partition: Option<&Path>,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let (graph, v_blocks): (Graph, Option<Partition>) = match (m, input) {
        (Some(m), None) => {
            let cg = gamma(check_m(m)?)?;
            let p = matches!(by, Some(Blocks::V)).then(|| cg.v_orbits());
            (cg.graph().clone(), p)
        }
        (None, Some(path)) => (Graph::parse_edge_list(&read(path)?)?, None),
        _ => return Err(Error::Parameter("give exactly one of -m or --input".into()).into()),
    };
    let part = match (by, partition) {
        (Some(Blocks::V), _) => v_blocks.ok_or_else(|| Error::Parameter("--by V needs -m".into()))?,
        (Some(Blocks::Singletons), _) => Partition::singletons(graph.n()),
        (Some(Blocks::Whole), _) => Partition::whole(graph.n()),
        (None, Some(path)) => Partition::parse(&read(path)?, graph.n())?,
        (None, None) => return Err(Error::Parameter("give --by or --partition".into()).into()),
    };
    let q = graph.normal_quotient(&part)?;
    emit(out, &q.graph.to_edge_list())?;
    Ok(())
}

/// Elements of a group given in a file, with its multiplication.
enum FiniteGroup {
    Perms(Vec<Permutation>),
    Table(Vec<Vec<usize>>),
}

fn parse_group(text: &str) -> Result<FiniteGroup, Error> {
    let lines: Vec<&str> =
        text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
    let nums = |line: &str| -> Result<Vec<usize>, Error> {
        line.split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad integer {t:?}"))))
            .collect()
    };
    let first = lines.first().ok_or_else(|| Error::Parse("empty group file".into()))?;
    if let Some(rest) = first.strip_prefix("table") {
        let n: usize = rest.trim().parse().map_err(|_| Error::Parse("expected `table n`".into()))?;
        let rows: Vec<Vec<usize>> = lines[1..].iter().map(|l| nums(l)).collect::<Result<_, _>>()?;
        if rows.len() != n || rows.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Parse(format!("multiplication table must be {n} rows of {n} entries below {n}")));
        }
        return Ok(FiniteGroup::Table(rows));
    }
    let gens: Vec<Permutation> = lines
        .iter()
        .map(|l| nums(l).and_then(|v| Permutation::from_images(&v).map_err(|e| Error::Parse(e.to_string()))))
        .collect::<Result<_, _>>()?;
    if gens.windows(2).any(|w| w[0].degree() != w[1].degree()) {
        return Err(Error::Parse("generators have different degrees".into()));
    }
    // breadth-first from the identity, right-multiplying by generators in order
    let id = Permutation::identity(gens[0].degree());
    let mut seen: HashMap<Permutation, usize> = HashMap::from([(id.clone(), 0)]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x.compose(g);
            if !seen.contains_key(&y) {
                if elements.len() >= MAX_CAYLEY_ELEMENTS {
                    return Err(Error::Capacity(format!("group has more than {MAX_CAYLEY_ELEMENTS} elements")));
                }
                seen.insert(y.clone(), elements.len());
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(FiniteGroup::Perms(elements))
}

fn cmd_cayley(group: &Path, conn: &[usize], out: Option<&Path>, list: bool) -> Result<(), Failure> {
    let g = parse_group(&read(group)?)?;
    let n = match &g {
        FiniteGroup::Perms(e) => e.len(),
        FiniteGroup::Table(t) => t.len(),
    };
    if let Some(&bad) = conn.iter().find(|&&i| i >= n) {
        return Err(Error::Parse(format!("connection index {bad} out of range for a group of order {n}")).into());
    }
    let graph = match &g {
        FiniteGroup::Perms(elements) => {
            if list {
                for (i, p) in elements.iter().enumerate() {
                    eprintln!("{i}: {p}");
                }
            }
            let y: Vec<Permutation> = conn.iter().map(|&i| elements[i].clone()).collect();
            // group elements compose left to right, so x·y means x then y
            cayley_graph(elements, &y, |a, b| a.compose(b))?
        }
        FiniteGroup::Table(t) => {
            let elements: Vec<usize> = (0..n).collect();
            cayley_graph(&elements, conn, |a, b| t[*a][*b])?
        }
    };
    emit(out, &graph.to_edge_list())?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::Build { m, out } => cmd_build(m, out.as_deref()),
        Command::Verify { m, lemmas, all, out, json } => cmd_verify(m, &lemmas, all, out.as_deref(), json),
        Command::Ppd { x, f, json } => cmd_ppd(x, f, json),
        Command::Quotient { m, input, by, partition, out } => {
            cmd_quotient(m, input.as_deref(), by, partition.as_deref(), out.as_deref())
        }
        Command::Cayley { group, conn, out, list } => cmd_cayley(&group, &conn, out.as_deref(), list),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("semireg: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("semireg: {e}");
            ExitCode::from(match e {
                Error::Capacity(_) => 3,
                Error::Parameter(_) | Error::Parse(_) | Error::Io(_) => 2,
                Error::Construction(_) | Error::Contract(_) | Error::Unavailable(_) => 1,
            })
        }
    }
}
