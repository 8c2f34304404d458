//! Command line front end.
//!
//! Exit codes: 0 success (property holds / bound met), 1 negative verdict
//! (valid input, answer is no), 2 file or format error, 3 precondition
//! violated (including the K_{3,3} exception), 4 search budget exhausted,
//! 5 proof obligation falsified.

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;
use urm_core::bridge_cert::{certify_bridges, CertError, CertException, CertifyOptions};
use urm_core::enumerate::connected_subcubic_graphs;
use urm_core::forge;
use urm_core::girth_cert::{certify_girth, GirthError, GirthMode};
use urm_core::graph::Graph;
use urm_core::io::{read_edge_list, read_matching, write_edge_list, write_matching};
use urm_core::matching::{is_acyclic_matching, is_uniquely_restricted, Matching, UrVerdict};
use urm_core::oracle::{
    nu_ac_exact_with, nu_exact_with, nu_ur_exact_with, OracleError, OracleResult, DEFAULT_BUDGET,
};
use urm_core::structure::bridge_report;

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_FORMAT: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_FALSIFIED: u8 = 5;

#[derive(Parser)]
#[command(
    name = "urm",
    version,
    about = "Uniquely restricted matchings in subcubic graphs: verify, solve, certify"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check whether a matching is uniquely restricted in a graph
    Verify {
        /// Graph file (edge list format)
        graph: PathBuf,
        /// Matching file (one "u v" per line)
        matching: PathBuf,
    },
    /// Exact optimum by branch and bound (small instances)
    Solve {
        graph: PathBuf,
        /// Which optimum to compute: uniquely restricted, maximum, acyclic
        #[arg(long, value_enum, default_value_t = SolveKind::Ur)]
        param: SolveKind,
        /// Search node budget
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Also write the witness matching to this file
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Certify 6|M| >= m + good bridges on a connected subcubic graph
    CertifyBridges {
        graph: PathBuf,
        /// Write the step trace to this file
        #[arg(long)]
        emit_trace: Option<PathBuf>,
        /// Seed for the heuristic on oversized cubic components
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Largest cubic component solved exactly
        #[arg(long)]
        cubic_limit: Option<usize>,
        /// Node budget for exact fallback searches
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Certify 3|M| >= n - 1 on a connected subcubic graph of girth >= 7
    CertifyGirth {
        graph: PathBuf,
        /// Accept any girth; census failures become recorded violations
        #[arg(long)]
        relaxed: bool,
        /// Write the step trace to this file
        #[arg(long)]
        emit_trace: Option<PathBuf>,
    },
    /// Generate an instance and print it in edge list format
    Gen {
        #[command(subcommand)]
        family: GenCmd,
        /// Write to this file instead of stdout
        #[arg(short, long, global = true)]
        out: Option<PathBuf>,
    },
    /// Structural report for a graph
    Stats { graph: PathBuf },
    /// Measure a corpus and emit one CSV row per instance
    Experiment {
        /// Corpus description, e.g.: named FIG1 file g.txt exhaustive 7
        /// random 100 8 16 7 random-noncubic 50 8 40 7 random-girth 50 20 60 7 9
        #[arg(required = true, num_args = 1..)]
        corpus: Vec<String>,
        /// Write rows to this file instead of stdout
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Node budget per oracle call
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveKind {
    /// Maximum uniquely restricted matching
    Ur,
    /// Maximum matching
    M,
    /// Maximum acyclic matching
    Ac,
}

#[derive(Subcommand)]
enum GenCmd {
    /// Catalog graph: K2 P3 P4 C4 C7 K13 K23 K33 FIG1 MCGEE HEAWOOD CUBIC_BRIDGE
    Named { name: String },
    /// The tight example: a claw with two K_{2,3} gadgets
    Fig1,
    /// Chain of k claws, the canonical tight subcubic tree on 3k+1 vertices
    ClawChain { k: usize },
    /// Tight subcubic tree on n vertices (n = 3t+1), chosen by index
    TightTree {
        n: usize,
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Claw chain on tree_n vertices with K_{2,3} gadgets on its first leaves
    TightFamily { tree_n: usize, gadgets: usize },
    /// Seeded random subcubic graph (connected unless --any)
    RandomSubcubic {
        n: usize,
        seed: Option<u64>,
        /// Allow disconnected output
        #[arg(long)]
        any: bool,
    },
    /// Seeded random connected subcubic graph of girth at least g
    RandomGirth {
        n: usize,
        girth: usize,
        seed: Option<u64>,
    },
}

fn main() -> ExitCode {
    ExitCode::from(run(Cli::parse()))
}

fn run(cli: Cli) -> u8 {
    match cli.cmd {
        Cmd::Verify { graph, matching } => cmd_verify(&graph, &matching),
        Cmd::Solve { graph, param, budget, witness_out } => {
            cmd_solve(&graph, param, budget, witness_out.as_deref())
        }
        Cmd::CertifyBridges { graph, emit_trace, seed, cubic_limit, budget } => {
            cmd_certify_bridges(&graph, emit_trace.as_deref(), seed, cubic_limit, budget)
        }
        Cmd::CertifyGirth { graph, relaxed, emit_trace } => {
            cmd_certify_girth(&graph, relaxed, emit_trace.as_deref())
        }
        Cmd::Gen { family, out } => cmd_gen(family, out.as_deref()),
        Cmd::Stats { graph } => cmd_stats(&graph),
        Cmd::Experiment { corpus, csv, budget } => cmd_experiment(&corpus, csv.as_deref(), budget),
    }
}

fn load_graph(path: &std::path::Path) -> Result<Graph, u8> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        EXIT_FORMAT
    })?;
    read_edge_list(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        EXIT_FORMAT
    })
}

fn cmd_verify(graph: &std::path::Path, matching: &std::path::Path) -> u8 {
    let g = match load_graph(graph) {
        Ok(g) => g,
        Err(c) => return c,
    };
    let text = match fs::read_to_string(matching) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", matching.display());
            return EXIT_FORMAT;
        }
    };
    let edges = match read_matching(&text) {
        Ok(es) => es,
        Err(e) => {
            eprintln!("error: {}: {e}", matching.display());
            return EXIT_FORMAT;
        }
    };
    let m = match Matching::new(&g, &edges) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_PRECONDITION;
        }
    };
    let acyclic = match is_acyclic_matching(&g, &m) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_PRECONDITION;
        }
    };
    match is_uniquely_restricted(&g, &m) {
        Ok(UrVerdict::UniquelyRestricted) => {
            println!("uniquely restricted: yes");
            println!("acyclic: {}", if acyclic { "yes" } else { "no" });
            EXIT_OK
        }
        Ok(UrVerdict::NotUniquelyRestricted(w)) => {
            println!("uniquely restricted: no");
            println!("acyclic: {}", if acyclic { "yes" } else { "no" });
            let cyc: Vec<String> = w.cycle.iter().map(|v| v.to_string()).collect();
            println!("alternating cycle: {}", cyc.join(" "));
            EXIT_NEGATIVE
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_PRECONDITION
        }
    }
}

fn cmd_solve(
    graph: &std::path::Path,
    param: SolveKind,
    budget: u64,
    witness_out: Option<&std::path::Path>,
) -> u8 {
    let g = match load_graph(graph) {
        Ok(g) => g,
        Err(c) => return c,
    };
    let run = match param {
        SolveKind::M => nu_exact_with(&g, budget),
        SolveKind::Ur => nu_ur_exact_with(&g, budget),
        SolveKind::Ac => nu_ac_exact_with(&g, budget),
    };
    let (res, code) = match run {
        Ok(r) => (r, EXIT_OK),
        Err(OracleError::BudgetExhausted { budget, best }) => {
            eprintln!("warning: budget of {budget} nodes exhausted; reporting best found");
            (best, EXIT_BUDGET)
        }
    };
    print_oracle_result(&res);
    if let Some(p) = witness_out {
        if let Err(e) = fs::write(p, write_matching(res.witness.edges())) {
            eprintln!("error: {}: {e}", p.display());
            return EXIT_FORMAT;
        }
    }
    code
}

fn print_oracle_result(res: &OracleResult) {
    println!("size: {}", res.size);
    println!("optimal: {}", if res.optimal { "yes" } else { "no" });
    println!("explored: {}", res.explored);
    println!("matching:");
    for &(u, v) in res.witness.edges() {
        println!("{u} {v}");
    }
}

fn write_trace(path: &std::path::Path, text: &str) -> Result<(), u8> {
    fs::write(path, text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        EXIT_FORMAT
    })
}

fn cmd_certify_bridges(
    graph: &std::path::Path,
    trace: Option<&std::path::Path>,
    seed: u64,
    cubic_limit: Option<usize>,
    budget: Option<u64>,
) -> u8 {
    let g = match load_graph(graph) {
        Ok(g) => g,
        Err(c) => return c,
    };
    let mut opts = CertifyOptions { seed, ..CertifyOptions::default() };
    if let Some(l) = cubic_limit {
        opts.cubic_oracle_limit = l;
    }
    if let Some(b) = budget {
        opts.oracle_budget = b;
    }
    match certify_bridges(&g, &opts) {
        Ok(c) => {
            if let Err(e) = c.audit() {
                eprintln!("error: certificate audit failed: {e}");
                return EXIT_FALSIFIED;
            }
            println!(
                "n: {} m: {} bridges: {} good: {}",
                c.graph_n, c.graph_m, c.bridges, c.good_bridges
            );
            println!("achieved: {}", c.achieved());
            println!("bound numerator: {}", c.bound_numerator());
            println!("bound met: {}", if c.bound_met() { "yes" } else { "no" });
            let mut k33 = false;
            for ex in &c.exceptions {
                match ex {
                    CertException::K33Top => {
                        println!("exception: K33_EXCEPTION");
                        k33 = true;
                    }
                    CertException::CubicFallback { vertices, exact } => {
                        println!(
                            "exception: CUBIC_FALLBACK n={} exact={}",
                            vertices.len(),
                            if *exact { "yes" } else { "no" }
                        );
                    }
                }
            }
            if let Some(p) = trace {
                if let Err(c) = write_trace(p, &c.trace_text()) {
                    return c;
                }
            }
            if k33 {
                EXIT_PRECONDITION
            } else {
                EXIT_OK
            }
        }
        Err(e @ (CertError::NotSubcubic | CertError::Disconnected)) => {
            eprintln!("error: {e}");
            EXIT_PRECONDITION
        }
        Err(e @ CertError::ProofFalsified { .. }) => {
            eprintln!("error: {e}");
            EXIT_FALSIFIED
        }
        Err(e @ CertError::Budget { .. }) => {
            eprintln!("error: {e}");
            EXIT_BUDGET
        }
    }
}

fn cmd_certify_girth(graph: &std::path::Path, relaxed: bool, trace: Option<&std::path::Path>) -> u8 {
    let g = match load_graph(graph) {
        Ok(g) => g,
        Err(c) => return c,
    };
    let mode = if relaxed { GirthMode::Relaxed } else { GirthMode::Strict };
    match certify_girth(&g, mode) {
        Ok(c) => {
            let girth = c.girth.map_or("acyclic".to_string(), |x| x.to_string());
            println!("n: {} m: {} girth: {}", c.graph_n, c.graph_m, girth);
            println!("achieved: {}", c.achieved());
            println!("target: {}", c.graph_n.saturating_sub(1));
            println!("bound met: {}", if c.bound_met() { "yes" } else { "no" });
            for v in &c.violations {
                println!("violation: {v}");
            }
            if let Some(p) = trace {
                if let Err(code) = write_trace(p, &c.trace_text()) {
                    return code;
                }
            }
            if c.bound_met() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            }
        }
        Err(e @ (GirthError::NotSubcubic | GirthError::Disconnected | GirthError::GirthTooSmall { .. })) => {
            eprintln!("error: {e}");
            EXIT_PRECONDITION
        }
        Err(e @ GirthError::ProofFalsified { .. }) => {
            eprintln!("error: {e}");
            EXIT_FALSIFIED
        }
    }
}

fn cmd_gen(family: GenCmd, out: Option<&std::path::Path>) -> u8 {
    let g = match build_instance(family) {
        Ok(g) => g,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_PRECONDITION;
        }
    };
    let text = write_edge_list(&g);
    match out {
        None => {
            print!("{text}");
            EXIT_OK
        }
        Some(p) => match fs::write(p, text) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: {}: {e}", p.display());
                EXIT_FORMAT
            }
        },
    }
}

fn build_instance(family: GenCmd) -> Result<Graph, String> {
    match family {
        GenCmd::Named { name } => {
            forge::named(&name).ok_or_else(|| format!("unknown name {name}; try one of {:?}", forge::NAMED))
        }
        GenCmd::Fig1 => Ok(forge::named("FIG1").expect("catalog")),
        GenCmd::ClawChain { k } => {
            if k == 0 {
                return Err("claw chain needs k >= 1".into());
            }
            Ok(forge::claw_chain(k))
        }
        GenCmd::TightTree { n, index } => {
            let ts = forge::tight_trees(n).map_err(|e| e.to_string())?;
            ts.get(index)
                .cloned()
                .ok_or_else(|| format!("only {} tight trees on {n} vertices", ts.len()))
        }
        GenCmd::TightFamily { tree_n, gadgets } => {
            if tree_n % 3 != 1 || tree_n < 4 {
                return Err("tree size must be 3t+1 with t >= 1".into());
            }
            let tree = forge::claw_chain((tree_n - 1) / 3);
            let leaves: Vec<usize> = (0..tree.n()).filter(|&v| tree.degree(v) == 1).collect();
            if gadgets == 0 || gadgets > leaves.len() {
                return Err(format!("gadget count must be in 1..={}", leaves.len()));
            }
            forge::tight_bridge_family(&tree, &leaves[..gadgets])
                .map(|i| i.graph)
                .map_err(|e| e.to_string())
        }
        GenCmd::RandomSubcubic { n, seed, any } => {
            forge::random_subcubic(n, seed.unwrap_or(1), !any).map_err(|e| e.to_string())
        }
        GenCmd::RandomGirth { n, girth, seed } => {
            forge::random_subcubic_girth(n, girth, seed.unwrap_or(1)).map_err(|e| e.to_string())
        }
    }
}

fn cmd_stats(graph: &std::path::Path) -> u8 {
    let g = match load_graph(graph) {
        Ok(g) => g,
        Err(c) => return c,
    };
    println!("n: {}", g.n());
    println!("m: {}", g.m());
    println!("max degree: {}", g.max_degree());
    println!("connected: {}", if g.is_connected() { "yes" } else { "no" });
    println!("components: {}", g.components().len());
    println!("subcubic: {}", if g.is_subcubic() { "yes" } else { "no" });
    println!("cubic: {}", if g.is_cubic() { "yes" } else { "no" });
    println!("forest: {}", if g.is_forest() { "yes" } else { "no" });
    println!("bipartite: {}", if g.is_bipartite() { "yes" } else { "no" });
    match g.girth() {
        Some(x) => println!("girth: {x}"),
        None => println!("girth: acyclic"),
    }
    let rep = bridge_report(&g);
    println!("bridges: {}", rep.count());
    println!("good bridges: {}", rep.good_count());
    for b in rep.good_edges() {
        println!("good bridge: {} {}", b.0, b.1);
    }
    EXIT_OK
}

const CSV_HEADER: &str = "instance,n,m,bridges,good_bridges,girth,nu,nu_ur,nu_ur_kind,nu_ac,\
cert1_achieved,cert1_bound,cert2_achieved,cert2_bound,conj1_margin,falsified,explored,note";

#[derive(Default)]
struct Row {
    instance: String,
    n: usize,
    m: usize,
    bridges: usize,
    good: usize,
    girth: Option<usize>,
    nu: Option<usize>,
    nu_ur: Option<(usize, &'static str)>,
    nu_ac: Option<usize>,
    cert1: Option<(usize, usize)>,
    cert2: Option<(usize, usize)>,
    conj1_margin: Option<i64>,
    falsified: bool,
    explored: u64,
    notes: Vec<String>,
}

impl Row {
    fn csv(&self) -> String {
        fn opt<T: std::fmt::Display>(x: &Option<T>) -> String {
            x.as_ref().map_or("-".to_string(), |v| v.to_string())
        }
        let girth = self.girth.map_or("acyclic".to_string(), |x| x.to_string());
        let (ur, kind) = match self.nu_ur {
            Some((v, k)) => (v.to_string(), k.to_string()),
            None => ("-".into(), "-".into()),
        };
        let (c1a, c1b) = match self.cert1 {
            Some((a, b)) => (a.to_string(), b.to_string()),
            None => ("-".into(), "-".into()),
        };
        let (c2a, c2b) = match self.cert2 {
            Some((a, b)) => (a.to_string(), b.to_string()),
            None => ("-".into(), "-".into()),
        };
        let note = if self.notes.is_empty() { "-".to_string() } else { self.notes.join(";") };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.instance,
            self.n,
            self.m,
            self.bridges,
            self.good,
            girth,
            opt(&self.nu),
            ur,
            kind,
            opt(&self.nu_ac),
            c1a,
            c1b,
            c2a,
            c2b,
            opt(&self.conj1_margin),
            if self.falsified { "yes" } else { "no" },
            self.explored,
            note
        )
    }
}

fn cmd_experiment(corpus: &[String], csv: Option<&std::path::Path>, budget: u64) -> u8 {
    let start = Instant::now();
    let instances = match parse_corpus(corpus) {
        Ok(is) => is,
        Err((msg, code)) => {
            eprintln!("error: {msg}");
            return code;
        }
    };
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    let mut any_falsified = false;
    for (name, g) in &instances {
        let row = measure(name, g, budget);
        if row.falsified {
            any_falsified = true;
            eprintln!("falsified: {name}");
        }
        out.push_str(&row.csv());
        out.push('\n');
    }
    match csv {
        None => print!("{out}"),
        Some(p) => {
            if let Err(e) = fs::write(p, &out) {
                eprintln!("error: {}: {e}", p.display());
                return EXIT_FORMAT;
            }
        }
    }
    eprintln!(
        "measured {} instances in {:.2}s",
        instances.len(),
        start.elapsed().as_secs_f64()
    );
    if any_falsified {
        EXIT_FALSIFIED
    } else {
        EXIT_OK
    }
}

type Corpus = Vec<(String, Graph)>;

fn parse_corpus(tokens: &[String]) -> Result<Corpus, (String, u8)> {
    let mut out: Corpus = Vec::new();
    let mut it2 = tokens.iter();
    while let Some(kw) = it2.next() {
        let mut arg = |what: &str| -> Result<String, (String, u8)> {
            it2.next()
                .cloned()
                .ok_or((format!("{kw}: missing {what}"), EXIT_FORMAT))
        };
        match kw.as_str() {
            "named" => {
                let id = arg("name")?;
                let g = forge::named(&id)
                    .ok_or((format!("unknown name {id}"), EXIT_PRECONDITION))?;
                out.push((id, g));
            }
            "file" => {
                let p = arg("path")?;
                let text = fs::read_to_string(&p).map_err(|e| (format!("{p}: {e}"), EXIT_FORMAT))?;
                let g = read_edge_list(&text).map_err(|e| (format!("{p}: {e}"), EXIT_FORMAT))?;
                out.push((p, g));
            }
            "exhaustive" => {
                let nmax: usize = parse_num(&arg("max size")?, kw)?;
                for n in 1..=nmax {
                    for (i, g) in connected_subcubic_graphs(n).into_iter().enumerate() {
                        out.push((format!("ex-n{n}-i{i}"), g));
                    }
                }
            }
            "random" | "random-noncubic" => {
                let count: usize = parse_num(&arg("count")?, kw)?;
                let nmin: usize = parse_num(&arg("min size")?, kw)?;
                let nmax: usize = parse_num(&arg("max size")?, kw)?;
                let seed: u64 = parse_num(&arg("seed")?, kw)?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for i in 0..count {
                    let n = rng.gen_range(nmin..=nmax);
                    let s: u64 = rng.gen();
                    let g = if kw == "random" {
                        forge::random_subcubic(n, s, true)
                    } else {
                        forge::random_connected_noncubic(n, s)
                    }
                    .map_err(|e| (e.to_string(), EXIT_PRECONDITION))?;
                    let tag = if kw == "random" { "rnd" } else { "rnc" };
                    out.push((format!("{tag}-{i}-n{n}-s{s}"), g));
                }
            }
            "random-girth" => {
                let count: usize = parse_num(&arg("count")?, kw)?;
                let nmin: usize = parse_num(&arg("min size")?, kw)?;
                let nmax: usize = parse_num(&arg("max size")?, kw)?;
                let girth: usize = parse_num(&arg("girth")?, kw)?;
                let seed: u64 = parse_num(&arg("seed")?, kw)?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for i in 0..count {
                    let n = rng.gen_range(nmin..=nmax);
                    let s: u64 = rng.gen();
                    let g = forge::random_subcubic_girth(n, girth, s)
                        .map_err(|e| (e.to_string(), EXIT_PRECONDITION))?;
                    out.push((format!("rg{girth}-{i}-n{n}-s{s}"), g));
                }
            }
            other => {
                return Err((format!("unknown corpus keyword {other}"), EXIT_FORMAT));
            }
        }
    }
    if out.is_empty() {
        return Err(("empty corpus".into(), EXIT_FORMAT));
    }
    Ok(out)
}

fn parse_num<T: std::str::FromStr>(s: &str, kw: &str) -> Result<T, (String, u8)> {
    s.parse().map_err(|_| (format!("{kw}: bad number {s}"), EXIT_FORMAT))
}

/// Oracle size ceilings: exact searches stay affordable below these.
const NU_LIMIT: usize = 40;
const NU_UR_LIMIT: usize = 24;
const NU_AC_LIMIT: usize = 16;

fn measure(name: &str, g: &Graph, budget: u64) -> Row {
    let mut row = Row { instance: name.to_string(), ..Row::default() };
    row.n = g.n();
    row.m = g.m();
    let rep = bridge_report(g);
    row.bridges = rep.count();
    row.good = rep.good_count();
    row.girth = g.girth();
    let connected = g.is_connected();
    let subcubic = g.is_subcubic();
    if !subcubic {
        row.notes.push("not-subcubic".into());
    }
    if !connected {
        row.notes.push("disconnected".into());
    }

    if row.n <= NU_LIMIT {
        match nu_exact_with(g, budget) {
            Ok(r) => {
                row.nu = Some(r.size);
                row.explored += r.explored;
            }
            Err(OracleError::BudgetExhausted { best, .. }) => {
                row.explored += best.explored;
                row.notes.push("nu-budget".into());
            }
        }
    }
    if row.n <= NU_UR_LIMIT {
        match nu_ur_exact_with(g, budget) {
            Ok(r) => {
                row.nu_ur = Some((r.size, "exact"));
                row.explored += r.explored;
            }
            Err(OracleError::BudgetExhausted { best, .. }) => {
                row.nu_ur = Some((best.size, "lower"));
                row.explored += best.explored;
                row.notes.push("nu-ur-budget".into());
            }
        }
    }
    if row.n <= NU_AC_LIMIT {
        match nu_ac_exact_with(g, budget) {
            Ok(r) => {
                row.nu_ac = Some(r.size);
                row.explored += r.explored;
            }
            Err(OracleError::BudgetExhausted { best, .. }) => {
                row.explored += best.explored;
                row.notes.push("nu-ac-budget".into());
            }
        }
    }

    if connected && subcubic {
        let opts = CertifyOptions { oracle_budget: budget, ..CertifyOptions::default() };
        match certify_bridges(g, &opts) {
            Ok(c) => {
                row.explored += c.explored;
                row.cert1 = Some((c.achieved(), c.bound_numerator()));
                if c.audit().is_err() {
                    row.falsified = true;
                    row.notes.push("cert1-audit-failed".into());
                }
                if c.exceptions.iter().any(|e| matches!(e, CertException::K33Top)) {
                    row.notes.push("K33_EXCEPTION".into());
                } else if !c.bound_met() {
                    row.falsified = true;
                    row.notes.push("cert1-unmet".into());
                }
            }
            Err(CertError::ProofFalsified { detail }) => {
                row.falsified = true;
                row.notes.push("cert1-falsified".into());
                eprintln!("{name}: {detail}");
            }
            Err(CertError::Budget { .. }) => row.notes.push("cert1-budget".into()),
            Err(_) => row.notes.push("cert1-error".into()),
        }

        let strict_ok = row.girth.is_none_or(|x| x >= 7);
        let mode = if strict_ok { GirthMode::Strict } else { GirthMode::Relaxed };
        match certify_girth(g, mode) {
            Ok(c) => {
                row.cert2 = Some((c.achieved(), row.n.saturating_sub(1)));
                if !strict_ok {
                    row.notes.push("girth-relaxed".into());
                    if !c.violations.is_empty() {
                        row.notes.push(format!("census-violations={}", c.violations.len()));
                    }
                }
                if !c.bound_met() {
                    row.notes.push("cert2-unmet".into());
                    if strict_ok {
                        row.falsified = true;
                    }
                }
            }
            Err(GirthError::ProofFalsified { detail }) => {
                row.falsified = true;
                row.notes.push("cert2-falsified".into());
                eprintln!("{name}: {detail}");
            }
            Err(_) => row.notes.push("cert2-error".into()),
        }
    }

    // The conjectured bound with all bridges; like the certified bound it
    // excludes K_{3,3}, and it concerns connected subcubic graphs.
    if connected && subcubic && !g.is_k33() {
        if let Some((v, "exact")) = row.nu_ur {
            let margin = 6 * v as i64 - (row.m + row.bridges) as i64;
            row.conj1_margin = Some(margin);
            if margin < 0 {
                row.falsified = true;
                row.notes.push("conjecture-counterexample".into());
            }
        }
    }
    row
}
