//! Command-line surface: solving, oracles, certificate verification,
//! counting, instance generation, gadget construction and checking, and
//! structural classification.
//!
//! Exit codes: 0 = yes / success, 1 = no / invalid, 2 = error, 3 = cap
//! overflow.

use clap::{Args, Parser, Subcommand, ValueEnum};
use diamkit::colouring::{self, Colouring, ColouringMode, Transversal, TransversalKind};
use diamkit::graph::Graph;
use diamkit::pattern::{self, PatternSpec};
use diamkit::reductions::{self, CoveringCollection, GadgetOutput, NaeFormula, Role, VerifyCaps};
use diamkit::solver::{self, Answer, Certificate, ProblemKind, SolveError, SolveOptions};
use diamkit::{gen, oracle};
use rand::SeedableRng;
use std::io::Read;

const EXIT_YES: i32 = 0;
const EXIT_NO: i32 = 1;
const EXIT_ERROR: i32 = 2;
const EXIT_OVERFLOW: i32 = 3;

#[derive(Parser)]
#[command(
    name = "diamkit",
    about = "Vertex-partitioning solvers for chair-free graphs of bounded diameter",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Threecol,
    Acyclic3col,
    Star3col,
    Nearbip,
    Ifvs,
    Ioct,
}

impl Problem {
    fn kind(self, k: Option<usize>) -> ProblemKind {
        match self {
            Problem::Threecol => ProblemKind::ThreeCol,
            Problem::Acyclic3col => ProblemKind::Acyclic3Col,
            Problem::Star3col => ProblemKind::Star3Col,
            Problem::Nearbip => ProblemKind::NearBip,
            Problem::Ifvs => ProblemKind::Ifvs { k },
            Problem::Ioct => ProblemKind::Ioct { k },
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Proper,
    Acyclic,
    Star,
}

impl From<Mode> for ColouringMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Proper => ColouringMode::Proper,
            Mode::Acyclic => ColouringMode::Acyclic,
            Mode::Star => ColouringMode::Star,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TransKind {
    Ifvs,
    Ioct,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one of the six problems on a chair-free graph of diameter <= d.
    Solve {
        #[arg(long, value_enum)]
        problem: Problem,
        /// Size bound for ifvs / ioct.
        #[arg(long)]
        k: Option<usize>,
        /// Declared diameter bound (trusted unless --verify-diameter).
        #[arg(long)]
        d: usize,
        /// Cap on enumerated colourings.
        #[arg(long)]
        cap: Option<u64>,
        /// Run the exponential chair search before solving.
        #[arg(long)]
        verify_chair_free: bool,
        /// Measure the diameter (quadratic) and compare with --d.
        #[arg(long)]
        verify_diameter: bool,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Answer by exhaustive search (ground truth for small instances).
    Oracle {
        #[arg(long, value_enum)]
        problem: Problem,
        #[arg(long)]
        k: Option<usize>,
        /// Vertex cap.
        #[arg(long)]
        cap_n: Option<usize>,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Verify a certificate.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Count proper 3-colourings.
    Count {
        #[arg(long)]
        cap: Option<u64>,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Emit an instance on stdout.
    Generate {
        #[command(subcommand)]
        what: GenerateCmd,
    },
    /// Run a hardness construction.
    Reduce {
        #[command(subcommand)]
        what: ReduceCmd,
    },
    /// Rebuild a gadget from its source instance and re-check every claim.
    CheckGadget {
        #[command(subcommand)]
        what: CheckGadgetCmd,
    },
    /// Structural classification.
    Classify {
        #[command(subcommand)]
        what: ClassifyCmd,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Check a colouring file as a proper / acyclic / star 3-colouring.
    Mode {
        #[arg(long, value_enum)]
        mode: Mode,
        graph: String,
        colouring: String,
    },
    /// Check a vertex-set file as an independent transversal.
    Transversal {
        #[arg(long, value_enum)]
        kind: TransKind,
        #[arg(long)]
        k: Option<usize>,
        graph: String,
        set: String,
    },
}

#[derive(Subcommand)]
enum GenerateCmd {
    /// The layered triangle family (diameter 2d - 1).
    Gd {
        #[arg(long)]
        d: u32,
    },
    /// A named pattern graph.
    Pattern {
        #[command(flatten)]
        spec: PatternArgs,
    },
    /// Complete bipartite graph minus a matching.
    Complex {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
        #[arg(long, default_value_t = 0)]
        matching: usize,
    },
    /// Random connected chair-free graph.
    RandomChairFree {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.35)]
        density: f64,
    },
}

#[derive(Args)]
struct PatternArgs {
    /// One of: path, cycle, complete, star, chair, subdivided-claw,
    /// subdivided-star.
    #[arg(long)]
    kind: String,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    h: Option<usize>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
    #[arg(long)]
    ell: Option<usize>,
}

impl PatternArgs {
    fn spec(&self) -> Result<PatternSpec, String> {
        let need_r = || self.r.ok_or_else(|| "missing --r".to_string());
        match self.kind.as_str() {
            "path" => Ok(PatternSpec::Path(need_r()?)),
            "cycle" => Ok(PatternSpec::Cycle(need_r()?)),
            "complete" => Ok(PatternSpec::Complete(need_r()?)),
            "star" => Ok(PatternSpec::Star(need_r()?)),
            "chair" => Ok(PatternSpec::chair()),
            "subdivided-claw" => Ok(PatternSpec::SubdividedClaw {
                h: self.h.ok_or("missing --h")?,
                i: self.i.ok_or("missing --i")?,
                j: self.j.ok_or("missing --j")?,
            }),
            "subdivided-star" => Ok(PatternSpec::SubdividedStar {
                r: need_r()?,
                ell: self.ell.ok_or("missing --ell")?,
            }),
            other => Err(format!("unknown pattern kind '{other}'")),
        }
    }
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Rewrite a formula into variant A with a covering collection.
    VariantA {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Independent-odd-cycle-transversal gadget from a variant-A formula.
    IoctGadget {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Acyclic-3-colouring gadget from a variant-A formula plus collection.
    AcyclicGadget {
        #[arg(default_value = "-")]
        input: String,
        /// Covering collection file; defaults to the first-occurrence
        /// collection when it happens to cover.
        #[arg(long)]
        collection: Option<String>,
    },
    /// Star-3-colouring gadget from a variant-B formula.
    StarGadget {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Diameter-2 triangle-free independent-set gadget.
    IsC3free {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Diameter-2 K_{1,4}-free independent-set gadget.
    IsK14free {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Add a dominating vertex.
    Dominating {
        #[arg(default_value = "-")]
        input: String,
    },
}

#[derive(Subcommand)]
enum CheckGadgetCmd {
    Ioct {
        #[arg(default_value = "-")]
        input: String,
    },
    Acyclic {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        collection: Option<String>,
    },
    Star {
        #[arg(default_value = "-")]
        input: String,
    },
    IsC3free {
        #[arg(default_value = "-")]
        input: String,
    },
    IsK14free {
        #[arg(default_value = "-")]
        input: String,
    },
}

#[derive(Subcommand)]
enum ClassifyCmd {
    /// Chair-freeness; a witness embedding is printed when one exists.
    ChairFree {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Membership in the class whose components are subdivided claws or
    /// paths.
    ClassS {
        #[arg(default_value = "-")]
        input: String,
    },
    /// The cycle / path / complex trichotomy for connected bipartite
    /// chair-free graphs.
    BipartiteChairFree {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        verify_chair_free: bool,
    },
}

/// Caps with flag > environment > default precedence. The environment
/// variable DIAMKIT_CAPS holds comma-separated key=value pairs with keys
/// enum, oracle, mis, count, nae, search.
#[derive(Debug, Clone)]
struct Caps {
    enumeration: u64,
    oracle_n: usize,
    mis_n: usize,
    count: u64,
    nae_vars: u32,
    search_nodes: u64,
}

impl Caps {
    fn from_env() -> Self {
        let mut caps = Caps {
            enumeration: colouring::ENUMERATION_CAP,
            oracle_n: oracle::BRUTE_FORCE_CAP,
            mis_n: oracle::MIS_CAP,
            count: oracle::COUNT_CAP,
            nae_vars: oracle::NAE_CAP,
            search_nodes: 50_000_000,
        };
        if let Ok(spec) = std::env::var("DIAMKIT_CAPS") {
            for item in spec.split(',').filter(|s| !s.is_empty()) {
                let Some((key, value)) = item.split_once('=') else {
                    continue;
                };
                match (key.trim(), value.trim().parse::<u64>()) {
                    ("enum", Ok(v)) => caps.enumeration = v,
                    ("oracle", Ok(v)) => caps.oracle_n = v as usize,
                    ("mis", Ok(v)) => caps.mis_n = v as usize,
                    ("count", Ok(v)) => caps.count = v,
                    ("nae", Ok(v)) => caps.nae_vars = v as u32,
                    ("search", Ok(v)) => caps.search_nodes = v,
                    _ => {}
                }
            }
        }
        caps
    }
}

fn main() {
    let cli = Cli::parse();
    let caps = Caps::from_env();
    let code = match run(cli.command, &caps) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}

#[derive(Debug)]
struct CliError {
    message: String,
    overflow: bool,
}

impl CliError {
    fn new(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            overflow: false,
        }
    }

    fn overflow(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            overflow: true,
        }
    }

    fn exit_code(&self) -> i32 {
        if self.overflow {
            EXIT_OVERFLOW
        } else {
            EXIT_ERROR
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Overflow { .. } => CliError::overflow(e.to_string()),
            other => CliError::new(other.to_string()),
        }
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::new(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::new(format!("reading {path}: {e}")))
    }
}

fn read_graph(path: &str) -> Result<Graph, CliError> {
    Graph::parse(&read_input(path)?).map_err(|e| CliError::new(e.to_string()))
}

fn read_formula(path: &str) -> Result<NaeFormula, CliError> {
    NaeFormula::parse(&read_input(path)?).map_err(|e| CliError::new(e.to_string()))
}

/// Vertex-set file: '#' comments, header `s <count>`, then `v <vertex>`
/// lines with 1-based indices.
fn parse_vertex_set(text: &str) -> Result<Vec<u32>, CliError> {
    let mut expected: Option<usize> = None;
    let mut set = Vec::new();
    for raw in text.lines() {
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let mut tok = t.split_whitespace();
        match tok.next() {
            Some("s") if expected.is_none() => {
                expected = Some(
                    tok.next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| CliError::new("malformed set header"))?,
                );
            }
            Some("v") => {
                let v: u32 = tok
                    .next()
                    .and_then(|s| s.parse().ok())
                    .filter(|&v| v >= 1)
                    .ok_or_else(|| CliError::new("malformed set line"))?;
                set.push(v - 1);
            }
            _ => return Err(CliError::new("malformed set file")),
        }
    }
    let expected = expected.ok_or_else(|| CliError::new("missing set header"))?;
    if set.len() != expected {
        return Err(CliError::new("set header count mismatch"));
    }
    Ok(set)
}

fn format_vertex_set(set: &[u32]) -> String {
    let mut out = format!("s {}\n", set.len());
    for &v in set {
        out.push_str(&format!("v {}\n", v + 1));
    }
    out
}

fn print_answer(answer: &Answer) -> i32 {
    if !answer.yes {
        println!("# answer no");
        return EXIT_NO;
    }
    println!("# answer yes");
    match &answer.certificate {
        Some(Certificate::Colouring(c)) => print!("{}", c.serialize()),
        Some(Certificate::TransversalClass { colouring, label }) => {
            let set = colouring.class(*label);
            println!("# class {label}");
            print!("{}", format_vertex_set(&set));
        }
        None => {}
    }
    EXIT_YES
}

/// Gadget metadata as '#' comments followed by the plain graph format, so
/// the output parses as a graph file.
fn print_gadget(out: &GadgetOutput, kind: &str) {
    println!("# gadget {kind}");
    if let Some(k) = out.k {
        println!("# k {k}");
    }
    if let Some(d) = out.claims.diameter_at_most {
        println!("# claim diameter-at-most {d}");
    }
    if let Some(p) = &out.claims.forbidden_pattern {
        println!("# claim forbidden-pattern {p}");
    }
    if out.claims.triangle_free {
        println!("# claim triangle-free");
    }
    if let Some(offset) = out.claims.alpha_core_plus {
        println!("# claim alpha-core-plus {offset}");
    }
    if out.preprocessing_offset > 0 {
        println!("# preprocessing-offset {}", out.preprocessing_offset);
    }
    for (v, role) in out.roles.iter().enumerate() {
        println!("# role {} {}", v + 1, role_name(role));
    }
    print!("{}", out.graph.serialize());
}

fn role_name(role: &Role) -> String {
    match role {
        Role::Host(v) => format!("host {}", v + 1),
        Role::PairVertex(u, v) => format!("pair-vertex {} {}", u + 1, v + 1),
        Role::EdgePairVertex((a, b), (c, d)) => {
            format!("edge-pair-vertex {}-{} {}-{}", a + 1, b + 1, c + 1, d + 1)
        }
        Role::YVertex(i) => format!("y-vertex {i}"),
        Role::CliqueApex => "clique-apex".to_string(),
        Role::Dominating => "dominating".to_string(),
        Role::Variable { var, positive } => {
            format!("literal {}{}", if *positive { "" } else { "-" }, var + 1)
        }
        Role::Apex(i) => format!("apex {i}"),
        Role::Clause { clause, slot } => format!("clause {} slot {}", clause + 1, slot + 1),
        Role::LadderP { var, j } => format!("ladder-p {} {}", var + 1, j),
        Role::LadderQ { var, j } => format!("ladder-q {} {}", var + 1, j),
        Role::Substitution { u, v } => format!("substitution {}-{}", u + 1, v + 1),
    }
}

fn first_occurrence_collection(phi: &NaeFormula) -> CoveringCollection {
    let mut pair_of: std::collections::HashMap<reductions::Lit, usize> =
        std::collections::HashMap::new();
    for (ci, c) in phi.clauses.iter().enumerate() {
        for l in c {
            pair_of.entry(*l).or_insert(ci);
        }
    }
    let mut pairs: Vec<(reductions::Lit, usize)> = pair_of.into_iter().collect();
    pairs.sort_unstable();
    CoveringCollection { pairs }
}

fn load_collection(
    phi: &NaeFormula,
    path: &Option<String>,
) -> Result<CoveringCollection, CliError> {
    match path {
        Some(p) => {
            CoveringCollection::parse(&read_input(p)?).map_err(|e| CliError::new(e.to_string()))
        }
        None => {
            let coll = first_occurrence_collection(phi);
            if !coll.is_covering(phi) {
                return Err(CliError::new(
                    "the first-occurrence collection does not cover; run reduce variant-a first \
                     and pass --collection",
                ));
            }
            Ok(coll)
        }
    }
}

fn verify_caps(caps: &Caps) -> VerifyCaps {
    VerifyCaps {
        alpha_n: caps.mis_n.max(100),
        oracle_n: caps.oracle_n,
        nae_vars: caps.nae_vars,
        search_nodes: caps.search_nodes,
    }
}

fn check_gadget_report(out: &GadgetOutput, caps: &Caps) -> i32 {
    let report = reductions::verify_gadget(out, &verify_caps(caps));
    print!("{report}");
    if report.all_pass_or_skipped() {
        EXIT_YES
    } else {
        EXIT_NO
    }
}

fn run(command: Command, caps: &Caps) -> Result<i32, CliError> {
    match command {
        Command::Solve {
            problem,
            k,
            d,
            cap,
            verify_chair_free,
            verify_diameter,
            input,
        } => {
            let g = read_graph(&input)?;
            let opts = SolveOptions {
                cap: cap.unwrap_or(caps.enumeration),
                verify_chair_free,
                verify_diameter,
            };
            let answer = solver::solve_with(&g, d, problem.kind(k), &opts)?;
            Ok(print_answer(&answer))
        }
        Command::Oracle {
            problem,
            k,
            cap_n,
            input,
        } => {
            let g = read_graph(&input)?;
            let res = oracle::brute_force(&g, problem.kind(k), cap_n.unwrap_or(caps.oracle_n))
                .map_err(|e| CliError::new(e.to_string()))?;
            if let Some(opt) = res.optimal {
                println!("# optimal {opt}");
            }
            match (&res.witness, res.answer) {
                (oracle::Witness::Colouring(c), true) => {
                    println!("# answer yes");
                    print!("{}", c.serialize());
                }
                (oracle::Witness::VertexSet(s), true) => {
                    println!("# answer yes");
                    print!("{}", format_vertex_set(s));
                }
                _ => println!("# answer {}", if res.answer { "yes" } else { "no" }),
            }
            Ok(if res.answer { EXIT_YES } else { EXIT_NO })
        }
        Command::Verify { what } => match what {
            VerifyCmd::Mode {
                mode,
                graph,
                colouring,
            } => {
                let g = read_graph(&graph)?;
                let c = Colouring::parse(&read_input(&colouring)?)
                    .map_err(|e| CliError::new(e.to_string()))?;
                let ok = colouring::verify_colouring(&g, &c, mode.into())
                    .map_err(|e| CliError::new(e.to_string()))?;
                println!("{}", if ok { "valid" } else { "invalid" });
                Ok(if ok { EXIT_YES } else { EXIT_NO })
            }
            VerifyCmd::Transversal {
                kind,
                k,
                graph,
                set,
            } => {
                let g = read_graph(&graph)?;
                let set = parse_vertex_set(&read_input(&set)?)?;
                let ok = verify_set_transversal(&g, &set, kind, k)?;
                println!("{}", if ok { "valid" } else { "invalid" });
                Ok(if ok { EXIT_YES } else { EXIT_NO })
            }
        },
        Command::Count { cap, input } => {
            let g = read_graph(&input)?;
            match oracle::count_3_colourings(&g, cap.unwrap_or(caps.count)) {
                Ok(count) => {
                    println!("{count}");
                    Ok(EXIT_YES)
                }
                Err(colouring::ColouringError::Overflow { cap }) => {
                    Err(CliError::overflow(format!("count exceeds cap {cap}")))
                }
                Err(e) => Err(CliError::new(e.to_string())),
            }
        }
        Command::Generate { what } => {
            let g = match what {
                GenerateCmd::Gd { d } => {
                    reductions::gd_family(d).map_err(|e| CliError::new(e.to_string()))?
                }
                GenerateCmd::Pattern { spec } => {
                    let spec = spec.spec().map_err(CliError::new)?;
                    pattern::build_pattern(&spec).map_err(|e| CliError::new(e.to_string()))?
                }
                GenerateCmd::Complex { n1, n2, matching } => {
                    if matching > n1.min(n2) {
                        return Err(CliError::new("matching exceeds the smaller side"));
                    }
                    gen::complex(n1, n2, matching)
                }
                GenerateCmd::RandomChairFree { n, seed, density } => {
                    if n == 0 {
                        return Err(CliError::new("need at least one vertex"));
                    }
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                    gen::random_chair_free_connected(n, density, &mut rng)
                }
            };
            print!("{}", g.serialize());
            Ok(EXIT_YES)
        }
        Command::Reduce { what } => run_reduce(what),
        Command::CheckGadget { what } => {
            let out = build_for_check(what)?;
            Ok(check_gadget_report(&out, caps))
        }
        Command::Classify { what } => match what {
            ClassifyCmd::ChairFree { input } => {
                let g = read_graph(&input)?;
                match pattern::chair_witness(&g) {
                    None => {
                        println!("chair-free");
                        Ok(EXIT_YES)
                    }
                    Some(w) => {
                        let verts: Vec<String> =
                            w.map.iter().map(|v| (v + 1).to_string()).collect();
                        println!("chair at {}", verts.join(" "));
                        Ok(EXIT_NO)
                    }
                }
            }
            ClassifyCmd::ClassS { input } => {
                let g = read_graph(&input)?;
                let ok = pattern::in_class_s(&g);
                println!(
                    "{}",
                    if ok {
                        "in class: every component is a subdivided claw or a path"
                    } else {
                        "not in class"
                    }
                );
                Ok(if ok { EXIT_YES } else { EXIT_NO })
            }
            ClassifyCmd::BipartiteChairFree {
                input,
                verify_chair_free,
            } => {
                let g = read_graph(&input)?;
                let class = pattern::classify_bipartite_chair_free(&g, verify_chair_free)
                    .map_err(|e| CliError::new(e.to_string()))?;
                match class {
                    pattern::BipartiteChairFreeClass::Cycle => println!("cycle"),
                    pattern::BipartiteChairFreeClass::Path => println!("path"),
                    pattern::BipartiteChairFreeClass::Complex {
                        parts,
                        removed_matching,
                    } => {
                        println!(
                            "complex sides {} {} removed-matching {}",
                            parts.s1.len(),
                            parts.s2.len(),
                            removed_matching.len()
                        );
                    }
                }
                Ok(EXIT_YES)
            }
        },
    }
}

fn verify_set_transversal(
    g: &Graph,
    set: &[u32],
    kind: TransKind,
    k: Option<usize>,
) -> Result<bool, CliError> {
    for &v in set {
        if v as usize >= g.n() {
            return Err(CliError::new("set vertex out of range"));
        }
    }
    let mut in_set = vec![false; g.n()];
    for &v in set {
        in_set[v as usize] = true;
    }
    for &v in set {
        if g.neighbours(v).iter().any(|&w| in_set[w as usize]) {
            return Ok(false); // not independent
        }
    }
    // Rebuild a colouring: the set becomes class 3, the remainder gets
    // two-coloured. A transversal with a non-bipartite remainder is invalid
    // for either kind.
    let keep: Vec<bool> = in_set.iter().map(|&b| !b).collect();
    let (rest, old_of) = g.induced(&keep);
    let parts = match diamkit::graph::bipartition(&rest) {
        diamkit::graph::Bipartiteness::Bipartite(bp) => bp,
        diamkit::graph::Bipartiteness::OddCycle(_) => return Ok(false),
    };
    let mut labels = vec![3u8; g.n()];
    let mut side = vec![false; rest.n()];
    for &v in &parts.s2 {
        side[v as usize] = true;
    }
    for (new_v, &old_v) in old_of.iter().enumerate() {
        labels[old_v as usize] = if side[new_v] { 2 } else { 1 };
    }
    let c = Colouring::new(labels).map_err(|e| CliError::new(e.to_string()))?;
    let tk = TransversalKind {
        kind: match kind {
            TransKind::Ifvs => Transversal::Ifvs,
            TransKind::Ioct => Transversal::Ioct,
        },
        k,
    };
    colouring::verify_transversal_class(g, &c, 3, tk).map_err(|e| CliError::new(e.to_string()))
}

fn run_reduce(what: ReduceCmd) -> Result<i32, CliError> {
    match what {
        ReduceCmd::VariantA { input } => {
            let phi = read_formula(&input)?;
            let (out, coll) = reductions::to_variant_a(&phi);
            print!("{}", out.serialize());
            print!("{}", coll.serialize());
            Ok(EXIT_YES)
        }
        ReduceCmd::IoctGadget { input } => {
            let phi = read_formula(&input)?;
            let out =
                reductions::build_ioct_gadget(&phi).map_err(|e| CliError::new(e.to_string()))?;
            print_gadget(&out, "ioct");
            Ok(EXIT_YES)
        }
        ReduceCmd::AcyclicGadget { input, collection } => {
            let phi = read_formula(&input)?;
            let coll = load_collection(&phi, &collection)?;
            let out = reductions::build_acyclic_gadget(&phi, &coll)
                .map_err(|e| CliError::new(e.to_string()))?;
            print_gadget(&out, "acyclic");
            Ok(EXIT_YES)
        }
        ReduceCmd::StarGadget { input } => {
            let phi = read_formula(&input)?;
            let out =
                reductions::build_star_gadget(&phi).map_err(|e| CliError::new(e.to_string()))?;
            print_gadget(&out, "star");
            Ok(EXIT_YES)
        }
        ReduceCmd::IsC3free { input } => {
            let g = read_graph(&input)?;
            let out = reductions::build_is_diam2_trianglefree(&g)
                .map_err(|e| CliError::new(e.to_string()))?;
            print_gadget(&out, "is-c3free");
            Ok(EXIT_YES)
        }
        ReduceCmd::IsK14free { input } => {
            let g = read_graph(&input)?;
            let out = reductions::build_is_diam2_k14free(&g)
                .map_err(|e| CliError::new(e.to_string()))?;
            print_gadget(&out, "is-k14free");
            Ok(EXIT_YES)
        }
        ReduceCmd::Dominating { input } => {
            let g = read_graph(&input)?;
            let out = reductions::add_dominating_vertex(&g);
            print_gadget(&out, "dominating");
            Ok(EXIT_YES)
        }
    }
}

fn build_for_check(what: CheckGadgetCmd) -> Result<GadgetOutput, CliError> {
    match what {
        CheckGadgetCmd::Ioct { input } => {
            let phi = read_formula(&input)?;
            reductions::build_ioct_gadget(&phi).map_err(|e| CliError::new(e.to_string()))
        }
        CheckGadgetCmd::Acyclic { input, collection } => {
            let phi = read_formula(&input)?;
            let coll = load_collection(&phi, &collection)?;
            reductions::build_acyclic_gadget(&phi, &coll)
                .map_err(|e| CliError::new(e.to_string()))
        }
        CheckGadgetCmd::Star { input } => {
            let phi = read_formula(&input)?;
            reductions::build_star_gadget(&phi).map_err(|e| CliError::new(e.to_string()))
        }
        CheckGadgetCmd::IsC3free { input } => {
            let g = read_graph(&input)?;
            reductions::build_is_diam2_trianglefree(&g)
                .map_err(|e| CliError::new(e.to_string()))
        }
        CheckGadgetCmd::IsK14free { input } => {
            let g = read_graph(&input)?;
            reductions::build_is_diam2_k14free(&g).map_err(|e| CliError::new(e.to_string()))
        }
    }
}
