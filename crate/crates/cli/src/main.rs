use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use chomp_core::engine::{Engine, EngineStats};
use chomp_core::lab::{self, Prior, VerifyFamily, VerifyParams, VerifyRow};
use chomp_core::oracle::{oracle_grundy, DEFAULT_ORACLE_STATES};
use chomp_core::symmetry::{self, ReductionTrace, DEFAULT_SEARCH_NODES};
use chomp_core::{format, grundy, EngineConfig, Face, FamilySpec, Outcome, SimplicialComplex, TranspositionTable};

mod tables;

#[derive(Parser)]
#[command(name = "chomp", version, about = "Exact nim-values for subset take-away and graph chomp")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Persistent transposition table (JSON); loaded before and saved after the command.
    #[arg(long, global = true, env = "CHOMP_CACHE")]
    cache: Option<PathBuf>,
    #[arg(long, global = true)]
    no_reduction: bool,
    #[arg(long, global = true)]
    no_closed_forms: bool,
    #[arg(long, global = true)]
    no_decomposition: bool,
    /// Solve with the brute-force oracle instead of the engine.
    #[arg(long, global = true)]
    oracle: bool,
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Memo capacity for the engine, state budget for the oracle.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Worker threads for multi-family verification.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Nim-value, outcome class and a winning move.
    Solve {
        #[command(flatten)]
        pos: PositionArg,
        /// Also list every move with its child value.
        #[arg(long)]
        spectrum: bool,
    },
    /// Apply symmetry reductions until the position is in simplest form.
    Reduce {
        #[command(flatten)]
        pos: PositionArg,
        /// Write the final position here (.cplx or .edges).
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 64)]
        max_steps: usize,
    },
    /// Compare closed forms with the engine (closed forms disabled) and the oracle.
    Verify(VerifyArgs),
    /// Print the closed-form value tables.
    Tables {
        #[arg(long, value_enum, default_value_t = TableChoice::All)]
        table: TableChoice,
        #[arg(long)]
        csv: bool,
    },
    /// Play against the solver on stdin.
    Play {
        #[command(flatten)]
        pos: PositionArg,
        #[arg(long, value_enum, default_value_t = First::Auto)]
        first: First,
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Experimental sweeps; reports are JSON lines.
    Scan {
        #[command(subcommand)]
        kind: ScanKind,
    },
    /// Inspect or clear the persistent cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Args)]
struct PositionArg {
    /// Family spec such as `complete:3`, `gmk:m=1,k=2` or `torus_3x3`.
    #[arg(long, conflicts_with = "input")]
    family: Option<FamilySpec>,
    /// Position file (.cplx facets or .edges).
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Family name or `all`.
    family: String,
    #[arg(long, default_value_t = 8)]
    max_v: usize,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Largest tail length for gmk.
    #[arg(long, default_value_t = 6)]
    max: usize,
    #[arg(long, value_delimiter = ',', default_value = "3,5")]
    cycles: Vec<usize>,
    /// Oracle state budget per case; 0 disables the oracle.
    #[arg(long, default_value_t = 200_000)]
    oracle_states: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableChoice {
    All,
    Forest,
    Bipartite,
    Gmk,
    Blocks,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum First {
    /// The solver starts when it can win, otherwise the human does.
    Auto,
    Human,
    Solver,
}

#[derive(Subcommand)]
enum ScanKind {
    /// Grow a tail on one vertex and classify the value sequence.
    Tails {
        #[arg(long)]
        base: FamilySpec,
        #[arg(long)]
        attach: Option<usize>,
        #[arg(long, default_value_t = 12)]
        kmax: usize,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Odd-cycle pseudotrees in simplest form with several loaded cycle vertices.
    Multi {
        #[arg(long, default_value_t = 3)]
        cycle: usize,
        #[arg(long, default_value_t = 8)]
        vmax: usize,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Wheels W_3 .. W_max.
    Wheels {
        #[arg(long, default_value_t = 7)]
        max: usize,
        #[command(flatten)]
        report: ReportArgs,
    },
}

#[derive(Args)]
struct ReportArgs {
    /// JSON-lines report file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Reuse values from an existing report at `--out`.
    #[arg(long, requires = "out")]
    resume: bool,
}

#[derive(Subcommand)]
enum CacheAction {
    Stats,
    Clear,
}

struct Fail {
    code: u8,
    msg: String,
}

impl From<chomp_core::Error> for Fail {
    fn from(e: chomp_core::Error) -> Fail {
        use chomp_core::Error::*;
        let code = match e {
            Budget(_) => 3,
            InvalidInput(_) | Parse { .. } | IllegalMove(_) | Capacity { .. } | Io(_) => 2,
            TableConflict { .. } | Json(_) => 1,
        };
        Fail { code, msg: e.to_string() }
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Fail {
        Fail { code: 1, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail { code: 2, msg: msg.into() }
}

type CliResult<T> = Result<T, Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

impl Global {
    fn engine_config(&self) -> EngineConfig {
        let mut cfg = EngineConfig {
            use_reduction: !self.no_reduction,
            use_closed_forms: !self.no_closed_forms,
            use_decomposition: !self.no_decomposition,
            ..EngineConfig::default()
        };
        if let Some(b) = self.budget {
            cfg.memo_capacity = b;
        }
        cfg
    }

    fn oracle_states(&self) -> usize {
        self.budget.unwrap_or(DEFAULT_ORACLE_STATES)
    }
}

fn run(cli: Cli) -> CliResult<u8> {
    let g = &cli.global;
    let table = match &g.cache {
        Some(p) => TranspositionTable::load(p)?,
        None => TranspositionTable::new(),
    };
    let result = match &cli.command {
        Command::Solve { pos, spectrum } => cmd_solve(g, &table, pos, *spectrum),
        Command::Reduce { pos, output, max_steps } => cmd_reduce(g, &table, pos, output.as_deref(), *max_steps),
        Command::Verify(args) => cmd_verify(g, &table, args),
        Command::Tables { table: which, csv } => cmd_tables(*which, *csv),
        Command::Play { pos, first, transcript } => cmd_play(g, &table, pos, *first, transcript.as_deref()),
        Command::Scan { kind } => cmd_scan(g, &table, kind),
        Command::Cache { action } => return cmd_cache(g, &table, action),
    };
    if let Some(p) = &g.cache {
        table.save(p)?;
    }
    result
}

impl PositionArg {
    fn load(&self) -> CliResult<(String, SimplicialComplex)> {
        match (&self.family, &self.input) {
            (Some(f), None) => Ok((f.to_string(), f.generate()?)),
            (None, Some(p)) => Ok((p.display().to_string(), format::read_path(p)?)),
            _ => Err(usage("give exactly one of --family or --input")),
        }
    }
}

fn face_list(f: Face) -> Vec<usize> {
    f.vertices().collect()
}

fn print_json<T: Serialize>(v: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(v).map_err(|e| Fail { code: 1, msg: e.to_string() })?;
    match writeln!(io::stdout().lock(), "{text}") {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

#[derive(Serialize)]
struct Stats {
    #[serde(flatten)]
    engine: EngineStats,
    table_entries: usize,
}

#[derive(Serialize)]
struct SolveOutput {
    position: String,
    vertices: usize,
    faces: usize,
    value: u32,
    classification: Outcome,
    optimal_move: Option<Vec<usize>>,
    witness_moves: BTreeMap<u32, Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    spectrum: Option<Vec<(Vec<usize>, u32)>>,
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    stats: Option<Stats>,
}

fn outcome(v: u32) -> Outcome {
    if v == 0 {
        Outcome::P
    } else {
        Outcome::N
    }
}

fn cmd_solve(g: &Global, table: &TranspositionTable, pos: &PositionArg, spectrum: bool) -> CliResult<u8> {
    let (name, c) = pos.load()?;
    let out = if g.oracle {
        let states = g.oracle_states();
        let value = oracle_grundy(&c, states)?;
        let mut witness_moves = BTreeMap::new();
        let mut spec = spectrum.then(Vec::new);
        if value > 0 || spec.is_some() {
            for &s in c.moves() {
                let v = oracle_grundy(&c.remove_face(s)?, states)?;
                if v <= value + 1 {
                    witness_moves.entry(v).or_insert_with(|| face_list(s));
                }
                match spec.as_mut() {
                    Some(sp) => sp.push((face_list(s), v)),
                    None if witness_moves.range(..value).count() as u32 == value => break,
                    None => {}
                }
            }
        }
        SolveOutput {
            position: name,
            vertices: c.vertex_count(),
            faces: c.face_count(),
            value,
            classification: outcome(value),
            optimal_move: if value > 0 { witness_moves.get(&0).cloned() } else { None },
            witness_moves,
            spectrum: spec,
            method: "oracle",
            stats: None,
        }
    } else {
        let cfg = EngineConfig { full_spectrum: spectrum, ..g.engine_config() };
        let rec = grundy(&c, &cfg, table)?;
        SolveOutput {
            position: name,
            vertices: c.vertex_count(),
            faces: c.face_count(),
            value: rec.value,
            classification: outcome(rec.value),
            optimal_move: if rec.value > 0 { rec.witness_moves.get(&0).map(|&f| face_list(f)) } else { None },
            witness_moves: rec.witness_moves.iter().map(|(&k, &f)| (k, face_list(f))).collect(),
            spectrum: rec.spectrum.map(|sp| sp.into_iter().map(|(f, v)| (face_list(f), v)).collect()),
            method: "engine",
            stats: Some(Stats { engine: rec.stats, table_entries: table.len() }),
        }
    };
    if g.json {
        print_json(&out)?;
    } else {
        println!("{}: value {} ({:?})", out.position, out.value, out.classification);
        match &out.optimal_move {
            Some(m) => println!("winning move: {}", fmt_face(m)),
            None => println!("no winning move"),
        }
        if let Some(sp) = &out.spectrum {
            for (m, v) in sp {
                println!("  {} -> {v}", fmt_face(m));
            }
        }
    }
    Ok(0)
}

fn fmt_face(vs: &[usize]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

#[derive(Serialize)]
struct ReduceOutput {
    position: String,
    trace: ReductionTrace,
    /// Simplest form was certified by an exhaustive search.
    simplest: bool,
    final_vertices: usize,
    final_facets: Vec<Vec<usize>>,
    value: u32,
    classification: Outcome,
}

fn cmd_reduce(
    g: &Global,
    table: &TranspositionTable,
    pos: &PositionArg,
    output: Option<&Path>,
    max_steps: usize,
) -> CliResult<u8> {
    let (name, c) = pos.load()?;
    let (fin, trace) = symmetry::reduce_to_simplest(&c, max_steps, DEFAULT_SEARCH_NODES);
    let value = if g.oracle {
        oracle_grundy(&fin, g.oracle_states())?
    } else {
        Engine::new(&g.engine_config(), table).value(&fin)?
    };
    if let Some(p) = output {
        format::write_path(p, &fin)?;
    }
    let out = ReduceOutput {
        position: name,
        simplest: trace.simplest,
        final_vertices: fin.vertex_count(),
        final_facets: fin.facets().into_iter().map(face_list).collect(),
        trace,
        value,
        classification: outcome(value),
    };
    if g.json {
        print_json(&out)?;
    } else {
        println!("{}: {} reduction step(s)", out.position, out.trace.steps.len());
        for (i, s) in out.trace.steps.iter().enumerate() {
            println!("  step {}: swap {:?}, keep {:?}", i + 1, s.pairs, s.fixed_vertices);
        }
        let facets: Vec<String> = out.final_facets.iter().map(|f| fmt_face(f)).collect();
        println!("final: {} vertices, facets {}", out.final_vertices, facets.join(" "));
        println!("simplest form: {}", if out.simplest { "certified" } else { "not certified (search budget)" });
        println!("value {} ({:?})", out.value, out.classification);
    }
    Ok(0)
}

#[derive(Serialize)]
struct FamilyReport {
    family: &'static str,
    cases: usize,
    failures: usize,
    rows: Vec<VerifyRow>,
}

fn cmd_verify(g: &Global, table: &TranspositionTable, a: &VerifyArgs) -> CliResult<u8> {
    let families: Vec<VerifyFamily> = if a.family == "all" {
        VerifyFamily::ALL.to_vec()
    } else {
        vec![a.family.parse().map_err(|e: chomp_core::Error| usage(e.to_string()))?]
    };
    let params = VerifyParams { max_v: a.max_v, samples: a.samples, seed: g.seed, max: a.max, cycles: a.cycles.clone() };
    let cfg = EngineConfig { use_closed_forms: false, ..g.engine_config() };
    let run_one = |f: VerifyFamily| lab::verify_family(f, &params, &cfg, table, a.oracle_states);
    let threads = g.threads.max(1).min(families.len());
    let results: Vec<chomp_core::Result<Vec<VerifyRow>>> = if threads <= 1 {
        families.iter().map(|&f| run_one(f)).collect()
    } else {
        let chunks: Vec<Vec<VerifyFamily>> = (0..threads)
            .map(|t| families.iter().copied().skip(t).step_by(threads).collect())
            .collect();
        let mut by_family = BTreeMap::new();
        std::thread::scope(|s| {
            let handles: Vec<_> = chunks
                .iter()
                .map(|chunk| s.spawn(|| chunk.iter().map(|&f| (f.name(), run_one(f))).collect::<Vec<_>>()))
                .collect();
            for h in handles {
                by_family.extend(h.join().expect("verify worker panicked"));
            }
        });
        families.iter().map(|f| by_family.remove(f.name()).unwrap()).collect()
    };
    let mut reports = Vec::new();
    for (f, rows) in families.iter().zip(results) {
        let rows = rows?;
        let failures = rows.iter().filter(|r| !r.pass).count();
        reports.push(FamilyReport { family: f.name(), cases: rows.len(), failures, rows });
    }
    let pass = reports.iter().all(|r| r.failures == 0);
    if g.json {
        print_json(&serde_json::json!({ "pass": pass, "families": reports }))?;
    } else {
        for r in &reports {
            println!("{}: {} cases, {} failures", r.family, r.cases, r.failures);
            for row in r.rows.iter().filter(|x| !x.pass) {
                println!(
                    "  FAIL {} expected {:?} engine {:?} oracle {:?} recurrence {:?}",
                    row.label, row.expected, row.engine, row.oracle, row.recurrence
                );
            }
        }
        println!("{}", if pass { "PASS" } else { "FAIL" });
    }
    Ok(if pass { 0 } else { 1 })
}

fn cmd_tables(which: TableChoice, csv: bool) -> CliResult<u8> {
    let all = [
        (TableChoice::Forest, tables::forest_table()),
        (TableChoice::Bipartite, tables::bipartite_table()),
        (TableChoice::Gmk, tables::gmk_table(12)),
        (TableChoice::Blocks, tables::block_table(8)),
    ];
    let mut first = true;
    for (kind, t) in &all {
        if !matches!(which, TableChoice::All) && std::mem::discriminant(&which) != std::mem::discriminant(kind) {
            continue;
        }
        if !first {
            println!();
        }
        first = false;
        print!("{}", if csv { tables::render_csv(t) } else { tables::render_text(t) });
    }
    Ok(0)
}

fn cmd_play(
    g: &Global,
    table: &TranspositionTable,
    pos: &PositionArg,
    first: First,
    transcript: Option<&Path>,
) -> CliResult<u8> {
    let (name, mut c) = pos.load()?;
    let cfg = g.engine_config();
    let mut log = vec![format!("start {name}")];
    let mut solver_turn = match first {
        First::Human => false,
        First::Solver => true,
        First::Auto => Engine::new(&cfg, table).value(&c)? > 0,
    };
    let stdin = io::stdin();
    let mut lines = stdin.lock().lines();
    let mut out = io::stdout();
    loop {
        if c.is_empty() {
            let winner = if solver_turn { "you win" } else { "solver wins" };
            writeln!(out, "no moves left: {winner}")?;
            log.push(winner.to_string());
            break;
        }
        let faces: Vec<String> = c.facets().into_iter().map(|f| f.to_string()).collect();
        writeln!(out, "position: {}", faces.join(" "))?;
        if solver_turn {
            let rec = grundy(&c, &cfg, table)?;
            let mv = rec.witness_moves.get(&0).copied().filter(|_| rec.value > 0).unwrap_or(c.moves()[0]);
            writeln!(out, "solver takes {mv}")?;
            log.push(format!("solver {mv}"));
            c = c.remove_face(mv)?;
        } else {
            write!(out, "your move (vertices, or q): ")?;
            out.flush()?;
            let Some(line) = lines.next() else {
                log.push("eof".into());
                break;
            };
            let line = line?;
            let line = line.trim();
            if line == "q" || line == "quit" {
                log.push("quit".into());
                break;
            }
            let parsed: Result<Vec<usize>, _> =
                line.split(|ch: char| ch.is_whitespace() || ch == ',').filter(|t| !t.is_empty()).map(str::parse).collect();
            let face = parsed.ok().and_then(|vs| Face::new(vs).ok());
            match face.map(|f| (f, c.remove_face(f))) {
                Some((f, Ok(next))) => {
                    log.push(format!("human {f}"));
                    c = next;
                }
                _ => {
                    writeln!(out, "not a face of the position, try again")?;
                    continue;
                }
            }
        }
        solver_turn = !solver_turn;
    }
    if let Some(p) = transcript {
        fs::write(p, log.join("\n") + "\n")?;
    }
    Ok(0)
}

fn read_prior(path: &Path) -> CliResult<Prior> {
    let mut prior = Prior::new();
    if !path.exists() {
        return Ok(prior);
    }
    for line in fs::read_to_string(path)?.lines().filter(|l| !l.trim().is_empty()) {
        let Ok(v) = serde_json::from_str::<serde_json::Value>(line) else { continue };
        if let (Some(id), Some(value)) = (v["id"].as_str(), v["value"].as_u64()) {
            prior.insert(id.to_string(), value as u32);
        }
    }
    Ok(prior)
}

fn write_report(path: Option<&Path>, rows: &[serde_json::Value]) -> CliResult<()> {
    if let Some(p) = path {
        let mut text = String::new();
        for r in rows {
            text.push_str(&r.to_string());
            text.push('\n');
        }
        fs::write(p, text)?;
    }
    Ok(())
}

fn to_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("report rows serialize")
}

fn cmd_scan(g: &Global, table: &TranspositionTable, kind: &ScanKind) -> CliResult<u8> {
    let cfg = g.engine_config();
    let report = match kind {
        ScanKind::Tails { report, .. } | ScanKind::Multi { report, .. } | ScanKind::Wheels { report, .. } => report,
    };
    let prior = match (&report.out, report.resume) {
        (Some(p), true) => read_prior(p)?,
        _ => Prior::new(),
    };
    let mut rows = Vec::new();
    let failed;
    match kind {
        ScanKind::Tails { base, attach, kmax, .. } => {
            let seq = lab::scan_tails(base, *attach, *kmax, &cfg, table, &prior)?;
            for (k, v) in seq.values.iter().enumerate() {
                rows.push(serde_json::json!({ "id": format!("k={k}"), "k": k, "value": v }));
            }
            rows.push(serde_json::json!({ "id": "summary", "sequence": to_value(&seq) }));
            failed = !seq.oracle_disagreements.is_empty();
            if !g.json {
                let vals: Vec<String> = seq.values.iter().map(|v| v.to_string()).collect();
                println!("base {} attach {}: {}", seq.base, seq.attach_vertex, vals.join(","));
                println!("pattern: {:?} from index {:?}", seq.classification, seq.stable_from);
                println!(
                    "hypothesis holds: {}; value 1 mod 4 seen: {}; truncated: {}",
                    seq.hypothesis.holds(),
                    seq.has_one_mod_four,
                    seq.truncated
                );
            }
        }
        ScanKind::Multi { cycle, vmax, .. } => {
            let inst = lab::scan_multi_attachment(*cycle, *vmax, &cfg, table, &prior)?;
            let violations = inst.iter().filter(|i| i.verdict == lab::Verdict::Violate).count();
            let unverified = inst.iter().filter(|i| i.verdict == lab::Verdict::Unverified).count();
            rows.extend(inst.iter().map(to_value));
            failed = violations > 0;
            if !g.json {
                println!("{} instances, {} violations, {} unverified", inst.len(), violations, unverified);
                for i in inst.iter().filter(|i| i.verdict == lab::Verdict::Violate) {
                    println!("  VIOLATION v={} value={:?} edges {:?}", i.vertices, i.value, i.edges);
                }
            }
        }
        ScanKind::Wheels { max, .. } => {
            let ws = lab::scan_wheels(*max, &cfg, table, &prior)?;
            rows.extend(ws.iter().map(to_value));
            failed = ws.iter().any(|w| w.value.is_some_and(|v| v != 1));
            if !g.json {
                for w in &ws {
                    let v = w.value.map_or("unverified".to_string(), |v| v.to_string());
                    println!("W_{}: {} ({:?})", w.n, v, w.method);
                }
            }
        }
    }
    write_report(report.out.as_deref(), &rows)?;
    if g.json {
        print_json(&rows)?;
    }
    Ok(if failed { 1 } else { 0 })
}

fn cmd_cache(g: &Global, table: &TranspositionTable, action: &CacheAction) -> CliResult<u8> {
    let Some(path) = &g.cache else {
        return Err(usage("no cache file: pass --cache or set CHOMP_CACHE"));
    };
    match action {
        CacheAction::Stats => {
            if g.json {
                print_json(&serde_json::json!({ "path": path.display().to_string(), "entries": table.len() }))?;
            } else {
                println!("{}: {} entries", path.display(), table.len());
            }
        }
        CacheAction::Clear => {
            table.clear();
            table.save(path)?;
            println!("cleared {}", path.display());
        }
    }
    Ok(0)
}
