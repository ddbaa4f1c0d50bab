use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use eternal_core::domination::static_number_with_limit;
use eternal_core::grid::{checked_defense, render_svg, render_window, GridRound};
use eternal_core::io::{check_script_range, emit_graph_file, parse_graph_file, GraphFile};
use eternal_core::{
    build_reduction, eternal_number, make_floating_policy, min_connected_dominating_set,
    parse_attack_script, simulate, simulate_grid, strategy_upper_bound, verify_reduction,
    verify_window, AttackScript, Attacker, Construction, Coord, Graph, GridAttacker, GridKind,
    Kind, PatrolState, PolicyCore, RunReport, SolverOptions, Variant,
};

const BUDGET_ENV: &str = "ETERNAL_GUARD_BUDGET";

#[derive(Parser)]
#[command(
    name = "eternal",
    version,
    about = "Eternal domination games on graphs and grids"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct VariantArgs {
    /// domination, roman or italian
    #[arg(long, default_value = "domination")]
    variant: Kind,
    /// Require guard supports to induce a connected subgraph
    #[arg(long)]
    connected: bool,
}

impl VariantArgs {
    fn variant(&self) -> Variant {
        Variant::new(self.variant, self.connected)
    }
}

#[derive(Args)]
struct Common {
    /// Write a JSON run report here
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct GridArgs {
    /// t4, t8, t3 or t6
    #[arg(long, default_value = "t4")]
    grid: GridKind,
    /// Window half-width; interior vertices satisfy |x|, |y| < radius
    #[arg(long, default_value_t = 12)]
    radius: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum static dominating configuration
    Static {
        graph: PathBuf,
        #[command(flatten)]
        v: VariantArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Exact eternal number by safe-family elimination
    Solve {
        graph: PathBuf,
        #[command(flatten)]
        v: VariantArgs,
        /// Largest guard budget to try (default: floating-strategy bound)
        #[arg(long)]
        max_k: Option<u32>,
        /// Forbid several guards on one vertex in the plain variant
        #[arg(long)]
        no_stacking: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Play a floating-guard policy against an attacker
    Simulate {
        graph: PathBuf,
        #[arg(long, default_value = "domination")]
        variant: Kind,
        /// Attack script (vertex ids or a directive)
        #[arg(long)]
        script: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        rounds: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Build a hardness gadget and write it as a graph file
    Reduce {
        graph: PathBuf,
        #[arg(long, default_value = "t1")]
        theorem: Construction,
        /// Output file (stdout when absent)
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Build a gadget and check its value relation with the exact solver
    VerifyReduction {
        graph: PathBuf,
        #[arg(long, default_value = "t1")]
        theorem: Construction,
        #[command(flatten)]
        common: Common,
    },
    /// Check a grid pattern on a finite window
    GridVerify {
        #[command(flatten)]
        g: GridArgs,
        /// Also write an SVG drawing of the window
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Replay attacks against a grid patrol
    GridSimulate {
        #[command(flatten)]
        g: GridArgs,
        #[arg(long)]
        script: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        rounds: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Interactive attack loop on a grid: enter `x y` per line
    GridPlay {
        #[arg(long, default_value = "t4")]
        grid: GridKind,
        /// Displayed window half-width
        #[arg(long, default_value_t = 5)]
        radius: i64,
        #[command(flatten)]
        common: Common,
    },
}

/// Errors in inputs are usage errors (2); a failed check is a violation (1).
enum Outcome {
    Ok,
    Violation,
}

fn solver_options(stacking: bool) -> anyhow::Result<SolverOptions> {
    let mut opts = SolverOptions {
        stacking,
        ..SolverOptions::default()
    };
    if let Ok(raw) = std::env::var(BUDGET_ENV) {
        opts.budget = raw
            .trim()
            .parse()
            .with_context(|| format!("{BUDGET_ENV} must be a non-negative integer, got `{raw}`"))?;
    }
    Ok(opts)
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_graph(path: &Path) -> anyhow::Result<GraphFile> {
    parse_graph_file(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_script(path: &Path) -> anyhow::Result<AttackScript> {
    parse_attack_script(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn graph_inputs(r: &mut RunReport, path: &Path, g: &Graph) {
    r.input("graph", file_name(path))
        .input("n", g.n())
        .input("m", g.m());
}

fn finish(r: &RunReport, common: &Common) -> anyhow::Result<Outcome> {
    if let Some(p) = &common.report {
        std::fs::write(p, r.to_json()).with_context(|| format!("cannot write {}", p.display()))?;
    }
    Ok(if r.all_ok() {
        Outcome::Ok
    } else {
        Outcome::Violation
    })
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let started = Instant::now();
    match cli.cmd {
        Command::Static { graph, v, common } => {
            let file = load_graph(&graph)?;
            let g = &file.graph;
            let variant = v.variant();
            let res = static_number_with_limit(g, variant, None)?;
            println!("static {variant} number: {}", res.weight);
            println!("witness: {}", res.witness);
            let mut r = RunReport::new("static");
            graph_inputs(&mut r, &graph, g);
            r.input("variant", variant.to_string())
                .number("static", res.weight)
                .number("witness", res.witness.counts())
                .timing("total", ms(started));
            finish(&r, &common)
        }
        Command::Solve {
            graph,
            v,
            max_k,
            no_stacking,
            common,
        } => {
            let file = load_graph(&graph)?;
            let g = &file.graph;
            let variant = v.variant();
            let opts = solver_options(!no_stacking)?;
            let k_max = match max_k {
                Some(k) => k,
                None => strategy_upper_bound(g, variant.kind)?,
            };
            let res = eternal_number(g, variant, k_max, &opts)?;
            match res.value {
                Some(k) => println!("eternal {variant} number: {k}"),
                None => println!("eternal {variant} number: > {k_max}"),
            }
            for (k, win) in &res.verdicts {
                println!(
                    "  k = {k}: {}",
                    if *win {
                        "defender wins"
                    } else {
                        "attacker wins"
                    }
                );
            }
            if !res.non_monotone.is_empty() {
                println!("  non-monotone budgets: {:?}", res.non_monotone);
            }
            if let Some(w) = &res.witness {
                println!("  safe family size: {} of {}", w.configs.len(), w.universe);
            }
            let mut r = RunReport::new("solve");
            graph_inputs(&mut r, &graph, g);
            r.input("variant", variant.to_string())
                .input("k_max", k_max)
                .input("stacking", opts.stacking)
                .input("budget", opts.budget.to_string())
                .number("eternal", res.value)
                .number("lower_bound", res.lower_bound)
                .number("verdicts", &res.verdicts)
                .number("non_monotone", &res.non_monotone)
                .number(
                    "safe_family_size",
                    res.witness.as_ref().map(|w| w.configs.len()),
                )
                .timing("total", ms(started));
            finish(&r, &common)
        }
        Command::Simulate {
            graph,
            variant,
            script,
            seed,
            rounds,
            common,
        } => {
            let file = load_graph(&graph)?;
            let g = &file.graph;
            let (attacker, rounds) = match &script {
                Some(p) => {
                    let s = load_script(p)?;
                    check_script_range(&s, g.n())?;
                    s.graph_attacker()?
                }
                None => (Attacker::Random { seed }, rounds),
            };
            let core = match variant {
                Kind::Italian => PolicyCore::Function(
                    static_number_with_limit(g, Variant::italian().connected(), None)?
                        .witness
                        .counts()
                        .to_vec(),
                ),
                _ => PolicyCore::Set(min_connected_dominating_set(g)?),
            };
            let mut policy = make_floating_policy(g, variant, core)?;
            let start_config = policy.config();
            let t = simulate(g, &mut policy, &attacker, rounds)?;
            println!("start: {start_config}");
            for (i, round) in t.rounds.iter().enumerate() {
                match &round.defense {
                    None => println!("{:>4}: attack {} forfeited (guarded)", i + 1, round.attack),
                    Some(d) => println!(
                        "{:>4}: attack {} -> moves {:?} -> {} {}",
                        i + 1,
                        round.attack,
                        d.non_stay().collect::<Vec<_>>(),
                        round.after,
                        if round.valid { "ok" } else { "INVALID" }
                    ),
                }
            }
            println!(
                "defender {}",
                if t.defender_survived {
                    "survived"
                } else {
                    "failed"
                }
            );
            let mut r = RunReport::new("simulate");
            graph_inputs(&mut r, &graph, g);
            r.input("variant", variant.name())
                .input("attacker", &attacker)
                .input("rounds", rounds)
                .number("guards", policy.budget())
                .number("rounds_played", t.rounds.len())
                .verdict("defender_survived", t.defender_survived)
                .transcript(&t)
                .timing("total", ms(started));
            finish(&r, &common)
        }
        Command::Reduce {
            graph,
            theorem,
            output,
            common,
        } => {
            let file = load_graph(&graph)?;
            let inst = build_reduction(&file.graph, theorem)?;
            let out = GraphFile {
                graph: inst.target.clone(),
                comments: inst.annotations(),
            };
            let text = emit_graph_file(&out);
            match &output {
                Some(p) => std::fs::write(p, &text)
                    .with_context(|| format!("cannot write {}", p.display()))?,
                None => print!("{text}"),
            }
            let mut r = RunReport::new("reduce");
            graph_inputs(&mut r, &graph, &file.graph);
            r.input("theorem", theorem.to_string())
                .number("target_n", inst.target.n())
                .number("target_m", inst.target.m())
                .number("relation", inst.relation.to_string())
                .timing("total", ms(started));
            finish(&r, &common)
        }
        Command::VerifyReduction {
            graph,
            theorem,
            common,
        } => {
            let file = load_graph(&graph)?;
            let opts = solver_options(true)?;
            let rep = verify_reduction(&file.graph, theorem, &opts)?;
            println!("construction {theorem}: {}", rep.relation);
            println!(
                "source value: {}, expected target value: {}",
                rep.source_value, rep.expected
            );
            println!(
                "structure: {}",
                if rep.structure.ok { "ok" } else { "FAILED" }
            );
            if let Some(d) = rep.structure.diameter {
                println!("diameter: {d}");
            }
            let show = |v: Option<u32>| v.map_or("n/a".to_string(), |x| x.to_string());
            println!("target eternal number: {}", show(rep.target_value));
            println!("connected variant: {}", show(rep.connected_value));
            if let Some(p) = &rep.pigeonhole {
                println!(
                    "empty-block check at weight {}: {} configurations, {} violations",
                    p.weight, p.configs_checked, p.violations
                );
            }
            for note in &rep.notes {
                println!("note: {note}");
            }
            match rep.relation_holds {
                Some(true) => println!("relation holds"),
                Some(false) => println!("relation FAILED"),
                None => println!("relation not checked (partial report)"),
            }
            let mut r = RunReport::new("verify-reduction");
            graph_inputs(&mut r, &graph, &file.graph);
            r.input("theorem", theorem.to_string())
                .input("budget", opts.budget.to_string())
                .number("report", &rep)
                .verdict("structure", rep.structure.ok)
                .timing("total", ms(started));
            if let Some(h) = rep.relation_holds {
                r.verdict("relation", h);
            }
            if let Some(p) = &rep.pigeonhole {
                r.verdict("empty_block", p.violations == 0);
            }
            finish(&r, &common)
        }
        Command::GridVerify { g, svg, common } => {
            let state = PatrolState::new(g.grid);
            let rep = verify_window(&state, g.radius);
            println!("grid {} radius {}", g.grid, g.radius);
            println!("interior vertices: {}", rep.interior_vertices);
            for (idx, count) in &rep.index_histogram {
                println!("  index {idx}: {count}");
            }
            println!(
                "all indices 1: {}",
                if rep.all_ones() { "yes" } else { "NO" }
            );
            println!(
                "partition: {}",
                if rep.partition_ok { "ok" } else { "FAILED" }
            );
            println!(
                "density: {} (expected {})",
                rep.density, rep.expected_density
            );
            if let Some(p) = &svg {
                std::fs::write(p, render_svg(&state, g.radius))
                    .with_context(|| format!("cannot write {}", p.display()))?;
            }
            let mut r = RunReport::new("grid-verify");
            r.input("grid", g.grid.name())
                .input("radius", g.radius)
                .number("window", &rep)
                .verdict("all_ones", rep.all_ones())
                .verdict("partition", rep.partition_ok)
                .verdict("density", rep.density_ok())
                .timing("total", ms(started));
            finish(&r, &common)
        }
        Command::GridSimulate {
            g,
            script,
            seed,
            rounds,
            common,
        } => {
            let (attacker, rounds) = match &script {
                Some(p) => load_script(p)?.grid_attacker()?,
                None => (GridAttacker::Random { seed }, rounds),
            };
            if g.radius < 2 {
                bail!("--radius must be at least 2");
            }
            let t = simulate_grid(g.grid, &attacker, rounds, g.radius)?;
            let failed = t.rounds.iter().position(|r| !r.valid());
            let last = t
                .rounds
                .last()
                .map(|r| r.offset_after)
                .unwrap_or(Coord::ORIGIN);
            println!(
                "grid {} radius {}: {} rounds, final offset {last}",
                g.grid,
                g.radius,
                t.rounds.len()
            );
            match failed {
                None => println!("every defense legal, covering and pattern-preserving"),
                Some(i) => println!("round {} FAILED: {:?}", i + 1, t.rounds[i]),
            }
            let mut r = RunReport::new("grid-simulate");
            r.input("grid", g.grid.name())
                .input("radius", g.radius)
                .input("attacker", &attacker)
                .input("rounds", rounds)
                .number("rounds_played", t.rounds.len())
                .number("final_offset", last)
                .verdict("defender_survived", t.defender_survived)
                .transcript(&t)
                .timing("total", ms(started));
            finish(&r, &common)
        }
        Command::GridPlay {
            grid,
            radius,
            common,
        } => {
            let stdin = std::io::stdin();
            let mut out = std::io::stdout().lock();
            let rounds = play(grid, radius, stdin.lock(), &mut out)?;
            let ok = rounds.iter().all(GridRound::valid);
            let mut r = RunReport::new("grid-play");
            r.input("grid", grid.name())
                .input("radius", radius)
                .number("rounds_played", rounds.len())
                .verdict("defender_survived", ok)
                .transcript(&rounds)
                .timing("total", ms(started));
            finish(&r, &common)
        }
    }
}

/// Line-oriented REPL: each input line is `x y`; `q` or end of input stops.
fn play(
    grid: GridKind,
    radius: i64,
    input: impl BufRead,
    out: &mut impl Write,
) -> anyhow::Result<Vec<GridRound>> {
    let mut state = PatrolState::new(grid);
    let mut rounds = Vec::new();
    write!(out, "{}", render_window(&state, radius, None))?;
    write!(out, "attack> ")?;
    out.flush()?;
    for line in input.lines() {
        let line = line?;
        let t = line.trim();
        if t == "q" || t == "quit" {
            break;
        }
        if t.is_empty() {
            write!(out, "attack> ")?;
            out.flush()?;
            continue;
        }
        let parsed: Result<Vec<i64>, _> = t.split_whitespace().map(str::parse).collect();
        match parsed.ok().as_deref() {
            Some(&[x, y]) => {
                let at = Coord::new(x, y);
                if state.guarded(at) {
                    writeln!(out, "{at} is guarded; pick an empty cell")?;
                } else {
                    // checks run on a window wider than the display
                    let round = checked_defense(&state, at, radius.max(2) + 2)?;
                    let defense = round.defense.expect("defended");
                    state = PatrolState::with_offset(grid, round.offset_after)?;
                    writeln!(
                        out,
                        "guard {} -> {at}, offset now {}{}",
                        defense.dominator,
                        state.offset,
                        if round.valid() { "" } else { " (INVALID)" }
                    )?;
                    write!(out, "{}", render_window(&state, radius, Some(&defense)))?;
                    rounds.push(round);
                }
            }
            _ => writeln!(out, "expected `x y`, got `{t}`")?,
        }
        write!(out, "attack> ")?;
        out.flush()?;
    }
    writeln!(out)?;
    Ok(rounds)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
