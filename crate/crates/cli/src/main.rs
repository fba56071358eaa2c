mod game_expr;
mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cgw::algol::{self, AlgolError, CheckConfig, DenoteConfig, Store};
use cgw::async_graph::{compose_functoriality, is_innocent, is_positional, tensor_functoriality};
use cgw::exponential::{bang, comonoid_law_check, ComonoidStructure};
use cgw::game::validate_payoff;
use cgw::monoidal::{trace, trace_axiom_suite, GenLimits, Morphism};
use cgw::strategy::{compose, is_winning, unique_witness, validate_strategy, Component};
use cgw::suites::{run_suite, Format, RunConfig, SuiteError};

use game_expr::parse_game;
use input::{read_strategy, write_strategy, Loaded};

/// Exit statuses.
const OK: u8 = 0;
const FAILED: u8 = 1;
const BOUND: u8 = 2;
const USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "cgw",
    version,
    about = "Games with payoffs, their strategies and the TracedAlgol interpreter"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = OutFormat::Plain)]
    format: OutFormat,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, ValueEnum)]
enum OutFormat {
    Plain,
    Tsv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect a game given as an expression.
    Game {
        #[command(subcommand)]
        cmd: GameCmd,
    },
    /// Strategy files.
    Strategy {
        #[command(subcommand)]
        cmd: StrategyCmd,
    },
    /// The trace on strategies.
    Trace {
        #[command(subcommand)]
        cmd: TraceCmd,
    },
    /// Bounded exponentials.
    Bang {
        #[command(subcommand)]
        cmd: BangCmd,
    },
    /// Asynchronous-game properties of a strategy.
    Async {
        #[command(subcommand)]
        cmd: AsyncCmd,
    },
    /// TracedAlgol programs.
    Algol {
        #[command(subcommand)]
        cmd: AlgolCmd,
    },
    /// Run a bundled property suite.
    Suite(SuiteArgs),
}

#[derive(Subcommand)]
enum GameCmd {
    /// Check the payoff axioms.
    Validate { game: String },
    /// Print size information.
    Show { game: String },
}

#[derive(Subcommand)]
enum StrategyCmd {
    /// Check the strategy conditions.
    Validate { file: PathBuf },
    /// Check the winning condition.
    Winning { file: PathBuf },
    /// Compose `σ : A → B` with `τ : B → C` and print the result.
    Compose { sigma: PathBuf, tau: PathBuf },
    /// The unique interaction behind a play of `σ;τ`.
    Witness {
        sigma: PathBuf,
        tau: PathBuf,
        /// Moves of `A* ⊗ C`, separated by spaces.
        #[arg(long)]
        play: String,
    },
}

#[derive(Subcommand)]
enum TraceCmd {
    /// Trace out `X` from `f : X ⊗ A → X ⊗ B` and print `A → B`.
    Apply {
        file: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Check the trace axioms on random instances.
    Axioms {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
        /// Positions per generated game.
        #[arg(long, default_value_t = 6)]
        positions: usize,
    },
}

#[derive(Subcommand)]
enum BangCmd {
    /// Build `!_k A` and describe it.
    Build {
        game: String,
        #[arg(long, default_value_t = 2)]
        copies: usize,
    },
    /// Check the comonoid laws on `!_k A`.
    Laws {
        game: String,
        #[arg(long, default_value_t = 2)]
        copies: usize,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
}

#[derive(Subcommand)]
enum AsyncCmd {
    /// Check innocence, positionality or functoriality.
    Check {
        file: PathBuf,
        #[arg(long)]
        innocent: bool,
        #[arg(long)]
        positional: bool,
        /// Compare `(σ;τ)•` with `σ•;τ•` and `(σ⊗τ)•` with `σ•⊗τ•`.
        #[arg(long, requires = "with")]
        functorial: bool,
        /// The second strategy for --functorial.
        #[arg(long)]
        with: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct AlgolArgs {
    /// Program file.
    file: PathBuf,
    /// Initial store cell `x := V`; repeatable.
    #[arg(long = "cell")]
    cells: Vec<String>,
    #[arg(long, default_value_t = 100_000)]
    fuel: u64,
    #[arg(long, default_value_t = 2)]
    copies: usize,
    #[arg(long, default_value_t = 12)]
    max_len: usize,
    #[arg(long, default_value_t = 8)]
    nat_max: u32,
}

#[derive(Subcommand)]
enum AlgolCmd {
    /// Parse and print the program.
    Parse(AlgolArgs),
    /// Print the program's type.
    Type(AlgolArgs),
    /// Evaluate the program.
    Run(AlgolArgs),
    /// Print the plays of the program's strategy.
    Denote(AlgolArgs),
    /// Compare the strategies before and after evaluation.
    Correction(AlgolArgs),
}

#[derive(Args)]
struct SuiteArgs {
    /// One of the bundled suites.
    name: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    copies: usize,
    #[arg(long, default_value_t = 12)]
    max_len: usize,
    #[arg(long, default_value_t = 8)]
    nat_max: u32,
    #[arg(long, default_value_t = 100_000)]
    fuel: u64,
    /// Program file for algol-correction.
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

struct Out {
    format: OutFormat,
}

impl Out {
    fn row(&self, fields: &[&str]) {
        match self.format {
            OutFormat::Plain => println!("{}", fields.join(" ")),
            OutFormat::Tsv => println!("{}", fields.join("\t")),
        }
    }

    fn kv(&self, key: &str, value: impl std::fmt::Display) {
        match self.format {
            OutFormat::Plain => println!("{key}: {value}"),
            OutFormat::Tsv => println!("{key}\t{value}"),
        }
    }
}

/// A failure that is a usage or input problem rather than a verdict.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = Out { format: cli.format };
    match run(cli.cmd, &out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = if e.downcast_ref::<Usage>().is_some() {
                USAGE
            } else {
                FAILED
            };
            ExitCode::from(code)
        }
    }
}

fn verdict(ok: bool) -> u8 {
    if ok {
        OK
    } else {
        FAILED
    }
}

fn run(cmd: Cmd, out: &Out) -> Result<u8> {
    match cmd {
        Cmd::Game { cmd } => game_cmd(cmd, out),
        Cmd::Strategy { cmd } => strategy_cmd(cmd, out),
        Cmd::Trace { cmd } => trace_cmd(cmd, out),
        Cmd::Bang { cmd } => bang_cmd(cmd, out),
        Cmd::Async { cmd } => async_cmd(cmd, out),
        Cmd::Algol { cmd } => algol_cmd(cmd, out),
        Cmd::Suite(args) => suite_cmd(args, out),
    }
}

fn usage(e: anyhow::Error) -> anyhow::Error {
    anyhow::Error::new(Usage(format!("{e:#}")))
}

fn game_cmd(cmd: GameCmd, out: &Out) -> Result<u8> {
    match cmd {
        GameCmd::Validate { game } => {
            let g = parse_game(&game).map_err(usage)?;
            let bad = validate_payoff(&g);
            for v in &bad {
                out.row(&["violation", &v.axiom.to_string(), &v.describe(&g)]);
            }
            out.kv("game", &g);
            out.kv("valid", bad.is_empty());
            Ok(verdict(bad.is_empty()))
        }
        GameCmd::Show { game } => {
            let g = parse_game(&game).map_err(usage)?;
            out.kv("game", &g);
            out.kv("atoms", g.atom_count());
            out.kv("positions", g.reachable_positions().len());
            out.kv("longest play", g.max_play_len());
            out.kv("negative", g.is_negative());
            Ok(OK)
        }
    }
}

fn load(path: &Path) -> Result<Loaded> {
    read_strategy(path).map_err(usage)
}

fn strategy_cmd(cmd: StrategyCmd, out: &Out) -> Result<u8> {
    match cmd {
        StrategyCmd::Validate { file } => {
            let s = load(&file)?.strategy;
            let bad = validate_strategy(&s);
            for v in &bad {
                let mut w = s.game().format_moves(&v.play);
                if let Some(o) = &v.other {
                    w = format!("{w} / {}", s.game().format_moves(o));
                }
                out.row(&["violation", &v.clause.to_string(), &w]);
            }
            out.kv("plays", s.len());
            out.kv("valid", bad.is_empty());
            Ok(verdict(bad.is_empty()))
        }
        StrategyCmd::Winning { file } => {
            let s = load(&file)?.strategy;
            let bad = is_winning(&s);
            for v in &bad {
                let g = s.game();
                out.row(&[
                    "losing",
                    &g.format_moves(&v.prefix),
                    "then",
                    &g.format_moves(&v.segment),
                    "payoff",
                    &v.payoff.to_string(),
                ]);
            }
            out.kv("winning", bad.is_empty());
            Ok(verdict(bad.is_empty()))
        }
        StrategyCmd::Compose { sigma, tau } => {
            let (s, t) = (load(&sigma)?, load(&tau)?);
            let ((a, b), (b2, c)) = (s.arrow()?, t.arrow()?);
            if b != b2 {
                return Err(usage(anyhow::anyhow!("middle games differ: {b} and {b2}")));
            }
            let st = compose(&a, &b, &c, &s.strategy, &t.strategy)?;
            print!("{}", write_strategy(&s.from_src, &t.to_src, &st));
            Ok(OK)
        }
        StrategyCmd::Witness { sigma, tau, play } => {
            let (s, t) = (load(&sigma)?, load(&tau)?);
            let ((a, b), (_, c)) = (s.arrow()?, t.arrow()?);
            let gac = a.dual().tensor(&c);
            let p = gac.parse_moves(&play).map_err(|e| usage(e.into()))?;
            match unique_witness(&a, &b, &c, &s.strategy, &t.strategy, &p) {
                Ok(u) => {
                    let named: Vec<String> = u
                        .moves
                        .iter()
                        .map(|(comp, m)| {
                            let g = match comp {
                                Component::A => a.dual(),
                                Component::B => b.clone(),
                                Component::C => c.clone(),
                            };
                            format!("{comp:?}:{}", g.move_name(*m))
                        })
                        .collect();
                    out.kv("interaction", named.join(" "));
                    out.kv("on A,B", s.strategy.game().format_moves(&u.on_ab(&a, &b)));
                    out.kv("on B,C", t.strategy.game().format_moves(&u.on_bc(&a, &b)));
                    Ok(OK)
                }
                Err(e) => {
                    out.kv("witness", e);
                    Ok(FAILED)
                }
            }
        }
    }
}

fn trace_cmd(cmd: TraceCmd, out: &Out) -> Result<u8> {
    match cmd {
        TraceCmd::Apply { file, x, a, b } => {
            let f = load(&file)?;
            let (gx, ga, gb) = (
                parse_game(&x).map_err(usage)?,
                parse_game(&a).map_err(usage)?,
                parse_game(&b).map_err(usage)?,
            );
            let (src, dst) = f.arrow()?;
            let m = Morphism::from_strategy(src, dst, &f.strategy)?;
            let t = trace(&m, &gx, &ga, &gb)?.strategy()?;
            print!("{}", write_strategy(&a, &b, &t));
            Ok(OK)
        }
        TraceCmd::Axioms {
            seed,
            count,
            positions,
        } => {
            let lim = GenLimits {
                positions,
                ..GenLimits::default()
            };
            let checks = trace_axiom_suite(seed, count, lim)?;
            for c in &checks {
                let status = if c.passed { "pass" } else { "fail" };
                out.row(&[status, &format!("{} #{}", c.axiom, c.instance), &c.detail]);
            }
            Ok(verdict(checks.iter().all(|c| c.passed)))
        }
    }
}

fn bang_cmd(cmd: BangCmd, out: &Out) -> Result<u8> {
    match cmd {
        BangCmd::Build { game, copies } => {
            let g = parse_game(&game).map_err(usage)?;
            let b = bang(&g, copies)?;
            out.kv("game", &b.game);
            out.kv("copies", b.copies);
            out.kv("positions", b.game.reachable_positions().len());
            out.kv("longest play", b.game.max_play_len());
            Ok(OK)
        }
        BangCmd::Laws {
            game,
            copies,
            max_len,
        } => {
            let g = parse_game(&game).map_err(usage)?;
            let laws = comonoid_law_check(&ComonoidStructure::new(bang(&g, copies)?), max_len)?;
            for l in &laws {
                let status = if l.passed { "pass" } else { "fail" };
                out.row(&[status, l.law, l.witness.as_deref().unwrap_or("")]);
            }
            Ok(verdict(laws.iter().all(|l| l.passed)))
        }
    }
}

fn async_cmd(cmd: AsyncCmd, out: &Out) -> Result<u8> {
    let AsyncCmd::Check {
        file,
        innocent,
        positional,
        functorial,
        with,
    } = cmd;
    let s = load(&file)?;
    let g = s.strategy.game().clone();
    let mut ok = true;
    let all = !innocent && !positional && !functorial;
    if innocent || all {
        let bad = is_innocent(&s.strategy)?;
        for v in &bad {
            out.row(&["violation", "innocence", &v.describe(&g)]);
        }
        out.kv("innocent", bad.is_empty());
        ok &= bad.is_empty();
    }
    if positional || all {
        let bad = is_positional(&s.strategy);
        for v in &bad {
            let w = format!(
                "{} ~ {} then {}",
                g.format_moves(&v.s1),
                g.format_moves(&v.s2),
                g.format_moves(&v.t)
            );
            out.row(&["violation", "positional", &w]);
        }
        out.kv("positional", bad.is_empty());
        ok &= bad.is_empty();
    }
    if functorial {
        let t = load(with.as_ref().expect("required by clap"))?;
        let ((a, b), (b2, c)) = (s.arrow()?, t.arrow()?);
        if b == b2 {
            let r = compose_functoriality(&a, &b, &c, &s.strategy, &t.strategy)?;
            out.kv(
                "compose",
                format!("{} ({} vs {} pairs)", r.passed, r.lhs, r.rhs),
            );
            ok &= r.passed;
        }
        let f = Morphism::from_strategy(a, b, &s.strategy)?;
        let (c1, d1) = t.arrow()?;
        let h = Morphism::from_strategy(c1, d1, &t.strategy)?;
        let r = tensor_functoriality(&f, &h)?;
        out.kv(
            "tensor",
            format!("{} ({} vs {} pairs)", r.passed, r.lhs, r.rhs),
        );
        ok &= r.passed;
    }
    Ok(verdict(ok))
}

fn algol_cmd(cmd: AlgolCmd, out: &Out) -> Result<u8> {
    let (which, args) = match cmd {
        AlgolCmd::Parse(a) => ("parse", a),
        AlgolCmd::Type(a) => ("type", a),
        AlgolCmd::Run(a) => ("run", a),
        AlgolCmd::Denote(a) => ("denote", a),
        AlgolCmd::Correction(a) => ("correction", a),
    };
    let src = std::fs::read_to_string(&args.file)
        .with_context(|| format!("reading {}", args.file.display()))
        .map_err(usage)?;
    match algol_run(which, &src, &args, out) {
        Ok(code) => Ok(code),
        Err(e) => {
            eprintln!("error: {e}");
            Ok(if e.is_resource_bound() { BOUND } else { FAILED })
        }
    }
}

fn parse_store(cells: &[String]) -> Result<Store, AlgolError> {
    let mut store = Store::new();
    for c in cells {
        let (x, v) = c.split_once(":=").unwrap_or((c, ""));
        store.insert(x.trim().to_string(), algol::parse_term(v.trim())?);
    }
    Ok(store)
}

fn algol_run(which: &str, src: &str, args: &AlgolArgs, out: &Out) -> Result<u8, AlgolError> {
    let term = algol::parse_term(src)?;
    let store = parse_store(&args.cells)?;
    if which == "parse" {
        out.kv("term", &term);
        return Ok(OK);
    }
    let ty = algol::type_of(&algol::store_env(&store)?, &term)?;
    let denote_cfg = DenoteConfig {
        copies: args.copies,
        nat_max: args.nat_max,
    };
    match which {
        "type" => out.kv("type", &ty),
        "run" => {
            let r = algol::eval(&term, &store, args.fuel)?;
            out.kv("value", &r.value);
            for (x, v) in &r.store {
                out.kv(&format!("store {x}"), v);
            }
            out.kv("steps", r.steps);
        }
        "denote" => {
            let s = algol::denote(&algol::with_store(&store, &term), denote_cfg, args.max_len)?;
            out.kv("game", s.game());
            for p in s.plays() {
                out.row(&["play", &s.game().format_moves(p)]);
            }
        }
        _ => {
            let cfg = CheckConfig {
                denote: denote_cfg,
                max_len: args.max_len,
                fuel: args.fuel,
            };
            let r = algol::correction_check(&term, &store, cfg)?;
            out.kv("value", &r.outcome.value);
            out.kv("plays", r.lhs.len());
            match &r.witness {
                None => out.kv("correction", "holds"),
                Some(w) => out.kv("correction", format!("fails on {w}")),
            }
            return Ok(verdict(r.agrees()));
        }
    }
    Ok(OK)
}

fn suite_cmd(a: SuiteArgs, out: &Out) -> Result<u8> {
    let cfg = RunConfig {
        seed: a.seed,
        copies: a.copies,
        max_len: a.max_len,
        nat_max: a.nat_max,
        fuel: a.fuel,
        corpus: a.corpus,
        jobs: a.jobs.max(1),
    };
    let report = match run_suite(&a.name, &cfg) {
        Ok(r) => r,
        Err(
            e @ (SuiteError::Unknown(_)
            | SuiteError::Bound(_)
            | SuiteError::Io { .. }
            | SuiteError::Corpus(_)),
        ) => return Err(usage(e.into())),
    };
    let format = match out.format {
        OutFormat::Plain => Format::Plain,
        OutFormat::Tsv => Format::Tsv,
    };
    print!("{}", report.render(format));
    Ok(verdict(report.passed()))
}
