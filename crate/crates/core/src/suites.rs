//! The bundled property suites behind `cgw suite`.
//!
//! Each suite is a list of independent checks. A report lists them in a
//! fixed order, so the same configuration always renders the same bytes.

use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

use crate::algol::corpus::{parse_corpus, Sample, CORPUS};
use crate::algol::{correction_check, CheckConfig, DenoteConfig};
use crate::async_graph::{
    compose_functoriality, is_innocent, is_positional, rel_trace, tensor_functoriality, AsyncError,
    Relation,
};
use crate::corpus::{duels, triples, winning_pairs};
use crate::exponential::{
    bang, check_comonoid_negative, comonoid_law_check, embedding_check, left_leaning_diagonal,
    ComonoidStructure, Negativity,
};
use crate::game::{bool_game, game_two, nat_game, Axiom, Game, GameSpec, Payoff, Polarity};
use crate::monoidal::{symmetry, trace, trace_axiom_suite, GenLimits, Morphism};
use crate::strategy::{
    compose, copycat, interact_two, is_well_bracketed, is_winning, unique_witness,
    validate_strategy, Bracketing, Strategy,
};

pub const SUITES: [&str; 10] = [
    "payoff-axioms",
    "category-laws",
    "traced-axioms",
    "winning-closure",
    "bracketing",
    "comonoid",
    "innocence",
    "positional",
    "rel-functoriality",
    "algol-correction",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub copies: usize,
    pub max_len: usize,
    pub nat_max: u32,
    pub fuel: u64,
    /// Program file for `algol-correction`; the bundled programs otherwise.
    pub corpus: Option<PathBuf>,
    /// Worker threads.
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 1,
            copies: 2,
            max_len: 12,
            nat_max: 8,
            fuel: 100_000,
            corpus: None,
            jobs: 1,
        }
    }
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite '{0}' (expected one of: {list})", list = SUITES.join(", "))]
    Unknown(String),
    #[error("{0} must be at least 1")]
    Bound(&'static str),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Corpus(#[from] crate::algol::corpus::CorpusError),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub status: Status,
    /// A witness on failure, or a short note.
    pub detail: String,
}

impl Check {
    fn new(id: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            id: id.into(),
            status: if passed { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    fn error(id: impl Into<String>, e: impl fmt::Display) -> Check {
        Check::new(id, false, format!("error: {e}"))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Format {
    Plain,
    Tsv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let line = match format {
                Format::Plain if c.detail.is_empty() => format!("{} {}\n", c.status, c.id),
                Format::Plain => format!("{} {}: {}\n", c.status, c.id, c.detail),
                Format::Tsv => format!(
                    "{}\t{}\t{}\n",
                    c.id,
                    c.status,
                    c.detail.replace(['\t', '\n'], " ")
                ),
            };
            out.push_str(&line);
        }
        if format == Format::Plain {
            out.push_str(&format!(
                "{}: {} passed, {} failed, {} skipped\n",
                self.suite,
                self.count(Status::Pass),
                self.count(Status::Fail),
                self.count(Status::Skip)
            ));
        }
        out
    }
}

type Task<'a> = Box<dyn Fn() -> Vec<Check> + Send + Sync + 'a>;

/// Runs tasks on `jobs` threads. Results keep the order of `tasks`.
fn run_tasks(tasks: Vec<Task<'_>>, jobs: usize) -> Vec<Check> {
    if jobs <= 1 || tasks.len() <= 1 {
        return tasks.iter().flat_map(|t| t()).collect();
    }
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut slots: Vec<Vec<Check>> = vec![Vec::new(); tasks.len()];
    let done = std::sync::Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for _ in 0..jobs.min(tasks.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                let Some(t) = tasks.get(i) else { break };
                let r = t();
                done.lock().expect("worker panicked").push((i, r));
            });
        }
    });
    for (i, r) in done.into_inner().expect("worker panicked") {
        slots[i] = r;
    }
    slots.into_iter().flatten().collect()
}

pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<Report, SuiteError> {
    for (what, v) in [
        ("copies", cfg.copies as u64),
        ("max-len", cfg.max_len as u64),
        ("nat-max", cfg.nat_max as u64),
        ("fuel", cfg.fuel),
    ] {
        if v == 0 {
            return Err(SuiteError::Bound(what));
        }
    }
    let tasks = match name {
        "payoff-axioms" => payoff_axioms(cfg),
        "category-laws" => category_laws(cfg),
        "traced-axioms" => traced_axioms(cfg),
        "winning-closure" => winning_closure(cfg),
        "bracketing" => bracketing(cfg),
        "comonoid" => comonoid(cfg),
        "innocence" => innocence(cfg),
        "positional" => positional(cfg),
        "rel-functoriality" => rel_functoriality(cfg),
        "algol-correction" => algol_correction(cfg, load_samples(cfg)?),
        _ => return Err(SuiteError::Unknown(name.to_string())),
    };
    Ok(Report {
        suite: name.to_string(),
        checks: run_tasks(tasks, cfg.jobs),
    })
}

fn load_samples(cfg: &RunConfig) -> Result<Vec<Sample>, SuiteError> {
    match &cfg.corpus {
        None => Ok(CORPUS
            .iter()
            .map(|p| p.sample().expect("bundled program parses"))
            .collect()),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| SuiteError::Io {
                path: path.clone(),
                source,
            })?;
            Ok(parse_corpus(&text)?)
        }
    }
}

/// Bool, 𝟚 and Nat, and every tensor, dual and linear arrow between two
/// of them.
pub fn base_games(nat_max: u32) -> Vec<Game> {
    let base = [bool_game(), game_two(), nat_game(nat_max)];
    let mut out: Vec<Game> = base.to_vec();
    for a in &base {
        out.push(a.dual());
        for b in &base {
            out.push(a.tensor(b));
            out.push(a.loli(b));
        }
    }
    out
}

fn bad_table(axiom: Axiom) -> Game {
    let spec = GameSpec::new("T", &["r", "a", "b"], "r");
    let spec = match axiom {
        Axiom::Norm => spec
            .edge("q", "r", "a", Polarity::Opponent, Payoff::new(0, 1))
            .edge("V", "a", "b", Polarity::Player, Payoff::ZERO)
            .empty_payoff("a", Payoff::new(1, 0)),
        Axiom::Compatibility => spec
            .edge("q", "r", "a", Polarity::Opponent, Payoff::new(1, 0))
            .edge("V", "a", "b", Polarity::Player, Payoff::ZERO),
        _ => spec
            .edge("q", "r", "a", Polarity::Opponent, Payoff::new(0, 1))
            .edge("V", "a", "b", Polarity::Player, Payoff::ZERO)
            .path_payoff(&["q", "V"], Payoff::new(0, 2)),
    };
    Game::build(&spec).expect("well-formed table")
}

/// Three games, each breaking exactly the named axiom.
pub fn violating_tables() -> Vec<(Axiom, Game)> {
    [Axiom::Norm, Axiom::Compatibility, Axiom::SubAdditivity]
        .into_iter()
        .map(|a| (a, bad_table(a)))
        .collect()
}

fn payoff_axioms(cfg: &RunConfig) -> Vec<Task<'static>> {
    let mut tasks: Vec<Task> = Vec::new();
    for g in base_games(cfg.nat_max) {
        tasks.push(Box::new(move || {
            let bad = crate::game::validate_payoff(&g);
            let detail = bad.first().map(|v| v.describe(&g)).unwrap_or_default();
            vec![Check::new(format!("valid {g}"), bad.is_empty(), detail)]
        }));
    }
    for (axiom, g) in violating_tables() {
        tasks.push(Box::new(move || {
            let bad = crate::game::validate_payoff(&g);
            let named: Vec<String> = bad.iter().map(|v| v.axiom.to_string()).collect();
            let ok = bad.iter().any(|v| v.axiom == axiom);
            vec![Check::new(
                format!("reject {axiom}"),
                ok,
                format!("found: {}", named.join(" ")),
            )]
        }));
    }
    tasks
}

const TRIPLES: usize = 20;

fn category_laws(cfg: &RunConfig) -> Vec<Task<'static>> {
    let mut tasks: Vec<Task> = Vec::new();
    for (i, t) in triples(cfg.seed, TRIPLES).into_iter().enumerate() {
        tasks.push(Box::new(move || {
            let [a, b, c, d] = &t.games;
            let mut out = Vec::new();
            let assoc = (|| {
                let left = compose(a, c, d, &compose(a, b, c, &t.sigma, &t.tau)?, &t.upsilon)?;
                let right = compose(a, b, d, &t.sigma, &compose(b, c, d, &t.tau, &t.upsilon)?)?;
                Ok::<_, crate::strategy::StrategyError>(first_difference(&left, &right))
            })();
            out.push(match assoc {
                Ok(w) => Check::new(format!("assoc #{i}"), w.is_none(), w.unwrap_or_default()),
                Err(e) => Check::error(format!("assoc #{i}"), e),
            });
            for (law, r) in [
                ("id-left", compose(a, a, b, &copycat(a), &t.sigma)),
                ("id-right", compose(a, b, b, &t.sigma, &copycat(b))),
            ] {
                out.push(match r {
                    Ok(s) => {
                        let w = first_difference(&s, &t.sigma);
                        Check::new(format!("{law} #{i}"), w.is_none(), w.unwrap_or_default())
                    }
                    Err(e) => Check::error(format!("{law} #{i}"), e),
                });
            }
            out.push(witness_check(i, a, b, c, &t.sigma, &t.tau));
            out
        }));
    }
    tasks
}

fn first_difference(l: &Strategy, r: &Strategy) -> Option<String> {
    l.plays()
        .symmetric_difference(r.plays())
        .next()
        .map(|p| l.game().format_moves(p))
}

/// Every play of `σ;τ` has a unique witness, and the witnesses of its
/// prefixes are prefixes of it.
fn witness_check(
    i: usize,
    a: &Game,
    b: &Game,
    c: &Game,
    sigma: &Strategy,
    tau: &Strategy,
) -> Check {
    let id = format!("witness #{i}");
    let st = match compose(a, b, c, sigma, tau) {
        Ok(s) => s,
        Err(e) => return Check::error(id, e),
    };
    let g = st.game();
    for p in st.plays() {
        let u = match unique_witness(a, b, c, sigma, tau, p) {
            Ok(u) => u,
            Err(e) => return Check::new(id, false, format!("{}: {e}", g.format_moves(p))),
        };
        if p.len() >= 2 {
            let q = &p[..p.len() - 2];
            match unique_witness(a, b, c, sigma, tau, q) {
                Ok(v) if v.is_prefix_of(&u) => {}
                Ok(_) => {
                    return Check::new(
                        id,
                        false,
                        format!("not prefix-monotone at {}", g.format_moves(p)),
                    )
                }
                Err(e) => return Check::new(id, false, format!("{}: {e}", g.format_moves(q))),
            }
        }
    }
    Check::new(id, true, format!("{} plays", st.len()))
}

const TRACE_INSTANCES: usize = 50;

fn traced_axioms(cfg: &RunConfig) -> Vec<Task<'static>> {
    let seed = cfg.seed;
    let mut tasks: Vec<Task> = vec![Box::new(|| {
        let b = bool_game();
        let id = "yanking Bool is copycat";
        match trace(&symmetry(&b, &b), &b, &b, &b).and_then(|t| Ok(t.strategy()?)) {
            Ok(s) => {
                let w = first_difference(&s, &copycat(&b));
                vec![Check::new(id, w.is_none(), w.unwrap_or_default())]
            }
            Err(e) => vec![Check::error(id, e)],
        }
    })];
    tasks.push(Box::new(move || {
        match trace_axiom_suite(seed, TRACE_INSTANCES, GenLimits::default()) {
            Ok(checks) => checks
                .into_iter()
                .map(|c| Check::new(format!("{} #{}", c.axiom, c.instance), c.passed, c.detail))
                .collect(),
            Err(e) => vec![Check::error("traced axioms", e)],
        }
    }));
    tasks
}

const PAIRS: usize = 24;

fn winning_closure(cfg: &RunConfig) -> Vec<Task<'static>> {
    let mut tasks: Vec<Task> = Vec::new();
    for (i, p) in winning_pairs(cfg.seed, PAIRS).into_iter().enumerate() {
        tasks.push(Box::new(move || {
            let [a, b, c] = &p.games;
            let id = format!("compose #{i}");
            vec![match compose(a, b, c, &p.sigma, &p.tau) {
                Ok(st) => {
                    let bad = is_winning(&st);
                    let detail = bad
                        .first()
                        .map(|v| {
                            format!(
                                "segment {} payoff {}",
                                st.game().format_moves(&v.segment),
                                v.payoff
                            )
                        })
                        .unwrap_or_else(|| format!("{} plays", st.len()));
                    Check::new(id, bad.is_empty(), detail)
                }
                Err(e) => Check::error(id, e),
            }]
        }));
    }
    tasks
}

/// The early-answer play on `(Bool ⊸ Bool) ⊸ Bool`.
pub const EARLY_ANSWER: &str = "q@2 q@1 q@0 V@2";
/// A complete well-bracketed play on the same game.
pub const NESTED_ANSWER: &str = "q@2 q@1 q@0 V@0 V@1 V@2";

fn bracketing(cfg: &RunConfig) -> Vec<Task<'static>> {
    let mut tasks: Vec<Task> = vec![Box::new(|| {
        let b = bool_game();
        let g = b.loli(&b).loli(&b);
        let early = Strategy::from_names(g.clone(), &[EARLY_ANSWER]).expect("static play");
        let valid = validate_strategy(&early).is_empty();
        let bad = is_winning(&early);
        let seg = bad
            .first()
            .map(|v| (g.format_moves(&v.segment), v.payoff.to_string()));
        let nested = g.parse_moves(NESTED_ANSWER).expect("static play");
        vec![
            Check::new("early answer is a strategy", valid, ""),
            Check::new(
                "early answer loses",
                seg.as_ref()
                    .is_some_and(|(s, k)| s == "q@0 V@2" && k == "(0,1)"),
                seg.map(|(s, k)| format!("segment {s} payoff {k}"))
                    .unwrap_or_default(),
            ),
            Check::new(
                "nested answer is bracketed",
                is_well_bracketed(&g, &nested, Bracketing::Both),
                "",
            ),
        ]
    })];
    for (i, (sigma, tau)) in duels(cfg.seed, PAIRS).into_iter().enumerate() {
        tasks.push(Box::new(move || {
            let mut out = Vec::new();
            let player = [&sigma, &tau].iter().all(|s| {
                s.plays()
                    .iter()
                    .all(|p| is_well_bracketed(s.game(), p, Bracketing::Player))
            });
            out.push(Check::new(
                format!("winning plays are P-bracketed #{i}"),
                player,
                "",
            ));
            let id = format!("interaction is bracketed #{i}");
            out.push(match interact_two(&sigma, &tau) {
                Ok(plays) => {
                    let bad = plays
                        .iter()
                        .find(|p| !is_well_bracketed(sigma.game(), p, Bracketing::Both));
                    Check::new(
                        id,
                        bad.is_none(),
                        bad.map(|p| sigma.game().format_moves(p))
                            .unwrap_or_default(),
                    )
                }
                Err(e) => Check::error(id, e),
            });
            out
        }));
    }
    tasks
}

fn comonoid(cfg: &RunConfig) -> Vec<Task<'static>> {
    let (copies, max_len) = (cfg.copies, cfg.max_len);
    let mut tasks: Vec<Task> = vec![Box::new(|| {
        let n = bang(&bool_game(), 2).map(|b| b.game.reachable_positions().len());
        vec![Check::new(
            "positions of !Bool (k=2)",
            n.as_ref().is_ok_and(|n| *n == 13),
            format!("{n:?}"),
        )]
    })];
    for base in [bool_game(), game_two()] {
        for k in 1..=copies {
            let base = base.clone();
            tasks.push(Box::new(move || {
                let id = format!("!{base} k={k}");
                let laws = bang(&base, k)
                    .and_then(|b| comonoid_law_check(&ComonoidStructure::new(b), max_len));
                let mut out = match laws {
                    Ok(ls) => ls
                        .into_iter()
                        .map(|l| {
                            Check::new(
                                format!("{} {id}", l.law),
                                l.passed,
                                l.witness.unwrap_or_default(),
                            )
                        })
                        .collect(),
                    Err(e) => vec![Check::error(format!("laws {id}"), e)],
                };
                out.push(match embedding_check(&base, k) {
                    Ok(ok) => Check::new(format!("embedding {id}"), ok, ""),
                    Err(e) => Check::error(format!("embedding {id}"), e),
                });
                out
            }));
        }
    }
    tasks.push(Box::new(|| {
        let m = bool_game().dual();
        let id = "no cocommutative comonoid on Bool*";
        vec![
            match left_leaning_diagonal(&m).and_then(|d| check_comonoid_negative(&m, &d)) {
                Ok(Negativity::Fails { witness }) => Check::new(id, true, witness),
                Ok(other) => Check::new(id, false, format!("{other:?}")),
                Err(e) => Check::error(id, e),
            },
        ]
    }));
    tasks
}

/// Tensors of up to three components for the copycat checks.
pub fn copycat_games() -> Vec<Game> {
    let (b, t, n) = (bool_game(), game_two(), nat_game(2));
    vec![
        b.clone(),
        b.tensor(&t),
        b.tensor(&b),
        Game::tensor_all(&[&b, &t, &n]),
        Game::tensor_all(&[&b, &b, &b]),
    ]
}

fn corpus_strategies(seed: u64) -> Vec<Strategy> {
    winning_pairs(seed, PAIRS)
        .into_iter()
        .flat_map(|p| [p.sigma, p.tau])
        .collect()
}

fn non_innocent() -> Strategy {
    let b = bool_game();
    Strategy::from_names(
        b.tensor(&b),
        &["q@0 V@0", "q@1 V@1", "q@0 V@0 q@1 F@1", "q@1 V@1 q@0 V@0"],
    )
    .expect("static plays")
}

fn non_positional() -> Strategy {
    let b = bool_game();
    let g = Game::tensor_all(&[&b, &b, &b]);
    Strategy::from_names(g, &["q@0 V@0 q@1 V@1 q@2 V@2", "q@1 V@1 q@0 V@0 q@2 F@2"])
        .expect("static plays")
}

fn innocence(cfg: &RunConfig) -> Vec<Task<'static>> {
    let mut tasks: Vec<Task> = Vec::new();
    for g in copycat_games() {
        tasks.push(Box::new(move || {
            let id = format!("copycat {g}");
            vec![match is_innocent(&copycat(&g)) {
                Ok(v) => Check::new(
                    id,
                    v.is_empty(),
                    v.first().map(|v| v.describe(&g)).unwrap_or_default(),
                ),
                Err(e) => Check::error(id, e),
            }]
        }));
    }
    tasks.push(Box::new(|| {
        let s = non_innocent();
        let found = is_innocent(&s).map(|v| v.first().map(|v| v.describe(s.game())));
        vec![Check::new(
            "reject order-sensitive",
            matches!(found, Ok(Some(_))),
            format!("{found:?}"),
        )]
    }));
    let seed = cfg.seed;
    tasks.push(Box::new(move || {
        corpus_strategies(seed)
            .iter()
            .enumerate()
            .map(|(i, s)| match is_innocent(s) {
                Ok(v) if v.is_empty() => Check::new(format!("corpus #{i}"), true, "innocent"),
                Ok(v) => Check {
                    id: format!("corpus #{i}"),
                    status: Status::Skip,
                    detail: format!("not innocent: {}", v[0].describe(s.game())),
                },
                Err(e) => Check::error(format!("corpus #{i}"), e),
            })
            .collect()
    }));
    tasks
}

fn positional(cfg: &RunConfig) -> Vec<Task<'static>> {
    let mut tasks: Vec<Task> = Vec::new();
    for g in copycat_games() {
        tasks.push(Box::new(move || {
            let v = is_positional(&copycat(&g));
            vec![Check::new(format!("copycat {g}"), v.is_empty(), "")]
        }));
    }
    tasks.push(Box::new(|| {
        let s = non_positional();
        let v = is_positional(&s);
        let detail = v
            .first()
            .map(|v| {
                format!(
                    "{} ~ {} then {}",
                    s.game().format_moves(&v.s1),
                    s.game().format_moves(&v.s2),
                    s.game().format_moves(&v.t)
                )
            })
            .unwrap_or_default();
        vec![Check::new(
            "reject history-sensitive",
            !v.is_empty(),
            detail,
        )]
    }));
    let seed = cfg.seed;
    tasks.push(Box::new(move || {
        corpus_strategies(seed)
            .iter()
            .enumerate()
            .filter(|(_, s)| is_innocent(s).is_ok_and(|v| v.is_empty()))
            .map(|(i, s)| {
                Check::new(
                    format!("innocent implies positional #{i}"),
                    is_positional(s).is_empty(),
                    "",
                )
            })
            .collect()
    }));
    tasks
}

fn functoriality_check(
    id: String,
    r: Result<crate::async_graph::FunctorialityReport, AsyncError>,
) -> Check {
    match r {
        Ok(r) => Check::new(id, r.passed, format!("{} vs {} pairs", r.lhs, r.rhs)),
        Err(AsyncError::NotPositional) => Check {
            id,
            status: Status::Skip,
            detail: "not positional".into(),
        },
        Err(e) => Check::error(id, e),
    }
}

fn rel_functoriality(cfg: &RunConfig) -> Vec<Task<'static>> {
    let mut tasks: Vec<Task> = Vec::new();
    let pairs = winning_pairs(cfg.seed, PAIRS);
    for (i, p) in pairs.iter().cloned().enumerate() {
        tasks.push(Box::new(move || {
            let [a, b, c] = &p.games;
            vec![functoriality_check(
                format!("compose #{i}"),
                compose_functoriality(a, b, c, &p.sigma, &p.tau),
            )]
        }));
    }
    for (i, w) in pairs.chunks(2).map(|w| w.to_vec()).enumerate() {
        tasks.push(Box::new(move || {
            let m = |p: &crate::corpus::Pair| {
                Morphism::from_strategy(p.games[0].clone(), p.games[1].clone(), &p.sigma)
            };
            let id = format!("tensor #{i}");
            vec![match (m(&w[0]), m(&w[1])) {
                (Ok(f), Ok(g)) => functoriality_check(id, tensor_functoriality(&f, &g)),
                (Err(e), _) | (_, Err(e)) => Check::error(id, e),
            }]
        }));
    }
    tasks.push(Box::new(|| {
        let xs = ["x1", "x2"];
        let dom: std::collections::BTreeSet<_> = xs.iter().map(|x| (*x, "a")).collect();
        let cod: std::collections::BTreeSet<_> = xs.iter().map(|x| (*x, "b")).collect();
        let diag = Relation::new(
            dom.clone(),
            cod.clone(),
            [(("x2", "a"), ("x2", "b"))].into(),
        )
        .expect("shapes match");
        let off =
            Relation::new(dom, cod, [(("x1", "a"), ("x2", "b"))].into()).expect("shapes match");
        let id_xa = Relation::identity(xs.iter().flat_map(|x| [(*x, "a"), (*x, "b")]).collect());
        let traced_id = rel_trace(&id_xa);
        vec![
            Check::new(
                "trace of diagonal",
                rel_trace(&diag).pairs == [("a", "b")].into(),
                "",
            ),
            Check::new("trace of off-diagonal", rel_trace(&off).is_empty(), ""),
            Check::new(
                "trace of identity",
                traced_id.pairs == [("a", "a"), ("b", "b")].into(),
                "",
            ),
        ]
    }));
    tasks
}

fn algol_correction(cfg: &RunConfig, samples: Vec<Sample>) -> Vec<Task<'static>> {
    let check = CheckConfig {
        denote: DenoteConfig {
            copies: cfg.copies,
            nat_max: cfg.nat_max,
        },
        max_len: cfg.max_len,
        fuel: cfg.fuel,
    };
    samples
        .into_iter()
        .map(|s| -> Task<'static> {
            Box::new(move || {
                vec![match correction_check(&s.term, &s.store, check) {
                    Ok(r) => match &r.witness {
                        None => Check::new(
                            &s.name,
                            true,
                            format!("{} ({} plays)", r.outcome.value, r.lhs.len()),
                        ),
                        Some(w) => Check::new(&s.name, false, format!("differs on {w}")),
                    },
                    Err(e) if e.is_resource_bound() => {
                        Check::new(&s.name, false, format!("resource bound: {e}"))
                    }
                    Err(e) => Check::error(&s.name, e),
                }]
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_and_bounds() {
        assert!(matches!(
            run_suite("nope", &RunConfig::default()),
            Err(SuiteError::Unknown(_))
        ));
        let cfg = RunConfig {
            copies: 0,
            ..RunConfig::default()
        };
        assert!(matches!(
            run_suite("comonoid", &cfg),
            Err(SuiteError::Bound("copies"))
        ));
    }

    #[test]
    fn jobs_do_not_change_the_report() {
        let one = run_suite("winning-closure", &RunConfig::default()).unwrap();
        let four = run_suite(
            "winning-closure",
            &RunConfig {
                jobs: 4,
                ..RunConfig::default()
            },
        )
        .unwrap();
        assert_eq!(one.render(Format::Tsv), four.render(Format::Tsv));
        assert!(one.passed());
    }
}
