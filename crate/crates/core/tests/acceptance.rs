//! One line per acceptance criterion, with its timing.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use cgw::algol::corpus::CORPUS;
use cgw::algol::{
    correction_check, eval, parse_term, AlgolError, CheckConfig, DenoteConfig, DenoteError,
};
use cgw::async_graph::{
    compose_functoriality, is_innocent, is_positional, rel_trace, tensor_functoriality, Relation,
};
use cgw::corpus::{duels, triples, winning_pairs};
use cgw::exponential::{
    bang, check_comonoid_negative, comonoid_law_check, left_leaning_diagonal, ComonoidStructure,
    Negativity,
};
use cgw::game::{bool_game, nat_game, validate_payoff, Game};
use cgw::lazy::StepError;
use cgw::monoidal::{symmetry, trace, trace_axiom_suite, GenLimits, Morphism};
use cgw::strategy::{
    compose, copycat, interact_two, is_well_bracketed, is_winning, unique_witness,
    validate_strategy, Bracketing, Strategy,
};
use cgw::suites::{base_games, copycat_games, violating_tables};

use common::{copycat_oracle, trace_oracle, trace_shapes, witnesses_oracle, Part};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion(n: usize, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let t0 = Instant::now();
    let r = f();
    let dt = t0.elapsed();
    let in_time = limit.is_none_or(|l| dt <= l);
    let ok = r.is_ok() && in_time;
    let limit = limit
        .map(|l| format!(", limit {}s", l.as_secs()))
        .unwrap_or_default();
    let detail = match &r {
        Ok(d) if in_time => d.clone(),
        Ok(d) => format!("{d}; over time"),
        Err(e) => e.clone(),
    };
    println!(
        "criterion {n:>2} {name}: {} ({:.3}s{limit}) {detail}",
        if ok { "PASS" } else { "FAIL" },
        dt.as_secs_f64()
    );
    ok
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn c1_payoff() -> Outcome {
    let mut games: Vec<Game> = (0..=8).map(nat_game).collect();
    games.extend(base_games(8));
    for g in &games {
        let bad = validate_payoff(g);
        ensure(bad.is_empty(), || format!("{g}: {}", bad[0].describe(g)))?;
    }
    let mut named = Vec::new();
    for (axiom, g) in violating_tables() {
        let found: BTreeSet<String> = validate_payoff(&g)
            .iter()
            .map(|v| v.axiom.to_string())
            .collect();
        ensure(found.contains(&axiom.to_string()), || {
            format!("{axiom} table reports {found:?}")
        })?;
        named.push(axiom.to_string());
    }
    Ok(format!(
        "{} games valid; rejected: {}",
        games.len(),
        named.join(", ")
    ))
}

fn c2_early_answer() -> Outcome {
    let b = bool_game();
    let g = b.loli(&b).loli(&b);
    let early = Strategy::from_names(g.clone(), &["", "q@2 q@1", "q@2 q@1 q@0 V@2"])
        .map_err(|e| e.to_string())?;
    let v = validate_strategy(&early);
    ensure(v.is_empty(), || {
        format!("validator rejects: {:?}", v[0].clause)
    })?;
    let bad = is_winning(&early);
    let w = bad.first().ok_or("early answer accepted by is_winning")?;
    let seg = g.format_moves(&w.segment);
    ensure(
        seg == "q@0 V@2" && w.payoff.plus == 0 && w.payoff.minus == 1,
        || format!("witness {seg} payoff {}", w.payoff),
    )?;
    let nested = g
        .parse_moves("q@2 q@1 q@0 V@0 V@1 V@2")
        .map_err(|e| e.to_string())?;
    ensure(is_well_bracketed(&g, &nested, Bracketing::Both), || {
        "nested answers not bracketed".into()
    })?;
    Ok(format!("early answer loses on {seg} with {}", w.payoff))
}

fn c3_category() -> Outcome {
    let ts = triples(1, 20);
    ensure(ts.len() >= 20, || "too few triples".into())?;
    let mut biggest = 0;
    for (i, t) in ts.iter().enumerate() {
        let [a, b, c, d] = &t.games;
        for g in &t.games {
            biggest = biggest.max(g.reachable_positions().len());
        }
        let e = |e: cgw::strategy::StrategyError| format!("#{i}: {e}");
        let l = compose(
            a,
            c,
            d,
            &compose(a, b, c, &t.sigma, &t.tau).map_err(e)?,
            &t.upsilon,
        )
        .map_err(e)?;
        let r = compose(
            a,
            b,
            d,
            &t.sigma,
            &compose(b, c, d, &t.tau, &t.upsilon).map_err(e)?,
        )
        .map_err(e)?;
        ensure(l == r, || format!("associativity fails on #{i}"))?;
        ensure(
            compose(a, a, b, &copycat(a), &t.sigma).map_err(e)? == t.sigma,
            || format!("left identity #{i}"),
        )?;
        ensure(
            compose(a, b, b, &t.sigma, &copycat(b)).map_err(e)? == t.sigma,
            || format!("right identity #{i}"),
        )?;
    }
    ensure(biggest <= 8, || format!("a game has {biggest} positions"))?;
    Ok(format!(
        "{} triples, games of at most {biggest} positions",
        ts.len()
    ))
}

fn c4_witness() -> Outcome {
    let mut plays = 0;
    for (i, t) in triples(1, 20).iter().enumerate() {
        let [a, b, c, d] = &t.games;
        for (x, y, z, s, u) in [(a, b, c, &t.sigma, &t.tau), (b, c, d, &t.tau, &t.upsilon)] {
            let st = compose(x, y, z, s, u).map_err(|e| e.to_string())?;
            let (nx, ny) = (x.atom_count(), y.atom_count());
            for p in st.plays() {
                let found = witnesses_oracle(nx, ny, s, u, p);
                ensure(found.len() == 1, || {
                    format!(
                        "#{i}: {} witnesses for {}",
                        found.len(),
                        st.game().format_moves(p)
                    )
                })?;
                let lib = unique_witness(x, y, z, s, u, p).map_err(|e| format!("#{i}: {e}"))?;
                let tags: Vec<Part> = lib
                    .moves
                    .iter()
                    .map(|(c, _)| match c {
                        cgw::strategy::Component::A => Part::A,
                        cgw::strategy::Component::B => Part::B,
                        cgw::strategy::Component::C => Part::C,
                    })
                    .collect();
                let oracle_tags: Vec<Part> = found[0].iter().map(|(c, _)| *c).collect();
                ensure(tags == oracle_tags, || {
                    format!("#{i}: library witness differs")
                })?;
                if p.len() >= 2 {
                    let shorter = witnesses_oracle(nx, ny, s, u, &p[..p.len() - 2]);
                    ensure(
                        shorter.len() == 1 && found[0].starts_with(&shorter[0]),
                        || format!("#{i}: not prefix-monotone at {}", st.game().format_moves(p)),
                    )?;
                }
                plays += 1;
            }
        }
    }
    Ok(format!("{plays} plays, one witness each"))
}

fn c5_winning() -> Outcome {
    let pairs = winning_pairs(1, 24);
    for (i, p) in pairs.iter().enumerate() {
        let [a, b, c] = &p.games;
        let st = compose(a, b, c, &p.sigma, &p.tau).map_err(|e| e.to_string())?;
        ensure(is_winning(&st).is_empty(), || {
            format!("composite #{i} is not winning")
        })?;
        for s in [&p.sigma, &p.tau, &st] {
            let bad = s
                .plays()
                .iter()
                .find(|q| !is_well_bracketed(s.game(), q, Bracketing::Player));
            ensure(bad.is_none(), || {
                format!("#{i}: winning play not P-bracketed")
            })?;
        }
    }
    let mut seen = 0;
    for (i, (sigma, tau)) in duels(1, 24).iter().enumerate() {
        let plays = interact_two(sigma, tau).map_err(|e| e.to_string())?;
        let bad = plays
            .iter()
            .find(|q| !is_well_bracketed(sigma.game(), q, Bracketing::Both));
        ensure(bad.is_none(), || {
            format!("duel #{i}: {}", sigma.game().format_moves(bad.unwrap()))
        })?;
        seen += plays.len();
    }
    Ok(format!(
        "{} winning pairs, {seen} interaction plays",
        pairs.len()
    ))
}

fn c6_trace() -> Outcome {
    let lim = GenLimits {
        positions: 6,
        depth: 2,
    };
    let checks = trace_axiom_suite(1, 50, lim).map_err(|e| e.to_string())?;
    if let Some(c) = checks.iter().find(|c| !c.passed) {
        return Err(format!("{} #{}: {}", c.axiom, c.instance, c.detail));
    }
    let b = bool_game();
    let yank = trace(&symmetry(&b, &b), &b, &b, &b)
        .map_err(|e| e.to_string())?
        .strategy()
        .map_err(|e| e.to_string())?;
    ensure(yank == copycat(&b), || {
        "yanking on Bool is not copycat".into()
    })?;
    ensure(yank.plays() == &copycat_oracle(&b), || {
        "copycat differs from its definition".into()
    })?;
    Ok(format!("{} axiom instances", checks.len()))
}

fn c7_exponential() -> Outcome {
    let n = bang(&bool_game(), 2)
        .map_err(|e| e.to_string())?
        .game
        .reachable_positions()
        .len();
    ensure(n == 13, || format!("bang(Bool, 2) has {n} positions"))?;
    let mut laws = 0;
    for k in 1..=2 {
        for l in [4, 8] {
            let s = ComonoidStructure::new(bang(&bool_game(), k).map_err(|e| e.to_string())?);
            for c in comonoid_law_check(&s, l).map_err(|e| e.to_string())? {
                ensure(c.passed, || {
                    format!("{} at k={k} L={l}: {:?}", c.law, c.witness)
                })?;
                laws += 1;
            }
        }
    }
    let m = bool_game().dual();
    let d = left_leaning_diagonal(&m).map_err(|e| e.to_string())?;
    match check_comonoid_negative(&m, &d).map_err(|e| e.to_string())? {
        Negativity::Fails { witness } => Ok(format!(
            "13 positions, {laws} law checks, Bool* rejected on {witness}"
        )),
        other => Err(format!("dual(Bool) not rejected: {other:?}")),
    }
}

fn c8_async() -> Outcome {
    for g in copycat_games() {
        let cc = copycat(&g);
        ensure(
            is_innocent(&cc).map_err(|e| e.to_string())?.is_empty(),
            || format!("copycat {g} not innocent"),
        )?;
        ensure(is_positional(&cc).is_empty(), || {
            format!("copycat {g} not positional")
        })?;
    }
    let pairs = winning_pairs(1, 24);
    let mut innocent = 0;
    for p in &pairs {
        for s in [&p.sigma, &p.tau] {
            if is_innocent(s).map_err(|e| e.to_string())?.is_empty() {
                innocent += 1;
                ensure(is_positional(s).is_empty(), || {
                    "innocent but not positional".into()
                })?;
            }
        }
    }
    for (i, p) in pairs.iter().enumerate() {
        let [a, b, c] = &p.games;
        let r =
            compose_functoriality(a, b, c, &p.sigma, &p.tau).map_err(|e| format!("#{i}: {e}"))?;
        ensure(r.passed, || format!("composition functoriality #{i}"))?;
    }
    for (i, w) in pairs.chunks(2).enumerate() {
        let m = |p: &cgw::corpus::Pair| {
            Morphism::from_strategy(p.games[0].clone(), p.games[1].clone(), &p.sigma)
        };
        let (f, g) = (
            m(&w[0]).map_err(|e| e.to_string())?,
            m(&w[1]).map_err(|e| e.to_string())?,
        );
        let r = tensor_functoriality(&f, &g).map_err(|e| format!("#{i}: {e}"))?;
        ensure(r.passed, || format!("tensor functoriality #{i}"))?;
    }
    let mut relations = 0u64;
    for (nx, na, nb) in trace_shapes() {
        let dom: BTreeSet<(usize, usize)> =
            (0..nx).flat_map(|x| (0..na).map(move |a| (x, a))).collect();
        let cod: BTreeSet<(usize, usize)> =
            (0..nx).flat_map(|x| (0..nb).map(move |b| (x, b))).collect();
        let cells: Vec<((usize, usize), (usize, usize))> = dom
            .iter()
            .flat_map(|&d| cod.iter().map(move |&c| (d, c)))
            .collect();
        for mask in 0..1u64 << cells.len() {
            let pairs = (0..cells.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| cells[i])
                .collect();
            let r = Relation::new(dom.clone(), cod.clone(), pairs).map_err(|e| e.to_string())?;
            let want = trace_oracle(mask, nx, na, nb);
            ensure(rel_trace(&r).pairs == want, || {
                format!("trace differs on {nx}x{na}x{nb} mask {mask:#x}")
            })?;
            relations += 1;
        }
    }
    Ok(format!(
        "{innocent} innocent corpus strategies, {relations} relations traced"
    ))
}

fn c9_operational() -> Outcome {
    for p in CORPUS {
        let t = parse_term(p.source).map_err(|e| format!("{}: {e}", p.name))?;
        let out = eval(&t, &p.initial_store().map_err(|e| e.to_string())?, 10_000)
            .map_err(|e| format!("{}: {e}", p.name))?;
        ensure(out.value.to_string() == p.value, || {
            format!("{} gives {}", p.name, out.value)
        })?;
        let want = p.final_store().map_err(|e| e.to_string())?;
        ensure(out.store == want, || {
            format!("{} ends with store {:?}", p.name, out.store)
        })?;
    }
    Ok(format!("{} programs", CORPUS.len()))
}

fn c10_correction() -> Outcome {
    let cfg = CheckConfig {
        denote: DenoteConfig {
            copies: 2,
            nat_max: 8,
        },
        max_len: 12,
        fuel: 100_000,
    };
    let mut plays = 0;
    for p in CORPUS {
        let t = parse_term(p.source).map_err(|e| e.to_string())?;
        let r = correction_check(&t, &p.initial_store().map_err(|e| e.to_string())?, cfg)
            .map_err(|e| format!("{}: {e}", p.name))?;
        ensure(r.agrees(), || {
            format!("{} differs on {:?}", p.name, r.witness)
        })?;
        plays += r.lhs.len();
    }
    let deep =
        parse_term("(\\f:Nat -> Nat. f (f (f 1))) (\\x:Nat. x)").map_err(|e| e.to_string())?;
    match correction_check(&deep, &Default::default(), cfg) {
        Err(e @ AlgolError::Denote(DenoteError::Step(StepError::Overflow(_))))
            if e.is_resource_bound() => {}
        other => return Err(format!("three calls at k=2 did not overflow: {other:?}")),
    }
    Ok(format!(
        "{} programs, {plays} plays; overflow reported",
        CORPUS.len()
    ))
}

fn main() {
    let results = [
        criterion(1, "payoff axioms", secs(1), c1_payoff),
        criterion(2, "early answer and bracketing", None, c2_early_answer),
        criterion(3, "category laws", secs(10), c3_category),
        criterion(4, "unique witness", None, c4_witness),
        criterion(5, "winning closure", None, c5_winning),
        criterion(6, "traced axioms", secs(30), c6_trace),
        criterion(7, "exponential", None, c7_exponential),
        criterion(8, "async layer", secs(30), c8_async),
        criterion(9, "operational corpus", secs(1), c9_operational),
        criterion(10, "correction", secs(120), c10_correction),
    ];
    let failed: Vec<usize> = (1..=10).filter(|i| !results[i - 1]).collect();
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
