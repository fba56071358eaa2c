use cgw::algol::corpus::CORPUS;
use cgw::algol::{
    correction_check, denote, equational_check, eval, parse_term, store_env, type_of, CheckConfig,
    DenoteConfig,
};

fn cfg(copies: usize, max_len: usize) -> CheckConfig {
    CheckConfig {
        denote: DenoteConfig { copies, nat_max: 8 },
        max_len,
        fuel: 100_000,
    }
}

fn same_denotation(m: &str, n: &str, c: CheckConfig) -> bool {
    let (m, n) = (parse_term(m).unwrap(), parse_term(n).unwrap());
    denote(&m, c.denote, c.max_len).unwrap().plays()
        == denote(&n, c.denote, c.max_len).unwrap().plays()
}

#[test]
fn evaluation_preserves_types() {
    for p in CORPUS {
        let t = parse_term(p.source).unwrap();
        let store = p.initial_store().unwrap();
        let env = store_env(&store).unwrap();
        let ty = type_of(&env, &t).unwrap();
        let out = eval(&t, &store, 10_000).unwrap();
        assert!(out.value.is_canonical(), "{}", p.name);
        assert_eq!(type_of(&env, &out.value).unwrap(), ty, "{}", p.name);
        assert_eq!(
            store_env(&out.store).unwrap(),
            env,
            "{}: store typing",
            p.name
        );
        assert_eq!(
            eval(&t, &store, 10_000).unwrap(),
            out,
            "{}: not deterministic",
            p.name
        );
    }
}

#[test]
fn fuel_is_reported() {
    let t = parse_term("(\\f:Nat -> Nat. f (f (f 1))) (\\x:Nat. x)").unwrap();
    let e = correction_check(
        &t,
        &Default::default(),
        CheckConfig {
            fuel: 3,
            ..cfg(3, 8)
        },
    )
    .unwrap_err();
    assert!(e.is_resource_bound());
}

#[test]
fn unused_cells_are_invisible() {
    for p in CORPUS.iter().filter(|p| p.store.is_empty()) {
        let wrapped = format!("new w' := 0 in {}", p.source);
        assert!(same_denotation(p.source, &wrapped, cfg(2, 8)), "{}", p.name);
    }
}

#[test]
fn corpus_pairs_observe_alike() {
    let closed: Vec<_> = CORPUS.iter().filter(|p| p.store.is_empty()).collect();
    let mut equal = 0;
    for p in &closed {
        for q in &closed {
            let (m, n) = (parse_term(p.source).unwrap(), parse_term(q.source).unwrap());
            let Ok(r) = equational_check(&m, &n, cfg(2, 8)) else {
                continue;
            };
            assert_eq!(r.mismatch, None, "{} vs {}", p.name, q.name);
            if r.same_denotation {
                assert!(r.observed > 0);
                equal += 1;
            }
        }
    }
    assert!(equal > closed.len(), "only {equal} equal pairs");
}

#[test]
fn local_reference_equations() {
    let c = cfg(2, 8);
    assert!(same_denotation(
        "new x := 1 in new y := 2 in if zero(!x) then !y else 5",
        "new y := 2 in new x := 1 in if zero(!x) then !y else 5",
        c,
    ));
    assert!(same_denotation(
        "new x := 0 in new y := 3 in new u := (x := 4) in if zero(!x) then 0 else !y",
        "new x := 0 in new u := (x := 4) in new y := 3 in if zero(!x) then 0 else !y",
        c,
    ));
    assert!(!same_denotation("new x := 1 in !x", "new x := 2 in !x", c));
}

#[test]
fn reading_a_fresh_cell() {
    assert!(same_denotation("new x := T in !x", "T", cfg(2, 8)));
}
