use proptest::prelude::*;

use cgw::algol::syntax::{Term, ValueType};
use cgw::algol::{eval, parse_term};
use cgw::async_graph::homotopy_class;
use cgw::game::{parse_game_file, print_game_file, validate_payoff, Game};
use cgw::random::{random_game, random_strategy, rng};
use cgw::strategy::{compose, copycat, validate_strategy};

fn game(seed: u64) -> Game {
    random_game(&mut rng(seed), "g", 6, 4)
}

fn ty() -> impl Strategy<Value = ValueType> {
    let leaf = prop_oneof![
        Just(ValueType::Unit),
        Just(ValueType::Bool),
        Just(ValueType::Nat)
    ];
    leaf.prop_recursive(2, 6, 2, |t| {
        (t.clone(), t).prop_map(|(a, b)| ValueType::arrow(a, b))
    })
}

fn term() -> impl Strategy<Value = Term> {
    let name = prop_oneof![Just("x"), Just("y"), Just("f")];
    let leaf = prop_oneof![
        Just(Term::Skip),
        any::<bool>().prop_map(Term::Bool),
        (0u64..9).prop_map(Term::Nat),
        name.clone().prop_map(|x| Term::Var(x.into())),
        name.clone().prop_map(|x| Term::Deref(x.into())),
    ];
    leaf.prop_recursive(4, 24, 3, move |t| {
        let b = |t: Term| Box::new(t);
        prop_oneof![
            (name.clone(), ty(), t.clone()).prop_map(move |(x, a, m)| Term::Lam(x.into(), a, b(m))),
            (t.clone(), t.clone()).prop_map(move |(m, n)| Term::App(b(m), b(n))),
            (name.clone(), t.clone()).prop_map(move |(x, m)| Term::Assign(x.into(), b(m))),
            (name.clone(), t.clone(), t.clone()).prop_map(move |(x, m, n)| Term::New(
                x.into(),
                b(m),
                b(n)
            )),
            t.clone().prop_map(move |m| Term::Zero(b(m))),
            (t.clone(), t.clone(), t.clone()).prop_map(move |(c, m, n)| Term::If(b(c), b(m), b(n))),
            (t.clone(), t.clone()).prop_map(move |(m, n)| Term::Pair(b(m), b(n))),
            (1u8..=2, t.clone()).prop_map(move |(i, m)| Term::Proj(i, b(m))),
            (t.clone(), t.clone()).prop_map(move |(m, n)| Term::Seq(b(m), b(n))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_games_are_valid(seed in any::<u64>()) {
        let g = game(seed);
        prop_assert!(validate_payoff(&g).is_empty());
        prop_assert!(validate_payoff(&g.loli(&g)).is_empty());
    }

    #[test]
    fn game_files_round_trip(seed in any::<u64>()) {
        let spec = game(seed).arena().unwrap().to_spec();
        let back = parse_game_file(&print_game_file(&spec)).unwrap();
        prop_assert_eq!(Game::build(&back).unwrap(), Game::build(&spec).unwrap());
    }

    #[test]
    fn copycat_is_neutral(sa in any::<u64>(), sb in any::<u64>(), ss in any::<u64>()) {
        let (a, b) = (game(sa), game(sb));
        let sigma = random_strategy(&mut rng(ss), &a.dual().tensor(&b), 0.8, 100);
        prop_assert!(validate_strategy(&sigma).is_empty());
        prop_assert_eq!(&compose(&a, &a, &b, &copycat(&a), &sigma).unwrap(), &sigma);
        prop_assert_eq!(&compose(&a, &b, &b, &sigma, &copycat(&b)).unwrap(), &sigma);
    }

    #[test]
    fn composites_are_strategies(sa in any::<u64>(), sb in any::<u64>(), sc in any::<u64>(), ss in any::<u64>()) {
        let (a, b, c) = (game(sa), game(sb), game(sc));
        let mut r = rng(ss);
        let sigma = random_strategy(&mut r, &a.dual().tensor(&b), 0.8, 100);
        let tau = random_strategy(&mut r, &b.dual().tensor(&c), 0.8, 100);
        let st = compose(&a, &b, &c, &sigma, &tau).unwrap();
        prop_assert!(validate_strategy(&st).is_empty());
        prop_assert_eq!(&st, &compose(&a, &b, &c, &sigma, &tau).unwrap());
    }

    #[test]
    fn homotopy_classes_are_closed(sa in any::<u64>(), sb in any::<u64>(), ss in any::<u64>()) {
        let g = game(sa).tensor(&game(sb));
        let paths = g.enumerate_paths(&g.root(), 4);
        let s = &paths[(ss as usize) % paths.len()];
        let class = homotopy_class(&g, &g.root(), s);
        prop_assert!(class.contains(s));
        let mut sorted = s.clone();
        sorted.sort();
        for t in &class {
            prop_assert!(g.is_path(&g.root(), t));
            prop_assert_eq!(g.walk(&g.root(), t), g.walk(&g.root(), s));
            let mut u = t.clone();
            u.sort();
            prop_assert_eq!(&u, &sorted);
            prop_assert_eq!(&homotopy_class(&g, &g.root(), t), &class);
        }
    }

    #[test]
    fn terms_print_and_parse_back(t in term()) {
        prop_assert_eq!(parse_term(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn evaluation_is_deterministic(t in term()) {
        let store = [("x", Term::Nat(1)), ("y", Term::Bool(true))]
            .into_iter()
            .map(|(x, v)| (x.to_string(), v))
            .collect();
        prop_assert_eq!(eval(&t, &store, 500), eval(&t, &store, 500));
    }
}
