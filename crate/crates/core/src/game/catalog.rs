//! The standard base games.

use super::{Game, GameSpec, Payoff, Polarity};

/// The tensor unit `1`.
pub fn unit_game() -> Game {
    Game::unit()
}

/// `𝟚`: a single opponent move with zero payoff.
pub fn game_two() -> Game {
    let spec = GameSpec::new("2", &["root", "end"], "root").edge(
        "o",
        "root",
        "end",
        Polarity::Opponent,
        Payoff::ZERO,
    );
    Game::build(&spec).expect("static game")
}

/// Booleans: the opponent asks `q` (payoff `(0,1)`), the player answers
/// `V` or `F`.
pub fn bool_game() -> Game {
    let spec = GameSpec::new("Bool", &["root", "asked", "true", "false"], "root")
        .edge("q", "root", "asked", Polarity::Opponent, Payoff::new(0, 1))
        .edge("V", "asked", "true", Polarity::Player, Payoff::ZERO)
        .edge("F", "asked", "false", Polarity::Player, Payoff::ZERO)
        .path_payoff(&["q", "V"], Payoff::ZERO)
        .path_payoff(&["q", "F"], Payoff::ZERO);
    Game::build(&spec).expect("static game")
}

/// Naturals up to `max`: a question `q` and one answer edge `0..=max`,
/// each leading to its own position.
pub fn nat_game(max: u32) -> Game {
    let answers: Vec<String> = (0..=max).map(|n| format!("n{n}")).collect();
    let mut positions = vec!["root", "asked"];
    positions.extend(answers.iter().map(String::as_str));
    let mut spec = GameSpec::new("Nat", &positions, "root").edge(
        "q",
        "root",
        "asked",
        Polarity::Opponent,
        Payoff::new(0, 1),
    );
    for (n, pos) in answers.iter().enumerate() {
        spec = spec.edge(&n.to_string(), "asked", pos, Polarity::Player, Payoff::ZERO);
    }
    Game::build(&spec).expect("static game")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(unit_game().atom_count(), 0);
        let two = game_two();
        let a = two.arena().unwrap();
        assert_eq!(a.edges().len(), 1);
        assert_eq!(a.edges()[0].polarity, Polarity::Opponent);
        assert_eq!(a.payoff(0, &[0]), Payoff::ZERO);
        assert_eq!(nat_game(0).arena().unwrap().edges().len(), 2);
        let n3 = nat_game(3);
        assert_eq!(n3.arena().unwrap().positions().len(), 6);
        assert_eq!(n3.arena().unwrap().edges().len(), 5);
    }
}
