use std::fmt;
use std::ops::Add;

/// Who plays a move: `-1` is Opponent, `+1` is Player.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Opponent,
    Player,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Opponent => Polarity::Player,
            Polarity::Player => Polarity::Opponent,
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Polarity::Opponent => -1,
            Polarity::Player => 1,
        }
    }

    pub fn flip_if(self, cond: bool) -> Polarity {
        if cond {
            self.flip()
        } else {
            self
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Opponent => "-",
            Polarity::Player => "+",
        })
    }
}

/// A payoff pair `(κ⁺, κ⁻)`: pending Player and Opponent questions.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Payoff {
    pub plus: u32,
    pub minus: u32,
}

impl Payoff {
    pub const ZERO: Payoff = Payoff { plus: 0, minus: 0 };

    pub const fn new(plus: u32, minus: u32) -> Payoff {
        Payoff { plus, minus }
    }

    /// Componentwise order on ℕ².
    pub fn le(self, other: Payoff) -> bool {
        self.plus <= other.plus && self.minus <= other.minus
    }

    pub fn swap(self) -> Payoff {
        Payoff {
            plus: self.minus,
            minus: self.plus,
        }
    }

    pub fn swap_if(self, cond: bool) -> Payoff {
        if cond {
            self.swap()
        } else {
            self
        }
    }

    pub fn is_zero(self) -> bool {
        self.plus == 0 && self.minus == 0
    }

    /// The winning condition on a single path: `κ⁺ = 0 ⇒ κ⁻ = 0`.
    pub fn player_safe(self) -> bool {
        self.plus != 0 || self.minus == 0
    }

    /// The dual condition: `κ⁻ = 0 ⇒ κ⁺ = 0`.
    pub fn opponent_safe(self) -> bool {
        self.minus != 0 || self.plus == 0
    }
}

impl Add for Payoff {
    type Output = Payoff;

    fn add(self, rhs: Payoff) -> Payoff {
        Payoff {
            plus: self.plus + rhs.plus,
            minus: self.minus + rhs.minus,
        }
    }
}

impl fmt::Display for Payoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.plus, self.minus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn componentwise_order() {
        assert!(Payoff::new(0, 1).le(Payoff::new(0, 2)));
        assert!(!Payoff::new(1, 0).le(Payoff::new(0, 2)));
        assert!(!Payoff::new(0, 2).le(Payoff::new(0, 1) + Payoff::ZERO));
    }

    #[test]
    fn winning_condition() {
        assert!(Payoff::new(1, 1).player_safe());
        assert!(Payoff::ZERO.player_safe());
        assert!(!Payoff::new(0, 1).player_safe());
        assert!(!Payoff::new(1, 0).opponent_safe());
    }
}
