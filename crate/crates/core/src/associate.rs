//! Kleene associates (neighbourhood functions).
//!
//! An associate answers `0` on a finite sequence when the value of the coded
//! functional is not yet determined by that prefix, and `v + 1` once it is
//! determined to be `v`. Decisions are final along extensions.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::functional::{Fuel, Functional};
use crate::point::Point;
use crate::seq::FinSeq;
use crate::Nat;

#[derive(Clone)]
pub struct Associate {
    name: Rc<str>,
    query: Rc<dyn Fn(&FinSeq) -> Result<Nat>>,
}

impl Associate {
    pub fn new<F>(name: impl Into<String>, query: F) -> Self
    where
        F: Fn(&FinSeq) -> Result<Nat> + 'static,
    {
        Associate {
            name: Rc::from(name.into()),
            query: Rc::new(query),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn query(&self, s: &FinSeq) -> Result<Nat> {
        (self.query)(s)
    }

    /// Decided everywhere with value `c`.
    pub fn constant(c: Nat) -> Self {
        Associate::new(format!("const-assoc-{c}"), move |_| Ok(c + 1))
    }

    /// Finite table, `0` elsewhere. Does not enforce the neighbourhood law.
    pub fn table(
        name: impl Into<String>,
        entries: impl IntoIterator<Item = (FinSeq, Nat)>,
    ) -> Self {
        let map: HashMap<FinSeq, Nat> = entries.into_iter().collect();
        Associate::new(name, move |s| Ok(map.get(s).copied().unwrap_or(0)))
    }

    /// Scans `ᾱ0, ᾱ1, …` for the first decided prefix and returns
    /// `(value, prefix length)`.
    pub fn evaluate(&self, alpha: &Point, fuel: Fuel) -> Result<(Nat, usize)> {
        let mut budget = fuel.budget();
        let mut prefix = FinSeq::empty();
        loop {
            budget.spend()?;
            let answer = self.query(&prefix)?;
            if answer > 0 {
                return Ok((answer - 1, prefix.len()));
            }
            prefix.push(alpha.at(prefix.len() as Nat)?);
        }
    }

    /// The value of the coded functional at `alpha`.
    pub fn apply(&self, alpha: &Point, fuel: Fuel) -> Result<Nat> {
        self.evaluate(alpha, fuel).map(|(v, _)| v)
    }

    /// Length of the shortest decided prefix of `alpha`; a pointwise modulus.
    pub fn modulus(&self, alpha: &Point, fuel: Fuel) -> Result<Nat> {
        self.evaluate(alpha, fuel).map(|(_, k)| k as Nat)
    }

    /// Exhaustively checks the neighbourhood law on all sequences of length
    /// at most `depth` with entries below `width`.
    pub fn check_neighbourhood(&self, depth: usize, width: Nat) -> Result<bool> {
        self.law_below(&FinSeq::empty(), None, depth, width)
    }

    fn law_below(
        &self,
        s: &FinSeq,
        decided: Option<Nat>,
        depth: usize,
        width: Nat,
    ) -> Result<bool> {
        let here = self.query(s)?;
        let decided = match decided {
            Some(v) if v != here => return Ok(false),
            Some(v) => Some(v),
            None if here > 0 => Some(here),
            None => None,
        };
        if s.len() >= depth {
            return Ok(true);
        }
        for x in 0..width {
            if !self.law_below(&s.append(x), decided, depth, width)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Associate of a functional with a correct modulus: `σ` is decided
    /// once the modulus at `σ * 00…` fits inside `σ`.
    pub fn from_functional(y: &Functional) -> Result<Self> {
        if !y.has_modulus() {
            return Err(Error::MissingModulus(y.name().to_string()));
        }
        let y = y.clone();
        Ok(Associate::new(format!("assoc({})", y.name()), move |s| {
            let p = Point::pad(s, 0);
            if y.modulus(&p)? <= s.len() as Nat {
                Ok(y.apply(&p)? + 1)
            } else {
                Ok(0)
            }
        }))
    }

    /// The functional coded by this associate.
    pub fn to_functional(&self, fuel: Fuel) -> Functional {
        let for_apply = self.clone();
        let for_modulus = self.clone();
        Functional::new(self.name(), move |p| for_apply.apply(p, fuel))
            .with_modulus(move |p| for_modulus.modulus(p, fuel))
    }

    /// Answers `offset + σ(n₀)` where `n₀ < |σ|` is the least index with
    /// `h(n₀) ≠ 0`, and `0` when there is none.
    fn flag(name: String, h: &Point, offset: Nat) -> Self {
        let h = h.clone();
        Associate::new(name, move |s| {
            for (n, &x) in s.items().iter().enumerate() {
                if h.at(n as Nat)? != 0 {
                    return x.checked_add(offset).ok_or(Error::Overflow);
                }
            }
            Ok(0)
        })
    }

    /// `σ ↦ 1 + σ(n₀)` once `σ` reaches the first non-zero of `h`.
    pub fn gamma_flag(h: &Point) -> Self {
        Self::flag("gamma-flag".into(), h, 1)
    }

    /// As [`Associate::gamma_flag`] with `2 + σ(n₀)`.
    pub fn epsilon_flag(h: &Point) -> Self {
        Self::flag("epsilon-flag".into(), h, 2)
    }
}

impl fmt::Debug for Associate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Associate")
            .field("name", &self.name)
            .finish()
    }
}

/// `h` with a single non-zero entry at `m0`.
pub fn flag_point(m0: Nat) -> Point {
    Point::from_fn(move |n| Nat::from(n == m0))
}

pub fn associate_apply(gamma: &Associate, alpha: &Point, fuel: Fuel) -> Result<Nat> {
    gamma.apply(alpha, fuel)
}

pub fn modulus_from_associate(gamma: &Associate, alpha: &Point, fuel: Fuel) -> Result<Nat> {
    gamma.modulus(alpha, fuel)
}

pub fn associate_from_functional(y: &Functional) -> Result<Associate> {
    Associate::from_functional(y)
}

pub fn functional_from_associate(gamma: &Associate, fuel: Fuel) -> Functional {
    gamma.to_functional(fuel)
}
