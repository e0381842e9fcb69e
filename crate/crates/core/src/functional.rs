//! Type-2 functionals as black boxes, fuel budgets, and the μ-operator.

use std::cell::Cell;
use std::fmt;
use std::rc::Rc;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::Point;
use crate::seq::all_of_length;
use crate::Nat;

type PointMap = dyn Fn(&Point) -> Result<Nat>;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// A continuous functional `Y : (ℕ → ℕ) → ℕ`, optionally with a pointwise
/// modulus of continuity.
///
/// Clones share identity; evaluation caches in
/// [`EvalSession`](crate::gh::EvalSession) are keyed by [`Functional::id`].
#[derive(Clone)]
pub struct Functional {
    id: u64,
    name: Rc<str>,
    apply: Rc<PointMap>,
    modulus: Option<Rc<PointMap>>,
}

impl Functional {
    pub fn new<F>(name: impl Into<String>, apply: F) -> Self
    where
        F: Fn(&Point) -> Result<Nat> + 'static,
    {
        Functional {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name: Rc::from(name.into()),
            apply: Rc::new(apply),
            modulus: None,
        }
    }

    pub fn with_modulus<F>(mut self, modulus: F) -> Self
    where
        F: Fn(&Point) -> Result<Nat> + 'static,
    {
        self.modulus = Some(Rc::new(modulus));
        self
    }

    /// A functional whose modulus at `f` is one past the largest position
    /// `apply` reads from `f`. Sound for any `apply` that only inspects its
    /// argument through [`Point::at`].
    pub fn reading<F>(name: impl Into<String>, apply: F) -> Self
    where
        F: Fn(&Point) -> Result<Nat> + 'static,
    {
        let apply = Rc::new(apply);
        let probe = apply.clone();
        Functional::new(name, move |p| apply(p)).with_modulus(move |p| {
            let (observed, log) = p.observed();
            probe(&observed)?;
            let reach = log.borrow().iter().map(|&(i, _)| i + 1).max().unwrap_or(0);
            Ok(reach)
        })
    }

    pub fn constant(c: Nat) -> Self {
        Functional::new(format!("const-{c}"), move |_| Ok(c)).with_modulus(|_| Ok(0))
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, f: &Point) -> Result<Nat> {
        (self.apply)(f)
    }

    pub fn has_modulus(&self) -> bool {
        self.modulus.is_some()
    }

    pub fn modulus(&self, f: &Point) -> Result<Nat> {
        match &self.modulus {
            Some(m) => m(f),
            None => Err(Error::MissingModulus(self.name.to_string())),
        }
    }

    /// Same functional under a fresh identity, with `apply` calls counted.
    pub fn counting(&self) -> (Functional, Rc<Cell<u64>>) {
        let calls = Rc::new(Cell::new(0));
        let tally = calls.clone();
        let inner = self.clone();
        let mut counted = Functional::new(self.name(), move |p| {
            tally.set(tally.get() + 1);
            inner.apply(p)
        });
        counted.modulus = self.modulus.clone();
        (counted, calls)
    }

    /// Checks the modulus at `f` by brute force: every `g` obtained from `f`
    /// by rewriting positions `m..m+spread` (with `m` the modulus at `f`) to
    /// values below `width` must give the same value.
    pub fn modulus_holds_at(&self, f: &Point, spread: usize, width: Nat) -> Result<bool> {
        let m = self.modulus(f)?;
        let expected = self.apply(f)?;
        for tail in all_of_length(spread, width) {
            let g = f.splice(
                m,
                Point::pad(&tail, 0).splice(spread as Nat, shifted(f, m + spread as Nat)),
            );
            if self.apply(&g)? != expected {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `n ↦ f(n + by)`
fn shifted(f: &Point, by: Nat) -> Point {
    let f = f.clone();
    Point::from_fallible(move |i| f.at(i + by))
}

impl fmt::Debug for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Functional")
            .field("name", &self.name)
            .field("has_modulus", &self.has_modulus())
            .finish()
    }
}

/// Step budget for an unbounded search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fuel(pub u64);

impl Fuel {
    pub fn budget(self) -> Budget {
        Budget {
            limit: self.0,
            left: self.0,
        }
    }
}

impl Default for Fuel {
    fn default() -> Self {
        Fuel(1 << 22)
    }
}

/// The running counter of a [`Fuel`] allowance.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    left: u64,
}

impl Budget {
    pub fn spend(&mut self) -> Result<()> {
        if self.left == 0 {
            return Err(Error::FuelExhausted { budget: self.limit });
        }
        self.left -= 1;
        Ok(())
    }

    pub fn left(&self) -> u64 {
        self.left
    }
}

/// The least `n` with `f(n) = 0`.
pub fn mu(f: &Point, fuel: Fuel) -> Result<Nat> {
    let mut budget = fuel.budget();
    let mut n = 0;
    loop {
        budget.spend()?;
        if f.at(n)? == 0 {
            return Ok(n);
        }
        n += 1;
    }
}
