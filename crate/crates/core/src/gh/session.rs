use std::cell::{Cell, RefCell};
use std::collections::HashMap;
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::Fuel;
use crate::seq::FinSeq;
use crate::Nat;

/// Knobs shared by every evaluation in a session.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionConfig {
    /// Node budget for one top-level evaluation.
    pub fuel: Fuel,
    /// Number of extra depths a value must survive to count as stable.
    pub window: Nat,
    /// Largest depth tried by stabilization and the GHS witness search.
    pub nmax: Nat,
    /// Largest entry used for the free part of GHS candidate sequences.
    pub value_cap: Nat,
    pub memoize: bool,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            fuel: Fuel(1 << 22),
            window: 4,
            nmax: 64,
            value_cap: 3,
            memoize: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Kind {
    H,
    HHat,
    G,
    GChecked,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct MemoKey {
    functional: u64,
    kind: Kind,
    seq: FinSeq,
    depth: Nat,
}

/// A stabilized canonical approximation: `G(Y, s, N)` takes `value` for
/// every `N` in `[depth, depth + window]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stable {
    pub depth: Nat,
    pub value: Nat,
}

/// Evaluation context: configuration, a write-once memo table and the fuel
/// counter. Cloning yields another handle on the same state. Sessions are
/// confined to one thread; run independent sessions for parallel work.
#[derive(Clone)]
pub struct EvalSession {
    state: Rc<State>,
}

struct State {
    config: SessionConfig,
    memo: RefCell<HashMap<MemoKey, Nat>>,
    stable: RefCell<HashMap<(u64, FinSeq), Stable>>,
    steps_left: Cell<u64>,
    nesting: Cell<u32>,
}

/// Keeps the fuel counter alive while a top-level call is running.
pub(crate) struct Scope {
    state: Rc<State>,
}

impl Drop for Scope {
    fn drop(&mut self) {
        self.state.nesting.set(self.state.nesting.get() - 1);
    }
}

impl EvalSession {
    pub fn new(config: SessionConfig) -> Self {
        EvalSession {
            state: Rc::new(State {
                config,
                memo: RefCell::new(HashMap::new()),
                stable: RefCell::new(HashMap::new()),
                steps_left: Cell::new(config.fuel.0),
                nesting: Cell::new(0),
            }),
        }
    }

    pub fn config(&self) -> &SessionConfig {
        &self.state.config
    }

    /// Same configuration, empty memo.
    pub fn fresh(&self) -> Self {
        EvalSession::new(self.state.config)
    }

    pub fn memo_len(&self) -> usize {
        self.state.memo.borrow().len()
    }

    /// Enters an evaluation; the outermost entry refills the fuel.
    pub(crate) fn enter(&self) -> Scope {
        if self.state.nesting.get() == 0 {
            self.state.steps_left.set(self.state.config.fuel.0);
        }
        self.state.nesting.set(self.state.nesting.get() + 1);
        Scope {
            state: self.state.clone(),
        }
    }

    pub(crate) fn step(&self) -> Result<()> {
        let left = self.state.steps_left.get();
        if left == 0 {
            return Err(Error::FuelExhausted {
                budget: self.state.config.fuel.0,
            });
        }
        self.state.steps_left.set(left - 1);
        Ok(())
    }

    pub(crate) fn recall(
        &self,
        functional: u64,
        kind: Kind,
        seq: &FinSeq,
        depth: Nat,
    ) -> Option<Nat> {
        if !self.state.config.memoize {
            return None;
        }
        let key = MemoKey {
            functional,
            kind,
            seq: seq.clone(),
            depth,
        };
        self.state.memo.borrow().get(&key).copied()
    }

    pub(crate) fn remember(
        &self,
        functional: u64,
        kind: Kind,
        seq: &FinSeq,
        depth: Nat,
        value: Nat,
    ) -> Result<Nat> {
        if !self.state.config.memoize {
            return Ok(value);
        }
        let key = MemoKey {
            functional,
            kind,
            seq: seq.clone(),
            depth,
        };
        let mut memo = self.state.memo.borrow_mut();
        let stored = *memo.entry(key).or_insert(value);
        if stored != value {
            return Err(Error::InvariantViolation(format!(
                "memo entry for {seq} at depth {depth} changed from {stored} to {value}"
            )));
        }
        Ok(stored)
    }

    pub(crate) fn recall_stable(&self, functional: u64, seq: &FinSeq) -> Option<Stable> {
        if !self.state.config.memoize {
            return None;
        }
        self.state
            .stable
            .borrow()
            .get(&(functional, seq.clone()))
            .copied()
    }

    pub(crate) fn remember_stable(&self, functional: u64, seq: &FinSeq, stable: Stable) {
        if self.state.config.memoize {
            self.state
                .stable
                .borrow_mut()
                .entry((functional, seq.clone()))
                .or_insert(stable);
        }
    }
}

impl Default for EvalSession {
    fn default() -> Self {
        EvalSession::new(SessionConfig::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn memo_is_write_once() {
        let session = EvalSession::default();
        let s = FinSeq::from([1]);
        assert_eq!(session.remember(1, Kind::G, &s, 3, 7).unwrap(), 7);
        assert_eq!(session.recall(1, Kind::G, &s, 3), Some(7));
        assert!(session.remember(1, Kind::G, &s, 3, 8).is_err());
        assert_eq!(session.recall(1, Kind::H, &s, 3), None);
    }

    #[test]
    fn outermost_scope_refills_fuel() {
        let session = EvalSession::new(SessionConfig {
            fuel: Fuel(2),
            ..Default::default()
        });
        {
            let _outer = session.enter();
            session.step().unwrap();
            {
                let _inner = session.enter();
                session.step().unwrap();
                assert!(session.step().is_err());
            }
        }
        let _again = session.enter();
        assert!(session.step().is_ok());
    }

    #[test]
    fn disabled_memo_stores_nothing() {
        let session = EvalSession::new(SessionConfig {
            memoize: false,
            ..Default::default()
        });
        session
            .remember(1, Kind::G, &FinSeq::empty(), 0, 1)
            .unwrap();
        assert_eq!(session.recall(1, Kind::G, &FinSeq::empty(), 0), None);
        assert_eq!(session.memo_len(), 0);
    }
}
