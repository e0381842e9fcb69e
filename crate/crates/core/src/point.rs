//! Lazy points of Baire space.
//!
//! A [`Point`] is a total rule `ℕ → ℕ` whose values are computed on demand
//! and memoized. Rules may fail (a nested evaluation can run out of fuel), in
//! which case nothing is cached and the error is handed back to the reader.
//! Points are reference counted and confined to one thread.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use crate::error::Result;
use crate::seq::FinSeq;
use crate::Nat;

type Rule = dyn Fn(Nat) -> Result<Nat>;

/// Positions read through an observed point, with the values seen.
pub type ReadLog = Rc<RefCell<Vec<(Nat, Nat)>>>;

#[derive(Clone)]
pub struct Point {
    inner: Rc<PointInner>,
}

struct PointInner {
    rule: Box<Rule>,
    cache: RefCell<Cache>,
}

/// Values at small positions live in a vector, the rest in a map.
#[derive(Default)]
struct Cache {
    dense: Vec<Option<Nat>>,
    sparse: HashMap<Nat, Nat>,
}

const DENSE: Nat = 1 << 10;

impl Cache {
    fn get(&self, i: Nat) -> Option<Nat> {
        if i < DENSE {
            self.dense.get(i as usize).copied().flatten()
        } else {
            self.sparse.get(&i).copied()
        }
    }

    fn insert(&mut self, i: Nat, v: Nat) -> Nat {
        if i < DENSE {
            let i = i as usize;
            if self.dense.len() <= i {
                self.dense.resize(i + 1, None);
            }
            *self.dense[i].get_or_insert(v)
        } else {
            *self.sparse.entry(i).or_insert(v)
        }
    }

    fn len(&self) -> usize {
        self.dense.iter().flatten().count() + self.sparse.len()
    }
}

impl Point {
    pub fn from_fallible<F>(rule: F) -> Self
    where
        F: Fn(Nat) -> Result<Nat> + 'static,
    {
        Point {
            inner: Rc::new(PointInner {
                rule: Box::new(rule),
                cache: RefCell::default(),
            }),
        }
    }

    pub fn from_fn<F>(rule: F) -> Self
    where
        F: Fn(Nat) -> Nat + 'static,
    {
        Self::from_fallible(move |i| Ok(rule(i)))
    }

    pub fn constant(c: Nat) -> Self {
        Self::from_fn(move |_| c)
    }

    pub fn zeros() -> Self {
        Self::constant(0)
    }

    /// `s * c c c …`
    pub fn pad(s: &FinSeq, c: Nat) -> Self {
        let s = s.clone();
        Self::from_fn(move |i| usize::try_from(i).ok().and_then(|i| s.get(i)).unwrap_or(c))
    }

    /// `0^m` followed by `m m m …`.
    pub fn step(m: Nat) -> Self {
        Self::from_fn(move |i| if i < m { 0 } else { m })
    }

    pub fn at(&self, index: Nat) -> Result<Nat> {
        if let Some(v) = self.inner.cache.borrow().get(index) {
            return Ok(v);
        }
        // the rule may read other points (or this one), so no borrow is held
        let v = (self.inner.rule)(index)?;
        let stored = self.inner.cache.borrow_mut().insert(index, v);
        debug_assert_eq!(stored, v, "point rule is not deterministic");
        Ok(stored)
    }

    /// The first `n` values.
    pub fn take(&self, n: usize) -> Result<FinSeq> {
        (0..n as Nat)
            .map(|i| self.at(i))
            .collect::<Result<Vec<_>>>()
            .map(FinSeq::new)
    }

    /// A point that agrees with `self` except at `index`.
    pub fn with_value(&self, index: Nat, value: Nat) -> Self {
        let base = self.clone();
        Self::from_fallible(move |i| if i == index { Ok(value) } else { base.at(i) })
    }

    /// `take(self, n) * rest`.
    pub fn splice(&self, n: Nat, rest: Point) -> Self {
        let base = self.clone();
        Self::from_fallible(move |i| if i < n { base.at(i) } else { rest.at(i - n) })
    }

    pub fn pointwise_le(&self, bound: &Point, upto: Nat) -> Result<bool> {
        for i in 0..upto {
            if self.at(i)? > bound.at(i)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A copy of this point that logs every distinct position read through
    /// it, in first-read order.
    pub fn observed(&self) -> (Point, ReadLog) {
        let log: ReadLog = Rc::new(RefCell::new(Vec::new()));
        let sink = log.clone();
        let base = self.clone();
        let point = Self::from_fallible(move |i| {
            let v = base.at(i)?;
            sink.borrow_mut().push((i, v));
            Ok(v)
        });
        (point, log)
    }

    /// Number of cached positions.
    pub fn evaluated(&self) -> usize {
        self.inner.cache.borrow().len()
    }
}

impl From<FinSeq> for Point {
    fn from(s: FinSeq) -> Self {
        Point::pad(&s, 0)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cache = self.inner.cache.borrow();
        let dense = cache
            .dense
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|v| (i as Nat, v)));
        let mut known: Vec<_> = dense
            .chain(cache.sparse.iter().map(|(&i, &v)| (i, v)))
            .collect();
        known.sort_unstable();
        f.debug_struct("Point").field("known", &known).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use proptest::prelude::*;
    use std::cell::Cell;

    #[test]
    fn take_examples() {
        assert_eq!(Point::zeros().take(3).unwrap(), FinSeq::from([0, 0, 0]));
        assert_eq!(
            Point::from_fn(|n| n + 1).take(2).unwrap(),
            FinSeq::from([1, 2])
        );
    }

    #[test]
    fn pad_examples() {
        assert_eq!(
            Point::pad(&FinSeq::empty(), 0).take(4).unwrap(),
            FinSeq::from([0, 0, 0, 0])
        );
        let p = Point::pad(&FinSeq::from([3]), 0);
        assert_eq!(p.at(0).unwrap(), 3);
        assert_eq!(p.at(5).unwrap(), 0);
        assert_eq!(Point::pad(&FinSeq::from([0, 1]), 1).at(3).unwrap(), 1);
    }

    #[test]
    fn rule_runs_once_per_index() {
        let calls = Rc::new(Cell::new(0));
        let counter = calls.clone();
        let p = Point::from_fn(move |i| {
            counter.set(counter.get() + 1);
            i * i
        });
        assert_eq!(p.at(7).unwrap(), 49);
        assert_eq!(p.at(7).unwrap(), 49);
        assert_eq!(calls.get(), 1);
    }

    #[test]
    fn failures_are_not_cached() {
        let tries = Rc::new(Cell::new(0));
        let t = tries.clone();
        let p = Point::from_fallible(move |_| {
            t.set(t.get() + 1);
            if t.get() == 1 {
                Err(Error::FuelExhausted { budget: 0 })
            } else {
                Ok(4)
            }
        });
        assert!(p.at(0).is_err());
        assert_eq!(p.at(0).unwrap(), 4);
    }

    #[test]
    fn step_point() {
        assert_eq!(
            Point::step(3).take(6).unwrap(),
            FinSeq::from([0, 0, 0, 3, 3, 3])
        );
    }

    proptest! {
        #[test]
        fn take_pad_recovers_prefix(items in prop::collection::vec(0u64..9, 0..10), c in 0u64..3) {
            let s = FinSeq::new(items);
            prop_assert_eq!(Point::pad(&s, c).take(s.len()).unwrap(), s);
        }

        #[test]
        fn shorter_take_is_prefix(a in 0u64..5, b in 1u64..5, n in 0usize..12, m in 0usize..12) {
            let p = Point::from_fn(move |i| (a * i + b) % 7);
            let (n, m) = (n.min(m), n.max(m));
            prop_assert!(p.take(n).unwrap().is_prefix_of(&p.take(m).unwrap()));
        }
    }
}
