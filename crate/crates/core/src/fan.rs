//! Uniform continuity on compact subspaces: the fan functional, its bounded
//! ("full") variant, the special fan functional and the weak continuity
//! bound, together with brute-force checks of their defining properties.
//!
//! All searches walk the finitely branching tree of prefixes and stop below
//! a node `σ` as soon as the pointwise modulus at `σ * 00…` fits inside `σ`;
//! past that point the functional is constant on the whole cylinder. The
//! searches therefore trust the supplied modulus oracle, and a wrong oracle
//! shows up as a search that runs out of fuel or as a failed brute-force
//! check.

use std::collections::BTreeSet;
use std::fmt;
use std::rc::Rc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functional::{Budget, Fuel, Functional};
use crate::point::Point;
use crate::seq::{all_of_length, FinSeq};
use crate::Nat;

/// Largest `Θ(g)(1)` for which the `2^bound` test points are materialised.
pub const MAX_THETA_BOUND: Nat = 24;

/// A binary tree given by its membership predicate.
#[derive(Clone)]
pub struct BinTree {
    name: Rc<str>,
    member: Rc<dyn Fn(&FinSeq) -> bool>,
}

impl BinTree {
    pub fn new<F>(name: impl Into<String>, member: F) -> Self
    where
        F: Fn(&FinSeq) -> bool + 'static,
    {
        BinTree {
            name: Rc::from(name.into()),
            member: Rc::new(member),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn contains(&self, s: &FinSeq) -> bool {
        (self.member)(s)
    }

    pub fn empty() -> Self {
        BinTree::new("empty", |_| false)
    }

    /// Every binary sequence of length at most `height`.
    pub fn full(height: usize) -> Self {
        BinTree::new(format!("full-{height}"), move |s| {
            s.len() <= height && s.iter().all(|x| x <= 1)
        })
    }

    /// Binary sequences without two consecutive ones.
    pub fn no_consecutive_ones() -> Self {
        BinTree::new("no-11", |s| {
            s.iter().all(|x| x <= 1) && !s.items().windows(2).any(|w| w == [1, 1])
        })
    }

    pub fn from_set(name: impl Into<String>, nodes: BTreeSet<FinSeq>) -> Self {
        BinTree::new(name, move |s| nodes.contains(s))
    }

    /// Checks downward closure on all binary sequences up to `height + 1`.
    pub fn is_downward_closed(&self, height: usize) -> bool {
        (0..=height + 1)
            .flat_map(|n| all_of_length(n, 2))
            .all(|s| !self.contains(&s) || (0..s.len()).all(|k| self.contains(&s.truncate_to(k))))
    }

    /// Every downward-closed binary tree of height at most `height`, as node
    /// sets. There are `t(h)` of them with `t(0) = 2` and `t(h) = 1 + t(h-1)²`.
    pub fn enumerate(height: usize) -> Vec<BinTree> {
        node_sets(height)
            .into_iter()
            .enumerate()
            .map(|(i, nodes)| BinTree::from_set(format!("tree-{height}-{i}"), nodes))
            .collect()
    }
}

fn node_sets(height: usize) -> Vec<BTreeSet<FinSeq>> {
    let below: Vec<BTreeSet<FinSeq>> = if height == 0 {
        vec![BTreeSet::new()]
    } else {
        node_sets(height - 1)
    };
    let mut out = vec![BTreeSet::new()];
    for left in &below {
        for right in &below {
            let mut nodes = BTreeSet::from([FinSeq::empty()]);
            nodes.extend(left.iter().map(|s| FinSeq::from([0]).concat(s)));
            nodes.extend(right.iter().map(|s| FinSeq::from([1]).concat(s)));
            out.push(nodes);
        }
    }
    out
}

impl fmt::Debug for BinTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BinTree").field("name", &self.name).finish()
    }
}

/// Output of the special fan functional: a bound and the test points
/// `τ * 00…` for every binary `τ` of that length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaResult {
    pub bound: Nat,
    pub prefixes: Vec<FinSeq>,
}

impl ThetaResult {
    pub fn points(&self) -> Vec<Point> {
        self.prefixes.iter().map(|t| Point::pad(t, 0)).collect()
    }
}

enum Profile {
    Constant(Nat),
    /// Length of the longest prefix below which the value still varies.
    Varies(usize),
}

/// Explores the cylinder below `s` with `bound(i) + 1` children at level
/// `i`, cutting at nodes where the modulus is already satisfied.
fn profile(y: &Functional, s: &FinSeq, bound: &Point, budget: &mut Budget) -> Result<Profile> {
    budget.spend()?;
    let p = Point::pad(s, 0);
    if y.modulus(&p)? <= s.len() as Nat {
        return Ok(Profile::Constant(y.apply(&p)?));
    }
    let mut seen: Option<Nat> = None;
    let mut deepest: Option<usize> = None;
    for x in 0..=bound.at(s.len() as Nat)? {
        match profile(y, &s.append(x), bound, budget)? {
            Profile::Constant(v) => match seen {
                None => seen = Some(v),
                Some(w) if w != v => deepest = Some(deepest.unwrap_or(0).max(s.len())),
                Some(_) => {}
            },
            Profile::Varies(d) => deepest = Some(deepest.unwrap_or(0).max(d).max(s.len())),
        }
    }
    Ok(match (deepest, seen) {
        (Some(d), _) => Profile::Varies(d),
        (None, Some(v)) => Profile::Constant(v),
        (None, None) => unreachable!("every level has at least one child"),
    })
}

/// Largest value of `y` over points `≤ bound` extending `s`.
fn cylinder_max(y: &Functional, s: &FinSeq, bound: &Point, budget: &mut Budget) -> Result<Nat> {
    budget.spend()?;
    let p = Point::pad(s, 0);
    if y.modulus(&p)? <= s.len() as Nat {
        return y.apply(&p);
    }
    let mut best = 0;
    for x in 0..=bound.at(s.len() as Nat)? {
        best = best.max(cylinder_max(y, &s.append(x), bound, budget)?);
    }
    Ok(best)
}

/// Least `N` such that binary points agreeing on their first `N` entries
/// get the same value.
pub fn fan_modulus(y: &Functional, fuel: Fuel) -> Result<Nat> {
    full_fan_modulus(y, &Point::constant(1), fuel)
}

/// Least `N` such that points `≤ h` agreeing on their first `N` entries get
/// the same value.
pub fn full_fan_modulus(y: &Functional, h: &Point, fuel: Fuel) -> Result<Nat> {
    let mut budget = fuel.budget();
    Ok(match profile(y, &FinSeq::empty(), h, &mut budget)? {
        Profile::Constant(_) => 0,
        Profile::Varies(d) => d as Nat + 1,
    })
}

/// The special fan functional obtained from a fan functional `omega`.
pub fn special_fan<O>(omega: O, g: &Functional) -> Result<ThetaResult>
where
    O: Fn(&Functional) -> Result<Nat>,
{
    let n = omega(g)? as usize;
    let mut bound = 0;
    for sigma in all_of_length(n, 2) {
        bound = bound.max(g.apply(&Point::pad(&sigma, 0))?);
    }
    if bound > MAX_THETA_BOUND {
        return Err(Error::DepthExceeded {
            bound,
            depth: MAX_THETA_BOUND,
        });
    }
    Ok(ThetaResult {
        bound,
        prefixes: all_of_length(bound as usize, 2),
    })
}

/// Checks the special-fan implication for one `g` and one tree: if every
/// test point leaves `tree` within `g` steps, then every binary sequence
/// leaves it within `theta.bound` steps.
pub fn scf_check(theta: &ThetaResult, g: &Functional, tree: &BinTree, depth: Nat) -> Result<bool> {
    if theta.bound > depth {
        return Err(Error::DepthExceeded {
            bound: theta.bound,
            depth,
        });
    }
    for alpha in theta.points() {
        let k = g.apply(&alpha)?;
        let k = usize::try_from(k).map_err(|_| Error::Overflow)?;
        if tree.contains(&alpha.take(k)?) {
            return Ok(true);
        }
    }
    let bound = theta.bound as usize;
    Ok(all_of_length(bound, 2)
        .iter()
        .all(|beta| (0..=bound).any(|i| !tree.contains(&beta.truncate_to(i)))))
}

/// Least `n` such that every `g ≤ h` sharing the first `n` entries of `f`
/// has `y(g) ≤ n`.
pub fn pwc_bound(y: &Functional, f: &Point, h: &Point, fuel: Fuel) -> Result<Nat> {
    let mut budget = fuel.budget();
    let mut n = 0;
    loop {
        let prefix = f.take(n)?;
        if cylinder_max(y, &prefix, h, &mut budget)? <= n as Nat {
            return Ok(n as Nat);
        }
        n += 1;
    }
}

/// Brute-force uniform continuity check on Cantor space: for every binary
/// `σ` of length `n`, all `σ * τ * 00…` with binary `|τ| ≤ spread` agree.
pub fn muc_holds(y: &Functional, n: usize, spread: usize) -> Result<bool> {
    bounded_uniform_holds(y, n, spread, &Point::constant(1))
}

/// As [`muc_holds`] over points below `h`.
pub fn bounded_uniform_holds(y: &Functional, n: usize, spread: usize, h: &Point) -> Result<bool> {
    for sigma in bounded_sequences(n, 0, h)? {
        let expected = y.apply(&Point::pad(&sigma, 0))?;
        for tau in bounded_sequences(spread, n, h)? {
            if y.apply(&Point::pad(&sigma.concat(&tau), 0))? != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Sequences of length `len` whose entry `i` is at most `h(offset + i)`.
pub fn bounded_sequences(len: usize, offset: usize, h: &Point) -> Result<Vec<FinSeq>> {
    let mut out = vec![FinSeq::empty()];
    for i in 0..len {
        let top = h.at((offset + i) as Nat)?;
        out = out
            .into_iter()
            .flat_map(|s| (0..=top).map(move |x| s.append(x)))
            .collect();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FUEL: Fuel = Fuel(100_000);

    fn proj(k: Nat) -> Functional {
        Functional::reading(format!("f({k})"), move |p| p.at(k))
    }

    fn nested() -> Functional {
        Functional::reading("f(f(0))", |p| p.at(p.at(0)?))
    }

    fn sum01() -> Functional {
        Functional::reading("f(0)+f(1)", |p| Ok(p.at(0)? + p.at(1)?))
    }

    /// Tabulates `y` on every bounded sequence of length 5 and returns the
    /// least `n` such that the value is a function of the first `n` entries.
    /// Independent of the bar search; valid for functionals reading below 5.
    fn brute_uniform_modulus(y: &Functional, h: &Point) -> usize {
        let table: Vec<(FinSeq, Nat)> = bounded_sequences(5, 0, h)
            .unwrap()
            .into_iter()
            .map(|s| {
                let v = y.apply(&Point::pad(&s, 0)).unwrap();
                (s, v)
            })
            .collect();
        (0..=5)
            .find(|&n| {
                let mut seen = std::collections::HashMap::new();
                table
                    .iter()
                    .all(|(s, v)| *seen.entry(s.truncate_to(n)).or_insert(*v) == *v)
            })
            .unwrap()
    }

    #[test]
    fn fan_modulus_examples() {
        assert_eq!(brute_uniform_modulus(&proj(2), &Point::constant(1)), 3);
        assert_eq!(brute_uniform_modulus(&nested(), &Point::constant(1)), 2);
        assert_eq!(fan_modulus(&Functional::constant(4), FUEL).unwrap(), 0);
        assert_eq!(fan_modulus(&proj(2), FUEL).unwrap(), 3);
        assert_eq!(fan_modulus(&nested(), FUEL).unwrap(), 2);
    }

    #[test]
    fn full_fan_examples() {
        let five = Point::constant(5);
        assert_eq!(brute_uniform_modulus(&proj(3), &five), 4);
        assert_eq!(full_fan_modulus(&proj(3), &five, FUEL).unwrap(), 4);
        assert_eq!(
            full_fan_modulus(&Functional::constant(1), &Point::from_fn(|n| n), FUEL).unwrap(),
            0
        );
        for y in [proj(0), proj(2), sum01(), nested()] {
            assert_eq!(
                full_fan_modulus(&y, &Point::constant(1), FUEL).unwrap(),
                fan_modulus(&y, FUEL).unwrap()
            );
        }
    }

    #[test]
    fn fan_modulus_is_minimal() {
        for y in [proj(1), proj(3), sum01(), nested()] {
            let n = fan_modulus(&y, FUEL).unwrap() as usize;
            assert!(muc_holds(&y, n, 3).unwrap());
            assert!(n == 0 || !muc_holds(&y, n - 1, 3).unwrap());
        }
    }

    #[test]
    fn wrong_modulus_exhausts_fuel() {
        let liar = Functional::new("f(0)", |p| p.at(0)).with_modulus(|_| Ok(Nat::MAX));
        assert!(matches!(
            fan_modulus(&liar, Fuel(500)),
            Err(Error::FuelExhausted { .. })
        ));
    }

    #[test]
    fn special_fan_examples() {
        let omega = |g: &Functional| fan_modulus(g, FUEL);
        let theta = special_fan(omega, &Functional::constant(2)).unwrap();
        assert_eq!(theta.bound, 2);
        assert_eq!(theta.prefixes.len(), 4);
        let succ = Functional::reading("f(0)+1", |p| Ok(p.at(0)? + 1));
        let theta = special_fan(omega, &succ).unwrap();
        assert_eq!(theta.bound, 2);
        assert_eq!(theta.points().len(), 4);
        let theta = special_fan(omega, &Functional::constant(0)).unwrap();
        assert_eq!(theta.bound, 0);
        assert_eq!(theta.prefixes, vec![FinSeq::empty()]);
    }

    #[test]
    fn scf_examples() {
        let omega = |g: &Functional| fan_modulus(g, FUEL);
        let g = Functional::constant(4);
        let theta = special_fan(omega, &g).unwrap();
        assert!(scf_check(&theta, &g, &BinTree::full(3), 10).unwrap());
        // antecedent fails: the test points stay inside the full tree of height 5
        assert!(scf_check(&theta, &g, &BinTree::full(5), 10).unwrap());
        assert!(scf_check(&theta, &g, &BinTree::empty(), 10).unwrap());
        assert_eq!(
            scf_check(&theta, &g, &BinTree::empty(), 3),
            Err(Error::DepthExceeded { bound: 4, depth: 3 })
        );
    }

    #[test]
    fn scf_detects_a_bad_theta() {
        // bound 1 is below the values of g = 2, so the consequent fails
        let g = Functional::constant(2);
        let wrong = ThetaResult {
            bound: 1,
            prefixes: all_of_length(1, 2),
        };
        assert!(!scf_check(&wrong, &g, &BinTree::full(1), 5).unwrap());
    }

    #[test]
    fn tree_enumeration_counts() {
        let mut t = 2usize;
        for h in 0..=3 {
            let trees = BinTree::enumerate(h);
            assert_eq!(trees.len(), t);
            t = 1 + t * t;
        }
        assert_eq!(BinTree::enumerate(3).len(), 677);
        assert!(BinTree::enumerate(2)
            .iter()
            .all(|t| t.is_downward_closed(2)));
        assert!(BinTree::no_consecutive_ones().is_downward_closed(6));
    }

    /// Brute force: least `n` with every bounded extension of `f̄n` valued `≤ n`.
    fn brute_pwc(y: &Functional, f: &Point, h: &Point) -> Nat {
        (0..)
            .find(|&n: &usize| {
                let prefix = f.take(n).unwrap();
                bounded_sequences(4, n, h)
                    .unwrap()
                    .iter()
                    .all(|tail| y.apply(&Point::pad(&prefix.concat(tail), 0)).unwrap() <= n as Nat)
            })
            .unwrap() as Nat
    }

    #[test]
    fn pwc_examples() {
        let ones = Point::constant(1);
        assert_eq!(brute_pwc(&proj(1), &Point::zeros(), &ones), 1);
        assert_eq!(
            pwc_bound(&proj(1), &Point::zeros(), &ones, FUEL).unwrap(),
            1
        );
        assert_eq!(
            pwc_bound(&Functional::constant(0), &Point::zeros(), &ones, FUEL).unwrap(),
            0
        );
        assert_eq!(
            brute_pwc(&Functional::constant(5), &Point::zeros(), &ones),
            5
        );
        assert_eq!(
            pwc_bound(&Functional::constant(5), &Point::zeros(), &ones, FUEL).unwrap(),
            5
        );
        let h = Point::constant(2);
        for y in [proj(2), sum01(), nested()] {
            let f = Point::from_fn(|n| n % 2);
            assert_eq!(pwc_bound(&y, &f, &h, FUEL).unwrap(), brute_pwc(&y, &f, &h));
        }
    }
}
