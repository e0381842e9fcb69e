//! Canonical approximations of the Gandy-Hyland functional
//! `Γ(Y, s) = Y(s * 0 * (λn) Γ(Y, s * (n+1)))`.
//!
//! * `H(Y, s, M)` appends the `M` children values `H(Y, s*1, M) … H(Y, s*M, M)`
//!   after `s * 0` and pads with zeros; once `|s| ≥ M` it returns `Y(s̄M * 00…)`.
//! * `Ĥ` is `H` with ones as padding.
//! * `G(Y, s, N)` appends all children lazily and returns `Y(s * 00…)` once
//!   `|s| ≥ N`.
//!
//! Children are only computed when `Y` reads the corresponding position, and
//! every node value is memoized in the [`EvalSession`].

use crate::error::{Error, Result};
use crate::functional::Functional;
use crate::point::Point;
use crate::seq::FinSeq;
use crate::Nat;

use super::session::{EvalSession, Kind, Stable};

/// `H(Y, s, M)`.
pub fn h_eval(y: &Functional, s: &FinSeq, m: Nat, session: &EvalSession) -> Result<Nat> {
    let _scope = session.enter();
    h_node(y, s, m, Padding::Zeros, session)
}

/// `Ĥ(Y, s, M)`: `H` with `s * 11…` padding.
pub fn h_hat_eval(y: &Functional, s: &FinSeq, m: Nat, session: &EvalSession) -> Result<Nat> {
    let _scope = session.enter();
    h_node(y, s, m, Padding::Ones, session)
}

/// `G(Y, s, N)`.
pub fn g_eval(y: &Functional, s: &FinSeq, n: Nat, session: &EvalSession) -> Result<Nat> {
    let _scope = session.enter();
    g_node(y, s, n, None, session)
}

/// `G(Y, s, N)` where every position `Y` reads must lie below `bound`;
/// otherwise [`Error::BoundExceeded`].
pub fn g_eval_bounded(
    y: &Functional,
    s: &FinSeq,
    n: Nat,
    bound: &Point,
    session: &EvalSession,
) -> Result<Nat> {
    let _scope = session.enter();
    g_node(y, s, n, Some(bound), session)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Padding {
    Zeros,
    Ones,
}

impl Padding {
    fn value(self) -> Nat {
        match self {
            Padding::Zeros => 0,
            Padding::Ones => 1,
        }
    }

    fn kind(self) -> Kind {
        match self {
            Padding::Zeros => Kind::H,
            Padding::Ones => Kind::HHat,
        }
    }
}

fn h_node(y: &Functional, s: &FinSeq, m: Nat, pad: Padding, session: &EvalSession) -> Result<Nat> {
    if let Some(v) = session.recall(y.id(), pad.kind(), s, m) {
        return Ok(v);
    }
    session.step()?;
    let len = s.len() as Nat;
    let value = if len >= m {
        y.apply(&Point::pad(&s.truncate_to(m as usize), pad.value()))?
    } else {
        let (y2, s2, session2) = (y.clone(), s.clone(), session.clone());
        let point = Point::from_fallible(move |i| {
            if i < len {
                Ok(s2.items()[i as usize])
            } else if i == len {
                Ok(0)
            } else if i - len <= m {
                h_node(&y2, &s2.append(i - len), m, pad, &session2)
            } else {
                Ok(pad.value())
            }
        });
        y.apply(&point)?
    };
    session.remember(y.id(), pad.kind(), s, m, value)
}

/// `s * 0 * (λn) child(n + 1)` as a lazy point.
fn node_point<C>(s: &FinSeq, child: C) -> Point
where
    C: Fn(FinSeq) -> Result<Nat> + 'static,
{
    let s = s.clone();
    let len = s.len() as Nat;
    Point::from_fallible(move |i| {
        if i < len {
            Ok(s.items()[i as usize])
        } else if i == len {
            Ok(0)
        } else {
            child(s.append(i - len))
        }
    })
}

fn checked_reads(point: Point, bound: &Point) -> Point {
    let bound = bound.clone();
    Point::from_fallible(move |i| {
        let (v, b) = (point.at(i)?, bound.at(i)?);
        if v > b {
            return Err(Error::BoundExceeded {
                index: i,
                value: v,
                bound: b,
            });
        }
        Ok(v)
    })
}

fn g_node(
    y: &Functional,
    s: &FinSeq,
    n: Nat,
    bound: Option<&Point>,
    session: &EvalSession,
) -> Result<Nat> {
    let kind = if bound.is_some() {
        Kind::GChecked
    } else {
        Kind::G
    };
    // every depth up to |s| is the same base case
    let n = if s.len() as Nat >= n { 0 } else { n };
    if let Some(v) = session.recall(y.id(), kind, s, n) {
        return Ok(v);
    }
    session.step()?;
    let point = if s.len() as Nat >= n {
        Point::pad(s, 0)
    } else {
        let (y2, session2, bound2) = (y.clone(), session.clone(), bound.cloned());
        node_point(s, move |child| {
            g_node(&y2, &child, n, bound2.as_ref(), &session2)
        })
    };
    let point = match bound {
        Some(b) => checked_reads(point, b),
        None => point,
    };
    let value = y.apply(&point)?;
    session.remember(y.id(), kind, s, n, value)
}

/// Least `N₀ ≤ nmax` such that `H(Y, s, N) = G(Y, s, N) = v` for every `N`
/// in `[N₀, max(N₀, |s|) + window]`, with that `v`.
///
/// Below `|s|` both approximations are their base case and trivially
/// constant, so the window is counted from `|s|` on.
pub fn stabilize(y: &Functional, s: &FinSeq, session: &EvalSession) -> Result<Stable> {
    if let Some(stable) = session.recall_stable(y.id(), s) {
        return Ok(stable);
    }
    let _scope = session.enter();
    let (window, nmax) = (session.config().window, session.config().nmax);
    let len = s.len() as Nat;
    // values[n] = Some(v) when H and G agree on v at depth n
    let mut values: Vec<Option<Nat>> = Vec::new();
    let depth_value = |n: Nat, values: &mut Vec<Option<Nat>>| -> Result<Option<Nat>> {
        while values.len() as Nat <= n {
            let k = values.len() as Nat;
            let g = g_node(y, s, k, None, session)?;
            let h = h_node(y, s, k, Padding::Zeros, session)?;
            values.push((g == h).then_some(g));
        }
        Ok(values[n as usize])
    };
    'start: for start in 0..=nmax {
        let Some(v) = depth_value(start, &mut values)? else {
            continue;
        };
        for n in start + 1..=start.max(len) + window {
            if depth_value(n, &mut values)? != Some(v) {
                continue 'start;
            }
        }
        let stable = Stable {
            depth: start,
            value: v,
        };
        session.remember_stable(y.id(), s, stable);
        return Ok(stable);
    }
    Err(Error::StabilizationFailed { nmax })
}

/// Checks the Gandy-Hyland equation for a candidate `gamma` at `s`:
/// `gamma(s) = Y(s * 0 * (λn) gamma(s * (n+1)))`. Only the children `Y`
/// actually reads are evaluated.
pub fn gh_check<F>(gamma: F, y: &Functional, s: &FinSeq) -> Result<bool>
where
    F: Fn(&FinSeq) -> Result<Nat> + 'static,
{
    let gamma = std::rc::Rc::new(gamma);
    let lhs = gamma(s)?;
    let child = gamma.clone();
    let rhs = y.apply(&node_point(s, move |t| child(&t)))?;
    Ok(lhs == rhs)
}

/// `Γ(Y, s)`, read off the stabilized `G` and verified against the
/// Gandy-Hyland equation at `s`.
pub fn gamma_eval(y: &Functional, s: &FinSeq, session: &EvalSession) -> Result<Nat> {
    let stable = stabilize(y, s, session)?;
    let (y2, session2) = (y.clone(), session.clone());
    let holds = gh_check(
        move |t| stabilize(&y2, t, &session2).map(|st| st.value),
        y,
        s,
    )?;
    if !holds {
        return Err(Error::GhEquationViolated { seq: s.to_string() });
    }
    Ok(stable.value)
}
