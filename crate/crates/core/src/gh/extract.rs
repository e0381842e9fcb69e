//! Concrete realizations of the terms extracted from the equivalence
//! proofs: Feferman's μ from a modulus operation, a modulus from μ, μ from
//! `Γ` plus an extensionality witness, and a certified stabilization depth.

use crate::associate::Associate;
use crate::error::{Error, Result};
use crate::fan::{full_fan_modulus, pwc_bound};
use crate::functional::Fuel;
use crate::functional::Functional;
use crate::point::Point;
use crate::seq::{decode, FinSeq};
use crate::Nat;

use super::approx::g_eval_bounded;
use super::session::EvalSession;

/// `n ↦ 1` where `f(n) = 0`, else `0`: the `h` whose flags fire at the
/// zeros of `f`.
pub fn zero_indicator(f: &Point) -> Point {
    let f = f.clone();
    Point::from_fallible(move |n| Ok(Nat::from(f.at(n)? == 0)))
}

fn least_zero_below(f: &Point, bound: Nat) -> Result<Nat> {
    for n in 0..bound {
        if f.at(n)? == 0 {
            return Ok(n);
        }
    }
    Ok(0)
}

/// μ from an associate-modulus operation `psi`: the flag associate for the
/// zeros of `f` is decided along `00…` exactly once its argument covers the
/// first zero, so `psi` bounds the search.
pub fn mu_from_modulus<P>(psi: P, f: &Point, fuel: Fuel) -> Result<Nat>
where
    P: Fn(&Associate, &Point, Fuel) -> Result<Nat>,
{
    let gamma = Associate::gamma_flag(&zero_indicator(f));
    let k = psi(&gamma, &Point::zeros(), fuel)?;
    least_zero_below(f, k)
}

/// A modulus for `γ` at `f` from a μ operation: the first `k` at which
/// `γ(f̄k)` is decided.
pub fn modulus_from_mu<M>(mu_op: M, gamma: &Associate, f: &Point, fuel: Fuel) -> Result<Nat>
where
    M: Fn(&Point, Fuel) -> Result<Nat>,
{
    let (gamma, f) = (gamma.clone(), f.clone());
    let undecided = Point::from_fallible(move |k| {
        let prefix = f.take(k as usize)?;
        Ok(Nat::from(gamma.query(&prefix)? == 0))
    });
    mu_op(&undecided, fuel)
}

/// First index below `fuel` where `a` and `b` differ, plus one; `0` if they
/// agree on the whole range.
pub fn ext_witness<A, B>(a: A, b: B, fuel: Fuel) -> Result<Nat>
where
    A: Fn(Nat) -> Result<Nat>,
    B: Fn(Nat) -> Result<Nat>,
{
    for code in 0..fuel.0 {
        if a(code)? != b(code)? {
            return Ok(code + 1);
        }
    }
    Ok(0)
}

/// [`ext_witness`] on two associates, indexed by sequence codes.
pub fn associate_ext_witness(a: &Associate, b: &Associate, fuel: Fuel) -> Result<Nat> {
    for code in 0..fuel.0 {
        let s = decode(code);
        if a.query(&s)? != b.query(&s)? {
            return Ok(code + 1);
        }
    }
    Ok(0)
}

/// Length of the longest sequence with code below `k`, i.e. the largest
/// popcount below `k`.
fn longest_below(k: Nat) -> Nat {
    let Some(top) = k.checked_sub(1) else {
        return 0;
    };
    let mut best = top.count_ones();
    for bit in 0..Nat::BITS {
        if top >> bit & 1 == 1 {
            best = best.max((top & !(1 << bit) | ((1 << bit) - 1)).count_ones());
        }
    }
    Nat::from(best)
}

/// μ from `Γ(·, ⟨⟩)` on associates and an extensionality witness `xi`.
///
/// The gamma and epsilon flags for the zeros of `f` agree until the first
/// sequence reaching past the least zero; `xi` finds that sequence, and its
/// length bounds the search. If `xi` sees no difference the two `Γ`-values
/// must agree; a resource limit while computing them counts as agreement
/// (there is then no zero to find within fuel).
pub fn mu_from_gh_ext<G, X>(gamma: G, xi: X, f: &Point, fuel: Fuel) -> Result<Nat>
where
    G: Fn(&Associate) -> Result<Nat>,
    X: Fn(&Associate, &Associate, Fuel) -> Result<Nat>,
{
    let h = zero_indicator(f);
    let (flag_g, flag_e) = (Associate::gamma_flag(&h), Associate::epsilon_flag(&h));
    let k = xi(&flag_g, &flag_e, fuel)?;
    if k > 0 {
        return least_zero_below(f, longest_below(k));
    }
    match (gamma(&flag_g), gamma(&flag_e)) {
        (Ok(a), Ok(b)) if a != b => Err(Error::InvariantViolation(format!(
            "extensionality witness found no difference but Γ-values are {a} and {b}"
        ))),
        (Err(e), _) | (_, Err(e)) if !e.is_resource_limit() => Err(e),
        _ => Ok(0),
    }
}

/// A depth `N` beyond which `G(Y, s, ·)` is constant, computed from the
/// fan functional for a bound on the recursion instead of by observation.
/// Verified on `[N, N + window]` with every read checked against the bound.
pub fn certified_depth_bounded(
    y: &Functional,
    s: &FinSeq,
    h: &Point,
    session: &EvalSession,
) -> Result<Nat> {
    let config = *session.config();
    let p = pwc_bound(y, &Point::pad(s, 0), h, config.fuel)?;
    let hh = h.clone();
    let bound = Point::from_fallible(move |i| Ok(hh.at(i)?.max(p)));
    let n = (s.len() as Nat)
        .checked_add(full_fan_modulus(y, &bound, config.fuel)?)
        .ok_or(Error::Overflow)?;
    let check = session.fresh();
    let value = g_eval_bounded(y, s, n, &bound, &check)?;
    for later in n + 1..=n + config.window {
        let other = g_eval_bounded(y, s, later, &bound, &check)?;
        if other != value {
            return Err(Error::InvariantViolation(format!(
                "G({}, {s}, ·) changes from {value} to {other} at depth {later} past certified depth {n}",
                y.name()
            )));
        }
    }
    Ok(n)
}
