//! Named fixtures: functionals, associates, trees and sample points.
//!
//! Functionals are written in the expression language where possible, so
//! the fixtures double as parser corpus.

use crate::associate::{flag_point, Associate};
use crate::dsl::parse_spec;
use crate::error::{Error, Result};
use crate::fan::BinTree;
use crate::functional::{Fuel, Functional};
use crate::point::Point;
use crate::seq::FinSeq;
use crate::Nat;

/// Fuel given to functionals built from associates.
pub const ASSOCIATE_FUEL: Fuel = Fuel(1 << 12);

/// Expression sources of the named functional fixtures.
pub const EXPRESSIONS: &[(&str, &str)] = &[
    ("const-0", "0"),
    ("const-2", "2"),
    ("const-4", "4"),
    ("proj-0", "f(0)"),
    ("proj-1", "f(1)"),
    ("proj-2", "f(2)"),
    ("proj-3", "f(3)"),
    ("sum01", "f(0)+f(1)"),
    ("nested", "f(f(0))"),
];

/// Every name accepted by [`functional`].
pub fn functional_names() -> Vec<&'static str> {
    EXPRESSIONS
        .iter()
        .map(|(n, _)| *n)
        .chain(["gamma-flag", "epsilon-flag"])
        .collect()
}

pub fn expression(name: &str) -> Option<&'static str> {
    EXPRESSIONS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, e)| *e)
}

/// A functional fixture by name; the flags take their `m₀`.
pub fn functional(name: &str, m0: Nat) -> Result<Functional> {
    if let Some(text) = expression(name) {
        return Ok(parse_spec(text)?.to_functional(name));
    }
    match name {
        "gamma-flag" => Ok(flag_functional(m0)),
        "epsilon-flag" => {
            Ok(Associate::epsilon_flag(&flag_point(m0)).to_functional(ASSOCIATE_FUEL))
        }
        _ => Err(unknown("functional", name)),
    }
}

fn unknown(what: &str, name: &str) -> Error {
    Error::Usage(format!("unknown {what} fixture `{name}`"))
}

/// The functional coded by the gamma flag for `m₀`.
pub fn flag_functional(m0: Nat) -> Functional {
    Associate::gamma_flag(&flag_point(m0)).to_functional(ASSOCIATE_FUEL)
}

/// The six functionals the fixed-point properties are checked on.
pub fn core_functionals() -> Vec<Functional> {
    let mut out: Vec<Functional> = ["const-2", "proj-1", "proj-3", "sum01", "nested"]
        .iter()
        .map(|n| functional(n, 0).expect("fixture parses"))
        .collect();
    out.push(flag_functional(3));
    out
}

/// The `g`s fed to the special fan functional.
pub fn scf_functionals() -> Vec<Functional> {
    ["const-2", "const-4", "sum01", "nested"]
        .iter()
        .map(|n| functional(n, 0).expect("fixture parses"))
        .collect()
}

/// A constant associate and the gamma/epsilon flags for `m₀ ∈ {3, 4, 5}`.
pub fn associates() -> Vec<Associate> {
    let mut out = vec![Associate::constant(2)];
    for m0 in 3..=5 {
        out.push(Associate::gamma_flag(&flag_point(m0)));
        out.push(Associate::epsilon_flag(&flag_point(m0)));
    }
    out
}

/// `associates` entry by name.
pub fn associate(name: &str, m0: Nat) -> Result<Associate> {
    match name {
        "const-assoc" => Ok(Associate::constant(2)),
        "gamma-flag" => Ok(Associate::gamma_flag(&flag_point(m0))),
        "epsilon-flag" => Ok(Associate::epsilon_flag(&flag_point(m0))),
        _ => Err(unknown("associate", name)),
    }
}

/// `full-N`, `no-11` or `empty`.
pub fn tree(name: &str) -> Result<BinTree> {
    match name {
        "no-11" => Ok(BinTree::no_consecutive_ones()),
        "empty" => Ok(BinTree::empty()),
        _ => name
            .strip_prefix("full-")
            .and_then(|h| h.parse().ok())
            .map(BinTree::full)
            .ok_or_else(|| unknown("tree", name)),
    }
}

/// Ten points of different shapes: constant, periodic, growing, and finite
/// sequences padded with zeros.
pub fn sample_points() -> Vec<Point> {
    vec![
        Point::zeros(),
        Point::constant(1),
        Point::constant(2),
        Point::from_fn(|n| n % 2),
        Point::from_fn(|n| n % 3),
        Point::from_fn(|n| n),
        Point::step(2),
        Point::pad(&FinSeq::from([3, 1, 4, 1, 5]), 0),
        Point::pad(&FinSeq::from([0, 0, 7]), 0),
        Point::pad(&FinSeq::from([1, 0, 1]), 1),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::render;

    #[test]
    fn every_name_resolves() {
        for name in functional_names() {
            let y = functional(name, 3).unwrap();
            y.apply(&Point::zeros()).unwrap();
            assert!(y.has_modulus());
        }
        assert!(functional("nope", 3).is_err());
        assert_eq!(core_functionals().len(), 6);
        assert_eq!(scf_functionals().len(), 4);
        assert_eq!(associates().len(), 7);
        assert_eq!(sample_points().len(), 10);
    }

    #[test]
    fn expressions_round_trip() {
        for (_, text) in EXPRESSIONS {
            let e = parse_spec(text).unwrap();
            assert_eq!(parse_spec(&render(&e)).unwrap(), e);
        }
    }

    #[test]
    fn trees() {
        assert!(tree("full-2").unwrap().contains(&FinSeq::from([1, 1])));
        assert!(!tree("full-2").unwrap().contains(&FinSeq::from([1, 1, 0])));
        assert!(!tree("no-11").unwrap().contains(&FinSeq::from([0, 1, 1])));
        assert!(!tree("empty").unwrap().contains(&FinSeq::empty()));
        assert!(tree("full-x").is_err());
    }

    #[test]
    fn flag_functional_reads_position_m0() {
        let y = flag_functional(4);
        assert_eq!(y.apply(&Point::from_fn(|n| n * 10)).unwrap(), 40);
        assert_eq!(y.modulus(&Point::zeros()).unwrap(), 5);
    }
}
