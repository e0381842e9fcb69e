//! A small expression language for functionals.
//!
//! ```text
//! expr := term ('+' term)*
//! term := atom ('*' atom)*
//! atom := nat | 'i' | 'f' '(' expr ')' | 'ifz' '(' expr ',' expr ',' expr ')'
//!       | 'least' '(' nat ',' expr ')' | '(' expr ')'
//! ```
//!
//! `f(e)` reads the argument at position `e`; `ifz(c, a, b)` is `a` when
//! `c = 0` and `b` otherwise; `least(n, e)` is the least `i < n` with `e = 0`
//! (`n` if there is none), where `i` names the index of the innermost
//! enclosing `least`. Every expression therefore terminates on every point,
//! and its modulus is computed alongside its value.

use std::fmt;

use crate::error::{Error, Result};
use crate::functional::Functional;
use crate::point::Point;
use crate::Nat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Lit(Nat),
    /// The index bound by the innermost `least`.
    Index,
    Probe(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    IfZero(Box<Expr>, Box<Expr>, Box<Expr>),
    Least(Nat, Box<Expr>),
}

pub fn parse_spec(text: &str) -> Result<Expr> {
    let mut parser = Parser {
        text,
        pos: 0,
        depth: 0,
    };
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.pos < text.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    /// Number of enclosing `least`s.
    depth: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        let before = &self.text[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Parse {
            line,
            column,
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while self.eat('+') {
            lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.atom()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.atom()?));
        }
        Ok(lhs)
    }

    fn number(&mut self) -> Result<Nat> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected a natural number"));
        }
        let value = rest[..len]
            .parse()
            .map_err(|_| self.error("number too large"))?;
        self.pos += len;
        Ok(value)
    }

    fn word(&mut self) -> &str {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
            .unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(c) if c.is_ascii_digit() => Ok(Expr::Lit(self.number()?)),
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.word().to_string();
                match name.as_str() {
                    "i" if self.depth > 0 => Ok(Expr::Index),
                    "i" => {
                        self.pos = start;
                        Err(self.error("`i` used outside `least`"))
                    }
                    "f" => {
                        let mut args = self.call(&name, 1, false)?;
                        Ok(Expr::Probe(Box::new(args.remove(0))))
                    }
                    "ifz" => {
                        let mut args = self.call(&name, 3, false)?.into_iter();
                        let (c, a, b) = (
                            args.next().unwrap(),
                            args.next().unwrap(),
                            args.next().unwrap(),
                        );
                        Ok(Expr::IfZero(Box::new(c), Box::new(a), Box::new(b)))
                    }
                    "least" => {
                        let mut args = self.call(&name, 2, true)?;
                        let body = args.pop().unwrap();
                        match args.pop().unwrap() {
                            Expr::Lit(n) => Ok(Expr::Least(n, Box::new(body))),
                            _ => unreachable!("least bound parsed as a literal"),
                        }
                    }
                    _ => {
                        self.pos = start;
                        Err(self.error(format!("unknown name `{name}`")))
                    }
                }
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
        }
    }

    /// Parses `(arg, …)` and checks the argument count. For `least` the
    /// first argument must be a literal and the rest binds `i`.
    fn call(&mut self, name: &str, expected: usize, binder: bool) -> Result<Vec<Expr>> {
        self.expect('(')?;
        let mut args = Vec::new();
        if self.peek() != Some(')') {
            loop {
                let arg = if binder && args.is_empty() {
                    Expr::Lit(self.number()?)
                } else if binder {
                    self.depth += 1;
                    let body = self.expr();
                    self.depth -= 1;
                    body?
                } else {
                    self.expr()?
                };
                args.push(arg);
                if !self.eat(',') {
                    break;
                }
            }
        }
        self.expect(')')?;
        if args.len() != expected {
            return Err(Error::Arity {
                name: name.to_string(),
                expected,
                found: args.len(),
            });
        }
        Ok(args)
    }
}

impl Expr {
    /// Value at `f` and the number of leading positions of `f` it depends
    /// on, computed by structural recursion.
    pub fn eval(&self, f: &Point) -> Result<(Nat, Nat)> {
        self.eval_in(f, None)
    }

    fn eval_in(&self, f: &Point, index: Option<Nat>) -> Result<(Nat, Nat)> {
        Ok(match self {
            Expr::Lit(n) => (*n, 0),
            Expr::Index => (
                index.ok_or_else(|| Error::InvariantViolation("`i` outside `least`".into()))?,
                0,
            ),
            Expr::Probe(e) => {
                let (at, reach) = e.eval_in(f, index)?;
                (
                    f.at(at)?,
                    reach.max(at.checked_add(1).ok_or(Error::Overflow)?),
                )
            }
            Expr::Add(a, b) => {
                let ((x, r), (y, s)) = (a.eval_in(f, index)?, b.eval_in(f, index)?);
                (x.checked_add(y).ok_or(Error::Overflow)?, r.max(s))
            }
            Expr::Mul(a, b) => {
                let ((x, r), (y, s)) = (a.eval_in(f, index)?, b.eval_in(f, index)?);
                (x.checked_mul(y).ok_or(Error::Overflow)?, r.max(s))
            }
            Expr::IfZero(c, a, b) => {
                let (x, r) = c.eval_in(f, index)?;
                let (v, s) = if x == 0 {
                    a.eval_in(f, index)?
                } else {
                    b.eval_in(f, index)?
                };
                (v, r.max(s))
            }
            Expr::Least(bound, body) => {
                let mut reach = 0;
                for i in 0..*bound {
                    let (v, r) = body.eval_in(f, Some(i))?;
                    reach = reach.max(r);
                    if v == 0 {
                        return Ok((i, reach));
                    }
                }
                (*bound, reach)
            }
        })
    }

    pub fn to_functional(&self, name: impl Into<String>) -> Functional {
        let (apply, modulus) = (self.clone(), self.clone());
        Functional::new(name, move |f| Ok(apply.eval(f)?.0))
            .with_modulus(move |f| Ok(modulus.eval(f)?.1))
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) => 0,
            Expr::Mul(..) => 1,
            _ => 2,
        }
    }

    fn fmt_at(&self, out: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(out, "(")?;
            self.fmt_at(out, 0)?;
            return write!(out, ")");
        }
        match self {
            Expr::Lit(n) => write!(out, "{n}"),
            Expr::Index => write!(out, "i"),
            Expr::Probe(e) => write!(out, "f({e})"),
            Expr::Add(a, b) => {
                a.fmt_at(out, 0)?;
                write!(out, "+")?;
                b.fmt_at(out, 1)
            }
            Expr::Mul(a, b) => {
                a.fmt_at(out, 1)?;
                write!(out, "*")?;
                b.fmt_at(out, 2)
            }
            Expr::IfZero(c, a, b) => write!(out, "ifz({c},{a},{b})"),
            Expr::Least(n, e) => write!(out, "least({n},{e})"),
        }
    }
}

/// Renders in the surface syntax; [`parse_spec`] reads it back.
impl fmt::Display for Expr {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(out, 0)
    }
}

pub fn render(expr: &Expr) -> String {
    expr.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::FinSeq;
    use proptest::prelude::*;

    fn probe(n: Nat) -> Expr {
        Expr::Probe(Box::new(Expr::Lit(n)))
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_spec("f(0)+f(1)").unwrap(),
            Expr::Add(Box::new(probe(0)), Box::new(probe(1)))
        );
        assert_eq!(
            parse_spec(" f( f(0) ) ").unwrap(),
            Expr::Probe(Box::new(probe(0)))
        );
        match parse_spec("f(0)+").unwrap_err() {
            Error::Parse {
                offset,
                line,
                column,
                ..
            } => assert_eq!((offset, line, column), (5, 1, 6)),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn precedence_and_associativity() {
        let e = parse_spec("1+2*3").unwrap();
        assert_eq!(e.eval(&Point::zeros()).unwrap().0, 7);
        assert_eq!(
            parse_spec("(1+2)*3")
                .unwrap()
                .eval(&Point::zeros())
                .unwrap()
                .0,
            9
        );
        assert_eq!(render(&parse_spec("1+(2+3)").unwrap()), "1+(2+3)");
        assert_eq!(render(&parse_spec("(1+2)+3").unwrap()), "1+2+3");
    }

    #[test]
    fn arity_and_scope_errors() {
        assert_eq!(
            parse_spec("ifz(1,2)").unwrap_err(),
            Error::Arity {
                name: "ifz".into(),
                expected: 3,
                found: 2
            }
        );
        assert!(matches!(
            parse_spec("f(1,2)").unwrap_err(),
            Error::Arity {
                expected: 1,
                found: 2,
                ..
            }
        ));
        assert!(matches!(
            parse_spec("f()").unwrap_err(),
            Error::Arity { found: 0, .. }
        ));
        assert!(matches!(
            parse_spec("least(f(0), 1)").unwrap_err(),
            Error::Parse { .. }
        ));
        assert!(matches!(
            parse_spec("f(i)").unwrap_err(),
            Error::Parse { offset: 2, .. }
        ));
        assert!(matches!(
            parse_spec("g(0)").unwrap_err(),
            Error::Parse { offset: 0, .. }
        ));
        match parse_spec("1+\n  2+*").unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 5)),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn evaluation() {
        let f = Point::pad(&FinSeq::from([2, 5, 0, 7]), 0);
        let cases = [
            ("f(0)+f(1)", 7, 2),
            ("f(f(0))", 0, 3),
            ("ifz(f(2), 10, f(3))", 10, 3),
            ("ifz(f(1), 10, f(3))", 7, 4),
            ("least(6, f(i))", 2, 3),
            ("least(2, f(i))", 2, 2),
            ("least(5, least(5, i+f(i)))", 5, 5),
            ("3*f(3)", 21, 4),
        ];
        for (text, value, reach) in cases {
            assert_eq!(
                parse_spec(text).unwrap().eval(&f).unwrap(),
                (value, reach),
                "{text}"
            );
        }
        let big = parse_spec("18446744073709551615+1").unwrap();
        assert_eq!(big.eval(&f), Err(Error::Overflow));
    }

    #[test]
    fn syntactic_modulus_passes_sampling() {
        let points = [
            Point::zeros(),
            Point::from_fn(|n| n % 3),
            Point::constant(2),
            Point::pad(&FinSeq::from([3, 1]), 0),
        ];
        for text in [
            "2",
            "f(1)",
            "f(3)",
            "f(0)+f(1)",
            "f(f(0))",
            "least(4, f(i)*f(i+1))",
            "ifz(f(0), f(2), 1)",
        ] {
            let y = parse_spec(text).unwrap().to_functional(text);
            for p in &points {
                assert!(y.modulus_holds_at(p, 3, 3).unwrap(), "{text}");
            }
        }
    }

    /// Bodies of `least`: may use `i`, no further binders.
    fn arb_body() -> BoxedStrategy<Expr> {
        prop_oneof![(0u64..20).prop_map(Expr::Lit), Just(Expr::Index)]
            .prop_recursive(3, 12, 3, |inner| {
                prop_oneof![
                    inner.clone().prop_map(|e| Expr::Probe(Box::new(e))),
                    (inner.clone(), inner.clone())
                        .prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                    (inner.clone(), inner).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                ]
            })
            .boxed()
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        (0u64..20)
            .prop_map(Expr::Lit)
            .prop_recursive(4, 24, 3, |inner| {
                prop_oneof![
                    inner.clone().prop_map(|e| Expr::Probe(Box::new(e))),
                    (inner.clone(), inner.clone())
                        .prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                    (inner.clone(), inner.clone())
                        .prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                    (inner.clone(), inner.clone(), inner).prop_map(|(c, a, b)| Expr::IfZero(
                        Box::new(c),
                        Box::new(a),
                        Box::new(b)
                    )),
                    (0u64..5, arb_body()).prop_map(|(n, e)| Expr::Least(n, Box::new(e))),
                ]
            })
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(e in arb_expr()) {
            prop_assert_eq!(parse_spec(&render(&e)).unwrap(), e);
        }
    }
}
