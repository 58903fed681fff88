//! Text formats: a small expression language for sets and JSON descriptions
//! for permutations, automorphisms and certificates.
//!
//! ```text
//! expr := name | '{' [int (',' int)*] '}' | 'mod(' int ',' int ')'
//!       | 'per(' bits ';' bits ')'
//!       | ('complement' | 'union' | 'inter' | 'diff' | 'symdiff') '(' expr [',' expr] ')'
//! name := 'evens' | 'odds'
//! ```
//!
//! `complement` takes one argument, the other operators two. Whitespace is
//! ignored. The rendering of a canonical set is itself an expression, so
//! `eval(render(s)) == s`.

use std::fmt;

use serde::Deserialize;
use serde_json::Value;

use crate::auto::{AutomorphismRegistry, NonRegularityCertificate, SharedAutomorphism};
use crate::error::{Error, Result};
use crate::graph::as_vertex;
use crate::perm::{validate, ComputablePermutation, PermSpec};
use crate::setalg::PeriodicSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Union,
    Inter,
    Diff,
    SymDiff,
}

impl BinaryOp {
    fn keyword(self) -> &'static str {
        match self {
            BinaryOp::Union => "union",
            BinaryOp::Inter => "inter",
            BinaryOp::Diff => "diff",
            BinaryOp::SymDiff => "symdiff",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetExpr {
    Evens,
    Odds,
    Literal(Vec<u64>),
    Mod(u64, u64),
    Per(String, String),
    Complement(Box<SetExpr>),
    Binary(BinaryOp, Box<SetExpr>, Box<SetExpr>),
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::Evens => f.write_str("evens"),
            SetExpr::Odds => f.write_str("odds"),
            SetExpr::Literal(elements) => {
                let items: Vec<String> = elements.iter().map(u64::to_string).collect();
                write!(f, "{{{}}}", items.join(","))
            }
            SetExpr::Mod(m, r) => write!(f, "mod({m},{r})"),
            SetExpr::Per(prefix, period) => write!(f, "per({prefix};{period})"),
            SetExpr::Complement(e) => write!(f, "complement({e})"),
            SetExpr::Binary(op, a, b) => write!(f, "{}({a}, {b})", op.keyword()),
        }
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn location(&self) -> (usize, usize) {
        let before = &self.chars[..self.pos];
        let line = before.iter().filter(|&&c| c == '\n').count() + 1;
        let col = self.pos - before.iter().rposition(|&c| c == '\n').map_or(0, |i| i + 1) + 1;
        (line, col)
    }

    fn error<T>(&self, expected: &str) -> Result<T> {
        let (line, col) = self.location();
        Err(Error::Parse {
            line,
            col,
            expected: expected.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(&format!("'{c}'"))
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn int(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        match digits.parse() {
            Ok(n) => Ok(n),
            Err(_) => {
                self.pos = start;
                self.error("a non-negative integer")
            }
        }
    }

    fn bits(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|&c| c == '0' || c == '1') {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn expr(&mut self) -> Result<SetExpr> {
        match self.peek() {
            Some('{') => {
                self.pos += 1;
                let mut elements = Vec::new();
                if self.peek() != Some('}') {
                    loop {
                        elements.push(self.int()?);
                        if self.peek() != Some(',') {
                            break;
                        }
                        self.pos += 1;
                    }
                }
                self.expect('}')?;
                Ok(SetExpr::Literal(elements))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let word = self.word();
                match word.as_str() {
                    "evens" => Ok(SetExpr::Evens),
                    "odds" => Ok(SetExpr::Odds),
                    "mod" => {
                        self.expect('(')?;
                        let m = self.int()?;
                        self.expect(',')?;
                        let r = self.int()?;
                        self.expect(')')?;
                        Ok(SetExpr::Mod(m, r))
                    }
                    "per" => {
                        self.expect('(')?;
                        let prefix = self.bits();
                        self.expect(';')?;
                        let period = self.bits();
                        if period.is_empty() {
                            return self.error("a non-empty period of 0s and 1s");
                        }
                        self.expect(')')?;
                        Ok(SetExpr::Per(prefix, period))
                    }
                    "complement" => {
                        self.expect('(')?;
                        let e = self.expr()?;
                        self.expect(')')?;
                        Ok(SetExpr::Complement(Box::new(e)))
                    }
                    "union" | "inter" | "diff" | "symdiff" => {
                        let op = match word.as_str() {
                            "union" => BinaryOp::Union,
                            "inter" => BinaryOp::Inter,
                            "diff" => BinaryOp::Diff,
                            _ => BinaryOp::SymDiff,
                        };
                        self.expect('(')?;
                        let a = self.expr()?;
                        self.expect(',')?;
                        let b = self.expr()?;
                        self.expect(')')?;
                        Ok(SetExpr::Binary(op, Box::new(a), Box::new(b)))
                    }
                    _ => {
                        self.pos = start;
                        self.error("evens, odds, mod, per, complement, union, inter, diff or symdiff")
                    }
                }
            }
            _ => self.error("a set expression"),
        }
    }
}

pub fn parse_set_expr(text: &str) -> Result<SetExpr> {
    let mut parser = Parser::new(text);
    let e = parser.expr()?;
    if parser.peek().is_some() {
        return parser.error("end of input");
    }
    Ok(e)
}

pub fn eval_set_expr(e: &SetExpr) -> Result<PeriodicSet> {
    match e {
        SetExpr::Evens => Ok(PeriodicSet::evens()),
        SetExpr::Odds => Ok(PeriodicSet::odds()),
        SetExpr::Literal(elements) => PeriodicSet::finite(elements),
        SetExpr::Mod(m, r) if *m == 0 || r >= m => {
            Err(Error::MalformedRepresentation(format!("mod({m},{r}) needs 0 <= r < m")))
        }
        SetExpr::Mod(m, r) => PeriodicSet::residue_class(*m, *r),
        SetExpr::Per(prefix, period) => PeriodicSet::from_bit_strings(prefix, period),
        SetExpr::Complement(e) => Ok(eval_set_expr(e)?.complement()),
        SetExpr::Binary(op, a, b) => {
            let (a, b) = (eval_set_expr(a)?, eval_set_expr(b)?);
            match op {
                BinaryOp::Union => a.union(&b),
                BinaryOp::Inter => a.inter(&b),
                BinaryOp::Diff => a.diff(&b),
                BinaryOp::SymDiff => a.symdiff(&b),
            }
        }
    }
}

pub fn eval_set_text(text: &str) -> Result<PeriodicSet> {
    eval_set_expr(&parse_set_expr(text)?)
}

fn json_error(e: serde_json::Error) -> Error {
    if e.is_data() {
        return Error::Format(e.to_string());
    }
    Error::Parse {
        line: e.line(),
        col: e.column(),
        expected: e.to_string(),
    }
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(json_error)
}

pub fn parse_perm_spec(text: &str) -> Result<ComputablePermutation> {
    let spec = PermSpec::deserialize(parse_json(text)?).map_err(|e| Error::Format(e.to_string()))?;
    validate(&spec)
}

pub fn render_perm_spec(s: &ComputablePermutation) -> String {
    serde_json::to_string(&s.spec()).expect("permutation descriptions serialize")
}

pub fn parse_auto_spec(text: &str, registry: &AutomorphismRegistry) -> Result<SharedAutomorphism> {
    registry.build(&parse_json(text)?)
}

pub fn render_auto_spec(f: &SharedAutomorphism) -> Option<String> {
    f.to_spec().map(|v| v.to_string())
}

pub fn render_certificate(cert: &NonRegularityCertificate) -> String {
    serde_json::to_string(cert).expect("certificates serialize")
}

#[derive(Deserialize)]
struct CertificateText {
    a: String,
    y: String,
    fa: String,
    fy: String,
}

pub fn parse_certificate(text: &str) -> Result<NonRegularityCertificate> {
    let raw = CertificateText::deserialize(parse_json(text)?).map_err(|e| Error::Format(e.to_string()))?;
    let vertex = |s: &str| as_vertex(eval_set_text(s)?);
    Ok(NonRegularityCertificate {
        a: vertex(&raw.a)?,
        y: vertex(&raw.y)?,
        fa: vertex(&raw.fa)?,
        fy: vertex(&raw.fy)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auto::{build_example_one, verify_certificate, Automorphism};
    use crate::setalg::canonicalize;
    use crate::setalg::tests::arb_raw;
    use proptest::prelude::*;

    #[test]
    fn evaluates_examples() {
        assert_eq!(eval_set_text("evens"), Ok(PeriodicSet::evens()));
        assert_eq!(
            eval_set_text("inter(evens, mod(3,0))"),
            PeriodicSet::residue_class(6, 0)
        );
        let s = eval_set_text("union({1}, diff(evens,{2}))").unwrap();
        let members: Vec<u64> = (1..=10).filter(|&n| s.contains(n)).collect();
        assert_eq!(members, vec![1, 4, 6, 8, 10]);
        assert_eq!(eval_set_text(" complement ( odds ) "), Ok(PeriodicSet::evens()));
        assert_eq!(eval_set_text("{}"), Ok(PeriodicSet::empty()));
        assert_eq!(eval_set_text("per(;01)"), Ok(PeriodicSet::evens()));
    }

    #[test]
    fn parse_errors_are_located() {
        assert_eq!(
            parse_set_expr("union(evens,\n  oddz)"),
            Err(Error::Parse {
                line: 2,
                col: 3,
                expected: "evens, odds, mod, per, complement, union, inter, diff or symdiff".into()
            })
        );
        assert!(matches!(
            parse_set_expr("union(evens)"),
            Err(Error::Parse { line: 1, col: 12, .. })
        ));
        assert!(matches!(parse_set_expr("evens odds"), Err(Error::Parse { col: 7, .. })));
        assert!(matches!(parse_set_expr("per(01;)"), Err(Error::Parse { .. })));
        assert!(matches!(eval_set_text("{0}"), Err(Error::DomainError(0))));
        assert!(matches!(
            eval_set_text("mod(3,3)"),
            Err(Error::MalformedRepresentation(_))
        ));
    }

    #[test]
    fn perm_specs() {
        assert!(
            parse_perm_spec(r#"{"modulus":1,"threshold":0,"classes":[{"from":0,"to":0,"offset":0}]}"#)
                .unwrap()
                .is_identity()
        );
        let t = parse_perm_spec(
            r#"{"modulus":1,"threshold":2,"classes":[{"from":0,"to":0,"offset":0}],"patch":{"1":2,"2":1}}"#,
        )
        .unwrap();
        assert_eq!(t, ComputablePermutation::transposition(1, 2).unwrap());
        assert_eq!(parse_perm_spec(&render_perm_spec(&t)), Ok(t));
        assert_eq!(
            parse_perm_spec(r#"{"modulus":1,"threshold":0,"classes":[{"from":0,"to":0,"offset":2}]}"#),
            Err(Error::NotSurjective(1))
        );
        assert!(matches!(
            parse_perm_spec("{\"modulus\":"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn certificates_round_trip() {
        let a = as_vertex(PeriodicSet::evens()).unwrap();
        let b = a.edit(&[2], &[1]).unwrap();
        let (f, cert) = build_example_one(&a, &b).unwrap();
        let parsed = parse_certificate(&render_certificate(&cert)).unwrap();
        assert_eq!(parsed, cert);
        assert!(verify_certificate(&f, &parsed));
        let text = f.to_spec().unwrap().to_string();
        let g = parse_auto_spec(&text, &AutomorphismRegistry::default()).unwrap();
        assert_eq!(render_auto_spec(&g), Some(text));
    }

    proptest! {
        #[test]
        fn rendering_is_an_expression(raw in arb_raw()) {
            let s = canonicalize(&raw).unwrap();
            prop_assert_eq!(eval_set_text(&s.to_string()).unwrap(), s);
        }

        #[test]
        fn render_parse_render(raw in arb_raw(), other in arb_raw(), op in 0..5usize) {
            let a = SetExpr::Per(bit_string(&raw.prefix_bits), bit_string(&raw.period_bits));
            let b = parse_set_expr(&canonicalize(&other).unwrap().to_string()).unwrap();
            let e = match op {
                0 => SetExpr::Complement(Box::new(a)),
                1 => SetExpr::Binary(BinaryOp::Union, Box::new(a), Box::new(b)),
                2 => SetExpr::Binary(BinaryOp::Inter, Box::new(a), Box::new(b)),
                3 => SetExpr::Binary(BinaryOp::Diff, Box::new(a), Box::new(b)),
                _ => SetExpr::Binary(BinaryOp::SymDiff, Box::new(a), Box::new(b)),
            };
            let rendered = e.to_string();
            let reparsed = parse_set_expr(&rendered).unwrap();
            prop_assert_eq!(&reparsed, &e);
            prop_assert_eq!(reparsed.to_string(), rendered);
        }
    }

    fn bit_string(bits: &[bool]) -> String {
        bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}
