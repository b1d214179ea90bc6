//! First-order formulas over the vocabulary `{E, =}`.
//!
//! The text form is a parenthesised prefix notation:
//! `(forall x (exists y (and (E x y) (not (= x y)))))`. Connectives are
//! `not`, `and`, `or`, `->` and `<->`; `(and)` is true and `(or)` is false.

mod eval;
mod phi;
mod random;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

pub use eval::{evaluate, evaluate_with_budget, DEFAULT_EVAL_BUDGET};
pub use phi::{build_phi_k, iso_disjunct_count, PHI_MAX_K};
pub use random::random_sentence;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
    Edge(String, String),
    Eq(String, String),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn forall(x: impl Into<String>, f: Formula) -> Formula {
        Formula::Forall(x.into(), Box::new(f))
    }

    pub fn exists(x: impl Into<String>, f: Formula) -> Formula {
        Formula::Exists(x.into(), Box::new(f))
    }

    pub fn edge(x: impl Into<String>, y: impl Into<String>) -> Formula {
        Formula::Edge(x.into(), y.into())
    }

    pub fn eq(x: impl Into<String>, y: impl Into<String>) -> Formula {
        Formula::Eq(x.into(), y.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    /// Total number of quantifier occurrences.
    pub fn quantifier_count(&self) -> usize {
        match self {
            Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.quantifier_count(),
            Formula::Edge(..) | Formula::Eq(..) => 0,
            Formula::Not(f) => f.quantifier_count(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().map(Formula::quantifier_count).sum(),
            Formula::Implies(a, b) | Formula::Iff(a, b) => a.quantifier_count() + b.quantifier_count(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let mut atom = |x: &String| {
            if !bound.contains(x) {
                out.insert(x.clone());
            }
        };
        match self {
            Formula::Forall(x, f) | Formula::Exists(x, f) => {
                bound.push(x.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
            Formula::Edge(x, y) | Formula::Eq(x, y) => {
                atom(x);
                atom(y);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_free(bound, out)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn parse(text: &str) -> Result<Formula> {
        let tokens = tokenize(text);
        let mut pos = 0;
        let f = parse_at(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Parameter(format!("trailing input after formula at token {pos}")));
        }
        Ok(f)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |out: &mut fmt::Formatter<'_>, op: &str, fs: &[&Formula]| {
            write!(out, "({op}")?;
            for f in fs {
                write!(out, " {f}")?;
            }
            write!(out, ")")
        };
        match self {
            Formula::Forall(x, f) => write!(out, "(forall {x} {f})"),
            Formula::Exists(x, f) => write!(out, "(exists {x} {f})"),
            Formula::Edge(x, y) => write!(out, "(E {x} {y})"),
            Formula::Eq(x, y) => write!(out, "(= {x} {y})"),
            Formula::Not(f) => write!(out, "(not {f})"),
            Formula::And(fs) => list(out, "and", &fs.iter().collect::<Vec<_>>()),
            Formula::Or(fs) => list(out, "or", &fs.iter().collect::<Vec<_>>()),
            Formula::Implies(a, b) => list(out, "->", &[a, b]),
            Formula::Iff(a, b) => list(out, "<->", &[a, b]),
        }
    }
}

fn tokenize(text: &str) -> Vec<String> {
    text.replace('(', " ( ").replace(')', " ) ").split_whitespace().map(str::to_owned).collect()
}

fn parse_at(tokens: &[String], pos: &mut usize) -> Result<Formula> {
    let bad = |msg: String| Error::Parameter(format!("formula syntax: {msg}"));
    let mut next = |what: &str| -> Result<String> {
        let t = tokens.get(*pos).cloned().ok_or_else(|| bad(format!("expected {what}, found end of input")))?;
        *pos += 1;
        Ok(t)
    };
    let open = next("'('")?;
    if open != "(" {
        return Err(bad(format!("expected '(', found {open:?}")));
    }
    let op = next("an operator")?;
    let var = |t: String| -> Result<String> {
        if t == "(" || t == ")" {
            Err(bad(format!("expected a variable, found {t:?}")))
        } else {
            Ok(t)
        }
    };
    let f = match op.as_str() {
        "forall" | "exists" => {
            let x = var(next("a variable")?)?;
            let body = parse_at(tokens, pos)?;
            if op == "forall" {
                Formula::forall(x, body)
            } else {
                Formula::exists(x, body)
            }
        }
        "E" | "=" => {
            let x = var(next("a variable")?)?;
            let y = var(tokens.get(*pos).cloned().ok_or_else(|| bad("expected a variable".into()))?)?;
            *pos += 1;
            if op == "E" {
                Formula::edge(x, y)
            } else {
                Formula::eq(x, y)
            }
        }
        "not" | "and" | "or" | "->" | "<->" => {
            let mut args = Vec::new();
            while tokens.get(*pos).is_some_and(|t| t != ")") {
                args.push(parse_at(tokens, pos)?);
            }
            let arity_ok = match op.as_str() {
                "not" => args.len() == 1,
                "->" | "<->" => args.len() == 2,
                _ => true,
            };
            if !arity_ok {
                return Err(bad(format!("{op} takes {} arguments, got {}", if op == "not" { 1 } else { 2 }, args.len())));
            }
            let mut it = args.into_iter();
            match op.as_str() {
                "not" => Formula::not(it.next().unwrap()),
                "and" => Formula::And(it.collect()),
                "or" => Formula::Or(it.collect()),
                "->" => Formula::implies(it.next().unwrap(), it.next().unwrap()),
                _ => Formula::iff(it.next().unwrap(), it.next().unwrap()),
            }
        }
        other => return Err(bad(format!("unknown operator {other:?}"))),
    };
    match tokens.get(*pos).map(String::as_str) {
        Some(")") => {
            *pos += 1;
            Ok(f)
        }
        other => Err(bad(format!("expected ')', found {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let text = "(forall x (exists y (and (E x y) (not (= x y)) (-> (E y x) (or)) (<-> (and) (= y y)))))";
        let f = Formula::parse(text).unwrap();
        assert_eq!(f.to_string(), text);
        assert_eq!(Formula::parse(&f.to_string()).unwrap(), f);
        assert_eq!(f.quantifier_count(), 2);
        assert!(f.is_closed());
    }

    #[test]
    fn free_variables_and_errors() {
        let f = Formula::parse("(exists x (E x z))").unwrap();
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), vec!["z".to_string()]);
        assert_eq!(Formula::parse("(E x y)").unwrap().quantifier_count(), 0);
        for bad in ["", "(E x)", "(not (E x y) (E x y))", "(foo x)", "(E x y) extra", "(forall (E x y))"] {
            assert!(Formula::parse(bad).is_err(), "{bad:?}");
        }
    }
}
