//! Terms and sentences of the language `{+, *, S, 0, =}` enriched with
//! constant symbols `c1, c2, ...`, interpreted over the standard model of
//! arithmetic.
//!
//! The order relations `<=, <, >=, >` are surface syntax only: the parser
//! expands `a <= b` to `exists z (a + z = b)` and `a < b` to
//! `exists z (S(a) + z = b)`, and the renderer folds those shapes back.

mod eval;
mod parse;
mod render;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

pub use eval::{eval_bounded, eval_exact, eval_schema, eval_term, Env};
pub use parse::parse;
pub use render::{render, render_term, render_with, RenderOptions, DEFAULT_NUMERAL_CAP};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Zero,
    Succ(Box<Term>),
    /// `n` applications of `S` to `0`, stored compactly.
    Numeral(BigUint),
    Var(String),
    /// The constant symbol `c_i`, `i >= 1`.
    Const(u32),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
}

/// The numeral for `n`.
pub fn numeral(n: impl Into<BigUint>) -> Term {
    Term::Numeral(n.into())
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    /// Collapses successor chains over numerals: `Zero` and `Numeral(0)`
    /// become `Zero`, `S(Numeral(n))` becomes `Numeral(n + 1)`.
    pub fn normalized(&self) -> Term {
        match self {
            Term::Zero => Term::Zero,
            Term::Numeral(n) if n.is_zero() => Term::Zero,
            Term::Numeral(n) => Term::Numeral(n.clone()),
            Term::Succ(t) => match t.normalized() {
                Term::Zero => Term::Numeral(1u32.into()),
                Term::Numeral(n) => Term::Numeral(n + 1u32),
                other => Term::succ(other),
            },
            Term::Var(v) => Term::Var(v.clone()),
            Term::Const(i) => Term::Const(*i),
            Term::Add(a, b) => Term::add(a.normalized(), b.normalized()),
            Term::Mul(a, b) => Term::mul(a.normalized(), b.normalized()),
        }
    }

    /// Value of a closed, constant-free term made only of `0` and `S`.
    pub fn as_numeral(&self) -> Option<BigUint> {
        match self.normalized() {
            Term::Zero => Some(BigUint::zero()),
            Term::Numeral(n) => Some(n),
            _ => None,
        }
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Term::Zero | Term::Numeral(_) | Term::Const(_) => {}
            Term::Var(v) => {
                out.insert(v);
            }
            Term::Succ(t) => t.collect_vars(out),
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    fn collect_consts(&self, out: &mut BTreeSet<u32>) {
        match self {
            Term::Const(i) => {
                out.insert(*i);
            }
            Term::Zero | Term::Numeral(_) | Term::Var(_) => {}
            Term::Succ(t) => t.collect_consts(out),
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.collect_consts(out);
                b.collect_consts(out);
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sentence {
    Eq(Term, Term),
    Not(Box<Sentence>),
    And(Box<Sentence>, Box<Sentence>),
    Or(Box<Sentence>, Box<Sentence>),
    Implies(Box<Sentence>, Box<Sentence>),
    ForAll(String, Box<Sentence>),
    Exists(String, Box<Sentence>),
}

/// Name of the bound variable introduced when expanding an order relation
/// between `a` and `b`: the first of `z, z1, z2, ...` not occurring in either.
pub(crate) fn fresh_var(a: &Term, b: &Term) -> String {
    let mut used = a.vars();
    used.extend(b.vars());
    if !used.contains("z") {
        return "z".to_string();
    }
    (1..)
        .map(|i| format!("z{i}"))
        .find(|name| !used.contains(name.as_str()))
        .expect("unbounded supply of names")
}

impl Sentence {
    pub fn eq(a: Term, b: Term) -> Sentence {
        Sentence::Eq(a, b)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(s: Sentence) -> Sentence {
        Sentence::Not(Box::new(s))
    }

    pub fn and(a: Sentence, b: Sentence) -> Sentence {
        Sentence::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Sentence, b: Sentence) -> Sentence {
        Sentence::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Sentence, b: Sentence) -> Sentence {
        Sentence::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(v: &str, body: Sentence) -> Sentence {
        Sentence::ForAll(v.to_string(), Box::new(body))
    }

    pub fn exists(v: &str, body: Sentence) -> Sentence {
        Sentence::Exists(v.to_string(), Box::new(body))
    }

    /// `a <= b`, i.e. `exists z (a + z = b)`.
    pub fn le(a: Term, b: Term) -> Sentence {
        let z = fresh_var(&a, &b);
        let body = Sentence::Eq(Term::add(a, Term::Var(z.clone())), b);
        Sentence::Exists(z, Box::new(body))
    }

    /// `a < b`, i.e. `S(a) <= b`.
    pub fn lt(a: Term, b: Term) -> Sentence {
        let z = fresh_var(&a, &b);
        let body = Sentence::Eq(Term::add(Term::succ(a), Term::Var(z.clone())), b);
        Sentence::Exists(z, Box::new(body))
    }

    pub fn ge(a: Term, b: Term) -> Sentence {
        Sentence::le(b, a)
    }

    pub fn gt(a: Term, b: Term) -> Sentence {
        Sentence::lt(b, a)
    }

    pub fn normalized(&self) -> Sentence {
        match self {
            Sentence::Eq(a, b) => Sentence::Eq(a.normalized(), b.normalized()),
            Sentence::Not(s) => Sentence::not(s.normalized()),
            Sentence::And(a, b) => Sentence::and(a.normalized(), b.normalized()),
            Sentence::Or(a, b) => Sentence::or(a.normalized(), b.normalized()),
            Sentence::Implies(a, b) => Sentence::implies(a.normalized(), b.normalized()),
            Sentence::ForAll(v, s) => Sentence::ForAll(v.clone(), Box::new(s.normalized())),
            Sentence::Exists(v, s) => Sentence::Exists(v.clone(), Box::new(s.normalized())),
        }
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            Sentence::Eq(a, b) => {
                for v in a.vars().into_iter().chain(b.vars()) {
                    if !bound.contains(&v) {
                        out.insert(v.to_string());
                    }
                }
            }
            Sentence::Not(s) => s.collect_free(bound, out),
            Sentence::And(a, b) | Sentence::Or(a, b) | Sentence::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Sentence::ForAll(v, s) | Sentence::Exists(v, s) => {
                bound.push(v);
                s.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    /// No free variables (constants are allowed).
    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Indices of the constant symbols occurring in the sentence.
    pub fn constants(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |a, b| {
            a.collect_consts(&mut out);
            b.collect_consts(&mut out);
        });
        out
    }

    fn visit_atoms<F: FnMut(&Term, &Term)>(&self, f: &mut F) {
        match self {
            Sentence::Eq(a, b) => f(a, b),
            Sentence::Not(s) | Sentence::ForAll(_, s) | Sentence::Exists(_, s) => s.visit_atoms(f),
            Sentence::And(a, b) | Sentence::Or(a, b) | Sentence::Implies(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
        }
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_term(self, &RenderOptions::default()))
    }
}

impl FromStr for Sentence {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Interpretation of the constant symbols `c_1..c_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<BigUint>,
}

impl Assignment {
    /// `values[0]` interprets `c1`, `values[1]` interprets `c2`, and so on.
    pub fn new(values: Vec<BigUint>) -> Self {
        Assignment { values }
    }

    /// Builds an assignment from explicit `(index, value)` pairs; the indices
    /// must be exactly `1..=n` for some `n`.
    pub fn from_pairs(
        pairs: impl IntoIterator<Item = (u32, BigUint)>,
    ) -> Result<Self, FormulaError> {
        let mut map = BTreeMap::new();
        for (i, v) in pairs {
            if i == 0 {
                return Err(FormulaError::BadAssignment("constant index 0".into()));
            }
            if map.insert(i, v).is_some() {
                return Err(FormulaError::BadAssignment(format!("c{i} assigned twice")));
            }
        }
        for (expected, &i) in (1u32..).zip(map.keys()) {
            if i != expected {
                return Err(FormulaError::BadAssignment(format!(
                    "indices must form 1..n; c{expected} is missing"
                )));
            }
        }
        Ok(Assignment {
            values: map.into_values().collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: u32) -> Option<&BigUint> {
        (i as usize)
            .checked_sub(1)
            .and_then(|idx| self.values.get(idx))
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }
}

/// Outcome of evaluating a sentence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    True,
    False,
    /// Some quantifier was cut off at `bound` before the value was settled.
    UnknownUpTo(u64),
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn is_true(&self) -> bool {
        *self == Verdict::True
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::True => f.write_str("True"),
            Verdict::False => f.write_str("False"),
            Verdict::UnknownUpTo(b) => write!(f, "UnknownUpTo({b})"),
        }
    }
}

impl FromStr for Verdict {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "True" => Ok(Verdict::True),
            "False" => Ok(Verdict::False),
            _ => s
                .strip_prefix("UnknownUpTo(")
                .and_then(|rest| rest.strip_suffix(')'))
                .and_then(|b| b.parse().ok())
                .map(Verdict::UnknownUpTo)
                .ok_or_else(|| FormulaError::BadVerdict(s.to_string())),
        }
    }
}

impl serde::Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Verdict {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown identifier `{name}` at byte {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("constant c{0} has no value in the assignment")]
    MissingConstant(u32),
    #[error("invalid assignment: {0}")]
    BadAssignment(String),
    #[error("sentence does not match any schema")]
    Untagged,
    #[error("invalid verdict `{0}`")]
    BadVerdict(String),
}
