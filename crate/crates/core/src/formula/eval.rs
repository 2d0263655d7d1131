//! Evaluation over the standard model.
//!
//! [`eval_bounded`] runs every quantifier over `0..=bound` and then over the
//! tail `[bound + 1, ∞)` as a single interval. Terms are evaluated in
//! interval arithmetic (every operation is monotone on ℕ), atoms are
//! `True`/`False` only when they hold or fail for every point of the current
//! box, and connectives follow strong Kleene logic. A quantifier is decided
//! only when the tail is decided too, so a truncated universal that merely
//! holds up to the bound comes out as `UnknownUpTo(bound)`.
//!
//! [`eval_schema`] decides tagged schema instances exactly through their
//! arithmetic characterisations.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{Assignment, FormulaError, Sentence, Term, Verdict};
use crate::number_theory::is_prime;
use crate::schemas::{recognize, SchemaTag, TaggedSentence};

/// Variable bindings for [`eval_term`]. Later bindings shadow earlier ones.
#[derive(Clone, Debug, Default)]
pub struct Env {
    bindings: Vec<(String, BigUint)>,
}

impl Env {
    pub fn new() -> Self {
        Env::default()
    }

    pub fn bind(mut self, name: &str, value: impl Into<BigUint>) -> Self {
        self.bindings.push((name.to_string(), value.into()));
        self
    }

    pub fn get(&self, name: &str) -> Option<&BigUint> {
        self.bindings
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
    }
}

/// Exact value of a term.
pub fn eval_term(t: &Term, a: &Assignment, env: &Env) -> Result<BigUint, FormulaError> {
    Ok(match t {
        Term::Zero => BigUint::zero(),
        Term::Numeral(n) => n.clone(),
        Term::Succ(inner) => eval_term(inner, a, env)? + 1u32,
        Term::Var(v) => env
            .get(v)
            .cloned()
            .ok_or_else(|| FormulaError::UnboundVariable(v.clone()))?,
        Term::Const(i) => a.get(*i).cloned().ok_or(FormulaError::MissingConstant(*i))?,
        Term::Add(x, y) => eval_term(x, a, env)? + eval_term(y, a, env)?,
        Term::Mul(x, y) => eval_term(x, a, env)? * eval_term(y, a, env)?,
    })
}

/// `[lo, hi]`, with `hi == None` meaning unbounded above.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Span {
    lo: BigUint,
    hi: Option<BigUint>,
}

impl Span {
    fn point(v: BigUint) -> Span {
        Span {
            hi: Some(v.clone()),
            lo: v,
        }
    }

    fn tail(from: BigUint) -> Span {
        Span { lo: from, hi: None }
    }

    fn single(&self) -> Option<&BigUint> {
        match &self.hi {
            Some(hi) if *hi == self.lo => Some(hi),
            _ => None,
        }
    }

    fn add(&self, o: &Span) -> Span {
        Span {
            lo: &self.lo + &o.lo,
            hi: match (&self.hi, &o.hi) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            },
        }
    }

    fn mul(&self, o: &Span) -> Span {
        let hi = match (&self.hi, &o.hi) {
            (Some(a), Some(b)) => Some(a * b),
            // 0 * anything stays 0
            (Some(a), None) if a.is_zero() => Some(BigUint::zero()),
            (None, Some(b)) if b.is_zero() => Some(BigUint::zero()),
            _ => None,
        };
        Span {
            lo: &self.lo * &o.lo,
            hi,
        }
    }

    fn succ(&self) -> Span {
        Span {
            lo: &self.lo + 1u32,
            hi: self.hi.as_ref().map(|h| h + 1u32),
        }
    }

    fn disjoint(&self, o: &Span) -> bool {
        let below = |a: &Span, b: &Span| matches!(&a.hi, Some(h) if *h < b.lo);
        below(self, o) || below(o, self)
    }
}

/// Kleene truth value: `None` is undetermined.
type Tri = Option<bool>;

struct Bounded<'a> {
    assignment: &'a Assignment,
    bound: u64,
    scope: Vec<(&'a str, Span)>,
}

impl<'a> Bounded<'a> {
    fn term(&self, t: &Term) -> Result<Span, FormulaError> {
        Ok(match t {
            Term::Zero => Span::point(BigUint::zero()),
            Term::Numeral(n) => Span::point(n.clone()),
            Term::Succ(inner) => self.term(inner)?.succ(),
            Term::Var(v) => self
                .scope
                .iter()
                .rev()
                .find(|(n, _)| n == v)
                .map(|(_, s)| s.clone())
                .ok_or_else(|| FormulaError::UnboundVariable(v.clone()))?,
            Term::Const(i) => Span::point(
                self.assignment
                    .get(*i)
                    .cloned()
                    .ok_or(FormulaError::MissingConstant(*i))?,
            ),
            Term::Add(x, y) => self.term(x)?.add(&self.term(y)?),
            Term::Mul(x, y) => self.term(x)?.mul(&self.term(y)?),
        })
    }

    fn sentence(&mut self, s: &'a Sentence) -> Result<Tri, FormulaError> {
        Ok(match s {
            Sentence::Eq(a, b) => {
                let (x, y) = (self.term(a)?, self.term(b)?);
                match (x.single(), y.single()) {
                    (Some(p), Some(q)) => Some(p == q),
                    _ if x.disjoint(&y) => Some(false),
                    _ => None,
                }
            }
            Sentence::Not(inner) => self.sentence(inner)?.map(|b| !b),
            Sentence::And(a, b) => {
                let l = self.sentence(a)?;
                if l == Some(false) {
                    return Ok(Some(false));
                }
                match (l, self.sentence(b)?) {
                    (_, Some(false)) => Some(false),
                    (Some(true), Some(true)) => Some(true),
                    _ => None,
                }
            }
            Sentence::Or(a, b) => {
                let l = self.sentence(a)?;
                if l == Some(true) {
                    return Ok(Some(true));
                }
                match (l, self.sentence(b)?) {
                    (_, Some(true)) => Some(true),
                    (Some(false), Some(false)) => Some(false),
                    _ => None,
                }
            }
            Sentence::Implies(a, b) => {
                let l = self.sentence(a)?;
                if l == Some(false) {
                    return Ok(Some(true));
                }
                match (l, self.sentence(b)?) {
                    (_, Some(true)) => Some(true),
                    (Some(true), Some(false)) => Some(false),
                    _ => None,
                }
            }
            Sentence::ForAll(v, body) => self.quantifier(v, body, false)?,
            Sentence::Exists(v, body) => self.quantifier(v, body, true)?,
        })
    }

    /// For `exists`, a `True` instance settles the result; for `forall`, a
    /// `False` one does. Otherwise the result is settled only if every
    /// instance, including the tail, is settled the other way.
    fn quantifier(&mut self, v: &'a str, body: &'a Sentence, exists: bool) -> Result<Tri, FormulaError> {
        let decisive = exists;
        let mut all_settled = true;
        let mut value = BigUint::zero();
        let limit = BigUint::from(self.bound);
        loop {
            let span = if value <= limit {
                Span::point(value.clone())
            } else {
                Span::tail(value.clone())
            };
            let is_tail = span.hi.is_none();
            self.scope.push((v, span));
            let r = self.sentence(body);
            self.scope.pop();
            match r? {
                Some(b) if b == decisive => return Ok(Some(decisive)),
                Some(_) => {}
                None => all_settled = false,
            }
            if is_tail {
                break;
            }
            value += BigUint::one();
        }
        Ok(all_settled.then_some(!decisive))
    }
}

/// Evaluates `s` with every quantifier truncated at `bound` (see the module
/// documentation for when the truncation still decides the sentence).
pub fn eval_bounded(s: &Sentence, a: &Assignment, bound: u64) -> Result<Verdict, FormulaError> {
    let mut ev = Bounded {
        assignment: a,
        bound,
        scope: Vec::new(),
    };
    Ok(match ev.sentence(s)? {
        Some(b) => Verdict::from_bool(b),
        None => Verdict::UnknownUpTo(bound),
    })
}

fn constant<'a>(a: &'a Assignment, i: u32) -> Result<&'a BigUint, FormulaError> {
    a.get(i).ok_or(FormulaError::MissingConstant(i))
}

/// Exact decision for a schema instance.
///
/// `beta` follows the prime sentence literally, which also holds for 0 and
/// 1. `sigma` is universal over all of ℕ; it is checked for every `z` up to
/// the sentence's verification bound, yielding `False` on a counterexample
/// and `UnknownUpTo(bound)` otherwise.
pub fn eval_schema(ts: &TaggedSentence, a: &Assignment) -> Result<Verdict, FormulaError> {
    Ok(match *ts.tag() {
        SchemaTag::Alpha { i: 1 } => Verdict::from_bool(*constant(a, 1)? >= BigUint::from(2u32)),
        SchemaTag::Alpha { i } => Verdict::from_bool(constant(a, i)? > constant(a, i - 1)?),
        SchemaTag::Beta { i } => {
            let c = constant(a, i)?;
            Verdict::from_bool(c <= &BigUint::one() || is_prime(c).is_prime_like())
        }
        SchemaTag::Gamma { i, p } => {
            let c = constant(a, i)?;
            Verdict::from_bool(!((c + 2u32) % p).is_zero())
        }
        SchemaTag::Omega { i, p } => {
            let c = constant(a, i)?;
            Verdict::from_bool(c % p == BigUint::from(p - 1))
        }
        SchemaTag::Sigma { p } => {
            let bound = ts.sigma_bound();
            let counterexample = (0..=bound).find(|z| z % p == p - 1 && (z + 2) % p != 1);
            match counterexample {
                Some(_) => Verdict::False,
                None => Verdict::UnknownUpTo(bound),
            }
        }
    })
}

/// Decides an untagged sentence by matching it back to a schema instance.
pub fn eval_exact(s: &Sentence, a: &Assignment) -> Result<Verdict, FormulaError> {
    let tagged = recognize(s).ok_or(FormulaError::Untagged)?;
    eval_schema(&tagged, a)
}
