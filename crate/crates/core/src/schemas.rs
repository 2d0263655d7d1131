//! Generators for the sentence families and their finite fragments.
//!
//! * `alpha(1)`: `c1 >= S(S(0))`; `alpha(i)`: `c_i > c_{i-1}`
//! * `beta(i)`: `forall x forall y (x * y = c_i -> (x = c_i \/ y = c_i))`
//! * `gamma(i, p)`: `forall z ~(c_i + S(S(0)) = z * p)`
//! * `omega(i, p)`: `exists x c_i = x * p + (p - 1)`
//! * `sigma(p)`: `forall z ((exists x z = x * p + (p - 1)) -> (exists y z + S(S(0)) = y * p + S(0)))`
//!
//! Every generated sentence carries its [`SchemaTag`]; the tag is what lets
//! [`eval_schema`](crate::formula::eval_schema) decide it exactly.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{numeral, Sentence, Term};
use crate::number_theory::{first_primes, is_prime_u64};

/// Default number of initial values checked when evaluating `sigma`.
pub const DEFAULT_SIGMA_BOUND: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemaKind {
    Alpha,
    Beta,
    Gamma,
    Omega,
    Sigma,
}

impl SchemaKind {
    pub fn name(self) -> &'static str {
        match self {
            SchemaKind::Alpha => "alpha",
            SchemaKind::Beta => "beta",
            SchemaKind::Gamma => "gamma",
            SchemaKind::Omega => "omega",
            SchemaKind::Sigma => "sigma",
        }
    }
}

impl FromStr for SchemaKind {
    type Err = SchemaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "alpha" => SchemaKind::Alpha,
            "beta" => SchemaKind::Beta,
            "gamma" => SchemaKind::Gamma,
            "omega" => SchemaKind::Omega,
            "sigma" => SchemaKind::Sigma,
            _ => return Err(SchemaError::UnknownKind(s.to_string())),
        })
    }
}

/// Identity of a schema instance. Construct through [`SchemaTag::new`] (or
/// the generators) to get the `i >= 1` / `p` prime checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemaTag {
    Alpha { i: u32 },
    Beta { i: u32 },
    Gamma { i: u32, p: u64 },
    Omega { i: u32, p: u64 },
    Sigma { p: u64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemaError {
    #[error("constant index must be at least 1")]
    ZeroIndex,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("fragment parameters must be at least 1 (got n = {n}, k = {k})")]
    EmptyFragment { n: u32, k: u32 },
    #[error("unknown schema kind `{0}`")]
    UnknownKind(String),
    #[error("{kind} requires {field}")]
    MissingField { kind: &'static str, field: &'static str },
    #[error("{kind} does not take {field}")]
    UnexpectedField { kind: &'static str, field: &'static str },
    #[error("malformed schema tag `{0}`")]
    Malformed(String),
}

fn check_index(i: u32) -> Result<u32, SchemaError> {
    if i == 0 {
        Err(SchemaError::ZeroIndex)
    } else {
        Ok(i)
    }
}

fn check_prime(p: u64) -> Result<u64, SchemaError> {
    if is_prime_u64(p).is_prime_like() {
        Ok(p)
    } else {
        Err(SchemaError::NotPrime(p))
    }
}

impl SchemaTag {
    /// Validating constructor from loose fields (as found in JSON tag lists).
    pub fn new(kind: SchemaKind, i: Option<u32>, p: Option<u64>) -> Result<SchemaTag, SchemaError> {
        let name = kind.name();
        let need_i = || i.ok_or(SchemaError::MissingField { kind: name, field: "i" });
        let need_p = || p.ok_or(SchemaError::MissingField { kind: name, field: "p" });
        let no_p = || match p {
            Some(_) => Err(SchemaError::UnexpectedField { kind: name, field: "p" }),
            None => Ok(()),
        };
        Ok(match kind {
            SchemaKind::Alpha => {
                no_p()?;
                SchemaTag::Alpha { i: check_index(need_i()?)? }
            }
            SchemaKind::Beta => {
                no_p()?;
                SchemaTag::Beta { i: check_index(need_i()?)? }
            }
            SchemaKind::Gamma => SchemaTag::Gamma {
                i: check_index(need_i()?)?,
                p: check_prime(need_p()?)?,
            },
            SchemaKind::Omega => SchemaTag::Omega {
                i: check_index(need_i()?)?,
                p: check_prime(need_p()?)?,
            },
            SchemaKind::Sigma => {
                if i.is_some() {
                    return Err(SchemaError::UnexpectedField { kind: name, field: "i" });
                }
                SchemaTag::Sigma { p: check_prime(need_p()?)? }
            }
        })
    }

    pub fn kind(&self) -> SchemaKind {
        match self {
            SchemaTag::Alpha { .. } => SchemaKind::Alpha,
            SchemaTag::Beta { .. } => SchemaKind::Beta,
            SchemaTag::Gamma { .. } => SchemaKind::Gamma,
            SchemaTag::Omega { .. } => SchemaKind::Omega,
            SchemaTag::Sigma { .. } => SchemaKind::Sigma,
        }
    }

    pub fn i(&self) -> Option<u32> {
        match *self {
            SchemaTag::Alpha { i } | SchemaTag::Beta { i } => Some(i),
            SchemaTag::Gamma { i, .. } | SchemaTag::Omega { i, .. } => Some(i),
            SchemaTag::Sigma { .. } => None,
        }
    }

    pub fn p(&self) -> Option<u64> {
        match *self {
            SchemaTag::Gamma { p, .. } | SchemaTag::Omega { p, .. } | SchemaTag::Sigma { p } => {
                Some(p)
            }
            _ => None,
        }
    }

    /// Whether the tag names a member of the target theory (alpha, beta and
    /// gamma sentences).
    pub fn in_theory(&self) -> bool {
        matches!(
            self,
            SchemaTag::Alpha { .. } | SchemaTag::Beta { .. } | SchemaTag::Gamma { .. }
        )
    }

    /// Builds the tagged sentence this tag names.
    pub fn instantiate(&self) -> TaggedSentence {
        match *self {
            SchemaTag::Alpha { i } => build_alpha(i),
            SchemaTag::Beta { i } => build_beta(i),
            SchemaTag::Gamma { i, p } => build_gamma(i, p),
            SchemaTag::Omega { i, p } => build_omega(i, p),
            SchemaTag::Sigma { p } => build_sigma(p, DEFAULT_SIGMA_BOUND),
        }
    }
}

/// `alpha:1`, `beta:2`, `gamma:1:5`, `omega:3:7`, `sigma:3`.
impl fmt::Display for SchemaTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind().name())?;
        if let Some(i) = self.i() {
            write!(f, ":{i}")?;
        }
        if let Some(p) = self.p() {
            write!(f, ":{p}")?;
        }
        Ok(())
    }
}

impl FromStr for SchemaTag {
    type Err = SchemaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || SchemaError::Malformed(s.to_string());
        let mut parts = s.split(':');
        let kind: SchemaKind = parts.next().ok_or_else(malformed)?.parse()?;
        let nums = parts
            .map(|x| x.parse::<u64>().map_err(|_| malformed()))
            .collect::<Result<Vec<_>, _>>()?;
        let index = |v: u64| u32::try_from(v).map_err(|_| malformed());
        match (kind, nums.as_slice()) {
            (SchemaKind::Alpha | SchemaKind::Beta, &[i]) => SchemaTag::new(kind, Some(index(i)?), None),
            (SchemaKind::Gamma | SchemaKind::Omega, &[i, p]) => {
                SchemaTag::new(kind, Some(index(i)?), Some(p))
            }
            (SchemaKind::Sigma, &[p]) => SchemaTag::new(kind, None, Some(p)),
            _ => Err(malformed()),
        }
    }
}

/// JSON shape `{"kind": "gamma", "i": 1, "p": 5}`; absent fields are `null`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TagRecord {
    pub kind: SchemaKind,
    #[serde(default)]
    pub i: Option<u32>,
    #[serde(default)]
    pub p: Option<u64>,
}

impl From<SchemaTag> for TagRecord {
    fn from(t: SchemaTag) -> Self {
        TagRecord {
            kind: t.kind(),
            i: t.i(),
            p: t.p(),
        }
    }
}

impl TryFrom<TagRecord> for SchemaTag {
    type Error = SchemaError;

    fn try_from(r: TagRecord) -> Result<Self, Self::Error> {
        SchemaTag::new(r.kind, r.i, r.p)
    }
}

impl Serialize for SchemaTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TagRecord::from(*self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SchemaTag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        SchemaTag::try_from(TagRecord::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// A sentence together with the schema instance it was generated from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaggedSentence {
    tag: SchemaTag,
    sentence: Sentence,
    sigma_bound: u64,
}

impl TaggedSentence {
    pub fn tag(&self) -> &SchemaTag {
        &self.tag
    }

    pub fn sentence(&self) -> &Sentence {
        &self.sentence
    }

    /// Drops the tag, leaving a sentence that only bounded evaluation can
    /// handle.
    pub fn into_sentence(self) -> Sentence {
        self.sentence
    }

    /// Verification bound used for `sigma`; unused by other kinds.
    pub fn sigma_bound(&self) -> u64 {
        self.sigma_bound
    }
}

impl fmt::Display for TaggedSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.sentence.fmt(f)
    }
}

fn tagged(tag: SchemaTag, sentence: Sentence) -> TaggedSentence {
    TaggedSentence {
        tag,
        sentence,
        sigma_bound: DEFAULT_SIGMA_BOUND,
    }
}

fn build_alpha(i: u32) -> TaggedSentence {
    let sentence = if i == 1 {
        Sentence::ge(Term::Const(1), numeral(2u32))
    } else {
        Sentence::gt(Term::Const(i), Term::Const(i - 1))
    };
    tagged(SchemaTag::Alpha { i }, sentence)
}

fn build_beta(i: u32) -> TaggedSentence {
    let c = || Term::Const(i);
    let (x, y) = (|| Term::var("x"), || Term::var("y"));
    let body = Sentence::implies(
        Sentence::eq(Term::mul(x(), y()), c()),
        Sentence::or(Sentence::eq(x(), c()), Sentence::eq(y(), c())),
    );
    tagged(
        SchemaTag::Beta { i },
        Sentence::forall("x", Sentence::forall("y", body)),
    )
}

fn build_gamma(i: u32, p: u64) -> TaggedSentence {
    let lhs = Term::add(Term::Const(i), numeral(2u32));
    let rhs = Term::mul(Term::var("z"), numeral(p));
    tagged(
        SchemaTag::Gamma { i, p },
        Sentence::forall("z", Sentence::not(Sentence::eq(lhs, rhs))),
    )
}

/// `subject = var * p + (p - 1)`
fn residue_minus_one(subject: Term, var: &str, p: u64) -> Sentence {
    Sentence::eq(
        subject,
        Term::add(Term::mul(Term::var(var), numeral(p)), numeral(p - 1)),
    )
}

fn build_omega(i: u32, p: u64) -> TaggedSentence {
    tagged(
        SchemaTag::Omega { i, p },
        Sentence::exists("x", residue_minus_one(Term::Const(i), "x", p)),
    )
}

fn build_sigma(p: u64, bound: u64) -> TaggedSentence {
    let antecedent = Sentence::exists("x", residue_minus_one(Term::var("z"), "x", p));
    let consequent = Sentence::exists(
        "y",
        Sentence::eq(
            Term::add(Term::var("z"), numeral(2u32)),
            Term::add(Term::mul(Term::var("y"), numeral(p)), numeral(1u32)),
        ),
    );
    TaggedSentence {
        tag: SchemaTag::Sigma { p },
        sentence: Sentence::forall("z", Sentence::implies(antecedent, consequent)),
        sigma_bound: bound,
    }
}

pub fn alpha(i: u32) -> Result<TaggedSentence, SchemaError> {
    Ok(build_alpha(check_index(i)?))
}

pub fn beta(i: u32) -> Result<TaggedSentence, SchemaError> {
    Ok(build_beta(check_index(i)?))
}

pub fn gamma(i: u32, p: u64) -> Result<TaggedSentence, SchemaError> {
    Ok(build_gamma(check_index(i)?, check_prime(p)?))
}

pub fn omega(i: u32, p: u64) -> Result<TaggedSentence, SchemaError> {
    Ok(build_omega(check_index(i)?, check_prime(p)?))
}

/// `sigma(p)` verified up to [`DEFAULT_SIGMA_BOUND`].
pub fn sigma(p: u64) -> Result<TaggedSentence, SchemaError> {
    sigma_with_bound(p, DEFAULT_SIGMA_BOUND)
}

pub fn sigma_with_bound(p: u64, bound: u64) -> Result<TaggedSentence, SchemaError> {
    Ok(build_sigma(check_prime(p)?, bound))
}

/// Parameters `(n, k)` of a finite fragment: constants `c_1..c_n`, primes
/// `p_1..p_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FragmentSpec {
    n: u32,
    k: u32,
}

impl FragmentSpec {
    pub fn new(n: u32, k: u32) -> Result<Self, SchemaError> {
        if n == 0 || k == 0 {
            return Err(SchemaError::EmptyFragment { n, k });
        }
        Ok(FragmentSpec { n, k })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    fn primes(&self) -> Vec<u64> {
        first_primes(self.k as u64).expect("k >= 1")
    }
}

/// `{alpha_i, beta_i, gamma_{i,p} : i <= n, p <= p_k}`, ordered by `i`, then
/// alpha, beta, and the gammas by ascending `p`. Size `n * (k + 2)`.
pub fn theta(spec: FragmentSpec) -> Vec<TaggedSentence> {
    let primes = spec.primes();
    let mut out = Vec::with_capacity(spec.n as usize * (primes.len() + 2));
    for i in 1..=spec.n {
        out.push(build_alpha(i));
        out.push(build_beta(i));
        out.extend(primes.iter().map(|&p| build_gamma(i, p)));
    }
    out
}

/// `{omega_{i,p} : i <= n, p <= p_k}`, size `n * k`.
pub fn omega_block(spec: FragmentSpec) -> Vec<TaggedSentence> {
    let primes = spec.primes();
    (1..=spec.n)
        .flat_map(|i| primes.iter().map(move |&p| build_omega(i, p)))
        .collect()
}

fn first_const(s: &Sentence) -> Option<u32> {
    s.constants().into_iter().max()
}

fn numerals_in(s: &Sentence) -> Vec<u64> {
    fn walk_term(t: &Term, out: &mut Vec<u64>) {
        match t {
            Term::Numeral(n) => out.extend(num_traits::ToPrimitive::to_u64(n)),
            Term::Succ(x) => walk_term(x, out),
            Term::Add(a, b) | Term::Mul(a, b) => {
                walk_term(a, out);
                walk_term(b, out);
            }
            _ => {}
        }
    }
    fn walk(s: &Sentence, out: &mut Vec<u64>) {
        match s {
            Sentence::Eq(a, b) => {
                walk_term(a, out);
                walk_term(b, out);
            }
            Sentence::Not(x) | Sentence::ForAll(_, x) | Sentence::Exists(_, x) => walk(x, out),
            Sentence::And(a, b) | Sentence::Or(a, b) | Sentence::Implies(a, b) => {
                walk(a, out);
                walk(b, out);
            }
        }
    }
    let mut out = Vec::new();
    walk(&s.normalized(), &mut out);
    out
}

/// Matches a sentence back to the schema instance it is (structurally, up
/// to numeral normalisation) equal to.
pub fn recognize(s: &Sentence) -> Option<TaggedSentence> {
    let target = s.normalized();
    let mut candidates: Vec<SchemaTag> = Vec::new();
    let nums = numerals_in(s);
    match first_const(s) {
        Some(i) => {
            candidates.push(SchemaTag::Alpha { i });
            candidates.push(SchemaTag::Beta { i });
            for &p in &nums {
                if check_prime(p).is_ok() {
                    candidates.push(SchemaTag::Gamma { i, p });
                    candidates.push(SchemaTag::Omega { i, p });
                }
            }
        }
        None => {
            for &p in &nums {
                if check_prime(p).is_ok() {
                    candidates.push(SchemaTag::Sigma { p });
                }
            }
        }
    }
    candidates
        .into_iter()
        .map(|t| t.instantiate())
        .find(|ts| ts.sentence.normalized() == target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, render, render_with, RenderOptions};

    #[test]
    fn alpha_text() {
        assert_eq!(render(alpha(1).unwrap().sentence()), "c1 >= S(S(0))");
        assert_eq!(render(alpha(2).unwrap().sentence()), "c2 > c1");
        assert_eq!(render(alpha(5).unwrap().sentence()), "c5 > c4");
        assert_eq!(alpha(0), Err(SchemaError::ZeroIndex));
    }

    #[test]
    fn beta_text() {
        let b = beta(1).unwrap();
        assert_eq!(
            render(b.sentence()),
            "forall x forall y (x * y = c1 -> (x = c1 \\/ y = c1))"
        );
        assert_eq!(
            render(beta(3).unwrap().sentence()),
            "forall x forall y (x * y = c3 -> (x = c3 \\/ y = c3))"
        );
        assert_eq!(parse(&render(b.sentence())).unwrap(), *b.sentence());
        assert_eq!(beta(0), Err(SchemaError::ZeroIndex));
    }

    #[test]
    fn gamma_text() {
        assert_eq!(
            render(gamma(1, 2).unwrap().sentence()),
            "forall z ~(c1 + S(S(0)) = z * S(S(0)))"
        );
        assert_eq!(
            render(gamma(2, 5).unwrap().sentence()),
            "forall z ~(c2 + S(S(0)) = z * S(S(S(S(S(0))))))"
        );
        // the S^n spelling parses to the same sentence
        assert_eq!(
            parse("forall z ~(c1 + S(S(0)) = z * S^5(0))").unwrap().normalized(),
            gamma(1, 5).unwrap().sentence().normalized()
        );
        assert_eq!(gamma(1, 4), Err(SchemaError::NotPrime(4)));
    }

    #[test]
    fn omega_text() {
        assert_eq!(
            render(omega(1, 2).unwrap().sentence()),
            "exists x c1 = x * S(S(0)) + S(0)"
        );
        assert_eq!(
            parse("exists x c1 = x * S^3(0) + S^2(0)").unwrap().normalized(),
            omega(1, 3).unwrap().sentence().normalized()
        );
        let tight = RenderOptions { numeral_cap: 1 };
        assert_eq!(
            render_with(omega(1, 3).unwrap().sentence(), &tight),
            "exists x c1 = x * S^3(0) + S^2(0)"
        );
        assert!(render(omega(1, 7).unwrap().sentence())
            .ends_with("+ S(S(S(S(S(S(0))))))"));
        assert_eq!(omega(1, 9), Err(SchemaError::NotPrime(9)));
    }

    #[test]
    fn sigma_text() {
        let s = sigma(2).unwrap();
        assert!(s.sentence().is_closed());
        assert!(s.sentence().constants().is_empty());
        assert_eq!(
            render(s.sentence()),
            "forall z ((exists x z = x * S(S(0)) + S(0)) -> (exists y z + S(S(0)) = y * S(S(0)) + S(0)))"
        );
        assert_eq!(sigma(5).unwrap().tag(), &SchemaTag::Sigma { p: 5 });
        assert_eq!(sigma(1), Err(SchemaError::NotPrime(1)));
        assert_eq!(sigma_with_bound(3, 77).unwrap().sigma_bound(), 77);
    }

    #[test]
    fn fragment_sizes() {
        let t = theta(FragmentSpec::new(1, 1).unwrap());
        let tags: Vec<_> = t.iter().map(|s| *s.tag()).collect();
        assert_eq!(
            tags,
            vec![
                SchemaTag::Alpha { i: 1 },
                SchemaTag::Beta { i: 1 },
                SchemaTag::Gamma { i: 1, p: 2 }
            ]
        );
        assert_eq!(theta(FragmentSpec::new(2, 3).unwrap()).len(), 10);
        assert!(FragmentSpec::new(1, 0).is_err());
        assert!(FragmentSpec::new(0, 1).is_err());

        let w: Vec<_> = omega_block(FragmentSpec::new(1, 2).unwrap())
            .iter()
            .map(|s| *s.tag())
            .collect();
        assert_eq!(w, vec![SchemaTag::Omega { i: 1, p: 2 }, SchemaTag::Omega { i: 1, p: 3 }]);
        let w: Vec<_> = omega_block(FragmentSpec::new(2, 1).unwrap())
            .iter()
            .map(|s| *s.tag())
            .collect();
        assert_eq!(w, vec![SchemaTag::Omega { i: 1, p: 2 }, SchemaTag::Omega { i: 2, p: 2 }]);
        assert_eq!(omega_block(FragmentSpec::new(3, 3).unwrap()).len(), 9);
    }

    #[test]
    fn tag_strings_and_records() {
        for text in ["alpha:1", "beta:2", "gamma:1:5", "omega:3:7", "sigma:3"] {
            let tag: SchemaTag = text.parse().unwrap();
            assert_eq!(tag.to_string(), text);
        }
        assert_eq!("gamma:1:4".parse::<SchemaTag>(), Err(SchemaError::NotPrime(4)));
        assert!("gamma:1".parse::<SchemaTag>().is_err());
        assert!("delta:1".parse::<SchemaTag>().is_err());
        assert!("alpha:0".parse::<SchemaTag>().is_err());

        let json = r#"{"kind":"gamma","i":1,"p":11}"#;
        let tag: SchemaTag = serde_json::from_str(json).unwrap();
        assert_eq!(tag, SchemaTag::Gamma { i: 1, p: 11 });
        assert_eq!(
            serde_json::to_string(&SchemaTag::Alpha { i: 2 }).unwrap(),
            r#"{"kind":"alpha","i":2,"p":null}"#
        );
        assert!(serde_json::from_str::<SchemaTag>(r#"{"kind":"alpha","i":1,"p":3}"#).is_err());
        assert!(serde_json::from_str::<SchemaTag>(r#"{"kind":"gamma","i":1}"#).is_err());
    }

    #[test]
    fn recognition() {
        for ts in theta(FragmentSpec::new(3, 4).unwrap())
            .into_iter()
            .chain(omega_block(FragmentSpec::new(3, 4).unwrap()))
            .chain([sigma(2).unwrap(), sigma(7).unwrap()])
        {
            let reparsed = parse(&render(ts.sentence())).unwrap();
            assert_eq!(recognize(&reparsed).map(|r| *r.tag()), Some(*ts.tag()));
        }
        assert!(recognize(&parse("c1 = c1").unwrap()).is_none());
    }
}
