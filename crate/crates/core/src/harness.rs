//! Finite satisfiability: every finite set of alpha/beta/gamma sentences lies
//! in some fragment `(n, k)`, and the witness model for that fragment
//! satisfies it.

use serde::Serialize;
use thiserror::Error;

use crate::formula::{eval_schema, parse, Assignment, FormulaError, Verdict};
use crate::number_theory::prime_index;
use crate::schemas::{recognize, FragmentSpec, SchemaTag, TagRecord};
use crate::witness::{find_witnesses, EngineError, SearchPolicy, WitnessCertificate};

/// Recorded in every demonstration: the Peano axioms themselves are not
/// checked; the witness structure is the standard model.
pub const PA_ASSUMPTION: &str =
    "Peano axioms are not checked: the structure is the standard model of arithmetic";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HarnessOptions {
    /// Accept omega tags in requests (they are outside the target theory).
    pub allow_omega: bool,
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("empty request")]
    Empty,
    #[error("{0} is not a member of the target theory")]
    NotInTheory(SchemaTag),
    #[error("malformed tag list: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid tag: {0}")]
    Tag(#[from] crate::schemas::SchemaError),
    #[error("sentence `{text}`: {source}")]
    Sentence { text: String, source: FormulaError },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Smallest fragment containing the requested sentences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FragmentCover {
    pub tags: Vec<SchemaTag>,
    pub n: u32,
    pub k: u32,
}

impl FragmentCover {
    pub fn spec(&self) -> FragmentSpec {
        FragmentSpec::new(self.n, self.k).expect("cover parameters are at least 1")
    }

    /// True when `tag` belongs to the fragment `(n, k)` (or its omega block).
    pub fn contains(tag: &SchemaTag, n: u32, k: u32) -> bool {
        let p_ok = |p: u64| prime_index(p).is_some_and(|idx| idx <= k as u64);
        match *tag {
            SchemaTag::Alpha { i } | SchemaTag::Beta { i } => i <= n,
            SchemaTag::Gamma { i, p } | SchemaTag::Omega { i, p } => i <= n && p_ok(p),
            SchemaTag::Sigma { .. } => false,
        }
    }
}

pub fn cover(tags: &[SchemaTag], opts: HarnessOptions) -> Result<FragmentCover, HarnessError> {
    if tags.is_empty() {
        return Err(HarnessError::Empty);
    }
    let mut n = 1;
    let mut k = 1;
    for tag in tags {
        let allowed = tag.in_theory() || (opts.allow_omega && matches!(tag, SchemaTag::Omega { .. }));
        if !allowed {
            return Err(HarnessError::NotInTheory(*tag));
        }
        n = n.max(tag.i().expect("alpha, beta, gamma and omega carry i"));
        if let Some(p) = tag.p() {
            let idx = prime_index(p).expect("tag primes are validated");
            k = k.max(idx as u32);
        }
    }
    Ok(FragmentCover {
        tags: tags.to_vec(),
        n,
        k,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Demonstration {
    pub cover: FragmentCover,
    pub certificate: WitnessCertificate,
    pub verdicts: Vec<(SchemaTag, Verdict)>,
    pub assumptions: Vec<String>,
}

impl Demonstration {
    pub fn all_true(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| *v == Verdict::True)
    }
}

/// Finds the witness model for the cover and evaluates exactly the
/// requested sentences in it.
pub fn demonstrate(
    tags: &[SchemaTag],
    opts: HarnessOptions,
    policy: &SearchPolicy,
) -> Result<Demonstration, HarnessError> {
    let cover = cover(tags, opts)?;
    let certificate = find_witnesses(cover.spec(), policy)?;
    let assignment = Assignment::new(
        certificate
            .witnesses
            .iter()
            .map(|w| w.value.clone())
            .collect(),
    );
    let verdicts = tags
        .iter()
        .map(|t| {
            let v = eval_schema(&t.instantiate(), &assignment).expect("cover assigns every constant");
            (*t, v)
        })
        .collect();
    Ok(Demonstration {
        cover,
        certificate,
        verdicts,
        assumptions: vec![PA_ASSUMPTION.to_string()],
    })
}

/// Parses a JSON array of `{"kind", "i", "p"}` records.
pub fn tags_from_json(text: &str) -> Result<Vec<SchemaTag>, HarnessError> {
    let records: Vec<TagRecord> = serde_json::from_str(text)?;
    Ok(records
        .into_iter()
        .map(SchemaTag::try_from)
        .collect::<Result<_, _>>()?)
}

/// Parses sentence text and matches it back to its schema tag.
pub fn tag_from_sentence(text: &str) -> Result<SchemaTag, HarnessError> {
    let sentence = parse(text).map_err(|source| HarnessError::Sentence {
        text: text.to_string(),
        source,
    })?;
    recognize(&sentence)
        .map(|ts| *ts.tag())
        .ok_or_else(|| HarnessError::Sentence {
            text: text.to_string(),
            source: FormulaError::Untagged,
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tags(list: &[&str]) -> Vec<SchemaTag> {
        list.iter().map(|t| t.parse().unwrap()).collect()
    }

    fn nk(c: &FragmentCover) -> (u32, u32) {
        (c.n, c.k)
    }

    #[test]
    fn cover_examples() {
        let o = HarnessOptions::default();
        assert_eq!(nk(&cover(&tags(&["gamma:3:5"]), o).unwrap()), (3, 3));
        assert_eq!(nk(&cover(&tags(&["alpha:1"]), o).unwrap()), (1, 1));
        assert_eq!(nk(&cover(&tags(&["beta:2", "gamma:1:11"]), o).unwrap()), (2, 5));
        assert!(matches!(cover(&[], o), Err(HarnessError::Empty)));
    }

    #[test]
    fn omega_is_configurable() {
        let t = tags(&["omega:1:3"]);
        assert!(matches!(
            cover(&t, HarnessOptions::default()),
            Err(HarnessError::NotInTheory(_))
        ));
        let c = cover(&t, HarnessOptions { allow_omega: true }).unwrap();
        assert_eq!(nk(&c), (1, 2));
        assert!(matches!(
            cover(&tags(&["sigma:3"]), HarnessOptions { allow_omega: true }),
            Err(HarnessError::NotInTheory(_))
        ));
    }

    #[test]
    fn demonstrations() {
        let policy = SearchPolicy::default();
        let o = HarnessOptions::default();
        let d = demonstrate(&tags(&["gamma:1:2", "gamma:1:3", "beta:1", "alpha:1"]), o, &policy)
            .unwrap();
        assert_eq!(nk(&d.cover), (1, 2));
        assert_eq!(d.certificate.witnesses[0].value, 5u32.into());
        assert!(d.all_true());
        assert_eq!(d.verdicts.len(), 4);
        assert_eq!(d.assumptions, vec![PA_ASSUMPTION.to_string()]);

        let d = demonstrate(&tags(&["alpha:1", "alpha:2", "beta:1", "beta:2"]), o, &policy).unwrap();
        assert_eq!(nk(&d.cover), (2, 1));
        let vals: Vec<_> = d.certificate.witnesses.iter().map(|w| w.value.clone()).collect();
        assert_eq!(vals, vec![3u32.into(), 5u32.into()]);
        assert!(d.all_true());
        assert!(matches!(demonstrate(&[], o, &policy), Err(HarnessError::Empty)));
    }

    #[test]
    fn minimality() {
        let o = HarnessOptions::default();
        for list in [&["gamma:3:5"][..], &["beta:2", "gamma:1:11"], &["alpha:4", "gamma:2:13"]] {
            let t = tags(list);
            let c = cover(&t, o).unwrap();
            assert!(t.iter().all(|tag| FragmentCover::contains(tag, c.n, c.k)));
            if c.n > 1 {
                assert!(t.iter().any(|tag| !FragmentCover::contains(tag, c.n - 1, c.k)));
            }
            if c.k > 1 {
                assert!(t.iter().any(|tag| !FragmentCover::contains(tag, c.n, c.k - 1)));
            }
        }
    }

    #[test]
    fn tag_inputs() {
        let t = tags_from_json(r#"[{"kind":"gamma","i":3,"p":5},{"kind":"alpha","i":1}]"#).unwrap();
        assert_eq!(t, tags(&["gamma:3:5", "alpha:1"]));
        assert!(matches!(
            tags_from_json(r#"[{"kind":"gamma","i":3,"p":6}]"#),
            Err(HarnessError::Tag(_))
        ));
        assert!(matches!(tags_from_json("[{"), Err(HarnessError::Json(_))));
        assert_eq!(
            tag_from_sentence("forall z ~(c2 + S(S(0)) = z * S^5(0))").unwrap(),
            SchemaTag::Gamma { i: 2, p: 5 }
        );
        assert!(tag_from_sentence("0 = 0").is_err());
    }
}
