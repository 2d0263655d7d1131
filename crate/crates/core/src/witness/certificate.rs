//! Certificate data model and its JSON encoding.
//!
//! ```json
//! {
//!   "n": 2,
//!   "k": 3,
//!   "primorial": "30",
//!   "witnesses": [{"i": 1, "m": 1, "value": "29", "regime": "deterministic"}, ...],
//!   "verdicts": [{"schema": "alpha", "i": 1, "p": null, "verdict": "True"}, ...],
//!   "tool_version": "pawit 0.1.0"
//! }
//! ```
//!
//! Big naturals are decimal strings. Keys appear in exactly this order and
//! the document ends with a newline.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::Verdict;
use crate::number_theory::Regime;
use crate::schemas::{SchemaKind, SchemaTag};

mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(D::Error::custom(format!("`{text}` is not a decimal natural")));
        }
        text.parse().map_err(D::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Witness {
    /// Constant index: this witness interprets `c_i`.
    pub i: u32,
    /// Progression index: `value = m * P_k - 1`.
    pub m: u64,
    #[serde(with = "decimal")]
    pub value: BigUint,
    pub regime: Regime,
}

/// One recorded schema verdict. Fields are kept loose so that malformed
/// certificates can still be loaded and reported on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictEntry {
    pub schema: SchemaKind,
    pub i: Option<u32>,
    pub p: Option<u64>,
    pub verdict: Verdict,
}

impl VerdictEntry {
    pub fn new(tag: SchemaTag, verdict: Verdict) -> Self {
        VerdictEntry {
            schema: tag.kind(),
            i: tag.i(),
            p: tag.p(),
            verdict,
        }
    }

    pub fn tag(&self) -> Result<SchemaTag, crate::schemas::SchemaError> {
        SchemaTag::new(self.schema, self.i, self.p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessCertificate {
    pub n: u32,
    pub k: u32,
    #[serde(with = "decimal")]
    pub primorial: BigUint,
    pub witnesses: Vec<Witness>,
    pub verdicts: Vec<VerdictEntry>,
    pub tool_version: String,
}

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("malformed certificate JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed certificate: {0}")]
    Structure(String),
}

impl WitnessCertificate {
    /// Canonical encoding: pretty-printed, newline-terminated.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("certificate serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Shape checks that do not involve any arithmetic: parameters at least
    /// 1, one witness per constant with indices `1..=n` in order, every
    /// verdict entry names a valid schema instance.
    pub fn check_structure(&self) -> Result<(), CertificateError> {
        let fail = |msg: String| Err(CertificateError::Structure(msg));
        if self.n == 0 || self.k == 0 {
            return fail(format!("n and k must be at least 1 (n = {}, k = {})", self.n, self.k));
        }
        if self.witnesses.len() != self.n as usize {
            return fail(format!(
                "expected {} witnesses, found {}",
                self.n,
                self.witnesses.len()
            ));
        }
        for (expected, w) in (1u32..).zip(&self.witnesses) {
            if w.i != expected {
                return fail(format!("witness index gap: expected i = {expected}, found {}", w.i));
            }
        }
        for (pos, e) in self.verdicts.iter().enumerate() {
            if let Err(err) = e.tag() {
                return fail(format!("verdict entry {pos}: {err}"));
            }
        }
        Ok(())
    }
}
