//! Independent certificate checking. Nothing recorded in the certificate is
//! trusted: the primorial, every witness value, primality and every schema
//! verdict are recomputed from `n`, `k` and the progression indices.

use std::collections::BTreeSet;
use std::fmt;

use super::certificate::{CertificateError, WitnessCertificate};
use super::progression_value;
use crate::formula::{eval_schema, Assignment, Verdict};
use crate::number_theory::{is_prime, primorial, PrimalityResult, Regime};
use crate::schemas::{omega_block, theta, FragmentSpec, SchemaTag};

/// Largest `k` accepted for verification.
pub const MAX_VERIFIABLE_K: u32 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    /// `ProbablePrime` if any witness is only probably prime.
    pub regime: Regime,
}

impl VerificationReport {
    pub fn accepted(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.failures().count();
        for c in self.failures() {
            writeln!(f, "FAIL {}: {}", c.name, c.detail)?;
        }
        writeln!(
            f,
            "{} ({} checks, {} failed, regime {})",
            if self.accepted() { "ACCEPTED" } else { "REJECTED" },
            self.checks.len(),
            failed,
            self.regime
        )
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

/// Parses and verifies a certificate document.
pub fn verify_json(text: &str) -> Result<VerificationReport, CertificateError> {
    verify_certificate(&WitnessCertificate::from_json(text)?)
}

/// Recomputes everything the certificate claims. Structural defects are
/// returned as `Err`; mathematical failures produce a rejecting report.
pub fn verify_certificate(cert: &WitnessCertificate) -> Result<VerificationReport, CertificateError> {
    cert.check_structure()?;
    if cert.k > MAX_VERIFIABLE_K {
        return Err(CertificateError::Structure(format!(
            "k = {} exceeds the verifiable limit {MAX_VERIFIABLE_K}",
            cert.k
        )));
    }
    let spec = FragmentSpec::new(cert.n, cert.k).expect("checked by check_structure");
    let pk = primorial(cert.k as u64).expect("k >= 1");
    let mut checks = Checks(Vec::new());
    let mut regime = Regime::Deterministic;

    checks.push(
        "primorial",
        cert.primorial == *pk.value(),
        format!("recorded {}, expected {}", cert.primorial, pk.value()),
    );

    for w in &cert.witnesses {
        let expected = (w.m >= 1).then(|| progression_value(pk.value(), w.m));
        checks.push(
            format!("progression[c{}]", w.i),
            expected.as_ref() == Some(&w.value),
            match &expected {
                Some(v) => format!("value {} vs m * P_k - 1 = {v} (m = {})", w.value, w.m),
                None => "progression index m must be at least 1".to_string(),
            },
        );
        let primality = is_prime(&w.value);
        let computed = primality.regime();
        checks.push(
            format!("primality[c{}]", w.i),
            primality.is_prime_like(),
            match &primality {
                PrimalityResult::Composite(wit) => format!("{} is composite ({wit:?})", w.value),
                other => format!("{} is {other:?}", w.value),
            },
        );
        if let Some(r) = computed {
            checks.push(
                format!("regime[c{}]", w.i),
                r == w.regime,
                format!("recorded {}, recomputed {r}", w.regime),
            );
            if r == Regime::ProbablePrime {
                regime = Regime::ProbablePrime;
            }
        }
    }

    let ascending = cert.witnesses.windows(2).all(|p| p[0].value < p[1].value);
    checks.push(
        "ascending",
        ascending,
        "witness values must be strictly increasing",
    );

    let assignment = Assignment::new(cert.witnesses.iter().map(|w| w.value.clone()).collect());
    let expected: Vec<SchemaTag> = theta(spec)
        .iter()
        .chain(omega_block(spec).iter())
        .map(|ts| *ts.tag())
        .collect();
    for tag in &expected {
        let verdict = eval_schema(&tag.instantiate(), &assignment).expect("all constants assigned");
        checks.push(
            tag.to_string(),
            verdict == Verdict::True,
            format!("{tag} evaluates to {verdict}"),
        );
    }

    // Every true omega_{i,p} forces the matching gamma_{i,p}.
    for tag in &expected {
        if let SchemaTag::Omega { i, p } = *tag {
            let omega = eval_schema(&tag.instantiate(), &assignment).expect("assigned");
            let gamma = eval_schema(&SchemaTag::Gamma { i, p }.instantiate(), &assignment)
                .expect("assigned");
            checks.push(
                format!("implication[omega:{i}:{p} -> gamma:{i}:{p}]"),
                omega != Verdict::True || gamma == Verdict::True,
                format!("omega {omega}, gamma {gamma}"),
            );
        }
    }

    let expected_set: BTreeSet<SchemaTag> = expected.iter().copied().collect();
    let mut recorded = BTreeSet::new();
    let mut coverage_problems = Vec::new();
    for e in &cert.verdicts {
        let tag = e.tag().expect("checked by check_structure");
        if !recorded.insert(tag) {
            coverage_problems.push(format!("{tag} recorded twice"));
        }
        if !expected_set.contains(&tag) {
            coverage_problems.push(format!("{tag} is not part of the fragment"));
        }
        if e.verdict != Verdict::True {
            coverage_problems.push(format!("{tag} recorded as {}", e.verdict));
        }
    }
    for missing in expected_set.difference(&recorded) {
        coverage_problems.push(format!("{missing} missing"));
    }
    checks.push(
        "recorded-verdicts",
        coverage_problems.is_empty(),
        if coverage_problems.is_empty() {
            format!("{} verdicts, all True", cert.verdicts.len())
        } else {
            coverage_problems.join("; ")
        },
    );

    Ok(VerificationReport {
        checks: checks.0,
        regime,
    })
}
