//! Finite-satisfiability evidence for a theory of "twin-rough" primes.
//!
//! The target theory, over the language of arithmetic enriched with
//! constants `c1, c2, ...`, says that the constants form an ascending chain
//! (`alpha`), are prime (`beta`), and that `c_i + 2` is not a multiple of any
//! prime `p` (`gamma`). Every finite fragment `(n, k)` of it is satisfied in
//! the standard model by the first `n` primes of the progression
//! `m * (p_1 * ... * p_k) - 1`. This crate generates the sentences, finds
//! those primes, evaluates the sentences and emits checkable certificates.
//!
//! Modules:
//!
//! * [`formula`]: syntax tree, parser, printer and evaluators
//! * [`schemas`]: the sentence families and finite fragments
//! * [`number_theory`]: sieve, primality, CRT, primorials
//! * [`witness`]: witness search and certificates
//! * [`harness`]: covering fragments for arbitrary finite requests
//! * [`stats`]: prime counts in the relevant residue classes

pub mod formula;
pub mod harness;
pub mod number_theory;
pub mod schemas;
pub mod stats;
pub mod witness;

pub use formula::{
    eval_bounded, eval_schema, eval_term, parse, render, Assignment, FormulaError, Sentence, Term,
    Verdict,
};
pub use number_theory::{crt_solve, is_prime, primorial, ModularSystem, PrimalityResult, Regime};
pub use schemas::{FragmentSpec, SchemaKind, SchemaTag, TaggedSentence};
pub use witness::{
    find_witnesses, verify_certificate, SearchPolicy, VerificationReport, WitnessCertificate,
};
