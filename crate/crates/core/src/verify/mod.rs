//! Seeded verification suites and their reports.
//!
//! Every suite is a function from `(parameters, case index, rng)` to a case
//! outcome. Cases draw from their own stream of the seeded generator, so a
//! report depends only on the suite, the seed and the parameters.

mod suites;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cubes::Tier;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    pub seed: u64,
    pub cases: usize,
    pub max_rank: usize,
    pub max_n: usize,
    pub k_list: Vec<usize>,
}

impl Default for Params {
    fn default() -> Self {
        Params { seed: 0, cases: 20, max_rank: 2, max_n: 2, k_list: vec![2] }
    }
}

impl Params {
    fn validate(&self) -> Result<(), VerifyError> {
        if self.k_list.is_empty() || self.k_list.contains(&0) {
            return Err(VerifyError::InvalidParameter("k must be at least 1".into()));
        }
        if self.max_n > 3 {
            return Err(VerifyError::InvalidParameter(format!("max-n {} exceeds 3", self.max_n)));
        }
        if self.max_rank > 4 {
            return Err(VerifyError::InvalidParameter(format!("max-rank {} exceeds 4", self.max_rank)));
        }
        if self.cases == 0 {
            return Err(VerifyError::InvalidParameter("cases must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    PassTier1,
    PassTier2,
    Fail,
}

/// Both sides of a failed comparison, as signed canonical keys, and their
/// difference.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub message: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub lhs: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rhs: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diff: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub index: usize,
    pub label: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub params: Params,
    pub tier_strict: bool,
    pub passed: usize,
    pub passed_tier2: usize,
    pub failed: usize,
    pub cases: Vec<CaseReport>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// The result of one case before it is numbered.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub label: String,
    pub tier: Result<Tier, Failure>,
}

impl Outcome {
    pub fn pass(label: impl Into<String>, tier: Tier) -> Self {
        Outcome { label: label.into(), tier: Ok(tier) }
    }

    pub fn fail(label: impl Into<String>, failure: Failure) -> Self {
        Outcome { label: label.into(), tier: Err(failure) }
    }
}

type CaseFn = fn(&Params, usize, &mut ChaCha8Rng) -> Outcome;

pub struct Suite {
    pub name: &'static str,
    pub about: &'static str,
    /// Number of cases for the given parameters; enumerative suites ignore
    /// `cases`.
    pub count: fn(&Params) -> usize,
    pub run: CaseFn,
}

pub fn registry() -> &'static [Suite] {
    suites::REGISTRY
}

pub fn suite(name: &str) -> Result<&'static Suite, VerifyError> {
    registry().iter().find(|s| s.name == name).ok_or_else(|| VerifyError::UnknownSuite(name.to_string()))
}

fn case_rng(seed: u64, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case as u64);
    rng
}

/// Runs every case of a suite. With `tier_strict`, tier-2 passes count as
/// failures.
pub fn run_suite(name: &str, params: &Params, tier_strict: bool) -> Result<VerificationReport, VerifyError> {
    params.validate()?;
    let s = suite(name)?;
    let count = (s.count)(params);
    let cases: Vec<CaseReport> = (0..count)
        .into_par_iter()
        .map(|index| {
            let outcome = (s.run)(params, index, &mut case_rng(params.seed, index));
            let (status, failure) = match outcome.tier {
                Ok(Tier::Strict) => (Status::PassTier1, None),
                Ok(Tier::Canonical) if tier_strict => (
                    Status::Fail,
                    Some(Failure { message: "equal only at tier 2".into(), ..Failure::default() }),
                ),
                Ok(Tier::Canonical) => (Status::PassTier2, None),
                Err(f) => (Status::Fail, Some(f)),
            };
            CaseReport { index, label: outcome.label, status, failure }
        })
        .collect();
    let tally = |st: Status| cases.iter().filter(|c| c.status == st).count();
    Ok(VerificationReport {
        suite: name.to_string(),
        seed: params.seed,
        params: params.clone(),
        tier_strict,
        passed: tally(Status::PassTier1) + tally(Status::PassTier2),
        passed_tier2: tally(Status::PassTier2),
        failed: tally(Status::Fail),
        cases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_has_every_suite() {
        let names: Vec<&str> = registry().iter().map(|s| s.name).collect();
        assert_eq!(
            names,
            [
                "multiindex",
                "cubes-d2",
                "identities3",
                "normalized",
                "splitcubes",
                "koszul",
                "additivity",
                "face-lemmas",
                "phi-mu-chain",
                "psi-chain",
                "adams-example",
                "rank-identity",
                "lambda",
                "trans-faces",
                "trans2-chain",
                "full-adams"
            ]
        );
    }

    #[test]
    fn unknown_suites_and_bad_parameters_are_rejected() {
        assert_eq!(run_suite("unknown", &Params::default(), false), Err(VerifyError::UnknownSuite("unknown".into())));
        let bad = Params { k_list: vec![], ..Params::default() };
        assert!(matches!(run_suite("koszul", &bad, false), Err(VerifyError::InvalidParameter(_))));
    }

    #[test]
    fn reports_are_deterministic() {
        let p = Params { seed: 7, cases: 6, max_n: 3, ..Params::default() };
        let a = run_suite("cubes-d2", &p, false).unwrap();
        let b = run_suite("cubes-d2", &p, false).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.all_passed());
    }
}
