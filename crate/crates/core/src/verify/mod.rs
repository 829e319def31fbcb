//! Property suites run over enumerated and generated corpora of valid prefixes.

mod checks;
mod enumerate;
mod lemmas;
mod random;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::engine::CentralizerSeq;
use crate::field::Prime;
use crate::sequences::to_compact;

pub use checks::{
    suite_basis_covariance, suite_classification_round_trip, suite_generalized_jacobi,
    suite_inflation_identity, suite_lucas, suite_specialization,
};
pub use enumerate::{
    enumerate, node_budget_from_env, Enumeration, EnumerationConfig, EnumerationSummary,
    PrefixNode, WeightCount, DEFAULT_NODE_BUDGET, NODE_BUDGET_ENV,
};
pub use lemmas::{
    afs_corpus,
    suite_lengths, suite_many_centralizers_short_long, suite_odd_shorts, suite_parameter,
    suite_pattern_for_afs, suite_s_power, suite_shorts_after_intermediate, suite_shorts_after_long,
    suite_shorts_counts, suite_third_centralizer,
};
pub use random::{random_basis_change, random_tower, random_valid_prefix};

/// A set of engine-valid prefixes together with how it was produced.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub p: Prime,
    pub description: String,
    pub max_weight: Option<u32>,
    pub seed: Option<u64>,
    /// False when the producer stopped early (node budget).
    pub complete: bool,
    pub sequences: Vec<CentralizerSeq>,
}

impl Corpus {
    /// Surviving prefixes of an enumeration.
    pub fn from_enumeration(e: &Enumeration) -> Corpus {
        Corpus {
            p: e.config.p,
            description: format!(
                "normalized valid prefixes to weight {} extending to weight {}",
                e.config.max_weight,
                e.config.horizon_weight()
            ),
            max_weight: Some(e.config.max_weight),
            seed: None,
            complete: e.complete,
            sequences: e.survivors(),
        }
    }

    /// Every recorded prefix of an enumeration, dead ends included.
    pub fn all_from_enumeration(e: &Enumeration) -> Corpus {
        Corpus {
            description: format!(
                "all normalized valid prefixes to weight {}",
                e.config.max_weight
            ),
            sequences: e.all_prefixes(),
            ..Corpus::from_enumeration(e)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Finding {
    /// The offending sequence in compact text form.
    pub sequence: String,
    /// Which check fired.
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteParams {
    pub p: Prime,
    pub max_weight: Option<u32>,
    pub corpus: String,
    pub seed: Option<u64>,
    pub corpus_complete: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub params: SuiteParams,
    /// Inputs examined.
    pub instances: usize,
    /// Inputs meeting the hypotheses of the statement under test.
    pub applicable: usize,
    pub failures: Vec<Finding>,
    /// Patterns close to the hypotheses but outside them, listed for review.
    pub near_misses: Vec<Finding>,
    /// Values seen while checking, keyed by what they measure.
    pub observed: BTreeMap<String, BTreeSet<u64>>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// One summary line.
    pub fn line(&self) -> String {
        format!(
            "{} {}: {} instances, {} applicable, {} failures",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.instances,
            self.applicable,
            self.failures.len()
        )
    }
}

/// What checking a single input produced.
#[derive(Default)]
pub(crate) struct Outcome {
    pub applicable: bool,
    pub failures: Vec<Finding>,
    pub near_misses: Vec<Finding>,
    pub observed: Vec<(&'static str, u64)>,
}

impl Outcome {
    pub fn fail(&mut self, seq: &CentralizerSeq, check: &str, detail: impl Into<String>) {
        self.failures.push(Finding {
            sequence: to_compact(seq),
            check: check.into(),
            detail: detail.into(),
        });
    }

    pub fn near_miss(&mut self, seq: &CentralizerSeq, check: &str, detail: impl Into<String>) {
        self.near_misses.push(Finding {
            sequence: to_compact(seq),
            check: check.into(),
            detail: detail.into(),
        });
    }

    pub fn observe(&mut self, key: &'static str, value: u64) {
        self.observed.push((key, value));
    }
}

pub(crate) fn params_for(corpus: &Corpus) -> SuiteParams {
    SuiteParams {
        p: corpus.p,
        max_weight: corpus.max_weight,
        corpus: corpus.description.clone(),
        seed: corpus.seed,
        corpus_complete: corpus.complete,
    }
}

/// Runs `check` on every item in parallel and merges the outcomes in a
/// deterministic order.
pub(crate) fn run_suite<T, F>(name: &str, params: SuiteParams, items: &[T], check: F) -> SuiteReport
where
    T: Sync,
    F: Fn(&T) -> Outcome + Sync,
{
    let outcomes: Vec<Outcome> = items.par_iter().map(&check).collect();
    let mut report = SuiteReport {
        name: name.into(),
        params,
        instances: items.len(),
        applicable: 0,
        failures: Vec::new(),
        near_misses: Vec::new(),
        observed: BTreeMap::new(),
    };
    for o in outcomes {
        report.applicable += o.applicable as usize;
        report.failures.extend(o.failures);
        report.near_misses.extend(o.near_misses);
        for (k, v) in o.observed {
            report.observed.entry(k.to_string()).or_default().insert(v);
        }
    }
    report.failures.sort();
    report.failures.dedup();
    report.near_misses.sort();
    report.near_misses.dedup();
    report
}

pub(crate) fn check_corpus<F>(name: &str, corpus: &Corpus, check: F) -> SuiteReport
where
    F: Fn(&CentralizerSeq) -> Outcome + Sync,
{
    run_suite(name, params_for(corpus), &corpus.sequences, check)
}

/// Names accepted by [`SuiteRunner::run`].
pub const SUITE_NAMES: &[&str] = &[
    "parameter",
    "lengths",
    "odd_shorts",
    "shorts_counts",
    "third_centralizer",
    "s_power",
    "many_centralizers_short_long",
    "shorts_after_intermediate",
    "shorts_after_long",
    "pattern_for_afs",
    "specialization",
    "inflation_identity",
    "basis_covariance",
    "generalized_jacobi",
    "classification_round_trip",
    "lucas",
];

/// Settings shared by the named suites.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub p: Prime,
    pub max_weight: u32,
    pub horizon: u32,
    pub node_budget: u64,
    pub seed: u64,
}

impl VerifyConfig {
    pub fn new(p: Prime, max_weight: u32) -> Self {
        VerifyConfig {
            p,
            max_weight,
            horizon: max_weight,
            node_budget: DEFAULT_NODE_BUDGET,
            seed: 0,
        }
    }

    pub fn enumeration(&self) -> EnumerationConfig {
        EnumerationConfig {
            p: self.p,
            max_weight: self.max_weight,
            horizon: self.horizon,
            node_budget: self.node_budget,
        }
    }
}

/// Lazily built inputs shared between named suites.
pub struct SuiteRunner {
    config: VerifyConfig,
    enumeration: Option<Enumeration>,
}

impl SuiteRunner {
    pub fn new(config: VerifyConfig) -> Self {
        SuiteRunner { config, enumeration: None }
    }

    fn enumeration(&mut self) -> Result<&Enumeration, crate::Error> {
        if self.enumeration.is_none() {
            self.enumeration = Some(enumerate(self.config.enumeration())?);
        }
        Ok(self.enumeration.as_ref().expect("just built"))
    }

    pub fn run(&mut self, name: &str) -> Result<SuiteReport, crate::Error> {
        const ENUMERATED: &[&str] = &[
            "parameter",
            "lengths",
            "odd_shorts",
            "shorts_counts",
            "third_centralizer",
            "many_centralizers_short_long",
            "shorts_after_intermediate",
            "shorts_after_long",
            "pattern_for_afs",
            "s_power",
            "specialization",
        ];
        if ENUMERATED.contains(&name) {
            self.enumeration()?;
        }
        let (p, seed) = (self.config.p, self.config.seed);
        let e = self.enumeration.as_ref();
        let corpus = || Corpus::from_enumeration(e.expect("enumeration built"));
        Ok(match name {
            "parameter" => suite_parameter(&corpus()),
            "lengths" => suite_lengths(&corpus()),
            "odd_shorts" => suite_odd_shorts(&corpus()),
            "shorts_counts" => suite_shorts_counts(&corpus()),
            "third_centralizer" => suite_third_centralizer(&corpus()),
            "many_centralizers_short_long" => suite_many_centralizers_short_long(&corpus()),
            "shorts_after_intermediate" => suite_shorts_after_intermediate(&corpus()),
            "shorts_after_long" => suite_shorts_after_long(&corpus()),
            "pattern_for_afs" => suite_pattern_for_afs(&corpus()),
            "s_power" => {
                let (mut c, rejected) = lemmas::afs_corpus(p, p.power(3), 300);
                c.sequences.extend(corpus().sequences);
                c.description.push_str(", plus the enumerated prefixes");
                let mut report = suite_s_power(&c);
                for s in rejected {
                    report.failures.push(Finding {
                        sequence: to_compact(&s),
                        check: "engine".into(),
                        detail: "AFS corpus sequence rejected by the engine".into(),
                    });
                }
                report
            }
            "specialization" => {
                suite_specialization(&Corpus::all_from_enumeration(e.expect("enumeration built")))
            }
            "inflation_identity" => suite_inflation_identity(p, 100, 60, seed),
            "basis_covariance" => suite_basis_covariance(p, 50, 50, 40, seed),
            "generalized_jacobi" => suite_generalized_jacobi(p, 120, 200, 40, seed)?,
            "classification_round_trip" => suite_classification_round_trip(p, 20, 3, seed)?,
            "lucas" => suite_lucas(p, 3000),
            other => {
                return Err(crate::Error::InvalidArgument(format!(
                    "unknown suite {other:?}; known: {}",
                    SUITE_NAMES.join(", ")
                )))
            }
        })
    }

    pub fn enumeration_summary(&mut self) -> Result<EnumerationSummary, crate::Error> {
        Ok(self.enumeration()?.summary())
    }
}
