//! Exhaustive enumeration of normalized valid prefixes.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::engine::{AlgebraTable, CentralizerSeq};
use crate::error::Error;
use crate::field::{Prime, ProjPoint};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;
pub const NODE_BUDGET_ENV: &str = "MAXCLASS_NODE_BUDGET";

/// The node budget, read from `MAXCLASS_NODE_BUDGET` when set.
pub fn node_budget_from_env() -> Result<u64, Error> {
    match std::env::var(NODE_BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("{NODE_BUDGET_ENV}={v:?} is not a count"))),
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationConfig {
    pub p: Prime,
    /// Prefixes `C_2 … C_w` are recorded for `w ≤ max_weight`.
    pub max_weight: u32,
    /// A recorded prefix survives when it has a valid extension through
    /// weight `max_weight + horizon`.
    pub horizon: u32,
    /// Maximum number of single-step extension attempts.
    pub node_budget: u64,
}

impl EnumerationConfig {
    /// Horizon equal to `max_weight`, so survivors extend to twice the weight.
    pub fn new(p: Prime, max_weight: u32) -> Self {
        EnumerationConfig {
            p,
            max_weight,
            horizon: max_weight,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }

    pub fn horizon_weight(&self) -> u32 {
        self.max_weight + self.horizon
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PrefixNode {
    pub parent: Option<u32>,
    pub point: ProjPoint,
    /// Last weight covered.
    pub weight: u32,
    /// Largest last weight of a valid extension seen, capped at the horizon.
    pub reach: u32,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WeightCount {
    pub valid: u64,
    pub surviving: u64,
}

/// The tree of normalized valid prefixes up to `max_weight`.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub config: EnumerationConfig,
    pub nodes: Vec<PrefixNode>,
    pub extensions_tried: u64,
    /// False when the node budget ran out; the tree is then partial.
    pub complete: bool,
}

struct Walker<'a> {
    config: &'a EnumerationConfig,
    nodes: Vec<PrefixNode>,
    tried: u64,
    aborted: bool,
    distinct: Vec<ProjPoint>,
}

impl Walker<'_> {
    // Points allowed next: old ones, plus the single new point that keeps the
    // prefix normalized.
    fn allowed(&self) -> Vec<ProjPoint> {
        let fresh = match self.distinct.len() {
            0 => Some(ProjPoint::Y),
            1 => Some(ProjPoint::X),
            2 => Some(ProjPoint::Finite(1)),
            _ => None,
        };
        ProjPoint::all(self.config.p)
            .filter(|c| self.distinct.contains(c) || fresh.is_none_or(|f| f == *c))
            .collect()
    }

    fn explore(&mut self, t: &mut AlgebraTable, node: Option<u32>) -> u32 {
        let weight = t.max_weight() - 1;
        let horizon = self.config.horizon_weight();
        if weight >= horizon {
            return weight;
        }
        let mut reach = weight;
        for c in self.allowed() {
            if self.tried >= self.config.node_budget {
                self.aborted = true;
                break;
            }
            self.tried += 1;
            t.push(c);
            if t.top_is_clean() {
                let fresh = !self.distinct.contains(&c);
                if fresh {
                    self.distinct.push(c);
                }
                let child = (weight < self.config.max_weight).then(|| {
                    self.nodes.push(PrefixNode {
                        parent: node,
                        point: c,
                        weight: weight + 1,
                        reach: weight + 1,
                    });
                    self.nodes.len() as u32 - 1
                });
                let r = self.explore(t, child);
                if let Some(idx) = child {
                    self.nodes[idx as usize].reach = r;
                }
                if fresh {
                    self.distinct.pop();
                }
                reach = reach.max(r);
            }
            t.pop();
            // past the recorded range only existence of a continuation matters
            if self.aborted || (weight >= self.config.max_weight && reach >= horizon) {
                break;
            }
        }
        reach
    }
}

pub fn enumerate(config: EnumerationConfig) -> Result<Enumeration, Error> {
    if config.max_weight < 2 {
        return Err(Error::WeightTooSmall { min: 2, got: config.max_weight });
    }
    let mut walker = Walker {
        config: &config,
        nodes: Vec::new(),
        tried: 0,
        aborted: false,
        distinct: Vec::new(),
    };
    let mut t = AlgebraTable::empty(config.p);
    walker.explore(&mut t, None);
    let (nodes, tried, aborted) = (walker.nodes, walker.tried, walker.aborted);
    Ok(Enumeration {
        config,
        nodes,
        extensions_tried: tried,
        complete: !aborted,
    })
}

impl Enumeration {
    pub fn sequence(&self, idx: usize) -> CentralizerSeq {
        let mut alphas = Vec::new();
        let mut cur = Some(idx as u32);
        while let Some(i) = cur {
            let n = &self.nodes[i as usize];
            alphas.push(n.point);
            cur = n.parent;
        }
        alphas.reverse();
        CentralizerSeq { p: self.config.p, alphas }
    }

    pub fn survives(&self, idx: usize) -> bool {
        self.nodes[idx].reach >= self.config.horizon_weight()
    }

    pub fn counts(&self) -> BTreeMap<u32, WeightCount> {
        let mut out: BTreeMap<u32, WeightCount> = BTreeMap::new();
        for (i, n) in self.nodes.iter().enumerate() {
            let e = out.entry(n.weight).or_default();
            e.valid += 1;
            if self.survives(i) {
                e.surviving += 1;
            }
        }
        out
    }

    /// Prefixes that do not survive although their parent does: the shortest
    /// witnesses of each dead branch.
    pub fn dead_ends(&self) -> Vec<CentralizerSeq> {
        (0..self.nodes.len())
            .filter(|&i| {
                !self.survives(i) && self.nodes[i].parent.is_none_or(|par| self.survives(par as usize))
            })
            .map(|i| self.sequence(i))
            .collect()
    }

    pub fn survivors(&self) -> Vec<CentralizerSeq> {
        (0..self.nodes.len())
            .filter(|&i| self.survives(i))
            .map(|i| self.sequence(i))
            .collect()
    }

    pub fn all_prefixes(&self) -> Vec<CentralizerSeq> {
        (0..self.nodes.len()).map(|i| self.sequence(i)).collect()
    }

    pub fn summary(&self) -> EnumerationSummary {
        let counts = self.counts();
        EnumerationSummary {
            p: self.config.p,
            max_weight: self.config.max_weight,
            horizon_weight: self.config.horizon_weight(),
            node_budget: self.config.node_budget,
            extensions_tried: self.extensions_tried,
            complete: self.complete,
            valid_prefixes: counts.values().map(|c| c.valid).sum(),
            surviving_prefixes: counts.values().map(|c| c.surviving).sum(),
            counts,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationSummary {
    pub p: Prime,
    pub max_weight: u32,
    pub horizon_weight: u32,
    pub node_budget: u64,
    pub extensions_tried: u64,
    pub complete: bool,
    pub valid_prefixes: u64,
    pub surviving_prefixes: u64,
    pub counts: BTreeMap<u32, WeightCount>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::is_valid;

    #[test]
    fn small_tree() {
        let p = Prime::new(3).unwrap();
        let e = enumerate(EnumerationConfig::new(p, 8)).unwrap();
        assert!(e.complete);
        let counts = e.counts();
        // nothing but y survives before weight 6; y, y, x is a dead end
        for w in 2..=5 {
            assert_eq!(counts[&w].surviving, 1, "weight {w}");
        }
        assert_eq!(counts[&4].valid, 2);
        for i in 0..e.nodes.len() {
            let s = e.sequence(i);
            assert!(s.is_normalized());
            assert!(is_valid(&s));
            assert_eq!(s.last_weight(), e.nodes[i].weight);
        }
        let x6 = CentralizerSeq::new(p, vec![ProjPoint::Y, ProjPoint::Y, ProjPoint::Y, ProjPoint::Y, ProjPoint::X]).unwrap();
        assert!(e.survivors().contains(&x6));
    }

    #[test]
    fn budget_abort() {
        let p = Prime::new(3).unwrap();
        let mut cfg = EnumerationConfig::new(p, 30);
        cfg.node_budget = 10;
        let e = enumerate(cfg).unwrap();
        assert!(!e.complete);
        assert_eq!(e.extensions_tried, 10);
    }
}
