//! Classification of centralizer-sequence prefixes: peel inflation steps by
//! deflation, then match what is left against the AFS length patterns.

use serde::Serialize;

use crate::engine::CentralizerSeq;
use crate::error::Error;
use crate::field::ProjPoint;
use crate::sequences::{
    afs_sequence, decompose_constituents, deflate_sampled, inflate, AfsParams,
};

pub const DEFAULT_MAX_DEPTH: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassificationResult {
    /// Every centralizer covered equals the first one, and the prefix reaches
    /// weight `2p`, where a second centralizer would first be possible.
    Metabelian,
    /// A unique AFS algebra under `tower`, committed once the prefix contains
    /// its determining segment.
    AfsCore {
        params: AfsParams,
        /// Inflation points, outermost first.
        tower: Vec<ProjPoint>,
        /// Innermost tower entries equal to the core's first centralizer.
        beta_inflations: usize,
        /// The core's `y` and `x` centralizers, in input coordinates.
        frame: [ProjPoint; 2],
        determined_at_weight: u32,
    },
    /// Still inflated after `depth_reached` deflations.
    InflationLimitPrefix { tower: Vec<ProjPoint>, depth_reached: usize },
    /// The prefix does not single out an algebra; `candidates` lists every AFS
    /// core (with `n` up to the covered weight, and `n = ∞`) consistent with it.
    Undetermined {
        reason: String,
        tower: Vec<ProjPoint>,
        candidates: Vec<AfsParams>,
    },
}

impl ClassificationResult {
    pub fn kind(&self) -> &'static str {
        match self {
            ClassificationResult::Metabelian => "metabelian",
            ClassificationResult::AfsCore { .. } => "afs_core",
            ClassificationResult::InflationLimitPrefix { .. } => "inflation_limit_prefix",
            ClassificationResult::Undetermined { .. } => "undetermined",
        }
    }

    pub fn report(&self) -> ClassificationReport {
        let mut r = ClassificationReport {
            kind: self.kind(),
            params: Vec::new(),
            tower: Vec::new(),
            beta: 0,
            determined_at_weight: None,
            frame: None,
            depth_reached: None,
            reason: None,
        };
        match self {
            ClassificationResult::Metabelian => {}
            ClassificationResult::AfsCore {
                params,
                tower,
                beta_inflations,
                frame,
                determined_at_weight,
            } => {
                r.params.push(*params);
                r.tower.clone_from(tower);
                r.beta = *beta_inflations;
                r.frame = Some(*frame);
                r.determined_at_weight = Some(*determined_at_weight);
            }
            ClassificationResult::InflationLimitPrefix { tower, depth_reached } => {
                r.tower.clone_from(tower);
                r.depth_reached = Some(*depth_reached);
            }
            ClassificationResult::Undetermined { reason, tower, candidates } => {
                r.params.clone_from(candidates);
                r.tower.clone_from(tower);
                r.reason = Some(reason.clone());
            }
        }
        r
    }
}

/// Flat record form of a classification, serialized as one JSON object.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub kind: &'static str,
    pub params: Vec<AfsParams>,
    pub tower: Vec<ProjPoint>,
    pub beta: usize,
    pub determined_at_weight: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame: Option<[ProjPoint; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth_reached: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Weight at which the segment
/// `2q, q^{r−2}, 2q−1, (q^{r−2}, 2q)^{s−1}, q^{r−2}, 2q−1` ends.
pub fn distinguishing_weight(params: AfsParams) -> Result<u32, Error> {
    let s = params
        .s()
        .ok_or_else(|| Error::InvalidAfsParams("n = inf has no determining segment".into()))?;
    let (q, r) = (params.q(), params.r());
    let w = 2 * q + 2 * (r * q - 1) + (s - 1) * r * q;
    u32::try_from(w).map_err(|_| Error::InvalidAfsParams(format!("{params} segment too long")))
}

/// The AFS sequence in the frame `y ↦ frame[0]`, `x ↦ frame[1]`.
fn framed_afs(params: AfsParams, frame: [ProjPoint; 2], last_weight: u32) -> CentralizerSeq {
    let mut s = afs_sequence(params, last_weight);
    for c in &mut s.alphas {
        *c = if *c == ProjPoint::Y { frame[0] } else { frame[1] };
    }
    s
}

pub fn classify_prefix(seq: &CentralizerSeq, max_depth: usize) -> Result<ClassificationResult, Error> {
    let p = seq.p;
    let mut tower = Vec::new();
    let mut current = seq.clone();
    loop {
        let Some(&y) = current.alphas.first() else {
            return Ok(undetermined("empty prefix", tower, Vec::new()));
        };
        if current.alphas.iter().all(|&c| c == y) {
            if !tower.is_empty() {
                return Ok(undetermined(
                    "deflates to a constant prefix before any non-inflated constituent",
                    tower,
                    Vec::new(),
                ));
            }
            if (current.last_weight() as u64) < 2 * p.get() {
                return Ok(undetermined("prefix ends before weight 2p", tower, Vec::new()));
            }
            return Ok(ClassificationResult::Metabelian);
        }
        let d = decompose_constituents(&current)?;
        if d.lengths.iter().all(|&m| (m as u64).is_multiple_of(p.get())) {
            if tower.len() == max_depth {
                return Ok(ClassificationResult::InflationLimitPrefix {
                    depth_reached: tower.len(),
                    tower,
                });
            }
            tower.push(y);
            current = deflate_sampled(&current)?;
            continue;
        }
        return Ok(match_core(seq, &current, d.h, tower));
    }
}

fn undetermined(reason: &str, tower: Vec<ProjPoint>, candidates: Vec<AfsParams>) -> ClassificationResult {
    ClassificationResult::Undetermined {
        reason: reason.into(),
        tower,
        candidates,
    }
}

fn match_core(input: &CentralizerSeq, core: &CentralizerSeq, h: u32, tower: Vec<ProjPoint>) -> ClassificationResult {
    let p = core.p;
    let distinct = core.distinct();
    if distinct.len() > 2 {
        return undetermined(
            "more than two centralizers with a constituent of length not divisible by p",
            tower,
            Vec::new(),
        );
    }
    let frame = [distinct[0], distinct[1]];
    let last = core.last_weight();

    let mut candidates = Vec::new();
    let mut b = h + 1;
    while p.power(b - h) <= last as u64 + 2 {
        let mut ns: Vec<Option<u32>> = Vec::new();
        let mut n = b;
        while p.power(n - b) <= last as u64 {
            ns.push(Some(n));
            n += 1;
        }
        ns.push(None);
        for n in ns {
            let Ok(params) = AfsParams::new(h, b, n, p) else { continue };
            if framed_afs(params, frame, last) == *core {
                candidates.push(params);
            }
        }
        b += 1;
    }

    let committed: Vec<AfsParams> = candidates
        .iter()
        .copied()
        .filter(|&c| distinguishing_weight(c).is_ok_and(|w| w <= last))
        .collect();
    if let [params] = committed.as_slice() {
        let params = *params;
        let beta_inflations = tower.iter().rev().take_while(|&&k| k == frame[0]).count();
        let scale = p.power(tower.len() as u32);
        let result = ClassificationResult::AfsCore {
            params,
            beta_inflations,
            frame,
            determined_at_weight: distinguishing_weight(params).expect("finite n") * scale as u32,
            tower,
        };
        if reconstruct(&result, input.last_weight()).is_ok_and(|s| s == *input) {
            return result;
        }
        let ClassificationResult::AfsCore { tower, .. } = result else { unreachable!() };
        return undetermined("reconstruction disagrees with the prefix", tower, candidates);
    }
    let reason = if candidates.is_empty() {
        "no AFS pattern matches the deflated prefix"
    } else {
        "determining segment not yet visible"
    };
    undetermined(reason, tower, candidates)
}

/// The sequence `C_2 … C_last` described by a committed result.
pub fn reconstruct(result: &ClassificationResult, last_weight: u32) -> Result<CentralizerSeq, Error> {
    match result {
        ClassificationResult::Metabelian => Err(Error::Ambiguous(
            "metabelian results carry no prime; use CentralizerSeq::constant".into(),
        )),
        ClassificationResult::AfsCore { params, tower, frame, .. } => {
            let p = params.p;
            let scale = p.power(tower.len() as u32);
            let core_last = (last_weight as u64 / scale + 2) as u32;
            let mut s = framed_afs(*params, *frame, core_last);
            for &k in tower.iter().rev() {
                s = inflate(&s, k);
            }
            Ok(s.truncated(last_weight))
        }
        ClassificationResult::InflationLimitPrefix { .. } => {
            Err(Error::Ambiguous("inflation limit has no core".into()))
        }
        ClassificationResult::Undetermined { candidates, .. } => Err(Error::Ambiguous(format!(
            "{} candidate cores",
            candidates.len()
        ))),
    }
}

/// Reconstruction that also covers the metabelian case, which needs the prime.
pub fn reconstruct_with_prime(
    result: &ClassificationResult,
    p: crate::field::Prime,
    last_weight: u32,
) -> Result<CentralizerSeq, Error> {
    match result {
        ClassificationResult::Metabelian => Ok(CentralizerSeq::constant(p, ProjPoint::Y, last_weight)),
        other => reconstruct(other, last_weight),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Prime;

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    fn afs(a: u32, b: u32, n: Option<u32>) -> AfsParams {
        AfsParams::new(a, b, n, p3()).unwrap()
    }

    #[test]
    fn segment_weights() {
        assert_eq!(distinguishing_weight(afs(1, 2, Some(2))).unwrap(), 22);
        assert_eq!(distinguishing_weight(afs(1, 2, Some(3))).unwrap(), 40);
        assert!(distinguishing_weight(afs(1, 2, None)).is_err());
        let mut prev = 0;
        for n in 2..6 {
            let w = distinguishing_weight(afs(1, 2, Some(n))).unwrap();
            assert!(w > prev);
            prev = w;
        }
    }

    #[test]
    fn plain_afs() {
        let s = afs_sequence(afs(1, 2, Some(2)), 100);
        let r = classify_prefix(&s, DEFAULT_MAX_DEPTH).unwrap();
        match &r {
            ClassificationResult::AfsCore { params, tower, beta_inflations, .. } => {
                assert_eq!(*params, afs(1, 2, Some(2)));
                assert!(tower.is_empty());
                assert_eq!(*beta_inflations, 0);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(reconstruct(&r, 100).unwrap(), s);
    }

    #[test]
    fn metabelian() {
        let p = p3();
        let s = CentralizerSeq::constant(p, ProjPoint::Y, 20);
        let r = classify_prefix(&s, DEFAULT_MAX_DEPTH).unwrap();
        assert_eq!(r, ClassificationResult::Metabelian);
        let back = reconstruct_with_prime(&r, p, 20).unwrap();
        assert_eq!(back.len(), 19);
        let short = CentralizerSeq::constant(p, ProjPoint::Y, 5);
        assert_eq!(classify_prefix(&short, 4).unwrap().kind(), "undetermined");
    }

    #[test]
    fn one_inflation_peeled() {
        let s = inflate(&afs_sequence(afs(1, 2, Some(2)), 100), ProjPoint::Infinity);
        match classify_prefix(&s, DEFAULT_MAX_DEPTH).unwrap() {
            ClassificationResult::AfsCore { params, tower, .. } => {
                assert_eq!(params, afs(1, 2, Some(2)));
                assert_eq!(tower, vec![ProjPoint::Infinity]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn first_centralizer_inflation_counts_as_beta() {
        let s = inflate(&afs_sequence(afs(1, 2, Some(2)), 60), ProjPoint::Y);
        let lengths = decompose_constituents(&s).unwrap().lengths;
        assert_eq!(&lengths[..5], &[18, 9, 15, 9, 15]);
        match classify_prefix(&s, DEFAULT_MAX_DEPTH).unwrap() {
            ClassificationResult::AfsCore { tower, beta_inflations, .. } => {
                assert_eq!(tower, vec![ProjPoint::Y]);
                assert_eq!(beta_inflations, 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn short_prefix_lists_candidates() {
        // weight 22 rules out n = 2 but no larger n
        let s = afs_sequence(afs(1, 2, Some(3)), 22);
        match classify_prefix(&s, DEFAULT_MAX_DEPTH).unwrap() {
            ClassificationResult::Undetermined { candidates, .. } => {
                assert!(candidates.contains(&afs(1, 2, Some(3))));
                assert!(candidates.contains(&afs(1, 2, Some(4))));
                assert!(candidates.contains(&afs(1, 2, None)));
                assert!(!candidates.contains(&afs(1, 2, Some(2))));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn depth_limit() {
        let mut s = afs_sequence(afs(1, 2, Some(2)), 30);
        let pts = [ProjPoint::X, ProjPoint::Finite(1), ProjPoint::Y, ProjPoint::Finite(2)];
        for &k in pts.iter().rev() {
            s = inflate(&s, k);
        }
        match classify_prefix(&s, 3).unwrap() {
            ClassificationResult::InflationLimitPrefix { tower, depth_reached } => {
                assert_eq!(depth_reached, 3);
                assert_eq!(tower, pts[..3].to_vec());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn report_record() {
        let s = afs_sequence(afs(1, 2, Some(2)), 40);
        let r = classify_prefix(&s, DEFAULT_MAX_DEPTH).unwrap();
        let json = serde_json::to_string(&r.report()).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"afs_core","params":[{"a":1,"b":2,"n":2,"p":3}],"tower":[],"beta":0,"determined_at_weight":22,"frame":["0","inf"]}"#
        );
    }
}
