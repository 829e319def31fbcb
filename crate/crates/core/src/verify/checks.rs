//! Suites for transformations, identities and classification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{classify_prefix, distinguishing_weight, ClassificationResult};
use crate::engine::{
    build_algebra, expand_generalized_jacobi, extend_prefix, is_valid, CentralizerSeq, JacobiForm,
};
use crate::error::Error;
use crate::field::{binom_mod_p, Prime, ProjPoint};
use crate::sequences::{
    afs_sequence, deflate, deflate_sampled, inflate, specialize, to_compact, transform, AfsParams,
    Direction,
};

use super::{check_corpus, random_basis_change, random_tower, random_valid_prefix, run_suite, Corpus};
use super::{Outcome, SuiteParams, SuiteReport};

fn seeded(p: Prime, corpus: String, seed: u64) -> SuiteParams {
    SuiteParams {
        p,
        max_weight: None,
        corpus,
        seed: Some(seed),
        corpus_complete: true,
    }
}

/// Both ways of collapsing the centralizers outside `{y, w}` give valid sequences.
pub fn suite_specialization(corpus: &Corpus) -> SuiteReport {
    check_corpus("specialization", corpus, |seq| {
        let mut out = Outcome::default();
        let distinct = seq.distinct();
        if distinct.len() < 3 {
            return out;
        }
        out.applicable = true;
        if distinct[0] != ProjPoint::Y {
            out.fail(seq, "normalized", "first centralizer is not y");
            return out;
        }
        for &w in &distinct[1..] {
            for dir in [Direction::FixYSendToW, Direction::FixWSendToY] {
                match specialize(seq, w, dir) {
                    Ok(s) if is_valid(&s) => {}
                    Ok(s) => out.fail(
                        seq,
                        "specialization",
                        format!("w = {w}, {dir:?} gives invalid {}", to_compact(&s)),
                    ),
                    Err(e) => out.fail(seq, "specialization", e.to_string()),
                }
            }
        }
        out
    })
}

fn random_prefixes(p: Prime, count: usize, max_len: u32, rng: &mut ChaCha8Rng) -> Vec<CentralizerSeq> {
    (0..count)
        .map(|_| {
            let last = rng.gen_range(2..=max_len.max(2));
            random_valid_prefix(p, last, rng)
        })
        .collect()
}

/// `deflate(inflate(s, w)) = s` for random valid prefixes and every `w`.
pub fn suite_inflation_identity(p: Prime, count: usize, max_len: u32, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seqs = random_prefixes(p, count, max_len, &mut rng);
    let params = seeded(p, format!("{count} random valid prefixes up to weight {max_len}"), seed);
    run_suite("inflation_identity", params, &seqs, |seq| {
        let mut out = Outcome { applicable: true, ..Outcome::default() };
        for w in ProjPoint::all(p) {
            let inf = inflate(seq, w);
            if deflate(&inf).ok().as_ref() != Some(seq) {
                out.fail(seq, "deflate_inflate", format!("w = {w}"));
            }
            if deflate_sampled(&inf).ok().as_ref() != Some(seq) {
                out.fail(seq, "deflate_sampled_inflate", format!("w = {w}"));
            }
        }
        out
    })
}

/// Validity, and invalidity, survive a simultaneous change of basis.
pub fn suite_basis_covariance(p: Prime, matrices: usize, prefixes: usize, max_len: u32, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gs: Vec<_> = (0..matrices).map(|_| random_basis_change(p, &mut rng)).collect();
    let seqs = random_prefixes(p, prefixes, max_len, &mut rng);
    let params = seeded(
        p,
        format!("{prefixes} random valid prefixes up to weight {max_len}, {matrices} random matrices"),
        seed,
    );
    run_suite("basis_covariance", params, &seqs, |seq| {
        let mut out = Outcome { applicable: true, ..Outcome::default() };
        // the same prefix with its last entry replaced by a rejected point
        let shorter = seq.truncated(seq.last_weight() - 1);
        let ok = extend_prefix(&shorter).unwrap_or_default();
        let bad = ProjPoint::all(p).find(|c| !ok.contains(c)).map(|c| shorter.pushed(c));
        for g in &gs {
            if !is_valid(&transform(seq, g)) {
                out.fail(seq, "valid_stays_valid", format!("{:?}", g.matrix()));
            }
            if let Some(b) = &bad {
                if is_valid(&transform(b, g)) {
                    out.fail(b, "invalid_stays_invalid", format!("{:?}", g.matrix()));
                }
            }
        }
        out
    })
}

/// Front and back expansions of the generalized Jacobi identity hold in the
/// tables of `AFS(1,2,2,p)` and `AFS(1,2,∞,p)`.
pub fn suite_generalized_jacobi(
    p: Prime,
    max_weight: u32,
    samples: usize,
    max_lambda: u64,
    seed: u64,
) -> Result<SuiteReport, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut items = Vec::new();
    for n in [Some(2), None] {
        let params = AfsParams::new(1, 2, n, p)?;
        let seq = afs_sequence(params, max_weight - 1);
        let table = build_algebra(&seq, max_weight)?;
        for _ in 0..samples {
            let lambda = rng.gen_range(0..=max_lambda.min(max_weight as u64 - 3));
            let i = rng.gen_range(2..=max_weight - 1 - lambda as u32);
            items.push((params, seq.clone(), table.clone(), i, lambda));
        }
    }
    let params = seeded(
        p,
        format!("{samples} samples each in AFS(1,2,2,{p}) and AFS(1,2,inf,{p}) at weight {max_weight}"),
        seed,
    );
    Ok(run_suite("generalized_jacobi", params, &items, |(prm, seq, t, i, lambda)| {
        let mut out = Outcome { applicable: true, ..Outcome::default() };
        for form in [JacobiForm::Front, JacobiForm::Back] {
            match expand_generalized_jacobi(t, *i, *lambda, form) {
                Ok(e) if e.holds() => {}
                Ok(e) => out.fail(
                    seq,
                    "generalized_jacobi",
                    format!("{prm} i={i} lambda={lambda} {form:?}: lhs {} rhs {}", e.lhs, e.rhs),
                ),
                Err(e) => out.fail(seq, "generalized_jacobi", e.to_string()),
            }
        }
        out
    }))
}

/// Classifying a reconstructed tower over an AFS core returns the same core
/// and tower, once the prefix reaches `p^{|tower|}` times the determining weight.
pub fn suite_classification_round_trip(
    p: Prime,
    towers: usize,
    max_tower: usize,
    seed: u64,
) -> Result<SuiteReport, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut items = Vec::new();
    for (a, b, n) in [(1, 2, 2), (1, 2, 3), (1, 3, 3), (2, 3, 3)] {
        let params = AfsParams::new(a, b, Some(n), p)?;
        for _ in 0..towers {
            items.push((params, random_tower(p, max_tower, &mut rng)));
        }
    }
    let params = seeded(p, format!("AFS cores with n <= 3 under {towers} random towers of length <= {max_tower}"), seed);
    Ok(run_suite("classification_round_trip", params, &items, |(prm, tower)| {
        let mut out = Outcome { applicable: true, ..Outcome::default() };
        let dw = distinguishing_weight(*prm).expect("finite n");
        let last = dw * p.power(tower.len() as u32) as u32;
        let mut s = afs_sequence(*prm, last);
        for &k in tower.iter().rev() {
            s = inflate(&s, k);
        }
        let s = s.truncated(last);
        match classify_prefix(&s, 5) {
            Ok(ClassificationResult::AfsCore { params, tower: t, .. }) if params == *prm && t == *tower => {}
            Ok(other) => out.fail(
                &s,
                "round_trip",
                format!("{prm} tower {tower:?} classified as {}", serde_json::to_string(&other.report()).unwrap_or_default()),
            ),
            Err(e) => out.fail(&s, "round_trip", e.to_string()),
        }
        out
    }))
}

/// Lucas' theorem against Pascal's rule, for `0 ≤ μ ≤ λ ≤ max`.
pub fn suite_lucas(p: Prime, max: u64) -> SuiteReport {
    let params = SuiteParams {
        p,
        max_weight: Some(max as u32),
        corpus: format!("all 0 <= mu <= lambda <= {max}"),
        seed: None,
        corpus_complete: true,
    };
    let mut report = run_suite("lucas", params, &[()], |_| Outcome { applicable: true, ..Outcome::default() });
    let mut row = vec![1u32];
    let mut checked = 0;
    for lambda in 0..=max {
        if lambda > 0 {
            let mut next = vec![1u32; lambda as usize + 1];
            for mu in 1..lambda as usize {
                next[mu] = p.add(row[mu - 1], row[mu]);
            }
            row = next;
        }
        for (mu, &v) in row.iter().enumerate() {
            checked += 1;
            if binom_mod_p(lambda, mu as u64, p).value() != v {
                report.failures.push(super::Finding {
                    sequence: String::new(),
                    check: "lucas".into(),
                    detail: format!("C({lambda}, {mu}) mod {p}"),
                });
            }
        }
    }
    report.instances = checked;
    report.applicable = checked;
    report
}
