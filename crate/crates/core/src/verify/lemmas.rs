//! Suites for the statements about constituent patterns.

use crate::engine::{is_valid, CentralizerSeq};
use crate::field::{Prime, ProjPoint};
use crate::sequences::{
    afs_sequence, decompose_constituents, inflate, is_inflated, AfsParams, ConstituentDecomposition,
    ConstituentKind,
};

use super::{check_corpus, Corpus, Outcome, SuiteReport};

/// The AFS algebras with `p^n ≤ max_pn` (and their `n = ∞` limits), each also
/// inflated once with respect to its first centralizer, as prefixes through
/// `weight`. Sequences the engine rejects are returned separately.
pub fn afs_corpus(p: Prime, max_pn: u64, weight: u32) -> (Corpus, Vec<CentralizerSeq>) {
    let mut params = Vec::new();
    let mut b = 2;
    while p.power(b) <= max_pn {
        for a in 1..b {
            let mut n = b;
            while p.power(n) <= max_pn {
                params.extend(AfsParams::new(a, b, Some(n), p));
                n += 1;
            }
            params.extend(AfsParams::new(a, b, None, p));
        }
        b += 1;
    }
    let mut seqs = Vec::new();
    for prm in params {
        let s = afs_sequence(prm, weight);
        seqs.push(inflate(&s, ProjPoint::Y).truncated(weight));
        seqs.push(s);
    }
    let (valid, rejected): (Vec<_>, Vec<_>) = seqs.into_iter().partition(is_valid);
    let corpus = Corpus {
        p,
        description: format!(
            "AFS sequences with p^n <= {max_pn} and n = inf, and their inflations by y, through weight {weight}"
        ),
        max_weight: Some(weight),
        seed: None,
        complete: true,
        sequences: valid,
    };
    (corpus, rejected)
}

fn decompose_or_fail(seq: &CentralizerSeq, out: &mut Outcome) -> Option<ConstituentDecomposition> {
    match decompose_constituents(seq) {
        Ok(d) => Some(d),
        Err(crate::Error::Metabelian) => None,
        Err(e) => {
            out.applicable = true;
            out.fail(seq, "decompose", e.to_string());
            None
        }
    }
}

/// Facts about a non-metabelian decomposition used by several suites.
struct Shape<'a> {
    seq: &'a CentralizerSeq,
    d: ConstituentDecomposition,
    x: ProjPoint,
    q: u32,
}

impl<'a> Shape<'a> {
    fn new(seq: &'a CentralizerSeq, d: ConstituentDecomposition) -> Self {
        let x = d.terminators[0];
        let q = d.q() as u32;
        Shape { seq, d, x, q }
    }

    fn short_x(&self, k: usize) -> bool {
        self.d.tags[k] == ConstituentKind::Short && self.d.terminators[k] == self.x
    }

    /// Length of the run of short constituents ending in `x` right after the first one.
    fn initial_run(&self) -> usize {
        (1..self.d.lengths.len()).take_while(|&k| self.short_x(k)).count()
    }

    /// Index of the second non-short constituent.
    fn second_non_short(&self) -> Option<usize> {
        (1..self.d.lengths.len()).find(|&k| self.d.tags[k] != ConstituentKind::Short)
    }

    /// Whether only `y` and `x` occur up to and including constituent `k`.
    fn two_centralizers_through(&self, k: usize) -> bool {
        self.d.terminators[..=k].iter().all(|&c| c == self.x)
    }

    /// Number of short constituents ending in `x` immediately before constituent `k`.
    fn preceding_short_x(&self, k: usize) -> usize {
        (1..k).rev().take_while(|&j| self.short_x(j)).count()
    }

    /// Whether what is visible after weight `end` agrees with `m` short
    /// constituents ending in `x`.
    fn followed_by_short_x(&self, end: u32, m: usize) -> bool {
        let q = self.q;
        (1..=m as u32 * q).all(|k| match self.seq.at(end + k) {
            None => true,
            Some(c) => c == if k % q == 0 { self.x } else { self.d.first },
        })
    }

    fn shape_of(&self, k: usize) -> String {
        format!("lengths {:?}, constituent {k}", &self.d.lengths[..=k.min(self.d.lengths.len() - 1)])
    }
}

fn shape<'a>(seq: &'a CentralizerSeq, out: &mut Outcome) -> Option<Shape<'a>> {
    decompose_or_fail(seq, out).map(|d| Shape::new(seq, d))
}

fn is_power_of(p: Prime, n: u64, min_exp: u32) -> bool {
    p.log_exact(n).is_some_and(|k| k >= min_exp)
}

/// The second centralizer first occurs in a weight `2p^h`.
pub fn suite_parameter(corpus: &Corpus) -> SuiteReport {
    let p = corpus.p;
    check_corpus("parameter", corpus, |seq| {
        let mut out = Outcome::default();
        let Some(&y) = seq.alphas.first() else { return out };
        if let Some(k) = seq.alphas.iter().position(|&c| c != y) {
            out.applicable = true;
            let w = k as u64 + 2;
            out.observe("first_occurrence_weight", w);
            if !w.is_multiple_of(2) || !is_power_of(p, w / 2, 1) {
                out.fail(seq, "parameter", format!("second centralizer first occurs in weight {w}"));
            }
        }
        out
    })
}

/// Constituent lengths lie in `{q, 2q} ∪ {2q − p^β : β < h}`.
pub fn suite_lengths(corpus: &Corpus) -> SuiteReport {
    check_corpus("lengths", corpus, |seq| {
        let mut out = Outcome::default();
        match decompose_constituents(seq) {
            Ok(d) => {
                out.applicable = d.lengths.len() > 1;
                for &m in &d.lengths[1..] {
                    out.observe("length", m as u64);
                }
            }
            Err(crate::Error::Metabelian) => {}
            // an invalid first occurrence is reported by the parameter suite
            Err(crate::Error::BadParameter(_)) => {}
            Err(e) => {
                out.applicable = true;
                out.fail(seq, "constituent_lengths", e.to_string());
            }
        }
        out
    })
}

/// Hypothesis shared by the counts of initial shorts: a second non-short
/// constituent exists and only two centralizers occur up to it.
fn initial_shorts(s: &Shape<'_>) -> Option<(usize, ConstituentKind)> {
    let k = s.second_non_short()?;
    s.two_centralizers_through(k).then(|| (k - 1, s.d.tags[k]))
}

/// The number of shorts before the second non-short constituent is odd.
pub fn suite_odd_shorts(corpus: &Corpus) -> SuiteReport {
    check_corpus("odd_shorts", corpus, |seq| {
        let mut out = Outcome::default();
        let Some(s) = shape(seq, &mut out) else { return out };
        if let Some((m, _)) = initial_shorts(&s) {
            out.applicable = true;
            out.observe("shorts", m as u64);
            if m % 2 == 0 {
                out.fail(seq, "odd_shorts", format!("{m} shorts before {}", s.shape_of(m + 1)));
            }
        }
        out
    })
}

/// `2q, q^m, 2q` forces `m = 2p^k − 3`; `2q, q^m, 2q − p^β` forces `m = p^k − 2`.
pub fn suite_shorts_counts(corpus: &Corpus) -> SuiteReport {
    let p = corpus.p;
    check_corpus("shorts_counts", corpus, |seq| {
        let mut out = Outcome::default();
        let Some(s) = shape(seq, &mut out) else { return out };
        let Some((m, tag)) = initial_shorts(&s) else { return out };
        out.applicable = true;
        let m64 = m as u64;
        match tag {
            ConstituentKind::Long => {
                out.observe("shorts_before_long", m64);
                if !(m64 + 3).is_multiple_of(2) || !is_power_of(p, (m64 + 3) / 2, 1) {
                    out.fail(seq, "shorts_before_long", format!("m = {m} is not 2p^k - 3"));
                }
            }
            ConstituentKind::Intermediate { .. } => {
                out.observe("shorts_before_intermediate", m64);
                if !is_power_of(p, m64 + 2, 1) {
                    out.fail(seq, "initial_num_of_shorts", format!("m = {m} is not p^k - 2"));
                }
            }
            ConstituentKind::Short => unreachable!("second non-short constituent"),
        }
        out
    })
}

/// Centralizers beyond the first two end short constituents, are followed by
/// short ones, and the `i`-th first occurs in a weight `2p^n` with `n ≥ i − 1`.
pub fn suite_third_centralizer(corpus: &Corpus) -> SuiteReport {
    let p = corpus.p;
    check_corpus("third_centralizer", corpus, |seq| {
        let mut out = Outcome::default();
        let distinct = seq.distinct();
        if distinct.len() < 3 {
            return out;
        }
        out.applicable = true;
        for (i, c) in distinct.iter().enumerate() {
            let w = seq.alphas.iter().position(|a| a == c).expect("occurs") as u64 + 2;
            let ok = w.is_multiple_of(2) && p.log_exact(w / 2).is_some_and(|n| n as usize >= i);
            if i >= 2 {
                out.observe("third_or_later_first_weight", w);
            }
            if !ok {
                out.fail(
                    seq,
                    "occurrence_of_centralizers",
                    format!("centralizer number {} first occurs in weight {w}", i + 1),
                );
            }
        }
        let Some(s) = shape(seq, &mut out) else { return out };
        let (y, x) = (distinct[0], distinct[1]);
        let ends = s.d.ends();
        for (k, &t) in s.d.terminators.iter().enumerate() {
            if t == y || t == x {
                continue;
            }
            if s.d.tags[k] != ConstituentKind::Short {
                out.fail(
                    seq,
                    "third_after_short",
                    format!("{t} ends a constituent of length {} in weight {}", s.d.lengths[k], ends[k]),
                );
            }
            let next_ok = match s.d.tags.get(k + 1) {
                Some(tag) => *tag == ConstituentKind::Short,
                None => s.d.trailing_partial < s.q,
            };
            if !next_ok {
                out.fail(
                    seq,
                    "third_after_short",
                    format!("{t} in weight {} is not followed by a short constituent", ends[k]),
                );
            }
        }
        out
    })
}

/// With three or more centralizers every constituent is short or long, so
/// every length is a multiple of `p`.
pub fn suite_many_centralizers_short_long(corpus: &Corpus) -> SuiteReport {
    check_corpus("many_centralizers_short_long", corpus, |seq| {
        let mut out = Outcome::default();
        if seq.distinct().len() < 3 {
            return out;
        }
        out.applicable = true;
        let Some(s) = shape(seq, &mut out) else { return out };
        let ends = s.d.ends();
        for (k, tag) in s.d.tags.iter().enumerate() {
            if let ConstituentKind::Intermediate { .. } = tag {
                out.fail(
                    seq,
                    "more_than_two_is_inflated",
                    format!("intermediate constituent of length {} ending in weight {}", s.d.lengths[k], ends[k]),
                );
            }
        }
        if !is_inflated(&s.d) {
            out.fail(seq, "inflated", "some constituent length is not a multiple of p");
        }
        out
    })
}

/// With initial lengths `2q, q^m` over two centralizers, an intermediate
/// constituent preceded by at least `m'` shorts ending in `x` (`m' ≤ m`) is
/// followed by at least `m'` of them.
pub fn suite_shorts_after_intermediate(corpus: &Corpus) -> SuiteReport {
    check_corpus("shorts_after_intermediate", corpus, |seq| {
        let mut out = Outcome::default();
        let Some(s) = shape(seq, &mut out) else { return out };
        let m = s.initial_run();
        let ends = s.d.ends();
        for (k, &end) in ends.iter().enumerate().skip(1) {
            if !matches!(s.d.tags[k], ConstituentKind::Intermediate { .. }) {
                continue;
            }
            let pre = s.preceding_short_x(k);
            let need = pre.min(m);
            let pre_any = (1..k).rev().take_while(|&j| s.d.tags[j] == ConstituentKind::Short).count();
            if pre_any > pre {
                out.near_miss(
                    seq,
                    "shorts_after_intermediate",
                    format!("{} preceded by shorts not all ending in x", s.shape_of(k)),
                );
            }
            if need == 0 {
                continue;
            }
            out.applicable = true;
            out.observe("required_following_shorts", need as u64);
            if !s.followed_by_short_x(end, need) {
                out.fail(
                    seq,
                    "shorts_after_intermediate",
                    format!("intermediate ending in weight {} needs {need} following shorts ending in x", end),
                );
            }
        }
        out
    })
}

/// With initial lengths `2q, q^{r−2}` over two centralizers (`r` a power of
/// `p`), every long constituent is followed by at least `r − 2` shorts ending in `x`.
pub fn suite_shorts_after_long(corpus: &Corpus) -> SuiteReport {
    let p = corpus.p;
    check_corpus("shorts_after_long", corpus, |seq| {
        let mut out = Outcome::default();
        let Some(s) = shape(seq, &mut out) else { return out };
        let m = s.initial_run() as u64;
        // largest power r = p^k, k ≥ 1, with r − 2 ≤ m
        let Some(r) = (1..).map(|k| p.power(k)).take_while(|&r| r - 2 <= m).last() else {
            return out;
        };
        let need = (r - 2) as usize;
        let ends = s.d.ends();
        for (k, &end) in ends.iter().enumerate().skip(1) {
            if s.d.tags[k] != ConstituentKind::Long {
                continue;
            }
            out.applicable = true;
            out.observe("r", r);
            if !s.followed_by_short_x(end, need) {
                out.fail(
                    seq,
                    "shorts_after_long",
                    format!("long constituent ending in weight {} needs {need} following shorts ending in x", end),
                );
            }
        }
        out
    })
}

/// Reads `2q, q^{r−2}, 2q − p^β` over two centralizers, returning `r` and `β`.
fn afs_opening(s: &Shape<'_>, p: Prime) -> Option<(u64, u32)> {
    let k = s.second_non_short()?;
    let ConstituentKind::Intermediate { beta } = s.d.tags[k] else { return None };
    let r = k as u64 + 1;
    (s.two_centralizers_through(k) && is_power_of(p, r, 1)).then_some((r, beta))
}

/// After `2q, q^{r−2}, 2q − p^β` over two centralizers, only two centralizers
/// occur and the lengths repeat `2q, q^{r−2}` or `2q − p^β, q^{r−2}`.
pub fn suite_pattern_for_afs(corpus: &Corpus) -> SuiteReport {
    let p = corpus.p;
    check_corpus("pattern_for_afs", corpus, |seq| {
        let mut out = Outcome::default();
        let Some(s) = shape(seq, &mut out) else { return out };
        let Some((r, beta)) = afs_opening(&s, p) else { return out };
        out.applicable = true;
        out.observe("r", r);
        out.observe("beta", beta as u64);
        if seq.distinct().len() > 2 {
            out.fail(seq, "pattern_for_afs", "a third centralizer occurs");
        }
        let period = (r - 1) as usize;
        let (q, inter) = (s.q, 2 * s.q - p.power(beta) as u32);
        for (k, &len) in s.d.lengths.iter().enumerate() {
            let ok = if k % period == 0 { len == 2 * q || len == inter } else { len == q };
            if !ok || s.d.terminators[k] != s.x {
                out.fail(seq, "pattern_for_afs", format!("breaks the pattern at {}", s.shape_of(k)));
                return out;
            }
        }
        let longest_next = if s.d.lengths.len() % period == 0 { 2 * q } else { q };
        if s.d.trailing_partial >= longest_next {
            out.fail(seq, "pattern_for_afs", "trailing run of y is too long for the pattern");
        }
        out
    })
}

/// In `2q, q^{r−2}, 2q−p^β, (q^{r−2}, 2q)^{s−1}, q^{r−2}, 2q−p^β` over two
/// centralizers, `s` is a power of `p`.
pub fn suite_s_power(corpus: &Corpus) -> SuiteReport {
    let p = corpus.p;
    check_corpus("s_power", corpus, |seq| {
        let mut out = Outcome::default();
        let Some(s) = shape(seq, &mut out) else { return out };
        let Some((r, beta)) = afs_opening(&s, p) else { return out };
        let first = (r - 1) as usize;
        let inter = ConstituentKind::Intermediate { beta };
        let period = first;
        let mut blocks = 0u64;
        let mut k = first + 1;
        loop {
            let close = k + period - 1;
            if close >= s.d.lengths.len() {
                return out;
            }
            let shorts_ok = (k..close).all(|j| s.short_x(j));
            if !shorts_ok || s.d.terminators[close] != s.x {
                return out;
            }
            blocks += 1;
            match s.d.tags[close] {
                ConstituentKind::Long => k = close + 1,
                t if t == inter => break,
                _ => return out,
            }
        }
        out.applicable = true;
        out.observe("s", blocks);
        if !is_power_of(p, blocks, 0) {
            out.fail(seq, "getting_to_claretta", format!("s = {blocks} is not a power of p"));
        }
        out
    })
}
