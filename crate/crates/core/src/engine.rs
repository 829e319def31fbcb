//! Finite structure-constant tables of graded Lie algebras of maximal class.
//!
//! A table of maximal weight `N` describes the algebra spanned by
//! `x, y, v_2, …, v_N` with `v_2 = [y, x]` and
//!
//! ```text
//! [v_i, x] = a_i v_{i+1},   [v_i, y] = b_i v_{i+1},   [v_i, v_j] = c(i, j) v_{i+j}
//! ```
//!
//! where `(a_i, b_i)` is `(1, α_i)` when the two-step centralizer `C_i = F·(y − α_i x)`
//! is finite and `(0, 1)` when `C_i = F·x`. Each `v_j` (j ≥ 3) is defined as
//! `[v_{j−1}, t_j]` for the generator `t_j` whose coefficient on `v_{j−1}` is 1,
//! which determines every `c(i, j)` by the recursion
//!
//! ```text
//! [v_i, v_j] = [[v_i, v_{j−1}], t_j] − [[v_i, t_j], v_{j−1}]
//! ```
//!
//! on the second index. The recursion is evaluated for *both* orders of the
//! indices; the table defines a Lie algebra exactly when the two orders agree
//! up to sign and every Jacobi residual up to weight `N` vanishes.
//!
//! Validity here is realizability of a finite quotient. A valid prefix need
//! not extend to an infinite-dimensional algebra: terminal algebras exist.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::field::{binom_mod_p, FpElem, Prime, ProjPoint};

/// The isomorphism invariant of a maximal-class algebra: its sequence of
/// two-step centralizers. `alphas[k]` is `C_{k+2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CentralizerSeq {
    pub p: Prime,
    pub alphas: Vec<ProjPoint>,
}

impl CentralizerSeq {
    pub fn new(p: Prime, alphas: Vec<ProjPoint>) -> Result<Self, Error> {
        if let Some(bad) = alphas.iter().find(|c| !c.is_valid_for(p)) {
            return Err(Error::Parse(format!("point {bad} out of range for p = {p}")));
        }
        Ok(CentralizerSeq { p, alphas })
    }

    /// `C_2, …, C_last_weight` all equal to `F·y`.
    pub fn constant(p: Prime, point: ProjPoint, last_weight: u32) -> Self {
        CentralizerSeq {
            p,
            alphas: vec![point; last_weight.saturating_sub(1) as usize],
        }
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    /// Weight of the last centralizer present (1 when empty).
    pub fn last_weight(&self) -> u32 {
        self.alphas.len() as u32 + 1
    }

    /// `C_w`, if present.
    pub fn at(&self, weight: u32) -> Option<ProjPoint> {
        weight
            .checked_sub(2)
            .and_then(|k| self.alphas.get(k as usize).copied())
    }

    /// The prefix `C_2, …, C_w`.
    pub fn truncated(&self, last_weight: u32) -> CentralizerSeq {
        let n = (last_weight.saturating_sub(1) as usize).min(self.alphas.len());
        CentralizerSeq {
            p: self.p,
            alphas: self.alphas[..n].to_vec(),
        }
    }

    pub fn pushed(&self, c: ProjPoint) -> CentralizerSeq {
        let mut s = self.clone();
        s.alphas.push(c);
        s
    }

    /// Distinct points in order of first occurrence.
    pub fn distinct(&self) -> Vec<ProjPoint> {
        let mut seen = Vec::new();
        for &c in &self.alphas {
            if !seen.contains(&c) {
                seen.push(c);
            }
        }
        seen
    }

    /// Whether the first centralizer is `F·y`, the second distinct one `F·x`
    /// and the third distinct one `F·(y − x)`.
    pub fn is_normalized(&self) -> bool {
        let want = [ProjPoint::Finite(0), ProjPoint::Infinity, ProjPoint::Finite(1)];
        self.distinct().iter().zip(want.iter()).all(|(a, b)| a == b)
    }
}

/// Generators of `L_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gen {
    X,
    Y,
}

/// Basis elements of the table: the generators and `v_i`, `i ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisElem {
    X,
    Y,
    V(u32),
}

impl BasisElem {
    pub fn weight(self) -> u32 {
        match self {
            BasisElem::X | BasisElem::Y => 1,
            BasisElem::V(i) => i,
        }
    }
}

impl fmt::Display for BasisElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElem::X => f.write_str("x"),
            BasisElem::Y => f.write_str("y"),
            BasisElem::V(i) => write!(f, "v{i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViolationKind {
    /// `[[u,v],w] + [[v,w],u] + [[w,u],v] ≠ 0`.
    Jacobi,
    /// `[v_i, v_j] ≠ −[v_j, v_i]` when both sides are computed by the recursion
    /// (for `i = j` this reads `[v_i, v_i] ≠ 0`).
    Antisymmetry,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub elems: Vec<BasisElem>,
    pub weight: u32,
    pub residual: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub violations: Vec<Violation>,
    pub max_checked_weight: u32,
}

impl ConsistencyReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Structure constants of a graded maximal-class algebra up to weight `max_weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraTable {
    p: Prime,
    alphas: Vec<ProjPoint>,
    // adj[i] = (a_i, b_i) for 2 <= i <= N-1; slots 0 and 1 unused.
    adj: Vec<(u32, u32)>,
    // levels[w][i-2] = [v_i, v_{w-i}] computed by recursion on the second index.
    levels: Vec<Vec<u32>>,
}

impl AlgebraTable {
    /// The algebra spanned by `x, y, v_2` only.
    pub fn empty(p: Prime) -> Self {
        AlgebraTable {
            p,
            alphas: Vec::new(),
            adj: vec![(0, 0); 2],
            levels: vec![Vec::new(); 4],
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    /// Maximal weight `N`.
    pub fn max_weight(&self) -> u32 {
        self.alphas.len() as u32 + 2
    }

    /// Adds the next two-step centralizer `C_N` and the brackets of weight `N + 1`.
    pub fn push(&mut self, c: ProjPoint) {
        debug_assert!(c.is_valid_for(self.p));
        let n = self.max_weight();
        let ab = match c {
            ProjPoint::Finite(alpha) => (1, alpha),
            ProjPoint::Infinity => (0, 1),
        };
        self.alphas.push(c);
        self.adj.push(ab);
        debug_assert_eq!(self.adj.len() as u32, n + 1);

        let w = n + 1;
        let p = self.p;
        if self.levels.len() as u32 <= w {
            self.levels.resize(w as usize + 1, Vec::new());
        }
        // [v_i, v_j] needs [v_{i+1}, v_{j-1}] of the same weight: fill j upwards.
        let mut level = vec![0u32; w.saturating_sub(3) as usize];
        for i in (2..=w.saturating_sub(2)).rev() {
            let j = w - i;
            level[(i - 2) as usize] = if j == 2 {
                let (ai, bi) = self.adj[i as usize];
                let (ai1, bi1) = self.adj[i as usize + 1];
                p.sub(p.mul(bi, ai1), p.mul(ai, bi1))
            } else {
                let t = self.def_gen(j);
                let upper = p.mul(self.raw(i, j - 1), self.coef(i + j - 1, t));
                let lower = p.mul(self.coef(i, t), level[(i - 1) as usize]);
                p.sub(upper, lower)
            };
        }
        self.levels[w as usize] = level;
    }

    /// Drops the last centralizer and the brackets of top weight.
    pub fn pop(&mut self) -> Option<ProjPoint> {
        let c = self.alphas.pop()?;
        let w = self.max_weight() + 1;
        self.adj.pop();
        self.levels[w as usize].clear();
        self.levels.truncate((w as usize).max(4));
        Some(c)
    }

    pub fn alphas(&self) -> &[ProjPoint] {
        &self.alphas
    }

    /// `(a_i, b_i)` for `2 ≤ i ≤ N − 1`.
    pub fn adjoint(&self, i: u32) -> Option<(FpElem, FpElem)> {
        (i >= 2 && i < self.max_weight()).then(|| {
            let (a, b) = self.adj[i as usize];
            (self.p.elem(a as i64), self.p.elem(b as i64))
        })
    }

    /// The generator used to define `v_j = [v_{j−1}, t_j]`, `3 ≤ j ≤ N`.
    pub fn def_gen(&self, j: u32) -> Gen {
        debug_assert!(j >= 3 && j - 1 < self.adj.len() as u32);
        if self.adj[j as usize - 1].0 != 0 {
            Gen::X
        } else {
            Gen::Y
        }
    }

    #[inline]
    fn coef(&self, i: u32, t: Gen) -> u32 {
        let (a, b) = self.adj[i as usize];
        match t {
            Gen::X => a,
            Gen::Y => b,
        }
    }

    #[inline]
    fn raw(&self, i: u32, j: u32) -> u32 {
        self.levels[(i + j) as usize][(i - 2) as usize]
    }

    /// `[v_i, v_j]` as produced by the recursion on `j`, for any `i, j ≥ 2`
    /// with `i + j ≤ N`. On a consistent table this equals `c(i, j)`.
    pub fn recursive_bracket(&self, i: u32, j: u32) -> Option<FpElem> {
        (i >= 2 && j >= 2 && i + j <= self.max_weight())
            .then(|| self.p.elem(self.raw(i, j) as i64))
    }

    #[inline]
    fn c_raw(&self, i: u32, j: u32) -> u32 {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.raw(i, j),
            Equal => 0,
            Greater => self.p.neg(self.raw(j, i)),
        }
    }

    /// The structure constant `c(i, j)` with `[v_i, v_j] = c(i, j) v_{i+j}`:
    /// the recursive value for `i < j`, zero on the diagonal, and
    /// extended antisymmetrically.
    pub fn c(&self, i: u32, j: u32) -> Option<FpElem> {
        (i >= 2 && j >= 2 && i + j <= self.max_weight())
            .then(|| self.p.elem(self.c_raw(i, j) as i64))
    }

    /// Bracket of two basis elements as `(coefficient, weight)`; the result is
    /// a multiple of `v_weight`, or the zero vector when `weight > N`.
    /// Products landing in `L_1` do not occur for basis elements.
    fn bracket(&self, u: BasisElem, v: BasisElem) -> (u32, u32) {
        use BasisElem::*;
        let w = u.weight() + v.weight();
        if w > self.max_weight() {
            return (0, w);
        }
        let p = self.p;
        let coef = match (u, v) {
            (X, X) | (Y, Y) => 0,
            (Y, X) => 1,
            (X, Y) => p.neg(1),
            (V(i), X) => self.adj[i as usize].0,
            (V(i), Y) => self.adj[i as usize].1,
            (X, V(i)) => p.neg(self.adj[i as usize].0),
            (Y, V(i)) => p.neg(self.adj[i as usize].1),
            (V(i), V(j)) => self.c_raw(i, j),
        };
        (coef, w)
    }

    // [[u, v], w] as a scalar on v_{weight}.
    fn double(&self, u: BasisElem, v: BasisElem, w: BasisElem) -> u32 {
        let (k, wt) = self.bracket(u, v);
        if k == 0 {
            return 0;
        }
        let (k2, _) = self.bracket(BasisElem::V(wt), w);
        self.p.mul(k, k2)
    }

    fn jacobi(&self, u: BasisElem, v: BasisElem, w: BasisElem) -> u32 {
        let p = self.p;
        p.add(
            p.add(self.double(u, v, w), self.double(v, w, u)),
            self.double(w, u, v),
        )
    }

    /// Calls `sink` with every violation of total weight `w`; stops early when
    /// `sink` returns `false`. Returns whether the weight is clean.
    fn scan_weight(&self, w: u32, sink: &mut dyn FnMut(Violation) -> bool) -> bool {
        use BasisElem::*;
        let p = self.p;
        let mut clean = true;
        let mut report = |v: Violation| -> bool {
            clean = false;
            sink(v)
        };

        for i in 2..=w / 2 {
            let j = w - i;
            if j < 2 {
                continue;
            }
            let residual = if i == j {
                self.raw(i, i)
            } else {
                p.add(self.raw(i, j), self.raw(j, i))
            };
            if residual != 0
                && !report(Violation {
                    kind: ViolationKind::Antisymmetry,
                    elems: vec![V(i), V(j)],
                    weight: w,
                    residual,
                })
            {
                return false;
            }
        }

        let mut triples: Vec<[BasisElem; 3]> = Vec::new();
        if w >= 4 {
            triples.push([X, Y, V(w - 2)]);
        }
        for t in [X, Y] {
            for i in 2..=(w - 1) / 2 {
                let j = w - 1 - i;
                if j > i {
                    triples.push([t, V(i), V(j)]);
                }
            }
        }
        for i in 2..w {
            for j in (i + 1)..w {
                let k = match w.checked_sub(i + j) {
                    Some(k) if k > j => k,
                    _ => continue,
                };
                triples.push([V(i), V(j), V(k)]);
            }
        }
        for [u, v, x] in triples {
            let residual = self.jacobi(u, v, x);
            if residual != 0
                && !report(Violation {
                    kind: ViolationKind::Jacobi,
                    elems: vec![u, v, x],
                    weight: w,
                    residual,
                })
            {
                return false;
            }
        }
        clean
    }

    /// Whether all identities of total weight exactly `w` hold.
    pub fn weight_is_clean(&self, w: u32) -> bool {
        self.scan_weight(w, &mut |_| false)
    }

    /// Whether the brackets of top weight `N` are consistent.
    pub fn top_is_clean(&self) -> bool {
        self.weight_is_clean(self.max_weight())
    }
}

/// Builds the table of maximal weight `max_weight` from `C_2, …, C_{max_weight − 1}`.
pub fn build_algebra(seq: &CentralizerSeq, max_weight: u32) -> Result<AlgebraTable, Error> {
    if max_weight < 3 {
        return Err(Error::WeightTooSmall {
            min: 3,
            got: max_weight,
        });
    }
    let needed = max_weight - 1;
    if seq.last_weight() < needed {
        return Err(Error::SequenceTooShort {
            weight: max_weight,
            needed,
            last: seq.last_weight(),
        });
    }
    let mut t = AlgebraTable::empty(seq.p);
    for &c in &seq.alphas[..(needed - 1) as usize] {
        t.push(c);
    }
    Ok(t)
}

/// Every Jacobi and antisymmetry residual of the table, weights `3..=N`.
pub fn check_consistency(t: &AlgebraTable) -> ConsistencyReport {
    let mut violations = Vec::new();
    for w in 3..=t.max_weight() {
        t.scan_weight(w, &mut |v| {
            violations.push(v);
            true
        });
    }
    ConsistencyReport {
        violations,
        max_checked_weight: t.max_weight(),
    }
}

/// Whether `C_2, …, C_{N−1}` are the two-step centralizers of some graded
/// algebra of maximal class of dimension `N + 1`.
pub fn valid_prefix(seq: &CentralizerSeq, max_weight: u32) -> Result<(bool, ConsistencyReport), Error> {
    let t = build_algebra(seq, max_weight)?;
    let report = check_consistency(&t);
    Ok((report.is_clean(), report))
}

/// Validity of the whole sequence, i.e. at weight `last_weight + 1`.
pub fn is_valid(seq: &CentralizerSeq) -> bool {
    let mut t = AlgebraTable::empty(seq.p);
    for &c in &seq.alphas {
        t.push(c);
        if !t.top_is_clean() {
            return false;
        }
    }
    true
}

/// The points `c` for which `seq, c` is again a valid prefix, in encoding order.
pub fn extend_prefix(seq: &CentralizerSeq) -> Result<Vec<ProjPoint>, Error> {
    let mut t = AlgebraTable::empty(seq.p);
    for &c in &seq.alphas {
        t.push(c);
        if !t.top_is_clean() {
            return Err(Error::InvalidPrefix(format!(
                "inconsistent at weight {}",
                t.max_weight()
            )));
        }
    }
    Ok(extensions(&mut t))
}

/// Valid next centralizers for a consistent table; leaves `t` unchanged.
pub fn extensions(t: &mut AlgebraTable) -> Vec<ProjPoint> {
    let mut out = Vec::new();
    for c in ProjPoint::all(t.prime()) {
        t.push(c);
        if t.top_is_clean() {
            out.push(c);
        }
        t.pop();
    }
    out
}

/// Reads the centralizer sequence `C_2, …, C_{N−1}` back from the adjoint data.
pub fn two_step_centralizers(t: &AlgebraTable) -> CentralizerSeq {
    let p = t.prime();
    let alphas = (2..t.max_weight())
        .map(|i| {
            let (a, b) = t.adj[i as usize];
            match p.inv(a) {
                Some(ainv) => ProjPoint::Finite(p.mul(b, ainv)),
                None => ProjPoint::Infinity,
            }
        })
        .collect();
    CentralizerSeq { p, alphas }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum JacobiForm {
    /// `Σ (−1)^k C(λ,k) [v z^k y z^{λ−k}]`.
    Front,
    /// `Σ (−1)^k C(λ,k) [v z^{λ−k} y z^k]`, equal to the left side up to `(−1)^λ`.
    Back,
}

/// Both sides of the generalized Jacobi identity for `v = v_i`, as
/// coefficients on `v_{i+λ+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JacobiExpansion {
    pub form: JacobiForm,
    pub lambda: u64,
    /// `[v [y z^λ]]`.
    pub lhs: FpElem,
    /// The binomial sum in the requested form, without the global sign.
    pub rhs: FpElem,
}

impl JacobiExpansion {
    pub fn holds(&self) -> bool {
        match self.form {
            JacobiForm::Front => self.lhs == self.rhs,
            JacobiForm::Back if self.lambda.is_multiple_of(2) => self.lhs == self.rhs,
            JacobiForm::Back => self.lhs == -self.rhs,
        }
    }
}

/// Expands `[v_i [y z^λ]]` with `z = x + y`, directly and as the signed
/// binomial sum of left-normed commutators.
pub fn expand_generalized_jacobi(
    t: &AlgebraTable,
    i: u32,
    lambda: u64,
    form: JacobiForm,
) -> Result<JacobiExpansion, Error> {
    let top = i as u64 + lambda + 1;
    if i < 2 || top > t.max_weight() as u64 {
        return Err(Error::WeightOverflow {
            weight: top,
            max: t.max_weight(),
        });
    }
    let p = t.prime();
    let lam = lambda as u32;
    let zc = |k: u32| p.add(t.adj[k as usize].0, t.adj[k as usize].1);
    let yc = |k: u32| t.adj[k as usize].1;

    // [y z^λ] = s · v_{λ+1} for λ ≥ 1, since [y, z] = [y, x] = v_2.
    let lhs = if lam == 0 {
        yc(i)
    } else {
        let s = (2..=lam).fold(1, |acc, k| p.mul(acc, zc(k)));
        p.mul(s, t.c_raw(i, lam + 1))
    };

    // prefix[k] = product of z-coefficients on v_i .. v_{i+k-1}
    let mut prefix = vec![1u32; lam as usize + 1];
    for k in 1..=lam as usize {
        prefix[k] = p.mul(prefix[k - 1], zc(i + k as u32 - 1));
    }
    // [v_i z^k y z^{λ-k}]
    let word = |k: u32| -> u32 {
        let mut acc = p.mul(prefix[k as usize], yc(i + k));
        for m in (i + k + 1)..=(i + lam) {
            acc = p.mul(acc, zc(m));
        }
        acc
    };
    let mut rhs = 0u32;
    for k in 0..=lam {
        let b = binom_mod_p(lambda, k as u64, p).value();
        let zpos = match form {
            JacobiForm::Front => k,
            JacobiForm::Back => lam - k,
        };
        let term = p.mul(b, word(zpos));
        rhs = if k % 2 == 0 { p.add(rhs, term) } else { p.sub(rhs, term) };
    }
    Ok(JacobiExpansion {
        form,
        lambda,
        lhs: p.elem(lhs as i64),
        rhs: p.elem(rhs as i64),
    })
}

/// Text dump: `p N`, then `adj i a_i b_i` lines, then `br i j c` lines for
/// `2 ≤ i < j`, `i + j ≤ N`.
pub fn dump_table(t: &AlgebraTable) -> String {
    use std::fmt::Write;
    let n = t.max_weight();
    let mut out = String::new();
    writeln!(out, "{} {}", t.prime(), n).unwrap();
    for i in 2..n {
        let (a, b) = t.adj[i as usize];
        writeln!(out, "adj {i} {a} {b}").unwrap();
    }
    for i in 2..n {
        for j in (i + 1)..=(n - i) {
            writeln!(out, "br {i} {j} {}", t.raw(i, j)).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    fn seq(pts: &[&str]) -> CentralizerSeq {
        let p = p3();
        CentralizerSeq::new(p, pts.iter().map(|s| ProjPoint::parse(s, p).unwrap()).collect()).unwrap()
    }

    #[test]
    fn metabelian_brackets_vanish() {
        let s = CentralizerSeq::constant(p3(), ProjPoint::Y, 7);
        let t = build_algebra(&s, 8).unwrap();
        for i in 2..8 {
            for j in 2..8 {
                if i + j <= 8 {
                    assert!(t.c(i, j).unwrap().is_zero());
                }
            }
        }
        assert!(check_consistency(&t).is_clean());
    }

    #[test]
    fn x_in_weight_three_fails() {
        let (ok, report) = valid_prefix(&seq(&["0", "inf"]), 4).unwrap();
        assert!(!ok);
        assert_eq!(report.violations[0].weight, 4);
        let (ok, _) = valid_prefix(&seq(&["0", "inf", "0", "0", "0"]), 7).unwrap();
        assert!(!ok);
    }

    #[test]
    fn x_in_weight_five_fails() {
        let (ok, _) = valid_prefix(&seq(&["0", "0", "0", "inf", "0", "0"]), 8).unwrap();
        assert!(!ok);
    }

    #[test]
    fn too_short() {
        assert!(matches!(
            build_algebra(&seq(&["0", "0"]), 6),
            Err(Error::SequenceTooShort { .. })
        ));
        assert!(matches!(
            build_algebra(&seq(&["0", "0"]), 2),
            Err(Error::WeightTooSmall { .. })
        ));
    }

    #[test]
    fn antisymmetric_convention() {
        let s = seq(&["0", "0", "0", "0", "inf", "0", "0", "inf", "0", "0"]);
        let t = build_algebra(&s, 12).unwrap();
        for i in 2..=10 {
            if 2 * i <= 12 {
                assert!(t.c(i, i).unwrap().is_zero());
            }
            for j in 2..=(12 - i) {
                assert_eq!(t.c(j, i).unwrap(), -t.c(i, j).unwrap());
            }
        }
    }

    #[test]
    fn infinity_adjoint_is_zero_one() {
        let s = seq(&["0", "0", "0", "0", "inf"]);
        let t = build_algebra(&s, 7).unwrap();
        let (a, b) = t.adjoint(6).unwrap();
        assert_eq!((a.value(), b.value()), (0, 1));
        assert_eq!(two_step_centralizers(&t), s);
    }

    #[test]
    fn extensions_at_small_weights() {
        let p = p3();
        let four = CentralizerSeq::constant(p, ProjPoint::Y, 4);
        assert_eq!(extend_prefix(&four).unwrap(), vec![ProjPoint::Y]);
        let five = CentralizerSeq::constant(p, ProjPoint::Y, 5);
        assert_eq!(extend_prefix(&five).unwrap(), ProjPoint::all(p).collect::<Vec<_>>());
        assert!(extend_prefix(&seq(&["0", "inf"])).is_err());
    }

    #[test]
    fn pop_restores_state() {
        let s = seq(&["0", "0", "0", "0", "inf", "0", "0"]);
        let mut t = build_algebra(&s, 9).unwrap();
        let before = t.clone();
        t.push(ProjPoint::Infinity);
        t.pop();
        assert_eq!(t.alphas(), before.alphas());
        assert_eq!(dump_table(&t), dump_table(&before));
    }

    #[test]
    fn lambda_one_is_plain_jacobi() {
        let s = seq(&["0", "0", "0", "0", "inf", "0", "0", "inf", "0", "0", "0", "0", "inf"]);
        let t = build_algebra(&s, 15).unwrap();
        for i in 2..=13 {
            for form in [JacobiForm::Front, JacobiForm::Back] {
                let e = expand_generalized_jacobi(&t, i, 1, form).unwrap();
                assert!(e.holds(), "i={i} {form:?}");
            }
        }
        assert!(expand_generalized_jacobi(&t, 10, 5, JacobiForm::Front).is_err());
    }

    #[test]
    fn dump_format() {
        let t = build_algebra(&seq(&["0", "0", "0"]), 5).unwrap();
        assert_eq!(
            dump_table(&t),
            "3 5\nadj 2 1 0\nadj 3 1 0\nadj 4 1 0\nbr 2 3 0\n"
        );
    }
}
