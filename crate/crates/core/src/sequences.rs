//! Calculus on centralizer sequences: constituents, normalization, inflation,
//! deflation, specialization and the Albert–Frank–Shalev length patterns.
//!
//! Constituents are read relative to the first centralizer `C_2` of the
//! sequence at hand (the "y" of that algebra), so the same code serves
//! normalized sequences and the non-normalized output of inflation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::engine::CentralizerSeq;
use crate::error::Error;
use crate::field::{apply_basis_change, BasisChange, Prime, ProjPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstituentKind {
    /// Length `2q`.
    Long,
    /// Length `q`.
    Short,
    /// Length `2q − p^β` with `0 ≤ β < h`.
    Intermediate { beta: u32 },
}

/// Constituent lengths of a non-metabelian sequence with parameter `q = p^h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstituentDecomposition {
    pub p: Prime,
    pub h: u32,
    /// The centralizer playing the role of `y`.
    pub first: ProjPoint,
    /// Complete constituent lengths; the first one is `2q`.
    pub lengths: Vec<u32>,
    pub tags: Vec<ConstituentKind>,
    /// Centralizer ending each complete constituent.
    pub terminators: Vec<ProjPoint>,
    /// Number of `y` entries after the last complete constituent.
    pub trailing_partial: u32,
}

impl ConstituentDecomposition {
    /// The two-centralizer decomposition (`y = F·y`, every constituent ending
    /// in `F·x`) with the given lengths, tagged and validated.
    pub fn two_centralizer(p: Prime, lengths: Vec<u32>, trailing_partial: u32) -> Result<Self, Error> {
        let first = *lengths
            .first()
            .ok_or_else(|| Error::InvalidArgument("no constituent lengths".into()))?;
        if first % 2 != 0 {
            return Err(Error::BadParameter(first));
        }
        let h = match p.log_exact(first as u64 / 2) {
            Some(h) if h >= 1 => h,
            _ => return Err(Error::BadParameter(first)),
        };
        let mut tags = Vec::with_capacity(lengths.len());
        let mut end = 0;
        for (k, &m) in lengths.iter().enumerate() {
            end += m;
            let tag = if k == 0 {
                ConstituentKind::Long
            } else {
                classify_length(m, p, h).ok_or(Error::BadConstituentLength {
                    end,
                    length: m,
                    q: p.power(h),
                })?
            };
            tags.push(tag);
        }
        let terminators = vec![ProjPoint::X; lengths.len()];
        Ok(ConstituentDecomposition {
            p,
            h,
            first: ProjPoint::Y,
            lengths,
            tags,
            terminators,
            trailing_partial,
        })
    }

    /// The parameter `q = p^h`.
    pub fn q(&self) -> u64 {
        self.p.power(self.h)
    }

    /// Weight at which each complete constituent ends.
    pub fn ends(&self) -> Vec<u32> {
        self.lengths
            .iter()
            .scan(0, |acc, &m| {
                *acc += m;
                Some(*acc)
            })
            .collect()
    }

    /// Last weight covered: the end of the last constituent plus the trailing `y`s.
    pub fn last_weight(&self) -> u32 {
        self.lengths.iter().sum::<u32>() + self.trailing_partial
    }
}

fn classify_length(m: u32, p: Prime, h: u32) -> Option<ConstituentKind> {
    let q = p.power(h);
    let m = m as u64;
    if m == 2 * q {
        return Some(ConstituentKind::Long);
    }
    if m == q {
        return Some(ConstituentKind::Short);
    }
    (0..h)
        .find(|&beta| m == 2 * q - p.power(beta))
        .map(|beta| ConstituentKind::Intermediate { beta })
}

/// Splits a sequence into constituents relative to its first centralizer.
pub fn decompose_constituents(seq: &CentralizerSeq) -> Result<ConstituentDecomposition, Error> {
    let y = *seq.alphas.first().ok_or(Error::Metabelian)?;
    let first_other = seq.alphas.iter().position(|&c| c != y).ok_or(Error::Metabelian)?;
    let p = seq.p;
    let weight = first_other as u32 + 2;
    let h = match weight.is_multiple_of(2).then(|| p.log_exact(weight as u64 / 2)).flatten() {
        Some(h) if h >= 1 => h,
        _ => return Err(Error::BadParameter(weight)),
    };

    let mut lengths = vec![weight];
    let mut tags = vec![ConstituentKind::Long];
    let mut terminators = vec![seq.alphas[first_other]];
    let mut last_end = weight;
    for (k, &c) in seq.alphas.iter().enumerate().skip(first_other + 1) {
        if c == y {
            continue;
        }
        let end = k as u32 + 2;
        let m = end - last_end;
        let tag = classify_length(m, p, h).ok_or(Error::BadConstituentLength {
            end,
            length: m,
            q: p.power(h),
        })?;
        lengths.push(m);
        tags.push(tag);
        terminators.push(c);
        last_end = end;
    }
    Ok(ConstituentDecomposition {
        p,
        h,
        first: y,
        lengths,
        tags,
        terminators,
        trailing_partial: seq.last_weight() - last_end,
    })
}

/// Rebuilds the sequence described by a decomposition: each constituent is a
/// run of `first` closed by its terminator.
pub fn lengths_to_seq(d: &ConstituentDecomposition) -> CentralizerSeq {
    let mut alphas = Vec::with_capacity(d.last_weight() as usize);
    for (k, (&m, &end)) in d.lengths.iter().zip(&d.terminators).enumerate() {
        let run = if k == 0 { m - 2 } else { m - 1 };
        alphas.extend(std::iter::repeat_n(d.first, run as usize));
        alphas.push(end);
    }
    alphas.extend(std::iter::repeat_n(d.first, d.trailing_partial as usize));
    CentralizerSeq { p: d.p, alphas }
}

/// Whether every complete constituent has length divisible by `p`.
pub fn is_inflated(d: &ConstituentDecomposition) -> bool {
    d.lengths.iter().all(|&m| (m as u64).is_multiple_of(d.p.get()))
}

// Row vector r with r·u = 0, scaled so its first nonzero entry is 1.
fn annihilator(c: ProjPoint, p: Prime) -> [u32; 2] {
    let [ux, uy] = c.representative(p);
    let r = [uy, p.neg(ux)];
    let lead = if r[0] != 0 { r[0] } else { r[1] };
    let inv = p.inv(lead).expect("nonzero row");
    [p.mul(r[0], inv), p.mul(r[1], inv)]
}

/// Change of basis of `L_1` sending the first centralizer to `F·y`, the second
/// distinct one to `F·x` and the third distinct one to `F·(y − x)`.
///
/// The matrix is unique up to scalars when three distinct centralizers occur;
/// with fewer, the lexicographically least matrix meeting the existing
/// constraints is used. Either way the returned matrix is the
/// lexicographically least valid one, which is the identity on normalized input.
pub fn normalize(seq: &CentralizerSeq) -> (CentralizerSeq, BasisChange) {
    let p = seq.p;
    let distinct = seq.distinct();
    let g = match distinct.as_slice() {
        [] => BasisChange::identity(p),
        [c1] => {
            let r0 = annihilator(*c1, p);
            // least second row with nonzero determinant
            let r1 = (0..p.get() as u32)
                .flat_map(|a| (0..p.get() as u32).map(move |b| [a, b]))
                .find(|r| p.sub(p.mul(r0[0], r[1]), p.mul(r0[1], r[0])) != 0)
                .expect("some row completes the basis");
            matrix(r0, r1, p)
        }
        [c1, c2, rest @ ..] => {
            let r0 = annihilator(*c1, p);
            let mut r1 = annihilator(*c2, p);
            if let Some(c3) = rest.first() {
                // new coordinates of c3 must be proportional to (-1, 1)
                let u = c3.representative(p);
                let s0 = p.add(p.mul(r0[0], u[0]), p.mul(r0[1], u[1]));
                let s1 = p.add(p.mul(r1[0], u[0]), p.mul(r1[1], u[1]));
                let k = p.mul(p.neg(s0), p.inv(s1).expect("c3 differs from c2"));
                r1 = [p.mul(r1[0], k), p.mul(r1[1], k)];
            }
            matrix(r0, r1, p)
        }
    };
    let alphas = seq.alphas.iter().map(|&c| apply_basis_change(&g, c)).collect();
    (CentralizerSeq { p, alphas }, g)
}

fn matrix(r0: [u32; 2], r1: [u32; 2], p: Prime) -> BasisChange {
    BasisChange::new(
        [[r0[0] as i64, r0[1] as i64], [r1[0] as i64, r1[1] as i64]],
        p,
    )
    .expect("rows are independent")
}

/// Applies a basis change entrywise.
pub fn transform(seq: &CentralizerSeq, g: &BasisChange) -> CentralizerSeq {
    CentralizerSeq {
        p: seq.p,
        alphas: seq.alphas.iter().map(|&c| apply_basis_change(g, c)).collect(),
    }
}

/// The centralizer sequence of the inflation with respect to `F·w`:
/// `C_i` moves to weight `ip` and every other weight carries `w`.
///
/// For input covering `C_2 … C_M` the output covers weights `2 … (M+1)p − 1`;
/// the final `p − 1` entries are the copies of `w` that precede `C_{M+1}`
/// whatever it is.
pub fn inflate(seq: &CentralizerSeq, w: ProjPoint) -> CentralizerSeq {
    let p = seq.p.get() as u32;
    let last = (seq.last_weight() + 1) * p - 1;
    let alphas = (2..=last)
        .map(|k| {
            if k % p == 0 {
                seq.at(k / p).unwrap_or(w)
            } else {
                w
            }
        })
        .collect();
    CentralizerSeq { p: seq.p, alphas }
}

/// One deflation: `C'_i` is the non-`y` entry of the block `C_{ip} … C_{(i+1)p−1}`
/// if there is one, `y` otherwise. Incomplete final blocks are dropped.
pub fn deflate(seq: &CentralizerSeq) -> Result<CentralizerSeq, Error> {
    deflate_blocks(seq, seq.p.get() as u32)
}

/// The `h`-fold deflation.
pub fn deflate_h_times(seq: &CentralizerSeq, h: u32) -> Result<CentralizerSeq, Error> {
    let mut s = seq.clone();
    for _ in 0..h {
        s = deflate(&s)?;
    }
    Ok(s)
}

/// Deflation read off blocks of `size` consecutive centralizers.
pub fn deflate_blocks(seq: &CentralizerSeq, size: u32) -> Result<CentralizerSeq, Error> {
    let Some(&y) = seq.alphas.first() else {
        return Ok(seq.clone());
    };
    let last = seq.last_weight();
    let mut alphas = Vec::new();
    let mut i = 2;
    while (i + 1) * size - 1 <= last {
        let mut value = y;
        for k in i * size..(i + 1) * size {
            let c = seq.at(k).expect("block within range");
            if c != y {
                if value != y && value != c {
                    return Err(Error::MalformedBlock(i * size));
                }
                value = c;
            }
        }
        alphas.push(value);
        i += 1;
    }
    Ok(CentralizerSeq { p: seq.p, alphas })
}

/// Deflation of a sequence whose non-`y` entries all sit at weights divisible
/// by `p`, as is the case for inflated algebras: `C'_i = C_{ip}` for every
/// `ip` covered, including a final incomplete block.
pub fn deflate_sampled(seq: &CentralizerSeq) -> Result<CentralizerSeq, Error> {
    let Some(&y) = seq.alphas.first() else {
        return Ok(seq.clone());
    };
    let p = seq.p.get() as u32;
    if let Some(k) = (2..=seq.last_weight()).find(|&k| k % p != 0 && seq.at(k) != Some(y)) {
        return Err(Error::MalformedBlock(k - k % p));
    }
    let alphas = (2..=seq.last_weight() / p)
        .map(|i| seq.at(i * p).expect("within range"))
        .collect();
    Ok(CentralizerSeq { p: seq.p, alphas })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Keep `y`, send every centralizer outside `{y, w}` to `w`.
    FixYSendToW,
    /// Keep `w`, send every centralizer outside `{y, w}` to `y`.
    FixWSendToY,
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "fix-y" | "fix_y_send_to_w" => Ok(Direction::FixYSendToW),
            "fix-w" | "fix_w_send_to_y" => Ok(Direction::FixWSendToY),
            _ => Err(Error::Parse(format!("unknown direction {s:?}"))),
        }
    }
}

/// Collapses every centralizer other than `F·y` and `w` onto one of them.
pub fn specialize(seq: &CentralizerSeq, w: ProjPoint, direction: Direction) -> Result<CentralizerSeq, Error> {
    if w == ProjPoint::Y {
        return Err(Error::InvalidArgument("w must differ from y".into()));
    }
    if !w.is_valid_for(seq.p) {
        return Err(Error::InvalidArgument(format!("point {w} out of range")));
    }
    let target = match direction {
        Direction::FixYSendToW => w,
        Direction::FixWSendToY => ProjPoint::Y,
    };
    let alphas = seq
        .alphas
        .iter()
        .map(|&c| if c == ProjPoint::Y || c == w { c } else { target })
        .collect();
    Ok(CentralizerSeq { p: seq.p, alphas })
}

/// Parameters of `AFS(a, b, n, p)`; `n = None` is the soluble limit `n = ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AfsParams {
    pub a: u32,
    pub b: u32,
    pub n: Option<u32>,
    pub p: Prime,
}

impl AfsParams {
    pub fn new(a: u32, b: u32, n: Option<u32>, p: Prime) -> Result<Self, Error> {
        if a == 0 || a >= b || n.is_some_and(|n| n < b) {
            return Err(Error::InvalidAfsParams(format!(
                "need 0 < a < b <= n, got a={a} b={b} n={}",
                n.map_or("inf".to_string(), |n| n.to_string())
            )));
        }
        let top = n.unwrap_or(b);
        if p.get().checked_pow(top).is_none_or(|v| v > u32::MAX as u64 / 4) {
            return Err(Error::InvalidAfsParams(format!("p^{top} too large")));
        }
        Ok(AfsParams { a, b, n, p })
    }

    pub fn q(&self) -> u64 {
        self.p.power(self.a)
    }

    pub fn r(&self) -> u64 {
        self.p.power(self.b - self.a)
    }

    /// `p^(n−b)`, `None` for `n = ∞`.
    pub fn s(&self) -> Option<u64> {
        self.n.map(|n| self.p.power(n - self.b))
    }
}

impl fmt::Display for AfsParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.n {
            Some(n) => write!(f, "AFS({}, {}, {}, {})", self.a, self.b, n, self.p),
            None => write!(f, "AFS({}, {}, inf, {})", self.a, self.b, self.p),
        }
    }
}

impl Serialize for AfsParams {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("AfsParams", 4)?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field("b", &self.b)?;
        match self.n {
            Some(n) => st.serialize_field("n", &n)?,
            None => st.serialize_field("n", "inf")?,
        }
        st.serialize_field("p", &self.p)?;
        st.end()
    }
}

/// Iterator over the constituent lengths of an AFS algebra:
/// `2q, (q^{r−2}, 2q−1, (q^{r−2}, 2q)^{s−1})^∞` for finite `n`, and
/// `2q, q^{r−2}, 2q−1, (q^{r−2}, 2q)^∞` for `n = ∞`.
pub fn afs_length_iter(params: AfsParams) -> impl Iterator<Item = u32> {
    let q = params.q() as u32;
    let r = params.r() as u32;
    let s = params.s().map(|s| s as u32);
    // Blocks after the first constituent, each `q^{r-2}` then one closing length.
    let mut block = 0u64;
    let closing = move |block: u64| -> u32 {
        match s {
            Some(s) if block.is_multiple_of(s as u64) => 2 * q - 1,
            Some(_) => 2 * q,
            None if block == 0 => 2 * q - 1,
            None => 2 * q,
        }
    };
    std::iter::once(2 * q).chain(std::iter::from_fn(move || {
        let b = block;
        block += 1;
        Some(std::iter::repeat_n(q, (r - 2) as usize).chain(std::iter::once(closing(b))))
    })
    .flatten())
}

pub fn afs_lengths(params: AfsParams, count: usize) -> Vec<u32> {
    afs_length_iter(params).take(count).collect()
}

/// The normalized two-centralizer sequence of `AFS(a, b, n, p)` covering `C_2 … C_last`.
pub fn afs_sequence(params: AfsParams, last_weight: u32) -> CentralizerSeq {
    let mut lengths = Vec::new();
    let mut covered = 0;
    for m in afs_length_iter(params) {
        if covered + m > last_weight {
            break;
        }
        covered += m;
        lengths.push(m);
    }
    let d = ConstituentDecomposition {
        p: params.p,
        h: params.a,
        first: ProjPoint::Y,
        tags: Vec::new(),
        terminators: vec![ProjPoint::X; lengths.len()],
        lengths,
        trailing_partial: last_weight.saturating_sub(covered.max(1)),
    };
    lengths_to_seq(&d)
}

/// Compact one-line form `p=3:0,0,inf`.
pub fn to_compact(seq: &CentralizerSeq) -> String {
    let body: Vec<String> = seq.alphas.iter().map(|c| c.to_string()).collect();
    format!("p={}:{}", seq.p, body.join(","))
}

pub fn from_compact(s: &str) -> Result<CentralizerSeq, Error> {
    let s = s.trim();
    let rest = s
        .strip_prefix("p=")
        .ok_or_else(|| Error::Parse("compact form must start with p=".into()))?;
    let (p, body) = rest
        .split_once(':')
        .ok_or_else(|| Error::Parse("missing ':' in compact form".into()))?;
    let p = Prime::new(p.trim().parse().map_err(|_| Error::Parse(format!("bad prime {p:?}")))?)?;
    let alphas = if body.trim().is_empty() {
        Vec::new()
    } else {
        body.split(',')
            .map(|t| ProjPoint::parse(t, p))
            .collect::<Result<_, _>>()?
    };
    CentralizerSeq::new(p, alphas)
}

/// The structured record `{"p": 3, "alphas": ["0", …]}` on one line.
pub fn to_record(seq: &CentralizerSeq) -> String {
    serde_json::to_string(seq).expect("sequences always serialize")
}

pub fn from_record(s: &str) -> Result<CentralizerSeq, Error> {
    let seq: CentralizerSeq = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    CentralizerSeq::new(seq.p, seq.alphas)
}

/// Reads either text form.
pub fn parse_sequence(s: &str) -> Result<CentralizerSeq, Error> {
    if s.trim_start().starts_with('{') {
        from_record(s)
    } else {
        from_compact(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    fn yx(s: &str) -> Vec<ProjPoint> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != ',' && *c != '|')
            .map(|c| match c {
                'y' => ProjPoint::Y,
                'x' => ProjPoint::X,
                _ => panic!("{c}"),
            })
            .collect()
    }

    fn afs(a: u32, b: u32, n: Option<u32>) -> AfsParams {
        AfsParams::new(a, b, n, p3()).unwrap()
    }

    #[test]
    fn afs_length_patterns() {
        assert_eq!(afs_lengths(afs(1, 2, Some(2)), 7), [6, 3, 5, 3, 5, 3, 5]);
        assert_eq!(afs_lengths(afs(1, 2, None), 9), [6, 3, 5, 3, 6, 3, 6, 3, 6]);
        assert_eq!(
            afs_lengths(afs(1, 2, Some(3)), 12),
            [6, 3, 5, 3, 6, 3, 6, 3, 5, 3, 6, 3]
        );
        assert_eq!(afs_lengths(afs(1, 3, Some(3)), 10), [6, 3, 3, 3, 3, 3, 3, 3, 5, 3]);
        assert!(AfsParams::new(2, 2, Some(3), p3()).is_err());
        assert!(AfsParams::new(1, 3, Some(2), p3()).is_err());
        assert!(AfsParams::new(0, 1, None, p3()).is_err());
    }

    #[test]
    fn worked_sequence() {
        let d = ConstituentDecomposition::two_centralizer(p3(), vec![6, 3, 5], 0).unwrap();
        let s = lengths_to_seq(&d);
        assert_eq!(s.alphas, yx("yyyyx yyx yyyyx"));
        assert_eq!(decompose_constituents(&s).unwrap(), d);
        let only = ConstituentDecomposition::two_centralizer(p3(), vec![6], 0).unwrap();
        assert_eq!(lengths_to_seq(&only).alphas, yx("yyyyx"));

        let afs = afs_sequence(afs(1, 2, Some(2)), 32);
        let from6: Vec<_> = afs.alphas[4..].to_vec();
        assert_eq!(from6, yx("xyy|xyy|yyx|yyx|yyy|yxy|yxy|yyy|xyy"));
    }

    #[test]
    fn decomposition_of_afs() {
        let s = afs_sequence(afs(1, 2, Some(2)), 61);
        let d = decompose_constituents(&s).unwrap();
        assert_eq!(d.q(), 3);
        assert_eq!(&d.lengths[..7], &[6, 3, 5, 3, 5, 3, 5]);
        assert_eq!(d.tags[2], ConstituentKind::Intermediate { beta: 0 });
        assert_eq!(d.tags[1], ConstituentKind::Short);
        assert_eq!(d.last_weight(), 61);

        let lim = decompose_constituents(&afs_sequence(afs(1, 2, None), 60)).unwrap();
        assert_eq!(&lim.lengths[..9], &[6, 3, 5, 3, 6, 3, 6, 3, 6]);
    }

    #[test]
    fn decomposition_errors() {
        let p = p3();
        let my = CentralizerSeq::constant(p, ProjPoint::Y, 20);
        assert!(matches!(decompose_constituents(&my), Err(Error::Metabelian)));
        let bad = CentralizerSeq::new(p, yx("yyyx")).unwrap();
        assert!(matches!(decompose_constituents(&bad), Err(Error::BadParameter(5))));
        let bad_len = CentralizerSeq::new(p, yx("yyyyx yyyx")).unwrap();
        assert!(matches!(
            decompose_constituents(&bad_len),
            Err(Error::BadConstituentLength { length: 4, .. })
        ));
    }

    #[test]
    fn inflation_multiplies_lengths() {
        let s = afs_sequence(afs(1, 2, Some(2)), 80);
        let inf = inflate(&s, ProjPoint::Y);
        let d = decompose_constituents(&inf).unwrap();
        assert_eq!(d.q(), 9);
        assert_eq!(&d.lengths[..6], &[18, 9, 15, 9, 15, 9]);
        assert!(is_inflated(&d));
        assert!(!is_inflated(&decompose_constituents(&s).unwrap()));
        assert_eq!(deflate(&inf).unwrap(), s);
    }

    #[test]
    fn inflate_layout() {
        let p = p3();
        let s = CentralizerSeq::new(p, yx("yx")).unwrap();
        let w = ProjPoint::Finite(2);
        let inf = inflate(&s, w);
        // weights 2..=8: w w w w C_2 w w C_3 w w
        assert_eq!(inf.last_weight(), 11);
        assert_eq!(inf.at(6), Some(ProjPoint::Y));
        assert_eq!(inf.at(9), Some(ProjPoint::X));
        for k in [2, 3, 4, 5, 7, 8, 10, 11] {
            assert_eq!(inf.at(k), Some(w));
        }
        let my = CentralizerSeq::constant(p, ProjPoint::Y, 30);
        assert!(inflate(&my, ProjPoint::Y).alphas.iter().all(|&c| c == ProjPoint::Y));
    }

    #[test]
    fn worked_deflation() {
        let s = afs_sequence(afs(1, 2, Some(2)), 40);
        let d = deflate(&s).unwrap();
        assert_eq!(&d.alphas[..9], yx("xxxxyxxyx").as_slice());
        assert_eq!(deflate_h_times(&s, 1).unwrap(), d);
        assert_eq!(deflate_h_times(&s, 0).unwrap(), s);
        let my = CentralizerSeq::constant(p3(), ProjPoint::Y, 40);
        assert!(deflate(&my).unwrap().alphas.iter().all(|&c| c == ProjPoint::Y));
    }

    #[test]
    fn deflate_drops_incomplete_block() {
        let s = CentralizerSeq::constant(p3(), ProjPoint::Y, 10);
        // blocks [6..8], [9..11]: only the first is complete
        assert_eq!(deflate(&s).unwrap().last_weight(), 2);
    }

    #[test]
    fn malformed_block() {
        let p = p3();
        let mut a = vec![ProjPoint::Y; 10];
        a[4] = ProjPoint::X; // C_6
        a[5] = ProjPoint::Finite(1); // C_7
        let s = CentralizerSeq::new(p, a).unwrap();
        assert!(matches!(deflate(&s), Err(Error::MalformedBlock(6))));
    }

    #[test]
    fn normalize_cases() {
        let p = p3();
        let n = afs_sequence(afs(1, 2, Some(2)), 30);
        let (out, g) = normalize(&n);
        assert_eq!(out, n);
        assert_eq!(g, BasisChange::identity(p));

        let xfirst = CentralizerSeq::new(p, yx("xxxxy")).unwrap();
        let (out, g) = normalize(&xfirst);
        assert_eq!(g, BasisChange::swap(p));
        assert_eq!(out.alphas, yx("yyyyx"));

        let raw = CentralizerSeq::new(
            p,
            vec![ProjPoint::Finite(2), ProjPoint::Finite(1), ProjPoint::Infinity, ProjPoint::Finite(0)],
        )
        .unwrap();
        let (out, g) = normalize(&raw);
        assert_eq!(
            out.distinct(),
            vec![ProjPoint::Finite(0), ProjPoint::Infinity, ProjPoint::Finite(1), out.alphas[3]]
        );
        assert!(out.is_normalized());
        assert_eq!(normalize(&out).0, out);
        assert_eq!(transform(&raw, &g), out);
    }

    #[test]
    fn specialization_basics() {
        let p = p3();
        let two = afs_sequence(afs(1, 2, Some(2)), 30);
        for d in [Direction::FixYSendToW, Direction::FixWSendToY] {
            assert_eq!(specialize(&two, ProjPoint::X, d).unwrap(), two);
        }
        let three = CentralizerSeq::new(
            p,
            vec![ProjPoint::Y, ProjPoint::X, ProjPoint::Finite(1), ProjPoint::Finite(2)],
        )
        .unwrap();
        let s = specialize(&three, ProjPoint::X, Direction::FixYSendToW).unwrap();
        assert_eq!(s.alphas, yx("yxxx"));
        let s = specialize(&three, ProjPoint::X, Direction::FixWSendToY).unwrap();
        assert_eq!(s.alphas, yx("yxyy"));
        assert!(specialize(&three, ProjPoint::Y, Direction::FixYSendToW).is_err());
    }

    #[test]
    fn text_forms() {
        let s = afs_sequence(afs(1, 2, None), 14);
        let c = to_compact(&s);
        assert_eq!(c, "p=3:0,0,0,0,inf,0,0,inf,0,0,0,0,inf");
        assert_eq!(from_compact(&c).unwrap(), s);
        let r = to_record(&s);
        assert!(r.starts_with("{\"p\":3,\"alphas\":[\"0\""));
        assert_eq!(parse_sequence(&r).unwrap(), s);
        assert_eq!(parse_sequence(&c).unwrap(), s);
        assert!(from_compact("p=4:0").is_err());
        assert!(from_compact("p=3:0,3").is_err());
        assert!(from_record("{\"p\":3,\"alphas\":[\"7\"]}").is_err());
        assert_eq!(from_compact("p=5:").unwrap().len(), 0);
    }
}
