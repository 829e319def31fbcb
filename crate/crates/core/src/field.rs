//! Arithmetic over the prime field F_p (p odd), binomial coefficients mod p
//! via Lucas' theorem, and the projective line P¹(F_p) with the action of
//! invertible 2×2 matrices.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An odd prime. Residues modulo it fit in `u32`; products are formed in `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self, Error> {
        if p < 3 || p > u32::MAX as u64 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0 as u64
    }

    #[inline]
    pub fn reduce(self, n: i64) -> u32 {
        n.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        if s >= self.0 as u64 {
            (s - self.0 as u64) as u32
        } else {
            s as u32
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + (self.0 - b)
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.0) {
            None
        } else {
            Some(self.pow(a, self.get() - 2))
        }
    }

    /// `h` such that `n = p^h`, if `n` is a power of `p` (including `p^0 = 1`).
    pub fn log_exact(self, mut n: u64) -> Option<u32> {
        if n == 0 {
            return None;
        }
        let mut h = 0;
        while n.is_multiple_of(self.get()) {
            n /= self.get();
            h += 1;
        }
        (n == 1).then_some(h)
    }

    pub fn power(self, e: u32) -> u64 {
        self.get().pow(e)
    }

    pub fn elem(self, v: i64) -> FpElem {
        FpElem {
            value: self.reduce(v),
            p: self,
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Prime {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(self.get())
    }
}

impl<'de> Deserialize<'de> for Prime {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let p = u64::deserialize(d)?;
        Prime::new(p).map_err(serde::de::Error::custom)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: u32,
    p: Prime,
}

impl FpElem {
    pub fn zero(p: Prime) -> Self {
        FpElem { value: 0, p }
    }

    pub fn one(p: Prime) -> Self {
        FpElem { value: 1, p }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn prime(self) -> Prime {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Self> {
        self.p.inv(self.value).map(|value| FpElem { value, p: self.p })
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FpElem {
    type Output = FpElem;
    fn add(self, rhs: FpElem) -> FpElem {
        debug_assert_eq!(self.p, rhs.p);
        FpElem {
            value: self.p.add(self.value, rhs.value),
            p: self.p,
        }
    }
}

impl Sub for FpElem {
    type Output = FpElem;
    fn sub(self, rhs: FpElem) -> FpElem {
        debug_assert_eq!(self.p, rhs.p);
        FpElem {
            value: self.p.sub(self.value, rhs.value),
            p: self.p,
        }
    }
}

impl Mul for FpElem {
    type Output = FpElem;
    fn mul(self, rhs: FpElem) -> FpElem {
        debug_assert_eq!(self.p, rhs.p);
        FpElem {
            value: self.p.mul(self.value, rhs.value),
            p: self.p,
        }
    }
}

impl Neg for FpElem {
    type Output = FpElem;
    fn neg(self) -> FpElem {
        FpElem {
            value: self.p.neg(self.value),
            p: self.p,
        }
    }
}

/// Base-`p` digits of `n`, least significant first. `0` yields `[0]`.
pub fn padic_digits(mut n: u64, p: Prime) -> Vec<u64> {
    if n == 0 {
        return vec![0];
    }
    let mut digits = Vec::new();
    while n > 0 {
        digits.push(n % p.get());
        n /= p.get();
    }
    digits
}

/// `C(λ, μ) mod p` as a product of digit-wise binomials (Lucas).
pub fn binom_mod_p(lambda: u64, mu: u64, p: Prime) -> FpElem {
    if mu > lambda {
        return FpElem::zero(p);
    }
    let pp = p.get();
    let (mut l, mut m) = (lambda, mu);
    let mut acc = 1u32;
    while m > 0 {
        let (ld, md) = (l % pp, m % pp);
        if md > ld {
            return FpElem::zero(p);
        }
        acc = p.mul(acc, small_binom(ld, md, p));
        l /= pp;
        m /= pp;
    }
    FpElem { value: acc, p }
}

// C(n, k) mod p for 0 <= k <= n < p, as n!/(k!(n-k)!) with inverses.
fn small_binom(n: u64, k: u64, p: Prime) -> u32 {
    let k = k.min(n - k);
    let mut num = 1u32;
    let mut den = 1u32;
    for i in 0..k {
        num = p.mul(num, ((n - i) % p.get()) as u32);
        den = p.mul(den, ((i + 1) % p.get()) as u32);
    }
    p.mul(num, p.inv(den).expect("k < p so k! is a unit"))
}

/// A point of P¹(F_p). `Finite(α)` stands for the line `F·(y − αx)` of
/// `L_1 = F x ⊕ F y`, `Infinity` for `F·x`.
///
/// Points order as `0 < 1 < … < p−1 < inf`, matching their text encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjPoint {
    Finite(u32),
    Infinity,
}

impl ProjPoint {
    /// The first generator's line `F·y`.
    pub const Y: ProjPoint = ProjPoint::Finite(0);
    /// The second generator's line `F·x`.
    pub const X: ProjPoint = ProjPoint::Infinity;

    pub fn finite(alpha: i64, p: Prime) -> Self {
        ProjPoint::Finite(p.reduce(alpha))
    }

    /// All `p + 1` points in encoding order.
    pub fn all(p: Prime) -> impl Iterator<Item = ProjPoint> {
        (0..p.0)
            .map(ProjPoint::Finite)
            .chain(std::iter::once(ProjPoint::Infinity))
    }

    pub fn is_valid_for(self, p: Prime) -> bool {
        match self {
            ProjPoint::Finite(a) => a < p.0,
            ProjPoint::Infinity => true,
        }
    }

    /// Coordinates `(x, y)` of a spanning vector: `(−α, 1)` or `(1, 0)`.
    pub fn representative(self, p: Prime) -> [u32; 2] {
        match self {
            ProjPoint::Finite(a) => [p.neg(a), 1],
            ProjPoint::Infinity => [1, 0],
        }
    }

    /// The point spanned by a nonzero vector with coordinates `(x, y)`.
    pub fn from_vector(v: [u32; 2], p: Prime) -> Option<Self> {
        match v {
            [0, 0] => None,
            [_, 0] => Some(ProjPoint::Infinity),
            [vx, vy] => {
                let inv = p.inv(vy)?;
                Some(ProjPoint::Finite(p.neg(p.mul(vx, inv))))
            }
        }
    }

    pub fn parse(s: &str, p: Prime) -> Result<Self, Error> {
        let pt: ProjPoint = s.parse()?;
        if !pt.is_valid_for(p) {
            return Err(Error::Parse(format!("point {s} out of range for p = {p}")));
        }
        Ok(pt)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(a) => write!(f, "{a}"),
            ProjPoint::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for ProjPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "inf" {
            return Ok(ProjPoint::Infinity);
        }
        s.parse::<u32>()
            .map(ProjPoint::Finite)
            .map_err(|_| Error::Parse(format!("bad point encoding {s:?}")))
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An invertible 2×2 matrix over F_p acting on coordinate columns `(x, y)`.
///
/// Rows are `[[m00, m01], [m10, m11]]`; the new coordinates of a vector `v`
/// are `M·v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisChange {
    m: [[u32; 2]; 2],
    p: Prime,
}

impl BasisChange {
    pub fn new(m: [[i64; 2]; 2], p: Prime) -> Result<Self, Error> {
        let m = [
            [p.reduce(m[0][0]), p.reduce(m[0][1])],
            [p.reduce(m[1][0]), p.reduce(m[1][1])],
        ];
        let g = BasisChange { m, p };
        if g.det() == 0 {
            return Err(Error::SingularBasisChange);
        }
        Ok(g)
    }

    pub fn identity(p: Prime) -> Self {
        BasisChange {
            m: [[1, 0], [0, 1]],
            p,
        }
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap(p: Prime) -> Self {
        BasisChange {
            m: [[0, 1], [1, 0]],
            p,
        }
    }

    pub fn matrix(&self) -> [[u32; 2]; 2] {
        self.m
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn det(&self) -> u32 {
        let p = self.p;
        p.sub(p.mul(self.m[0][0], self.m[1][1]), p.mul(self.m[0][1], self.m[1][0]))
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &BasisChange) -> BasisChange {
        let p = self.p;
        let mut m = [[0u32; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = p.add(
                    p.mul(self.m[i][0], other.m[0][j]),
                    p.mul(self.m[i][1], other.m[1][j]),
                );
            }
        }
        BasisChange { m, p }
    }

    pub fn inverse(&self) -> BasisChange {
        let p = self.p;
        let d = p.inv(self.det()).expect("basis change is invertible");
        let [[a, b], [c, e]] = self.m;
        BasisChange {
            m: [
                [p.mul(e, d), p.mul(p.neg(b), d)],
                [p.mul(p.neg(c), d), p.mul(a, d)],
            ],
            p,
        }
    }

    pub fn apply_vector(&self, v: [u32; 2]) -> [u32; 2] {
        let p = self.p;
        [
            p.add(p.mul(self.m[0][0], v[0]), p.mul(self.m[0][1], v[1])),
            p.add(p.mul(self.m[1][0], v[0]), p.mul(self.m[1][1], v[1])),
        ]
    }

    /// Every invertible matrix, in lexicographic order of `(m00, m01, m10, m11)`.
    pub fn all(p: Prime) -> impl Iterator<Item = BasisChange> {
        let q = p.0;
        (0..q.pow(4)).filter_map(move |k| {
            let m = [[k / (q * q * q), (k / (q * q)) % q], [(k / q) % q, k % q]];
            let g = BasisChange { m, p };
            (g.det() != 0).then_some(g)
        })
    }
}

impl PartialOrd for BasisChange {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BasisChange {
    fn cmp(&self, other: &Self) -> Ordering {
        self.m.cmp(&other.m)
    }
}

/// Image of the line `c` under `g`, expressed in the new coordinates.
pub fn apply_basis_change(g: &BasisChange, c: ProjPoint) -> ProjPoint {
    let v = g.apply_vector(c.representative(g.p));
    ProjPoint::from_vector(v, g.p).expect("invertible map sends nonzero vectors to nonzero vectors")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn rejects_even_and_composite() {
        for bad in [0, 1, 2, 4, 9, 15, 21] {
            assert!(Prime::new(bad).is_err(), "{bad}");
        }
        for good in [3, 5, 7, 11, 101] {
            assert!(Prime::new(good).is_ok(), "{good}");
        }
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(binom_mod_p(8, 5, p(3)).value(), 2);
        assert_eq!(binom_mod_p(7, 2, p(3)).value(), 0);
        for n in [0, 1, 17, 10_000] {
            assert_eq!(binom_mod_p(n, 0, p(5)).value(), 1);
        }
        assert_eq!(binom_mod_p(3, 7, p(3)).value(), 0);
    }

    #[test]
    fn digits() {
        assert_eq!(padic_digits(8, p(3)), vec![2, 2]);
        assert_eq!(padic_digits(0, p(5)), vec![0]);
        assert_eq!(padic_digits(27, p(3)), vec![0, 0, 0, 1]);
        assert_eq!(padic_digits(u64::MAX, p(3)).len(), 41);
    }

    #[test]
    fn alternating_row_of_q_minus_one() {
        for pp in [3u64, 5, 7] {
            let pr = p(pp);
            for e in 1..=3 {
                let q = pp.pow(e);
                for i in 0..q {
                    let b = binom_mod_p(q - 1, i, pr);
                    let signed = if i % 2 == 0 { b } else { -b };
                    assert_eq!(signed.value(), 1, "p={pp} q={q} i={i}");
                }
            }
        }
    }

    #[test]
    fn alternating_sum_vanishes() {
        for pp in [3u64, 5, 7] {
            let pr = p(pp);
            for n in 1..200u64 {
                let mut s = FpElem::zero(pr);
                for i in 0..=n {
                    let b = binom_mod_p(n, i, pr);
                    s = if i % 2 == 0 { s + b } else { s - b };
                }
                assert!(s.is_zero(), "p={pp} n={n}");
            }
        }
    }

    #[test]
    fn point_encoding() {
        let pr = p(5);
        let pts: Vec<String> = ProjPoint::all(pr).map(|c| c.to_string()).collect();
        assert_eq!(pts, ["0", "1", "2", "3", "4", "inf"]);
        for c in ProjPoint::all(pr) {
            assert_eq!(ProjPoint::parse(&c.to_string(), pr).unwrap(), c);
        }
        assert!(ProjPoint::parse("5", pr).is_err());
        assert!(ProjPoint::parse("x", pr).is_err());
        assert!(ProjPoint::Finite(4) < ProjPoint::Infinity);
    }

    #[test]
    fn swap_exchanges_x_and_y() {
        let pr = p(3);
        let s = BasisChange::swap(pr);
        assert_eq!(apply_basis_change(&s, ProjPoint::Finite(0)), ProjPoint::Infinity);
        assert_eq!(apply_basis_change(&s, ProjPoint::Infinity), ProjPoint::Finite(0));
        let id = BasisChange::identity(pr);
        for c in ProjPoint::all(pr) {
            assert_eq!(apply_basis_change(&id, c), c);
        }
    }

    #[test]
    fn singular_rejected() {
        assert!(matches!(
            BasisChange::new([[1, 2], [2, 4]], p(3)),
            Err(Error::SingularBasisChange)
        ));
    }

    #[test]
    fn action_is_a_group_action() {
        let pr = p(3);
        let all: Vec<_> = BasisChange::all(pr).collect();
        assert_eq!(all.len(), 48);
        for g in &all {
            let mut image: Vec<_> = ProjPoint::all(pr).map(|c| apply_basis_change(g, c)).collect();
            image.sort();
            assert_eq!(image, ProjPoint::all(pr).collect::<Vec<_>>());
            assert_eq!(g.compose(&g.inverse()), BasisChange::identity(pr));
        }
        for g in all.iter().step_by(5) {
            for h in all.iter().step_by(7) {
                let gh = g.compose(h);
                for c in ProjPoint::all(pr) {
                    assert_eq!(
                        apply_basis_change(&gh, c),
                        apply_basis_change(g, apply_basis_change(h, c))
                    );
                }
            }
        }
    }
}
