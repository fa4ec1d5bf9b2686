//! Exact cost arithmetic.
//!
//! Every cost and budget handled by the toolkit is a non-negative combination
//! `Σ c_s · s^(a/b) / den` with integer coefficients `c_s` and integer bases
//! `s`. Bases are reduced to their `b`-th-power-free kernel
//! (`d = s·t^b  ⇒  d^(a/b) = t^a · s^(a/b)`), and powers of distinct kernels are
//! linearly independent over the rationals, so equality of two such sums is
//! decided symbolically. Strict comparisons between sums that differ fall back
//! to fixed-point interval bounds with `FRACTION_BITS` fractional bits; when
//! those intervals overlap the comparison is reported as
//! [`Verdict::Indeterminate`] and left to the caller.
//!
//! For `b = 1` every kernel is `1`, the sum is a plain rational, and all
//! comparisons are exact.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bits::BinaryString;
use crate::error::{HdcError, Result};
use crate::exponent::PExponent;
use crate::instance::BinaryStringSet;

/// Fractional bits used for interval bounds on irrational powers.
pub const FRACTION_BITS: u32 = 192;

/// Bases at or below this are factored completely when computing kernels.
const FULL_FACTOR_LIMIT: u64 = 1 << 40;

/// Outcome of comparing a cost against a budget (`cost ≤ budget` semantics).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Below,
    Above,
    Indeterminate,
}

/// Splits `base` into `(kernel, root)` with `base = kernel · root^b`.
fn kernel_split(base: u64, b: u32) -> (u64, u64) {
    if base == 0 {
        return (0, 0);
    }
    if b == 1 || base == 1 {
        return (1, base);
    }
    let mut kernel = 1u64;
    let mut root = 1u64;
    let mut rest = base;
    let limit = if base <= FULL_FACTOR_LIMIT { u64::MAX } else { 1 << 20 };
    let mut q = 2u64;
    while q <= limit && q.saturating_mul(q) <= rest {
        if rest.is_multiple_of(q) {
            let mut e = 0u32;
            while rest.is_multiple_of(q) {
                rest /= q;
                e += 1;
            }
            root *= q.pow(e / b);
            kernel *= q.pow(e % b);
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        // Either prime, or (for huge bases) a product of large primes. Pull out
        // a perfect b-th power if there is one; otherwise keep it in the kernel.
        let r = BigUint::from(rest).nth_root(b).to_u64().unwrap_or(0);
        if r > 1 && r.checked_pow(b) == Some(rest) {
            root *= r;
        } else {
            kernel *= rest;
        }
    }
    (kernel, root)
}

/// `Σ coeff_s · kernel_s^p / denom` with non-negative integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSum {
    p: PExponent,
    terms: BTreeMap<u64, BigUint>,
    denom: BigUint,
}

impl PowerSum {
    pub fn zero(p: PExponent) -> Self {
        PowerSum { p, terms: BTreeMap::new(), denom: BigUint::one() }
    }

    pub fn exponent(&self) -> PExponent {
        self.p
    }

    /// A non-negative rational value.
    pub fn from_rational(p: PExponent, value: &BigRational) -> Result<Self> {
        if value.is_negative() {
            return Err(HdcError::InvalidBudget(format!("{value} is negative")));
        }
        let mut s = Self::zero(p);
        if !value.is_zero() {
            s.terms.insert(1, value.numer().magnitude().clone());
            s.denom = value.denom().magnitude().clone();
        }
        Ok(s)
    }

    /// `coeff · base^p`.
    pub fn power_term(p: PExponent, base: u64, coeff: impl Into<BigUint>) -> Self {
        let mut s = Self::zero(p);
        s.add_power(base, coeff.into());
        s
    }

    /// Adds `coeff · base^p` in place.
    pub fn add_power(&mut self, base: u64, coeff: BigUint) {
        if base == 0 || coeff.is_zero() {
            return;
        }
        let (kernel, root) = kernel_split(base, self.p.denom());
        let scaled = coeff * BigUint::from(root).pow(self.p.numer()) * &self.denom;
        *self.terms.entry(kernel).or_insert_with(BigUint::zero) += scaled;
    }

    pub fn add(&self, other: &PowerSum) -> PowerSum {
        assert_eq!(self.p, other.p, "adding power sums with different exponents");
        let denom = self.denom.lcm(&other.denom);
        let fa = &denom / &self.denom;
        let fb = &denom / &other.denom;
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            *terms.entry(*k).or_insert_with(BigUint::zero) += c * &fa;
        }
        for (k, c) in &other.terms {
            *terms.entry(*k).or_insert_with(BigUint::zero) += c * &fb;
        }
        let mut out = PowerSum { p: self.p, terms, denom };
        out.normalize();
        out
    }

    /// Multiplies by a non-negative integer.
    pub fn scale(&self, factor: &BigUint) -> PowerSum {
        let mut out = self.clone();
        if factor.is_zero() {
            return PowerSum::zero(self.p);
        }
        for c in out.terms.values_mut() {
            *c *= factor;
        }
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        if self.terms.is_empty() {
            self.denom = BigUint::one();
            return;
        }
        let mut g = self.denom.clone();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                return;
            }
        }
        for c in self.terms.values_mut() {
            *c /= &g;
        }
        self.denom /= &g;
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(Zero::is_zero)
    }

    /// The value as a rational, when no irrational kernel is present.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.terms.keys().any(|&k| k != 1) {
            return None;
        }
        let num = self.terms.get(&1).cloned().unwrap_or_default();
        Some(BigRational::new(BigInt::from(num), BigInt::from(self.denom.clone())))
    }

    /// The value as an integer, when it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        let r = self.as_rational()?;
        r.is_integer().then(|| r.to_integer())
    }

    /// Rigorous bounds `lo ≤ value ≤ hi` with `FRACTION_BITS` of fixed-point precision.
    pub fn bounds(&self) -> (BigRational, BigRational) {
        self.bounds_with(FRACTION_BITS)
    }

    pub fn bounds_with(&self, fraction_bits: u32) -> (BigRational, BigRational) {
        let (a, b) = (self.p.numer(), self.p.denom());
        let mut lo = BigUint::zero();
        let mut hi = BigUint::zero();
        for (&k, c) in &self.terms {
            if k == 1 {
                let v = c << fraction_bits;
                lo += &v;
                hi += v;
                continue;
            }
            let radicand = BigUint::from(k).pow(a) << (fraction_bits as usize * b as usize);
            let r = radicand.nth_root(b);
            let exact = num_traits::Pow::pow(&r, b) == radicand;
            lo += c * &r;
            hi += c * (r + if exact { 0u32 } else { 1u32 });
        }
        let scale = BigInt::from(self.denom.clone() << fraction_bits);
        (
            BigRational::new(BigInt::from(lo), scale.clone()),
            BigRational::new(BigInt::from(hi), scale),
        )
    }

    /// Fast floating-point estimate.
    pub fn to_f64(&self) -> f64 {
        let p = self.p.as_f64();
        let d = self.denom.to_f64().unwrap_or(f64::INFINITY);
        self.terms
            .iter()
            .map(|(&k, c)| c.to_f64().unwrap_or(f64::INFINITY) * (k as f64).powf(p))
            .sum::<f64>()
            / d
    }

    /// Exact equality of values, independent of representation.
    pub fn same_value(&self, other: &PowerSum) -> bool {
        self.compare(other) == Verdict::Below && other.compare(self) == Verdict::Below
    }

    /// Three-valued test of `self ≤ other`.
    pub fn compare(&self, other: &PowerSum) -> Verdict {
        assert_eq!(self.p, other.p, "comparing power sums with different exponents");
        if let (Some(x), Some(y)) = (self.as_rational(), other.as_rational()) {
            return if x <= y { Verdict::Below } else { Verdict::Above };
        }
        // Difference over a common denominator, kernel by kernel.
        let denom = self.denom.lcm(&other.denom);
        let fa = BigInt::from(&denom / &self.denom);
        let fb = BigInt::from(&denom / &other.denom);
        let mut diff: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (k, c) in &self.terms {
            *diff.entry(*k).or_insert_with(BigInt::zero) += BigInt::from(c.clone()) * &fa;
        }
        for (k, c) in &other.terms {
            *diff.entry(*k).or_insert_with(BigInt::zero) -= BigInt::from(c.clone()) * &fb;
        }
        diff.retain(|_, c| !c.is_zero());
        if diff.values().all(|c| c.is_negative()) {
            return Verdict::Below;
        }
        if diff.values().all(|c| c.is_positive()) {
            return Verdict::Above;
        }
        let split = |sign: Sign| {
            let mut s = PowerSum::zero(self.p);
            s.denom = denom.clone();
            for (k, c) in &diff {
                if c.sign() == sign {
                    s.terms.insert(*k, c.magnitude().clone());
                }
            }
            s
        };
        let (pos_lo, pos_hi) = split(Sign::Plus).bounds();
        let (neg_lo, neg_hi) = split(Sign::Minus).bounds();
        if pos_hi <= neg_lo {
            Verdict::Below
        } else if pos_lo > neg_hi {
            Verdict::Above
        } else {
            Verdict::Indeterminate
        }
    }
}

impl fmt::Display for PowerSum {
    /// Canonical text: a rational (`56`, `25/2`) or a sum of terms
    /// `c*s^p` / `c/d*s^p`, rational part first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let d = BigInt::from(self.denom.clone());
        let mut first = true;
        for (&k, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let coeff = BigRational::new(BigInt::from(c.clone()), d.clone());
            if k == 1 {
                write!(f, "{coeff}")?;
            } else {
                write!(f, "{coeff}*{k}^p")?;
            }
        }
        Ok(())
    }
}

/// Parses an unsigned decimal or fraction: `12`, `12.5`, `25/2`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || HdcError::InvalidBudget(format!("{t:?} is not a non-negative rational"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() || n.is_negative() || d.is_negative() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (int, frac) = t.split_once('.').unwrap_or((t, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = BigInt::from(10u32).pow(frac.len() as u32);
    Ok(BigRational::new(digits, scale))
}

impl PowerSum {
    /// Parses the canonical text produced by `Display`.
    pub fn parse(p: PExponent, text: &str) -> Result<Self> {
        let mut sum = PowerSum::zero(p);
        if text.trim().is_empty() {
            return Err(HdcError::InvalidBudget("empty budget".into()));
        }
        for term in text.split('+') {
            let term = term.trim();
            let piece = match term.strip_suffix("^p") {
                None => PowerSum::from_rational(p, &parse_rational(term)?)?,
                Some(body) => {
                    let (coeff, base) = match body.rsplit_once('*') {
                        Some((c, b)) => (parse_rational(c)?, b),
                        None => (BigRational::one(), body),
                    };
                    let base: u64 = base
                        .trim()
                        .parse()
                        .map_err(|_| HdcError::InvalidBudget(format!("bad base in term {term:?}")))?;
                    let mut s = PowerSum::power_term(p, base, coeff.numer().magnitude().clone());
                    s.denom = coeff.denom().magnitude().clone();
                    s.normalize();
                    s
                }
            };
            sum = sum.add(&piece);
        }
        Ok(sum)
    }
}

/// Exact value of `Σ_i d_i^p` for a candidate centroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostValue {
    sum: PowerSum,
}

impl CostValue {
    pub fn from_distances(distances: &[usize], p: PExponent) -> Self {
        let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
        for &d in distances {
            *counts.entry(d).or_default() += 1;
        }
        let mut sum = PowerSum::zero(p);
        for (d, c) in counts {
            sum.add_power(d as u64, BigUint::from(c));
        }
        sum.normalize();
        CostValue { sum }
    }

    pub fn from_power_sum(sum: PowerSum) -> Self {
        CostValue { sum }
    }

    pub fn power_sum(&self) -> &PowerSum {
        &self.sum
    }

    pub fn exponent(&self) -> PExponent {
        self.sum.p
    }

    /// Exact integer cost; available whenever `b = 1`.
    pub fn exact_part(&self) -> Option<BigInt> {
        self.sum.as_integer()
    }

    /// Midpoint estimate and an absolute error bound covering the true value.
    pub fn approx_part(&self) -> (f64, f64) {
        let (lo, hi) = self.sum.bounds();
        let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
        let half = (&hi - &lo) / BigRational::from_integer(BigInt::from(2));
        let mid_f = mid.to_f64().unwrap_or(f64::INFINITY);
        // Widen by the f64 rounding of the midpoint itself.
        let err = half.to_f64().unwrap_or(f64::INFINITY) + mid_f.abs() * f64::EPSILON;
        (mid_f, err)
    }

    pub fn to_f64(&self) -> f64 {
        match self.sum.as_rational() {
            Some(r) => r.to_f64().unwrap_or(f64::INFINITY),
            None => self.approx_part().0,
        }
    }

    /// The p-norm `(Σ d_i^p)^(1/p)`.
    pub fn norm(&self) -> f64 {
        self.to_f64().powf(1.0 / self.sum.p.as_f64())
    }

    pub fn is_exact(&self) -> bool {
        self.sum.as_rational().is_some()
    }

    pub fn compare(&self, other: &CostValue) -> Verdict {
        self.sum.compare(&other.sum)
    }
}

impl fmt::Display for CostValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sum)
    }
}

/// The bound `k`, stored canonically as the p-th-power budget `k^p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostBudget {
    power_budget: PowerSum,
    norm_value: Option<String>,
}

impl CostBudget {
    pub fn from_power_integer(p: PExponent, value: impl Into<BigUint>) -> Self {
        let v: BigUint = value.into();
        CostBudget {
            power_budget: PowerSum::from_rational(p, &BigRational::from_integer(BigInt::from(v))).unwrap(),
            norm_value: None,
        }
    }

    pub fn from_power_rational(p: PExponent, value: &BigRational) -> Result<Self> {
        Ok(CostBudget { power_budget: PowerSum::from_rational(p, value)?, norm_value: None })
    }

    pub fn from_power_sum(sum: PowerSum) -> Self {
        CostBudget { power_budget: sum, norm_value: None }
    }

    /// Budget given as the norm bound `k` (decimal or fraction).
    pub fn from_norm(p: PExponent, k: &str) -> Result<Self> {
        let r = parse_rational(k)?;
        let (a, b) = (p.numer(), p.denom());
        let num = r.numer().magnitude().clone();
        let den = r.denom().magnitude().clone();
        // (u/v)^(a/b) = (u·v^(b-1))^(a/b) / v^a
        let base = &num * num_traits::Pow::pow(&den, b - 1);
        let base = base
            .to_u64()
            .ok_or_else(|| HdcError::InvalidBudget(format!("k = {k} is too large; give the power budget instead")))?;
        let mut sum = PowerSum::power_term(p, base, 1u32);
        sum.denom = den.pow(a);
        sum.normalize();
        Ok(CostBudget { power_budget: sum, norm_value: Some(k.trim().to_string()) })
    }

    /// Parses the canonical power-budget text (`56`, `25/2`, `6*6^p + 24*12^p`).
    pub fn parse_power(p: PExponent, text: &str) -> Result<Self> {
        Ok(CostBudget { power_budget: PowerSum::parse(p, text)?, norm_value: None })
    }

    pub fn power_budget(&self) -> &PowerSum {
        &self.power_budget
    }

    pub fn norm_value(&self) -> Option<&str> {
        self.norm_value.as_deref()
    }

    pub fn exponent(&self) -> PExponent {
        self.power_budget.p
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.power_budget.as_rational()
    }

    pub fn to_f64(&self) -> f64 {
        self.power_budget.to_f64()
    }

    /// The norm bound `k = budget^(1/p)` as a float.
    pub fn norm_f64(&self) -> f64 {
        self.to_f64().powf(1.0 / self.power_budget.p.as_f64())
    }

    /// Three-valued test of `c^p ≤ budget` for a single integer `c`.
    pub fn admits_power(&self, c: u64) -> Verdict {
        PowerSum::power_term(self.power_budget.p, c, 1u32).compare(&self.power_budget)
    }

    /// Whether `c^p` equals the budget exactly (decided symbolically).
    pub fn equals_power(&self, c: u64) -> bool {
        let term = PowerSum::power_term(self.power_budget.p, c, 1u32);
        term.compare(&self.power_budget) == Verdict::Below && self.power_budget.compare(&term) == Verdict::Below
    }

    /// Three-valued test of `c^p · count ≤ budget`.
    pub fn admits_scaled_power(&self, c: u64, count: u64) -> Verdict {
        PowerSum::power_term(self.power_budget.p, c, count).compare(&self.power_budget)
    }

    /// Three-valued test of `value ≤ budget` for a plain integer.
    pub fn admits_integer(&self, value: u64) -> Verdict {
        let v = PowerSum::from_rational(self.power_budget.p, &BigRational::from_integer(value.into())).unwrap();
        v.compare(&self.power_budget)
    }
}

impl fmt::Display for CostBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.power_budget)
    }
}

impl FromStr for Verdict {
    type Err = HdcError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "below" => Ok(Verdict::Below),
            "above" => Ok(Verdict::Above),
            "indeterminate" => Ok(Verdict::Indeterminate),
            _ => Err(HdcError::InvalidArgument(format!("unknown verdict {s:?}"))),
        }
    }
}

/// `Σ_{s ∈ S} hd(candidate, s)^p`.
pub fn p_power_cost(candidate: &BinaryString, set: &BinaryStringSet, p: PExponent) -> Result<CostValue> {
    Ok(CostValue::from_distances(&set.distances(candidate)?, p))
}

/// Compares a cost against a budget with `≤` semantics.
pub fn compare_cost(cost: &CostValue, budget: &CostBudget) -> Verdict {
    assert_eq!(cost.exponent(), budget.exponent(), "cost and budget use different exponents");
    cost.sum.compare(&budget.power_budget)
}
