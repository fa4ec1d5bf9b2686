//! Scalar types usable as the inner-loop cost accumulator of the solvers.
//!
//! Integer and rational scalars are exact but only represent `d^p` for integral
//! `p`; float scalars cover every rational `p` and are backed by a rigorous
//! re-check through [`CostValue`] whenever a comparison falls within their
//! rounding slack.

use std::fmt::Debug;
use std::ops::Add;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, Pow, ToPrimitive, Zero};

use crate::cost::{CostBudget, CostValue, Verdict};
use crate::exponent::PExponent;

pub trait CostScalar: Clone + PartialOrd + Zero + Add<Output = Self> + Debug + Send + Sync + 'static {
    /// Whether sums in this scalar are exact.
    const EXACT: bool;

    /// Relative band around a budget inside which a float comparison is re-done exactly.
    const RELATIVE_SLACK: f64 = 0.0;

    /// `d^p`, or `None` when it is not representable (overflow, or `b > 1` for exact scalars).
    fn distance_power(d: u64, p: PExponent) -> Option<Self>;

    fn checked_sum(&self, other: &Self) -> Option<Self> {
        Some(self.clone() + other.clone())
    }

    fn to_f64(&self) -> f64;

    /// For exact scalars: the largest value `v` such that an attainable cost `c`
    /// satisfies `c ≤ budget ⇔ c ≤ v`.
    fn exact_threshold(_budget: &BigRational) -> Option<Self> {
        None
    }
}

macro_rules! impl_unsigned {
    ($t:ty) => {
        impl CostScalar for $t {
            const EXACT: bool = true;

            fn distance_power(d: u64, p: PExponent) -> Option<Self> {
                if !p.is_integral() {
                    return None;
                }
                <$t>::try_from(d).ok()?.checked_pow(p.numer())
            }

            fn checked_sum(&self, other: &Self) -> Option<Self> {
                self.checked_add(*other)
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn exact_threshold(budget: &BigRational) -> Option<Self> {
                let floor = budget.floor().to_integer();
                Some(floor.to_string().parse::<$t>().unwrap_or(<$t>::MAX))
            }
        }
    };
}

impl_unsigned!(u64);
impl_unsigned!(u128);

impl CostScalar for BigInt {
    const EXACT: bool = true;

    fn distance_power(d: u64, p: PExponent) -> Option<Self> {
        p.is_integral().then(|| BigInt::from(d).pow(p.numer()))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::INFINITY)
    }

    fn exact_threshold(budget: &BigRational) -> Option<Self> {
        Some(budget.floor().to_integer())
    }
}

impl CostScalar for BigRational {
    const EXACT: bool = true;

    fn distance_power(d: u64, p: PExponent) -> Option<Self> {
        p.is_integral()
            .then(|| BigRational::from_integer(BigInt::from(d).pow(p.numer())))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::INFINITY)
    }

    fn exact_threshold(budget: &BigRational) -> Option<Self> {
        Some(budget.clone())
    }
}

macro_rules! impl_float {
    ($t:ty, $slack:expr) => {
        impl CostScalar for $t {
            const EXACT: bool = false;
            const RELATIVE_SLACK: f64 = $slack;

            fn distance_power(d: u64, p: PExponent) -> Option<Self> {
                let v = <$t as Float>::powf(d as $t, p.numer() as $t / p.denom() as $t);
                v.is_finite().then_some(v)
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }
        }
    };
}

impl_float!(f64, 1e-9);
impl_float!(f32, 1e-3);

/// `d^p` for `d = 0..=max_distance`, with a guarantee that any sum of `m`
/// entries fits in `T`.
#[derive(Clone, Debug)]
pub struct PowerTable<T> {
    values: Vec<T>,
    p: PExponent,
}

impl<T: CostScalar> PowerTable<T> {
    pub fn new(p: PExponent, max_distance: usize, m: usize) -> Option<Self> {
        let values = (0..=max_distance as u64)
            .map(|d| T::distance_power(d, p))
            .collect::<Option<Vec<T>>>()?;
        let top = values.last()?.clone();
        let mut acc = T::zero();
        for _ in 0..m.max(1) {
            acc = acc.checked_sum(&top)?;
        }
        Some(PowerTable { values, p })
    }

    #[inline]
    pub fn get(&self, d: usize) -> &T {
        &self.values[d]
    }

    pub fn exponent(&self) -> PExponent {
        self.p
    }

    pub fn sum<I: IntoIterator<Item = usize>>(&self, distances: I) -> T {
        distances
            .into_iter()
            .fold(T::zero(), |acc, d| acc + self.values[d].clone())
    }
}

/// Decides `cost ≤ budget` for scalar costs, falling back to exact arithmetic
/// when the scalar cannot settle it.
#[derive(Clone, Debug)]
pub struct BudgetJudge<T> {
    budget: CostBudget,
    threshold: Option<T>,
    lo: f64,
    hi: f64,
}

impl<T: CostScalar> BudgetJudge<T> {
    pub fn new(budget: &CostBudget) -> Self {
        let threshold = if T::EXACT {
            budget.as_rational().and_then(|r| T::exact_threshold(&r))
        } else {
            None
        };
        let (lo, hi) = budget.power_budget().bounds();
        BudgetJudge {
            budget: budget.clone(),
            threshold,
            lo: ToPrimitive::to_f64(&lo).unwrap_or(f64::INFINITY),
            hi: ToPrimitive::to_f64(&hi).unwrap_or(f64::INFINITY),
        }
    }

    pub fn budget(&self) -> &CostBudget {
        &self.budget
    }

    /// `distances` is only evaluated when the exact re-check is needed.
    pub fn judge<F: FnOnce() -> Vec<usize>>(&self, cost: &T, distances: F) -> Verdict {
        if let Some(t) = &self.threshold {
            return if cost <= t { Verdict::Below } else { Verdict::Above };
        }
        let c = cost.to_f64();
        let slack = T::RELATIVE_SLACK.max(4.0 * f64::EPSILON);
        if c < self.lo * (1.0 - slack) {
            return Verdict::Below;
        }
        if c > self.hi * (1.0 + slack) + slack {
            return Verdict::Above;
        }
        let exact = CostValue::from_distances(&distances(), self.budget.exponent());
        crate::cost::compare_cost(&exact, &self.budget)
    }
}

/// Which accumulator the solvers pick for a given exponent and instance size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarChoice {
    Wide,
    Big,
    Float,
}

pub fn choose_scalar(p: PExponent, max_distance: usize, m: usize) -> ScalarChoice {
    if !p.is_integral() {
        ScalarChoice::Float
    } else if PowerTable::<u128>::new(p, max_distance, m).is_some() {
        ScalarChoice::Wide
    } else {
        ScalarChoice::Big
    }
}

/// Runs a generic solver body with the scalar picked by [`choose_scalar`].
macro_rules! with_scalar {
    ($p:expr, $max_d:expr, $m:expr, $body:ident ( $($arg:expr),* $(,)? )) => {
        match $crate::scalar::choose_scalar($p, $max_d, $m) {
            $crate::scalar::ScalarChoice::Wide => $body::<u128>($($arg),*),
            $crate::scalar::ScalarChoice::Big => $body::<num_bigint::BigInt>($($arg),*),
            $crate::scalar::ScalarChoice::Float => $body::<f64>($($arg),*),
        }
    };
}
pub(crate) use with_scalar;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_scalars_reject_fractional_p() {
        let th = PExponent::new(3, 2).unwrap();
        assert!(u128::distance_power(4, th).is_none());
        assert!(BigInt::distance_power(4, th).is_none());
        assert_eq!(f64::distance_power(4, th), Some(8.0));
        assert_eq!(f32::distance_power(4, th), Some(8.0));
    }

    #[test]
    fn overflow_is_detected() {
        let p = PExponent::integer(40).unwrap();
        assert!(PowerTable::<u64>::new(p, 10, 1).is_none());
        assert!(PowerTable::<BigInt>::new(p, 10, 1000).is_some());
        assert_eq!(choose_scalar(p, 100, 10), ScalarChoice::Big);
        assert_eq!(choose_scalar(PExponent::integer(2).unwrap(), 100, 10), ScalarChoice::Wide);
    }

    #[test]
    fn judge_exact_and_float_paths() {
        let two = PExponent::integer(2).unwrap();
        let b = CostBudget::from_power_integer(two, 56u32);
        let j = BudgetJudge::<u128>::new(&b);
        assert_eq!(j.judge(&56, Vec::new), Verdict::Below);
        assert_eq!(j.judge(&57, Vec::new), Verdict::Above);
        let jf = BudgetJudge::<f64>::new(&b);
        assert_eq!(jf.judge(&55.0, Vec::new), Verdict::Below);
        // Within slack: decided exactly from the distances (25+4+9+9+9 = 56).
        assert_eq!(jf.judge(&56.000_000_000_1, || vec![5, 2, 3, 3, 3]), Verdict::Below);
        let jr = BudgetJudge::<BigRational>::new(&b);
        assert_eq!(jr.judge(&BigRational::from_integer(56.into()), Vec::new), Verdict::Below);
    }

    #[test]
    fn table_sums() {
        let t = PowerTable::<u64>::new(PExponent::integer(3).unwrap(), 5, 4).unwrap();
        assert_eq!(t.sum([1, 2, 3]), 1 + 8 + 27);
    }
}
