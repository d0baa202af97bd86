//! Samples, empirical distributions and DKW concentration utilities.

use std::io::Write;

use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// An observed multiset of valuations, in draw order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Sample<T: Real = f64> {
    values: Vec<T>,
}

impl<T: Real> Sample<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !(**v >= T::zero()) || !v.is_finite()) {
            return Err(Error::Domain(format!("sample value {v} is not a nonnegative price")));
        }
        Ok(Self { values })
    }

    pub(crate) fn from_values_unchecked(values: Vec<T>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// One value per line, for debugging.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        for v in &self.values {
            writeln!(out, "{v}")?;
        }
        Ok(())
    }
}

/// Sorted copy of a sample; answers `#{v_i >= p}` queries in `O(log n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDist<T: Real = f64> {
    sorted: Vec<T>,
}

impl<T: Real> EmpiricalDist<T> {
    pub fn new(sample: &Sample<T>) -> Result<Self> {
        Self::from_values(sample.values.clone())
    }

    /// Takes ownership of the values and sorts them in place.
    pub fn from_values(mut values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        values.sort_unstable_by(|a, b| a.partial_cmp(b).expect("sample values are not NaN"));
        Ok(Self { sorted: values })
    }

    pub fn sorted_values(&self) -> &[T] {
        &self.sorted
    }

    pub fn n(&self) -> usize {
        self.sorted.len()
    }

    /// Number of values strictly below `p`.
    pub fn count_below(&self, p: T) -> usize {
        self.sorted.partition_point(|&v| v < p)
    }

    /// Number of values `>= p`.
    pub fn count_at_least(&self, p: T) -> usize {
        self.n() - self.count_below(p)
    }

    /// `p · #{v_i >= p} / n`.
    pub fn revenue(&self, p: T) -> T {
        self.revenue_with_count(p, self.count_at_least(p))
    }

    pub(crate) fn revenue_with_count(&self, p: T, count: usize) -> T {
        p * T::from_usize_lossy(count) / T::from_usize_lossy(self.n())
    }

    /// Empirical `F_n(p) = #{v_i < p} / n`.
    pub fn cdf(&self, p: T) -> T {
        T::from_usize_lossy(self.count_below(p)) / T::from_usize_lossy(self.n())
    }

    pub fn cdf_inclusive(&self, p: T) -> T {
        let k = self.sorted.partition_point(|&v| v <= p);
        T::from_usize_lossy(k) / T::from_usize_lossy(self.n())
    }
}

/// Builds the empirical distribution of a sample.
pub fn empirical_dist<T: Real>(sample: &Sample<T>) -> Result<EmpiricalDist<T>> {
    EmpiricalDist::new(sample)
}

pub fn empirical_revenue<T: Real>(e: &EmpiricalDist<T>, p: T) -> Result<T> {
    if p < T::zero() || p.is_nan() {
        return Err(Error::Domain(format!("price must be nonnegative, got {p}")));
    }
    Ok(e.revenue(p))
}

/// DKW tail bound `min(1, 2·exp(-2nε²))`.
pub fn dkw_bound(n: usize, eps: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("eps must be positive, got {eps}")));
    }
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    Ok((2.0 * (-2.0 * n as f64 * eps * eps).exp()).min(1.0))
}

/// Exact `sup_x |F_n(x) - F(x)|`.
///
/// Both CDFs are step or monotone functions, so the supremum is reached as a
/// one-sided limit at a sample value or an atom of `dist`; both limits are
/// evaluated at each such point.
pub fn sup_cdf_deviation<T: Real>(e: &EmpiricalDist<T>, dist: &Distribution<T>) -> f64 {
    let mut points: Vec<T> = e.sorted_values().to_vec();
    points.extend(dist.atoms());
    points.sort_unstable_by(|a, b| a.partial_cmp(b).expect("no NaN"));
    points.dedup();
    let mut sup = 0.0_f64;
    for &x in &points {
        let left = (e.cdf(x).as_f64() - dist.cdf(x).as_f64()).abs();
        let right = (e.cdf_inclusive(x).as_f64() - dist.cdf_inclusive(x).as_f64()).abs();
        sup = sup.max(left).max(right);
    }
    sup
}
