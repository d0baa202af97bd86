use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dist::{Distribution, FinitePmf};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Which family a gadget member belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }

    pub fn from_value(v: i32) -> Result<Self> {
        match v {
            -1 => Ok(Sign::Minus),
            1 => Ok(Sign::Plus),
            _ => Err(Error::Domain(format!("sign must be -1 or +1, got {v}"))),
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    fn scale<T: Real>(self, v: T) -> T {
        match self {
            Sign::Minus => -v,
            Sign::Plus => v,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "-1",
            Sign::Plus => "+1",
        })
    }
}

/// Prices on one side of the gadget midpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `t <= midpoint`
    Left,
    /// `t >= midpoint`
    Right,
}

impl Side {
    /// The side every price of which is bad for members of `sigma`.
    pub fn losing_for(sigma: Sign) -> Self {
        match sigma {
            Sign::Minus => Side::Left,
            Sign::Plus => Side::Right,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GadgetParams<T> {
    pub x: T,
    pub q: T,
    pub p: T,
    pub gamma: T,
    /// `q·x / (p + q)`
    pub x_pq: T,
    /// `(x_pq + x) / 2`
    pub midpoint: T,
}

/// Validates the gadget parameters; `gamma = None` picks
/// `min(p, x - x_pq) / 50`. Every failed check is listed in the error.
pub fn uniform_gadget<T: Real>(x: T, q: T, p: T, gamma: Option<T>) -> Result<GadgetParams<T>> {
    let half = T::lit(0.5);
    let mut failed = Vec::new();
    if !(x > half && x <= T::one()) {
        failed.push(format!("x in (1/2, 1] (x = {x})"));
    }
    if !(q >= half) {
        failed.push(format!("q >= 1/2 (q = {q})"));
    }
    if !(p > T::zero()) {
        failed.push(format!("p > 0 (p = {p})"));
    }
    let x_pq = q * x / (p + q);
    if !(x_pq > half) {
        failed.push(format!("x_pq > 1/2 (x_pq = {x_pq})"));
    }
    if !(x_pq < x) {
        failed.push(format!("x_pq < x (x_pq = {x_pq})"));
    }
    let room = p.min(x - x_pq);
    let gamma = gamma.unwrap_or(room / T::lit(50.0));
    if !(gamma > T::zero()) {
        failed.push(format!("gamma > 0 (gamma = {gamma})"));
    }
    if !(gamma <= room / T::lit(20.0)) {
        failed.push(format!(
            "gamma <= min(p, x - x_pq)/20 (gamma = {gamma}, limit = {})",
            room / T::lit(20.0)
        ));
    }
    if !(q + p + gamma <= T::one()) {
        failed.push(format!("q + p + gamma <= 1 (sum = {})", q + p + gamma));
    }
    if !failed.is_empty() {
        return Err(Error::Infeasible(format!(
            "gadget parameters fail: {}",
            failed.join("; ")
        )));
    }
    Ok(GadgetParams {
        x,
        q,
        p,
        gamma,
        x_pq,
        midpoint: (x_pq + x) / T::lit(2.0),
    })
}

/// Canonical member of the `sigma` family: mass `q` at `x`, `p + σγ` at
/// `x_pq` and the rest at the anchor `x_pq / 2`.
///
/// Fails when the membership condition on the distribution with the mass
/// near `x_pq` moved to zero does not hold: its optimum must lie in
/// `[x - γ², x]` and its best price up to `x_pq - γ²` must be `x_pq - γ²`.
pub fn gadget_member<T: Real>(gp: &GadgetParams<T>, sigma: Sign) -> Result<Distribution<T>> {
    let g2 = gp.gamma * gp.gamma;
    let anchor = gp.x_pq / T::lit(2.0);
    let near = gp.p + sigma.scale(gp.gamma);
    let rest = T::one() - gp.q - near;
    let mut atoms = Vec::with_capacity(3);
    if rest > T::zero() {
        atoms.push((anchor, rest));
    }
    atoms.push((gp.x_pq, near));
    atoms.push((gp.x, gp.q));
    let pmf = FinitePmf::new(atoms)?;

    // Moving the mass near x_pq to zero leaves the anchor and x.
    let outside: Vec<(T, T)> = pmf
        .atoms()
        .iter()
        .copied()
        .filter(|&(v, _)| v <= gp.x_pq - g2 || v >= gp.x_pq + g2)
        .collect();
    let rev = |t: T| {
        t * outside
            .iter()
            .filter(|a| a.0 >= t)
            .map(|a| a.1)
            .fold(T::zero(), |s, m| s + m)
    };
    let best = outside
        .iter()
        .map(|a| (rev(a.0), a.0))
        .fold((T::neg_infinity(), T::zero()), |b, c| if c.0 > b.0 { c } else { b });
    if !(best.1 >= gp.x - g2 && best.1 <= gp.x) {
        return Err(Error::Infeasible(format!(
            "condition 4: optimum without the x_pq mass is at {} not in [x - gamma^2, x]",
            best.1
        )));
    }
    let edge = gp.x_pq - g2;
    let edge_rev = rev(edge);
    if let Some(a) = outside.iter().find(|a| a.0 < edge && rev(a.0) >= edge_rev) {
        return Err(Error::Infeasible(format!(
            "condition 4: price {} rivals x_pq - gamma^2 below it",
            a.0
        )));
    }
    Ok(Distribution::finite(format!("gadget(sigma={sigma})"), pmf))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GadgetMargin<T> {
    pub side: Side,
    pub max_revenue: T,
    /// Best price on the swept side and its revenue.
    pub best_price: T,
    pub best_revenue: T,
    /// `max_revenue - best_revenue`.
    pub margin: T,
    /// `γ/4`.
    pub threshold: T,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GadgetReport<T> {
    pub sigma: Sign,
    pub margin: GadgetMargin<T>,
}

/// Checks the three mass conditions of the `sigma` family.
pub fn check_membership<T: Real>(
    gp: &GadgetParams<T>,
    dist: &Distribution<T>,
    sigma: Sign,
) -> Result<()> {
    let g2 = gp.gamma * gp.gamma;
    let tol = T::mass_tolerance();
    let one = T::one();
    // (x - γ², 1]
    let top = dist.cdf_inclusive(one) - dist.cdf_inclusive(gp.x - g2);
    if top < gp.q - tol || top > gp.q + g2 + tol {
        return Err(Error::Infeasible(format!(
            "condition 1: mass {top} on (x - gamma^2, 1] not in [q, q + gamma^2]"
        )));
    }
    // [x_pq - γ², x_pq + γ²)
    let near = dist.cdf(gp.x_pq + g2) - dist.cdf(gp.x_pq - g2);
    let centre = gp.p + sigma.scale(gp.gamma);
    if near < centre - g2 - tol || near > centre + g2 + tol {
        return Err(Error::Infeasible(format!(
            "condition 2: mass {near} near x_pq not within gamma^2 of p + sigma*gamma = {centre}"
        )));
    }
    // [x_pq + γ², x - γ²]
    let gap = dist.cdf_inclusive(gp.x - g2) - dist.cdf(gp.x_pq + g2);
    if gap > tol {
        return Err(Error::Infeasible(format!(
            "condition 3: mass {gap} on [x_pq + gamma^2, x - gamma^2]"
        )));
    }
    Ok(())
}

/// Best revenue over prices on `side` of the midpoint, swept over the atoms
/// there, the midpoint itself and `resolution + 1` evenly spaced prices.
pub fn sweep_side<T: Real>(
    gp: &GadgetParams<T>,
    dist: &Distribution<T>,
    side: Side,
    resolution: usize,
) -> Result<GadgetMargin<T>> {
    let atoms = dist.atoms();
    let mut max_revenue = T::zero();
    for &a in &atoms {
        max_revenue = max_revenue.max(dist.revenue(a)?);
    }
    let top = atoms.last().copied().unwrap_or(T::one()).max(T::one());
    let (lo, hi) = match side {
        Side::Left => (T::zero(), gp.midpoint),
        Side::Right => (gp.midpoint, top),
    };
    let steps = resolution.max(1);
    let mut prices: Vec<T> = (0..=steps)
        .map(|k| lo + (hi - lo) * T::from_usize_lossy(k) / T::from_usize_lossy(steps))
        .collect();
    prices.push(gp.midpoint);
    prices.extend(atoms.iter().copied().filter(|&a| a >= lo && a <= hi));
    let mut best = (T::neg_infinity(), lo);
    for t in prices {
        let r = dist.revenue(t)?;
        if r > best.0 {
            best = (r, t);
        }
    }
    let threshold = gp.gamma / T::lit(4.0);
    let margin = max_revenue - best.0;
    Ok(GadgetMargin {
        side,
        max_revenue,
        best_price: best.1,
        best_revenue: best.0,
        margin,
        threshold,
        pass: margin.as_f64() > threshold.as_f64() - 1e-12,
    })
}

/// Checks membership in the `sigma` family, then that every price on the
/// losing side falls short of the optimum by more than `γ/4`.
pub fn verify_gadget<T: Real>(
    gp: &GadgetParams<T>,
    dist: &Distribution<T>,
    sigma: Sign,
    resolution: usize,
) -> Result<GadgetReport<T>> {
    check_membership(gp, dist, sigma)?;
    Ok(GadgetReport {
        sigma,
        margin: sweep_side(gp, dist, Side::losing_for(sigma), resolution)?,
    })
}
