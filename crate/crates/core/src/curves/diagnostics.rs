use serde::{Deserialize, Serialize};

use crate::dist::FinitePmf;
use crate::scalar::Real;

/// `{t : lo < t <= hi}`, or `lo <= t <= hi` when `lo_closed`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriceInterval<T> {
    pub lo: T,
    pub hi: T,
    pub lo_closed: bool,
}

impl<T: Real> PriceInterval<T> {
    pub fn contains(&self, t: T) -> bool {
        t <= self.hi && (t > self.lo || (self.lo_closed && t == self.lo))
    }
}

/// The ε-optimal prices of a finite PMF: the atoms that qualify plus one
/// interval per linear piece of the revenue curve that reaches the level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsOptimalSet<T> {
    pub atoms: Vec<T>,
    pub intervals: Vec<PriceInterval<T>>,
}

impl<T: Real> EpsOptimalSet<T> {
    pub fn contains(&self, t: T) -> bool {
        self.intervals.iter().any(|iv| iv.contains(t))
    }

    pub fn is_bounded(&self) -> bool {
        self.intervals.iter().all(|iv| iv.hi.is_finite())
    }
}

fn slack<T: Real>(opt: T) -> T {
    opt.abs() * T::epsilon() * T::lit(8.0)
}

/// `{t >= 0 : rev(t) >= opt - eps}`. Between consecutive atoms revenue is
/// `t · Pr[v >= a_k]`, so every boundary is a closed-form ratio.
pub fn t_eps<T: Real>(pmf: &FinitePmf<T>, eps: T) -> EpsOptimalSet<T> {
    let (opt, _) = pmf.optimum();
    let level = opt - eps;
    if level - slack(opt) <= T::zero() {
        return EpsOptimalSet {
            atoms: pmf.prices().collect(),
            intervals: vec![PriceInterval {
                lo: T::zero(),
                hi: T::infinity(),
                lo_closed: true,
            }],
        };
    }
    let mut out = EpsOptimalSet {
        atoms: Vec::new(),
        intervals: Vec::new(),
    };
    let mut prev = T::zero();
    for (k, &(a, _)) in pmf.atoms().iter().enumerate() {
        let s = pmf.survival_at(k);
        if a * s >= level - slack(opt) {
            out.atoms.push(a);
            let cut = level / s;
            let (lo, lo_closed) = if cut > prev { (cut.min(a), true) } else { (prev, false) };
            out.intervals.push(PriceInterval { lo, hi: a, lo_closed });
        }
        prev = a;
    }
    out
}

/// `sup_{t ∈ T(ε)} min_{t' ∈ T*} max(|t - t'|, g(t, t'))` with
/// `g(t, t') = min(t, t') · Pr[min(t, t') <= v < max(t, t')]`.
///
/// On each piece of `T(ε)` both terms are linear in `t` for every `t'`, so
/// the objective is piecewise linear and its supremum sits at a piece end or
/// at a crossing of two of the lines. Returns infinity when `T(ε)` is
/// unbounded.
pub fn delta_eps<T: Real>(pmf: &FinitePmf<T>, eps: T) -> T {
    let (opt, _) = pmf.optimum();
    if opt <= T::zero() {
        return T::zero();
    }
    let set = t_eps(pmf, eps);
    if !set.is_bounded() {
        return T::infinity();
    }
    let atoms = pmf.atoms();
    let best: Vec<usize> = (0..atoms.len())
        .filter(|&k| atoms[k].0 * pmf.survival_at(k) >= opt - slack(opt))
        .collect();

    let mut sup = T::zero();
    for iv in &set.intervals {
        let k = atoms.partition_point(|a| a.0 < iv.hi);
        let s_k = pmf.survival_at(k);
        // objective(t) = min over t' of max(line_a(t), line_b(t)); lines are (slope, offset)
        let pairs: Vec<[(T, T); 2]> = best
            .iter()
            .map(|&j| {
                let (a_j, s_j) = (atoms[j].0, pmf.survival_at(j));
                if j >= k {
                    [(-T::one(), a_j), (s_k - s_j, T::zero())]
                } else {
                    [(T::one(), -a_j), (T::zero(), a_j * (s_j - s_k))]
                }
            })
            .collect();
        let objective = |t: T| {
            pairs
                .iter()
                .map(|[l1, l2]| (l1.0 * t + l1.1).max(l2.0 * t + l2.1))
                .fold(T::infinity(), T::min)
        };
        let lines: Vec<(T, T)> = pairs.iter().flatten().copied().collect();
        let mut candidates = vec![iv.lo, iv.hi];
        for (i, l1) in lines.iter().enumerate() {
            for l2 in &lines[i + 1..] {
                if l1.0 != l2.0 {
                    let t = (l2.1 - l1.1) / (l1.0 - l2.0);
                    if t > iv.lo && t < iv.hi {
                        candidates.push(t);
                    }
                }
            }
        }
        for t in candidates {
            sup = sup.max(objective(t));
        }
    }
    sup
}
