//! The pricing rules, each a pure function of the sorted sample.
//!
//! Ties always break toward the smaller price.

use crate::empirical::EmpiricalDist;
use crate::scalar::Real;

/// Distinct sample values with the empirical revenue of each, ascending.
fn distinct_revenues<T: Real>(e: &EmpiricalDist<T>) -> impl Iterator<Item = (T, T)> + '_ {
    let v = e.sorted_values();
    let n = v.len();
    (0..n)
        .filter(move |&i| i == 0 || v[i - 1] < v[i])
        .map(move |i| (v[i], e.revenue_with_count(v[i], n - i)))
}

fn argmax_low<T: Real>(candidates: impl Iterator<Item = (T, T)>) -> Option<(T, T)> {
    candidates.fold(None, |best, (p, r)| match best {
        Some((_, br)) if r <= br => best,
        _ => Some((p, r)),
    })
}

/// `{v in sample : v <= cap} ∪ {cap}`, ascending and deduplicated. On
/// `[0, cap]` empirical revenue is maximized on this set, since revenue is
/// increasing between consecutive sample values.
pub fn candidate_set<T: Real>(e: &EmpiricalDist<T>, cap: T) -> Vec<T> {
    let v = e.sorted_values();
    let upto = v.partition_point(|&x| x <= cap);
    let mut out: Vec<T> = Vec::with_capacity(upto + 1);
    for &x in &v[..upto] {
        if out.last() != Some(&x) {
            out.push(x);
        }
    }
    if out.last() != Some(&cap) {
        out.push(cap);
    }
    out
}

/// Smallest sample value maximizing empirical revenue.
pub fn erm<T: Real>(e: &EmpiricalDist<T>) -> T {
    argmax_low(distinct_revenues(e))
        .map(|(p, _)| p)
        .expect("empirical distributions are nonempty")
}

/// ERM restricted to `[0, cap]`; returns the cap itself when every sample
/// value exceeds it.
pub fn capped_erm_at<T: Real>(e: &EmpiricalDist<T>, cap: T) -> T {
    let below = distinct_revenues(e).take_while(|&(p, _)| p <= cap);
    let at_cap = std::iter::once((cap, e.revenue(cap)));
    argmax_low(below.chain(at_cap))
        .map(|(p, _)| p)
        .expect("candidate set contains the cap")
}

/// ERM over prices at most `max(ln n, 1)`.
pub fn truncated_erm<T: Real>(e: &EmpiricalDist<T>, n: usize) -> T {
    capped_erm_at(e, truncation_cap(n))
}

pub fn truncation_cap<T: Real>(n: usize) -> T {
    T::lit((n as f64).ln().max(1.0))
}

/// ERM over prices at most `g(n)`.
pub fn capped_erm<T: Real>(e: &EmpiricalDist<T>, n: usize, g: &super::GrowthFn) -> T {
    capped_erm_at(e, T::lit(g.eval(n)))
}

/// Returns `p_{i*}` for the largest index `i*` (over the sorted sample,
/// duplicates included) such that every earlier `p_j` satisfies
/// `rev(p_{i*}) > rev(p_j) + (p_j + p_{i*})·f`.
///
/// The condition for `i` is `rev_i - p_i·f > max_{j<i}(rev_j + p_j·f)`, so a
/// running prefix maximum gives an `O(n)` scan. A duplicate of `p_i` earlier
/// in the list always fails the strict inequality.
pub fn structural_erm<T: Real>(e: &EmpiricalDist<T>, confidence: T) -> T {
    let v = e.sorted_values();
    let n = v.len();
    let mut best_index = 0;
    let mut prefix = T::neg_infinity();
    let mut first = 0;
    for i in 0..n {
        if i > 0 && v[i - 1] < v[i] {
            first = i;
        }
        let rev = e.revenue_with_count(v[i], n - first);
        if i > 0 && rev > prefix + v[i] * confidence {
            best_index = i;
        }
        prefix = prefix.max(rev + v[i] * confidence);
    }
    v[best_index]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::GrowthFn;

    fn emp(v: &[f64]) -> EmpiricalDist {
        EmpiricalDist::from_values(v.to_vec()).unwrap()
    }

    /// Literal transcription of the winner condition, O(n²).
    fn structural_brute(e: &EmpiricalDist, f: f64) -> f64 {
        let v = e.sorted_values();
        let mut best = 0;
        for i in 0..v.len() {
            if (0..i).all(|j| e.revenue(v[i]) > e.revenue(v[j]) + (v[j] + v[i]) * f) {
                best = i;
            }
        }
        v[best]
    }

    #[test]
    fn candidate_set_examples() {
        assert_eq!(candidate_set(&emp(&[1.0, 2.0, 8.0]), 3.0), vec![1.0, 2.0, 3.0]);
        assert_eq!(candidate_set(&emp(&[5.0, 9.0]), 3.0), vec![3.0]);
        assert_eq!(candidate_set(&emp(&[1.0]), 1.0), vec![1.0]);
    }

    #[test]
    fn erm_examples() {
        assert_eq!(erm(&emp(&[1.0, 1.0, 4.0])), 4.0);
        assert_eq!(erm(&emp(&[1.0, 1.0, 1.0, 4.0])), 1.0);
        assert_eq!(erm(&emp(&[2.5])), 2.5);
    }

    #[test]
    fn truncated_examples() {
        assert_eq!(truncated_erm(&emp(&[1.0, 1.0, 100.0]), 3), 1.0);
        assert_eq!(truncated_erm(&emp(&[1.0, 1.0, 4.0]), 1000), 4.0);
        assert_eq!(truncated_erm(&emp(&[5.0]), 2), 1.0);
    }

    #[test]
    fn capped_examples() {
        let g = GrowthFn::SQRT;
        // candidates {1, 10}: rev(1) = 1, rev(10) = 10 · 1/2 = 5
        assert_eq!(capped_erm(&emp(&[1.0, 16.0]), 100, &g), 10.0);
        assert_eq!(capped_erm(&emp(&[1.0, 9.0]), 100, &g), 9.0);
        let e = emp(&[0.5, 3.0, 3.0, 7.0]);
        assert_eq!(capped_erm_at(&e, 7.0), erm(&e));
    }

    #[test]
    fn structural_examples() {
        let e = emp(&[1.0, 1.0, 4.0]);
        assert_eq!(structural_erm(&e, 0.1), 1.0);
        assert_eq!(structural_erm(&e, 0.0), 4.0);
        assert_eq!(structural_erm(&emp(&[2.0, 2.0, 2.0]), 0.0), 2.0);
        assert_eq!(structural_brute(&e, 0.1), 1.0);
        assert_eq!(structural_brute(&e, 0.0), 4.0);
    }

    #[test]
    fn structural_matches_brute_force() {
        let samples: [&[f64]; 5] = [
            &[1.0, 2.0, 3.0, 4.0, 10.0],
            &[1.0, 1.0, 4.0, 4.0, 16.0, 64.0],
            &[0.3, 0.9, 0.91, 0.95],
            &[5.0, 5.0, 5.0, 6.0],
            &[1.0, 7.0, 8.0, 9.0, 100.0, 101.0],
        ];
        for s in samples {
            let e = emp(s);
            for f in [0.0, 0.01, 0.05, 0.2, 1.0] {
                assert_eq!(structural_erm(&e, f), structural_brute(&e, f), "{s:?} f={f}");
            }
        }
    }
}
