//! Quality indicators over 2-D similarity fronts and the non-parametric
//! statistics used to compare algorithms across repeated runs.
//!
//! Hypervolume and IGD treat both coordinates as maximizing objectives in the
//! unit square: area is measured against the nadir point `(0, 0)` and IGD
//! distances against reference points, by default the ideal `(1, 1)`.
//! The p-values are large-sample approximations (chi-square for the
//! Kruskal-Wallis H, normal for the Mann-Whitney U, both with average-rank
//! tie correction and no continuity correction).

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};
use thiserror::Error;

/// One point of a similarity front.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrontPoint2D {
    pub syntactic: f64,
    pub semantic: f64,
}

impl FrontPoint2D {
    pub fn new(syntactic: f64, semantic: f64) -> Self {
        FrontPoint2D { syntactic, semantic }
    }
}

/// Area of the region dominated by the front relative to the nadir `(0, 0)`:
/// the union of the rectangles `[0, x] × [0, y]`. In `[0, 1]` for fronts in
/// the unit square; an empty front has hypervolume 0.
pub fn hypervolume(front: &[FrontPoint2D]) -> f64 {
    let mut pts: Vec<(f64, f64)> = front.iter().map(|p| (p.syntactic, p.semantic)).collect();
    pts.sort_by(|a, b| b.0.total_cmp(&a.0).then(b.1.total_cmp(&a.1)));
    // disjoint horizontal slabs, widest-x first
    let mut area = 0.0;
    let mut max_y = 0.0;
    for (x, y) in pts {
        if y > max_y {
            area += x * (y - max_y);
            max_y = y;
        }
    }
    area
}

/// Mean Euclidean distance from each reference point to its nearest front
/// point; lower is better. An empty front yields the infinity sentinel.
pub fn igd(front: &[FrontPoint2D], reference: &[FrontPoint2D]) -> f64 {
    if front.is_empty() {
        return f64::INFINITY;
    }
    if reference.is_empty() {
        return 0.0;
    }
    let total: f64 = reference
        .iter()
        .map(|r| {
            front
                .iter()
                .map(|p| {
                    let dx = p.syntactic - r.syntactic;
                    let dy = p.semantic - r.semantic;
                    (dx * dx + dy * dy).sqrt()
                })
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    total / reference.len() as f64
}

/// Result of one statistical procedure. `p_value` is set by the rank tests,
/// `effect_size` by the probability-of-superiority measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StatResult {
    pub statistic: f64,
    pub p_value: Option<f64>,
    pub effect_size: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("at least two groups are required")]
    TooFewGroups,
    #[error("samples must be nonempty")]
    EmptySample,
}

/// Average ranks (1-based, ties averaged) of `values`, plus the tie term
/// `Σ (t³ - t)` over the tie groups.
fn ranks_with_ties(values: &[f64]) -> (Vec<f64>, f64) {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; n];
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let avg = (i + j + 2) as f64 / 2.0;
        for &slot in &order[i..=j] {
            ranks[slot] = avg;
        }
        let t = (j - i + 1) as f64;
        tie_term += t * t * t - t;
        i = j + 1;
    }
    (ranks, tie_term)
}

fn chi_square_sf(x: f64, df: usize) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    let dist = ChiSquared::new(df as f64).expect("positive degrees of freedom");
    (1.0 - dist.cdf(x)).clamp(0.0, 1.0)
}

fn normal_two_sided(z: f64) -> f64 {
    let dist = Normal::new(0.0, 1.0).expect("standard normal");
    (2.0 * (1.0 - dist.cdf(z.abs()))).clamp(0.0, 1.0)
}

/// Kruskal-Wallis H test across two or more groups, with average-rank tie
/// correction; the p-value uses the chi-square approximation with
/// `groups - 1` degrees of freedom. Fully tied data gives `H = 0`, `p = 1`.
pub fn kruskal_wallis(groups: &[Vec<f64>]) -> Result<StatResult, StatsError> {
    if groups.len() < 2 {
        return Err(StatsError::TooFewGroups);
    }
    if groups.iter().any(|g| g.is_empty()) {
        return Err(StatsError::EmptySample);
    }
    let pooled: Vec<f64> = groups.iter().flatten().copied().collect();
    let n = pooled.len() as f64;
    let (ranks, tie_term) = ranks_with_ties(&pooled);
    let mut h = 0.0;
    let mut offset = 0;
    for g in groups {
        let r_sum: f64 = ranks[offset..offset + g.len()].iter().sum();
        h += r_sum * r_sum / g.len() as f64;
        offset += g.len();
    }
    h = 12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0);
    let correction = 1.0 - tie_term / (n * n * n - n);
    if correction <= 0.0 {
        // every observation identical
        return Ok(StatResult {
            statistic: 0.0,
            p_value: Some(1.0),
            effect_size: None,
        });
    }
    h /= correction;
    Ok(StatResult {
        statistic: h,
        p_value: Some(chi_square_sf(h, groups.len() - 1)),
        effect_size: None,
    })
}

/// Mann-Whitney U test, two-sided, normal approximation with tie-corrected
/// variance. The statistic is the U of the first sample: the number of pairs
/// where it wins plus half the tied pairs.
pub fn mann_whitney(a: &[f64], b: &[f64]) -> Result<StatResult, StatsError> {
    if a.is_empty() || b.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let (n1, n2) = (a.len() as f64, b.len() as f64);
    let n = n1 + n2;
    let pooled: Vec<f64> = a.iter().chain(b.iter()).copied().collect();
    let (ranks, tie_term) = ranks_with_ties(&pooled);
    let r1: f64 = ranks[..a.len()].iter().sum();
    let u = r1 - n1 * (n1 + 1.0) / 2.0;
    let mean = n1 * n2 / 2.0;
    let var = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    let p = if var <= 0.0 {
        1.0
    } else {
        normal_two_sided((u - mean) / var.sqrt())
    };
    Ok(StatResult {
        statistic: u,
        p_value: Some(p),
        effect_size: None,
    })
}

/// Probability-of-superiority effect size: the chance a value drawn from `a`
/// beats one drawn from `b`, ties counting half.
pub fn a12(a: &[f64], b: &[f64]) -> Result<StatResult, StatsError> {
    if a.is_empty() || b.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let mut wins = 0.0;
    for x in a {
        for y in b {
            if x > y {
                wins += 1.0;
            } else if x == y {
                wins += 0.5;
            }
        }
    }
    let value = wins / (a.len() as f64 * b.len() as f64);
    Ok(StatResult {
        statistic: value,
        p_value: None,
        effect_size: Some(value),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> FrontPoint2D {
        FrontPoint2D::new(x, y)
    }

    #[test]
    fn hypervolume_examples() {
        assert_eq!(hypervolume(&[]), 0.0);
        assert_eq!(hypervolume(&[pt(1.0, 1.0)]), 1.0);
        assert_eq!(hypervolume(&[pt(0.5, 0.5)]), 0.25);
        let hv = hypervolume(&[pt(0.8, 0.2), pt(0.2, 0.8)]);
        assert!((hv - 0.28).abs() < 1e-12, "got {hv}");
    }

    #[test]
    fn hypervolume_ignores_dominated_points() {
        let base = hypervolume(&[pt(0.8, 0.2), pt(0.2, 0.8)]);
        let with_dominated = hypervolume(&[pt(0.8, 0.2), pt(0.2, 0.8), pt(0.1, 0.1)]);
        assert_eq!(base, with_dominated);
    }

    #[test]
    fn igd_examples() {
        let ideal = [pt(1.0, 1.0)];
        assert_eq!(igd(&[pt(1.0, 1.0)], &ideal), 0.0);
        assert!((igd(&[pt(0.0, 0.0)], &ideal) - 2f64.sqrt()).abs() < 1e-12);
        let front = [pt(1.0, 0.0), pt(0.0, 1.0)];
        let refs = [pt(1.0, 1.0), pt(0.5, 0.5)];
        let want = (1.0 + 0.5f64.sqrt()) / 2.0;
        assert!((igd(&front, &refs) - want).abs() < 1e-12);
        assert_eq!(igd(&[], &ideal), f64::INFINITY);
    }

    #[test]
    fn kruskal_wallis_identical_groups() {
        let r = kruskal_wallis(&[vec![1.0, 2.0, 3.0], vec![1.0, 2.0, 3.0]]).unwrap();
        assert!(r.statistic.abs() < 1e-12);
        let r3 = kruskal_wallis(&[vec![2.0, 2.0], vec![2.0, 2.0], vec![2.0, 2.0]]).unwrap();
        assert_eq!(r3.statistic, 0.0);
        assert_eq!(r3.p_value, Some(1.0));
    }

    #[test]
    fn kruskal_wallis_separated_groups() {
        let r = kruskal_wallis(&[vec![1.0, 2.0, 3.0], vec![10.0, 11.0, 12.0]]).unwrap();
        assert!((r.statistic - 27.0 / 7.0).abs() < 1e-12, "H = {}", r.statistic);
    }

    #[test]
    fn mann_whitney_examples() {
        let r = mann_whitney(&[1.0, 2.0], &[1.0, 2.0]).unwrap();
        assert_eq!(r.statistic, 2.0); // n²/2
        assert_eq!(r.p_value, Some(1.0));

        let r = mann_whitney(&[1.0, 2.0], &[3.0, 4.0]).unwrap();
        assert_eq!(r.statistic, 0.0);

        let r = mann_whitney(&[1.0, 3.0, 5.0], &[2.0, 4.0, 6.0]).unwrap();
        assert_eq!(r.statistic, 3.0);
    }

    #[test]
    fn a12_examples() {
        assert_eq!(a12(&[5.0, 5.0], &[5.0, 5.0]).unwrap().statistic, 0.5);
        assert_eq!(a12(&[2.0, 2.0], &[1.0, 1.0]).unwrap().statistic, 1.0);
        let r = a12(&[1.0, 3.0, 5.0], &[2.0, 4.0, 6.0]).unwrap();
        assert!((r.statistic - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn empty_inputs_are_rejected() {
        assert_eq!(kruskal_wallis(&[vec![1.0]]), Err(StatsError::TooFewGroups));
        assert_eq!(
            kruskal_wallis(&[vec![1.0], vec![]]),
            Err(StatsError::EmptySample)
        );
        assert_eq!(mann_whitney(&[], &[1.0]), Err(StatsError::EmptySample));
        assert_eq!(a12(&[1.0], &[]), Err(StatsError::EmptySample));
    }
}
