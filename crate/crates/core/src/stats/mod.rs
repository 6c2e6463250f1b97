//! Rank correlation, paired t-tests, RANSAC consensus subsets and survey
//! sample sizes.

mod distribution;
mod ransac;

pub use distribution::{incomplete_beta, normal_cdf, normal_quantile, t_cdf, t_crit, t_two_sided_p};
pub use ransac::{ransac_consensus, ransac_run, Line, RansacConfig, RansacResult, RansacRun, RunSummary};

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StatsError {
    LengthMismatch {
        left: usize,
        right: usize,
    },
    TooFewPoints {
        needed: usize,
        got: usize,
    },
    /// One side has zero rank variance.
    ConstantInput,
    /// Every sampled pair of points shared an x coordinate.
    VerticalLines,
    InvalidArgument(&'static str),
}

impl fmt::Display for StatsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatsError::LengthMismatch { left, right } => write!(f, "length mismatch: {left} vs {right}"),
            StatsError::TooFewPoints { needed, got } => write!(f, "need at least {needed} points, got {got}"),
            StatsError::ConstantInput => f.write_str("input is constant"),
            StatsError::VerticalLines => f.write_str("every sampled line was vertical"),
            StatsError::InvalidArgument(what) => write!(f, "invalid argument: {what}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for StatsError {}

/// 1-based ranks, tied values sharing their average rank.
pub fn average_ranks(x: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&i, &j| x[i].partial_cmp(&x[j]).unwrap_or(Ordering::Equal));
    let mut ranks = alloc::vec![0.0; x.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && x[order[end]] == x[order[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1..=end
        let avg = (start + 1 + end) as f64 / 2.0;
        for &k in &order[start..end] {
            ranks[k] = avg;
        }
        start = end;
    }
    ranks
}

fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

fn pearson(x: &[f64], y: &[f64]) -> Result<f64, StatsError> {
    let (mx, my) = (mean(x), mean(y));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(StatsError::ConstantInput);
    }
    Ok((sxy / libm::sqrt(sxx * syy)).clamp(-1.0, 1.0))
}

/// Spearman rank correlation: Pearson correlation of average ranks.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch { left: x.len(), right: y.len() });
    }
    if x.len() < 2 {
        return Err(StatsError::TooFewPoints { needed: 2, got: x.len() });
    }
    pearson(&average_ranks(x), &average_ranks(y))
}

/// Two aligned samples of the same items.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedSample {
    pub ids: Vec<String>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl PairedSample {
    pub fn new(ids: Vec<String>, a: Vec<f64>, b: Vec<f64>) -> Result<Self, StatsError> {
        if ids.len() != a.len() || a.len() != b.len() {
            return Err(StatsError::LengthMismatch { left: a.len(), right: b.len() });
        }
        if a.len() < 2 {
            return Err(StatsError::TooFewPoints { needed: 2, got: a.len() });
        }
        Ok(PairedSample { ids, a, b })
    }

    /// Unnamed sample; ids are the positions.
    pub fn from_values(a: Vec<f64>, b: Vec<f64>) -> Result<Self, StatsError> {
        let ids = (0..a.len()).map(|i| alloc::format!("{i}")).collect();
        Self::new(ids, a, b)
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TTestResult {
    pub t: f64,
    pub df: usize,
    pub p_two_sided: f64,
    /// `mean(a - b)`.
    pub mean_diff: f64,
    /// Half width of the confidence interval for `mean_diff` at the
    /// requested level (95% unless configured).
    pub ci95_half_width: f64,
    /// The differences have zero variance, so `t` is 0 (all equal to zero)
    /// or infinite.
    pub degenerate: bool,
}

/// Paired t-test at 95% confidence.
pub fn paired_t_test(s: &PairedSample) -> TTestResult {
    paired_t_test_with(s, 0.95)
}

/// Paired t-test of `H0: mean(a - b) = 0`.
pub fn paired_t_test_with(s: &PairedSample, confidence: f64) -> TTestResult {
    let d: Vec<f64> = s.a.iter().zip(&s.b).map(|(a, b)| a - b).collect();
    let n = d.len();
    let df = n - 1;
    let m = mean(&d);
    let var = d.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / df as f64;
    let se = libm::sqrt(var / n as f64);
    if se == 0.0 {
        let (t, p) = if m == 0.0 { (0.0, 1.0) } else { (f64::INFINITY.copysign(m), 0.0) };
        return TTestResult { t, df, p_two_sided: p, mean_diff: m, ci95_half_width: 0.0, degenerate: true };
    }
    let t = m / se;
    TTestResult {
        t,
        df,
        p_two_sided: t_two_sided_p(t, df as f64),
        mean_diff: m,
        ci95_half_width: t_crit(df as f64, confidence) * se,
        degenerate: false,
    }
}

/// Survey size for estimating a proportion within `margin` at `confidence`,
/// with the finite-population correction and `p = 0.5`.
pub fn sample_size(population: u64, confidence: f64, margin: f64) -> Result<u64, StatsError> {
    if population == 0 {
        return Err(StatsError::InvalidArgument("population must be at least 1"));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(StatsError::InvalidArgument("confidence must lie in (0, 1)"));
    }
    if !(margin > 0.0 && margin < 1.0) {
        return Err(StatsError::InvalidArgument("margin must lie in (0, 1)"));
    }
    let z = normal_quantile(0.5 + confidence / 2.0);
    let n0 = z * z * 0.25 / (margin * margin);
    let n = n0 / (1.0 + (n0 - 1.0) / population as f64);
    // guard against 1.0000000000000002 style rounding before the ceiling
    let n = libm::ceil(n - 1e-9).max(1.0) as u64;
    Ok(n.min(population))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn ranks_average_ties() {
        assert_eq!(average_ranks(&[10.0, 20.0, 10.0, 30.0]), [1.5, 3.0, 1.5, 4.0]);
    }

    #[test]
    fn spearman_examples() {
        let x = [1.0, 2.0, 3.0, 4.0, 5.0];
        // d = 0, -1, 1, -1, 1: 1 - 6 * 4 / (5 * 24)
        assert_eq!(spearman(&x, &[1.0, 3.0, 2.0, 5.0, 4.0]).unwrap(), 0.8);
        assert_eq!(spearman(&x, &x).unwrap(), 1.0);
        assert_eq!(spearman(&x, &[5.0, 4.0, 3.0, 2.0, 1.0]).unwrap(), -1.0);
        assert_eq!(spearman(&x, &[1.0; 5]), Err(StatsError::ConstantInput));
        assert!(matches!(spearman(&x, &[1.0]), Err(StatsError::LengthMismatch { .. })));
    }

    #[test]
    fn t_test_edges() {
        let s = PairedSample::from_values(vec![1.0, 2.0, 3.0], vec![1.0, 2.0, 3.0]).unwrap();
        let r = paired_t_test(&s);
        assert_eq!((r.t, r.p_two_sided, r.degenerate), (0.0, 1.0, true));
        let s = PairedSample::from_values(vec![2.0; 4], vec![1.0; 4]).unwrap();
        let r = paired_t_test(&s);
        assert!(r.degenerate && r.t.is_infinite() && r.p_two_sided == 0.0);
    }

    #[test]
    fn t_test_hand_value() {
        // d = 1, 2, 3, 4: mean 2.5, sd = sqrt(5/3), t = 2.5 / (sd / 2)
        let s = PairedSample::from_values(vec![1.0, 2.0, 3.0, 4.0], vec![0.0; 4]).unwrap();
        let r = paired_t_test(&s);
        let t = 2.5 / (libm::sqrt(5.0 / 3.0) / 2.0);
        assert!((r.t - t).abs() < 1e-12);
        assert_eq!(r.df, 3);
        assert!((r.ci95_half_width - t_crit(3.0, 0.95) * libm::sqrt(5.0 / 3.0) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn sample_sizes() {
        assert_eq!(sample_size(1_000_000_000, 0.95, 0.05), Ok(385));
        assert_eq!(sample_size(34_209, 0.95, 0.05), Ok(380));
        assert_eq!(sample_size(1, 0.99, 0.01), Ok(1));
        assert!(sample_size(0, 0.95, 0.05).is_err());
    }
}
