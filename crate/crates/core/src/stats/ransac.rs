use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{spearman, StatsError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub slope: f64,
    pub intercept: f64,
}

impl Line {
    fn through((x1, y1): (f64, f64), (x2, y2): (f64, f64)) -> Option<Line> {
        if x1 == x2 {
            return None;
        }
        let slope = (y2 - y1) / (x2 - x1);
        Some(Line { slope, intercept: y1 - slope * x1 })
    }

    pub fn at(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }

    /// Ordinary least squares; `None` when all x are equal.
    pub fn least_squares(points: &[(f64, f64)]) -> Option<Line> {
        let n = points.len() as f64;
        let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
        let my = points.iter().map(|p| p.1).sum::<f64>() / n;
        let (mut sxy, mut sxx) = (0.0, 0.0);
        for &(x, y) in points {
            sxy += (x - mx) * (y - my);
            sxx += (x - mx) * (x - mx);
        }
        if sxx == 0.0 {
            return None;
        }
        let slope = sxy / sxx;
        Some(Line { slope, intercept: my - slope * mx })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RansacConfig {
    /// Line samples per run.
    pub iterations: usize,
    /// Maximum vertical distance of an inlier from the line.
    pub epsilon: f64,
    /// Independent runs; the run with the median correlation is reported.
    pub runs: usize,
}

impl Default for RansacConfig {
    fn default() -> Self {
        RansacConfig { iterations: 1000, epsilon: 0.1, runs: 10 }
    }
}

/// Consensus found by one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RansacRun {
    /// Indices into the input, ascending.
    pub inliers: Vec<usize>,
    /// Spearman correlation over the inliers (0 when either side is constant).
    pub correlation: f64,
    /// Least-squares refit on the inliers.
    pub line: Line,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSummary {
    pub size: usize,
    pub correlation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RansacResult {
    pub inliers: Vec<usize>,
    pub subset_correlation: f64,
    pub line: Line,
    /// One entry per run, in run order.
    pub runs: Vec<RunSummary>,
    /// Index into `runs` of the reported run.
    pub selected_run: usize,
}

fn subset_correlation(points: &[(f64, f64)], idx: &[usize]) -> f64 {
    let xs: Vec<f64> = idx.iter().map(|&i| points[i].0).collect();
    let ys: Vec<f64> = idx.iter().map(|&i| points[i].1).collect();
    spearman(&xs, &ys).unwrap_or(0.0)
}

fn check(points: &[(f64, f64)], epsilon: f64) -> Result<(), StatsError> {
    if points.len() < 2 {
        return Err(StatsError::TooFewPoints { needed: 2, got: points.len() });
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(StatsError::InvalidArgument("epsilon must be positive"));
    }
    Ok(())
}

/// One RANSAC run drawing from `rng`: keeps the largest consensus, ties going
/// to the higher inlier correlation.
fn run_with(
    points: &[(f64, f64)],
    iterations: usize,
    epsilon: f64,
    rng: &mut ChaCha8Rng,
) -> Result<RansacRun, StatsError> {
    let n = points.len();
    let mut best: Option<(Vec<usize>, f64)> = None;
    for _ in 0..iterations {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let Some(line) = Line::through(points[i], points[j]) else {
            continue;
        };
        let inliers: Vec<usize> =
            (0..n).filter(|&k| libm::fabs(points[k].1 - line.at(points[k].0)) <= epsilon).collect();
        let better = match &best {
            None => true,
            Some((b, _)) if inliers.len() != b.len() => inliers.len() > b.len(),
            Some((_, corr)) => subset_correlation(points, &inliers) > *corr,
        };
        if better {
            let corr = subset_correlation(points, &inliers);
            best = Some((inliers, corr));
        }
    }
    let (inliers, correlation) = best.ok_or(StatsError::VerticalLines)?;
    let chosen: Vec<(f64, f64)> = inliers.iter().map(|&k| points[k]).collect();
    // the two sampled points are inliers with distinct x, so the refit exists
    let line = Line::least_squares(&chosen).ok_or(StatsError::VerticalLines)?;
    Ok(RansacRun { inliers, correlation, line })
}

/// A single run seeded with `seed`.
pub fn ransac_run(points: &[(f64, f64)], iterations: usize, epsilon: f64, seed: u64) -> Result<RansacRun, StatsError> {
    check(points, epsilon)?;
    run_with(points, iterations, epsilon, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// `cfg.runs` independent runs; run `r` uses ChaCha8 stream `r` of `seed`.
/// Reports the run whose correlation is the (lower) median.
pub fn ransac_consensus(points: &[(f64, f64)], cfg: &RansacConfig, seed: u64) -> Result<RansacResult, StatsError> {
    check(points, cfg.epsilon)?;
    if cfg.runs == 0 {
        return Err(StatsError::InvalidArgument("runs must be at least 1"));
    }
    let mut runs = Vec::with_capacity(cfg.runs);
    for r in 0..cfg.runs {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(r as u64);
        runs.push(run_with(points, cfg.iterations, cfg.epsilon, &mut rng)?);
    }
    let mut order: Vec<usize> = (0..runs.len()).collect();
    order.sort_by(|&a, &b| {
        runs[a]
            .correlation
            .total_cmp(&runs[b].correlation)
            .then(runs[a].inliers.len().cmp(&runs[b].inliers.len()))
            .then(a.cmp(&b))
    });
    let selected_run = order[(order.len() - 1) / 2];
    let summaries = runs.iter().map(|r| RunSummary { size: r.inliers.len(), correlation: r.correlation }).collect();
    let chosen = runs.swap_remove(selected_run);
    Ok(RansacResult {
        inliers: chosen.inliers,
        subset_correlation: chosen.correlation,
        line: chosen.line,
        runs: summaries,
        selected_run,
    })
}
