//! From scores to binary predictions.
//!
//! `F(i, c) = 1` iff `score(i) >= c`. The cutoff is either picked from the
//! class averages or found by scanning candidate cutoffs for the best
//! agreement with the known truth.

use crate::error::{Error, Result};
use crate::indicators::IndicatorScores;
use crate::metrics::ConfusionStats;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Measure {
    Accuracy,
    #[default]
    Kappa,
}

impl Measure {
    pub fn of(self, stats: &ConfusionStats) -> f64 {
        match self {
            Measure::Accuracy => stats.accuracy,
            Measure::Kappa => stats.kappa,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Measure::Accuracy => "accuracy",
            Measure::Kappa => "kappa",
        }
    }
}

/// Bit `p` is set iff `scores[p] >= c`, in the order of `scores`.
pub fn predict(scores: &[f64], c: f64) -> Vec<bool> {
    scores.iter().map(|&s| s >= c).collect()
}

pub fn predict_scores(scores: &IndicatorScores, c: f64) -> Vec<bool> {
    scores.scores.iter().map(|&s| f64::from(s) >= c).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NaiveRule {
    /// `(Av1 - Av0) / 2`.
    #[default]
    HalfGap,
    /// `(Av1 + Av0) / 2`.
    Midpoint,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NaiveCutoff {
    pub cutoff: f64,
    /// Mean score of truly positive objects.
    pub av_pos: f64,
    /// Mean score of truly negative objects.
    pub av_neg: f64,
}

impl NaiveCutoff {
    /// `Av1 < Av0` hints at training sets that are not characteristic.
    pub fn suspicious(&self) -> bool {
        self.av_pos < self.av_neg
    }
}

pub fn naive_cutoff(scores: &[f64], truth: &[bool], rule: NaiveRule) -> Result<NaiveCutoff> {
    if scores.len() != truth.len() {
        return Err(Error::LengthMismatch { left: scores.len(), right: truth.len() });
    }
    let (mut sp, mut np, mut sn, mut nn) = (0.0, 0usize, 0.0, 0usize);
    for (&s, &t) in scores.iter().zip(truth) {
        if t {
            sp += s;
            np += 1;
        } else {
            sn += s;
            nn += 1;
        }
    }
    if np == 0 {
        return Err(Error::EmptyClass("positive"));
    }
    if nn == 0 {
        return Err(Error::EmptyClass("negative"));
    }
    let (av_pos, av_neg) = (sp / np as f64, sn / nn as f64);
    let cutoff = match rule {
        NaiveRule::HalfGap => (av_pos - av_neg) / 2.0,
        NaiveRule::Midpoint => (av_pos + av_neg) / 2.0,
    };
    Ok(NaiveCutoff { cutoff, av_pos, av_neg })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub cutoff: f64,
    pub accuracy: f64,
    pub kappa: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CutoffResult {
    pub measure: Measure,
    pub c_opt: f64,
    pub q_opt: f64,
    pub sweep: Vec<SweepPoint>,
    pub predictions: Vec<bool>,
    pub stats: ConfusionStats,
}

/// Class-sorted scores; counts of predicted positives per cutoff come from
/// binary search.
struct Tally {
    pos: Vec<f64>,
    neg: Vec<f64>,
}

impl Tally {
    fn new(scores: &[f64], truth: &[bool]) -> Self {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (&s, &t) in scores.iter().zip(truth) {
            if t { pos.push(s) } else { neg.push(s) }
        }
        pos.sort_by(f64::total_cmp);
        neg.sort_by(f64::total_cmp);
        Self { pos, neg }
    }

    fn stats(&self, c: f64) -> ConfusionStats {
        let tp = self.pos.len() - self.pos.partition_point(|&s| s < c);
        let fp = self.neg.len() - self.neg.partition_point(|&s| s < c);
        ConfusionStats::from_counts(tp, fp, self.neg.len() - fp, self.pos.len() - tp)
    }
}

/// Evaluates every candidate cutoff and keeps the best one under `measure`
/// (smallest cutoff on ties).
pub fn optimize_on_grid(scores: &[f64], truth: &[bool], grid: &[f64], measure: Measure) -> Result<CutoffResult> {
    if scores.len() != truth.len() {
        return Err(Error::LengthMismatch { left: scores.len(), right: truth.len() });
    }
    if scores.is_empty() {
        return Err(Error::EmptyVector);
    }
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let tally = Tally::new(scores, truth);
    let mut sweep = Vec::with_capacity(grid.len());
    let mut best: Option<(f64, f64, ConfusionStats)> = None;
    for &c in grid {
        let st = tally.stats(c);
        sweep.push(SweepPoint { cutoff: c, accuracy: st.accuracy, kappa: st.kappa });
        let q = measure.of(&st);
        let better = match best {
            None => true,
            Some((bc, bq, _)) => q > bq || (q == bq && c < bc),
        };
        if better {
            best = Some((c, q, st));
        }
    }
    let (c_opt, q_opt, stats) = best.expect("grid is nonempty");
    Ok(CutoffResult { measure, c_opt, q_opt, sweep, predictions: predict(scores, c_opt), stats })
}

/// Scans every integer cutoff from the smallest to the largest score.
pub fn optimize_cutoff(scores: &IndicatorScores, truth: &[bool], measure: Measure) -> Result<CutoffResult> {
    let (Some(lo), Some(hi)) = (scores.min(), scores.max()) else {
        return Err(Error::EmptyVector);
    };
    let grid: Vec<f64> = (lo..=hi).map(f64::from).collect();
    optimize_on_grid(&scores.as_f64(), truth, &grid, measure)
}

/// Predictions and statistics at a fixed cutoff.
pub fn evaluate_at(scores: &[f64], truth: &[bool], c: f64) -> Result<ConfusionStats> {
    let w = predict(scores, c);
    crate::metrics::confusion(truth, &w)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatchResult {
    /// Half-open position range within the evaluation domain.
    pub start: usize,
    pub end: usize,
    pub c_opt: f64,
    pub kappa: f64,
    pub accuracy: f64,
    pub stats: ConfusionStats,
}

/// Batch counts per kappa interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct KappaCensus {
    pub exactly_one: usize,
    pub from_0_9: usize,
    pub from_0_8: usize,
    pub from_0_7: usize,
    pub below_0_7: usize,
}

impl KappaCensus {
    pub fn total(&self) -> usize {
        self.exactly_one + self.from_0_9 + self.from_0_8 + self.from_0_7 + self.below_0_7
    }

    fn add(&mut self, k: f64) {
        match k {
            k if k >= 1.0 => self.exactly_one += 1,
            k if k >= 0.9 => self.from_0_9 += 1,
            k if k >= 0.8 => self.from_0_8 += 1,
            k if k >= 0.7 => self.from_0_7 += 1,
            _ => self.below_0_7 += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchReport {
    pub batch_size: usize,
    pub measure: Measure,
    pub batches: Vec<BatchResult>,
    pub min_kappa: f64,
    pub max_kappa: f64,
    pub census: KappaCensus,
}

impl BatchReport {
    pub fn render(&self) -> String {
        use crate::metrics::fmt_fixed;
        let mut out = format!("batch size {} ({} batches, optimized for {})\n", self.batch_size, self.batches.len(), self.measure.name());
        out.push_str("batch  objects        cutoff  kappa   accuracy%\n");
        for (b, r) in self.batches.iter().enumerate() {
            out.push_str(&format!(
                "{:>5}  {:>6}-{:<6}  {:>6}  {:>6}  {:>9}\n",
                b + 1,
                r.start,
                r.end,
                r.c_opt,
                fmt_fixed(r.kappa, 3),
                fmt_fixed(100.0 * r.accuracy, 1)
            ));
        }
        out.push_str(&format!("Max Kappa  {}\n", fmt_fixed(self.max_kappa, 3)));
        out.push_str(&format!("Min Kappa  {}\n", fmt_fixed(self.min_kappa, 3)));
        let c = &self.census;
        out.push_str(&format!("#Batches with kappa=1.0         {}\n", c.exactly_one));
        out.push_str(&format!("#Batches with kappa in [0.9,1.0) {}\n", c.from_0_9));
        out.push_str(&format!("#Batches with kappa in [0.8,0.9) {}\n", c.from_0_8));
        out.push_str(&format!("#Batches with kappa in [0.7,0.8) {}\n", c.from_0_7));
        out.push_str(&format!("#Batches with kappa < 0.7        {}\n", c.below_0_7));
        out
    }
}

/// Optimizes the cutoff separately on consecutive slices of `batch_size`
/// objects (the last slice may be shorter).
pub fn batchwise_optimize(scores: &IndicatorScores, truth: &[bool], batch_size: usize, measure: Measure) -> Result<BatchReport> {
    if batch_size == 0 {
        return Err(Error::ZeroBatchSize);
    }
    if scores.len() != truth.len() {
        return Err(Error::LengthMismatch { left: scores.len(), right: truth.len() });
    }
    if scores.is_empty() {
        return Err(Error::EmptyVector);
    }
    let mut batches = Vec::new();
    let mut census = KappaCensus::default();
    let mut start = 0;
    while start < scores.len() {
        let end = (start + batch_size).min(scores.len());
        let slice = IndicatorScores {
            objects: scores.objects[start..end].to_vec(),
            scores: scores.scores[start..end].to_vec(),
        };
        let r = optimize_cutoff(&slice, &truth[start..end], measure)?;
        census.add(r.stats.kappa);
        batches.push(BatchResult {
            start,
            end,
            c_opt: r.c_opt,
            kappa: r.stats.kappa,
            accuracy: r.stats.accuracy,
            stats: r.stats,
        });
        start = end;
    }
    let min_kappa = batches.iter().map(|b| b.kappa).fold(f64::INFINITY, f64::min);
    let max_kappa = batches.iter().map(|b| b.kappa).fold(f64::NEG_INFINITY, f64::max);
    Ok(BatchReport { batch_size, measure, batches, min_kappa, max_kappa, census })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{accuracy, kappa};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sc(v: &[u32]) -> IndicatorScores {
        IndicatorScores { objects: (0..v.len()).collect(), scores: v.to_vec() }
    }

    // Rebuilds each prediction vector and evaluates the footnote formulas.
    fn brute_force(scores: &[u32], truth: &[bool], measure: Measure) -> (f64, f64) {
        let lo = *scores.iter().min().unwrap();
        let hi = *scores.iter().max().unwrap();
        let mut best = (f64::NAN, f64::NEG_INFINITY);
        for c in lo..=hi {
            let w: Vec<bool> = scores.iter().map(|&s| s >= c).collect();
            let q = match measure {
                Measure::Accuracy => accuracy(truth, &w).unwrap(),
                Measure::Kappa => kappa(truth, &w).unwrap(),
            };
            if q > best.1 {
                best = (f64::from(c), q);
            }
        }
        best
    }

    #[test]
    fn predict_examples() {
        let s = [2.0, 5.0, 7.0];
        assert_eq!(predict(&s, 0.0), vec![true; 3]);
        assert_eq!(predict(&s, 8.0), vec![false; 3]);
        assert_eq!(predict(&s, 5.0), vec![false, true, true]);
    }

    #[test]
    fn naive_examples() {
        let t = [true, true, false, false];
        let n = naive_cutoff(&[4.0, 6.0, 1.0, 1.0], &t, NaiveRule::HalfGap).unwrap();
        assert_eq!((n.av_pos, n.av_neg, n.cutoff), (5.0, 1.0, 2.0));
        assert_eq!(naive_cutoff(&[10.0, 10.0, 0.0, 0.0], &t, NaiveRule::HalfGap).unwrap().cutoff, 5.0);
        assert_eq!(naive_cutoff(&[3.0, 3.0, 3.0, 3.0], &t, NaiveRule::HalfGap).unwrap().cutoff, 0.0);
        assert_eq!(naive_cutoff(&[4.0, 6.0, 1.0, 1.0], &t, NaiveRule::Midpoint).unwrap().cutoff, 3.0);
        assert!(naive_cutoff(&[1.0, 2.0, 3.0, 4.0], &t, NaiveRule::HalfGap).unwrap().cutoff < 0.0);
        assert!(naive_cutoff(&[1.0, 2.0, 3.0, 4.0], &t, NaiveRule::HalfGap).unwrap().suspicious());
        assert!(matches!(naive_cutoff(&[1.0], &[true], NaiveRule::HalfGap), Err(Error::EmptyClass("negative"))));
    }

    #[test]
    fn separated_scores_reach_kappa_one() {
        let r = optimize_cutoff(&sc(&[3, 4, 5, 0, 1, 2]), &[true, true, true, false, false, false], Measure::Kappa).unwrap();
        assert_eq!(r.q_opt, 1.0);
        assert_eq!(r.c_opt, 3.0);
        assert_eq!(r.sweep.len(), 6);
    }

    #[test]
    fn single_score_value() {
        let r = optimize_cutoff(&sc(&[2, 2, 2]), &[true, false, true], Measure::Accuracy).unwrap();
        assert_eq!(r.sweep.len(), 1);
        assert_eq!(r.c_opt, 2.0);
        assert_eq!(r.predictions, vec![true; 3]);
    }

    #[test]
    fn random_instances_match_exhaustive_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..50 {
            let scores: Vec<u32> = (0..300).map(|_| rng.random_range(0..9)).collect();
            let truth: Vec<bool> = scores.iter().map(|&s| rng.random_bool(0.05 + 0.1 * f64::from(s))).collect();
            for m in [Measure::Kappa, Measure::Accuracy] {
                let r = optimize_cutoff(&sc(&scores), &truth, m).unwrap();
                let (c, q) = brute_force(&scores, &truth, m);
                assert_eq!((r.c_opt, r.q_opt), (c, q));
            }
        }
    }

    #[test]
    fn batch_errors_and_degenerate_batching() {
        let s = sc(&[0, 1, 2, 3]);
        let t = [false, false, true, true];
        assert!(matches!(batchwise_optimize(&s, &t, 0, Measure::Kappa), Err(Error::ZeroBatchSize)));
        let whole = optimize_cutoff(&s, &t, Measure::Kappa).unwrap();
        let b = batchwise_optimize(&s, &t, 10, Measure::Kappa).unwrap();
        assert_eq!(b.batches.len(), 1);
        assert_eq!(b.batches[0].c_opt, whole.c_opt);
        assert_eq!(b.batches[0].kappa, whole.stats.kappa);
    }

    #[test]
    fn batches_partition_in_order() {
        let s = sc(&[0, 3, 1, 3, 0, 2, 3]);
        let t = [false, true, false, true, false, true, true];
        let b = batchwise_optimize(&s, &t, 3, Measure::Kappa).unwrap();
        let ranges: Vec<_> = b.batches.iter().map(|r| (r.start, r.end)).collect();
        assert_eq!(ranges, vec![(0, 3), (3, 6), (6, 7)]);
        assert_eq!(b.census.total(), 3);
        assert!(b.render().contains("Max Kappa"));
    }

    proptest! {
        #[test]
        fn predict_is_monotone(scores in prop::collection::vec(0u32..20, 1..50), c1 in 0u32..22, d in 0u32..5) {
            let f: Vec<f64> = scores.iter().map(|&s| f64::from(s)).collect();
            let lo = predict(&f, f64::from(c1));
            let hi = predict(&f, f64::from(c1 + d));
            prop_assert!(lo.iter().zip(&hi).all(|(a, b)| *a || !*b));
        }

        #[test]
        fn optimum_never_loses_to_naive(pairs in prop::collection::vec((0u32..10, any::<bool>()), 2..80)) {
            let (scores, mut truth): (Vec<u32>, Vec<bool>) = pairs.into_iter().unzip();
            truth[0] = true;
            truth[1] = false;
            let s = sc(&scores);
            let r = optimize_cutoff(&s, &truth, Measure::Kappa).unwrap();
            prop_assert_eq!(r.sweep.len() as u32, s.max().unwrap() - s.min().unwrap() + 1);
            let naive = naive_cutoff(&s.as_f64(), &truth, NaiveRule::HalfGap).unwrap().cutoff;
            let clamped = naive.ceil().clamp(f64::from(s.min().unwrap()), f64::from(s.max().unwrap()));
            let at_naive = evaluate_at(&s.as_f64(), &truth, clamped).unwrap();
            prop_assert!(r.q_opt >= at_naive.kappa);
        }
    }
}
