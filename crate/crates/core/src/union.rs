//! Classification by activity-pattern similarity against a reference set
//! `U+` of positive objects.
//!
//! For object `i` with pattern `a_i` and weight `H(a_i)`:
//! `q_max(i) = max_{j in U+} <a_i, a_j> / H(a_i)`, `q_min` likewise with min.

use crate::classifier::{scale_for_split, split_training, TrainSize};
use crate::cics::{find_cics, CicList, TrainingSplit};
use crate::cutoff::{optimize_on_grid, CutoffResult, Measure};
use crate::error::{Error, Result};
use crate::indicators::{activity_patterns, overlap, ActivityPatterns};
use crate::matrix::{DataMatrix, Labels};
use crate::metrics::ConfusionStats;
use crate::scaling::StatsMode;

#[derive(Debug, Clone, PartialEq)]
pub struct PatternSimilarity {
    pub objects: Vec<usize>,
    pub q_max: Vec<f64>,
    pub q_min: Vec<f64>,
}

/// Zero-weight patterns score 0 for both indicators.
pub fn pattern_similarity(domain: &ActivityPatterns, reference: &ActivityPatterns) -> Result<PatternSimilarity> {
    if reference.is_empty() {
        return Err(Error::EmptyReferenceSet);
    }
    if domain.width() != reference.width() {
        return Err(Error::LengthMismatch { left: domain.width(), right: reference.width() });
    }
    let mut q_max = Vec::with_capacity(domain.len());
    let mut q_min = Vec::with_capacity(domain.len());
    for p in 0..domain.len() {
        let a = domain.pattern(p);
        let w = domain.weight(p);
        if w == 0 {
            q_max.push(0.0);
            q_min.push(0.0);
            continue;
        }
        let (mut lo, mut hi) = (u32::MAX, 0u32);
        for r in 0..reference.len() {
            let o = overlap(a, reference.pattern(r));
            lo = lo.min(o);
            hi = hi.max(o);
        }
        q_max.push(f64::from(hi) / f64::from(w));
        q_min.push(f64::from(lo) / f64::from(w));
    }
    Ok(PatternSimilarity { objects: domain.objects.clone(), q_max, q_min })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QIndicator {
    #[default]
    Max,
    Min,
}

/// `points` equispaced cutoffs covering `[0, 1]`.
pub fn default_grid(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..points).map(|k| k as f64 / (points - 1) as f64).collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnionConfig {
    pub b_pos: f64,
    pub b_neg: f64,
    pub nb: usize,
    pub train_pos: TrainSize,
    pub train_neg: TrainSize,
    pub u_pos: TrainSize,
    pub indicator: QIndicator,
    pub measure: Measure,
    pub grid: Vec<f64>,
    pub seed: u64,
    pub stats: StatsMode,
    pub quantize_digits: Option<u32>,
}

impl Default for UnionConfig {
    fn default() -> Self {
        Self {
            b_pos: 0.3,
            b_neg: 0.01,
            nb: 1000,
            train_pos: TrainSize::Fraction(0.2),
            train_neg: TrainSize::Fraction(0.05),
            u_pos: TrainSize::Fraction(0.2),
            indicator: QIndicator::Max,
            measure: Measure::Kappa,
            grid: default_grid(101),
            seed: 1,
            stats: StatsMode::Full,
            quantize_digits: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct UnionReport {
    pub config: UnionConfig,
    pub split: TrainingSplit,
    pub cics: CicList,
    pub similarity: PatternSimilarity,
    /// The indicator values that fed the cutoff search.
    pub indicator: Vec<f64>,
    pub truth: Vec<bool>,
    pub cutoff: CutoffResult,
    pub stats: ConfusionStats,
}

/// The pattern-similarity variant of the full pipeline. Predictions cover
/// objects outside `T+ ∪ T- ∪ U+`.
pub fn union_classify(x: &DataMatrix, labels: &Labels, config: &UnionConfig) -> Result<UnionReport> {
    if labels.len() != x.rows() {
        return Err(Error::LengthMismatch { left: labels.len(), right: x.rows() });
    }
    let split = split_training(labels, config.train_pos, config.train_neg, Some(config.u_pos), config.seed)?;
    union_classify_with_split(x, labels, config, split)
}

pub fn union_classify_with_split(x: &DataMatrix, labels: &Labels, config: &UnionConfig, split: TrainingSplit) -> Result<UnionReport> {
    if split.u_pos.is_empty() {
        return Err(Error::EmptyReferenceSet);
    }
    let domain = split.outside_all();
    if domain.is_empty() {
        return Err(Error::NothingToClassify);
    }
    let scaled = scale_for_split(x, &split, config.stats, config.quantize_digits)?;
    let cics = find_cics(&scaled, &split, config.b_pos, config.b_neg, config.nb)?;
    if cics.is_empty() {
        return Err(Error::NoCics);
    }
    let dom = activity_patterns(&scaled, &cics, &domain)?;
    let reference = activity_patterns(&scaled, &cics, &split.u_pos)?;
    let similarity = pattern_similarity(&dom, &reference)?;
    let indicator = match config.indicator {
        QIndicator::Max => similarity.q_max.clone(),
        QIndicator::Min => similarity.q_min.clone(),
    };
    let truth = labels.restrict(&domain);
    let cutoff = optimize_on_grid(&indicator, &truth, &config.grid, config.measure)?;
    let stats = cutoff.stats;
    Ok(UnionReport { config: config.clone(), split, cics, similarity, indicator, truth, cutoff, stats })
}
