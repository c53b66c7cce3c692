//! End-to-end runs: scale, split, select Cics, score, pick a cutoff, compare
//! against the truth.

use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cics::{auto_cics, find_cics, manual_cics, CicList, TrainingSplit};
use crate::cutoff::{
    batchwise_optimize, naive_cutoff, optimize_cutoff, predict_scores, BatchReport, CutoffResult, Measure, NaiveCutoff,
    NaiveRule,
};
use crate::error::{Error, Result};
use crate::indicators::{indicator_scores, IndicatorScores};
use crate::matrix::{DataMatrix, Labels};
use crate::metrics::{confusion, ConfusionStats};
use crate::scaling::{compute_column_stats, scale, ScaledMatrix, StatsMode};

/// Training-set size: an absolute count or a fraction of the class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrainSize {
    Count(usize),
    Fraction(f64),
}

impl TrainSize {
    /// Fractions round down but never below one object.
    pub fn resolve(self, population: usize) -> Result<usize> {
        match self {
            TrainSize::Count(0) => Err(Error::InvalidTrainSize("count must be at least 1".into())),
            TrainSize::Count(k) => Ok(k),
            TrainSize::Fraction(f) if !(f > 0.0 && f <= 1.0) => {
                Err(Error::InvalidTrainSize(format!("fraction {f} outside (0, 1]")))
            }
            TrainSize::Fraction(f) => Ok(((f * population as f64 + 1e-9).floor() as usize).max(1)),
        }
    }

    pub fn describe(self) -> String {
        match self {
            TrainSize::Count(k) => k.to_string(),
            TrainSize::Fraction(f) => format!("{}%", f * 100.0),
        }
    }
}

impl std::str::FromStr for TrainSize {
    type Err = Error;

    /// `"20%"` and `"0.2"` are fractions, `"3"` is a count.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidTrainSize(s.to_string());
        let s = s.trim();
        if let Some(p) = s.strip_suffix('%') {
            let v: f64 = p.trim().parse().map_err(|_| bad())?;
            return Ok(TrainSize::Fraction(v / 100.0));
        }
        if s.contains('.') || s.contains('e') {
            return s.parse().map(TrainSize::Fraction).map_err(|_| bad());
        }
        s.parse().map(TrainSize::Count).map_err(|_| bad())
    }
}

/// Draws `T+`, `T-` and optionally `U+` uniformly without replacement.
/// `U+` is disjoint from `T+`. The draw depends only on the labels, sizes and
/// seed.
pub fn split_training(
    labels: &Labels,
    t_pos: TrainSize,
    t_neg: TrainSize,
    u_pos: Option<TrainSize>,
    seed: u64,
) -> Result<TrainingSplit> {
    let pos = labels.positives();
    let neg = labels.negatives();
    let np = t_pos.resolve(pos.len())?;
    let nn = t_neg.resolve(neg.len())?;
    let nu = u_pos.map(|u| u.resolve(pos.len())).transpose()?.unwrap_or(0);
    if np + nu > pos.len() || nn > neg.len() {
        return Err(Error::InfeasibleSplit {
            requested_pos: np,
            requested_neg: nn,
            requested_u_pos: nu,
            pos: pos.len(),
            neg: neg.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let drawn = sample(&mut rng, pos.len(), np + nu).into_vec();
    let mut tp: Vec<usize> = drawn[..np].iter().map(|&k| pos[k]).collect();
    let mut up: Vec<usize> = drawn[np..].iter().map(|&k| pos[k]).collect();
    let mut tn: Vec<usize> = sample(&mut rng, neg.len(), nn).into_iter().map(|k| neg[k]).collect();
    tp.sort_unstable();
    up.sort_unstable();
    tn.sort_unstable();
    TrainingSplit::new(labels, tp, tn, up)
}

#[derive(Debug, Clone, PartialEq)]
pub enum CicMode {
    Thresholds { b_pos: f64, b_neg: f64 },
    /// Top `t` of the relevance ranking; `None` means `ceil(0.1 * n)`.
    Auto { t: Option<usize> },
    /// 0-based column indices.
    Manual { cols: Vec<usize> },
    /// A fixed list, e.g. exported from an earlier run.
    Given(CicList),
}

impl CicMode {
    pub fn describe(&self) -> String {
        match self {
            CicMode::Thresholds { b_pos, b_neg } => format!("thresholds b_pos={b_pos} b_neg={b_neg}"),
            CicMode::Auto { t: Some(t) } => format!("auto t={t}"),
            CicMode::Auto { t: None } => "auto t=default".into(),
            CicMode::Manual { cols } => {
                let c: Vec<String> = cols.iter().map(|c| (c + 1).to_string()).collect();
                format!("manual cols={}", c.join(","))
            }
            CicMode::Given(list) => format!("imported ({} cics)", list.len()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CutoffRule {
    #[default]
    Optimize,
    Naive(NaiveRule),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub cic_mode: CicMode,
    pub nb: usize,
    pub train_pos: TrainSize,
    pub train_neg: TrainSize,
    pub measure: Measure,
    pub cutoff: CutoffRule,
    pub seed: u64,
    pub stats: StatsMode,
    pub quantize_digits: Option<u32>,
    pub batch_size: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            cic_mode: CicMode::Thresholds { b_pos: 0.3, b_neg: 0.01 },
            nb: 1000,
            train_pos: TrainSize::Fraction(0.2),
            train_neg: TrainSize::Fraction(0.05),
            measure: Measure::Kappa,
            cutoff: CutoffRule::Optimize,
            seed: 1,
            stats: StatsMode::Full,
            quantize_digits: None,
            batch_size: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Timing {
    pub scale: Duration,
    pub cics: Duration,
    pub scores: Duration,
    pub cutoff: Duration,
}

impl Timing {
    pub fn total(&self) -> Duration {
        self.scale + self.cics + self.scores + self.cutoff
    }
}

#[derive(Debug, Clone)]
pub struct PredictionReport {
    pub config: RunConfig,
    pub split: TrainingSplit,
    pub scaled: ScaledMatrix,
    pub cics: CicList,
    /// Scores over the objects outside the training sets, ascending index.
    pub scores: IndicatorScores,
    /// Truth restricted to `scores.objects`.
    pub truth: Vec<bool>,
    /// The full cutoff scan, kept even when the naive rule picks the cutoff.
    pub sweep: CutoffResult,
    pub naive: Option<NaiveCutoff>,
    pub cutoff: f64,
    pub predictions: Vec<bool>,
    pub stats: ConfusionStats,
    pub batch: Option<BatchReport>,
    pub timing: Timing,
}

fn check_inputs(x: &DataMatrix, labels: &Labels) -> Result<()> {
    if labels.len() != x.rows() {
        return Err(Error::LengthMismatch { left: labels.len(), right: x.rows() });
    }
    let p = labels.count_positive();
    if p == 0 || p == labels.len() {
        return Err(Error::SingleClass);
    }
    Ok(())
}

/// Scales `x` with the configured statistics (full matrix, or training rows
/// only) and optional quantization.
pub fn scale_for_split(x: &DataMatrix, split: &TrainingSplit, mode: StatsMode, quantize: Option<u32>) -> Result<ScaledMatrix> {
    let stats = if mode.is_training_only() {
        compute_column_stats(x, Some(&split.training()), mode)?
    } else {
        compute_column_stats(x, None, mode)?
    };
    Ok(scale(x, &stats, quantize))
}

pub fn select_cics(s: &ScaledMatrix, split: &TrainingSplit, mode: &CicMode, nb: usize) -> Result<CicList> {
    match mode {
        CicMode::Thresholds { b_pos, b_neg } => find_cics(s, split, *b_pos, *b_neg, nb),
        CicMode::Auto { t } => auto_cics(s, split, nb, *t),
        CicMode::Manual { cols } => manual_cics(s, split, nb, cols),
        CicMode::Given(list) => {
            list.check_columns(s.cols())?;
            Ok(list.clone())
        }
    }
}

/// Runs the whole pipeline. Deterministic for fixed inputs and config.
pub fn classify(x: &DataMatrix, labels: &Labels, config: &RunConfig) -> Result<PredictionReport> {
    check_inputs(x, labels)?;
    let split = split_training(labels, config.train_pos, config.train_neg, None, config.seed)?;
    classify_with_split(x, labels, config, split)
}

/// [`classify`] with a caller-provided training split.
pub fn classify_with_split(x: &DataMatrix, labels: &Labels, config: &RunConfig, split: TrainingSplit) -> Result<PredictionReport> {
    check_inputs(x, labels)?;
    let domain = split.outside_training();
    if domain.is_empty() {
        return Err(Error::NothingToClassify);
    }
    let training = split.training();
    assert!(
        domain.iter().all(|i| training.binary_search(i).is_err()),
        "training object in prediction domain"
    );

    let mut timing = Timing::default();
    let t0 = Instant::now();
    let scaled = scale_for_split(x, &split, config.stats, config.quantize_digits)?;
    timing.scale = t0.elapsed();

    let t0 = Instant::now();
    let cics = select_cics(&scaled, &split, &config.cic_mode, config.nb)?;
    timing.cics = t0.elapsed();
    if cics.is_empty() {
        return Err(Error::NoCics);
    }

    let t0 = Instant::now();
    let scores = indicator_scores(&scaled, &cics, &domain)?;
    timing.scores = t0.elapsed();
    let truth = labels.restrict(&domain);

    let t0 = Instant::now();
    let sweep = optimize_cutoff(&scores, &truth, config.measure)?;
    let (cutoff, naive) = match config.cutoff {
        CutoffRule::Optimize => (sweep.c_opt, None),
        CutoffRule::Naive(rule) => {
            let n = naive_cutoff(&scores.as_f64(), &truth, rule)?;
            (n.cutoff, Some(n))
        }
    };
    let predictions = predict_scores(&scores, cutoff);
    let stats = confusion(&truth, &predictions)?;
    let batch = config
        .batch_size
        .map(|b| batchwise_optimize(&scores, &truth, b, config.measure))
        .transpose()?;
    timing.cutoff = t0.elapsed();

    Ok(PredictionReport {
        config: config.clone(),
        split,
        scaled,
        cics,
        scores,
        truth,
        sweep,
        naive,
        cutoff,
        predictions,
        stats,
        batch,
        timing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn train_size_parsing_and_rounding() {
        assert_eq!("20%".parse::<TrainSize>().unwrap(), TrainSize::Fraction(0.2));
        assert_eq!("0.5".parse::<TrainSize>().unwrap(), TrainSize::Fraction(0.5));
        assert_eq!("3".parse::<TrainSize>().unwrap(), TrainSize::Count(3));
        assert!("x".parse::<TrainSize>().is_err());
        assert_eq!(TrainSize::Fraction(0.00125).resolve(1600).unwrap(), 2);
        assert_eq!(TrainSize::Fraction(0.00005).resolve(9500).unwrap(), 1);
        assert_eq!(TrainSize::Fraction(0.29).resolve(100).unwrap(), 29);
        assert_eq!(TrainSize::Fraction(0.6).resolve(50).unwrap(), 30);
        assert!(TrainSize::Fraction(1.5).resolve(10).is_err());
        assert!(TrainSize::Count(0).resolve(10).is_err());
    }

    #[test]
    fn split_sizes_and_determinism() {
        let bits: Vec<bool> = (0..10_000).map(|i| i % 7 == 0).collect();
        let labels = Labels::new(bits);
        let (p, n) = (labels.count_positive(), labels.len() - labels.count_positive());
        let a = split_training(&labels, TrainSize::Fraction(0.2), TrainSize::Fraction(0.05), None, 9).unwrap();
        let b = split_training(&labels, TrainSize::Fraction(0.2), TrainSize::Fraction(0.05), None, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.t_pos.len(), (0.2 * p as f64).floor() as usize);
        assert_eq!(a.t_neg.len(), (0.05 * n as f64).floor() as usize);
        let c = split_training(&labels, TrainSize::Fraction(0.2), TrainSize::Fraction(0.05), None, 10).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn reference_set_is_disjoint() {
        let labels = Labels::new((0..100).map(|i| i < 40).collect());
        let s = split_training(&labels, TrainSize::Count(10), TrainSize::Count(5), Some(TrainSize::Count(30)), 3).unwrap();
        assert_eq!(s.u_pos.len(), 30);
        assert!(s.u_pos.iter().all(|i| !s.t_pos.contains(i)));
        assert_eq!(s.outside_all().len(), 55);
        let err = split_training(&labels, TrainSize::Count(10), TrainSize::Count(5), Some(TrainSize::Count(31)), 3).unwrap_err();
        assert!(err.to_string().contains("40 positive / 60 negative"), "{err}");
    }

    #[test]
    fn exhaustive_training_leaves_nothing() {
        let x = DataMatrix::from_columns(vec![vec![0.0, 1.0, 2.0, 3.0]]).unwrap();
        let labels = Labels::from_bits(&[1, 1, 0, 0]);
        let cfg = RunConfig { train_pos: TrainSize::Fraction(1.0), train_neg: TrainSize::Fraction(1.0), ..RunConfig::default() };
        let err = classify(&x, &labels, &cfg).unwrap_err();
        assert!(err.to_string().starts_with("nothing to classify"));
    }

    #[test]
    fn constant_feature_yields_no_cics() {
        let x = DataMatrix::from_columns(vec![vec![4.2; 50]]).unwrap();
        let labels = Labels::new((0..50).map(|i| i % 5 == 0).collect());
        let err = classify(&x, &labels, &RunConfig { nb: 10, ..RunConfig::default() }).unwrap_err();
        assert_eq!(err.to_string(), "no candidate indicator columns");
    }

    #[test]
    fn single_class_is_rejected() {
        let x = DataMatrix::from_columns(vec![vec![1.0, 2.0]]).unwrap();
        assert!(matches!(classify(&x, &Labels::from_bits(&[1, 1]), &RunConfig::default()), Err(Error::SingleClass)));
    }
}
