//! Histogram-based binary classification of tabular data.
//!
//! Columns are standardized, per-column histograms of positive training
//! objects locate each column's most frequent bin, and columns whose peak bin
//! is rare among negative training objects become indicator columns. An
//! object's score is the number of indicator columns whose peak bin holds its
//! value; a cutoff on that score yields the prediction.

pub mod cics;
pub mod classifier;
pub mod cutoff;
pub mod datagen;
pub mod error;
pub mod histogram;
pub mod indicators;
pub mod io;
pub mod iris;
pub mod matrix;
pub mod metrics;
pub mod scaling;
pub mod union;

pub use cics::{auto_cics, default_top_count, find_cics, manual_cics, relevance_table, Cic, CicList, RelevanceTable, TrainingSplit};
pub use classifier::{classify, split_training, CicMode, CutoffRule, PredictionReport, RunConfig, TrainSize};
pub use cutoff::{batchwise_optimize, naive_cutoff, optimize_cutoff, optimize_on_grid, predict, Measure, NaiveRule};
pub use datagen::{generate, GeneratorSpec, Noise, Planted};
pub use error::{Error, Result};
pub use histogram::{BinBoundaries, Histogram};
pub use indicators::{activity_patterns, indicator_scores, ActivityPatterns, IndicatorScores};
pub use matrix::{DataMatrix, Labels};
pub use metrics::{accuracy, confusion, kappa, ConfusionStats};
pub use scaling::{scale, scale_full, ScaledMatrix, StatsMode};
pub use union::{pattern_similarity, union_classify, PatternSimilarity, QIndicator, UnionConfig};
