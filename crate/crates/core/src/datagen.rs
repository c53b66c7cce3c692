//! Synthetic lots with planted indicator columns.
//!
//! Positive objects carry, in each planted column and with probability
//! `hit_rate`, a value drawn from a narrow band `shift + spread * N(0, 1)`.
//! Everything else is background noise. Discrete columns are the last
//! `discrete_cols` columns and hold uniform integers in `0..discrete_levels`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, StandardNormal};

use crate::error::{Error, Result};
use crate::matrix::{DataMatrix, Labels};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Noise {
    #[default]
    Normal,
    /// Two-sided exponential with unit variance.
    Laplace,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Planted {
    pub col: usize,
    /// Band centre, in units of the background standard deviation.
    pub shift: f64,
    pub spread: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub m: usize,
    pub n: usize,
    pub positive_rate: f64,
    pub planted: Vec<Planted>,
    /// Probability that a positive object falls in the band of a given
    /// planted column.
    pub hit_rate: f64,
    pub noise: Noise,
    pub discrete_cols: usize,
    pub discrete_levels: u32,
    pub seed: u64,
}

impl GeneratorSpec {
    /// 10 000 x 50 lot, 5% positives, 4 planted columns at 8σ.
    ///
    /// The band has zero spread, like a quantized measurement: positives that
    /// hit it share one value, so the band never straddles a bin edge and
    /// still fills one bin when every positive training object hits it.
    pub fn planted_lot(seed: u64) -> Self {
        Self {
            m: 10_000,
            n: 50,
            positive_rate: 0.05,
            planted: [7, 19, 30, 42].iter().map(|&col| Planted { col, shift: 8.0, spread: 0.0 }).collect(),
            hit_rate: 0.97,
            noise: Noise::Normal,
            discrete_cols: 0,
            discrete_levels: 8,
            seed,
        }
    }

    /// Like [`GeneratorSpec::planted_lot`] but every positive sits in every band.
    pub fn separable_lot(seed: u64) -> Self {
        Self { hit_rate: 1.0, ..Self::planted_lot(seed) }
    }

    pub fn planted_columns(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.planted.iter().map(|p| p.col).collect();
        c.sort_unstable();
        c
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSpec(m));
        if self.m == 0 || self.n == 0 {
            return bad(format!("matrix must be non-empty, got {} x {}", self.m, self.n));
        }
        if !(self.positive_rate > 0.0 && self.positive_rate < 1.0) {
            return bad(format!("positive_rate {} outside (0, 1)", self.positive_rate));
        }
        if !(0.0..=1.0).contains(&self.hit_rate) {
            return bad(format!("hit_rate {} outside [0, 1]", self.hit_rate));
        }
        if self.discrete_cols > self.n {
            return bad(format!("{} discrete columns exceed {} columns", self.discrete_cols, self.n));
        }
        if self.discrete_cols > 0 && self.discrete_levels == 0 {
            return bad("discrete_levels must be positive".into());
        }
        let first_discrete = self.n - self.discrete_cols;
        let mut seen = vec![false; self.n];
        for p in &self.planted {
            if p.col >= self.n {
                return bad(format!("planted column {} out of range", p.col));
            }
            if p.col >= first_discrete {
                return bad(format!("planted column {} is a discrete column", p.col));
            }
            if std::mem::replace(&mut seen[p.col], true) {
                return bad(format!("planted column {} listed twice", p.col));
            }
            if !(p.shift.is_finite() && p.spread.is_finite() && p.spread >= 0.0) {
                return bad(format!("planted column {} has invalid shift/spread", p.col));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedLot {
    pub matrix: DataMatrix,
    pub labels: Labels,
    /// Ground-truth planted columns, ascending.
    pub planted: Vec<usize>,
}

fn draw_noise(rng: &mut ChaCha8Rng, noise: Noise) -> f64 {
    match noise {
        Noise::Normal => rng.sample(StandardNormal),
        Noise::Laplace => {
            let e = Exp::new(std::f64::consts::SQRT_2).expect("positive rate").sample(rng);
            if rng.random_bool(0.5) {
                e
            } else {
                -e
            }
        }
    }
}

/// Exactly `round(positive_rate * m)` positives (clamped to `1..m`) at
/// shuffled positions, then the columns left to right from one stream.
pub fn generate(spec: &GeneratorSpec) -> Result<GeneratedLot> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let npos = ((spec.positive_rate * spec.m as f64).round() as usize).clamp(1, spec.m.saturating_sub(1).max(1));
    let mut bits: Vec<bool> = (0..spec.m).map(|i| i < npos).collect();
    bits.shuffle(&mut rng);

    let mut band: Vec<Option<&Planted>> = vec![None; spec.n];
    for p in &spec.planted {
        band[p.col] = Some(p);
    }
    let first_discrete = spec.n - spec.discrete_cols;
    let mut columns = Vec::with_capacity(spec.n);
    for (j, planted) in band.iter().enumerate() {
        let col: Vec<f64> = if j >= first_discrete {
            (0..spec.m).map(|_| f64::from(rng.random_range(0..spec.discrete_levels))).collect()
        } else {
            bits.iter()
                .map(|&positive| match planted {
                    Some(p) if positive && rng.random_bool(spec.hit_rate) => {
                        let z: f64 = rng.sample(StandardNormal);
                        p.shift + p.spread * z
                    }
                    _ => draw_noise(&mut rng, spec.noise),
                })
                .collect()
        };
        columns.push(col);
    }
    Ok(GeneratedLot {
        matrix: DataMatrix::from_columns(columns)?,
        labels: Labels::new(bits),
        planted: spec.planted_columns(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(seed: u64) -> GeneratorSpec {
        GeneratorSpec { m: 2000, n: 12, discrete_cols: 3, ..GeneratorSpec::planted_lot(seed) }
            .with_planted(&[1, 5])
    }

    impl GeneratorSpec {
        fn with_planted(mut self, cols: &[usize]) -> Self {
            self.planted = cols.iter().map(|&col| Planted { col, shift: 8.0, spread: 0.001 }).collect();
            self
        }
    }

    #[test]
    fn deterministic_by_seed() {
        assert_eq!(generate(&small(4)).unwrap(), generate(&small(4)).unwrap());
        assert_ne!(generate(&small(4)).unwrap().matrix, generate(&small(5)).unwrap().matrix);
    }

    #[test]
    fn label_rate_and_finiteness() {
        for seed in 0..5 {
            let spec = small(seed);
            let lot = generate(&spec).unwrap();
            let p = spec.positive_rate;
            let rate = lot.labels.count_positive() as f64 / spec.m as f64;
            assert!((rate - p).abs() <= 2.0 * (p * (1.0 - p) / spec.m as f64).sqrt());
            assert!(lot.matrix.columns().flatten().all(|v| v.is_finite()));
        }
    }

    #[test]
    fn discrete_columns_hold_integers() {
        let lot = generate(&small(1)).unwrap();
        for j in 9..12 {
            assert!(lot.matrix.column(j).iter().all(|v| v.fract() == 0.0 && (0.0..8.0).contains(v)));
        }
    }

    #[test]
    fn planted_band_only_for_positives() {
        let lot = generate(&GeneratorSpec { hit_rate: 1.0, ..small(2) }).unwrap();
        for i in 0..lot.matrix.rows() {
            let v = lot.matrix.get(i, 5);
            assert_eq!(lot.labels.get(i), (v - 8.0).abs() < 0.01, "row {i} value {v}");
        }
    }

    #[test]
    fn laplace_noise_has_unit_variance() {
        let lot = generate(&GeneratorSpec { m: 40_000, n: 1, discrete_cols: 0, planted: vec![], noise: Noise::Laplace, ..small(3) }).unwrap();
        let c = lot.matrix.column(0);
        let mean = c.iter().sum::<f64>() / c.len() as f64;
        let var = c.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / c.len() as f64;
        assert!(mean.abs() < 0.03 && (var - 1.0).abs() < 0.06, "{mean} {var}");
    }

    #[test]
    fn invalid_specs() {
        let ok = small(0);
        for bad in [
            GeneratorSpec { positive_rate: 0.0, ..ok.clone() },
            GeneratorSpec { positive_rate: 1.0, ..ok.clone() },
            ok.clone().with_planted(&[12]),
            ok.clone().with_planted(&[3, 3]),
            ok.clone().with_planted(&[10]),
            GeneratorSpec { m: 0, ..ok.clone() },
        ] {
            assert!(matches!(generate(&bad), Err(Error::InvalidSpec(_))), "{bad:?}");
        }
    }
}
