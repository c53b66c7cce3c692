//! Histograms with `nb` bins: two unbounded outer bins and `nb - 2` finite
//! inner bins.
//!
//! Bin `k` is the half-open interval `[a_k, a_{k+1})` with `a_0 = -inf` and
//! `a_nb = +inf`, so the inner boundaries `a_1 < ... < a_{nb-1}` fully
//! describe a partition.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
enum Layout {
    /// `a_k = min + (k - 1) * width` for `k = 1..nb-1`, except that the top
    /// boundary may sit slightly above that grid.
    EqualWidth { min: f64, width: f64 },
    Arbitrary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BinBoundaries {
    inner: Vec<f64>,
    layout: Layout,
}

/// Margin added above the sample maximum so it stays inside the last inner bin.
pub fn top_epsilon(max: f64) -> f64 {
    1e-9f64.max(1e-9 * max.abs())
}

impl BinBoundaries {
    /// Arbitrary strictly ascending inner boundaries `a_1..a_{nb-1}`.
    pub fn new(inner: Vec<f64>) -> Result<Self> {
        if inner.len() + 1 < 3 {
            return Err(Error::TooFewBins(inner.len() + 1));
        }
        if inner.iter().any(|a| !a.is_finite()) || inner.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnsortedBoundaries);
        }
        Ok(Self { inner, layout: Layout::Arbitrary })
    }

    /// Equal-width boundaries spanning the sample: `a_1 = min(x)`,
    /// `a_{nb-1} = max(x) + eps`, inner width `(max - min) / (nb - 2)`.
    ///
    /// A sample whose range is below `eps` gets width `eps`, which puts every
    /// value into bin 1.
    pub fn equal_width(x: &[f64], nb: usize) -> Result<Self> {
        if nb < 3 {
            return Err(Error::TooFewBins(nb));
        }
        let (min, max) = x
            .iter()
            .fold(None, |acc: Option<(f64, f64)>, &v| match acc {
                None => Some((v, v)),
                Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
            })
            .ok_or(Error::EmptySample)?;
        let eps = top_epsilon(max);
        let range = max - min;
        let (width, interior) = if range < eps { (eps, nb - 1) } else { (range / (nb - 2) as f64, nb - 2) };
        let mut inner = Vec::with_capacity(nb - 1);
        inner.push(min);
        for k in 2..=interior {
            inner.push(switch_point(min, width, k));
        }
        if interior == nb - 2 {
            inner.push(max + eps);
        }
        if inner.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnsortedBoundaries);
        }
        Ok(Self { inner, layout: Layout::EqualWidth { min, width } })
    }

    pub fn nb(&self) -> usize {
        self.inner.len() + 1
    }

    /// The finite boundaries `a_1..a_{nb-1}`.
    pub fn inner(&self) -> &[f64] {
        &self.inner
    }

    /// Boundary `a_k` for `k = 0..=nb`, infinite at both ends.
    pub fn boundary(&self, k: usize) -> f64 {
        if k == 0 {
            f64::NEG_INFINITY
        } else if k >= self.nb() {
            f64::INFINITY
        } else {
            self.inner[k - 1]
        }
    }

    /// `(a_k, a_{k+1})` for bin `k`.
    pub fn bin_range(&self, k: usize) -> (f64, f64) {
        (self.boundary(k), self.boundary(k + 1))
    }

    pub fn is_equal_width(&self) -> bool {
        matches!(self.layout, Layout::EqualWidth { .. })
    }

    /// Index of the bin containing `v`.
    ///
    /// Equal-width boundaries use `1 + floor((v - a_1) / w)` directly, which
    /// is exact because the stored boundaries are the points where that
    /// formula changes value; other layouts use binary search.
    #[inline]
    pub fn bin_of(&self, v: f64) -> usize {
        let nb = self.nb();
        if v < self.inner[0] {
            return 0;
        }
        if v >= self.inner[nb - 2] {
            return nb - 1;
        }
        match self.bin_of_closed_form(v) {
            Some(k) => k,
            None => self.bin_of_search(v),
        }
    }

    /// Binary search on the boundaries, valid for any layout.
    pub fn bin_of_search(&self, v: f64) -> usize {
        self.inner.partition_point(|&a| a <= v)
    }

    /// Closed-form index for equal-width layouts, clamped into `1..=nb-2`;
    /// meaningful for values in `[a_1, a_{nb-1})`.
    pub fn bin_of_closed_form(&self, v: f64) -> Option<usize> {
        match self.layout {
            Layout::EqualWidth { min, width } => {
                let k = 1.0 + ((v - min) / width).floor();
                Some((k.max(1.0) as usize).min(self.nb() - 2))
            }
            Layout::Arbitrary => None,
        }
    }

    /// Half-open membership test for bin `k`.
    #[inline]
    pub fn contains(&self, k: usize, v: f64) -> bool {
        let (lo, hi) = self.bin_range(k);
        (k == 0 || v >= lo) && v < hi
    }
}

// The closed-form index `1 + floor((v - min) / width)`, unclamped.
fn closed_form(min: f64, width: f64, v: f64) -> f64 {
    1.0 + ((v - min) / width).floor()
}

// Maps floats to integers with the same order, so floats can be bisected.
fn order_key(v: f64) -> u64 {
    let b = v.to_bits();
    if b >> 63 == 1 {
        !b
    } else {
        b | 1 << 63
    }
}

fn from_order_key(k: u64) -> f64 {
    f64::from_bits(if k >> 63 == 1 { k & !(1 << 63) } else { !k })
}

// Smallest float at which the closed form reaches `k`. The formula is
// monotone in `v`, so boundaries chosen this way make it agree exactly with
// interval membership.
fn switch_point(min: f64, width: f64, k: usize) -> f64 {
    let kf = k as f64;
    let nominal = min + (kf - 1.0) * width;
    if closed_form(min, width, nominal) >= kf && closed_form(min, width, nominal.next_down()) < kf {
        return nominal;
    }
    let mut lo = min + (kf - 1.5) * width;
    let mut hi = min + (kf - 0.5) * width;
    while closed_form(min, width, lo) >= kf {
        lo -= width;
    }
    while closed_form(min, width, hi) < kf {
        hi += width;
    }
    // Invariant: closed form below k at `lo`, at least k at `hi`.
    let (mut l, mut h) = (order_key(lo), order_key(hi));
    while h - l > 1 {
        let mid = l + (h - l) / 2;
        if closed_form(min, width, from_order_key(mid)) >= kf {
            h = mid;
        } else {
            l = mid;
        }
    }
    from_order_key(h)
}

/// Relative bin frequencies of a sample over fixed boundaries.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub boundaries: BinBoundaries,
    pub counts: Vec<usize>,
    pub freqs: Vec<f64>,
    pub sample_count: usize,
}

impl Histogram {
    pub fn new(x: &[f64], boundaries: &BinBoundaries) -> Result<Self> {
        Self::from_values(x.iter().copied(), boundaries)
    }

    pub fn from_values<I: IntoIterator<Item = f64>>(values: I, boundaries: &BinBoundaries) -> Result<Self> {
        let mut counts = vec![0usize; boundaries.nb()];
        let mut total = 0usize;
        for v in values {
            counts[boundaries.bin_of(v)] += 1;
            total += 1;
        }
        if total == 0 {
            return Err(Error::EmptySample);
        }
        let freqs = counts.iter().map(|&c| c as f64 / total as f64).collect();
        Ok(Self { boundaries: boundaries.clone(), counts, freqs, sample_count: total })
    }

    pub fn nb(&self) -> usize {
        self.freqs.len()
    }

    /// Leftmost bin of maximal frequency, with that frequency.
    pub fn peak(&self) -> (usize, f64) {
        let mut best = 0;
        for k in 1..self.counts.len() {
            if self.counts[k] > self.counts[best] {
                best = k;
            }
        }
        (best, self.freqs[best])
    }
}

/// Convenience wrapper: equal-width boundaries from `x`.
pub fn equal_width_boundaries(x: &[f64], nb: usize) -> Result<BinBoundaries> {
    BinBoundaries::equal_width(x, nb)
}

pub fn histogram(x: &[f64], b: &BinBoundaries) -> Result<Histogram> {
    Histogram::new(x, b)
}

pub fn bin_of(v: f64, b: &BinBoundaries) -> usize {
    b.bin_of(v)
}
