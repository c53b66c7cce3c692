use crate::cics::CicList;
use crate::error::{Error, Result};
use crate::scaling::ScaledMatrix;

/// Number of active Cics per object of a domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndicatorScores {
    pub objects: Vec<usize>,
    pub scores: Vec<u32>,
}

impl IndicatorScores {
    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn min(&self) -> Option<u32> {
        self.scores.iter().copied().min()
    }

    pub fn max(&self) -> Option<u32> {
        self.scores.iter().copied().max()
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.scores.iter().map(|&s| f64::from(s)).collect()
    }
}

fn check(s: &ScaledMatrix, cics: &CicList, domain: &[usize]) -> Result<()> {
    cics.check_columns(s.cols())?;
    match domain.iter().find(|&&i| i >= s.rows()) {
        Some(&i) => Err(Error::RowOutOfRange { index: i, rows: s.rows() }),
        None => Ok(()),
    }
}

/// Counts, for every object in `domain`, the Cics whose interval holds the
/// object's value in that column.
pub fn indicator_scores(s: &ScaledMatrix, cics: &CicList, domain: &[usize]) -> Result<IndicatorScores> {
    check(s, cics, domain)?;
    let mut scores = vec![0u32; domain.len()];
    for c in cics.iter() {
        let col = s.column(c.col);
        for (score, &i) in scores.iter_mut().zip(domain) {
            *score += u32::from(c.is_active(col[i]));
        }
    }
    Ok(IndicatorScores { objects: domain.to_vec(), scores })
}

/// Per-object bit patterns over the Cic list, packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActivityPatterns {
    pub objects: Vec<usize>,
    width: usize,
    words_per: usize,
    words: Vec<u64>,
}

impl ActivityPatterns {
    /// Number of Cics (bits per pattern).
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// Packed words of the pattern at position `p` (not object index).
    pub fn pattern(&self, p: usize) -> &[u64] {
        &self.words[p * self.words_per..(p + 1) * self.words_per]
    }

    pub fn bit(&self, p: usize, cic: usize) -> bool {
        self.pattern(p)[cic / 64] >> (cic % 64) & 1 == 1
    }

    pub fn weight(&self, p: usize) -> u32 {
        self.pattern(p).iter().map(|w| w.count_ones()).sum()
    }

    pub fn to_bools(&self, p: usize) -> Vec<bool> {
        (0..self.width).map(|c| self.bit(p, c)).collect()
    }

    /// Builds patterns from explicit bit rows; mainly useful in tests.
    pub fn from_bools(objects: Vec<usize>, rows: &[Vec<bool>]) -> Result<Self> {
        if objects.len() != rows.len() {
            return Err(Error::LengthMismatch { left: objects.len(), right: rows.len() });
        }
        let width = rows.first().map_or(0, Vec::len);
        let words_per = width.div_ceil(64).max(1);
        let mut words = vec![0u64; rows.len() * words_per];
        for (p, r) in rows.iter().enumerate() {
            if r.len() != width {
                return Err(Error::LengthMismatch { left: r.len(), right: width });
            }
            for (c, &b) in r.iter().enumerate() {
                if b {
                    words[p * words_per + c / 64] |= 1 << (c % 64);
                }
            }
        }
        Ok(Self { objects, width, words_per, words })
    }
}

/// Inner product of two packed 0-1 patterns.
pub(crate) fn overlap(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

/// Bit `k` of object `i`'s pattern is set iff Cic `k` is active for `i`.
pub fn activity_patterns(s: &ScaledMatrix, cics: &CicList, domain: &[usize]) -> Result<ActivityPatterns> {
    check(s, cics, domain)?;
    let width = cics.len();
    let words_per = width.div_ceil(64).max(1);
    let mut words = vec![0u64; domain.len() * words_per];
    for (k, c) in cics.iter().enumerate() {
        let col = s.column(c.col);
        for (p, &i) in domain.iter().enumerate() {
            if c.is_active(col[i]) {
                words[p * words_per + k / 64] |= 1 << (k % 64);
            }
        }
    }
    Ok(ActivityPatterns { objects: domain.to_vec(), width, words_per, words })
}
