//! Agreement measures between a truth vector and a prediction vector.

use crate::error::{Error, Result};

fn check(v: &[bool], w: &[bool]) -> Result<()> {
    if v.len() != w.len() {
        return Err(Error::LengthMismatch { left: v.len(), right: w.len() });
    }
    if v.is_empty() {
        return Err(Error::EmptyVector);
    }
    Ok(())
}

/// Fraction of coinciding bits.
pub fn accuracy(v: &[bool], w: &[bool]) -> Result<f64> {
    check(v, w)?;
    let same = v.iter().zip(w).filter(|(a, b)| a == b).count();
    Ok(same as f64 / v.len() as f64)
}

/// Cohen's kappa of two binary raters. Returns 0 when the chance agreement
/// is 1 (both raters constant and equal).
pub fn kappa(v: &[bool], w: &[bool]) -> Result<f64> {
    check(v, w)?;
    Ok(ConfusionStats::tally(v, w).kappa)
}

/// The four confusion counts plus the ratios reported for a run.
///
/// `v` (truth) positives are `tp + fn_`; `w` (prediction) positives are
/// `tp + fp`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfusionStats {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    pub fn_: usize,
    pub accuracy: f64,
    pub kappa: f64,
    /// Set when chance agreement is 1 and `kappa` holds the 0 placeholder.
    pub kappa_degenerate: bool,
}

impl ConfusionStats {
    pub fn from_counts(tp: usize, fp: usize, tn: usize, fn_: usize) -> Self {
        let r = (tp + fp + tn + fn_) as f64;
        let accuracy = if r > 0.0 { (tp + tn) as f64 / r } else { f64::NAN };
        let truth_pos = (tp + fn_) as f64;
        let truth_neg = (tn + fp) as f64;
        let pred_pos = (tp + fp) as f64;
        let pred_neg = (tn + fn_) as f64;
        let p_e = (truth_neg * pred_neg + truth_pos * pred_pos) / (r * r);
        let degenerate = r > 0.0 && p_e >= 1.0;
        let kappa = if degenerate { 0.0 } else { (accuracy - p_e) / (1.0 - p_e) };
        Self { tp, fp, tn, fn_, accuracy, kappa, kappa_degenerate: degenerate }
    }

    fn tally(v: &[bool], w: &[bool]) -> Self {
        let (mut tp, mut fp, mut tn, mut fn_) = (0, 0, 0, 0);
        for (&truth, &pred) in v.iter().zip(w) {
            match (truth, pred) {
                (true, true) => tp += 1,
                (false, true) => fp += 1,
                (false, false) => tn += 1,
                (true, false) => fn_ += 1,
            }
        }
        Self::from_counts(tp, fp, tn, fn_)
    }

    pub fn total(&self) -> usize {
        self.tp + self.fp + self.tn + self.fn_
    }

    pub fn tp_rate(&self) -> f64 {
        ratio(self.tp, self.tp + self.fn_)
    }

    pub fn tn_rate(&self) -> f64 {
        ratio(self.tn, self.tn + self.fp)
    }

    pub fn fp_over_pos(&self) -> f64 {
        ratio(self.fp, self.tp + self.fn_)
    }

    pub fn fn_over_neg(&self) -> f64 {
        ratio(self.fn_, self.tn + self.fp)
    }

    pub fn tp_fp_ratio(&self) -> f64 {
        ratio(self.tp, self.fp)
    }

    pub fn tn_fn_ratio(&self) -> f64 {
        ratio(self.tn, self.fn_)
    }

    /// `(label, value)` rows of the confusion table: counts, four percentages
    /// and two ratios with one decimal, accuracy in percent, kappa with three
    /// decimals.
    pub fn table_rows(&self) -> Vec<(&'static str, String)> {
        vec![
            ("TP", self.tp.to_string()),
            ("FP", self.fp.to_string()),
            ("TN", self.tn.to_string()),
            ("FN", self.fn_.to_string()),
            ("TP/(TP+FN)%", fmt_fixed(100.0 * self.tp_rate(), 1)),
            ("TN/(TN+FP)%", fmt_fixed(100.0 * self.tn_rate(), 1)),
            ("FP/(TP+FN)%", fmt_fixed(100.0 * self.fp_over_pos(), 1)),
            ("FN/(TN+FP)%", fmt_fixed(100.0 * self.fn_over_neg(), 1)),
            ("TP/FP", fmt_fixed(self.tp_fp_ratio(), 1)),
            ("TN/FN", fmt_fixed(self.tn_fn_ratio(), 1)),
            ("Accuracy%", fmt_fixed(100.0 * self.accuracy, 1)),
            ("Kappa", fmt_fixed(self.kappa, 3)),
        ]
    }

    /// Human-readable table in the layout of [`Self::table_rows`].
    pub fn render_table(&self) -> String {
        let rows = self.table_rows();
        let vw = rows.iter().map(|(_, v)| v.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for (idx, (label, value)) in rows.iter().enumerate() {
            if matches!(idx, 4 | 8 | 10) {
                out.push_str(&format!("{}\n", "-".repeat(14 + vw)));
            }
            out.push_str(&format!("{label:<12}  {value:>vw$}\n"));
        }
        out
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    match (num, den) {
        (0, 0) => f64::NAN,
        (_, 0) => f64::INFINITY,
        _ => num as f64 / den as f64,
    }
}

/// Confusion counts of prediction `w` against truth `v`.
pub fn confusion(v: &[bool], w: &[bool]) -> Result<ConfusionStats> {
    if v.len() != w.len() {
        return Err(Error::LengthMismatch { left: v.len(), right: w.len() });
    }
    Ok(ConfusionStats::tally(v, w))
}

/// Rounds half away from zero to `decimals` places and formats; `∞` for
/// infinity and `-` for undefined ratios.
pub fn fmt_fixed(v: f64, decimals: usize) -> String {
    if v.is_nan() {
        return "-".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "∞".into() } else { "-∞".into() };
    }
    let f = 10f64.powi(decimals as i32);
    let r = (v * f).round() / f;
    format!("{:.*}", decimals, if r == 0.0 { 0.0 } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn accuracy_examples() {
        assert_eq!(accuracy(&bits("1010"), &bits("1010")).unwrap(), 1.0);
        assert_eq!(accuracy(&bits("1010"), &bits("0101")).unwrap(), 0.0);
        assert_eq!(accuracy(&bits("1100"), &bits("1010")).unwrap(), 0.5);
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(&bits("0110"), &bits("0110")).unwrap(), 1.0);
        assert_eq!(kappa(&bits("0101"), &bits("0110")).unwrap(), 0.0);
    }

    #[test]
    fn constant_equal_raters_are_degenerate() {
        let c = confusion(&bits("111"), &bits("111")).unwrap();
        assert_eq!(c.tp, 3);
        assert!(c.kappa_degenerate);
        assert_eq!(c.kappa, 0.0);
        assert_eq!(c.tp_fp_ratio(), f64::INFINITY);
        assert_eq!(c.table_rows()[8].1, "∞");
    }

    #[test]
    fn errors() {
        assert!(matches!(accuracy(&bits("1"), &bits("10")), Err(Error::LengthMismatch { .. })));
        assert!(matches!(kappa(&[], &[]), Err(Error::EmptyVector)));
        assert!(confusion(&bits("1"), &bits("10")).is_err());
    }

    #[test]
    fn published_count_rows() {
        let setosa = ConfusionStats::from_counts(18, 0, 99, 2);
        assert_abs_diff_eq!(setosa.kappa, 0.937, epsilon = 0.001);
        assert_eq!(fmt_fixed(100.0 * setosa.accuracy, 1), "98.3");

        let d = ConfusionStats::from_counts(740, 0, 31347, 36);
        assert_abs_diff_eq!(d.kappa, 0.976, epsilon = 0.001);
        let rows = d.table_rows();
        let get = |k: &str| rows.iter().find(|(l, _)| *l == k).unwrap().1.clone();
        assert_eq!(get("TP/(TP+FN)%"), "95.4");
        assert_eq!(get("TN/(TN+FP)%"), "100.0");
        assert_eq!(get("FP/(TP+FN)%"), "0.0");
        assert_eq!(get("FN/(TN+FP)%"), "0.1");
        assert_eq!(get("TP/FP"), "∞");
        assert_eq!(get("TN/FN"), "870.8");
        assert_eq!(get("Accuracy%"), "99.9");
        assert_eq!(get("Kappa"), "0.976");

        let c = ConfusionStats::from_counts(477, 2, 10175, 15);
        let rows = c.table_rows();
        let get = |k: &str| rows.iter().find(|(l, _)| *l == k).unwrap().1.clone();
        assert_eq!(get("TP/FP"), "238.5");
        assert_eq!(get("TN/FN"), "678.3");
        assert_eq!(get("Kappa"), "0.982");
    }

    #[test]
    fn render_has_all_rows() {
        let t = ConfusionStats::from_counts(1, 2, 3, 4).render_table();
        for label in ["TP", "FP", "TN", "FN", "TP/(TP+FN)%", "TN/FN", "Accuracy%", "Kappa"] {
            assert!(t.lines().any(|l| l.starts_with(label)), "{label}");
        }
    }

    #[test]
    fn brute_force_tally() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let v: Vec<bool> = (0..1000).map(|_| rng.random()).collect();
        let w: Vec<bool> = (0..1000).map(|_| rng.random()).collect();
        let c = confusion(&v, &w).unwrap();
        let count = |a: bool, b: bool| v.iter().zip(&w).filter(|(x, y)| **x == a && **y == b).count();
        assert_eq!((c.tp, c.fp, c.tn, c.fn_), (count(true, true), count(false, true), count(false, false), count(true, false)));
        assert_eq!(c.total(), 1000);
    }

    proptest! {
        #[test]
        fn kappa_properties(pairs in prop::collection::vec(any::<(bool, bool)>(), 1..120)) {
            let (v, w): (Vec<bool>, Vec<bool>) = pairs.into_iter().unzip();
            let k = kappa(&v, &w).unwrap();
            prop_assert!(k <= 1.0 + 1e-12);
            prop_assert_eq!(k, kappa(&w, &v).unwrap());
            let c = confusion(&v, &w).unwrap();
            prop_assert_eq!(accuracy(&v, &w).unwrap(), (c.tp + c.tn) as f64 / v.len() as f64);
            if v.iter().any(|&b| b) && v.iter().any(|&b| !b) {
                prop_assert_eq!(kappa(&v, &v).unwrap(), 1.0);
            }
        }
    }
}
