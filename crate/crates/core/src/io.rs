//! CSV ingestion, column filtering and report/plot-data writers.
//!
//! Column numbers in every file written or read here are 1-based; the
//! library itself is 0-based.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::cics::{column_peak, Cic, CicList, RelevanceTable};
use crate::classifier::{CutoffRule, PredictionReport};
use crate::cutoff::{BatchReport, CutoffResult};
use crate::error::{Error, Result};
use crate::histogram::Histogram;
use crate::matrix::{DataMatrix, Labels};
use crate::metrics::{fmt_fixed, ConfusionStats};
use crate::union::UnionReport;

/// How raw label cells map to label bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelRule {
    /// Bit 1 iff the value is not one of these (e.g. `0`, `BEpass`).
    PassValues(Vec<String>),
    /// Bit 1 iff the value is one of these.
    PositiveValues(Vec<String>),
}

impl LabelRule {
    pub fn bit(&self, raw: &str) -> bool {
        let raw = raw.trim();
        match self {
            LabelRule::PassValues(v) => !v.iter().any(|p| p == raw),
            LabelRule::PositiveValues(v) => v.iter().any(|p| p == raw),
        }
    }
}

impl Default for LabelRule {
    fn default() -> Self {
        LabelRule::PassValues(vec!["0".into()])
    }
}

/// Feature-to-step assignment. `None` marks a column outside every step.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StepMap(pub Vec<Option<String>>);

impl StepMap {
    /// Columns of `step`, ascending.
    pub fn columns_of(&self, step: &str) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, s)| s.as_deref() == Some(step)).map(|(j, _)| j).collect()
    }

    pub fn steps(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for s in self.0.iter().flatten() {
            if !out.contains(s) {
                out.push(s.clone());
            }
        }
        out
    }

    /// Reads a two-column `column,step` sidecar keyed by feature name.
    pub fn from_sidecar(path: &Path, names: &[String]) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_path(path)?;
        let mut map = vec![None; names.len()];
        for (r, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let (col, step) = match (rec.get(0), rec.get(1)) {
                (Some(c), Some(s)) => (c.trim(), s.trim()),
                _ => {
                    return Err(Error::Parse {
                        path: path.to_path_buf(),
                        row: r + 2,
                        col: "step".into(),
                        msg: "expected column,step".into(),
                    })
                }
            };
            let j = names.iter().position(|n| n == col).ok_or_else(|| Error::UnknownColumn(col.to_string()))?;
            map[j] = Some(step.to_string());
        }
        Ok(StepMap(map))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub matrix: DataMatrix,
    pub labels: Labels,
    pub label_source: String,
    pub step_map: Option<StepMap>,
}

/// Loads a headered CSV. Feature headers of the form `STEP:name` assign the
/// column to step `STEP`; the feature is then called `name`.
pub fn load_csv(path: impl AsRef<Path>, label_column: &str, rule: &LabelRule) -> Result<Dataset> {
    let path = path.as_ref();
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_path(path)?;
    let headers: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    let label_idx = headers
        .iter()
        .position(|h| h == label_column)
        .ok_or_else(|| Error::MissingLabelColumn(label_column.to_string()))?;
    let feature_idx: Vec<usize> = (0..headers.len()).filter(|&k| k != label_idx).collect();
    let mut names = Vec::with_capacity(feature_idx.len());
    let mut steps = Vec::with_capacity(feature_idx.len());
    for &k in &feature_idx {
        match headers[k].split_once(':') {
            Some((s, n)) if !s.is_empty() && !n.is_empty() => {
                steps.push(Some(s.to_string()));
                names.push(n.to_string());
            }
            _ => {
                steps.push(None);
                names.push(headers[k].clone());
            }
        }
    }
    let mut columns = vec![Vec::new(); feature_idx.len()];
    let mut bits = Vec::new();
    for (r, rec) in rdr.records().enumerate() {
        let line = r + 2;
        let rec = rec?;
        let err = |col: &str, msg: String| Error::Parse { path: path.to_path_buf(), row: line, col: col.to_string(), msg };
        if rec.len() != headers.len() {
            return Err(err("*", format!("expected {} fields, found {}", headers.len(), rec.len())));
        }
        bits.push(rule.bit(&rec[label_idx]));
        for (c, &k) in feature_idx.iter().enumerate() {
            let cell = &rec[k];
            let v: f64 = cell.parse().map_err(|_| err(&headers[k], format!("cannot parse {cell:?} as a number")))?;
            if !v.is_finite() {
                return Err(err(&headers[k], format!("non-finite value {cell:?}")));
            }
            columns[c].push(v);
        }
    }
    if bits.is_empty() {
        return Err(Error::InvalidMatrix(format!("{}: no data rows", path.display())));
    }
    let matrix = DataMatrix::from_columns(columns)?.with_names(names)?;
    let step_map = steps.iter().any(Option::is_some).then_some(StepMap(steps));
    Ok(Dataset { matrix, labels: Labels::new(bits), label_source: label_column.to_string(), step_map })
}

/// What to keep in [`filter_columns`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selection {
    Steps(Vec<String>),
    /// 1-based column numbers or feature names.
    Columns(Vec<String>),
}

pub fn filter_columns(ds: &Dataset, selection: &Selection) -> Result<Dataset> {
    let mut cols = Vec::new();
    match selection {
        Selection::Steps(steps) => {
            let map = ds.step_map.clone().unwrap_or_default();
            for s in steps {
                let c = map.columns_of(s);
                if c.is_empty() {
                    return Err(Error::UnknownStep(s.clone()));
                }
                cols.extend(c);
            }
            cols.sort_unstable();
            cols.dedup();
        }
        Selection::Columns(list) => {
            let names = ds.matrix.names();
            for item in list {
                let j = match item.parse::<usize>() {
                    Ok(k) if k >= 1 && k <= ds.matrix.cols() => k - 1,
                    _ => names
                        .and_then(|n| n.iter().position(|x| x == item))
                        .ok_or_else(|| Error::UnknownColumn(item.clone()))?,
                };
                if !cols.contains(&j) {
                    cols.push(j);
                }
            }
        }
    }
    if cols.is_empty() {
        return Err(Error::EmptySelection);
    }
    let step_map = ds.step_map.as_ref().map(|m| StepMap(cols.iter().map(|&j| m.0[j].clone()).collect()));
    Ok(Dataset { matrix: ds.matrix.select_columns(&cols)?, labels: ds.labels.clone(), label_source: ds.label_source.clone(), step_map })
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn num(v: f64) -> String {
    // Rust's shortest round-trip formatting keeps reloads bit-exact.
    format!("{v}")
}

/// Writes features plus a 0/1 `label` column, as consumed by [`load_csv`]
/// with the default pass value `0`.
pub fn write_dataset_csv(path: impl AsRef<Path>, matrix: &DataMatrix, labels: &Labels) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path.as_ref())?);
    let mut header: Vec<String> = (0..matrix.cols()).map(|j| matrix.column_name(j)).collect();
    header.push("label".into());
    w.write_record(&header)?;
    for i in 0..matrix.rows() {
        let mut rec: Vec<String> = (0..matrix.cols()).map(|j| num(matrix.get(i, j))).collect();
        rec.push(if labels.get(i) { "1" } else { "0" }.into());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_relevance_csv(path: impl AsRef<Path>, table: &RelevanceTable, matrix: &DataMatrix) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path.as_ref())?);
    w.write_record(["rank", "col", "name", "n_diff", "n_pos", "n_neg"])?;
    for (r, row) in table.rows.iter().enumerate() {
        w.write_record([
            (r + 1).to_string(),
            (row.col + 1).to_string(),
            matrix.column_name(row.col),
            row.n_diff.to_string(),
            row.n_pos.to_string(),
            row.n_neg.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn render_relevance(table: &RelevanceTable, matrix: &DataMatrix) -> String {
    let mut s = format!("{:>5} {:>6} {:<20} {:>7} {:>6} {:>6}\n", "rank", "col", "name", "n_diff", "n_pos", "n_neg");
    for (r, row) in table.rows.iter().enumerate() {
        let _ = writeln!(
            s,
            "{:>5} {:>6} {:<20} {:>7} {:>6} {:>6}",
            r + 1,
            row.col + 1,
            matrix.column_name(row.col),
            row.n_diff,
            row.n_pos,
            row.n_neg
        );
    }
    s
}

pub fn write_cics_csv(path: impl AsRef<Path>, cics: &CicList) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path.as_ref())?);
    w.write_record(["col", "lo", "hi"])?;
    for c in cics.iter() {
        w.write_record([(c.col + 1).to_string(), num(c.lo), num(c.hi)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_cics_csv(path: impl AsRef<Path>) -> Result<CicList> {
    let path = path.as_ref();
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path)?;
    let mut out = Vec::new();
    for (r, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let field = |k: usize, name: &str| -> Result<&str> {
            rec.get(k).ok_or_else(|| Error::Parse { path: path.to_path_buf(), row: r + 2, col: name.into(), msg: "missing field".into() })
        };
        let bad = |name: &str, v: &str| Error::Parse { path: path.to_path_buf(), row: r + 2, col: name.into(), msg: format!("cannot parse {v:?}") };
        let c = field(0, "col")?;
        let col: usize = c.parse().ok().filter(|&k| k >= 1).ok_or_else(|| bad("col", c))?;
        let lo_s = field(1, "lo")?;
        let hi_s = field(2, "hi")?;
        let lo: f64 = lo_s.parse().map_err(|_| bad("lo", lo_s))?;
        let hi: f64 = hi_s.parse().map_err(|_| bad("hi", hi_s))?;
        out.push(Cic { col: col - 1, lo, hi });
    }
    CicList::new(out)
}

/// `object_id` (1-based row), `true_label`, `score`; true positives first.
pub fn write_sats_csv(path: impl AsRef<Path>, objects: &[usize], truth: &[bool], scores: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path.as_ref())?);
    w.write_record(["object_id", "true_label", "score"])?;
    for want in [true, false] {
        for p in (0..objects.len()).filter(|&p| truth[p] == want) {
            w.write_record([(objects[p] + 1).to_string(), u8::from(want).to_string(), num(scores[p])])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_cutoffs_csv(path: impl AsRef<Path>, result: &CutoffResult) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path.as_ref())?);
    w.write_record(["cutoff", "accuracy", "kappa"])?;
    for p in &result.sweep {
        w.write_record([num(p.cutoff), num(p.accuracy), num(p.kappa)])?;
    }
    w.flush()?;
    Ok(())
}

/// Per-bin histograms of one column, with bins built from the `T+` values:
/// positive training, negative training, all objects, and their difference.
pub fn write_histpanel_csv(path: impl AsRef<Path>, report: &PredictionReport, col: usize) -> Result<()> {
    let peak = column_peak(&report.scaled, &report.split, report.config.nb, col)?;
    let all = Histogram::new(report.scaled.column(col), &peak.boundaries)?;
    let mut w = csv::Writer::from_writer(create(path.as_ref())?);
    w.write_record(["bin_lo", "bin_hi", "h_pos", "h_neg", "h_all", "diff", "absdiff"])?;
    for k in 0..peak.boundaries.nb() {
        let (lo, hi) = peak.boundaries.bin_range(k);
        let (hp, hn) = (peak.pos.freqs[k], peak.neg.freqs[k]);
        let d = hp - hn;
        w.write_record([num(lo), num(hi), num(hp), num(hn), num(all.freqs[k]), num(d), num(d.abs())])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `sats.csv`, `cutoffs.csv` and one `histpanel_<col>.csv` per Cic.
pub fn emit_plot_data(dir: impl AsRef<Path>, report: &PredictionReport) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir)?;
    let mut written = vec![dir.join("sats.csv"), dir.join("cutoffs.csv")];
    write_sats_csv(&written[0], &report.scores.objects, &report.truth, &report.scores.as_f64())?;
    write_cutoffs_csv(&written[1], &report.sweep)?;
    for c in report.cics.iter() {
        let p = dir.join(format!("histpanel_{}.csv", c.col + 1));
        write_histpanel_csv(&p, report, c.col)?;
        written.push(p);
    }
    Ok(written)
}

pub fn emit_union_plot_data(dir: impl AsRef<Path>, report: &UnionReport) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir)?;
    let written = vec![dir.join("sats.csv"), dir.join("cutoffs.csv")];
    write_sats_csv(&written[0], &report.similarity.objects, &report.truth, &report.indicator)?;
    write_cutoffs_csv(&written[1], &report.cutoff)?;
    Ok(written)
}

fn cic_lines(out: &mut String, cics: &CicList, matrix: &DataMatrix) {
    let _ = writeln!(out, "cics: {}", cics.len());
    for c in cics.iter() {
        let _ = writeln!(out, "  col {:>4} {:<20} [{}, {})", c.col + 1, matrix.column_name(c.col), num(c.lo), num(c.hi));
    }
}

/// Human-readable report. Contains no timing, so identical inputs give
/// identical bytes.
pub fn render_report(report: &PredictionReport, names: &DataMatrix) -> String {
    let cfg = &report.config;
    let mut s = String::new();
    let _ = writeln!(s, "objects: {} ({} positive)", report.split.rows(), report.truth.iter().filter(|&&b| b).count() + report.split.t_pos.len());
    let _ = writeln!(s, "training: {} positive, {} negative (seed {})", report.split.t_pos.len(), report.split.t_neg.len(), cfg.seed);
    let _ = writeln!(s, "selection: {}, nb = {}", cfg.cic_mode.describe(), cfg.nb);
    cic_lines(&mut s, &report.cics, names);
    let _ = writeln!(s, "scores: {} objects, range {}..{}", report.scores.len(), report.scores.min().unwrap_or(0), report.scores.max().unwrap_or(0));
    match (cfg.cutoff, &report.naive) {
        (CutoffRule::Naive(_), Some(n)) => {
            let _ = writeln!(
                s,
                "cutoff: naive {} (Av1 = {}, Av0 = {}){}",
                fmt_fixed(n.cutoff, 3),
                fmt_fixed(n.av_pos, 3),
                fmt_fixed(n.av_neg, 3),
                if n.suspicious() { " [below Av0: positives may not separate]" } else { "" }
            );
        }
        _ => {
            let _ = writeln!(s, "cutoff: optimized {} on {} = {}", num(report.cutoff), report.sweep.measure.name(), fmt_fixed(report.sweep.q_opt, 3));
        }
    }
    s.push('\n');
    s.push_str(&report.stats.render_table());
    if let Some(b) = &report.batch {
        s.push('\n');
        s.push_str(&b.render());
    }
    s
}

pub fn render_union_report(report: &UnionReport, names: &DataMatrix) -> String {
    let cfg = &report.config;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "training: {} positive, {} negative, reference {} (seed {})",
        report.split.t_pos.len(),
        report.split.t_neg.len(),
        report.split.u_pos.len(),
        cfg.seed
    );
    let _ = writeln!(s, "selection: thresholds b_pos={} b_neg={}, nb = {}", cfg.b_pos, cfg.b_neg, cfg.nb);
    cic_lines(&mut s, &report.cics, names);
    let _ = writeln!(
        s,
        "indicator: {:?} over {} objects, cutoff {} on {} = {}",
        cfg.indicator,
        report.indicator.len(),
        num(report.cutoff.c_opt),
        report.cutoff.measure.name(),
        fmt_fixed(report.cutoff.q_opt, 3)
    );
    s.push('\n');
    s.push_str(&report.stats.render_table());
    s
}

fn stats_kv(kv: &mut BTreeMap<String, String>, st: &ConfusionStats) {
    kv.insert("tp".into(), st.tp.to_string());
    kv.insert("fp".into(), st.fp.to_string());
    kv.insert("tn".into(), st.tn.to_string());
    kv.insert("fn".into(), st.fn_.to_string());
    kv.insert("accuracy".into(), num(st.accuracy));
    kv.insert("kappa".into(), num(st.kappa));
    kv.insert("kappa_degenerate".into(), st.kappa_degenerate.to_string());
}

fn batch_kv(kv: &mut BTreeMap<String, String>, b: &BatchReport) {
    kv.insert("batch_size".into(), b.batch_size.to_string());
    kv.insert("batch_count".into(), b.batches.len().to_string());
    kv.insert("batch_min_kappa".into(), num(b.min_kappa));
    kv.insert("batch_max_kappa".into(), num(b.max_kappa));
    let c = &b.census;
    kv.insert("batch_census".into(), format!("{},{},{},{},{}", c.exactly_one, c.from_0_9, c.from_0_8, c.from_0_7, c.below_0_7));
}

fn render_kv(kv: &BTreeMap<String, String>) -> String {
    kv.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
}

/// Flat `key=value` duplicate of the report, sorted by key.
pub fn report_kv(report: &PredictionReport) -> String {
    let mut kv = BTreeMap::new();
    kv.insert("seed".into(), report.config.seed.to_string());
    kv.insert("nb".into(), report.config.nb.to_string());
    kv.insert("t_pos".into(), report.split.t_pos.len().to_string());
    kv.insert("t_neg".into(), report.split.t_neg.len().to_string());
    kv.insert("domain".into(), report.scores.len().to_string());
    kv.insert("cic_count".into(), report.cics.len().to_string());
    kv.insert("cic_cols".into(), report.cics.iter().map(|c| (c.col + 1).to_string()).collect::<Vec<_>>().join(","));
    kv.insert("cutoff".into(), num(report.cutoff));
    kv.insert("measure".into(), report.sweep.measure.name().into());
    kv.insert("q_opt".into(), num(report.sweep.q_opt));
    stats_kv(&mut kv, &report.stats);
    if let Some(b) = &report.batch {
        batch_kv(&mut kv, b);
    }
    render_kv(&kv)
}

pub fn union_report_kv(report: &UnionReport) -> String {
    let mut kv = BTreeMap::new();
    kv.insert("seed".into(), report.config.seed.to_string());
    kv.insert("t_pos".into(), report.split.t_pos.len().to_string());
    kv.insert("t_neg".into(), report.split.t_neg.len().to_string());
    kv.insert("u_pos".into(), report.split.u_pos.len().to_string());
    kv.insert("domain".into(), report.indicator.len().to_string());
    kv.insert("cic_count".into(), report.cics.len().to_string());
    kv.insert("indicator".into(), format!("{:?}", report.config.indicator).to_lowercase());
    kv.insert("cutoff".into(), num(report.cutoff.c_opt));
    stats_kv(&mut kv, &report.stats);
    render_kv(&kv)
}

pub fn write_text(path: impl AsRef<Path>, text: &str) -> Result<()> {
    let mut f = create(path.as_ref())?;
    f.write_all(text.as_bytes())?;
    f.flush()?;
    Ok(())
}

/// Columns never listed twice; used by CLI parsing of `--cols`.
pub fn parse_column_list(s: &str) -> Result<Vec<usize>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let k: usize = item.parse().ok().filter(|&k| k >= 1).ok_or_else(|| Error::UnknownColumn(item.to_string()))?;
        if !seen.insert(k) {
            return Err(Error::DuplicateColumn(k - 1));
        }
        out.push(k - 1);
    }
    if out.is_empty() {
        return Err(Error::EmptySelection);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmp(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn pass_value_rule() {
        let f = tmp("a,b,state\n1,2,0\n3,4,E7\n5,6,0\n");
        let ds = load_csv(f.path(), "state", &LabelRule::default()).unwrap();
        assert_eq!(ds.labels.as_slice(), &[false, true, false]);
        assert_eq!(ds.matrix.column(1), &[2.0, 4.0, 6.0]);
        assert!(ds.step_map.is_none());
    }

    #[test]
    fn blank_cell_reports_coordinates() {
        let f = tmp("a,b,state\n1,2,0\n3,,0\n");
        let err = load_csv(f.path(), "state", &LabelRule::default()).unwrap_err();
        match err {
            Error::Parse { row, col, .. } => assert_eq!((row, col.as_str()), (3, "b")),
            e => panic!("{e}"),
        }
        let err = load_csv(f.path(), "nope", &LabelRule::default()).unwrap_err();
        assert!(matches!(err, Error::MissingLabelColumn(_)));
    }

    #[test]
    fn step_headers_and_filtering() {
        let f = tmp("S1:a,S1:b,S2:c,d,y\n1,2,3,4,BEpass\n5,6,7,8,BEfail\n");
        let ds = load_csv(f.path(), "y", &LabelRule::PassValues(vec!["BEpass".into()])).unwrap();
        assert_eq!(ds.labels.as_slice(), &[false, true]);
        assert_eq!(ds.matrix.names().unwrap(), &["a", "b", "c", "d"]);
        let s1 = filter_columns(&ds, &Selection::Steps(vec!["S1".into()])).unwrap();
        assert_eq!(s1.matrix.cols(), 2);
        assert_eq!(s1.matrix.column(1), &[2.0, 6.0]);
        assert!(matches!(filter_columns(&ds, &Selection::Steps(vec!["S9".into()])), Err(Error::UnknownStep(_))));
        let by_name = filter_columns(&ds, &Selection::Columns(vec!["d".into(), "1".into()])).unwrap();
        assert_eq!(by_name.matrix.names().unwrap(), &["d", "a"]);
        let all = filter_columns(&ds, &Selection::Columns((1..=4).map(|k| k.to_string()).collect())).unwrap();
        assert_eq!(all, ds);
    }

    #[test]
    fn sidecar_steps() {
        let map = tmp("column,step\nb,S2\na,S1\n");
        let names = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let m = StepMap::from_sidecar(map.path(), &names).unwrap();
        assert_eq!(m.0, vec![Some("S1".into()), Some("S2".into()), None]);
        assert_eq!(m.steps(), vec!["S1", "S2"]);
    }

    #[test]
    fn cic_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("cics.csv");
        let cics = CicList::new(vec![Cic { col: 4, lo: -0.123456789012345, hi: 1e-300 }, Cic { col: 0, lo: 2.5, hi: 3.0 }]).unwrap();
        write_cics_csv(&p, &cics).unwrap();
        assert!(std::fs::read_to_string(&p).unwrap().contains("\n5,"));
        assert_eq!(read_cics_csv(&p).unwrap(), cics);
    }

    #[test]
    fn dataset_round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("lot.csv");
        let m = DataMatrix::from_columns(vec![vec![0.1 + 0.2, -1e-17, 12345.678901234567], vec![f64::MIN_POSITIVE, 3.0, -0.0]]).unwrap();
        let labels = Labels::from_bits(&[1, 0, 1]);
        write_dataset_csv(&p, &m, &labels).unwrap();
        let ds = load_csv(&p, "label", &LabelRule::default()).unwrap();
        assert_eq!(ds.labels, labels);
        for j in 0..2 {
            for i in 0..3 {
                assert_eq!(ds.matrix.get(i, j).to_bits(), m.get(i, j).to_bits());
            }
        }
    }

    #[test]
    fn sats_positives_first() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("sats.csv");
        write_sats_csv(&p, &[3, 5, 8], &[false, true, false], &[1.0, 2.0, 0.0]).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        assert_eq!(text, "object_id,true_label,score\n6,1,2\n4,0,1\n9,0,0\n");
    }

    #[test]
    fn column_lists() {
        assert_eq!(parse_column_list("3,4").unwrap(), vec![2, 3]);
        assert!(parse_column_list("0").is_err());
        assert!(parse_column_list("2,2").is_err());
        assert!(parse_column_list("").is_err());
    }
}
