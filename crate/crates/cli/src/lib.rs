//! Command-line front end. Column numbers on the command line are 1-based.

use std::ffi::OsString;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use histcic::cics::relevance_table;
use histcic::classifier::{classify, scale_for_split, split_training, CicMode, CutoffRule, PredictionReport, RunConfig, TrainSize};
use histcic::cutoff::{Measure, NaiveRule};
use histcic::datagen::{generate, GeneratorSpec, Noise, Planted};
use histcic::io::{
    emit_plot_data, emit_union_plot_data, filter_columns, load_csv, parse_column_list, read_cics_csv, render_relevance,
    render_report, render_union_report, report_kv, union_report_kv, write_cics_csv, write_dataset_csv, write_relevance_csv,
    write_text, Dataset, LabelRule, Selection, StepMap,
};
use histcic::iris;
use histcic::scaling::StatsMode;
use histcic::union::{default_grid, union_classify, QIndicator, UnionConfig};

#[derive(Parser, Debug)]
#[command(name = "histcic", version, about = "Histogram-based binary classification of tabular data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a labelled CSV and print the confusion table.
    Classify(ClassifyArgs),
    /// Rank columns by positive-minus-negative counts in their peak bin.
    Rank(RankArgs),
    /// List the top-t columns of the ranking as indicator columns and classify with them.
    Autocics(AutoArgs),
    /// Classify by activity-pattern similarity to a reference set of positives.
    Union(UnionArgs),
    /// Optimize the cutoff separately for consecutive batches.
    Batch(BatchArgs),
    /// Write a synthetic lot with planted indicator columns.
    Gen(GenArgs),
    /// One-vs-rest classification of the bundled iris data.
    Iris(IrisArgs),
}

#[derive(Args, Debug)]
struct DataArgs {
    /// Input CSV with a header row.
    input: PathBuf,
    #[arg(long, default_value = "label")]
    label_col: String,
    /// Label values meaning "negative"; anything else is positive.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pass_values: Vec<String>,
    /// Label values meaning "positive" (overrides --pass-values).
    #[arg(long, value_delimiter = ',')]
    positive_values: Option<Vec<String>>,
    /// Keep only the columns of these steps.
    #[arg(long, value_delimiter = ',')]
    steps: Option<Vec<String>>,
    /// Sidecar CSV (column,step) assigning features to steps.
    #[arg(long)]
    step_map: Option<PathBuf>,
    /// Keep only these columns (1-based numbers or names).
    #[arg(long, value_delimiter = ',')]
    keep_cols: Option<Vec<String>>,
}

impl DataArgs {
    fn load(&self) -> Result<Dataset> {
        let rule = match &self.positive_values {
            Some(v) => LabelRule::PositiveValues(v.clone()),
            None => LabelRule::PassValues(self.pass_values.clone()),
        };
        let mut ds = load_csv(&self.input, &self.label_col, &rule).with_context(|| format!("loading {}", self.input.display()))?;
        if let Some(p) = &self.step_map {
            let names: Vec<String> = (0..ds.matrix.cols()).map(|j| ds.matrix.column_name(j)).collect();
            ds.step_map = Some(StepMap::from_sidecar(p, &names)?);
        }
        if let Some(steps) = &self.steps {
            ds = filter_columns(&ds, &Selection::Steps(steps.clone()))?;
        }
        if let Some(cols) = &self.keep_cols {
            ds = filter_columns(&ds, &Selection::Columns(cols.clone()))?;
        }
        Ok(ds)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CicModeArg {
    Thresholds,
    Auto,
    Manual,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MeasureArg {
    Kappa,
    Accuracy,
}

impl From<MeasureArg> for Measure {
    fn from(m: MeasureArg) -> Self {
        match m {
            MeasureArg::Kappa => Measure::Kappa,
            MeasureArg::Accuracy => Measure::Accuracy,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CutoffArg {
    Optimize,
    Naive,
    NaiveMidpoint,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StatsArg {
    Full,
    Train,
    #[value(name = "train-n15")]
    TrainN15,
}

impl From<StatsArg> for StatsMode {
    fn from(s: StatsArg) -> Self {
        match s {
            StatsArg::Full => StatsMode::Full,
            StatsArg::Train => StatsMode::Train,
            StatsArg::TrainN15 => StatsMode::TrainNormal,
        }
    }
}

fn train_size(s: &str) -> Result<TrainSize, String> {
    s.parse().map_err(|e: histcic::Error| e.to_string())
}

#[derive(Args, Debug)]
struct SplitArgs {
    /// Positive training size: a count, a fraction, or a percentage.
    #[arg(long, default_value = "20%", value_parser = train_size)]
    train_pos: TrainSize,
    #[arg(long, default_value = "5%", value_parser = train_size)]
    train_neg: TrainSize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    nb: usize,
    #[arg(long, value_enum, default_value = "full")]
    stats: StatsArg,
    /// Round scaled values to this many significant digits.
    #[arg(long)]
    quantize_digits: Option<u32>,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    split: SplitArgs,
    #[arg(long, value_enum, default_value = "thresholds")]
    cic_mode: CicModeArg,
    #[arg(long, default_value_t = 0.3)]
    bpos: f64,
    #[arg(long, default_value_t = 0.01)]
    bneg: f64,
    /// Number of top-ranked columns in auto mode (default: a tenth of the columns, rounded up).
    #[arg(long)]
    t: Option<usize>,
    /// Indicator columns for manual mode, 1-based.
    #[arg(long)]
    cols: Option<String>,
    #[arg(long, value_enum, default_value = "kappa")]
    measure: MeasureArg,
    #[arg(long, value_enum, default_value = "optimize")]
    cutoff: CutoffArg,
    #[arg(long)]
    batch_size: Option<usize>,
    /// Use indicator columns from an earlier --export-cics file.
    #[arg(long)]
    import_cics: Option<PathBuf>,
    #[arg(long)]
    export_cics: Option<PathBuf>,
    /// Directory for sats.csv, cutoffs.csv and histpanel_<col>.csv.
    #[arg(long)]
    emit_plots: Option<PathBuf>,
    /// Directory for report.txt and report.kv.
    #[arg(long)]
    report_dir: Option<PathBuf>,
}

impl RunArgs {
    fn config(&self) -> Result<RunConfig> {
        let cic_mode = if let Some(p) = &self.import_cics {
            CicMode::Given(read_cics_csv(p).with_context(|| format!("reading {}", p.display()))?)
        } else {
            match self.cic_mode {
                CicModeArg::Thresholds => CicMode::Thresholds { b_pos: self.bpos, b_neg: self.bneg },
                CicModeArg::Auto => CicMode::Auto { t: self.t },
                CicModeArg::Manual => match &self.cols {
                    Some(c) => CicMode::Manual { cols: parse_column_list(c)? },
                    None => bail!("--cic-mode manual needs --cols"),
                },
            }
        };
        let cutoff = match self.cutoff {
            CutoffArg::Optimize => CutoffRule::Optimize,
            CutoffArg::Naive => CutoffRule::Naive(NaiveRule::HalfGap),
            CutoffArg::NaiveMidpoint => CutoffRule::Naive(NaiveRule::Midpoint),
        };
        Ok(RunConfig {
            cic_mode,
            nb: self.split.nb,
            train_pos: self.split.train_pos,
            train_neg: self.split.train_neg,
            measure: self.measure.into(),
            cutoff,
            seed: self.split.seed,
            stats: self.split.stats.into(),
            quantize_digits: self.split.quantize_digits,
            batch_size: self.batch_size,
        })
    }

    fn finish(&self, report: &PredictionReport, ds: &Dataset) -> Result<()> {
        print!("{}", render_report(report, &ds.matrix));
        if let Some(p) = &self.export_cics {
            write_cics_csv(p, &report.cics)?;
        }
        if let Some(dir) = &self.emit_plots {
            emit_plot_data(dir, report)?;
        }
        if let Some(dir) = &self.report_dir {
            std::fs::create_dir_all(dir)?;
            write_text(dir.join("report.txt"), &render_report(report, &ds.matrix))?;
            write_text(dir.join("report.kv"), &report_kv(report))?;
        }
        Ok(())
    }
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args, Debug)]
struct BatchArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args, Debug)]
struct RankArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    split: SplitArgs,
    /// Also write the table as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AutoArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum IndicatorArg {
    Max,
    Min,
}

#[derive(Args, Debug)]
struct UnionArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    split: SplitArgs,
    /// Reference-set size drawn from the positives outside the training set.
    #[arg(long, default_value = "20%", value_parser = train_size)]
    u_pos: TrainSize,
    #[arg(long, default_value_t = 0.3)]
    bpos: f64,
    #[arg(long, default_value_t = 0.01)]
    bneg: f64,
    #[arg(long, value_enum, default_value = "max")]
    indicator: IndicatorArg,
    #[arg(long, value_enum, default_value = "kappa")]
    measure: MeasureArg,
    /// Number of equally spaced cutoffs on [0, 1].
    #[arg(long, default_value_t = 101)]
    grid_points: usize,
    #[arg(long)]
    emit_plots: Option<PathBuf>,
    #[arg(long)]
    report_dir: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PresetArg {
    Planted,
    Separable,
    Null,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum NoiseArg {
    Normal,
    Laplace,
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "planted")]
    preset: PresetArg,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    positive_rate: Option<f64>,
    /// Planted columns, 1-based.
    #[arg(long)]
    planted: Option<String>,
    #[arg(long)]
    shift: Option<f64>,
    #[arg(long)]
    spread: Option<f64>,
    #[arg(long)]
    hit_rate: Option<f64>,
    #[arg(long, value_enum)]
    noise: Option<NoiseArg>,
    #[arg(long)]
    discrete_cols: Option<usize>,
    #[arg(long)]
    discrete_levels: Option<u32>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum IrisType {
    Setosa,
    Versicolor,
    Virginica,
    All,
}

#[derive(Args, Debug)]
struct IrisArgs {
    #[arg(long = "type", value_enum, default_value = "all")]
    kind: IrisType,
    #[arg(long, default_value_t = 5)]
    nb: usize,
    #[arg(long, default_value = "3,4")]
    cols: String,
    /// Select by thresholds instead of the fixed columns.
    #[arg(long)]
    bpos: Option<f64>,
    #[arg(long, default_value_t = 0.01)]
    bneg: f64,
    #[arg(long, default_value = "60%", value_parser = train_size)]
    train_pos: TrainSize,
    #[arg(long, default_value = "1%", value_parser = train_size)]
    train_neg: TrainSize,
    #[arg(long, value_enum, default_value = "kappa")]
    measure: MeasureArg,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

fn cmd_classify(a: &ClassifyArgs) -> Result<()> {
    let ds = a.data.load()?;
    let report = classify(&ds.matrix, &ds.labels, &a.run.config()?)?;
    a.run.finish(&report, &ds)
}

fn cmd_batch(a: &BatchArgs) -> Result<()> {
    if a.run.batch_size.is_none() {
        bail!("batch needs --batch-size");
    }
    let ds = a.data.load()?;
    let report = classify(&ds.matrix, &ds.labels, &a.run.config()?)?;
    a.run.finish(&report, &ds)
}

fn cmd_rank(a: &RankArgs) -> Result<()> {
    let ds = a.data.load()?;
    let s = &a.split;
    let split = split_training(&ds.labels, s.train_pos, s.train_neg, None, s.seed)?;
    let scaled = scale_for_split(&ds.matrix, &split, s.stats.into(), s.quantize_digits)?;
    let table = relevance_table(&scaled, &split, s.nb)?;
    print!("{}", render_relevance(&table, &ds.matrix));
    if let Some(p) = &a.out {
        write_relevance_csv(p, &table, &ds.matrix)?;
    }
    Ok(())
}

fn cmd_autocics(a: &AutoArgs) -> Result<()> {
    let ds = a.data.load()?;
    let mut cfg = a.run.config()?;
    cfg.cic_mode = CicMode::Auto { t: a.run.t };
    let report = classify(&ds.matrix, &ds.labels, &cfg)?;
    a.run.finish(&report, &ds)
}

fn cmd_union(a: &UnionArgs) -> Result<()> {
    let ds = a.data.load()?;
    let s = &a.split;
    let cfg = UnionConfig {
        b_pos: a.bpos,
        b_neg: a.bneg,
        nb: s.nb,
        train_pos: s.train_pos,
        train_neg: s.train_neg,
        u_pos: a.u_pos,
        indicator: match a.indicator {
            IndicatorArg::Max => QIndicator::Max,
            IndicatorArg::Min => QIndicator::Min,
        },
        measure: a.measure.into(),
        grid: default_grid(a.grid_points),
        seed: s.seed,
        stats: s.stats.into(),
        quantize_digits: s.quantize_digits,
    };
    let report = union_classify(&ds.matrix, &ds.labels, &cfg)?;
    let text = render_union_report(&report, &ds.matrix);
    print!("{text}");
    if let Some(dir) = &a.emit_plots {
        emit_union_plot_data(dir, &report)?;
    }
    if let Some(dir) = &a.report_dir {
        std::fs::create_dir_all(dir)?;
        write_text(dir.join("report.txt"), &text)?;
        write_text(dir.join("report.kv"), &union_report_kv(&report))?;
    }
    Ok(())
}

fn cmd_gen(a: &GenArgs) -> Result<()> {
    let mut spec = match a.preset {
        PresetArg::Planted => GeneratorSpec::planted_lot(a.seed),
        PresetArg::Separable => GeneratorSpec::separable_lot(a.seed),
        PresetArg::Null => GeneratorSpec { planted: Vec::new(), ..GeneratorSpec::planted_lot(a.seed) },
    };
    if let Some(v) = a.m {
        spec.m = v;
    }
    if let Some(v) = a.n {
        spec.n = v;
    }
    if let Some(v) = a.positive_rate {
        spec.positive_rate = v;
    }
    if let Some(v) = a.hit_rate {
        spec.hit_rate = v;
    }
    if let Some(v) = a.discrete_cols {
        spec.discrete_cols = v;
    }
    if let Some(v) = a.discrete_levels {
        spec.discrete_levels = v;
    }
    if let Some(n) = a.noise {
        spec.noise = match n {
            NoiseArg::Normal => Noise::Normal,
            NoiseArg::Laplace => Noise::Laplace,
        };
    }
    let template = spec.planted.first().copied().unwrap_or(Planted { col: 0, shift: 8.0, spread: 0.0 });
    if let Some(cols) = &a.planted {
        spec.planted = parse_column_list(cols)?.into_iter().map(|col| Planted { col, ..template }).collect();
    }
    for p in &mut spec.planted {
        p.shift = a.shift.unwrap_or(p.shift);
        p.spread = a.spread.unwrap_or(p.spread);
    }
    let lot = generate(&spec)?;
    write_dataset_csv(&a.out, &lot.matrix, &lot.labels)?;
    let planted: Vec<String> = lot.planted.iter().map(|c| (c + 1).to_string()).collect();
    println!(
        "wrote {} ({} x {}, {} positive, planted columns: {})",
        a.out.display(),
        lot.matrix.rows(),
        lot.matrix.cols(),
        lot.labels.count_positive(),
        if planted.is_empty() { "none".to_string() } else { planted.join(",") }
    );
    Ok(())
}

fn cmd_iris(a: &IrisArgs) -> Result<()> {
    let data = iris::load();
    let kinds: Vec<&str> = match a.kind {
        IrisType::All => iris::SPECIES.to_vec(),
        IrisType::Setosa => vec!["setosa"],
        IrisType::Versicolor => vec!["versicolor"],
        IrisType::Virginica => vec!["virginica"],
    };
    let cic_mode = match a.bpos {
        Some(b) => CicMode::Thresholds { b_pos: b, b_neg: a.bneg },
        None => CicMode::Manual { cols: parse_column_list(&a.cols)? },
    };
    for (i, kind) in kinds.iter().enumerate() {
        let cfg = RunConfig {
            cic_mode: cic_mode.clone(),
            nb: a.nb,
            train_pos: a.train_pos,
            train_neg: a.train_neg,
            measure: a.measure.into(),
            seed: a.seed,
            ..RunConfig::default()
        };
        let report = classify(&data.matrix, &data.one_vs_rest(kind), &cfg)?;
        if i > 0 {
            println!();
        }
        println!("== {kind} vs rest ==");
        print!("{}", render_report(&report, &data.matrix));
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Classify(a) => cmd_classify(a),
        Command::Rank(a) => cmd_rank(a),
        Command::Autocics(a) => cmd_autocics(a),
        Command::Union(a) => cmd_union(a),
        Command::Batch(a) => cmd_batch(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Iris(a) => cmd_iris(a),
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
/// Returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}
