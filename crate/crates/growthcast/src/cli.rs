//! Command-line grammar and dispatch.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use growthcast_core::{
    fit_saturation, linearize_f, ols_line, projection_table, AnnualSeries, RateDomain,
    TrajectoryKind, DEFAULT_PROJECTION_YEARS,
};

use crate::error::usage;
use crate::io::read_annual_series;
use crate::output::{write_atomically, write_output};
use crate::params::{ModelSet, ParamsFile, ReferenceSpec};
use crate::pipeline::{
    build_trajectories, direct_rates, fit_all, fit_model, refined_rates, resolve_years, AnchorArg, DataFitPlan,
    FitModel, RateOptions, ReferenceArg, YearRange,
};
use crate::report::{diagnose_csv, projection_csv, rates_csv, table_csv, table_text, FitReport};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "growthcast", version, about = "Growth-rate analysis and projections of annual GDP series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Direct and refined growth rates: `year,S,R_direct,R_refined`.
    Rates(RatesArgs),
    /// Fit one rate model and report it as JSON.
    Fit(FitArgs),
    /// Annual GDP along the calibrated trajectories.
    Project(ProjectArgs),
    /// GDP, stress factor and its annual increase at selected years.
    Table(TableArgs),
    /// Linearized rates `ln(a - 1/R)` against time or size.
    Diagnose(DiagnoseArgs),
    /// One CSV per figure.
    PlotData(PlotArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Annual GDP CSV (`year,gdp_trillion_2005usd`).
    #[arg(long, env = "GROWTHCAST_DATA")]
    pub input: Option<PathBuf>,
}

impl InputArgs {
    fn require(&self) -> Result<AnnualSeries, CliError> {
        match &self.input {
            Some(p) => read_annual_series(p),
            None => Err(usage("no input: pass --input or set GROWTHCAST_DATA")),
        }
    }

    fn optional(&self) -> Result<Option<AnnualSeries>, CliError> {
        self.input.as_deref().map(read_annual_series).transpose()
    }
}

#[derive(Debug, Clone, Copy, Args)]
pub struct RateArgs {
    /// Points in each refined-rate window (odd, >= 5).
    #[arg(long, default_value_t = 7)]
    pub window: usize,
    /// Degree of the local polynomial fitted to ln S.
    #[arg(long, default_value_t = 3)]
    pub degree: usize,
}

impl RateArgs {
    fn options(self) -> RateOptions {
        RateOptions {
            window: self.window,
            degree: self.degree,
        }
    }
}

#[derive(Debug, Args)]
pub struct RatesArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub rates: RateArgs,
    /// Output file, or `-` for standard output.
    #[arg(long, default_value = "-")]
    pub output: String,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum)]
    pub model: FitModel,
    /// Fit window `START:END`; defaults to the whole series.
    #[arg(long)]
    pub years: Option<YearRange>,
    #[command(flatten)]
    pub rates: RateArgs,
    /// `YEAR=GDP`, `YEAR` or `lsq`; defaults to the last year of the window.
    #[arg(long)]
    pub anchor: Option<AnchorArg>,
    #[arg(long, default_value = "-")]
    pub output: String,
}

/// Model source shared by `project`, `table` and `plot-data`.
#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Parameter file; without it the models are fitted to the input data.
    #[arg(long)]
    pub params_file: Option<PathBuf>,
    /// `YEAR=GDP`, `YEAR` or `lsq`; defaults to the parameter file's anchor,
    /// then to the last data year.
    #[arg(long)]
    pub anchor: Option<AnchorArg>,
    /// Window of the saturation fits when fitting data.
    #[arg(long)]
    pub saturation_years: Option<YearRange>,
    /// Window of the linear fits when fitting data [default: 1980:last].
    #[arg(long)]
    pub linear_years: Option<YearRange>,
    #[command(flatten)]
    pub rates: RateArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Curve {
    T1,
    T2,
    T3,
    Asymptotic,
    Size,
}

impl Curve {
    fn kind(self) -> TrajectoryKind {
        match self {
            Curve::T1 => TrajectoryKind::T1,
            Curve::T2 => TrajectoryKind::T2,
            Curve::T3 => TrajectoryKind::T3,
            Curve::Asymptotic => TrajectoryKind::AsymptoticExp,
            Curve::Size => TrajectoryKind::NumericSizeOde,
        }
    }
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub models: ModelArgs,
    #[arg(long, default_value_t = 2000)]
    pub from: i32,
    #[arg(long, default_value_t = 2300)]
    pub to: i32,
    #[arg(long, default_value_t = 1)]
    pub step: u32,
    /// Columns to emit, in order.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "t1,t2,t3,asymptotic")]
    pub curves: Vec<Curve>,
    #[arg(long, default_value = "-")]
    pub output: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub models: ModelArgs,
    /// Stress-factor reference: `YEAR` (each trajectory's own value) or
    /// `YEAR=GDP` (an observed value); defaults to the parameter file's
    /// reference, then to 2000.
    #[arg(long)]
    pub reference: Option<ReferenceArg>,
    /// Rows to report [default: 2000,2014,2050,2100,2150,2158,2200,2250,2300].
    #[arg(long, value_delimiter = ',')]
    pub years: Vec<i32>,
    /// What `--output` receives.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: TableFormat,
    /// Also write the aligned-text rendering here.
    #[arg(long)]
    pub text_output: Option<String>,
    #[arg(long, default_value = "-")]
    pub output: String,
}

#[derive(Debug, Args)]
pub struct DiagnoseArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "time")]
    pub domain: DomainArg,
    /// Saturation constant `a`; defaults to the fitted value.
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub years: Option<YearRange>,
    #[command(flatten)]
    pub rates: RateArgs,
    #[arg(long, default_value = "-")]
    pub output: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainArg {
    Time,
    Size,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub models: ModelArgs,
    /// Directory for `fig1_rates.csv` ... `fig9_projections.csv`, or `-` to
    /// print them all, each after a `# <name>` line.
    #[arg(long, default_value = ".")]
    pub output: String,
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("growthcast: {}", one_line(&e));
            e.exit_code()
        }
    }
}

fn one_line(e: &CliError) -> String {
    e.to_string().replace('\n', " ")
}

pub fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Rates(a) => {
            let series = a.input.require()?;
            let refined = refined_rates(&series, a.rates.options())?;
            let direct = direct_rates(&series)?;
            write_output(&a.output, rates_csv(&direct, &refined).as_bytes())
        }
        Command::Fit(a) => {
            let series = a.input.require()?;
            let refined = refined_rates(&series, a.rates.options())?;
            let years = resolve_years(&series, a.years)?;
            let fit = fit_model(&series, &refined, a.model, years, a.anchor)?;
            write_output(&a.output, FitReport::new(&fit, a.rates.options()).to_json().as_bytes())
        }
        Command::Project(a) => {
            if a.from > a.to || a.step == 0 {
                return Err(usage("--from must not exceed --to and --step must be positive"));
            }
            let source = ModelSource::load(&a.models, &a.input)?;
            let kinds: Vec<TrajectoryKind> = a.curves.iter().map(|c| c.kind()).collect();
            let trajs = build_trajectories(&source.models, &kinds, source.series.as_ref(), source.anchor)?;
            let years: Vec<i32> = (a.from..=a.to).step_by(a.step as usize).collect();
            write_output(&a.output, projection_csv(&trajs, &years)?.as_bytes())
        }
        Command::Table(a) => {
            let source = ModelSource::load(&a.models, &a.input)?;
            let reference = a
                .reference
                .map(|r| r.0)
                .or(source.reference)
                .unwrap_or(ReferenceSpec { year: 2000, gdp: None })
                .to_reference();
            let kinds = [TrajectoryKind::T1, TrajectoryKind::T2, TrajectoryKind::T3];
            let trajs = build_trajectories(&source.models, &kinds, source.series.as_ref(), source.anchor)?;
            let years = if a.years.is_empty() {
                DEFAULT_PROJECTION_YEARS.to_vec()
            } else {
                a.years.clone()
            };
            let rows = projection_table(&trajs, &years, &reference)?;
            let text = table_text(&rows, &reference);
            let main = match a.format {
                TableFormat::Csv => table_csv(&rows),
                TableFormat::Text => text.clone(),
            };
            if let Some(target) = &a.text_output {
                write_output(target, text.as_bytes())?;
            }
            write_output(&a.output, main.as_bytes())
        }
        Command::Diagnose(a) => diagnose(a),
        Command::PlotData(a) => {
            let series = a.input.require()?;
            let source = ModelSource::load(&a.models, &a.input)?;
            let opts = a.models.rates.options();
            let refined = refined_rates(&series, opts)?;
            let direct = direct_rates(&series)?;
            let figs = crate::plot::figures(&series, &direct, &refined, &source.models, source.anchor)?;
            if a.output == "-" {
                let mut all = String::new();
                for f in &figs {
                    all.push_str(&format!("# {}\n", f.name));
                    all.push_str(&f.csv);
                }
                return write_output("-", all.as_bytes());
            }
            let dir = Path::new(&a.output);
            std::fs::create_dir_all(dir).map_err(|source| CliError::Write {
                path: dir.to_owned(),
                source,
            })?;
            for f in &figs {
                write_atomically(&dir.join(f.name), f.csv.as_bytes())?;
            }
            Ok(())
        }
    }
}

fn diagnose(a: DiagnoseArgs) -> Result<(), CliError> {
    let series = a.input.require()?;
    let refined = refined_rates(&series, a.rates.options())?;
    let years = resolve_years(&series, a.years)?;
    let window = refined.restrict(f64::from(years.start), f64::from(years.end));
    let domain = match a.domain {
        DomainArg::Time => RateDomain::Time,
        DomainArg::Size => RateDomain::Size,
    };
    let sat_a = match a.a {
        Some(v) if v > 0.0 && v.is_finite() => v,
        Some(v) => return Err(usage(format!("--a must be positive, got {v}"))),
        None => fit_saturation(&window, domain)?.params.a(),
    };
    let pairs = linearize_f(sat_a, &window, domain)?;
    let xs: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let line = ols_line(&xs, &ys)?;
    write_output(&a.output, diagnose_csv(&pairs, &line).as_bytes())
}

/// Models, anchor and data resolved from a parameter file or the input.
struct ModelSource {
    models: ModelSet,
    anchor: AnchorArg,
    reference: Option<ReferenceSpec>,
    series: Option<AnnualSeries>,
}

impl ModelSource {
    fn load(args: &ModelArgs, input: &InputArgs) -> Result<Self, CliError> {
        match &args.params_file {
            Some(path) => {
                let file = ParamsFile::read(path)?;
                let models = file.models(&path.display().to_string())?;
                let anchor = args
                    .anchor
                    .or(file.anchor.map(|a| AnchorArg::Point { year: a.year, gdp: a.gdp }));
                // Data are read only when the anchor refers to them.
                let series = match anchor {
                    Some(AnchorArg::Point { .. }) => input.optional().ok().flatten(),
                    _ => Some(input.require()?),
                };
                let anchor = match anchor {
                    Some(a) => a,
                    None => AnchorArg::Year(series.as_ref().map_or(0, |s| s.last_year())),
                };
                Ok(Self {
                    models,
                    anchor,
                    reference: file.reference,
                    series,
                })
            }
            None => {
                let series = input.require()?;
                let plan = DataFitPlan {
                    rates: args.rates.options(),
                    saturation_years: args.saturation_years,
                    linear_years: args.linear_years,
                };
                let models = fit_all(&series, &plan)?;
                Ok(Self {
                    models,
                    anchor: args.anchor.unwrap_or(AnchorArg::Year(series.last_year())),
                    reference: None,
                    series: Some(series),
                })
            }
        }
    }
}
