use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong inside the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Fewer observations than an operation needs.
    TooFewPoints { needed: usize, found: usize },
    DuplicateYear(i32),
    /// Interior year missing from an annual series.
    YearGap { after: i32, next: i32 },
    NonPositiveGdp { year: i32, value: f64 },
    NonFiniteValue { what: &'static str },
    /// Year window does not overlap the data.
    EmptyWindow { start: i32, end: i32 },
    /// Bad estimator or window configuration.
    InvalidConfig(&'static str),
    InvalidParams(&'static str),
    /// A model was evaluated outside the region where it is defined.
    Domain { what: &'static str, at: f64 },
    /// A saturation fit met a growth rate that is not positive.
    NonPositiveRate { index: usize, rate: f64 },
    /// `a - 1/R` is not positive for every point.
    InfeasibleLinearization { index: usize, f: f64 },
    /// All abscissae of a line fit coincide.
    DegenerateAbscissa,
    /// `ln S` left the representable range of an `f64`.
    Range { ln_value: f64 },
    /// Step halving still changes the RK4 solution beyond tolerance.
    AccuracyGuard { max_rel_change: f64 },
    /// Alternating series argument beyond its cancellation guard.
    SeriesGuard { argument: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::TooFewPoints { needed, found } => {
                write!(f, "fewer than {needed} rows (found {found})")
            }
            Error::DuplicateYear(y) => write!(f, "duplicate year {y}"),
            Error::YearGap { after, next } => {
                write!(f, "gap in annual series between {after} and {next}")
            }
            Error::NonPositiveGdp { year, value } => {
                write!(f, "non-positive GDP {value} in year {year}")
            }
            Error::NonFiniteValue { what } => write!(f, "non-finite value in {what}"),
            Error::EmptyWindow { start, end } => write!(f, "empty window {start}..={end}"),
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
            Error::Domain { what, at } => write!(f, "{what} undefined at {at}"),
            Error::InfeasibleLinearization { index, f: value } => write!(
                f,
                "infeasible linearization: F = {value} <= 0 at point {index} (candidate a too small)"
            ),
            Error::NonPositiveRate { index, rate } => {
                write!(f, "no feasible asymptote: growth rate {rate} <= 0 at point {index}")
            }
            Error::DegenerateAbscissa => write!(f, "all x values identical"),
            Error::Range { ln_value } => {
                write!(f, "value out of range: ln S = {ln_value} exceeds +/-700")
            }
            Error::AccuracyGuard { max_rel_change } => write!(
                f,
                "RK4 step rejected: halving changed samples by {max_rel_change:e} relative"
            ),
            Error::SeriesGuard { argument } => {
                write!(f, "series argument rS = {argument} beyond cancellation guard")
            }
        }
    }
}

impl core::error::Error for Error {}
