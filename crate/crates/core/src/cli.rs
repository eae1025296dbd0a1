//! Command-line front end: table reproduction, profile grids, single-ion runs
//! and the acceptance suite.
//!
//! Every subcommand is a plain function returning an [`Outcome`] so it can be
//! driven without a process boundary; [`run`] adds argument parsing and
//! output.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::acceptance;
use crate::error::{Error, Result};
use crate::observables::{entropy_density, Analysis, EntropyReport, Space};
use crate::quadrature::QuadratureSpec;
use crate::wavefunction::{IonSpec, Mode};

/// Points in the default profile grids.
pub const DEFAULT_GRID_POINTS: usize = 500;

/// An evenly spaced grid `start, …, stop` with `count` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        let grid = Self { start, stop, count };
        grid.validate()?;
        Ok(grid)
    }

    /// Default grid for a space: `[0, 25/Z]` in position, `[0, 8Z]` in momentum.
    pub fn default_for(space: Space, z: u32) -> Self {
        let z = f64::from(z);
        let stop = match space {
            Space::Position => 25.0 / z,
            Space::Momentum => 8.0 * z,
        };
        Self {
            start: 0.0,
            stop,
            count: DEFAULT_GRID_POINTS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::InvalidGrid(format!(
                "count must be at least 2, got {}",
                self.count
            )));
        }
        if !self.start.is_finite() || self.start < 0.0 {
            return Err(Error::InvalidGrid(format!(
                "start must be finite and >= 0, got {}",
                self.start
            )));
        }
        if !self.stop.is_finite() || self.stop <= self.start {
            return Err(Error::InvalidGrid(format!(
                "stop must be finite and > start, got {}",
                self.stop
            )));
        }
        Ok(())
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(move |i| {
            if i + 1 == self.count {
                self.stop
            } else {
                self.start + i as f64 * step
            }
        })
    }
}

impl FromStr for Grid {
    type Err = Error;

    /// Parses `start:stop:count`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, count] = parts.as_slice() else {
            return Err(Error::InvalidGrid(format!(
                "expected start:stop:count, got `{s}`"
            )));
        };
        let number = |field: &str, v: &str| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidGrid(format!("bad {field} `{v}`")))
        };
        let count = count
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::InvalidGrid(format!("bad count `{count}`")))?;
        Grid::new(number("start", start)?, number("stop", stop)?, count)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SpaceSelection {
    Position,
    Momentum,
    #[default]
    Both,
}

impl SpaceSelection {
    pub fn spaces(self) -> &'static [Space] {
        match self {
            SpaceSelection::Position => &[Space::Position],
            SpaceSelection::Momentum => &[Space::Momentum],
            SpaceSelection::Both => &[Space::Position, Space::Momentum],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum ModeSelection {
    Corr,
    Uncorr,
    #[default]
    Both,
}

impl ModeSelection {
    pub fn modes(self) -> Vec<Mode> {
        match self {
            ModeSelection::Corr => vec![Mode::Correlated],
            ModeSelection::Uncorr => vec![Mode::Uncorrelated],
            ModeSelection::Both => Mode::BOTH.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// An ion given either by registry name or by explicit parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IonEntry {
    Name(String),
    Spec(IonSpec),
}

impl IonEntry {
    pub fn resolve(&self) -> Result<IonSpec> {
        match self {
            IonEntry::Name(name) => IonSpec::lookup(name),
            IonEntry::Spec(spec) => IonSpec::new(spec.name.clone(), spec.z, spec.a, spec.b),
        }
    }

    fn label(&self) -> &str {
        match self {
            IonEntry::Name(name) => name,
            IonEntry::Spec(spec) => &spec.name,
        }
    }
}

fn registry_entries() -> Vec<IonEntry> {
    IonSpec::registry()
        .into_iter()
        .map(|ion| IonEntry::Name(ion.name))
        .collect()
}

fn both_modes() -> Vec<Mode> {
    Mode::BOTH.to_vec()
}

/// Everything a run needs; loadable from a JSON config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub ions: Vec<IonEntry>,
    pub modes: Vec<Mode>,
    pub space: SpaceSelection,
    /// `None` selects the per-ion default grid.
    pub grid: Option<Grid>,
    pub format: Format,
    pub quadrature: QuadratureSpec,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            ions: registry_entries(),
            modes: both_modes(),
            space: SpaceSelection::Both,
            grid: None,
            format: Format::Csv,
            quadrature: QuadratureSpec::default(),
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: RunConfig = serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameters(format!("config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(grid) = &self.grid {
            grid.validate()?;
        }
        Ok(())
    }
}

/// A table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Text(String),
    Integer(u64),
    Number(f64),
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::Text(s) => s.clone(),
            Value::Integer(n) => n.to_string(),
            Value::Number(x) => format_number(*x),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Value::Text(s) => s.clone().into(),
            Value::Integer(n) => (*n).into(),
            Value::Number(x) => {
                serde_json::Number::from_f64(*x).map_or(serde_json::Value::Null, Into::into)
            }
        }
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_owned())
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Number(x)
    }
}

/// CSV rendering of a number: fixed six decimals, or six significant digits
/// in scientific notation when fixed notation would keep fewer.
pub fn format_number(x: f64) -> String {
    if x == 0.0 || !x.is_finite() || x.abs() >= 0.1 {
        format!("{x:.6}")
    } else {
        format!("{x:.5e}")
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Value::csv))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
    }

    /// An array of row objects keyed by column name, numbers at full precision.
    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let object = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| ((*c).to_owned(), v.json()))
                    .collect();
                serde_json::Value::Object(object)
            })
            .collect();
        serde_json::to_string_pretty(&rows).expect("serializable") + "\n"
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// A row that could not be computed.
#[derive(Debug, Clone, PartialEq)]
pub struct RowError {
    pub row: String,
    pub error: Error,
}

impl fmt::Display for RowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.row, self.error)
    }
}

/// Table plus per-row failures; the run succeeded iff `errors` is empty.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Outcome {
    pub table: Table,
    pub errors: Vec<RowError>,
}

impl Outcome {
    pub fn succeeded(&self) -> bool {
        self.errors.is_empty()
    }
}

fn analyses(
    entry: &IonEntry,
    modes: &[Mode],
    spec: &QuadratureSpec,
) -> Result<(IonSpec, Vec<Analysis>)> {
    let ion = entry.resolve()?;
    let analyses = modes
        .iter()
        .map(|&m| Analysis::new(&ion, m, spec))
        .collect::<Result<_>>()?;
    Ok((ion, analyses))
}

/// Origin densities: `(ion, z, a, b, ρ_c(0), ρ_0(0), γ_c(0), γ_0(0))`.
pub fn cmd_table1(config: &RunConfig) -> Outcome {
    let mut out = Outcome {
        table: Table::new(vec![
            "ion", "z", "a", "b", "rho_c0", "rho_00", "gamma_c0", "gamma_00",
        ]),
        errors: Vec::new(),
    };
    for entry in &config.ions {
        match analyses(entry, &Mode::BOTH, &config.quadrature) {
            Ok((ion, a)) => out.table.rows.push(vec![
                ion.name.as_str().into(),
                Value::Integer(u64::from(ion.z)),
                ion.a.into(),
                ion.b.into(),
                a[0].position.density(0.0).into(),
                a[1].position.density(0.0).into(),
                a[0].momentum.density(0.0).into(),
                a[1].momentum.density(0.0).into(),
            ]),
            Err(error) => out.errors.push(RowError {
                row: entry.label().to_owned(),
                error,
            }),
        }
    }
    out
}

/// Entropies: `(ion, S_ρ0, S_γ0, sum_0, S_ρc, S_γc, sum_c)`.
pub fn cmd_table2(config: &RunConfig) -> Outcome {
    let mut out = Outcome {
        table: Table::new(vec![
            "ion", "s_rho0", "s_gamma0", "sum0", "s_rhoc", "s_gammac", "sumc",
        ]),
        errors: Vec::new(),
    };
    let spec = &config.quadrature;
    for entry in &config.ions {
        let reports = analyses(entry, &Mode::BOTH, spec)
            .and_then(|(ion, a)| Ok((ion, a[0].report(spec)?, a[1].report(spec)?)));
        match reports {
            Ok((ion, c, u)) => out.table.rows.push(vec![
                ion.name.as_str().into(),
                u.s_rho.into(),
                u.s_gamma.into(),
                u.sum.into(),
                c.s_rho.into(),
                c.s_gamma.into(),
                c.sum.into(),
            ]),
            Err(error) => out.errors.push(RowError {
                row: entry.label().to_owned(),
                error,
            }),
        }
    }
    out
}

/// Profile grids: `(space, ion, mode, x, 4πx²d(x), −S(x))` where `−S(x)` is
/// `4πx² d ln d`, the sign conventionally plotted.
pub fn cmd_profile(config: &RunConfig) -> Result<Outcome> {
    config.validate()?;
    let mut out = Outcome {
        table: Table::new(vec![
            "space",
            "ion",
            "mode",
            "x",
            "radial_density",
            "minus_entropy_density",
        ]),
        errors: Vec::new(),
    };
    for entry in &config.ions {
        for &mode in &config.modes {
            let (ion, analysis) = match analyses(entry, &[mode], &config.quadrature) {
                Ok((ion, mut a)) => (ion, a.remove(0)),
                Err(error) => {
                    out.errors.push(RowError {
                        row: format!("{} {mode}", entry.label()),
                        error,
                    });
                    continue;
                }
            };
            for &space in config.space.spaces() {
                let grid = config
                    .grid
                    .unwrap_or_else(|| Grid::default_for(space, ion.z));
                let d = analysis.profile(space);
                for x in grid.points() {
                    out.table.rows.push(vec![
                        space.as_str().into(),
                        ion.name.as_str().into(),
                        mode.as_str().into(),
                        x.into(),
                        d.radial_density(x).into(),
                        (0.0 - entropy_density(d, x)).into(),
                    ]);
                }
            }
        }
    }
    Ok(out)
}

/// Full entropy reports for an arbitrary admissible ion.
pub fn cmd_ion(ion: &IonSpec, modes: &[Mode], spec: &QuadratureSpec) -> Result<Vec<EntropyReport>> {
    let ion = IonSpec::new(ion.name.clone(), ion.z, ion.a, ion.b)?;
    modes
        .iter()
        .map(|&mode| Analysis::new(&ion, mode, spec)?.report(spec))
        .collect()
}

#[derive(Debug, Parser)]
#[command(
    name = "hylleraas-entropy",
    version,
    about = "Shannon entropies of correlated two-electron ions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Position and momentum densities at the origin, correlated and uncorrelated.
    Table1(CommonArgs),
    /// Position and momentum entropies and their sums.
    Table2(CommonArgs),
    /// Radial densities and entropy densities on a grid.
    Profile(CommonArgs),
    /// Entropy report for an ion with explicit parameters (JSON).
    Ion(IonArgs),
    /// Run the acceptance suite.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// JSON run configuration; flags given on the command line override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Comma-separated registry names (H-, He, Li+, Be2+, B3+); empty for none.
    #[arg(long, value_delimiter = ',')]
    pub ions: Option<Vec<String>>,
    /// Ignored by table1/table2, which always show both.
    #[arg(long, value_enum)]
    pub mode: Option<ModeSelection>,
    #[arg(long, value_enum)]
    pub space: Option<SpaceSelection>,
    /// start:stop:count
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub rel_tol: Option<f64>,
}

impl CommonArgs {
    pub fn to_config(&self) -> Result<RunConfig> {
        let mut config = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Error::InvalidParameters(format!("{}: {e}", path.display())))?;
                RunConfig::from_json(&text)?
            }
            None => RunConfig::default(),
        };
        if let Some(ions) = &self.ions {
            config.ions = ions
                .iter()
                .filter(|s| !s.trim().is_empty())
                .map(|s| IonEntry::Name(s.trim().into()))
                .collect();
        }
        if let Some(mode) = self.mode {
            config.modes = mode.modes();
        }
        if let Some(space) = self.space {
            config.space = space;
        }
        if let Some(grid) = &self.grid {
            config.grid = Some(grid.parse()?);
        }
        if let Some(format) = self.format {
            config.format = format;
        }
        if let Some(rel_tol) = self.rel_tol {
            config.quadrature = config.quadrature.with_rel_tol(rel_tol);
        }
        config.validate()?;
        Ok(config)
    }
}

#[derive(Debug, Args)]
pub struct IonArgs {
    #[arg(long)]
    pub z: u32,
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub b: f64,
    #[arg(long, default_value = "custom")]
    pub name: String,
    #[arg(long, value_enum, default_value = "both")]
    pub mode: ModeSelection,
    #[arg(long)]
    pub rel_tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

/// Exit status for a usage or validation error.
pub const EXIT_USAGE: u8 = 2;

/// Executes a parsed command, writing results to `out` and diagnostics to
/// `err`. Returns the process exit status.
pub fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match try_execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn emit(outcome: &Outcome, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let _ = out.write_all(outcome.table.render(format).as_bytes());
    for e in &outcome.errors {
        let _ = writeln!(err, "row failed: {e}");
    }
    u8::from(!outcome.succeeded())
}

fn try_execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    Ok(match cli.command {
        Command::Table1(args) => {
            let config = args.to_config()?;
            emit(&cmd_table1(&config), config.format, out, err)
        }
        Command::Table2(args) => {
            let config = args.to_config()?;
            emit(&cmd_table2(&config), config.format, out, err)
        }
        Command::Profile(args) => {
            let config = args.to_config()?;
            emit(&cmd_profile(&config)?, config.format, out, err)
        }
        Command::Ion(args) => {
            let ion = IonSpec::new(args.name, args.z, args.a, args.b)?;
            let mut spec = QuadratureSpec::default();
            if let Some(rel_tol) = args.rel_tol {
                spec = spec.with_rel_tol(rel_tol);
            }
            let reports = cmd_ion(&ion, &args.mode.modes(), &spec)?;
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&reports).expect("serializable")
            );
            0
        }
        Command::Check(args) => {
            let criteria = acceptance::run_all(QuadratureSpec::default())?;
            match args.format {
                Format::Csv => {
                    for c in &criteria {
                        let _ = writeln!(out, "{c}");
                        for check in c.failures() {
                            let _ = writeln!(out, "    FAIL {}: {}", check.label, check.detail);
                        }
                    }
                }
                Format::Json => {
                    let _ = writeln!(
                        out,
                        "{}",
                        serde_json::to_string_pretty(&criteria).expect("serializable")
                    );
                }
            }
            u8::from(!criteria.iter().all(acceptance::Criterion::passed))
        }
    })
}

/// Entry point for the binary.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    let code = execute(
        cli,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    ExitCode::from(code)
}
