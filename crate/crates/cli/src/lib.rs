//! Command-line front end: rates, evolution, fidelity, sweeps and thresholds
//! as CSV.

mod config;

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use atomtele::analysis::{
    decay_time_thresholds, evaluate_with, sweep, PointMetrics, SampleRange, SweepAxis, SweepSpec,
    SweepTable,
};
use atomtele::dynamics::{initial_density, trajectory, DensityMatrix4};
use atomtele::{coupling_pair, Engine, GeometryParams, InitialState, StepControl};

pub use config::{merge_config, parse_config};

/// Largest elementwise disagreement tolerated by `--engine both`.
pub const CROSS_CHECK_TOL: f64 = 1e-6;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_CROSS_CHECK: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "atomtele",
    version,
    about = "Teleportation fidelity through two coupled decaying atoms"
)]
struct Cli {
    /// File of `key = value` lines supplying defaults for the subcommand flags.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Write CSV here instead of stdout.
    #[arg(long, short, global = true, value_name = "FILE")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

const SUBCOMMANDS: [&str; 7] = [
    "rates",
    "evolve",
    "fidelity",
    "sweep-time",
    "sweep-distance",
    "surface",
    "thresholds",
];

#[derive(Subcommand, Debug)]
enum Command {
    /// Collective damping and dipole shift at one separation.
    Rates {
        #[arg(long)]
        r: f64,
        #[command(flatten)]
        phys: Physical,
    },
    /// Channel density matrix entries over time.
    Evolve {
        #[command(flatten)]
        state: StateArg,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 0.0)]
        gt_min: f64,
        #[arg(long)]
        gt_max: f64,
        #[arg(long, default_value_t = 101)]
        count: usize,
        #[command(flatten)]
        phys: Physical,
        #[command(flatten)]
        engine: EngineOpts,
    },
    /// F, C, P and the optimal recovery strategy at one point.
    Fidelity {
        #[command(flatten)]
        state: StateArg,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        gt: f64,
        #[command(flatten)]
        phys: Physical,
        #[command(flatten)]
        engine: EngineOpts,
    },
    /// F, C, P against γt at fixed separation.
    SweepTime {
        #[command(flatten)]
        state: StateArg,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 0.0)]
        gt_min: f64,
        #[arg(long)]
        gt_max: f64,
        #[arg(long, default_value_t = 201)]
        count: usize,
        #[command(flatten)]
        phys: Physical,
        #[command(flatten)]
        engine: EngineOpts,
    },
    /// F, C, P against r/λ at fixed γt.
    SweepDistance {
        #[command(flatten)]
        state: StateArg,
        #[arg(long)]
        gt: f64,
        #[arg(long)]
        r_min: f64,
        #[arg(long)]
        r_max: f64,
        #[arg(long, default_value_t = 201)]
        count: usize,
        #[command(flatten)]
        phys: Physical,
        #[command(flatten)]
        engine: EngineOpts,
    },
    /// F over a (γt, r/λ) grid.
    Surface {
        #[command(flatten)]
        state: StateArg,
        #[arg(long, default_value_t = 0.0)]
        gt_min: f64,
        #[arg(long)]
        gt_max: f64,
        #[arg(long, default_value_t = 51)]
        gt_count: usize,
        #[arg(long)]
        r_min: f64,
        #[arg(long)]
        r_max: f64,
        #[arg(long, default_value_t = 51)]
        r_count: usize,
        #[command(flatten)]
        phys: Physical,
        #[command(flatten)]
        engine: EngineOpts,
    },
    /// Decay-time thresholds of the nonclassical region.
    Thresholds,
}

#[derive(Args, Debug, Clone, Copy)]
struct Physical {
    /// Angle between the dipoles and the interatomic axis, radians.
    #[arg(long, default_value_t = FRAC_PI_2)]
    angle: f64,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value_t = 100.0)]
    omega0: f64,
}

#[derive(Args, Debug, Clone, Copy)]
struct StateArg {
    /// bell0, bell1, bell2, bell3 or eg.
    #[arg(long, value_parser = parse_initial)]
    initial: InitialState,
}

fn parse_initial(s: &str) -> std::result::Result<InitialState, atomtele::Error> {
    s.parse()
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum EngineChoice {
    Analytic,
    Integrator,
    Both,
}

#[derive(Args, Debug, Clone, Copy)]
struct EngineOpts {
    #[arg(long, value_enum, default_value_t = EngineChoice::Analytic)]
    engine: EngineChoice,
    /// Integrator step bound in units of 1/γ.
    #[arg(long)]
    step: Option<f64>,
    /// Integrator error budget.
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
}

impl EngineOpts {
    fn control(&self, gamma: f64) -> StepControl {
        StepControl {
            max_step: self.step.map(|h| h / gamma),
            tolerance: self.tolerance,
        }
    }

    fn engines(&self) -> Vec<Engine> {
        match self.engine {
            EngineChoice::Analytic => vec![Engine::Analytic],
            EngineChoice::Integrator => vec![Engine::Integrator],
            EngineChoice::Both => vec![Engine::Analytic, Engine::Integrator],
        }
    }

    fn record(&self, meta: &mut Meta) {
        meta.push("engine", format!("{:?}", self.engine).to_lowercase());
        meta.push(
            "step",
            self.step.map_or("auto".to_string(), |h| h.to_string()),
        );
        meta.push("tolerance", self.tolerance);
    }
}

#[derive(Debug)]
struct CrossCheckFailure(String);

impl std::fmt::Display for CrossCheckFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "engine cross-check failed: {}", self.0)
    }
}

impl std::error::Error for CrossCheckFailure {}

/// Ordered `# key = value` lines.
struct Meta(Vec<(&'static str, String)>);

impl Meta {
    fn new(command: &str) -> Self {
        Self(vec![("command", command.to_string())])
    }

    fn push(&mut self, key: &'static str, value: impl ToString) {
        self.0.push((key, value.to_string()));
    }

    fn physical(&mut self, p: &Physical) {
        self.push("angle", p.angle);
        self.push("gamma", p.gamma);
        self.push("omega0", p.omega0);
    }
}

fn num(x: f64) -> String {
    format!("{x:.11e}")
}

fn render(meta: &Meta, header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    writeln!(out, "# atomtele {}", env!("CARGO_PKG_VERSION")).unwrap();
    for (k, v) in &meta.0 {
        writeln!(out, "# {k} = {v}").unwrap();
    }
    writeln!(out, "{}", header.join(",")).unwrap();
    for row in rows {
        writeln!(out, "{}", row.join(",")).unwrap();
    }
    out
}

fn numeric_rows(rows: &[Vec<f64>]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| num(x)).collect())
        .collect()
}

fn geometry(r: f64, p: &Physical) -> Result<GeometryParams> {
    Ok(GeometryParams::new(r, p.angle, p.gamma, p.omega0)?)
}

fn check_agreement(what: &str, diff: f64) -> Result<()> {
    if diff > CROSS_CHECK_TOL || diff.is_nan() {
        return Err(CrossCheckFailure(format!(
            "{what}: analytic and integrator differ by {diff:e} (> {CROSS_CHECK_TOL:e})"
        ))
        .into());
    }
    Ok(())
}

fn sweep_with(spec: SweepSpec, opts: &EngineOpts) -> Result<SweepTable> {
    let mut tables = Vec::new();
    for engine in opts.engines() {
        tables.push(sweep(&SweepSpec {
            engine,
            control: opts.control(spec.gamma),
            ..spec
        })?);
    }
    if let [a, b] = tables.as_slice() {
        let diff = a
            .rows
            .iter()
            .zip(&b.rows)
            .flat_map(|(x, y)| x.iter().zip(y).map(|(u, v)| (u - v).abs()))
            .fold(0.0, f64::max);
        check_agreement("sweep", diff)?;
    }
    Ok(tables.swap_remove(0))
}

fn spec_for(initial: InitialState, axis: SweepAxis, p: &Physical) -> SweepSpec {
    SweepSpec {
        gamma: p.gamma,
        omega0: p.omega0,
        dipole_angle: p.angle,
        ..SweepSpec::new(initial, axis)
    }
}

fn execute(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Rates { r, phys } => {
            let rates = coupling_pair(&geometry(*r, phys)?)?;
            let mut meta = Meta::new("rates");
            meta.push("r", r);
            meta.physical(phys);
            let row = vec![num(*r), num(rates.gamma12), num(rates.omega12)];
            Ok(render(
                &meta,
                &["r_over_lambda", "gamma12", "omega12"],
                &[row],
            ))
        }
        Command::Evolve {
            state,
            r,
            gt_min,
            gt_max,
            count,
            phys,
            engine,
        } => {
            let geom = geometry(*r, phys)?;
            let rates = coupling_pair(&geom)?;
            let range = SampleRange::new(*gt_min, *gt_max, *count)?;
            if range.lo < 0.0 {
                bail!("gt-min must be non-negative");
            }
            let gts = range.values();
            let times: Vec<f64> = gts.iter().map(|gt| gt / phys.gamma).collect();
            let x0 = initial_density(state.initial);
            let mut runs: Vec<Vec<DensityMatrix4>> = Vec::new();
            for e in engine.engines() {
                runs.push(trajectory(
                    &x0,
                    &rates,
                    phys.gamma,
                    phys.omega0,
                    &times,
                    e,
                    &engine.control(phys.gamma),
                )?);
            }
            if let [a, b] = runs.as_slice() {
                let diff = a
                    .iter()
                    .zip(b)
                    .map(|(x, y)| x.max_abs_diff(y))
                    .fold(0.0, f64::max);
                check_agreement("evolve", diff)?;
            }
            let mut meta = Meta::new("evolve");
            meta.push("initial", state.initial);
            meta.push("r", r);
            meta.push("gt-min", gt_min);
            meta.push("gt-max", gt_max);
            meta.push("count", count);
            meta.physical(phys);
            engine.record(&mut meta);
            let rows: Vec<Vec<String>> = gts
                .iter()
                .zip(&runs[0])
                .map(|(&gt, rho)| {
                    let e = |i, j| rho.get(i, j);
                    [
                        gt,
                        e(0, 0).re,
                        e(1, 1).re,
                        e(2, 2).re,
                        e(3, 3).re,
                        e(0, 3).re,
                        e(0, 3).im,
                        e(1, 2).re,
                        e(1, 2).im,
                    ]
                    .iter()
                    .map(|&x| num(x))
                    .collect()
                })
                .collect();
            let header = [
                "gt", "rho11", "rho22", "rho33", "rho44", "re_rho14", "im_rho14", "re_rho23",
                "im_rho23",
            ];
            Ok(render(&meta, &header, &rows))
        }
        Command::Fidelity {
            state,
            r,
            gt,
            phys,
            engine,
        } => {
            let geom = geometry(*r, phys)?;
            let control = engine.control(phys.gamma);
            let points = engine
                .engines()
                .into_iter()
                .map(|e| evaluate_with(state.initial, &geom, *gt, e, &control))
                .collect::<atomtele::Result<Vec<PointMetrics>>>()?;
            if let [a, b] = points.as_slice() {
                check_agreement("fidelity", a.state.max_abs_diff(&b.state))?;
            }
            let m = &points[0];
            let mut meta = Meta::new("fidelity");
            meta.push("initial", state.initial);
            meta.push("r", r);
            meta.push("gt", gt);
            meta.physical(phys);
            engine.record(&mut meta);
            meta.push("strategy", m.strategy);
            let mut row = vec![
                num(*gt),
                num(*r),
                num(m.fidelity),
                num(m.concurrence),
                num(m.purity),
                num(m.fef()),
            ];
            row.extend(m.strategy.0.iter().map(|k| k.to_string()));
            let header = [
                "gt",
                "r_over_lambda",
                "F",
                "C",
                "P",
                "FEF",
                "m0",
                "m1",
                "m2",
                "m3",
            ];
            Ok(render(&meta, &header, &[row]))
        }
        Command::SweepTime {
            state,
            r,
            gt_min,
            gt_max,
            count,
            phys,
            engine,
        } => {
            let axis = SweepAxis::Time {
                r_over_lambda: *r,
                gamma_t: SampleRange::new(*gt_min, *gt_max, *count)?,
            };
            let table = sweep_with(spec_for(state.initial, axis, phys), engine)?;
            let mut meta = Meta::new("sweep-time");
            meta.push("initial", state.initial);
            meta.push("coord", "gt");
            meta.push("r", r);
            meta.push("gt-min", gt_min);
            meta.push("gt-max", gt_max);
            meta.push("count", count);
            meta.physical(phys);
            engine.record(&mut meta);
            Ok(render(&meta, &table.columns, &numeric_rows(&table.rows)))
        }
        Command::SweepDistance {
            state,
            gt,
            r_min,
            r_max,
            count,
            phys,
            engine,
        } => {
            let axis = SweepAxis::Distance {
                gamma_t: *gt,
                r_over_lambda: SampleRange::new(*r_min, *r_max, *count)?,
            };
            let table = sweep_with(spec_for(state.initial, axis, phys), engine)?;
            let mut meta = Meta::new("sweep-distance");
            meta.push("initial", state.initial);
            meta.push("coord", "r_over_lambda");
            meta.push("gt", gt);
            meta.push("r-min", r_min);
            meta.push("r-max", r_max);
            meta.push("count", count);
            meta.physical(phys);
            engine.record(&mut meta);
            Ok(render(&meta, &table.columns, &numeric_rows(&table.rows)))
        }
        Command::Surface {
            state,
            gt_min,
            gt_max,
            gt_count,
            r_min,
            r_max,
            r_count,
            phys,
            engine,
        } => {
            let axis = SweepAxis::Surface {
                gamma_t: SampleRange::new(*gt_min, *gt_max, *gt_count)?,
                r_over_lambda: SampleRange::new(*r_min, *r_max, *r_count)?,
            };
            let table = sweep_with(spec_for(state.initial, axis, phys), engine)?;
            let mut meta = Meta::new("surface");
            meta.push("initial", state.initial);
            meta.push("gt-min", gt_min);
            meta.push("gt-max", gt_max);
            meta.push("gt-count", gt_count);
            meta.push("r-min", r_min);
            meta.push("r-max", r_max);
            meta.push("r-count", r_count);
            meta.physical(phys);
            engine.record(&mut meta);
            Ok(render(&meta, &table.columns, &numeric_rows(&table.rows)))
        }
        Command::Thresholds => {
            let report = decay_time_thresholds()?;
            let mut meta = Meta::new("thresholds");
            meta.push("r-min", report.r_range.0);
            meta.push("r-max", report.r_range.1);
            meta.push("points-per-decade", report.points_per_decade);
            for t in &report.thresholds {
                meta.push(
                    "threshold",
                    format!("{} gt = {:.4} ({})", t.name, t.value, t.definition),
                );
            }
            let rows: Vec<Vec<String>> = report
                .thresholds
                .iter()
                .map(|t| {
                    vec![
                        t.name.to_string(),
                        num(t.value),
                        num(t.search.0),
                        num(t.search.1),
                        num(t.bracket.0),
                        num(t.bracket.1),
                        num(t.tolerance),
                        t.iterations.to_string(),
                        num(t.residual),
                        num(t.r_extremum),
                    ]
                })
                .collect();
            let header = [
                "name",
                "gt",
                "search_lo",
                "search_hi",
                "bracket_lo",
                "bracket_hi",
                "tolerance",
                "iterations",
                "residual",
                "r_over_lambda",
            ];
            Ok(render(&meta, &header, &rows))
        }
    }
}

/// Runs the CLI on `argv` (program name first). CSV goes to `out` unless
/// `--output` is given; diagnostics go to `err`. Returns the exit code.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let argv = match merge_config(argv, &SUBCOMMANDS) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            return EXIT_DOMAIN;
        }
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_DOMAIN } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = execute(&cli).and_then(|csv| match &cli.output {
        Some(path) => {
            std::fs::write(path, csv).with_context(|| format!("writing {}", path.display()))
        }
        None => out.write_all(csv.as_bytes()).map_err(|e| anyhow!(e)),
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            if e.downcast_ref::<CrossCheckFailure>().is_some() {
                EXIT_CROSS_CHECK
            } else {
                EXIT_DOMAIN
            }
        }
    }
}

pub fn run(argv: &[String]) -> i32 {
    run_with(
        argv,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

#[doc(hidden)]
pub fn command() -> clap::Command {
    Cli::command()
}
