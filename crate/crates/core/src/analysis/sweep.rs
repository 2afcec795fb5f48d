//! Grids over time, separation, or both.

use rayon::prelude::*;

use super::pipeline::PointMetrics;
use super::roots::linspace;
use crate::couplings::{coupling_pair, GeometryParams};
use crate::dynamics::{initial_density, trajectory, Engine, InitialState, StepControl};
use crate::error::{domain, Result};

/// `count` evenly spaced samples on `[lo, hi]`. A single sample needs
/// `lo == hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleRange {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl SampleRange {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self> {
        let range = Self { lo, hi, count };
        range.validate()?;
        Ok(range)
    }

    pub fn point(x: f64) -> Self {
        Self {
            lo: x,
            hi: x,
            count: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.lo.is_finite() || !self.hi.is_finite() {
            return Err(domain(format!(
                "range [{}, {}] is not finite",
                self.lo, self.hi
            )));
        }
        match self.count {
            0 => Err(domain("range needs at least one sample")),
            1 if self.lo != self.hi => Err(domain("a single-sample range needs lo == hi")),
            1 => Ok(()),
            _ if self.lo < self.hi => Ok(()),
            _ => Err(domain(format!(
                "range needs lo < hi, got [{}, {}]",
                self.lo, self.hi
            ))),
        }
    }

    pub fn values(&self) -> Vec<f64> {
        linspace(self.lo, self.hi, self.count)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepAxis {
    Time {
        r_over_lambda: f64,
        gamma_t: SampleRange,
    },
    Distance {
        gamma_t: f64,
        r_over_lambda: SampleRange,
    },
    Surface {
        gamma_t: SampleRange,
        r_over_lambda: SampleRange,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub initial: InitialState,
    pub axis: SweepAxis,
    pub gamma: f64,
    pub omega0: f64,
    pub dipole_angle: f64,
    pub engine: Engine,
    pub control: StepControl,
}

impl SweepSpec {
    pub fn new(initial: InitialState, axis: SweepAxis) -> Self {
        Self {
            initial,
            axis,
            gamma: 1.0,
            omega0: 100.0,
            dipole_angle: std::f64::consts::FRAC_PI_2,
            engine: Engine::Analytic,
            control: StepControl::default(),
        }
    }

    fn geometry(&self, r: f64) -> Result<GeometryParams> {
        GeometryParams::new(r, self.dipole_angle, self.gamma, self.omega0)
    }

    fn validate(&self) -> Result<()> {
        self.geometry(1.0)?;
        let (times, dists) = match self.axis {
            SweepAxis::Time {
                r_over_lambda,
                gamma_t,
            } => (gamma_t, SampleRange::point(r_over_lambda)),
            SweepAxis::Distance {
                gamma_t,
                r_over_lambda,
            } => (SampleRange::point(gamma_t), r_over_lambda),
            SweepAxis::Surface {
                gamma_t,
                r_over_lambda,
            } => (gamma_t, r_over_lambda),
        };
        times.validate()?;
        dists.validate()?;
        if times.lo < 0.0 {
            return Err(domain(format!(
                "gamma_t must be non-negative, got {}",
                times.lo
            )));
        }
        if dists.lo <= 0.0 {
            return Err(domain(format!(
                "r/lambda must be positive, got {}",
                dists.lo
            )));
        }
        Ok(())
    }

    /// Metrics at every γt for one separation.
    fn column(&self, r: f64, gamma_ts: &[f64]) -> Result<Vec<PointMetrics>> {
        let geom = self.geometry(r)?;
        let rates = coupling_pair(&geom)?;
        let times: Vec<f64> = gamma_ts.iter().map(|gt| gt / self.gamma).collect();
        let x0 = initial_density(self.initial);
        trajectory(
            &x0,
            &rates,
            self.gamma,
            self.omega0,
            &times,
            self.engine,
            &self.control,
        )?
        .into_iter()
        .map(PointMetrics::of)
        .collect()
    }
}

/// Column names plus rows, in sample order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl SweepTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|row| row[idx]).collect())
    }
}

pub const CURVE_COLUMNS: [&str; 4] = ["coord", "F", "C", "P"];
pub const SURFACE_COLUMNS: [&str; 3] = ["gt", "r_over_lambda", "F"];

pub fn sweep(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    match spec.axis {
        SweepAxis::Time {
            r_over_lambda,
            gamma_t,
        } => {
            let gts = gamma_t.values();
            let points = match spec.engine {
                // One integrator run covers every sample.
                Engine::Integrator => spec.column(r_over_lambda, &gts)?,
                Engine::Analytic => gts
                    .par_iter()
                    .map(|&gt| spec.column(r_over_lambda, &[gt]).map(|mut v| v.remove(0)))
                    .collect::<Result<Vec<_>>>()?,
            };
            Ok(curve(&gts, &points))
        }
        SweepAxis::Distance {
            gamma_t,
            r_over_lambda,
        } => {
            let rs = r_over_lambda.values();
            let points = rs
                .par_iter()
                .map(|&r| spec.column(r, &[gamma_t]).map(|mut v| v.remove(0)))
                .collect::<Result<Vec<_>>>()?;
            Ok(curve(&rs, &points))
        }
        SweepAxis::Surface {
            gamma_t,
            r_over_lambda,
        } => {
            let gts = gamma_t.values();
            let rs = r_over_lambda.values();
            let columns = rs
                .par_iter()
                .map(|&r| spec.column(r, &gts))
                .collect::<Result<Vec<_>>>()?;
            let mut rows = Vec::with_capacity(gts.len() * rs.len());
            for (i, &gt) in gts.iter().enumerate() {
                for (j, &r) in rs.iter().enumerate() {
                    rows.push(vec![gt, r, columns[j][i].fidelity]);
                }
            }
            Ok(SweepTable {
                columns: SURFACE_COLUMNS.to_vec(),
                rows,
            })
        }
    }
}

fn curve(coords: &[f64], points: &[PointMetrics]) -> SweepTable {
    let rows = coords
        .iter()
        .zip(points)
        .map(|(&x, m)| vec![x, m.fidelity, m.concurrence, m.purity])
        .collect();
    SweepTable {
        columns: CURVE_COLUMNS.to_vec(),
        rows,
    }
}
