//! Critical times, the γ₁₂ extremum and the nonclassical region in r.

use std::f64::consts::{FRAC_PI_2, LN_2};
use std::fmt;

use super::pipeline::fidelity_with_rates;
use super::roots::{bisect, logspace, scan_max, scan_min, Root};
use crate::couplings::{collective_damping, coupling_pair, CouplingRates, GeometryParams};
use crate::dynamics::{initial_density, InitialState};
use crate::error::{domain, Error, Result};
use crate::teleport::CLASSICAL_LIMIT;

/// Default end of the critical-time search window, in units of 1/γ.
pub const CRITICAL_WINDOW: f64 = 200.0;

/// Relative tolerance of the critical-time bisection.
pub const CRITICAL_RTOL: f64 = 1e-9;

/// First time at which the max average fidelity reaches 2/3, searched over
/// `[0, CRITICAL_WINDOW/γ]`.
pub fn critical_time(initial: InitialState, geom: &GeometryParams) -> Result<f64> {
    critical_time_within(initial, geom, CRITICAL_WINDOW / geom.gamma)
}

pub fn critical_time_within(
    initial: InitialState,
    geom: &GeometryParams,
    t_max: f64,
) -> Result<f64> {
    geom.validate()?;
    let rates = coupling_pair(geom)?;
    let gamma = geom.gamma;
    let excess = |t: f64| {
        fidelity_with_rates(initial, &rates, gamma, geom.omega0, gamma * t)
            .map(|f| f - CLASSICAL_LIMIT)
    };
    let start = excess(0.0)?;
    if start <= 0.0 {
        return Err(domain(format!(
            "initial fidelity {} does not exceed 2/3",
            start + CLASSICAL_LIMIT
        )));
    }
    // States with a |ee⟩-|gg⟩ coherence oscillate at 2ω₀; the step puts a
    // sample on every zero of cos 2ω₀t.
    let mut step = 0.01 / gamma;
    if initial_density(initial).c14.norm() > 0.0 {
        step = step.min(std::f64::consts::PI / (16.0 * geom.omega0));
    }
    let n = (t_max / step).ceil() as usize;
    let mut prev = 0.0;
    for i in 1..=n {
        let t = (i as f64 * step).min(t_max);
        let v = excess(t)?;
        if v <= 0.0 {
            if v == 0.0 {
                return Ok(t);
            }
            let root = bisect(
                |s| excess(s).unwrap_or(f64::NAN),
                prev,
                t,
                0.1 * CRITICAL_RTOL * t,
            )?;
            return Ok(root.value);
        }
        prev = t;
    }
    Err(Error::NoCrossing { lo: 0.0, hi: t_max })
}

/// Minimizer of γ₁₂ over r/λ ∈ [0.2, 2]: `(r*, γ₁₂(r*)/γ)`.
pub fn optimal_separation(dipole_angle: f64) -> Result<(f64, f64)> {
    let base = GeometryParams::new(1.0, dipole_angle, 1.0, 100.0)?;
    let g12 = |r: f64| {
        base.with_r(r)
            .and_then(|g| collective_damping(&g))
            .unwrap_or(f64::NAN)
    };
    let grid: Vec<f64> = (0..=1800).map(|i| 0.2 + i as f64 * 0.001).collect();
    let (r, v) = scan_min(g12, &grid, 1e-12);
    Ok((r, v))
}

/// Settings for [`nonclassical_region`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionScan {
    pub r_min: f64,
    pub r_max: f64,
    pub points_per_decade: usize,
    pub gamma: f64,
    pub omega0: f64,
    pub dipole_angle: f64,
}

impl Default for RegionScan {
    fn default() -> Self {
        Self {
            r_min: 1e-3,
            r_max: 10.0,
            points_per_decade: 2000,
            gamma: 1.0,
            omega0: 100.0,
            dipole_angle: FRAC_PI_2,
        }
    }
}

/// Separations where the fidelity beats 2/3 at a fixed time.
#[derive(Debug, Clone, PartialEq)]
pub struct NonclassicalRegion {
    /// Closed intervals in r/λ, ascending. A region reaching the scan start
    /// begins at 0; zero-width entries mark tangencies.
    pub intervals: Vec<(f64, f64)>,
    /// True when F > 2/3 also holds in the γ₁₂, Ω₁₂ → 0 limit and the last
    /// interval reaches r_max.
    pub unbounded_tail: bool,
}

impl NonclassicalRegion {
    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }
}

pub fn nonclassical_region(
    initial: InitialState,
    gamma_t: f64,
    scan: &RegionScan,
) -> Result<NonclassicalRegion> {
    if !(gamma_t > 0.0) || !gamma_t.is_finite() {
        return Err(domain(format!("gamma_t must be positive, got {gamma_t}")));
    }
    if !(scan.r_min > 0.0 && scan.r_max > scan.r_min && scan.points_per_decade > 0) {
        return Err(domain(
            "region scan needs 0 < r_min < r_max and a positive density",
        ));
    }
    let base = GeometryParams::new(scan.r_min, scan.dipole_angle, scan.gamma, scan.omega0)?;
    let excess = |r: f64| -> Result<f64> {
        let rates = coupling_pair(&base.with_r(r)?)?;
        Ok(
            fidelity_with_rates(initial, &rates, scan.gamma, scan.omega0, gamma_t)?
                - CLASSICAL_LIMIT,
        )
    };
    let edge = |a: f64, b: f64| -> Result<f64> {
        Ok(bisect(|r| excess(r).unwrap_or(f64::NAN), a, b, 1e-12 * b)?.value)
    };
    let grid = logspace(scan.r_min, scan.r_max, scan.points_per_decade);
    let values = grid
        .iter()
        .map(|&r| excess(r))
        .collect::<Result<Vec<_>>>()?;

    let mut intervals = Vec::new();
    let mut open: Option<f64> = None;
    for i in 0..grid.len() {
        let inside = values[i] > 0.0;
        match (open, inside) {
            (None, true) => {
                open = Some(if i == 0 {
                    0.0
                } else {
                    edge(grid[i - 1], grid[i])?
                })
            }
            (Some(lo), false) => {
                intervals.push((lo, edge(grid[i - 1], grid[i])?));
                open = None;
            }
            (None, false) if values[i] == 0.0 => {
                let left_out = i == 0 || values[i - 1] < 0.0;
                let right_out = i + 1 == grid.len() || values[i + 1] < 0.0;
                if left_out && right_out {
                    intervals.push((grid[i], grid[i]));
                }
            }
            _ => {}
        }
    }
    let mut unbounded_tail = false;
    if let Some(lo) = open {
        intervals.push((lo, scan.r_max));
        let far = fidelity_with_rates(
            initial,
            &CouplingRates::independent(),
            scan.gamma,
            scan.omega0,
            gamma_t,
        )?;
        unbounded_tail = far > CLASSICAL_LIMIT;
    }
    Ok(NonclassicalRegion {
        intervals,
        unbounded_tail,
    })
}

/// One root of the threshold report.
#[derive(Debug, Clone, PartialEq)]
pub struct Threshold {
    pub name: &'static str,
    pub definition: &'static str,
    /// γt at the root.
    pub value: f64,
    /// Initial bracket in γt.
    pub search: (f64, f64),
    /// Final bracket in γt.
    pub bracket: (f64, f64),
    pub tolerance: f64,
    pub iterations: usize,
    /// |F − 2/3| at the root, at the extremal separation.
    pub residual: f64,
    /// Separation r/λ attaining the inner extremum at the root.
    pub r_extremum: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdReport {
    pub thresholds: Vec<Threshold>,
    /// Where the scans in r run.
    pub r_range: (f64, f64),
    pub points_per_decade: usize,
}

impl ThresholdReport {
    pub fn get(&self, name: &str) -> Option<&Threshold> {
        self.thresholds.iter().find(|t| t.name == name)
    }
}

impl fmt::Display for ThresholdReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.thresholds {
            writeln!(f, "{} = {:.6}", t.name, t.value)?;
            writeln!(f, "  definition: {}", t.definition)?;
            writeln!(
                f,
                "  search [{}, {}], bracket [{:.12}, {:.12}], tol {:e}, iterations {}, residual {:e}, r/lambda at extremum {:.6}",
                t.search.0, t.search.1, t.bracket.0, t.bracket.1, t.tolerance, t.iterations, t.residual, t.r_extremum
            )?;
        }
        Ok(())
    }
}

/// Bisection tolerance on γt for the thresholds.
pub const THRESHOLD_TOL: f64 = 1e-10;

#[derive(Clone, Copy)]
enum Extremum {
    Min,
    Max,
}

struct LobeScan {
    initial: InitialState,
    grid: Vec<f64>,
    rates: Vec<CouplingRates>,
    base: GeometryParams,
    kind: Extremum,
}

impl LobeScan {
    fn new(
        initial: InitialState,
        lo: f64,
        hi: f64,
        per_decade: usize,
        kind: Extremum,
    ) -> Result<Self> {
        let base = GeometryParams::perpendicular(lo)?;
        let grid = logspace(lo, hi, per_decade);
        let rates = grid
            .iter()
            .map(|&r| coupling_pair(&base.with_r(r)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            initial,
            grid,
            rates,
            base,
            kind,
        })
    }

    /// Extremal F − 2/3 over the grid at `gamma_t`, refined in r.
    fn excess(&self, gamma_t: f64) -> (f64, f64) {
        let at = |r: f64| {
            let rates = self.base.with_r(r).and_then(|g| coupling_pair(&g));
            rates
                .and_then(|rates| {
                    fidelity_with_rates(self.initial, &rates, 1.0, self.base.omega0, gamma_t)
                })
                .unwrap_or(f64::NAN)
        };
        let sampled: Vec<f64> = self
            .rates
            .iter()
            .map(|rates| {
                fidelity_with_rates(self.initial, rates, 1.0, self.base.omega0, gamma_t)
                    .unwrap_or(f64::NAN)
            })
            .collect();
        let lookup = |r: f64| match self.grid.binary_search_by(|g| g.total_cmp(&r)) {
            Ok(i) => sampled[i],
            Err(_) => at(r),
        };
        let (r, f) = match self.kind {
            Extremum::Min => scan_min(lookup, &self.grid, 1e-12),
            Extremum::Max => scan_max(lookup, &self.grid, 1e-12),
        };
        (r, f - CLASSICAL_LIMIT)
    }

    fn threshold(
        &self,
        name: &'static str,
        definition: &'static str,
        search: (f64, f64),
    ) -> Result<Threshold> {
        let Root {
            value,
            bracket,
            iterations,
            ..
        } = bisect(|gt| self.excess(gt).1, search.0, search.1, THRESHOLD_TOL)?;
        let (r_extremum, residual) = self.excess(value);
        Ok(Threshold {
            name,
            definition,
            value,
            search,
            bracket,
            tolerance: THRESHOLD_TOL,
            iterations,
            residual: residual.abs(),
            r_extremum,
        })
    }
}

pub const TAIL_DEFINITION: &str =
    "smallest gt at which min over r in [r*, r_max] of F(bell1) reaches 2/3, \
     r* the minimizer of gamma12; beyond it a finite-r lobe cuts the region off from r -> infinity";
pub const EXTINCTION_DEFINITION: &str = "smallest gt at which max over r of F(bell1) reaches 2/3";
pub const ALL_DISTANCE_DEFINITION: &str = "smallest gt at which min over r of F(bell2) reaches 2/3";

/// The three decay-time thresholds, by bisection in γt of an extremum over r.
pub fn decay_time_thresholds() -> Result<ThresholdReport> {
    let (r_min, r_max, per_decade) = (1e-3, 10.0, 2000);
    let (r_star, _) = optimal_separation(FRAC_PI_2)?;
    let tail = LobeScan::new(
        InitialState::Bell1,
        r_star,
        r_max,
        per_decade,
        Extremum::Min,
    )?;
    let extinction = LobeScan::new(InitialState::Bell1, r_min, r_max, per_decade, Extremum::Max)?;
    let all_distance = LobeScan::new(InitialState::Bell2, r_min, r_max, per_decade, Extremum::Min)?;
    let thresholds = vec![
        tail.threshold("bell1_infinite_tail", TAIL_DEFINITION, (0.1, LN_2 - 1e-6))?,
        extinction.threshold("bell1_extinction", EXTINCTION_DEFINITION, (0.1, 3.0))?,
        all_distance.threshold("bell2_all_distances", ALL_DISTANCE_DEFINITION, (0.05, 3.0))?,
    ];
    Ok(ThresholdReport {
        thresholds,
        r_range: (r_min, r_max),
        points_per_decade: per_decade,
    })
}
