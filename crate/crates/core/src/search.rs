//! Searches over the fractional powers `(α, β)`.
//!
//! Every candidate pair gets its coefficients from [`identify_fixed_powers`]
//! and is ranked by the squared distance between its simulated step response
//! and a reference record. [`algorithm1`] scans a uniform grid of cell
//! midpoints; [`algorithm2`] keeps a buffer of the best cells after each
//! sub-run and re-grids only those.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gl::NeumaierSum;
use crate::grid::Signal;
use crate::identify::identify_fixed_powers;
use crate::sim::{step_response, FractionalModel};

/// Admissible `(α, β)` rectangle. `alpha_min > beta_max` keeps `α > β` for
/// every pair in it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerRange {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub beta_min: f64,
    pub beta_max: f64,
}

impl PowerRange {
    pub fn new(alpha_min: f64, alpha_max: f64, beta_min: f64, beta_max: f64) -> Result<Self> {
        let bounds = [alpha_min, alpha_max, beta_min, beta_max];
        if bounds.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSearch("range bounds must be finite".into()));
        }
        if !(alpha_min < alpha_max) {
            return Err(Error::InvalidSearch(format!(
                "alpha_min = {alpha_min} must be below alpha_max = {alpha_max}"
            )));
        }
        if !(beta_min < beta_max) {
            return Err(Error::InvalidSearch(format!(
                "beta_min = {beta_min} must be below beta_max = {beta_max}"
            )));
        }
        if !(beta_min > 0.0) {
            return Err(Error::InvalidSearch(format!("beta_min = {beta_min} must be positive")));
        }
        if !(alpha_min > beta_max) {
            return Err(Error::InvalidSearch(format!(
                "alpha_min = {alpha_min} must exceed beta_max = {beta_max}"
            )));
        }
        Ok(Self {
            alpha_min,
            alpha_max,
            beta_min,
            beta_max,
        })
    }

    /// `α ∈ [2.0, 2.4]`, `β ∈ [0.7, 1.1]`.
    pub fn standard() -> Self {
        Self {
            alpha_min: 2.0,
            alpha_max: 2.4,
            beta_min: 0.7,
            beta_max: 1.1,
        }
    }

    pub fn cell(&self) -> Cell {
        Cell {
            alpha_lo: self.alpha_min,
            alpha_hi: self.alpha_max,
            beta_lo: self.beta_min,
            beta_hi: self.beta_max,
        }
    }
}

/// Rectangle of the power plane a nominal pair stands for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub alpha_lo: f64,
    pub alpha_hi: f64,
    pub beta_lo: f64,
    pub beta_hi: f64,
}

impl Cell {
    /// Splits into `m × n` equal sub-cells, α-major, each paired with its
    /// midpoint `(α, β)`.
    pub fn subdivide(&self, m: usize, n: usize) -> Vec<(f64, f64, Cell)> {
        let alphas = grid_nominals(self.alpha_lo, self.alpha_hi, m);
        let betas = grid_nominals(self.beta_lo, self.beta_hi, n);
        let a_edges = edges(self.alpha_lo, self.alpha_hi, m);
        let b_edges = edges(self.beta_lo, self.beta_hi, n);
        let mut out = Vec::with_capacity(m * n);
        for (i, &alpha) in alphas.iter().enumerate() {
            for (j, &beta) in betas.iter().enumerate() {
                let cell = Cell {
                    alpha_lo: a_edges[i],
                    alpha_hi: a_edges[i + 1],
                    beta_lo: b_edges[j],
                    beta_hi: b_edges[j + 1],
                };
                out.push((alpha, beta, cell));
            }
        }
        out
    }

    fn key(&self) -> [u64; 4] {
        [
            self.alpha_lo.to_bits(),
            self.alpha_hi.to_bits(),
            self.beta_lo.to_bits(),
            self.beta_hi.to_bits(),
        ]
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}-{}, {}-{})",
            self.alpha_lo, self.alpha_hi, self.beta_lo, self.beta_hi
        )
    }
}

fn edges(lo: f64, hi: f64, m: usize) -> Vec<f64> {
    let width = hi - lo;
    (0..=m)
        .map(|i| if i == m { hi } else { lo + i as f64 * width / m as f64 })
        .collect()
}

/// Midpoints of `m` equal subdivisions of `[lo, hi]`:
/// `lo + (2i - 1)(hi - lo)/(2m)` for `i = 1..=m`.
pub fn grid_nominals(lo: f64, hi: f64, m: usize) -> Vec<f64> {
    let width = hi - lo;
    (1..=m)
        .map(|i| lo + (2 * i - 1) as f64 * width / (2 * m) as f64)
        .collect()
}

/// One evaluated pair. A failed solve or a diverging simulation is kept with
/// infinite fitness and no coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankedCandidate {
    pub alpha: f64,
    pub beta: f64,
    pub coefficients: Option<[f64; 3]>,
    pub fitness: f64,
    pub cell: Cell,
}

impl RankedCandidate {
    pub fn model(&self) -> Option<FractionalModel> {
        self.coefficients.map(|[a1, a2, a3]| FractionalModel {
            a1,
            a2,
            a3,
            alpha: self.alpha,
            beta: self.beta,
        })
    }

    pub fn is_feasible(&self) -> bool {
        self.coefficients.is_some() && self.fitness.is_finite()
    }
}

/// Whether candidate evaluations within a stage are spread across the rayon
/// pool. Results are identical either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// Sum of squared differences between the step response of `candidate` and
/// `reference`, over every sample.
pub fn fitness(candidate: &FractionalModel, reference: &Signal) -> Result<f64> {
    let simulated = step_response(candidate, *reference.grid())?;
    Ok(squared_error(simulated.values(), reference.values()))
}

pub(crate) fn squared_error(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .collect::<NeumaierSum>()
        .value()
}

/// The data a search works from: the record the equations are built on and
/// the reference candidates are scored against.
#[derive(Debug, Clone)]
pub struct SearchProblem {
    record: Signal,
    reference: Signal,
}

impl SearchProblem {
    pub fn new(record: Signal, reference: Signal) -> Result<Self> {
        if record.grid() != reference.grid() {
            return Err(Error::GridMismatch);
        }
        Ok(Self { record, reference })
    }

    /// Identify from and score against the same record.
    pub fn from_record(record: Signal) -> Self {
        Self {
            reference: record.clone(),
            record,
        }
    }

    pub fn record(&self) -> &Signal {
        &self.record
    }

    pub fn reference(&self) -> &Signal {
        &self.reference
    }

    pub fn evaluate(&self, alpha: f64, beta: f64, cell: Cell) -> RankedCandidate {
        let mut candidate = RankedCandidate {
            alpha,
            beta,
            coefficients: None,
            fitness: f64::INFINITY,
            cell,
        };
        if let Ok(id) = identify_fixed_powers(&self.record, alpha, beta) {
            candidate.coefficients = Some(id.model.coefficients());
            if let Ok(f) = fitness(&id.model, &self.reference) {
                if !f.is_nan() {
                    candidate.fitness = f;
                }
            }
        }
        candidate
    }

    fn evaluate_points(&self, points: &[(f64, f64, Cell)], exec: Execution) -> Vec<RankedCandidate> {
        match exec {
            Execution::Sequential => points
                .iter()
                .map(|&(a, b, cell)| self.evaluate(a, b, cell))
                .collect(),
            Execution::Parallel => points
                .par_iter()
                .map(|&(a, b, cell)| self.evaluate(a, b, cell))
                .collect(),
        }
    }
}

/// Ascending fitness, ties broken by `(α, β)`.
pub fn rank(candidates: &mut [RankedCandidate]) {
    candidates.sort_by(|x, y| {
        x.fitness
            .total_cmp(&y.fitness)
            .then(x.alpha.total_cmp(&y.alpha))
            .then(x.beta.total_cmp(&y.beta))
    });
}

/// Every evaluated candidate of a uniform-grid search, best first.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchRun {
    pub candidates: Vec<RankedCandidate>,
}

impl SearchRun {
    pub fn best(&self) -> &RankedCandidate {
        &self.candidates[0]
    }

    pub fn evaluations(&self) -> usize {
        self.candidates.len()
    }
}

/// Uniform `m × n` grid of cell midpoints over `range`.
pub fn algorithm1(
    range: &PowerRange,
    m: usize,
    n: usize,
    problem: &SearchProblem,
    exec: Execution,
) -> Result<SearchRun> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidSearch("grid subdivisions must be at least 1".into()));
    }
    let points = range.cell().subdivide(m, n);
    let mut candidates = problem.evaluate_points(&points, exec);
    rank(&mut candidates);
    Ok(SearchRun { candidates })
}

/// Subdivisions and buffer size of one sub-run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stage {
    pub alpha_divisions: usize,
    pub beta_divisions: usize,
    pub buffer: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefinementSchedule {
    stages: Vec<Stage>,
    stop_below: Option<f64>,
}

impl RefinementSchedule {
    pub fn new(stages: Vec<Stage>) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::InvalidSearch("schedule has no stages".into()));
        }
        let mut regions = 1usize;
        for (k, s) in stages.iter().enumerate() {
            if s.alpha_divisions == 0 || s.beta_divisions == 0 || s.buffer == 0 {
                return Err(Error::InvalidSearch(format!(
                    "stage {} has a zero subdivision or buffer",
                    k + 1
                )));
            }
            let produced = regions * s.alpha_divisions * s.beta_divisions;
            if s.buffer > produced {
                return Err(Error::InvalidSearch(format!(
                    "stage {} keeps {} models but produces only {produced}",
                    k + 1,
                    s.buffer
                )));
            }
            regions = s.buffer;
        }
        Ok(Self {
            stages,
            stop_below: None,
        })
    }

    /// `(4,4,4); (5,5,3); (5,5,3)`.
    pub fn standard() -> Self {
        "4,4,4;5,5,3;5,5,3".parse().expect("valid schedule")
    }

    /// Stop once a stage's best fitness is at or below `threshold`.
    pub fn with_stop_threshold(mut self, threshold: f64) -> Self {
        self.stop_below = Some(threshold);
        self
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn stop_threshold(&self) -> Option<f64> {
        self.stop_below
    }

    /// Model count when every buffered cell is distinct.
    pub fn nominal_evaluations(&self) -> usize {
        let mut regions = 1;
        let mut total = 0;
        for s in &self.stages {
            total += regions * s.alpha_divisions * s.beta_divisions;
            regions = s.buffer;
        }
        total
    }
}

impl FromStr for RefinementSchedule {
    type Err = Error;

    /// Semicolon-separated `m,n,p` triples.
    fn from_str(s: &str) -> Result<Self> {
        let mut stages = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let fields: Vec<&str> = part.split(',').map(str::trim).collect();
            let parsed: std::result::Result<Vec<usize>, _> =
                fields.iter().map(|f| f.parse::<usize>()).collect();
            match parsed.as_deref() {
                Ok(&[m, n, p]) => stages.push(Stage {
                    alpha_divisions: m,
                    beta_divisions: n,
                    buffer: p,
                }),
                _ => {
                    return Err(Error::InvalidSearch(format!(
                        "stage `{part}` is not an m,n,p triple of positive integers"
                    )))
                }
            }
        }
        Self::new(stages)
    }
}

impl fmt::Display for RefinementSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .stages
            .iter()
            .map(|s| format!("{},{},{}", s.alpha_divisions, s.beta_divisions, s.buffer))
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// Outcome of one sub-run.
#[derive(Debug, Clone, PartialEq)]
pub struct StageReport {
    /// Cells searched in this sub-run, after merging duplicates.
    pub regions: Vec<Cell>,
    /// Cells handed over by the previous buffer, before merging.
    pub requested_regions: usize,
    /// `requested_regions × m × n`.
    pub nominal_models: usize,
    /// Every evaluated candidate, best first.
    pub evaluated: Vec<RankedCandidate>,
    /// The best `p` candidates kept for the next sub-run.
    pub buffer: Vec<RankedCandidate>,
}

impl StageReport {
    pub fn best(&self) -> &RankedCandidate {
        &self.evaluated[0]
    }

    pub fn evaluations(&self) -> usize {
        self.evaluated.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefinementRun {
    pub stages: Vec<StageReport>,
}

impl RefinementRun {
    /// Best model of the last completed sub-run.
    pub fn best(&self) -> &RankedCandidate {
        self.stages.last().expect("at least one stage").best()
    }

    pub fn evaluations(&self) -> usize {
        self.stages.iter().map(StageReport::evaluations).sum()
    }

    pub fn nominal_models(&self) -> usize {
        self.stages.iter().map(|s| s.nominal_models).sum()
    }
}

/// Buffered multi-level refinement. With `early_abandon`, each region is
/// walked by [`early_abandon_sweep`] instead of exhaustively.
pub fn algorithm2(
    range: &PowerRange,
    schedule: &RefinementSchedule,
    problem: &SearchProblem,
    early_abandon: bool,
    exec: Execution,
) -> Result<RefinementRun> {
    let mut reports: Vec<StageReport> = Vec::with_capacity(schedule.stages().len());
    let mut requested = vec![range.cell()];
    for stage in schedule.stages() {
        let requested_regions = requested.len();
        let regions = merge_cells(&requested);
        let (m, n) = (stage.alpha_divisions, stage.beta_divisions);

        let mut evaluated = if early_abandon {
            let sweeps: Vec<SweepOutcome> = regions
                .iter()
                .map(|region| early_abandon_sweep(region, m, n, problem, exec))
                .collect();
            sweeps.into_iter().flat_map(|s| s.evaluated).collect()
        } else {
            let mut seen = HashSet::new();
            let points: Vec<(f64, f64, Cell)> = regions
                .iter()
                .flat_map(|r| r.subdivide(m, n))
                .filter(|(a, b, _)| seen.insert((a.to_bits(), b.to_bits())))
                .collect();
            problem.evaluate_points(&points, exec)
        };
        rank(&mut evaluated);
        let keep = stage.buffer.min(evaluated.len());
        let buffer = evaluated[..keep].to_vec();
        requested = buffer.iter().map(|c| c.cell).collect();
        reports.push(StageReport {
            regions,
            requested_regions,
            nominal_models: requested_regions * m * n,
            evaluated,
            buffer,
        });

        let best = reports.last().expect("just pushed").best().fitness;
        if schedule.stop_threshold().is_some_and(|t| best <= t) {
            break;
        }
    }
    Ok(RefinementRun { stages: reports })
}

fn merge_cells(cells: &[Cell]) -> Vec<Cell> {
    let mut seen = HashSet::new();
    cells.iter().copied().filter(|c| seen.insert(c.key())).collect()
}

/// Walks one row of a sweep: the first two entries are always evaluated,
/// after which the row stops at the first entry whose fitness is strictly
/// worse than its predecessor's.
pub fn sweep_row<T>(len: usize, mut eval: impl FnMut(usize) -> T, fitness: impl Fn(&T) -> f64) -> Vec<T> {
    let mut row: Vec<T> = Vec::with_capacity(len);
    for j in 0..len {
        let item = eval(j);
        let worse = j >= 2 && fitness(&item) > fitness(&row[j - 1]);
        row.push(item);
        if worse {
            break;
        }
    }
    row
}

/// Result of sweeping one region.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    /// Evaluated candidates in sweep order (α-major, β ascending).
    pub evaluated: Vec<RankedCandidate>,
    pub best: RankedCandidate,
    /// Size of the exhaustive `m × n` sweep.
    pub exhaustive_models: usize,
}

impl SweepOutcome {
    pub fn evaluations(&self) -> usize {
        self.evaluated.len()
    }
}

/// For each fixed α nominal of `region`, sweeps β upward and abandons the
/// rest of the row once the fitness turns worse (see [`sweep_row`]). Rows
/// run in parallel under [`Execution::Parallel`].
pub fn early_abandon_sweep(
    region: &Cell,
    m: usize,
    n: usize,
    problem: &SearchProblem,
    exec: Execution,
) -> SweepOutcome {
    let points = region.subdivide(m, n);
    let row = |i: usize| {
        sweep_row(
            n,
            |j| {
                let (a, b, cell) = points[i * n + j];
                problem.evaluate(a, b, cell)
            },
            |c: &RankedCandidate| c.fitness,
        )
    };
    let rows: Vec<Vec<RankedCandidate>> = match exec {
        Execution::Sequential => (0..m).map(row).collect(),
        Execution::Parallel => (0..m).into_par_iter().map(row).collect(),
    };
    let evaluated: Vec<RankedCandidate> = rows.into_iter().flatten().collect();
    let mut ranked = evaluated.clone();
    rank(&mut ranked);
    SweepOutcome {
        best: ranked[0],
        evaluated,
        exhaustive_models: m * n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::SamplingGrid;
    use crate::sim::step_response;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn nominal_examples() {
        let alphas = grid_nominals(2.0, 2.4, 20);
        assert_eq!(alphas.len(), 20);
        assert!((alphas[0] - 2.01).abs() < 1e-12);
        assert!((alphas[1] - 2.03).abs() < 1e-12);
        assert!((alphas[19] - 2.39).abs() < 1e-12);
        assert!(close(&grid_nominals(0.7, 1.1, 4), &[0.75, 0.85, 0.95, 1.05]));
        assert!(close(&grid_nominals(2.0, 2.4, 4), &[2.05, 2.15, 2.25, 2.35]));
        assert!(close(&grid_nominals(1.0, 3.0, 1), &[2.0]));
        assert!(close(&grid_nominals(2.2, 2.3, 5), &[2.21, 2.23, 2.25, 2.27, 2.29]));
    }

    #[test]
    fn subdivision_cells_tile_the_parent() {
        let parent = PowerRange::standard().cell();
        let cells = parent.subdivide(4, 4);
        assert_eq!(cells.len(), 16);
        let (a, b, cell) = cells[2 * 4 + 2];
        assert!((a - 2.25).abs() < 1e-12 && (b - 0.95).abs() < 1e-12);
        assert!((cell.alpha_lo - 2.2).abs() < 1e-12 && (cell.alpha_hi - 2.3).abs() < 1e-12);
        assert!((cell.beta_lo - 0.9).abs() < 1e-12 && (cell.beta_hi - 1.0).abs() < 1e-12);
        assert_eq!(cells[15].2.alpha_hi, 2.4);
        assert_eq!(cells[15].2.beta_hi, 1.1);
        for (a, b, c) in cells {
            assert!(c.alpha_lo < a && a < c.alpha_hi);
            assert!(c.beta_lo < b && b < c.beta_hi);
        }
    }

    #[test]
    fn odd_subdivision_keeps_the_parent_midpoint() {
        let cell = Cell {
            alpha_lo: 2.2,
            alpha_hi: 2.3,
            beta_lo: 0.9,
            beta_hi: 1.0,
        };
        let sub = cell.subdivide(5, 5);
        let (a, b, _) = sub[2 * 5 + 2];
        assert!((a - 2.25).abs() < 1e-12 && (b - 0.95).abs() < 1e-12);
    }

    #[test]
    fn power_range_validation() {
        assert!(PowerRange::new(2.0, 2.4, 0.7, 1.1).is_ok());
        assert!(PowerRange::new(2.4, 2.0, 0.7, 1.1).is_err());
        assert!(PowerRange::new(2.0, 2.4, 1.1, 0.7).is_err());
        assert!(PowerRange::new(2.0, 2.4, 0.0, 1.1).is_err());
        assert!(PowerRange::new(1.0, 2.4, 0.7, 1.1).is_err());
    }

    #[test]
    fn schedule_parsing_and_validation() {
        let s = RefinementSchedule::standard();
        assert_eq!(s.stages().len(), 3);
        assert_eq!(s.nominal_evaluations(), 16 + 100 + 75);
        assert_eq!(s.to_string(), "4,4,4;5,5,3;5,5,3");
        assert!("".parse::<RefinementSchedule>().is_err());
        assert!("4,4".parse::<RefinementSchedule>().is_err());
        assert!("4,4,0".parse::<RefinementSchedule>().is_err());
        assert!("2,2,5".parse::<RefinementSchedule>().is_err());
        assert!("4,x,4".parse::<RefinementSchedule>().is_err());
        assert!(" 3,3,2 ; 3,3,1 ".parse::<RefinementSchedule>().is_ok());
    }

    #[test]
    fn constant_offset_fitness() {
        let a = vec![0.5; 101];
        let b = vec![0.5 + 0.01; 101];
        assert!((squared_error(&a, &b) - 101.0 * 1e-4).abs() < 1e-15);
    }

    #[test]
    fn generating_model_has_zero_fitness() {
        let grid = SamplingGrid::new(0.01, 10.0).unwrap();
        let truth = FractionalModel::example();
        let c = step_response(&truth, grid).unwrap();
        assert_eq!(fitness(&truth, &c).unwrap(), 0.0);
    }

    #[test]
    fn failed_candidates_rank_last() {
        let grid = SamplingGrid::new(0.1, 2.0).unwrap();
        let problem = SearchProblem::from_record(Signal::zeros(grid));
        let c = problem.evaluate(2.2, 0.9, PowerRange::standard().cell());
        assert!(c.coefficients.is_none());
        assert_eq!(c.fitness, f64::INFINITY);
        assert!(!c.is_feasible());
        let mut v = vec![
            c,
            RankedCandidate {
                fitness: 1.0,
                ..c
            },
        ];
        rank(&mut v);
        assert_eq!(v[0].fitness, 1.0);
    }

    #[test]
    fn ranking_breaks_ties_by_powers() {
        let cell = PowerRange::standard().cell();
        let mk = |alpha, beta| RankedCandidate {
            alpha,
            beta,
            coefficients: None,
            fitness: 2.0,
            cell,
        };
        let mut v = vec![mk(2.3, 0.8), mk(2.1, 0.9), mk(2.1, 0.8)];
        rank(&mut v);
        let order: Vec<(f64, f64)> = v.iter().map(|c| (c.alpha, c.beta)).collect();
        assert_eq!(order, vec![(2.1, 0.8), (2.1, 0.9), (2.3, 0.8)]);
    }

    #[test]
    fn merge_cells_drops_repeats_in_order() {
        let a = PowerRange::standard().cell();
        let b = Cell { alpha_lo: 2.2, ..a };
        assert_eq!(merge_cells(&[a, b, a, b, a]), vec![a, b]);
    }

    // Fitness columns of the three observed β-profiles at fixed α.
    const DECREASING: [f64; 5] = [57.3075, 37.1401, 21.6413, 10.6469, 3.9810];
    const INCREASING: [f64; 5] = [4.0644, 5.5932, 9.6201, 16.0432, 24.7542];
    const VALLEY: [f64; 5] = [11.9583, 6.3391, 5.3533, 8.7405, 16.2263];

    fn walk(profile: &[f64]) -> Vec<f64> {
        sweep_row(profile.len(), |j| profile[j], |f| *f)
    }

    #[test]
    fn sweep_row_on_observed_profiles() {
        assert_eq!(walk(&INCREASING), INCREASING[..3].to_vec());
        assert_eq!(walk(&VALLEY), VALLEY[..4].to_vec());
        let all = walk(&DECREASING);
        assert_eq!(all, DECREASING.to_vec());
        assert_eq!(all.iter().cloned().fold(f64::MAX, f64::min), 3.9810);
    }

    #[test]
    fn sweep_row_short_rows() {
        assert_eq!(walk(&[]), Vec::<f64>::new());
        assert_eq!(walk(&[3.0]), vec![3.0]);
        assert_eq!(walk(&[3.0, 4.0]), vec![3.0, 4.0]);
    }
}
