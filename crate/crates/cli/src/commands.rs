use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use fracsysid::search::{rank, StageReport};
use fracsysid::{
    algorithm1, algorithm2, attenuation_table, build_equations, corrupt, early_abandon_sweep,
    fitness, solve_coefficients, step_response, uniform_noise, Execution, FractionalModel,
    SamplingGrid, SearchProblem, Signal,
};

use crate::config::{Algorithm, ExperimentConfig, FitnessReference};
use crate::csvio::{self, Provenance};
use crate::CliError;

/// Measured data for one experiment.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub grid: SamplingGrid,
    /// Noiseless response, when the data is synthetic.
    pub clean: Option<Signal>,
    /// The record identification works from.
    pub record: Signal,
}

impl Dataset {
    /// Simulates the configured model and corrupts it once with the
    /// configured noise.
    pub fn synthetic(cfg: &ExperimentConfig) -> Result<Self, CliError> {
        let grid = cfg.grid()?;
        let clean = step_response(&cfg.true_model()?, grid)?;
        let noise = uniform_noise(cfg.noise()?, grid);
        let record = corrupt(&clean, &noise)?;
        Ok(Self {
            grid,
            clean: Some(clean),
            record,
        })
    }

    pub fn load(cfg: &ExperimentConfig, path: &Path) -> Result<Self, CliError> {
        let grid = cfg.grid()?;
        Ok(Self {
            grid,
            clean: None,
            record: csvio::read_signal(path, grid)?,
        })
    }

    pub fn prepare(cfg: &ExperimentConfig, record: Option<&Path>) -> Result<Self, CliError> {
        match record {
            Some(path) => Self::load(cfg, path),
            None => Self::synthetic(cfg),
        }
    }

    pub fn search_problem(&self, reference: FitnessReference) -> Result<SearchProblem, CliError> {
        let reference = match (reference, &self.clean) {
            (FitnessReference::Clean, Some(clean)) => clean.clone(),
            (FitnessReference::Corrupted, _) | (FitnessReference::Clean, None) => self.record.clone(),
        };
        Ok(SearchProblem::new(self.record.clone(), reference)?)
    }
}

fn provenance(cfg: &ExperimentConfig, kind: &str) -> Result<Provenance, CliError> {
    let m = cfg.model;
    Ok(Provenance::new(kind, &cfg.grid()?, cfg.noise_seed, cfg.noise_amplitude).with(
        "model",
        format!("{},{},{},{},{}", m.a1, m.a2, m.a3, m.alpha, m.beta),
    ))
}

fn out_dir(cfg: &ExperimentConfig) -> Result<PathBuf, CliError> {
    fs::create_dir_all(&cfg.out_dir)?;
    Ok(cfg.out_dir.clone())
}

fn execution(cfg: &ExperimentConfig) -> Execution {
    if cfg.parallel {
        Execution::Parallel
    } else {
        Execution::Sequential
    }
}

fn percent_error(estimate: f64, truth: f64) -> f64 {
    100.0 * (estimate - truth).abs() / truth.abs()
}

/// Writes the clean response and, with nonzero noise, the corrupted one.
pub fn simulate(cfg: &ExperimentConfig, out: &mut dyn Write) -> Result<Vec<PathBuf>, CliError> {
    cfg.validate()?;
    let data = Dataset::synthetic(cfg)?;
    let clean = data.clean.as_ref().expect("synthetic data has a clean response");
    let dir = out_dir(cfg)?;
    let mut written = Vec::new();

    let path = dir.join("response_clean.csv");
    csvio::write_signal(&path, &provenance(cfg, "response")?.with("variant", "clean"), clean)?;
    written.push(path);
    if cfg.noise_amplitude > 0.0 {
        let path = dir.join("response_corrupted.csv");
        let p = provenance(cfg, "response")?.with("variant", "corrupted");
        csvio::write_signal(&path, &p, &data.record)?;
        written.push(path);
    }

    let gain = cfg.model.dc_gain();
    let end = clean.last();
    writeln!(out, "samples        {}", data.grid.sample_count())?;
    writeln!(out, "c(L)           {end}")?;
    writeln!(out, "DC gain 1/a3   {gain}")?;
    writeln!(out, "deviation      {:.4}%", percent_error(end, gain))?;
    for p in &written {
        writeln!(out, "wrote {}", p.display())?;
    }
    Ok(written)
}

/// Builds and solves the equations at fixed powers and reports the errors
/// against the configured model.
pub fn identify(
    cfg: &ExperimentConfig,
    alpha: Option<f64>,
    beta: Option<f64>,
    record: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    cfg.validate()?;
    let alpha = alpha.unwrap_or(cfg.model.alpha);
    let beta = beta.unwrap_or(cfg.model.beta);
    if !(alpha.is_finite() && beta.is_finite() && beta > 0.0 && alpha > beta) {
        return Err(CliError::Config(format!(
            "powers must satisfy alpha > beta > 0, got alpha = {alpha}, beta = {beta}"
        )));
    }
    let data = Dataset::prepare(cfg, record)?;
    let system = build_equations(&data.record, alpha, beta)?;

    writeln!(out, "alpha = {alpha}, beta = {beta}, shift n = {}", system.shift)?;
    for (i, (row, rhs)) in system.matrix.iter().zip(&system.rhs).enumerate() {
        let orders = system.row_orders(i);
        writeln!(
            out,
            "[{:>12.4} {:>12.4} {:>12.4}] = {:>12.4}   orders ({:.2}, {:.2}, {:.0})",
            row[0], row[1], row[2], rhs, orders[0], orders[1], orders[2]
        )?;
    }

    let result = solve_coefficients(&system)?;
    let est = result.model;
    let truth = cfg.model;
    writeln!(out, "a1 = {:.6}   error {:.4}%", est.a1, percent_error(est.a1, truth.a1))?;
    writeln!(out, "a2 = {:.6}   error {:.4}%", est.a2, percent_error(est.a2, truth.a2))?;
    writeln!(out, "a3 = {:.6}   error {:.4}%", est.a3, percent_error(est.a3, truth.a3))?;
    writeln!(out, "residual {:e}", result.residual)?;
    if let Ok(f) = fitness(&est, data.clean.as_ref().unwrap_or(&data.record)) {
        writeln!(out, "squared error vs reference {f:.6}")?;
    }
    Ok(())
}

/// Runs the configured search and writes ranked tables.
pub fn search(
    cfg: &ExperimentConfig,
    record: Option<&Path>,
    out: &mut dyn Write,
) -> Result<Vec<PathBuf>, CliError> {
    cfg.validate()?;
    let range = cfg.power_range()?;
    let data = Dataset::prepare(cfg, record)?;
    let problem = data.search_problem(cfg.fitness_reference)?;
    let exec = execution(cfg);
    let dir = out_dir(cfg)?;
    let base = provenance(cfg, "ranked")?
        .with("range", format!(
            "{},{},{},{}",
            range.alpha_min, range.alpha_max, range.beta_min, range.beta_max
        ))
        .with("reference", cfg.get("search.fitness_reference"))
        .with("early_abandon", cfg.early_abandon);
    let mut written = Vec::new();

    match cfg.algorithm {
        Algorithm::Uniform => {
            let (candidates, nominal) = if cfg.early_abandon {
                let sweep = early_abandon_sweep(&range.cell(), cfg.m, cfg.n, &problem, exec);
                let mut evaluated = sweep.evaluated;
                rank(&mut evaluated);
                (evaluated, sweep.exhaustive_models)
            } else {
                (algorithm1(&range, cfg.m, cfg.n, &problem, exec)?.candidates, cfg.m * cfg.n)
            };
            let prov = base.with("algorithm", 1).with("m", cfg.m).with("n", cfg.n);
            let all = dir.join("alg1_ranked.csv");
            csvio::write_ranked(&all, &prov.clone().with("table", "all"), &candidates)?;
            let top = dir.join("alg1_top10.csv");
            let head = &candidates[..candidates.len().min(10)];
            csvio::write_ranked(&top, &prov.with("table", "top10"), head)?;
            written.extend([all, top]);

            writeln!(out, "algorithm 1: {} models evaluated ({nominal} on the grid)", candidates.len())?;
            report_savings(out, cfg.early_abandon, nominal, candidates.len())?;
            print_table(out, head)?;
        }
        Algorithm::Refinement => {
            let schedule = cfg.refinement_schedule()?;
            let run = algorithm2(&range, &schedule, &problem, cfg.early_abandon, exec)?;
            let prov = base
                .with("algorithm", 2)
                .with("schedule", schedule.to_string());
            for (k, stage) in run.stages.iter().enumerate() {
                let stage_prov = prov.clone().with("stage", k + 1);
                let all = dir.join(format!("alg2_stage{}_ranked.csv", k + 1));
                csvio::write_ranked(&all, &stage_prov.clone().with("table", "all"), &stage.evaluated)?;
                let buf = dir.join(format!("alg2_stage{}_buffer.csv", k + 1));
                csvio::write_ranked(&buf, &stage_prov.with("table", "buffer"), &stage.buffer)?;
                written.extend([all, buf]);
            }
            let stages = dir.join("alg2_stages.csv");
            write_stage_summary(&stages, &prov.with("table", "stages"), &run.stages)?;
            written.push(stages);

            for (k, stage) in run.stages.iter().enumerate() {
                writeln!(
                    out,
                    "sub-run {}: {} regions ({} requested), {} models evaluated ({} nominal)",
                    k + 1,
                    stage.regions.len(),
                    stage.requested_regions,
                    stage.evaluations(),
                    stage.nominal_models
                )?;
                print_table(out, &stage.buffer)?;
            }
            writeln!(
                out,
                "algorithm 2: {} unique models evaluated ({} nominal)",
                run.evaluations(),
                run.nominal_models()
            )?;
            report_savings(out, cfg.early_abandon, run.nominal_models(), run.evaluations())?;
        }
    }
    for p in &written {
        writeln!(out, "wrote {}", p.display())?;
    }
    Ok(written)
}

fn report_savings(out: &mut dyn Write, early: bool, nominal: usize, evaluated: usize) -> Result<(), CliError> {
    if early {
        writeln!(
            out,
            "early abandon: {evaluated}/{nominal} models, savings factor {:.3}",
            nominal as f64 / evaluated as f64
        )?;
    }
    Ok(())
}

fn print_table(out: &mut dyn Write, rows: &[fracsysid::RankedCandidate]) -> Result<(), CliError> {
    writeln!(out, "  {:>3} {:>7} {:>7} {:>8} {:>8} {:>8} {:>10}", "Sl", "alpha", "beta", "a1", "a2", "a3", "F")?;
    for (i, c) in rows.iter().enumerate() {
        let [a1, a2, a3] = c.coefficients.unwrap_or([f64::NAN; 3]);
        writeln!(
            out,
            "  {:>3} {:>7.4} {:>7.4} {:>8.4} {:>8.4} {:>8.4} {:>10.4}",
            i + 1,
            c.alpha,
            c.beta,
            a1,
            a2,
            a3,
            c.fitness
        )?;
    }
    Ok(())
}

fn write_stage_summary(path: &Path, prov: &Provenance, stages: &[StageReport]) -> Result<(), CliError> {
    let columns = [
        "stage",
        "requested_regions",
        "regions",
        "nominal_models",
        "evaluated",
        "best_alpha",
        "best_beta",
        "best_fitness",
    ];
    let rows = stages.iter().enumerate().map(|(k, s)| {
        let best = s.best();
        vec![
            (k + 1).to_string(),
            s.requested_regions.to_string(),
            s.regions.len().to_string(),
            s.nominal_models.to_string(),
            s.evaluations().to_string(),
            best.alpha.to_string(),
            best.beta.to_string(),
            best.fitness.to_string(),
        ]
    });
    csvio::write_rows(path, prov, &columns, rows)
}

/// Differintegrals at `t = L` of independent noise records, one row per
/// record; record `i` is drawn with seed `noise.seed + i`.
pub fn noise_table(cfg: &ExperimentConfig, out: &mut dyn Write) -> Result<PathBuf, CliError> {
    cfg.validate()?;
    let grid = cfg.grid()?;
    let seeds: Vec<u64> = (0..cfg.noise_records as u64)
        .map(|i| cfg.noise_seed.wrapping_add(i))
        .collect();
    let table = attenuation_table(cfg.noise_amplitude, &seeds, &cfg.noise_orders, grid)?;

    let mut columns = vec!["record".to_string(), "seed".to_string()];
    columns.extend(cfg.noise_orders.iter().map(|o| format!("D{o}")));
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    let rows = table.iter().zip(&seeds).enumerate().map(|(i, (row, seed))| {
        let mut cells = vec![(i + 1).to_string(), seed.to_string()];
        cells.extend(row.iter().map(f64::to_string));
        cells
    });
    let path = out_dir(cfg)?.join("noise_table.csv");
    let prov = provenance(cfg, "noise_table")?.with("records", cfg.noise_records);
    csvio::write_rows(&path, &prov, &column_refs, rows)?;

    write!(out, "{:>4}", "e(t)")?;
    for o in &cfg.noise_orders {
        write!(out, " {:>11}", format!("a={o}"))?;
    }
    writeln!(out)?;
    for (i, row) in table.iter().enumerate() {
        write!(out, "{:>4}", i + 1)?;
        for v in row {
            write!(out, " {v:>11.4}")?;
        }
        writeln!(out)?;
    }
    writeln!(out, "wrote {}", path.display())?;
    Ok(path)
}

/// The model a config describes, for callers that only need the truth.
pub fn configured_model(cfg: &ExperimentConfig) -> Result<FractionalModel, CliError> {
    cfg.true_model()
}
