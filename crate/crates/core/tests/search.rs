use fracsysid::search::{Cell, Stage};
use fracsysid::*;
use proptest::prelude::*;

fn fast_grid() -> SamplingGrid {
    SamplingGrid::new(0.01, 10.0).unwrap()
}

fn noisy_problem(grid: SamplingGrid, seed: u64) -> SearchProblem {
    let clean = step_response(&FractionalModel::example(), grid).unwrap();
    let noise = uniform_noise(NoiseSpec::new(0.05, seed).unwrap(), grid);
    SearchProblem::new(corrupt(&clean, &noise).unwrap(), clean).unwrap()
}

#[test]
fn algorithm1_is_deterministic_across_execution_modes() {
    let problem = noisy_problem(fast_grid(), 11);
    let range = PowerRange::standard();
    let seq = algorithm1(&range, 7, 6, &problem, Execution::Sequential).unwrap();
    let par = algorithm1(&range, 7, 6, &problem, Execution::Parallel).unwrap();
    assert_eq!(seq, par);
    assert_eq!(seq.evaluations(), 42);
    for pair in seq.candidates.windows(2) {
        assert!(pair[0].fitness <= pair[1].fitness);
    }
}

#[test]
fn single_cell_grid_uses_range_midpoints() {
    let problem = noisy_problem(fast_grid(), 1);
    let run = algorithm1(&PowerRange::standard(), 1, 1, &problem, Execution::Sequential).unwrap();
    assert_eq!(run.evaluations(), 1);
    assert!((run.best().alpha - 2.2).abs() < 1e-12);
    assert!((run.best().beta - 0.9).abs() < 1e-12);
    assert_eq!(run.best().cell, PowerRange::standard().cell());
}

#[test]
fn zero_subdivisions_are_rejected() {
    let problem = noisy_problem(fast_grid(), 1);
    assert!(algorithm1(&PowerRange::standard(), 0, 3, &problem, Execution::Sequential).is_err());
}

#[test]
fn one_stage_schedule_equals_algorithm1() {
    let problem = noisy_problem(fast_grid(), 2);
    let range = PowerRange::standard();
    let schedule: RefinementSchedule = "5,4,3".parse().unwrap();
    let refined = algorithm2(&range, &schedule, &problem, false, Execution::Parallel).unwrap();
    let flat = algorithm1(&range, 5, 4, &problem, Execution::Parallel).unwrap();
    assert_eq!(refined.stages.len(), 1);
    assert_eq!(refined.stages[0].evaluated, flat.candidates);
    assert_eq!(refined.best(), flat.best());
    assert_eq!(refined.stages[0].buffer, flat.candidates[..3].to_vec());
}

#[test]
fn standard_schedule_counts_and_regions() {
    let problem = noisy_problem(fast_grid(), 3);
    let run = algorithm2(
        &PowerRange::standard(),
        &RefinementSchedule::standard(),
        &problem,
        false,
        Execution::Parallel,
    )
    .unwrap();
    let counts: Vec<usize> = run.stages.iter().map(|s| s.evaluations()).collect();
    assert_eq!(counts, vec![16, 100, 75]);
    assert_eq!(run.evaluations(), 191);
    assert_eq!(run.nominal_models(), 191);
    let buffers: Vec<usize> = run.stages.iter().map(|s| s.buffer.len()).collect();
    assert_eq!(buffers, vec![4, 3, 3]);

    // Stage-2 regions are exactly the stage-1 buffer cells, width 0.1.
    for (region, kept) in run.stages[1].regions.iter().zip(&run.stages[0].buffer) {
        assert_eq!(*region, kept.cell);
        assert!((region.alpha_hi - region.alpha_lo - 0.1).abs() < 1e-12);
        assert!((region.beta_hi - region.beta_lo - 0.1).abs() < 1e-12);
    }
    for pair in run.stages.windows(2) {
        assert!(pair[1].best().fitness <= pair[0].best().fitness);
    }
}

#[test]
fn stage_evaluations_are_unique_models() {
    let problem = noisy_problem(fast_grid(), 4);
    let run = algorithm2(
        &PowerRange::standard(),
        &"2,2,2;3,3,2".parse().unwrap(),
        &problem,
        false,
        Execution::Sequential,
    )
    .unwrap();
    for stage in &run.stages {
        assert!(stage.regions.len() <= stage.requested_regions);
        let mut seen = std::collections::HashSet::new();
        for c in &stage.evaluated {
            assert!(seen.insert((c.alpha.to_bits(), c.beta.to_bits())));
        }
    }
}

#[test]
fn stop_threshold_ends_the_run_early() {
    let problem = noisy_problem(fast_grid(), 5);
    let schedule = RefinementSchedule::standard().with_stop_threshold(1e6);
    let run = algorithm2(&PowerRange::standard(), &schedule, &problem, false, Execution::Parallel).unwrap();
    assert_eq!(run.stages.len(), 1);
    let strict = RefinementSchedule::standard().with_stop_threshold(0.0);
    let run = algorithm2(&PowerRange::standard(), &strict, &problem, false, Execution::Parallel).unwrap();
    assert_eq!(run.stages.len(), 3);
}

#[test]
fn wrong_powers_fit_worse() {
    let grid = fast_grid();
    let clean = step_response(&FractionalModel::example(), grid).unwrap();
    let right = identify_fixed_powers(&clean, 2.23, 0.88).unwrap();
    let wrong = identify_fixed_powers(&clean, 2.05, 0.75).unwrap();
    let f_right = fitness(&right.model, &clean).unwrap();
    let f_wrong = fitness(&wrong.model, &clean).unwrap();
    assert!(f_right < 1e-12);
    assert!(f_wrong > 1.0, "{f_wrong}");
}

#[test]
fn early_abandon_matches_exhaustive_on_noiseless_regions() {
    let grid = fast_grid();
    let clean = step_response(&FractionalModel::example(), grid).unwrap();
    let problem = SearchProblem::from_record(clean);
    let run = algorithm2(
        &PowerRange::standard(),
        &RefinementSchedule::standard(),
        &problem,
        false,
        Execution::Parallel,
    )
    .unwrap();
    for (stage, spec) in run.stages.iter().zip(RefinementSchedule::standard().stages()) {
        for region in &stage.regions {
            let sweep = early_abandon_sweep(
                region,
                spec.alpha_divisions,
                spec.beta_divisions,
                &problem,
                Execution::Sequential,
            );
            let in_region: Vec<_> = stage
                .evaluated
                .iter()
                .filter(|c| c.alpha > region.alpha_lo && c.alpha < region.alpha_hi)
                .filter(|c| c.beta > region.beta_lo && c.beta < region.beta_hi)
                .collect();
            assert_eq!(in_region.len(), sweep.exhaustive_models);
            assert_eq!(&sweep.best, in_region[0]);
            assert!(sweep.evaluations() < sweep.exhaustive_models);
        }
    }
}

#[test]
fn early_abandon_run_is_deterministic() {
    let problem = noisy_problem(fast_grid(), 6);
    let range = PowerRange::standard();
    let schedule = RefinementSchedule::standard();
    let a = algorithm2(&range, &schedule, &problem, true, Execution::Sequential).unwrap();
    let b = algorithm2(&range, &schedule, &problem, true, Execution::Parallel).unwrap();
    assert_eq!(a, b);
    assert!(a.evaluations() < a.nominal_models());
}

#[test]
fn sweep_walks_alpha_major_with_beta_ascending() {
    let problem = noisy_problem(fast_grid(), 7);
    let region = Cell {
        alpha_lo: 2.2,
        alpha_hi: 2.3,
        beta_lo: 0.8,
        beta_hi: 0.9,
    };
    let sweep = early_abandon_sweep(&region, 5, 5, &problem, Execution::Parallel);
    for pair in sweep.evaluated.windows(2) {
        let same_row = pair[0].alpha == pair[1].alpha;
        assert!(pair[0].alpha <= pair[1].alpha);
        if same_row {
            assert!(pair[0].beta < pair[1].beta);
        }
    }
    let best = sweep
        .evaluated
        .iter()
        .map(|c| c.fitness)
        .fold(f64::INFINITY, f64::min);
    assert_eq!(sweep.best.fitness, best);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    // Odd subdivisions keep each parent nominal in its refined cell, so a
    // stage can never lose the previous best.
    #[test]
    fn refinement_never_worsens_with_odd_subdivisions(
        seed in 0u64..1000,
        first in 2usize..5,
        m in prop::sample::select(vec![1usize, 3, 5]),
        n in prop::sample::select(vec![1usize, 3, 5]),
        keep in 1usize..3,
    ) {
        let grid = SamplingGrid::new(0.05, 10.0).unwrap();
        let problem = noisy_problem(grid, seed);
        let schedule = RefinementSchedule::new(vec![
            Stage { alpha_divisions: first, beta_divisions: first, buffer: keep },
            Stage { alpha_divisions: m, beta_divisions: n, buffer: keep },
            Stage { alpha_divisions: m, beta_divisions: n, buffer: 1 },
        ]).unwrap();
        let run = algorithm2(&PowerRange::standard(), &schedule, &problem, false, Execution::Parallel).unwrap();
        for pair in run.stages.windows(2) {
            prop_assert!(pair[1].best().fitness <= pair[0].best().fitness);
        }
    }
}
