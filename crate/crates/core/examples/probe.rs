// Scratch probe for solver behavior; removed before release.
use bidflow_core::diagnostics::{feasibility_search, SearchRanges};
use bidflow_core::equilibrium::{
    best_reply_iteration_with, extremal_equilibria, flow_dynamics_with, FlowConfig,
    IterationConfig, IterationStatus, SolveConfig,
};
use bidflow_core::model::{validate_params, FlagId, Interval, MarketParams, StrategyProfile};
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    // Reference instance
    let params = MarketParams::symmetric_uniform(
        Interval::new(1.0, 1.05).unwrap(),
        Interval::new(0.9, 1.6).unwrap(),
        1.0,
        0.1,
        51,
    )
    .unwrap();
    let report = validate_params(&params);
    for f in &report.flags {
        println!("flag {:?}: pass={} margin={:.6}", f.id, f.pass, f.margin);
    }
    let cfg = SolveConfig::for_params(&params);
    let t1 = Instant::now();
    let result = extremal_equilibria(&params, &cfg).unwrap();
    println!(
        "solve: verdict={:?} dist={:.3e} res_lo={:?} res_up={:?} statuses={:?}/{:?} interior={} in {:?}",
        result.verdict,
        result.sup_distance,
        result.residual_lower,
        result.residual_upper,
        result.lower_status,
        result.upper_status,
        result.strictly_interior,
        t1.elapsed()
    );
    println!(
        "lower bids p0: first={:.6} last={:.6}; benchmark band=[{:.6},{:.6}]",
        result.lower.bids(0)[0],
        result.lower.bids(0)[50],
        1.0 / 0.8,
        1.05 / 0.8
    );

    // Flow trace detail
    let t2 = Instant::now();
    let flow = flow_dynamics_with(
        &StrategyProfile::identity(&params),
        &params,
        &FlowConfig::for_params(&params),
    )
    .unwrap();
    println!(
        "flow from below: status={:?} steps={} min_inc={:.2e} max_inc={:.2e} final_norm={:.2e} in {:?}",
        flow.status,
        flow.steps,
        flow.min_step_increment,
        flow.max_step_increment,
        flow.final_drift_norm(),
        t2.elapsed()
    );

    // Grid refinement movement (criterion 8 magnitude)
    let fine = params.with_grid_nodes(101).unwrap();
    let result_fine = extremal_equilibria(&fine, &SolveConfig::for_params(&fine)).unwrap();
    let mut worst = 0.0f64;
    for i in 0..2 {
        for (j, &c) in params.player(i).type_grid().nodes().iter().enumerate() {
            let a = result.lower.bids(i)[j];
            let b = result_fine.lower.eval(&fine, i, c);
            worst = worst.max((a - b).abs());
        }
    }
    println!("grid 51->101 lower move: {worst:.3e}");

    // Step halving
    let mut cfg_half = SolveConfig::for_params(&params);
    cfg_half.flow.step *= 0.5;
    let result_half = extremal_equilibria(&params, &cfg_half).unwrap();
    println!(
        "step halving lower move: {:.3e}",
        result.lower.sup_distance(&result_half.lower)
    );

    // --- cycle hunt: BR iteration failures on swept instances ---
    let ranges = SearchRanges::broad();
    let hits = feasibility_search(&ranges, 10_000, &[FlagId::DemandLossProduct], 15, 1).unwrap();
    println!("sweep: {} hits in {:?}", hits.len(), t0.elapsed());
    let mut cycles = 0;
    let mut tried = 0;
    for hit in hits.iter().rev().take(400) {
        // rev: start from the *least* feasible instances
        tried += 1;
        let initial = StrategyProfile::identity(&hit.params);
        let iter_cfg = IterationConfig {
            max_iter: 40,
            tol: 1e-9,
            ..IterationConfig::default()
        };
        match best_reply_iteration_with(&initial, &hit.params, &iter_cfg) {
            Ok(trace) => {
                if trace.status == IterationStatus::CycleDetected {
                    cycles += 1;
                    if cycles <= 5 {
                        let p = &hit.params;
                        let g = p.player(0).type_grid();
                        let b = p.player(0).bid_interval();
                        println!(
                            "CYCLE period={:?} idx={} d={:.4} r={:.4} types=[{:.4},{:.4}] bids=[{:.4},{:.4}] satisfied={}",
                            trace.cycle_period,
                            hit.sample_index,
                            p.demand(),
                            p.loss_coeff(),
                            g.lo(),
                            g.hi(),
                            b.lo(),
                            b.hi(),
                            hit.satisfied
                        );
                    }
                }
            }
            Err(e) => println!("iteration error: {e}"),
        }
        if tried % 100 == 0 {
            println!("tried {tried} cycles so far {cycles} t={:?}", t0.elapsed());
        }
    }
    println!("cycle hunt: {cycles}/{tried} cycles, total {:?}", t0.elapsed());
}
