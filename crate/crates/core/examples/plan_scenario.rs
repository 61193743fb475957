//! Feasible posture intervals and a recommended posture per segment.
//!
//! Usage: cargo run --example plan_scenario [SCENARIO_JSON]

use adjustbot::geometry::RobotModel;
use adjustbot::scenario::{plan_postures, RampOutcomeTable, Scenario};

fn main() {
    let scenario = match std::env::args().nth(1) {
        Some(path) => Scenario::from_json(&std::fs::read_to_string(path).unwrap()).unwrap(),
        None => Scenario::from_json(include_str!("../data/scenarios/mixed.json")).unwrap(),
    };
    let plan = plan_postures(
        &scenario,
        &RobotModel::default(),
        &RampOutcomeTable::embedded(),
    )
    .unwrap();
    for s in &plan.segments {
        let intervals: Vec<String> = s
            .feasible
            .iter()
            .map(|i| format!("[{}, {}]", i.lo_deg, i.hi_deg))
            .collect();
        println!(
            "{:<9} {:?} recommended {:?} feasible {}",
            s.segment.kind(),
            s.verdict,
            s.recommended_theta_deg,
            intervals.join(" ")
        );
    }
}
