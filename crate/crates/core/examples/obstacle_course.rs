//! Straddling three obstacles: one fixed posture fails, switching postures
//! between obstacles succeeds.

use adjustbot::geometry::{PostureAngle, RobotModel};
use adjustbot::scenario::{RampOutcomeTable, Scenario, TerrainChecker};

fn main() {
    let model = RobotModel::default();
    let ramps = RampOutcomeTable::embedded();
    let checker = TerrainChecker::new(&model, &ramps);
    let course = Scenario::obstacle_course();

    let fixed = checker.evaluate(&course, PostureAngle::new(40.0).unwrap(), 0.0);
    println!(
        "fixed theta 40: {:?}",
        fixed.iter().map(|r| r.verdict).collect::<Vec<_>>()
    );

    for (seg, theta) in course.segments.iter().zip([20.0, -40.0, 0.0]) {
        let r = checker.check(seg, PostureAngle::new(theta).unwrap(), 0.0);
        println!(
            "{seg:?} at {theta}: {:?} on {} ({:+.1} mm)",
            r.verdict, r.limiting_constraint, r.slack
        );
    }
    let r = checker.check(&course.segments[2], PostureAngle::new(-40.0).unwrap(), 0.0);
    println!(
        "third obstacle at -40: {:?} on {}",
        r.verdict, r.limiting_constraint
    );
}
