//! Recorded ramp outcomes by posture and body-angle amplitude.

use adjustbot::geometry::{PostureAngle, RobotModel};
use adjustbot::scenario::{ramp_outcome, RampDirection, RampOutcomeTable, Verdict};

fn main() {
    let model = RobotModel::default();
    let table = RampOutcomeTable::embedded();
    let alphas = [40.0, 45.0, 50.0, 55.0, 60.0, 65.0, 70.0, 75.0];
    for direction in [RampDirection::Uphill, RampDirection::Downhill] {
        for slope in [5.0, 10.0] {
            println!("{direction} {slope} deg   alpha: {alphas:?}");
            for theta in [40.0, 20.0, 0.0, -20.0, -40.0, -60.0] {
                let t = PostureAngle::new(theta).unwrap();
                let row: String = alphas
                    .iter()
                    .map(|&a| {
                        let r = ramp_outcome(t, a, slope, direction, &table, &model);
                        match r.verdict {
                            Verdict::Pass => " S",
                            Verdict::Unattainable => " -",
                            Verdict::Fail if r.flags.is_empty() => " F",
                            Verdict::Fail => " ?",
                        }
                    })
                    .collect();
                println!("  theta {theta:>4}: {row}");
            }
        }
    }
    println!("S success, F fail, ? no data, - body angle unattainable");
}
