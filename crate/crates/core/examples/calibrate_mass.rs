//! Scans the front-body mass fraction for the value whose stability map
//! shows exactly the expected unstable steps.

use adjustbot::geometry::{PostureAngle, RobotModel};
use adjustbot::stability::calibrate_front_mass_fraction;

fn main() {
    let thetas = PostureAngle::sweep(-60.0, 40.0, 5.0).unwrap();
    let cal = calibrate_front_mass_fraction(&RobotModel::default(), 40.0, &thetas).unwrap();
    for (m, v) in &cal.scan {
        println!("{m:.3} {v:>3} {}", "#".repeat(*v));
    }
    println!(
        "chosen {:.3} ({} violations), zero-violation band [{:.3}, {:.3}]",
        cal.front_mass_fraction, cal.min_violations, cal.band.0, cal.band.1
    );
}
