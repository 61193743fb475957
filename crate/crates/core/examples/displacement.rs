//! Idealised advance per cycle from body undulation.

use adjustbot::geometry::{PostureAngle, RobotModel};
use adjustbot::scenario::ideal_displacement;

fn main() {
    let model = RobotModel::default();
    for theta in [-60.0, -20.0, 0.0, 20.0, 40.0] {
        let t = PostureAngle::new(theta).unwrap();
        let row: Vec<String> = [20.0, 40.0, 60.0]
            .iter()
            .map(|&a| match ideal_displacement(t, a, &model) {
                Ok(d) => format!("{d:>7.1}"),
                Err(_) => format!("{:>7}", "-"),
            })
            .collect();
        println!("theta {theta:>4}: {}  (alpha 20/40/60)", row.join(""));
    }
}
