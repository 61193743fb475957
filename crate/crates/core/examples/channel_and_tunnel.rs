//! Narrow channel and low tunnel: the posture trades width for height.

use adjustbot::geometry::{PostureAngle, RobotModel};
use adjustbot::scenario::{channel_feasible, tunnel_feasible};

fn main() {
    let model = RobotModel::default();
    for theta in [-60.0, 0.0, 40.0] {
        let t = PostureAngle::new(theta).unwrap();
        let c = channel_feasible(t, 195.0, &model);
        let u = tunnel_feasible(t, 200.0, &model);
        println!(
            "theta {theta:>4}: channel 195 mm {:?} (slack {:+.1}), tunnel 200 mm {:?} (slack {:+.1})",
            c.verdict, c.slack, u.verdict, u.slack
        );
    }
}
