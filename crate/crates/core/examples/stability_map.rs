//! Stability margin over posture angle × gait step, as CSV and SVG.
//!
//! Usage: cargo run --example stability_map [OUT_DIR]

use std::path::PathBuf;

use adjustbot::geometry::{PostureAngle, RobotModel};
use adjustbot::stability::stability_map;

fn main() {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    let model = RobotModel::default();
    let thetas = PostureAngle::sweep(-60.0, 40.0, 5.0).unwrap();
    let map = stability_map(&thetas, 40.0, &model).unwrap();

    print!("{:>6}", "theta");
    for s in &map.step_axis {
        print!("{s:>7}");
    }
    println!();
    for (i, t) in map.theta_axis.iter().enumerate() {
        print!("{t:>6}");
        for m in &map.margins[i] {
            print!("{m:>7.1}");
        }
        println!();
    }
    println!("unstable steps: {:?}", map.unstable_steps());

    std::fs::write(out.join("stability_map.csv"), map.to_csv()).unwrap();
    std::fs::write(out.join("stability_map.svg"), map.to_svg()).unwrap();
}
