//! Kinematic gait formula at the three reference postures: initial foot
//! positions relative to the CoG, normalised by stride.

use adjustbot::gait::{kinematic_formula, mcghee_formula, GaitMatrix};
use adjustbot::geometry::{GaitStep, PostureAngle, RobotModel};

fn main() {
    let model = RobotModel::default();
    let formula = mcghee_formula(&GaitMatrix::lateral_sequence()).unwrap();
    let stride = 130.0;
    for theta in [40.0, 0.0, -60.0] {
        let theta = PostureAngle::new(theta).unwrap();
        let pose = model
            .planar_pose(theta, 0.0, GaitStep::new(1).unwrap())
            .unwrap();
        let k = kinematic_formula(&formula, pose.feet, pose.cog, stride).unwrap();
        let t: Vec<String> = k.to_tuple().iter().map(|v| format!("{v:.3}")).collect();
        println!("k({theta}) = ({})", t.join(", "));
    }
}
