//! Body dimensions across the posture range, anchors marked.

use adjustbot::geometry::{PostureAngle, RobotModel};

fn main() {
    let model = RobotModel::default();
    println!(
        "{:>6} {:>8} {:>8} {:>8} {:>8} {:>8}",
        "theta", "d", "H", "h", "spacing", "a_max"
    );
    for theta in PostureAngle::sweep(-60.0, 40.0, 10.0).unwrap() {
        let d = model.posture_dimensions(theta);
        let estimated = model.interpolated_fields(theta).len();
        println!(
            "{:>6} {:>8.2} {:>8.2} {:>8.2} {:>8.2} {:>8.2}{}",
            d.theta_deg,
            d.width_d_mm,
            d.height_h_mm,
            d.clearance_h_mm,
            d.leg_spacing_mm,
            d.alpha_max_deg,
            if estimated == 0 {
                ""
            } else {
                "  (interpolated)"
            }
        );
    }
}
