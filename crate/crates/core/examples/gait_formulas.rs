//! McGhee and Hildebrand formulas of the lateral-sequence creeping gait,
//! plus a trot and a pace for contrast.

use adjustbot::gait::{hildebrand_formula, mcghee_formula, GaitFormula, GaitMatrix, Leg};
use adjustbot::Fraction;

fn show(name: &str, g: &GaitMatrix) {
    let f = mcghee_formula(g).unwrap();
    let duty: Vec<String> = g
        .duty_factors_exact()
        .iter()
        .map(|r| r.to_string())
        .collect();
    let phases: Vec<String> = g.phases_exact(Leg::LF).unwrap()[1..]
        .iter()
        .map(|r| r.to_string())
        .collect();
    println!(
        "{name:<18} duty [{}]  phases [{}]  hildebrand {}",
        duty.join(", "),
        phases.join(", "),
        hildebrand_formula(&f).unwrap()
    );
}

fn main() {
    show("lateral sequence", &GaitMatrix::lateral_sequence());
    show("from schedule", &GaitMatrix::from_schedule());

    // Two-beat gaits lift two legs at once, so they have no creeping gait
    // matrix; their formulas can still be written down directly.
    let half = Fraction::new(1, 2);
    let trot = GaitMatrix::new(vec![vec![1, 0, 0, 1], vec![0, 1, 1, 0]], vec![half, half]);
    println!("trot matrix: {}", trot.unwrap_err());
    for (name, t) in [
        ("trot", [0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.0]),
        ("pace", [0.5, 0.5, 0.5, 0.5, 0.5, 0.0, 0.5]),
    ] {
        let f = GaitFormula::from_tuple(t).unwrap();
        println!(
            "{name:<18} {:?}  hildebrand {}",
            f.to_tuple(),
            hildebrand_formula(&f).unwrap()
        );
    }
}
