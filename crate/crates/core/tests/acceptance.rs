//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the summary is always printed.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use adjustbot::gait::{
    hildebrand_formula, kinematic_formula, mcghee_formula, schedule, GaitFormula, GaitMatrix, Leg,
};
use adjustbot::geometry::{PostureAngle, RobotModel};
use adjustbot::point::Point2;
use adjustbot::scenario::{
    channel_feasible, ideal_displacement, plan_postures, ramp_outcome, tunnel_feasible, AlphaKey,
    Constraint, RampDirection, RampOutcome, RampOutcomeTable, Scenario, Segment, TerrainChecker,
    Verdict,
};
use adjustbot::stability::{stability_map, SupportPolygon};
use adjustbot::Fraction;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn theta(d: f64) -> PostureAngle {
    PostureAngle::new(d).unwrap()
}

fn frac(n: i64, d: i64) -> Fraction {
    Fraction::new(n, d)
}

fn median_duration(runs: usize, mut f: impl FnMut()) -> Duration {
    let mut times: Vec<Duration> = (0..runs)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed()
        })
        .collect();
    times.sort();
    times[runs / 2]
}

fn gait_formula_reproduction() -> Check {
    let g = GaitMatrix::lateral_sequence();
    ensure!(
        g.duty_factors_exact() == [frac(3, 4); 4],
        "duty factors {:?}",
        g.duty_factors_exact()
    );
    let phases = g.phases_exact(Leg::LF).map_err(|e| e.to_string())?;
    ensure!(
        phases == [frac(0, 1), frac(1, 2), frac(3, 4), frac(1, 4)],
        "phases {phases:?}"
    );
    let f = mcghee_formula(&g).map_err(|e| e.to_string())?;
    ensure!(
        f.to_tuple() == [0.75, 0.75, 0.75, 0.75, 0.5, 0.75, 0.25],
        "formula {:?}",
        f.to_tuple()
    );
    let h = hildebrand_formula(&f).map_err(|e| e.to_string())?;
    ensure!(
        (h.duty_percent, h.relative_phase_percent) == (75.0, 25.0),
        "hildebrand {h}"
    );
    let t = median_duration(101, || {
        let f = mcghee_formula(&g).unwrap();
        std::hint::black_box(hildebrand_formula(&f).unwrap());
    });
    ensure!(t < Duration::from_millis(1), "took {t:?}");
    Ok(format!("(0.75,0.75,0.75,0.75,0.5,0.75,0.25), {h}, {t:?}"))
}

fn table_anchors() -> Check {
    let m = RobotModel::default();
    let table = [
        (40.0, 180.0, 180.0, 25.0),
        (0.0, 202.0, 190.0, 65.0),
        (-60.0, 150.0, 240.0, 110.0),
    ];
    let mut worst: f64 = 0.0;
    for (t, d, h_body, h_clear) in table {
        let dims = m.posture_dimensions(theta(t));
        for (got, want) in [
            (dims.width_d_mm, d),
            (dims.height_h_mm, h_body),
            (dims.clearance_h_mm, h_clear),
        ] {
            worst = worst.max((got - want).abs());
            ensure!((got - want).abs() <= 1e-9, "theta {t}: {got} != {want}");
        }
    }
    for (got, want) in [
        (m.clearance(theta(20.0)), 40.0),
        (m.clearance(theta(-40.0)), 95.0),
        (m.leg_spacing(theta(-40.0)), 140.0),
        (m.leg_spacing(theta(0.0)), 162.0),
    ] {
        worst = worst.max((got - want).abs());
        ensure!((got - want).abs() <= 1e-9, "{got} != {want}");
    }
    Ok(format!("13 anchors, max deviation {worst:e} mm"))
}

const PUBLISHED_KINEMATIC: [(f64, [f64; 15]); 3] = [
    (
        40.0,
        [
            0.75, 0.75, 0.75, 0.75, 0.681, 0.681, -0.509, -0.509, 0.479, -0.472, 0.479, -0.472,
            0.5, 0.75, 0.25,
        ],
    ),
    (
        0.0,
        [
            0.75, 0.75, 0.75, 0.75, 0.564, 0.564, -0.421, -0.421, 0.467, -0.467, 0.467, -0.467,
            0.5, 0.75, 0.25,
        ],
    ),
    (
        -60.0,
        [
            0.75, 0.75, 0.75, 0.75, 0.509, 0.509, -0.381, -0.381, 0.289, -0.284, 0.289, -0.284,
            0.5, 0.75, 0.25,
        ],
    ),
];

fn kinematic_round_trip() -> Check {
    let mut worst: f64 = 0.0;
    for (t, k) in PUBLISHED_KINEMATIC {
        for (stride, cog) in [
            (1.0, Point2::ORIGIN),
            (137.25, Point2::new(12.5, -3.75)),
            (412.0, Point2::new(-80.0, 41.0)),
        ] {
            let f = GaitFormula::from_tuple([k[0], k[1], k[2], k[3], k[12], k[13], k[14]])
                .map_err(|e| e.to_string())?;
            let feet: [Point2; 4] =
                std::array::from_fn(|i| cog + Point2::new(k[4 + i], k[8 + i]) * stride);
            let got = kinematic_formula(&f, feet, cog, stride)
                .map_err(|e| e.to_string())?
                .to_tuple();
            for (a, b) in got.iter().zip(k) {
                worst = worst.max((a - b).abs());
            }
            ensure!(worst <= 1e-9, "k({t}) stride {stride}: {got:?}");
        }
    }
    Ok(format!(
        "k_40, k_0, k_-60 at 3 strides, max deviation {worst:e}"
    ))
}

/// Distance from `p` to segment `ab`, found by repeatedly resampling the
/// segment around its closest sample.
fn sampled_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let n = 32;
    let mut best = f64::INFINITY;
    for _ in 0..60 {
        let samples: Vec<(f64, f64)> = (0..=n)
            .map(|i| {
                let t = lo + (hi - lo) * i as f64 / n as f64;
                (t, (a + (b - a) * t - p).norm())
            })
            .collect();
        let (k, &(_, d)) = samples
            .iter()
            .enumerate()
            .min_by(|x, y| x.1 .1.total_cmp(&y.1 .1))
            .unwrap();
        best = best.min(d);
        let step = (hi - lo) / n as f64;
        let centre = samples[k].0;
        lo = (centre - step).max(0.0);
        hi = (centre + step).min(1.0);
    }
    best
}

/// Even-odd ray casting towards +x.
fn ray_cast_inside(poly: &[Point2], p: Point2) -> bool {
    let mut inside = false;
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if x > p.x {
                inside = !inside;
            }
        }
    }
    inside
}

fn half_plane_inside(poly: &[Point2], p: Point2) -> bool {
    (0..poly.len()).all(|i| {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) > 0.0
    })
}

/// Random convex polygon: 3–4 points at sorted angles on a random ellipse.
fn random_convex(rng: &mut StdRng) -> Vec<Point2> {
    loop {
        let n = rng.gen_range(3..=4);
        let mut angles: Vec<f64> = (0..n)
            .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
            .collect();
        angles.sort_by(f64::total_cmp);
        let gaps_ok = (0..n).all(|i| {
            let next = if i + 1 < n {
                angles[i + 1]
            } else {
                angles[0] + std::f64::consts::TAU
            };
            next - angles[i] > 0.3
        });
        if !gaps_ok {
            continue;
        }
        let (rx, ry) = (rng.gen_range(20.0..200.0), rng.gen_range(20.0..200.0));
        let rot = rng.gen_range(-180.0..180.0);
        let c = Point2::new(rng.gen_range(-100.0..100.0), rng.gen_range(-100.0..100.0));
        return angles
            .iter()
            .map(|a| c + Point2::new(rx * a.cos(), ry * a.sin()).rotated_deg(rot))
            .collect();
    }
}

fn margin_oracle() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    let instances = 2000;
    let mut worst: f64 = 0.0;
    let mut classified = 0;
    let mut inside_count = 0;
    for i in 0..instances {
        let verts = random_convex(&mut rng);
        let poly = SupportPolygon::from_points(&verts).map_err(|e| format!("instance {i}: {e}"))?;
        // Half the queries near the polygon, half anywhere in the field.
        let p = if rng.gen_bool(0.5) {
            let w: Vec<f64> = verts.iter().map(|_| rng.gen_range(0.0..1.0)).collect();
            let total: f64 = w.iter().sum();
            let mut q = Point2::ORIGIN;
            for (v, wi) in verts.iter().zip(&w) {
                q = q + *v * (wi / total);
            }
            q + Point2::new(rng.gen_range(-30.0..30.0), rng.gen_range(-30.0..30.0))
        } else {
            Point2::new(rng.gen_range(-300.0..300.0), rng.gen_range(-300.0..300.0))
        };
        let margin = poly.margin(p).value();

        let distance = (0..verts.len())
            .map(|k| sampled_segment_distance(p, verts[k], verts[(k + 1) % verts.len()]))
            .fold(f64::INFINITY, f64::min);
        let inside = ray_cast_inside(&verts, p);
        inside_count += usize::from(inside);
        let oracle = if inside { distance } else { -distance };
        worst = worst.max((margin - oracle).abs());
        ensure!(
            (margin - oracle).abs() < 1e-3,
            "instance {i}: margin {margin} vs oracle {oracle}"
        );

        if distance > 1e-6 {
            classified += 1;
            let hp = half_plane_inside(poly.vertices(), p);
            ensure!(
                (margin > 0.0) == hp,
                "instance {i}: margin {margin} but half-plane says {hp}"
            );
            ensure!(
                inside == hp,
                "instance {i}: ray casting and half-plane disagree"
            );
        }
    }
    ensure!(
        inside_count > instances / 10,
        "only {inside_count} interior queries"
    );
    Ok(format!("{instances} instances ({inside_count} inside), max |error| {worst:.2e} mm, {classified} classified"))
}

fn map_sign_pattern() -> Check {
    let m = RobotModel::default();
    let sample: Vec<_> = [-60.0, -30.0, 0.0, 40.0].into_iter().map(theta).collect();
    let map = stability_map(&sample, 40.0, &m).map_err(|e| e.to_string())?;
    for (i, t) in map.theta_axis.iter().enumerate() {
        let negative = map.unstable_steps_at(i);
        ensure!(
            negative == vec![7, 8, 14],
            "theta {t}: negative at {negative:?}"
        );
        let all_down = [1u8, 2, 9, 15].map(|s| map.margin(i, s));
        let floor = all_down.iter().copied().fold(f64::INFINITY, f64::min);
        for s in (1..=15u8).filter(|s| ![1, 2, 9, 15].contains(s)) {
            ensure!(
                map.margin(i, s) <= floor,
                "theta {t}: step {s} margin {} exceeds all-down {floor}",
                map.margin(i, s)
            );
        }
    }
    let full = PostureAngle::sweep(-60.0, 40.0, 5.0).unwrap();
    let t = Instant::now();
    let big = stability_map(&full, 40.0, &m).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    ensure!(
        big.margins.len() == 21 && big.margins.iter().all(|r| r.len() == 15),
        "grid shape"
    );
    ensure!(
        elapsed < Duration::from_secs(1),
        "21x15 map took {elapsed:?}"
    );
    Ok(format!(
        "negative exactly at [7, 8, 14]; all-down steps dominate; 21x15 map in {elapsed:?}"
    ))
}

fn scenario_anchors() -> Check {
    let m = RobotModel::default();
    let expect =
        |r: adjustbot::scenario::FeasibilityResult, v: Verdict, what: &str| -> Result<(), String> {
            ensure!(
                r.verdict == v,
                "{what}: {:?} (slack {})",
                r.verdict,
                r.slack
            );
            Ok(())
        };
    expect(
        channel_feasible(theta(0.0), 195.0, &m),
        Verdict::Fail,
        "channel at 0",
    )?;
    expect(
        channel_feasible(theta(-60.0), 195.0, &m),
        Verdict::Pass,
        "channel at -60",
    )?;
    expect(
        tunnel_feasible(theta(40.0), 200.0, &m),
        Verdict::Pass,
        "tunnel at 40",
    )?;
    expect(
        tunnel_feasible(theta(-60.0), 200.0, &m),
        Verdict::Fail,
        "tunnel at -60",
    )?;

    let ramps = RampOutcomeTable::embedded();
    let checker = TerrainChecker::new(&m, &ramps);
    let course = Scenario::obstacle_course();
    let fixed = checker.evaluate(&course, theta(40.0), 0.0);
    ensure!(
        fixed[0].verdict == Verdict::Fail,
        "course at fixed 40: first obstacle {:?}",
        fixed[0].verdict
    );
    let s = &course.segments;
    for (seg, t) in [(&s[0], 20.0), (&s[0], -40.0), (&s[1], -40.0), (&s[2], 0.0)] {
        let r = checker.check(seg, theta(t), 0.0);
        ensure!(r.passed(), "{seg:?} at {t}: {:?}", r.verdict);
    }
    let r = checker.check(&s[2], theta(-40.0), 0.0);
    ensure!(
        r.verdict == Verdict::Fail && r.limiting_constraint == Constraint::LegSpacing,
        "third obstacle at -40: {:?} on {}",
        r.verdict,
        r.limiting_constraint
    );
    let plan = plan_postures(&course, &m, &ramps).map_err(|e| e.to_string())?;
    ensure!(plan.all_pass(), "plan does not pass every obstacle");
    Ok("channel, tunnel and obstacle-course verdicts reproduced".into())
}

fn ramp_anchors() -> Check {
    let m = RobotModel::default();
    let t = RampOutcomeTable::embedded();
    let up = RampDirection::Uphill;
    let down = RampDirection::Downhill;
    let cases = [
        (40.0, 40.0, 5.0, up, Verdict::Pass),
        (-60.0, 70.0, 5.0, up, Verdict::Pass),
        (0.0, 60.0, 10.0, up, Verdict::Fail),
    ];
    for (th, a, slope, dir, want) in cases {
        let r = ramp_outcome(theta(th), a, slope, dir, &t, &m);
        ensure!(
            r.verdict == want,
            "({th}, {a}, {slope}, {dir}): {:?}",
            r.verdict
        );
    }
    for a in [45.0, 50.0, 55.0, 60.0, 65.0, 75.0] {
        let r = ramp_outcome(theta(-60.0), a, 5.0, up, &t, &m);
        ensure!(
            r.verdict == Verdict::Fail,
            "(-60, {a}, 5, uphill): {:?}",
            r.verdict
        );
    }
    for slope in [5.0, 10.0] {
        for dir in [up, down] {
            let r = ramp_outcome(theta(0.0), 65.0, slope, dir, &t, &m);
            ensure!(
                r.verdict == Verdict::Unattainable,
                "(0, 65, {slope}, {dir}): {:?}",
                r.verdict
            );
        }
    }
    for a in [0.0, 20.0, 40.0, 60.0, 75.0] {
        let r = ramp_outcome(theta(-60.0), a, 5.0, down, &t, &m);
        ensure!(
            r.verdict == Verdict::Fail && r.flags.is_empty(),
            "(-60, {a}, 5, downhill): {:?}",
            r.verdict
        );
        let a = a.min(m.max_body_angle(theta(-20.0)));
        let r = ramp_outcome(theta(-20.0), a, 10.0, down, &t, &m);
        ensure!(
            r.verdict == Verdict::Pass,
            "(-20, {a}, 10, downhill): {:?}",
            r.verdict
        );
    }
    // Every recorded row is reproduced by the lookup.
    for row in &t.rows {
        let th = theta(row.theta_deg);
        let alphas = match row.alpha_deg {
            AlphaKey::Deg(a) => vec![a],
            AlphaKey::All => vec![0.0, 30.0, m.max_body_angle(th)],
        };
        let want = match row.outcome {
            RampOutcome::Success => Verdict::Pass,
            RampOutcome::Fail => Verdict::Fail,
        };
        for a in alphas {
            let r = ramp_outcome(th, a, row.slope_deg, row.direction, &t, &m);
            ensure!(
                r.verdict == want,
                "row {row:?} at alpha {a}: {:?}",
                r.verdict
            );
        }
    }
    Ok(format!(
        "textual outcomes and all {} table rows reproduced",
        t.rows.len()
    ))
}

fn random_gait(rng: &mut StdRng) -> GaitMatrix {
    let mut legs = Leg::ALL.to_vec();
    for i in (1..4).rev() {
        legs.swap(i, rng.gen_range(0..=i));
    }
    let mut rows = Vec::new();
    let mut durations = Vec::new();
    for leg in legs {
        let mut row = vec![0; 4];
        row[leg.index()] = 1;
        rows.push(row);
        durations.push(frac(rng.gen_range(1..20), rng.gen_range(1..12)));
        rows.push(vec![0; 4]);
        durations.push(frac(rng.gen_range(0..6), rng.gen_range(1..12)));
    }
    GaitMatrix::new(rows, durations).unwrap()
}

fn property_suites() -> Check {
    const CASES: usize = 500;
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let m = RobotModel::default();
    let ramps = RampOutcomeTable::embedded();

    for i in 0..CASES {
        let g = random_gait(&mut rng);
        let base = mcghee_formula(&g).unwrap();
        let factor = frac(rng.gen_range(1..50), rng.gen_range(1..50));
        ensure!(
            mcghee_formula(&g.scaled(factor)).unwrap() == base,
            "case {i}: scale by {factor}"
        );
        let k = rng.gen_range(0..g.rows().len());
        // Rotating rows changes the time origin, which relative phases ignore.
        ensure!(
            mcghee_formula(&g.rotated(k)).unwrap() == base,
            "case {i}: rotate by {k}"
        );
    }

    for i in 0..CASES {
        let t = rng.gen_range(0.0..1.0);
        let a = rng.gen_range(0.0..75.0);
        let phase = schedule(t, a);
        ensure!(
            phase.legs_in_air.len() <= 1,
            "case {i}: {} legs up at t={t}",
            phase.legs_in_air.len()
        );
    }

    let tables = [
        &m.width_d,
        &m.height_h,
        &m.clearance_h,
        &m.leg_spacing,
        &m.alpha_max,
    ];
    for table in tables {
        let anchors: Vec<(f64, f64)> = table.anchors().collect();
        for &(x, y) in &anchors {
            ensure!(
                (table.eval(theta(x)) - y).abs() <= 1e-9,
                "anchor ({x}, {y})"
            );
        }
        for w in anchors.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            for i in 0..CASES {
                let u = rng.gen_range(x0..x1);
                let v = rng.gen_range(u..=x1);
                let (fu, fv) = (table.eval(theta(u)), table.eval(theta(v)));
                ensure!(
                    fu >= y0.min(y1) - 1e-9 && fu <= y0.max(y1) + 1e-9,
                    "case {i}: overshoot at {u}"
                );
                ensure!(
                    (fv - fu) * (y1 - y0) >= -1e-9,
                    "case {i}: not monotone on [{x0}, {x1}]"
                );
            }
        }
    }

    let checker = TerrainChecker::new(&m, &ramps);
    for i in 0..CASES {
        let segment = match rng.gen_range(0..4) {
            0 => Segment::Channel {
                width_mm: rng.gen_range(100.0..260.0),
            },
            1 => Segment::Tunnel {
                height_mm: rng.gen_range(150.0..280.0),
            },
            2 => Segment::Obstacle {
                height_mm: rng.gen_range(5.0..120.0),
                width_mm: rng.gen_range(5.0..150.0),
                length_mm: rng.gen_range(5.0..150.0),
            },
            _ => Segment::Ramp {
                slope_deg: [5.0, 10.0][rng.gen_range(0..2)],
                direction: [RampDirection::Uphill, RampDirection::Downhill][rng.gen_range(0..2)],
            },
        };
        let scenario = Scenario::new(vec![segment.clone()]).unwrap();
        let plan = checker.plan(&scenario).unwrap();
        let seg = &plan.segments[0];
        if let Some(t) = seg.recommended_theta_deg {
            ensure!(
                checker.check(&segment, theta(t), 40.0).passed(),
                "case {i}: {segment:?} at {t}"
            );
            ensure!(
                seg.feasible.iter().any(|r| r.contains(t)),
                "case {i}: recommendation outside intervals"
            );
        }
    }

    let d = |t: f64| ideal_displacement(theta(t), 40.0, &m).unwrap();
    ensure!(
        d(0.0) > d(40.0) && d(40.0) > d(-60.0),
        "displacement ordering"
    );
    Ok(format!(
        "{CASES} cases per property; D(0)={:.1} > D(40)={:.1} > D(-60)={:.1}",
        d(0.0),
        d(40.0),
        d(-60.0)
    ))
}

fn data(path: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(path)
}

fn determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let csv = dir.path().join("map.csv");
    let svg = dir.path().join("map.svg");
    let p = |x: &Path| x.to_string_lossy().into_owned();
    let runs: Vec<Vec<String>> = vec![
        vec!["posture".into(), "--theta".into(), "-30".into()],
        vec!["gait".into(), p(&data("gait_lateral_sequence.json"))],
        vec![
            "stability-map".into(),
            "--csv".into(),
            p(&csv),
            "--svg".into(),
            p(&svg),
        ],
        vec![
            "scenario".into(),
            p(&data("scenarios/mixed.json")),
            "--plan".into(),
            "--theta".into(),
            "0".into(),
        ],
        vec![
            "scenario".into(),
            p(&data("scenarios/obstacle_course.json")),
        ],
    ];
    let run = |args: &[String]| {
        let out = Command::new(env!("CARGO_BIN_EXE_adjustbot"))
            .arg("--deterministic")
            .args(args)
            .env_remove("ADJUSTBOT_DETERMINISTIC")
            .output()
            .expect("binary runs");
        let mut bytes = out.stdout;
        for f in [&csv, &svg] {
            bytes.extend(std::fs::read(f).unwrap_or_default());
        }
        (out.status.code(), bytes)
    };
    for args in &runs {
        let first = run(args);
        let second = run(args);
        ensure!(first.1 == second.1, "{} differs between runs", args[0]);
        ensure!(first.0 == second.0, "{} exit status differs", args[0]);
        ensure!(
            !String::from_utf8_lossy(&first.1).contains("generated_at"),
            "{}: timestamp present",
            args[0]
        );
    }
    Ok(format!("{} invocations byte-identical", runs.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("gait formula reproduction", gait_formula_reproduction),
        ("posture table anchors", table_anchors),
        ("kinematic formula round-trip", kinematic_round_trip),
        ("stability margin oracle", margin_oracle),
        ("stability map sign pattern", map_sign_pattern),
        ("scenario anchors", scenario_anchors),
        ("ramp anchors", ramp_anchors),
        ("property suites", property_suites),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match std::panic::catch_unwind(check) {
            Ok(Ok(detail)) => println!("criterion {}: PASS  {name} -- {detail}", i + 1),
            Ok(Err(why)) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} -- {why}", i + 1);
            }
            Err(_) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} -- panicked", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
