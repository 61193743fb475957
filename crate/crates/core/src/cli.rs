//! Command-line front end behind the `adjustbot` binary.
//!
//! Every subcommand prints a [`RunReport`] as JSON on stdout (or a plain
//! table with `--pretty`). Exit status: 0 when everything passes, 1 when a
//! scenario segment is infeasible, 2 on any input or validation error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::gait::{hildebrand_formula, mcghee_formula, GaitMatrixDocument, Leg};
use crate::geometry::{PostureAngle, RobotModel};
use crate::scenario::{
    FeasibilityOptions, Flag, RampOutcomeTable, Scenario, TerrainChecker, Verdict,
};
use crate::stability::stability_map;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

pub const DETERMINISTIC_ENV: &str = "ADJUSTBOT_DETERMINISTIC";

#[derive(Debug, Parser)]
#[command(
    name = "adjustbot",
    version,
    about = "Posture, gait, stability and terrain analysis"
)]
#[command(args_conflicts_with_subcommands = false, allow_negative_numbers = true)]
pub struct Cli {
    /// Robot model JSON replacing the built-in one.
    #[arg(long, global = true, value_name = "PATH")]
    pub model: Option<PathBuf>,
    /// Ramp outcome table JSON replacing the built-in one.
    #[arg(long, global = true, value_name = "PATH")]
    pub ramp_table: Option<PathBuf>,
    /// Omit the timestamp so repeated runs are byte-identical.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Body dimensions at a posture angle.
    Posture {
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
    },
    /// Gait formulas of a gait-matrix file.
    Gait {
        #[arg(value_name = "FILE")]
        file: PathBuf,
    },
    /// Stability margin over posture angle × gait step.
    StabilityMap(MapArgs),
    /// Feasibility of a terrain scenario.
    Scenario {
        #[arg(value_name = "FILE")]
        file: PathBuf,
        /// Evaluate every segment at this posture.
        #[arg(long, allow_negative_numbers = true)]
        theta: Option<f64>,
        /// Search feasible postures per segment (default when no --theta).
        #[arg(long)]
        plan: bool,
        /// Body-angle amplitude used on ramps.
        #[arg(long, default_value_t = 40.0)]
        alpha: f64,
    },
}

#[derive(Debug, Args)]
pub struct MapArgs {
    #[arg(long, default_value_t = -60.0, allow_negative_numbers = true)]
    pub theta_min: f64,
    #[arg(long, default_value_t = 40.0, allow_negative_numbers = true)]
    pub theta_max: f64,
    #[arg(long, default_value_t = 5.0)]
    pub theta_step: f64,
    #[arg(long, default_value_t = 40.0)]
    pub alpha: f64,
    /// Destination of the margin table.
    #[arg(long, value_name = "PATH")]
    pub csv: PathBuf,
    /// Optional heatmap destination.
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    /// SHA-256 over every input consumed (model, tables, files).
    pub inputs_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at_unix: Option<u64>,
    pub results: Value,
    pub warnings: Vec<String>,
}

#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

struct Outcome {
    results: Value,
    warnings: Vec<String>,
    pretty: String,
    exit: i32,
}

#[derive(Default)]
struct Inputs(Sha256);

impl Inputs {
    fn add(&mut self, label: &str, bytes: &[u8]) {
        self.0.update(label.as_bytes());
        self.0.update((bytes.len() as u64).to_le_bytes());
        self.0.update(bytes);
    }

    fn digest(self) -> String {
        hex::encode(self.0.finalize())
    }
}

fn read(path: &Path, inputs: &mut Inputs) -> Result<String, InputError> {
    let text =
        fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    inputs.add("file", text.as_bytes());
    Ok(text)
}

fn load_model(cli: &Cli, inputs: &mut Inputs) -> Result<RobotModel, InputError> {
    match &cli.model {
        Some(p) => Ok(RobotModel::from_json(&read(p, inputs)?)?),
        None => {
            let m = RobotModel::default();
            inputs.add("model", m.to_json().as_bytes());
            Ok(m)
        }
    }
}

fn load_ramps(
    cli: &Cli,
    model: &RobotModel,
    inputs: &mut Inputs,
) -> Result<RampOutcomeTable, InputError> {
    let table = match &cli.ramp_table {
        Some(p) => RampOutcomeTable::from_json(&read(p, inputs)?, model)?,
        None => {
            let t = RampOutcomeTable::embedded();
            inputs.add("ramps", serde_json::to_string(&t)?.as_bytes());
            t.validate(model)?;
            t
        }
    };
    Ok(table)
}

/// Parses `args` (program name first), runs the subcommand and writes the
/// report to `out`; diagnostics go to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let deterministic =
        cli.deterministic || std::env::var(DETERMINISTIC_ENV).is_ok_and(|v| v == "1");

    let mut inputs = Inputs::default();
    let outcome = match execute(&cli, &mut inputs) {
        Ok(o) => o,
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_INPUT;
        }
    };

    let report = RunReport {
        command: args
            .iter()
            .skip(1)
            .map(|a| a.to_string_lossy().into_owned())
            .collect(),
        inputs_digest: inputs.digest(),
        generated_at_unix: (!deterministic).then(|| {
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
        }),
        results: outcome.results,
        warnings: outcome.warnings,
    };
    let written = if cli.pretty {
        let mut text = outcome.pretty;
        for w in &report.warnings {
            text.push_str(&format!("warning: {w}\n"));
        }
        out.write_all(text.as_bytes())
    } else {
        let body = serde_json::to_string_pretty(&report).expect("report serialises");
        writeln!(out, "{body}")
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_INPUT;
    }
    outcome.exit
}

fn execute(cli: &Cli, inputs: &mut Inputs) -> Result<Outcome, InputError> {
    match &cli.command {
        Command::Posture { theta } => posture(cli, *theta, inputs),
        Command::Gait { file } => gait(file, inputs),
        Command::StabilityMap(args) => map(cli, args, inputs),
        Command::Scenario {
            file,
            theta,
            plan,
            alpha,
        } => scenario(cli, file, *theta, *plan, *alpha, inputs),
    }
}

fn posture(cli: &Cli, theta: f64, inputs: &mut Inputs) -> Result<Outcome, InputError> {
    let model = load_model(cli, inputs)?;
    let theta = PostureAngle::new(theta)?;
    let dims = model.posture_dimensions(theta);
    let interpolated = model.interpolated_fields(theta);
    let warnings = interpolated
        .iter()
        .map(|f| format!("{f} at theta {theta} is interpolated, not a measured anchor"))
        .collect();
    let mut pretty = format!("posture theta = {} deg\n", dims.theta_deg);
    for (name, value, unit) in [
        ("width_d", dims.width_d_mm, "mm"),
        ("height_H", dims.height_h_mm, "mm"),
        ("clearance_h", dims.clearance_h_mm, "mm"),
        ("body_length", dims.body_length_mm, "mm"),
        ("leg_spacing", dims.leg_spacing_mm, "mm"),
        ("alpha_max", dims.alpha_max_deg, "deg"),
    ] {
        let mark = if interpolated.contains(&name) {
            " *"
        } else {
            ""
        };
        pretty.push_str(&format!("  {name:<12} {value:>9.3} {unit}{mark}\n"));
    }
    let mut results = serde_json::to_value(dims)?;
    results["interpolated"] = json!(interpolated);
    Ok(Outcome {
        results,
        warnings,
        pretty,
        exit: EXIT_OK,
    })
}

fn gait(file: &Path, inputs: &mut Inputs) -> Result<Outcome, InputError> {
    let doc: GaitMatrixDocument = serde_json::from_str(&read(file, inputs)?)?;
    let matrix = doc.into_matrix()?;
    let formula = mcghee_formula(&matrix)?;
    let duty_exact: Vec<String> = matrix
        .duty_factors_exact()
        .iter()
        .map(|r| r.to_string())
        .collect();
    let phase_exact: Vec<String> = matrix.phases_exact(Leg::ALL[0])?[1..]
        .iter()
        .map(|r| r.to_string())
        .collect();
    let mut warnings = Vec::new();
    let hildebrand = match hildebrand_formula(&formula) {
        Ok(h) => Some(h),
        Err(e) => {
            warnings.push(format!("no Hildebrand formula: {e}"));
            None
        }
    };
    let legs: Vec<String> = Leg::ALL.iter().map(|l| l.name().to_string()).collect();
    let tuple = formula.to_tuple();
    let mut pretty = format!("legs (1..4): {}\n", legs.join(", "));
    pretty.push_str(&format!("duty factors:    {}\n", duty_exact.join(", ")));
    pretty.push_str(&format!("relative phases: {}\n", phase_exact.join(", ")));
    if let Some(h) = hildebrand {
        pretty.push_str(&format!("hildebrand:      {h}\n"));
    }
    let results = json!({
        "legs": legs,
        "formula": tuple,
        "duty_factors_exact": duty_exact,
        "relative_phases_exact": phase_exact,
        "hildebrand": hildebrand.map(|h| json!({
            "duty_percent": h.duty_percent,
            "relative_phase_percent": h.relative_phase_percent,
            "text": h.to_string(),
        })),
    });
    Ok(Outcome {
        results,
        warnings,
        pretty,
        exit: EXIT_OK,
    })
}

fn map(cli: &Cli, args: &MapArgs, inputs: &mut Inputs) -> Result<Outcome, InputError> {
    let model = load_model(cli, inputs)?;
    if !(args.theta_step > 0.0) {
        return Err(InputError(format!(
            "theta step must be positive, got {}",
            args.theta_step
        )));
    }
    let thetas = PostureAngle::sweep(args.theta_min, args.theta_max, args.theta_step)?;
    let map = stability_map(&thetas, args.alpha, &model)?;
    let csv = map.to_csv();
    fs::write(&args.csv, &csv).map_err(|e| InputError(format!("{}: {e}", args.csv.display())))?;
    if let Some(svg) = &args.svg {
        fs::write(svg, map.to_svg()).map_err(|e| InputError(format!("{}: {e}", svg.display())))?;
    }
    let per_theta: Vec<Value> = map
        .theta_axis
        .iter()
        .enumerate()
        .map(|(i, t)| json!({ "theta_deg": t, "unstable_steps": map.unstable_steps_at(i) }))
        .collect();
    let unstable = map.unstable_steps();
    let mut pretty = format!(
        "stability map: {} postures x {} steps, alpha = {} deg\n",
        map.theta_axis.len(),
        map.step_axis.len(),
        args.alpha
    );
    pretty.push_str(&format!(
        "  min margin {:.3} mm, max margin {:.3} mm\n",
        map.min_margin(),
        map.max_margin()
    ));
    pretty.push_str(&format!("  unstable steps: {unstable:?}\n"));
    let results = json!({
        "alpha_deg": args.alpha,
        "theta_count": map.theta_axis.len(),
        "csv_rows": csv.lines().count(),
        "min_margin_mm": map.min_margin(),
        "max_margin_mm": map.max_margin(),
        "unstable_steps": unstable,
        "per_theta": per_theta,
    });
    Ok(Outcome {
        results,
        warnings: Vec::new(),
        pretty,
        exit: EXIT_OK,
    })
}

fn flag_warnings(segment: usize, flags: &[Flag], warnings: &mut Vec<String>) {
    for f in flags {
        warnings.push(match f {
            Flag::NoData => format!("segment {segment}: no recorded ramp trial, treated as fail"),
            Flag::NearestSlope { requested_deg, used_deg } => {
                format!("segment {segment}: slope {requested_deg} deg not recorded, used {used_deg} deg")
            }
        });
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Unattainable => "unattainable",
    }
}

fn scenario(
    cli: &Cli,
    file: &Path,
    theta: Option<f64>,
    plan: bool,
    alpha: f64,
    inputs: &mut Inputs,
) -> Result<Outcome, InputError> {
    let model = load_model(cli, inputs)?;
    let ramps = load_ramps(cli, &model, inputs)?;
    let scenario = Scenario::from_json(&read(file, inputs)?)?;
    let options = FeasibilityOptions {
        ramp_alpha_deg: alpha,
        ..FeasibilityOptions::default()
    };
    let checker = TerrainChecker::new(&model, &ramps).with_options(options);

    let mut results = serde_json::Map::new();
    let mut warnings = Vec::new();
    let mut pretty = String::new();
    let mut all_pass = true;

    if let Some(theta) = theta {
        let theta = PostureAngle::new(theta)?;
        let evaluated = checker.evaluate(&scenario, theta, alpha);
        pretty.push_str(&format!("evaluation at theta = {theta}\n"));
        for (i, (seg, r)) in scenario.segments.iter().zip(&evaluated).enumerate() {
            flag_warnings(i + 1, &r.flags, &mut warnings);
            all_pass &= r.passed();
            pretty.push_str(&format!(
                "  {:>2} {:<9} {:<12} {:<16} slack {:>8.3}\n",
                i + 1,
                seg.kind(),
                verdict_name(r.verdict),
                r.limiting_constraint.to_string(),
                r.slack
            ));
        }
        results.insert("theta_deg".into(), json!(theta.degrees()));
        results.insert("evaluation".into(), serde_json::to_value(&evaluated)?);
    }
    if plan || theta.is_none() {
        let p = checker.plan(&scenario)?;
        pretty.push_str("posture plan\n");
        for (i, s) in p.segments.iter().enumerate() {
            if let Some(r) = &s.result {
                flag_warnings(i + 1, &r.flags, &mut warnings);
            }
            all_pass &= s.verdict == Verdict::Pass;
            let ranges: Vec<String> = s
                .feasible
                .iter()
                .map(|r| format!("[{}, {}]", r.lo_deg, r.hi_deg))
                .collect();
            let rec = s
                .recommended_theta_deg
                .map_or("-".to_string(), |t| t.to_string());
            pretty.push_str(&format!(
                "  {:>2} {:<9} {:<5} theta {:>5}  feasible {}\n",
                i + 1,
                s.segment.kind(),
                verdict_name(s.verdict),
                rec,
                if ranges.is_empty() {
                    "none".to_string()
                } else {
                    ranges.join(" ")
                }
            ));
        }
        results.insert("plan".into(), serde_json::to_value(&p)?);
    }
    results.insert("all_pass".into(), json!(all_pass));
    let exit = if all_pass { EXIT_OK } else { EXIT_INFEASIBLE };
    Ok(Outcome {
        results: Value::Object(results),
        warnings,
        pretty,
        exit,
    })
}
