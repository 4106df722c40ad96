//! Staged verification pipeline behind the command line: parse a fan
//! instance from JSON, run the requested checks, and emit a
//! deterministic report.  Apart from the timing block, two runs on the
//! same input produce byte-identical reports.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use tropical_period::gamma;
use tropical_period::lattice::{
    self, Convexity, ConvexityOutcome, Fan, LatticePolytope, PlFunction, ValidationReport,
};
use tropical_period::linalg::ivec;
use tropical_period::plh::{self, PlhData};
use tropical_period::radiance;
use tropical_period::sphere::{build_sphere, SphereComplex};
use tropical_period::toric::ToricModel;
use tropical_period::Error as CoreError;

/// Instance description accepted on `--input`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    pub h: Vec<i64>,
    #[serde(default)]
    pub sigma: Option<FanSpec>,
    #[serde(default)]
    pub options: Option<InputOptions>,
}

/// A subdivision fan named in the input for cross-checking.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanSpec {
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

/// Options carried inside the instance file; command-line flags win.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputOptions {
    #[serde(default)]
    pub y_sweep: Option<Vec<f64>>,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub format: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Validate,
    Sphere,
    Cohomology,
    Radiance,
    Period,
    Gamma,
}

pub const ALL_STAGES: [Stage; 6] = [
    Stage::Validate,
    Stage::Sphere,
    Stage::Cohomology,
    Stage::Radiance,
    Stage::Period,
    Stage::Gamma,
];

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Validate => "validate",
            Stage::Sphere => "sphere",
            Stage::Cohomology => "cohomology",
            Stage::Radiance => "radiance",
            Stage::Period => "period",
            Stage::Gamma => "gamma",
        }
    }
}

impl FromStr for Stage {
    type Err = String;

    fn from_str(s: &str) -> Result<Stage, String> {
        match s.trim() {
            "validate" => Ok(Stage::Validate),
            "sphere" => Ok(Stage::Sphere),
            "cohomology" => Ok(Stage::Cohomology),
            "radiance" => Ok(Stage::Radiance),
            "period" => Ok(Stage::Period),
            "gamma" => Ok(Stage::Gamma),
            other => Err(format!(
                "unknown stage {other:?}; expected one of validate, sphere, cohomology, radiance, period, gamma"
            )),
        }
    }
}

/// Comma-separated stage list, normalized to pipeline order.
pub fn parse_stages(list: &str) -> Result<Vec<Stage>, String> {
    let mut stages: Vec<Stage> =
        list.split(',').map(Stage::from_str).collect::<Result<_, _>>()?;
    stages.sort();
    stages.dedup();
    Ok(stages)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Format, String> {
        match s.trim() {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format {other:?}; expected json or text")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub stages: Vec<Stage>,
    pub y_sweep: Vec<f64>,
    pub tolerance: f64,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig { stages: ALL_STAGES.to_vec(), y_sweep: vec![5.0, 10.0, 20.0], tolerance: 1e-9 }
    }
}

/// One named entry of the check matrix.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub status: bool,
    pub value: Option<String>,
}

impl Check {
    fn flag(name: &'static str, status: bool) -> Check {
        Check { name, status, value: None }
    }

    fn valued<T: ToString>(name: &'static str, status: bool, value: T) -> Check {
        Check { name, status, value: Some(value.to_string()) }
    }
}

struct StageOutput {
    value: Value,
    checks: Vec<Check>,
    pass: bool,
}

impl StageOutput {
    fn checked(value: Value, checks: Vec<Check>) -> StageOutput {
        let pass = checks.iter().all(|c| c.status);
        StageOutput { value, checks, pass }
    }

    fn errored(message: String) -> StageOutput {
        StageOutput {
            value: json!({ "error": message }),
            checks: vec![Check::flag("completed", false)],
            pass: false,
        }
    }
}

pub struct RunOutcome {
    pub report: Value,
    pub input_valid: bool,
    pub all_passed: bool,
}

fn int_rows(rows: &[Vec<i64>]) -> Vec<Vec<tropical_period::Int>> {
    rows.iter().map(|r| ivec(r)).collect()
}

fn display_matrix<T: std::fmt::Display>(m: &[Vec<T>]) -> Value {
    Value::Array(
        m.iter()
            .map(|row| Value::Array(row.iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

fn display_row<T: std::fmt::Display>(row: &[T]) -> Value {
    Value::Array(row.iter().map(|x| Value::String(x.to_string())).collect())
}

fn convexity_json(outcome: &ConvexityOutcome) -> Value {
    let class = match outcome.class {
        Convexity::StrictlyConvex => "strictly_convex",
        Convexity::Convex => "convex",
        Convexity::NotConvex => "not_convex",
    };
    let witness = outcome.witness.as_ref().map(|w| {
        json!({
            "cone": w.cone,
            "ray": w.ray,
            "linear_value": w.linear_value.to_string(),
            "h_value": w.h_value.to_string(),
        })
    });
    json!({ "class": class, "witness": witness })
}

fn wall_inequality(outcome: &ConvexityOutcome) -> Option<String> {
    outcome.witness.as_ref().map(|w| {
        format!(
            "cone {} linear value {} vs h = {} at ray {}",
            w.cone, w.linear_value, w.h_value, w.ray
        )
    })
}

fn polytope_vertices(p: &LatticePolytope) -> Value {
    Value::Array(p.vertices().iter().map(|v| display_row(v)).collect())
}

fn validate_stage(report: &ValidationReport) -> StageOutput {
    let value = json!({
        "rank": report.rank,
        "rays_primitive": report.rays_primitive,
        "unimodular": report.unimodular,
        "non_unimodular_cone": report.non_unimodular_cone,
        "complete": report.complete,
        "completeness_defect": report.completeness_defect,
        "reflexive": report.reflexive,
        "fan_polytope_vertices": polytope_vertices(&report.fan_polytope),
        "polar_dual_vertices": report.polar_dual.as_ref().map(polytope_vertices),
        "h_convexity": convexity_json(&report.h_convexity),
        "h_shifted_convexity": convexity_json(&report.h_prime_convexity),
        "sigma": report.sigma.as_ref().map(|s| json!({
            "unimodular": s.unimodular,
            "complete": s.complete,
            "matches_polar_dual": s.fan_polytope_matches_dual,
        })),
        "pipeline_ready": report.pipeline_ready(),
    });
    let h_strict = report.h_convexity.class == Convexity::StrictlyConvex;
    let h_shifted = report.h_prime_convexity.class != Convexity::NotConvex;
    let mut checks = vec![
        Check::flag("rays_primitive", report.rays_primitive),
        Check::flag("unimodular", report.unimodular),
        Check::flag("complete", report.complete),
        Check::flag("reflexive", report.reflexive),
        Check {
            name: "h_strictly_convex",
            status: h_strict,
            value: if h_strict { None } else { wall_inequality(&report.h_convexity) },
        },
        Check {
            name: "h_shifted_convex",
            status: h_shifted,
            value: if h_shifted { None } else { wall_inequality(&report.h_prime_convexity) },
        },
    ];
    if let Some(sigma) = &report.sigma {
        checks.push(Check::flag(
            "sigma_compatible",
            sigma.unimodular && sigma.complete && sigma.fan_polytope_matches_dual,
        ));
    }
    checks.push(Check::flag("pipeline_ready", report.pipeline_ready()));
    StageOutput::checked(value, checks)
}

fn sphere_stage(sphere: &SphereComplex) -> Result<StageOutput, CoreError> {
    let vertex_identity = radiance::vertex_identity_check(sphere).is_ok();
    let mut cells_checked = 0usize;
    let mut all_simple = true;
    for cell in sphere.all_cells().filter(|c| c.dim() < sphere.dim()) {
        cells_checked += 1;
        if !sphere.simplicity_check(cell)?.is_simple() {
            all_simple = false;
        }
    }
    let mut invariant_ranks = Vec::new();
    let mut invariants_nonzero = true;
    for cell in sphere.all_cells() {
        let rank = sphere.local_monodromy_invariants(cell)?.len();
        if rank == 0 {
            invariants_nonzero = false;
        }
        invariant_ranks.push(json!({
            "dim": cell.dim(),
            "rays": cell.rays(),
            "rank": rank,
        }));
    }
    let value = json!({
        "dim": sphere.dim(),
        "f_vector": sphere.f_vector(),
        "euler_characteristic": sphere.euler_characteristic(),
        "vertices": Value::Array(sphere.vertices().iter().map(|v| display_row(v)).collect()),
        "vertex_identity": vertex_identity,
        "cells_below_top": cells_checked,
        "all_cells_simple": all_simple,
        "local_invariant_ranks": Value::Array(invariant_ranks),
    });
    let checks = vec![
        Check::flag("vertex_identity", vertex_identity),
        Check::valued("cells_simple", all_simple, cells_checked),
        Check::flag("local_invariants_nonzero", invariants_nonzero),
    ];
    Ok(StageOutput::checked(value, checks))
}

fn cohomology_stage(
    sphere: &SphereComplex,
    model: &ToricModel,
) -> Result<StageOutput, CoreError> {
    let entries = radiance::compare_tables(sphere, model)?;
    let agree = radiance::tables_agree(&entries);
    let table: Vec<Value> = entries
        .iter()
        .map(|e| {
            json!({
                "rays": e.rays,
                "tropical": e.tropical.to_string(),
                "toric": e.toric.to_string(),
                "agree": e.agrees(),
            })
        })
        .collect();
    let value = json!({
        "ambient_dims": model.amb_dims(),
        "anticanonical_top_power": model.anticanonical_power_integral()?.to_string(),
        "table": Value::Array(table),
        "tables_agree": agree,
    });
    let checks = vec![Check::valued("intersection_tables_agree", agree, entries.len())];
    Ok(StageOutput::checked(value, checks))
}

fn radiance_stage(sphere: &SphereComplex, model: &ToricModel) -> Result<StageOutput, CoreError> {
    let class = radiance::radiance_class(sphere, model)?;
    let coords = model.coords(&class)?;
    let top = radiance::radiance_top_power(sphere, model)?;
    let positive = radiance::top_power_positive(sphere, model)?;
    let value = json!({
        "class_coordinates": display_row(&coords),
        "top_power": top.to_string(),
        "top_power_positive": positive,
    });
    let checks = vec![Check::valued("top_power_positive", positive, &top)];
    Ok(StageOutput::checked(value, checks))
}

fn period_stage(
    sphere: &SphereComplex,
    model: &ToricModel,
    plh_data: &PlhData,
    config: &RunConfig,
) -> Result<StageOutput, CoreError> {
    let checks_report = plh_data.structure_checks()?;
    let (real_structure, rows) = match gamma::build_gamma_lattice(sphere, model) {
        Ok(lattice) => ("bundle-lattice", lattice.numeric_rows()),
        Err(_) => ("graded", plh::graded_real_structure(plh_data.degrees(), plh_data.dim_y())),
    };
    let sweeps = plh_data.positivity_sweep(&rows, &config.y_sweep, config.tolerance)?;
    let positive = sweeps.iter().all(|r| r.min_eigenvalue > config.tolerance);
    let min_eigenvalue =
        sweeps.iter().map(|r| r.min_eigenvalue).fold(f64::INFINITY, f64::min);
    let sweep_json: Vec<Value> = sweeps
        .iter()
        .map(|r| {
            json!({
                "y": r.y,
                "min_eigenvalue": r.min_eigenvalue,
                "blocks": r.blocks.iter().map(|b| json!({
                    "p": b.p,
                    "q": b.q,
                    "dim": b.dim,
                    "min_eigenvalue": b.min_eigenvalue,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let value = json!({
        "block_dims": plh_data.dims(),
        "filtration_dims": checks_report.filtration_dims,
        "nilpotent": display_matrix(plh_data.nilpotent_operator()),
        "pairing": display_matrix(plh_data.pairing_matrix()),
        "monodromy": display_matrix(&plh_data.monodromy_matrix()),
        "checks": {
            "griffiths_transversality": checks_report.griffiths_transversality,
            "orthogonality": checks_report.orthogonality,
            "pairing_symmetry": checks_report.pairing_symmetry,
            "nilpotent_isometry": checks_report.nilpotent_isometry,
            "monodromy_isometry": checks_report.monodromy_isometry,
            "scalar_consistency": checks_report.scalar_consistency,
            "corrupted_filtration_detected": checks_report.corrupted_filtration_detected,
        },
        "real_structure": real_structure,
        "positivity": Value::Array(sweep_json),
        "positive_on_sweep": positive,
    });
    let checks = vec![
        Check::flag("griffiths_transversality", checks_report.griffiths_transversality),
        Check::flag("orthogonality", checks_report.orthogonality),
        Check::flag("pairing_symmetry", checks_report.pairing_symmetry),
        Check::flag("nilpotent_isometry", checks_report.nilpotent_isometry),
        Check::flag("monodromy_isometry", checks_report.monodromy_isometry),
        Check::flag("scalar_consistency", checks_report.scalar_consistency),
        Check::flag("corrupted_filtration_detected", checks_report.corrupted_filtration_detected),
        Check::valued("positive_on_sweep", positive, min_eigenvalue),
    ];
    Ok(StageOutput::checked(value, checks))
}

fn gamma_stage(
    sphere: &SphereComplex,
    model: &ToricModel,
    plh_data: &PlhData,
) -> Result<StageOutput, CoreError> {
    let euler = gamma::euler_number(sphere, model)?;
    match gamma::build_gamma_lattice(sphere, model) {
        Ok(lattice) => {
            let report = lattice.lattice_checks(plh_data)?;
            let value = json!({
                "euler_number": euler.to_string(),
                "exact_lattice": {
                    "degrees": lattice.degrees(),
                    "basis": display_matrix(lattice.basis()),
                    "monodromy_in_basis": display_matrix(&lattice.monodromy_in_basis(plh_data)?),
                    "gram": display_matrix(&lattice.gram_matrix(plh_data)),
                    "structure_sheaf_self_pairing": report.structure_sheaf_self_pairing.to_string(),
                    "checks": {
                        "monodromy_integral": report.monodromy_integral,
                        "monodromy_unipotent": report.monodromy_unipotent,
                        "monodromy_det_one": report.monodromy_det_one,
                        "gram_integral": report.gram_integral,
                        "gram_symmetric": report.gram_symmetric,
                        "numeric_monodromy_error": report.numeric_monodromy_error,
                        "conjugation_matches_graded_signs": report.conjugation_matches_graded_signs,
                    },
                },
            });
            let checks = vec![
                Check::flag("monodromy_integral", report.monodromy_integral),
                Check::flag("monodromy_unipotent", report.monodromy_unipotent),
                Check::flag("monodromy_det_one", report.monodromy_det_one),
                Check::flag("gram_integral", report.gram_integral),
                Check::flag("gram_symmetric", report.gram_symmetric),
                Check::valued(
                    "numeric_monodromy_close",
                    report.numeric_monodromy_error < 1e-9,
                    report.numeric_monodromy_error,
                ),
                Check::flag(
                    "conjugation_matches_graded_signs",
                    report.conjugation_matches_graded_signs,
                ),
            ];
            Ok(StageOutput::checked(value, checks))
        }
        Err(CoreError::OutOfRange(reason)) | Err(CoreError::NonVanishingChern(reason)) => {
            let value = json!({
                "euler_number": euler.to_string(),
                "exact_lattice": Value::Null,
                "note": format!("exact lattice unavailable: {reason}"),
            });
            Ok(StageOutput::checked(value, Vec::new()))
        }
        Err(e) => Err(e),
    }
}

/// Run the staged pipeline.  `Err` means the input cannot be parsed
/// into a fan at all; a fan that fails validation yields a report with
/// `input_valid == false`, and mathematical check failures on a valid
/// input clear `all_passed`.
pub fn run(input: &InputSpec, config: &RunConfig) -> Result<RunOutcome, String> {
    let fan = Fan::new(input.rank, int_rows(&input.rays), input.max_cones.clone())
        .map_err(|e| format!("invalid fan: {e}"))?;
    let h = PlFunction::from_i64(&input.h);
    let sigma = input
        .sigma
        .as_ref()
        .map(|s| Fan::new(input.rank, int_rows(&s.rays), s.max_cones.clone()))
        .transpose()
        .map_err(|e| format!("invalid sigma fan: {e}"))?;

    let mut timings = Map::new();
    let start = Instant::now();
    let validation = lattice::validate_input(&fan, &h, sigma.as_ref())
        .map_err(|e| format!("invalid input: {e}"))?;
    timings.insert("validate".into(), json!(start.elapsed().as_secs_f64() * 1e3));
    let ready = validation.pipeline_ready();

    let built = if ready {
        let start = Instant::now();
        let sphere = build_sphere(&fan, &h).map_err(|e| e.to_string());
        let model = ToricModel::new(&fan).map_err(|e| e.to_string());
        timings.insert("build".into(), json!(start.elapsed().as_secs_f64() * 1e3));
        match (sphere, model) {
            (Ok(s), Ok(m)) => {
                let p = plh::build_plh(&s, &m).map_err(|e| e.to_string());
                Some((s, m, p))
            }
            (Err(e), _) | (_, Err(e)) => return Err(format!("construction failed: {e}")),
        }
    } else {
        None
    };

    let mut stages_obj = Map::new();
    let mut stage_results = Map::new();
    let mut check_matrix = Vec::new();
    let mut all_passed = true;
    for &stage in &config.stages {
        let start = Instant::now();
        let output = match stage {
            Stage::Validate => validate_stage(&validation),
            _ => match &built {
                None => StageOutput {
                    value: json!({ "skipped": "input is not pipeline-ready" }),
                    checks: Vec::new(),
                    pass: false,
                },
                Some((sphere, model, plh_result)) => {
                    let outcome = match stage {
                        Stage::Validate => unreachable!("handled above"),
                        Stage::Sphere => sphere_stage(sphere),
                        Stage::Cohomology => cohomology_stage(sphere, model),
                        Stage::Radiance => radiance_stage(sphere, model),
                        Stage::Period | Stage::Gamma => match plh_result {
                            Ok(plh_data) => {
                                if stage == Stage::Period {
                                    period_stage(sphere, model, plh_data, config)
                                } else {
                                    gamma_stage(sphere, model, plh_data)
                                }
                            }
                            Err(e) => Ok(StageOutput::errored(e.clone())),
                        },
                    };
                    outcome.unwrap_or_else(|e| StageOutput::errored(e.to_string()))
                }
            },
        };
        timings.insert(stage.name().into(), json!(start.elapsed().as_secs_f64() * 1e3));
        for check in &output.checks {
            check_matrix.push(json!({
                "name": format!("{}.{}", stage.name(), check.name),
                "status": if check.status { "pass" } else { "fail" },
                "value": check.value,
            }));
        }
        stages_obj.insert(stage.name().into(), output.value);
        stage_results.insert(stage.name().into(), json!(output.pass));
        all_passed &= output.pass;
    }

    let report = json!({
        "input": {
            "rank": input.rank,
            "ray_count": input.rays.len(),
            "h": input.h,
            "sigma_provided": input.sigma.is_some(),
        },
        "stages": Value::Object(stages_obj),
        "summary": {
            "all_passed": all_passed,
            "stage_results": Value::Object(stage_results),
            "checks": Value::Array(check_matrix),
        },
        "timing_ms": Value::Object(timings),
    });
    Ok(RunOutcome { report, input_valid: ready, all_passed })
}

fn write_text(out: &mut String, key: &str, value: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, v) in map {
                write_text(out, k, v, indent + 1);
            }
        }
        Value::Array(items) if items.iter().all(|v| !v.is_object() && !v.is_array()) => {
            let rendered: Vec<String> = items
                .iter()
                .map(|v| match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect();
            let _ = writeln!(out, "{pad}{key}: [{}]", rendered.join(", "));
        }
        Value::Array(items) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (i, v) in items.iter().enumerate() {
                write_text(out, &i.to_string(), v, indent + 1);
            }
        }
        Value::String(s) => {
            let _ = writeln!(out, "{pad}{key}: {s}");
        }
        other => {
            let _ = writeln!(out, "{pad}{key}: {other}");
        }
    }
}

/// Plain-text rendering of the report, without the timing block.
pub fn render_text(report: &Value) -> String {
    let mut out = String::new();
    if let Some(map) = report.as_object() {
        for (k, v) in map {
            if k == "timing_ms" {
                continue;
            }
            write_text(&mut out, k, v, 0);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn cubic_input() -> InputSpec {
        InputSpec {
            rank: 2,
            rays: vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            max_cones: vec![vec![0, 1], vec![1, 2], vec![2, 0]],
            h: vec![1, 1, 1],
            sigma: None,
            options: None,
        }
    }

    #[test]
    fn full_pipeline_on_the_cubic() {
        let outcome = run(&cubic_input(), &RunConfig::default()).unwrap();
        assert!(outcome.input_valid);
        assert!(outcome.all_passed, "{}", outcome.report);
        let stages = &outcome.report["stages"];
        assert_eq!(stages["validate"]["pipeline_ready"], json!(true));
        assert_eq!(stages["sphere"]["f_vector"], json!([3, 3]));
        assert_eq!(stages["cohomology"]["tables_agree"], json!(true));
        assert_eq!(stages["radiance"]["top_power"], json!("9"));
        assert_eq!(stages["period"]["block_dims"], json!([1, 1]));
        assert_eq!(stages["gamma"]["euler_number"], json!("0"));
    }

    #[test]
    fn check_matrix_lists_every_check_once() {
        let outcome = run(&cubic_input(), &RunConfig::default()).unwrap();
        let checks = outcome.report["summary"]["checks"].as_array().unwrap();
        assert!(!checks.is_empty());
        let names: BTreeSet<&str> =
            checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
        assert_eq!(names.len(), checks.len(), "duplicate check names");
        assert!(names.contains("validate.pipeline_ready"));
        assert!(names.contains("cohomology.intersection_tables_agree"));
        assert!(names.contains("period.positive_on_sweep"));
        assert!(checks.iter().all(|c| c["status"] == json!("pass")));
    }

    #[test]
    fn non_convex_h_invalidates_the_input() {
        let mut input = cubic_input();
        input.h = vec![1, 1, -3];
        let outcome = run(&input, &RunConfig::default()).unwrap();
        assert!(!outcome.input_valid);
        assert!(!outcome.all_passed);
        let stages = &outcome.report["stages"];
        assert_eq!(stages["validate"]["pipeline_ready"], json!(false));
        assert_eq!(stages["sphere"]["skipped"], json!("input is not pipeline-ready"));
        let checks = outcome.report["summary"]["checks"].as_array().unwrap();
        let convexity = checks
            .iter()
            .find(|c| c["name"] == json!("validate.h_strictly_convex"))
            .unwrap();
        assert_eq!(convexity["status"], json!("fail"));
        assert!(convexity["value"].as_str().unwrap().contains("cone"));
    }

    #[test]
    fn structural_errors_are_input_errors() {
        let mut input = cubic_input();
        input.max_cones = vec![vec![0, 7]];
        assert!(run(&input, &RunConfig::default()).is_err());
        let mut input = cubic_input();
        input.h = vec![1, 1];
        assert!(run(&input, &RunConfig::default()).is_err());
    }

    #[test]
    fn degenerate_sweep_fails_checks_on_valid_input() {
        let mut config = RunConfig::default();
        config.y_sweep = vec![1e-13];
        let outcome = run(&cubic_input(), &config).unwrap();
        assert!(outcome.input_valid);
        assert!(!outcome.all_passed);
        assert_eq!(outcome.report["stages"]["period"]["positive_on_sweep"], json!(false));
    }

    #[test]
    fn stage_parsing_normalizes_order() {
        let stages = parse_stages("gamma,validate,sphere").unwrap();
        assert_eq!(stages, vec![Stage::Validate, Stage::Sphere, Stage::Gamma]);
        assert!(parse_stages("validate,warp").is_err());
    }

    #[test]
    fn text_rendering_skips_timings() {
        let outcome = run(&cubic_input(), &RunConfig::default()).unwrap();
        let text = render_text(&outcome.report);
        assert!(text.contains("tables_agree: true"));
        assert!(!text.contains("timing_ms"));
    }
}
