//! Acceptance gate for the whole pipeline: ten independent criteria,
//! one printed pass/fail line each, all of which must hold.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use itertools::Itertools;
use num_traits::{One, Zero};

use tropical_period::gamma;
use tropical_period::lattice::{Fan, PlFunction};
use tropical_period::linalg::{det_int, ivec, mat_mul_int};
use tropical_period::plh;
use tropical_period::radiance;
use tropical_period::sphere::{build_sphere, LoopSpec, SphereComplex};
use tropical_period::toric::{SeededChoice, ToricModel};
use tropical_period::{Int, Rat};

fn fan(rank: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Fan {
    Fan::new(
        rank,
        rays.iter().map(|r| ivec(r)).collect(),
        cones.iter().map(|c| c.to_vec()).collect(),
    )
    .expect("fixture fan")
}

fn p2() -> Fan {
    fan(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[2, 0]])
}

fn p3() -> Fan {
    fan(
        3,
        &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]],
        &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]],
    )
}

fn octahedron() -> Fan {
    fan(
        3,
        &[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]],
        &[
            &[0, 2, 4],
            &[0, 2, 5],
            &[0, 3, 4],
            &[0, 3, 5],
            &[1, 2, 4],
            &[1, 2, 5],
            &[1, 3, 4],
            &[1, 3, 5],
        ],
    )
}

fn p4() -> Fan {
    fan(
        4,
        &[
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[-1, -1, -1, -1],
        ],
        &[&[0, 1, 2, 3], &[0, 1, 2, 4], &[0, 1, 3, 4], &[0, 2, 3, 4], &[1, 2, 3, 4]],
    )
}

fn cross4() -> Fan {
    let rays: [&[i64]; 8] = [
        &[1, 0, 0, 0],
        &[-1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[0, -1, 0, 0],
        &[0, 0, 1, 0],
        &[0, 0, -1, 0],
        &[0, 0, 0, 1],
        &[0, 0, 0, -1],
    ];
    let mut cones: Vec<Vec<usize>> = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    cones.push(vec![a, 2 + b, 4 + c, 6 + d]);
                }
            }
        }
    }
    let cone_refs: Vec<&[usize]> = cones.iter().map(|c| c.as_slice()).collect();
    fan(4, &rays, &cone_refs)
}

struct Golden {
    name: &'static str,
    sphere: SphereComplex,
    model: ToricModel,
    amb_dims: Vec<usize>,
    top_power: i64,
    euler: i64,
}

fn golden(fan: Fan, name: &'static str, amb_dims: &[usize], top_power: i64, euler: i64) -> Golden {
    let h = PlFunction::constant_one(fan.rays().len());
    let sphere = build_sphere(&fan, &h).expect("golden sphere");
    let model = ToricModel::new(&fan).expect("golden model");
    Golden { name, sphere, model, amb_dims: amb_dims.to_vec(), top_power, euler }
}

fn goldens() -> Vec<Golden> {
    vec![
        golden(p2(), "cubic", &[1, 1], 9, 0),
        golden(p3(), "quartic", &[1, 1, 1], 64, 24),
        golden(octahedron(), "cube", &[1, 3, 1], 48, 24),
    ]
}

fn fail(message: String) -> Result<(), String> {
    Err(message)
}

fn criterion_01_intersection_tables() -> Result<(), String> {
    for g in goldens() {
        let start = Instant::now();
        let entries = radiance::compare_tables(&g.sphere, &g.model).map_err(|e| e.to_string())?;
        if entries.is_empty() {
            return fail(format!("{}: empty intersection table", g.name));
        }
        for e in &entries {
            if !e.agrees() {
                return fail(format!(
                    "{}: multiset {:?} tropical {} != toric {}",
                    g.name, e.rays, e.tropical, e.toric
                ));
            }
        }
        let elapsed = start.elapsed();
        if elapsed.as_secs_f64() >= 10.0 {
            return fail(format!("{}: table took {:.1} s", g.name, elapsed.as_secs_f64()));
        }
    }
    Ok(())
}

fn criterion_02_vertex_identity() -> Result<(), String> {
    for g in goldens() {
        radiance::vertex_identity_check(&g.sphere)
            .map_err(|e| format!("{}: {e}", g.name))?;
    }
    Ok(())
}

fn criterion_03_radiance_volumes() -> Result<(), String> {
    for g in goldens() {
        let top =
            radiance::radiance_top_power(&g.sphere, &g.model).map_err(|e| e.to_string())?;
        if top != Rat::from(Int::from(g.top_power)) {
            return fail(format!("{}: top power {} != {}", g.name, top, g.top_power));
        }
        if !radiance::top_power_positive(&g.sphere, &g.model).map_err(|e| e.to_string())? {
            return fail(format!("{}: top power not positive", g.name));
        }
    }
    Ok(())
}

fn criterion_04_monodromy_transports() -> Result<(), String> {
    for g in goldens() {
        let vertex_count = g.sphere.vertices().len();
        let ray_count = g.sphere.fan().rays().len();
        let mut successes = 0usize;
        for v0 in 0..vertex_count {
            for v1 in 0..vertex_count {
                for rho0 in 0..ray_count {
                    for rho1 in 0..ray_count {
                        let spec = LoopSpec { v0, v1, rho0, rho1 };
                        let t = match g.sphere.monodromy_transport(&spec) {
                            Ok(t) => t,
                            Err(_) => continue,
                        };
                        successes += 1;
                        let mut shifted = t.clone();
                        for (i, row) in shifted.iter_mut().enumerate() {
                            row[i] -= Int::one();
                        }
                        let square = mat_mul_int(&shifted, &shifted);
                        if square.iter().flatten().any(|x| !x.is_zero()) {
                            return fail(format!(
                                "{}: transport {spec:?} is not unipotent of index two",
                                g.name
                            ));
                        }
                        if det_int(&t) != Int::one() {
                            return fail(format!(
                                "{}: transport {spec:?} has determinant != 1",
                                g.name
                            ));
                        }
                    }
                }
            }
        }
        if g.sphere.dim() >= 2 && successes == 0 {
            return fail(format!("{}: no valid transport loops found", g.name));
        }
        for cell in g.sphere.all_cells() {
            let invariants = g
                .sphere
                .local_monodromy_invariants(cell)
                .map_err(|e| format!("{}: {e}", g.name))?;
            if invariants.is_empty() {
                return fail(format!(
                    "{}: empty invariant sublattice at cell {:?}",
                    g.name,
                    cell.rays()
                ));
            }
        }
    }
    Ok(())
}

fn criterion_05_simplicity() -> Result<(), String> {
    for g in goldens() {
        for cell in g.sphere.all_cells().filter(|c| c.dim() < g.sphere.dim()) {
            let outcome = g
                .sphere
                .simplicity_check(cell)
                .map_err(|e| format!("{}: {e}", g.name))?;
            if !outcome.is_simple() {
                return fail(format!(
                    "{}: cell {:?} is not a standard simplex pair",
                    g.name,
                    cell.rays()
                ));
            }
        }
    }
    Ok(())
}

fn criterion_06_period_structure() -> Result<(), String> {
    for g in goldens() {
        let data = plh::build_plh(&g.sphere, &g.model).map_err(|e| e.to_string())?;
        let checks = data.structure_checks().map_err(|e| e.to_string())?;
        if !checks.griffiths_transversality {
            return fail(format!("{}: Griffiths transversality fails", g.name));
        }
        if !checks.orthogonality {
            return fail(format!("{}: filtration orthogonality fails", g.name));
        }
        if g.model.amb_dims() != g.amb_dims {
            return fail(format!(
                "{}: ambient dims {:?} != {:?}",
                g.name,
                g.model.amb_dims(),
                g.amb_dims
            ));
        }
        let d = data.dim_y();
        let fd = &checks.filtration_dims;
        if fd.len() != d + 2 || fd[d + 1] != 0 {
            return fail(format!("{}: filtration dim vector {:?}", g.name, fd));
        }
        for p in 0..=d {
            let graded = fd[p] - fd[p + 1];
            if graded != g.amb_dims[d - p] {
                return fail(format!(
                    "{}: graded piece p={p} has dim {graded}, expected {}",
                    g.name,
                    g.amb_dims[d - p]
                ));
            }
        }
    }
    Ok(())
}

fn criterion_07_gamma_lattice() -> Result<(), String> {
    for g in goldens() {
        let data = plh::build_plh(&g.sphere, &g.model).map_err(|e| e.to_string())?;
        let lattice =
            gamma::build_gamma_lattice(&g.sphere, &g.model).map_err(|e| e.to_string())?;
        let checks = lattice.lattice_checks(&data).map_err(|e| e.to_string())?;
        if !checks.monodromy_integral {
            return fail(format!("{}: monodromy not integral in the lattice basis", g.name));
        }
        if checks.numeric_monodromy_error >= 1e-9 {
            return fail(format!(
                "{}: numeric monodromy deviation {}",
                g.name, checks.numeric_monodromy_error
            ));
        }
        if !checks.gram_integral || !checks.gram_symmetric {
            return fail(format!("{}: Gram matrix fails integrality or symmetry", g.name));
        }
        let expected_self = if g.name == "cubic" { 0 } else { 2 };
        if checks.structure_sheaf_self_pairing != Rat::from(Int::from(expected_self)) {
            return fail(format!(
                "{}: structure sheaf self-pairing {} != {}",
                g.name, checks.structure_sheaf_self_pairing, expected_self
            ));
        }
        let euler = gamma::euler_number(&g.sphere, &g.model).map_err(|e| e.to_string())?;
        if euler != Rat::from(Int::from(g.euler)) {
            return fail(format!("{}: Euler number {} != {}", g.name, euler, g.euler));
        }
    }
    Ok(())
}

fn criterion_08_positivity_sweep() -> Result<(), String> {
    for g in goldens() {
        let data = plh::build_plh(&g.sphere, &g.model).map_err(|e| e.to_string())?;
        let lattice =
            gamma::build_gamma_lattice(&g.sphere, &g.model).map_err(|e| e.to_string())?;
        let reports = data
            .positivity_sweep(&lattice.numeric_rows(), &[5.0, 10.0, 20.0], 1e-9)
            .map_err(|e| format!("{}: {e}", g.name))?;
        for report in &reports {
            if report.min_eigenvalue <= 1e-9 {
                return fail(format!(
                    "{}: smallest eigenvalue {} at y = {}",
                    g.name, report.min_eigenvalue, report.y
                ));
            }
            let total: usize = report.blocks.iter().map(|b| b.dim).sum();
            if total != data.total_dim() {
                return fail(format!(
                    "{}: Hodge blocks at y = {} cover {total} of {} dimensions",
                    g.name,
                    report.y,
                    data.total_dim()
                ));
            }
        }
    }
    Ok(())
}

fn criterion_09_choice_independence() -> Result<(), String> {
    let seeds = [7u64, 1312, 271828];
    let instances: Vec<(&str, Fan)> = vec![
        ("quartic", p3()),
        ("cube", octahedron()),
        ("quintic", p4()),
        ("cross4", cross4()),
    ];
    let mut tropical_count = 0usize;
    let mut toric_count = 0usize;
    for (name, fan) in &instances {
        let h = PlFunction::constant_one(fan.rays().len());
        let sphere = build_sphere(fan, &h).map_err(|e| e.to_string())?;
        let model = ToricModel::new(fan).map_err(|e| e.to_string())?;
        let d = sphere.dim();
        let ray_ids: Vec<usize> = (0..fan.rays().len()).collect();
        for rays in ray_ids.iter().copied().combinations_with_replacement(d) {
            tropical_count += 1;
            let reference = radiance::tropical_intersection_number(&sphere, &rays)
                .map_err(|e| format!("{name}: {e}"))?;
            for &seed in &seeds {
                let mut choices = SeededChoice::new(seed);
                let value =
                    radiance::tropical_intersection_number_with(&sphere, &rays, &mut choices)
                        .map_err(|e| format!("{name}: {e}"))?;
                if value != reference {
                    return fail(format!(
                        "{name}: tropical number at {rays:?} changed under seed {seed}: {value} != {reference}"
                    ));
                }
            }
        }
        for rays in ray_ids.iter().copied().combinations_with_replacement(d + 1) {
            toric_count += 1;
            let reference =
                model.intersection_number(&rays).map_err(|e| format!("{name}: {e}"))?;
            for &seed in &seeds {
                let mut choices = SeededChoice::new(seed);
                let value = model
                    .intersection_number_with(&rays, &mut choices)
                    .map_err(|e| format!("{name}: {e}"))?;
                if value != reference {
                    return fail(format!(
                        "{name}: toric number at {rays:?} changed under seed {seed}: {value} != {reference}"
                    ));
                }
            }
        }
    }
    if tropical_count < 100 || toric_count < 100 {
        return fail(format!(
            "only {tropical_count} tropical and {toric_count} toric multisets tested"
        ));
    }
    Ok(())
}

fn criterion_10_determinism() -> Result<(), String> {
    let binary = env!("CARGO_BIN_EXE_tropical-period");
    for name in ["cubic.json", "quartic.json", "cube.json"] {
        let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("instances").join(name);
        let mut reports = Vec::new();
        for _ in 0..2 {
            let output = Command::new(binary)
                .arg("--input")
                .arg(&path)
                .output()
                .map_err(|e| format!("{name}: cannot run binary: {e}"))?;
            if output.status.code() != Some(0) {
                return fail(format!(
                    "{name}: exit {:?}: {}",
                    output.status.code(),
                    String::from_utf8_lossy(&output.stderr)
                ));
            }
            let mut report: serde_json::Value = serde_json::from_slice(&output.stdout)
                .map_err(|e| format!("{name}: bad JSON: {e}"))?;
            report.as_object_mut().unwrap().remove("timing_ms");
            reports.push(report);
        }
        if reports[0] != reports[1] {
            return fail(format!("{name}: reports differ between runs"));
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> Result<(), String>)> = vec![
        ("tropical-toric intersection equivalence", criterion_01_intersection_tables),
        ("vertex identity at every vertex", criterion_02_vertex_identity),
        ("radiance top powers and positivity", criterion_03_radiance_volumes),
        ("monodromy transports and invariants", criterion_04_monodromy_transports),
        ("simplicity of intermediate cells", criterion_05_simplicity),
        ("period structure and Hodge dimensions", criterion_06_period_structure),
        ("exact lattice checks", criterion_07_gamma_lattice),
        ("positivity sweep", criterion_08_positivity_sweep),
        ("reduction choice independence", criterion_09_choice_independence),
        ("deterministic reports", criterion_10_determinism),
    ];
    let mut all_passed = true;
    for (index, (label, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(()) => println!("criterion {:02} {label}: PASS", index + 1),
            Err(message) => {
                all_passed = false;
                println!("criterion {:02} {label}: FAIL ({message})", index + 1);
            }
        }
    }
    assert!(all_passed, "at least one acceptance criterion failed");
}
