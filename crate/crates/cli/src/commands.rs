use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use glagr::field::{q, q_from_str, q_to_string, Q};
use glagr::gauge::{build_b, sample_w_plus, w_to_string, GaugeBuilder, HermForm};
use glagr::glaoid::{x_mink, Ideal};
use glagr::hyperbolic::{assemble_symbol, evolve_linear, leapfrog_dt, scenarios, GridState, LinearSystem};
use glagr::mc::{
    abelian, endo_example, fiber_point, format_solution, frame_directions, gravity_fiber, homology, mc_recursion_with, rees_example, FiniteGLa,
    FreeSeriesGLa,
};
use glagr::ricci::{analyze, format_tensor2, ppwave_element};
use glagr::scalar::Scalar;
use glagr::suite::{run_suite, Config, ConfigError, REPORT_SCHEMA, REPORT_VERSION};

use crate::{Background, Cli, Command, McExample};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Suite(#[from] ConfigError),
    #[error("cannot read {0}: {1}")]
    Read(String, std::io::Error),
    #[error("cannot write {0}: {1}")]
    Write(String, std::io::Error),
    #[error("invalid input: {0}")]
    Input(String),
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Write(path.display().to_string(), e))
}

fn write_report(cli: &Cli, command: &str, passed: bool, body: Value) -> Result<(), CliError> {
    if let Some(path) = &cli.report {
        let v = json!({
            "schema": REPORT_SCHEMA,
            "version": REPORT_VERSION,
            "command": command,
            "seed": cli.seed,
            "passed": passed,
            "result": body,
        });
        write_file(path, &serde_json::to_string_pretty(&v).expect("json"))?;
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Result<bool, CliError> {
    match &cli.command {
        Command::Verify { samples, tamper_ideal } => suite(cli, cli.only.clone(), *samples, *tamper_ideal),
        Command::Ranks => {
            let only = if cli.only.is_empty() { vec!["ranks".to_string()] } else { cli.only.clone() };
            suite(cli, only, 50, false)
        }
        Command::Gauge { h: _, h_file, random_seed } => gauge(cli, h_file.as_deref(), *random_seed),
        Command::Evolve { degree, dims, grid, cfl, steps, lower_order, csv } => evolve(cli, *degree, *dims, *grid, *cfl, *steps, *lower_order, csv.as_deref()),
        Command::Mc { order, example, xi, allow_obstructed } => mc(cli, *order, *example, xi.as_deref(), *allow_obstructed),
        Command::Ricci { background, h } => ricci(cli, *background, h),
    }
}

fn suite(cli: &Cli, only: Vec<String>, samples: usize, tamper_ideal: bool) -> Result<bool, CliError> {
    let report = run_suite(Config { seed: cli.seed, samples, only, tamper_ideal })?;
    print!("{}", report.table());
    if let Some(path) = &cli.report {
        write_file(path, &report.to_json())?;
    }
    Ok(report.all_passed())
}

fn gauge(cli: &Cli, h_file: Option<&Path>, random_seed: Option<u64>) -> Result<bool, CliError> {
    let (h, source) = match (h_file, random_seed) {
        (Some(p), _) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Read(p.display().to_string(), e))?;
            (HermForm::from_json(&text).map_err(|e| CliError::Input(e.to_string()))?, format!("file {}", p.display()))
        }
        (None, Some(s)) => (HermForm::random_positive(s), format!("random seed {s}")),
        (None, None) => (HermForm::identity(), "identity".to_string()),
    };
    let b = build_b(&h).map_err(|e| CliError::Input(e.to_string()))?;
    let gb = GaugeBuilder::new().map_err(|e| CliError::Input(e.to_string()))?;
    let mut ok = b.is_symmetric() && b.is_odd();
    println!("h: {source}");
    println!("b_h odd and symmetric: {ok}");
    let ws = sample_w_plus(cli.seed);
    let mut positivity = Vec::new();
    for w in &ws {
        let minors = b.w_minors(w);
        let bad = minors.iter().position(|d| *d <= q(0));
        println!("b_h(−, w−) at w = {}: {}", w_to_string(w), bad.map_or("positive definite".to_string(), |i| format!("minor {} not positive", i + 1)));
        ok &= bad.is_none();
        positivity.push(json!({ "w": w_to_string(w), "first_nonpositive_minor": bad.map(|i| i + 1) }));
    }
    let g = match gb.build_gauge(&b) {
        Ok(g) => g,
        Err(e) => {
            println!("gauge construction failed: {e}");
            write_report(cli, "gauge", false, json!({ "h": source, "positivity": positivity, "error": e.to_string() }))?;
            return Ok(false);
        }
    };
    println!("E_G ranks: {:?}", g.eg_ranks());
    let mut degrees = Vec::new();
    for k in 0..=4 {
        let a = k < 4 && gb.check_a(&g, k);
        let c = k < 4 && gb.check_c(&g, k);
        let b_pos: Vec<bool> = if k < 4 { ws.iter().map(|w| gb.check_b(&g, k, w).is_ok()).collect() } else { Vec::new() };
        let split: Vec<bool> = ws.iter().map(|w| gb.check_split(&g, k, w)).collect();
        let good = (k == 4 || (a && c && b_pos.iter().all(|x| *x))) && split.iter().all(|x| *x);
        ok &= good;
        if k < 4 {
            println!("k = {k}: (a) {a}  (b) {b_pos:?}  (c) {c}  split {split:?}");
        } else {
            println!("k = {k}: split {split:?}");
        }
        degrees.push(if k < 4 { json!({ "k": k, "a": a, "b": b_pos, "c": c, "split": split }) } else { json!({ "k": k, "split": split }) });
    }
    let strings = |m: &Vec<Vec<Q>>| -> Vec<Vec<String>> { m.iter().map(|r| r.iter().map(q_to_string).collect()).collect() };
    let data = json!({
        "e_ranks": g.e_ranks,
        "eg_ranks": g.eg_ranks(),
        "eg_bases": g.eg.iter().map(strings).collect::<Vec<_>>(),
        "b_k": g.bk.iter().map(strings).collect::<Vec<_>>(),
    });
    write_report(cli, "gauge", ok, json!({ "h": source, "positivity": positivity, "degrees": degrees, "gauge": data }))?;
    Ok(ok)
}

#[allow(clippy::too_many_arguments)]
fn evolve(cli: &Cli, degree: usize, dims: usize, grid: usize, cfl: f64, steps: usize, lower_order: bool, csv: Option<&Path>) -> Result<bool, CliError> {
    if degree > 3 {
        return Err(CliError::Input(format!("degree must be 0..3, got {degree}")));
    }
    let gb = GaugeBuilder::new().map_err(|e| CliError::Input(e.to_string()))?;
    let g = gb.build_gauge(&build_b(&HermForm::identity()).expect("identity form")).map_err(|e| CliError::Input(e.to_string()))?;
    let sym = assemble_symbol(&gb, &g, &x_mink::<Q>(), degree).map_err(|e| CliError::Input(e.to_string()))?.to_f64();
    let sym = if lower_order { sym } else { sym.principal() };
    let sys = LinearSystem::from_symbol(&sym, dims).map_err(|e| CliError::Input(e.to_string()))?;
    let dt = leapfrog_dt(&sys, grid, cfl).map_err(|e| CliError::Input(e.to_string()))?;
    let init = GridState::from_fn(grid, dims, sys.ncomp(), scenarios::plane_wave(sys.ncomp()));
    let ev = evolve_linear(&sys, &init, dt, steps, None, None, false).map_err(|e| CliError::Input(e.to_string()))?;
    let drift = ev.relative_drift();
    let ok = drift.is_finite() && (lower_order || drift <= 1e-10);
    println!("degree {degree}, {dims} space dims, {grid} cells per dim, {} components", sys.ncomp());
    println!("dt = {dt:.6e}, steps = {steps}, lower order = {lower_order}");
    println!("relative drift of the leapfrog energy: {drift:.3e}");
    if let Some(p) = csv {
        write_file(p, &ev.energy_csv())?;
    }
    write_report(
        cli,
        "evolve",
        ok,
        json!({ "degree": degree, "dims": dims, "grid": grid, "cfl": cfl, "steps": steps, "dt": dt, "lower_order": lower_order,
                "components": sys.ncomp(), "relative_drift": drift, "final_energy": ev.energy.last() }),
    )?;
    Ok(ok)
}

fn parse_xi(text: &str) -> Result<Vec<Q>, CliError> {
    text.split(',').map(|s| q_from_str(s.trim()).ok_or_else(|| CliError::Input(format!("not a rational: {s:?}")))).collect()
}

fn mc(cli: &Cli, order: usize, example: McExample, xi: Option<&str>, allow_obstructed: bool) -> Result<bool, CliError> {
    let kmax = order + 2;
    let mut frame_mask = None;
    let (p, x0): (FreeSeriesGLa, Vec<Q>) = match example {
        McExample::Abelian => {
            let g: FiniteGLa = abelian(&[(0, 1), (1, 2)]);
            let x0 = vec![q(0); g.dim()];
            (FreeSeriesGLa::plain(&g, kmax), x0)
        }
        McExample::Endo => {
            let (g, x0) = endo_example();
            (FreeSeriesGLa::plain(&g, kmax), x0)
        }
        McExample::Rees => rees_example(kmax).map_err(|e| CliError::Input(e.to_string()))?,
        McExample::GravityFiber => {
            let (g, coords) = gravity_fiber(&Ideal::standard());
            let x0 = fiber_point(&coords, &x_mink());
            if allow_obstructed {
                frame_mask = Some(frame_directions(&g, &coords, &x0));
            }
            (FreeSeriesGLa::plain(&g, kmax), x0)
        }
    };
    let hom = homology(&p.reduction(), &x0).map_err(|e| CliError::Input(e.to_string()))?;
    println!("homology dims: {:?}", hom.dims.iter().map(|d| d.1).collect::<Vec<_>>());
    let n1 = hom.dim(1);
    let xi = match xi {
        Some(t) => {
            let v = parse_xi(t)?;
            if v.len() != n1 {
                return Err(CliError::Input(format!("expected {n1} coordinates for xi, got {}", v.len())));
            }
            v
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            (0..n1)
                .map(|i| if frame_mask.as_ref().is_some_and(|m| !m[i]) { q(0) } else { Q::new(rng.gen_range(-4..=4).into(), rng.gen_range(1..=3).into()) })
                .collect()
        }
    };
    println!("xi: [{}]", xi.iter().map(q_to_string).collect::<Vec<_>>().join(", "));
    match mc_recursion_with(&p, &x0, &xi, order, !allow_obstructed) {
        Ok(sol) => {
            for c in &sol.clauses {
                println!("K = {}: A {}  B {}  C {}", c.k, c.a, c.b, c.c);
            }
            for (k, ok) in sol.residual_ok.iter().enumerate() {
                println!("[Ξ≤{k}, Ξ≤{k}] ≡ 0 mod s^{}: {ok}", k + 1);
            }
            let ok = sol.all_ok();
            let coeffs: Vec<Value> = format_solution(&sol).into_iter().map(|c| json!(c)).collect();
            write_report(cli, "mc", ok, json!({ "order": order, "xi": xi.iter().map(q_to_string).collect::<Vec<_>>(), "clauses": sol.clauses, "residual_ok": sol.residual_ok, "coefficients": coeffs }))?;
            Ok(ok)
        }
        Err(e) => {
            println!("recursion failed: {e}");
            write_report(cli, "mc", false, json!({ "order": order, "error": e.to_string() }))?;
            Ok(false)
        }
    }
}

fn ricci(cli: &Cli, background: Background, h: &str) -> Result<bool, CliError> {
    let x = match background {
        Background::Minkowski => x_mink::<Q>().map(|v| Scalar::constant(v.clone())),
        Background::Ppwave => {
            let hs: Scalar = h.parse().map_err(|e| CliError::Input(format!("H: {e}")))?;
            ppwave_element(&hs).map_err(|e| CliError::Input(e.to_string()))?
        }
    };
    let r = analyze(&x, &Ideal::standard()).map_err(|e| CliError::Input(e.to_string()))?;
    let parallel = r.parallel.is_some();
    println!("mc_defect = 0: {}", r.mc_defect_zero);
    println!("torsion = 0: {}", r.torsion_zero);
    println!("∇g = A⊗g: {}", r.compatible);
    println!("parallel metric found: {parallel}");
    println!("Ricci = 0: {}", r.ricci_zero());
    for (i, j, v) in format_tensor2(&r.ricci) {
        println!("  Ric[{i}][{j}] = {v}");
    }
    let ok = r.mc_defect_zero && r.torsion_zero && parallel && r.ricci_zero();
    let metric = r.parallel.as_ref().map(format_tensor2);
    write_report(
        cli,
        "ricci",
        ok,
        json!({ "background": format!("{background:?}").to_lowercase(), "H": h, "mc_defect_zero": r.mc_defect_zero, "torsion_zero": r.torsion_zero,
                "compatible": r.compatible, "parallel_metric": metric, "ricci": format_tensor2(&r.ricci) }),
    )?;
    Ok(ok)
}
