//! Standard numerical runs on the degree-1 Minkowski system.

use nalgebra::{DMatrix, DVector};

use super::solver::{burgers_characteristics, evolve_linear, evolve_quasilinear, leapfrog_dt, Evolution, GridState, LinearSystem, SymbolF64};
use super::HyperbolicError;

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Smooth periodic data on `[0,1)` with `n` components.
pub fn plane_wave(n: usize) -> impl Fn(&[f64]) -> Vec<f64> {
    move |x: &[f64]| {
        (0..n)
            .map(|i| {
                let p = TAU * x[0];
                (i as f64 * 0.37).sin() * p.sin() + (i as f64 * 0.11).cos() * (2.0 * p).cos()
            })
            .collect()
    }
}

/// Leapfrog run in the 1+1 reduction from [`plane_wave`] data.
pub fn leapfrog_run(sym: &SymbolF64, n: usize, cfl: f64, steps: usize, keep_history: bool) -> Result<Evolution, HyperbolicError> {
    let sys = LinearSystem::from_symbol(sym, 1)?;
    let init = GridState::from_fn(n, 1, sys.ncomp(), plane_wave(sys.ncomp()));
    let dt = leapfrog_dt(&sys, n, cfl)?;
    evolve_linear(&sys, &init, dt, steps, None, None, keep_history)
}

/// L² error at `t = 1/2` for the manufactured solution `u = v sin(2πx) cos(2πt)`.
pub fn manufactured_error(sym: &SymbolF64, n: usize) -> Result<f64, HyperbolicError> {
    let sys = LinearSystem::from_symbol(sym, 1)?;
    let nc = sys.ncomp();
    let v: Vec<f64> = (0..nc).map(|i| 1.0 + 0.5 * (i as f64).sin()).collect();
    let exact = |t: f64, x: f64| -> Vec<f64> { v.iter().map(|c| c * (TAU * x).sin() * (TAU * t).cos()).collect() };
    let (a0, a1, c) = (sys.a0.clone(), sys.a[0].clone(), sys.c.clone());
    let vv = DVector::from_vec(v.clone());
    let forcing = move |t: f64, x: &[f64]| -> Vec<f64> {
        let ut = &vv * (-TAU * (TAU * x[0]).sin() * (TAU * t).sin());
        let ux = &vv * (TAU * (TAU * x[0]).cos() * (TAU * t).cos());
        let u = &vv * ((TAU * x[0]).sin() * (TAU * t).cos());
        (&a0 * ut + &a1 * ux + &c * u).as_slice().to_vec()
    };
    let t_final = 0.5;
    let dt0 = leapfrog_dt(&sys, n, 0.4)?;
    let steps = (t_final / dt0).ceil() as usize;
    let dt = t_final / steps as f64;
    let init = GridState::from_fn(n, 1, nc, |x| exact(0.0, x[0]));
    let second = GridState::from_fn(n, 1, nc, |x| exact(dt, x[0]));
    let ev = evolve_linear(&sys, &init, dt, steps, Some(&forcing), Some(&second), false)?;
    let ex = GridState::from_fn(n, 1, nc, |x| exact(t_final, x[0]));
    Ok(ev.state.l2(Some(&ex.u)))
}

/// Errors on `n` and `2n` cells and their ratio.
pub fn convergence_ratio(sym: &SymbolF64, n: usize) -> Result<(f64, f64, f64), HyperbolicError> {
    let e1 = manufactured_error(sym, n)?;
    let e2 = manufactured_error(sym, 2 * n)?;
    Ok((e1, e2, e1 / e2))
}

/// Max deviation of inviscid Burgers `u_t + u u_x = 0`, `u₀ = ε sin 2πx`,
/// from the characteristics solution at `t_final` (before breaking at `1/(2πε)`).
pub fn burgers_error(eps: f64, n: usize, t_final: f64, steps: usize) -> Result<f64, HyperbolicError> {
    let u0 = move |x: f64| eps * (TAU * x).sin();
    let du0 = move |x: f64| eps * TAU * (TAU * x).cos();
    let coeffs = |_: &[f64], u: &[f64]| (DMatrix::from_element(1, 1, 1.0), vec![DMatrix::from_element(1, 1, u[0])]);
    let source = |_: &[f64], _: &[f64]| vec![0.0];
    let init = GridState::from_fn(n, 1, 1, |x| vec![u0(x[0])]);
    let out = evolve_quasilinear(&coeffs, &source, &init, t_final / steps as f64, steps, 0.5)?;
    Ok((0..n).map(|c| (out.u[c] - burgers_characteristics(&u0, &du0, t_final, out.position(c)[0])).abs()).fold(0.0f64, f64::max))
}
