use super::*;
use crate::gauge::{build_b, HermForm};
use crate::glaoid::x_mink;
use std::sync::OnceLock;

fn setup() -> &'static (GaugeBuilder, GaugeData) {
    static S: OnceLock<(GaugeBuilder, GaugeData)> = OnceLock::new();
    S.get_or_init(|| {
        let gb = GaugeBuilder::new().unwrap();
        let g = gb.build_gauge(&build_b(&HermForm::identity()).unwrap()).unwrap();
        (gb, g)
    })
}

#[test]
fn minkowski_symbols_are_symmetric_hyperbolic() {
    let (gb, g) = setup();
    let x = x_mink::<Q>();
    for (k, n) in [(0, 11), (1, 33), (2, 23), (3, 5)] {
        let sys = assemble_symbol(gb, g, &x, k).unwrap();
        assert_eq!(sys.size(), n);
        assert!(sys.is_symmetric());
        assert!(sys.a0_positive());
    }
}

#[test]
fn zeroth_order_part_at_degree_zero() {
    // [θ_μ∂̂_μ, 1⊗σ] = −Σ_μ σ(θ_μ) ⊗ ∂̂_μ for constant σ; ∂̂ generators give 0.
    let (gb, g) = setup();
    let sys = assemble_symbol(gb, g, &x_mink::<Q>(), 0).unwrap();
    for (n, e) in g.eg[0].iter().enumerate() {
        let mut dx = LElement::<Q>::zero();
        for (gen, coef) in e.iter().enumerate() {
            if Field::is_zero(coef) || gen < 4 {
                continue;
            }
            let m = crate::frames::sigma_matrix(gen);
            for mu in 0..4 {
                for j in 0..4 {
                    if m[j][mu] != 0 {
                        dx.c[lidx(1 << j, mu)] -= coef * q(m[j][mu]);
                    }
                }
            }
        }
        let y = gb.ideal.e_coords(1, &dx);
        for i in 0..sys.size() {
            let expect = g.bk[0][i].iter().zip(&y).fold(q(0), |a, (b, v)| a + b * v);
            assert_eq!(sys.c[i][n], expect);
        }
    }
    assert!(sys.c.iter().flatten().any(|v| !Field::is_zero(v)));
}

#[test]
fn scaled_frame_scales_symbol() {
    let (gb, g) = setup();
    let x = x_mink::<Q>();
    let x2 = x.scale(&q(2));
    for k in 0..4 {
        let s1 = assemble_symbol(gb, g, &x, k).unwrap();
        let s2 = assemble_symbol(gb, g, &x2, k).unwrap();
        for mu in 0..4 {
            let doubled: Mat<Q> = s1.a[mu].iter().map(|r| r.iter().map(|v| v * q(2)).collect()).collect();
            assert_eq!(s2.a[mu], doubled);
        }
        assert!(s2.is_symmetric() && s2.a0_positive());
    }
}

#[test]
fn degenerate_frame_is_rejected() {
    let (gb, g) = setup();
    let x = LElement::<Q>::basis(1, 0);
    assert_eq!(assemble_symbol(gb, g, &x, 1), Err(HyperbolicError::Degenerate));
}

fn rotated_mink() -> LElement<Scalar> {
    // θ₁ ↦ (3θ₁ + 4θ₂)/5, θ₂ ↦ (−4θ₁ + 3θ₂)/5
    let mut x = x_mink::<Scalar>();
    for (mu, nu, v) in [(1, 1, qf(3, 5)), (2, 1, qf(4, 5)), (1, 2, qf(-4, 5)), (2, 2, qf(3, 5))] {
        x.c[lidx(1 << mu, nu)] = Scalar::constant(v);
    }
    x
}

#[test]
fn global_hyperbolicity_samples() {
    assert!(check_global_hyperbolicity(&x_mink::<Scalar>()));
    assert!(check_global_hyperbolicity(&rotated_mink()));
    let mut swapped = LElement::<Scalar>::zero();
    for (mu, nu) in [(1, 0), (0, 1), (2, 2), (3, 3)] {
        swapped.c[lidx(1 << mu, nu)] = Scalar::one();
    }
    assert!(!check_global_hyperbolicity(&swapped));
}

#[test]
fn symbol_identity_on_random_functions() {
    let (gb, g) = setup();
    let mut curved = x_mink::<Scalar>();
    curved.c[lidx(1, 1)] = Scalar::var(1).scale_q(&qf(1, 4));
    curved.c[lidx(1 << 2, 8)] = Scalar::var(0);
    for (i, x) in [x_mink::<Scalar>(), curved].iter().enumerate() {
        for k in 0..4 {
            let trials = 13;
            assert_eq!(symbol_identity_trials(gb, g, x, k, trials, 100 + k as u64 + 10 * i as u64).unwrap(), trials);
        }
    }
}

#[test]
fn first_order_property() {
    let (gb, g) = setup();
    let x = x_mink::<Scalar>();
    let sys = assemble_symbol(gb, g, &x, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..5 {
        let f = random_poly(&mut rng);
        let n = rng.gen_range(0..sys.size());
        let mut u = vec![Scalar::zero(); sys.size()];
        u[n] = Scalar::one();
        let fu: Vec<Scalar> = u.iter().map(|v| v.clone() * f.clone()).collect();
        let lhs: Vec<Scalar> = apply_l(gb, g, &x, 1, &fu)
            .into_iter()
            .zip(apply_l(gb, g, &x, 1, &u))
            .map(|(a, b)| a - f.clone() * b)
            .collect();
        // J_f(e_n) = Σ_ν ∂_ν f · A^ν e_n
        let rhs: Vec<Scalar> = (0..sys.size())
            .map(|i| (0..4).fold(Scalar::zero(), |acc, nu| acc + f.partial(nu) * sys.a[nu][i][n].clone()))
            .collect();
        assert_eq!(lhs, rhs);
    }
}

fn k1_symbol() -> SymbolF64 {
    let (gb, g) = setup();
    assemble_symbol(gb, g, &x_mink::<Q>(), 1).unwrap().to_f64()
}

#[test]
fn leapfrog_conserves_energy() {
    let ev = scenarios::leapfrog_run(&k1_symbol().principal(), 256, 0.4, 1000, false).unwrap();
    assert!(ev.relative_drift() <= 1e-10, "drift {}", ev.relative_drift());
    assert!(ev.state.l2(None) > 0.1);
}

#[test]
fn zero_data_stays_zero() {
    let sys = LinearSystem::from_symbol(&k1_symbol(), 2).unwrap();
    let init = GridState::zeros(8, 2, sys.ncomp());
    let dt = leapfrog_dt(&sys, 8, 0.4).unwrap();
    let ev = evolve_linear(&sys, &init, dt, 20, None, None, false).unwrap();
    assert!(ev.state.u.iter().all(|v| *v == 0.0));
}

#[test]
fn cfl_violation_is_reported() {
    let sys = LinearSystem::from_symbol(&k1_symbol(), 1).unwrap();
    let init = GridState::zeros(16, 1, sys.ncomp());
    assert!(matches!(leapfrog_dt(&sys, 16, 1.5), Err(HyperbolicError::CflViolation(..))));
    let dt = 2.0 / (16.0 * sys.speed());
    assert!(matches!(evolve_linear(&sys, &init, dt, 1, None, None, false), Err(HyperbolicError::CflViolation(..))));
}

#[test]
fn manufactured_solution_converges_at_second_order() {
    let sym = k1_symbol();
    let (e1, e2, ratio) = scenarios::convergence_ratio(&sym, 64).unwrap();
    assert!((ratio - 4.0).abs() <= 0.3, "ratio {ratio} ({e1}, {e2})");
}

#[test]
fn homotopy_residual_converges() {
    let sys = LinearSystem::from_symbol(&k1_symbol(), 1).unwrap();
    let nc = sys.ncomp();
    let zero = |_: f64, _: &[f64]| vec![0.0; nc];
    let h = discrete_homotopy(&sys, 32, 0.4, 0.25, &zero).unwrap();
    assert!(h.evolution.state.u.iter().all(|v| *v == 0.0));
    let r = move |t: f64, x: &[f64]| -> Vec<f64> {
        (0..nc).map(|i| (2.0 * std::f64::consts::PI * (x[0] + 0.1 * i as f64)).sin() * (t * 3.0).cos()).collect()
    };
    let h1 = discrete_homotopy(&sys, 64, 0.4, 0.25, &r).unwrap();
    let h2 = discrete_homotopy(&sys, 128, 0.4, 0.25, &r).unwrap();
    let ratio = h1.residual / h2.residual;
    assert!(ratio > 3.0, "ratio {ratio} ({}, {})", h1.residual, h2.residual);
}

#[test]
fn burgers_matches_characteristics() {
    // breaking time 1/(ε·2π) ≈ 1.59
    let err = scenarios::burgers_error(0.1, 512, 0.8, 2000).unwrap();
    assert!(err <= 1e-3, "max error {err}");
}

#[test]
fn ode_case_matches_rk4() {
    let coeffs = |_: &[f64], u: &[f64]| (nalgebra::DMatrix::from_fn(2, 2, |i, j| if i == j { 1.0 + 0.1 * u[0] * u[0] } else { 0.0 }), vec![]);
    let source = |_: &[f64], u: &[f64]| vec![u[1], -u[0]];
    let init = GridState { n: 1, dims: 0, ncomp: 2, t: 0.0, u: vec![1.0, 0.0] };
    let out = evolve_quasilinear(&coeffs, &source, &init, 1e-3, 1000, 0.5).unwrap();
    let f = |u: [f64; 2]| {
        let m = 1.0 + 0.1 * u[0] * u[0];
        [u[1] / m, -u[0] / m]
    };
    let mut u = [1.0, 0.0];
    let h = 1e-4;
    for _ in 0..10000 {
        let k1 = f(u);
        let k2 = f([u[0] + 0.5 * h * k1[0], u[1] + 0.5 * h * k1[1]]);
        let k3 = f([u[0] + 0.5 * h * k2[0], u[1] + 0.5 * h * k2[1]]);
        let k4 = f([u[0] + h * k3[0], u[1] + h * k3[1]]);
        for i in 0..2 {
            u[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    assert!((out.u[0] - u[0]).abs() < 1e-7 && (out.u[1] - u[1]).abs() < 1e-7);
}

#[test]
fn positivity_loss_is_reported() {
    let coeffs = |_: &[f64], u: &[f64]| (nalgebra::DMatrix::from_element(1, 1, 1.0 - u[0]), vec![]);
    let source = |_: &[f64], _: &[f64]| vec![1.0];
    let init = GridState { n: 1, dims: 0, ncomp: 1, t: 0.0, u: vec![0.0] };
    assert!(matches!(evolve_quasilinear(&coeffs, &source, &init, 0.01, 200, 0.1), Err(HyperbolicError::PositivityLost(..))));
}
