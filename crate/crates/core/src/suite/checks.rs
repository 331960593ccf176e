use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::sampling::{random_combination, random_element, random_form, random_lorentz, transformed_generators};
use super::{CheckDef, Context, Outcome};
use crate::clifford::{clifford_group, grade, invariant_average, invariant_average_with};
use crate::frames::NGEN;
use crate::field::{q, qf, q_to_string, Field, Q};
use crate::gauge::{b_map_rank, build_b, sample_w_plus, w_to_string, HermForm};
use crate::glaoid::{lidx, x_mink, LElement};
use crate::hyperbolic::{assemble_symbol, scenarios, symbol_identity_trials};
use crate::mc::{
    endo_example, fiber_point, frame_directions, gravity_fiber, homology, mc_recursion, mc_recursion_with, rees_example, FreeSeriesGLa, McSolution,
};
use crate::ricci::{analyze, minkowski_eta, ppwave_element, ppwave_metric, rescaled_minkowski, BackgroundReport};
use crate::scalar::Scalar;
use crate::slashed::{auxiliary_table, Slashed};

macro_rules! check {
    ($name:expr, $crit:expr, $desc:expr, $f:expr) => {
        CheckDef { name: $name, criterion: $crit, description: $desc, run: $f }
    };
}

pub fn all() -> Vec<CheckDef> {
    vec![
        check!("ranks.ideal", 1, "I has ranks (10,16,6) in degrees 2..4", ranks_ideal),
        check!("ranks.slashed_l", 1, "L̸ filtration ranks (11,44,77,88,88)", ranks_slashed_l),
        check!("ranks.slashed_p", 1, "P̸ filtration ranks (21,48,67,72,72)", ranks_slashed_p),
        check!("ranks.slashed_ideal", 1, "I̸ filtration ranks (0,0,10,16,16), total 32", ranks_slashed_ideal),
        check!("ranks.auxiliary", 1, "auxiliary table (6,24,42,48,48)/(16,28,32,32,32)", ranks_auxiliary),
        check!("ranks.hermitian_map", 1, "h ↦ b_h has rank 324", ranks_hermitian_map),
        check!("ranks.clifford_group", 1, "finite Clifford group has order 32", ranks_clifford_group),
        check!("identities.jacobi", 2, "graded Jacobi identity for L", identities_jacobi),
        check!("identities.anchor_morphism", 2, "anchor is a morphism of graded Lie algebras", identities_anchor),
        check!("identities.ideal_closed", 2, "[L, I] ⊂ I", identities_ideal_closed),
        check!("identities.average_idempotent", 2, "π² = π", identities_average_idempotent),
        check!("identities.average_independent", 2, "π does not depend on the generators", identities_average_independent),
        check!("identities.hermitian_symmetry", 2, "b_h is odd, symmetric, and b_h(−,w−) symmetric", identities_hermitian_symmetry),
        check!("identities.gauge_a", 2, "gauge condition (a): B^k(−,θ_μ−) symmetric", identities_gauge_a),
        check!("identities.gauge_c", 2, "gauge condition (c): E_G^{k+1} = B^k(E_G^k,−)^⊥", identities_gauge_c),
        check!("identities.gauge_split", 2, "E = E_G ⊕ wE_G for rational w ∈ W₊", identities_gauge_split),
        check!("identities.symbol", 2, "symbol identity K = p∘d∘incl", identities_symbol),
        check!("positivity.hermitian_identity", 3, "b_h(−,θ₀−) positive definite for h = 1", positivity_hermitian),
        check!("positivity.symbol_a0", 3, "A⁰ positive definite at x_mink, k = 0..3", positivity_symbol),
        check!("mc.synthetic", 4, "MC recursion on graded endomorphisms, K = 1..6", mc_synthetic),
        check!("mc.rees", 4, "MC recursion on a Rees algebra, K = 1..6", mc_rees),
        check!("mc.gravity_fiber", 4, "MC recursion on the gravity constant fiber, K = 1..6", mc_gravity),
        check!("mc.gravity_fiber_frames", 4, "frame-deformation classes of the gravity fiber, K = 1..6", mc_gravity_frames),
        check!("ricci.minkowski", 5, "Minkowski: MC, torsion-free, parallel, Ricci-flat", ricci_minkowski),
        check!("ricci.harmonic_ppwave", 5, "pp-wave with H = x1²−x2²: MC and Ricci-flat", ricci_harmonic),
        check!("ricci.nonharmonic_ppwave", 5, "pp-wave with H = x1²+x2²: neither MC nor Ricci-flat", ricci_nonharmonic),
        check!("ricci.conformal_rescale", 5, "rescaled Minkowski frame recovers the flat metric", ricci_conformal),
        check!("spinor.ideal", 6, "representation kernel equals I per degree", spinor_ideal),
        check!("pde.leapfrog_energy", 7, "leapfrog energy drift ≤ 1e−10 over 1000 steps", pde_leapfrog),
        check!("pde.manufactured_convergence", 7, "manufactured-solution error ratio 4.0 ± 0.3", pde_manufactured),
        check!("pde.burgers", 7, "Burgers matches characteristics to 1e−3", pde_burgers),
    ]
}

fn ranks_witness(got: &[usize], want: &[usize]) -> Outcome {
    Outcome::new(got == want, json!({ "ranks": got, "expected": want }))
}

fn ranks_ideal(ctx: &Context) -> Outcome {
    let r = ctx.ideal().ranks();
    ranks_witness(&r[2..], &[10, 16, 6])
}

fn slashed() -> Slashed {
    Slashed::build().expect("slashed construction")
}

fn ranks_slashed_l(_: &Context) -> Outcome {
    ranks_witness(&slashed().l_ranks(), &[11, 44, 77, 88, 88])
}

fn ranks_slashed_p(_: &Context) -> Outcome {
    ranks_witness(&slashed().p_ranks(), &[21, 48, 67, 72, 72])
}

fn ranks_slashed_ideal(_: &Context) -> Outcome {
    let sl = slashed();
    let r = sl.ideal_ranks();
    let total = sl.ideal_total_rank();
    Outcome::new(r == [0, 0, 10, 16, 16] && total == 32, json!({ "ranks": r, "total": total }))
}

fn ranks_auxiliary(_: &Context) -> Outcome {
    let t = auxiliary_table();
    let left: Vec<usize> = t.iter().map(|x| x.0).collect();
    let right: Vec<usize> = t.iter().map(|x| x.1).collect();
    let image: Vec<usize> = t.iter().map(|x| x.2).collect();
    Outcome::new(left == [6, 24, 42, 48, 48] && right == [16, 28, 32, 32, 32], json!({ "left": left, "right": right, "image": image }))
}

fn ranks_hermitian_map(_: &Context) -> Outcome {
    let r = b_map_rank();
    Outcome::new(r == 324, json!({ "rank": r }))
}

fn ranks_clifford_group(_: &Context) -> Outcome {
    let n = clifford_group().len();
    Outcome::new(n == 32, json!({ "order": n }))
}

fn rng(ctx: &Context, k: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(ctx.sub_seed(k))
}

/// Degrees `(a, b, c)` with `a + b + c ≤ 4`.
fn random_degrees(r: &mut ChaCha8Rng, n: usize, total: usize) -> Vec<usize> {
    loop {
        let d: Vec<usize> = (0..n).map(|_| r.gen_range(0..=total)).collect();
        if d.iter().sum::<usize>() <= total {
            return d;
        }
    }
}

fn sign(a: usize, b: usize) -> i64 {
    if a * b % 2 == 1 {
        -1
    } else {
        1
    }
}

fn identities_jacobi(ctx: &Context) -> Outcome {
    let mut r = rng(ctx, 1);
    let mut failures = Vec::new();
    for i in 0..ctx.config.samples {
        let d = random_degrees(&mut r, 3, 4);
        let (x, y, z) = (random_element(&mut r, d[0]), random_element(&mut r, d[1]), random_element(&mut r, d[2]));
        let lhs = x.bracket(&y.bracket(&z));
        let rhs = x.bracket(&y).bracket(&z) + y.bracket(&x.bracket(&z)).scale(&Scalar::from_i64(sign(d[0], d[1])));
        if lhs != rhs {
            failures.push(json!({ "instance": i, "degrees": d }));
        }
    }
    Outcome::sampled(failures.is_empty(), ctx.config.samples, json!({ "failures": failures }))
}

fn identities_anchor(ctx: &Context) -> Outcome {
    let mut r = rng(ctx, 2);
    let mut failures = Vec::new();
    for i in 0..ctx.config.samples {
        let d = random_degrees(&mut r, 2, 4);
        let (x, y, f) = (random_element(&mut r, d[0]), random_element(&mut r, d[1]), random_form(&mut r));
        let lhs = x.bracket(&y).anchor(&f);
        let yx = y.anchor(&x.anchor(&f));
        let rhs = x.anchor(&y.anchor(&f)) - if sign(d[0], d[1]) > 0 { yx } else { -yx };
        if lhs != rhs {
            failures.push(json!({ "instance": i, "degrees": d }));
        }
    }
    Outcome::sampled(failures.is_empty(), ctx.config.samples, json!({ "failures": failures }))
}

fn identities_ideal_closed(ctx: &Context) -> Outcome {
    let ideal = ctx.ideal();
    let mut r = rng(ctx, 3);
    let mut failures = Vec::new();
    for i in 0..ctx.config.samples {
        let di = r.gen_range(2..=4);
        let dx = r.gen_range(0..=4 - di);
        let x = random_element(&mut r, dx);
        let y = random_combination(&mut r, &ideal.parts[di].basis);
        let br = x.bracket(&y);
        let rest = ideal.reduce(&br);
        if !rest.is_zero() {
            let coords: Vec<(usize, String)> = rest.c.iter().enumerate().filter(|(_, v)| !v.is_zero()).take(4).map(|(j, v)| (j, v.to_string())).collect();
            failures.push(json!({ "instance": i, "degrees": [dx, di], "residue": coords }));
        }
    }
    let mut instances = ctx.config.samples;
    for di in 2..=4 {
        for (bi, b) in ideal.parts[di].basis.iter().enumerate() {
            let y = LElement { c: b.iter().map(|v| Scalar::constant(v.clone())).collect() };
            for mask in (0..16u8).filter(|m| grade(*m) + di <= 4) {
                for g in 0..NGEN {
                    for coeff in 0..5 {
                        let f = if coeff == 0 { Scalar::one() } else { Scalar::var(coeff - 1) };
                        let x = LElement::<Scalar>::basis(mask, g).scale(&f);
                        instances += 1;
                        if !ideal.reduce(&x.bracket(&y)).is_zero() {
                            failures.push(json!({ "generator": [mask, g, coeff], "ideal_basis": [di, bi] }));
                        }
                    }
                }
            }
        }
    }
    Outcome::sampled(failures.is_empty(), instances, json!({ "failures": failures.iter().take(5).collect::<Vec<_>>(), "failed": failures.len() }))
}

fn lorentz_json(l: &[[Q; 4]; 4]) -> serde_json::Value {
    json!(l.iter().map(|r| r.iter().map(q_to_string).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn identities_average_idempotent(ctx: &Context) -> Outcome {
    let mut r = rng(ctx, 4);
    let mut failures = Vec::new();
    let p = invariant_average();
    let mut ok = &p * &p == p && p.is_even();
    for i in 1..ctx.config.samples {
        let l = random_lorentz(&mut r);
        let pl = invariant_average_with(&transformed_generators(&l));
        if &pl * &pl != pl {
            ok = false;
            failures.push(json!({ "instance": i, "lorentz": lorentz_json(&l) }));
        }
    }
    Outcome::sampled(ok, ctx.config.samples, json!({ "failures": failures }))
}

fn identities_average_independent(ctx: &Context) -> Outcome {
    let mut r = rng(ctx, 5);
    let p = invariant_average();
    let mut failures = Vec::new();
    // the fixed rotation by (cos, sin) = (3/5, 4/5) in the θ₁θ₂ plane comes first
    let mut rot: [[Q; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| if i == j { q(1) } else { q(0) }));
    rot[1][1] = qf(3, 5);
    rot[2][2] = qf(3, 5);
    rot[1][2] = qf(-4, 5);
    rot[2][1] = qf(4, 5);
    for i in 0..ctx.config.samples {
        let l = if i == 0 { rot.clone() } else { random_lorentz(&mut r) };
        if invariant_average_with(&transformed_generators(&l)) != p {
            failures.push(json!({ "instance": i, "lorentz": lorentz_json(&l) }));
        }
    }
    Outcome::sampled(failures.is_empty(), ctx.config.samples, json!({ "failures": failures }))
}

fn identities_hermitian_symmetry(ctx: &Context) -> Outcome {
    let mut failures = Vec::new();
    let ws = sample_w_plus(ctx.sub_seed(6));
    for i in 0..ctx.config.samples {
        let h = HermForm::random_positive(ctx.sub_seed(1000 + i as u64));
        let b = match build_b(&h) {
            Ok(b) => b,
            Err(e) => {
                failures.push(json!({ "instance": i, "error": e.to_string() }));
                continue;
            }
        };
        let mut basis_w = (0..4).map(|mu| {
            let mut w = [q(0), q(0), q(0), q(0)];
            w[mu] = q(1);
            w
        });
        let ok = b.is_symmetric() && b.is_odd() && basis_w.all(|w| b.w_symmetric(&w)) && b.w_symmetric(&ws[i % ws.len()]);
        if !ok {
            failures.push(json!({ "instance": i }));
        }
    }
    Outcome::sampled(failures.is_empty(), ctx.config.samples, json!({ "failures": failures }))
}

fn gauge_condition(ctx: &Context, cond: impl Fn(&crate::gauge::GaugeData, usize) -> bool) -> Outcome {
    let mut failures = Vec::new();
    let mut ranks = std::collections::BTreeSet::new();
    for (i, g) in ctx.random_gauges().iter().enumerate() {
        match g {
            Ok(g) => {
                ranks.insert(g.eg_ranks());
                let bad: Vec<usize> = (0..4).filter(|&k| !cond(g, k)).collect();
                if !bad.is_empty() {
                    failures.push(json!({ "instance": i, "degrees": bad }));
                }
            }
            Err(e) => failures.push(json!({ "instance": i, "error": e })),
        }
    }
    let n = ctx.random_gauges().len();
    Outcome::sampled(failures.is_empty(), n, json!({ "failures": failures, "eg_ranks": ranks.into_iter().collect::<Vec<_>>() }))
}

fn identities_gauge_a(ctx: &Context) -> Outcome {
    let gb = &ctx.gauge().0;
    gauge_condition(ctx, |g, k| gb.check_a(g, k))
}

fn identities_gauge_c(ctx: &Context) -> Outcome {
    let gb = &ctx.gauge().0;
    gauge_condition(ctx, |g, k| gb.check_c(g, k))
}

fn identities_gauge_split(ctx: &Context) -> Outcome {
    let (gb, g0) = ctx.gauge();
    let ws = sample_w_plus(ctx.sub_seed(7));
    let mut failures = Vec::new();
    for w in &ws {
        if !(0..=4).all(|k| gb.check_split(g0, k, w)) {
            failures.push(json!({ "gauge": "identity", "w": w_to_string(w) }));
        }
    }
    let mut instances = ws.len();
    for (i, g) in ctx.random_gauges().iter().enumerate() {
        let w = &ws[i % ws.len()];
        instances += 1;
        match g {
            Ok(g) if (0..=4).all(|k| gb.check_split(g, k, w)) => {}
            Ok(_) => failures.push(json!({ "instance": i, "w": w_to_string(w) })),
            Err(e) => failures.push(json!({ "instance": i, "error": e })),
        }
    }
    let wj: Vec<String> = ws.iter().map(w_to_string).collect();
    Outcome::sampled(failures.is_empty(), instances, json!({ "w": wj, "failures": failures }))
}

fn curved_element() -> LElement<Scalar> {
    let mut curved = x_mink::<Scalar>();
    curved.c[lidx(1, 1)] = Scalar::var(1).scale_q(&qf(1, 4));
    curved.c[lidx(1 << 2, 8)] = Scalar::var(0);
    curved
}

fn identities_symbol(ctx: &Context) -> Outcome {
    let (gb, g) = ctx.gauge();
    let xs = [x_mink::<Scalar>(), curved_element()];
    let combos = xs.len() * 4;
    let per = ctx.config.samples.div_ceil(combos);
    let mut passed = 0;
    let mut failures = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        for k in 0..4 {
            match symbol_identity_trials(gb, g, x, k, per, ctx.sub_seed(100 + (i * 4 + k) as u64)) {
                Ok(n) if n == per => passed += n,
                Ok(n) => {
                    passed += n;
                    failures.push(json!({ "element": i, "degree": k, "passed": n, "trials": per }));
                }
                Err(e) => failures.push(json!({ "element": i, "degree": k, "error": e.to_string() })),
            }
        }
    }
    Outcome::sampled(failures.is_empty(), per * combos, json!({ "passed": passed, "failures": failures }))
}

fn positivity_hermitian(_: &Context) -> Outcome {
    let b = build_b(&HermForm::identity()).expect("identity form");
    let minors = b.w_minors(&[q(1), q(0), q(0), q(0)]);
    let bad = minors.iter().position(|d| *d <= q(0));
    let smallest = minors.iter().min().map(q_to_string);
    Outcome::new(minors.len() == 144 && bad.is_none(), json!({ "size": minors.len(), "first_nonpositive": bad, "smallest_minor": smallest }))
}

fn positivity_symbol(ctx: &Context) -> Outcome {
    let (gb, g) = ctx.gauge();
    let mut ok = true;
    let mut per = Vec::new();
    for k in 0..4 {
        match assemble_symbol(gb, g, &x_mink::<Q>(), k) {
            Ok(sys) => {
                let pos = sys.a0_positive();
                ok &= pos && sys.is_symmetric();
                per.push(json!({ "degree": k, "size": sys.size(), "positive": pos, "symmetric": sys.is_symmetric() }));
            }
            Err(e) => {
                ok = false;
                per.push(json!({ "degree": k, "error": e.to_string() }));
            }
        }
    }
    Outcome::new(ok, json!({ "degrees": per }))
}

fn solution_witness(sol: &McSolution) -> serde_json::Value {
    json!({
        "residual_ok": sol.residual_ok,
        "clauses": sol.clauses,
    })
}

fn random_xi(r: &mut ChaCha8Rng, n: usize) -> Vec<Q> {
    (0..n).map(|_| qf(r.gen_range(-4..=4), r.gen_range(1..=3))).collect()
}

fn run_recursions(ctx: &Context, p: &FreeSeriesGLa, x0: &[Q], n_xi: usize, seed: u64) -> Outcome {
    let mut r = rng(ctx, seed);
    let mut runs = Vec::new();
    let mut ok = true;
    for _ in 0..5 {
        let xi = random_xi(&mut r, n_xi);
        for order in 1..=6 {
            match mc_recursion(p, x0, &xi, order) {
                Ok(sol) => {
                    let good = sol.all_ok() && sol.clauses.len() == order + 1;
                    ok &= good;
                    if order == 6 || !good {
                        runs.push(json!({ "xi": xi.iter().map(q_to_string).collect::<Vec<_>>(), "order": order, "ok": good, "solution": solution_witness(&sol) }));
                    }
                }
                Err(e) => {
                    ok = false;
                    runs.push(json!({ "order": order, "error": e.to_string() }));
                }
            }
        }
    }
    Outcome::sampled(ok, 5, json!({ "runs": runs }))
}

fn mc_synthetic(ctx: &Context) -> Outcome {
    let (g, x0) = endo_example();
    let h = homology(&g, &x0).expect("homology");
    run_recursions(ctx, &FreeSeriesGLa::plain(&g, 8), &x0, h.dim(1), 20)
}

fn mc_rees(ctx: &Context) -> Outcome {
    let (p, x0) = rees_example(8).expect("rees algebra");
    let h = homology(&p.reduction(), &x0).expect("homology");
    run_recursions(ctx, &p, &x0, h.dim(1), 21)
}

fn gravity_setup(ctx: &Context) -> (crate::mc::FiniteGLa, Vec<usize>, Vec<Q>) {
    let (g, coords) = gravity_fiber(ctx.ideal());
    let x0 = fiber_point(&coords, &x_mink());
    (g, coords, x0)
}

fn mc_gravity(ctx: &Context) -> Outcome {
    let (g, _, x0) = gravity_setup(ctx);
    let hom = match homology(&g, &x0) {
        Ok(h) => h,
        Err(e) => return Outcome::new(false, json!({ "error": e.to_string() })),
    };
    let p = FreeSeriesGLa::plain(&g, 8);
    let mut r = rng(ctx, 22);
    let xi = random_xi(&mut r, hom.dim(1));
    let dims: Vec<usize> = hom.dims.iter().map(|d| d.1).collect();
    match mc_recursion(&p, &x0, &xi, 6) {
        Ok(sol) => Outcome::new(sol.all_ok(), json!({ "homology": dims, "solution": solution_witness(&sol) })),
        Err(e) => Outcome::new(false, json!({ "homology": dims, "error": e.to_string() })),
    }
}

fn mc_gravity_frames(ctx: &Context) -> Outcome {
    let (g, coords, x0) = gravity_setup(ctx);
    let p = FreeSeriesGLa::plain(&g, 8);
    let mask = frame_directions(&g, &coords, &x0);
    let mut r = rng(ctx, 23);
    let mut ok = true;
    let mut runs = Vec::new();
    for _ in 0..3 {
        let xi: Vec<Q> = mask.iter().map(|&f| if f { q(r.gen_range(-3..=3)) } else { q(0) }).collect();
        match mc_recursion_with(&p, &x0, &xi, 6, false) {
            Ok(sol) => {
                ok &= sol.all_ok();
                runs.push(solution_witness(&sol));
            }
            Err(e) => {
                ok = false;
                runs.push(json!({ "error": e.to_string() }));
            }
        }
    }
    Outcome::sampled(ok, 3, json!({ "frame_classes": mask.iter().filter(|f| **f).count(), "runs": runs }))
}

fn background_witness(r: &BackgroundReport) -> serde_json::Value {
    json!({
        "mc_defect_zero": r.mc_defect_zero,
        "torsion_zero": r.torsion_zero,
        "conformally_compatible": r.compatible,
        "parallel_metric": r.parallel.is_some(),
        "ricci": crate::ricci::format_tensor2(&r.ricci),
    })
}

fn flat_background(ctx: &Context, x: Result<LElement<Scalar>, crate::ricci::RicciError>, metric: Option<Vec<Vec<Scalar>>>) -> Outcome {
    let x = match x {
        Ok(x) => x,
        Err(e) => return Outcome::new(false, json!({ "error": e.to_string() })),
    };
    match analyze(&x, ctx.ideal()) {
        Ok(r) => {
            let metric_ok = metric.map_or(true, |m| r.parallel.as_ref() == Some(&m));
            let ok = r.mc_defect_zero && r.torsion_zero && r.compatible && r.parallel.is_some() && r.ricci_zero() && metric_ok;
            Outcome::new(ok, background_witness(&r))
        }
        Err(e) => Outcome::new(false, json!({ "error": e.to_string() })),
    }
}

fn ricci_minkowski(ctx: &Context) -> Outcome {
    flat_background(ctx, Ok(x_mink::<Q>().map(|v| Scalar::constant(v.clone()))), Some(minkowski_eta()))
}

fn h_of(s: &str) -> Scalar {
    s.parse().expect("valid profile")
}

fn ricci_harmonic(ctx: &Context) -> Outcome {
    let h = h_of("x1^2 - x2^2");
    flat_background(ctx, ppwave_element(&h), Some(ppwave_metric(&h)))
}

fn ricci_nonharmonic(ctx: &Context) -> Outcome {
    let x = match ppwave_element(&h_of("x1^2 + x2^2")) {
        Ok(x) => x,
        Err(e) => return Outcome::new(false, json!({ "error": e.to_string() })),
    };
    match analyze(&x, ctx.ideal()) {
        Ok(r) => Outcome::new(!r.mc_defect_zero && !r.ricci_zero(), background_witness(&r)),
        Err(e) => Outcome::new(false, json!({ "error": e.to_string() })),
    }
}

fn ricci_conformal(ctx: &Context) -> Outcome {
    flat_background(ctx, rescaled_minkowski(&h_of("1 + x1^2")), Some(minkowski_eta()))
}

fn spinor_ideal(ctx: &Context) -> Outcome {
    let (ranks, ok) = crate::spinor::matches_ideal(ctx.ideal());
    let invariant = crate::spinor::n_is_invariant();
    Outcome::new(ok && invariant, json!({ "ranks": ranks, "span_equal": ok, "n_invariant": invariant, "note": "computed equality, not a proof" }))
}

fn k1_symbol(ctx: &Context) -> crate::hyperbolic::SymbolF64 {
    let (gb, g) = ctx.gauge();
    assemble_symbol(gb, g, &x_mink::<Q>(), 1).expect("degree-1 symbol").to_f64()
}

fn pde_leapfrog(ctx: &Context) -> Outcome {
    match scenarios::leapfrog_run(&k1_symbol(ctx).principal(), 256, 0.4, 1000, false) {
        Ok(ev) => {
            let d = ev.relative_drift();
            Outcome::new(d <= 1e-10, json!({ "grid": 256, "steps": 1000, "cfl": 0.4, "relative_drift": d }))
        }
        Err(e) => Outcome::new(false, json!({ "error": e.to_string() })),
    }
}

fn pde_manufactured(ctx: &Context) -> Outcome {
    match scenarios::convergence_ratio(&k1_symbol(ctx), 64) {
        Ok((e1, e2, ratio)) => Outcome::new((ratio - 4.0).abs() <= 0.3, json!({ "grids": [64, 128], "errors": [e1, e2], "ratio": ratio })),
        Err(e) => Outcome::new(false, json!({ "error": e.to_string() })),
    }
}

fn pde_burgers(_: &Context) -> Outcome {
    match scenarios::burgers_error(0.1, 512, 0.8, 2000) {
        Ok(err) => Outcome::new(err <= 1e-3, json!({ "epsilon": 0.1, "grid": 512, "t": 0.8, "breaking_time": 1.0 / (0.2 * std::f64::consts::PI), "max_error": err })),
        Err(e) => Outcome::new(false, json!({ "error": e.to_string() })),
    }
}
