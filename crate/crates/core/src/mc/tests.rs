use super::*;
use crate::glaoid::x_mink;

type QMat = Vec<Vec<Q>>;

fn to_matrix(elems: &[(usize, usize)], nv: usize, v: &[Q]) -> QMat {
    let mut m = vec![vec![q(0); nv]; nv];
    for (c, &(a, b)) in v.iter().zip(elems) {
        m[a][b] += c;
    }
    m
}

fn mm(a: &QMat, b: &QMat) -> QMat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).fold(q(0), |acc, k| acc + &a[i][k] * &b[k][j])).collect()).collect()
}

/// Coefficients of `Ξ²` for a matrix series `Ξ`.
fn square_series(xs: &[QMat], upto: usize) -> Vec<QMat> {
    let n = xs[0].len();
    (0..=upto)
        .map(|p| {
            let mut acc = vec![vec![q(0); n]; n];
            for a in 0..=p {
                let b = p - a;
                if a < xs.len() && b < xs.len() {
                    let prod = mm(&xs[a], &xs[b]);
                    for i in 0..n {
                        for j in 0..n {
                            acc[i][j] += &prod[i][j];
                        }
                    }
                }
            }
            acc
        })
        .collect()
}

fn is_zero_mat(m: &QMat) -> bool {
    m.iter().flatten().all(|v| Field::is_zero(v))
}

#[test]
fn endomorphism_algebra_axioms() {
    let (g, _) = endomorphisms(&[1, 2, 1]);
    assert_eq!(g.dim(), 16);
    assert!(g.check_antisymmetry());
    assert!(g.check_jacobi());
}

#[test]
fn abelian_recursion_is_linear() {
    let g = abelian(&[(0, 1), (1, 2)]);
    let x0 = vec![q(0); 3];
    let hom = homology(&g, &x0).unwrap();
    assert_eq!(hom.dims, vec![(0, 1), (1, 2)]);
    assert!(hom.h.iter().flatten().all(|v| Field::is_zero(v)));
    let p = FreeSeriesGLa::plain(&g, 8);
    let sol = mc_recursion(&p, &x0, &[q(2), qf(-1, 3)], 6).unwrap();
    let rxi: Vec<Q> = hom.reps[0].iter().zip(&hom.reps[1]).map(|(a, b)| a * q(2) + b * qf(-1, 3)).collect();
    assert_eq!(sol.c[1], rxi);
    assert!(sol.c[2..].iter().all(|c| is_zero_vec(c)));
    assert!(sol.all_ok());
}

#[test]
fn endomorphisms_of_two_degrees() {
    let (g, x0) = endo_identity_example();
    let hom = homology(&g, &x0).unwrap();
    assert_eq!(hom.dims, vec![(-1, 0), (0, 0), (1, 0)]);
    assert!(g.degree_indices(2).is_empty());
    let sol = mc_recursion(&FreeSeriesGLa::plain(&g, 8), &x0, &[], 6).unwrap();
    assert!(sol.all_ok());
}

#[test]
fn nonabelian_recursion_matches_series_oracle() {
    let (g, x0) = endo_example();
    let (_, elems) = endomorphisms(&[2, 2, 1]);
    let hom = homology(&g, &x0).unwrap();
    assert_eq!(hom.dim(1), 2);
    assert_eq!(hom.dim(2), 0);
    let p = FreeSeriesGLa::plain(&g, 8);
    let xi = [q(1), qf(-2, 3)];
    for k in 1..=6 {
        let sol = mc_recursion(&p, &x0, &xi, k).unwrap();
        assert!(sol.all_ok());
        assert_eq!(sol.clauses.len(), k + 1);
        let mats: Vec<QMat> = sol.c.iter().map(|c| to_matrix(&elems, 5, c)).collect();
        // [Ξ, Ξ] = 2Ξ² for odd Ξ
        let sq = square_series(&mats, k + 2);
        assert!(sq[..=k].iter().all(is_zero_mat), "order {k}");
    }
}

#[test]
fn zero_class_gives_trivial_corrections() {
    let (g, x0) = endo_example();
    let sol = mc_recursion(&FreeSeriesGLa::plain(&g, 8), &x0, &[q(0), q(0)], 6).unwrap();
    assert!(sol.c[1..].iter().all(|c| is_zero_vec(c)));
}

#[test]
fn rees_of_two_step_nilpotent_inserts_s_squared() {
    // degree 1: a, b; degree 2: c; [a, b] = [b, a] = c
    let mut g = abelian(&[(1, 2), (2, 1)]);
    g.table[0][1] = vec![(2, q(1))];
    g.table[1][0] = vec![(2, q(1))];
    assert!(g.check_antisymmetry() && g.check_jacobi());
    let f0 = vec![g.basis(2)];
    let f1 = vec![g.basis(0), g.basis(1), g.basis(2)];
    let (p, basis, levels) = rees_algebra(&g, &[f0, f1], 4).unwrap();
    assert_eq!(levels, vec![0, 1, 1]);
    let (ia, ib) = (basis.iter().position(|v| *v == g.basis(0)).unwrap(), basis.iter().position(|v| *v == g.basis(1)).unwrap());
    assert_eq!(p.table[ia][ib], vec![(2, 0, q(1))]);
    let gr = p.reduction();
    assert!(gr.table.iter().flatten().all(|e| e.is_empty()));
    assert!(p.check_axioms());
}

#[test]
fn rees_trivial_filtration_is_plain() {
    let (g, _) = endo_identity_example();
    let all: Vec<Vec<Q>> = (0..g.dim()).map(|i| g.basis(i)).collect();
    let (p, basis, _) = rees_algebra(&g, &[all], 4).unwrap();
    assert!(basis.iter().enumerate().all(|(i, b)| *b == g.basis(i)));
    assert!(p.table.iter().flatten().flatten().all(|(s, _, _)| *s == 0));
}

#[test]
fn rees_associated_graded_matches_quotient() {
    let (g, _) = endo_example();
    let f0: Vec<Vec<Q>> = (0..g.dim()).filter(|&i| g.deg[i] >= 1).map(|i| g.basis(i)).collect();
    let f1: Vec<Vec<Q>> = (0..g.dim()).map(|i| g.basis(i)).collect();
    let (p, basis, levels) = rees_algebra(&g, &[f0.clone(), f1], 8).unwrap();
    let gr = p.reduction();
    let n = g.dim();
    let f_space = |lvl: isize| -> Subspace<Q> {
        if lvl < 0 {
            Subspace::span(Vec::new(), n)
        } else if lvl == 0 {
            Subspace::span(f0.clone(), n)
        } else {
            Subspace::span((0..n).map(|i| g.basis(i)).collect(), n)
        }
    };
    for i in 0..n {
        for j in 0..n {
            let total = levels[i] + levels[j];
            let br = g.bracket(&basis[i], &basis[j]);
            // project [e_i, e_j] to F_total / F_{total−1}
            let lower = f_space(total as isize - 1);
            let red = lower.reduce(&br);
            let mut expect = vec![q(0); n];
            let same_level: Vec<usize> = (0..n).filter(|&k| levels[k] == total).collect();
            if !same_level.is_empty() {
                let a: Mat<Q> = (0..n).map(|r| same_level.iter().map(|&k| lower.reduce(&basis[k])[r].clone()).collect()).collect();
                let coef = solve(&a, &red, same_level.len()).expect("lands in F_total");
                for (&k, c) in same_level.iter().zip(coef) {
                    expect[k] = c;
                }
            } else {
                assert!(is_zero_vec(&red) || total > 1);
            }
            assert_eq!(gr.bracket(&gr.basis(i), &gr.basis(j)), expect, "pair {i} {j}");
        }
    }
}

#[test]
fn rees_recursion_embeds_into_power_series() {
    let (p, x0) = rees_example(8).unwrap();
    let (g, _) = endo_example();
    let (_, elems) = endomorphisms(&[2, 2, 1]);
    let f0: Vec<Vec<Q>> = (0..g.dim()).filter(|&i| g.deg[i] >= 1).map(|i| g.basis(i)).collect();
    let f1: Vec<Vec<Q>> = (0..g.dim()).map(|i| g.basis(i)).collect();
    let (_, basis, levels) = rees_algebra(&g, &[f0, f1], 8).unwrap();
    let hom = homology(&p.reduction(), &x0).unwrap();
    assert_eq!(hom.dim(2), 0);
    let xi: Vec<Q> = (0..hom.reps.len()).map(|i| qf(i as i64 + 1, 2)).collect();
    for k in 1..=6 {
        let sol = mc_recursion(&p, &x0, &xi, k).unwrap();
        assert!(sol.all_ok());
        // Σ s^k c_k with c_k = Σ_i c_{k,i} s^{ℓ_i} e_i, as a matrix series
        let mut mats = vec![vec![vec![q(0); 5]; 5]; k + 3];
        for (kk, c) in sol.c.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                if Field::is_zero(v) {
                    continue;
                }
                let m = to_matrix(&elems, 5, &basis[i].iter().map(|b| b * v).collect::<Vec<_>>());
                let e = kk + levels[i];
                for r in 0..5 {
                    for s in 0..5 {
                        mats[e][r][s] += &m[r][s];
                    }
                }
            }
        }
        let sq = square_series(&mats, k);
        assert!(sq[..=k].iter().all(is_zero_mat), "order {k}");
    }
}

#[test]
fn gauge_action_preserves_mc() {
    let (g, x0) = endo_example();
    let p = FreeSeriesGLa::plain(&g, 6);
    let sol = mc_recursion(&p, &x0, &[q(1), q(1)], 5).unwrap();
    let x = sol.series(&p);
    for seed in 0..5 {
        let y = random_gauge(&p, seed);
        let gx = gauge_act(&p, &y, &x);
        assert!(is_mc_mod(&p, &gx, 5));
        assert_eq!(gx[0], x0);
    }
}

#[test]
fn first_order_term_represents_class() {
    let (g, x0) = endo_example();
    let p = FreeSeriesGLa::plain(&g, 8);
    let hom = homology(&g, &x0).unwrap();
    let xi = [qf(3, 2), q(-1)];
    let parts = homogeneous_parts(&p, &x0, &xi, 1).unwrap();
    assert!(is_zero_vec(&parts[0]));
    assert!(is_zero_vec(&g.bracket(&x0, &parts[1])));
    let rxi: Vec<Q> = hom.reps[0].iter().zip(&hom.reps[1]).map(|(a, b)| a * &xi[0] + b * &xi[1]).collect();
    let diff: Vec<Q> = parts[1].iter().zip(&rxi).map(|(a, b)| a - b).collect();
    let i0 = g.degree_indices(0);
    let im: Vec<Vec<Q>> = i0.iter().map(|&i| g.bracket(&x0, &g.basis(i))).collect();
    assert!(Subspace::span(im, g.dim()).contains(&diff));
    // homogeneity of the recovered parts at order 2
    let parts2 = homogeneous_parts(&p, &x0, &xi, 2).unwrap();
    let c2 = mc_recursion(&p, &x0, &xi, 2).unwrap().c[2].clone();
    let sum: Vec<Q> = (0..g.dim()).map(|i| parts2.iter().fold(q(0), |a, pp| a + &pp[i])).collect();
    assert_eq!(sum, c2);
}

#[test]
fn non_mc_base_point_is_rejected() {
    let g = {
        let mut g = abelian(&[(1, 1), (2, 1)]);
        g.table[0][0] = vec![(1, q(1))];
        g
    };
    assert_eq!(homology(&g, &[q(1), q(0)]).unwrap_err(), McError::NotMc);
}

#[test]
fn filtration_errors() {
    let mut g = abelian(&[(1, 2), (2, 1)]);
    g.table[0][1] = vec![(2, q(1))];
    g.table[1][0] = vec![(2, q(1))];
    // F₀ = span(a, b) is not closed: [a, b] = c ∉ F₀
    let bad = rees_algebra(&g, &[vec![g.basis(0), g.basis(1)], vec![g.basis(2)]], 4);
    assert!(matches!(bad, Err(McError::NotAFiltration(_))));
    let unbracketed = rees_algebra(&g, &[vec![g.basis(0), g.basis(1)], vec![g.basis(0), g.basis(1), g.basis(2)]], 4);
    assert!(matches!(unbracketed, Err(McError::NotAFiltration(m)) if m.contains('⊄')));
    let short = rees_algebra(&g, &[vec![g.basis(0)]], 4);
    assert!(matches!(short, Err(McError::NotAFiltration(_))));
}

fn gravity() -> (FiniteGLa, Vec<usize>, Vec<Q>) {
    let ideal = Ideal::standard();
    let (g, coords) = gravity_fiber(&ideal);
    let x0 = fiber_point(&coords, &x_mink());
    (g, coords, x0)
}

#[test]
fn gravity_fiber_homology_matches_rank_oracle() {
    let (g, coords, x0) = gravity();
    let hom = homology(&g, &x0).unwrap();
    assert_eq!(hom.dims, vec![(0, 4), (1, 13), (2, 16), (3, 8), (4, 1)]);
    let euler: i64 = hom.dims.iter().map(|&(k, d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
    assert_eq!(euler, 11 - 44 + 56 - 28 + 5);
    // rank of d: E^k → E^{k+1} from the L bracket directly
    let ideal = Ideal::standard();
    let xm = x_mink::<Q>();
    let mut ranks = Vec::new();
    for k in 0..4 {
        let src = ideal.complement_degree(k);
        let cols: Vec<Vec<Q>> = src
            .iter()
            .map(|&c| {
                let u = LElement::<Q>::basis(lsplit(c).0, lsplit(c).1);
                ideal.e_coords(k + 1, &xm.bracket(&u))
            })
            .collect();
        ranks.push(rank(cols, ideal.complement_degree(k + 1).len()));
    }
    let dims = ideal.quotient_ranks();
    let h: Vec<usize> = (0..5).map(|k| dims[k] - if k < 4 { ranks[k] } else { 0 } - if k > 0 { ranks[k - 1] } else { 0 }).collect();
    assert_eq!(h, vec![4, 13, 16, 8, 1]);
    assert_eq!(coords.len(), 144);
}

#[test]
fn gravity_fiber_is_obstructed() {
    let (g, _, x0) = gravity();
    let p = FreeSeriesGLa::plain(&g, 8);
    let hom = homology(&g, &x0).unwrap();
    let xi = vec![q(1); hom.reps.len()];
    assert_eq!(mc_recursion(&p, &x0, &xi, 6).unwrap_err(), McError::Obstructed(16));
    let conn: Vec<Q> = (0..hom.reps.len()).map(|i| if i >= 9 { q(1) } else { q(0) }).collect();
    assert_eq!(mc_recursion_with(&p, &x0, &conn, 6, false).unwrap_err(), McError::AssertionFailed { clause: 'C', k: 1 });
}

#[test]
fn gravity_fiber_frame_directions_are_unobstructed() {
    let (g, coords, x0) = gravity();
    let p = FreeSeriesGLa::plain(&g, 8);
    let xi = frame_directions(&g, &coords, &x0);
    assert_eq!(xi.len(), 13);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..3 {
        let v: Vec<Q> = xi.iter().map(|&f| if f { q(rng.gen_range(-3..=3)) } else { q(0) }).collect();
        let sol = mc_recursion_with(&p, &x0, &v, 6, false).unwrap();
        assert!(sol.all_ok());
        assert_eq!(sol.clauses.len(), 7);
    }
}
