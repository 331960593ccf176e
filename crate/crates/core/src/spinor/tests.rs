use super::*;
use crate::frames::sigma_matrix;
use crate::linalg::rank;

fn eta() -> Vec<Vec<CQ>> {
    (0..4).map(|i| (0..4).map(|j| if i != j { CQ::zero() } else if i == 0 { cq(-1, 0) } else { cq(1, 0) }).collect()).collect()
}

#[test]
fn standard_frame_gram() {
    assert_eq!(SpinorModule::standard().gram(), eta());
}

#[test]
fn frame_lies_in_w() {
    for x in SpinorModule::standard().frame() {
        assert!(hermitian_coords(&x).is_some());
    }
    assert!(hermitian_coords(&c2([[(0, 1), (0, 0)], [(0, 0), (0, 0)]])).is_none());
}

fn lorentz_oracle(l: &[Vec<Q>]) -> (bool, Q) {
    // Λᵀ η Λ and det Λ
    let e = [q(-1), q(1), q(1), q(1)];
    let mut ok = true;
    for a in 0..4 {
        for b in 0..4 {
            let v = (0..4).fold(q(0), |acc, k| acc + l[k][a].clone() * e[k].clone() * l[k][b].clone());
            ok &= v == if a == b { e[a].clone() } else { q(0) };
        }
    }
    (ok, crate::linalg::det(&l.to_vec()))
}

#[test]
fn unimodular_change_is_proper_lorentz() {
    let changes = [
        c2([[(1, 0), (1, 0)], [(0, 0), (1, 0)]]),
        c2([[(1, 0), (0, 1)], [(0, 0), (1, 0)]]),
        c2([[(0, 1), (0, 0)], [(0, 0), (0, -1)]]),
        c2([[(2, 1), (1, 0)], [(3, 0), (2, 0)]]).map(|r| r.map(|v| v)),
    ];
    for g in changes.iter().filter(|g| c2_det(g) == cq(1, 0)) {
        let s = SpinorModule::new(g.clone()).unwrap();
        assert_eq!(s.gram(), eta());
        let l = s.lorentz_matrix().unwrap();
        let (ok, d) = lorentz_oracle(&l);
        assert!(ok && d == q(1) && l[0][0] > q(0));
    }
    let half = c2([[(2, 0), (0, 0)], [(0, 0), (1, 0)]]);
    let m = [[cq(1, 0), CQ::zero()], [CQ::zero(), CQ::real(qf(1, 2))]];
    let s = SpinorModule::new(c2_mul(&half, &m)).unwrap();
    assert_eq!(s.gram(), eta());
}

#[test]
fn scaling_is_conformal() {
    let s = SpinorModule::new(c2([[(2, 0), (0, 0)], [(0, 0), (1, 0)]])).unwrap();
    let l = s.lorentz_matrix().unwrap();
    let e = [q(-1), q(1), q(1), q(1)];
    for a in 0..4 {
        for b in 0..4 {
            let v = (0..4).fold(q(0), |acc, k| acc + l[k][a].clone() * e[k].clone() * l[k][b].clone());
            assert_eq!(v, if a == b { e[a].clone() * q(4) } else { q(0) });
        }
    }
    let g = s.gram();
    assert_eq!(g[0][0], cq(-4, 0));
}

#[test]
fn degenerate_basis_rejected() {
    assert!(SpinorModule::new(c2([[(1, 0), (2, 0)], [(1, 0), (2, 0)]])).is_none());
}

#[test]
fn sigmas_map_to_same_names() {
    for (name, g, a) in named_sigmas() {
        let m = frame_matrix(&a);
        let want = sigma_matrix(g);
        for j in 0..4 {
            for i in 0..4 {
                assert_eq!(m[j][i], q(want[j][i]), "{name} at ({j},{i})");
            }
        }
        let d = derend_v_morphism(&[q(0), q(0), q(0), q(0)], &a);
        assert_eq!(d, CDer::generator(g), "{name}");
    }
}

#[test]
fn kernel_is_i_identity() {
    let i1 = c2([[(0, 1), (0, 0)], [(0, 0), (0, 1)]]);
    assert_eq!(derend_v_morphism(&[q(0), q(0), q(0), q(0)], &i1), CDer::zero());
    let imgs: Vec<Vec<Q>> = endo_basis().iter().map(|a| derend_v_morphism(&[q(0), q(0), q(0), q(0)], a).c).collect();
    assert_eq!(rank(imgs, NGEN), 7);
}

#[test]
fn vector_field_passes_through() {
    let v = [q(1), q(-2), q(0), qf(3, 5)];
    let d = derend_v_morphism(&v, &endo_basis()[0]);
    assert_eq!(&d.c[..4], &v[..]);
}

#[test]
fn brackets_intertwined() {
    let basis = endo_basis();
    let z = [q(0), q(0), q(0), q(0)];
    for a in &basis {
        for b in &basis {
            let ab = c2_mul(a, b);
            let ba = c2_mul(b, a);
            let comm: C2 = std::array::from_fn(|i| std::array::from_fn(|j| ab[i][j].clone() - ba[i][j].clone()));
            let lhs = derend_v_morphism(&z, &comm);
            let rhs = derend_v_morphism(&z, a).bracket(&derend_v_morphism(&z, b));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn pairing_is_symmetric() {
    let f = SpinorModule::standard().frame();
    for a in &f {
        for b in &f {
            assert_eq!(pairing(a, b), pairing(b, a));
        }
    }
}

#[test]
fn n_submodule_dims_and_invariance() {
    let n2 = crate::linalg::Subspace::span(n2_generators(), 32);
    assert_eq!(n2.dim(), 4);
    assert!(n_is_invariant());
}

#[test]
fn kernel_image_is_ideal() {
    let ideal = Ideal::standard();
    let (ranks, ok) = matches_ideal(&ideal);
    assert_eq!(ranks, vec![0, 0, 10, 16, 6]);
    assert!(ok);
}

#[test]
fn without_spinor_quotient_kernel_is_curvature_tensors() {
    // Bianchi and trace conditions alone leave the 20 algebraic curvature tensors in degree 2
    let n = n_submodule();
    let rep = representation_matrix(2, &n);
    let part: Vec<Vec<Q>> = rep[..M1_OFFSET].to_vec();
    assert_eq!(kernel(part, lv_basis(2).len()).len(), 20);
    assert_eq!(kernel(rep, lv_basis(2).len()).len(), 10);
}
