use std::f64::consts::PI;

use proptest::prelude::*;
use topoinv_bz::{eigensolve_hermitian4, BlochKernel, BzGrid, Matrix4c, MomentumPoint, C64};
use topoinv_models::{
    kane_mele_kernel, spectral_gap, staggered_sc_kernel, KaneMeleParams, Model, StaggeredScParams, HONEYCOMB,
};

fn km(lv: f64, lso: f64, lr: f64) -> KaneMeleParams {
    KaneMeleParams { t: 1.0, lambda_v: lv, lambda_so: lso, lambda_r: lr }
}

fn eigenvalues(m: &Model, p: MomentumPoint) -> [f64; 4] {
    eigensolve_hermitian4(&m.kernel(p)).eigenvalues
}

/// Cartesian k with k·a₁ = p₁ and k·a₂ = p₂.
fn cartesian(p1: f64, p2: f64) -> [f64; 2] {
    let kx = p1;
    let ky = (p2 - 0.5 * p1) / (3f64.sqrt() / 2.0);
    [kx, ky]
}

#[test]
fn graphene_limit_has_dirac_spectrum() {
    let m = Model::KaneMele(km(0.0, 0.0, 0.0));
    let bonds = [[0.5, 0.5 / 3f64.sqrt()], [-0.5, 0.5 / 3f64.sqrt()], [0.0, -1.0 / 3f64.sqrt()]];
    for (p1, p2) in [(0.3, -1.1), (2.0, 0.4), (-2.9, 3.0), (0.0, 0.0)] {
        let k = cartesian(p1, p2);
        let f: C64 = bonds.iter().map(|d| C64::from_polar(1.0, k[0] * d[0] + k[1] * d[1])).sum();
        let e = eigenvalues(&m, MomentumPoint::new(p1, p2));
        let a = f.norm();
        for (got, want) in e.iter().zip([-a, -a, a, a]) {
            assert!((got - want).abs() < 1e-12, "{e:?} vs |f| = {a}");
        }
    }
    for kp in HONEYCOMB.k_points() {
        let e = eigenvalues(&m, MomentumPoint::new(kp[0], kp[1]));
        assert!(e.iter().all(|x| x.abs() < 1e-12), "K point {kp:?}: {e:?}");
    }
}

#[test]
fn spin_conserved_without_rashba() {
    let sz = Matrix4c::from_diagonal(&nalgebra::Vector4::new(1.0, -1.0, 1.0, -1.0).map(C64::from));
    let params = km(0.2, 0.07, 0.0);
    for j in 0..20 {
        let p = MomentumPoint::new(-PI + 0.31 * j as f64, 1.7 - 0.23 * j as f64);
        let h = kane_mele_kernel(&params, p);
        let c = h.matrix() * sz - sz * h.matrix();
        assert!(c.norm() < 1e-14);
    }
}

#[test]
fn spin_blocks_exchange_under_spin_orbit_reversal() {
    let up = km(0.2, 0.07, 0.0);
    let dn = km(0.2, -0.07, 0.0);
    for j in 0..20 {
        let p = MomentumPoint::new(0.4 * j as f64, -0.3 * j as f64);
        let hu = kane_mele_kernel(&up, p);
        let hd = kane_mele_kernel(&dn, p);
        for (r, c) in [(0, 0), (0, 2), (2, 0), (2, 2)] {
            assert!((hu.entry(r, c) - hd.entry(r + 1, c + 1)).norm() < 1e-14);
        }
    }
}

#[test]
fn kane_mele_gap_at_k_points() {
    let params = km(0.1, 0.06, 0.0);
    let gap = spectral_gap(&Model::KaneMele(params), BzGrid::square(256).unwrap());
    let want = 2.0 * (0.1 - 3.0 * 3f64.sqrt() * 0.06f64).abs();
    assert!((gap - want).abs() < 0.02 * want, "gap {gap} vs {want}");
    assert!((params.k_point_gap() - want).abs() < 1e-15);
}

#[test]
fn kane_mele_gap_closes_on_phase_boundary() {
    let m = Model::KaneMele(km(3.0 * 3f64.sqrt() * 0.06, 0.06, 0.0));
    let coarse = spectral_gap(&m, BzGrid::square(64).unwrap());
    let fine = spectral_gap(&m, BzGrid::square(256).unwrap());
    let on_k = spectral_gap(&m, BzGrid::square(96).unwrap());
    assert!(fine < coarse);
    assert!(on_k < 1e-9, "grid containing K still gapped: {on_k}");
}

#[test]
fn gap_nonincreasing_on_nested_grids() {
    for m in [
        Model::KaneMele(km(0.1, 0.06, 0.05)),
        Model::StaggeredSc(StaggeredScParams { mu: 1.0, delta_stagger: 0.5, t: 1.0, delta_pair: 0.7 }),
    ] {
        let gaps: Vec<f64> = [8, 16, 32, 64].iter().map(|&n| spectral_gap(&m, BzGrid::square(n).unwrap())).collect();
        assert!(gaps.windows(2).all(|w| w[1] <= w[0]), "{gaps:?}");
    }
}

#[test]
fn superconductor_atomic_limit() {
    for (mu, dl) in [(1.0, 0.3), (-2.0, 0.5), (0.4, -1.5)] {
        let params = StaggeredScParams { mu, delta_stagger: dl, t: 0.0, delta_pair: 0.0 };
        let h = staggered_sc_kernel(&params, MomentumPoint::new(0.7, -0.2));
        let want = [mu - dl, -(mu - dl), mu + dl, -(mu + dl)];
        for r in 0..4 {
            for c in 0..4 {
                let w = if r == c { want[r] } else { 0.0 };
                assert!((h.entry(r, c) - C64::from(w)).norm() < 1e-15);
            }
        }
        let gap = spectral_gap(&Model::StaggeredSc(params), BzGrid::square(8).unwrap());
        assert!((gap - 2.0 * (mu - dl).abs().min((mu + dl).abs())).abs() < 1e-12);
    }
}

#[test]
fn kane_mele_time_reversal_matrix_identity() {
    // Θ = (1 ⊗ iσ_y) K in the (a↑, a↓, b↑, b↓) basis
    let mut u = Matrix4c::zeros();
    for b in [0, 2] {
        u[(b, b + 1)] = C64::from(1.0);
        u[(b + 1, b)] = C64::from(-1.0);
    }
    let params = km(0.13, 0.07, 0.21);
    for j in 0..30 {
        let p = MomentumPoint::new(-3.0 + 0.2 * j as f64, 2.9 - 0.19 * j as f64);
        let h = kane_mele_kernel(&params, p);
        let hm = kane_mele_kernel(&params, p.neg());
        let rhs = u * h.matrix().map(|z| z.conj()) * u.adjoint();
        assert!((hm.matrix() - rhs).norm() < 1e-13);
    }
}

fn kernel_strategy() -> impl Strategy<Value = (Model, f64, f64)> {
    let km = (-1.0..1.0f64, -0.3..0.3f64, -0.3..0.3f64, 0.2..2.0f64)
        .prop_map(|(lv, lso, lr, t)| Model::KaneMele(KaneMeleParams { t, lambda_v: lv, lambda_so: lso, lambda_r: lr }));
    let sc = (-4.0..4.0f64, -4.0..4.0f64, -2.0..2.0f64, -2.0..2.0f64)
        .prop_map(|(mu, dl, t, d)| Model::StaggeredSc(StaggeredScParams { mu, delta_stagger: dl, t, delta_pair: d }));
    (prop_oneof![km, sc], -PI..PI, -PI..PI)
}

proptest! {
    #[test]
    fn kernels_are_hermitian((m, px, py) in kernel_strategy()) {
        let h = m.kernel(MomentumPoint::new(px, py));
        let d = (h.matrix() - h.matrix().adjoint()).norm();
        prop_assert!(d < 1e-14);
    }

    #[test]
    fn kernels_are_zone_periodic((m, px, py) in kernel_strategy(), sx in -2i32..=2, sy in -2i32..=2) {
        let a = m.kernel(MomentumPoint::new(px, py));
        let b = m.kernel(MomentumPoint::new(px + 2.0 * PI * sx as f64, py + 2.0 * PI * sy as f64));
        prop_assert!((a.matrix() - b.matrix()).norm() < 1e-12);
    }

    #[test]
    fn kane_mele_time_reversal_spectrum(lv in -1.0..1.0f64, lso in -0.3..0.3f64, lr in -0.3..0.3f64, px in -PI..PI, py in -PI..PI) {
        let m = Model::KaneMele(km(lv, lso, lr));
        let p = MomentumPoint::new(px, py);
        let (a, b) = (eigenvalues(&m, p), eigenvalues(&m, p.neg()));
        for n in 0..4 {
            prop_assert!((a[n] - b[n]).abs() < 1e-10);
        }
    }

    #[test]
    fn superconductor_particle_hole_spectrum(mu in -4.0..4.0f64, dl in -4.0..4.0f64, t in -2.0..2.0f64, d in -2.0..2.0f64, px in -PI..PI, py in -PI..PI) {
        let m = Model::StaggeredSc(StaggeredScParams { mu, delta_stagger: dl, t, delta_pair: d });
        let p = MomentumPoint::new(px, py);
        let (a, b) = (eigenvalues(&m, p), eigenvalues(&m, p.neg()));
        for n in 0..4 {
            prop_assert!((a[n] + b[3 - n]).abs() < 1e-10);
        }
    }
}

#[test]
fn parameter_validation() {
    assert!(KaneMeleParams { t: 0.0, lambda_v: 0.0, lambda_so: 0.1, lambda_r: 0.0 }.validate().is_err());
    assert!(KaneMeleParams { t: 1.0, lambda_v: f64::NAN, lambda_so: 0.1, lambda_r: 0.0 }.validate().is_err());
    assert!(StaggeredScParams { mu: f64::INFINITY, delta_stagger: 0.0, t: 1.0, delta_pair: 1.0 }.validate().is_err());
    assert!(Model::KaneMele(km(0.0, 0.1, 0.0)).validate().is_ok());
}
