use num_complex::Complex64;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use qkreduce::numerics::{Solver, Tolerances};
use qkreduce::quat::{sp1_from_angles, split_roundtrip, HPoint, Quaternion, Sp1Element};
use qkreduce::reduction::{act, fixed_point_residual, mu, non_effective_elements, nu, GroupElement, ReductionConfig};
use qkreduce::strata::{
    build_catalog, omega_positive_sign_pattern, positive_sign_pattern, v3_positive_sign_pattern, CatalogOptions, Level,
    StratumKind,
};
use qkreduce::weights::{
    admissibility, box_omega, boxes_theta, canonical_box_coefficients, isotropy_group, minors_omega, minors_theta,
    OmegaMatrix, Sign, ThetaMatrix, WeightMatrix,
};
use std::f64::consts::{PI, TAU};

const THETA_EX: &str = "1,0,1,1/0,1,1,1/1,1,0,1";
const OMEGA_EX: &str = "1,2,3/1,3,6";

fn close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

fn quat() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-2.0f64..2.0).prop_map(Quaternion::from_array)
}

fn unit_quat() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-1.0f64..1.0)
        .prop_filter("nonzero", |a| a.iter().map(|x| x * x).sum::<f64>() > 1e-3)
        .prop_map(|a| {
            let q = Quaternion::from_array(a);
            q.scale(1.0 / q.norm())
        })
}

fn point(n: usize) -> impl Strategy<Value = HPoint> {
    prop::collection::vec(-1.0f64..1.0, 4 * n).prop_map(|x| HPoint::from_real(&x))
}

fn config(lit: &str) -> ReductionConfig {
    ReductionConfig::new(WeightMatrix::parse(lit, None).unwrap())
}

fn twistor_element(torus_rank: usize) -> impl Strategy<Value = GroupElement> {
    (prop::collection::vec(-PI..PI, torus_rank), unit_quat(), -PI..PI).prop_map(|(t, l, r)| GroupElement {
        torus: t,
        lambda: l,
        rho: Some([r.cos(), r.sin()]),
    })
}

fn theta_matrix(bound: i64) -> impl Strategy<Value = ThetaMatrix> {
    prop::array::uniform3(prop::array::uniform4(-bound..=bound)).prop_map(|r| ThetaMatrix::new(r).unwrap())
}

fn omega_matrix(bound: i64) -> impl Strategy<Value = OmegaMatrix> {
    prop::array::uniform2(prop::array::uniform3(-bound..=bound)).prop_map(|r| OmegaMatrix::new(r).unwrap())
}

/// Matrix of `x ↦ λ̄ x λ` on the imaginary quaternions.
fn adjoint(l: Quaternion) -> [[f64; 3]; 3] {
    let mut r = [[0.0; 3]; 3];
    for (a, e) in [Quaternion::I, Quaternion::J, Quaternion::K].into_iter().enumerate() {
        r[a] = (l.conj() * e * l).im();
    }
    r
}

// --------------------------------------------------------------- quaternions

#[test]
fn quaternion_fixed_products() {
    assert_eq!(Quaternion::I * Quaternion::J, Quaternion::K);
    let a = Quaternion::ONE + Quaternion::I;
    let b = Quaternion::ONE + Quaternion::J;
    assert_eq!(a * b, Quaternion::new(1.0, 1.0, 1.0, 1.0));
    let z = Complex64::new(0.3, -1.2);
    let w = Complex64::new(2.0, 0.5);
    let q = Quaternion::J * Quaternion::from_split(z, w);
    let (z2, w2) = q.to_split();
    // j·z = z̄·j, so j·(z + j·w) = −w + j·z
    assert_eq!((z2, w2), (-w, z));
    assert_eq!(sp1_from_angles(Sp1Element::new(0.0, 0.3, 1.0)), Quaternion::ONE);
    assert!(close(sp1_from_angles(Sp1Element::new(PI / 2.0, 0.0, 0.0)), Quaternion::I, 1e-15));
}

proptest! {
    #[test]
    fn quaternion_algebra(a in quat(), b in quat(), c in quat()) {
        prop_assert!(close((a * b) * c, a * (b * c), 1e-12));
        prop_assert!(((a * b).norm() - a.norm() * b.norm()).abs() < 1e-12 * (1.0 + a.norm() * b.norm()));
        prop_assert!(close((a * b).conj(), b.conj() * a.conj(), 1e-12));
        if a.norm() > 1e-3 {
            prop_assert!(close(a * a.inverse().unwrap(), Quaternion::ONE, 1e-12));
        }
    }

    #[test]
    fn split_coordinates_round_trip(p in point(8)) {
        prop_assert!(split_roundtrip(&p).distance(&p) < 1e-15);
        let back: HPoint = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn sp1_elements_are_unit(t in -PI..PI, f in 0.0..PI, d in -PI..PI) {
        let e = Sp1Element::new(t, f, d);
        let q = sp1_from_angles(e);
        prop_assert!((q.norm() - 1.0).abs() < 1e-12);
        prop_assert!(close(q, Quaternion::exp_axis(e.axis(), t), 1e-12));
    }
}

// --------------------------------------------------------------- moment maps

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sp1_moment_rotates_under_left_action(p in point(8), l in unit_quat()) {
        let cfg = config(THETA_EX);
        let before = mu(&cfg, &p).unwrap();
        let after = mu(&cfg, &p.left_mul(l)).unwrap();
        let r = adjoint(l);
        for a in 0..3 {
            let expect = (0..3).fold(Quaternion::default(), |acc, c| acc + before[c].scale(r[a][c]));
            prop_assert!(close(after[a], expect, 1e-10));
        }
    }

    #[test]
    fn moment_under_right_complex_action(p in point(8), r in -PI..PI) {
        let cfg = config(THETA_EX);
        let rho = Quaternion::new(r.cos(), r.sin(), 0.0, 0.0);
        let before = mu(&cfg, &p).unwrap();
        let after = mu(&cfg, &p.right_mul(rho)).unwrap();
        for a in 0..3 {
            prop_assert!(close(after[a], rho.conj() * before[a] * rho, 1e-10));
        }
    }

    #[test]
    fn torus_moment_is_invariant(p in point(8), t in prop::collection::vec(-PI..PI, 3), l in unit_quat(), c in -3.0f64..3.0) {
        let cfg = config(THETA_EX);
        let n0 = nu(&cfg, &p).unwrap();
        let g = GroupElement { torus: t, lambda: l, rho: None };
        let n1 = nu(&cfg, &act(&cfg, &g, &p).unwrap()).unwrap();
        let n2 = nu(&cfg, &p.scaled(c)).unwrap();
        for r in 0..3 {
            prop_assert!(close(n1[r], n0[r], 1e-10));
            prop_assert!(close(n2[r], n0[r].scale(c * c), 1e-10));
        }
    }

    #[test]
    fn action_is_isometric_and_periodic(p in point(8), g in twistor_element(3)) {
        let cfg = config(THETA_EX);
        let q = act(&cfg, &g, &p).unwrap();
        prop_assert!((q.norm() - p.norm()).abs() < 1e-12);
        for r in 0..3 {
            let mut full = GroupElement::identity(&cfg, true);
            full.torus[r] = TAU;
            prop_assert!(fixed_point_residual(&cfg, &full, &p).unwrap() < 1e-12);
        }
        for e in non_effective_elements(&cfg) {
            prop_assert!(fixed_point_residual(&cfg, &e, &p).unwrap() < 1e-14);
        }
    }

    #[test]
    fn omega_torus_moment_is_invariant(p in point(7), t in prop::collection::vec(-PI..PI, 2)) {
        let cfg = config(OMEGA_EX);
        let g = GroupElement { torus: t, lambda: Quaternion::ONE, rho: Some([1.0, 0.0]) };
        let n0 = nu(&cfg, &p).unwrap();
        let n1 = nu(&cfg, &act(&cfg, &g, &p).unwrap()).unwrap();
        for r in 0..2 {
            prop_assert!(close(n1[r], n0[r], 1e-10));
        }
    }
}

#[test]
fn moment_at_first_basis_vector() {
    let cfg = config(THETA_EX);
    let mut p = HPoint::zeros(8);
    p.z[0] = Complex64::new(1.0, 0.0);
    assert_eq!(mu(&cfg, &p).unwrap(), [Quaternion::I, Quaternion::J, Quaternion::K]);
    assert!(nu(&cfg, &HPoint::zeros(8)).unwrap().iter().all(|q| q.norm() == 0.0));
    let mut sym = HPoint::zeros(8);
    for a in 0..4 {
        let v = Quaternion::new(0.1 * a as f64, 0.3, -0.2, 0.7);
        sym.set_coord(2 * a, v);
        sym.set_coord(2 * a + 1, v);
    }
    assert!(nu(&cfg, &sym).unwrap().iter().all(|q| q.norm() < 1e-15));
}

#[test]
fn generic_elements_move_points() {
    let cfg = config(THETA_EX);
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let mut moved = 0;
    for _ in 0..200 {
        let g = twistor_element(3).new_tree(&mut runner).unwrap().current();
        let p = point(8).new_tree(&mut runner).unwrap().current();
        let p = p.scaled(1.0 / p.norm());
        if fixed_point_residual(&cfg, &g, &p).unwrap() > 0.1 {
            moved += 1;
        }
    }
    assert!(moved >= 195, "{moved}");
}

// ------------------------------------------------------------------ numerics

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn projection_is_deterministic_and_rank_is_invariant(seed in any::<u64>(), g in twistor_element(3)) {
        let cfg = config(THETA_EX);
        let s = Solver::new(&cfg, Tolerances::default());
        let a = s.project(None, seed).unwrap();
        let b = s.project(None, seed).unwrap();
        prop_assert_eq!(&a.point, &b.point);
        prop_assume!(a.converged);
        let moved = act(&cfg, &g, &a.point).unwrap();
        prop_assert!(s.residual(&moved) < 1e-9);
        prop_assert_eq!(s.constraint_rank(&moved).unwrap().rank, s.constraint_rank(&a.point).unwrap().rank);
        prop_assert_eq!(s.orbit_rank(&moved, true).unwrap().rank, 7);
    }
}

// ------------------------------------------------------------ integer algebra

fn swap_sign(perm: [usize; 3]) -> i64 {
    let inv = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
    if inv % 2 == 0 { 1 } else { -1 }
}

proptest! {
    #[test]
    fn minors_are_alternating(m in theta_matrix(9), perm in Just([0usize, 1, 2]).prop_shuffle(), t in 0usize..4) {
        let mi = minors_theta(&m).unwrap();
        let idx: Vec<usize> = (0..4).filter(|&a| a != t).collect();
        let permuted = [idx[perm[0]], idx[perm[1]], idx[perm[2]]];
        prop_assert_eq!(mi.get(permuted), swap_sign(perm) * mi.get([idx[0], idx[1], idx[2]]));
    }

    #[test]
    fn theta_boxes_follow_the_minor_table(m in theta_matrix(9)) {
        let mi = minors_theta(&m).unwrap().as_array();
        let boxes = boxes_theta(&m).unwrap().values;
        for (row, b) in canonical_box_coefficients().iter().zip(boxes) {
            prop_assert_eq!(row.iter().zip(mi).map(|(c, d)| c * d).sum::<i64>(), b);
        }
    }

    #[test]
    fn omega_box_expansion(m in omega_matrix(9), s in any::<bool>(), t in any::<bool>()) {
        let d = minors_omega(&m).unwrap();
        let (s, t) = (if s { Sign::Plus } else { Sign::Minus }, if t { Sign::Plus } else { Sign::Minus });
        let (sv, tv) = (s.value(), t.value());
        prop_assert_eq!(box_omega(&m, [s, t]).unwrap(), tv * d.get(0, 2) - sv * d.get(0, 1) + sv * tv * d.get(1, 2));
    }

    #[test]
    fn smith_orders_multiply_over_blocks(
        a in prop::array::uniform2(prop::array::uniform2(-7i64..=7)),
        b in prop::array::uniform3(prop::array::uniform3(-4i64..=4)),
    ) {
        let av: Vec<Vec<i64>> = a.iter().map(|r| r.to_vec()).collect();
        let bv: Vec<Vec<i64>> = b.iter().map(|r| r.to_vec()).collect();
        let (Ok(ga), Ok(gb)) = (isotropy_group(&av), isotropy_group(&bv)) else {
            return Ok(());
        };
        let mut block = vec![vec![0i64; 5]; 5];
        for i in 0..2 { for j in 0..2 { block[i][j] = a[i][j]; } }
        for i in 0..3 { for j in 0..3 { block[2 + i][2 + j] = b[i][j]; } }
        prop_assert_eq!(isotropy_group(&block).unwrap().order, ga.order * gb.order);
    }
}

// -------------------------------------------------------------------- strata

fn admissible(m: WeightMatrix) -> bool {
    admissibility(&m).map(|a| a.admissible).unwrap_or(false)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn positivity_is_unique(m in theta_matrix(9)) {
        prop_assume!(admissible(WeightMatrix::Theta(m)));
        let p = v3_positive_sign_pattern(&m).unwrap();
        prop_assert_eq!(p.sum(), num_rational::Ratio::new(1, 2));
        prop_assert_eq!(p.signs[0], Sign::Plus);
        prop_assert!(p.solution.iter().all(|x| *x > num_rational::Ratio::from_integer(0)));
    }

    #[test]
    fn omega_positivity_is_unique(m in omega_matrix(9)) {
        prop_assume!(admissible(WeightMatrix::Omega(m)));
        let p = omega_positive_sign_pattern(&m).unwrap();
        prop_assert_eq!(p.sum(), num_rational::Ratio::new(1, 2));
    }

    #[test]
    fn catalogs_partition_and_never_mix(m in theta_matrix(6), o in omega_matrix(6)) {
        let opts = CatalogOptions { numeric: false, ..Default::default() };
        for w in [WeightMatrix::Theta(m), WeightMatrix::Omega(o)] {
            if !admissible(w) {
                continue;
            }
            for level in [Level::Twistor, Level::Sasakian] {
                let c = build_catalog(&w, level, &opts).unwrap();
                prop_assert!(c.self_check().is_ok(), "{:?}", c.self_check());
            }
        }
    }

    #[test]
    fn scaling_only_shrinks_the_pruned_set(m in theta_matrix(5), k in 2i64..4) {
        prop_assume!(admissible(WeightMatrix::Theta(m)));
        let opts = CatalogOptions { numeric: false, ..Default::default() };
        let big = m.scaled(k).unwrap();
        let a = build_catalog(&WeightMatrix::Theta(m), Level::Twistor, &opts).unwrap();
        let b = build_catalog(&WeightMatrix::Theta(big), Level::Twistor, &opts).unwrap();
        prop_assert_eq!(a.strata.len(), b.strata.len());
        for (x, y) in a.strata.iter().zip(&b.strata) {
            prop_assert_eq!(&x.descriptor, &y.descriptor);
            if x.family == StratumKind::PairPair {
                // no closed form; the verified order can only grow
                prop_assert_eq!(y.isotropy_determinant % x.isotropy_determinant, 0);
            } else {
                prop_assert_eq!(y.isotropy_determinant, k.pow(3) * x.isotropy_determinant);
            }
            prop_assert!(!y.pruned || x.pruned);
        }
    }
}

#[test]
fn degenerate_positivity_is_an_error() {
    // equal columns: two sign systems tie with a zero component
    let m = WeightMatrix::parse("1,1,2,3/1,1,5,7/2,2,1,4", Some(qkreduce::weights::Family::Theta)).unwrap();
    assert!(positive_sign_pattern(&m).is_err());
    let flat = WeightMatrix::parse("1,1,1/1,1,1", None).unwrap();
    match flat {
        WeightMatrix::Omega(o) => assert!(omega_positive_sign_pattern(&o).is_err()),
        _ => unreachable!(),
    }
}
