use num_rational::Ratio;
use qkreduce::weights::{
    admissible_omega, admissible_theta, box_identities_check, box_omega, box_theta, boxes_omega, boxes_theta,
    canonical_box_coefficients, feasible_grassmannians, fit_box_coefficients, free_impossibility_search,
    is_free_omega, isotropy_group, minors_omega, minors_theta, printed_box_coefficients, sample_admissible,
    sign_triples, smith_normal_form, symbolic_free_check, Family, OmegaMatrix, Sign, ThetaMatrix, WeightError,
    WeightMatrix,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P: Sign = Sign::Plus;
const M: Sign = Sign::Minus;

fn theta(rows: [[i64; 4]; 3]) -> ThetaMatrix {
    ThetaMatrix::new(rows).unwrap()
}

fn omega(rows: [[i64; 3]; 2]) -> OmegaMatrix {
    OmegaMatrix::new(rows).unwrap()
}

fn theta_ex() -> ThetaMatrix {
    theta([[1, 0, 1, 1], [0, 1, 1, 1], [1, 1, 0, 1]])
}

// Leibniz sum over permutations, nothing shared with the library.
fn det3(m: [[i64; 3]; 3]) -> i64 {
    const PERMS: [([usize; 3], i64); 6] =
        [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([0, 2, 1], -1), ([2, 1, 0], -1), ([1, 0, 2], -1)];
    PERMS.iter().map(|(p, s)| s * m[0][p[0]] * m[1][p[1]] * m[2][p[2]]).sum()
}

fn cols3(a: [i64; 3], b: [i64; 3], c: [i64; 3]) -> i64 {
    det3([[a[0], b[0], c[0]], [a[1], b[1], c[1]], [a[2], b[2], c[2]]])
}

fn oracle_minors(r: [[i64; 4]; 3]) -> [i64; 4] {
    let v = |a: usize| [r[0][a], r[1][a], r[2][a]];
    [cols3(v(0), v(1), v(2)), cols3(v(0), v(1), v(3)), cols3(v(0), v(2), v(3)), cols3(v(1), v(2), v(3))]
}

fn oracle_box(r: [[i64; 4]; 3], s: [Sign; 3]) -> i64 {
    let v = |a: usize| [r[0][a], r[1][a], r[2][a]];
    let c = |b: usize, t: Sign| {
        let (x, y) = (v(0), v(b));
        [x[0] + t.value() * y[0], x[1] + t.value() * y[1], x[2] + t.value() * y[2]]
    };
    cols3(c(1, s[0]), c(2, s[1]), c(3, s[2]))
}

#[test]
fn theta_example_minors_and_boxes() {
    let m = theta_ex();
    assert_eq!(minors_theta(&m).unwrap().as_array(), [-2, -1, 1, -1]);
    assert_eq!(oracle_minors(m.rows()), [-2, -1, 1, -1]);
    assert_eq!(boxes_theta(&m).unwrap().values, [-1, -3, 3, 1, 3, 1, -5, 1]);
    for s in sign_triples() {
        assert_eq!(box_theta(&m, s).unwrap(), oracle_box(m.rows(), s));
    }
    assert_eq!(det3([[1, 1, 2], [2, 1, 1], [2, 1, 2]]), -1);
    assert_eq!(box_theta(&m, [P, P, P]).unwrap(), -1);
    assert_eq!(det3([[1, -1, 0], [0, -1, 1], [0, -1, 0]]), 1);
    assert_eq!(box_theta(&m, [M, M, M]).unwrap(), 1);
    let a = admissible_theta(&m).unwrap();
    assert!(a.admissible);
    assert_eq!(a.determinants.len(), 12);
}

#[test]
fn degenerate_theta_inputs() {
    let padded = theta([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]);
    assert_eq!(minors_theta(&padded).unwrap().as_array(), [1, 0, 0, 0]);
    let a = admissible_theta(&padded).unwrap();
    assert!(!a.admissible);
    assert!(a.witness.is_some());

    let twin = theta([[1, 1, 2, 5], [3, 3, -1, 0], [2, 2, 7, 1]]);
    let mi = minors_theta(&twin).unwrap();
    assert_eq!((mi.get([0, 1, 2]), mi.get([0, 1, 3])), (0, 0));

    let zero = theta([[0; 4]; 3]);
    assert_eq!(boxes_theta(&zero).unwrap().values, [0; 8]);
    assert!(box_identities_check(&zero).unwrap().rows.iter().all(|r| r.value == 0 && r.fitted_value == 0));
}

#[test]
fn battery_decides_like_the_oracle() {
    let r = [[1, 0, 1, 1], [0, 1, 1, 1], [1, 1, 1, 1]];
    let oracle = oracle_minors(r).iter().all(|&d| d != 0) && sign_triples().iter().all(|&s| oracle_box(r, s) != 0);
    assert_eq!(admissible_theta(&theta(r)).unwrap().admissible, oracle);

    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..500 {
        let mut r = [[0i64; 4]; 3];
        r.iter_mut().flatten().for_each(|v| *v = rng.random_range(-3..=3));
        let oracle = oracle_minors(r).iter().all(|&d| d != 0) && sign_triples().iter().all(|&s| oracle_box(r, s) != 0);
        assert_eq!(admissible_theta(&theta(r)).unwrap().admissible, oracle, "{r:?}");
    }
}

#[test]
fn box_coefficients_match_printed_table() {
    // fitted from random data, then compared against the transcribed list
    assert_eq!(*canonical_box_coefficients(), printed_box_coefficients());
    let frozen = [
        [1, -1, 1, 1],
        [1, 1, -1, -1],
        [-1, -1, -1, -1],
        [-1, 1, 1, 1],
        [-1, 1, 1, -1],
        [-1, -1, -1, 1],
        [1, 1, -1, 1],
        [1, -1, 1, -1],
    ];
    assert_eq!(*canonical_box_coefficients(), frozen);
    let rep = box_identities_check(&theta_ex()).unwrap();
    assert!(rep.all_match);
    // box(+++) = Δ₁₂₃ − Δ₁₂₄ + Δ₁₃₄ + Δ₂₃₄ and box(−−−) = Δ₁₂₃ − Δ₁₂₄ + Δ₁₃₄ − Δ₂₃₄
    assert_eq!(rep.rows[0].value, -2 + 1 + 1 - 1);
    assert_eq!(rep.rows[7].value, -2 + 1 + 1 + 1);
}

#[test]
fn fit_needs_four_independent_samples() {
    let m = theta_ex();
    assert!(fit_box_coefficients(&[m, m, m, m, m]).is_err());
}

#[test]
fn omega_battery() {
    let ex = omega([[1, 2, 3], [1, 3, 6]]);
    assert_eq!(minors_omega(&ex).unwrap().as_array(), [1, 3, 3]);
    assert!(admissible_omega(&ex).unwrap().admissible);
    assert_eq!(box_omega(&ex, [P, P]).unwrap(), 3 * 7 - 4 * 4);
    assert_eq!(box_omega(&ex, [P, P]).unwrap(), 3 - 1 + 3);
    assert!(is_free_omega(&ex).unwrap());

    let bad = omega([[1, 2, 3], [1, 3, 5]]);
    assert_eq!(minors_omega(&bad).unwrap().as_array(), [1, 2, 1]);
    let a = admissible_omega(&bad).unwrap();
    assert!(!a.admissible && a.witness.is_some());

    let even = omega([[2, 0, 2], [0, 2, 2]]);
    assert_eq!(minors_omega(&even).unwrap().as_array(), [4, 4, -4]);
    assert!(!is_free_omega(&even).unwrap());

    let same = omega([[1, 1, 1], [2, 2, 2]]);
    assert!(!admissible_omega(&same).unwrap().admissible);
    assert_eq!(boxes_omega(&same).unwrap().values, [0; 4]);
}

#[test]
fn isotropy_small_cases() {
    let g = isotropy_group(&[vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
    assert_eq!(g.order, 2);
    assert_eq!(g.generators, vec![vec![Ratio::new(1, 2), Ratio::from_integer(0), Ratio::from_integer(0)]]);
    assert_eq!(isotropy_group(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap().order, 1);
    assert!(matches!(
        isotropy_group(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 1]]),
        Err(WeightError::ContinuousStabilizer)
    ));
    assert!(isotropy_group(&[vec![1, 2, 3], vec![2, 4, 6]]).is_err());
}

#[test]
fn isotropy_order_matches_grid_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut done = 0;
    while done < 50 {
        let mut b = [[0i64; 3]; 3];
        b.iter_mut().flatten().for_each(|v| *v = rng.random_range(-6..=6));
        let d = det3(b).abs();
        if d == 0 || d > 60 {
            continue;
        }
        done += 1;
        let mut count = 0u64;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if b.iter().all(|r| (r[0] * i + r[1] * j + r[2] * k) % d == 0) {
                        count += 1;
                    }
                }
            }
        }
        let g = isotropy_group(&b.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap();
        assert_eq!(g.order, count, "{b:?}");
        assert_eq!(g.invariants.iter().product::<u64>(), g.order);
        for gen in &g.generators {
            for r in &b {
                let s: Ratio<i64> = r.iter().zip(gen).map(|(&c, &x)| x * c).sum();
                assert!(s.is_integer(), "generator {gen:?} not a solution for {b:?}");
            }
        }
    }
}

#[test]
fn smith_form_of_rectangular_system() {
    let s = smith_normal_form(&[vec![2, 4], vec![6, 8], vec![4, 4]]).unwrap();
    let d: Vec<i128> = s.d.iter().map(|x| x.abs()).collect();
    assert_eq!(d, vec![2, 4]);
}

#[test]
fn free_action_search() {
    let r = free_impossibility_search(1);
    assert_eq!(r.scanned, 3u64.pow(12));
    assert!(r.counterexamples.is_empty());

    let s = symbolic_free_check([1, 1, -1, 1]);
    assert_eq!(s.deltas, ["-1", "-1", "2", "-1"].map(String::from));
    assert!(s.violates);
    assert!(symbolic_free_check([-1, -1, 1, -1]).violates);
}

#[test]
fn admissible_grassmannians() {
    let ns: Vec<usize> = feasible_grassmannians().iter().map(|g| g.n).collect();
    assert_eq!(ns, vec![5, 6, 7]);
    assert_eq!(feasible_grassmannians()[2].label, "Gr4(R^8)");
}

#[test]
fn parse_and_literal() {
    let m = WeightMatrix::parse("1,0,1,1/0,1,1,1/1,1,0,1", None).unwrap();
    assert_eq!(m.family(), Family::Theta);
    assert_eq!(WeightMatrix::parse(&m.literal(), None).unwrap(), m);
    assert_eq!(WeightMatrix::parse("1,2,3/1,3,6", None).unwrap().family(), Family::Omega);
    assert!(WeightMatrix::parse("1,2,x/1,3,6", None).is_err());
    assert!(WeightMatrix::parse("1,2/3,4", None).is_err());
    assert!(WeightMatrix::parse("1,2,3/1,3,6", Some(Family::Theta)).is_err());
}

#[test]
fn seeded_sampling_is_reproducible() {
    let a = sample_admissible(Family::Omega, 5, 10, 9);
    assert_eq!(a, sample_admissible(Family::Omega, 5, 10, 9));
    assert!(a.iter().all(|m| m.family() == Family::Omega));
}
