//! Independent re-derivation of the root-datum constants in an orthogonal
//! coordinate realization. Nothing here reuses the library's reflection
//! closure or pairing tables: roots are written down by formula, pairings
//! are computed from the bilinear form, and the results are compared
//! against the library's fundamental-weight-coordinate world.

use num::{BigRational, BigUint, One};
use ree_f4::lattice::{RootDatum, Weight, RANK};

/// Doubled orthogonal coordinates, so all four simple roots are integral.
type Vec4 = [i64; 4];

fn dot(a: &Vec4, b: &Vec4) -> i64 {
    (0..4).map(|i| a[i] * b[i]).sum()
}

fn add(a: &Vec4, b: &Vec4) -> Vec4 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn scale(a: &Vec4, k: i64) -> Vec4 {
    [a[0] * k, a[1] * k, a[2] * k, a[3] * k]
}

/// <x, alpha^vee> = 2 (x, alpha) / (alpha, alpha), scale-invariant.
fn pairing(x: &Vec4, alpha: &Vec4) -> i64 {
    let num = 2 * dot(x, alpha);
    let den = dot(alpha, alpha);
    assert_eq!(num % den, 0, "orthogonal-coordinate pairing must be integral");
    num / den
}

fn reflect(x: &Vec4, alpha: &Vec4) -> Vec4 {
    add(x, &scale(alpha, -pairing(x, alpha)))
}

/// All 48 roots: 8 of type +-2e_i, 24 of type +-2e_i +- 2e_j, 16 of type
/// (+-1, +-1, +-1, +-1), in doubled coordinates.
fn all_roots() -> Vec<Vec4> {
    let mut roots = Vec::new();
    for i in 0..4 {
        for s in [2i64, -2] {
            let mut v = [0i64; 4];
            v[i] = s;
            roots.push(v);
        }
    }
    for i in 0..4 {
        for j in (i + 1)..4 {
            for si in [2i64, -2] {
                for sj in [2i64, -2] {
                    let mut v = [0i64; 4];
                    v[i] = si;
                    v[j] = sj;
                    roots.push(v);
                }
            }
        }
    }
    for s1 in [1i64, -1] {
        for s2 in [1i64, -1] {
            for s3 in [1i64, -1] {
                for s4 in [1i64, -1] {
                    roots.push([s1, s2, s3, s4]);
                }
            }
        }
    }
    roots
}

fn simple_roots() -> [Vec4; 4] {
    [
        [0, 2, -2, 0],  // e2 - e3
        [0, 0, 2, -2],  // e3 - e4
        [0, 0, 0, 2],   // e4
        [1, -1, -1, -1], // (e1 - e2 - e3 - e4)/2
    ]
}

fn fundamental_weights() -> [Vec4; 4] {
    // e1+e2, 2e1+e2+e3, (3e1+e2+e3+e4)/2, e1 in doubled coordinates.
    let fw = [[2, 2, 0, 0], [4, 2, 2, 0], [3, 1, 1, 1], [2, 0, 0, 0]];
    let simples = simple_roots();
    for (i, w) in fw.iter().enumerate() {
        for (j, a) in simples.iter().enumerate() {
            assert_eq!(pairing(w, a), i64::from(i == j), "fw {i} vs simple {j}");
        }
    }
    fw
}

fn to_orthogonal(lam: &Weight) -> Vec4 {
    let fw = fundamental_weights();
    let mut v = [0i64; 4];
    for i in 0..RANK {
        v = add(&v, &scale(&fw[i], lam.0[i]));
    }
    v
}

#[test]
fn root_census_and_cartan_matrix() {
    let roots = all_roots();
    assert_eq!(roots.len(), 48);
    let short: Vec<&Vec4> = roots.iter().filter(|r| dot(r, r) == 4).collect();
    let long: Vec<&Vec4> = roots.iter().filter(|r| dot(r, r) == 8).collect();
    assert_eq!(short.len(), 24);
    assert_eq!(long.len(), 24);

    let simples = simple_roots();
    let datum = RootDatum::f4();
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(
                pairing(&simples[i], &simples[j]),
                datum.cartan()[i][j],
                "Cartan entry ({i}, {j})"
            );
        }
    }
}

#[test]
fn highest_short_root_and_pairing_vector() {
    let simples = simple_roots();
    let dominant_short: Vec<Vec4> = all_roots()
        .into_iter()
        .filter(|r| dot(r, r) == 4 && simples.iter().all(|a| pairing(r, a) >= 0))
        .collect();
    assert_eq!(dominant_short, vec![[2, 0, 0, 0]], "unique dominant short root is e1");
    let a0 = dominant_short[0];

    let datum = RootDatum::f4();
    let fw = fundamental_weights();
    let expected = [2i64, 4, 3, 2];
    for i in 0..4 {
        assert_eq!(pairing(&fw[i], &a0), expected[i]);
        assert_eq!(
            datum.alpha0_pairing(&Weight::fundamental(i + 1)),
            expected[i]
        );
    }
    // rho and the truncation cutoff.
    let rho = fw.iter().fold([0i64; 4], |acc, w| add(&acc, w));
    assert_eq!(pairing(&rho, &a0), 11);
    assert_eq!(datum.alpha0_pairing(&Weight::rho()), 11);
    assert_eq!(2 * datum.coxeter_number() - 2, 22);
}

#[test]
fn weyl_group_order_by_orbit_of_regular_point() {
    let simples = simple_roots();
    let rho = fundamental_weights().iter().fold([0i64; 4], |acc, w| add(&acc, w));
    let mut seen = std::collections::BTreeSet::new();
    let mut frontier = vec![rho];
    seen.insert(rho);
    while let Some(x) = frontier.pop() {
        for a in &simples {
            let y = reflect(&x, a);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    assert_eq!(seen.len(), 1152);
    assert_eq!(RootDatum::f4().weyl_order(), 1152);
}

#[test]
fn dimension_formula_in_orthogonal_coordinates() {
    let simples = simple_roots();
    let rho = fundamental_weights().iter().fold([0i64; 4], |acc, w| add(&acc, w));
    let positives: Vec<Vec4> = all_roots()
        .into_iter()
        .filter(|r| dot(r, &rho) > 0)
        .collect();
    assert_eq!(positives.len(), 24);
    // Positivity agrees with expansion in simple roots.
    for p in &positives {
        assert!(simples.iter().any(|a| pairing(p, a) != 0));
    }

    let dim = |lam: &Weight| -> BigUint {
        let le = to_orthogonal(lam);
        let shifted = add(&le, &rho);
        let mut acc = BigRational::one();
        for alpha in &positives {
            acc *= BigRational::new(
                dot(&shifted, alpha).into(),
                dot(&rho, alpha).into(),
            );
        }
        assert!(acc.is_integer());
        acc.to_integer().to_biguint().expect("dimension is positive")
    };
    let datum = RootDatum::f4();
    for (lam, want) in [
        (Weight::ZERO, 1u64),
        (Weight::fundamental(4), 26),
        (Weight::fundamental(1), 52),
        (Weight::fundamental(3), 273),
        (Weight::fundamental(2), 1274),
        (Weight([0, 0, 0, 2]), 324),
        (Weight([1, 0, 0, 1]), 1053),
        (Weight([10, 0, 0, 0]), 542393670),
    ] {
        assert_eq!(dim(&lam), BigUint::from(want), "orthogonal dim of {lam}");
        assert_eq!(
            ree_f4::characters::weyl_dim(datum, &lam).unwrap(),
            BigUint::from(want),
            "library dim of {lam}"
        );
    }
}

#[test]
fn invariant_form_matches_orthogonal_dot() {
    let datum = RootDatum::f4();
    let samples = [
        Weight::ZERO,
        Weight::fundamental(1),
        Weight::fundamental(2),
        Weight::fundamental(3),
        Weight::fundamental(4),
        Weight([1, 2, 3, 4]),
        Weight([-2, 1, 0, 5]),
    ];
    // The library normalizes short roots to squared length 2; doubled
    // orthogonal coordinates give them 4, so form = dot / 2.
    for a in &samples {
        for b in &samples {
            let lhs = datum.form(a, b);
            let rhs = dot(&to_orthogonal(a), &to_orthogonal(b));
            assert_eq!(lhs * 2, i128::from(rhs), "form at {a}, {b}");
        }
    }
}

#[test]
fn gamma_count_from_pairing_vector() {
    // Count dominant weights with pairing against the highest short coroot
    // at most 21, using only the independently derived vector (2, 4, 3, 2).
    let mut count = 0u32;
    for c1 in 0..=10 {
        for c2 in 0..=5 {
            for c3 in 0..=7 {
                for c4 in 0..=10 {
                    if 2 * c1 + 4 * c2 + 3 * c3 + 2 * c4 <= 21 {
                        count += 1;
                    }
                }
            }
        }
    }
    assert_eq!(count as usize, ree_f4::characters::GAMMA_COUNT);
    assert_eq!(ree_f4::characters::gamma_set(RootDatum::f4()).len(), count as usize);
}

#[test]
fn negatives_return_to_dominance_trivially() {
    // -w0 = id: the dominant representative of -w is w for every
    // fundamental weight, derived here by orbit search in orthogonal
    // coordinates.
    let simples = simple_roots();
    let datum = RootDatum::f4();
    for i in 1..=RANK {
        let w = Weight::fundamental(i);
        let src = to_orthogonal(&w);
        let neg = scale(&src, -1);
        // Walk neg back to the dominant chamber.
        let mut x = neg;
        loop {
            match simples.iter().find(|a| pairing(&x, a) < 0) {
                Some(a) => x = reflect(&x, a),
                None => break,
            }
        }
        assert_eq!(x, src, "-w0 fixes fundamental weight {i}");
        assert_eq!(datum.dual_weight(&w), w);
    }
}
