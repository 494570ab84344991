use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rootdatum::algebraicity::{
    is_c_algebraic, is_l_algebraic, random_conjugation_fixture, twist_by_twisting_element, InfinitesimalParameter,
    PlaceKind,
};
use rootdatum::lattice::{
    contains, int_vec, pullback_lattice, pushout_lattice, smith_normal_form, solve_rational, IntMatrix, LatticeMap,
    RationalVector,
};
use rootdatum::lgroup_cgroup::enumerate_twisting_elements;
use rootdatum::root_datum::{standard, weyl_group, GroupDatum, GroupName};
use rootdatum::satake::{satake_charpoly_gl2, unramified_twist_gl, GL2FamilySpec, SqrtPScalar};

fn matrix(rows: usize, cols: usize, range: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(range, rows * cols).prop_map(move |e| IntMatrix::from_i64(rows, cols, &e))
}

fn shaped_matrix(max: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| matrix(r, c, -6..=6))
}

fn half(n: i64) -> BigRational {
    BigRational::new(n.into(), 2.into())
}

fn half_vector(n: usize) -> impl Strategy<Value = RationalVector> {
    prop::collection::vec(-9i64..=9, n).prop_map(|v| RationalVector(v.into_iter().map(half).collect()))
}

/// A real parameter, or a complex one whose components differ by an integer vector.
fn parameter(n: usize) -> impl Strategy<Value = InfinitesimalParameter> {
    (half_vector(n), prop::option::of(prop::collection::vec(-3i64..=3, n))).prop_map(|(sigma, shift)| match shift {
        None => InfinitesimalParameter::real(sigma),
        Some(d) => {
            let tau = sigma.add(&RationalVector::from_i64(&d)).unwrap();
            InfinitesimalParameter::new(sigma, tau, PlaceKind::Complex).unwrap()
        }
    })
}

fn small_groups() -> Vec<(GroupName, usize)> {
    vec![
        (GroupName::GL, 2),
        (GroupName::GL, 3),
        (GroupName::SL, 2),
        (GroupName::SL, 3),
        (GroupName::PGL, 2),
        (GroupName::PGL, 3),
        (GroupName::Sp, 2),
        (GroupName::Torus, 2),
        (GroupName::UnitaryQuasiSplit, 3),
    ]
}

fn group() -> impl Strategy<Value = (GroupName, usize)> {
    prop::sample::select(small_groups())
}

fn with_parameter(g: (GroupName, usize)) -> impl Strategy<Value = ((GroupName, usize), InfinitesimalParameter)> {
    let rank = standard(g.0, g.1).unwrap().0.rank();
    (Just(g), parameter(rank))
}

fn group_with_parameter() -> impl Strategy<Value = ((GroupName, usize), InfinitesimalParameter)> {
    group().prop_flat_map(with_parameter)
}

fn gl_or_sl_with_parameter() -> impl Strategy<Value = ((GroupName, usize), InfinitesimalParameter)> {
    (1usize..=4, any::<bool>())
        .prop_map(|(n, sl)| if sl && n > 1 { (GroupName::SL, n) } else { (GroupName::GL, n) })
        .prop_flat_map(with_parameter)
}

fn is_diagonal(m: &IntMatrix) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || m[(i, j)].is_zero()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_form_is_a_valid_factorization(m in shaped_matrix(4)) {
        let snf = smith_normal_form(&m);
        prop_assert!(snf.u.is_unimodular());
        prop_assert!(snf.v.is_unimodular());
        prop_assert_eq!(&(&snf.u * &m) * &snf.v, snf.d.clone());
        prop_assert!(is_diagonal(&snf.d));
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(diag.iter().all(|d| d.is_positive()));
    }

    #[test]
    fn membership_agrees_with_rational_solve(g in matrix(3, 3, -4..=4), v in prop::collection::vec(-8i64..=8, 3)) {
        prop_assume!(!g.det().unwrap().is_zero());
        let v = RationalVector::from_i64(&v);
        let coords = solve_rational(&g, &v.0).unwrap().expect("invertible");
        prop_assert_eq!(contains(&v, &g).unwrap(), coords.iter().all(|c| c.is_integer()));
    }

    #[test]
    fn images_of_small_coefficients_are_members(g in shaped_matrix(3), c in prop::collection::vec(-3i64..=3, 3)) {
        let c = int_vec(&c[..g.cols()]);
        let v = RationalVector::from_ints(&g.mul_vec(&c).unwrap());
        prop_assert!(contains(&v, &g).unwrap());
        let halved = v.scale(&half(1));
        if !halved.is_integral() {
            // Half of a vector with an odd entry never lies in an integer span.
            prop_assert!(!contains(&halved, &g).unwrap());
        }
    }

    #[test]
    fn pullback_is_the_fiber_product(f in matrix(2, 2, -3..=3), g in matrix(2, 2, -3..=3)) {
        let (l, p1, p2) = pullback_lattice(&LatticeMap::from_matrix(f.clone()), &LatticeMap::from_matrix(g.clone())).unwrap();
        prop_assert_eq!(&f * p1.matrix(), &g * p2.matrix());
        let basis = p1.matrix().vstack(p2.matrix()).unwrap();
        prop_assert_eq!(basis.cols(), l.rank);
        for x in -2i64..=2 {
            for y in -2i64..=2 {
                for z in -2i64..=2 {
                    for w in -2i64..=2 {
                        if f.mul_vec(&int_vec(&[x, y])).unwrap() == g.mul_vec(&int_vec(&[z, w])).unwrap() {
                            let pt = RationalVector::from_i64(&[x, y, z, w]);
                            prop_assert!(basis.cols() > 0 && contains(&pt, &basis).unwrap(), "({x},{y},{z},{w}) missing");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pushout_square_commutes(f in matrix(3, 2, -3..=3), a in -3i64..=3, b in -3i64..=3) {
        // g is unimodular, so the anti-diagonal embedding is saturated.
        let g = IntMatrix::from_i64(2, 2, &[1, a, b, 1 + a * b]);
        let po = pushout_lattice(&LatticeMap::from_matrix(f.clone()), &LatticeMap::from_matrix(g.clone())).unwrap();
        prop_assert_eq!(po.lattice.rank, 3);
        prop_assert_eq!(po.left.matrix() * &f, po.right.matrix() * &g);
    }

    #[test]
    fn algebraicity_is_weyl_invariant(((name, n), p) in group_with_parameter()) {
        let (rd, _) = standard(name, n).unwrap();
        let weyl = weyl_group(&rd).unwrap();
        let (l, c) = (is_l_algebraic(&p, &rd).unwrap(), is_c_algebraic(&p, &rd).unwrap());
        for w in &weyl {
            let act = |v: &RationalVector| RationalVector(w.mul_rat_vec(&v.0).unwrap());
            let q = InfinitesimalParameter::new(act(p.lambda_sigma()), act(p.lambda_tau()), p.place()).unwrap();
            prop_assert_eq!(is_l_algebraic(&q, &rd).unwrap(), l);
            prop_assert_eq!(is_c_algebraic(&q, &rd).unwrap(), c);
        }
    }

    #[test]
    fn twisting_exchanges_c_and_l(((name, n), p) in gl_or_sl_with_parameter()) {
        let (rd, galois) = standard(name, n).unwrap();
        let search = enumerate_twisting_elements(&rd, &galois, 2).unwrap();
        prop_assert!(search.exists);
        for theta in search.elements.iter().take(4) {
            let twisted = twist_by_twisting_element(&p, &rd, &galois, theta).unwrap();
            prop_assert_eq!(is_l_algebraic(&twisted, &rd).unwrap(), is_c_algebraic(&p, &rd).unwrap());
        }
    }

    #[test]
    fn alpha_infinity_squares_to_one(seed in any::<u64>(), n in 1usize..=4, conj in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fixture = random_conjugation_fixture(&mut rng, n, conj).unwrap();
        let r = fixture.alpha_infinity().unwrap();
        prop_assert!(r.order_divides_two);
        prop_assert!(r.swap_invariant);
        prop_assert!(r.minus_i_conjugate);
    }

    #[test]
    fn twisting_commutes_with_the_charpoly(
        k in 2i64..=12,
        s in -4i64..=4,
        t in -4i64..=4,
        a in -30i64..=30,
        p in prop::sample::select(vec![2u64, 3, 5, 7, 11]),
    ) {
        let spec = GL2FamilySpec::holomorphic(k, half(s), vec![(p, BigRational::from_integer(a.into()))]).unwrap();
        let det = int_vec(&[1, 1]);
        let twisted = unramified_twist_gl(&satake_charpoly_gl2(&spec, p).unwrap(), &det, &half(t), p).unwrap();
        prop_assert_eq!(twisted, satake_charpoly_gl2(&spec.with_s(half(s + t)), p).unwrap());
    }

    #[test]
    fn scalar_arithmetic_laws(
        a in (-20i64..=20, 1i64..=9, -3i64..=3),
        b in (-20i64..=20, 1i64..=9, -3i64..=3),
        c in (-20i64..=20, 1i64..=9, -3i64..=3),
    ) {
        let mk = |(n, d, e): (i64, i64, i64)| SqrtPScalar::new(3, BigRational::new(n.into(), d.into()), e);
        let (x, y, z) = (mk(a), mk(b), mk(c));
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        if !x.is_zero() {
            prop_assert_eq!(x.mul(&x.inv().unwrap()).unwrap(), SqrtPScalar::one(3));
        }
        let back: SqrtPScalar = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn datum_json_survives_a_change_of_basis((name, n) in group(), a in -2i64..=2) {
        let (rd, galois) = standard(name, n).unwrap();
        let r = rd.rank();
        let mut basis = IntMatrix::identity(r);
        if r > 1 {
            basis[(0, 1)] = BigInt::from(a);
        }
        let moved = rd.change_basis(&basis).unwrap();
        prop_assume!(galois.is_trivial());
        let g = GroupDatum::new(moved, galois).unwrap();
        let text = g.to_json().unwrap();
        let back = GroupDatum::from_json(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_json().unwrap(), text);
        prop_assert!(back.datum.cartan_matrix() == rd.cartan_matrix());
    }
}
