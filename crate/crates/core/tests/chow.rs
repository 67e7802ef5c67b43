use contact_atlas_core::chow::{
    bundle_mul, chern_classes, cp_example_numbers, degree3, evaluate, pair, pairing_table, parse,
    self_intersection, shokurov_threshold_check, surface_mul, BundleClass, ChowError, CurveClass,
    DivisorClassP, RuledSurfaceParams, SurfaceClass,
};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn p(g: i64, e: i64) -> RuledSurfaceParams {
    RuledSurfaceParams::new(g, e).unwrap()
}

fn r(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

fn ints(v: &[BigRational]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x.to_integer()).unwrap()).collect()
}

const GRID: [(i64, i64); 4] = [(0, 0), (0, 1), (1, 0), (2, 3)];

/// Independent model: a divisor `pi^*(u l + v B0) + x xi` as `(u, v, x)`,
/// with degrees computed by pushing forward, `pi_* xi = 1`,
/// `pi_* xi^2 = c1`, `pi_* xi^3 = c1^2 - c2`.
type Div = (i64, i64, i64);

fn surf(a: (i64, i64), b: (i64, i64), e: i64) -> i64 {
    // (u l + v B0)(u' l + v' B0) = u v' + v u' - e v v'
    a.0 * b.1 + a.1 * b.0 - e * a.1 * b.1
}

fn triple(d: [Div; 3], g: i64, e: i64) -> i64 {
    let c1 = (2 - 2 * g + e, 2);
    let c1_sq = surf(c1, c1, e);
    let c2 = 4 * (1 - g);
    let [a, b, c] = d;
    let s = |x: Div| (x.0, x.1);
    a.2 * b.2 * c.2 * (c1_sq - c2)
        + a.2 * b.2 * surf(s(c), c1, e)
        + a.2 * c.2 * surf(s(b), c1, e)
        + b.2 * c.2 * surf(s(a), c1, e)
        + a.2 * surf(s(b), s(c), e)
        + b.2 * surf(s(a), s(c), e)
        + c.2 * surf(s(a), s(b), e)
}

/// `sigma_*[C] = (xi - pi^*(2 B0 + e l)) . pi^* C` and `C_pi = pi^* l . pi^* B0`.
fn oracle_pair(d: Div, curve: usize, g: i64, e: i64) -> i64 {
    let section: Div = (-e, -2, 1);
    match curve {
        0 => triple([d, section, (1, 0, 0)], g, e),
        1 => triple([d, section, (0, 1, 0)], g, e),
        _ => triple([d, (1, 0, 0), (0, 1, 0)], g, e),
    }
}

#[test]
fn surface_products() {
    let q = p(0, 3);
    assert!(surface_mul(&SurfaceClass::ell(), &SurfaceClass::ell(), &q).unwrap().is_zero());
    assert_eq!(surface_mul(&SurfaceClass::ell(), &SurfaceClass::b0(), &q).unwrap(), SurfaceClass::pt());
    assert_eq!(
        surface_mul(&SurfaceClass::b0(), &SurfaceClass::b0(), &q).unwrap(),
        SurfaceClass::pt().scale(&r(-3))
    );
    assert!(matches!(
        surface_mul(&SurfaceClass::pt(), &SurfaceClass::ell(), &q),
        Err(ChowError::DegreeOverflow { degree: 3, max: 2 })
    ));
}

#[test]
fn printed_table_matches() {
    for (g, e) in GRID {
        let printed = [[0, 1, 0], [1, -e, 0], [0, 2 - 2 * g, 1]];
        let t = pairing_table(&p(g, e));
        for (row, want) in t.iter().zip(printed) {
            assert_eq!(ints(row), want.to_vec(), "(g,e)=({g},{e})");
        }
        assert_eq!(t[2][1], r(2 - 2 * g));
        assert_eq!(t[1][1], r(-e));
    }
    assert_eq!(ints(&pairing_table(&p(1, 0))[2]), vec![0, 0, 1]);
    assert_eq!(ints(&pairing_table(&p(2, 3))[1]), vec![1, -3, 0]);
}

#[test]
fn table_matches_pushforward_oracle() {
    for g in 0..=4 {
        for e in 0..=4 {
            let t = pairing_table(&p(g, e));
            let basis: [Div; 3] = [(1, 0, 0), (0, 1, 0), (0, 0, 1)];
            for (i, (row, d)) in t.iter().zip(basis).enumerate() {
                for (c, entry) in row.iter().enumerate() {
                    assert_eq!(*entry, r(oracle_pair(d, c, g, e)), "g={g} e={e} row={i} col={c}");
                }
            }
        }
    }
}

#[test]
fn xi_cubed_grid() {
    let xi = DivisorClassP::from_i64(0, 0, 1);
    for g in [0, 1, 2, 5, 10] {
        for e in [0, 1, 3] {
            assert_eq!(self_intersection(&xi, &p(g, e)), r(4 * (1 - g)));
        }
    }
    for g in 0..=10 {
        let cube = BundleClass::xi().pow(3, &p(g, 2)).unwrap();
        assert_eq!(degree3(&cube).unwrap(), r(4 * (1 - g)));
        assert_eq!(triple([(0, 0, 1); 3], g, 2), 4 * (1 - g));
    }
}

#[test]
fn chern_number_identities() {
    for (g, e) in GRID.iter().copied().chain((0..=10).flat_map(|g| (0..=3).map(move |e| (g, e)))) {
        let q = p(g, e);
        let (c1, c2) = chern_classes(&q);
        let c1_sq = surface_mul(&c1, &c1, &q).unwrap();
        assert_eq!(c1_sq, SurfaceClass::pt().scale(&r(8 * (1 - g))));
        let p_a = -g;
        assert_eq!(&c1_sq.cpt + &c2.cpt, r(12 * (1 + p_a)));
    }
}

#[test]
fn anticanonical_kills_section_ruling() {
    for g in 0..=6 {
        for e in 0..=4 {
            let c = CurveClass::basis();
            assert!(pair(&DivisorClassP::anticanonical(), &c[0], &p(g, e)).is_zero());
        }
    }
    // negative e is allowed off the rational base, with a warning
    let q = p(2, -1);
    assert!(!q.warnings().is_empty());
    assert!(pair(&DivisorClassP::anticanonical(), &CurveClass::basis()[0], &q).is_zero());
    assert!(RuledSurfaceParams::new(0, -1).is_err());
    assert!(RuledSurfaceParams::new(-1, 0).is_err());
}

#[test]
fn shokurov_examples() {
    let s = shokurov_threshold_check(&p(0, 1), 4);
    assert!(s.threshold_ok);
    assert_eq!(ints(&s.pairings), vec![0, 6, 1]);
    assert_eq!(s.top_self_intersection, r(28));

    let s = shokurov_threshold_check(&p(0, 0), 0);
    assert_eq!(ints(&s.pairings), vec![0, 2, 1]);
    assert_eq!(s.top_self_intersection, r(4));

    let s = shokurov_threshold_check(&p(1, 0), 1);
    assert!(s.threshold_ok);
    assert_eq!(s.pairings[1], r(1));
    assert_eq!(s.top_self_intersection, r(6));

    let s = shokurov_threshold_check(&p(2, 3), 19);
    assert!(s.threshold_ok && s.positivity_holds);
    assert_eq!(s.top_self_intersection, r(110));

    let s = shokurov_threshold_check(&p(2, 3), 9);
    assert!(!s.threshold_ok);
}

#[test]
fn shokurov_grid() {
    for g in 0..=2 {
        for e in 0..=3 {
            let a = 3 * (2 * g - 2).max(e) + 1;
            let q = p(g, e);
            let s = shokurov_threshold_check(&q, a as u64);
            assert!(s.threshold_ok && s.positivity_holds);
            assert!(s.pairings[0].is_zero());
            assert!(s.pairings[1].is_positive());
            assert_eq!(s.pairings[2], r(1));
            assert_eq!(s.top_self_intersection, r(6 * a + 4 * (1 - g)));
            assert!(s.top_self_intersection.is_positive());
            let d: Div = (a, 0, 1);
            assert_eq!(s.top_self_intersection, r(triple([d; 3], g, e)));
            for c in 0..3 {
                assert_eq!(s.pairings[c], r(oracle_pair(d, c, g, e)));
            }
            assert_eq!(pair(&DivisorClassP::d_a(a), &CurveClass::basis()[1], &q), r(a + 2 - 2 * g));
        }
    }
}

#[test]
fn pullbacks_have_degree_zero() {
    let q = p(3, 1);
    let gens = [SurfaceClass::ell(), SurfaceClass::b0(), SurfaceClass::pt()];
    for x in &gens {
        for y in &gens {
            for z in &gens {
                let (dx, dy, dz) = (x.degree().unwrap(), y.degree().unwrap(), z.degree().unwrap());
                if dx + dy + dz != 3 {
                    continue;
                }
                let a = BundleClass::pullback(x.clone());
                let b = BundleClass::pullback(y.clone());
                let c = BundleClass::pullback(z.clone());
                let prod = bundle_mul(&bundle_mul(&a, &b, &q).unwrap(), &c, &q).unwrap();
                assert!(degree3(&prod).unwrap().is_zero());
            }
        }
    }
    let pt_l = bundle_mul(
        &BundleClass::pullback(SurfaceClass::pt()),
        &BundleClass::pullback(SurfaceClass::ell()),
        &q,
    )
    .unwrap();
    assert!(degree3(&pt_l).unwrap().is_zero());
}

#[test]
fn elliptic_example() {
    let cp = cp_example_numbers();
    assert!(cp.xi_cubed.is_zero());
    assert_eq!(ints(&cp.anticanonical_pairings), vec![0, 0, 2]);
    assert_eq!(ints(&cp.d_pairings), vec![1, 1, 2]);
    assert!(cp.d_trivial_on.is_empty());
    assert!(cp.e0_identification.starts_with("ambiguous"));
    // D = pi^* B0 + pi^* l + 2 xi by the oracle
    for c in 0..3 {
        assert_eq!(cp.d_pairings[c], r(oracle_pair((1, 1, 2), c, 1, 0)));
    }
}

#[test]
fn expressions() {
    let q = p(0, 0);
    let eval = |s: &str| evaluate(&parse(s).unwrap(), &q).unwrap();
    assert_eq!(degree3(&eval("xi^3")).unwrap(), r(4));
    assert_eq!(degree3(&eval("-K*-K*-K")).unwrap(), r(32));
    assert_eq!(degree3(&eval("xi*xi*xi")).unwrap(), r(4));
    assert_eq!(degree3(&eval("(2 l + xi)^3")).unwrap(), r(6 * 2 + 4));
    assert_eq!(degree3(&eval("1/2 xi^2 * l")).unwrap(), r(1));
    assert_eq!(eval("xi*l - xi*l"), BundleClass::zero());
    assert_eq!(degree3(&eval("B0 * pt")).unwrap(), r(0));
    for (src, col) in [("xi +", 5), ("xi ** l", 5), ("(xi", 4), ("q", 1), ("1/0", 3)] {
        match parse(src) {
            Err(ChowError::Parse { column, .. }) => assert_eq!(column, col, "{src}"),
            other => panic!("{src}: {other:?}"),
        }
    }
    assert!(degree3(&eval("xi^2")).is_err());
}

fn small_class() -> impl Strategy<Value = BundleClass> {
    prop::collection::vec((-5i64..=5, 1i64..=4), 4).prop_map(|c| {
        let q = |i: usize| BigRational::new(c[i].0.into(), c[i].1.into());
        BundleClass::new(
            SurfaceClass::new(q(0), q(1), q(2), BigRational::zero()),
            SurfaceClass::new(q(3), BigRational::zero(), BigRational::zero(), BigRational::zero()),
        )
    })
}

proptest! {
    #[test]
    fn bundle_mul_commutes_and_associates(x in small_class(), y in small_class(), z in small_class(), g in 0i64..=4, e in 0i64..=3) {
        let q = p(g, e);
        let xy = bundle_mul(&x, &y, &q).unwrap();
        prop_assert_eq!(&xy, &bundle_mul(&y, &x, &q).unwrap());
        let left = bundle_mul(&xy, &z, &q).unwrap();
        let right = bundle_mul(&x, &bundle_mul(&y, &z, &q).unwrap(), &q).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn triple_products_match_oracle(d in prop::collection::vec((-4i64..=4, -4i64..=4, -3i64..=3), 3), g in 0i64..=4, e in 0i64..=3) {
        let q = p(g, e);
        let cls: Vec<BundleClass> = d.iter()
            .map(|&(u, v, x)| DivisorClassP::from_i64(u, v, x).to_bundle_class())
            .collect();
        let prod = bundle_mul(&bundle_mul(&cls[0], &cls[1], &q).unwrap(), &cls[2], &q).unwrap();
        prop_assert_eq!(degree3(&prod).unwrap(), r(triple([d[0], d[1], d[2]], g, e)));
    }
}
