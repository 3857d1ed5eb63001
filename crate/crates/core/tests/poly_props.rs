mod common;

use proptest::prelude::*;

use common::{bracket_by_formula, fp, laplace_det, poly_strategy};
use weylab::exact::Ring;
use weylab::poly::{compose_map, poisson_standard, PolyMap, Polynomial};

fn triple(nvars: usize, ring: Ring) -> impl Strategy<Value = (Polynomial, Polynomial, Polynomial)> {
    let s = poly_strategy(nvars, ring, 3, 4);
    (s.clone(), s.clone(), s)
}

fn bracket_laws(n: usize, a: &Polynomial, b: &Polynomial, c: &Polynomial) {
    let br = |x: &Polynomial, y: &Polynomial| poisson_standard(x, y, n).unwrap();
    assert_eq!(br(a, b), bracket_by_formula(a, b, n));
    assert_eq!(br(a, b), -&br(b, a));
    assert_eq!(br(&(a + b), c), &br(a, c) + &br(b, c));
    let jacobi = &(&br(a, &br(b, c)) + &br(b, &br(c, a))) + &br(c, &br(a, b));
    assert!(jacobi.is_zero());
    assert_eq!(br(a, &(b * c)), &(&br(a, b) * c) + &(b * &br(a, c)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn poisson_laws_two_vars((a, b, c) in triple(2, Ring::Rational)) {
        bracket_laws(1, &a, &b, &c);
    }

    #[test]
    fn poisson_laws_four_vars((a, b, c) in triple(4, Ring::Rational)) {
        bracket_laws(2, &a, &b, &c);
    }

    #[test]
    fn poisson_laws_four_vars_f7((a, b, c) in triple(4, fp(7))) {
        bracket_laws(2, &a, &b, &c);
    }
}

fn map_strategy(nvars: usize, ring: Ring) -> impl Strategy<Value = PolyMap> {
    prop::collection::vec(poly_strategy(nvars, ring, 2, 4), nvars)
        .prop_map(|c| PolyMap::new(c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn jacobian_chain_rule(g in map_strategy(2, Ring::Rational), f in map_strategy(2, Ring::Rational)) {
        let gf = compose_map(&g, &f).unwrap();
        let lhs = gf.jacobian_det().unwrap();
        let jg_at_f = g.jacobian_det().unwrap().substitute(f.components()).unwrap();
        prop_assert_eq!(lhs, &jg_at_f * &f.jacobian_det().unwrap());
    }

    #[test]
    fn bareiss_matches_cofactor_expansion(f in map_strategy(3, Ring::Rational)) {
        prop_assert_eq!(f.jacobian_det().unwrap(), laplace_det(&f.jacobian_matrix().unwrap()));
    }
}

/// Triangular maps `x_i ↦ x_i + φ(x_{i+1}, …)` are invertible; their
/// inverses must compose to the identity and respect the degree bound.
fn triangular(ring: Ring) -> impl Strategy<Value = PolyMap> {
    (poly_strategy(1, ring, 3, 3), poly_strategy(1, ring, 2, 3)).prop_map(move |(phi, psi)| {
        let x1 = Polynomial::var(3, ring, 0);
        let x2 = Polynomial::var(3, ring, 1);
        let x3 = Polynomial::var(3, ring, 2);
        let phi = phi.substitute(std::slice::from_ref(&x3)).unwrap();
        let psi = psi.substitute(std::slice::from_ref(&x3)).unwrap();
        let second = &x2 + &psi;
        // compose the shear (x1 + φ(x3)) with a shear of x1 by x2^2
        let first = &(&x1 + &phi) + &second.pow(2);
        PolyMap::new(vec![first, second, x3]).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn inverses_are_two_sided(f in triangular(Ring::Rational)) {
        let d = f.degree().unwrap();
        let g = f.invert(None).unwrap().expect("triangular maps are invertible");
        prop_assert!(f.compose(&g).unwrap().is_identity());
        prop_assert!(g.compose(&f).unwrap().is_identity());
        prop_assert!(f.jacobian_det().unwrap().as_constant().is_some_and(|c| !c.is_zero()));
        prop_assert!(g.degree().unwrap() <= d.pow(2));
    }
}
