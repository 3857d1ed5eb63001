//! The center of `A_{n,𝔽_p}` and the canonical Poisson bracket on it.
//!
//! In characteristic `p` the center is the polynomial ring generated by
//! `y_1^p, …, y_{2n}^p`. A normal-ordered element is central exactly when
//! every exponent in its support is divisible by `p`, and the central element
//! `y^{pβ}` corresponds to the commutative monomial `x^β`.

use crate::exact::{Prime, Ring, Scalar};
use crate::monomial::Monomial;
use crate::poly::Polynomial;

use super::{WeylElement, WeylError, WeylSignature};

fn prime_of(a: &WeylElement) -> Result<Prime, WeylError> {
    a.ring().prime().ok_or(WeylError::NotPrimeField(a.ring()))
}

/// Centrality by the exponent criterion.
pub fn is_central(a: &WeylElement) -> Result<bool, WeylError> {
    let p = prime_of(a)?.get() as u32;
    Ok(a.terms().all(|(m, _)| m.all_divisible_by(p)))
}

/// Centrality by commutators with every generator.
pub fn is_central_by_commutators(a: &WeylElement) -> Result<bool, WeylError> {
    prime_of(a)?;
    let sig = a.signature();
    for i in 0..sig.generators() {
        let y = WeylElement::generator(sig, a.ring(), i);
        if !a.commutator(&y)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The polynomial `h` with `h(y_1^p, …, y_{2n}^p) = a`.
pub fn extract_center_poly(a: &WeylElement) -> Result<Polynomial, WeylError> {
    let p = prime_of(a)?.get() as u32;
    let nvars = a.signature().generators();
    let mut terms = Vec::with_capacity(a.term_count());
    for (m, c) in a.terms() {
        if !m.all_divisible_by(p) {
            return Err(WeylError::NotCentral {
                exponents: m.exponents().to_vec(),
            });
        }
        terms.push((m.divided_by(p), c.clone()));
    }
    Ok(Polynomial::from_terms(nvars, a.ring(), terms)?)
}

/// The central element `h(y_1^p, …, y_{2n}^p)` of a polynomial over 𝔽_p.
pub fn embed_central(h: &Polynomial, sig: WeylSignature) -> Result<WeylElement, WeylError> {
    let p = h.ring().prime().ok_or(WeylError::NotPrimeField(h.ring()))?;
    if h.nvars() != sig.generators() {
        return Err(WeylError::ExponentLength {
            expected: sig.generators(),
            found: h.nvars(),
        });
    }
    let k = p.get() as u32;
    WeylElement::from_terms(
        sig,
        h.ring(),
        h.terms().map(|(m, c)| (m.scaled(k), c.clone())),
    )
}

/// `{a, b} = [ã, b̃] / p mod p`, computed from integer lifts `ã`, `b̃` of
/// central elements.
///
/// The commutator is taken in `A_{n,ℤ}`; every coefficient must be divisible
/// by `p` and the quotient, reduced mod `p`, must be central. Either failure
/// means the inputs were not lifts of central elements.
pub fn bracket_of_lifts(a_lift: &WeylElement, b_lift: &WeylElement, p: Prime) -> Result<Polynomial, WeylError> {
    for lift in [a_lift, b_lift] {
        if lift.ring() != Ring::Integer {
            return Err(WeylError::RingMismatch {
                left: lift.ring(),
                right: Ring::Integer,
            });
        }
    }
    let comm = a_lift.commutator(b_lift)?;
    let divisor = Scalar::from_i64(Ring::Integer, p.get() as i64);
    let mut quotient: Vec<(Monomial, Scalar)> = Vec::with_capacity(comm.term_count());
    for (m, c) in comm.terms() {
        let q = c.div_exact(&divisor).map_err(|_| WeylError::BracketNotDivisible {
            p: p.get(),
            coefficient: c.to_string(),
        })?;
        quotient.push((m.clone(), q));
    }
    let reduced = WeylElement::from_terms(comm.signature(), Ring::Integer, quotient)?.reduce_mod_p(p)?;
    if !is_central(&reduced)? {
        return Err(WeylError::BracketNotCentral);
    }
    extract_center_poly(&reduced)
}

/// The canonical Poisson bracket on `C_p = 𝔽_p[x_1, …, x_{2n}]`, computed
/// through the Weyl algebra with canonical lifts into `[0, p−1]`.
pub fn canonical_poisson(a: &Polynomial, b: &Polynomial, p: Prime, n: usize) -> Result<Polynomial, WeylError> {
    let ring = Ring::PrimeField(p);
    for x in [a, b] {
        if x.ring() != ring {
            return Err(WeylError::RingMismatch {
                left: x.ring(),
                right: ring,
            });
        }
    }
    let sig = WeylSignature::new(n);
    let a_lift = embed_central(a, sig)?.lift_canonical()?;
    let b_lift = embed_central(b, sig)?.lift_canonical()?;
    bracket_of_lifts(&a_lift, &b_lift, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> Ring {
        Ring::PrimeField(Prime::new(p).unwrap())
    }

    fn y(ring: Ring, i: usize) -> WeylElement {
        WeylElement::generator(WeylSignature::new(1), ring, i)
    }

    fn x(ring: Ring, i: usize) -> Polynomial {
        Polynomial::var(2, ring, i)
    }

    #[test]
    fn centrality_examples() {
        let r = fp(3);
        assert!(is_central(&y(r, 0).pow(3)).unwrap());
        assert!(!is_central(&y(r, 0)).unwrap());
        let m = &y(r, 0).pow(3) * &y(r, 1).pow(3);
        assert!(is_central(&m).unwrap());
        assert!(is_central_by_commutators(&m).unwrap());
        assert!(!is_central_by_commutators(&y(r, 1)).unwrap());
    }

    #[test]
    fn centrality_needs_prime_field() {
        assert_eq!(
            is_central(&y(Ring::Integer, 0)),
            Err(WeylError::NotPrimeField(Ring::Integer))
        );
        assert!(is_central_by_commutators(&y(Ring::Rational, 0)).is_err());
    }

    #[test]
    fn extraction() {
        let r = fp(3);
        let sig = WeylSignature::new(1);
        let a = &(&y(r, 0).pow(3) + &y(r, 1).pow(6)) + &WeylElement::from_i64(sig, r, 2);
        let h = extract_center_poly(&a).unwrap();
        let expected = &(&x(r, 0) + &x(r, 1).pow(2)) + &Polynomial::constant(2, Scalar::from_i64(r, 2));
        assert_eq!(h, expected);
        assert_eq!(embed_central(&h, sig).unwrap(), a);
        assert_eq!(
            extract_center_poly(&WeylElement::one(sig, r)).unwrap(),
            Polynomial::one(2, r)
        );
        assert!(matches!(extract_center_poly(&y(r, 0)), Err(WeylError::NotCentral { .. })));
    }

    #[test]
    fn wilson_sign() {
        for p in [2, 3, 5, 7] {
            let prime = Prime::new(p).unwrap();
            let r = fp(p);
            let v = canonical_poisson(&x(r, 1), &x(r, 0), prime, 1).unwrap();
            assert_eq!(v, Polynomial::constant(2, Scalar::from_i64(r, -1)), "p = {p}");
        }
    }

    #[test]
    fn non_central_lift_is_rejected() {
        let p = Prime::new(3).unwrap();
        let r = Ring::Integer;
        assert!(matches!(
            bracket_of_lifts(&y(r, 1), &y(r, 0), p),
            Err(WeylError::BracketNotDivisible { p: 3, .. })
        ));
    }
}
