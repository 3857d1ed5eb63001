use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::exact::{Prime, Ring, Scalar};
use crate::monomial::{add_term, Accumulator, Monomial};

use super::PolyError;

/// A sparse commutative polynomial in `nvars` variables over one ring.
///
/// No zero coefficient is ever stored, so structural equality is equality of
/// polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    ring: Ring,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(nvars: usize, ring: Ring) -> Self {
        Polynomial {
            nvars,
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars, c.ring());
        add_term(&mut p.terms, Monomial::one(nvars), &c);
        p
    }

    pub fn one(nvars: usize, ring: Ring) -> Self {
        Self::constant(nvars, Scalar::one(ring))
    }

    /// The variable `x_{i+1}` (0-based `i`).
    pub fn var(nvars: usize, ring: Ring, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(nvars, i), Scalar::one(ring))
    }

    pub fn monomial(ring: Ring, m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(m.nvars(), ring);
        add_term(&mut p.terms, m, &c);
        p
    }

    /// Sums the given terms; repeated monomials are merged.
    pub fn from_terms(
        nvars: usize,
        ring: Ring,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self, PolyError> {
        let mut p = Self::zero(nvars, ring);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(PolyError::Dimension {
                    expected: nvars,
                    found: m.nvars(),
                });
            }
            if c.ring() != ring {
                return Err(PolyError::RingMismatch {
                    left: ring,
                    right: c.ring(),
                });
            }
            add_term(&mut p.terms, m, &c);
        }
        Ok(p)
    }

    pub(crate) fn from_sorted(nvars: usize, ring: Ring, terms: BTreeMap<Monomial, Scalar>) -> Self {
        Polynomial { nvars, ring, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Terms in increasing lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| Scalar::zero(self.ring))
    }

    /// `Some(c)` if the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero(self.ring)),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Maximum total degree over the support; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Largest term in lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::Dimension {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch {
                left: self.ring,
                right: other.ring,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_term(&mut out.terms, m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_compatible(other)?;
        let mut acc = Accumulator::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.add(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(Polynomial::from_sorted(self.nvars, self.ring, acc.into_sorted()))
    }

    pub fn scale(&self, s: &Scalar) -> Result<Polynomial, PolyError> {
        if s.ring() != self.ring {
            return Err(PolyError::RingMismatch {
                left: self.ring,
                right: s.ring(),
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c * s))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(Polynomial::from_sorted(self.nvars, self.ring, terms))
    }

    pub fn pow(&self, mut k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars, self.ring);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal `∂/∂x_{i+1}` (0-based `i`). Over 𝔽_p the factor `e` is reduced,
    /// so `x^p` differentiates to zero.
    pub fn partial_derivative(&self, i: usize) -> Result<Polynomial, PolyError> {
        if i >= self.nvars {
            return Err(PolyError::VariableIndex {
                index: i,
                nvars: self.nvars,
            });
        }
        let mut out = Polynomial::zero(self.nvars, self.ring);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let factor = Scalar::from_i64(self.ring, i64::from(e));
            add_term(&mut out.terms, m.with_exponent(i, e - 1), &(c * &factor));
        }
        Ok(out)
    }

    /// Substitutes `args[j]` for `x_{j+1}`. All arguments share one ring and
    /// variable count, which become those of the result.
    pub fn substitute(&self, args: &[Polynomial]) -> Result<Polynomial, PolyError> {
        if args.len() != self.nvars {
            return Err(PolyError::Dimension {
                expected: self.nvars,
                found: args.len(),
            });
        }
        let Some(first) = args.first() else {
            return Ok(self.clone());
        };
        for a in args {
            first.check_compatible(a)?;
        }
        if first.ring != self.ring {
            return Err(PolyError::RingMismatch {
                left: self.ring,
                right: first.ring,
            });
        }
        let mut powers: Vec<Vec<Polynomial>> =
            vec![vec![Polynomial::one(first.nvars, first.ring)]; args.len()];
        let mut out = Polynomial::zero(first.nvars, first.ring);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(first.nvars, c.clone());
            for (j, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e as usize {
                    let next = powers[j].last().expect("x^0 present") * &args[j];
                    powers[j].push(next);
                }
                term = &term * &powers[j][e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Evaluates at a point of the coefficient ring.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::Dimension {
                expected: self.nvars,
                found: point.len(),
            });
        }
        if let Some(bad) = point.iter().find(|s| s.ring() != self.ring) {
            return Err(PolyError::RingMismatch {
                left: self.ring,
                right: bad.ring(),
            });
        }
        let mut acc = Scalar::zero(self.ring);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = &t * &v.pow(u64::from(e));
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Exact quotient `self / divisor` in an integral domain, by repeatedly
    /// cancelling the lexicographic leading term. Fails if a remainder is left.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_compatible(divisor)?;
        let (dm, dc) = divisor.leading_term().ok_or(PolyError::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.nvars, self.ring);
        while let Some((rm, rc)) = rem.leading_term() {
            if !dm.divides(rm) {
                return Err(PolyError::NotExactlyDivisible);
            }
            let qm = dm.quotient_of(rm);
            let qc = rc.div_exact(dc).map_err(|_| PolyError::NotExactlyDivisible)?;
            let step = Polynomial::monomial(self.ring, qm.clone(), qc.clone());
            rem = rem.try_sub(&step.try_mul(divisor)?)?;
            add_term(&mut quot.terms, qm, &qc);
        }
        Ok(quot)
    }

    /// Moves every coefficient into `target` along the natural map.
    pub fn to_ring(&self, target: Ring) -> Result<Polynomial, PolyError> {
        let mut out = Polynomial::zero(self.nvars, target);
        for (m, c) in &self.terms {
            add_term(&mut out.terms, m.clone(), &c.to_ring(target)?);
        }
        Ok(out)
    }

    /// Coefficientwise reduction of an integer polynomial mod `p`.
    pub fn reduce_mod_p(&self, p: Prime) -> Result<Polynomial, PolyError> {
        if self.ring != Ring::Integer {
            return Err(PolyError::RingMismatch {
                left: self.ring,
                right: Ring::Integer,
            });
        }
        self.to_ring(Ring::PrimeField(p))
    }

    /// Coefficientwise canonical lift from 𝔽_p to ℤ.
    pub fn lift_canonical(&self) -> Result<Polynomial, PolyError> {
        let mut out = Polynomial::zero(self.nvars, Ring::Integer);
        for (m, c) in &self.terms {
            add_term(&mut out.terms, m.clone(), &c.lift_canonical()?);
        }
        Ok(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::from_sorted(
            self.nvars,
            self.ring,
            self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        )
    }
}

macro_rules! panicking_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

panicking_binop!(Add, add, try_add);
panicking_binop!(Sub, sub, try_sub);
panicking_binop!(Mul, mul, try_mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> Ring {
        Ring::PrimeField(Prime::new(p).unwrap())
    }

    fn x(ring: Ring, nvars: usize, i: usize) -> Polynomial {
        Polynomial::var(nvars, ring, i)
    }

    fn c(ring: Ring, nvars: usize, v: i64) -> Polynomial {
        Polynomial::constant(nvars, Scalar::from_i64(ring, v))
    }

    #[test]
    fn difference_of_squares() {
        let r = Ring::Integer;
        let (x1, x2) = (x(r, 2, 0), x(r, 2, 1));
        let prod = &(&x1 + &x2) * &(&x1 - &x2);
        assert_eq!(prod, &x1.pow(2) - &x2.pow(2));
    }

    #[test]
    fn frobenius_cross_term_vanishes() {
        let r = fp(2);
        let x1 = x(r, 1, 0);
        let sq = (&x1 + &c(r, 1, 1)).pow(2);
        assert_eq!(sq, &x1.pow(2) + &c(r, 1, 1));
    }

    #[test]
    fn scale_by_zero_prunes() {
        let p = x(Ring::Rational, 1, 0);
        let z = p.scale(&Scalar::zero(Ring::Rational)).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.term_count(), 0);
    }

    #[test]
    fn derivatives() {
        let r = Ring::Integer;
        let (x1, x2) = (x(r, 2, 0), x(r, 2, 1));
        let f = &x1.pow(2) * &x2;
        assert_eq!(f.partial_derivative(0).unwrap(), &(&c(r, 2, 2) * &x1) * &x2);
        assert!(x1.partial_derivative(1).unwrap().is_zero());
        assert!(x(fp(3), 1, 0).pow(3).partial_derivative(0).unwrap().is_zero());
        assert!(matches!(
            f.partial_derivative(2),
            Err(PolyError::VariableIndex { index: 2, nvars: 2 })
        ));
    }

    #[test]
    fn mismatches_are_errors() {
        let a = x(Ring::Integer, 2, 0);
        assert!(matches!(a.try_add(&x(Ring::Integer, 3, 0)), Err(PolyError::Dimension { .. })));
        assert!(matches!(a.try_mul(&x(Ring::Rational, 2, 0)), Err(PolyError::RingMismatch { .. })));
    }

    #[test]
    fn exact_division() {
        let r = Ring::Integer;
        let (x1, x2) = (x(r, 2, 0), x(r, 2, 1));
        let a = &(&x1 + &x2) * &(&(&c(r, 2, 3) * &x1) - &x2.pow(2));
        assert_eq!(a.div_exact(&(&x1 + &x2)).unwrap(), &(&c(r, 2, 3) * &x1) - &x2.pow(2));
        assert_eq!(x1.div_exact(&x2), Err(PolyError::NotExactlyDivisible));
        assert_eq!(
            c(r, 2, 3).div_exact(&c(r, 2, 2)),
            Err(PolyError::NotExactlyDivisible)
        );
    }

    #[test]
    fn substitution_and_evaluation() {
        let r = Ring::Rational;
        let x1 = x(r, 1, 0);
        let g = x1.pow(2);
        let f = &x1 + &c(r, 1, 1);
        assert_eq!(g.substitute(&[f]).unwrap(), &(&x1.pow(2) + &(&c(r, 1, 2) * &x1)) + &c(r, 1, 1));
        let v = g.evaluate(&[Scalar::from_i64(r, 3)]).unwrap();
        assert_eq!(v, Scalar::from_i64(r, 9));
    }
}
