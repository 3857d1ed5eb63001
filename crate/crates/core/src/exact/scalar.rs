use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ArithError, Prime};

/// The coefficient ring a [`Scalar`] lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integer,
    Rational,
    PrimeField(Prime),
}

impl Ring {
    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Integer)
    }

    /// `p` for a prime field, 0 otherwise.
    pub fn characteristic(self) -> u64 {
        match self {
            Ring::PrimeField(p) => p.get(),
            _ => 0,
        }
    }

    pub fn prime(self) -> Option<Prime> {
        match self {
            Ring::PrimeField(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integer => f.write_str("Z"),
            Ring::Rational => f.write_str("Q"),
            Ring::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = ArithError;

    /// Accepts `Z`, `Q` or `Fp:<p>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "Z" => Ok(Ring::Integer),
            "Q" => Ok(Ring::Rational),
            other => {
                let p = other
                    .strip_prefix("Fp:")
                    .and_then(|rest| rest.trim().parse::<u64>().ok())
                    .ok_or_else(|| ArithError::UnknownRing(other.to_string()))?;
                Ok(Ring::PrimeField(Prime::new(p)?))
            }
        }
    }
}

/// One of the four arithmetic operations of [`Scalar::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// An exact number tagged with its ring.
///
/// Rationals are kept in lowest terms with a positive denominator and residues
/// lie in `[0, p)`. Binary operations between different rings fail with
/// [`ArithError::RingMismatch`]; the operator impls (`+`, `-`, `*`) panic in
/// that case and are meant for code that already guarantees matching rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Integer(BigInt),
    Rational(BigRational),
    Residue(u64, Prime),
}

impl Scalar {
    pub fn zero(ring: Ring) -> Self {
        Self::from_i64(ring, 0)
    }

    pub fn one(ring: Ring) -> Self {
        Self::from_i64(ring, 1)
    }

    pub fn from_i64(ring: Ring, v: i64) -> Self {
        match ring {
            Ring::Integer => Scalar::Integer(BigInt::from(v)),
            Ring::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Ring::PrimeField(p) => Scalar::Residue(v.rem_euclid(p.get() as i64) as u64, p),
        }
    }

    pub fn from_bigint(ring: Ring, v: &BigInt) -> Self {
        match ring {
            Ring::Integer => Scalar::Integer(v.clone()),
            Ring::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            Ring::PrimeField(p) => Scalar::Residue(residue_of(v, p), p),
        }
    }

    /// `num / den` in `ring`. Over ℤ the quotient must be exact; over 𝔽_p the
    /// denominator must be a unit.
    pub fn from_ratio(ring: Ring, num: &BigInt, den: &BigInt) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        match ring {
            Ring::Integer => {
                let (q, r) = num.div_rem(den);
                if r.is_zero() {
                    Ok(Scalar::Integer(q))
                } else {
                    Err(ArithError::NotRepresentable {
                        value: format!("{num}/{den}"),
                        ring,
                    })
                }
            }
            Ring::Rational => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            Ring::PrimeField(_) => {
                Scalar::from_bigint(ring, num).try_div(&Scalar::from_bigint(ring, den))
            }
        }
    }

    pub fn ring(&self) -> Ring {
        match self {
            Scalar::Integer(_) => Ring::Integer,
            Scalar::Rational(_) => Ring::Rational,
            Scalar::Residue(_, p) => Ring::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Integer(v) => v.is_zero(),
            Scalar::Rational(v) => v.is_zero(),
            Scalar::Residue(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Integer(v) => v.is_one(),
            Scalar::Rational(v) => v.is_one(),
            Scalar::Residue(v, _) => *v == 1,
        }
    }

    /// True for values whose rendering starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Integer(v) => v.is_negative(),
            Scalar::Rational(v) => v.is_negative(),
            Scalar::Residue(..) => false,
        }
    }

    pub fn as_bigint(&self) -> Option<&BigInt> {
        match self {
            Scalar::Integer(v) => Some(v),
            _ => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Residue(v, _) => Some(*v),
            _ => None,
        }
    }

    fn check_same(&self, other: &Scalar) -> Result<(), ArithError> {
        if self.ring() == other.ring() {
            Ok(())
        } else {
            Err(ArithError::RingMismatch {
                left: self.ring(),
                right: other.ring(),
            })
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (Scalar::Integer(a), Scalar::Integer(b)) => Scalar::Integer(a + b),
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue(a, p), Scalar::Residue(b, _)) => Scalar::Residue((a + b) % p.get(), *p),
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (Scalar::Integer(a), Scalar::Integer(b)) => Scalar::Integer(a * b),
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue(a, p), Scalar::Residue(b, _)) => Scalar::Residue(a * b % p.get(), *p),
            _ => unreachable!(),
        })
    }

    /// Field division. Fails over ℤ and for a zero divisor.
    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        self.check_same(other)?;
        if !self.ring().is_field() {
            return Err(ArithError::NotAField(self.ring()));
        }
        self.try_mul(&other.inv()?)
    }

    /// Division that is also allowed over ℤ when the quotient is exact.
    pub fn div_exact(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        match (self, other) {
            (Scalar::Integer(a), Scalar::Integer(b)) => {
                if b.is_zero() {
                    return Err(ArithError::DivisionByZero);
                }
                let (q, r) = a.div_rem(b);
                if r.is_zero() {
                    Ok(Scalar::Integer(q))
                } else {
                    Err(ArithError::NotDivisible {
                        dividend: a.to_string(),
                        divisor: b.to_string(),
                    })
                }
            }
            _ => self.try_div(other),
        }
    }

    pub fn arith(&self, other: &Scalar, op: ArithOp) -> Result<Scalar, ArithError> {
        match op {
            ArithOp::Add => self.try_add(other),
            ArithOp::Sub => self.try_sub(other),
            ArithOp::Mul => self.try_mul(other),
            ArithOp::Div => self.try_div(other),
        }
    }

    pub fn inv(&self) -> Result<Scalar, ArithError> {
        match self {
            Scalar::Integer(_) => Err(ArithError::NotAField(Ring::Integer)),
            Scalar::Rational(v) => {
                if v.is_zero() {
                    Err(ArithError::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(v.recip()))
                }
            }
            Scalar::Residue(v, p) => p
                .inverse(*v)
                .map(|inv| Scalar::Residue(inv, *p))
                .ok_or(ArithError::DivisionByZero),
        }
    }

    pub fn pow(&self, exp: u64) -> Scalar {
        match self {
            Scalar::Residue(v, p) => Scalar::Residue(p.pow(*v, exp), *p),
            _ => {
                let mut acc = Scalar::one(self.ring());
                let mut base = self.clone();
                let mut e = exp;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = &acc * &base;
                    }
                    base = &base * &base;
                    e >>= 1;
                }
                acc
            }
        }
    }

    /// The image of an integer under ℤ → 𝔽_p.
    pub fn reduce_mod_p(&self, p: Prime) -> Result<Scalar, ArithError> {
        match self {
            Scalar::Integer(v) => Ok(Scalar::Residue(residue_of(v, p), p)),
            other => Err(ArithError::RingMismatch {
                left: other.ring(),
                right: Ring::Integer,
            }),
        }
    }

    /// The representative in `[0, p-1]` of a residue, as an integer.
    pub fn lift_canonical(&self) -> Result<Scalar, ArithError> {
        match self {
            Scalar::Residue(v, _) => Ok(Scalar::Integer(BigInt::from(*v))),
            other => Err(ArithError::RingMismatch {
                left: other.ring(),
                right: Ring::PrimeField(Prime::new(2).expect("2 is prime")),
            }),
        }
    }

    /// Coerce into `target` along the natural maps ℤ → ℚ, ℤ → 𝔽_p, ℚ → 𝔽_p
    /// (denominator a unit) and ℚ → ℤ (integral values only).
    pub fn to_ring(&self, target: Ring) -> Result<Scalar, ArithError> {
        if self.ring() == target {
            return Ok(self.clone());
        }
        let not_representable = || ArithError::NotRepresentable {
            value: self.to_string(),
            ring: target,
        };
        match (self, target) {
            (Scalar::Integer(v), _) => Ok(Scalar::from_bigint(target, v)),
            (Scalar::Rational(v), _) => {
                Scalar::from_ratio(target, v.numer(), v.denom()).map_err(|_| not_representable())
            }
            (Scalar::Residue(..), _) => Err(not_representable()),
        }
    }

    /// Small integer view, used for exponent-like values and tests.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Integer(v) => v.to_i64(),
            Scalar::Rational(v) if v.is_integer() => v.numer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Residue(v, _) => Some(*v as i64),
        }
    }
}

fn residue_of(v: &BigInt, p: Prime) -> u64 {
    let m = BigInt::from(p.get());
    v.mod_floor(&m).to_u64().expect("residue below p")
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Integer(v) => write!(f, "{v}"),
            Scalar::Rational(v) => {
                if v.is_integer() {
                    write!(f, "{}", v.numer())
                } else {
                    write!(f, "{}/{}", v.numer(), v.denom())
                }
            }
            Scalar::Residue(v, _) => write!(f, "{v}"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Integer(v) => Scalar::Integer(-v),
            Scalar::Rational(v) => Scalar::Rational(-v),
            Scalar::Residue(v, p) => Scalar::Residue((p.get() - v) % p.get(), *p),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! panicking_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

panicking_binop!(Add, add, try_add);
panicking_binop!(Sub, sub, try_sub);
panicking_binop!(Mul, mul, try_mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Integer(a), Scalar::Integer(b)) => *a += b,
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            (Scalar::Residue(a, p), Scalar::Residue(b, q)) if p == q => *a = (*a + b) % p.get(),
            (lhs, rhs) => panic!(
                "{}",
                ArithError::RingMismatch {
                    left: lhs.ring(),
                    right: rhs.ring()
                }
            ),
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self += &-rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> Ring {
        Ring::PrimeField(Prime::new(p).unwrap())
    }

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(Ring::Rational, &BigInt::from(n), &BigInt::from(d)).unwrap()
    }

    #[test]
    fn documented_examples() {
        assert_eq!(q(1, 2).arith(&q(1, 3), ArithOp::Add).unwrap(), q(5, 6));
        let f5 = fp(5);
        let four = Scalar::from_i64(f5, 4);
        assert_eq!(four.arith(&four, ArithOp::Mul).unwrap(), Scalar::from_i64(f5, 1));
        let f7 = fp(7);
        let r = Scalar::from_i64(f7, 3)
            .arith(&Scalar::from_i64(f7, 2), ArithOp::Div)
            .unwrap();
        assert_eq!(r, Scalar::from_i64(f7, 5));
    }

    #[test]
    fn rationals_are_normalized() {
        let v = q(6, -4);
        let Scalar::Rational(r) = &v else { panic!() };
        assert_eq!(*r.numer(), BigInt::from(-3));
        assert_eq!(*r.denom(), BigInt::from(2));
        assert_eq!(v.to_string(), "-3/2");
    }

    #[test]
    fn error_paths() {
        let z = Scalar::from_i64(Ring::Integer, 3);
        let f = Scalar::from_i64(fp(5), 3);
        assert!(matches!(z.try_add(&f), Err(ArithError::RingMismatch { .. })));
        assert_eq!(
            z.arith(&z, ArithOp::Div),
            Err(ArithError::NotAField(Ring::Integer))
        );
        assert_eq!(f.try_div(&Scalar::zero(fp(5))), Err(ArithError::DivisionByZero));
        assert_eq!(q(1, 2).try_div(&q(0, 1)), Err(ArithError::DivisionByZero));
    }

    #[test]
    #[should_panic(expected = "ring mismatch")]
    fn operator_panics_on_mismatch() {
        let _ = Scalar::one(Ring::Integer) + Scalar::one(Ring::Rational);
    }

    #[test]
    fn reduce_and_lift() {
        let p3 = Prime::new(3).unwrap();
        let p5 = Prime::new(5).unwrap();
        assert_eq!(
            Scalar::from_i64(Ring::Integer, 7).reduce_mod_p(p3).unwrap(),
            Scalar::from_i64(fp(3), 1)
        );
        assert_eq!(
            Scalar::from_i64(Ring::Integer, -1).reduce_mod_p(p5).unwrap(),
            Scalar::from_i64(fp(5), 4)
        );
        assert_eq!(
            Scalar::from_i64(fp(5), 4).lift_canonical().unwrap(),
            Scalar::from_i64(Ring::Integer, 4)
        );
        for v in 0..5 {
            let r = Scalar::from_i64(fp(5), v);
            assert_eq!(r.lift_canonical().unwrap().reduce_mod_p(p5).unwrap(), r);
        }
    }

    #[test]
    fn coercions() {
        assert_eq!(q(3, 2).to_ring(fp(5)).unwrap(), Scalar::from_i64(fp(5), 4));
        assert!(q(1, 5).to_ring(fp(5)).is_err());
        assert!(q(1, 2).to_ring(Ring::Integer).is_err());
        assert_eq!(q(4, 2).to_ring(Ring::Integer).unwrap(), Scalar::from_i64(Ring::Integer, 2));
        assert!(Scalar::one(fp(3)).to_ring(Ring::Integer).is_err());
    }

    #[test]
    fn ring_strings() {
        for s in ["Z", "Q", "Fp:7"] {
            assert_eq!(s.parse::<Ring>().unwrap().to_string(), s);
        }
        assert!("Fp:8".parse::<Ring>().is_err());
        assert!("R".parse::<Ring>().is_err());
    }

    #[test]
    fn exact_integer_division() {
        let six = Scalar::from_i64(Ring::Integer, 6);
        let three = Scalar::from_i64(Ring::Integer, 3);
        let four = Scalar::from_i64(Ring::Integer, 4);
        assert_eq!(six.div_exact(&three).unwrap(), Scalar::from_i64(Ring::Integer, 2));
        assert!(six.div_exact(&four).is_err());
    }
}
