use super::{PolyError, Polynomial};

/// The standard symplectic bracket on `R[x_1, …, x_{2n}]`:
///
/// `{a, b} = Σ_{i=1..n} (∂a/∂x_i · ∂b/∂x_{n+i} − ∂b/∂x_i · ∂a/∂x_{n+i})`.
pub fn poisson_standard(a: &Polynomial, b: &Polynomial, n: usize) -> Result<Polynomial, PolyError> {
    if !a.nvars().is_multiple_of(2) {
        return Err(PolyError::OddVariableCount(a.nvars()));
    }
    if a.nvars() != 2 * n {
        return Err(PolyError::HalfDimension { n, nvars: a.nvars() });
    }
    if b.nvars() != a.nvars() {
        return Err(PolyError::Dimension {
            expected: a.nvars(),
            found: b.nvars(),
        });
    }
    let mut acc = Polynomial::zero(a.nvars(), a.ring());
    for i in 0..n {
        let lhs = a.partial_derivative(i)?.try_mul(&b.partial_derivative(n + i)?)?;
        let rhs = b.partial_derivative(i)?.try_mul(&a.partial_derivative(n + i)?)?;
        acc = acc.try_add(&lhs)?.try_sub(&rhs)?;
    }
    Ok(acc)
}

/// `{x_i, x_j}` for 0-based generator indices: `+1` if `j = i + n`, `−1` if
/// `i = j + n`, else 0.
pub fn generator_bracket(n: usize, i: usize, j: usize) -> i64 {
    if j == i + n {
        1
    } else if i == j + n {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Ring, Scalar};

    fn x(i: usize) -> Polynomial {
        Polynomial::var(2, Ring::Integer, i)
    }

    #[test]
    fn generator_values() {
        let one = Polynomial::one(2, Ring::Integer);
        assert_eq!(poisson_standard(&x(0), &x(1), 1).unwrap(), one);
        assert_eq!(poisson_standard(&x(1), &x(0), 1).unwrap(), -&one);
        let two_x1 = Polynomial::constant(2, Scalar::from_i64(Ring::Integer, 2)).try_mul(&x(0)).unwrap();
        assert_eq!(poisson_standard(&x(0).pow(2), &x(1), 1).unwrap(), two_x1);
    }

    #[test]
    fn self_bracket_vanishes() {
        let a = &(&x(0).pow(3) * &x(1)) + &x(1).pow(2);
        assert!(poisson_standard(&a, &a, 1).unwrap().is_zero());
    }

    #[test]
    fn dimension_errors() {
        let odd = Polynomial::var(3, Ring::Integer, 0);
        assert_eq!(poisson_standard(&odd, &odd, 1), Err(PolyError::OddVariableCount(3)));
        assert!(matches!(
            poisson_standard(&x(0), &x(1), 2),
            Err(PolyError::HalfDimension { n: 2, nvars: 2 })
        ));
    }

    #[test]
    fn generator_table() {
        assert_eq!(generator_bracket(2, 0, 2), 1);
        assert_eq!(generator_bracket(2, 3, 1), -1);
        assert_eq!(generator_bracket(2, 0, 1), 0);
        assert_eq!(generator_bracket(2, 0, 3), 0);
    }
}
