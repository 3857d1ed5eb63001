use std::collections::{BTreeMap, HashMap};

use crate::exact::{solve_linear_many, DenseMatrix, Prime, Ring, Scalar};
use crate::monomial::{monomials_up_to, Monomial};

use super::{PolyError, Polynomial};

/// A polynomial endomorphism `x_i ↦ F_i` of `R[x_1, …, x_N]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMap {
    nvars: usize,
    ring: Ring,
    components: Vec<Polynomial>,
}

impl PolyMap {
    /// The component count must equal the shared variable count.
    pub fn new(components: Vec<Polynomial>) -> Result<Self, PolyError> {
        let Some(first) = components.first() else {
            return Ok(PolyMap {
                nvars: 0,
                ring: Ring::Rational,
                components,
            });
        };
        let (nvars, ring) = (first.nvars(), first.ring());
        if components.len() != nvars {
            return Err(PolyError::NotSquare {
                components: components.len(),
                nvars,
            });
        }
        for c in &components {
            if c.nvars() != nvars {
                return Err(PolyError::Dimension {
                    expected: nvars,
                    found: c.nvars(),
                });
            }
            if c.ring() != ring {
                return Err(PolyError::RingMismatch {
                    left: ring,
                    right: c.ring(),
                });
            }
        }
        Ok(PolyMap {
            nvars,
            ring,
            components,
        })
    }

    pub fn identity(nvars: usize, ring: Ring) -> Self {
        PolyMap {
            nvars,
            ring,
            components: (0..nvars).map(|i| Polynomial::var(nvars, ring, i)).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn is_identity(&self) -> bool {
        *self == PolyMap::identity(self.nvars, self.ring)
    }

    /// Maximum total degree over the components; `None` if all are zero.
    pub fn degree(&self) -> Option<u32> {
        self.components.iter().filter_map(Polynomial::total_degree).max()
    }

    /// `G ∘ F` in the substitution sense: component `i` is `G_i(F_1, …, F_N)`.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap, PolyError> {
        if self.nvars != inner.nvars {
            return Err(PolyError::Dimension {
                expected: self.nvars,
                found: inner.nvars,
            });
        }
        let components = self
            .components
            .iter()
            .map(|g| g.substitute(&inner.components))
            .collect::<Result<_, _>>()?;
        PolyMap::new(components).map(|mut m| {
            m.ring = self.ring;
            m
        })
    }

    /// Matrix of partials `∂F_i/∂x_j`.
    pub fn jacobian_matrix(&self) -> Result<Vec<Vec<Polynomial>>, PolyError> {
        self.components
            .iter()
            .map(|f| (0..self.nvars).map(|j| f.partial_derivative(j)).collect())
            .collect()
    }

    /// Determinant of the Jacobian matrix, by fraction-free (Bareiss)
    /// elimination over the polynomial ring.
    pub fn jacobian_det(&self) -> Result<Polynomial, PolyError> {
        bareiss_det(self.jacobian_matrix()?, self.nvars, self.ring)
    }

    pub fn to_ring(&self, target: Ring) -> Result<PolyMap, PolyError> {
        Ok(PolyMap {
            nvars: self.nvars,
            ring: target,
            components: self
                .components
                .iter()
                .map(|c| c.to_ring(target))
                .collect::<Result<_, _>>()?,
        })
    }

    pub fn reduce_mod_p(&self, p: Prime) -> Result<PolyMap, PolyError> {
        if self.ring != Ring::Integer {
            return Err(PolyError::RingMismatch {
                left: self.ring,
                right: Ring::Integer,
            });
        }
        self.to_ring(Ring::PrimeField(p))
    }

    /// Searches for an inverse of total degree at most `max_degree` (default
    /// `d^(N-1)`), trying bounds 1, 2, … so the first hit has minimal degree.
    ///
    /// For a fixed bound `D`, `G_i ∘ F = x_i` is linear in the unknown
    /// coefficients of `G_i`, so each level is one exact linear solve. A
    /// candidate is returned only if `F ∘ G` is the identity as well.
    pub fn invert(&self, max_degree: Option<u32>) -> Result<Option<PolyMap>, PolyError> {
        if !self.ring.is_field() {
            return Err(PolyError::NotAField(self.ring));
        }
        let Some(d) = self.degree() else {
            return Ok(None);
        };
        if d == 0 {
            return Ok(None);
        }
        let bound = max_degree.unwrap_or_else(|| inverse_degree_bound(d, self.nvars));
        let mut images = HashMap::new();
        for level in 1..=bound {
            if let Some(g) = self.left_inverse_of_degree(level, &mut images)? {
                if self.compose(&g)?.is_identity() && g.compose(self)?.is_identity() {
                    return Ok(Some(g));
                }
            }
        }
        Ok(None)
    }

    fn left_inverse_of_degree(
        &self,
        level: u32,
        images: &mut HashMap<Monomial, Polynomial>,
    ) -> Result<Option<PolyMap>, PolyError> {
        let n = self.nvars;
        let basis = monomials_up_to(n, level);
        for beta in &basis {
            if images.contains_key(beta) {
                continue;
            }
            let img = match beta.exponents().iter().rposition(|&e| e > 0) {
                None => Polynomial::one(n, self.ring),
                Some(k) => {
                    let prev = beta.with_exponent(k, beta.exponents()[k] - 1);
                    images[&prev].try_mul(&self.components[k])?
                }
            };
            images.insert(beta.clone(), img);
        }

        let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
        for i in 0..n {
            rows.insert(Monomial::var(n, i), 0);
        }
        for beta in &basis {
            for (m, _) in images[beta].terms() {
                rows.entry(m.clone()).or_insert(0);
            }
        }
        for (idx, slot) in rows.values_mut().enumerate() {
            *slot = idx;
        }

        let mut a = DenseMatrix::zeros(self.ring, rows.len(), basis.len());
        for (col, beta) in basis.iter().enumerate() {
            for (m, c) in images[beta].terms() {
                a.set(rows[m], col, c.clone());
            }
        }
        let rhs: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut b = vec![Scalar::zero(self.ring); rows.len()];
                b[rows[&Monomial::var(n, i)]] = Scalar::one(self.ring);
                b
            })
            .collect();

        let mut components = Vec::with_capacity(n);
        for sol in solve_linear_many(&a, &rhs)? {
            let Some(x) = sol.solution else {
                return Ok(None);
            };
            components.push(Polynomial::from_terms(
                n,
                self.ring,
                basis.iter().cloned().zip(x),
            )?);
        }
        Ok(Some(PolyMap::new(components)?))
    }
}

/// `d^(N-1)`, the a priori degree bound for the inverse of a degree-`d`
/// automorphism in `N` variables.
pub fn inverse_degree_bound(d: u32, nvars: usize) -> u32 {
    let exp = nvars.saturating_sub(1) as u32;
    d.saturating_pow(exp).max(1)
}

/// Free-function form of [`PolyMap::compose`].
pub fn compose_map(g: &PolyMap, f: &PolyMap) -> Result<PolyMap, PolyError> {
    g.compose(f)
}

fn bareiss_det(mut m: Vec<Vec<Polynomial>>, n: usize, ring: Ring) -> Result<Polynomial, PolyError> {
    let nvars = m.first().and_then(|r| r.first()).map_or(n, Polynomial::nvars);
    if n == 0 {
        return Ok(Polynomial::one(nvars, ring));
    }
    let mut negate = false;
    let mut prev = Polynomial::one(nvars, ring);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(Polynomial::zero(nvars, ring));
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].try_mul(&m[i][j])?.try_sub(&m[i][k].try_mul(&m[k][j])?)?;
                m[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -&det } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(ring: Ring, n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, ring, i)
    }

    fn k(ring: Ring, n: usize, v: i64) -> Polynomial {
        Polynomial::constant(n, Scalar::from_i64(ring, v))
    }

    /// Cofactor expansion, kept independent of the elimination path.
    fn laplace_det(m: &[Vec<Polynomial>], ring: Ring, nvars: usize) -> Polynomial {
        if m.is_empty() {
            return Polynomial::one(nvars, ring);
        }
        let mut acc = Polynomial::zero(nvars, ring);
        for (c, entry) in m[0].iter().enumerate() {
            let minor: Vec<Vec<Polynomial>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != c)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect();
            let term = entry * &laplace_det(&minor, ring, nvars);
            acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn jacobian_examples() {
        let r = Ring::Integer;
        assert_eq!(PolyMap::identity(3, r).jacobian_det().unwrap(), k(r, 3, 1));
        let (x1, x2) = (x(r, 2, 0), x(r, 2, 1));
        let f = PolyMap::new(vec![&x1 + &x2.pow(2), x2.clone()]).unwrap();
        assert_eq!(f.jacobian_det().unwrap(), k(r, 2, 1));
        let g = PolyMap::new(vec![x1.pow(2), x2.clone()]).unwrap();
        assert_eq!(g.jacobian_det().unwrap(), &k(r, 2, 2) * &x1);
    }

    #[test]
    fn bareiss_matches_cofactors_with_zero_pivot() {
        let r = Ring::Integer;
        let n = 3;
        let (x1, x2, x3) = (x(r, n, 0), x(r, n, 1), x(r, n, 2));
        // F_1 has no x_1 dependence, forcing a row swap.
        let f = PolyMap::new(vec![
            &x2.pow(2) + &x3,
            &(&x1 * &x2) + &x3.pow(3),
            &(&x1.pow(2) + &x2) - &(&x1 * &x3),
        ])
        .unwrap();
        let jm = f.jacobian_matrix().unwrap();
        assert_eq!(f.jacobian_det().unwrap(), laplace_det(&jm, r, n));
    }

    #[test]
    fn composition_examples() {
        let r = Ring::Integer;
        let (x1, x2) = (x(r, 2, 0), x(r, 2, 1));
        let f = PolyMap::new(vec![&x1 + &x2.pow(2), x2.clone()]).unwrap();
        let g = PolyMap::new(vec![&x1 - &x2.pow(2), x2.clone()]).unwrap();
        assert_eq!(compose_map(&PolyMap::identity(2, r), &f).unwrap(), f);
        assert!(compose_map(&g, &f).unwrap().is_identity());
        let y = x(r, 1, 0);
        let sq = PolyMap::new(vec![y.pow(2)]).unwrap();
        let shift = PolyMap::new(vec![&y + &k(r, 1, 1)]).unwrap();
        assert_eq!(
            compose_map(&sq, &shift).unwrap().components()[0],
            &(&y.pow(2) + &(&k(r, 1, 2) * &y)) + &k(r, 1, 1)
        );
    }

    #[test]
    fn inversion_examples() {
        let r = Ring::Rational;
        let (x1, x2) = (x(r, 2, 0), x(r, 2, 1));
        let f = PolyMap::new(vec![&x1 + &x2.pow(2), x2.clone()]).unwrap();
        let g = f.invert(Some(2)).unwrap().unwrap();
        assert_eq!(g, PolyMap::new(vec![&x1 - &x2.pow(2), x2.clone()]).unwrap());

        let id = PolyMap::identity(2, r);
        assert_eq!(id.invert(Some(1)).unwrap(), Some(id.clone()));

        let sq = PolyMap::new(vec![x1.pow(2), x2.clone()]).unwrap();
        assert_eq!(sq.invert(Some(8)).unwrap(), None);
    }

    #[test]
    fn inversion_needs_a_field() {
        let f = PolyMap::identity(2, Ring::Integer);
        assert_eq!(f.invert(None), Err(PolyError::NotAField(Ring::Integer)));
    }

    #[test]
    fn gabber_bound() {
        assert_eq!(inverse_degree_bound(2, 2), 2);
        assert_eq!(inverse_degree_bound(3, 4), 27);
        assert_eq!(inverse_degree_bound(1, 4), 1);
    }

    #[test]
    fn minimal_degree_inverse_over_f3() {
        let r = Ring::PrimeField(Prime::new(3).unwrap());
        let (x1, x2) = (x(r, 2, 0), x(r, 2, 1));
        // (x1 + x2^3, x2) inverts to (x1 - x2^3, x2); degree 3 is minimal.
        let f = PolyMap::new(vec![&x1 + &x2.pow(3), x2.clone()]).unwrap();
        let g = f.invert(None).unwrap().unwrap();
        assert_eq!(g.degree(), Some(3));
        assert!(f.compose(&g).unwrap().is_identity());
    }
}
