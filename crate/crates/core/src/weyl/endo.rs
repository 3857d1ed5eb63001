use std::fmt;

use crate::exact::{Prime, Ring};

use super::{WeylElement, WeylError, WeylSignature};

/// A generator pair whose images violate `[F_i, F_j] = ω_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationFailure {
    /// 0-based generator indices, `i < j`.
    pub i: usize,
    pub j: usize,
    /// The commutator `[F_i, F_j]` that was actually found.
    pub commutator: WeylElement,
}

impl fmt::Display for RelationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let expected = self.commutator.signature().omega(self.i, self.j);
        write!(
            f,
            "[f(y{}), f(y{})] = {} but the relation requires {}",
            self.i + 1,
            self.j + 1,
            self.commutator,
            expected
        )
    }
}

/// An endomorphism of `A_{n,R}`, given by the images `F_i = f(y_i)`.
///
/// [`WeylEndo::new`] checks the defining relations; an endomorphism built
/// with [`WeylEndo::new_unverified`] is marked and rejected by the pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylEndo {
    sig: WeylSignature,
    ring: Ring,
    images: Vec<WeylElement>,
    verified: bool,
}

impl WeylEndo {
    pub fn new(images: Vec<WeylElement>) -> Result<Self, WeylError> {
        let mut f = Self::new_unverified(images)?;
        f.verify_relations().map_err(WeylError::Relations)?;
        f.verified = true;
        Ok(f)
    }

    /// Skips the relation check; only shapes and rings are validated.
    pub fn new_unverified(images: Vec<WeylElement>) -> Result<Self, WeylError> {
        let first = images.first().ok_or(WeylError::ImageCount {
            expected: 2,
            found: 0,
        })?;
        let (sig, ring) = (first.signature(), first.ring());
        if images.len() != sig.generators() {
            return Err(WeylError::ImageCount {
                expected: sig.generators(),
                found: images.len(),
            });
        }
        for img in &images {
            first.check_compatible(img)?;
        }
        Ok(WeylEndo {
            sig,
            ring,
            images,
            verified: false,
        })
    }

    pub fn identity(sig: WeylSignature, ring: Ring) -> Self {
        WeylEndo {
            sig,
            ring,
            images: (0..sig.generators())
                .map(|i| WeylElement::generator(sig, ring, i))
                .collect(),
            verified: true,
        }
    }

    pub fn signature(&self) -> WeylSignature {
        self.sig
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn images(&self) -> &[WeylElement] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, img)| *img == WeylElement::generator(self.sig, self.ring, i))
    }

    /// Maximum Bernstein degree of the images.
    pub fn degree(&self) -> Option<u32> {
        self.images.iter().filter_map(WeylElement::bernstein_degree).max()
    }

    /// Checks `[F_i, F_j] = ω_ij` for all `i < j`, reporting the first failure.
    pub fn verify_relations(&self) -> Result<(), RelationFailure> {
        let g = self.sig.generators();
        for i in 0..g {
            for j in i + 1..g {
                let c = &(&self.images[i] * &self.images[j]) - &(&self.images[j] * &self.images[i]);
                let expected = WeylElement::from_i64(self.sig, self.ring, self.sig.omega(i, j));
                if c != expected {
                    return Err(RelationFailure { i, j, commutator: c });
                }
            }
        }
        Ok(())
    }

    /// `f(a)`: every term `c·y^α` becomes `c·F_1^{α_1} ⋯ F_{2n}^{α_{2n}}`.
    pub fn apply(&self, a: &WeylElement) -> Result<WeylElement, WeylError> {
        self.images[0].check_compatible(a)?;
        let mut powers: Vec<Vec<WeylElement>> =
            vec![vec![WeylElement::one(self.sig, self.ring)]; self.images.len()];
        let mut out = WeylElement::zero(self.sig, self.ring);
        for (m, c) in a.terms() {
            let mut term = WeylElement::constant(self.sig, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().expect("F^0 present") * &self.images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// `self ∘ inner`, the endomorphism `y_i ↦ self(inner(y_i))`.
    pub fn compose(&self, inner: &WeylEndo) -> Result<WeylEndo, WeylError> {
        let images = inner
            .images
            .iter()
            .map(|g| self.apply(g))
            .collect::<Result<Vec<_>, _>>()?;
        let mut out = WeylEndo::new_unverified(images)?;
        out.verified = self.verified && inner.verified;
        Ok(out)
    }

    pub fn to_ring(&self, target: Ring) -> Result<WeylEndo, WeylError> {
        let images = self
            .images
            .iter()
            .map(|img| img.to_ring(target))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WeylEndo {
            sig: self.sig,
            ring: target,
            images,
            verified: self.verified,
        })
    }

    /// The induced endomorphism `f_p` of `A_{n,𝔽_p}`. Relations survive
    /// reduction, so the verification mark carries over.
    pub fn reduce_mod_p(&self, p: Prime) -> Result<WeylEndo, WeylError> {
        if self.ring != Ring::Integer {
            return Err(WeylError::RingMismatch {
                left: self.ring,
                right: Ring::Integer,
            });
        }
        self.to_ring(Ring::PrimeField(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig1() -> WeylSignature {
        WeylSignature::new(1)
    }

    fn y(ring: Ring, i: usize) -> WeylElement {
        WeylElement::generator(sig1(), ring, i)
    }

    fn k(ring: Ring, v: i64) -> WeylElement {
        WeylElement::from_i64(sig1(), ring, v)
    }

    fn shear(ring: Ring, c: i64) -> Vec<WeylElement> {
        vec![&y(ring, 0) + &(&k(ring, c) * &y(ring, 1).pow(2)), y(ring, 1)]
    }

    #[test]
    fn relation_checks() {
        assert!(WeylEndo::identity(sig1(), Ring::Integer).verify_relations().is_ok());
        assert!(WeylEndo::new(shear(Ring::Integer, 1)).is_ok());
        let bad = WeylEndo::new_unverified(vec![y(Ring::Integer, 0).pow(2), y(Ring::Integer, 1)]).unwrap();
        let fail = bad.verify_relations().unwrap_err();
        assert_eq!((fail.i, fail.j), (0, 1));
        assert_eq!(fail.commutator, &k(Ring::Integer, -2) * &y(Ring::Integer, 0));
        assert!(!bad.is_verified());
        assert!(matches!(
            WeylEndo::new(vec![y(Ring::Integer, 0).pow(2), y(Ring::Integer, 1)]),
            Err(WeylError::Relations(_))
        ));
    }

    #[test]
    fn apply_examples() {
        let r = Ring::Integer;
        let id = WeylEndo::identity(sig1(), r);
        let a = &(&y(r, 1) * &y(r, 0)) + &k(r, 3);
        assert_eq!(id.apply(&a).unwrap(), a);
        let f = WeylEndo::new(shear(r, 1)).unwrap();
        // y2*y1 has normal form y1*y2 + 1
        let a = &y(r, 1) * &y(r, 0);
        let expected = &(&(&y(r, 0) + &y(r, 1).pow(2)) * &y(r, 1)) + &k(r, 1);
        assert_eq!(f.apply(&a).unwrap(), expected);
        assert_eq!(f.apply(&k(r, 1)).unwrap(), k(r, 1));
    }

    #[test]
    fn reduction() {
        let p3 = Prime::new(3).unwrap();
        let f = WeylEndo::new(shear(Ring::Integer, 3)).unwrap();
        let fp = f.reduce_mod_p(p3).unwrap();
        assert!(fp.is_identity());
        assert!(fp.verify_relations().is_ok());
        let p5 = Prime::new(5).unwrap();
        let g = WeylEndo::new(shear(Ring::Integer, 1)).unwrap().reduce_mod_p(p5).unwrap();
        assert_eq!(g.images(), shear(Ring::PrimeField(p5), 1).as_slice());
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            WeylEndo::new_unverified(vec![y(Ring::Integer, 0)]),
            Err(WeylError::ImageCount { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn composition_with_inverse_is_identity() {
        let r = Ring::Integer;
        let f = WeylEndo::new(shear(r, 1)).unwrap();
        let g = WeylEndo::new(shear(r, -1)).unwrap();
        assert!(f.compose(&g).unwrap().is_identity());
        assert!(g.compose(&f).unwrap().is_identity());
        assert_eq!(f.compose(&f).unwrap().images()[0], &y(r, 0) + &(&k(r, 2) * &y(r, 1).pow(2)));
    }
}
