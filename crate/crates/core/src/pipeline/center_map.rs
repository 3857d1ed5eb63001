use crate::exact::{Prime, Ring, Scalar};
use crate::poly::{generator_bracket, poisson_standard, PolyMap, Polynomial};
use crate::weyl::{extract_center_poly, WeylElement, WeylEndo, WeylError};

use super::PipelineError;

/// How the centrality of one `f_p(y_i)^p` was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralityWitness {
    /// 0-based generator index.
    pub generator: usize,
    /// Number of terms of `f_p(y_i)^p`, all of which had exponents divisible by `p`.
    pub terms: usize,
    /// False when `f_p(y_i)` is a scalar multiple of a generator plus a
    /// constant, whose `p`-th power is central for trivial reasons.
    pub nontrivial: bool,
}

/// The polynomial map `f^centr_p` induced by `f_p` on the center `𝔽_p[y_i^p]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterMapResult {
    pub prime: Prime,
    pub n: usize,
    /// Components in `x_1 … x_{2n}`, `x_i` standing for `y_i^p`.
    pub map: PolyMap,
    /// Degree of `f_p`.
    pub source_degree: Option<u32>,
    pub map_degree: Option<u32>,
    pub witnesses: Vec<CentralityWitness>,
}

/// Computes `f^centr_p` through `f_p(y_i^p) = f_p(y_i)^p`.
///
/// `f` must be verified and defined over ℤ (or already over `𝔽_p` for the
/// same `p`).
pub fn center_map(f: &WeylEndo, p: Prime) -> Result<CenterMapResult, PipelineError> {
    if !f.is_verified() {
        return Err(PipelineError::Unverified);
    }
    let fp = match f.ring() {
        Ring::Integer => f.reduce_mod_p(p)?,
        Ring::PrimeField(q) if q == p => f.clone(),
        other => {
            return Err(PipelineError::RingMismatch {
                expected: format!("Z or Fp:{p}"),
                found: other,
            })
        }
    };
    let mut components = Vec::with_capacity(fp.images().len());
    let mut witnesses = Vec::with_capacity(fp.images().len());
    for (i, img) in fp.images().iter().enumerate() {
        let power = img.pow(p.get());
        let poly = extract_center_poly(&power).map_err(|e| match e {
            WeylError::NotCentral { exponents } => PipelineError::NotCentral {
                generator: i + 1,
                exponents,
            },
            other => other.into(),
        })?;
        witnesses.push(CentralityWitness {
            generator: i,
            terms: power.term_count(),
            nontrivial: !is_affine_in_one_generator(img),
        });
        components.push(poly);
    }
    let map = PolyMap::new(components)?;
    Ok(CenterMapResult {
        prime: p,
        n: fp.signature().n(),
        source_degree: fp.degree(),
        map_degree: map.degree(),
        map,
        witnesses,
    })
}

fn is_affine_in_one_generator(a: &WeylElement) -> bool {
    a.terms().filter(|(m, _)| !m.is_one()).count() <= 1 && a.bernstein_degree().is_none_or(|d| d <= 1)
}

/// Bracket preservation, Jacobian and degree checks of a center map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterMapVerification {
    pub bracket_preserved: bool,
    /// First generator pair `(i, j)`, 0-based, whose image bracket is wrong,
    /// with the bracket found.
    pub bracket_failure: Option<(usize, usize, Polynomial)>,
    pub jacobian: Polynomial,
    pub jacobian_one: bool,
    pub degree_equal: bool,
    /// `p ≤ n`: Jacobian preservation is not covered by the theory here, so
    /// `jacobian_one` is informational only.
    pub outside_jacobian_hypothesis: bool,
}

impl CenterMapVerification {
    pub fn all_passed(&self) -> bool {
        self.bracket_preserved && self.degree_equal && (self.jacobian_one || self.outside_jacobian_hypothesis)
    }
}

/// Bracket preservation on generator pairs, Jacobian determinant and degree
/// equality.
pub fn verify_center_map(r: &CenterMapResult) -> Result<CenterMapVerification, PipelineError> {
    let comps = r.map.components();
    let nvars = r.map.nvars();
    let ring = r.map.ring();
    let mut bracket_failure = None;
    'pairs: for i in 0..nvars {
        for j in i + 1..nvars {
            let got = poisson_standard(&comps[i], &comps[j], r.n)?;
            let want = Polynomial::constant(nvars, Scalar::from_i64(ring, generator_bracket(r.n, i, j)));
            if got != want {
                bracket_failure = Some((i, j, got));
                break 'pairs;
            }
        }
    }
    let jacobian = r.map.jacobian_det()?;
    let jacobian_one = jacobian == Polynomial::one(nvars, ring);
    Ok(CenterMapVerification {
        bracket_preserved: bracket_failure.is_none(),
        bracket_failure,
        jacobian_one,
        jacobian,
        degree_equal: r.source_degree == r.map_degree,
        outside_jacobian_hypothesis: r.prime.get() as usize <= r.n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_poly, EndoFile};
    use crate::weyl::WeylSignature;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn endo(text: &str) -> WeylEndo {
        EndoFile::parse(text).unwrap().to_endo().unwrap()
    }

    #[test]
    fn identity_gives_identity() {
        for q in [2, 3, 5] {
            let r = center_map(&WeylEndo::identity(WeylSignature::new(2), Ring::Integer), p(q)).unwrap();
            assert!(r.map.is_identity());
            let v = verify_center_map(&r).unwrap();
            assert!(v.bracket_preserved && v.jacobian_one && v.degree_equal);
        }
    }

    #[test]
    fn symplectic_swap() {
        let f = endo("n = 1\nring = Z\ny1 -> y2\ny2 -> -y1\n");
        let r = center_map(&f, p(3)).unwrap();
        assert_eq!(r.map.components()[0].to_string(), "x2");
        assert_eq!(r.map.components()[1].to_string(), "2*x1");
        assert!(r.witnesses.iter().all(|w| !w.nontrivial));
    }

    #[test]
    fn shear_at_three() {
        let f = endo("n = 1\nring = Z\ny1 -> y1 + y2^2\ny2 -> y2\n");
        let r = center_map(&f, p(3)).unwrap();
        assert_eq!(r.map.components()[0].to_string(), "x1 + x2^2 + 2");
        assert_eq!(r.map.components()[1].to_string(), "x2");
        assert_eq!((r.source_degree, r.map_degree), (Some(2), Some(2)));
        assert!(r.witnesses[0].nontrivial);
        let v = verify_center_map(&r).unwrap();
        assert!(v.all_passed() && v.jacobian_one);
    }

    #[test]
    fn corrupted_map_fails_bracket() {
        let f7 = Ring::PrimeField(p(7));
        let map = PolyMap::new(vec![
            parse_poly("x1 + x2^2", 2, f7).unwrap(),
            parse_poly("x2 + x1^2", 2, f7).unwrap(),
        ])
        .unwrap();
        let r = CenterMapResult {
            prime: p(7),
            n: 1,
            map,
            source_degree: Some(2),
            map_degree: Some(2),
            witnesses: vec![],
        };
        let v = verify_center_map(&r).unwrap();
        assert!(!v.bracket_preserved);
        let (_, _, got) = v.bracket_failure.unwrap();
        assert_eq!(got, parse_poly("1 - 4*x1*x2", 2, f7).unwrap());
    }

    #[test]
    fn refuses_unverified() {
        let file = EndoFile::parse("n = 1\nring = Z\ny1 -> y1^2\ny2 -> y2\n").unwrap();
        let f = file.to_unverified_endo().unwrap();
        assert_eq!(center_map(&f, p(3)).unwrap_err(), PipelineError::Unverified);
    }

    #[test]
    fn small_prime_is_flagged() {
        let f = endo("n = 2\nring = Z\ny1 -> y1\ny2 -> y2\ny3 -> y3\ny4 -> y4\n");
        let v = verify_center_map(&center_map(&f, p(2)).unwrap()).unwrap();
        assert!(v.outside_jacobian_hypothesis);
    }
}
