use std::collections::{BTreeMap, HashMap};

use crate::exact::{solve_linear_many, DenseMatrix, Scalar};
use crate::monomial::{monomials_up_to, Monomial};
use crate::poly::inverse_degree_bound;
use crate::weyl::{WeylElement, WeylEndo};

use super::PipelineError;

/// `d^(2n-1)`, the default search bound for inverses of a degree-`d`
/// endomorphism of `A_n`.
pub fn weyl_inverse_degree_bound(d: u32, n: usize) -> u32 {
    inverse_degree_bound(d, 2 * n)
}

/// Searches for `g` with `f ∘ g = g ∘ f = id`, of Bernstein degree at most
/// `max_degree` (default `d^(2n-1)`).
///
/// Bounds 1, 2, … are tried in turn, so a returned inverse has minimal
/// degree. At a fixed bound `D`, `f(G_i) = y_i` is linear in the unknown
/// coefficients of `G_i`, whose columns are the images `f(y^β)`, `|β| ≤ D`.
/// A solution is accepted only after the relations of `g` and both
/// compositions have been checked.
pub fn invert_weyl_endo(f: &WeylEndo, max_degree: Option<u32>) -> Result<Option<WeylEndo>, PipelineError> {
    if !f.is_verified() {
        return Err(PipelineError::Unverified);
    }
    if !f.ring().is_field() {
        return Err(PipelineError::RingMismatch {
            expected: "a field (Q or Fp:<p>)".into(),
            found: f.ring(),
        });
    }
    if max_degree == Some(0) {
        return Err(PipelineError::ZeroDegreeBound);
    }
    let Some(d) = f.degree().filter(|&d| d > 0) else {
        return Ok(None);
    };
    let bound = max_degree.unwrap_or_else(|| weyl_inverse_degree_bound(d, f.signature().n()));
    let mut images = HashMap::new();
    for level in 1..=bound {
        let Some(candidate) = right_inverse_of_degree(f, level, &mut images)? else {
            continue;
        };
        let Ok(g) = WeylEndo::new(candidate) else {
            continue;
        };
        if f.compose(&g)?.is_identity() && g.compose(f)?.is_identity() {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// Images `G_i` of degree ≤ `level` with `f(G_i) = y_i`, if they exist.
fn right_inverse_of_degree(
    f: &WeylEndo,
    level: u32,
    images: &mut HashMap<Monomial, WeylElement>,
) -> Result<Option<Vec<WeylElement>>, PipelineError> {
    let sig = f.signature();
    let ring = f.ring();
    let g = sig.generators();
    let basis = monomials_up_to(g, level);
    for beta in &basis {
        if images.contains_key(beta) {
            continue;
        }
        // y^β = y^{β - e_k} · y_k for the last variable k present in β.
        let img = match beta.exponents().iter().rposition(|&e| e > 0) {
            None => WeylElement::one(sig, ring),
            Some(k) => {
                let prev = beta.with_exponent(k, beta.exponents()[k] - 1);
                images[&prev].try_mul(&f.images()[k])?
            }
        };
        images.insert(beta.clone(), img);
    }

    let mut rows: BTreeMap<Monomial, usize> = (0..g).map(|i| (Monomial::var(g, i), 0)).collect();
    for beta in &basis {
        for (m, _) in images[beta].terms() {
            rows.entry(m.clone()).or_insert(0);
        }
    }
    for (idx, slot) in rows.values_mut().enumerate() {
        *slot = idx;
    }
    let mut a = DenseMatrix::zeros(ring, rows.len(), basis.len());
    for (col, beta) in basis.iter().enumerate() {
        for (m, c) in images[beta].terms() {
            a.set(rows[m], col, c.clone());
        }
    }
    let rhs: Vec<Vec<Scalar>> = (0..g)
        .map(|i| {
            let mut b = vec![Scalar::zero(ring); rows.len()];
            b[rows[&Monomial::var(g, i)]] = Scalar::one(ring);
            b
        })
        .collect();

    let mut out = Vec::with_capacity(g);
    for sol in solve_linear_many(&a, &rhs)? {
        let Some(x) = sol.solution else {
            return Ok(None);
        };
        out.push(WeylElement::from_terms(sig, ring, basis.iter().cloned().zip(x))?);
    }
    Ok(Some(out))
}
