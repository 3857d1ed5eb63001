//! Tame automorphisms of `A_{n,ℤ}` with known inverses.
//!
//! Building blocks:
//! * the symplectic swap of pair `k`: `y_k ↦ y_{n+k}`, `y_{n+k} ↦ −y_k`;
//! * upper shears `y_i ↦ y_i + φ_i(y_{n+1}, …, y_{2n})`;
//! * lower shears `y_{n+i} ↦ y_{n+i} + φ_i(y_1, …, y_n)`.
//!
//! For a shear to respect the relations the `φ_i` must be the gradient of a
//! potential `V`; for `n = 1` any `φ` works. Linear shears are the symplectic
//! transvections. Corpus members are random compositions of up to three
//! blocks, kept when their degree is at most 4.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{Ring, Scalar};
use crate::monomial::{monomials_up_to, Monomial};
use crate::poly::Polynomial;
use crate::weyl::{WeylElement, WeylEndo, WeylError, WeylSignature};

/// An automorphism together with its inverse, both over ℤ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub endo: WeylEndo,
    pub inverse: WeylEndo,
}

impl CorpusEntry {
    pub fn n(&self) -> usize {
        self.endo.signature().n()
    }

    pub fn degree(&self) -> u32 {
        self.endo.degree().unwrap_or(0)
    }

    /// `self ∘ inner`, inverse `inner⁻¹ ∘ self⁻¹`.
    pub fn compose(&self, inner: &CorpusEntry) -> Result<CorpusEntry, WeylError> {
        Ok(CorpusEntry {
            name: format!("{} . {}", self.name, inner.name),
            endo: self.endo.compose(&inner.endo)?,
            inverse: inner.inverse.compose(&self.inverse)?,
        })
    }
}

fn gen(sig: WeylSignature, i: usize) -> WeylElement {
    WeylElement::generator(sig, Ring::Integer, i)
}

/// Writes a polynomial in `n` commuting variables into the generators
/// `y_{offset+1} … y_{offset+n}`, which commute with each other.
fn embed_commuting(phi: &Polynomial, sig: WeylSignature, offset: usize) -> WeylElement {
    let g = sig.generators();
    let terms = phi.terms().map(|(m, c)| {
        let mut exps = vec![0; g];
        exps[offset..offset + m.nvars()].copy_from_slice(m.exponents());
        (Monomial::from_exponents(&exps), c.clone())
    });
    WeylElement::from_terms(sig, Ring::Integer, terms).expect("lengths match")
}

/// Symplectic swap of conjugate pair `k` (0-based).
pub fn swap(n: usize, k: usize) -> CorpusEntry {
    let sig = WeylSignature::new(n);
    let mut fwd: Vec<WeylElement> = (0..2 * n).map(|i| gen(sig, i)).collect();
    let mut inv = fwd.clone();
    fwd[k] = gen(sig, n + k);
    fwd[n + k] = -&gen(sig, k);
    inv[k] = -&gen(sig, n + k);
    inv[n + k] = gen(sig, k);
    CorpusEntry {
        name: format!("s{}", k + 1),
        endo: WeylEndo::new(fwd).expect("swap is symplectic"),
        inverse: WeylEndo::new(inv).expect("swap is symplectic"),
    }
}

/// `upper = true`: `y_i ↦ y_i + φ_i(y_{n+·})`; otherwise
/// `y_{n+i} ↦ y_{n+i} + φ_i(y_·)`. Fails unless the relations hold.
pub fn shear(n: usize, upper: bool, phis: &[Polynomial]) -> Result<CorpusEntry, WeylError> {
    let sig = WeylSignature::new(n);
    let (moved, source) = if upper { (0, n) } else { (n, 0) };
    let mut fwd: Vec<WeylElement> = (0..2 * n).map(|i| gen(sig, i)).collect();
    let mut inv = fwd.clone();
    let mut parts = Vec::new();
    for (i, phi) in phis.iter().enumerate() {
        let shift = embed_commuting(phi, sig, source);
        if !shift.is_zero() {
            parts.push(format!("y{} += {shift}", moved + i + 1));
        }
        fwd[moved + i] = &fwd[moved + i] + &shift;
        inv[moved + i] = &inv[moved + i] - &shift;
    }
    Ok(CorpusEntry {
        name: format!("{}[{}]", if upper { "u" } else { "l" }, parts.join(", ")),
        endo: WeylEndo::new(fwd)?,
        inverse: WeylEndo::new(inv)?,
    })
}

/// Gradient of `v` as a list of `n` polynomials.
fn gradient(v: &Polynomial) -> Vec<Polynomial> {
    (0..v.nvars())
        .map(|i| v.partial_derivative(i).expect("index in range"))
        .collect()
}

fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, min_degree: u32, max_degree: u32) -> Polynomial {
    let degree = rng.gen_range(min_degree..=max_degree);
    let candidates: Vec<Monomial> = monomials_up_to(nvars, degree)
        .into_iter()
        .filter(|m| m.degree() >= 1)
        .collect();
    let top: Vec<&Monomial> = candidates.iter().filter(|m| m.degree() == degree).collect();
    loop {
        let mut terms = vec![(
            (*top.choose(rng).expect("nonempty")).clone(),
            Scalar::from_i64(Ring::Integer, *[-2i64, -1, 1, 2].choose(rng).expect("nonempty")),
        )];
        for m in &candidates {
            if rng.gen_bool(0.3) {
                terms.push((m.clone(), Scalar::from_i64(Ring::Integer, rng.gen_range(-2..=2))));
            }
        }
        let p = Polynomial::from_terms(nvars, Ring::Integer, terms).expect("valid terms");
        if p.total_degree() == Some(degree) {
            return p;
        }
    }
}

fn random_block(rng: &mut ChaCha8Rng, n: usize) -> CorpusEntry {
    if rng.gen_bool(0.2) {
        return swap(n, rng.gen_range(0..n));
    }
    let upper = rng.gen_bool(0.5);
    let phis = if n == 1 {
        vec![random_poly(rng, 1, 1, 3)]
    } else {
        // φ of degree ≤ 3 from a potential of degree ≤ 4
        gradient(&random_poly(rng, n, 2, 4))
    };
    shear(n, upper, &phis).expect("gradient shears are automorphisms")
}

/// Random compositions of one to three blocks with degree in `2..=max_degree`,
/// `count` distinct members for the given `n`.
pub fn tame_corpus(seed: u64, n: usize, count: usize, max_degree: u32) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut seen = HashSet::new();
    while out.len() < count {
        let depth = rng.gen_range(1..=3);
        let mut e = random_block(&mut rng, n);
        for _ in 1..depth {
            let next = random_block(&mut rng, n);
            e = match e.compose(&next) {
                Ok(c) => c,
                Err(_) => break,
            };
            if e.degree() > max_degree {
                break;
            }
        }
        let d = e.degree();
        if d < 2 || d > max_degree || !seen.insert(e.endo.images().to_vec()) {
            continue;
        }
        e.name = format!("n{n}-{:02}: {}", out.len(), e.name);
        out.push(e);
    }
    out
}

/// The standard test corpus: the anchor shear `y1 ↦ y1 + y2²`, the swap, and
/// seeded random tame automorphisms for `n = 1` and `n = 2`, all of degree ≤ 4.
pub fn default_corpus() -> Vec<CorpusEntry> {
    let x = Polynomial::var(1, Ring::Integer, 0);
    let mut anchor = shear(1, true, &[x.pow(2)]).expect("shear");
    anchor.name = "anchor: y1 += y2^2".into();
    let mut out = vec![anchor, swap(1, 0)];
    out.extend(tame_corpus(0x5eed_0001, 1, 18, 4));

    // n = 2 members of the top degree, which random compositions rarely hit
    let a = Polynomial::var(2, Ring::Integer, 0);
    let b = Polynomial::var(2, Ring::Integer, 1);
    let zero = Polynomial::zero(2, Ring::Integer);
    let mut quartic = shear(2, true, &[zero, b.pow(4)]).expect("shear");
    quartic.name = format!("n2-q0: {}", quartic.name);
    let upper = shear(2, true, &gradient(&(&a.pow(2) * &b))).expect("shear");
    let lower = shear(2, false, &gradient(&(&a * &b.pow(2)))).expect("shear");
    let mut mixed = upper.compose(&lower).expect("same signature");
    mixed.name = format!("n2-q1: {}", mixed.name);
    out.push(quartic);
    out.push(mixed);

    out.extend(tame_corpus(0x5eed_0002, 2, 14, 4));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_are_inverse_pairs() {
        let x = Polynomial::var(2, Ring::Integer, 0);
        let y = Polynomial::var(2, Ring::Integer, 1);
        let v = &(&x.pow(2) * &y) + &y.pow(3);
        for e in [swap(2, 1), shear(2, true, &gradient(&v)).unwrap(), shear(2, false, &gradient(&v)).unwrap()] {
            assert!(e.endo.compose(&e.inverse).unwrap().is_identity());
            assert!(e.inverse.compose(&e.endo).unwrap().is_identity());
        }
    }

    #[test]
    fn non_gradient_shear_rejected() {
        let x = Polynomial::var(2, Ring::Integer, 0);
        let y = Polynomial::var(2, Ring::Integer, 1);
        // (x2, 0) is not a gradient
        assert!(shear(2, true, &[y.clone(), Polynomial::zero(2, Ring::Integer)]).is_err());
        assert!(shear(2, true, &[y, x]).is_ok());
    }

    #[test]
    fn corpus_shape() {
        let c = default_corpus();
        assert!(c.len() >= 30);
        assert!(c.iter().all(|e| e.degree() <= 4 && e.endo.is_verified()));
        assert!(c.iter().any(|e| e.n() == 1) && c.iter().any(|e| e.n() == 2));
        assert!(c.iter().any(|e| e.n() == 2 && e.degree() == 4));
        for e in &c {
            assert!(e.endo.compose(&e.inverse).unwrap().is_identity(), "{}", e.name);
        }
        assert_eq!(tame_corpus(7, 1, 5, 4), tame_corpus(7, 1, 5, 4));
    }
}
