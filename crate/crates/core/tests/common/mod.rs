//! Oracles and generators shared by the integration tests. The oracles use
//! deliberately naive algorithms that share no code with the library's fast
//! paths.

#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use proptest::prelude::*;

use weylab::exact::{Prime, Ring, Scalar};
use weylab::monomial::Monomial;
use weylab::poly::Polynomial;
use weylab::weyl::{WeylElement, WeylSignature};

pub fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

pub fn fp(p: u64) -> Ring {
    Ring::PrimeField(prime(p))
}

/// Expands a monomial into its word of generator indices, `y1^2 y3` → `[0, 0, 2]`.
fn word_of(m: &Monomial) -> Vec<usize> {
    m.exponents()
        .iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
        .collect()
}

fn monomial_of(word: &[usize], nvars: usize) -> Monomial {
    let mut exps = vec![0u32; nvars];
    for &i in word {
        exps[i] += 1;
    }
    Monomial::from_exponents(&exps)
}

/// Normal form of a linear combination of words by repeated single swaps
/// `y_a y_b = y_b y_a + ω_ab` at the first descent, until every word is sorted.
pub fn rewrite_words(sig: WeylSignature, ring: Ring, words: Vec<(Vec<usize>, Scalar)>) -> WeylElement {
    let g = sig.generators();
    let mut pending: HashMap<Vec<usize>, Scalar> = HashMap::new();
    for (w, c) in words {
        let slot = pending.entry(w).or_insert_with(|| Scalar::zero(ring));
        *slot = &*slot + &c;
    }
    let mut done: Vec<(Monomial, Scalar)> = Vec::new();
    while !pending.is_empty() {
        let mut next: HashMap<Vec<usize>, Scalar> = HashMap::new();
        let push = |w: Vec<usize>, c: Scalar, next: &mut HashMap<Vec<usize>, Scalar>| {
            let slot = next.entry(w).or_insert_with(|| Scalar::zero(ring));
            *slot = &*slot + &c;
        };
        for (w, c) in pending {
            if c.is_zero() {
                continue;
            }
            match (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
                None => done.push((monomial_of(&w, g), c)),
                Some(i) => {
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    push(swapped, c.clone(), &mut next);
                    let omega = sig.omega(w[i], w[i + 1]);
                    if omega != 0 {
                        let mut shorter = w.clone();
                        shorter.drain(i..i + 2);
                        push(shorter, &c * &Scalar::from_i64(ring, omega), &mut next);
                    }
                }
            }
        }
        pending = next;
    }
    WeylElement::from_terms(sig, ring, done).unwrap()
}

/// `a·b` by concatenating words and rewriting.
pub fn naive_product(a: &WeylElement, b: &WeylElement) -> WeylElement {
    let mut words = Vec::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let mut w = word_of(ma);
            w.extend(word_of(mb));
            words.push((w, ca * cb));
        }
    }
    rewrite_words(a.signature(), a.ring(), words)
}

/// `a^k` as the rewritten expansion of the `k`-fold word product.
pub fn naive_power(a: &WeylElement, k: u32) -> WeylElement {
    let mut acc = WeylElement::one(a.signature(), a.ring());
    for _ in 0..k {
        acc = naive_product(&acc, a);
    }
    acc
}

/// Action of a normal-ordered element of `A_1` on `ℤ[t]`: `y1` is
/// multiplication by `t` and `y2` is `d/dt`, which satisfies `[y2, y1] = 1`.
/// Polynomials are coefficient vectors, lowest degree first.
pub fn act_on_polynomial(a: &WeylElement, f: &[BigInt]) -> Vec<BigInt> {
    assert_eq!(a.signature().n(), 1);
    let mut out: Vec<BigInt> = Vec::new();
    for (m, c) in a.terms() {
        let (i, j) = (m.exponents()[0] as usize, m.exponents()[1] as usize);
        // d^j/dt^j, then multiply by t^i
        let mut g: Vec<BigInt> = f.to_vec();
        for _ in 0..j {
            g = g.iter().enumerate().skip(1).map(|(k, v)| v * BigInt::from(k)).collect();
        }
        let c = c.as_bigint().expect("integer coefficients").clone();
        for (k, v) in g.into_iter().enumerate() {
            if out.len() <= k + i {
                out.resize(k + i + 1, BigInt::from(0));
            }
            out[k + i] += &c * v;
        }
    }
    out
}

/// Determinant by cofactor expansion along the first row.
pub fn laplace_det(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Polynomial::zero(m[0][0].nvars(), m[0][0].ring());
    for col in 0..n {
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][col] * &laplace_det(&minor);
        acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// `Σ_i ∂a/∂x_i ∂b/∂x_{n+i} − ∂a/∂x_{n+i} ∂b/∂x_i`, spelled out independently
/// of the library's bracket.
pub fn bracket_by_formula(a: &Polynomial, b: &Polynomial, n: usize) -> Polynomial {
    let mut acc = Polynomial::zero(a.nvars(), a.ring());
    for i in 0..n {
        let d = |p: &Polynomial, k: usize| p.partial_derivative(k).unwrap();
        acc = &acc + &(&d(a, i) * &d(b, n + i));
        acc = &acc - &(&d(a, n + i) * &d(b, i));
    }
    acc
}

// ---------------------------------------------------------------------------
// proptest strategies

pub fn ring_strategy_scalar(ring: Ring) -> BoxedStrategy<Scalar> {
    match ring {
        Ring::Rational => (-20i64..=20, 1i64..=9)
            .prop_map(|(a, b)| Scalar::from_ratio(Ring::Rational, &BigInt::from(a), &BigInt::from(b)).unwrap())
            .boxed(),
        r => (-20i64..=20).prop_map(move |a| Scalar::from_i64(r, a)).boxed(),
    }
}

fn terms_strategy(
    nvars: usize,
    ring: Ring,
    max_degree: u32,
    max_terms: usize,
) -> impl Strategy<Value = Vec<(Monomial, Scalar)>> + Clone {
    prop::collection::vec(
        (prop::collection::vec(0u32..=max_degree, nvars), ring_strategy_scalar(ring)),
        0..=max_terms,
    )
    .prop_map(move |raw| {
        raw.into_iter()
            .map(|(mut exps, c)| {
                // lower the largest exponent until the degree fits
                while exps.iter().sum::<u32>() > max_degree {
                    let top = (0..exps.len()).max_by_key(|&i| exps[i]).unwrap();
                    exps[top] -= 1;
                }
                (Monomial::from_exponents(&exps), c)
            })
            .collect()
    })
}

pub fn weyl_strategy(n: usize, ring: Ring, max_degree: u32, max_terms: usize) -> impl Strategy<Value = WeylElement> + Clone {
    let sig = WeylSignature::new(n);
    terms_strategy(2 * n, ring, max_degree, max_terms)
        .prop_map(move |t| WeylElement::from_terms(sig, ring, t).unwrap())
}

pub fn nonzero_weyl(n: usize, ring: Ring, max_degree: u32, max_terms: usize) -> impl Strategy<Value = WeylElement> + Clone {
    weyl_strategy(n, ring, max_degree, max_terms).prop_filter("nonzero", |a| !a.is_zero())
}

pub fn poly_strategy(nvars: usize, ring: Ring, max_degree: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> + Clone {
    terms_strategy(nvars, ring, max_degree, max_terms)
        .prop_map(move |t| Polynomial::from_terms(nvars, ring, t).unwrap())
}

/// Central elements of `A_{n,𝔽_p}`: combinations of `y^{pβ}`.
pub fn central_strategy(n: usize, p: u64, max_degree: u32, max_terms: usize) -> impl Strategy<Value = WeylElement> + Clone {
    let ring = fp(p);
    let sig = WeylSignature::new(n);
    terms_strategy(2 * n, ring, max_degree, max_terms).prop_map(move |t| {
        WeylElement::from_terms(sig, ring, t.into_iter().map(|(m, c)| (m.scaled(p as u32), c))).unwrap()
    })
}
